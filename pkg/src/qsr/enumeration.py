"""Backend selection for the box enumeration kernel.

The compiled (Cython) kernel is used when it imported successfully and the
instance provably fits in int64; otherwise the pure-Python kernel runs.
QSR_THREADS > 1 partitions the range of the last coordinate across threads
(the compiled kernel releases the GIL); the merged result is identical to a
sequential run.
"""

from concurrent.futures import ThreadPoolExecutor
import os

from . import _enum_py

try:
    from . import _enum_cy
except ImportError:  # pragma: no cover - build-dependent
    _enum_cy = None

HAVE_COMPILED = _enum_cy is not None

_INT64_BUDGET = 2 ** 62


def backend_name():
    return "cython" if HAVE_COMPILED else "python"


def _fits_int64(gram, t, radii):
    total = 0
    m = len(gram)
    for k in range(m):
        total += abs(gram[k][k]) * radii[k] * radii[k]
        for i in range(k):
            total += 2 * abs(gram[i][k]) * radii[i] * radii[k]
    return 4 * total + abs(t) < _INT64_BUDGET


def thread_count():
    try:
        return max(1, int(os.environ.get("QSR_THREADS", "1")))
    except ValueError:
        return 1


def solve_box(gram, t, radii, force_backend=None, threads=None):
    """All integer u in the box with u^T gram u == t; returns (solutions, examined).

    gram must be a symmetric integer matrix, t an integer, radii a list of
    per-coordinate nonnegative bounds.
    """
    m = len(gram)
    gram = [[int(e) for e in row] for row in gram]
    t = int(t)
    radii = [int(r) for r in radii]

    if force_backend == "python":
        kernel = _enum_py
    elif force_backend == "cython":
        if not HAVE_COMPILED:
            raise RuntimeError("compiled kernel is not available")
        if not _fits_int64(gram, t, radii):
            raise OverflowError("instance exceeds the int64 budget of the compiled kernel")
        kernel = _enum_cy
    elif HAVE_COMPILED and _fits_int64(gram, t, radii):
        kernel = _enum_cy
    else:
        kernel = _enum_py

    nthreads = thread_count() if threads is None else max(1, threads)
    top = radii[m - 1] if m else 0
    if nthreads == 1 or m == 0 or 2 * top + 1 < 2 * nthreads:
        return kernel.enumerate_box(gram, t, radii)

    # Partition the last coordinate into contiguous chunks.
    points = list(range(-top, top + 1))
    chunk = -(-len(points) // nthreads)
    ranges = [
        (points[i], points[min(i + chunk, len(points)) - 1])
        for i in range(0, len(points), chunk)
    ]
    sols = []
    examined = 0
    with ThreadPoolExecutor(max_workers=nthreads) as pool:
        futures = [pool.submit(kernel.enumerate_box, gram, t, radii, lo, hi)
                   for lo, hi in ranges]
        for fut in futures:
            part, ex = fut.result()
            sols.extend(part)
            examined += ex
    return sols, examined
