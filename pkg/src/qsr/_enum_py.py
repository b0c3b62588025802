"""Pure-Python box enumeration kernel.

Enumerates integer vectors u with |u_i| <= radii[i] and u^T G u == t for a
symmetric integer matrix G.  Branches are pruned with an exact interval
bound: after fixing a suffix of the coordinates the remaining contribution
is bracketed by summing absolute term bounds over the unfixed box.

This is the fallback for the compiled kernel in _enum_cy; both must return
the identical solution set and examined-leaf count.
"""

BACKEND_NAME = "python"


def enumerate_box(gram, t, radii, lo=None, hi=None):
    """All solutions in the box, plus the number of leaves examined.

    `lo`/`hi` optionally restrict the range of the last coordinate (used to
    partition work across threads); they default to the full +-radius range.
    """
    m = len(gram)
    if m == 0:
        return [], 0
    if any(r < 0 for r in radii):
        raise ValueError("radii must be nonnegative")
    top_lo = -radii[m - 1] if lo is None else lo
    top_hi = radii[m - 1] if hi is None else hi

    # S[k]: worst-case |contribution| of coordinates 0..k over the box.
    S = [0] * m
    acc = 0
    for k in range(m):
        acc += abs(gram[k][k]) * radii[k] * radii[k]
        for i in range(k):
            acc += 2 * abs(gram[i][k]) * radii[i] * radii[k]
        S[k] = acc

    sols = []
    examined = 0
    u = [0] * m
    c = [0] * m  # c[i] = sum over fixed j > current k of gram[i][j] * u[j]

    def rec(k, val):
        nonlocal examined
        if k < 0:
            examined += 1
            if val == t:
                sols.append(tuple(u))
            return
        slack = S[k] + 2 * sum(radii[i] * abs(c[i]) for i in range(k + 1))
        d = t - val
        if d < -slack or d > slack:
            return
        gkk = gram[k][k]
        ck = c[k]
        vlo = -radii[k] if k < m - 1 else top_lo
        vhi = radii[k] if k < m - 1 else top_hi
        col = [gram[i][k] for i in range(k)]
        for i in range(k):
            c[i] += col[i] * vlo
        v = vlo
        while v <= vhi:
            u[k] = v
            rec(k - 1, val + gkk * v * v + 2 * v * ck)
            for i in range(k):
                c[i] += col[i]
            v += 1
        for i in range(k):
            c[i] -= col[i] * (vhi + 1)
        u[k] = 0

    rec(m - 1, 0)
    return sols, examined
