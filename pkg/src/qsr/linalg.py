"""Exact linear algebra over the rationals and the integers.

Matrices are plain lists of row lists; entries are ints or
:class:`fractions.Fraction`.  Everything here is exact: no floats, no
tolerance parameters.
"""

from fractions import Fraction
from itertools import combinations
from math import gcd, lcm


def vec(entries):
    """Coerce a sequence to a tuple of Fractions."""
    return tuple(Fraction(e) for e in entries)


def mat(rows):
    return [[Fraction(e) for e in row] for row in rows]


def identity(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def transpose(A):
    return [list(col) for col in zip(*A)]


def mat_mul(A, B):
    Bt = list(zip(*B))
    return [[sum(a * b for a, b in zip(row, col)) for col in Bt] for row in A]


def mat_vec(A, x):
    return tuple(sum(a * b for a, b in zip(row, x)) for row in A)


def vec_mat(x, A):
    return tuple(sum(x[i] * A[i][j] for i in range(len(x))) for j in range(len(A[0])))


def dot(x, y):
    return sum(a * b for a, b in zip(x, y))


def sup_norm(x):
    return max((abs(c) for c in x), default=0)


def is_zero_vec(x):
    return all(c == 0 for c in x)


def primitive_integer(x, positive_lead=True):
    """Scale a nonzero rational vector to a primitive integer vector.

    With ``positive_lead`` the first nonzero coordinate is made positive,
    which fixes a canonical representative of the projective point.
    """
    den = lcm(*(Fraction(c).denominator for c in x)) if x else 1
    ints = [int(Fraction(c) * den) for c in x]
    g = gcd(*ints) if any(ints) else 0
    if g == 0:
        raise ValueError("zero vector has no primitive form")
    ints = [c // g for c in ints]
    if positive_lead:
        lead = next(c for c in ints if c != 0)
        if lead < 0:
            ints = [-c for c in ints]
    return tuple(ints)


def rref(A):
    """Reduced row echelon form; returns (rows, pivot column indices)."""
    R = mat(A)
    nrows = len(R)
    ncols = len(R[0]) if nrows else 0
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, nrows) if R[i][c] != 0), None)
        if pivot is None:
            continue
        R[r], R[pivot] = R[pivot], R[r]
        inv = R[r][c]
        R[r] = [e / inv for e in R[r]]
        for i in range(nrows):
            if i != r and R[i][c] != 0:
                f = R[i][c]
                R[i] = [a - f * b for a, b in zip(R[i], R[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return R[:r] + R[r:], pivots


def rank(A):
    if not A:
        return 0
    return len(rref(A)[1])


def row_space_canonical(rows):
    """Canonical basis of a row space: RREF rows scaled to primitive integers.

    Equal subspaces produce syntactically equal bases.  Returns a tuple of
    integer tuples (possibly empty for the zero space).
    """
    if not rows:
        return ()
    R, pivots = rref(rows)
    return tuple(primitive_integer(R[i]) for i in range(len(pivots)))


def nullspace(A):
    """Basis rows for the right kernel {x : A x = 0} (primitive integer rows)."""
    ncols = len(A[0]) if A else 0
    if not A:
        return tuple(tuple(identity(ncols)[i]) for i in range(ncols))
    R, pivots = rref(A)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        x = [Fraction(0)] * ncols
        x[f] = Fraction(1)
        for i, p in enumerate(pivots):
            x[p] = -R[i][f]
        basis.append(primitive_integer(x))
    return tuple(basis)


def det(A):
    """Exact determinant by fraction-free style Gaussian elimination."""
    n = len(A)
    M = mat(A)
    sign = 1
    res = Fraction(1)
    for c in range(n):
        pivot = next((i for i in range(c, n) if M[i][c] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != c:
            M[c], M[pivot] = M[pivot], M[c]
            sign = -sign
        res *= M[c][c]
        inv = M[c][c]
        for i in range(c + 1, n):
            if M[i][c] != 0:
                f = M[i][c] / inv
                M[i] = [a - f * b for a, b in zip(M[i], M[c])]
    return sign * res


def minors(rows, size):
    """All size x size minors of a matrix, columns in lexicographic order."""
    ncols = len(rows[0])
    out = []
    for cols in combinations(range(ncols), size):
        out.append(det([[row[c] for c in cols] for row in rows[:size]]))
    return tuple(out)


def in_row_space(rows, x):
    """Exact membership test of x in the row space of `rows`."""
    if is_zero_vec(x):
        return True
    if not rows:
        return False
    return rank(list(rows)) == rank(list(rows) + [list(x)])


def hnf_transform(A):
    """Row-style Hermite normal form of an integer matrix.

    Returns (H, U, r) with U unimodular, U @ A == H, r = rank; the last
    len(A) - r rows of H are zero, so the corresponding rows of U span the
    left kernel of A over Z.
    """
    H = [[int(e) for e in row] for row in A]
    m = len(H)
    U = identity(m)
    r = 0
    ncols = len(H[0]) if H else 0
    for c in range(ncols):
        while True:
            nz = [i for i in range(r, m) if H[i][c] != 0]
            if len(nz) <= 1:
                break
            nz.sort(key=lambda i: abs(H[i][c]))
            i0 = nz[0]
            for i in nz[1:]:
                q = H[i][c] // H[i0][c]
                H[i] = [a - q * b for a, b in zip(H[i], H[i0])]
                U[i] = [a - q * b for a, b in zip(U[i], U[i0])]
        nz = [i for i in range(r, m) if H[i][c] != 0]
        if not nz:
            continue
        i0 = nz[0]
        H[r], H[i0] = H[i0], H[r]
        U[r], U[i0] = U[i0], U[r]
        if H[r][c] < 0:
            H[r] = [-e for e in H[r]]
            U[r] = [-e for e in U[r]]
        for i in range(r):
            q = H[i][c] // H[r][c]
            if q:
                H[i] = [a - q * b for a, b in zip(H[i], H[r])]
                U[i] = [a - q * b for a, b in zip(U[i], U[r])]
        r += 1
        if r == m:
            break
    return H, U, r


def left_kernel_int(A):
    """Basis of {x in Z^m : x A = 0}; the returned lattice is saturated."""
    H, U, r = hnf_transform(A)
    return tuple(tuple(row) for row in U[r:])


def _round_frac(x):
    return (2 * x.numerator + x.denominator) // (2 * x.denominator)


def _gso(b):
    n = len(b)
    mu = [[Fraction(0)] * n for _ in range(n)]
    ortho = [list(map(Fraction, row)) for row in b]
    norms = [Fraction(0)] * n
    for i in range(n):
        for j in range(i):
            mu[i][j] = Fraction(dot(b[i], ortho[j]), 1) / norms[j]
            ortho[i] = [a - mu[i][j] * o for a, o in zip(ortho[i], ortho[j])]
        norms[i] = dot(ortho[i], ortho[i])
    return mu, norms


def lll(basis, delta=Fraction(3, 4)):
    """Exact LLL reduction of linearly independent integer rows.

    Dimensions here are small (desk scale), so the Gram-Schmidt data is
    recomputed after each size-reduction pass instead of updated in place.
    """
    b = [list(int(e) for e in row) for row in basis]
    n = len(b)
    if n <= 1:
        return [tuple(row) for row in b]
    k = 1
    while k < n:
        mu, norms = _gso(b)
        for j in range(k - 1, -1, -1):
            q = _round_frac(mu[k][j])
            if q:
                b[k] = [a - q * c for a, c in zip(b[k], b[j])]
                mu, norms = _gso(b)
        if norms[k] >= (delta - mu[k][k - 1] ** 2) * norms[k - 1]:
            k += 1
        else:
            b[k], b[k - 1] = b[k - 1], b[k]
            k = max(k - 1, 1)
    return [tuple(row) for row in b]
