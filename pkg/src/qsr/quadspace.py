"""Quadratic forms via Gram matrices: bilinear form, radical, complements,
restriction, isotropic vector search, and Witt decomposition.

All arithmetic is exact.  Anisotropy is *certified* only when it can be
established structurally (definite restriction or dimension <= 1); otherwise
searches report the exhausted radius and certificates carry a
``searched_up_to`` certainty.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt, lcm

from . import linalg
from .errors import DomainError, SearchExhausted
from .heights import (
    SparsePoly,
    Subspace,
    global_height,
    inhom_height,
    intersect,
    poly_height,
    subspace_height,
)

DEFAULT_C_SEARCH = 16


class GramForm:
    """Symmetric n x n rational Gram matrix G with Q(x) = x^T G x."""

    __slots__ = ("n", "gram", "integral")

    def __init__(self, gram):
        gram = [[Fraction(e) for e in row] for row in gram]
        n = len(gram)
        if any(len(row) != n for row in gram):
            raise DomainError("Gram matrix must be square")
        for i in range(n):
            for j in range(i):
                if gram[i][j] != gram[j][i]:
                    raise DomainError("Gram matrix must be symmetric")
        self.n = n
        self.gram = tuple(tuple(row) for row in gram)
        self.integral = all(e.denominator == 1 for row in self.gram for e in row)

    @classmethod
    def diagonal(cls, entries):
        n = len(entries)
        return cls([[entries[i] if i == j else 0 for j in range(n)] for i in range(n)])

    def is_zero(self):
        return all(e == 0 for row in self.gram for e in row)

    def to_poly(self):
        """Q as a quadratic polynomial: g_ii X_i^2 + 2 g_ij X_i X_j (i < j)."""
        terms = []
        for i in range(self.n):
            for j in range(i, self.n):
                exp = [0] * self.n
                exp[i] += 1
                exp[j] += 1
                coef = self.gram[i][j] if i == j else 2 * self.gram[i][j]
                terms.append((tuple(exp), coef))
        return SparsePoly(self.n, terms)

    def minus_constant_poly(self, t):
        """The polynomial Q_t = Q - t in the same n variables."""
        p = self.to_poly()
        terms = list(p.terms) + [((0,) * self.n, -Fraction(t))]
        return SparsePoly(self.n, terms)

    def homogenized_minus(self, t):
        """Gram matrix of Q_t^* = Q - t X_{n+1}^2 on n+1 variables."""
        rows = [list(row) + [Fraction(0)] for row in self.gram]
        rows.append([Fraction(0)] * self.n + [-Fraction(t)])
        return GramForm(rows)

    def scaled_integral(self):
        """(c, integral GramForm of c*G) with the smallest positive integer c."""
        den = lcm(*(e.denominator for row in self.gram for e in row))
        return den, GramForm([[e * den for e in row] for row in self.gram])

    def to_json(self):
        return {
            "n": self.n,
            "gram": [
                [int(e) if e.denominator == 1 else str(e) for e in row]
                for row in self.gram
            ],
        }

    @classmethod
    def from_json(cls, data):
        return cls([[Fraction(str(e)) for e in row] for row in data["gram"]])

    def __eq__(self, other):
        return isinstance(other, GramForm) and self.gram == other.gram

    def __hash__(self):
        return hash(self.gram)

    def __repr__(self):
        return f"GramForm({[list(map(str, row)) for row in self.gram]})"


def evaluate(Q, x):
    """Q(x) = x^T G x."""
    x = linalg.vec(x)
    if len(x) != Q.n:
        raise DomainError("dimension mismatch")
    return sum(x[i] * Q.gram[i][j] * x[j] for i in range(Q.n) for j in range(Q.n))


def bilinear(Q, x, y):
    """The symmetric bilinear form Q(x, y) = x^T G y; Q(x, x) = Q(x)."""
    x, y = linalg.vec(x), linalg.vec(y)
    if len(x) != Q.n or len(y) != Q.n:
        raise DomainError("dimension mismatch")
    return sum(x[i] * Q.gram[i][j] * y[j] for i in range(Q.n) for j in range(Q.n))


def form_height_h(Q):
    """Inhomogeneous height h(Q) of the form's coefficient vector."""
    return poly_height(Q.to_poly(), "inhomogeneous")


def form_height_H(Q):
    """Homogeneous height H(Q) of the form's coefficient vector."""
    return poly_height(Q.to_poly(), "homogeneous")


def restrict(Q, T):
    """Gram matrix T^t G T of Q restricted along an n x m full-rank matrix T."""
    T = [[Fraction(e) for e in row] for row in T]
    if len(T) != Q.n:
        raise DomainError("T must have n rows")
    m = len(T[0])
    if linalg.rank(T) != m:
        raise DomainError("T must have full column rank")
    G = [list(row) for row in Q.gram]
    Tt = linalg.transpose(T)
    return GramForm(linalg.mat_mul(linalg.mat_mul(Tt, G), T))


def restrict_to_basis(Q, rows):
    """Gram matrix of Q pulled back to the given basis rows (m x n)."""
    return restrict(Q, linalg.transpose([list(r) for r in rows]))


def orth_complement(Q, V):
    """perp_Q(V) = {x in Q^n : Q(x, y) = 0 for all y in V}."""
    if V.n != Q.n:
        raise DomainError("dimension mismatch")
    if V.is_zero():
        return Subspace.full(Q.n)
    G = [list(row) for row in Q.gram]
    eqs = [list(linalg.vec_mat(b, G)) for b in V.basis]
    return Subspace(Q.n, linalg.nullspace(eqs))


def radical(V, Q):
    """V^perp = {x in V : Q(x, y) = 0 for all y in V}."""
    if V.is_zero():
        return Subspace.zero(Q.n)
    Gr = restrict_to_basis(Q, V.basis)
    coeff_kernel = linalg.nullspace([list(row) for row in Gr.gram])
    rows = [linalg.vec_mat(a, [list(r) for r in V.basis]) for a in coeff_kernel]
    return Subspace(Q.n, rows)


def ambient_singular(V, Q):
    """V intersected with the radical of the full ambient space.

    This is the correct third term of the dimension identity
    dim V + dim perp_Q(V) - dim(V ∩ rad Q) = n; with the radical of
    (V, Q) in its place the identity fails whenever V contains singular
    points that are not singular in the ambient space.
    """
    from .heights import intersect

    return intersect(V, orth_complement(Q, Subspace.full(Q.n)))


def signature(Q):
    """Inertia (positive, negative, zero) counts by exact congruence diagonalization."""
    n = Q.n
    M = [list(row) for row in Q.gram]
    pos = neg = zero = 0
    i = 0
    while i < n:
        if M[i][i] == 0:
            j = next((j for j in range(i + 1, n) if M[j][j] != 0), None)
            if j is not None:
                M[i], M[j] = M[j], M[i]
                for row in M:
                    row[i], row[j] = row[j], row[i]
            else:
                j = next((j for j in range(i + 1, n) if M[i][j] != 0), None)
                if j is None:
                    zero += 1
                    i += 1
                    continue
                # e_i <- e_i + e_j turns the diagonal entry into 2*M[i][j]
                for col in range(n):
                    M[i][col] += M[j][col]
                for row in M:
                    row[i] += row[j]
        d = M[i][i]
        if d > 0:
            pos += 1
        else:
            neg += 1
        for j in range(i + 1, n):
            if M[j][i] != 0:
                f = M[j][i] / d
                for col in range(n):
                    M[j][col] -= f * M[i][col]
                for row in M:
                    row[j] -= f * row[i]
        i += 1
    return pos, neg, zero


def is_definite(Q):
    pos, neg, zero = signature(Q)
    return zero == 0 and (pos == Q.n or neg == Q.n)


@dataclass(frozen=True)
class Certainty:
    kind: str  # "certified" | "searched_up_to"
    bound: int | None = None

    @classmethod
    def certified(cls):
        return cls("certified")

    @classmethod
    def searched_up_to(cls, bound):
        return cls("searched_up_to", int(bound))

    def __str__(self):
        if self.kind == "certified":
            return "certified"
        return f"searched_up_to({self.bound})"


@dataclass(frozen=True)
class WittCertificate:
    w: int
    hyperbolic_pairs: tuple  # ((u_i, v_i), ...) integer vectors in V
    anisotropic_kernel_basis: tuple
    certainty: Certainty


class QuadSpace:
    """A subspace V of Q^n together with a quadratic form Q."""

    __slots__ = ("V", "Q", "_radical")

    def __init__(self, V, Q):
        if V.n != Q.n:
            raise DomainError("dimension mismatch between V and Q")
        self.V = V
        self.Q = Q
        self._radical = None

    def radical(self):
        if self._radical is None:
            self._radical = radical(self.V, self.Q)
        return self._radical

    @property
    def radical_dim(self):
        return self.radical().m

    @property
    def regular(self):
        return self.radical_dim == 0


def _sqrt_ceil_fraction(x):
    """Smallest integer r with r*r >= x, for a nonnegative rational x."""
    if x <= 0:
        return 0
    num, den = x.numerator, x.denominator
    # ceil(num/den) then integer sqrt ceiling
    c = -(-num // den)
    r = isqrt(c)
    return r if r * r >= c else r + 1


def default_search_radius(Q, V, c_search=DEFAULT_C_SEARCH):
    """ceil(c * h(Q)^((m+1)/2) * H(V)^2); a Cassels-type bound shape."""
    m = V.m
    hq = form_height_h(Q)
    hv = subspace_height(V)
    val = Fraction(c_search * hv ** 2) ** 2 * hq ** (m + 1)
    return max(1, _sqrt_ceil_fraction(val))


def _dual_coordinate_bounds(rows):
    """Per-coordinate c_j with |u_j| <= s * c_j whenever |(u B)|_sup <= s.

    rows is an integral basis B (m x n); u recovers from z = u B through
    the pseudo-inverse, whose absolute row sums give the bounds.
    """
    B = [list(r) for r in rows]
    Bt = linalg.transpose(B)
    Gr = linalg.mat_mul(B, Bt)
    m = len(B)
    # solve Gr * Y = B exactly (Y = Gr^{-1} B)
    aug = [list(Gr[i]) + list(B[i]) for i in range(m)]
    R, pivots = linalg.rref(aug)
    Y = [row[m:] for row in R[:m]]
    return [sum(abs(e) for e in Y[j]) for j in range(m)]


def _radius_schedule(cap):
    r = 1
    while r < cap:
        yield r
        r *= 2
    yield cap


def find_isotropic(V, Q, avoid=None, radius=None, c_search=DEFAULT_C_SEARCH):
    """Minimal-sup-norm primitive integer isotropic vector in V, avoiding `avoid`.

    Enumerates V ∩ Z^n in boxes of increasing sup-norm; among solutions of
    the smallest sup-norm the canonical representative (smallest by absolute
    values, positive before negative) is returned.  Raises SearchExhausted
    when no vector up to the radius qualifies.
    """
    from . import lattice
    from .avoidance import make_avoider

    space = QuadSpace(V, Q)
    if not space.regular:
        raise DomainError("find_isotropic requires a regular quadratic space")
    if radius is None:
        radius = default_search_radius(Q, V, c_search)
    excluded = make_avoider(avoid, V.n)

    basis = lattice.saturate(V)
    rows = basis.vectors
    _, Gi = restrict_to_basis(Q, rows).scaled_integral()
    gram = [[int(e) for e in row] for row in Gi.gram]
    dual = _dual_coordinate_bounds(rows)

    from .enumeration import solve_box

    for s in _radius_schedule(radius):
        radii = [int(s * c) for c in dual]
        sols, _ = solve_box(gram, 0, radii)
        best = None
        for u in sols:
            z = linalg.vec_mat(u, [list(r) for r in rows])
            z = tuple(int(e) for e in z)
            nrm = linalg.sup_norm(z)
            if nrm == 0 or nrm > s:
                continue
            if gcd(*z) != 1:
                continue
            if excluded(z):
                continue
            key = lattice.vector_key(z)
            if best is None or key < best[0]:
                best = (key, z)
        if best is not None:
            return best[1]
    raise SearchExhausted(radius)


def witt_decompose(V, Q, radius=None, c_search=DEFAULT_C_SEARCH):
    """Split hyperbolic planes off (V, Q) until the rest is anisotropic.

    The remainder is certified anisotropic only when its restricted form is
    definite (or of dimension <= 1); otherwise the certificate records the
    exhausted search radius.
    """
    from . import lattice

    space = QuadSpace(V, Q)
    if not space.regular:
        raise DomainError("witt_decompose requires a regular quadratic space")

    pairs = []
    current = V
    while True:
        if current.m == 0:
            certainty = Certainty.certified()
            kernel = ()
            break
        rows = lattice.saturate(current).vectors
        if current.m == 1 or is_definite(restrict_to_basis(Q, rows)):
            certainty = Certainty.certified()
            kernel = rows
            break
        try:
            u = find_isotropic(current, Q, radius=radius, c_search=c_search)
        except SearchExhausted as exc:
            certainty = Certainty.searched_up_to(exc.radius)
            kernel = rows
            break
        v = next((b for b in rows if bilinear(Q, u, b) != 0), None)
        if v is None:
            raise DomainError("regular space has no hyperbolic partner; inconsistent state")
        b = bilinear(Q, u, v)
        v2 = tuple(2 * b * vi - evaluate(Q, v) * ui for vi, ui in zip(v, u))
        v2 = linalg.primitive_integer(v2)
        pairs.append((u, v2))
        comp = orth_complement(Q, Subspace(Q.n, [u, v2]))
        current = intersect(current, comp)

    return WittCertificate(
        w=len(pairs),
        hyperbolic_pairs=tuple(pairs),
        anisotropic_kernel_basis=tuple(kernel),
        certainty=certainty,
    )
