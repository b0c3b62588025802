"""Integral structure on subspaces and the bounded enumeration oracle.

`saturate` computes a reduced basis of the lattice V ∩ Z^n;
`enumerate_representations` / `enumerate_zeros` exhaustively search
coordinate boxes against such a basis, with exact interval pruning, and
stand in for the existence theorems they cross-check.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from . import linalg
from .avoidance import make_avoider
from .enumeration import solve_box
from .errors import DomainError
from .heights import subspace_height
from .quadspace import _dual_coordinate_bounds, restrict_to_basis

DEFAULT_C_ORACLE = 32


def vector_key(z):
    """Total order on integer vectors: sup-norm, then coordinatewise
    absolute values, then signs (positive before negative).

    Of a pair {z, -z} the representative whose first nonzero coordinate is
    positive sorts first, so minimal solutions come out sign-normalized.
    """
    return (
        linalg.sup_norm(z),
        tuple(abs(c) for c in z),
        tuple(c < 0 for c in z),
    )


@dataclass(frozen=True)
class IntegralBasis:
    """A Z-basis of V ∩ Z^n, size-reduced; quality = height product / H(V)."""

    vectors: tuple
    height_product: int
    quality: Fraction

    @property
    def m(self):
        return len(self.vectors)

    @property
    def n(self):
        return len(self.vectors[0])

    def matrix(self):
        return [list(v) for v in self.vectors]


@dataclass(frozen=True)
class OracleResult:
    solutions: tuple
    minimal_height: int | None
    exhausted_radius: int
    count_examined: int

    def found(self):
        return bool(self.solutions)

    def to_json(self):
        return {
            "solutions": [list(z) for z in self.solutions],
            "minimal_height": self.minimal_height,
            "exhausted_radius": self.exhausted_radius,
            "count_examined": self.count_examined,
        }


def saturate(V):
    """LLL-reduced basis of the saturated lattice V ∩ Z^n."""
    if V.m == 0:
        raise DomainError("cannot saturate the zero subspace")
    if V.m == V.n:
        rows = [tuple(r) for r in linalg.identity(V.n)]
    else:
        constraints = [list(r) for r in linalg.nullspace([list(b) for b in V.basis])]
        rows = linalg.left_kernel_int(linalg.transpose(constraints))
        rows = linalg.lll(rows)
    rows = tuple(linalg.primitive_integer(r) if any(r) else r for r in rows)
    hp = 1
    for r in rows:
        hp *= linalg.sup_norm(r)
    return IntegralBasis(
        vectors=rows,
        height_product=hp,
        quality=Fraction(hp) / subspace_height(V),
    )


def _as_int_gram(Q, rows):
    G = restrict_to_basis(Q, rows)
    if not G.integral:
        raise DomainError("restricted Gram matrix is not integral")
    return [[int(e) for e in row] for row in G.gram]


def _solutions_in_box(gram, rows, t, radii, excluded, exclude_zero):
    raw, examined = solve_box(gram, t, radii)
    B = [list(r) for r in rows]
    out = []
    for u in raw:
        z = tuple(int(e) for e in linalg.vec_mat(u, B))
        if exclude_zero and not any(z):
            continue
        if excluded(z):
            continue
        out.append(z)
    return out, examined


def _radius_schedule(cap):
    r = 1
    while r < cap:
        yield r
        r *= 2
    yield cap


def _enumerate(Q, basis, t, radius, avoid, mode, exclude_zero):
    if not Q.integral:
        raise DomainError("the enumeration oracle requires an integral form")
    if int(t) != t:
        raise DomainError("the target value must be an integer")
    t = int(t)
    radius = int(radius)
    if radius < 1:
        raise DomainError("radius must be positive")
    if mode not in ("first_minimal", "all"):
        raise DomainError(f"unknown mode {mode!r}")

    rows = basis.vectors
    gram = _as_int_gram(Q, rows)
    excluded = make_avoider(avoid, Q.n)
    examined_total = 0

    if mode == "all":
        sols, examined = _solutions_in_box(
            gram, rows, t, [radius] * len(rows), excluded, exclude_zero
        )
        sols = sorted(set(sols), key=vector_key)
        return OracleResult(
            solutions=tuple(sols),
            minimal_height=linalg.sup_norm(sols[0]) if sols else None,
            exhausted_radius=radius,
            count_examined=examined,
        )

    dual = _dual_coordinate_bounds(rows)
    for r in _radius_schedule(radius):
        sols, examined = _solutions_in_box(
            gram, rows, t, [r] * len(rows), excluded, exclude_zero
        )
        examined_total += examined
        if not sols:
            continue
        s = min(linalg.sup_norm(z) for z in sols)
        # Any z of smaller sup-norm has coordinates within s * dual bounds;
        # widen the box once so the reported minimum is global.
        wide = [min(radius, int(s * c)) for c in dual]
        if any(w > r for w in wide):
            radii = [max(w, r) for w in wide]
            sols, examined = _solutions_in_box(gram, rows, t, radii, excluded, exclude_zero)
            examined_total += examined
        best = min(sols, key=vector_key)
        return OracleResult(
            solutions=(best,),
            minimal_height=linalg.sup_norm(best),
            exhausted_radius=r,
            count_examined=examined_total,
        )
    return OracleResult(
        solutions=(),
        minimal_height=None,
        exhausted_radius=radius,
        count_examined=examined_total,
    )


def enumerate_representations(Q, basis, t, radius, avoid=None, mode="first_minimal"):
    """Integer z = sum u_i x_i with Q(z) = t, |u|_sup <= radius, z outside avoid."""
    return _enumerate(Q, basis, t, radius, avoid, mode, exclude_zero=(t == 0))


def enumerate_zeros(Q, basis, radius, avoid=None, mode="first_minimal"):
    """Nontrivial integer zeros of Q against the basis; same contract as
    enumerate_representations with target 0."""
    return _enumerate(Q, basis, 0, radius, avoid, mode, exclude_zero=True)


def enumerate_naive(Q, basis, t, radius, avoid=None):
    """Reference oracle: full product enumeration without pruning."""
    from itertools import product

    if not Q.integral:
        raise DomainError("the enumeration oracle requires an integral form")
    rows = basis.vectors
    gram = _as_int_gram(Q, rows)
    excluded = make_avoider(avoid, Q.n)
    B = [list(r) for r in rows]
    m = len(rows)
    sols = []
    examined = 0
    for u in product(range(-radius, radius + 1), repeat=m):
        examined += 1
        val = sum(gram[i][j] * u[i] * u[j] for i in range(m) for j in range(m))
        if val != t:
            continue
        z = tuple(int(e) for e in linalg.vec_mat(u, B))
        if t == 0 and not any(z):
            continue
        if excluded(z):
            continue
        sols.append(z)
    sols = sorted(set(sols), key=vector_key)
    return OracleResult(
        solutions=tuple(sols),
        minimal_height=linalg.sup_norm(sols[0]) if sols else None,
        exhausted_radius=radius,
        count_examined=examined,
    )


def default_oracle_radius(Q, V, t, c_oracle=DEFAULT_C_ORACLE):
    """ceil(c * h(Q_t)^((m+1)/2) * H(V)^2), the only bound shape available."""
    from .heights import poly_height
    from .quadspace import _sqrt_ceil_fraction

    m = V.m
    hqt = poly_height(Q.minus_constant_poly(t), "inhomogeneous")
    hv = subspace_height(V)
    val = Fraction(c_oracle * hv ** 2) ** 2 * hqt ** (m + 1)
    return max(1, _sqrt_ceil_fraction(val))
