"""Constructive production of small-height representations.

Implements isotropic transport, hyperplane-avoiding isotropic vectors,
rational representation through homogenization, subspace integral
representation, pigeonhole hyperplane avoidance, and the composed
integral-avoiding pipeline.  Every returned solution is re-verified by
exact evaluation before it is reported.
"""

from dataclasses import dataclass, field
import decimal
from fractions import Fraction
from itertools import product
from math import gcd, lcm
import sys

from . import lattice, linalg, quadspace
from .avoidance import make_avoider
from .errors import DomainError, SearchExhausted
from .heights import (
    AlgebraicSet,
    Subspace,
    global_height,
    homogenize_set,
    inhom_height,
    linear_form_poly,
    poly_height,
    subspace_height,
)
from .quadspace import (
    Certainty,
    GramForm,
    QuadSpace,
    WittCertificate,
    bilinear,
    evaluate,
    find_isotropic,
    orth_complement,
    witt_decompose,
)

DEFAULT_X_CAP_FACTOR = 10

# Exact bound ratios are reported as L-th powers with L up to a few
# thousand; their decimal expansions routinely exceed the interpreter's
# default 4300-digit guard for int -> str conversion.
if sys.get_int_max_str_digits() < 2_000_000:
    sys.set_int_max_str_digits(2_000_000)


def dietmann_exponent(n):
    """The representation exponent l(n): 2100, 84, then 5n + 19 + 74/(n-4)."""
    if n < 3:
        raise DomainError("the exponent table starts at n = 3")
    if n == 3:
        return Fraction(2100)
    if n == 4:
        return Fraction(84)
    return Fraction(5 * n + 19) + Fraction(74, n - 4)


def pigeonhole_a(ell):
    """a_l = 2^(l-1) + ... + 2 + 1 = 2^l - 1."""
    if ell < 1:
        raise DomainError("window index starts at 1")
    return 2 ** ell - 1


def pigeonhole_window(ell, k):
    """I_l = {(k+1)a_l - k, ..., (k+1)a_l}; consecutive windows are disjoint."""
    a = pigeonhole_a(ell)
    return range((k + 1) * a - k, (k + 1) * a + 1)


# ---------------------------------------------------------------------------
# hyperplanes restricted to a subspace

@dataclass(frozen=True)
class HyperplaneInV:
    """A hyperplane of V: the kernel in V of a linear form not vanishing on V."""

    V: Subspace
    functional: tuple
    kernel_in_V: Subspace = field(compare=False)

    def __init__(self, V, functional):
        functional = linalg.vec(functional)
        if len(functional) != V.n:
            raise DomainError("functional has wrong ambient dimension")
        if linalg.is_zero_vec(functional):
            raise DomainError("functional is zero")
        kernel = Subspace(V.n, linalg.nullspace([list(functional)]))
        ker_in_v = _intersect_sub(V, kernel)
        if ker_in_v.m != V.m - 1:
            raise DomainError("linear form vanishes identically on V")
        object.__setattr__(self, "V", V)
        object.__setattr__(self, "functional", functional)
        object.__setattr__(self, "kernel_in_V", ker_in_v)

    def contains(self, x):
        return linalg.dot(self.functional, x) == 0


def _intersect_sub(U1, U2):
    from .heights import intersect

    return intersect(U1, U2)


# ---------------------------------------------------------------------------
# bound expressions and reports

_DECIMAL_PREC = 40


def _frac_to_decimal(x, prec=_DECIMAL_PREC):
    with decimal.localcontext() as ctx:
        ctx.prec = prec
        return decimal.Decimal(x.numerator) / decimal.Decimal(x.denominator)


@dataclass(frozen=True)
class BoundExpr:
    """Product of named components base^exponent with exact rational exponents.

    Exponents may be half-integral (or worse), so exact arithmetic is done on
    the L-th power of the ratio, L = lcm of the exponent denominators.
    """

    components: tuple  # ((name, Fraction base, Fraction exponent), ...)

    @property
    def power(self):
        return lcm(*(exp.denominator for _, _, exp in self.components)) if self.components else 1

    def value_pow(self):
        """The bound raised to the L-th power, as an exact Fraction."""
        L = self.power
        out = Fraction(1)
        for _, base, exp in self.components:
            out *= base ** int(exp * L)
        return out

    def ratio_pow(self, height):
        """(height / bound)^L as an exact Fraction."""
        return Fraction(height) ** self.power / self.value_pow()

    def ratio_decimal(self, height, prec=_DECIMAL_PREC):
        rp = self.ratio_pow(height)
        with decimal.localcontext() as ctx:
            ctx.prec = prec
            d = decimal.Decimal(rp.numerator) / decimal.Decimal(rp.denominator)
            if self.power == 1:
                return +d
            return +(d ** (decimal.Decimal(1) / decimal.Decimal(self.power)))

    def to_json(self):
        return {
            "components": [
                {"name": name, "base": str(base), "exponent": str(exp)}
                for name, base, exp in self.components
            ],
            "power": self.power,
        }


@dataclass(frozen=True)
class SolutionReport:
    """A verified solution together with the bound it is measured against."""

    z: tuple
    value: Fraction
    heights: dict
    bound: BoundExpr
    case_tag: str
    witt_w: int
    provisional: bool  # true when the Witt index was only searched, not certified
    indices: tuple | None = None  # (r, l) for pigeonhole branches
    search: dict = field(default_factory=dict)

    @property
    def height(self):
        return self.heights["h_z"]

    def ratio_pow(self):
        return self.bound.ratio_pow(self.height)

    def ratio_decimal(self):
        return self.bound.ratio_decimal(self.height)

    def to_json(self):
        return {
            "z": [str(c) for c in self.z],
            "value": str(self.value),
            "heights": {k: str(v) for k, v in self.heights.items()},
            "bound": self.bound.to_json(),
            "ratio_power": self.bound.power,
            "ratio_pow": str(self.ratio_pow()),
            "ratio_decimal": str(self.ratio_decimal()),
            "case_tag": self.case_tag,
            "witt_w": self.witt_w,
            "provisional": self.provisional,
            "indices": list(self.indices) if self.indices else None,
            "search": self.search,
        }


def _form_heights(Q, t=None):
    out = {
        "h_Q": quadspace.form_height_h(Q),
        "H_Q": quadspace.form_height_H(Q),
    }
    if t is not None:
        out["h_Qt"] = poly_height(Q.minus_constant_poly(t), "inhomogeneous")
        out["H_Qt_star"] = poly_height(
            Q.homogenized_minus(t).to_poly(), "homogeneous"
        )
    return out


def _require_regular(V, Q):
    if not QuadSpace(V, Q).regular:
        raise DomainError("the quadratic space (V, Q) must be regular")


def _witt_of(V, Q, witt):
    if witt is None:
        witt = witt_decompose(V, Q)
    return witt


# ---------------------------------------------------------------------------
# Lemma 4.1 machinery

def isotropic_transport(Q, u, x):
    """T_u(x) = Q(x) u - 2 Q(x, u) x; isotropic for every x when Q(u) = 0."""
    u = linalg.vec(u)
    x = linalg.vec(x)
    if evaluate(Q, u) != 0:
        raise DomainError("transport base vector must be isotropic")
    qx = evaluate(Q, x)
    qxu = bilinear(Q, x, u)
    return tuple(qx * ui - 2 * qxu * xi for ui, xi in zip(u, x))


def isotropic_avoiding(V, Q, hyperplanes, radius=None, x_cap=None):
    """Integral isotropic vector of V off every given hyperplane of V.

    Finds a base isotropic vector and transports it: the product of the
    linear forms composed with the transport is a nonzero polynomial, so an
    integer point where it does not vanish exists; points are tried in boxes
    of increasing sup-norm.
    """
    if V.m < 3:
        raise DomainError("hyperplane-avoiding isotropic vectors need dimension >= 3")
    _require_regular(V, Q)
    u = find_isotropic(V, Q, radius=radius)
    hyperplanes = list(hyperplanes)
    if not hyperplanes:
        return u
    k = len(hyperplanes)
    if x_cap is None:
        x_cap = DEFAULT_X_CAP_FACTOR * (k + 1)

    rows = lattice.saturate(V).vectors
    B = [list(r) for r in rows]
    for s in range(1, x_cap + 1):
        for w in product(range(-s, s + 1), repeat=len(rows)):
            if linalg.sup_norm(w) != s:
                continue
            x = linalg.vec_mat(w, B)
            z = isotropic_transport(Q, u, x)
            if linalg.is_zero_vec(z):
                continue
            if all(linalg.dot(h.functional, z) != 0 for h in hyperplanes):
                return linalg.primitive_integer(z)
    raise SearchExhausted(
        x_cap,
        "no transport witness found within the safety cap; "
        "the vanishing locus is unexpectedly dense",
    )


# ---------------------------------------------------------------------------
# pipelines

def represent_field_avoiding(Q, V, t, Z=None, radius=None, witt=None,
                             c_oracle=lattice.DEFAULT_C_ORACLE):
    """Rational z in V with Q(z) = t outside the algebraic set Z.

    Works through the homogenization Q - t X_{n+1}^2 on V + Q e_{n+1}: an
    integral zero off the homogenized set and off the hyperplane
    X_{n+1} = 0 descales to the requested point, with h(z) = H(y).
    """
    t = Fraction(t)
    if t == 0:
        raise DomainError("the represented value must be nonzero")
    if V.m == 0:
        raise DomainError("V must be a nonzero subspace")
    if Z is not None and Z.sets and Z.nvars != Q.n:
        raise DomainError("avoidance set has wrong number of variables")
    witt = _witt_of(V, Q, witt)
    w = witt.w

    n = Q.n
    Gstar = Q.homogenized_minus(t)
    scale, Gstar_int = Gstar.scaled_integral()
    Vstar = Subspace(
        n + 1,
        [tuple(r) + (0,) for r in V.basis] + [(0,) * n + (1,)],
    )
    last_coord = [0] * (n + 1)
    last_coord[n] = 1
    families = [(linear_form_poly(last_coord),)]
    if Z is not None and Z.sets:
        families = list(homogenize_set(Z).sets) + families
    avoid = AlgebraicSet(tuple(families))

    basis = lattice.saturate(Vstar)
    if radius is None:
        radius = lattice.default_oracle_radius(Q, V, t, c_oracle)
    result = lattice.enumerate_zeros(Gstar_int, basis, radius, avoid=avoid)
    if not result.found():
        raise SearchExhausted(result.exhausted_radius)
    y = result.solutions[0]
    z = tuple(Fraction(c, y[n]) for c in y[:n])

    if evaluate(Q, z) != t:
        raise AssertionError("descaled point fails exact verification")
    hz = inhom_height(z)
    if hz != global_height(y):
        raise AssertionError("product-formula identity h(z) = H(y) violated")
    heights = {"h_z": hz, "H_y": global_height(y), "H_V": subspace_height(V)}
    heights.update(_form_heights(Q, t))
    bound = BoundExpr((
        ("H_Qt_star", heights["H_Qt_star"], Fraction(V.m - w + 2, 2)),
        ("H_V", heights["H_V"], Fraction(2)),
    ))
    return SolutionReport(
        z=z,
        value=t,
        heights=heights,
        bound=bound,
        case_tag="field-homogenization",
        witt_w=w,
        provisional=witt.certainty.kind != "certified",
        search={"radius": int(radius), "count_examined": result.count_examined,
                "scale": int(scale)},
    )


def represent_integral(Q, V, t, radius=None, witt=None,
                       c_oracle=lattice.DEFAULT_C_ORACLE):
    """Integer z in V ∩ Z^n with Q(z) = t, of minimal sup-norm found."""
    if not Q.integral:
        raise DomainError("Q must be integral")
    if int(t) != t:
        raise DomainError("t must be an integer")
    t = int(t)
    if V.m < 1:
        raise DomainError("V must be a nonzero subspace")
    _require_regular(V, Q)
    witt = _witt_of(V, Q, witt)

    basis = lattice.saturate(V)
    if radius is None:
        radius = lattice.default_oracle_radius(Q, V, t, c_oracle)
    result = lattice.enumerate_representations(Q, basis, t, radius)
    if not result.found():
        raise SearchExhausted(result.exhausted_radius)
    z = result.solutions[0]
    if evaluate(Q, z) != t:
        raise AssertionError("oracle solution fails exact verification")

    m = V.m
    # the exponent table starts at dimension 3; for smaller spaces the
    # search is still meaningful but the quoted bound is not backed
    ell = dietmann_exponent(max(m, 3))
    heights = {"h_z": inhom_height(z), "H_V": subspace_height(V)}
    heights.update(_form_heights(Q, t))
    bound = BoundExpr((
        ("h_Qt", heights["h_Qt"], ell),
        ("H_V", heights["H_V"], 2 * ell + 1),
    ))
    return SolutionReport(
        z=z,
        value=Fraction(t),
        heights=heights,
        bound=bound,
        case_tag="integral-subspace",
        witt_w=witt.w,
        provisional=witt.certainty.kind != "certified" or m < 3,
        search={"radius": int(radius), "count_examined": result.count_examined,
                "basis_quality": str(basis.quality)},
    )


def _check_distinct_hyperplanes(hyperplanes):
    kernels = [h.kernel_in_V for h in hyperplanes]
    if len(set(kernels)) != len(kernels):
        raise DomainError("hyperplanes must be pairwise distinct")


def _lemma42_bound(m, w, hy, hQ, HV):
    if w >= 2:
        return BoundExpr((
            ("h_y", hy, Fraction(2)),
            ("h_Q", hQ, Fraction(m - w + 5, 2)),
            ("H_V", HV, Fraction(2)),
        ))
    return BoundExpr((
        ("h_y", hy, 1 + Fraction(2, m - 2)),
        ("h_Q", hQ, m + 2 + Fraction(m + 4, m - 2)),
        ("H_V", HV, 4 + Fraction(6, m - 2)),
    ))


def avoid_hyperplanes(Q, V, y, hyperplanes, witt=None, radius=None):
    """Integer z in V with Q(z) = Q(y) off every hyperplane, by pigeonhole.

    Follows the two-case split on the Witt index: translation along a
    hyperplane-avoiding isotropic direction for w >= 2 (and the orthogonal
    w = 1 subcase), and the double-window quadratic translation otherwise.
    """
    if not Q.integral:
        raise DomainError("Q must be integral")
    y = tuple(int(c) for c in y)
    if V.m < 3:
        raise DomainError("hyperplane avoidance needs dim V >= 3")
    _require_regular(V, Q)
    if not V.contains(y):
        raise DomainError("y must lie in V")
    ty = evaluate(Q, y)
    if ty == 0:
        raise DomainError("y must be anisotropic (Q(y) != 0)")
    hyperplanes = list(hyperplanes)
    _check_distinct_hyperplanes(hyperplanes)
    witt = _witt_of(V, Q, witt)
    w = witt.w
    if w == 0:
        if witt.certainty.kind == "certified":
            raise DomainError("(V, Q) must be isotropic")
        raise SearchExhausted(witt.certainty.bound,
                              "no isotropic vector found; Witt index unresolved")

    m = V.m
    k = len(hyperplanes)
    heights = {"h_y": inhom_height(y), "H_V": subspace_height(V)}
    heights.update(_form_heights(Q))
    provisional = witt.certainty.kind != "certified"

    def report(z, tag, indices=None, extra=None):
        if evaluate(Q, z) != ty:
            raise AssertionError("candidate changes the represented value")
        if any(h.contains(z) for h in hyperplanes):
            raise AssertionError("candidate fails avoidance re-verification")
        hts = dict(heights)
        hts["h_z"] = inhom_height(z)
        bound = _lemma42_bound(m, w, heights["h_y"], heights["h_Q"], heights["H_V"])
        return SolutionReport(
            z=tuple(z),
            value=Fraction(ty),
            heights=hts,
            bound=bound,
            case_tag=tag,
            witt_w=w,
            provisional=provisional,
            indices=indices,
            search=extra or {},
        )

    if all(not h.contains(y) for h in hyperplanes):
        return report(y, "direct")

    def translate_scheme(u, tag):
        for r in range(1, k + 2):
            z = tuple(a + r * b for a, b in zip(y, u))
            if all(not h.contains(z) for h in hyperplanes):
                return report(z, tag, indices=(r, None))
        raise AssertionError("pigeonhole guarantee failed in the translation scheme")

    if w >= 2:
        V_y = _intersect_sub(V, orth_complement(Q, Subspace(Q.n, [y])))
        same = [h for h in hyperplanes if h.kernel_in_V == V_y]
        if len(same) > 1:
            raise DomainError("distinct hyperplanes cannot both equal the complement of y")
        sub_hyps = [
            HyperplaneInV(V_y, h.functional)
            for h in hyperplanes
            if h not in same
        ]
        u = isotropic_avoiding(V_y, Q, sub_hyps, radius=radius)
        return translate_scheme(u, "w>=2")

    # w == 1
    u = isotropic_avoiding(V, Q, hyperplanes, radius=radius)
    b = bilinear(Q, y, u)
    if b == 0:
        return translate_scheme(u, "w=1-orthogonal")

    G_space = _intersect_sub(V, orth_complement(Q, Subspace(Q.n, [u, y])))
    if G_space.m != m - 2:
        raise DomainError("orthogonal complement of span{u, y} has unexpected dimension")
    gx_basis = lattice.saturate(G_space).vectors
    x = min(gx_basis, key=lattice.vector_key)
    qx = evaluate(Q, x)
    if qx == 0:
        raise AssertionError("complement of span{u, y} must be anisotropic when w = 1")
    if int(qx) % 2 != 0:
        x = tuple(2 * c for c in x)
        qx = evaluate(Q, x)
    for ell in range(1, k + 2):
        for r in pigeonhole_window(ell, k):
            half = r * r * int(qx) * b
            if half % 2 != 0:
                raise AssertionError("quadratic translation is not integral")
            z = tuple(
                yi + r * b * xi - (half // 2) * ui
                for yi, xi, ui in zip(y, x, u)
            )
            if all(not h.contains(z) for h in hyperplanes):
                return report(z, "w=1-general", indices=(r, ell))
    raise AssertionError("double pigeonhole guarantee failed")


def represent_integral_avoiding(Q, V, t, hyperplanes, witt=None, radius=None,
                                c_oracle=lattice.DEFAULT_C_ORACLE):
    """Integer z in V ∩ Z^n with Q(z) = t off every hyperplane of V."""
    if int(t) != t or t == 0:
        raise DomainError("t must be a nonzero integer")
    if V.m == 2:
        raise DomainError(
            "dim V = 2 is excluded: an integer has only finitely many "
            "representations on a binary lattice, so hyperplanes can cut out all of them"
        )
    if V.m < 3:
        raise DomainError("need dim V >= 3")
    _require_regular(V, Q)
    witt = _witt_of(V, Q, witt)
    if witt.w < 1:
        if witt.certainty.kind == "certified":
            raise DomainError("(V, Q) must be isotropic (Witt index >= 1)")
        raise SearchExhausted(witt.certainty.bound,
                              "no isotropic vector found; Witt index unresolved")
    hyperplanes = list(hyperplanes)
    _check_distinct_hyperplanes(hyperplanes)

    first = represent_integral(Q, V, t, radius=radius, witt=witt, c_oracle=c_oracle)
    y = tuple(int(c) for c in first.z)
    inner = avoid_hyperplanes(Q, V, y, hyperplanes, witt=witt, radius=radius)

    m, w = V.m, witt.w
    ell = dietmann_exponent(m)
    heights = dict(inner.heights)
    heights.update(_form_heights(Q, t))
    if w >= 2:
        bound = BoundExpr((
            ("h_Qt", heights["h_Qt"], 2 * ell + Fraction(m - w + 5, 2)),
            ("H_V", heights["H_V"], 2 * ell + 3),
        ))
    else:
        bound = BoundExpr((
            ("h_Qt", heights["h_Qt"],
             (1 + Fraction(2, m - 2)) * ell + m + 2 + Fraction(m + 4, m - 2)),
            ("H_V", heights["H_V"],
             (2 + Fraction(4, m - 2)) * ell + 5 + Fraction(8, m - 2)),
        ))
    return SolutionReport(
        z=inner.z,
        value=Fraction(int(t)),
        heights=heights,
        bound=bound,
        case_tag=inner.case_tag,
        witt_w=w,
        provisional=witt.certainty.kind != "certified",
        indices=inner.indices,
        search={"first_height": str(first.height), **inner.search},
    )
