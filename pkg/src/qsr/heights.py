"""Heights over Q, sparse polynomials, subspaces, and algebraic sets.

Vectors are tuples of Fractions (or ints).  All heights are exact
rationals: over Q the homogeneous height of a vector is the sup-norm of
the primitive integer vector on its projective line, and the
inhomogeneous height h(x) is H(1, x).
"""

from dataclasses import dataclass
from fractions import Fraction
import json
import re

from . import linalg
from .errors import DomainError


# ---------------------------------------------------------------------------
# vector heights

def global_height(x):
    """Homogeneous height H(x) of a nonzero rational vector.

    Scale invariant: H(cx) = H(x) for every nonzero rational c.
    """
    x = linalg.vec(x)
    if linalg.is_zero_vec(x):
        raise DomainError("projective height is undefined at the zero vector")
    y = linalg.primitive_integer(x, positive_lead=False)
    return Fraction(linalg.sup_norm(y))


def inhom_height(x):
    """Inhomogeneous height h(x) = H(1, x); equals sup-norm on integer vectors."""
    return global_height((Fraction(1),) + linalg.vec(x))


# ---------------------------------------------------------------------------
# sparse polynomials

def _grlex_key(exp):
    return (-sum(exp), tuple(-e for e in exp))


class SparsePoly:
    """Polynomial in Q[X_1..X_nvars] stored as sparse (exponent, coefficient) terms.

    Terms are kept in graded lexicographic order with no zero coefficients
    and no duplicate exponent vectors.
    """

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars, terms):
        merged = {}
        for exp, coef in dict(terms).items() if isinstance(terms, dict) else terms:
            exp = tuple(int(e) for e in exp)
            if len(exp) != nvars:
                raise DomainError(f"exponent vector {exp} has wrong length for nvars={nvars}")
            if any(e < 0 for e in exp):
                raise DomainError("negative exponent")
            coef = Fraction(coef)
            if coef:
                merged[exp] = merged.get(exp, Fraction(0)) + coef
        self.nvars = nvars
        self.terms = tuple(
            (exp, merged[exp])
            for exp in sorted(merged, key=_grlex_key)
            if merged[exp] != 0
        )

    @property
    def degree(self):
        if not self.terms:
            return -1
        return max(sum(exp) for exp, _ in self.terms)

    def is_zero(self):
        return not self.terms

    def is_homogeneous(self):
        degs = {sum(exp) for exp, _ in self.terms}
        return len(degs) <= 1

    def coefficients(self):
        return tuple(coef for _, coef in self.terms)

    def evaluate(self, point):
        if len(point) != self.nvars:
            raise DomainError("point dimension mismatch")
        total = Fraction(0)
        for exp, coef in self.terms:
            term = coef
            for xi, e in zip(point, exp):
                if e:
                    term *= Fraction(xi) ** e
            total += term
        return total

    def substitute_last(self, value=1):
        """Substitute X_nvars = value, returning a polynomial in one fewer variable."""
        value = Fraction(value)
        new_terms = []
        for exp, coef in self.terms:
            new_terms.append((exp[:-1], coef * value ** exp[-1]))
        return SparsePoly(self.nvars - 1, new_terms)

    def __eq__(self, other):
        return (
            isinstance(other, SparsePoly)
            and self.nvars == other.nvars
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.nvars, self.terms))

    def __repr__(self):
        return f"SparsePoly({self.nvars}, {self.to_text()!r})"

    # -- serialization ------------------------------------------------------

    def to_text(self):
        if not self.terms:
            return "0"
        parts = []
        for exp, coef in self.terms:
            factors = [f"X{i + 1}" + (f"^{e}" if e > 1 else "")
                       for i, e in enumerate(exp) if e]
            if not factors:
                body = str(abs(coef))
            elif abs(coef) == 1:
                body = "*".join(factors)
            else:
                body = "*".join([str(abs(coef))] + factors)
            parts.append(("- " if coef < 0 else "+ ") + body)
        text = " ".join(parts)
        return text[2:] if text.startswith("+ ") else "-" + text[2:]

    def to_json(self):
        return {
            "nvars": self.nvars,
            "terms": [{"exp": list(exp), "coef": str(coef)} for exp, coef in self.terms],
        }

    @classmethod
    def from_json(cls, data):
        if isinstance(data, str):
            data = json.loads(data)
        terms = [(tuple(t["exp"]), Fraction(str(t["coef"]))) for t in data["terms"]]
        return cls(int(data["nvars"]), terms)

    @classmethod
    def from_text(cls, text, nvars=None):
        """Parse `c*X1^a1*...*Xn^an` sums, e.g. "X1^2 - 5" or "2*X1*X2 + 1/2"."""
        tokens = re.findall(r"[+-]|\d+/\d+|\d+|X\d+(?:\^\d+)?|\*|\S", text)
        terms = []
        sign = 1
        coef = None
        exps = {}
        maxvar = 0

        def flush():
            nonlocal sign, coef, exps
            if coef is None and not exps:
                return
            c = Fraction(1) if coef is None else coef
            terms.append((dict(exps), sign * c))
            sign, coef, exps = 1, None, {}

        for tok in tokens:
            if tok in "+-":
                flush()
                sign = -1 if tok == "-" else 1
            elif tok == "*":
                continue
            elif tok.startswith("X"):
                m = re.fullmatch(r"X(\d+)(?:\^(\d+))?", tok)
                if not m:
                    raise DomainError(f"bad token {tok!r}")
                var = int(m.group(1))
                if var < 1:
                    raise DomainError(f"bad variable index in {tok!r}")
                e = int(m.group(2) or 1)
                exps[var - 1] = exps.get(var - 1, 0) + e
                maxvar = max(maxvar, var)
            elif re.fullmatch(r"\d+(/\d+)?", tok):
                c = Fraction(tok)
                coef = c if coef is None else coef * c
            else:
                raise DomainError(f"cannot parse polynomial near {tok!r}")
        flush()
        if nvars is None:
            nvars = maxvar
        out = []
        for exps, c in terms:
            exp = [0] * nvars
            for var, e in exps.items():
                if var >= nvars:
                    raise DomainError(f"variable X{var + 1} exceeds nvars={nvars}")
                exp[var] = e
            out.append((tuple(exp), c))
        return cls(nvars, out)


def poly_height(P, variant="homogeneous"):
    """Height of a polynomial via its (stored nonzero) coefficient vector."""
    if variant not in ("homogeneous", "inhomogeneous"):
        raise DomainError(f"unknown variant {variant!r}")
    if P.is_zero():
        if variant == "homogeneous":
            raise DomainError("homogeneous height of the zero polynomial is undefined")
        return Fraction(1)
    coeffs = P.coefficients()
    return global_height(coeffs) if variant == "homogeneous" else inhom_height(coeffs)


def homogenize(P):
    """Homogenize by a fresh last variable; substituting 1 recovers P."""
    if P.is_zero():
        raise DomainError("cannot homogenize the zero polynomial")
    d = P.degree
    terms = [(exp + (d - sum(exp),), coef) for exp, coef in P.terms]
    return SparsePoly(P.nvars + 1, terms)


# ---------------------------------------------------------------------------
# subspaces

class Subspace:
    """Subspace of Q^n with a canonical basis (primitive-integer RREF rows).

    Equal subspaces compare syntactically equal; the zero subspace is
    represented by an empty basis.
    """

    __slots__ = ("n", "basis", "_pluecker")

    def __init__(self, n, rows):
        rows = [linalg.vec(r) for r in rows]
        for r in rows:
            if len(r) != n:
                raise DomainError("basis row has wrong ambient dimension")
        nonzero = [r for r in rows if not linalg.is_zero_vec(r)]
        self.n = n
        self.basis = linalg.row_space_canonical(nonzero)
        self._pluecker = None

    @classmethod
    def full(cls, n):
        return cls(n, linalg.identity(n))

    @classmethod
    def zero(cls, n):
        return cls(n, [])

    @property
    def m(self):
        return len(self.basis)

    def is_zero(self):
        return self.m == 0

    def pluecker(self):
        """Vector of all m x m minors of the canonical basis matrix."""
        if self.is_zero():
            raise DomainError("Pluecker coordinates of the zero subspace are undefined")
        if self._pluecker is None:
            self._pluecker = linalg.minors([list(r) for r in self.basis], self.m)
        return self._pluecker

    def contains(self, x):
        x = linalg.vec(x)
        if len(x) != self.n:
            raise DomainError("ambient dimension mismatch")
        return linalg.in_row_space(self.basis, x)

    def coordinates(self, x):
        """Coefficients of x in the canonical basis (None if x is outside)."""
        x = linalg.vec(x)
        if linalg.is_zero_vec(x):
            return (Fraction(0),) * self.m
        aug = linalg.transpose([list(r) for r in self.basis] + [list(x)])
        R, pivots = linalg.rref(aug)
        if self.m in pivots:
            return None
        coords = [Fraction(0)] * self.m
        for i, p in enumerate(pivots):
            coords[p] = R[i][self.m]
        return tuple(coords)

    def __eq__(self, other):
        return isinstance(other, Subspace) and self.n == other.n and self.basis == other.basis

    def __hash__(self):
        return hash((self.n, self.basis))

    def __repr__(self):
        return f"Subspace(n={self.n}, basis={self.basis})"


def subspace_height(V):
    """H(V): homogeneous height of the Pluecker minor vector; 1 for Q^n."""
    if V.is_zero():
        raise DomainError("height of the zero subspace is undefined")
    return global_height(V.pluecker())


def pluecker_norm_sq(V):
    """Squared Euclidean norm of the primitive Pluecker vector, exactly.

    The intersection inequality H(U1 ∩ U2) <= H(U1) H(U2) is an exact
    statement for the Euclidean norm at the infinite place; with sup-norms
    it only holds up to a constant. Comparing squares keeps it rational.
    """
    if V.is_zero():
        raise DomainError("height of the zero subspace is undefined")
    p = linalg.primitive_integer(V.pluecker())
    return sum(c * c for c in p)


def intersect(U1, U2):
    """Exact intersection of two subspaces of the same ambient space."""
    if U1.n != U2.n:
        raise DomainError("ambient dimension mismatch")
    if U1.is_zero() or U2.is_zero():
        return Subspace.zero(U1.n)
    # (a, b) with a B1 = b B2 span the intersection through a B1.
    B1 = [list(r) for r in U1.basis]
    B2 = [list(r) for r in U2.basis]
    stacked = linalg.transpose(B1 + [[-e for e in row] for row in B2])
    rows = []
    for ab in linalg.nullspace(stacked):
        a = ab[: U1.m]
        rows.append(linalg.vec_mat(a, B1))
    return Subspace(U1.n, rows)


# ---------------------------------------------------------------------------
# algebraic sets

@dataclass(frozen=True)
class AlgebraicSet:
    """Union over i of common zero sets of finite polynomial families S_i.

    A point belongs to the set iff for some i every polynomial of S_i
    vanishes at it.
    """

    sets: tuple

    def __init__(self, sets):
        norm = tuple(tuple(family) for family in sets)
        for family in norm:
            if not family:
                raise DomainError("each polynomial family must be nonempty")
            nv = {p.nvars for p in family}
            if len(nv) != 1:
                raise DomainError("mixed variable counts inside a family")
        nv_all = {p.nvars for family in norm for p in family}
        if len(nv_all) > 1:
            raise DomainError("mixed variable counts across families")
        object.__setattr__(self, "sets", norm)

    @property
    def nvars(self):
        return self.sets[0][0].nvars if self.sets else 0

    @property
    def m_s(self):
        """Sum over families of the maximal degree inside the family."""
        return sum(max(p.degree for p in family) for family in self.sets)

    @property
    def homogeneous(self):
        return all(p.is_homogeneous() for family in self.sets for p in family)

    def contains(self, x):
        if self.sets and len(x) != self.nvars:
            raise DomainError("point dimension mismatch")
        return any(
            all(p.evaluate(x) == 0 for p in family)
            for family in self.sets
        )

    def to_json(self):
        return {"sets": [[p.to_json() for p in family] for family in self.sets]}

    @classmethod
    def from_json(cls, data):
        return cls(
            tuple(tuple(SparsePoly.from_json(p) for p in family) for family in data["sets"])
        )


def algebraic_set_membership(Z, x):
    return Z.contains(linalg.vec(x))


def homogenize_set(Z):
    """Homogenize every polynomial; the degree sum M_s is preserved."""
    return AlgebraicSet(
        tuple(tuple(homogenize(p) for p in family) for family in Z.sets)
    )


def linear_form_poly(coeffs):
    """The linear polynomial sum c_i X_i as a SparsePoly."""
    n = len(coeffs)
    terms = []
    for i, c in enumerate(coeffs):
        exp = [0] * n
        exp[i] = 1
        terms.append((tuple(exp), Fraction(c)))
    return SparsePoly(n, terms)
