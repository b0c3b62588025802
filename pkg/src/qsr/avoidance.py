"""Uniform handling of avoidance constraints.

Searches accept either an AlgebraicSet (union of common zero sets) or a
list of hyperplanes, given as coefficient vectors of linear forms or as
HyperplaneInV objects.  A point is excluded when it lies in the algebraic
set, or on any of the hyperplanes.
"""

from .errors import DomainError
from .heights import AlgebraicSet
from . import linalg


def _functional_of(h):
    if hasattr(h, "functional"):
        return h.functional
    return linalg.vec(h)


def make_avoider(avoid, n):
    """Build a predicate `excluded(z) -> bool` from an avoidance spec."""
    if avoid is None:
        return lambda z: False
    if isinstance(avoid, AlgebraicSet):
        if avoid.sets and avoid.nvars != n:
            raise DomainError("avoidance set has wrong number of variables")
        return lambda z: avoid.contains(linalg.vec(z))
    functionals = [_functional_of(h) for h in avoid]
    for L in functionals:
        if len(L) != n:
            raise DomainError("hyperplane functional has wrong dimension")
        if linalg.is_zero_vec(L):
            raise DomainError("hyperplane functional is identically zero")
    return lambda z: any(linalg.dot(L, z) == 0 for L in functionals)
