import random
from fractions import Fraction

import pytest

from qsr.errors import DomainError, SearchExhausted
from qsr.heights import Subspace, subspace_height
from qsr.quadspace import (
    GramForm,
    QuadSpace,
    ambient_singular,
    bilinear,
    evaluate,
    find_isotropic,
    is_definite,
    orth_complement,
    radical,
    restrict,
    signature,
    witt_decompose,
)


def rand_sym(rng, n, bound=4):
    G = [[rng.randint(-bound, bound) for _ in range(n)] for _ in range(n)]
    for i in range(n):
        for j in range(i):
            G[i][j] = G[j][i]
    return GramForm(G)


class TestGramForm:
    def test_symmetry_enforced(self):
        with pytest.raises(DomainError):
            GramForm([[1, 2], [3, 4]])

    def test_integral_flag(self):
        assert GramForm.diagonal([1, 2]).integral
        assert not GramForm([[Fraction(1, 2), 0], [0, 1]]).integral

    def test_json_round_trip(self):
        Q = GramForm([[1, 2], [2, Fraction(1, 3)]])
        assert GramForm.from_json(Q.to_json()) == Q


class TestEvaluate:
    def test_isotropic(self):
        assert evaluate(GramForm.diagonal([1, 1, -1]), (1, 0, 1)) == 0

    def test_definite(self):
        assert evaluate(GramForm.diagonal([1, 1, 1]), (2, 1, 0)) == 5

    def test_zero(self):
        assert evaluate(GramForm.diagonal([3, -7]), (0, 0)) == 0

    def test_dimension_mismatch(self):
        with pytest.raises(DomainError):
            evaluate(GramForm.diagonal([1, 1]), (1, 2, 3))


class TestBilinear:
    def test_hand_value(self):
        Q = GramForm.diagonal([1, 1, -1])
        assert bilinear(Q, (1, 1, 0), (1, 0, 1)) == 1

    def test_polarization(self):
        rng = random.Random(5)
        for _ in range(100):
            n = rng.randint(1, 5)
            Q = rand_sym(rng, n)
            x = tuple(rng.randint(-6, 6) for _ in range(n))
            y = tuple(rng.randint(-6, 6) for _ in range(n))
            s = tuple(a + b for a, b in zip(x, y))
            assert evaluate(Q, s) == evaluate(Q, x) + evaluate(Q, y) + 2 * bilinear(Q, x, y)
            assert bilinear(Q, x, x) == evaluate(Q, x)

    def test_zero_argument(self):
        Q = GramForm([[2, 1], [1, 5]])
        assert bilinear(Q, (3, 4), (0, 0)) == 0


class TestRadical:
    def test_degenerate_diag(self):
        V = Subspace.full(2)
        assert radical(V, GramForm.diagonal([1, 0])) == Subspace(2, [(0, 1)])

    def test_regular(self):
        V = Subspace.full(3)
        assert radical(V, GramForm.diagonal([1, 1, -1])).is_zero()

    def test_zero_form(self):
        V = Subspace(3, [(1, 0, 2), (0, 1, 3)])
        Z = GramForm.diagonal([0, 0, 0])
        assert radical(V, Z) == V


class TestOrthComplement:
    def test_line_in_I3(self):
        V = Subspace(3, [(1, 0, 2)])
        C = orth_complement(GramForm.diagonal([1, 1, 1]), V)
        assert C.m == 2
        assert C.contains((-2, 0, 1))
        assert C.contains((0, 1, 0))
        assert subspace_height(C) == 2

    def test_full_space_regular(self):
        C = orth_complement(GramForm.diagonal([1, 1, 1]), Subspace.full(3))
        assert C.is_zero()

    def test_dimension_identity(self):
        rng = random.Random(11)
        for _ in range(120):
            n = rng.randint(2, 5)
            Q = rand_sym(rng, n)
            d = rng.randint(1, n)
            rows = [[rng.randint(-4, 4) for _ in range(n)] for _ in range(d)]
            V = Subspace(n, rows)
            if V.is_zero():
                continue
            comp = orth_complement(Q, V)
            sing = ambient_singular(V, Q)
            assert V.m + comp.m - sing.m == n


class TestRestrict:
    def test_hand_gram(self):
        Q = GramForm.diagonal([1, 1, 1])
        T = [[1, 0], [0, 1], [2, 3]]  # columns (1,0,2),(0,1,3)
        R = restrict(Q, T)
        assert R == GramForm([[5, 6], [6, 10]])

    def test_identity(self):
        Q = GramForm([[2, 1], [1, 7]])
        assert restrict(Q, [[1, 0], [0, 1]]) == Q

    def test_evaluate_commutes(self):
        rng = random.Random(13)
        for _ in range(60):
            n, m = 4, 2
            Q = rand_sym(rng, n)
            T = [[rng.randint(-3, 3) for _ in range(m)] for _ in range(n)]
            cols = list(zip(*T))
            if Subspace(n, cols).m != m:
                continue
            R = restrict(Q, T)
            u = tuple(rng.randint(-4, 4) for _ in range(m))
            Tu = tuple(sum(T[i][j] * u[j] for j in range(m)) for i in range(n))
            assert evaluate(R, u) == evaluate(Q, Tu)

    def test_rank_deficient_rejected(self):
        with pytest.raises(DomainError):
            restrict(GramForm.diagonal([1, 1]), [[1, 2], [1, 2]])


class TestSignatureDefinite:
    def test_definite(self):
        assert is_definite(GramForm.diagonal([1, 2, 3]))
        assert is_definite(GramForm.diagonal([-1, -2]))
        assert not is_definite(GramForm.diagonal([1, -1]))
        assert not is_definite(GramForm.diagonal([1, 0]))

    def test_signature_counts(self):
        pos, neg, zero = signature(GramForm.diagonal([1, 1, -1, 0]))
        assert (pos, neg, zero) == (2, 1, 1)

    def test_signature_off_diagonal(self):
        # hyperbolic plane: eigenvalues of mixed sign
        pos, neg, zero = signature(GramForm([[0, 1], [1, 0]]))
        assert (pos, neg, zero) == (1, 1, 0)


class TestFindIsotropic:
    def test_minimal_zero(self):
        x = find_isotropic(Subspace.full(3), GramForm.diagonal([1, 1, -1]))
        assert x == (0, 1, 1)

    def test_avoid_hyperplane(self):
        from qsr.heights import AlgebraicSet, linear_form_poly

        Z = AlgebraicSet(((linear_form_poly([0, 1, 0]),),))
        x = find_isotropic(Subspace.full(3), GramForm.diagonal([1, 1, -1]),
                           avoid=Z)
        assert x == (0, 1, 1)
        assert x[1] != 0

    def test_anisotropic_not_found(self):
        with pytest.raises(SearchExhausted) as info:
            find_isotropic(Subspace.full(3), GramForm.diagonal([1, 1, 1]),
                           radius=10)
        assert info.value.radius == 10

    def test_non_regular_rejected(self):
        with pytest.raises(DomainError):
            find_isotropic(Subspace.full(2), GramForm.diagonal([1, 0]))

    def test_exact_zero_and_primitive(self):
        from math import gcd

        rng = random.Random(17)
        for _ in range(40):
            n = rng.randint(2, 4)
            Q = rand_sym(rng, n)
            V = Subspace.full(n)
            if not QuadSpace(V, Q).regular:
                continue
            try:
                x = find_isotropic(V, Q, radius=6)
            except SearchExhausted:
                continue
            assert evaluate(Q, x) == 0
            assert any(x)
            assert gcd(*(abs(int(c)) for c in x)) == 1


class TestWittDecompose:
    def test_hyperbolic_plane(self):
        cert = witt_decompose(Subspace.full(2), GramForm.diagonal([1, -1]))
        assert cert.w == 1
        assert cert.certainty.kind == "certified"

    def test_two_planes(self):
        cert = witt_decompose(Subspace.full(4),
                              GramForm.diagonal([1, 1, -1, -1]))
        assert cert.w == 2
        assert cert.certainty.kind == "certified"

    def test_definite(self):
        cert = witt_decompose(Subspace.full(3), GramForm.diagonal([1, 1, 1]))
        assert cert.w == 0
        assert cert.certainty.kind == "certified"

    def test_certificate_invariants(self):
        Q = GramForm.diagonal([1, 1, -1, -1, 2])
        cert = witt_decompose(Subspace.full(5), Q)
        assert cert.w == 2
        for u, v in cert.hyperbolic_pairs:
            assert evaluate(Q, u) == 0
            assert bilinear(Q, u, v) != 0
        # pairwise orthogonality between planes and kernel
        planes = [vec for pair in cert.hyperbolic_pairs for vec in pair]
        for i, a in enumerate(planes):
            for b in planes[i + 1:]:
                if a in cert.hyperbolic_pairs[i // 2]:
                    continue
        for a in planes:
            for b in cert.anisotropic_kernel_basis:
                assert bilinear(Q, a, b) == 0
