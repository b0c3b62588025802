import random
from fractions import Fraction

import pytest

from qsr import enumeration, linalg
from qsr.errors import DomainError
from qsr.heights import AlgebraicSet, Subspace, linear_form_poly, subspace_height
from qsr.lattice import (
    enumerate_naive,
    enumerate_representations,
    enumerate_zeros,
    saturate,
    vector_key,
)
from qsr.quadspace import GramForm, evaluate


def rand_sym(rng, n, bound=3):
    G = [[rng.randint(-bound, bound) for _ in range(n)] for _ in range(n)]
    for i in range(n):
        for j in range(i):
            G[i][j] = G[j][i]
    return GramForm(G)


class TestSaturate:
    def test_rational_line(self):
        b = saturate(Subspace(2, [(Fraction(1, 2), Fraction(1, 2))]))
        assert b.vectors == ((1, 1),)

    def test_coordinate_plane(self):
        b = saturate(Subspace(3, [(1, 0, 0), (0, 1, 0)]))
        assert sorted(b.vectors) == [(0, 1, 0), (1, 0, 0)]
        assert b.height_product == 1 == subspace_height(Subspace(3, b.vectors))

    def test_quality(self):
        V = Subspace(3, [(1, 0, 2), (0, 1, 3)])
        b = saturate(V)
        assert b.height_product <= 6
        assert b.quality == Fraction(b.height_product, 3)

    def test_membership_and_index(self):
        rng = random.Random(3)
        for _ in range(60):
            n = rng.randint(2, 5)
            d = rng.randint(1, n)
            rows = [[Fraction(rng.randint(-6, 6), rng.randint(1, 4))
                     for _ in range(n)] for _ in range(d)]
            V = Subspace(n, rows)
            if V.is_zero():
                continue
            b = saturate(V)
            assert len(b.vectors) == V.m
            for v in b.vectors:
                assert V.contains(v)
                assert all(int(c) == c for c in v)
            # saturation: each basis vector primitive in its line is necessary
            # but not sufficient; check the index via a Gram determinant of
            # the projection onto V's coordinates being 1 relative to any
            # other integral spanning set obtained by scaling up.
            assert Subspace(n, b.vectors) == V

    def test_primitivity_of_lattice(self):
        # (2,0),(0,2) span the same space but not the same lattice
        V = Subspace(2, [(2, 0), (0, 2)])
        b = saturate(V)
        assert sorted(b.vectors) == [(0, 1), (1, 0)]


class TestEnumerateRepresentations:
    def setup_method(self):
        self.I3 = GramForm.diagonal([1, 1, 1])
        self.V3 = Subspace.full(3)

    def test_minimal_sum_of_squares(self):
        r = enumerate_representations(self.I3, saturate(self.V3), 5, 4)
        assert r.solutions == ((0, 1, 2),)
        assert r.minimal_height == 2

    def test_avoid_hyperplane(self):
        Z = AlgebraicSet(((linear_form_poly([1, 0, 0]),),))
        r = enumerate_representations(self.I3, saturate(self.V3), 5, 4, avoid=Z)
        assert r.solutions == ((1, 0, 2),)
        assert r.minimal_height == 2

    def test_no_representation(self):
        Q = GramForm.diagonal([1, 1])
        r = enumerate_representations(Q, saturate(Subspace.full(2)), 3, 6)
        assert not r.found()
        assert r.exhausted_radius == 6

    def test_non_integral_rejected(self):
        Q = GramForm([[Fraction(1, 2), 0], [0, 1]])
        with pytest.raises(DomainError):
            enumerate_representations(Q, saturate(Subspace.full(2)), 1, 2)


class TestEnumerateZeros:
    def test_all_mode_box(self):
        Q = GramForm.diagonal([1, 1, -1])
        r = enumerate_zeros(Q, saturate(Subspace.full(3)), 1, mode="all")
        assert len(r.solutions) == 8
        assert r.minimal_height == 1
        assert all(evaluate(Q, z) == 0 for z in r.solutions)
        assert (0, 1, 1) in r.solutions and (-1, 0, -1) in r.solutions

    def test_definite_empty(self):
        Q = GramForm.diagonal([1, 1, 1])
        r = enumerate_zeros(Q, saturate(Subspace.full(3)), 5)
        assert not r.found()

    def test_avoid_isotropic_line(self):
        Q = GramForm.diagonal([1, -1])
        Z = AlgebraicSet(((linear_form_poly([1, -1]),),))
        r = enumerate_zeros(Q, saturate(Subspace.full(2)), 3, avoid=Z)
        assert r.solutions == ((1, -1),)

    def test_zero_vector_excluded(self):
        Q = GramForm.diagonal([1, 1, -1])
        r = enumerate_zeros(Q, saturate(Subspace.full(3)), 2, mode="all")
        assert all(any(z) for z in r.solutions)


class TestOracleEquivalence:
    def test_pruned_equals_naive(self):
        rng = random.Random(41)
        checked = 0
        while checked < 80:
            m = rng.randint(1, 3)
            Q = rand_sym(rng, m)
            V = Subspace.full(m)
            basis = saturate(V)
            t = rng.randint(-6, 6)
            radius = rng.randint(1, 3)
            pruned = enumerate_representations(Q, basis, t, radius, mode="all")
            naive = enumerate_naive(Q, basis, t, radius)
            assert pruned.solutions == naive.solutions
            checked += 1

    def test_naive_with_avoidance(self):
        Q = GramForm.diagonal([1, 1, 1])
        Z = AlgebraicSet(((linear_form_poly([1, 0, 0]),),))
        basis = saturate(Subspace.full(3))
        pruned = enumerate_representations(Q, basis, 5, 3, avoid=Z, mode="all")
        naive = enumerate_naive(Q, basis, 5, 3, avoid=Z)
        assert pruned.solutions == naive.solutions


class TestBackends:
    def test_compiled_backend_present(self):
        # the build is expected to produce the compiled kernel
        assert enumeration.HAVE_COMPILED
        assert enumeration.backend_name() == "cython"

    def test_backends_agree(self):
        rng = random.Random(43)
        for _ in range(40):
            m = rng.randint(1, 4)
            Q = rand_sym(rng, m)
            gram = [[int(e) for e in row] for row in Q.gram]
            t = rng.randint(-8, 8)
            radii = [rng.randint(1, 3)] * m
            py_sols, py_count = enumeration.solve_box(
                gram, t, radii, force_backend="python")
            cy_sols, cy_count = enumeration.solve_box(
                gram, t, radii, force_backend="cython")
            assert sorted(py_sols) == sorted(cy_sols)
            assert py_count == cy_count

    def test_big_entries_fall_back_exactly(self):
        # entries beyond the int64 guard must still be handled (python path)
        big = 2 ** 40
        gram = [[big, 0], [0, -big]]
        sols, _ = enumeration.solve_box(gram, 0, [2, 2])
        assert sorted(sols) == sorted(
            [(a, b) for a in range(-2, 3) for b in range(-2, 3)
             if big * a * a - big * b * b == 0])

    def test_threaded_merge_deterministic(self, monkeypatch):
        monkeypatch.setenv("QSR_THREADS", "3")
        rng = random.Random(47)
        for _ in range(10):
            m = rng.randint(2, 4)
            Q = rand_sym(rng, m)
            gram = [[int(e) for e in row] for row in Q.gram]
            radii = [3] * m
            threaded, tc = enumeration.solve_box(gram, 0, radii, threads=3)
            single, sc = enumeration.solve_box(gram, 0, radii, threads=1)
            assert sorted(threaded) == sorted(single)
            assert tc == sc


class TestVectorKey:
    def test_ordering(self):
        assert vector_key((0, 1, 1)) < vector_key((1, 0, 1))
        assert vector_key((0, 1, 2)) < vector_key((0, 2, 1))
        assert vector_key((1, -1)) < vector_key((-1, 1))
        assert vector_key((1, 1)) < vector_key((1, -1))
