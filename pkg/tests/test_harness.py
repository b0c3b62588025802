import json

import pytest

from qsr.errors import DomainError
from qsr.harness import (
    InstanceSpec,
    csv_string,
    gen_instance,
    max_ratios,
    run_suite,
    write_json,
)
from qsr.quadspace import bilinear, evaluate, witt_decompose


class TestInstanceSpec:
    def test_validation(self):
        with pytest.raises(DomainError):
            InstanceSpec(n=4, m=2, w_planted=1, k=0)
        with pytest.raises(DomainError):
            InstanceSpec(n=4, m=3, w_planted=2, k=0)
        with pytest.raises(DomainError):
            InstanceSpec(n=3, m=4, w_planted=1, k=0)


class TestGenInstance:
    def test_determinism(self):
        spec = InstanceSpec(n=4, m=4, w_planted=2, k=1, seed=7)
        a = gen_instance(spec)
        b = gen_instance(spec)
        assert a.Q == b.Q
        assert a.V == b.V
        assert a.t == b.t
        assert a.hyperplanes == b.hyperplanes
        assert a.witt.hyperbolic_pairs == b.witt.hyperbolic_pairs

    def test_planted_witt_structure(self):
        for seed in range(15):
            spec = InstanceSpec(n=5, m=4, w_planted=seed % 3, k=2, seed=seed)
            inst = gen_instance(spec)
            assert inst.verify()
            assert inst.witt.w == spec.w_planted
            for u, v in inst.witt.hyperbolic_pairs:
                assert evaluate(inst.Q, u) == 0
                assert bilinear(inst.Q, u, v) != 0
                assert inst.V.contains(u) and inst.V.contains(v)

    def test_w1_ternary_exercise(self):
        spec = InstanceSpec(n=3, m=3, w_planted=1, k=2, seed=11)
        inst = gen_instance(spec)
        assert inst.verify()
        u, v = inst.witt.hyperbolic_pairs[0]
        assert evaluate(inst.Q, u) == 0
        assert len(inst.hyperplanes) == 2

    def test_definite_instance_rejected_by_avoid_pipeline(self):
        from qsr.constructions import represent_integral_avoiding

        spec = InstanceSpec(n=4, m=4, w_planted=0, k=1, seed=3)
        inst = gen_instance(spec)
        assert inst.witt.w == 0
        with pytest.raises(DomainError):
            represent_integral_avoiding(inst.Q, inst.V, inst.t,
                                        inst.hyperplanes, witt=inst.witt)

    def test_witt_recovery(self):
        for seed in range(10):
            spec = InstanceSpec(n=4, m=4, w_planted=1 + seed % 2, k=0,
                                coefficient_bound=3, seed=seed)
            inst = gen_instance(spec)
            cert = witt_decompose(inst.V, inst.Q)
            assert cert.w == spec.w_planted


class TestSuites:
    def test_inequality_suite(self):
        reports, ok = run_suite("inequality", 60, 5)
        assert ok

    def test_identity_suite(self):
        _, ok = run_suite("identity", 15, 5)
        assert ok

    def test_pipeline_suite(self):
        reports, ok = run_suite("pipeline", 4, 5)
        assert ok
        tags = {r.theorem for r in reports}
        assert {"T1.1", "T1.3", "C1.5", "L4.2", "T1.6"} <= tags

    def test_unknown_suite(self):
        with pytest.raises(DomainError):
            run_suite("nope", 1, 0)


class TestReports:
    def test_csv_determinism(self):
        r1, _ = run_suite("pipeline", 3, 9)
        r2, _ = run_suite("pipeline", 3, 9)
        assert csv_string(r1) == csv_string(r2)

    def test_csv_columns(self):
        reports, _ = run_suite("pipeline", 2, 1)
        header = csv_string(reports).splitlines()[0]
        assert header == ("instance_id,theorem,m,n,w,k,h_z,bound,ratio,"
                          "runtime_ms")

    def test_json_mirror(self, tmp_path):
        reports, _ = run_suite("pipeline", 2, 1)
        path = tmp_path / "r.json"
        write_json(reports, str(path))
        data = json.loads(path.read_text())
        assert len(data) == len(reports)
        assert all(row["ratio_pow"] for row in data)

    def test_max_ratios_positive(self):
        reports, _ = run_suite("pipeline", 3, 2)
        from fractions import Fraction

        for tag, info in max_ratios(reports).items():
            assert Fraction(info["ratio_pow"]) > 0
