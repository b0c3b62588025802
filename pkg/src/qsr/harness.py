"""Random planted instances and empirical measurement of implied constants.

Instances are built so that every hypothesis of the statement they exercise
holds by construction: the form restricted to V is an orthogonal sum of
w hyperbolic planes and a positive-definite part (so the Witt index is
known and certified), hyperplanes are distinct and nonvanishing on V, and
the target t is realized as Q(y) for an actual lattice point y.
"""

import csv
from dataclasses import dataclass, field
from fractions import Fraction
import io
import json
import random
import time

from . import constructions, lattice, linalg, quadspace
from .constructions import BoundExpr, HyperplaneInV
from .errors import DomainError
from .heights import Subspace, global_height, inhom_height, subspace_height
from .quadspace import Certainty, GramForm, QuadSpace, WittCertificate


@dataclass(frozen=True)
class InstanceSpec:
    n: int
    m: int
    w_planted: int
    k: int
    coefficient_bound: int = 5
    t_range: int = 400
    seed: int = 0

    def __post_init__(self):
        if not (3 <= self.m <= self.n):
            raise DomainError("need 3 <= m <= n")
        if not (0 <= self.w_planted <= self.m // 2):
            raise DomainError("need 0 <= w <= floor(m/2)")
        if self.k < 0 or self.coefficient_bound < 1:
            raise DomainError("invalid spec")

    def rng(self):
        return random.Random(
            f"{self.n}|{self.m}|{self.w_planted}|{self.k}|"
            f"{self.coefficient_bound}|{self.t_range}|{self.seed}"
        )


@dataclass(frozen=True)
class Instance:
    spec: InstanceSpec
    Q: GramForm
    V: Subspace
    t: int
    hyperplanes: tuple
    witt: WittCertificate
    y: tuple  # the planted representation witness, t = Q(y)

    def verify(self):
        """Re-check every hypothesis the instance is supposed to satisfy."""
        assert QuadSpace(self.V, self.Q).regular
        assert quadspace.evaluate(self.Q, self.y) == self.t
        assert self.V.contains(self.y)
        kernels = {h.kernel_in_V for h in self.hyperplanes}
        assert len(kernels) == len(self.hyperplanes)
        for u, v in self.witt.hyperbolic_pairs:
            assert quadspace.evaluate(self.Q, u) == 0
            assert quadspace.bilinear(self.Q, u, v) != 0
        return True


def _unimodular(rng, size, ops):
    U = linalg.identity(size)
    for _ in range(ops):
        i, j = rng.sample(range(size), 2) if size > 1 else (0, 0)
        if i == j:
            continue
        s = rng.choice((-1, 1))
        U[i] = [a + s * b for a, b in zip(U[i], U[j])]
    return U


def _int_inverse(U):
    n = len(U)
    aug = [list(map(Fraction, U[i])) + linalg.identity(n)[i] for i in range(n)]
    R, _ = linalg.rref(aug)
    return [[int(e) for e in row[n:]] for row in R]


def gen_instance(spec):
    """Planted instance; deterministic in the spec (seed included)."""
    rng = spec.rng()
    n, m, w, k = spec.n, spec.m, spec.w_planted, spec.k
    cb = spec.coefficient_bound

    # Gram matrix on V-coordinates: w hyperbolic planes + positive diagonal,
    # conjugated by a mild unimodular change of coordinates.
    G0 = [[0] * m for _ in range(m)]
    for i in range(w):
        G0[2 * i][2 * i + 1] = G0[2 * i + 1][2 * i] = 1
    for i in range(2 * w, m):
        G0[i][i] = rng.randint(1, cb)
    U = _unimodular(rng, m, ops=m)
    Uinv = _int_inverse(U)
    GV = linalg.mat_mul(linalg.mat_mul(linalg.transpose(U), G0), U)

    # Embed V = span(first m rows of a unimodular E); ambient Gram pulls the
    # block diagonal back through E^{-1}.
    E = _unimodular(rng, n, ops=n)
    C = _int_inverse(E)
    block = [[GV[i][j] if i < m and j < m else 0 for j in range(n)] for i in range(n)]
    for i in range(m, n):
        block[i][i] = rng.randint(1, cb)
    G = linalg.mat_mul(linalg.mat_mul(C, block), linalg.transpose(C))
    Q = GramForm(G)
    B = [E[i] for i in range(m)]
    V = Subspace(n, B)

    def to_ambient(coords):
        return tuple(int(e) for e in linalg.vec_mat(coords, B))

    # Witt certificate straight from the construction.
    pairs = []
    Ui_cols = linalg.transpose(Uinv)
    for i in range(w):
        u = to_ambient(Ui_cols[2 * i])
        v = to_ambient(Ui_cols[2 * i + 1])
        pairs.append((u, v))
    kernel = tuple(to_ambient(Ui_cols[i]) for i in range(2 * w, m))
    witt = WittCertificate(
        w=w,
        hyperbolic_pairs=tuple(pairs),
        anisotropic_kernel_basis=kernel,
        certainty=Certainty.certified(),
    )

    # Distinct hyperplanes not vanishing on V.
    hyperplanes = []
    kernels = set()
    guard = 0
    while len(hyperplanes) < k:
        guard += 1
        if guard > 200 * (k + 1):
            raise DomainError("could not generate distinct hyperplanes")
        L = tuple(rng.randint(-cb, cb) for _ in range(n))
        if not any(L):
            continue
        try:
            h = HyperplaneInV(V, L)
        except DomainError:
            continue
        if h.kernel_in_V in kernels:
            continue
        kernels.add(h.kernel_in_V)
        hyperplanes.append(h)

    # Plant representability: t = Q(y) for a small y in V ∩ Z^n.
    y = None
    t = 0
    for attempt in range(200):
        coords = tuple(rng.randint(-3, 3) for _ in range(m))
        if not any(coords):
            continue
        cand = to_ambient(coords)
        val = quadspace.evaluate(Q, cand)
        if val == 0:
            continue
        if abs(val) <= spec.t_range or attempt > 100:
            y = cand
            t = int(val)
            break
    if y is None:
        raise DomainError("could not plant a nonzero represented value")

    return Instance(spec=spec, Q=Q, V=V, t=t, hyperplanes=tuple(hyperplanes),
                    witt=witt, y=y)


# ---------------------------------------------------------------------------
# suite execution

@dataclass
class BoundReport:
    instance_id: str
    theorem: str
    m: int
    n: int
    w: int
    k: int
    h_z: str
    bound: str  # decimal string of the bound value
    ratio_power: int
    ratio_pow: str  # exact Fraction of ratio^power
    ratio: str  # decimal string
    runtime_ms: int
    passed: bool

    def row(self, timings=False):
        return [
            self.instance_id, self.theorem, self.m, self.n, self.w, self.k,
            self.h_z, self.bound, self.ratio,
            self.runtime_ms if timings else "",
        ]

    def to_json(self):
        return {
            "instance_id": self.instance_id,
            "theorem": self.theorem,
            "m": self.m, "n": self.n, "w": self.w, "k": self.k,
            "h_z": self.h_z,
            "bound": self.bound,
            "ratio_power": self.ratio_power,
            "ratio_pow": self.ratio_pow,
            "ratio": self.ratio,
            "runtime_ms": self.runtime_ms,
            "passed": self.passed,
        }


CSV_COLUMNS = ["instance_id", "theorem", "m", "n", "w", "k",
               "h_z", "bound", "ratio", "runtime_ms"]


def _bound_decimal(bound):
    import decimal

    vp = bound.value_pow()
    with decimal.localcontext() as ctx:
        ctx.prec = 40
        d = decimal.Decimal(vp.numerator) / decimal.Decimal(vp.denominator)
        if bound.power != 1:
            d = d ** (decimal.Decimal(1) / decimal.Decimal(bound.power))
        return str(+d)


def _report_from(instance_id, theorem, inst, height, bound, k, runtime_ms, passed=True):
    rp = bound.ratio_pow(height)
    return BoundReport(
        instance_id=instance_id,
        theorem=theorem,
        m=inst.V.m, n=inst.Q.n, w=inst.witt.w, k=k,
        h_z=str(height),
        bound=_bound_decimal(bound),
        ratio_power=bound.power,
        ratio_pow=str(rp),
        ratio=str(bound.ratio_decimal(height)),
        runtime_ms=runtime_ms,
        passed=passed,
    )


def _rand_vec(rng, n, bound):
    return tuple(Fraction(rng.randint(-bound, bound), rng.randint(1, bound))
                 for _ in range(n))


def _rand_int_vec(rng, n, bound):
    return tuple(rng.randint(-bound, bound) for _ in range(n))


def _rand_subspace(rng, n, dim, bound):
    while True:
        rows = [_rand_int_vec(rng, n, bound) for _ in range(dim)]
        V = Subspace(n, rows)
        if V.m == dim:
            return V


def run_inequality_suite(count, seed):
    """Exact checks of the height inequalities; zero tolerance."""
    rng = random.Random(f"ineq|{seed}")
    reports = []
    ok = True
    for idx in range(count):
        iid = f"ineq-{seed}-{idx}"
        n = rng.randint(2, 6)
        # sum-height inequality
        ell = rng.randint(1, 3)
        xi = _rand_vec(rng, ell, 9)
        xs = [_rand_vec(rng, n, 9) for _ in range(ell)]
        total = tuple(sum(xi[i] * xs[i][j] for i in range(ell)) for j in range(n))
        lhs = inhom_height(total)
        rhs = ell * inhom_height(xi)
        for x in xs:
            rhs *= inhom_height(x)
        passed = lhs <= rhs
        ok &= passed
        reports.append(_report_from(
            iid, "L2.1", _FakeInst(n, n, 0), lhs,
            BoundExpr((("rhs", Fraction(rhs), Fraction(1)),)), 0, 0, passed))

        # integer-vector heights
        x = _rand_int_vec(rng, n, 100)
        y = _rand_int_vec(rng, n, 100)
        if any(x):
            from math import gcd

            passed = inhom_height(x) == linalg.sup_norm(x)
            passed &= (global_height(x) == inhom_height(x)) == (gcd(*x) == 1)
            ok &= passed
        passed_t = inhom_height(tuple(a + b for a, b in zip(x, y))) <= (
            Fraction(linalg.sup_norm(x)) + linalg.sup_norm(y))
        ok &= passed_t

        # intersection inequality
        d1, d2 = rng.randint(1, n - 1), rng.randint(1, n - 1)
        U1 = _rand_subspace(rng, n, d1, 5)
        U2 = _rand_subspace(rng, n, d2, 5)
        from .heights import intersect, pluecker_norm_sq

        W = intersect(U1, U2)
        if not W.is_zero():
            # exact for the Euclidean norm at infinity; compare squares
            lhs_sq = pluecker_norm_sq(W)
            rhs_sq = pluecker_norm_sq(U1) * pluecker_norm_sq(U2)
            passed = lhs_sq <= rhs_sq
            ok &= passed
            reports.append(_report_from(
                iid, "L2.4", _FakeInst(n, W.m, 0), subspace_height(W),
                BoundExpr((("rhs_sq", Fraction(rhs_sq), Fraction(1, 2)),)),
                0, 0, passed))
    return reports, ok


class _FakeInst:
    """Just enough shape for _report_from on non-pipeline rows."""

    def __init__(self, n, m, w):
        self.Q = type("Q", (), {"n": n})()
        self.V = type("V", (), {"m": m})()
        self.witt = type("W", (), {"w": w})()


def run_identity_suite(count, seed):
    """Exact identities: dimension identity, polarization, transport, z_r."""
    rng = random.Random(f"ident|{seed}")
    ok = True
    reports = []
    for idx in range(count):
        n = rng.randint(3, 5)
        G = [[rng.randint(-4, 4) for _ in range(n)] for _ in range(n)]
        for i in range(n):
            for j in range(i):
                G[i][j] = G[j][i]
        Q = GramForm(G)
        x = _rand_int_vec(rng, n, 6)
        y = _rand_int_vec(rng, n, 6)

        # polarization
        lhs = quadspace.evaluate(Q, tuple(a + b for a, b in zip(x, y)))
        rhs = (quadspace.evaluate(Q, x) + quadspace.evaluate(Q, y)
               + 2 * quadspace.bilinear(Q, x, y))
        ok &= lhs == rhs

        # dimension identity
        dim = rng.randint(1, n)
        V = _rand_subspace(rng, n, dim, 4)
        comp = quadspace.orth_complement(Q, V)
        sing = quadspace.ambient_singular(V, Q)
        ok &= V.m + comp.m - sing.m == n

        # transport isotropy on a planted isotropic vector
        spec = InstanceSpec(n=4, m=4, w_planted=1, k=0, coefficient_bound=4,
                            seed=seed * 100003 + idx)
        inst = gen_instance(spec)
        u = inst.witt.hyperbolic_pairs[0][0]
        xv = _rand_int_vec(rng, 4, 6)
        tu = constructions.isotropic_transport(inst.Q, u, xv)
        ok &= quadspace.evaluate(inst.Q, tu) == 0

        # z_r value identity in the w = 1 general branch (synthetic relations)
        b = rng.choice([c for c in range(-5, 6) if c])
        qy = rng.randint(-6, 6)
        qx = 2 * rng.choice([c for c in range(-4, 5) if c])
        Gz = GramForm([[0, b, 0], [b, qy, 0], [0, 0, qx]])
        uv, yv, xv3 = (1, 0, 0), (0, 1, 0), (0, 0, 1)
        for r in (1, 2, 3, rng.randint(4, 50)):
            half = r * r * qx * b
            assert half % 2 == 0
            z = tuple(yi + r * b * xi - (half // 2) * ui
                      for yi, xi, ui in zip(yv, xv3, uv))
            ok &= quadspace.evaluate(Gz, z) == quadspace.evaluate(Gz, yv)

        # descaling identity h(z) = H(y)
        yy = _rand_int_vec(rng, n, 9)
        if yy[-1] != 0:
            z = tuple(Fraction(c, yy[-1]) for c in yy[:-1])
            ok &= inhom_height(z) == global_height(yy)
    return reports, ok


def run_pipeline_suite(count, seed, n=4, k=2, coefficient_bound=4):
    """End-to-end constructions on planted instances; records measured ratios."""
    reports = []
    ok = True
    for idx in range(count):
        w = 1 + (idx % 2)
        m = 3 if w == 1 else 4
        if m > n:
            w, m = 1, 3
        spec = InstanceSpec(n=n, m=m, w_planted=w, k=k,
                            coefficient_bound=coefficient_bound,
                            seed=seed * 1009 + idx)
        inst = gen_instance(spec)
        inst.verify()
        iid = f"pipe-{seed}-{idx}"
        t0 = time.monotonic()

        # Theorem 1.1 shape: plain isotropic search
        x = quadspace.find_isotropic(inst.V, inst.Q)
        hx = global_height(x)
        b11 = BoundExpr((
            ("H_Q", quadspace.form_height_H(inst.Q),
             Fraction(inst.V.m - inst.witt.w + 1, 2)),
            ("H_V", subspace_height(inst.V), Fraction(2)),
        ))
        reports.append(_report_from(iid, "T1.1", inst, hx, b11, spec.k,
                                    int(1000 * (time.monotonic() - t0))))

        # Lemma 2.5 shape on a proper subspace
        if inst.V.m < inst.Q.n:
            comp = quadspace.orth_complement(inst.Q, inst.V)
            if not comp.is_zero():
                b25 = BoundExpr((
                    ("H_Q", quadspace.form_height_H(inst.Q), Fraction(inst.V.m)),
                    ("H_V", subspace_height(inst.V), Fraction(1)),
                ))
                reports.append(_report_from(iid, "L2.5", inst,
                                            subspace_height(comp), b25, spec.k, 0))

        # Theorem 1.3 pipeline
        from .heights import AlgebraicSet, linear_form_poly

        Z = AlgebraicSet(tuple((linear_form_poly(h.functional),)
                               for h in inst.hyperplanes)) if inst.hyperplanes else None
        rep = constructions.represent_field_avoiding(
            inst.Q, inst.V, inst.t, Z=Z, witt=inst.witt)
        ok &= quadspace.evaluate(inst.Q, rep.z) == inst.t
        reports.append(_report_from(iid, "T1.3", inst, rep.height, rep.bound,
                                    spec.k, 0))

        # Corollary 1.5 pipeline
        rep5 = constructions.represent_integral(inst.Q, inst.V, inst.t,
                                                witt=inst.witt)
        ok &= quadspace.evaluate(inst.Q, rep5.z) == inst.t
        reports.append(_report_from(iid, "C1.5", inst, rep5.height, rep5.bound,
                                    spec.k, 0))

        # Lemma 4.2 pipeline
        rep42 = constructions.avoid_hyperplanes(
            inst.Q, inst.V, inst.y, inst.hyperplanes, witt=inst.witt)
        ok &= quadspace.evaluate(inst.Q, rep42.z) == quadspace.evaluate(inst.Q, inst.y)
        ok &= all(not h.contains(rep42.z) for h in inst.hyperplanes)
        reports.append(_report_from(iid, "L4.2", inst, rep42.height, rep42.bound,
                                    spec.k, 0))

        # Theorem 1.6 pipeline
        rep6 = constructions.represent_integral_avoiding(
            inst.Q, inst.V, inst.t, inst.hyperplanes, witt=inst.witt)
        ok &= quadspace.evaluate(inst.Q, rep6.z) == inst.t
        ok &= all(not h.contains(rep6.z) for h in inst.hyperplanes)
        reports.append(_report_from(iid, "T1.6", inst, rep6.height, rep6.bound,
                                    spec.k, int(1000 * (time.monotonic() - t0))))
    return reports, ok


def run_suite(suite, count, seed, **kwargs):
    if suite == "inequality":
        return run_inequality_suite(count, seed)
    if suite == "identity":
        return run_identity_suite(count, seed)
    if suite == "pipeline":
        return run_pipeline_suite(count, seed, **kwargs)
    raise DomainError(f"unknown suite {suite!r}")


def max_ratios(reports):
    """Per-theorem maximum measured ratio, compared exactly across powers."""
    best = {}
    for r in reports:
        if not r.ratio_pow or r.ratio_pow == "0":
            continue
        cur = best.get(r.theorem)
        if cur is None or _ratio_less(cur, r):
            best[r.theorem] = r
    return {
        tag: {"power": r.ratio_power, "ratio_pow": r.ratio_pow, "ratio": r.ratio}
        for tag, r in best.items()
    }


def _ratio_less(a, b):
    pa, pb = Fraction(a.ratio_pow), Fraction(b.ratio_pow)
    return pa ** b.ratio_power < pb ** a.ratio_power


def write_csv(reports, fp, timings=False):
    close = False
    if isinstance(fp, str):
        fp = open(fp, "w", newline="")
        close = True
    try:
        writer = csv.writer(fp)
        writer.writerow(CSV_COLUMNS)
        for r in sorted(reports, key=lambda r: (r.instance_id, r.theorem)):
            writer.writerow(r.row(timings=timings))
    finally:
        if close:
            fp.close()


def write_json(reports, fp):
    data = [r.to_json() for r in sorted(reports, key=lambda r: (r.instance_id, r.theorem))]
    if isinstance(fp, str):
        with open(fp, "w") as f:
            json.dump(data, f, indent=2)
    else:
        json.dump(data, fp, indent=2)


def csv_string(reports, timings=False):
    buf = io.StringIO()
    write_csv(reports, buf, timings=timings)
    return buf.getvalue()
