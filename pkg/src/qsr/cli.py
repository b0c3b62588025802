"""Command-line front end.

Exit codes: 0 success / solution found, 2 parse or usage error,
3 search exhausted without a solution, 4 hypothesis violation.

The environment variable QSR_THREADS caps enumeration parallelism.
"""

import argparse
import decimal
from fractions import Fraction
import json
import sys

from . import constructions, enumeration, harness, lattice, quadspace
from .constructions import HyperplaneInV
from .errors import DomainError, SearchExhausted
from .heights import (
    AlgebraicSet,
    SparsePoly,
    Subspace,
    global_height,
    inhom_height,
    linear_form_poly,
    poly_height,
    subspace_height,
)
from .quadspace import GramForm

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_NOT_FOUND = 3
EXIT_HYPOTHESIS = 4


def _fmt(x):
    """Exact value plus a 6-significant-digit decimal."""
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    with decimal.localcontext() as ctx:
        ctx.prec = 6
        d = decimal.Decimal(x.numerator) / decimal.Decimal(x.denominator)
    return f"{x.numerator}/{x.denominator} (~{d})"


class ParseError(Exception):
    def __init__(self, where, message):
        super().__init__(f"{where}: {message}")


def _parse_vec(text):
    try:
        return tuple(Fraction(p.strip()) for p in text.split(","))
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError("--vec", str(exc))


def load_instance(path):
    """InstanceFile: n, gram, optional basis rows, t, hyperplanes, avoid."""
    try:
        with open(path) as f:
            data = json.load(f)
    except OSError as exc:
        raise ParseError(path, str(exc))
    except json.JSONDecodeError as exc:
        raise ParseError(path, f"invalid JSON: {exc}")

    def fail(field, msg):
        raise ParseError(f"{path}:{field}", msg)

    if "gram" not in data:
        fail("gram", "missing Gram matrix")
    try:
        gram = [[Fraction(str(e)) for e in row] for row in data["gram"]]
        Q = GramForm(gram)
    except (DomainError, ValueError, TypeError) as exc:
        fail("gram", str(exc))
    n = Q.n
    if "n" in data and data["n"] != n:
        fail("n", f"declared n = {data['n']} but gram is {n} x {n}")

    if data.get("V") is not None:
        try:
            rows = [[Fraction(str(e)) for e in row] for row in data["V"]]
            V = Subspace(n, rows)
        except (DomainError, ValueError, TypeError) as exc:
            fail("V", str(exc))
    else:
        V = Subspace.full(n)

    t = None
    if data.get("t") is not None:
        try:
            t = Fraction(str(data["t"]))
        except (ValueError, ZeroDivisionError) as exc:
            fail("t", str(exc))

    hyperplanes = []
    for i, row in enumerate(data.get("hyperplanes") or []):
        try:
            L = tuple(Fraction(str(e)) for e in row)
            hyperplanes.append(HyperplaneInV(V, L))
        except (DomainError, ValueError, TypeError) as exc:
            fail(f"hyperplanes[{i}]", str(exc))

    avoid = None
    if data.get("avoid"):
        try:
            families = []
            for fam in data["avoid"]:
                families.append(tuple(SparsePoly.from_text(p, nvars=n) for p in fam))
            avoid = AlgebraicSet(tuple(families))
        except (DomainError, ValueError, TypeError) as exc:
            fail("avoid", str(exc))

    return Q, V, t, hyperplanes, avoid


def cmd_height(args):
    chosen = [x for x in (args.vec, args.poly, args.subspace) if x is not None]
    if len(chosen) != 1:
        raise ParseError("height", "give exactly one of --vec, --poly, --subspace")
    if args.vec is not None:
        x = _parse_vec(args.vec)
        print(f"H = {_fmt(global_height(x))}, h = {_fmt(inhom_height(x))}")
    elif args.poly is not None:
        try:
            P = SparsePoly.from_text(args.poly)
        except (DomainError, ValueError) as exc:
            raise ParseError("--poly", str(exc))
        print(f"H = {_fmt(poly_height(P, 'homogeneous'))}, "
              f"h = {_fmt(poly_height(P, 'inhomogeneous'))}")
    else:
        _, V, _, _, _ = load_instance(args.subspace)
        print(f"H(V) = {_fmt(subspace_height(V))}  (dim {V.m})")
    return EXIT_OK


def cmd_analyze(args):
    Q, V, _, _, _ = load_instance(args.file)
    space = quadspace.QuadSpace(V, Q)
    print(f"dim V = {V.m}, ambient n = {Q.n}")
    print(f"radical dim {space.radical_dim}, "
          f"{'regular' if space.regular else 'not regular'}")
    print(f"H(V) = {_fmt(subspace_height(V))}, "
          f"h(Q) = {_fmt(quadspace.form_height_h(Q))}, "
          f"H(Q) = {_fmt(quadspace.form_height_H(Q))}")
    if space.regular:
        witt = quadspace.witt_decompose(V, Q, radius=args.radius)
        print(f"w = {witt.w} ({witt.certainty})")
        for i, (u, v) in enumerate(witt.hyperbolic_pairs):
            print(f"  plane {i + 1}: u = {list(u)}, v = {list(v)}")
        if witt.anisotropic_kernel_basis:
            print(f"  anisotropic part dim {len(witt.anisotropic_kernel_basis)}")
    else:
        rad = space.radical()
        print(f"radical basis: {[list(r) for r in rad.basis]}")
    return EXIT_OK


def cmd_zero(args):
    Q, V, _, hyperplanes, avoid = load_instance(args.file)
    if hyperplanes and avoid is None:
        x = constructions.isotropic_avoiding(V, Q, hyperplanes, radius=args.radius)
    else:
        x = quadspace.find_isotropic(V, Q, avoid=avoid, radius=args.radius)
    print(f"x = {[str(c) for c in x]}")
    print(f"H(x) = {_fmt(global_height(x))}")
    return EXIT_OK


def cmd_represent(args):
    Q, V, t, hyperplanes, avoid = load_instance(args.file)
    if t is None:
        raise ParseError(args.file, "instance file must set t for represent")
    if args.mode == "field":
        Z = avoid
        if hyperplanes:
            fams = (list(Z.sets) if Z else []) + [
                (linear_form_poly(h.functional),) for h in hyperplanes]
            Z = AlgebraicSet(tuple(fams))
        rep = constructions.represent_field_avoiding(Q, V, t, Z=Z,
                                                     radius=args.radius)
    elif args.mode == "integral":
        rep = constructions.represent_integral(Q, V, t, radius=args.radius)
    else:
        rep = constructions.represent_integral_avoiding(
            Q, V, t, hyperplanes, radius=args.radius)

    if args.out == "json":
        print(json.dumps(rep.to_json(), indent=2))
    else:
        print(f"z = {[str(c) for c in rep.z]}")
        print(f"Q(z) = {_fmt(rep.value)}")
        print(f"h(z) = {_fmt(rep.height)}")
        print(f"case: {rep.case_tag}, w = {rep.witt_w}"
              + (" (provisional)" if rep.provisional else ""))
    if args.ratio:
        print(f"ratio = {rep.ratio_decimal()}  "
              f"(exact: ratio^{rep.bound.power} = {rep.ratio_pow()})")
    return EXIT_OK


def cmd_oracle(args):
    Q, V, t, _, avoid = load_instance(args.file)
    if t is None:
        t = 0
    basis = lattice.saturate(V)
    radius = args.radius
    if radius is None:
        radius = lattice.default_oracle_radius(Q, V, t)
    mode = "all" if args.all else "first_minimal"
    if t == 0:
        result = lattice.enumerate_zeros(Q, basis, radius, avoid=avoid, mode=mode)
    else:
        result = lattice.enumerate_representations(Q, basis, int(t), radius,
                                                   avoid=avoid, mode=mode)
    if not result.found():
        print(f"no solutions up to radius {result.exhausted_radius} "
              f"({result.count_examined} points examined)")
        return EXIT_NOT_FOUND
    if args.all:
        print(f"{len(result.solutions)} solutions in the box "
              f"(radius {radius}):")
        for z in result.solutions:
            print(f"  {list(z)}")
    else:
        z = result.solutions[0]
        print(f"z = {list(z)}, H(z) = {_fmt(result.minimal_height)}")
    print(f"examined: {result.count_examined}, backend: {enumeration.backend_name()}")
    return EXIT_OK


def cmd_bench(args):
    reports, ok = harness.run_suite(args.suite, args.count, args.seed)
    if args.out:
        harness.write_csv(reports, args.out, timings=args.timings)
        print(f"wrote {len(reports)} rows -> {args.out}")
    else:
        sys.stdout.write(harness.csv_string(reports, timings=args.timings))
    for tag, info in sorted(harness.max_ratios(reports).items()):
        print(f"# max ratio {tag}: {info['ratio']}", file=sys.stderr)
    if not ok:
        print("# suite reported failures", file=sys.stderr)
        return EXIT_HYPOTHESIS
    return EXIT_OK


def build_parser():
    p = argparse.ArgumentParser(
        prog="qsr",
        description="Exact heights and small-height representations of "
                    "quadratic forms on subspaces.",
    )
    sub = p.add_subparsers(dest="command", required=True)

    ph = sub.add_parser("height", help="heights of vectors, polynomials, subspaces")
    ph.add_argument("--vec", help="comma-separated rational coordinates")
    ph.add_argument("--poly", help="polynomial in X1..Xn, e.g. 'X1^2 - 5'")
    ph.add_argument("--subspace", help="instance file with a V block")
    ph.set_defaults(func=cmd_height)

    pa = sub.add_parser("analyze", help="radical, regularity, Witt certificate")
    pa.add_argument("file")
    pa.add_argument("--radius", type=int, default=None)
    pa.set_defaults(func=cmd_analyze)

    pz = sub.add_parser("zero", help="small isotropic vector, optionally avoiding")
    pz.add_argument("file")
    pz.add_argument("--radius", type=int, default=None)
    pz.set_defaults(func=cmd_zero)

    pr = sub.add_parser("represent", help="produce z in V with Q(z) = t")
    pr.add_argument("file")
    pr.add_argument("--mode", choices=("field", "integral", "integral-avoid"),
                    default="integral")
    pr.add_argument("--radius", type=int, default=None)
    pr.add_argument("--out", choices=("json", "text"), default="text")
    pr.add_argument("--ratio", action="store_true",
                    help="also print the measured bound ratio")
    pr.set_defaults(func=cmd_represent)

    po = sub.add_parser("oracle", help="exhaustive lattice search")
    po.add_argument("file")
    po.add_argument("--radius", type=int, default=None)
    po.add_argument("--all", action="store_true",
                    help="list every solution in the box")
    po.set_defaults(func=cmd_oracle)

    pb = sub.add_parser("bench", help="run a measurement suite, emit CSV")
    pb.add_argument("--suite", choices=("inequality", "identity", "pipeline"),
                    default="pipeline")
    pb.add_argument("--seed", type=int, default=0)
    pb.add_argument("--count", type=int, default=50)
    pb.add_argument("--out", default=None)
    pb.add_argument("--timings", action="store_true",
                    help="include wall-clock times (breaks CSV reproducibility)")
    pb.set_defaults(func=cmd_bench)
    return p


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors already; re-raise unchanged
        raise exc
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except SearchExhausted as exc:
        print(f"not found: {exc}", file=sys.stderr)
        return EXIT_NOT_FOUND
    except DomainError as exc:
        print(f"hypothesis violation: {exc}", file=sys.stderr)
        return EXIT_HYPOTHESIS


if __name__ == "__main__":
    sys.exit(main())
