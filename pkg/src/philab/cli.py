"""Command-line entry point: ``philab <command> ...``.

Exit codes: 0 success or valid, 1 invalid certificate, 2 parse or I/O error,
3 inapplicable construction or precondition, 4 internal consistency violation.
"""

from __future__ import annotations

import argparse
import random
import sys
from fractions import Fraction

from . import bound_certifier as bc
from . import constructions as cons
from . import phiwit, region_mapper, search_engine
from .graph_core import (
    DomainError, PreconditionError, StructuralError, format_rational as fmt, parse_rational,
    blowup_agreement, random_weighted_graph, verify_certificate, witness_value,
)
from .lp_engine import InapplicableError, LPError, symmetrize_witness

EXIT_OK, EXIT_INVALID, EXIT_PARSE, EXIT_INAPPLICABLE, EXIT_INTERNAL = 0, 1, 2, 3, 4


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


def rational(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _load(path) -> "phiwit.WitnessCertificate":
    try:
        return phiwit.load(path)
    except phiwit.ParseError as exc:
        raise CliError(f"{path}: {exc}", EXIT_PARSE) from None


def _write(cert, path, comments=None) -> None:
    try:
        phiwit.dump(cert, path, comments)
    except OSError as exc:
        raise CliError(f"cannot write {path}: {exc}", EXIT_PARSE) from None


# --------------------------------------------------------------------------- commands


def cmd_check(args) -> int:
    cert = _load(args.witness)
    report = verify_certificate(cert)
    print(f"certificate: {cert.mode} at ({fmt(cert.x)}, {fmt(cert.y)}), claim "
          f"{'<' if cert.strict else '<='} {fmt(cert.claimed_bound)}")
    print(f"graph: {cert.graph.summary()}")
    print(report.describe())
    print(f"value: {fmt(witness_value(cert.graph))}")
    print("VALID" if report.satisfied else "INVALID")
    return EXIT_OK if report.satisfied else EXIT_INVALID


def _construct(args):
    name = args.name
    need = lambda *keys: [getattr(args, k) for k in keys if getattr(args, k) is None]
    if name == "figure5":
        tw, rep = cons.figure5_triangular_witness()
        return None, bc.triangular_to_witness(tw)
    if name == "figure7":
        return cons.regular_extension(cons.figure7_regular_graph(), Fraction(2, 5), args.mode or "psi"), None
    fn = cons.REGISTRY.get(name)
    if fn is None:
        raise CliError(f"unknown construction {name!r}; known: {', '.join(sorted(cons.REGISTRY) + ['figure5', 'figure7'])}",
                       EXIT_PARSE)
    if name == "figure1":
        return fn(exactify=args.exactify), None
    if name == "figure2":
        return fn(), None
    if name in ("cyclic", "phi12curve", "psi12curve"):
        if need("k", "x", "y"):
            raise CliError(f"{name} needs --k, --x and --y", EXIT_PARSE)
        return fn(args.k, args.x, args.y), None
    if None in (args.x, args.y):
        raise CliError(f"{name} needs --x and --y", EXIT_PARSE)
    if args.variant is not None:
        key = {"psi12extracurve": "variant", "psi23extra": "variant",
               "phi23extracurve": "base", "phi23reversecurve": "bullet"}.get(name)
        if key is None:
            raise CliError(f"{name} takes no --variant", EXIT_PARSE)
        return fn(args.x, args.y, **{key: args.variant}), None
    return fn(args.x, args.y), None


def cmd_construct(args) -> int:
    res, cert = _construct(args)
    if res is not None:
        cert = res.certificate
        if res.params.values:
            print("parameters:")
            print("  " + res.params.describe().replace("\n", "\n  "))
        for d in res.formula_discrepancies:
            print(f"formula discrepancy: {d}")
        for n in res.notes:
            print(f"note: {n}")
        if not res.trusted:
            print(res.validation.describe())
            print("INVALID: construction output failed validation")
            return EXIT_INTERNAL
    report = verify_certificate(cert)
    print(f"{cert.provenance}: {cert.mode} at ({fmt(cert.x)}, {fmt(cert.y)}), claim "
          f"{'<' if cert.strict else '<='} {fmt(cert.claimed_bound)}, value {fmt(report.value)}, "
          f"{cert.graph.summary()}")
    if report.exact_params is not None:
        print(f"exact parameters: ({fmt(report.exact_params[0])}, {fmt(report.exact_params[1])})")
    if args.out:
        _write(cert, args.out)
        print(f"wrote {args.out}")
    return EXIT_OK


def _bracket(b: bc.CertifiedBound, lower: bool) -> str:
    if lower:
        return ("(" if b.strict else "[") + fmt(b.value)
    return fmt(b.value) + (")" if b.strict else "]")


def cmd_bound(args) -> int:
    iv = bc.best_interval(args.mode, args.x, args.y, args.effort)
    print(f"{args.mode}({fmt(args.x)}, {fmt(args.y)}) in {_bracket(iv.best_lower, True)}, "
          f"{_bracket(iv.best_upper, False)}")
    print(f"best lower: {iv.best_lower.describe()}")
    print(f"best upper: {iv.best_upper.describe()}")
    print("lower bounds:")
    for b in sorted(iv.lowers, key=lambda b: (-b.value, b.provenance)):
        print(f"  {b.describe()}")
    print("upper bounds:")
    for b in sorted(iv.uppers, key=lambda b: (b.value, b.provenance)):
        print(f"  {b.describe()}")
    return EXIT_OK


def cmd_map(args) -> int:
    rmap = region_mapper.build_map(args.mode, args.z, args.grid, args.effort, args.jobs)
    counts = rmap.counts()
    print(f"{args.mode} >= {fmt(args.z)} at resolution {args.grid}: " +
          ", ".join(f"{k} {v}" for k, v in counts.items()))
    command = "philab " + " ".join(sys.argv[1:])
    try:
        if args.csv:
            region_mapper.emit_csv(rmap, args.csv)
            print(f"wrote {args.csv}")
        if args.svg:
            region_mapper.emit_svg(rmap, args.svg, command)
            print(f"wrote {args.svg}")
        if args.diagonal_svg:
            prof = region_mapper.diagonal_profile(args.mode, args.grid, args.effort)
            region_mapper.emit_diagonal_svg(prof, args.diagonal_svg, args.mode, command)
            print(f"wrote {args.diagonal_svg}")
    except OSError as exc:
        raise CliError(str(exc), EXIT_PARSE) from None
    return EXIT_OK


def cmd_search_bad(args) -> int:
    res = search_engine.search_bad_pairs(args.mode, args.z, args.a, args.m, args.budget)
    print(f"screened {res.screened} quotient topologies ({'exhausted' if res.exhausted else 'budget reached'})")
    for x, y, cert in res.pairs:
        print(f"  ({fmt(x)}, {fmt(y)})  value {fmt(witness_value(cert.graph))}  {cert.provenance}")
    if args.out:
        try:
            index = search_engine.write_results(res, args.out)
        except OSError as exc:
            raise CliError(str(exc), EXIT_PARSE) from None
        print(f"wrote {index}")
    return EXIT_OK


def cmd_regular_order(args) -> int:
    res = search_engine.min_regular_order(args.x, args.max_n)
    if res.order_found is None:
        print(f"no {fmt(args.x)}-regular graph of order <= {res.exhausted_up_to}")
        return EXIT_OK
    g = res.graph
    print(res.order_found)
    print(f"orders 1..{res.exhausted_up_to} exhausted; {res.graphs_at_order} candidate(s) at order {res.order_found}")
    print("A weights: " + " ".join(f"{v}={fmt(w)}" for v, w in g.left_weights.items()))
    print("B weights: " + " ".join(f"{v}={fmt(w)}" for v, w in g.right_weights.items()))
    print("edges: " + " ".join(f"{u}{v}" for u, v in sorted(g.edges)))
    print(f"determinant: {g.determinant()}")
    print(f"denominator bound holds: {search_engine.hadamard_bound_check(res.order_found, args.x)}")
    for statement, _ in search_engine.regular_implies_peace(args.x, res):
        print(statement)
    return EXIT_OK


def cmd_symmetrize(args) -> int:
    cert = _load(args.input)
    if not verify_certificate(cert).satisfied:
        print("input certificate does not validate")
        return EXIT_INVALID
    out = symmetrize_witness(cert.replace(mode="phi"))
    report = verify_certificate(out)
    print(f"symmetric certificate: phi at ({fmt(out.x)}, {fmt(out.y)}), claim {fmt(out.claimed_bound)}, "
          f"value {fmt(report.value)}, {out.graph.summary()}")
    if not report.satisfied:
        print(report.describe())
        return EXIT_INTERNAL
    _write(out, args.output)
    print(f"wrote {args.output}")
    return EXIT_OK


def cmd_blowup_check(args) -> int:
    rng = random.Random(args.seed)
    failures = 0
    for n in range(args.count):
        g = random_weighted_graph(rng)
        x, y = Fraction(rng.randint(1, 6), 6), Fraction(rng.randint(1, 6), 6)
        bad = blowup_agreement(g, x, y)
        if bad:
            failures += 1
            print(f"trial {n}: " + "; ".join(bad))
    print(f"{args.count - failures}/{args.count} random graphs agree with their minimal blow-up")
    return EXIT_OK if failures == 0 else EXIT_INTERNAL


# --------------------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    def globals_parser(suppress: bool) -> argparse.ArgumentParser:
        g = argparse.ArgumentParser(add_help=False)
        d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
        g.add_argument("--effort", type=int, default=d(bc.K_MAX), help="cap on k-scans and cyclic orders")
        g.add_argument("--seed", type=int, default=d(0), help="seed for randomised commands")
        g.add_argument("--jobs", type=int, default=d(1), help="worker processes for map")
        return g

    # flags may come before or after the command; the copy on subcommands must not reset them
    common = globals_parser(True)
    p = argparse.ArgumentParser(prog="philab", description=__doc__.splitlines()[0], parents=[globals_parser(False)])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("check", parents=[common], help="validate a phiwit certificate")
    s.add_argument("witness")
    s.set_defaults(func=cmd_check)

    s = sub.add_parser("construct", parents=[common], help="build a certificate from a named construction")
    s.add_argument("name")
    s.add_argument("--k", type=int)
    s.add_argument("--x", type=rational)
    s.add_argument("--y", type=rational)
    s.add_argument("--variant", help="forward/reversed, first/second, third/two-fifths or one/two")
    s.add_argument("--mode", choices=("phi", "psi"))
    s.add_argument("--exactify", action="store_true")
    s.add_argument("--out")
    s.set_defaults(func=cmd_construct)

    s = sub.add_parser("bound", parents=[common], help="certified interval at a point")
    s.add_argument("--mode", choices=("phi", "psi", "xi"), required=True)
    s.add_argument("--x", type=rational, required=True)
    s.add_argument("--y", type=rational, required=True)
    s.set_defaults(func=cmd_bound)

    s = sub.add_parser("map", parents=[common], help="good/bad/unknown grid classification")
    s.add_argument("--mode", choices=("phi", "psi"), required=True)
    s.add_argument("--z", type=rational, required=True)
    s.add_argument("--grid", type=int, required=True)
    s.add_argument("--csv")
    s.add_argument("--svg")
    s.add_argument("--diagonal-svg")
    s.set_defaults(func=cmd_map)

    s = sub.add_parser("search-bad", parents=[common], help="bad-pair search over matching topologies")
    s.add_argument("--mode", choices=("phi", "psi"), required=True)
    s.add_argument("--z", type=rational, required=True)
    s.add_argument("--a", type=int, required=True)
    s.add_argument("--m", type=int, required=True)
    s.add_argument("--budget", type=int, default=25000)
    s.add_argument("--out")
    s.set_defaults(func=cmd_search_bad)

    s = sub.add_parser("regular-order", parents=[common], help="least order of an x-regular bipartite graph")
    s.add_argument("--x", type=rational, required=True)
    s.add_argument("--max-n", type=int, default=5)
    s.set_defaults(func=cmd_regular_order)

    s = sub.add_parser("symmetrize", parents=[common], help="phi certificate at (y, x) from one at (x, y)")
    s.add_argument("input")
    s.add_argument("output")
    s.set_defaults(func=cmd_symmetrize)

    s = sub.add_parser("blowup-check", parents=[common], help="random weighted graphs versus their blow-ups")
    s.add_argument("--count", type=int, default=50)
    s.set_defaults(func=cmd_blowup_check)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except (InapplicableError, cons.ConstructionInfeasible, cons.ParameterError,
            DomainError, PreconditionError) as exc:
        print(f"inapplicable: {exc}", file=sys.stderr)
        return EXIT_INAPPLICABLE
    except bc.ConsistencyViolation as exc:
        print(f"consistency violation: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except (StructuralError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except LPError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
