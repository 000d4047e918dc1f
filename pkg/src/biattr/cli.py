"""Command-line interface: ``biattr <command> SPEC [options]``.

Every command prints one JSON document (``--out json``, the default) with
sorted keys, or a short text summary. Exit status is 0 whenever a verdict
was computed, 2 for bad input, 3 when the work ceiling is hit and 4 when an
internal consistency check fails.
"""
from __future__ import annotations

import argparse
import json
import sys

from . import attractor, modular, quasisturmian, substitution
from .attractor import ArithmeticProgression, FiniteSet, Interval
from .biword import factor_complexity_profile, load_spec
from .config import DEFAULT_CEILING, work_ceiling
from .errors import InvariantError, PreconditionError, ResourceLimitError, SpecError

EXIT_OK, EXIT_INPUT, EXIT_RESOURCE, EXIT_INVARIANT = 0, 2, 3, 4


def _positions(text: str) -> FiniteSet:
    try:
        return FiniteSet(tuple(int(p) for p in text.split(",") if p.strip()))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _gamma(args):
    given = [g for g in (args.interval, args.set, args.ap) if g is not None]
    if len(given) != 1:
        raise PreconditionError("give exactly one of --interval, --set, --ap")
    if args.interval is not None:
        return Interval(*args.interval)
    if args.ap is not None:
        return ArithmeticProgression(*args.ap)
    return args.set


def _need_interval(args) -> Interval:
    if args.interval is None:
        raise PreconditionError("this command needs --interval a b")
    return Interval(*args.interval)


# --------------------------------------------------------------------------
# commands; each returns (payload, text)


def cmd_gen(spec, args):
    win = spec.window(args.i, args.j)
    return win.to_dict(), f"offset {win.offset}: {win.content}"


def cmd_check(spec, args):
    gamma = _gamma(args)
    if isinstance(gamma, ArithmeticProgression):
        rep = modular.ap_attractor_check(spec, gamma.residue, gamma.modulus, args.N, args.radius)
    else:
        rep = attractor.check_attractor(spec, gamma, args.N, args.radius)
    d = rep.to_dict()
    text = d["verdict"] if rep.covered else f"uncovered, witness {rep.witness!r}"
    return d, text


def cmd_span(spec, args):
    search = args.search if args.search is not None else max(60, args.N)
    res = attractor.min_span_bruteforce(spec, args.N, search, args.radius)
    d = res.to_dict()
    return d, f"{res.kind} span {res.value} attractor {d['attractor']}"


def cmd_complexity(spec, args):
    profile, radius = factor_complexity_profile(spec, args.N, args.radius)
    d = {"N": args.N, "radius": radius, "profile": list(profile)}
    return d, " ".join(f"{n}:{p}" for n, p in enumerate(profile, 1))


def cmd_classify(spec, args):
    v = quasisturmian.finite_attractor_classifier(spec, args.N)
    return v.to_dict(), f"{v.kind}, span {'infinite' if v.span.value is None else v.span.value}"


def cmd_desub(spec, args):
    if args.which is not None:
        res = substitution.desubstitute_L(spec, args.which, _need_interval(args), args.N)
        d = res.to_dict()
        return d, f"attractor {d['attractor']}; " + "; ".join(res.removal.reasons)
    ext = quasisturmian.extract(spec, args.N, args.radius or 2000)
    rep = quasisturmian.desubstitute(spec, ext, args.N)
    d = {"extraction": ext.to_dict(), "desubstitution": rep.to_dict()}
    return d, f"w = {ext.w!r}, phi = {ext.phi.table}, k = {ext.k}, round trip {rep.round_trip}"


def cmd_modrec(spec, args):
    rep = modular.modulo_recurrent_upto(spec, args.K, args.N, args.radius)
    text = "passed" if rep.passed else "failed: " + ", ".join(
        f"({f.w!r}, k={f.k}) missing {list(f.missing)}" for f in rep.failures)
    return rep.to_dict(), text


def cmd_sparse(spec, args):
    fn = modular.block_sparse_attractor if args.block else modular.sparse_attractor
    kwargs = {"radius": args.radius} if args.radius else {}
    res = fn(spec, modular.LOG2, args.N, **kwargs)
    d = res.to_dict()
    return d, (f"size {d['size']}, density {'ok' if res.density_ok else 'violated'}, "
               f"{'covered' if res.covered else 'uncovered'}")


def cmd_ca(spec, args):
    rule = modular.periodizing_rule(spec, args.w, args.k, args.radius or 2000)
    if rule is None:
        return {"rule": None, "w": args.w, "k": args.k}, "no periodizing rule"
    lo, hi = args.span
    out = modular.apply_sliding_block(spec, rule, lo, hi)
    period = modular.smallest_period(out.content)
    d = {"rule": rule.to_json(), "w": args.w, "k": args.k, "output": out.to_dict(),
         "period": period}
    return d, f"M = {rule.M}, period {period}: {out.content[:60]}"


def cmd_report(spec, args):
    from .report import write_report  # matplotlib is only needed here

    d = write_report(spec, args.dir, args.N, args.stem)
    return d, f"{d['verdict']['kind']}: wrote {', '.join(d['files'])} to {args.dir}"


# --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("spec", help="spec file (JSON)")
    common.add_argument("--N", type=int, default=40, help="check length")
    common.add_argument("--radius", type=int, default=None)
    common.add_argument("--interval", type=int, nargs=2, metavar=("A", "B"))
    common.add_argument("--set", type=_positions, metavar="P1,P2,...")
    common.add_argument("--ap", type=int, nargs=2, metavar=("I", "K"))
    common.add_argument("--out", choices=("json", "text"), default="json")
    common.add_argument("--ceiling", type=int, default=DEFAULT_CEILING,
                        help="max symbols one expansion may produce")

    p = argparse.ArgumentParser(prog="biattr", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("gen", parents=[common], help="print a window")
    s.add_argument("i", type=int)
    s.add_argument("j", type=int)
    s.set_defaults(fn=cmd_gen)

    sub.add_parser("check", parents=[common], help="check an attractor").set_defaults(fn=cmd_check)

    s = sub.add_parser("span", parents=[common], help="brute-force minimal span")
    s.add_argument("--search", type=int, default=None,
                   help="candidate positions lie in [-S, S]; default max(60, N)")
    s.set_defaults(fn=cmd_span)

    sub.add_parser("complexity", parents=[common],
                   help="factor complexity profile").set_defaults(fn=cmd_complexity)
    sub.add_parser("classify", parents=[common],
                   help="finite-attractor verdict").set_defaults(fn=cmd_classify)

    s = sub.add_parser("desub", parents=[common],
                       help="L0/L1 step (with --which) or return-morphism extraction")
    s.add_argument("--which", type=int, choices=(0, 1))
    s.set_defaults(fn=cmd_desub)

    s = sub.add_parser("modrec", parents=[common], help="modulo-recurrence check")
    s.add_argument("--K", type=int, default=2)
    s.set_defaults(fn=cmd_modrec)

    s = sub.add_parser("sparse", parents=[common], help="greedy sparse attractor, eta = log2")
    s.add_argument("--block", action="store_true", help="block variant with one common start")
    s.set_defaults(fn=cmd_sparse)

    s = sub.add_parser("ca", parents=[common], help="periodizing sliding-block rule")
    s.add_argument("--w", required=True)
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--span", type=int, nargs=2, default=(-300, 300), metavar=("LO", "HI"),
                   help="output window")
    s.set_defaults(fn=cmd_ca)

    s = sub.add_parser("report", parents=[common], help="write JSON, CSV and PNG")
    s.add_argument("--dir", default=".")
    s.add_argument("--stem", default="report")
    s.set_defaults(fn=cmd_report)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.N < 1:
            raise PreconditionError("--N must be at least 1")
        if args.radius is not None and args.radius < args.N:
            raise PreconditionError("--radius must be at least --N")
        spec = load_spec(args.spec)
        with work_ceiling(args.ceiling):
            payload, text = args.fn(spec, args)
    except (SpecError, PreconditionError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except ResourceLimitError as e:
        print(f"resource limit: {e}", file=sys.stderr)
        return EXIT_RESOURCE
    except InvariantError as e:
        print(f"internal check failed: {e}", file=sys.stderr)
        return EXIT_INVARIANT
    if args.out == "json":
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print(text)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
