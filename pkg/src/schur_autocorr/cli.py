"""Command-line front end.

Exit codes: 0 success, 1 a verification or check failed, 2 usage error.
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from . import __version__
from .branching import TABLES, SubgroupId, multiplicity_record, validate_tables
from .haarmc import MCConfig, mc_check
from .identities import IdentityId, IdentityTag, default_threads, verify
from .partitions import format_partition, parse_partition
from .symfunc import dimension, kostka, monomial_count, schur_to_monomial, specialize_ones

_GROUP_HELP = "one of: " + ", ".join(h.name for h in SubgroupId)

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _partition(text: str):
    try:
        return parse_partition(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _positive(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}") from None
    if n < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}")
    return n


def _seed(text: str) -> int:
    try:
        n = int(text, 0)
    except ValueError:
        raise argparse.ArgumentTypeError(f"seed must be an integer, got {text!r}") from None
    if not 0 <= n < 2**64:
        raise argparse.ArgumentTypeError("seed must fit in 64 unsigned bits")
    return n


def _xlist(text: str) -> tuple[complex | float, ...]:
    out = []
    for tok in text.split(","):
        tok = tok.strip().replace(" ", "")
        if not tok:
            continue
        try:
            v = complex(tok.replace("i", "j"))
        except ValueError:
            raise argparse.ArgumentTypeError(f"bad x value {tok!r}") from None
        out.append(v.real if v.imag == 0 else v)
    if not out:
        raise argparse.ArgumentTypeError("--x needs at least one value")
    return tuple(out)


def _group(text: str) -> SubgroupId:
    try:
        return SubgroupId.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _identity(text: str) -> str:
    key = text.strip().upper()
    if key != "ALL" and key not in IdentityTag.__members__:
        raise argparse.ArgumentTypeError(
            f"unknown identity {text!r}; expected ALL or one of {list(IdentityTag.__members__)}"
        )
    return key


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default="text")

    threaded = argparse.ArgumentParser(add_help=False)
    threaded.add_argument(
        "--threads",
        type=_positive,
        default=None,
        help="worker count (default: SCHUR_AUTOCORR_THREADS, then CPU count)",
    )

    p = argparse.ArgumentParser(prog="schur-autocorr", description=__doc__)
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", parents=[common, threaded], help="verify one identity exactly")
    v.add_argument(
        "--identity",
        type=_identity,
        required=True,
        help="one of: all, " + ", ".join(t.name for t in IdentityTag),
    )
    v.add_argument("--m", type=_positive, required=True)

    t = sub.add_parser("tables", parents=[common], help="print or validate the coefficient tables")
    t.add_argument("--validate", action="store_true")
    t.add_argument("--max-a", type=int, default=60)

    mu = sub.add_parser("multiplicity", parents=[common], help="trivial multiplicity for a group")
    mu.add_argument("--group", type=_group, required=True, help=_GROUP_HELP)
    mu.add_argument("--lambda", dest="lam", type=_partition, required=True, help="lambda', e.g. 4,3,1")

    k = sub.add_parser("kostka", parents=[common], help="Kostka number K(shape, content)")
    k.add_argument("--shape", type=_partition, required=True)
    k.add_argument("--content", type=_partition, required=True)

    d = sub.add_parser("dim", parents=[common], help="S_shape(1, ..., 1)")
    d.add_argument("--shape", type=_partition, required=True)
    d.add_argument("--vars", type=_positive, required=True)

    e = sub.add_parser("expand", parents=[common], help="monomial expansion of S_shape")
    e.add_argument("--shape", type=_partition, required=True)
    e.add_argument("--vars", type=_positive, required=True)

    mc = sub.add_parser("mc", parents=[common, threaded], help="Monte Carlo Haar check")
    mc.add_argument("--group", type=_group, required=True, help=_GROUP_HELP)
    mc.add_argument("--x", type=_xlist, required=True)
    mc.add_argument("--samples", type=_positive, default=10**6)
    mc.add_argument("--seed", type=_seed, default=42)

    a = sub.add_parser("all", parents=[common, threaded], help="run every consistency check")
    a.add_argument("--max-m", type=_positive, default=8)
    a.add_argument("--samples", type=_positive, default=10**6)
    a.add_argument("--seed", type=_seed, default=42)
    return p


def _emit(args, payload, text: str) -> None:
    if args.format == "json":
        print(json.dumps(payload, indent=2))
    else:
        print(text)


def _threads(args) -> int:
    if getattr(args, "threads", None):
        return args.threads
    try:
        return default_threads()
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def cmd_verify(args) -> int:
    threads = _threads(args)
    tags = list(IdentityTag) if args.identity == "ALL" else [IdentityTag[args.identity]]
    reports = [verify(IdentityId(t, args.m), threads=threads) for t in tags]
    payload = reports[0].as_dict() if len(reports) == 1 else [r.as_dict() for r in reports]
    _emit(args, payload, "\n\n".join(r.render_text() for r in reports))
    return EXIT_OK if all(r.equal for r in reports) else EXIT_FAIL


def cmd_tables(args) -> int:
    payload = {"tables": TABLES.as_dict()}
    lines = []
    if args.validate:
        try:
            rep = validate_tables(args.max_a)
        except ValueError as exc:
            raise UsageError(f"--max-a: {exc}") from None
        payload["validation"] = rep.as_dict()
        status = "pass" if rep.passed else f"FAIL {rep.first_mismatch}"
        lines.append(f"validate_tables(max_a={args.max_a}): {rep.checks} checks on {rep.triples_checked} triples: {status}")
        code = EXIT_OK if rep.passed else EXIT_FAIL
    else:
        for name, val in payload["tables"].items():
            lines.append(f"{name}: {json.dumps(val)}")
        code = EXIT_OK
    _emit(args, payload, "\n".join(lines))
    return code


def cmd_multiplicity(args) -> int:
    try:
        rec = multiplicity_record(args.group, args.lam)
    except ValueError as exc:
        raise UsageError(f"--lambda: {exc}") from None
    text = str(rec["multiplicity"])
    if rec["oracle_multiplicity"] != rec["multiplicity"]:
        text += f"  (oracle disagrees: {rec['oracle_multiplicity']})"
    _emit(args, rec, text)
    return EXIT_OK if rec["oracle_multiplicity"] == rec["multiplicity"] else EXIT_FAIL


def cmd_kostka(args) -> int:
    val = kostka(args.shape, args.content)
    _emit(
        args,
        {"shape": format_partition(args.shape), "content": format_partition(args.content), "kostka": str(val)},
        str(val),
    )
    return EXIT_OK


def cmd_dim(args) -> int:
    hook = dimension(args.shape, args.vars)
    payload = {"shape": format_partition(args.shape), "vars": args.vars, "dimension": str(hook)}
    if args.shape.part(0) <= 3 and len(args.shape) <= args.vars:
        ones = specialize_ones(schur_to_monomial(args.shape, args.vars))
        payload["monomial_specialization"] = str(ones)
        if ones != hook:
            _emit(args, payload, f"{hook} (monomial route gives {ones})")
            return EXIT_FAIL
    _emit(args, payload, str(hook))
    return EXIT_OK


def cmd_expand(args) -> int:
    try:
        f = schur_to_monomial(args.shape, args.vars)
    except ValueError as exc:
        raise UsageError(f"--shape: {exc}") from None
    payload = f.to_dict()
    payload["monomial_count"] = str(monomial_count(f))
    lines = [f"S({format_partition(args.shape)}) in {args.vars} variables: {len(f)} terms, {monomial_count(f)} monomials"]
    lines += [f"  {str(c):>12}  m({format_partition(k)})" for k, c in f.terms()]
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK


def cmd_mc(args) -> int:
    try:
        cfg = MCConfig(args.samples, args.seed, args.x)
        rep = mc_check(args.group, cfg, threads=_threads(args))
    except ValueError as exc:
        raise UsageError(f"--x: {exc}") from None
    text = (
        f"{rep['group']} m={rep['m']} samples={rep['samples']} seed={rep['seed']}\n"
        f"  empirical {complex(*rep['empirical']):.6f} +- {rep['std_error']:.2e}\n"
        f"  symbolic  {complex(*rep['symbolic']):.6f}\n"
        f"  {'pass' if rep['pass'] else 'FAIL'}"
    )
    _emit(args, rep, text)
    return EXIT_OK if rep["pass"] else EXIT_FAIL


def cmd_all(args) -> int:
    from .selfcheck import run_all

    results = run_all(args.max_m, args.samples, args.seed, _threads(args))
    payload = {"max_m": args.max_m, "checks": [r.as_dict() for r in results]}
    text = "\n".join(f"{'PASS' if r.passed else 'FAIL'}  {r.name}" for r in results)
    _emit(args, payload, text)
    return EXIT_OK if all(r.passed for r in results) else EXIT_FAIL


COMMANDS = {
    "verify": cmd_verify,
    "tables": cmd_tables,
    "multiplicity": cmd_multiplicity,
    "kostka": cmd_kostka,
    "dim": cmd_dim,
    "expand": cmd_expand,
    "mc": cmd_mc,
    "all": cmd_all,
}


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse reports the offending flag itself
        return int(exc.code) if exc.code is not None else EXIT_USAGE
    try:
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"schur-autocorr {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
