"""Command-line entry point.

Exit codes: 0 success, 1 domain failure (invalid parameters, failed check
or certificate), 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .certify import (FUNCTION_SETS, BranchNotStable, independence_certificate,
                      specialization_rank_check, uniform_block_certificate)
from .cfrac import PRINTED, cf_identity_check, constant_term_check
from .exactnum import parse_rat
from .exponents import (NeighborhoodTooLarge, check_attainment, check_chains,
                        closed_forms_paper, compare, criterion_report, mnuv,
                        sample_neighborhood, samples_to_csv, trajectory_exponents)
from .nsystem import (InvalidParams, Params, UnsupportedDimension, build_geometry,
                      canonical_params, export_graph, validate_params)


class UsageError(Exception):
    pass


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def load_params(args) -> Params:
    if args.canonical is not None:
        return canonical_params(args.canonical)
    try:
        obj = json.loads(Path(args.params).read_text(encoding="utf-8"))
        return Params.from_json(obj)
    except UnsupportedDimension:
        raise
    except (OSError, json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"cannot read parameters from {args.params}: {exc}") from exc


def _require_valid(p: Params) -> None:
    rep = validate_params(p)
    if not rep.ok:
        raise InvalidParams(rep)


def cmd_validate(args) -> int:
    p = load_params(args)
    rep = validate_params(p)
    _emit(dumps({"params": p.to_json(), "valid": rep.ok,
                 "violations": [str(v) for v in rep.violations]}), args.output)
    return 0 if rep.ok else 1


def exponents_report(p: Params) -> dict:
    _require_valid(p)
    g = build_geometry(p)
    traj = trajectory_exponents(g)
    table = closed_forms_paper(p)
    crit = criterion_report(g)
    return {
        "params": p.to_json(),
        "trajectory": traj.to_json(),
        "paper": table.to_json(),
        "derived": mnuv(p).to_json(),
        "criterion": [c.to_json() for c in crit],
        "diff": compare(traj, table, crit).to_json(),
        "attainment": check_attainment(g, traj).to_dict(),
        "chains": check_chains(traj).to_dict(),
    }


def cmd_exponents(args) -> int:
    _emit(dumps(exponents_report(load_params(args))), args.output)
    return 0


def cmd_graph(args) -> int:
    p = load_params(args)
    _require_valid(p)
    _emit(dumps(export_graph(build_geometry(p)).to_json()), args.output)
    return 0


def certify_report(p: Params, sets=FUNCTION_SETS) -> dict:
    _require_valid(p)
    n = p.n
    certs = [independence_certificate(n, p, s) for s in sets]
    blocks = [uniform_block_certificate(n, p, s) for s in sets]
    spec = specialization_rank_check(n, p)
    ok = (all(c.verdict == "independent" for c in certs)
          and all(b.verdict == "independent" for b in blocks) and spec.ok)
    return {
        "n": n,
        "certificates": [c.to_json() for c in certs],
        "uniform_block": [b.to_json() for b in blocks],
        "specialization": spec.to_json(),
        "ok": ok,
    }


def cmd_certify(args) -> int:
    p = load_params(args)
    sets = FUNCTION_SETS if args.set is None else (args.set,)
    rep = certify_report(p, sets)
    _emit(dumps(rep), args.output)
    return 0 if rep["ok"] else 1


def cmd_sample(args) -> int:
    if args.seed is None:
        raise UsageError("sample requires --seed")
    p = load_params(args)
    _require_valid(p)
    try:
        radius = parse_rat(args.radius)
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"bad --radius {args.radius!r}: {exc}") from exc
    samples = sample_neighborhood(p, radius, args.count, args.seed)
    bad = [s.index for s in samples if not check_chains(s.exponents).ok]
    if args.format == "json":
        text = dumps({"n": p.n, "seed": args.seed, "radius": args.radius, "samples": [
            {"index": s.index, "params": s.params.to_json(), "exponents": s.exponents.to_json()}
            for s in samples]})
    else:
        text = samples_to_csv(p.n, args.seed, samples)
    _emit(text, args.output)
    return 0 if not bad else 1


def cmd_cfcheck(args) -> int:
    p = load_params(args)
    _require_valid(p)
    ident = cf_identity_check(p, specialize_c=not args.no_specialize_c)
    const = constant_term_check(p.n)
    printed = constant_term_check(p.n, PRINTED)
    ok = ident.ok and const.ok
    _emit(dumps({
        "n": p.n,
        "identity": ident.to_json(),
        "constant_terms": const.to_json(),
        # the recurrence as printed is expected to fail; reported, not scored
        "printed_recurrence": printed.to_json(),
        "ok": ok,
    }), args.output)
    return 0 if ok else 1


COMMANDS = {
    "validate": cmd_validate,
    "exponents": cmd_exponents,
    "graph": cmd_graph,
    "certify": cmd_certify,
    "sample": cmd_sample,
    "cfcheck": cmd_cfcheck,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nsystems",
        description="Exact exponent spectra of a family of generalized (n+1)-systems.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sp = sub.add_parser(name)
        src = sp.add_mutually_exclusive_group(required=True)
        src.add_argument("--canonical", type=int, metavar="N",
                         help="use the canonical parameter point for dimension N")
        src.add_argument("--params", metavar="FILE", help="JSON parameter file")
        sp.add_argument("-o", "--output", metavar="PATH")
        if name == "sample":
            sp.add_argument("--radius", default="1/64")
            sp.add_argument("--count", type=int, default=100)
            sp.add_argument("--seed", type=int)
            sp.add_argument("--format", choices=("csv", "json"), default="csv")
        if name == "certify":
            sp.add_argument("--set", choices=FUNCTION_SETS)
        if name == "cfcheck":
            sp.add_argument("--no-specialize-c", action="store_true",
                            help="use W_k at the actual C instead of C = 1")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except (UsageError, UnsupportedDimension) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (InvalidParams, BranchNotStable, NeighborhoodTooLarge) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
