"""Command line: analyze a curve, inspect G_c, list strata, run the random harness.

Exit codes: 0 success, 1 a verification mismatch, 2 bad input.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from .classify import enumerate_strata, partition_count, verify_main
from .curve import curve_from_json, random_curve
from .drham import module_manifest
from .errors import Char2EOError
from .ff import FieldCtx
from .gc import format_generators, format_relations, gc_eo_closed, gc_relations, gc_summands

EXIT_OK, EXIT_MISMATCH, EXIT_INPUT = 0, 1, 2


@dataclass(frozen=True)
class Trial:
    index: int
    d_multiset: tuple[int, ...]
    n: int
    seed: int


def _min_degree(branches: int) -> int:
    return max(1, (branches - 1).bit_length())


def plan_trials(count: int, seed: int, gmax: int = 12, nmax: int = 8, dmax: int | None = None,
                cover_g: int = 6, fixed_d: tuple[int, ...] | None = None) -> list[Trial]:
    """Deterministic list of trials.

    Every stratum with g <= cover_g comes first (as far as count allows); the
    rest draw a genus and a stratum uniformly. With fixed_d every trial uses
    that multiset and only the coefficients, branch points and field change.
    """
    rng = random.Random(seed)

    def allowed(ds):
        return dmax is None or max(ds) <= dmax

    if fixed_d is not None:
        pool = [tuple(sorted(fixed_d, reverse=True))] * count
    else:
        pool = [s.d_multiset for g in range(1, cover_g + 1)
                for s in enumerate_strata(g, with_eo=False) if allowed(s.d_multiset)][:count]
        by_g = {g: [s.d_multiset for s in enumerate_strata(g, with_eo=False) if allowed(s.d_multiset)]
                for g in range(1, gmax + 1)}
        by_g = {g: v for g, v in by_g.items() if v}
        if len(pool) < count and not by_g:
            raise ValueError("no stratum satisfies the given limits")
        while len(pool) < count:
            pool.append(rng.choice(by_g[rng.choice(sorted(by_g))]))
    trials = []
    for i, ds in enumerate(pool):
        lo = _min_degree(len(ds))
        if lo > nmax:
            raise ValueError(f"{len(ds)} branch points need GF(2^{lo}) but the field degree is capped at {nmax}")
        trials.append(Trial(i, ds, rng.randint(lo, nmax), rng.randrange(2 ** 32)))
    return trials


def run_trial(t: Trial) -> dict:
    cd = random_curve(FieldCtx(t.n), t.d_multiset, t.seed)
    out = verify_main(cd).to_dict()
    out.update(trial=t.index, n=t.n, seed=t.seed)
    return out


def _print_json(obj) -> None:
    print(json.dumps(obj, ensure_ascii=False, indent=2))


def _load_curve(args) -> object:
    if (args.path is None) == (args.inline is None):
        raise argparse.ArgumentTypeError("give exactly one of a curve file or --inline")
    if args.inline is not None:
        data = json.loads(args.inline)
    else:
        with open(args.path, encoding="utf-8") as fh:
            data = json.load(fh)
    if isinstance(data, dict) and "field" not in data:
        data = dict(data, field={"n": args.field_deg or 1, "modulus": args.modulus})
    return curve_from_json(data, moebius=not args.no_moebius)


def cmd_analyze(args) -> int:
    try:
        cd = _load_curve(args)
    except (OSError, json.JSONDecodeError, Char2EOError, ValueError, argparse.ArgumentTypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    rep = verify_main(cd)
    if args.dump_module:
        text = json.dumps(module_manifest(cd), indent=1)
        if args.dump_module == "-":
            print(text)
        else:
            with open(args.dump_module, "w", encoding="utf-8") as fh:
                fh.write(text + "\n")
    if args.json:
        _print_json(rep.to_dict())
    else:
        print(rep.line())
        print(f"d={list(rep.stratum)} EO(closed form)={rep.eo_closed} "
              + " ".join(f"{k}={'ok' if v else 'FAIL'}" for k, v in rep.checks.items()))
    return EXIT_OK if rep.verified else EXIT_MISMATCH


def cmd_gc_info(args) -> int:
    c = args.c
    if c < 1:
        print("error: c must be at least 1", file=sys.stderr)
        return EXIT_INPUT
    rels = gc_relations(c)
    info = {"c": c, "generators": format_generators(c), "relations": format_relations(rels),
            "summands": gc_summands(c), "eo_type": list(gc_eo_closed(c).nu)}
    if args.json:
        _print_json(info)
    else:
        print(f"generators: {info['generators']}")
        print(f"relations: {info['relations']}")
        print(f"summands: {info['summands']}")
        print(f"EO: {gc_eo_closed(c)}")
    return EXIT_OK


def cmd_enumerate(args) -> int:
    if args.g < 1:
        print("error: g must be at least 1", file=sys.stderr)
        return EXIT_INPUT
    strata = enumerate_strata(args.g)
    p = partition_count(args.g + 1)
    agree = len(strata) == p
    if args.json:
        _print_json({"g": args.g, "strata": [
            {"stratum": list(s.d_multiset), "decomposition": str(s.decomposition),
             "eo_type": list(s.eo.nu), "a": s.a} for s in strata],
            "count": len(strata), "partition_count": p, "agree": agree})
    else:
        width = max(len(str(list(s.d_multiset))) for s in strata)
        dwidth = max(len(str(s.decomposition)) for s in strata)
        for s in strata:
            print(f"{str(list(s.d_multiset)):<{width}}  {str(s.decomposition):<{dwidth}}  EO={s.eo}  a={s.a}")
        print(f"strata={len(strata)} p({args.g + 1})={p} {'agree' if agree else 'DISAGREE'}")
    return EXIT_OK if agree else EXIT_MISMATCH


def _parse_d(text: str) -> tuple[int, ...]:
    try:
        ds = tuple(int(x) for x in text.split(","))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad d-multiset {text!r}") from exc
    if not ds or any(d < 1 or d % 2 == 0 for d in ds):
        raise argparse.ArgumentTypeError("d values must be odd and positive")
    return ds


def cmd_verify(args) -> int:
    if args.random < 1 or args.gmax < 1 or (args.dmax is not None and args.dmax < 1):
        print("error: counts and limits must be positive", file=sys.stderr)
        return EXIT_INPUT
    try:
        trials = plan_trials(args.random, args.seed, gmax=args.gmax, nmax=args.field_deg or 8,
                             dmax=args.dmax, cover_g=args.cover_strata, fixed_d=args.fixed_d)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    if args.jobs > 1:
        with ProcessPoolExecutor(args.jobs) as pool:
            results = list(pool.map(run_trial, trials))
    else:
        results = [run_trial(t) for t in trials]
    passed = sum(r["verified"] for r in results)
    eo_types = sorted({tuple(r["eo_type"]) for r in results})
    ok = passed == len(results) and (args.fixed_d is None or len(eo_types) == 1)
    if args.json:
        summary = {"trials": len(results), "passed": passed, "seed": args.seed}
        if args.fixed_d is not None:
            summary["distinct_eo_types"] = [list(e) for e in eo_types]
        _print_json({"summary": summary, "results": results})
    else:
        for r in results:
            mark = "pass" if r["verified"] else "FAIL"
            print(f"{r['trial']:4d} {mark} n={r['n']} d={r['stratum']} g={r['g']} r={r['r']} "
                  f"a={r['a']} EO={','.join(map(str, r['eo_type']))}")
        print(f"{passed}/{len(results)} passed")
        if args.fixed_d is not None:
            print(f"distinct EO types: {len(eo_types)}")
    return EXIT_OK if ok else EXIT_MISMATCH


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field-deg", type=int, default=None,
                        help="extension degree n of GF(2^n); for verify, the largest n drawn")
    common.add_argument("--modulus", type=int, default=0, help="irreducible modulus bitmask (0: default)")
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--no-moebius", action="store_true",
                        help="reject a pole at infinity instead of moving it")

    p = argparse.ArgumentParser(prog="char2eo", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", parents=[common], help="invariants and J[2] of one curve")
    a.add_argument("path", nargs="?", help="curve file (JSON)")
    a.add_argument("--inline", help="curve description as a JSON string")
    a.add_argument("--dump-module", metavar="OUT", help="write the de Rham module and labels ('-' for stdout)")
    a.set_defaults(func=cmd_analyze)

    g = sub.add_parser("gc-info", parents=[common], help="generators, relations and EO type of G_c")
    g.add_argument("c", type=int)
    g.set_defaults(func=cmd_gc_info)

    e = sub.add_parser("enumerate", parents=[common], help="all strata of genus g")
    e.add_argument("g", type=int)
    e.set_defaults(func=cmd_enumerate)

    v = sub.add_parser("verify", parents=[common], help="random curves checked both ways")
    v.add_argument("--random", type=int, default=200, metavar="N", help="number of trials")
    v.add_argument("--gmax", type=int, default=12)
    v.add_argument("--dmax", type=int, default=None, help="largest ramification invariant d")
    v.add_argument("--fixed-d", type=_parse_d, default=None, metavar="D,D,...",
                   help="keep the d-multiset fixed and vary everything else")
    v.add_argument("--cover-strata", type=int, default=6, metavar="G",
                   help="run every stratum of genus <= G first")
    v.add_argument("--jobs", type=int, default=1)
    v.set_defaults(func=cmd_verify)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
