"""Command-line front end.

    negdep build <spec.json> -o <dist.json>
    negdep check <dist.json> --props na,nrtd [--max-j K] [--variant weak|strict]
                 [--caps upper_sets=N,lp_vars=M] [--jobs N] [--st-mode fast|verify]
                 [-o report.json] [--timing]
    negdep reproduce <fixture|all> [...]
    negdep conjecture [--values 1,2,3 | -n N] [...]

Exit codes: 0 = everything holds / matches, 1 = a property fails or a
fixture mismatches (witness in the report), 2 = usage error, bad input, or
an enumeration cap was exceeded. The NEGDEP_CAPS environment variable
("upper_sets=N,lp_vars=M") adjusts default caps; --caps overrides on top.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time

from .checks import (
    check_conjecture,
    check_na,
    check_nlod,
    check_nltd,
    check_nltd1,
    check_nod,
    check_nrd,
    check_nrd1,
    check_nrtd,
    check_nrtd1,
    check_nsmd,
    check_nuod,
)
from .distributions import from_json_dict, to_json_dict
from .errors import EnumerationCapExceeded, GridTooLarge, NegdepError, default_caps
from .fixtures import FIXTURE_IDS, run_fixture
from .rationals import format_rational
from .report import (
    Report,
    build_check_report,
    build_conjecture_report,
    build_fixture_report,
    canonical_json,
)
from .tournaments import model_spec_from_json, round_robin_distribution, RoundRobinSpec
from .tournaments import knockout_distribution

DEFAULT_PROPS = "na,nod,nsmd,nrd,nltd,nrtd"


def _add_common_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--caps", help="cap overrides, e.g. upper_sets=100000,lp_vars=20000")
    p.add_argument("--jobs", type=int, default=os.cpu_count() or 1,
                   help="parallel worker processes (default: available cores)")
    p.add_argument("--st-mode", choices=("fast", "verify"), default="fast",
                   help="stochastic-order decision: coupling only, or both oracles")
    p.add_argument("-o", "--output", help="write the JSON report here")
    p.add_argument("--timing", action="store_true",
                   help="embed wall-clock timings in the report (breaks byte-for-byte "
                        "reproducibility)")


def _caps_from(args) -> "Caps":
    caps = default_caps()
    if args.caps:
        caps = caps.with_overrides(args.caps)
    return caps


def _write_report(report: Report, args) -> None:
    text = report.to_json(include_timing=getattr(args, "timing", False))
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)


def _runner_for(name: str):
    return {
        "na": lambda d, kw: check_na(d, max_block=kw["max_j"], caps=kw["caps"],
                                     jobs=kw["jobs"]),
        "nod": lambda d, kw: check_nod(d),
        "nlod": lambda d, kw: check_nlod(d),
        "nuod": lambda d, kw: check_nuod(d),
        "nsmd": lambda d, kw: check_nsmd(d, caps=kw["caps"]),
        "nrd": lambda d, kw: check_nrd(d, max_j=kw["max_j"], caps=kw["caps"],
                                       st_mode=kw["st_mode"], jobs=kw["jobs"]),
        "nltd": lambda d, kw: check_nltd(d, max_j=kw["max_j"], variant=kw["variant"],
                                         caps=kw["caps"], st_mode=kw["st_mode"],
                                         jobs=kw["jobs"]),
        "nrtd": lambda d, kw: check_nrtd(d, max_j=kw["max_j"], variant=kw["variant"],
                                         caps=kw["caps"], st_mode=kw["st_mode"],
                                         jobs=kw["jobs"]),
        "nrd1": lambda d, kw: check_nrd1(d, caps=kw["caps"], st_mode=kw["st_mode"],
                                         jobs=kw["jobs"]),
        "nltd1": lambda d, kw: check_nltd1(d, variant=kw["variant"], caps=kw["caps"],
                                           st_mode=kw["st_mode"], jobs=kw["jobs"]),
        "nrtd1": lambda d, kw: check_nrtd1(d, variant=kw["variant"], caps=kw["caps"],
                                           st_mode=kw["st_mode"], jobs=kw["jobs"]),
    }[name]


def _cmd_build(args) -> int:
    try:
        with open(args.spec) as fh:
            obj = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        print(f"error: cannot read model spec: {exc}", file=sys.stderr)
        return 2
    try:
        spec = model_spec_from_json(obj)
        if isinstance(spec, RoundRobinSpec):
            d = round_robin_distribution(spec)
        else:
            d = knockout_distribution(spec)
    except (ValueError, NegdepError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    text = canonical_json(to_json_dict(d))
    with open(args.output, "w") as fh:
        fh.write(text)
    mass = sum(p for _, p in d.atoms)
    print(f"wrote {args.output}: dim {d.dim}, {len(d)} atoms, "
          f"total mass {format_rational(mass)}")
    return 0


def _load_distribution(path: str):
    with open(path) as fh:
        return from_json_dict(json.load(fh))


def _cmd_check(args) -> int:
    try:
        d = _load_distribution(args.distribution)
    except (OSError, json.JSONDecodeError, ValueError, NegdepError) as exc:
        print(f"error: cannot load distribution: {exc}", file=sys.stderr)
        return 2
    props = [p.strip().lower() for p in args.props.split(",") if p.strip()]
    caps = _caps_from(args)
    kw = {"max_j": args.max_j, "variant": args.variant, "caps": caps,
          "st_mode": args.st_mode, "jobs": args.jobs}
    verdicts = []
    timings = {}
    exit_code = 0
    try:
        for prop in props:
            try:
                runner = _runner_for(prop)
            except KeyError:
                print(f"error: unknown property {prop!r}", file=sys.stderr)
                return 2
            t0 = time.monotonic()
            verdict = runner(d, kw)
            timings[prop] = (time.monotonic() - t0) * 1000.0
            verdicts.append(verdict)
            mark = "holds" if verdict.holds else "FAILS"
            print(f"{prop}: {mark}  [{timings[prop]:.1f} ms]")
            if not verdict.holds:
                exit_code = 1
    except (EnumerationCapExceeded, GridTooLarge) as exc:
        print(f"cap exceeded: {exc}", file=sys.stderr)
        report = build_check_report(
            d, verdicts, caps,
            settings=_settings(args), timings_ms=timings,
        )
        _write_report(report, args)
        return 2
    report = build_check_report(d, verdicts, caps, settings=_settings(args),
                                timings_ms=timings)
    _write_report(report, args)
    return exit_code


def _settings(args) -> dict:
    # jobs is deliberately absent: worker count never affects results, so
    # reports stay byte-identical across it
    return {
        "props": getattr(args, "props", None),
        "max_j": getattr(args, "max_j", None),
        "variant": getattr(args, "variant", None),
        "st_mode": args.st_mode,
    }


def _cmd_reproduce(args) -> int:
    caps = _caps_from(args)
    fixtures = FIXTURE_IDS if args.fixture == "all" else (args.fixture,)
    exit_code = 0
    for fid in fixtures:
        try:
            result = run_fixture(fid, caps=caps, jobs=args.jobs, st_mode=args.st_mode)
        except ValueError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 2
        except (EnumerationCapExceeded, GridTooLarge) as exc:
            print(f"cap exceeded in {fid}: {exc}", file=sys.stderr)
            return 2
        status = "pass" if result.passed else "FAIL"
        print(f"{fid}: {status}  [{result.timings_ms['total']:.1f} ms]")
        for comp in result.comparisons:
            if not comp["ok"]:
                print(f"  MISMATCH {comp['name']}: expected {comp['expected']}, "
                      f"got {comp['actual']}")
                exit_code = max(exit_code, 1)
        report = build_fixture_report(fid, result.passed, result.comparisons,
                                      result.verdicts, caps, result.timings_ms)
        if args.output:
            path = args.output if len(fixtures) == 1 else f"{args.output}.{fid}.json"
            with open(path, "w") as fh:
                fh.write(report.to_json(include_timing=args.timing))
    return exit_code


def _cmd_conjecture(args) -> int:
    caps = _caps_from(args)
    if args.values:
        values = [v.strip() for v in args.values.split(",") if v.strip()]
    else:
        values = [str(k) for k in range(1, args.n + 1)]
    t0 = time.monotonic()
    try:
        result = check_conjecture(values, max_n=args.max_n, caps=caps,
                                  st_mode=args.st_mode, jobs=args.jobs)
    except (EnumerationCapExceeded, GridTooLarge) as exc:
        print(f"cap exceeded: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    elapsed = (time.monotonic() - t0) * 1000.0
    report = build_conjecture_report(result, caps, settings=_settings(args),
                                     timings_ms={"total": elapsed})
    _write_report(report, args)
    if result.holds_on_instance:
        print(f"HOLDS-ON-INSTANCE for values ({', '.join(values)})  [{elapsed:.1f} ms]")
        return 0
    print("counterexample found (re-verified); see report for the full witness")
    return 1


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="negdep",
        description="Exact negative-dependence verification for finite joint laws",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_build = sub.add_parser("build", help="build a score distribution from a model spec")
    p_build.add_argument("spec", help="model-spec JSON file")
    p_build.add_argument("-o", "--output", required=True, help="distribution JSON to write")

    p_check = sub.add_parser("check", help="run property checkers on a distribution")
    p_check.add_argument("distribution", help="distribution JSON file")
    p_check.add_argument("--props", default=DEFAULT_PROPS,
                         help=f"comma-separated properties (default {DEFAULT_PROPS}; "
                              "also nrd1,nltd1,nrtd1,nlod,nuod)")
    p_check.add_argument("--max-j", type=int, default=None,
                         help="cap the conditioning-block size")
    p_check.add_argument("--variant", choices=("weak", "strict"), default="weak",
                         help="tail-event strictness variant")
    _add_common_flags(p_check)

    p_rep = sub.add_parser("reproduce", help="rebuild a built-in scenario and compare "
                                             "every exact value")
    p_rep.add_argument("fixture", help=f"one of {', '.join(FIXTURE_IDS)} or 'all'")
    _add_common_flags(p_rep)

    p_conj = sub.add_parser("conjecture", help="exhaustive mixed-conditioning "
                                               "monotonicity check on a permutation law")
    group = p_conj.add_mutually_exclusive_group()
    group.add_argument("--values", help="comma-separated rational values")
    group.add_argument("-n", type=int, default=3, help="use values 1..n")
    p_conj.add_argument("--max-n", type=int, default=5, help="guard on the length")
    _add_common_flags(p_conj)

    args = parser.parse_args(argv)
    try:
        if args.command == "build":
            return _cmd_build(args)
        if args.command == "check":
            return _cmd_check(args)
        if args.command == "reproduce":
            return _cmd_reproduce(args)
        return _cmd_conjecture(args)
    except NegdepError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
