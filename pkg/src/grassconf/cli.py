"""Command-line surface: strata queries, homotopy groups with traces,
sampling, classification, and verification suites.

Exit codes: 0 success, 1 verification failures, 2 usage or data errors,
3 answer outside the computed coverage (rendered as Unknown).
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Optional, Sequence

from . import grassmann, homotopy, verify
from .errors import GrassconfError
from .grassmann import StratumId

EXIT_OK = 0
EXIT_FAILURES = 1
EXIT_USAGE = 2
EXIT_UNCOVERED = 3


def _dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n"


def _emit(text: str, out) -> None:
    out.write(text)
    if not text.endswith("\n"):
        out.write("\n")


def _check_seed(seed: int) -> int:
    if not 0 <= seed < 2 ** 64:
        raise ValueError("seed must be a 64-bit unsigned integer")
    return seed


def cmd_strata(args, out) -> int:
    rows = []
    if args.h == 1:
        ids = [StratumId(1, args.k, args.k, args.n)]
    else:
        ids = grassmann.strata_list(args.h, args.k, args.n)
    open_i = args.k if args.h == 1 else min(args.h * args.k, args.n)
    for s in ids:
        closure = [s.i] if args.h == 1 else [t.i for t in grassmann.stratum_closure(s)]
        rows.append({
            "i": s.i,
            "dimension": grassmann.stratum_dimension(s),
            "nonempty": grassmann.is_stratum_nonempty(s),
            "open": s.i == open_i,
            "closure": closure,
        })
    if args.json:
        _emit(_dumps({"h": args.h, "k": args.k, "n": args.n, "strata": rows}), out)
    else:
        for row in rows:
            tag = "  open" if row["open"] else ""
            closure = ",".join(str(x) for x in row["closure"])
            _emit(
                f"F_{args.h}^{row['i']}({args.k},{args.n})  dim={row['dimension']}"
                f"  nonempty={'yes' if row['nonempty'] else 'no'}{tag}  closure=[{closure}]",
                out,
            )
    return EXIT_OK


def cmd_pi(args, out) -> int:
    s = StratumId(args.h, args.i, args.k, args.n)
    value, trace = homotopy.derive(s, args.order)
    if args.json:
        payload = {
            "query": {"order": args.order, "h": args.h, "i": args.i, "k": args.k, "n": args.n},
            "group": value.to_json(),
            "render": value.render(),
        }
        if args.trace:
            payload["trace"] = trace.to_json()
        _emit(_dumps(payload), out)
    else:
        if args.trace:
            for line in trace.render_lines():
                _emit(line, out)
        else:
            _emit(value.render(), out)
    return EXIT_UNCOVERED if isinstance(value, homotopy.Unknown) else EXIT_OK


def cmd_sample(args, out) -> int:
    _check_seed(args.seed)
    s = StratumId(args.h, args.i, args.k, args.n)
    cfg = grassmann.sample_configuration(s, args.seed)
    text = _dumps(grassmann.configuration_to_json(cfg))
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        _emit(text, out)
    return EXIT_OK


def cmd_classify(args, out) -> int:
    with open(args.file, "r", encoding="utf-8") as fh:
        data = json.load(fh)
    cfg = grassmann.configuration_from_json(data)
    i = grassmann.stratum_of(cfg)
    if args.json:
        _emit(_dumps({"h": cfg.h, "i": i, "k": cfg.k, "n": cfg.n}), out)
    else:
        _emit(f"i = {i}", out)
    return EXIT_OK


def _build_grid(args, suite: str) -> dict:
    grid = dict(verify.DEFAULT_GRIDS[suite])
    for key in grid:
        if getattr(args, key) is not None:
            grid[key] = getattr(args, key)
    return grid


def _stratum_flags(args) -> StratumId:
    if None in (args.h, args.i, args.k, args.n):
        raise ValueError(f"suite {args.suite} needs --h, --i, --k, and --n")
    return StratumId(args.h, args.i, args.k, args.n)


def cmd_verify(args, out) -> int:
    _check_seed(args.seed)
    if args.suite in ("gamma", "pr", "eta"):
        report = verify.run_roundtrip_suite(
            args.suite, grid=_build_grid(args, args.suite), cases=args.cases, seed=args.seed
        )
    elif args.suite == "dimension":
        s = _stratum_flags(args)
        report = verify.check_dimension(s, samples=args.samples, tol=args.tol, seed=args.seed)
    elif args.suite == "adjacency":
        s = _stratum_flags(args)
        cfg = grassmann.sample_configuration(s, args.seed)
        target = args.target if args.target is not None else min(args.h * args.k, args.n)
        report = verify.check_adjacency(
            cfg, target, Fraction(args.eps), trials=args.trials, seed=args.seed
        )
    else:
        raise ValueError(f"unknown suite {args.suite!r}")
    payload = _dumps(report.to_json())
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(payload)
    if args.json:
        _emit(payload, out)
    else:
        _emit(f"suite {report.suite}: {report.passed}/{report.cases} passed", out)
        for seed, desc in report.failures:
            _emit(f"  FAIL [{seed}] {desc}", out)
    return EXIT_OK if report.ok else EXIT_FAILURES


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="grassconf",
        description="Configuration spaces of subspaces in complex Grassmannians",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_strata = sub.add_parser("strata", help="list the sum-dimension strata")
    p_strata.add_argument("--h", type=int, required=True)
    p_strata.add_argument("--k", type=int, required=True)
    p_strata.add_argument("--n", type=int, required=True)
    p_strata.add_argument("--json", action="store_true")
    p_strata.set_defaults(handler=cmd_strata)

    p_pi = sub.add_parser("pi", help="homotopy group of a stratum")
    p_pi.add_argument("--order", type=int, choices=(1, 2), required=True)
    p_pi.add_argument("--h", type=int, required=True)
    p_pi.add_argument("--i", type=int, required=True)
    p_pi.add_argument("--k", type=int, required=True)
    p_pi.add_argument("--n", type=int, required=True)
    p_pi.add_argument("--trace", action="store_true")
    p_pi.add_argument("--json", action="store_true")
    p_pi.set_defaults(handler=cmd_pi)

    p_sample = sub.add_parser("sample", help="sample a configuration from a stratum")
    p_sample.add_argument("--h", type=int, required=True)
    p_sample.add_argument("--i", type=int, required=True)
    p_sample.add_argument("--k", type=int, required=True)
    p_sample.add_argument("--n", type=int, required=True)
    p_sample.add_argument("--seed", type=int, default=0)
    p_sample.add_argument("-o", "--output")
    p_sample.set_defaults(handler=cmd_sample)

    p_classify = sub.add_parser("classify", help="stratum index of a stored configuration")
    p_classify.add_argument("file")
    p_classify.add_argument("--json", action="store_true")
    p_classify.set_defaults(handler=cmd_classify)

    p_verify = sub.add_parser("verify", help="run a verification suite")
    p_verify.add_argument(
        "--suite", required=True,
        choices=("gamma", "pr", "eta", "dimension", "adjacency"),
    )
    p_verify.add_argument("--cases", type=int, default=100)
    p_verify.add_argument("--seed", type=int, default=0)
    p_verify.add_argument("--h", type=int)
    p_verify.add_argument("--i", type=int)
    p_verify.add_argument("--k", type=int)
    p_verify.add_argument("--n", type=int)
    p_verify.add_argument("--samples", type=int, default=3)
    p_verify.add_argument("--tol", type=float, default=1e-6)
    p_verify.add_argument("--target", type=int)
    p_verify.add_argument("--eps", default="1/1000")
    p_verify.add_argument("--trials", type=int, default=100)
    p_verify.add_argument("--json", action="store_true")
    p_verify.add_argument("-o", "--output")
    p_verify.set_defaults(handler=cmd_verify)

    return parser


def main(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args, out)
    except (GrassconfError, ValueError, OSError, KeyError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
