"""Command-line front end: classification, region scans, lifting, witnessing.

Exit codes: 0 success, 1 malformed input, 2 domain error, 3 numeric error.
Output is deterministic for a fixed (command line, seed); the environment
variable ``TSP_SEED`` overrides ``--seed``.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from .criteria import (
    is_2tsp,
    is_3tsp,
    lift_ntsp,
    lift_x_max,
    ntsp_necessary,
    ntsp_sufficient_ball,
)
from .linalg import ConvergenceError
from .maps import GeneralQubitMap, PauliMap, classify, map_from_json
from .nonunital import (
    NonUnitalFamilyMap,
    classify_nonunital_positive,
    ghz_output_conditions,
    is_2tsp_nonunital,
    reduce_to_unital,
)
from .oracles import OracleConfig, region_criteria, region_scan
from .witness import WitnessScanConfig, threshold_search

__all__ = ["main"]


class _UsageError(Exception):
    """Malformed command-line input (exit code 1)."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # malformed input -> usage + exit 1
        self.print_usage(sys.stderr)
        sys.stderr.write(f"error: {message}\n")
        raise SystemExit(1)


def _jsonable(obj):
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [_jsonable(v) for v in obj.tolist()]
    if isinstance(obj, (np.bool_, bool)):
        return bool(obj)
    if isinstance(obj, (np.integer, int)):
        return int(obj)
    if isinstance(obj, (np.floating, float)):
        return float(obj)
    return obj


def _emit(payload, args) -> None:
    text = json.dumps(_jsonable(payload), sort_keys=True, indent=2) + "\n"
    if getattr(args, "out", None):
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _parse_lambda(text: str) -> tuple[float, ...]:
    try:
        vals = tuple(float(v) for v in text.split(","))
    except ValueError:
        raise _UsageError(f"bad --lambda value {text!r}") from None
    if len(vals) == 3:
        vals = (1.0, *vals)
    if len(vals) != 4:
        raise _UsageError("--lambda takes 3 or 4 comma-separated values")
    return vals


def _verdict_dict(v) -> dict:
    return {
        "satisfied": bool(v.satisfied),
        "worst_slack": float(v.worst_slack),
        "binding_constraint": v.binding_constraint,
    }


def _cmd_classify(args) -> dict:
    if args.map:
        with open(args.map) as fh:
            m = map_from_json(fh.read())
    elif args.lam is not None:
        lam = _parse_lambda(args.lam)
        if args.t is not None:
            if lam[0] != 1.0:
                raise ValueError("translated maps require l0 = 1")
            m = NonUnitalFamilyMap(t=args.t, lam3=lam[1:]).to_general()
        else:
            m = PauliMap(lam)
    else:
        raise ValueError("classify needs --lambda or --map")

    rep = classify(m)
    payload = {
        "map": {"lambda": list(np.diag(np.asarray(m.matrix)))},
        "report": {
            "unital": rep.unital,
            "trace_preserving": rep.trace_preserving,
            "positive": rep.positive,
            "cp": rep.cp,
            "ccp": rep.ccp,
            "eb": rep.eb,
            "margins": rep.margins,
            "positivity_method": rep.positivity_method,
        },
        "criteria": {},
    }
    e = np.asarray(m.matrix)
    translation = np.array([e[1, 0], e[2, 0], e[3, 0]])
    if np.any(translation != 0.0) or (isinstance(m, GeneralQubitMap) and not m.is_diagonal()):
        payload["map"]["t"] = [float(v) for v in translation]
        # closed forms exist for a translation along the third axis only
        if translation[0] == translation[1] == 0.0 and np.count_nonzero(e - np.diag(np.diag(e))) <= 1:
            fam = NonUnitalFamilyMap(t=float(translation[2]), lam3=tuple(np.diag(e)[1:]))
            payload["criteria"]["positive_family"] = _verdict_dict(classify_nonunital_positive(fam))
            payload["criteria"]["ghz_output"] = _verdict_dict(ghz_output_conditions(fam))
            if fam.interior_gap() > 1e-12:
                payload["criteria"]["2tsp"] = _verdict_dict(is_2tsp_nonunital(fam))
    else:
        lam3 = np.diag(e)[1:] / e[0, 0] if e[0, 0] != 0 else np.diag(e)[1:]
        payload["criteria"]["2tsp"] = _verdict_dict(is_2tsp(lam3))
        payload["criteria"]["3tsp"] = _verdict_dict(is_3tsp(lam3))
        payload["criteria"]["necessary"] = {
            str(n): _verdict_dict(ntsp_necessary(lam3, n)) for n in (4, 5)
        }
        payload["criteria"]["ball"] = {
            str(n): bool(ntsp_sufficient_ball(lam3, n)) for n in (2, 3, 4)
        }
    return payload


def _cmd_region(args, summary_only: bool = False):
    cfg = OracleConfig(restarts=8, sample_count=256, seed=args.seed)
    params = {"t": args.t} if args.t is not None else None
    rep = region_scan(
        args.criterion, steps=args.grid, params=params, cfg=cfg, threads=args.threads
    )
    if summary_only:
        return {"criterion": rep.criterion, "params": rep.params, "summary": rep.summary}
    text = rep.to_csv() if args.format == "csv" else rep.to_json() + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return None


def _cmd_lift(args) -> dict:
    lam = _parse_lambda(args.lam)[1:]
    xm = lift_x_max(lam, args.n)
    lifted = lift_ntsp(lam, args.n, x=args.x)
    return {"lambda": list(lam), "n": args.n, "x_max": xm, "lambda_tilde": list(lifted)}


def _cmd_reduce(args) -> dict:
    lam = _parse_lambda(args.lam)[1:]
    rr = reduce_to_unital(NonUnitalFamilyMap(t=args.t, lam3=lam))
    return {
        "t": args.t,
        "lambda": list(lam),
        "tilde_lambda": list(rr.tilde_lam),
        "tilde_ratio": list(rr.tilde_ratio),
        "a_inv": rr.a_inv.tolist(),
        "b_inv": rr.b_inv.tolist(),
    }


def _cmd_witness(args) -> dict:
    res = threshold_search(args.family, args.n, WitnessScanConfig(steps=args.steps))
    return {
        "family": args.family,
        "n": args.n,
        "q_star": res.q_star,
        "witness": None if res.witness is None else list(res.witness),
        "neg_eig": res.neg_eig,
    }


def _build_parser() -> _Parser:
    parser = _Parser(prog="tensorstable", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--seed", type=int, default=0, help="oracle seed (TSP_SEED overrides)")
        p.add_argument("--out", help="write the result to this path instead of stdout")
        p.add_argument("--format", choices=("json", "csv"), default="json")

    p = sub.add_parser("classify", help="classify a qubit map and run all criteria")
    p.add_argument("--lambda", dest="lam", help="l0,l1,l2,l3 or l1,l2,l3 (l0=1 assumed)")
    p.add_argument("--t", type=float, help="translation along the third axis")
    p.add_argument("--map", help="path to a map JSON file")
    common(p)

    p = sub.add_parser("region", help="grid scan of a criterion against its oracle")
    p.add_argument("--criterion", required=True, choices=region_criteria())
    p.add_argument("--grid", type=int, default=None, help="steps per axis")
    p.add_argument("--t", type=float, default=None, help="family translation parameter")
    p.add_argument("--threads", type=int, default=os.cpu_count() or 1)
    common(p)

    p = sub.add_parser("verify", help="like region, but print the agreement summary only")
    p.add_argument("--criterion", required=True, choices=region_criteria())
    p.add_argument("--grid", type=int, default=None)
    p.add_argument("--t", type=float, default=None)
    p.add_argument("--threads", type=int, default=os.cpu_count() or 1)
    common(p)

    p = sub.add_parser("lift", help="shrink an n-stable map into an (n+1)-stable one")
    p.add_argument("--lambda", dest="lam", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--x", type=float, default=None, help="mixing parameter (default x_max)")
    common(p)

    p = sub.add_parser("reduce", help="reduce a translated family map to unital form")
    p.add_argument("--lambda", dest="lam", required=True)
    p.add_argument("--t", type=float, required=True)
    common(p)

    p = sub.add_parser("witness", help="entanglement-depth detection threshold search")
    p.add_argument("--family", required=True, choices=("ghz", "w"))
    p.add_argument("--n", type=int, required=True, choices=(1, 2))
    p.add_argument("--steps", type=int, default=21, help="witness-map grid resolution")
    common(p)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if "TSP_SEED" in os.environ and hasattr(args, "seed"):
        args.seed = int(os.environ["TSP_SEED"])
    try:
        if args.command == "classify":
            _emit(_cmd_classify(args), args)
        elif args.command == "region":
            _cmd_region(args)
        elif args.command == "verify":
            _emit(_cmd_region(args, summary_only=True), args)
        elif args.command == "lift":
            _emit(_cmd_lift(args), args)
        elif args.command == "reduce":
            _emit(_cmd_reduce(args), args)
        elif args.command == "witness":
            _emit(_cmd_witness(args), args)
    except _UsageError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1
    except ConvergenceError as exc:
        sys.stderr.write(f"numeric error: {exc}\n")
        return 3
    except ValueError as exc:
        sys.stderr.write(f"domain error: {exc}\n")
        return 2
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
