"""Command-line interface.

Subcommands: simulate, enumerate, curve, plan, tail, analyze, serve.
Exit codes: 0 success, 1 usage error, 2 data error.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from .campaign import CampaignConfig, percentrank_fraction, run_campaign
from .entropy import DeficitScheme
from .errors import InfobellError
from .inference import HypothesisProbs, find_plan, plan_grid, tail_at_least
from .model import CaseKind, SelectionDomain
from .quantum import curve as quantum_curve
from .quantum import violation_fraction
from .session import AnalysisConfig, analyze_matrices, parse_session_csv
from .simulate import enumerate_exact
from ._kernels import backend_name

DEFICITS_CSV_HEADER = ("experiment_index,h_ab_hd,h_ab_prime,"
                       "h_bprime_aprime,h_aprime_b,deficit")


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def _case(value: str) -> CaseKind:
    if value in ("random", "stochastic"):
        return CaseKind.STOCHASTIC
    if value in ("anticorrelation", "anticorrelated", "anti"):
        return CaseKind.ANTICORRELATED
    raise _UsageError(f"unknown case {value!r}")


def _domain(value: str) -> SelectionDomain:
    return (SelectionDomain.THREE_ENTANGLED_PAIRS if value == "three"
            else SelectionDomain.FOUR_PAIRS)


def _scheme(value: str) -> DeficitScheme:
    return DeficitScheme(value)


def _build_parser() -> _Parser:
    p = _Parser(prog="infobell", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    sim = sub.add_parser("simulate", help="run a campaign; stats JSON to "
                         "stdout, per-experiment deficits CSV via --output")
    sim.add_argument("--case", default="random")
    sim.add_argument("--outcomes", type=int, required=True)
    sim.add_argument("--experiments", type=int, required=True)
    sim.add_argument("--seed", type=int, default=0)
    sim.add_argument("--selection", choices=("three", "four"), default="three")
    sim.add_argument("--delta", type=float, default=0.0)
    sim.add_argument("--scheme", choices=("cross-table", "full-matrix"),
                     default="cross-table")
    sim.add_argument("--workers", type=int, default=1)
    sim.add_argument("--output", help="write per-experiment deficits CSV here")

    enum = sub.add_parser("enumerate", help="exact oracle at small n")
    enum.add_argument("--case", default="random")
    enum.add_argument("--outcomes", type=int, required=True)
    enum.add_argument("--selection", choices=("three", "four"), default="three")
    enum.add_argument("--scheme", choices=("cross-table", "full-matrix"),
                      default="cross-table")

    cur = sub.add_parser("curve", help="quantum deficit curve CSV")
    cur.add_argument("--min", type=float, default=0.0)
    cur.add_argument("--max", type=float, default=100.0)
    cur.add_argument("--step", type=float, default=0.01)
    cur.add_argument("--output")

    plan = sub.add_parser("plan", help="minimal (N_req, k0) decision plan")
    plan.add_argument("--p0", type=float, required=True)
    plan.add_argument("--p1", type=float, required=True)
    plan.add_argument("--alpha", type=float, default=0.01)
    plan.add_argument("--gamma", type=float, default=0.80)
    plan.add_argument("--n-max", type=int, default=100_000)
    plan.add_argument("--table", action="store_true",
                      help="emit the published-grid CSV instead")
    plan.add_argument("--output")

    tail = sub.add_parser("tail", help="P(at least k_e positives)")
    tail.add_argument("--k", type=int, required=True)
    tail.add_argument("--n", type=int, required=True)
    tail.add_argument("--p0", type=float, required=True)

    ana = sub.add_parser("analyze", help="session CSV -> verdict JSON")
    ana.add_argument("--input", required=True)
    ana.add_argument("--p0", type=float, required=True)
    ana.add_argument("--p1", type=float, required=True)
    ana.add_argument("--alpha", type=float, default=0.001)
    ana.add_argument("--gamma", type=float, default=0.99)
    ana.add_argument("--delta", type=float, default=0.0)
    ana.add_argument("--selection", choices=("three", "four"), default="three")
    ana.add_argument("--scheme", choices=("cross-table", "full-matrix"),
                     default="cross-table")

    srv = sub.add_parser("serve", help="run the JSON service")
    srv.add_argument("--port", type=int,
                     default=int(os.environ.get("PORT", "8000")))
    srv.add_argument("--data-dir",
                     default=os.environ.get("DATA_DIR", "./infobell-data"))
    srv.add_argument("--host", default="127.0.0.1")
    return p


def _emit(text: str, path: str | None) -> None:
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _cmd_simulate(args) -> int:
    config = CampaignConfig(
        case=_case(args.case), n=args.outcomes, experiments=args.experiments,
        master_seed=args.seed, domain=_domain(args.selection),
        delta=args.delta, scheme=_scheme(args.scheme), workers=args.workers,
    )
    stats, results = run_campaign(config)
    payload = {
        "case": config.case.value,
        "outcomes": config.n,
        "experiments": config.experiments,
        "seed": config.master_seed,
        "estimator_variant": {
            "scheme": config.scheme.value,
            "selection_domain": config.domain.value,
            "eq2_denominator": "conditional",
            "delta": config.delta,
        },
        "kernel_backend": backend_name(),
        **stats.as_dict(),
        "p_rank_check": percentrank_fraction(results),
    }
    print(json.dumps(payload, indent=2))
    if args.output:
        lines = [DEFICITS_CSV_HEADER]
        for i, r in enumerate(results):
            t = r.terms
            lines.append(f"{i},{t.h_ab_hd!r},{t.h_ab_prime!r},"
                         f"{t.h_bprime_aprime!r},{t.h_aprime_b!r},{r.deficit!r}")
        _emit("\n".join(lines) + "\n", args.output)
    return 0


def _fraction_fields(f: Fraction) -> dict:
    return {"fraction": f"{f.numerator}/{f.denominator}", "value": float(f)}


def _cmd_enumerate(args) -> int:
    stats = enumerate_exact(_case(args.case), args.outcomes,
                            _domain(args.selection), _scheme(args.scheme))
    payload = {
        "case": _case(args.case).value,
        "outcomes": args.outcomes,
        "scheme": args.scheme,
        "selection_domain": args.selection,
        "sample_space": stats.sample_space,
        "p_strict_positive": _fraction_fields(stats.p_strict_positive),
        "p_zero": _fraction_fields(stats.p_zero),
        "p_rank": _fraction_fields(stats.p_rank),
        "max_deficit": stats.max_deficit,
        "min_deficit": stats.min_deficit,
        "support_size": stats.support_size,
    }
    print(json.dumps(payload, indent=2))
    return 0


def _cmd_curve(args) -> int:
    pts = quantum_curve(args.min, args.max, args.step)
    lines = ["theta_degrees,deficit_bits"]
    lines += [f"{p.theta_degrees!r},{p.deficit_bits!r}" for p in pts]
    _emit("\n".join(lines) + "\n", args.output)
    if args.output:
        frac = violation_fraction(args.min, args.max, args.step)
        print(json.dumps({"points": len(pts), "violation_fraction": frac}))
    return 0


def _cmd_plan(args) -> int:
    probs = HypothesisProbs(args.p0, args.p1)
    if args.table:
        rows = plan_grid(probs, [0.05, 0.01, 0.005, 0.001],
                         [0.80, 0.90, 0.95, 0.99], args.n_max)
        lines = ["alpha_percent,gamma_percent,n_req,k0,matches_paper"]
        for r in rows:
            match = "" if r.matches_paper is None else str(r.matches_paper).lower()
            lines.append(f"{r.alpha_percent},{r.gamma_percent},{r.n_req},"
                         f"{r.k0},{match}")
        _emit("\n".join(lines) + "\n", args.output)
    else:
        plan = find_plan(probs, args.alpha, args.gamma, args.n_max)
        print(json.dumps({"n_req": plan.n_req, "k0": plan.k0}))
    return 0


def _cmd_tail(args) -> int:
    print(json.dumps({"p": tail_at_least(args.k, args.n, args.p0)}))
    return 0


def _cmd_analyze(args) -> int:
    with open(args.input, encoding="utf-8") as fh:
        matrices = parse_session_csv(fh)
    plan = find_plan(HypothesisProbs(args.p0, args.p1), args.alpha, args.gamma)
    config = AnalysisConfig(delta=args.delta,
                            selection_domain=_domain(args.selection),
                            scheme=_scheme(args.scheme))
    analysis = analyze_matrices(matrices, plan, config)
    payload = {
        "experiments": len(matrices),
        "n": matrices[0].n,
        "plan": {"n_req": plan.n_req, "k0": plan.k0},
        "estimator_variant": config.as_dict(),
        "deficits": [
            {"experiment": i + 1, "deficit_bits": r.deficit,
             "h_ab_hd": r.h_ab_hd}
            for i, r in enumerate(analysis.results)
        ],
        "k_e": analysis.k_e,
        "verdict": analysis.verdict.decision.value,
        "early": analysis.verdict.early,
    }
    print(json.dumps(payload, indent=2))
    return 0


def _cmd_serve(args) -> int:
    import uvicorn

    from .api import create_app

    app = create_app(args.data_dir)
    uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
    return 0


_COMMANDS = {
    "simulate": _cmd_simulate,
    "enumerate": _cmd_enumerate,
    "curve": _cmd_curve,
    "plan": _cmd_plan,
    "tail": _cmd_tail,
    "analyze": _cmd_analyze,
    "serve": _cmd_serve,
}


def cli_main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    except SystemExit as exc:  # argparse --help path
        return 0 if exc.code in (0, None) else 1
    try:
        return _COMMANDS[args.command](args)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    except FileNotFoundError as exc:
        print(f"data error: {exc}", file=sys.stderr)
        return 2
    except InfobellError as exc:
        print(f"data error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(cli_main())


if __name__ == "__main__":
    main()
