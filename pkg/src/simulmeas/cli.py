"""Command line: ``simulmeas {list,run,verify,optimize}``.

Exit codes: 0 success, 1 verification failure, 2 usage or input error.

Custom documents are JSON. An ensemble::

    {"name": "mine",
     "items": [{"prior": 0.5, "alice": [[1, 0], [0, 0]], "bob": [[1, 0], [0, 0]],
                "label": "00", "class": null}, ...]}

Amplitudes and matrix entries are ``[re, im]`` pairs. A strategy::

    {"scenario": "six",            # scenario id or an inline ensemble document
     "class": "simultaneous",      # or "oneway" / "entangled"
     "alice_povm": {"elements": [matrix, ...], "labels": [...]},
     "bob_povm": {...}}            # "bob_given": [povm, ...] for "oneway"

A matrix is a list of rows, each row a list of ``[re, im]`` pairs.
"""

import argparse
import json
import os
import sys

import numpy as np

from .ensembles import SCENARIOS, ProductEnsemble, load_ensemble
from .optimizer import Objective, OptimizerConfig, optimize, write_trace_csv
from .protocols import PARAMETRIC_IDS, PROTOCOL_IDS, build_named_protocol
from .strategies import (
    RESOURCE_CLASSES,
    StrategyError,
    joint_distribution,
    metrics_from_distribution,
    strategy_from_doc,
    write_distribution_csv,
)
from .verify import format_report, run_verification, write_report_csv


class UsageError(Exception):
    pass


def _fmt(x):
    return "-" if x is None else f"{x:.6f}"


def _metrics_lines(m):
    lines = [f"guess_probability        {_fmt(m.guess_probability)}"]
    if m.class_guess_probability is not None:
        lines.append(f"class_guess_probability  {_fmt(m.class_guess_probability)}")
    lines.append(f"mutual_information_bits  {_fmt(m.mutual_information_bits)}")
    return lines


def cmd_list(args, out):
    print("scenarios: " + ", ".join(SCENARIOS), file=out)
    print(f"{'protocol':<18}{'scenario':<13}{'class':<14}{'guess':>10}{'class':>10}{'info':>10}  note", file=out)
    for pid in PROTOCOL_IDS:
        p = build_named_protocol(pid)
        e = p.expected
        note = "info approx" if p.approximate else ""
        print(
            f"{pid:<18}{p.scenario.name:<13}{p.resource:<14}{_fmt(e.guess_probability):>10}"
            f"{_fmt(e.class_guess_probability):>10}{_fmt(e.mutual_information_bits):>10}  {note}".rstrip(),
            file=out,
        )
    for pid in PARAMETRIC_IDS:
        print(f"{pid:<18}{'two_product':<13}{'oneway':<14}{'helstrom':>10}{'-':>10}{'-':>10}  parametric", file=out)
    return 0


def _load_json(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path}: parse error at line {exc.lineno}: {exc.msg}") from None
    except OSError as exc:
        raise UsageError(f"{path}: {exc.strerror}") from None


def _scenario(ref, args):
    if isinstance(ref, dict):
        return ProductEnsemble.from_dict(ref)
    if ref == "two_product":
        return SCENARIOS[ref](args.theta1, args.theta2)
    if ref in SCENARIOS:
        return SCENARIOS[ref]()
    if isinstance(ref, str) and os.path.exists(ref):
        return load_ensemble(ref)
    raise UsageError(f"unknown scenario {ref!r}")


def cmd_run(args, out):
    target = args.target
    if target in PROTOCOL_IDS or target in PARAMETRIC_IDS:
        proto = build_named_protocol(target, args.theta1, args.theta2)
        ensemble, strategy = proto.scenario, proto.strategy
        print(f"protocol {proto.id} ({proto.resource}) on {ensemble.name}", file=out)
    elif target.endswith(".json") or os.path.exists(target):
        doc = _load_json(target)
        try:
            strategy = strategy_from_doc(doc)
        except (KeyError, TypeError, ValueError) as exc:
            raise UsageError(f"{target}: bad strategy document: {exc}") from None
        ref = args.ensemble or doc.get("scenario")
        if ref is None:
            raise UsageError("strategy file names no scenario; pass --ensemble")
        ensemble = _scenario(ref, args)
        print(f"custom {strategy.resource} strategy on {ensemble.name}", file=out)
    else:
        raise UsageError(f"unknown protocol {target!r}")
    d = joint_distribution(ensemble, strategy)
    for line in _metrics_lines(metrics_from_distribution(d)):
        print(line, file=out)
    if args.dist:
        write_distribution_csv(d, args.dist)
    return 0


def cmd_verify(args, out):
    report = run_verification(tol=args.tol, approx_tol=args.approx_tol)
    print(format_report(report), file=out)
    if args.csv:
        write_report_csv(report, args.csv)
    return 0 if report.overall else 1


def _povm_vectors(p):
    """Weighted eigenvectors sqrt(l) |u> of each element."""
    rows = []
    for label, e in zip(p.labels, p.elements):
        w, v = np.linalg.eigh(e)
        for lam, u in zip(w[::-1], v.T[::-1]):
            if lam < 1e-9:
                continue
            k = np.argmax(np.abs(u) > 1e-9)
            u = u * np.exp(-1j * np.angle(u[k]))
            amps = " ".join(f"{z.real:+.6f}{z.imag:+.6f}j" for z in np.sqrt(lam) * u)
            rows.append(f"  {label:>4}: {amps}")
    return rows


def cmd_optimize(args, out):
    ensemble = _scenario(args.ensemble or args.scenario, args)
    objective = Objective(args.objective)
    if objective is Objective.CLASS and ensemble.classes is None:
        raise UsageError(f"scenario {ensemble.name!r} has no classes for the class objective")
    try:
        config = OptimizerConfig(
            restarts=args.restarts,
            max_iterations=args.max_iterations,
            tolerance=args.tolerance,
            seed=args.seed,
            alice_outcomes=args.outcomes_a,
            bob_outcomes=args.outcomes_b,
            objective=objective,
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    res = optimize(ensemble, args.resource, config)
    print(f"scenario {ensemble.name}, class {args.resource}, objective {objective.value}", file=out)
    print(f"best objective           {res.objective_value:.6f}", file=out)
    for line in _metrics_lines(res.best_metrics):
        print(line, file=out)
    s = res.best_strategy
    print("alice POVM (sqrt(weight) * vector):", file=out)
    for line in _povm_vectors(s.alice):
        print(line, file=out)
    bobs = getattr(s, "bob_given", None)
    if bobs is None:
        print("bob POVM:", file=out)
        for line in _povm_vectors(s.bob):
            print(line, file=out)
    else:
        for i, q in enumerate(bobs):
            print(f"bob POVM given alice outcome {i}:", file=out)
            for line in _povm_vectors(q):
                print(line, file=out)
    if args.trace:
        write_trace_csv(res, args.trace)
    return 0


def build_parser():
    parser = argparse.ArgumentParser(prog="simulmeas", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("list", help="list scenarios and protocols")

    run = sub.add_parser("run", help="evaluate a protocol id or a strategy JSON file")
    run.add_argument("target")
    run.add_argument("--theta1", type=float, default=np.pi / 4)
    run.add_argument("--theta2", type=float, default=np.pi / 4)
    run.add_argument("--ensemble", help="scenario id or ensemble JSON file for a custom strategy")
    run.add_argument("--dist", help="write the joint distribution as CSV")

    ver = sub.add_parser("verify", help="check all protocols against closed forms")
    ver.add_argument("--tol", type=float, default=None, help="override closed-form tolerance")
    ver.add_argument("--approx-tol", type=float, default=None, help="override approximate-value tolerance")
    ver.add_argument("--csv")

    opt = sub.add_parser("optimize", help="random-restart pattern search")
    opt.add_argument("scenario", choices=sorted(SCENARIOS))
    opt.add_argument("--class", dest="resource", choices=RESOURCE_CLASSES, default="simultaneous")
    opt.add_argument("--objective", choices=[o.value for o in Objective], default="guess")
    opt.add_argument("--restarts", type=int, default=20)
    opt.add_argument("--seed", type=int, default=0)
    opt.add_argument("--outcomes-a", type=int, default=None)
    opt.add_argument("--outcomes-b", type=int, default=None)
    opt.add_argument("--max-iterations", type=int, default=2000)
    opt.add_argument("--tolerance", type=float, default=1e-10)
    opt.add_argument("--theta1", type=float, default=np.pi / 4)
    opt.add_argument("--theta2", type=float, default=np.pi / 4)
    opt.add_argument("--ensemble", help="ensemble JSON file (overrides scenario)")
    opt.add_argument("--trace", help="write per-restart trace as CSV")
    return parser


COMMANDS = {"list": cmd_list, "run": cmd_run, "verify": cmd_verify, "optimize": cmd_optimize}


def main(argv=None, out=None):
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code
    try:
        return COMMANDS[args.command](args, out)
    except (UsageError, StrategyError, KeyError, ValueError) as exc:
        msg = exc.args[0] if exc.args else str(exc)
        print(f"simulmeas: error: {msg}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
