"""Batch front end: ``clusternet --spec problem.json [--out report.json] [--trace trace.csv]``.

Problem file fields: ``task`` (synthesize | nullifiers | optimize-cluster |
mbqc | optimize-mbqc), ``graph`` ({"n", "edges"}), ``squeezing_db``,
``plan`` ("fourier" or an explicit plan object), ``theta``, ``optimizer``
and ``seed``.

Exit codes: 0 success, 2 unreadable or malformed input, 3 invalid problem.
"""

from __future__ import annotations

import argparse
import json
import secrets
import sys
from dataclasses import dataclass

import numpy as np

from . import mbqc, network, noise
from .errors import ClusterNetError
from .graph import AdjacencyGraph
from .graph import from_dict as graph_from_dict
from .linalg import n_angles, unitarity_residual
from .optimize import OptimizerConfig, multistart

TASKS = ("synthesize", "nullifiers", "optimize-cluster", "mbqc", "optimize-mbqc")
KNOWN_FIELDS = {"task", "graph", "squeezing_db", "plan", "theta", "optimizer", "seed"}

EXIT_OK, EXIT_INPUT, EXIT_INVALID = 0, 2, 3


class SpecError(Exception):
    """Problem description is invalid; ``field`` names the offending entry."""

    def __init__(self, field: str, message: str):
        super().__init__(f"{field}: {message}")
        self.field = field


@dataclass
class ProblemSpec:
    task: str
    graph: AdjacencyGraph
    profile: noise.SqueezingProfile
    plan: mbqc.MeasurementPlan | None
    theta: np.ndarray | None
    optimizer: OptimizerConfig
    seed: int

    def resolved(self) -> dict:
        out = {
            "task": self.task,
            "graph": self.graph.to_dict(),
            "squeezing_db": list(self.profile.db),
            "seed": self.seed,
        }
        if self.plan is not None:
            out["plan"] = self.plan.to_dict()
        if self.theta is not None:
            out["theta"] = self.theta.tolist()
        if self.task.startswith("optimize"):
            out["optimizer"] = self.optimizer.to_dict()
        return out


def _field(name, fn, *args, **kwargs):
    try:
        return fn(*args, **kwargs)
    except SpecError:
        raise
    except (ClusterNetError, TypeError, ValueError, KeyError, IndexError) as exc:
        raise SpecError(name, str(exc)) from exc


def parse_spec(data, seed_override: int | None = None) -> ProblemSpec:
    if not isinstance(data, dict):
        raise SpecError("<root>", "problem description must be a JSON object")
    unknown = set(data) - KNOWN_FIELDS
    if unknown:
        raise SpecError(sorted(unknown)[0], "unknown field")
    task = data.get("task")
    if task not in TASKS:
        raise SpecError("task", f"must be one of {', '.join(TASKS)}")
    if "graph" not in data:
        raise SpecError("graph", "required")
    g = _field("graph", graph_from_dict, data["graph"])

    db = data.get("squeezing_db")
    if db is None:
        prof = noise.SqueezingProfile.vacuum(g.n)
    else:
        if not isinstance(db, list):
            raise SpecError("squeezing_db", "must be a list of numbers")
        prof = _field("squeezing_db", noise.SqueezingProfile, tuple(db))
        if len(prof) != g.n:
            raise SpecError("squeezing_db", f"has {len(prof)} entries, graph has {g.n} modes")

    plan = None
    if task in ("mbqc", "optimize-mbqc"):
        if "plan" not in data:
            raise SpecError("plan", f"required for task {task}")
        plan = _field("plan", mbqc.MeasurementPlan.from_dict, data["plan"])
        if plan.n_total != g.n + 1:
            raise SpecError("plan", f"covers {plan.n_total} modes, expected graph size + 1 = {g.n + 1}")

    theta = None
    if data.get("theta") is not None:
        theta = _field("theta", lambda t: np.asarray(t, dtype=float).ravel(), data["theta"])
        if theta.size != n_angles(g.n) or not np.all(np.isfinite(theta)):
            raise SpecError("theta", f"expected {n_angles(g.n)} finite angles for n={g.n}")

    seed = seed_override if seed_override is not None else data.get("seed")
    if seed is None:
        seed = secrets.randbits(63)
    if not isinstance(seed, int) or isinstance(seed, bool) or not 0 <= seed < 2**64:
        raise SpecError("seed", "must be a non-negative 64-bit integer")
    opt_data = data.get("optimizer") or {}
    if not isinstance(opt_data, dict):
        raise SpecError("optimizer", "must be an object")
    opt_data = {k: v for k, v in opt_data.items() if k != "seed"}
    config = _field("optimizer", OptimizerConfig.from_dict, opt_data, seed=seed)
    return ProblemSpec(task, g, prof, plan, theta, config, seed)


def _theta_or_zero(spec: ProblemSpec) -> np.ndarray:
    return spec.theta if spec.theta is not None else np.zeros(n_angles(spec.graph.n))


def _mbqc_section(spec: ProblemSpec, theta) -> dict:
    cluster = network.cluster_unitary(spec.graph, theta)
    outcome = mbqc.eliminate_and_project(mbqc.compose_with_cluster(cluster, spec.plan), spec.plan)
    c_x, c_p = mbqc.nullifier_decomposition(outcome, cluster)
    return {
        "outcome": outcome.to_dict(),
        "excess_noise": mbqc.extra_noise_variances(outcome, spec.profile).to_dict(),
        "nullifier_coefficients": {"x": c_x.tolist(), "p": c_p.tolist()},
    }


def run(spec: ProblemSpec):
    """Execute a parsed problem; returns ``(report, trace_or_None)``."""
    g, prof = spec.graph, spec.profile
    report = {"resolved": spec.resolved()}
    trace = None
    if spec.task == "synthesize":
        u = network.cluster_unitary(g, _theta_or_zero(spec))
        report["unitary"] = u.to_dict()
        report["residuals"] = {
            "cluster_condition": network.verify_cluster_condition(u, g),
            "unitarity": unitarity_residual(u.U),
        }
    elif spec.task == "nullifiers":
        theta = _theta_or_zero(spec)
        report["theta"] = theta.tolist()
        report["nullifiers"] = noise.nullifier_report(g, theta, prof).to_dict()
    elif spec.task == "optimize-cluster":
        shot = noise.shot_noise_variances(g)
        result = multistart(
            lambda th: noise.fitness_f1(g, th, prof),
            n_angles(g.n),
            spec.optimizer,
            observe=lambda th: noise.nullifier_variances(g, th, prof) / shot,
            extra_names=[f"nullifier_{i + 1}" for i in range(g.n)],
        )
        trace = result.trace
        report["theta"] = result.theta.tolist()
        report["fitness"] = result.fitness
        report["nullifiers"] = noise.nullifier_report(g, result.theta, prof).to_dict()
        report["optimizer_runs"] = [
            {"seed": r.seed, "fitness": r.fitness, "generations": len(r.trace) - 1,
             "evaluations": r.evaluations, "stop_reason": r.stop_reason}
            for r in result.runs
        ]
    elif spec.task == "mbqc":
        theta = _theta_or_zero(spec)
        report["theta"] = theta.tolist()
        report.update(_mbqc_section(spec, theta))
    elif spec.task == "optimize-mbqc":
        result = multistart(
            lambda th: mbqc.fitness_f2(g, th, spec.plan, prof), n_angles(g.n), spec.optimizer
        )
        trace = result.trace
        report["theta"] = result.theta.tolist()
        report["fitness"] = result.fitness
        report.update(_mbqc_section(spec, result.theta))
        report["optimizer_runs"] = [
            {"seed": r.seed, "fitness": r.fitness, "generations": len(r.trace) - 1,
             "evaluations": r.evaluations, "stop_reason": r.stop_reason}
            for r in result.runs
        ]
    return report, trace


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="clusternet", description=__doc__.splitlines()[0])
    p.add_argument("--spec", required=True, help="problem description (JSON)")
    p.add_argument("--out", help="write the report here instead of stdout")
    p.add_argument("--trace", help="write the per-generation trace CSV here (optimize tasks)")
    p.add_argument("--seed", type=int, help="override the problem's seed")
    p.add_argument("--quiet", action="store_true", help="suppress progress messages")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)

    def say(msg):
        if not args.quiet:
            print(msg, file=sys.stderr)

    try:
        with open(args.spec) as fh:
            text = fh.read()
    except OSError as exc:
        print(f"error: cannot read {args.spec}: {exc.strerror}", file=sys.stderr)
        return EXIT_INPUT
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        print(f"error: malformed JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}", file=sys.stderr)
        return EXIT_INPUT
    try:
        spec = parse_spec(data, seed_override=args.seed)
        if "seed" not in data and args.seed is None:
            say(f"seed: {spec.seed}")
        say(f"task: {spec.task} (n={spec.graph.n})")
        report, trace = run(spec)
    except SpecError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except ClusterNetError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID

    text = json.dumps(report, indent=2)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    if trace is not None and args.trace:
        trace.to_csv(args.trace)
        say(f"trace: {args.trace} ({len(trace)} rows)")
    if "fitness" in report:
        say(f"best fitness: {report['fitness']:.6g}")
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
