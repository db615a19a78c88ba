"""Derivative-free minimization over the Givens angles.

The strategy is a (mu/mu_I, lambda)-ES with one self-adapted global step
size (log-normal mutation of sigma, geometric-mean recombination), comma
selection, and a best-so-far record kept outside the population. Angles live
on a torus: recombination averages wrapped differences about the current
mean, and every candidate is reduced to [-pi, pi).
"""

from __future__ import annotations

import csv
import io
import itertools
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Callable, Sequence

import numpy as np

from .errors import DimensionError, ValidationError
from .linalg import wrap_angles

MAX_GRID_DIM = 3


@dataclass(frozen=True)
class OptimizerConfig:
    population: int = 16
    parents: int = 4
    sigma0: float = 0.3
    max_generations: int = 500
    target: float | None = None
    seed: int = 0
    min_sigma: float = 1e-8
    starts: int = 8
    workers: int = 1

    def __post_init__(self):
        if self.population < 1 or self.parents < 1:
            raise ValidationError("optimizer.population and optimizer.parents must be positive")
        if self.parents > self.population:
            raise ValidationError("optimizer.parents must not exceed optimizer.population")
        if not self.sigma0 > 0:
            raise ValidationError("optimizer.sigma0 must be positive")
        if self.max_generations < 1:
            raise ValidationError("optimizer.max_generations must be positive")
        if self.starts < 1 or self.workers < 1:
            raise ValidationError("optimizer.starts and optimizer.workers must be positive")
        if not 0 <= self.seed < 2**64:
            raise ValidationError("optimizer.seed must be a 64-bit unsigned integer")

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: dict | None, **overrides) -> "OptimizerConfig":
        data = dict(data or {})
        data.update({k: v for k, v in overrides.items() if v is not None})
        unknown = set(data) - set(cls.__dataclass_fields__)
        if unknown:
            raise ValidationError(f"optimizer: unknown field(s) {sorted(unknown)}")
        return cls(**data)


@dataclass(frozen=True)
class GenerationRecord:
    generation: int
    best_fitness: float
    mean_fitness: float
    sigma: float
    extras: tuple[float, ...] = ()


@dataclass
class OptimizationTrace:
    records: list[GenerationRecord] = field(default_factory=list)
    extra_names: tuple[str, ...] = ()

    def __len__(self):
        return len(self.records)

    @property
    def best_fitness(self) -> np.ndarray:
        return np.array([r.best_fitness for r in self.records])

    def to_csv(self, path=None) -> str:
        """Write ``generation, best_fitness, mean_fitness, sigma, <extras>``; returns the text."""
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["generation", "best_fitness", "mean_fitness", "sigma", *self.extra_names])
        for r in self.records:
            w.writerow([r.generation, repr(r.best_fitness), repr(r.mean_fitness), repr(r.sigma),
                        *map(repr, r.extras)])
        text = buf.getvalue()
        if path is not None:
            with open(path, "w", newline="") as fh:
                fh.write(text)
        return text


@dataclass
class OptimizationResult:
    theta: np.ndarray
    fitness: float
    trace: OptimizationTrace
    evaluations: int
    seed: int
    stop_reason: str


def _wrap_diff(a, b):
    return wrap_angles(np.asarray(a) - np.asarray(b))


def optimize(
    fitness: Callable[[np.ndarray], float],
    dim: int,
    config: OptimizerConfig = OptimizerConfig(),
    x0: Sequence[float] | None = None,
    observe: Callable[[np.ndarray], Sequence[float]] | None = None,
    extra_names: Sequence[str] = (),
) -> OptimizationResult:
    """Minimize ``fitness`` over ``[-pi, pi)**dim`` from ``x0`` (default: all zeros).

    ``observe`` maps the best-so-far angles to extra per-generation values
    stored in the trace (e.g. normalized nullifier variances). Results depend
    only on ``config.seed``; ``config.workers > 1`` evaluates each generation
    on a thread pool but gathers in candidate order.
    """
    if dim < 0:
        raise DimensionError("optimize: dim must be >= 0")
    trace = OptimizationTrace(extra_names=tuple(extra_names))
    mean = np.zeros(dim) if x0 is None else wrap_angles(np.asarray(x0, dtype=float).ravel())
    if mean.size != dim:
        raise DimensionError(f"optimize: x0 has length {mean.size}, expected {dim}")

    best_x = mean.copy()
    best_f = float(fitness(best_x))
    evaluations = 1

    def record(gen, mean_f, sigma):
        extras = tuple(float(v) for v in observe(best_x)) if observe else ()
        trace.records.append(GenerationRecord(gen, best_f, float(mean_f), float(sigma), extras))

    record(0, best_f, config.sigma0)
    if dim == 0:
        return OptimizationResult(best_x, best_f, trace, evaluations, config.seed, "empty")
    if config.target is not None and best_f <= config.target:
        return OptimizationResult(best_x, best_f, trace, evaluations, config.seed, "target")

    rng = np.random.default_rng(config.seed)
    tau = 1.0 / math.sqrt(2.0 * dim)
    sigma = config.sigma0
    lam, mu = config.population, config.parents
    pool = ThreadPoolExecutor(config.workers) if config.workers > 1 else None
    stop = "max_generations"
    try:
        for gen in range(1, config.max_generations + 1):
            sigmas = sigma * np.exp(tau * rng.standard_normal(lam))
            steps = rng.standard_normal((lam, dim))
            cands = wrap_angles(mean + sigmas[:, None] * steps)
            mapper = pool.map if pool is not None else map
            fvals = np.fromiter(mapper(fitness, cands), dtype=float, count=lam)
            evaluations += lam

            order = np.argsort(fvals, kind="stable")
            sel = order[:mu]
            mean = wrap_angles(mean + _wrap_diff(cands[sel], mean).mean(axis=0))
            sigma = float(np.exp(np.log(sigmas[sel]).mean()))

            if fvals[order[0]] < best_f:
                best_f = float(fvals[order[0]])
                best_x = cands[order[0]].copy()
            record(gen, fvals.mean(), sigma)

            if config.target is not None and best_f <= config.target:
                stop = "target"
                break
            if sigma < config.min_sigma:
                stop = "sigma"
                break
    finally:
        if pool is not None:
            pool.shutdown()
    return OptimizationResult(best_x, best_f, trace, evaluations, config.seed, stop)


@dataclass
class MultiStartResult:
    best: OptimizationResult
    runs: list[OptimizationResult]

    @property
    def theta(self) -> np.ndarray:
        return self.best.theta

    @property
    def fitness(self) -> float:
        return self.best.fitness

    @property
    def trace(self) -> OptimizationTrace:
        return self.best.trace


def multistart(
    fitness: Callable[[np.ndarray], float],
    dim: int,
    config: OptimizerConfig = OptimizerConfig(),
    observe=None,
    extra_names: Sequence[str] = (),
) -> MultiStartResult:
    """Run ``config.starts`` independent ES runs and keep the best.

    The first run starts at theta = 0, the others at uniform random angles.
    Per-run seeds are spawned from ``config.seed``.
    """
    ss = np.random.SeedSequence(config.seed)
    children = ss.spawn(config.starts)
    runs = []
    for i, child in enumerate(children):
        run_seed = int(child.generate_state(1, dtype=np.uint64)[0])
        if i == 0 or dim == 0:
            x0 = np.zeros(dim)
        else:
            x0 = np.random.default_rng(child).uniform(-np.pi, np.pi, dim)
        cfg = OptimizerConfig(**{**config.to_dict(), "seed": run_seed})
        runs.append(optimize(fitness, dim, cfg, x0=x0, observe=observe, extra_names=extra_names))
    best = min(runs, key=lambda r: r.fitness)  # first wins ties
    return MultiStartResult(best, runs)


def exhaustive_baseline(fitness, dim: int, resolution: float, batch: bool = False, chunk: int = 100_000):
    """Grid search on ``[-pi, pi)**dim`` with spacing ``resolution``.

    With ``batch=True`` ``fitness`` receives an (m, dim) array and returns m values.
    Returns ``(theta, fitness)``.
    """
    if dim > MAX_GRID_DIM:
        raise ValidationError(f"exhaustive_baseline: dim {dim} exceeds the grid limit {MAX_GRID_DIM}")
    if dim < 0:
        raise DimensionError("exhaustive_baseline: dim must be >= 0")
    if not resolution > 0:
        raise ValidationError("exhaustive_baseline: resolution must be positive")
    if dim == 0:
        theta = np.zeros(0)
        val = fitness(theta[None, :])[0] if batch else fitness(theta)
        return theta, float(val)
    axis = np.arange(-np.pi, np.pi, resolution)
    best_f, best_x = np.inf, None
    if batch:
        total = axis.size**dim
        for start in range(0, total, chunk):
            flat = np.arange(start, min(start + chunk, total))
            pts = axis[np.stack(np.unravel_index(flat, (axis.size,) * dim), axis=1)]
            vals = np.asarray(fitness(pts), dtype=float)
            i = int(np.argmin(vals))
            if vals[i] < best_f:
                best_f, best_x = float(vals[i]), pts[i].copy()
    else:
        for pt in itertools.product(axis, repeat=dim):
            v = float(fitness(np.array(pt)))
            if v < best_f:
                best_f, best_x = v, np.array(pt)
    return best_x, best_f
