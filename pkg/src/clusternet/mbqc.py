"""Single-mode MBQC on a linear optical cluster: compose the full computation
unitary, eliminate the anti-squeezed quadratures using the homodyne
equations, and report the implemented gate together with its finite-squeezing
noise.

Mode layout of the computation: the input mode sits at ``plan.bs_pair[0]``;
the remaining modes, in increasing order, are the cluster modes 1..N. All
measurements are of ``p`` after the phase rotations in ``d_meas``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources

import numpy as np

from . import linalg
from .errors import DimensionError, InvalidPlanError, ValidationError
from .graph import AdjacencyGraph
from .graph import from_dict as graph_from_dict
from .network import NetworkUnitary, cluster_unitary, symmetric_unitary
from .noise import SqueezingProfile

ELIMINATION_COND_LIMIT = 1e12
CANCELLATION_TOL = 1e-10


@dataclass(frozen=True)
class MeasurementPlan:
    bs_pair: tuple[int, int]
    d_meas: tuple[complex, ...]
    measured: tuple[int, ...]
    output: int

    def __post_init__(self):
        object.__setattr__(self, "bs_pair", tuple(int(i) for i in self.bs_pair))
        object.__setattr__(self, "d_meas", tuple(complex(z) for z in self.d_meas))
        object.__setattr__(self, "measured", tuple(int(i) for i in self.measured))
        object.__setattr__(self, "output", int(self.output))
        n = len(self.d_meas)
        if len(self.bs_pair) != 2 or self.bs_pair[0] == self.bs_pair[1]:
            raise ValidationError("plan.bs_pair must be two distinct mode indices")
        if not all(0 <= i < n for i in self.bs_pair):
            raise DimensionError(f"plan.bs_pair {self.bs_pair} out of range for {n} modes")
        if any(abs(abs(z) - 1.0) > 1e-12 for z in self.d_meas):
            raise ValidationError("plan.d_meas entries must have unit modulus")
        modes = sorted(self.measured + (self.output,))
        if modes != list(range(n)):
            raise ValidationError("plan.measured and plan.output must cover every mode exactly once")

    @property
    def n_total(self) -> int:
        return len(self.d_meas)

    @property
    def input_mode(self) -> int:
        return self.bs_pair[0]

    @property
    def cluster_modes(self) -> list[int]:
        return [m for m in range(self.n_total) if m != self.input_mode]

    def to_dict(self) -> dict:
        return {
            "bs_pair": list(self.bs_pair),
            "d_meas": [[z.real, z.imag] for z in self.d_meas],
            "measured": list(self.measured),
            "output": self.output,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "MeasurementPlan":
        if data == "fourier" or (isinstance(data, dict) and data.get("preset") == "fourier"):
            return fourier_plan()
        if not isinstance(data, dict):
            raise ValidationError("plan must be an object or the string 'fourier'")
        for key in ("bs_pair", "d_meas", "measured", "output"):
            if key not in data:
                raise ValidationError(f"plan.{key} is required")
        d = []
        for z in data["d_meas"]:
            d.append(complex(z[0], z[1]) if isinstance(z, (list, tuple)) else complex(z))
        return cls(tuple(data["bs_pair"]), tuple(d), tuple(data["measured"]), data["output"])


def fourier_plan() -> MeasurementPlan:
    """Fourier transform on a three-mode linear cluster: measure x_in, x_1, p_2; output on mode 3."""
    return MeasurementPlan(bs_pair=(0, 1), d_meas=(1j, 1j, 1, 1), measured=(0, 1, 2), output=3)


@dataclass(frozen=True)
class MBQCOutcome:
    """Output-mode quadratures as linear forms.

    ``x_out = gate[0] . (x_in, p_in) + noise_x . p_squ + displacement_x . outcomes``
    and likewise for ``p_out``; ``outcomes`` are ordered as ``measured``.
    """

    gate: np.ndarray
    noise_x: np.ndarray
    noise_p: np.ndarray
    displacement_x: np.ndarray
    displacement_p: np.ndarray
    measured: tuple[int, ...]
    cancellation_residual: float = 0.0

    def to_dict(self) -> dict:
        return {
            "gate": self.gate.tolist(),
            "noise_x": self.noise_x.tolist(),
            "noise_p": self.noise_p.tolist(),
            "displacement_x": self.displacement_x.tolist(),
            "displacement_p": self.displacement_p.tolist(),
            "measured": list(self.measured),
            "cancellation_residual": self.cancellation_residual,
        }


@dataclass(frozen=True)
class ExcessNoise:
    var_x: float
    var_p: float

    @property
    def f2(self) -> float:
        return self.var_x + self.var_p

    def to_dict(self) -> dict:
        return {"var_x": self.var_x, "var_p": self.var_p, "f2": self.f2}


def beamsplitter_unitary(n_total: int, i: int, j: int) -> np.ndarray:
    """Balanced beamsplitter ``[[1, i], [i, 1]] / sqrt(2)`` on modes (i, j)."""
    if i == j:
        raise DimensionError("beamsplitter_unitary: modes must differ")
    if not (0 <= i < n_total and 0 <= j < n_total):
        raise DimensionError(f"beamsplitter_unitary: modes ({i}, {j}) out of range for {n_total}")
    u = np.eye(n_total, dtype=complex)
    h = 1.0 / np.sqrt(2.0)
    u[i, i] = u[j, j] = h
    u[i, j] = u[j, i] = 1j * h
    return u


def compose_with_cluster(cluster: NetworkUnitary | np.ndarray, plan: MeasurementPlan) -> np.ndarray:
    """``D_meas U_BS (I_in + U_cluster)``."""
    u_clu = cluster.U if isinstance(cluster, NetworkUnitary) else np.asarray(cluster, dtype=complex)
    n_total = plan.n_total
    if u_clu.shape != (n_total - 1, n_total - 1):
        raise DimensionError(
            f"cluster unitary shape {u_clu.shape} does not fit a plan with {n_total} modes"
        )
    idx = plan.cluster_modes
    embedded = np.eye(n_total, dtype=complex)
    embedded[np.ix_(idx, idx)] = u_clu
    bs = beamsplitter_unitary(n_total, *plan.bs_pair)
    return (np.asarray(plan.d_meas)[:, None] * bs) @ embedded


def compose_computation(g: AdjacencyGraph, theta, plan: MeasurementPlan) -> np.ndarray:
    return compose_with_cluster(cluster_unitary(g, theta), plan)


def eliminate_and_project(u_comp, plan: MeasurementPlan, tol: float = linalg.UNITARY_TOL) -> MBQCOutcome:
    """Replace measured ``p'`` by classical outcomes and solve out the anti-squeezed ``x_squ``.

    ``tol`` bounds the unitarity residual of ``u_comp``; loosen it only for
    matrices transcribed at low precision.
    """
    u_comp = np.asarray(u_comp, dtype=complex)
    n = plan.n_total
    if u_comp.shape != (n, n):
        raise DimensionError(f"U_comp shape {u_comp.shape} does not match plan with {n} modes")
    s = linalg.quadrature_symplectic(u_comp, tol=tol)

    clu = plan.cluster_modes
    x_cols = clu
    p_cols = [n + m for m in clu]
    in_cols = [plan.input_mode, n + plan.input_mode]

    meas_rows = s[[n + m for m in plan.measured]]
    out_rows = s[[plan.output, n + plan.output]]
    a = meas_rows[:, x_cols]
    if not np.all(np.isfinite(a)) or np.linalg.cond(a) > ELIMINATION_COND_LIMIT:
        raise InvalidPlanError("invalid measurement plan: anti-squeezed quadratures cannot be eliminated")
    # x_squ = A^-1 (outcomes - rest); substitute into the output rows
    transfer = np.linalg.solve(a.T, out_rows[:, x_cols].T).T
    reduced = out_rows - transfer @ meas_rows

    residual = float(np.max(np.abs(reduced[:, x_cols])))
    if residual > CANCELLATION_TOL * max(1.0, float(np.abs(transfer).max())):
        raise InvalidPlanError(f"anti-squeezed terms did not cancel (residual {residual:.3e})")
    return MBQCOutcome(
        gate=reduced[:, in_cols],
        noise_x=reduced[0, p_cols],
        noise_p=reduced[1, p_cols],
        displacement_x=transfer[0],
        displacement_p=transfer[1],
        measured=plan.measured,
        cancellation_residual=residual,
    )


def extra_noise_variances(outcome: MBQCOutcome, prof: SqueezingProfile) -> ExcessNoise:
    k = prof.k
    if k.size != outcome.noise_x.size:
        raise DimensionError(
            f"squeezing profile has {k.size} modes, outcome has {outcome.noise_x.size} cluster modes"
        )
    return ExcessNoise(float(outcome.noise_x**2 @ k), float(outcome.noise_p**2 @ k))


def nullifier_decomposition(outcome: MBQCOutcome, cluster: NetworkUnitary) -> tuple[np.ndarray, np.ndarray]:
    """Coefficients ``c_x, c_p`` with ``noise = c . delta`` over the cluster nullifiers."""
    nc = cluster.nullifier_matrix()
    if nc.shape[1] != outcome.noise_x.size:
        raise DimensionError("cluster size does not match the outcome's noise vectors")
    coeffs = np.linalg.solve(nc.T, np.column_stack([outcome.noise_x, outcome.noise_p]))
    return coeffs[:, 0], coeffs[:, 1]


def mbqc_outcome(g: AdjacencyGraph, theta, plan: MeasurementPlan) -> MBQCOutcome:
    return eliminate_and_project(compose_computation(g, theta, plan), plan)


def fitness_f2(g: AdjacencyGraph, theta, plan: MeasurementPlan, prof: SqueezingProfile) -> float:
    return extra_noise_variances(mbqc_outcome(g, theta, plan), prof).f2


def _decode(rows) -> np.ndarray:
    return np.array([[complex(re, im) for re, im in row] for row in rows])


def load_fixtures() -> dict:
    """Transcribed Fourier-transform fixture: graph, plan and unitaries.

    Keys: ``graph``, ``plan``, ``fourier_cluster``, ``fourier_computation``,
    ``optimized_cluster`` (the last three as complex arrays) and ``provenance``.
    """
    text = resources.files("clusternet").joinpath("data/fourier_fixtures.json").read_text()
    raw = json.loads(text)
    return {
        "version": raw["version"],
        "provenance": raw["provenance"],
        "graph": graph_from_dict(raw["graph"]),
        "plan": MeasurementPlan.from_dict(
            {k: raw[k] for k in ("bs_pair", "d_meas", "measured", "output")}
        ),
        "fourier_cluster": _decode(raw["fourier_cluster_unitary"]),
        "fourier_computation": _decode(raw["fourier_computation_unitary"]),
        "optimized_cluster": _decode(raw["optimized_cluster_unitary"]),
    }


def fitness_f2_batch(g: AdjacencyGraph, thetas, plan: MeasurementPlan, prof: SqueezingProfile) -> np.ndarray:
    """Vectorized f2 over the rows of ``thetas``.

    Works directly on the rows of ``U_comp`` that the elimination needs, so it
    skips the validation done by :func:`eliminate_and_project`; use it for
    dense sweeps, not as the reference path.
    """
    thetas = np.atleast_2d(np.asarray(thetas, dtype=float))
    n = g.n
    if plan.n_total != n + 1:
        raise DimensionError(f"plan has {plan.n_total} modes, expected {n + 1}")
    k = prof.k
    if k.size != n:
        raise DimensionError(f"squeezing profile has {k.size} modes, graph has {n}")
    us = symmetric_unitary(g).U
    u_clu = us @ linalg.givens_orthogonal_batch(thetas, n)
    idx = plan.cluster_modes
    m = thetas.shape[0]
    emb = np.zeros((m, n + 1, n + 1), dtype=complex)
    emb[:, plan.input_mode, plan.input_mode] = 1.0
    ii = np.asarray(idx)
    emb[:, ii[:, None], ii[None, :]] = u_clu
    head = np.asarray(plan.d_meas)[:, None] * beamsplitter_unitary(n + 1, *plan.bs_pair)
    uc = head @ emb
    x, y = uc.real, uc.imag
    meas = list(plan.measured)
    o = plan.output
    # p'_m has x-coefficients Y[m], p-coefficients X[m]
    a = y[:, meas][:, :, idx]
    bx = x[:, meas][:, :, idx]
    cx = x[:, o, idx]  # x-coefficients of x'_out
    cp = y[:, o, idx]  # x-coefficients of p'_out
    rhs = np.stack([cx, cp], axis=-1)
    t = np.linalg.solve(np.swapaxes(a, 1, 2), rhs)  # (m, N, 2)
    corr = np.einsum("mjk,mjl->mkl", t, bx)  # (m, 2, N)
    noise_x = -y[:, o, idx] - corr[:, 0]
    noise_p = x[:, o, idx] - corr[:, 1]
    return noise_x**2 @ k + noise_p**2 @ k
