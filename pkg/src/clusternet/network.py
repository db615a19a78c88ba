"""Synthesis of the linear-optics unitary that turns squeezed vacua into a
cluster state with a prescribed graph.

Every solution of ``Y - V X = 0`` with ``U = X + iY`` unitary has the form

    U_V(theta) = (I + iV) (V^2 + I)^(-1/2) O(theta),   O in SO(n) (or O(n))

so the angles of ``O`` are free parameters that can be tuned to redistribute
finite-squeezing noise among the nullifiers.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import linalg
from .errors import DimensionError, ValidationError
from .graph import AdjacencyGraph


@dataclass(frozen=True, eq=False)
class NetworkUnitary:
    """Cluster-generating unitary with its cached real/imaginary split.

    ``theta`` is ``None`` when the unitary was supplied directly (e.g. a
    transcribed fixture) rather than synthesized from angles.
    """

    U: np.ndarray = field(repr=False)
    graph: AdjacencyGraph
    theta: np.ndarray | None = None
    X: np.ndarray = field(init=False, repr=False)
    Y: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        u = np.array(self.U, dtype=complex, copy=True)
        if u.shape != (self.graph.n, self.graph.n):
            raise DimensionError(f"unitary shape {u.shape} does not match graph size {self.graph.n}")
        u.flags.writeable = False
        x, y = u.real.copy(), u.imag.copy()
        x.flags.writeable = False
        y.flags.writeable = False
        object.__setattr__(self, "U", u)
        object.__setattr__(self, "X", x)
        object.__setattr__(self, "Y", y)
        if self.theta is not None:
            th = np.array(self.theta, dtype=float, copy=True)
            th.flags.writeable = False
            object.__setattr__(self, "theta", th)

    @property
    def n(self) -> int:
        return self.graph.n

    def nullifier_matrix(self) -> np.ndarray:
        """``X + V Y``: row i gives nullifier i in terms of the squeezed p-quadratures."""
        return self.X + self.graph.V @ self.Y

    def unitarity_residual(self) -> float:
        return linalg.unitarity_residual(self.U)

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "unitary": [[[float(z.real), float(z.imag)] for z in row] for row in self.U],
            "theta": None if self.theta is None else [float(t) for t in self.theta],
            "graph": self.graph.to_dict(),
            "graph_hash": self.graph.digest(),
        }


def _symmetric_factor(g: AdjacencyGraph) -> np.ndarray:
    v = g.V
    return (np.eye(g.n) + 1j * v) @ linalg.inv_sqrt_spd(v @ v + np.eye(g.n))


def symmetric_unitary(g: AdjacencyGraph) -> NetworkUnitary:
    """The symmetric solution ``(I + iV)(V^2 + I)^(-1/2)``."""
    return NetworkUnitary(_symmetric_factor(g), g, np.zeros(linalg.n_angles(g.n)))


def cluster_unitary(g: AdjacencyGraph, theta) -> NetworkUnitary:
    theta = np.asarray(theta, dtype=float).ravel()
    if theta.size != linalg.n_angles(g.n):
        raise DimensionError(
            f"cluster_unitary: expected {linalg.n_angles(g.n)} angles for n={g.n}, got {theta.size}"
        )
    o = linalg.givens_orthogonal(theta, g.n)
    return NetworkUnitary(_symmetric_factor(g) @ o, g, linalg.wrap_angles(theta))


def unitary_with_orthogonal(g: AdjacencyGraph, o) -> NetworkUnitary:
    """Cluster unitary for an arbitrary real orthogonal ``o`` (either determinant)."""
    o = np.asarray(o, dtype=float)
    if o.shape != (g.n, g.n):
        raise DimensionError(f"orthogonal matrix shape {o.shape} does not match n={g.n}")
    if np.max(np.abs(o @ o.T - np.eye(g.n))) > linalg.SYMPLECTIC_TOL:
        raise ValidationError("unitary_with_orthogonal: matrix is not orthogonal")
    return NetworkUnitary(_symmetric_factor(g) @ o, g, None)


def verify_cluster_condition(u: NetworkUnitary | np.ndarray, g: AdjacencyGraph) -> float:
    """``max |Y - V X|``; zero iff ``u`` generates the cluster with graph ``g``."""
    mat = u.U if isinstance(u, NetworkUnitary) else np.asarray(u, dtype=complex)
    if mat.shape != (g.n, g.n):
        raise DimensionError(f"unitary shape {mat.shape} does not match graph size {g.n}")
    return float(np.max(np.abs(mat.imag - g.V @ mat.real)))


def from_dict(data: dict) -> NetworkUnitary:
    """Inverse of :meth:`NetworkUnitary.to_dict`."""
    from .graph import from_dict as graph_from_dict

    g = graph_from_dict(data["graph"])
    u = np.array([[complex(re, im) for re, im in row] for row in data["unitary"]])
    theta = data.get("theta")
    return NetworkUnitary(u, g, None if theta is None else np.asarray(theta, dtype=float))
