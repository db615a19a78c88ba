"""Cluster-graph adjacency matrices."""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionError, ValidationError


@dataclass(frozen=True, eq=False)
class AdjacencyGraph:
    """Real symmetric, zero-diagonal weighted adjacency matrix ``V``.

    The matrix is copied and made read-only on construction.
    """

    V: np.ndarray = field(repr=False)

    def __post_init__(self):
        v = np.array(self.V, dtype=float, copy=True)
        if v.ndim != 2 or v.shape[0] != v.shape[1] or v.shape[0] < 1:
            raise DimensionError(f"adjacency matrix must be square and non-empty, got {v.shape}")
        if not np.all(np.isfinite(v)):
            raise ValidationError("adjacency matrix has non-finite entries")
        if not np.array_equal(v, v.T):
            raise ValidationError("adjacency matrix is not symmetric")
        if np.any(np.diag(v) != 0):
            raise ValidationError("adjacency matrix has a non-zero diagonal (self-loop)")
        v.flags.writeable = False
        object.__setattr__(self, "V", v)

    @property
    def n(self) -> int:
        return self.V.shape[0]

    def edges(self) -> list[tuple[int, int, float]]:
        i, j = np.nonzero(np.triu(self.V, 1))
        return [(int(a), int(b), float(self.V[a, b])) for a, b in zip(i, j)]

    def degrees(self) -> np.ndarray:
        return np.count_nonzero(self.V, axis=1)

    def to_dict(self) -> dict:
        return {"n": self.n, "edges": [[i, j, w] for i, j, w in self.edges()]}

    def digest(self) -> str:
        """Short stable hash of the graph, used to tag exported unitaries."""
        blob = json.dumps(self.to_dict(), sort_keys=True).encode()
        return hashlib.sha256(blob).hexdigest()[:16]

    def __eq__(self, other):
        if not isinstance(other, AdjacencyGraph):
            return NotImplemented
        return np.array_equal(self.V, other.V)

    def __hash__(self):
        return hash(self.V.tobytes())


def from_edges(n: int, edges) -> AdjacencyGraph:
    """Build a graph from ``(i, j, weight)`` triples (weight optional, default 1)."""
    if n < 1:
        raise DimensionError("from_edges: n must be >= 1")
    v = np.zeros((n, n))
    seen = set()
    for k, edge in enumerate(edges):
        if len(edge) == 2:
            i, j, w = edge[0], edge[1], 1.0
        elif len(edge) == 3:
            i, j, w = edge
        else:
            raise ValidationError(f"edges[{k}] must be (i, j) or (i, j, weight)")
        if not (isinstance(i, (int, np.integer)) and isinstance(j, (int, np.integer))):
            raise ValidationError(f"edges[{k}] indices must be integers")
        i, j, w = int(i), int(j), float(w)
        if not (0 <= i < n and 0 <= j < n):
            raise DimensionError(f"edges[{k}] index out of range for n={n}: ({i}, {j})")
        if i == j:
            raise ValidationError(f"edges[{k}] is a self-loop on node {i}")
        if not np.isfinite(w):
            raise ValidationError(f"edges[{k}] weight is not finite")
        key = (min(i, j), max(i, j))
        if key in seen:
            raise ValidationError(f"edges[{k}] duplicates edge {key}")
        seen.add(key)
        v[i, j] = v[j, i] = w
    return AdjacencyGraph(v)


def linear_cluster(n: int, weight: float = 1.0) -> AdjacencyGraph:
    if n < 1:
        raise DimensionError("linear_cluster: n must be >= 1")
    return from_edges(n, [(i, i + 1, weight) for i in range(n - 1)])


def ring_cluster(n: int, weight: float = 1.0) -> AdjacencyGraph:
    if n < 3:
        raise DimensionError("ring_cluster: n must be >= 3")
    return from_edges(n, [(i, (i + 1) % n, weight) for i in range(n)])


def grid_cluster(rows: int, cols: int, weight: float = 1.0) -> AdjacencyGraph:
    if rows < 1 or cols < 1:
        raise DimensionError("grid_cluster: rows and cols must be >= 1")
    edges = []
    for r in range(rows):
        for c in range(cols):
            k = r * cols + c
            if c + 1 < cols:
                edges.append((k, k + 1, weight))
            if r + 1 < rows:
                edges.append((k, k + cols, weight))
    return from_edges(rows * cols, edges)


def from_dict(data: dict) -> AdjacencyGraph:
    """Parse ``{"n": int, "edges": [[i, j, weight], ...]}``."""
    if not isinstance(data, dict) or "n" not in data:
        raise ValidationError("graph: expected an object with field 'n'")
    n = data["n"]
    if not isinstance(n, int) or isinstance(n, bool):
        raise ValidationError("graph.n must be an integer")
    edges = data.get("edges", [])
    if not isinstance(edges, list):
        raise ValidationError("graph.edges must be a list")
    return from_edges(n, edges)
