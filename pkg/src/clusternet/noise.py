"""Finite-squeezing nullifier noise.

Squeezed inputs are p-squeezed: mode j has ``Var(p_j) = k_j`` and
``Var(x_j) = 1/k_j`` with the vacuum variance normalized to 1. For a cluster
unitary ``U = X + iY`` the nullifiers ``delta = p - V x`` depend only on the
squeezed quadratures, ``delta = (X + V Y) p_squ``, hence

    Var(delta_i) = [(X + V Y) K (X + V Y)^T]_ii .

:func:`covariance_propagate` gives an independent route through the full
``2n x 2n`` covariance matrix.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import linalg
from .errors import DimensionError, ValidationError
from .graph import AdjacencyGraph
from .network import NetworkUnitary, cluster_unitary, unitary_with_orthogonal


@dataclass(frozen=True)
class SqueezingProfile:
    """Per-mode squeezed-quadrature variance in dB relative to shot noise."""

    db: tuple[float, ...]

    def __post_init__(self):
        db = tuple(float(d) for d in np.atleast_1d(np.asarray(self.db, dtype=float)))
        if not all(np.isfinite(db)):
            raise ValidationError("squeezing profile has non-finite dB values")
        object.__setattr__(self, "db", db)

    @classmethod
    def vacuum(cls, n: int) -> "SqueezingProfile":
        return cls((0.0,) * n)

    @classmethod
    def uniform(cls, n: int, db: float) -> "SqueezingProfile":
        return cls((float(db),) * n)

    def __len__(self):
        return len(self.db)

    @property
    def k(self) -> np.ndarray:
        return 10.0 ** (np.asarray(self.db) / 10.0)

    @property
    def K(self) -> np.ndarray:
        return np.diag(self.k)

    def input_covariance(self) -> np.ndarray:
        """Covariance of the squeezed inputs, ``diag(1/k, k)`` in (x..., p...) order."""
        k = self.k
        return np.diag(np.concatenate([1.0 / k, k]))


def squeezing_to_k(db) -> np.ndarray:
    """Diagonal matrix ``K`` with ``K_ii = 10**(db_i / 10)``."""
    return SqueezingProfile(tuple(np.atleast_1d(db))).K


@dataclass(frozen=True)
class NullifierReport:
    variances: tuple[float, ...]
    shot: tuple[float, ...]

    @property
    def normalized(self) -> tuple[float, ...]:
        return tuple(v / s for v, s in zip(self.variances, self.shot))

    @property
    def f1(self) -> float:
        return float(np.mean(self.normalized))

    @property
    def f1_alt(self) -> float:
        return float(np.mean(np.subtract(self.variances, self.shot)))

    def to_dict(self) -> dict:
        return {
            "variances": list(self.variances),
            "shot": list(self.shot),
            "normalized": list(self.normalized),
            "f1": self.f1,
            "f1_alt": self.f1_alt,
        }


def _check_profile(n: int, prof: SqueezingProfile) -> None:
    if len(prof) != n:
        raise DimensionError(f"squeezing profile has {len(prof)} modes, graph has {n}")


def variances_of_unitary(u: NetworkUnitary, prof: SqueezingProfile) -> np.ndarray:
    _check_profile(u.n, prof)
    m = u.nullifier_matrix()
    # diag(M K M^T) without forming the product
    return np.einsum("ij,j,ij->i", m, prof.k, m)


def nullifier_variances(g: AdjacencyGraph, theta, prof: SqueezingProfile) -> np.ndarray:
    return variances_of_unitary(cluster_unitary(g, theta), prof)


def nullifier_variances_for_orthogonal(g: AdjacencyGraph, o, prof: SqueezingProfile) -> np.ndarray:
    """Same as :func:`nullifier_variances` with an explicit orthogonal matrix."""
    return variances_of_unitary(unitary_with_orthogonal(g, o), prof)


def shot_noise_variances(g: AdjacencyGraph) -> np.ndarray:
    """Nullifier variances for vacuum inputs: ``diag(V^2 + I)``, independent of theta."""
    return np.diag(g.V @ g.V) + 1.0


def nullifier_report(g: AdjacencyGraph, theta, prof: SqueezingProfile) -> NullifierReport:
    var = nullifier_variances(g, theta, prof)
    return NullifierReport(tuple(map(float, var)), tuple(map(float, shot_noise_variances(g))))


def fitness_f1(g: AdjacencyGraph, theta, prof: SqueezingProfile) -> float:
    """Mean nullifier variance normalized to shot noise."""
    return float(np.mean(nullifier_variances(g, theta, prof) / shot_noise_variances(g)))


def fitness_f1_alt(g: AdjacencyGraph, theta, prof: SqueezingProfile) -> float:
    """Mean of ``variance - shot`` over nullifiers."""
    return float(np.mean(nullifier_variances(g, theta, prof) - shot_noise_variances(g)))


def covariance_propagate(s, sigma_in, tol: float = 1e-8) -> np.ndarray:
    """``S sigma S^T`` for a symplectic ``S``."""
    s = np.asarray(s, dtype=float)
    sigma_in = np.asarray(sigma_in, dtype=float)
    if sigma_in.shape != s.shape:
        raise DimensionError(f"covariance shape {sigma_in.shape} does not match S {s.shape}")
    if np.max(np.abs(sigma_in - sigma_in.T)) > linalg.SYMMETRY_TOL * max(1.0, np.abs(sigma_in).max()):
        raise ValidationError("covariance_propagate: input covariance is not symmetric")
    res = linalg.check_symplectic(s)
    if res > tol:
        raise ValidationError(f"covariance_propagate: S is not symplectic (residual {res:.3e})")
    return s @ sigma_in @ s.T


def nullifier_rows(g: AdjacencyGraph) -> np.ndarray:
    """Row i is the quadrature vector of ``p_i - sum_l V_il x_l``."""
    return np.hstack([-g.V, np.eye(g.n)])


def nullifier_variances_from_covariance(g: AdjacencyGraph, sigma) -> np.ndarray:
    d = nullifier_rows(g)
    return np.einsum("ij,jk,ik->i", d, sigma, d)


def nullifier_variances_oracle(u: NetworkUnitary, prof: SqueezingProfile) -> np.ndarray:
    """Nullifier variances by explicit covariance propagation."""
    _check_profile(u.n, prof)
    s = linalg.quadrature_symplectic(u.U)
    sigma = covariance_propagate(s, prof.input_covariance())
    return nullifier_variances_from_covariance(u.graph, sigma)
