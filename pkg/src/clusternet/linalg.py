"""Dense matrix primitives: SPD inverse square root, Givens parameterization
of SO(n), and the quadrature (real symplectic) form of a passive unitary.

Quadrature vectors are ordered ``(x_1, ..., x_n, p_1, ..., p_n)`` throughout.
"""

from __future__ import annotations

import numpy as np

from .errors import DimensionError, SingularityError, ValidationError

SYMMETRY_TOL = 1e-12
SYMPLECTIC_TOL = 1e-10
UNITARY_TOL = 1e-10
EIGENVALUE_TOL = 1e-14


def wrap_angles(theta) -> np.ndarray:
    """Reduce angles to the half-open interval [-pi, pi)."""
    theta = np.asarray(theta, dtype=float)
    return (theta + np.pi) % (2.0 * np.pi) - np.pi


def n_angles(n: int) -> int:
    """Number of Givens angles parameterizing SO(n)."""
    return n * (n - 1) // 2


def _require_square(m: np.ndarray, name: str = "matrix") -> None:
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise DimensionError(f"{name} must be square, got shape {m.shape}")


def inv_sqrt_spd(m, tol: float = SYMMETRY_TOL) -> np.ndarray:
    """Return ``m**(-1/2)`` for a symmetric positive-definite matrix.

    Uses the symmetric eigendecomposition ``m = Q diag(w) Q^T`` so the result
    is exactly symmetric up to rounding.

    Raises
    ------
    ValidationError
        If ``m`` is not symmetric within ``tol``.
    SingularityError
        If the smallest eigenvalue is not strictly positive.
    """
    m = np.asarray(m, dtype=float)
    _require_square(m)
    if np.max(np.abs(m - m.T), initial=0.0) > tol:
        raise ValidationError("inv_sqrt_spd: input is not symmetric")
    w, q = np.linalg.eigh(m)
    if w.size and w.min() <= EIGENVALUE_TOL * max(1.0, abs(w.max())):
        raise SingularityError(f"inv_sqrt_spd: eigenvalue {w.min():.3e} is not positive")
    out = (q / np.sqrt(w)) @ q.T
    return 0.5 * (out + out.T)


def sqrt_spd(m, tol: float = SYMMETRY_TOL) -> np.ndarray:
    """Principal square root of a symmetric positive-definite matrix."""
    m = np.asarray(m, dtype=float)
    _require_square(m)
    if np.max(np.abs(m - m.T), initial=0.0) > tol:
        raise ValidationError("sqrt_spd: input is not symmetric")
    w, q = np.linalg.eigh(m)
    if w.size and w.min() <= EIGENVALUE_TOL * max(1.0, abs(w.max())):
        raise SingularityError(f"sqrt_spd: eigenvalue {w.min():.3e} is not positive")
    out = (q * np.sqrt(w)) @ q.T
    return 0.5 * (out + out.T)


def givens_orthogonal(theta, n: int) -> np.ndarray:
    """Special orthogonal matrix from ``n(n-1)/2`` plane-rotation angles.

    ``O = G(0,1) G(0,2) ... G(0,n-1) G(1,2) ... G(n-2,n-1)`` with planes in
    lexicographic order. Each ``G(i,j)`` acts as the identity outside the
    ``(i, j)`` plane and maps ``e_i -> cos t e_i + sin t e_j``, i.e. its
    ``(i, j)`` block is ``[[cos t, -sin t], [sin t, cos t]]``.

    Only SO(n) is reached. The det = -1 coset ``O diag(-1, 1, ..., 1)`` gives
    identical nullifier and excess-noise figures for diagonal squeezing, so
    nothing is lost for optimization purposes.
    """
    theta = np.asarray(theta, dtype=float).ravel()
    if n < 1:
        raise DimensionError("givens_orthogonal: n must be >= 1")
    if theta.size != n_angles(n):
        raise DimensionError(
            f"givens_orthogonal: expected {n_angles(n)} angles for n={n}, got {theta.size}"
        )
    o = np.eye(n)
    k = 0
    for i in range(n):
        for j in range(i + 1, n):
            c, s = np.cos(theta[k]), np.sin(theta[k])
            # right-multiply by G(i, j): only columns i and j change
            ci, cj = o[:, i].copy(), o[:, j].copy()
            o[:, i] = c * ci + s * cj
            o[:, j] = -s * ci + c * cj
            k += 1
    return o


def unitarity_residual(u) -> float:
    u = np.asarray(u, dtype=complex)
    _require_square(u)
    return float(np.max(np.abs(u @ u.conj().T - np.eye(u.shape[0])), initial=0.0))


def quadrature_symplectic(u, tol: float = UNITARY_TOL) -> np.ndarray:
    """Real ``2n x 2n`` matrix ``[[X, -Y], [Y, X]]`` induced by ``U = X + iY``.

    Maps ``(x, p)`` of the input modes to ``(x, p)`` of the output modes when
    the annihilation operators transform as ``a' = U a``.
    """
    u = np.asarray(u, dtype=complex)
    _require_square(u, "U")
    res = unitarity_residual(u)
    if res > tol:
        raise ValidationError(f"quadrature_symplectic: U is not unitary (residual {res:.3e})")
    x, y = u.real, u.imag
    return np.block([[x, -y], [y, x]])


def symplectic_form(n: int) -> np.ndarray:
    """``Omega = [[0, I], [-I, 0]]`` for n modes in (x..., p...) ordering."""
    eye = np.eye(n)
    zero = np.zeros((n, n))
    return np.block([[zero, eye], [-eye, zero]])


def check_symplectic(s) -> float:
    """Max-norm residual of ``S Omega S^T - Omega``.

    For ``S = [[X, -Y], [Y, X]]`` this is exactly the larger of the residuals
    of ``X X^T + Y Y^T = I`` and ``X Y^T = Y X^T``; for general ``S`` it is the
    usual symplectic test, so active transforms (shears, squeezers) pass too.
    """
    s = np.asarray(s, dtype=float)
    _require_square(s, "S")
    if s.shape[0] % 2:
        raise DimensionError(f"check_symplectic: dimension {s.shape[0]} is odd")
    omega = symplectic_form(s.shape[0] // 2)
    return float(np.max(np.abs(s @ omega @ s.T - omega), initial=0.0))


def givens_orthogonal_batch(thetas, n: int) -> np.ndarray:
    """Vectorized :func:`givens_orthogonal` over the rows of ``thetas``; shape (m, n, n)."""
    thetas = np.atleast_2d(np.asarray(thetas, dtype=float))
    if thetas.shape[1] != n_angles(n):
        raise DimensionError(
            f"givens_orthogonal_batch: expected {n_angles(n)} angles per row for n={n}, got {thetas.shape[1]}"
        )
    o = np.broadcast_to(np.eye(n), (thetas.shape[0], n, n)).copy()
    k = 0
    for i in range(n):
        for j in range(i + 1, n):
            c, s = np.cos(thetas[:, k])[:, None], np.sin(thetas[:, k])[:, None]
            ci, cj = o[:, :, i].copy(), o[:, :, j].copy()
            o[:, :, i] = c * ci + s * cj
            o[:, :, j] = -s * ci + c * cj
            k += 1
    return o
