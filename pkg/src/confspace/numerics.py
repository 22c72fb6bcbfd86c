"""Small numerical helpers shared by the geometry modules."""

from __future__ import annotations

import numpy as np


def unit(v: np.ndarray) -> np.ndarray:
    nrm = float(np.linalg.norm(v))
    if nrm == 0.0:
        raise ValueError("cannot normalize a zero vector")
    return v / nrm


def require_unit(v: np.ndarray, where: str = "vector", slack: float = 1e-6) -> np.ndarray:
    v = np.asarray(v, dtype=float)
    nrm = float(np.linalg.norm(v))
    if abs(nrm - 1.0) > slack:
        raise ValueError(f"{where} is not a unit vector (norm {nrm})")
    if abs(nrm - 1.0) <= 1e-12:
        return v
    return v / nrm


def vectors_close(a: np.ndarray, b: np.ndarray, tol: float) -> bool:
    return float(np.linalg.norm(a - b)) <= tol


def sign_distinct(a: np.ndarray, b: np.ndarray, tol: float) -> bool:
    """True iff b is within tol of neither a nor -a."""
    return (
        float(np.linalg.norm(a - b)) > tol and float(np.linalg.norm(a + b)) > tol
    )


def nonneg_dependent(vectors, tol: float = 1e-9) -> tuple[bool, float]:
    """Whether unit vectors admit a non-negative, not-all-zero dependence.

    Returns (answer, residual): residual is 0 when the answer is robust and
    otherwise measures how badly the best candidate dependence fails (the
    smallest singular value for an independent triple, or the most negative
    normalized coefficient).
    """
    a = np.stack([np.asarray(v, dtype=float) for v in vectors])
    k, _ = a.shape
    u_mat, s, _ = np.linalg.svd(a, full_matrices=True)
    s = np.concatenate([s, np.zeros(k - len(s))])
    smax = max(float(s[0]), 1e-30)
    if float(s[-1]) > tol * smax:
        return False, float(s[-1]) / smax
    if float(s[1]) <= tol * smax:
        # all vectors parallel: need mixed signs for a cancelling combination
        ref = a[0]
        same = [float(np.dot(ref, row)) >= 0 for row in a]
        return (True, 0.0) if not all(same) else (False, 1.0)
    coeff = u_mat[:, -1]
    coeff = coeff * np.sign(coeff[np.argmax(np.abs(coeff))])
    worst = float(coeff.min())
    if worst >= -tol:
        return True, 0.0
    return False, -worst


def ray_intersection(
    x_i: np.ndarray, dir_i: np.ndarray, x_j: np.ndarray, dir_j: np.ndarray
) -> tuple[float, float, np.ndarray]:
    """Least-squares meeting point of two rays; returns (s, t, point)."""
    a = np.stack([dir_i, -dir_j], axis=1)
    b = x_j - x_i
    params, *_ = np.linalg.lstsq(a, b, rcond=None)
    s, t = float(params[0]), float(params[1])
    point = 0.5 * (x_i + s * dir_i + x_j + t * dir_j)
    return s, t, point
