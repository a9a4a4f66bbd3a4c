"""Conjugate-gradient solver for symmetric positive-definite operators."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass
class CGResult:
    x: np.ndarray
    residual: float
    iterations: int
    converged: bool


def conjugate_gradient(apply_A, b, max_iters=None, residual_tol=1e-10) -> CGResult:
    """Solve A x = b where `apply_A` computes matrix-vector products.

    Stops once ||A x - b|| <= residual_tol or after max_iters iterations
    (default: the system size).  Raises on non-finite intermediates, which
    indicates an indefinite or ill-conditioned operator.
    """
    b = np.asarray(b, dtype=np.float64)
    n = b.size
    if max_iters is None:
        max_iters = n
    x = np.zeros_like(b)
    r = b.copy()
    p = r.copy()
    rs = float(r @ r)
    if np.sqrt(rs) <= residual_tol:
        return CGResult(x, np.sqrt(rs), 0, True)
    for it in range(1, max_iters + 1):
        Ap = np.asarray(apply_A(p), dtype=np.float64)
        if not np.all(np.isfinite(Ap)):
            raise FloatingPointError("non-finite operator output in CG")
        pAp = float(p @ Ap)
        if pAp <= 0.0 or not np.isfinite(pAp):
            raise FloatingPointError(f"operator not positive definite (p.Ap = {pAp})")
        alpha = rs / pAp
        x += alpha * p
        r -= alpha * Ap
        rs_new = float(r @ r)
        if np.sqrt(rs_new) <= residual_tol:
            return CGResult(x, np.sqrt(rs_new), it, True)
        p = r + (rs_new / rs) * p
        rs = rs_new
    return CGResult(x, np.sqrt(rs), max_iters, False)
