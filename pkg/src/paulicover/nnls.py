"""Non-negative least squares by the Lawson-Hanson active-set method.

Solves argmin_x ||A x - b||_2 subject to x >= 0.  At the returned solution
the KKT conditions hold to within ``tol``: x >= 0 elementwise, the gradient
A^T (b - A x) is <= tol on the zero coordinates, and vanishes (within tol)
on the positive ones.
"""

from __future__ import annotations

import numpy as np


def nnls(
    A: np.ndarray,
    b: np.ndarray,
    tol: float | None = None,
    max_iter: int | None = None,
) -> tuple[np.ndarray, float]:
    """
    Parameters
    ----------
    A : (m, n) array
    b : (m,) array
    tol : float, optional
        KKT residual tolerance; defaults to 1e-10 scaled by ||A^T b||_inf
        (with an absolute floor of 1e-12).
    max_iter : int, optional
        Cap on passive-set changes; defaults to 10 * n.

    Returns
    -------
    x : (n,) array, the non-negative solution.
    rnorm : float, the residual ||A x - b||_2.
    """
    A = np.asarray(A, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    if A.ndim != 2:
        raise ValueError("expected a 2-d coefficient matrix")
    if b.ndim != 1 or b.shape[0] != A.shape[0]:
        raise ValueError("right-hand side does not match matrix rows")
    m, n = A.shape
    if max_iter is None:
        max_iter = max(10 * n, 30)
    if tol is None:
        scale = float(np.max(np.abs(A.T @ b))) if n else 0.0
        tol = 1e-10 * max(scale, 1.0) + 1e-12

    x = np.zeros(n)
    passive = np.zeros(n, dtype=bool)
    w = A.T @ (b - A @ x)

    for _ in range(max_iter):
        if passive.all() or np.max(w[~passive], initial=-np.inf) <= tol:
            break
        free = np.flatnonzero(~passive)
        passive[free[np.argmax(w[free])]] = True

        for _ in range(n + 1):
            cols = np.flatnonzero(passive)
            z_p, *_ = np.linalg.lstsq(A[:, cols], b, rcond=None)
            if z_p.size and z_p.min() <= 0:
                # Step toward z only as far as feasibility allows, then drop
                # the coordinates that hit zero.
                mask = z_p <= 0
                x_m = x[cols][mask]
                denom = x_m - z_p[mask]
                ratios = np.divide(x_m, denom, out=np.zeros_like(x_m), where=denom > 0)
                alpha = float(np.min(ratios))
                x[cols] += alpha * (z_p - x[cols])
                passive[cols[np.abs(x[cols]) < 1e-14]] = False
                x[~passive] = 0.0
            else:
                x[:] = 0.0
                x[cols] = z_p
                break
        else:
            raise RuntimeError("nnls feasibility loop failed to make progress")
        w = A.T @ (b - A @ x)
    else:
        raise RuntimeError("nnls did not converge within the iteration cap")

    return x, float(np.linalg.norm(A @ x - b))
