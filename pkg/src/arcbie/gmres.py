"""Full (non-restarted) left-preconditioned GMRES."""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

__all__ = ["SolveReport", "gmres"]

Apply = Callable[[np.ndarray], np.ndarray]


@dataclass
class SolveReport:
    """Outcome of a GMRES run.

    ``residual_history[j]`` is the preconditioned relative residual after
    ``j`` iterations (entry 0 is 1).
    """

    iterations: int
    residual_history: list[float]
    solution: np.ndarray
    converged: bool
    wall_time: float = 0.0
    status: str = ""
    meta: dict = field(default_factory=dict)


def _as_apply(A) -> Apply:
    if A is None:
        return lambda v: v
    if callable(A):
        return A
    A = np.asarray(A)
    return lambda v: A @ v


def gmres(apply_A, apply_P, rhs, tol: float = 1e-8, maxit: int | None = None) -> SolveReport:
    """Solve ``P A x = P b`` by GMRES with modified Gram-Schmidt.

    Parameters
    ----------
    apply_A : callable or array
        The operator.
    apply_P : callable, array or None
        Left preconditioner; ``None`` for the identity.
    rhs : array
    tol : float
        Stop when ``||P(Ax - b)|| / ||P b|| <= tol``.
    maxit : int, optional
        Iteration cap, default ``len(rhs)``.

    Notes
    -----
    Each Arnoldi vector is orthogonalized twice, which keeps the basis
    orthonormal to working precision without restarts.  A happy breakdown
    (exact invariant subspace) is treated as convergence; a Krylov space that
    stops growing without reaching ``tol`` is reported as stagnation.
    """
    if not 0 < tol < 1:
        raise ValueError("tolerance must lie in (0, 1)")
    A = _as_apply(apply_A)
    P = _as_apply(apply_P)
    b = np.asarray(rhs, dtype=complex)
    n = b.size
    maxit = n if maxit is None else maxit
    t0 = time.perf_counter()

    r0 = P(b)
    beta = np.linalg.norm(r0)
    if beta == 0:
        return SolveReport(0, [0.0], np.zeros(n, dtype=complex), True, 0.0, "zero rhs")
    Q = np.zeros((n, maxit + 1), dtype=complex)
    H = np.zeros((maxit + 1, maxit), dtype=complex)
    cs = np.zeros(maxit, dtype=complex)
    sn = np.zeros(maxit, dtype=complex)
    g = np.zeros(maxit + 1, dtype=complex)
    g[0] = beta
    Q[:, 0] = r0 / beta
    history = [1.0]
    status = "maxit"
    j = 0
    for j in range(maxit):
        w = P(A(Q[:, j]))
        for _ in range(2):
            for i in range(j + 1):
                h = np.vdot(Q[:, i], w)
                H[i, j] += h
                w = w - h * Q[:, i]
        hn = np.linalg.norm(w)
        H[j + 1, j] = hn
        # apply stored rotations, then build a new one
        for i in range(j):
            t = np.conj(cs[i]) * H[i, j] + np.conj(sn[i]) * H[i + 1, j]
            H[i + 1, j] = -sn[i] * H[i, j] + cs[i] * H[i + 1, j]
            H[i, j] = t
        a, bb = H[j, j], H[j + 1, j]
        den = np.sqrt(abs(a) ** 2 + abs(bb) ** 2)
        if den == 0:
            status = "stagnation"
            break
        cs[j] = a / den
        sn[j] = bb / den
        H[j, j] = den
        H[j + 1, j] = 0.0
        g[j + 1] = -sn[j] * g[j]
        g[j] = np.conj(cs[j]) * g[j]
        res = abs(g[j + 1]) / beta
        history.append(float(res))
        if res <= tol:
            status = "converged"
            break
        if hn <= 1e-14 * beta:
            status = "breakdown"
            break
        Q[:, j + 1] = w / hn
    m = j + 1
    y = np.linalg.solve(np.triu(H[:m, :m]), g[:m]) if m else np.zeros(0)
    x = Q[:, :m] @ y
    converged = status in ("converged", "breakdown")
    if status == "breakdown" and history[-1] > tol:
        converged = True
        status = "converged (invariant subspace)"
    return SolveReport(m, history, x, converged, time.perf_counter() - t0, status)
