"""Iterative solvers for positive self-adjoint operators given as callables."""
from __future__ import annotations

import logging

import numpy as np

from .errors import NotConverged, SingularFrameOperator

log = logging.getLogger(__name__)


def conjugate_gradient(apply, rhs, tol=1e-10, max_iter=None, x0=None):
    """Solve ``A x = rhs`` for Hermitian positive definite ``A``.

    Stops when ``||rhs - A x|| <= tol * ||rhs||``.

    Returns
    -------
    x : ndarray
    iters : int
    """
    rhs = np.asarray(rhs, dtype=np.complex128)
    n = rhs.size
    if max_iter is None:
        max_iter = max(10 * n, 100)
    x = np.zeros_like(rhs) if x0 is None else np.array(x0, dtype=np.complex128)
    r = rhs - apply(x) if x0 is not None else rhs.copy()
    bnorm = np.linalg.norm(rhs)
    if bnorm == 0:
        return np.zeros_like(rhs), 0
    p = r.copy()
    rr = np.vdot(r, r).real
    for it in range(1, max_iter + 1):
        if np.sqrt(rr) <= tol * bnorm:
            return x, it - 1
        Ap = apply(p)
        pAp = np.vdot(p, Ap).real
        if pAp <= 0:
            raise SingularFrameOperator(f"operator is not positive definite (p*Ap = {pAp:.3e})")
        alpha = rr / pAp
        x = x + alpha * p
        r = r - alpha * Ap
        rr_new = np.vdot(r, r).real
        p = r + (rr_new / rr) * p
        rr = rr_new
    if np.sqrt(rr) <= tol * bnorm:
        return x, max_iter
    raise NotConverged(max_iter, "conjugate gradient")


def _rayleigh(apply, x):
    return np.vdot(x, apply(x)).real / np.vdot(x, x).real


def power_iteration(apply, x0, iters=500, tol=1e-10):
    """Largest eigenvalue of a positive self-adjoint operator.

    Converged when successive Rayleigh quotients differ by at most
    ``tol * |lambda|``.
    """
    x = np.asarray(x0, dtype=np.complex128)
    x = x / np.linalg.norm(x)
    prev = None
    for it in range(iters):
        y = apply(x)
        lam = np.vdot(x, y).real
        ny = np.linalg.norm(y)
        if ny == 0:
            return 0.0
        if prev is not None and abs(lam - prev) <= tol * abs(lam):
            log.debug("power iteration converged after %d steps", it)
            return float(lam)
        prev = lam
        x = y / ny
    raise NotConverged(iters, "power iteration")


def inverse_iteration(apply, x0, iters=500, tol=1e-10, cg_tol=None):
    """Smallest eigenvalue via inverse iteration with CG inner solves."""
    if cg_tol is None:
        cg_tol = max(tol * 1e-2, 1e-14)
    x = np.asarray(x0, dtype=np.complex128)
    x = x / np.linalg.norm(x)
    prev = _rayleigh(apply, x)
    for it in range(iters):
        y, _ = conjugate_gradient(apply, x, tol=cg_tol, x0=x / max(prev, 1e-300))
        x = y / np.linalg.norm(y)
        lam = _rayleigh(apply, x)
        if abs(lam - prev) <= tol * abs(lam):
            log.debug("inverse iteration converged after %d steps", it + 1)
            return float(lam)
        prev = lam
    raise NotConverged(iters, "inverse iteration")


def lanczos_extremes(apply, n, tol=1e-10, max_dim=None, seed=0, check_every=10,
                     return_vectors=False):
    """Smallest and largest eigenvalue of a Hermitian operator on C^n.

    Lanczos with full reorthogonalization.  When the Krylov space becomes
    invariant (common for operators with few distinct eigenvalues, e.g. tight
    frames) the iteration restarts from a random vector orthogonal to the
    basis instead of stopping, so no eigenspace is missed.  Converged when the
    Ritz residual bound ``|beta_m s_m|`` of both extreme Ritz pairs is at most
    ``tol * max|theta|``.

    Returns
    -------
    (lam_min, lam_max) : tuple of float
        Followed by the two unit Ritz vectors when ``return_vectors`` is set.
    """
    if max_dim is None:
        max_dim = n
    max_dim = min(max_dim, n)
    rng = np.random.default_rng(seed)

    def fresh(Q):
        v = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        for _ in range(2):
            if Q:
                B = np.array(Q).T
                v = v - B @ (B.conj().T @ v)
        return v / np.linalg.norm(v)

    Q = [fresh([])]
    alphas, betas = [], []
    for m in range(1, max_dim + 1):
        w = apply(Q[-1])
        alpha = np.vdot(Q[-1], w).real
        alphas.append(alpha)
        B = np.array(Q).T
        for _ in range(2):
            w = w - B @ (B.conj().T @ w)
        beta = np.linalg.norm(w)
        T = np.diag(alphas) + np.diag(betas, 1) + np.diag(betas, -1)
        done = m == max_dim
        if m % check_every == 0 or done or beta <= 1e-14 * max(abs(alpha), 1.0):
            theta, S = np.linalg.eigh(T)
            scale = max(abs(theta[0]), abs(theta[-1]), 1e-300)
            res = beta * np.abs(S[-1, [0, -1]])
            if done or np.all(res <= tol * scale):
                log.debug("Lanczos converged at dimension %d", m)
                if return_vectors:
                    V = B @ S[:, [0, -1]]
                    return float(theta[0]), float(theta[-1]), V[:, 0], V[:, 1]
                return float(theta[0]), float(theta[-1])
        if beta <= 1e-12 * max(abs(alpha), 1.0):
            # invariant subspace: continue in its orthogonal complement
            betas.append(0.0)
            Q.append(fresh(Q))
        else:
            betas.append(beta)
            Q.append(w / beta)
    raise NotConverged(max_dim, "Lanczos")  # pragma: no cover
