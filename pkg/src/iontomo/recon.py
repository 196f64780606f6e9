"""Density-matrix reconstruction from the nine-setting counts.

Pipeline: signed count averages -> linear inversion (may be non-physical)
-> projection onto the non-negative eigenspace -> maximum likelihood over
``rho = T^dag T / tr(T^dag T)`` with ``T`` lower triangular.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize

from . import matcore, measure, qstate
from .errors import DegenerateProjection, MissingObservable, NotConverged

PROB_FLOOR = 1e-12
START_REGULARIZATION = 1e-6
LOGL_TOL = 1e-9
MAX_ITERATIONS = 5000

N_PARAMS = 16
_TRIL = np.tril_indices(4, k=-1)


def linear_inversion(estimates) -> np.ndarray:
    """rho_R = sum_p <O_p> O_p / 4. Hermitian with unit trace, not necessarily PSD."""
    coeffs = {}
    for p in qstate.PAULI_INDICES:
        try:
            coeffs[p] = estimates[p] / 4.0
        except KeyError:
            raise MissingObservable(f"no expectation value for Pauli product {p}") from None
    return qstate.matrix_from_coefficients(coeffs)


def project_physical(rho_r) -> np.ndarray:
    """P rho_R P / tr(P rho_R P), P projecting onto eigenvectors with eigenvalue >= 0."""
    w, v = matcore.eigh(rho_r)
    keep = w >= 0
    norm = float(np.sum(w[keep]))
    if norm <= 1e-12:
        raise DegenerateProjection("matrix has no positive spectral weight")
    vk = v[:, keep]
    rho = (vk * w[keep]) @ vk.conj().T
    return rho / norm


def params_to_cholesky(params) -> np.ndarray:
    """16 reals -> lower-triangular T: 4 real diagonal entries, then (re, im) pairs."""
    params = np.asarray(params, dtype=float)
    t = np.diag(params[:4]).astype(complex)
    t[_TRIL] = params[4::2] + 1j * params[5::2]
    return t


def cholesky_to_params(t) -> np.ndarray:
    t = np.asarray(t, dtype=complex)
    off = t[_TRIL]
    out = np.empty(N_PARAMS)
    out[:4] = np.diag(t).real
    out[4::2] = off.real
    out[5::2] = off.imag
    return out


def rho_from_params(params) -> np.ndarray:
    t = params_to_cholesky(params)
    a = t.conj().T @ t
    return a / np.trace(a).real


def params_from_rho(rho, eps: float = START_REGULARIZATION) -> np.ndarray:
    """Cholesky parameters of ``(rho + eps I) / (1 + 4 eps)``.

    ``T`` is lower triangular with ``T^dag T = rho``; obtained from the
    ordinary Cholesky factor of the index-reversed matrix.
    """
    rho = matcore.check_hermitian(rho)
    reg = (rho + eps * np.eye(4)) / (1.0 + 4.0 * eps)
    rev = reg[::-1, ::-1]
    lower = np.linalg.cholesky(rev)
    t = lower.conj().T[::-1, ::-1]
    return cholesky_to_params(t)


class _Likelihood:
    """Multinomial log-likelihood of the counts and its gradient in T."""

    def __init__(self, records):
        projs, counts = [], []
        for r in records:
            u = measure.setting_unitary(measure.setting_by_id(r.setting_id))
            for k, label in enumerate(measure.OUTCOMES):
                row = u[k]
                # <k|U rho U^dag|k> = tr(rho Pi) with Pi = U^dag |k><k| U
                projs.append(np.outer(row.conj(), row))
                counts.append(float(r.counts[label]))
        self.projs = np.array(projs)
        self.counts = np.array(counts)
        # tr(rho Pi) = sum_ij rho_ij Pi_ji
        self._flat = self.projs.transpose(0, 2, 1).reshape(len(projs), 16)

    def probabilities(self, rho) -> np.ndarray:
        return (self._flat @ np.asarray(rho).reshape(16)).real

    def __call__(self, rho) -> float:
        p = np.maximum(self.probabilities(rho), PROB_FLOOR)
        return float(self.counts @ np.log(p))

    def value_and_grad(self, params):
        t = params_to_cholesky(params)
        a = t.conj().T @ t
        tr = np.trace(a).real
        rho = a / tr
        p = np.maximum(self.probabilities(rho), PROB_FLOOR)
        logl = float(self.counts @ np.log(p))
        g = np.einsum("k,kij->ij", self.counts / p, self.projs)
        m = (g - np.trace(g @ rho).real * np.eye(4)) / tr
        k = m @ t.conj().T
        dt = 2.0 * k.T  # d logL / d Re T_ij = 2 Re K_ji, d / d Im T_ij = -2 Im K_ji
        grad = np.empty(N_PARAMS)
        grad[:4] = np.diag(dt).real
        grad[4::2] = dt[_TRIL].real
        grad[5::2] = -dt[_TRIL].imag
        return logl, grad


def log_likelihood(rho, records) -> float:
    """sum_s sum_k n_sk ln p_sk(rho), probabilities floored at 1e-12."""
    return _Likelihood(records)(rho)


@dataclass(frozen=True, eq=False)
class MleReport:
    rho: np.ndarray
    log_likelihood: float
    iterations: int
    converged: bool
    initial_point: np.ndarray
    linear_inversion: np.ndarray
    initial_log_likelihood: float


def maximize_likelihood(records, start, max_iterations: int = MAX_ITERATIONS):
    """Climb the likelihood from the physical state ``start``.

    Returns ``(rho, logL, iterations, converged)``. Convergence means the
    last iteration changed logL by less than 1e-9, or the gradient vanished.
    """
    like = _Likelihood(records)
    x0 = params_from_rho(start)
    start_logl = like(start)
    history = [like.value_and_grad(x0)[0]]

    def objective(x):
        f, g = like.value_and_grad(x)
        return -f, -g

    def track(xk):
        history.append(like.value_and_grad(xk)[0])

    scale = max(1.0, abs(history[0]))
    res = minimize(
        objective,
        x0,
        jac=True,
        method="L-BFGS-B",
        callback=track,
        options={"maxiter": max_iterations, "ftol": LOGL_TOL / scale * 1e-2, "gtol": 1e-10},
    )
    rho = rho_from_params(res.x)
    logl = like(rho)
    if logl < start_logl:
        rho, logl = matcore.check_hermitian(start), start_logl
    last_step = abs(history[-1] - history[-2]) if len(history) > 1 else 0.0
    converged = bool(res.success or last_step < LOGL_TOL) and res.nit < max_iterations
    return rho, logl, int(res.nit), converged


def mle_reconstruct(records, max_iterations: int = MAX_ITERATIONS) -> MleReport:
    """Full reconstruction of one nine-setting dataset."""
    records = list(records)
    estimates = measure.estimate_expectations(records)
    rho_r = linear_inversion(estimates)
    rho_p = project_physical(rho_r)
    start_logl = log_likelihood(rho_p, records)
    rho, logl, nit, converged = maximize_likelihood(records, rho_p, max_iterations)
    if logl < start_logl:
        rho, logl = rho_p, start_logl
    if not converged:
        warnings.warn(f"likelihood maximisation stopped after {nit} iterations", NotConverged)
    return MleReport(rho, logl, nit, converged, rho_p, rho_r, start_logl)
