"""Entanglement figures of merit for two-qubit density matrices."""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass

import numpy as np

from . import matcore, qstate

# roundoff allowance for the spectrum of rho * rho_tilde
NEGATIVE_EIG_TOL = 1e-10
PHASE_TOL = 1e-12

_YY = np.kron(qstate.SY, qstate.SY)
_SX_PLUS_Z = (qstate.SX + qstate.SZ) / math.sqrt(2.0)
_SX_MINUS_Z = (qstate.SX - qstate.SZ) / math.sqrt(2.0)
CHSH_OPERATOR = (
    np.kron(qstate.SX, _SX_MINUS_Z)
    + np.kron(qstate.SX, _SX_PLUS_Z)
    + np.kron(qstate.SZ, _SX_MINUS_Z)
    - np.kron(qstate.SZ, _SX_PLUS_Z)
)

_IDX_10 = 2
_IDX_01 = 1


def binary_entropy(x: float) -> float:
    if x <= 0.0 or x >= 1.0:
        return 0.0
    return -x * math.log2(x) - (1.0 - x) * math.log2(1.0 - x)


def _psd_sqrt(rho) -> np.ndarray:
    w, v = matcore.eigh(rho)
    if w[0] < -NEGATIVE_EIG_TOL:
        raise ValueError(f"rho has eigenvalue {w[0]:.3e}; not physical")
    return (v * np.sqrt(np.clip(w, 0.0, None))) @ v.conj().T


def concurrence_eof(rho) -> tuple[float, float]:
    """Wootters concurrence and entanglement of formation (in ebits).

    The square roots of the eigenvalues of ``rho rho~`` are taken from the
    Hermitian matrix ``sqrt(rho) rho~ sqrt(rho)``, which has the same spectrum.
    """
    rho = matcore.check_hermitian(rho)
    rho_tilde = _YY @ rho.conj() @ _YY
    s = _psd_sqrt(rho)
    w = matcore.eigvalsh(s @ rho_tilde @ s)
    if w[0] < -NEGATIVE_EIG_TOL:
        raise ValueError(f"rho * rho_tilde has eigenvalue {w[0]:.3e}; rho not physical")
    lam = np.sqrt(np.clip(w, 0.0, None))[::-1]
    c = float(min(1.0, max(0.0, lam[0] - lam[1] - lam[2] - lam[3])))
    e = binary_entropy((1.0 + math.sqrt(max(0.0, 1.0 - c * c))) / 2.0)
    return c, e


def ppt_min_eigenvalue(rho) -> tuple[float, np.ndarray]:
    """Smallest eigenvalue and full ascending spectrum of the partial transpose."""
    w = matcore.eigvalsh(matcore.partial_transpose(rho, "second"))
    return float(w[0]), w


def chsh_value(rho) -> float:
    """|<A>| for the fixed CHSH operator A built from sigma_x, sigma_z and (sigma_x +- sigma_z)/sqrt2."""
    return float(abs(np.trace(matcore.as_matrix(rho) @ CHSH_OPERATOR).real))


@dataclass(frozen=True)
class OverlapPhase:
    beta_m: float
    f_m: float
    phase_undefined: bool


def max_overlap_phase(rho) -> OverlapPhase:
    """Best overlap with (|10> + e^{i beta}|01>)/sqrt2 and the maximising beta in [0, 2pi)."""
    rho = matcore.as_matrix(rho)
    pop = (rho[_IDX_10, _IDX_10].real + rho[_IDX_01, _IDX_01].real) / 2.0
    coh = rho[_IDX_10, _IDX_01]
    if abs(coh) < PHASE_TOL:
        return OverlapPhase(0.0, float(pop), True)
    beta = (-np.angle(coh)) % (2.0 * math.pi)
    return OverlapPhase(float(beta), float(pop + abs(coh)), False)


def psi_beta(beta: float) -> np.ndarray:
    return (qstate.basis_ket(1, 0) + np.exp(1j * beta) * qstate.basis_ket(0, 1)) / math.sqrt(2.0)


@dataclass(frozen=True)
class EntanglementReport:
    eof: float
    concurrence: float
    ppt_min_eig: float
    chsh: float
    beta_m: float
    f_m: float

    def to_dict(self) -> dict:
        return asdict(self)


def analyze(rho) -> EntanglementReport:
    c, e = concurrence_eof(rho)
    ppt, _ = ppt_min_eigenvalue(rho)
    ov = max_overlap_phase(rho)
    return EntanglementReport(e, c, ppt, chsh_value(rho), ov.beta_m, ov.f_m)
