"""Two-qubit states: Bell states, the Pauli product basis and fidelity.

Conventions
-----------
Basis vectors are ``|x1 x2>`` with index ``2*x1 + x2``. ``|1>`` is the
S1/2 ground level (fluorescing, "bright") and ``|0>`` the D5/2 level ("dark").

The single-qubit Pauli matrices are written in the ``(|0>, |1>)`` ordering
with the textbook ``sigma_x`` and ``sigma_y``. The carrier-rotation identities
used by the analysis pulses,

    R(pi/2, pi)   sigma_y R(pi/2, pi)^dag   = sigma_z
    R(pi/2, 3pi/2) sigma_x R(pi/2, 3pi/2)^dag = sigma_z

with ``R(theta, phi) = exp[i theta/2 (sigma_x cos(phi) - sigma_y sin(phi))]``,
hold only when ``sigma_z = [sigma_x, sigma_y] / 2i``. That fixes
``sigma_z = diag(+1, -1)``: the dark state ``|0>`` is the +1 eigenvector and
``<sigma_z> = P(dark) - P(bright)``. ``tests/test_qstate.py`` checks both
identities.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field

import numpy as np

from . import matcore
from .errors import MissingCoefficient

I2 = np.eye(2, dtype=complex)
SX = np.array([[0, 1], [1, 0]], dtype=complex)
SY = np.array([[0, -1j], [1j, 0]], dtype=complex)
SZ = np.array([[1, 0], [0, -1]], dtype=complex)
PAULIS = (I2, SX, SY, SZ)

# (i, j) -> sigma_i (x) sigma_j, with 0..3 = I, x, y, z
PAULI_INDICES: tuple[tuple[int, int], ...] = tuple(itertools.product(range(4), repeat=2))

FIDELITY_CLAMP = 1e-10
PHYSICAL_TRACE_TOL = 1e-8
PHYSICAL_EIG_TOL = 1e-8


class BellKind(enum.Enum):
    PSI_PLUS = "PsiPlus"
    PSI_MINUS = "PsiMinus"
    PHI_PLUS = "PhiPlus"
    PHI_MINUS = "PhiMinus"

    @classmethod
    def parse(cls, value) -> "BellKind":
        if isinstance(value, cls):
            return value
        key = str(value).replace("_", "").replace("-", "").lower()
        for kind in cls:
            if kind.value.lower() == key:
                return kind
        raise ValueError(f"unknown Bell state {value!r}")


def basis_ket(x1: int, x2: int) -> np.ndarray:
    ket = np.zeros(4, dtype=complex)
    ket[2 * x1 + x2] = 1.0
    return ket


def bell_state(kind: BellKind | str) -> np.ndarray:
    """Psi+- = (|10> +- |01>)/sqrt2, Phi+- = (|11> +- |00>)/sqrt2."""
    kind = BellKind.parse(kind)
    if kind in (BellKind.PSI_PLUS, BellKind.PSI_MINUS):
        a, b = basis_ket(1, 0), basis_ket(0, 1)
    else:
        a, b = basis_ket(1, 1), basis_ket(0, 0)
    sign = 1.0 if kind in (BellKind.PSI_PLUS, BellKind.PHI_PLUS) else -1.0
    return (a + sign * b) / np.sqrt(2.0)


def projector(psi) -> np.ndarray:
    psi = np.asarray(psi, dtype=complex)
    return np.outer(psi, psi.conj())


def pauli_operator(p: tuple[int, int]) -> np.ndarray:
    i, j = p
    if not (0 <= i <= 3 and 0 <= j <= 3):
        raise ValueError(f"Pauli index out of range: {p}")
    return np.kron(PAULIS[i], PAULIS[j])


def fano_coefficients(rho) -> dict[tuple[int, int], float]:
    """lambda_p = tr(rho O_p) / 4 for all 16 Pauli products."""
    rho = matcore.as_matrix(rho)
    return {p: float(np.trace(rho @ pauli_operator(p)).real) / 4.0 for p in PAULI_INDICES}


def matrix_from_coefficients(coeffs) -> np.ndarray:
    """Sum of lambda_p * O_p. The result need not be positive semi-definite."""
    out = np.zeros((4, 4), dtype=complex)
    for p in PAULI_INDICES:
        try:
            lam = coeffs[p]
        except KeyError:
            raise MissingCoefficient(f"missing Fano coefficient {p}") from None
        out += float(lam) * pauli_operator(p)
    return out


def maximally_mixed() -> np.ndarray:
    return np.eye(4, dtype=complex) / 4.0


def fidelity_pure(rho, psi) -> float:
    """<psi|rho|psi>, with roundoff-sized excursions clamped into [0, 1]."""
    rho = matcore.as_matrix(rho)
    psi = np.asarray(psi, dtype=complex)
    f = np.vdot(psi, rho @ psi)
    if abs(f.imag) > FIDELITY_CLAMP:
        raise ValueError(f"fidelity has imaginary part {f.imag:.3e}; rho not Hermitian?")
    f = f.real
    if -FIDELITY_CLAMP <= f < 0.0:
        return 0.0
    if 1.0 < f <= 1.0 + FIDELITY_CLAMP:
        return 1.0
    if not 0.0 <= f <= 1.0:
        raise ValueError(f"fidelity {f!r} outside [0, 1]; rho or psi not physical")
    return float(f)


@dataclass(frozen=True)
class PhysicalityReport:
    hermitian_error: float
    trace_error: float
    min_eigenvalue: float
    failures: tuple[str, ...] = field(default=())

    def __bool__(self) -> bool:
        return not self.failures


def is_physical(m) -> PhysicalityReport:
    """Check Hermiticity, unit trace and positivity of a 4x4 matrix.

    The report is truthy when all three checks pass; ``failures`` names the
    ones that did not.
    """
    a = matcore.as_matrix(m)
    if a.shape != (4, 4):
        raise matcore.BadDimension(f"expected 4x4 matrix, got {a.shape}")
    herm = matcore.hermiticity_error(a)
    trace_err = abs(np.trace(a) - 1.0)
    failures = []
    if herm > matcore.HERMITIAN_ATOL:
        failures.append("hermitian")
        min_eig = float(np.min(np.linalg.eigvals(a).real))
    else:
        min_eig = float(matcore.eigvalsh(a)[0])
    if trace_err > PHYSICAL_TRACE_TOL:
        failures.append("trace")
    if min_eig < -PHYSICAL_EIG_TOL:
        failures.append("positivity")
    return PhysicalityReport(herm, float(trace_err), min_eig, tuple(failures))


def random_density_matrix(rng: np.random.Generator, rank: int = 4) -> np.ndarray:
    """Random two-qubit state from the induced (Ginibre) measure."""
    g = rng.normal(size=(4, rank)) + 1j * rng.normal(size=(4, rank))
    rho = g @ g.conj().T
    return rho / np.trace(rho).real


def random_pure_state(rng: np.random.Generator) -> np.ndarray:
    psi = rng.normal(size=4) + 1j * rng.normal(size=4)
    return psi / np.linalg.norm(psi)


def werner_state(p: float, psi=None) -> np.ndarray:
    """p |psi><psi| + (1 - p) I/4, with psi defaulting to Psi+."""
    psi = bell_state(BellKind.PSI_PLUS) if psi is None else psi
    return p * projector(psi) + (1.0 - p) * maximally_mixed()
