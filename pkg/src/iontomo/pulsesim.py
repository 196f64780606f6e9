"""Two ions plus the breathing mode: carrier and blue-sideband pulses.

The register state lives on ``qubit (x) qubit (x) Fock(n_max)`` with amplitude
index ``(2*x1 + x2) * (n_max + 1) + n``.

Pulse generators, with ``sigma+ = |0><1|`` raising S (``|1>``) to D (``|0>``):

* carrier on ion a:   ``R_a(theta, phi) = exp[i theta/2 (sigma_x cos(phi) - sigma_y sin(phi))]``
  which equals ``exp[i theta/2 (e^{i phi} sigma+ + e^{-i phi} sigma-)]``;
* blue sideband:      ``R+_a(theta, phi) = exp[i theta/2 (e^{i phi} sigma+ b^dag + e^{-i phi} sigma- b)]``.

The sideband form is the Hermitian reading of the printed generator (which
is not Hermitian for general phi). With this phase choice the sequence
``R2+(pi, +-pi/2) R2(pi, pi/2) R1+(pi/2, -pi/2)`` takes ``|11, 0>`` to
``-(|10> +- |01>)/sqrt2 (x) |0>``, i.e. the target Bell state up to a global
sign, which the tests pin down.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass

import numpy as np

from . import matcore, qstate
from .errors import BadCutoff, CutoffExceeded, NegativeTime

CARRIER = "carrier"
BLUE_SIDEBAND = "blue_sideband"
PULSE_KINDS = (CARRIER, BLUE_SIDEBAND)

DEFAULT_N_MAX = 3
CUTOFF_GUARD = 1e-8

# intensity leakage onto the neighbouring ion when addressing one ion
REALISTIC_CROSSTALK = 2.5e-3

OMEGA_BETA = 2.0 * math.pi * 170.0
# Phi coherence exp(-4 gamma_c t) halves (F = 0.75) at t = 200 us
GAMMA_COLLECTIVE = math.log(2.0) / (4.0 * 200e-6)
# Psi coherence halves at 5 ms
GAMMA_DIFFERENTIAL = math.log(2.0) / 5e-3

SIGMA_PLUS = np.array([[0, 1], [0, 0]], dtype=complex)


@dataclass(frozen=True)
class Pulse:
    ion: int
    kind: str
    theta: float
    phi: float

    def __post_init__(self):
        if self.ion not in (1, 2):
            raise ValueError(f"ion must be 1 or 2, got {self.ion}")
        if self.kind not in PULSE_KINDS:
            raise ValueError(f"unknown pulse kind {self.kind!r}")
        if self.theta < 0:
            raise ValueError(f"theta must be non-negative, got {self.theta}")

    def to_dict(self) -> dict:
        return {"ion": self.ion, "kind": self.kind, "theta": self.theta, "phi": self.phi}

    @classmethod
    def from_dict(cls, d) -> "Pulse":
        return cls(int(d["ion"]), str(d["kind"]), float(d["theta"]), float(d["phi"]))


@dataclass(frozen=True)
class DecoherenceParams:
    """Differential splitting (rad/s) and collective/differential dephasing rates (1/s)."""

    omega_beta: float = OMEGA_BETA
    gamma_collective: float = GAMMA_COLLECTIVE
    gamma_differential: float = GAMMA_DIFFERENTIAL

    def __post_init__(self):
        for name in ("omega_beta", "gamma_collective", "gamma_differential"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be non-negative")


@dataclass(frozen=True, eq=False)
class IonRegisterState:
    n_max: int
    amp: np.ndarray

    @property
    def n_levels(self) -> int:
        return self.n_max + 1

    def norm(self) -> float:
        return float(np.linalg.norm(self.amp))

    def fock_populations(self) -> np.ndarray:
        a = self.amp.reshape(4, self.n_levels)
        return np.sum(np.abs(a) ** 2, axis=0)

    def amplitude(self, x1: int, x2: int, n: int) -> complex:
        return complex(self.amp[(2 * x1 + x2) * self.n_levels + n])


def new_register(n_max: int = DEFAULT_N_MAX) -> IonRegisterState:
    """Both ions in ``|1>`` (S1/2) and the breathing mode in its ground state."""
    if n_max < 1:
        raise BadCutoff(f"Fock cutoff must be >= 1, got {n_max}")
    amp = np.zeros(4 * (n_max + 1), dtype=complex)
    amp[3 * (n_max + 1)] = 1.0
    return IonRegisterState(n_max, amp)


def _on_ion(op: np.ndarray, ion: int) -> np.ndarray:
    return np.kron(op, qstate.I2) if ion == 1 else np.kron(qstate.I2, op)


def _generator(kind: str, ion: int, phi: float, n_max: int) -> np.ndarray:
    n = n_max + 1
    raising = np.exp(1j * phi) * SIGMA_PLUS
    if kind == CARRIER:
        g = raising + raising.conj().T
        return np.kron(_on_ion(g, ion), np.eye(n))
    b = np.diag(np.sqrt(np.arange(1, n)), k=1).astype(complex)
    term = np.kron(_on_ion(raising, ion), b.conj().T)
    return term + term.conj().T


@functools.lru_cache(maxsize=256)
def _pulse_eigensystem(kind: str, ion: int, phi: float, crosstalk: float, n_max: int):
    g = _generator(kind, ion, phi, n_max)
    if crosstalk > 0:
        g = g + math.sqrt(crosstalk) * _generator(kind, 3 - ion, phi, n_max)
    return matcore.eigh(g)


def pulse_unitary(pulse: Pulse, n_max: int, crosstalk: float = 0.0) -> np.ndarray:
    """Full-space unitary of one pulse; crosstalk is an intensity fraction."""
    if crosstalk < 0:
        raise ValueError("crosstalk must be non-negative")
    w, v = _pulse_eigensystem(pulse.kind, pulse.ion, float(pulse.phi), float(crosstalk), n_max)
    return (v * np.exp(0.5j * pulse.theta * w)) @ v.conj().T


def _check_cutoff(s: IonRegisterState) -> None:
    top = s.fock_populations()[-1]
    if top > CUTOFF_GUARD:
        raise CutoffExceeded(f"population {top:.3e} in Fock level n_max={s.n_max}")


def apply_pulse(s: IonRegisterState, pulse: Pulse, crosstalk: float = 0.0) -> IonRegisterState:
    out = IonRegisterState(s.n_max, pulse_unitary(pulse, s.n_max, crosstalk) @ s.amp)
    if pulse.kind == BLUE_SIDEBAND:
        _check_cutoff(out)
    return out


def carrier_rotation(s, ion, theta, phi, crosstalk=0.0) -> IonRegisterState:
    return apply_pulse(s, Pulse(ion, CARRIER, theta, phi), crosstalk)


def sideband_rotation(s, ion, theta, phi, crosstalk=0.0) -> IonRegisterState:
    _check_cutoff(s)
    return apply_pulse(s, Pulse(ion, BLUE_SIDEBAND, theta, phi), crosstalk)


def bell_sequence(kind) -> list[Pulse]:
    """Pulses in application order that take ``|11>`` to the requested Bell state."""
    kind = qstate.BellKind.parse(kind)
    sign = 1.0 if kind in (qstate.BellKind.PSI_PLUS, qstate.BellKind.PHI_PLUS) else -1.0
    pulses = [
        Pulse(1, BLUE_SIDEBAND, math.pi / 2, -math.pi / 2),
        Pulse(2, CARRIER, math.pi, math.pi / 2),
        Pulse(2, BLUE_SIDEBAND, math.pi, sign * math.pi / 2),
    ]
    if kind in (qstate.BellKind.PHI_PLUS, qstate.BellKind.PHI_MINUS):
        pulses.append(Pulse(2, CARRIER, math.pi, 0.0))
    return pulses


def run_sequence(s: IonRegisterState, pulses, crosstalk: float = 0.0) -> IonRegisterState:
    for pulse in pulses:
        if pulse.kind == BLUE_SIDEBAND:
            _check_cutoff(s)
        s = apply_pulse(s, pulse, crosstalk)
    return s


def reduce_to_qubits(s: IonRegisterState) -> np.ndarray:
    """Trace out the motional mode."""
    a = s.amp.reshape(4, s.n_levels)
    return a @ a.conj().T


# |x1 x2> quantum numbers: collective = excitation count, differential = (x1 - x2)/2
_X1 = np.array([0, 0, 1, 1])
_X2 = np.array([0, 1, 0, 1])
_COLLECTIVE = (_X1 + _X2).astype(float)
_DIFFERENTIAL = (_X1 - _X2) / 2.0
DELTA_C = _COLLECTIVE[:, None] - _COLLECTIVE[None, :]
DELTA_D = _DIFFERENTIAL[:, None] - _DIFFERENTIAL[None, :]


def dephasing_factors(t: float, params: DecoherenceParams) -> np.ndarray:
    """Elementwise multiplier applied to rho after holding for ``t`` seconds.

    Coherence ``rho_ab`` picks up ``exp(-i omega_beta t dD)`` and decays by
    ``exp(-gamma_c t dC^2 - gamma_d t dD^2)``, where dC and dD are the
    collective and differential quantum-number differences of ``a`` and ``b``.
    """
    if t < 0:
        raise NegativeTime(f"hold time must be non-negative, got {t}")
    phase = np.exp(-1j * params.omega_beta * t * DELTA_D)
    damping = np.exp(
        -params.gamma_collective * t * DELTA_C**2 - params.gamma_differential * t * DELTA_D**2
    )
    return phase * damping


def dephase_evolution(rho, t: float, params: DecoherenceParams | None = None) -> np.ndarray:
    params = DecoherenceParams() if params is None else params
    return matcore.as_matrix(rho) * dephasing_factors(t, params)
