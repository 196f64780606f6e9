"""The nine analysis settings, outcome statistics and expectation estimates.

Every setting applies optional carrier pulses ``R(pi/2, 3pi/2)`` (turns
``sigma_x`` into ``sigma_z``) or ``R(pi/2, pi)`` (turns ``sigma_y`` into
``sigma_z``) to each ion and then reads both ions out in the ``|x1 x2>``
basis. Outcome label ``"x1x2"`` uses ``'1'`` for a fluorescing (S1/2) ion.

Counts are drawn with :meth:`numpy.random.Generator.multinomial` on a PCG64
generator seeded from a :class:`numpy.random.SeedSequence`; per-setting
streams are the children ``SeedSequence(seed).spawn(9)`` would return.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import matcore, qstate
from .errors import DuplicateSetting, IncompleteSettings

OUTCOMES = ("00", "01", "10", "11")
DEFAULT_SHOTS = 200

X_ROTATION = (math.pi / 2, 3 * math.pi / 2)
Y_ROTATION = (math.pi / 2, math.pi)

# sigma_z of ion 1 / ion 2 for each outcome, with |0> the +1 eigenvector
_Z1 = np.array([1.0, 1.0, -1.0, -1.0])
_Z2 = np.array([1.0, -1.0, 1.0, -1.0])

_PAULI_FOR_ROTATION = {None: 3, X_ROTATION: 1, Y_ROTATION: 2}


@dataclass(frozen=True)
class MeasurementSetting:
    id: int
    rot1: tuple[float, float] | None
    rot2: tuple[float, float] | None
    bold_observables: tuple[tuple[int, int], ...]

    @property
    def measured(self) -> tuple[tuple[int, int], tuple[int, int], tuple[int, int]]:
        """Pauli indices read out as (sigma_z of ion 1, of ion 2, their product)."""
        a = _PAULI_FOR_ROTATION[self.rot1]
        b = _PAULI_FOR_ROTATION[self.rot2]
        return (a, 0), (0, b), (a, b)


def _setting(id_, rot1, rot2, bold_mask) -> MeasurementSetting:
    draft = MeasurementSetting(id_, rot1, rot2, ())
    bold = tuple(p for p, keep in zip(draft.measured, bold_mask) if keep)
    return MeasurementSetting(id_, rot1, rot2, bold)


_SETTINGS = (
    _setting(1, None, None, (True, True, True)),
    _setting(2, X_ROTATION, None, (True, False, True)),
    _setting(3, Y_ROTATION, None, (True, False, True)),
    _setting(4, None, X_ROTATION, (False, True, True)),
    _setting(5, None, Y_ROTATION, (False, True, True)),
    _setting(6, X_ROTATION, X_ROTATION, (False, False, True)),
    _setting(7, X_ROTATION, Y_ROTATION, (False, False, True)),
    _setting(8, Y_ROTATION, X_ROTATION, (False, False, True)),
    _setting(9, Y_ROTATION, Y_ROTATION, (False, False, True)),
)


def settings_table() -> list[MeasurementSetting]:
    return list(_SETTINGS)


def setting_by_id(setting_id: int) -> MeasurementSetting:
    if not 1 <= setting_id <= len(_SETTINGS):
        raise ValueError(f"no measurement setting with id {setting_id}")
    return _SETTINGS[setting_id - 1]


def carrier_unitary(theta: float, phi: float) -> np.ndarray:
    """Single-ion ``exp[i theta/2 (sigma_x cos(phi) - sigma_y sin(phi))]``."""
    gen = qstate.SX * math.cos(phi) - qstate.SY * math.sin(phi)
    return math.cos(theta / 2) * qstate.I2 + 1j * math.sin(theta / 2) * gen


def setting_unitary(
    setting: MeasurementSetting, crosstalk: float = 0.0, angle_error: float = 0.0
) -> np.ndarray:
    """Two-ion analysis rotation for one setting.

    Args:
        setting: the setting to realise.
        crosstalk: intensity leakage onto the neighbouring ion; the neighbour
            is rotated by ``theta * sqrt(crosstalk)``.
        angle_error: fractional pulse-area error, ``theta -> theta * (1 + angle_error)``.
    """
    u = np.eye(4, dtype=complex)
    leak = math.sqrt(crosstalk)
    for ion, rot in ((1, setting.rot1), (2, setting.rot2)):
        if rot is None:
            continue
        theta = rot[0] * (1.0 + angle_error)
        on, off = carrier_unitary(theta, rot[1]), carrier_unitary(theta * leak, rot[1])
        pulse = np.kron(on, off) if ion == 1 else np.kron(off, on)
        u = pulse @ u
    return u


def _flip_matrix(p: float) -> np.ndarray:
    single = np.array([[1 - p, p], [p, 1 - p]])
    return np.kron(single, single)


def outcome_probabilities(
    rho,
    setting: MeasurementSetting,
    crosstalk: float = 0.0,
    angle_error: float = 0.0,
    readout_flip: float = 0.0,
) -> dict[str, float]:
    """Born-rule probabilities of the four outcomes of ``setting``."""
    u = setting_unitary(setting, crosstalk, angle_error)
    p = np.real(np.diag(u @ matcore.as_matrix(rho) @ u.conj().T))
    if np.min(p) < -1e-12:
        raise ValueError(f"negative outcome probability {np.min(p):.3e}; rho not physical")
    p = np.clip(p, 0.0, None)
    if readout_flip:
        p = _flip_matrix(readout_flip) @ p
    p = p / p.sum()
    return dict(zip(OUTCOMES, p.tolist()))


@dataclass
class CountsRecord:
    """Outcome counts for one setting.

    Counts are normally integers; real-valued counts are accepted so that
    exact (infinite-statistics) data can be fed through the same pipeline.
    """

    setting_id: int
    counts: dict[str, float]
    shots: float = field(default=None)

    def __post_init__(self):
        self.counts = {k: self.counts.get(k, 0) for k in OUTCOMES}
        if set(self.counts) != set(OUTCOMES):
            raise ValueError(f"unknown outcome labels in {self.counts}")
        if any(n < 0 for n in self.counts.values()):
            raise ValueError("counts must be non-negative")
        total = sum(self.counts.values())
        if self.shots is None:
            self.shots = total
        if abs(total - self.shots) > 1e-9 * max(1.0, self.shots):
            raise ValueError(f"counts sum to {total}, expected {self.shots} shots")

    def frequencies(self) -> np.ndarray:
        n = np.array([self.counts[k] for k in OUTCOMES], dtype=float)
        return n / self.shots

    def to_dict(self) -> dict:
        return {"setting_id": self.setting_id, "shots": self.shots, "counts": dict(self.counts)}

    @classmethod
    def from_dict(cls, d) -> "CountsRecord":
        return cls(int(d["setting_id"]), dict(d["counts"]), d["shots"])


def sample_counts(
    rho,
    setting: MeasurementSetting,
    shots: int = DEFAULT_SHOTS,
    seed=None,
    **systematics,
) -> CountsRecord:
    if shots < 1:
        raise ValueError("shots must be >= 1")
    p = np.array(list(outcome_probabilities(rho, setting, **systematics).values()))
    rng = np.random.default_rng(seed)
    n = rng.multinomial(shots, p)
    return CountsRecord(setting.id, dict(zip(OUTCOMES, n.tolist())), int(shots))


def child_seed(seed, index: int) -> np.random.SeedSequence:
    """The ``index``-th spawned child of ``seed``, without mutating ``seed``."""
    if not isinstance(seed, np.random.SeedSequence):
        seed = np.random.SeedSequence(seed)
    return np.random.SeedSequence(seed.entropy, spawn_key=seed.spawn_key + (index,))


def simulate_dataset(rho, shots: int = DEFAULT_SHOTS, seed=None, **systematics) -> list[CountsRecord]:
    """Counts for all nine settings, each with its own spawned seed."""
    seeds = [child_seed(seed, k) for k in range(len(_SETTINGS))]
    return [sample_counts(rho, s, shots, ss, **systematics) for s, ss in zip(_SETTINGS, seeds)]


def exact_dataset(rho, shots: float = 1.0, **systematics) -> list[CountsRecord]:
    """Fractional counts equal to ``shots * p``: zero-noise data."""
    records = []
    for s in _SETTINGS:
        p = outcome_probabilities(rho, s, **systematics)
        records.append(CountsRecord(s.id, {k: shots * v for k, v in p.items()}, shots))
    return records


def _check_complete(records) -> dict[int, CountsRecord]:
    by_id: dict[int, CountsRecord] = {}
    for r in records:
        if r.setting_id in by_id:
            raise DuplicateSetting(f"setting {r.setting_id} appears more than once")
        by_id[r.setting_id] = r
    missing = sorted(set(range(1, len(_SETTINGS) + 1)) - set(by_id))
    if missing:
        raise IncompleteSettings(f"missing settings {missing}")
    extra = sorted(set(by_id) - set(range(1, len(_SETTINGS) + 1)))
    if extra:
        raise IncompleteSettings(f"unknown settings {extra}")
    return by_id


def setting_expectations(record: CountsRecord) -> dict[tuple[int, int], float]:
    """All three signed averages of one record, keyed by the Pauli product they estimate."""
    if record.shots <= 0:
        raise ValueError(f"setting {record.setting_id} has no shots")
    f = record.frequencies()
    z1, z2, z12 = setting_by_id(record.setting_id).measured
    return {z1: float(f @ _Z1), z2: float(f @ _Z2), z12: float(f @ (_Z1 * _Z2))}


def estimate_expectations(records) -> dict[tuple[int, int], float]:
    """<sigma_i (x) sigma_j> for all 16 products, using only the bold entries."""
    by_id = _check_complete(records)
    out = {(0, 0): 1.0}
    for sid, setting in enumerate(_SETTINGS, start=1):
        values = setting_expectations(by_id[sid])
        for p in setting.bold_observables:
            out[p] = float(np.clip(values[p], -1.0, 1.0))
    return out
