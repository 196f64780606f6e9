"""Parametric bootstrap of reconstruction uncertainties.

Each trial re-simulates the nine-setting experiment from the reconstructed
state, reconstructs again and evaluates every figure of merit. Trial ``k``
draws from ``SeedSequence(seed, spawn_key=(k,))``, which is what
``SeedSequence(seed).spawn(...)[k]`` yields, so results do not depend on
the order or process in which trials run.
"""

from __future__ import annotations

import math
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import entangle, measure, qstate, recon
from .errors import BootstrapDegenerate, NotConverged, TomographyError

MAX_FAILED_FRACTION = 0.05
DEFAULT_TRIALS = 200

QUANTITIES = (
    "fidelity",
    "eof",
    "concurrence",
    "ppt_min_eig",
    "chsh",
    "zz",
    "ppt_eig_0",
    "ppt_eig_1",
    "ppt_eig_2",
    "ppt_eig_3",
)

_ZZ = qstate.pauli_operator((3, 3))


def trial_seed(seed: int, trial: int) -> np.random.SeedSequence:
    return measure.child_seed(seed, trial)


def state_quantities(rho, target) -> dict[str, float]:
    """All bootstrapped figures of merit of one density matrix."""
    c, e = entangle.concurrence_eof(rho)
    _, ppt = entangle.ppt_min_eigenvalue(rho)
    out = {
        "fidelity": qstate.fidelity_pure(rho, target),
        "eof": e,
        "concurrence": c,
        "ppt_min_eig": float(ppt[0]),
        "chsh": entangle.chsh_value(rho),
        "zz": float(np.trace(rho @ _ZZ).real),
    }
    out.update({f"ppt_eig_{i}": float(w) for i, w in enumerate(ppt)})
    return out


def _run_trial(args):
    rho_hat, shots, seed, trial, target, systematics = args
    records = measure.simulate_dataset(rho_hat, shots, trial_seed(seed, trial), **systematics)
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", NotConverged)
            rep = recon.mle_reconstruct(records)
    except (TomographyError, np.linalg.LinAlgError):
        return trial, None
    return trial, state_quantities(rep.rho, target)


@dataclass(frozen=True)
class QuantityStats:
    mean: float
    std: float
    samples: int


@dataclass(frozen=True)
class BootstrapReport:
    quantities: dict[str, QuantityStats]
    trials: int
    failed: int

    def __getitem__(self, name: str) -> QuantityStats:
        return self.quantities[name]

    def to_dict(self) -> dict:
        return {
            "trials": self.trials,
            "failed": self.failed,
            "quantities": {
                k: {"mean": q.mean, "std": q.std, "samples": q.samples}
                for k, q in self.quantities.items()
            },
        }


def summarize(samples: dict[int, dict[str, float]], trials: int) -> BootstrapReport:
    """Aggregate per-trial results; the result depends only on the set of trials."""
    ok = [samples[k] for k in sorted(samples) if samples[k] is not None]
    failed = trials - len(ok)
    if failed > MAX_FAILED_FRACTION * trials:
        raise BootstrapDegenerate(f"{failed} of {trials} bootstrap trials failed")
    stats = {}
    for name in QUANTITIES:
        x = np.array([s[name] for s in ok])
        std = float(np.std(x, ddof=1)) if len(x) > 1 else 0.0
        stats[name] = QuantityStats(float(np.mean(x)), std, len(x))
    return BootstrapReport(stats, trials, failed)


def bootstrap_errors(
    rho_hat,
    shots_per_setting: int = measure.DEFAULT_SHOTS,
    trials: int = DEFAULT_TRIALS,
    seed: int = 0,
    target=None,
    workers: int = 1,
    **systematics,
) -> BootstrapReport:
    """Monte-Carlo error bars of every figure of merit for ``rho_hat``.

    Args:
        rho_hat: reconstructed state used as the sampling model.
        shots_per_setting: repetitions per analysis setting.
        trials: number of simulated experiments (at least 2).
        seed: master seed.
        target: pure state for the fidelity column; defaults to Psi+.
        workers: processes to spread the trials over.
        **systematics: ``crosstalk``, ``angle_error`` or ``readout_flip``
            applied to the simulated analysis pulses.
    """
    if trials < 2:
        raise ValueError("bootstrap needs at least 2 trials")
    if shots_per_setting < 1:
        raise ValueError("shots_per_setting must be >= 1")
    target = qstate.bell_state(qstate.BellKind.PSI_PLUS) if target is None else target
    rho_hat = np.asarray(rho_hat, dtype=complex)
    jobs = [(rho_hat, shots_per_setting, seed, k, target, systematics) for k in range(trials)]
    if workers > 1:
        with ProcessPoolExecutor(workers) as pool:
            results = dict(pool.map(_run_trial, jobs, chunksize=max(1, trials // (4 * workers))))
    else:
        results = dict(map(_run_trial, jobs))
    return summarize(results, trials)


def format_with_error(value: float, err: float) -> str:
    """Compact ``value(err)`` notation with one significant digit of error, e.g. 0.79(4)."""
    if not math.isfinite(err) or err <= 0:
        return f"{value:.3f}"
    decimals = max(0, -math.floor(math.log10(err)))
    digit = round(err * 10**decimals)
    if digit >= 10:
        decimals = max(0, decimals - 1)
        digit = round(err * 10**decimals)
    if decimals == 0:
        return f"{value:.0f}({digit})"
    return f"{value:.{decimals}f}({digit})"
