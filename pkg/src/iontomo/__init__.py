"""Simulated two-ion Bell-state tomography.

Pulse-sequence preparation, nine-setting projective measurement, linear and
maximum-likelihood reconstruction, entanglement measures, parametric
bootstrap and dephasing dynamics.
"""

from .entangle import analyze, chsh_value, concurrence_eof, max_overlap_phase, ppt_min_eigenvalue
from .experiment import ExperimentConfig, decay_scan, prepare_state
from .measure import CountsRecord, estimate_expectations, settings_table, simulate_dataset
from .pulsesim import DecoherenceParams, bell_sequence, dephase_evolution, run_sequence
from .qstate import BellKind, bell_state, fidelity_pure
from .recon import mle_reconstruct
from .stats import bootstrap_errors

__version__ = "0.1.0"
