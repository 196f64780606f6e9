"""
Phase drift of Psi+ and decay of Phi+
=====================================

The two ions sit in slightly different magnetic fields, so the Psi+
coherence picks up a relative phase at 2*pi*170 rad/s. After about 3 ms
Psi+ has turned into Psi-. Phi+ instead is sensitive to collective field
noise and loses coherence within a few hundred microseconds.
"""

import numpy as np

from iontomo import experiment, pulsesim, qstate

# Switch the decay off to isolate the deterministic rotation.
no_decay = pulsesim.DecoherenceParams(gamma_collective=0.0, gamma_differential=0.0)
cfg = experiment.ExperimentConfig(noise=no_decay, seed=1)
times = np.linspace(0, 6e-3, 13)
rows = experiment.decay_scan(cfg, times)

print("   t [ms]   beta_m   omega*t   F(Psi-)")
psi_minus = qstate.bell_state("PsiMinus")
for r in rows:
    f_minus = qstate.fidelity_pure(r["rho"], psi_minus)
    print(f"{1e3 * r['t']:8.2f} {r['beta_m']:8.3f} {no_decay.omega_beta * r['t']:9.3f} {f_minus:9.3f}")

slope = np.polyfit(times, [r["beta_m"] for r in rows], 1)[0]
print(f"fitted slope {slope:.1f} rad/s, expected {no_decay.omega_beta:.1f}")

# Phi+ with the default collective dephasing; exact counts remove shot noise.
phi_cfg = experiment.ExperimentConfig(bell_kind="PhiPlus")
print("\n   t [us]   F(Phi+)")
for r in experiment.decay_scan(phi_cfg, np.linspace(0, 600e-6, 7), exact=True):
    print(f"{1e6 * r['t']:8.0f} {r['fidelity']:9.3f}")
