"""
Entanglement of Psi+ over long hold times
=========================================

Differential dephasing slowly erodes the Psi+ coherence. The entanglement
of formation and the smallest eigenvalue of the partial transpose both
creep towards zero.
"""

import numpy as np

from iontomo import experiment

cfg = experiment.ExperimentConfig(preset="realistic", seed=8)
times = np.linspace(0, 20e-3, 11)

# With 200 shots per setting the curves are noisy, like real data.
noisy = experiment.decay_scan(cfg, times)
clean = experiment.decay_scan(cfg, times, exact=True)

print("   t [ms]   E (200 shots)   E (exact)   PPT min (200)   PPT min (exact)")
for a, b in zip(noisy, clean):
    print(
        f"{1e3 * a['t']:8.1f} {a['eof']:14.3f} {b['eof']:11.3f} "
        f"{a['ppt_min_eig']:15.3f} {b['ppt_min_eig']:17.3f}"
    )
