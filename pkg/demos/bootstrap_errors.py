"""
Error bars by parametric bootstrap
==================================

Treat the reconstructed state as the truth, simulate many new experiments
from it, reconstruct each one and look at the spread. Quadrupling the shots
should halve the error bars.
"""

from iontomo import experiment, measure, qstate, recon, stats

rho_true = experiment.prepare_state(experiment.ExperimentConfig(preset="realistic"))
rho_hat = recon.mle_reconstruct(measure.simulate_dataset(rho_true, 200, 11)).rho

report = stats.bootstrap_errors(rho_hat, 200, trials=200, seed=1, workers=4)
values = stats.state_quantities(rho_hat, qstate.bell_state("PsiPlus"))
for name in ("fidelity", "eof", "chsh", "ppt_eig_0", "ppt_eig_1", "ppt_eig_2", "ppt_eig_3"):
    print(f"{name:10s} {stats.format_with_error(values[name], report[name].std)}")

more = stats.bootstrap_errors(rho_hat, 800, trials=200, seed=1, workers=4)
for name in ("fidelity", "zz"):
    print(f"{name}: std ratio 200 -> 800 shots = {report[name].std / more[name].std:.2f}")
