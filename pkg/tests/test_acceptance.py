"""Acceptance criteria, one test each.

Every test prints a single ``PASS``/``FAIL`` line with the measured values and
the tolerance it was judged against. Run standalone with
``python3 tests/test_acceptance.py`` or through pytest.
"""

import math
import time

import numpy as np
import pytest

from iontomo import entangle, experiment, formats, measure, pulsesim, qstate, recon, stats

SQRT8 = 2 * math.sqrt(2)


@pytest.fixture
def report(capsys):
    def emit(number, title, ok, detail):
        with capsys.disabled():
            print(f"\n[{'PASS' if ok else 'FAIL'}] criterion {number}: {title} | {detail}")
        assert ok, detail

    return emit


def check_bell_preparation():
    start = time.perf_counter()
    worst_f, worst_g = 0.0, 0.0
    for kind in qstate.BellKind:
        reg = pulsesim.run_sequence(pulsesim.new_register(), pulsesim.bell_sequence(kind))
        ket = reg.amp.reshape(4, reg.n_levels)[:, 0]
        overlap = abs(np.vdot(qstate.bell_state(kind), ket)) ** 2
        worst_f = max(worst_f, abs(1 - overlap))
        worst_g = max(worst_g, abs(1 - reg.fock_populations()[0]))
    elapsed = time.perf_counter() - start
    ok = worst_f <= 1e-9 and worst_g <= 1e-9 and elapsed < 1.0
    return ok, f"max|1-F|={worst_f:.1e}, max|1-P(n=0)|={worst_g:.1e} (tol 1e-9), {elapsed:.2f}s (<1s)"


def check_round_trip():
    start = time.perf_counter()
    rng = np.random.default_rng(2024)
    worst = 0.0
    for i in range(50):
        rho = qstate.random_density_matrix(rng, rank=1 + i % 4)
        rep = recon.mle_reconstruct(measure.exact_dataset(rho, 10**4))
        worst = max(worst, float(np.linalg.norm(rep.rho - rho)))
    elapsed = time.perf_counter() - start
    ok = worst <= 1e-4 and elapsed < 30
    return ok, f"max Frobenius error {worst:.1e} over 50 states (tol 1e-4), {elapsed:.1f}s (<30s)"


def check_ppt_psi_plus():
    _, eigs = entangle.ppt_min_eigenvalue(qstate.projector(qstate.bell_state("PsiPlus")))
    err = float(np.max(np.abs(eigs - [-0.5, 0.5, 0.5, 0.5])))
    return err <= 1e-9, f"eigenvalues {np.round(eigs, 12).tolist()}, max error {err:.1e} (tol 1e-9)"


def check_preset_regression(n_seeds=40):
    start = time.perf_counter()
    rho = experiment.prepare_state(experiment.ExperimentConfig(preset="realistic"))
    psi = qstate.bell_state("PsiPlus")
    rows = []
    for seed in range(n_seeds):
        est = recon.mle_reconstruct(measure.simulate_dataset(rho, 200, seed)).rho
        rep = entangle.analyze(est)
        rows.append((qstate.fidelity_pure(est, psi), rep.eof, rep.chsh, rep.ppt_min_eig))
    f, e, chsh, ppt = np.mean(rows, axis=0)
    elapsed = time.perf_counter() - start
    checks = [
        abs(f - 0.91) <= 0.04,
        abs(e - 0.79) <= 0.08,
        abs(chsh - 2.52) <= 0.12,
        abs(ppt + 0.42) <= 0.06,
        elapsed < 120,
    ]
    detail = (
        f"mean of {n_seeds} seeds: F={f:.4f} (0.91+-0.04), E={e:.4f} (0.79+-0.08), "
        f"CHSH={chsh:.4f} (2.52+-0.12), PPTmin={ppt:.4f} (-0.42+-0.06), {elapsed:.1f}s (<120s)"
    )
    return all(checks), detail


def check_phase_drift():
    start = time.perf_counter()
    noise = pulsesim.DecoherenceParams(gamma_collective=0.0, gamma_differential=0.0)
    cfg = experiment.ExperimentConfig(seed=17, noise=noise)
    times = np.linspace(0.0, 6e-3, 13)
    rows = experiment.decay_scan(cfg, times)
    beta = np.array([r["beta_m"] for r in rows])
    slope = np.polyfit(times, beta, 1)[0]
    rel = abs(slope / noise.omega_beta - 1)
    psi_minus = qstate.bell_state("PsiMinus")
    step = times[1] - times[0]
    near = [
        (t, qstate.fidelity_pure(r["rho"], psi_minus))
        for t, r in zip(times, rows)
        if abs(t - 2.94e-3) <= step + 1e-12
    ]
    best_t, best_f = max(near, key=lambda x: x[1])
    elapsed = time.perf_counter() - start
    ok = rel <= 0.05 and best_f >= 0.99 and elapsed < 60
    return ok, (
        f"slope {slope:.2f} rad/s vs {noise.omega_beta:.2f} ({100 * rel:.2f}% <= 5%), "
        f"F(Psi-)={best_f:.4f} at t={1e3 * best_t:.2f} ms (>=0.99), {elapsed:.1f}s (<60s)"
    )


def check_phi_decay():
    phi = qstate.bell_state("PhiPlus")
    rho = pulsesim.dephase_evolution(qstate.projector(phi), 200e-6)
    f_phi = qstate.fidelity_pure(rho, phi)
    collective = pulsesim.DecoherenceParams(omega_beta=0.0, gamma_differential=0.0)
    psi = qstate.bell_state("PsiPlus")
    worst = max(
        abs(1 - qstate.fidelity_pure(pulsesim.dephase_evolution(qstate.projector(psi), t, collective), psi))
        for t in np.linspace(0, 0.05, 101)
    )
    ok = abs(f_phi - 0.75) <= 1e-6 and worst <= 1e-9
    return ok, f"F_Phi+(200us)={f_phi:.9f} (0.75+-1e-6), collective-only max|1-F_Psi+|={worst:.1e} (tol 1e-9)"


def check_chsh():
    start = time.perf_counter()
    ideal = entangle.chsh_value(qstate.projector(qstate.bell_state("PsiPlus")))
    rng = np.random.default_rng(77)
    top, agree = 0.0, 0
    for i in range(500):
        rho = qstate.random_density_matrix(rng, rank=1 + i % 4)
        top = max(top, entangle.chsh_value(rho))
        c, _ = entangle.concurrence_eof(rho)
        agree += (c > 0) == (entangle.ppt_min_eigenvalue(rho)[0] < 0)
    elapsed = time.perf_counter() - start
    ok = abs(ideal - SQRT8) <= 1e-9 and top <= SQRT8 + 1e-9 and agree == 500 and elapsed < 30
    return ok, (
        f"chsh(Psi+)-2sqrt2={ideal - SQRT8:.1e} (tol 1e-9), max over 500={top:.4f} (<=2.8284), "
        f"PPT/concurrence agree {agree}/500, {elapsed:.1f}s (<30s)"
    )


def check_bootstrap_scaling():
    start = time.perf_counter()
    rho = experiment.prepare_state(experiment.ExperimentConfig(preset="realistic"))
    small = stats.bootstrap_errors(rho, 200, 200, seed=5)
    large = stats.bootstrap_errors(rho, 800, 200, seed=5)
    ratios = {q: small[q].std / large[q].std for q in ("zz", "fidelity")}
    repeat = stats.bootstrap_errors(rho, 200, 200, seed=5)
    same = formats.dumps(small.to_dict()) == formats.dumps(repeat.to_dict())
    elapsed = time.perf_counter() - start
    ok = all(1.6 <= r <= 2.4 for r in ratios.values()) and same and elapsed < 120
    return ok, (
        ", ".join(f"std ratio {q}={r:.3f}" for q, r in ratios.items())
        + f" (2+-20%), identical reports={same}, {elapsed:.1f}s (<120s)"
    )


def check_physicality_fuzz():
    start = time.perf_counter()
    rng = np.random.default_rng(99)
    bad = sum(not qstate.is_physical(recon.rho_from_params(rng.normal(size=16))) for _ in range(10**4))
    worst = 0.0
    for _ in range(10**3):
        a = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
        h = (a + a.conj().T) / 2
        h = h - (np.trace(h).real - 1) * np.eye(4) / 4
        once = recon.project_physical(h)
        worst = max(worst, float(np.max(np.abs(recon.project_physical(once) - once))))
    elapsed = time.perf_counter() - start
    ok = bad == 0 and worst <= 1e-10 and elapsed < 30
    return ok, f"unphysical Cholesky outputs {bad}/10000, idempotence error {worst:.1e}, {elapsed:.1f}s (<30s)"


CRITERIA = [
    (1, "Bell-state preparation exactness", check_bell_preparation),
    (2, "tomography round trip", check_round_trip),
    (3, "PPT spectrum of ideal Psi+", check_ppt_psi_plus),
    (4, "preset regression at 200 shots", check_preset_regression),
    (5, "phase drift and Psi+ -> Psi- conversion", check_phase_drift),
    (6, "Phi decay and collective-noise immunity", check_phi_decay),
    (7, "CHSH value, Tsirelson bound, PPT agreement", check_chsh),
    (8, "bootstrap scaling and determinism", check_bootstrap_scaling),
    (9, "physicality fuzz", check_physicality_fuzz),
]


@pytest.mark.parametrize("number, title, check", CRITERIA, ids=[f"criterion_{c[0]}" for c in CRITERIA])
def test_criterion(number, title, check, report):
    ok, detail = check()
    report(number, title, ok, detail)


if __name__ == "__main__":
    failures = 0
    for number, title, check in CRITERIA:
        ok, detail = check()
        failures += not ok
        print(f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {title} | {detail}")
    raise SystemExit(1 if failures else 0)
