import numpy as np
import pytest

from iontomo import formats, qstate, stats
from iontomo.errors import BootstrapDegenerate

PSI_PLUS = qstate.projector(qstate.bell_state("PsiPlus"))


def test_pure_state_bootstrap():
    rep = stats.bootstrap_errors(PSI_PLUS, 200, 60, seed=4)
    assert rep["eof"].mean >= 0.95
    assert rep["eof"].std <= 0.05
    assert rep.failed == 0 and rep["eof"].samples == 60
    assert set(rep.quantities) == set(stats.QUANTITIES)


def test_reproducible_and_order_independent():
    rho = qstate.werner_state(0.8).astype(complex)
    a = stats.bootstrap_errors(rho, 200, 12, seed=7)
    b = stats.bootstrap_errors(rho, 200, 12, seed=7)
    assert formats.dumps(a.to_dict()) == formats.dumps(b.to_dict())
    c = stats.bootstrap_errors(rho, 200, 12, seed=8)
    assert formats.dumps(a.to_dict()) != formats.dumps(c.to_dict())

    jobs = [(rho, 200, 7, k, qstate.bell_state("PsiPlus"), {}) for k in range(12)]
    reversed_results = dict(map(stats._run_trial, reversed(jobs)))
    assert stats.summarize(reversed_results, 12).to_dict() == a.to_dict()


def test_parallel_matches_serial():
    rho = qstate.werner_state(0.9)
    serial = stats.bootstrap_errors(rho, 200, 8, seed=1)
    parallel = stats.bootstrap_errors(rho, 200, 8, seed=1, workers=2)
    assert serial.to_dict() == parallel.to_dict()


def test_systematics_widen_distribution():
    base = stats.bootstrap_errors(PSI_PLUS, 200, 30, seed=2)
    tilted = stats.bootstrap_errors(PSI_PLUS, 200, 30, seed=2, angle_error=0.1)
    assert tilted["fidelity"].mean < base["fidelity"].mean


def test_summarize_degenerate():
    good = {"fidelity": 1.0, **{q: 0.0 for q in stats.QUANTITIES if q != "fidelity"}}
    samples = {k: (None if k < 2 else good) for k in range(20)}
    with pytest.raises(BootstrapDegenerate):
        stats.summarize(samples, 20)
    samples[0] = good
    rep = stats.summarize(samples, 20)
    assert rep.failed == 1 and rep["fidelity"].samples == 19 and rep["fidelity"].std == 0.0


def test_argument_checks():
    with pytest.raises(ValueError):
        stats.bootstrap_errors(PSI_PLUS, 200, 1)
    with pytest.raises(ValueError):
        stats.bootstrap_errors(PSI_PLUS, 0, 5)


@pytest.mark.parametrize(
    "value, err, text",
    [
        (0.7912, 0.04, "0.79(4)"),
        (0.7912, 0.038, "0.79(4)"),
        (2.5213, 0.06, "2.52(6)"),
        (-0.4172, 0.021, "-0.42(2)"),
        (0.4, 0.0, "0.400"),
        (12.3, 3.0, "12(3)"),
        (0.5, 0.096, "0.5(1)"),
    ],
)
def test_format_with_error(value, err, text):
    assert stats.format_with_error(value, err) == text


def test_state_quantities_pure_bell():
    q = stats.state_quantities(PSI_PLUS, qstate.bell_state("PsiPlus"))
    assert q["fidelity"] == pytest.approx(1)
    assert q["zz"] == pytest.approx(-1)
    assert q["ppt_min_eig"] == pytest.approx(-0.5)
    assert [q[f"ppt_eig_{i}"] for i in range(4)] == pytest.approx([-0.5, 0.5, 0.5, 0.5])
    assert np.isfinite(list(q.values())).all()
