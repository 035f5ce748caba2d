import numpy as np
import pytest

import qig


def test_version():
    assert qig.__version__ == "0.1.0"


def test_eval_f_frozen_values():
    assert qig.eval_f("bh", 3.0) == pytest.approx(2.0, abs=1e-14)
    assert qig.eval_f("wy", 4.0) == pytest.approx(2.25, abs=1e-14)
    assert qig.eval_f("bkm", 1.0) == pytest.approx(1.0, abs=1e-14)
    assert qig.eval_f("gl:1", 3.0) == pytest.approx(2.0, abs=1e-13)
    with pytest.raises(ValueError):
        qig.eval_f("bh", -1.0)
    with pytest.raises(ValueError):
        qig.eval_f("gl:0", 1.0)


def test_eig_roundtrip_and_determinism():
    rho = qig.random_density(4, seed=11)
    vals, u = qig.hermitian_eig(rho)
    assert np.all(np.diff(vals) >= 0)
    recon = u @ np.diag(vals) @ u.conj().T
    assert np.max(np.abs(recon - rho)) < 1e-12
    rho2 = qig.random_density(4, seed=11)
    assert np.array_equal(rho, rho2)
    assert not np.array_equal(rho, qig.random_density(4, seed=12))


def test_metric_frozen_value():
    rho = np.diag([0.75, 0.25]).astype(complex)
    sx = np.array([[0, 1], [1, 0]], dtype=complex)
    assert qig.metric_eval("bh", rho, sx, sx) == pytest.approx(4.0, abs=1e-12)


def test_apply_K_is_square_of_state():
    rho = qig.random_density(3, seed=5)
    for spec in ("bh", "wy", "bkm", "gl:0.3"):
        out = qig.apply_K(spec, rho, rho)
        assert np.max(np.abs(out - rho @ rho)) < 1e-10


def test_gradient_matches_fundamental_field():
    rho = qig.random_density(3, seed=21)
    a = qig.random_observable(3, seed=22)
    kappa = 0.6
    grad = qig.gradient_field(f"gl:{kappa}", rho, a, kappa_prefactor=kappa)
    field = qig.fund_Z(a, rho, kappa)
    assert np.max(np.abs(grad - field)) < 1e-12
    grad_bkm = qig.gradient_field("bkm", rho, a, kappa_prefactor=2.0)
    field_w = qig.fund_W_deformed(a, rho, 2.0)
    assert np.max(np.abs(grad_bkm - field_w)) < 1e-12


def test_actions_frozen_values():
    rho = np.eye(2, dtype=complex) / 2
    g = np.diag([2.0, 1.0]).astype(complex)
    out = qig.act_beta(g, rho, kappa=1.0)
    assert np.max(np.abs(out - np.diag([0.8, 0.2]))) < 1e-12
    u = np.eye(2, dtype=complex)
    a = np.diag([np.log(2.0), 0.0]).astype(complex)
    out = qig.act_gamma(u, a, rho, kappa=1.0)
    assert np.max(np.abs(out - np.diag([2.0 / 3.0, 1.0 / 3.0]))) < 1e-12
    x = qig.random_observable(2, seed=3)
    assert np.max(np.abs(qig.act_zeta(u, a, x) - (x + a))) < 1e-14


def test_witness_search():
    found = qig.monotonicity_witness("gl:1.5", n=2, trials=2000, seed=9)
    assert found is not None
    assert found["lambda_min"] < -1e-8
    assert qig.monotonicity_witness("gl:0.5", n=2, trials=300, seed=9) is None


def test_derivative_at_zero():
    s = qig.derivative_at_zero(1.5)
    assert not s["divergent"]
    assert s["value"] == pytest.approx(-0.75, abs=1e-3)
    assert qig.derivative_at_zero(0.5)["divergent"]


def test_fisher_rao_frozen_value():
    assert qig.fisher_rao([0.75, 0.25], [1.0, -1.0], [1.0, -1.0]) == pytest.approx(16.0 / 3.0, abs=1e-12)
