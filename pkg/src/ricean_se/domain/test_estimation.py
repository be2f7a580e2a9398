#ricean_se/src/ricean_se/domain/test_estimation.py

import numpy as np
import pytest

from src.ricean_se.domain.channel import draw_channel, draw_channels_batch, observe_pilots, pilot_matrix
from src.ricean_se.domain.entities import EstimatorKind, LargeScaleRealization, SystemConfig
from src.ricean_se.domain.estimation import (
    estimate,
    ls_estimate_nlos,
    mmse_shrinkage,
    nlos_estimation_error_variance,
)


def _e2():
    cfg = SystemConfig(L=2, N=1, M=8, tau=1, T=196, rho_u=1.0, pilot_powers=np.ones((2, 1)))
    beta = np.array([[[1.0], [0.25]], [[0.25], [1.0]]])
    ls = LargeScaleRealization(beta=beta, ricean_k=np.ones((2, 1)), aoa=np.zeros((2, 1)))
    return cfg, ls


def test_mmse_shrinkage_hand_value():
    cfg, ls = _e2()
    assert mmse_shrinkage(cfg, ls, 0, 0) == pytest.approx(0.4)
    # ε = (1·2·0.25 + 1)/1
    assert nlos_estimation_error_variance(cfg, ls, 0)[0] == pytest.approx(1.5)


def test_single_cell_noiseless_ls_is_exact():
    cfg = SystemConfig(L=1, N=2, M=8, tau=3, T=196, rho_u=1.0, pilot_powers=np.array([[2.0, 0.5]]))
    ls = LargeScaleRealization(beta=np.array([[[1.0, 0.3]]]), ricean_k=np.array([[4.0, 0.0]]), aoa=np.array([[0.2, 1.0]]))
    ch = draw_channel(cfg, ls, 0, np.random.default_rng(0))
    phi = pilot_matrix(cfg.tau, cfg.N)
    obs = observe_pilots(cfg, ls, ch, phi, None, with_noise=False)

    for n in range(cfg.N):
        np.testing.assert_allclose(ls_estimate_nlos(obs, phi, cfg, ls, n), ch.nlos[0, n], atol=1e-12)

    est = estimate(obs, phi, cfg, ls, EstimatorKind.LS)
    np.testing.assert_allclose(est.h_hat, ch.h[0], atol=1e-12)
    np.testing.assert_allclose(est.chi, 1.0)


def test_ls_error_is_zero_mean_with_expected_variance():
    cfg, ls = _e2()
    rng = np.random.default_rng(4)
    ch = draw_channels_batch(cfg, ls, 0, rng, 20_000)
    phi = pilot_matrix(cfg.tau, cfg.N)
    obs = observe_pilots(cfg, ls, ch, phi, rng)

    erro = ls_estimate_nlos(obs, phi, cfg, ls, 0) - ch.nlos[:, 0, 0]
    assert abs(erro.mean()) < 0.03
    assert np.mean(np.abs(erro) ** 2) == pytest.approx(1.5, rel=0.03)


def test_mmse_scales_nlos_estimate_by_chi():
    cfg, ls = _e2()
    rng = np.random.default_rng(9)
    ch = draw_channel(cfg, ls, 0, rng)
    phi = pilot_matrix(cfg.tau, cfg.N)
    obs = observe_pilots(cfg, ls, ch, phi, rng)

    ls_est = estimate(obs, phi, cfg, ls, EstimatorKind.LS)
    mmse_est = estimate(obs, phi, cfg, ls, "MMSE")
    assert mmse_est.kind is EstimatorKind.MMSE
    np.testing.assert_allclose(mmse_est.nlos_hat, 0.4 * ls_est.nlos_hat)

    # a parte LOS é a mesma nos dois estimadores
    los = np.sqrt(0.5) * ch.los
    np.testing.assert_allclose(ls_est.h_hat - np.sqrt(0.5) * ls_est.nlos_hat, los, atol=1e-12)
    np.testing.assert_allclose(mmse_est.h_hat - np.sqrt(0.5) * mmse_est.nlos_hat, los, atol=1e-12)


def test_mmse_error_is_orthogonal_to_estimate():
    cfg, ls = _e2()
    rng = np.random.default_rng(12)
    ch = draw_channels_batch(cfg, ls, 0, rng, 20_000)
    phi = pilot_matrix(cfg.tau, cfg.N)
    obs = observe_pilots(cfg, ls, ch, phi, rng)

    mmse = estimate(obs, phi, cfg, ls, EstimatorKind.MMSE).nlos_hat[:, 0, :]
    erro = ch.nlos[:, 0, 0, :] - mmse
    assert abs(np.mean(erro * mmse.conj())) < 0.01
    assert np.mean(np.abs(mmse) ** 2) == pytest.approx(0.4, rel=0.03)

    # LS: o erro é o próprio ruído de estimação, correlação −ε
    ls_est = estimate(obs, phi, cfg, ls, EstimatorKind.LS).nlos_hat[:, 0, :]
    erro_ls = ch.nlos[:, 0, 0, :] - ls_est
    assert np.mean(erro_ls * ls_est.conj()).real == pytest.approx(-1.5, rel=0.05)
