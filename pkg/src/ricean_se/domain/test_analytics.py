#ricean_se/src/ricean_se/domain/test_analytics.py

import numpy as np
import pytest

from src.ricean_se.domain.analytics import (
    ingredients,
    phi_coefficient,
    phi_matrix,
    sinr_closed,
    sinr_limit_large_K,
    sinr_limit_large_M,
    sinr_rayleigh,
    sinr_rayleigh_limit_large_M,
    spectral_efficiency,
    sum_se,
    sum_se_closed,
)
from src.ricean_se.domain.entities import EstimatorKind, LargeScaleRealization, SystemConfig
from src.ricean_se.domain.errors import DimensionError, SharedKError, SpacingError, UnboundedLimit

LS, MMSE = EstimatorKind.LS, EstimatorKind.MMSE


def _caso(beta, k, aoa, M, rho=None, rho_u=1.0):
    beta = np.asarray(beta, dtype=float)
    L, N = beta.shape[1], beta.shape[2]
    pilot = np.ones((L, N)) if rho is None else np.asarray(rho, dtype=float)
    cfg = SystemConfig(L=L, N=N, M=M, tau=N, T=196, rho_u=rho_u, pilot_powers=pilot)
    ls = LargeScaleRealization(
        beta=beta,
        ricean_k=np.broadcast_to(np.asarray(k, dtype=float), (L, N)),
        aoa=np.broadcast_to(np.asarray(aoa, dtype=float), (L, N)),
    )
    return cfg, ls


def _e1(M=4):
    return _caso(np.ones((2, 2, 1)), 0.0, 0.0, M)


def _e2(M=64):
    return _caso([[[1.0], [0.25]], [[0.25], [1.0]]], 1.0, 0.0, M)


def _aleatorio(rng, L, N, M, k=None):
    beta = rng.uniform(0.05, 0.8, size=(L, L, N))
    beta[np.arange(L), np.arange(L)] = rng.uniform(0.5, 1.5, size=(L, N))
    kk = rng.uniform(0.0, 5.0, size=(L, N)) if k is None else k
    aoa = rng.uniform(0.0, 2.0 * np.pi, size=(L, N)) % (2.0 * np.pi)
    return _caso(beta, kk, aoa, M, rho=rng.uniform(0.5, 2.0, size=(L, N)), rho_u=float(rng.uniform(0.5, 5.0)))


# =========================================================
# φ_nt
# =========================================================
def test_phi_coefficient_values():
    assert phi_coefficient(16, 0.7, 0.7) == pytest.approx(16.0)
    # Δ = sin θ_n − sin θ_t = 0.5
    assert phi_coefficient(4, np.arcsin(0.5), 0.0) == pytest.approx(0.0, abs=1e-12)
    # Δ = 2: limite M·cos(Mπ)/cos(π)
    assert phi_coefficient(5, np.pi / 2, 3 * np.pi / 2) == pytest.approx(5.0)
    assert phi_coefficient(4, np.pi / 2, 3 * np.pi / 2) == pytest.approx(-4.0)


def test_phi_bounded_by_m():
    rng = np.random.default_rng(0)
    a, b = rng.uniform(0, 2 * np.pi, size=(2, 100_000))
    valores = phi_coefficient(32, a, b)
    assert np.all(np.abs(valores) <= 32.0 + 1e-9)


def test_phi_matches_steering_inner_product():
    from src.ricean_se.domain.channel import los_steering

    aoa = np.array([0.3, 2.0, 4.5])
    g = los_steering(24, 1.0, aoa)
    produto = np.abs(g.conj() @ g.T)
    np.testing.assert_allclose(np.abs(phi_matrix(24, aoa)), produto, atol=1e-9)


# =========================================================
# Formas fechadas
# =========================================================
def test_e1_closed_forms():
    cfg, ls = _e1()
    assert sinr_closed(cfg, ls, 0, 0, LS) == pytest.approx(4.0 / 13.0, rel=1e-12)
    assert sinr_closed(cfg, ls, 0, 0, MMSE) == pytest.approx(4.0 / 13.0, rel=1e-12)
    assert sinr_rayleigh(cfg, ls, 0, 0) == pytest.approx(4.0 / 13.0, rel=1e-12)


def test_ingredients_invariants():
    rng = np.random.default_rng(1)
    cfg, ls = _aleatorio(rng, 3, 4, 32)
    ing = ingredients(cfg, ls, 0, 1)
    assert ing.psi >= 0
    assert ing.zeta >= 1
    assert ing.vartheta >= 1 / cfg.rho_u
    assert 0 < ing.chi < 1
    np.testing.assert_allclose(np.diag(ing.phi), 32.0)


def test_varsigma_negative_with_single_user_or_separated_aoas():
    rng = np.random.default_rng(11)
    separados = np.arcsin(0.25 * np.arange(4))
    for _ in range(200):
        L = int(rng.integers(1, 6))
        cfg, ls = _aleatorio(rng, L, 1, int(rng.integers(2, 256)), k=rng.uniform(0.01, 10.0, size=(L, 1)))
        assert ingredients(cfg, ls, 0, 0).varsigma < 0

        cfg, ls = _aleatorio(rng, 3, 4, 8 * int(rng.integers(1, 32)), k=rng.uniform(0.01, 10.0, size=(3, 4)))
        ls = LargeScaleRealization(beta=ls.beta, ricean_k=ls.ricean_k, aoa=np.broadcast_to(separados, (3, 4)))
        for n in range(4):
            assert ingredients(cfg, ls, 0, n).varsigma < 0


def test_rayleigh_reduction_randomized():
    rng = np.random.default_rng(2)
    for _ in range(100):
        L, N, M = int(rng.integers(1, 5)), int(rng.integers(1, 5)), int(rng.integers(2, 200))
        cfg, ls = _aleatorio(rng, L, N, M, k=0.0)
        for n in range(N):
            ref = sinr_rayleigh(cfg, ls, 0, n)
            assert sinr_closed(cfg, ls, 0, n, LS) == pytest.approx(ref, rel=1e-12)
            assert sinr_closed(cfg, ls, 0, n, MMSE) == pytest.approx(ref, rel=1e-12)


def test_mmse_dominates_ls_with_one_user_per_cell():
    rng = np.random.default_rng(3)
    for _ in range(1000):
        L, M = int(rng.integers(1, 8)), int(rng.integers(2, 512))
        cfg, ls = _aleatorio(rng, L, 1, M)
        assert sinr_closed(cfg, ls, 0, 0, MMSE) >= sinr_closed(cfg, ls, 0, 0, LS) * (1 - 1e-12)


def test_mmse_dominates_ls_with_separated_aoas():
    rng = np.random.default_rng(4)
    aoa = np.arcsin(0.25 * np.arange(4))
    for _ in range(200):
        cfg, ls = _aleatorio(rng, 3, 4, 8)
        ls = LargeScaleRealization(beta=ls.beta, ricean_k=ls.ricean_k, aoa=np.broadcast_to(aoa, (3, 4)))
        for n in range(4):
            assert sinr_closed(cfg, ls, 0, n, MMSE) >= sinr_closed(cfg, ls, 0, n, LS) * (1 - 1e-12)


def test_sinr_increases_with_m_for_rayleigh():
    rng = np.random.default_rng(5)
    for _ in range(50):
        cfg, ls = _aleatorio(rng, 3, 3, 8, k=0.0)
        for kind in (LS, MMSE):
            valores = [sinr_closed(cfg.with_antennas(m), ls, 0, 2, kind) for m in (8, 16, 64, 256)]
            assert all(a < b for a, b in zip(valores, valores[1:]))


def test_closed_forms_require_half_wavelength():
    cfg, ls = _e1()
    cfg = SystemConfig(L=2, N=1, M=4, tau=1, T=196, rho_u=1.0, pilot_powers=np.ones((2, 1)),
                       antenna_spacing_over_wavelength=0.3)
    with pytest.raises(SpacingError):
        sinr_closed(cfg, ls, 0, 0, LS)


# =========================================================
# Limites
# =========================================================
def test_e2_large_m_limits():
    cfg, ls = _e2()
    assert sinr_limit_large_M(cfg, ls, 0, 0, LS) == pytest.approx(16.0)
    assert sinr_limit_large_M(cfg, ls, 0, 0, MMSE) == pytest.approx(49.0)


def test_large_m_limit_unbounded_single_cell():
    cfg, ls = _caso(np.ones((1, 1, 1)), 1.0, 0.0, 8)
    with pytest.raises(UnboundedLimit):
        sinr_limit_large_M(cfg, ls, 0, 0, LS)
    with pytest.raises(UnboundedLimit):
        sinr_rayleigh_limit_large_M(cfg, ls, 0, 0)
    # sem limite: cresce linearmente em M
    a = sinr_rayleigh(cfg.with_antennas(1000), ls, 0, 0)
    b = sinr_rayleigh(cfg.with_antennas(2000), ls, 0, 0)
    assert b / a == pytest.approx(2.0)


def test_rayleigh_large_m_limit_matches_both_estimators():
    rng = np.random.default_rng(6)
    cfg, ls = _aleatorio(rng, 3, 2, 64, k=0.0)
    ref = sinr_rayleigh_limit_large_M(cfg, ls, 0, 1)
    assert sinr_limit_large_M(cfg, ls, 0, 1, LS) == pytest.approx(ref)
    assert sinr_limit_large_M(cfg, ls, 0, 1, MMSE) == pytest.approx(ref)


def test_large_m_convergence():
    rng = np.random.default_rng(7)
    for _ in range(20):
        L, N = int(rng.integers(2, 4)), int(rng.integers(1, 3))
        beta = rng.uniform(0.3, 0.6, size=(L, L, N))
        beta[np.arange(L), np.arange(L)] = rng.uniform(0.8, 1.0, size=(L, N))
        cfg, ls = _caso(beta, rng.uniform(0.0, 2.0, size=(L, N)),
                        rng.uniform(0.0, 2 * np.pi, size=(L, N)) % (2 * np.pi), 10**6)
        for kind in (LS, MMSE):
            for n in range(N):
                assert sinr_closed(cfg, ls, 0, n, kind) == pytest.approx(
                    sinr_limit_large_M(cfg, ls, 0, n, kind), rel=1e-3
                )


def test_ls_large_m_limit_invariant_to_shared_k():
    rng = np.random.default_rng(8)
    beta = rng.uniform(0.05, 0.8, size=(3, 3, 2))
    valores = [
        sinr_limit_large_M(*_caso(beta, k, 0.0, 64), 0, 0, LS)
        for k in (0.0, 1.0, 10.0)
    ]
    assert valores == pytest.approx([valores[0]] * 3, rel=1e-12)


def test_large_k_requires_shared_k():
    rng = np.random.default_rng(9)
    cfg, ls = _aleatorio(rng, 2, 2, 16)
    with pytest.raises(SharedKError):
        sinr_limit_large_K(cfg, ls, 0, 0, LS)


def test_large_k_single_cell_single_user():
    cfg, ls = _caso(np.full((1, 1, 1), 0.7), 5.0, 1.0, 32, rho_u=3.0)
    assert sinr_limit_large_K(cfg, ls, 0, 0, MMSE) == pytest.approx(32 * 0.7 * 3.0)


def test_large_k_convergence():
    rng = np.random.default_rng(10)
    for _ in range(20):
        L, N, M = int(rng.integers(1, 4)), int(rng.integers(1, 4)), int(rng.integers(4, 128))
        cfg, ls = _aleatorio(rng, L, N, M, k=1e6)
        for kind in (LS, MMSE):
            for n in range(N):
                assert sinr_closed(cfg, ls, 0, n, kind) == pytest.approx(
                    sinr_limit_large_K(cfg, ls, 0, n, kind), rel=1e-3
                )


def test_large_k_mmse_scales_with_m_and_ls_saturates():
    rng = np.random.default_rng(11)
    beta = rng.uniform(0.3, 0.6, size=(3, 3, 4))
    beta[np.arange(3), np.arange(3)] = 1.0
    aoa = np.broadcast_to(np.arcsin(0.25 * np.arange(4)), (3, 4))
    cfg, ls = _caso(beta, 2.0, aoa, 4096)
    cfg2 = cfg.with_antennas(8192)
    for n in range(4):
        assert sinr_limit_large_K(cfg2, ls, 0, n, MMSE) / sinr_limit_large_K(cfg, ls, 0, n, MMSE) == pytest.approx(2.0, rel=0.05)
        assert sinr_limit_large_K(cfg2, ls, 0, n, LS) / sinr_limit_large_K(cfg, ls, 0, n, LS) == pytest.approx(1.0, abs=0.05)


# =========================================================
# SE
# =========================================================
def test_spectral_efficiency_values():
    assert spectral_efficiency(0.0, 196, 10) == 0.0
    assert spectral_efficiency(3.0, 196, 10) == pytest.approx(186 / 196 * 2.0)
    assert spectral_efficiency(1.0, 196, 195) == pytest.approx(1 / 196)
    np.testing.assert_allclose(spectral_efficiency(np.array([0.0, 3.0]), 4, 2), [0.0, 1.0])


def test_spectral_efficiency_rejects_bad_inputs():
    with pytest.raises(DimensionError):
        spectral_efficiency(1.0, 10, 10)
    with pytest.raises(ValueError):
        spectral_efficiency(-0.5, 196, 10)


def test_sum_se():
    assert sum_se([]) == 0.0
    assert sum_se([1.25]) == 1.25
    assert sum_se([0.3] * 10) == pytest.approx(3.0)


def test_sum_se_closed_over_cell():
    rng = np.random.default_rng(12)
    cfg, ls = _aleatorio(rng, 2, 3, 32)
    esperado = sum(spectral_efficiency(sinr_closed(cfg, ls, 0, n, MMSE), cfg.T, cfg.tau) for n in range(3))
    assert sum_se_closed(cfg, ls, MMSE) == pytest.approx(esperado)
