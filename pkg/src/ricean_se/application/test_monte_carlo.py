#ricean_se/src/ricean_se/application/test_monte_carlo.py

import numpy as np
import pytest

from src.ricean_se.application.monte_carlo import (
    McSettings,
    auto_chunk_size,
    estimate_moment,
    estimate_sinr_empirical,
    mrc_combine,
    simulate_data_path,
)
from src.ricean_se.application.validation_use_case import e1_case, moment_cases
from src.ricean_se.config import CHUNK_MAX_ENTRIES, CHUNK_SIZE
from src.ricean_se.domain.analytics import sinr_closed_all
from src.ricean_se.domain.entities import EstimatorKind, SystemConfig
from src.ricean_se.domain.errors import InsufficientSamples, MomentIndexError
from src.ricean_se.domain.moments import MomentTerm

# Tolerância estatística usada nos testes (em erros padrão)
Z = 4.5


# === MRC ===

def test_mrc_is_conjugate_projection():
    rng = np.random.default_rng(0)
    h_hat = rng.standard_normal((3, 5)) + 1j * rng.standard_normal((3, 5))
    y = rng.standard_normal(5) + 1j * rng.standard_normal(5)
    np.testing.assert_allclose(mrc_combine(h_hat, y), h_hat.conj() @ y)


def test_mrc_is_linear_in_y():
    rng = np.random.default_rng(1)
    h_hat = rng.standard_normal((4, 2, 8)) + 1j * rng.standard_normal((4, 2, 8))
    y1 = rng.standard_normal((4, 8)) + 1j * rng.standard_normal((4, 8))
    y2 = rng.standard_normal((4, 8)) + 1j * rng.standard_normal((4, 8))
    np.testing.assert_allclose(
        mrc_combine(h_hat, 2.0 * y1 - 1j * y2),
        2.0 * mrc_combine(h_hat, y1) - 1j * mrc_combine(h_hat, y2),
    )


# === SINR empírico ===

@pytest.mark.parametrize("kind", [EstimatorKind.LS, EstimatorKind.MMSE])
def test_empirical_sinr_matches_e1(kind):
    cfg, ls = e1_case()
    emp = estimate_sinr_empirical(cfg, ls, kind, McSettings(n_small_scale=20_000, seed=7, batch_size=50))
    fechado = sinr_closed_all(cfg, ls, kind, 0)
    assert emp.n_samples == 20_000
    assert emp.std_error[0] > 0
    assert abs(emp.sinr[0] - fechado[0]) <= Z * emp.std_error[0]


def test_empirical_sinr_multiuser_ricean():
    cfg, ls = moment_cases()["L2N2"]
    emp = estimate_sinr_empirical(cfg, ls, "MMSE", McSettings(n_small_scale=20_000, seed=3, batch_size=50))
    fechado = sinr_closed_all(cfg, ls, "MMSE", 0)
    assert np.all(np.abs(emp.sinr - fechado) <= Z * emp.std_error + 0.01 * fechado)


def test_result_independent_of_worker_count():
    cfg, ls = moment_cases()["L2N2"]
    base = McSettings(n_small_scale=600, chunk_size=128, seed=11)
    um = estimate_sinr_empirical(cfg, ls, "LS", base)
    quatro = estimate_sinr_empirical(cfg, ls, "LS", McSettings(n_small_scale=600, chunk_size=128, seed=11, parallelism=4))
    np.testing.assert_array_equal(um.sinr, quatro.sinr)
    np.testing.assert_array_equal(um.std_error, quatro.std_error)


def test_std_error_shrinks_with_sample_count():
    cfg, ls = e1_case()
    metade = estimate_sinr_empirical(cfg, ls, "LS", McSettings(n_small_scale=20_000, seed=21, batch_size=50))
    dobro = estimate_sinr_empirical(cfg, ls, "LS", McSettings(n_small_scale=40_000, seed=21, batch_size=50))
    assert dobro.std_error[0] / metade.std_error[0] == pytest.approx(1.0 / np.sqrt(2.0), rel=0.15)


# === Tamanho do chunk ===

def test_chunk_size_derived_from_problem_size():
    assert auto_chunk_size(8, 2, 2) == CHUNK_SIZE
    grande = auto_chunk_size(512, 7, 10)
    assert 1 <= grande < CHUNK_SIZE
    assert grande * 512 * 7 * 10 <= CHUNK_MAX_ENTRIES
    assert auto_chunk_size(10**6, 7, 10) == 1


def test_chunk_for_uses_explicit_value_or_config():
    cfg = SystemConfig(L=7, N=10, M=512, tau=10, T=196, rho_u=1.0, pilot_powers=np.ones((7, 10)))
    assert McSettings().chunk_for(cfg) == auto_chunk_size(512, 7, 10)
    assert McSettings(parallelism=8).chunk_for(cfg) == McSettings().chunk_for(cfg)
    assert McSettings(chunk_size=16).chunk_for(cfg) == 16
    with pytest.raises(ValueError):
        McSettings(chunk_size=0)


def test_seed_changes_result():
    cfg, ls = e1_case()
    a = estimate_sinr_empirical(cfg, ls, "LS", McSettings(n_small_scale=300, seed=1))
    b = estimate_sinr_empirical(cfg, ls, "LS", McSettings(n_small_scale=300, seed=2))
    assert not np.array_equal(a.sinr, b.sinr)


def test_too_few_samples():
    cfg, ls = e1_case()
    with pytest.raises(InsufficientSamples):
        estimate_sinr_empirical(cfg, ls, "LS", McSettings(n_small_scale=1))
    with pytest.raises(InsufficientSamples):
        estimate_sinr_empirical(cfg, ls, "LS", McSettings(n_small_scale=10, batch_size=10))


def test_invalid_settings():
    with pytest.raises(ValueError):
        McSettings(parallelism=0)
    with pytest.raises(ValueError):
        McSettings(n_large_scale=0)


# === Momentos ===

@pytest.mark.parametrize("term,indices,esperado", [
    (MomentTerm.A, (0, 0), 16.0),
    (MomentTerm.B, (0, 0), 28.0),
    (MomentTerm.D, (0, 0, 1, None), 28.0),
    (MomentTerm.F, (0, 0), 12.0),
])
def test_e1_moments_within_standard_errors(term, indices, esperado):
    cfg, ls = e1_case()
    est = estimate_moment(term, cfg, ls, EstimatorKind.LS, indices, McSettings(n_small_scale=20_000, seed=5))
    assert est.closed_form == pytest.approx(esperado)
    assert est.n_samples == 20_000
    assert est.z_score <= Z


def test_moment_rejects_bad_indices():
    cfg, ls = e1_case()
    with pytest.raises(MomentIndexError):
        estimate_moment(MomentTerm.D, cfg, ls, "LS", (0, 0, 0, None), McSettings(n_small_scale=10))


@pytest.mark.slow
@pytest.mark.parametrize("kind", [EstimatorKind.LS, EstimatorKind.MMSE])
def test_all_moments_three_cells(kind):
    cfg, ls = moment_cases()["L3N2"]
    settings = McSettings(n_small_scale=50_000, seed=13)
    casos = [
        (MomentTerm.A, (0, 1)),
        (MomentTerm.B, (0, 1)),
        (MomentTerm.C, (0, 1, None, 0)),
        (MomentTerm.D, (0, 1, 2, None)),
        (MomentTerm.E, (0, 1, 2, 0)),
        (MomentTerm.F, (0, 1)),
    ]
    for term, indices in casos:
        assert estimate_moment(term, cfg, ls, kind, indices, settings).z_score <= Z


# === Caminho de dados ===

def test_data_path_matches_effective_sinr():
    cfg, ls = e1_case()
    emp = simulate_data_path(cfg, ls, "LS", McSettings(seed=9, batch_size=50), n_symbols=20_000)
    assert abs(emp.sinr[0] - 4.0 / 13.0) <= Z * emp.std_error[0]
    with pytest.raises(InsufficientSamples):
        simulate_data_path(cfg, ls, "LS", McSettings(), n_symbols=1)
