#ricean_se/src/ricean_se/application/test_validation_use_case.py

import numpy as np
import pytest
from scipy.stats import norm

from src.ricean_se.application.validation_use_case import (
    LARGE_M,
    CheckResult,
    e1_case,
    e2_case,
    moment_cases,
    run_validate,
    separated_aoa,
    sigma_bound,
    suite_asymptotes,
    suite_identities,
)
from src.ricean_se.domain.analytics import phi_matrix, sinr_closed
from src.ricean_se.domain.errors import ScenarioError
from src.ricean_se.infrastructure.scenario_loader import parse_scenario


@pytest.fixture
def cenario():
    return parse_scenario("L: 7\nN: 2\nM: 16\nn_large_scale: 2\nn_small_scale: 200\nseed: 3\n")


def test_sigma_bound_bonferroni():
    assert sigma_bound(1) == pytest.approx(3.0)
    assert sigma_bound(20) > sigma_bound(2) > 3.0


def test_sigma_bound_matches_normal_quantile():
    alvo = 2.0 * norm.sf(3.0)
    for n in (2, 7, 40):
        assert sigma_bound(n) == pytest.approx(norm.ppf(1.0 - alvo / (2.0 * n)), rel=1e-12)


def test_check_line_format():
    assert CheckResult("x.y", 0.5, 1.0, True).line() == "x.y,0.5,1,PASS"
    assert CheckResult("x.z", 2.0, 1.0, False).line().endswith(",FAIL")


def test_synthetic_cases():
    cfg, ls = e1_case()
    assert sinr_closed(cfg, ls, 0, 0, "LS") == pytest.approx(4.0 / 13.0)
    cfg, ls = e2_case()
    assert (cfg.L, cfg.N) == (2, 1)
    for nome, (cfg, ls) in moment_cases().items():
        assert ls.beta.shape == (cfg.L, cfg.L, cfg.N), nome


def test_separated_aoa_zeroes_cross_phi():
    aoa = separated_aoa(2, 4)
    phi = phi_matrix(8, aoa[0])
    fora = phi[~np.eye(4, dtype=bool)]
    assert np.max(np.abs(fora)) < 1e-9
    with pytest.raises(ValueError):
        separated_aoa(1, 5)


def test_identities_pass(cenario):
    resultados = suite_identities(cenario, n_configs=10)
    assert resultados and all(r.passed for r in resultados), [r.line() for r in resultados if not r.passed]


def test_asymptotes_pass(cenario):
    resultados = suite_asymptotes(cenario, n_configs=5)
    nomes = {r.name for r in resultados}
    assert {"asymptotes.E2_LS_limit", "asymptotes.LS_limit_K_invariance"} <= nomes
    assert all(r.passed for r in resultados), [r.line() for r in resultados if not r.passed]


def test_unknown_suite(cenario):
    with pytest.raises(ScenarioError):
        run_validate(cenario, "everything")


@pytest.mark.slow
def test_oracle_suite_passes(cenario):
    resultados = run_validate(cenario, "oracle")
    assert all(r.passed for r in resultados), [r.line() for r in resultados if not r.passed]


def test_large_m_limit_is_checked_at_one_million_antennas(cenario):
    assert LARGE_M == 10**6
    resultados = {r.name: r for r in suite_asymptotes(cenario, n_configs=20)}
    for kind in ("LS", "MMSE"):
        r = resultados[f"asymptotes.large_M_{kind}"]
        assert r.bound == pytest.approx(1e-3)
        assert r.passed, r.line()


@pytest.mark.slow
def test_mmse_dominance_over_ten_thousand_configs(cenario):
    resultados = {r.name: r for r in suite_identities(cenario, n_configs=10_000)}
    r = resultados["identities.mmse_dominance_single_user"]
    assert r.passed, r.line()
