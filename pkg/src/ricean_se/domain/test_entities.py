#ricean_se/src/ricean_se/domain/test_entities.py

import numpy as np
import pytest

from src.ricean_se.domain.entities import LargeScaleRealization, Provenance, SinrReport, SystemConfig


def _ls(L=2, N=2):
    return LargeScaleRealization(beta=np.ones((L, L, N)), ricean_k=np.zeros((L, N)), aoa=np.zeros((L, N)))


def test_large_scale_shapes_are_checked():
    with pytest.raises(ValueError):
        LargeScaleRealization(beta=np.ones((2, 3, 2)), ricean_k=np.zeros((3, 2)), aoa=np.zeros((3, 2)))
    with pytest.raises(ValueError):
        LargeScaleRealization(beta=np.ones((2, 2, 2)), ricean_k=np.zeros((2, 3)), aoa=np.zeros((2, 2)))


def test_large_scale_value_ranges():
    with pytest.raises(ValueError):
        LargeScaleRealization(beta=np.zeros((1, 1, 1)), ricean_k=np.zeros((1, 1)), aoa=np.zeros((1, 1)))
    with pytest.raises(ValueError):
        LargeScaleRealization(beta=np.ones((1, 1, 1)), ricean_k=-np.ones((1, 1)), aoa=np.zeros((1, 1)))
    with pytest.raises(ValueError):
        LargeScaleRealization(beta=np.ones((1, 1, 1)), ricean_k=np.zeros((1, 1)), aoa=np.full((1, 1), 2 * np.pi))


def test_large_scale_is_immutable_and_with_k_copies():
    ls = _ls()
    with pytest.raises(ValueError):
        ls.beta[0, 0, 0] = 2.0

    ls_k = ls.with_k(3.0)
    assert ls_k.has_shared_k()
    assert np.all(ls_k.ricean_k == 3.0)
    assert np.all(ls.ricean_k == 0.0)


def test_system_config_with_antennas():
    cfg = SystemConfig(L=1, N=1, M=4, tau=1, T=10, rho_u=1.0, pilot_powers=np.ones((1, 1)))
    assert cfg.with_antennas(64).M == 64
    assert cfg.M == 4


def test_sinr_report_se_and_frame():
    rep = SinrReport(T=196, tau=10, sinr_closed_ls=[3.0, 0.0])

    assert rep.available() == ["sinr_closed_ls"]
    np.testing.assert_allclose(rep.se_per_user("sinr_closed_ls"), [186 / 196 * 2.0, 0.0])
    assert rep.sum_se("sinr_closed_ls") == pytest.approx(186 / 196 * 2.0)

    df = rep.to_frame()
    assert list(df.columns) == ["user", "field", "provenance", "sinr", "se"]
    assert set(df["provenance"]) == {Provenance.CLOSED_FORM.value}
    assert len(df) == 2


def test_sinr_report_rejects_negative_and_missing_fields():
    with pytest.raises(ValueError):
        SinrReport(T=196, tau=10, sinr_closed_mmse=[-1.0])
    with pytest.raises(KeyError):
        SinrReport(T=196, tau=10).se_per_user("sinr_empirical_ls")
