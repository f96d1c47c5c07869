import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from isac import BeamPattern, NetworkParams, QamOrder, from_paper_defaults
from isac.model import db_to_linear, dbm_to_watts, linear_to_db, xi_from_db


def test_defaults_units():
    p, b = from_paper_defaults()
    assert p.lambda_bs == pytest.approx(8 / math.sqrt(3) * 1e-6, rel=1e-14)
    assert b.m2 == pytest.approx(0.01, rel=1e-14)
    assert b.c1 == pytest.approx(1 / 12, rel=1e-14)
    assert p.beta == 3.6 and p.n_approx == 5 and p.p_t == 1.0
    assert p.n0 == p.sigma_n2 == pytest.approx(1.2589e-12, rel=1e-4)


def test_conversions():
    assert db_to_linear(0) == 1.0
    assert db_to_linear(-20) == pytest.approx(0.01)
    assert dbm_to_watts(-89) == pytest.approx(10 ** -11.9, rel=1e-12)


@given(st.floats(-200, 200))
def test_db_round_trip(x):
    assert abs(linear_to_db(db_to_linear(x)) - x) <= 1e-12 * max(1.0, abs(x))


def test_xi_readings():
    assert xi_from_db(-9) == pytest.approx(10 ** -0.9)
    assert xi_from_db(-9, "amplitude_db") == pytest.approx(10 ** -0.45)
    assert xi_from_db(-9, "raw") == 9.0
    with pytest.raises(ValueError):
        xi_from_db(-9, "bogus")


@pytest.mark.parametrize("kw", [
    dict(lambda_bs=0), dict(lambda_bs=1e-6, beta=2.0), dict(lambda_bs=1e-6, beta=1.5),
    dict(lambda_bs=1e-6, l_p=2), dict(lambda_bs=1e-6, n_approx=4),
    dict(lambda_bs=1e-6, xi=-1.0), dict(lambda_bs=float("nan")),
    dict(lambda_bs=float("inf")), dict(lambda_bs=1e-6, gamma=0.0),
])
def test_params_reject(kw):
    with pytest.raises(ValueError):
        NetworkParams(**kw)


def test_from_units_rejects_nonfinite():
    with pytest.raises(ValueError):
        NetworkParams.from_units(p_t_db=float("inf"))


def test_lambda_u_warns_but_is_unused():
    with pytest.warns(UserWarning):
        p = NetworkParams.from_units(lambda_u_per_km2=100.0)
    assert p == NetworkParams.from_units()


@given(st.floats(1e-3, 359.0), st.floats(-40, 0))
def test_beam_probabilities(phi, m2_db):
    b = BeamPattern.from_units(0.0, m2_db, phi)
    assert b.c1 + b.c2 == pytest.approx(1.0)
    assert b.m2 <= b.m1


@pytest.mark.parametrize("kw", [dict(m1=0.1, m2=1.0), dict(phi=2 * math.pi), dict(m2=0.0)])
def test_beam_reject(kw):
    with pytest.raises(ValueError):
        BeamPattern(**kw)


@pytest.mark.parametrize("k", [4, 16, 64, 256])
def test_qam(k):
    q = QamOrder(k)
    assert 0 < q.v < 1 and q.varsigma > 0
    assert q.ser_max == pytest.approx(2 * q.v - q.v**2)


@pytest.mark.parametrize("k", [2, 8, 15, 4.5])
def test_qam_reject(k):
    with pytest.raises(ValueError):
        QamOrder(k)


def test_params_hashable_and_immutable():
    p = NetworkParams.from_units()
    hash(p)
    with pytest.raises(Exception):
        p.beta = 4.0
    assert p.with_(beta=4.0).beta == 4.0
