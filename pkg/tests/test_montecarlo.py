import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from isac import QamOrder, from_paper_defaults
from isac import analytic as an
from isac import montecarlo as mc

P, B = from_paper_defaults()
Q16 = QamOrder(16)


def test_seed_determinism_across_threads():
    a = mc.simulate_batch(P, B, Q16, 10_000, seed=3, threads=1)
    b = mc.simulate_batch(P, B, Q16, 10_000, seed=3, threads=4)
    for f in ("l_participating", "crlb_bound", "sinr", "rate", "ser", "participation_sinr"):
        np.testing.assert_array_equal(getattr(a, f), getattr(b, f))
    c = mc.simulate_batch(P, B, Q16, 10_000, seed=4, threads=1)
    assert not np.array_equal(a.sinr, c.sinr)


def test_prefix_stability():
    # chunk i always uses the same stream, so a longer run extends a shorter one
    short = mc.simulate_batch(P, B, Q16, mc.CHUNK, seed=9)
    long = mc.simulate_batch(P, B, Q16, 3 * mc.CHUNK, seed=9)
    np.testing.assert_array_equal(short.sinr, long.sinr[:mc.CHUNK])


def test_estimates_bit_identical():
    q = an.CoverageQuery("joint_crlb_ser", eps1=1.0, eps3=1e-2)
    assert mc.estimate_coverage(q, P, B, 5000, 1) == mc.estimate_coverage(q, P, B, 5000, 1)


def test_snapshot_invariants():
    bt = mc.simulate_batch(P, B, Q16, 20_000, seed=2, exact_crlb=True)
    loc = bt.l_participating >= 3
    assert np.all(bt.crlb_bound[loc] <= bt.crlb_exact[loc] * (1 + 1e-12))
    assert np.all(bt.crlb_bound[~loc] == P.n_l_cap)
    assert np.all(bt.sinr >= 0)
    assert np.all((bt.ser >= 0) & (bt.ser <= Q16.ser_max))
    # strictly positive unless the Gaussian tail underflows (SINR in the thousands)
    assert np.all(bt.ser[bt.sinr < 3000] > 0)
    assert np.all(np.isin(bt.l_participating, [0] + list(range(3, P.l_p + 1))))
    np.testing.assert_allclose(bt.rate, np.log2(1 + bt.sinr))
    s = bt[0]
    assert isinstance(s, mc.SnapshotMetrics) and s.crlb_exact is not None


def test_simulate_snapshot_matches_batch_row():
    s = mc.simulate_snapshot(P, B, Q16, seed=12)
    b = mc.simulate_batch(P, B, Q16, 1, seed=12)
    assert s == b[0]


def test_gamma_to_zero_all_participate():
    p = P.with_(gamma=1e-30, l_p=5)
    bt = mc.simulate_batch(p, B, Q16, 5000, seed=1)
    assert np.all(bt.l_participating == 5)


def test_l_is_largest_passing_index():
    bt = mc.simulate_batch(P.with_(gamma=10.0 ** 0.5), B, Q16, 5000, seed=8)
    ok = bt.participation_sinr >= P.gamma * 10.0 ** 0.5 / P.gamma
    last = np.where(ok.any(axis=1), P.l_p - np.argmax(ok[:, ::-1], axis=1), 0)
    np.testing.assert_array_equal(bt.l_participating, np.where(last >= 3, last, 0))
    # the SINR is not monotone in l, so some snapshots pass at l but fail below
    assert np.any(ok[:, 1:] & ~ok[:, :-1])


def test_fading_mean_and_lobe_frequency():
    fading, main = mc._draw_channel(np.random.default_rng(0), 100_000, 2, B)
    assert abs(fading[:, 0].mean() - 1.0) < 0.01
    assert abs(main[:, 1].mean() - 1 / 12) < 0.005


def test_interference_tail_correction():
    # the mean-tail term is close to the interference the truncation drops
    r1 = 200.0
    exact = 2 * math.pi * P.lambda_bs * B.mean_gain * r1 ** (2 - P.beta) / (P.beta - 2)
    for k in (50, 4000):
        i = mc.sample_interference(r1, P, B, 20_000, np.random.default_rng(k), k=k)
        se = i.std(ddof=1) / math.sqrt(i.size)
        assert abs(i.mean() - exact) < 4 * se


def test_ci_shrinks_like_inverse_sqrt():
    q = an.CoverageQuery("communication_sinr", eps2=10.0)
    a = mc.estimate_coverage(q, P, B, 20_000, 1)
    b = mc.estimate_coverage(q, P, B, 40_000, 2)
    assert 0.6 <= b.half_width / a.half_width <= 0.82


def test_sure_event():
    q = an.CoverageQuery("joint_crlb_ser", eps1=1e300, eps3=0.99)
    e = mc.estimate_coverage(q, P, B, 1000, 0)
    assert e.value == 1.0 and e.half_width == 0.0 and e.n_samples == 1000


def test_common_random_numbers_monotone():
    bt = mc.simulate_batch(P, B, Q16, 20_000, seed=6)
    pos = [mc.coverage_from_batch(an.CoverageQuery("positioning", eps1=e), bt).value
           for e in np.logspace(-1, 2, 20)]
    com = [mc.coverage_from_batch(an.CoverageQuery("communication_sinr", eps2=e), bt).value
           for e in np.logspace(-1, 3, 20)]
    assert np.all(np.diff(pos) >= 0) and np.all(np.diff(com) <= 0)


def test_conditional_uses_conditioning_count():
    bt = mc.simulate_batch(P, B, Q16, 20_000, seed=6)
    q = an.CoverageQuery("cond_p_given_s", eps1=1.0, eps3=1e-2)
    e = mc.coverage_from_batch(q, bt)
    assert e.n_samples == int((bt.ser <= 1e-2).sum())


def test_degenerate_condition():
    bt = mc.simulate_batch(P, B, Q16, 1000, seed=6)
    q = an.CoverageQuery("cond_s_given_p", eps1=1e-12, eps3=1e-2)
    with pytest.raises(an.DegenerateConditionError):
        mc.coverage_from_batch(q, bt)


def test_argument_checks():
    q = an.CoverageQuery("positioning", eps1=1.0)
    with pytest.raises(ValueError):
        mc.estimate_coverage(q, P, B, 99, 0)
    with pytest.raises(ValueError):
        mc.estimate_ergodic("rate", P, B, 10, 0)
    with pytest.raises(ValueError):
        mc.simulate_batch(P, B, Q16, 100, 0, k_nearest=5)
    with pytest.raises(ValueError):
        mc.EstimateWithCI(0.5, -1.0, 10)


def test_ergodic_means():
    bt = mc.simulate_batch(P, B, Q16, 10_000, seed=1)
    assert mc.ergodic_from_batch("rate", bt).value == pytest.approx(bt.rate.mean())
    loc = mc.ergodic_from_batch("crlb", bt, localizable_only=True)
    assert loc.n_samples == int((bt.l_participating >= 3).sum())
    rms = mc.ergodic_from_batch("crlb", bt, power=0.5)
    assert rms.value == pytest.approx(np.sqrt(bt.crlb_bound).mean())
    with pytest.raises(ValueError):
        mc.ergodic_from_batch("nope", bt)


def test_snapshot_csv(tmp_path):
    bt = mc.simulate_batch(P, B, Q16, 50, seed=1)
    path = tmp_path / "snap.csv"
    mc.write_snapshots_csv(bt, path)
    lines = path.read_text().splitlines()
    assert lines[0] == "trial,L,crlb_bound,sinr,rate,ser" and len(lines) == 51
    row = lines[7].split(",")
    assert float(row[3]) == bt.sinr[6]


@given(st.integers(100, 3000), st.integers(0, 2**31))
def test_proportion_ci(n, seed):
    hits = np.random.default_rng(seed).random(n) < 0.3
    e = mc._proportion(hits)
    assert e.half_width >= 0 and e.n_samples == n
    assert e.half_width == pytest.approx(mc.Z95 * math.sqrt(e.value * (1 - e.value) / n))
