"""Mixed z-measure, detailed balance, simulation, spectral transitions,
Thoma-cone embedding and scaling statistics."""

import math
from fractions import Fraction

import mpmath
import numpy as np
import pytest

from lmsym import meixner, zdynamics as zd
from lmsym.coeffring import NumericParams
from lmsym.partition import conjugate, corners, partitions_up_to
from lmsym.symcore import SymFunc

NP_MAIN = NumericParams.conjugate(1, 1, Fraction(1, 2))


def test_classify_examples():
    assert zd.classify(z_re=1, z_im=1) == "principal"
    assert zd.classify(z=Fraction(1, 3), zp=Fraction(2, 3)) == "complementary"
    assert zd.classify(z=2, zp=4) == "degenerate"
    assert zd.classify(z=Fraction(1, 3), zp=Fraction(3, 2)) == "inadmissible"
    with pytest.raises(ValueError):
        zd.classify(z=1)


def test_pmf_examples():
    zm = zd.ZMeasure(NP_MAIN)
    prefactor = (1 - 0.5) ** 2.0
    assert zm.pmf(()) == pytest.approx(prefactor)
    assert zm.pmf((1,)) == pytest.approx(prefactor * 2 * 0.5)
    assert zm.pmf_exact_scaled((1,)) == Fraction(1)  # zz' * xi = 2 * 1/2


def test_pmf_transposition_relation():
    # the mass of the transposed diagram under (z, z') is the mass of the
    # diagram under (-z, -z'), exactly
    zm = zd.ZMeasure(NP_MAIN)
    zm_neg = zd.ZMeasure(NumericParams.conjugate(-1, 1, Fraction(1, 2)))
    for lam in partitions_up_to(5):
        assert zm.pmf_exact_scaled(conjugate(lam)) == zm_neg.pmf_exact_scaled(lam)


def test_pmf_degenerate_support():
    zm = zd.ZMeasure(NumericParams.real_pair(2, 4, Fraction(1, 2)))
    assert zm.pmf_exact_scaled((1, 1, 1)) == 0
    assert zm.pmf_exact_scaled((3, 2)) > 0


def test_normalization_monotone():
    zm = zd.ZMeasure(NP_MAIN)
    prev = 0.0
    for cutoff in (0, 2, 5, 10, 15):
        total = zm.normalization_check(cutoff)["partial_sum"]
        assert prev <= total <= 1 + 1e-12
        prev = total
    assert prev > 0.999


def test_normalization_moment_matches_functional():
    # E|lam| agrees with the moment functional value t zz'
    zm = zd.ZMeasure(NP_MAIN)
    rep = zm.normalization_check(30, f=lambda lam: float(sum(lam)))
    want = NP_MAIN.param_eval(meixner.moment_me(SymFunc.p(1)))
    assert rep["moment"] == pytest.approx(float(want), abs=1e-6)  # cutoff tail ~ 2e-7


def test_detailed_balance_hand_case():
    # empty <-> one box: both sides reduce to t zz' times the empty mass
    assert zd.detailed_balance_check((), (1, 1))


def test_detailed_balance_sweep():
    for lam in partitions_up_to(4):
        for box in corners(lam)[0]:
            assert zd.detailed_balance_check(lam, box), (lam, box)


def test_detailed_balance_numeric():
    for lam in partitions_up_to(3):
        for box in corners(lam)[0]:
            assert zd.detailed_balance_check(lam, box, np_=NP_MAIN, symbolic=False)
    # degenerate parameters: both sides vanish on the killed box
    np_deg = NumericParams.real_pair(2, 4, Fraction(1, 2))
    assert zd.detailed_balance_check((1, 1), (3, 1), np_=np_deg, symbolic=False)


def test_rate_sum_sweep():
    for lam in partitions_up_to(4):
        assert zd.rate_sum_check(lam), lam


def test_simulation_determinism_and_holding_rate():
    traj1 = zd.simulate((), 20.0, NP_MAIN, 7)
    traj2 = zd.simulate((), 20.0, NP_MAIN, 7)
    assert traj1.events == traj2.events
    traj3 = zd.simulate((), 20.0, NP_MAIN, 8)
    assert traj3.events != traj1.events
    proc = zd.JumpProcess(NP_MAIN)
    _, _, total = proc.moves(())
    # holding rate at the empty diagram: xi zz' / (1 - xi)
    assert total == pytest.approx(float(NP_MAIN.t * NP_MAIN.zzp))


def test_trajectory_states_and_csv():
    traj = zd.simulate((), 5.0, NP_MAIN, 3)
    states = list(traj.states())
    assert states[0] == (0.0, ())
    csv = traj.to_csv()
    lines = csv.strip().split("\n")
    assert lines[0] == "time,event,partition"
    assert len(lines) == len(traj.events) + 1
    if traj.events:
        assert lines[1].split(",")[1].startswith(('"+', '"-'))
    # byte-identical on the same seed
    assert zd.simulate((), 5.0, NP_MAIN, 3).to_csv() == csv


def test_degenerate_confinement():
    np_deg = NumericParams.real_pair(2, 4, Fraction(1, 2))
    proc = zd.JumpProcess(np_deg)
    traj = proc.simulate((), None, 11, max_events=2000)
    assert all(len(lam) <= 2 for _, lam in traj.states())
    with pytest.raises(ValueError):
        proc.simulate((1, 1, 1), 1.0, 5)


def test_transition_prob_large_time_reaches_equilibrium():
    zm = zd.ZMeasure(NP_MAIN)
    for kap in [(), (1,), (2, 1)]:
        value, _ = zd.transition_prob((), kap, 40.0, NP_MAIN, 6)
        assert value == pytest.approx(zm.pmf(kap), rel=1e-9)


def test_transition_prob_stochasticity():
    total = sum(zd.transition_prob((), kap, 1.0, NP_MAIN, 8)[0]
                for kap in partitions_up_to(10))
    assert abs(total - 1.0) < 1e-3


def test_transition_prob_rejects_degenerate():
    np_deg = NumericParams.real_pair(2, 4, Fraction(1, 2))
    with pytest.raises(ValueError):
        zd.transition_prob((), (1,), 1.0, np_deg, 4)


def test_transition_prob_matches_simulation():
    proc = zd.JumpProcess(NP_MAIN)
    n = 20000
    counts = proc.ensemble_states((), [1.0], n, 12)
    for kap in [(), (1,), (1, 1)]:
        emp = counts[1.0].get(kap, 0) / n
        se = math.sqrt(emp * (1 - emp) / n)
        spec, _ = zd.transition_prob((), kap, 1.0, NP_MAIN, 8)
        assert abs(emp - spec) <= 4 * se, (kap, emp, spec)


def test_embed_examples():
    om = zd.embed((), Fraction(1, 10))
    assert om.alpha == () and om.beta == () and om.delta == 0
    om = zd.embed((3, 2, 2), 1)
    assert om.alpha == (Fraction(5, 2), Fraction(1, 2))
    assert om.beta == (Fraction(5, 2), Fraction(3, 2))
    assert om.delta == 7 and om.gamma == 0
    for lam in partitions_up_to(6):
        om = zd.embed(lam, Fraction(1, 7))
        assert om.delta == sum(om.alpha) + sum(om.beta)


def test_stationary_sampler_tail_and_law():
    draw, tail = zd.stationary_sampler(NP_MAIN, 30)
    assert 0 <= tail < 1e-8
    rng = np.random.default_rng(17)
    zm = zd.ZMeasure(NP_MAIN)
    n = 20000
    hits = sum(draw(rng) == () for _ in range(n))
    p = zm.pmf(())
    assert abs(hits / n - p) < 4 * math.sqrt(p * (1 - p) / n)


def test_occupation_fractions_normalized():
    proc = zd.JumpProcess(NP_MAIN)
    traj = proc.simulate((), None, 23, max_events=5000)
    occ = proc.occupation_fractions(traj)
    assert sum(occ.values()) == pytest.approx(1.0)
    assert all(v >= 0 for v in occ.values())


def test_scaling_exact_mean_identity():
    # (1-xi) E|lam| = xi zz', exactly, via the moment functional
    for xi in (Fraction(9, 10), Fraction(99, 100)):
        np_ = NumericParams.conjugate(1, 1, xi)
        mean_size = np_.param_eval(meixner.moment_me(SymFunc.p(1)))
        assert (1 - xi) * mean_size == xi * np_.zzp


def test_scaling_limit_reports():
    p1 = SymFunc.p(1)
    seq = [NumericParams.conjugate(1, 1, Fraction(9, 10))]
    rep = zd.scaling_limit_stats(seq, p1, 20000, 4)[0]
    assert rep["reference"] == pytest.approx(2.0)
    # pre-limit mean is xi zz' = 1.8; Monte Carlo noise stays within 5 sigma
    assert abs(rep["estimate"] - 1.8) <= 5 * rep["stderr"]
    assert rep["n"] == 20000 and rep["xi"] == 0.9


def test_growth_sampler_matches_moment_functional():
    # general statistic (p_2): E[p_2 at the embedded point] = eps^2 psi_me(p_2)
    np_ = NumericParams.conjugate(1, 1, Fraction(1, 2))
    p2 = SymFunc.p(2)
    rep = zd.scaling_limit_stats([np_], p2, 4000, 21)[0]
    want = float(np_.param_eval(meixner.moment_me(p2))) * (1 - 0.5) ** 2
    assert abs(rep["estimate"] - want) <= 5 * rep["stderr"]


def test_transposition_symmetry_chi_square():
    # law of the transposed diagram under (z,z') vs the measure at (-z,-z')
    n = 100000
    states, probs = zd.ZMeasure(NP_MAIN).bulk_pmf(30)
    cdf = np.cumsum(probs)
    rng = np.random.default_rng(31)
    draws = np.searchsorted(cdf, rng.random(n) * cdf[-1], side="right")
    counts = {}
    for idx in draws:
        lam = conjugate(states[min(idx, len(states) - 1)])
        counts[lam] = counts.get(lam, 0) + 1
    zm_neg = zd.ZMeasure(NumericParams.conjugate(-1, 1, Fraction(1, 2)))
    neg_states, neg_probs = zm_neg.bulk_pmf(30)
    expected = dict(zip(neg_states, n * neg_probs))
    # pool cells with small expectation
    stat = 0.0
    dof = -1
    pooled_obs = 0.0
    pooled_exp = 0.0
    for lam, exp_count in expected.items():
        obs = counts.get(lam, 0)
        if exp_count >= 5.0:
            stat += (obs - exp_count) ** 2 / exp_count
            dof += 1
        else:
            pooled_obs += obs
            pooled_exp += exp_count
    if pooled_exp > 0:
        stat += (pooled_obs - pooled_exp) ** 2 / pooled_exp
        dof += 1
    pvalue = float(mpmath.gammainc(dof / 2, stat / 2, mpmath.inf, regularized=True))
    assert pvalue > 0.01, (stat, dof, pvalue)
