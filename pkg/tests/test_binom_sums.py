import math

import numpy as np
import pytest

from momzeta.binom_sums import (
    alt_sum_naive,
    alt_sum_stable,
    gamma_integral_identity_check,
    predict,
    riemann_zeta_source,
    scaled_riemann_zeta_source,
    uniform_zeta_source,
)
from momzeta.dist_core import BetaEdge, PowerMoments, Uniform, moment_sequence
from momzeta.errors import Divergence, DomainError, PrecisionExhausted
from momzeta.special import EULER_GAMMA

ZETA2 = 1.6449340668482264365
ZETA3 = 1.2020569031595942854
# 3 zeta(2) - zeta(3), mpmath at 30 digits
THREE_Z2_MINUS_Z3 = 3.732745297385085024


def riemann_ms():
    return moment_sequence(PowerMoments(1.0))


# ---------------------------------------------------------------------------
# naive oracle
# ---------------------------------------------------------------------------

def test_naive_single_term():
    assert alt_sum_naive(2, 2, riemann_zeta_source()) == pytest.approx(ZETA2, abs=1e-12)


def test_naive_two_terms():
    assert alt_sum_naive(3, 2, riemann_zeta_source()) == pytest.approx(
        THREE_Z2_MINUS_Z3, abs=1e-12
    )


def test_naive_precision_cap():
    with pytest.raises(PrecisionExhausted):
        alt_sum_naive(300, 2, riemann_zeta_source())
    # raising the cap makes the same n legal
    value = alt_sum_naive(260, 2, riemann_zeta_source(), max_n=300)
    assert math.isfinite(value)


def test_naive_validates_arguments():
    with pytest.raises(ValueError):
        alt_sum_naive(5, 3, riemann_zeta_source())
    with pytest.raises(ValueError):
        alt_sum_naive(1, 2, riemann_zeta_source())


# ---------------------------------------------------------------------------
# stable evaluation vs the oracle
# ---------------------------------------------------------------------------

def test_stable_single_surviving_term():
    res = alt_sum_stable(riemann_ms(), 2, kmin=2, tol=1e-10)
    assert res.value == pytest.approx(ZETA2, abs=1e-9)


def test_stable_divergence_for_harmonic_tail():
    with pytest.raises(Divergence):
        alt_sum_stable(riemann_ms(), 1, kmin=1)
    with pytest.raises(Divergence):
        alt_sum_stable(riemann_ms(), 100, kmin=1)


def test_stable_divergence_for_slow_tail_kmin2():
    ms = moment_sequence(PowerMoments(0.4))
    with pytest.raises(Divergence):
        alt_sum_stable(ms, 10, kmin=2)


@pytest.mark.parametrize("n", [5, 17, 40])
def test_oracle_equivalence_riemann(n):
    stable = alt_sum_stable(riemann_ms(), n, kmin=2, tol=1e-10).value
    naive = alt_sum_naive(n, 2, riemann_zeta_source())
    assert abs(stable - naive) <= 1e-8


@pytest.mark.parametrize("n", [5, 17, 40])
def test_oracle_equivalence_scaled_kmin1(n):
    ms = moment_sequence(PowerMoments(2.0))
    stable = alt_sum_stable(ms, n, kmin=1, tol=1e-10).value
    naive = alt_sum_naive(n, 1, scaled_riemann_zeta_source(2.0))
    assert abs(stable - naive) <= 1e-8


def test_oracle_equivalence_uniform_distribution():
    ms = moment_sequence(Uniform())
    stable = alt_sum_stable(ms, 25, kmin=2, tol=1e-10).value
    naive = alt_sum_naive(25, 2, uniform_zeta_source())
    assert abs(stable - naive) <= 1e-8


def test_sign_coherence():
    for ms in (riemann_ms(), moment_sequence(Uniform()), moment_sequence(BetaEdge(beta=1.0))):
        assert alt_sum_stable(ms, 30, kmin=2, tol=1e-6).value >= 0.0
    for ms in (moment_sequence(PowerMoments(2.0)), moment_sequence(BetaEdge(beta=1.0))):
        assert alt_sum_stable(ms, 30, kmin=1, tol=1e-6).value <= 0.0


def test_bonferroni_term_bounds():
    # the envelopes that justify every truncation: for all m in [0,1], n
    #   -n m <= (1-m)^n - 1 <= 0   and   0 <= (1-m)^n - 1 + n m <= C(n,2) m^2
    m = np.linspace(0.0, 1.0, 201)
    for n in (1, 2, 3, 10, 57):
        low = np.expm1(n * np.log1p(-m, where=m < 1.0, out=np.full_like(m, -np.inf)))
        low[m >= 1.0] = -1.0
        assert np.all(low <= 1e-15) and np.all(low >= -n * m - 1e-12)
        y = low + n * m
        assert np.all(y >= -1e-12)
        assert np.all(y <= 0.5 * n * (n - 1) * m**2 + 1e-12)


def test_stable_refinement_within_previous_bound():
    ms = moment_sequence(BetaEdge(beta=1.0))
    coarse = alt_sum_stable(ms, 200, kmin=1, terms=20_000)
    fine = alt_sum_stable(ms, 200, kmin=1, terms=40_000)
    assert abs(fine.value - coarse.value) <= coarse.tail_bound


def test_stable_validates_arguments():
    with pytest.raises(ValueError):
        alt_sum_stable(riemann_ms(), 10, kmin=3)
    with pytest.raises(ValueError):
        alt_sum_stable(riemann_ms(), 1, kmin=2)
    with pytest.raises(ValueError):
        alt_sum_stable(riemann_ms(), 10, kmin=2, tol=-1.0)


# ---------------------------------------------------------------------------
# predictors
# ---------------------------------------------------------------------------

def test_predict_mainisdef_beta_one():
    # (2 Gamma(2))^(1/2) Gamma(1/2) sqrt(n) = sqrt(2 pi n)
    pred = predict("mainisdef", 100, c=2.0, beta=1.0)
    assert pred.value == pytest.approx(math.sqrt(2.0 * math.pi * 100.0), rel=1e-12)


def test_predict_riemann_at_100():
    # 100 log 100 + (2 gamma - 1) 100, mpmath reference
    pred = predict("riemann", 100)
    assert pred.value == pytest.approx(475.96015157911570892, rel=1e-14)


def test_predict_riemann_scaled():
    pred = predict("riemann_scaled", 10_000, s=2.0)
    assert pred.value == pytest.approx(math.sqrt(math.pi) * 100.0, rel=1e-12)
    pred = predict("riemann_scaled", 10_000, s=3.0)
    assert pred.value == pytest.approx(29.1735866309, rel=1e-10)


def test_predict_alpha1():
    pred = predict("alpha1", 100, c=2.0)
    assert pred.value == pytest.approx(200.0 * math.log(100.0), rel=1e-14)


def test_predict_domain_errors():
    with pytest.raises(DomainError):
        predict("mainisdef", 100, c=2.0, beta=0.0)
    with pytest.raises(DomainError):
        predict("riemann_scaled", 100, s=1.0)
    with pytest.raises(DomainError):
        predict("riemann", 0.5)
    with pytest.raises(ValueError):
        predict("nonsense", 100)


# ---------------------------------------------------------------------------
# limit-integral identities
# ---------------------------------------------------------------------------

def test_identity_power_form():
    quad, closed = gamma_integral_identity_check(1.0, 2.0)
    assert closed == pytest.approx(1.7724538509055160273, rel=1e-12)  # Gamma(1/2)
    assert abs(quad - closed) <= 1e-8
    quad, closed = gamma_integral_identity_check(2.0, 2.0)
    assert closed == pytest.approx(math.sqrt(2.0) * math.sqrt(math.pi), rel=1e-12)
    assert abs(quad - closed) <= 1e-8


def test_identity_log_form():
    quad, closed = gamma_integral_identity_check(1.0, 1.0)
    assert closed == pytest.approx(1.0 - EULER_GAMMA, rel=1e-14)
    assert abs(quad - closed) <= 1e-8
    quad, closed = gamma_integral_identity_check(0.5, 1.0)
    assert closed == pytest.approx(0.5 * (1.0 - EULER_GAMMA - math.log(0.5)), rel=1e-13)
    assert abs(quad - closed) <= 1e-8


def test_identity_domain():
    with pytest.raises(DomainError):
        gamma_integral_identity_check(0.0, 2.0)
    with pytest.raises(DomainError):
        gamma_integral_identity_check(1.0, 0.8)
