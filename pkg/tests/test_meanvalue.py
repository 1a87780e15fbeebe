"""Mean values: convolution engine vs brute force, dense fast path, regimes."""

from fractions import Fraction

import pytest

from momentcurve import (
    ParameterError,
    ResourceError,
    brute_force_mean_value,
    geometric_weights,
    lower_bound_witness,
    make_weights,
    mean_value,
    newton_regime_check,
    random_weights,
    rho,
    spike_weights,
    unit_weights,
)
from momentcurve.meanvalue import normalize_exponents


def test_normalize_exponents_forms():
    assert normalize_exponents(3) == (1, 2, 3)
    assert normalize_exponents((1, 3)) == (1, 3)
    with pytest.raises(ParameterError):
        normalize_exponents(0)
    with pytest.raises(ParameterError):
        normalize_exponents((1, 1))
    with pytest.raises(ParameterError):
        normalize_exponents((2, 1))


def test_smallest_nontrivial_case_exact():
    # k=2, s=2, N=1: 15 ordered solution pairs, support 9, energy 3
    r = mean_value(unit_weights(1), 2, 2)
    assert r.raw_moment == 15
    assert r.normalized == Fraction(5, 3)
    assert r.distinct_keys == 6
    assert r.mode == "integer"


def test_quadratic_closed_form_small():
    # J_{2,2}(N) = 2(2N+1)^2 - (2N+1): permutations plus the x1+x2 slide
    for n in (1, 2, 3, 7):
        m = 2 * n + 1
        r = mean_value(unit_weights(n), 2, 2)
        assert r.raw_moment == 2 * m * m - m


def test_engine_matches_brute_force_exactly():
    for k in (2, 3):
        for s in (1, 2, 3):
            for n in (1, 2):
                for w in (unit_weights(n), random_weights(n, s + 10 * k)):
                    a = mean_value(w, s, k)
                    b = brute_force_mean_value(w, s, k)
                    assert a.raw_moment == b.raw_moment
                    assert a.distinct_keys == b.distinct_keys
                    assert b.strategy == "brute"


def test_dense_ladder_matches_map_convolution():
    # same exact counts through two unrelated engines
    for n, s in ((24, 2), (30, 3), (24, 4)):
        w = unit_weights(n)
        d = mean_value(w, s, 2, strategy="dense")
        m = mean_value(w, s, 2, strategy="map")
        assert d.strategy == "dense" and m.strategy == "map"
        assert d.raw_moment == m.raw_moment
        assert d.distinct_keys == m.distinct_keys


def test_dense_ladder_signed_integer_weights():
    vals = {n: (-1 if n % 2 else 1) * (1 + (n * n) % 3) for n in range(-20, 21)}
    w = make_weights(20, vals)
    d = mean_value(w, 3, 2, strategy="dense")
    m = mean_value(w, 3, 2, strategy="map")
    assert d.raw_moment == m.raw_moment
    assert d.distinct_keys == m.distinct_keys


def test_dense_strategy_rejected_off_domain():
    # dense path is exponents (1,2) + integer weights only
    with pytest.raises(ParameterError):
        mean_value(unit_weights(4), 2, 3, strategy="dense")
    with pytest.raises(ParameterError):
        mean_value(geometric_weights(4, Fraction(1, 2)), 2, 2, strategy="dense")


def test_parseval_at_s_equal_one():
    for w in (unit_weights(5), geometric_weights(5, Fraction(1, 3)),
              random_weights(5, 4)):
        r = mean_value(w, 1, 2)
        assert r.raw_moment == rho(w).squared


def test_rational_mode_stays_exact():
    w = geometric_weights(3, Fraction(1, 2))
    r = mean_value(w, 2, 2)
    b = brute_force_mean_value(w, 2, 2)
    assert isinstance(r.raw_moment, Fraction)
    assert r.raw_moment == b.raw_moment
    assert r.normalized == r.raw_moment / rho(w).squared ** 2


def test_complex_mode_close_to_brute():
    vals = {-1: 0.5 + 0.25j, 0: 1.0, 1: -0.75j}
    w = make_weights(1, vals)
    assert w.mode == "complex-float"
    r = mean_value(w, 2, 2)
    b = brute_force_mean_value(w, 2, 2)
    assert r.raw_moment == pytest.approx(b.raw_moment, rel=1e-10)


def test_spike_moment_is_one():
    # a single frequency has |f| = |a| everywhere, so U = 1 at every s
    w = spike_weights(6, at=2)
    for s in (1, 2, 3):
        r = mean_value(w, s, 2)
        assert r.raw_moment == 1
        assert r.distinct_keys == 1


def test_newton_regime_check_and_bound():
    w = unit_weights(3)
    assert newton_regime_check(w, 2, 2)
    assert newton_regime_check(w, 3, 3)
    with pytest.raises(ParameterError):
        newton_regime_check(w, 3, 2)  # outside the diagonal regime
    # diagonal regime: raw <= s! (rho^2)^s with equality iff collision-free
    for s, k in ((1, 2), (2, 2), (2, 3), (3, 3)):
        r = mean_value(w, s, k)
        assert r.raw_moment <= __import__("math").factorial(s) * rho(w).squared ** s


def test_lower_bound_witness_is_certified():
    wit = lower_bound_witness(6, 3, 2)
    r = mean_value(unit_weights(6), 3, 2)
    # both bounds are certified: diagonal solutions exist, and pigeonhole
    # plus Cauchy-Schwarz gives the box quotient
    assert wit.diagonal_count == 13 ** 3
    assert wit.diagonal_count <= r.raw_moment
    assert wit.box_bound <= r.raw_moment


def test_result_cache_returns_identical_object():
    w = random_weights(7, 5)
    a = mean_value(w, 2, 2)
    b = mean_value(w, 2, 2)
    assert a is b


def test_brute_force_cap_enforced():
    with pytest.raises(ResourceError):
        brute_force_mean_value(unit_weights(50), 6, 2)


def test_entry_cap_enforced():
    with pytest.raises(ResourceError):
        mean_value(unit_weights(40), 4, 3, strategy="map", entry_cap=1000)


def test_parameter_validation():
    with pytest.raises(ParameterError):
        mean_value(unit_weights(2), 0, 2)
    with pytest.raises(ParameterError):
        mean_value(unit_weights(2), 2, 2, strategy="telepathy")
