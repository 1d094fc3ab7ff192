import math
import pickle

import pytest
from hypothesis import given, strategies as st

from cvrenyi import index_algebra as ia
from cvrenyi.index_algebra import (
    INF,
    EntropicIndexPair,
    SubsystemIndexSet,
    big_K,
    conjugate_index,
    constant_identity_check,
    criterion_bound,
    kappa,
    young_C,
)


def direct_young_C(x):
    """``C^2 = |x|^(1/x) |x'|^(-1/x')`` evaluated without the reciprocal form."""
    xc = x / (x - 1.0)
    return math.sqrt(abs(x) ** (1.0 / x) * abs(xc) ** (-1.0 / xc))


@pytest.mark.parametrize("x, expected", [(2.0, 2.0), (0.5, -1.0), (4.0 / 3.0, 4.0)])
def test_conjugate_examples(x, expected):
    assert conjugate_index(x) == pytest.approx(expected, abs=1e-12)


def test_conjugate_of_one_is_infinity_marker():
    assert conjugate_index(1.0) is INF
    assert conjugate_index(INF) == 1.0


def test_infinity_marker_survives_pickling():
    assert pickle.loads(pickle.dumps(INF)) is INF


@given(st.floats(0.05, 20.0).filter(lambda x: abs(x - 1) > 1e-3))
def test_conjugate_is_involution(x):
    assert conjugate_index(conjugate_index(x)) == pytest.approx(x, rel=1e-12)


@given(st.floats(0.01, 0.99))
def test_conjugate_of_subunit_index_is_negative(x):
    assert conjugate_index(x) < 0


def test_kappa_endpoints_and_midpoint():
    assert kappa(0.0) == pytest.approx(math.e, abs=1e-12)
    assert kappa(1.0) == pytest.approx(2.0, abs=1e-12)
    expected = math.exp(1.5 * math.log(1.5) - 0.5 * math.log(0.5))
    assert kappa(0.5) == pytest.approx(expected, rel=1e-14)
    assert kappa(0.5) == pytest.approx(2.598076, abs=1e-6)


def test_kappa_series_seam_is_continuous():
    below, above = kappa(0.999e-6), kappa(1.001e-6)
    assert below == pytest.approx(above, rel=1e-11)


@pytest.mark.parametrize("bad", [-0.1, 1.1])
def test_constants_reject_out_of_range(bad):
    with pytest.raises(ValueError):
        kappa(bad)
    with pytest.raises(ValueError):
        big_K(bad)


def test_big_K_examples():
    assert big_K(0.0) == pytest.approx(math.e, abs=1e-12)
    assert big_K(1.0) == pytest.approx(2.0, abs=1e-12)
    assert big_K(0.3) > big_K(0.7)


@given(st.floats(0.0, 1.0), st.floats(0.0, 1.0))
def test_big_K_strictly_decreasing(s, t):
    if s + 1e-9 < t:
        assert big_K(s) > big_K(t)


@given(st.floats(0.0, 1.0))
def test_big_K_and_kappa_are_one_function(s):
    assert big_K(s) == kappa(s)


def test_young_C_examples():
    assert young_C(2.0) == pytest.approx(1.0, abs=1e-15)
    assert young_C(1.0) == pytest.approx(1.0, abs=1e-15)
    assert young_C(0.5, -1.0) == pytest.approx(0.5, abs=1e-15)
    assert young_C(INF) == 1.0


@pytest.mark.parametrize("x", [0.5, 2.0 / 3.0, 4.0 / 3.0, 2.0, 4.0])
def test_young_C_two_forms_agree(x):
    assert young_C(x) == pytest.approx(direct_young_C(x), rel=1e-12)


def test_young_C_domain():
    with pytest.raises(ValueError):
        young_C(0.0)
    with pytest.raises(ValueError):
        young_C(2.0, 3.0)


def test_criterion_bound_examples():
    assert criterion_bound(2, 0.0) == pytest.approx(math.log(2 * math.e * math.pi), abs=1e-12)
    assert criterion_bound(2, 0.0) == pytest.approx(2.837877, abs=1e-6)
    assert criterion_bound(4, 1.0) == pytest.approx(math.log(8 * math.pi), abs=1e-12)
    assert criterion_bound(4, 1.0) == pytest.approx(3.2241714, abs=1e-7)
    assert criterion_bound(3, 0.4) > criterion_bound(2, 0.4)


@pytest.mark.parametrize("n, t, tol", [(2, 0.5, 1e-10), (10, 0.9, 1e-10), (3, 0.1, 1e-9)])
def test_constant_identity_examples(n, t, tol):
    assert abs(constant_identity_check(n, t)) < tol


def test_constant_identity_grid():
    worst = max(abs(constant_identity_check(n, 0.05 * k)) for n in range(2, 11) for k in range(1, 20))
    assert worst < 1e-9


def test_constant_identity_detects_perturbed_constant(monkeypatch):
    original = ia.big_K
    monkeypatch.setattr(ia, "big_K", lambda t: original(t) * (1 + 1e-3))
    assert abs(constant_identity_check(4, 0.5)) > 1e-4


@given(st.floats(0.0, 1.0))
def test_index_pair_relations(t):
    p = EntropicIndexPair.from_t(t)
    assert 1.0 / p.b == pytest.approx(1.0 + t, abs=1e-12)
    if t < 1.0:
        assert 1.0 / p.a == pytest.approx(1.0 - t, abs=1e-12)
        assert 1.0 / p.a + 1.0 / p.b == pytest.approx(2.0, abs=1e-12)


def test_index_pair_endpoint():
    p = EntropicIndexPair.from_t(1.0)
    assert p.a is INF and p.b == 0.5
    assert EntropicIndexPair.from_a(INF) == p
    assert EntropicIndexPair.from_a(2.0).t == pytest.approx(0.5)


@given(st.integers(2, 10), st.floats(0.01, 1.0))
def test_subsystem_indices(n, t):
    sub = SubsystemIndexSet.from_t(n, t)
    pair = EntropicIndexPair.from_t(t)
    assert 1.0 / sub.alpha == pytest.approx(1.0 - sub.tau, abs=1e-12)
    assert 1.0 / sub.beta == pytest.approx(1.0 + sub.tau, abs=1e-12)
    assert n / sub.alpha_conj == pytest.approx(ia.reciprocal(conjugate_index(pair.a)), abs=1e-12)
    assert n / sub.beta_conj == pytest.approx(1.0 / conjugate_index(pair.b), abs=1e-12)
    assert sub.beta_conj < 0


def test_pure_state_constant_limit():
    for n in (2, 4, 7):
        assert ia.pure_state_constant(n, 0.0) == pytest.approx(0.5 * math.log(n))
        assert ia.pure_state_constant(n, 1e-4) == pytest.approx(0.5 * math.log(n), abs=1e-3)
