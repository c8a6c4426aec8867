from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given
from hypothesis import strategies as st

from slcgerm.catalog.invariants import (
    ALPHA4,
    C_DOT_F1,
    F1_SQ,
    alpha3,
    alpha4,
    evaluate,
    evaluate_finite,
    gamma_system_T4,
    gamma_system_T4_printed,
    order_invariant,
    point_invariants,
)
from slcgerm.catalog.types import INF, DegCusp3, DegCusp4
from slcgerm.errors import InvalidParameters
from slcgerm.exact_arith import ExtRational

F = Fraction


def test_alpha3_values():
    assert alpha3(1, 1) == F(5, 3)
    assert alpha3(INF, INF) == 1
    assert alpha3(1, INF) == F(3, 2)


def test_alpha4_values():
    assert alpha4(3, 3, 3) == F(2, 3)
    assert alpha4(INF, INF, INF) == 0
    for r in range(2, 40):
        assert alpha4(2, 2, r) == 1


def test_point_invariants_examples():
    u = point_invariants(DegCusp3(1, 1))
    assert (u.beta, u.delta, u.alpha, u.census_class) == (1, F(4, 3), F(5, 3), "U3")
    w = point_invariants(DegCusp4(3, 3, 3))
    assert (w.beta, w.delta, w.alpha) == (1, F(4, 3), F(2, 3))
    assert point_invariants(DegCusp4(2, 3, 3)).delta == F(81, 104)


@pytest.mark.parametrize("p, q", list(product(range(1, 13), repeat=2)))
def test_alpha3_identity(p, q):
    pi = point_invariants(DegCusp3(p, q))
    assert pi.alpha == pi.beta - pi.delta + 2


@pytest.mark.parametrize("p, q, r", [(p, q, r) for p in range(2, 13) for q in range(2, 13) for r in range(2, 13, 3)])
def test_alpha4_identity(p, q, r):
    pi = point_invariants(DegCusp4(p, q, r))
    if pi.census_class == "m":
        assert pi.alpha == 1
    else:
        assert pi.alpha == pi.beta - pi.delta + 1


def test_gamma_system_examples():
    s = gamma_system_T4(3, 3, 3)
    assert (s.gamma1, s.gamma2, s.delta4) == (F(2, 3), F(2, 3), F(4, 3))
    assert gamma_system_T4(4, 3, 2).delta4 == F(31, 34)
    for p in range(3, 10):
        for r in range(2, 10):
            s = gamma_system_T4(p, p, r)
            assert s.gamma1 == s.gamma2 == F(2, p)
            assert s.delta4 == F(4, p * (p - 2))
    with pytest.raises(InvalidParameters):
        gamma_system_T4(2, 3, 3)


def test_printed_system_disagrees():
    assert gamma_system_T4_printed(3, 3, 3).delta4 != gamma_system_T4(3, 3, 3).delta4


def test_limits_at_infinity():
    for p in range(3, 12):
        assert evaluate_finite(F1_SQ, p=p, q=5, r=INF) == F(-p, 2 * (p - 2))
    assert evaluate(C_DOT_F1, p=INF, q=3, r=3) == ExtRational.finite(0)


ext = st.one_of(st.just(INF), st.integers(2, 12))


@given(ext, ext, ext)
def test_alpha4_order_invariance(p, q, r):
    assert order_invariant(ALPHA4, p, q, r)
