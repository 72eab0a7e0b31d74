from __future__ import annotations

from fractions import Fraction
import math

import pytest
from hypothesis import given, strategies as st

from fernhex.exactnum import (
    GammaProduct,
    IrrationalResidue,
    format_rational,
    hyperfactorial,
    hyperfactorial_int,
    ratio,
)


def test_small_hyperfactorials():
    # H(n) = 0! 1! ... (n-1)!
    assert [hyperfactorial_int(n) for n in range(6)] == [1, 1, 1, 2, 12, 288]


@given(st.integers(0, 25))
def test_integer_hyperfactorial_matches(n):
    assert hyperfactorial(n).to_int() == hyperfactorial_int(n)


def test_gamma_half():
    g = GammaProduct.gamma(Fraction(1, 2))
    assert g.sqrt_pi_exponent == 1
    with pytest.raises(IrrationalResidue):
        g.to_rational()
    assert math.isclose(math.exp(g.log()), math.sqrt(math.pi))


def test_half_integer_ratio_is_rational():
    # Gamma(5/2) / Gamma(1/2) = 3/4
    q = GammaProduct.gamma(Fraction(5, 2)) / GammaProduct.gamma(Fraction(1, 2))
    assert q.sqrt_pi_exponent == 0
    assert q.to_rational() == Fraction(3, 4)


@given(st.integers(1, 30), st.integers(1, 30))
def test_mul_div_inverse(i, j):
    a = GammaProduct({i: 2, j: -1})
    b = GammaProduct({j: 3})
    assert (a * b) / b == a


@given(st.integers(0, 12), st.integers(0, 12))
def test_ratio_of_hyperfactorials(m, n):
    assert ratio([m], [n]).to_rational() == Fraction(hyperfactorial_int(m), hyperfactorial_int(n))


def test_half_integer_hyperfactorial():
    # H(7/2) = Gamma(7/2) Gamma(5/2) Gamma(3/2) Gamma(1/2)
    h = hyperfactorial(Fraction(7, 2))
    assert h.sqrt_pi_exponent == 4
    assert math.isclose(h.log(), sum(math.lgamma(k + 0.5) for k in range(4)), rel_tol=1e-12)
    assert h.rational_part() == Fraction(15, 8) * Fraction(3, 4) * Fraction(1, 2)


def test_format_rational():
    assert format_rational(Fraction(6, 3)) == "2"
    assert format_rational(Fraction(3, 4)) == "3/4"
