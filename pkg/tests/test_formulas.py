from __future__ import annotations

import itertools

import pytest
from hypothesis import given, settings, strategies as st

from fernhex.formulas import (
    TotalsMismatch,
    b_region_count,
    clp_count,
    cored_gp,
    cored_hexagon_count,
    dual_limit_product,
    formula_count,
    formula_result,
    h_region_count,
    macmahon_P,
    s_dented,
    s_hyperfactorial,
)
from fernhex.lattice import build_region, dented_semihexagon
from fernhex.oracle import count_tilings
from fernhex.params import Family, FernSeq, RegionSpec, parse_spec, validate_spec


def test_macmahon_values():
    assert macmahon_P(1, 1, 1) == 2
    assert macmahon_P(2, 2, 2) == 20
    assert macmahon_P(3, 3, 3) == 980
    assert macmahon_P(0, 5, 7) == 1


@given(st.integers(0, 6), st.integers(0, 6), st.integers(0, 6))
def test_macmahon_symmetric(a, b, c):
    v = macmahon_P(a, b, c)
    assert all(macmahon_P(*p) == v for p in itertools.permutations((a, b, c)))


def test_clp():
    assert clp_count([1, 2, 3]) == 1
    assert clp_count([1, 3]) == 2
    with pytest.raises(ValueError):
        clp_count([2, 1])


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(0, 3), min_size=1, max_size=5))
def test_s_forms_agree(terms):
    assert s_dented(terms) == s_hyperfactorial(terms)


@settings(max_examples=30, deadline=None)
@given(st.lists(st.integers(0, 2), min_size=1, max_size=4))
def test_s_matches_oracle(terms):
    assert s_dented(terms) == count_tilings(dented_semihexagon(terms), max_area=None)


def test_cored_m0_is_macmahon():
    for x, y, z in itertools.product(range(5), repeat=3):
        assert cored_hexagon_count(x, y, z, 0) == macmahon_P(x, y, z)


def test_cored_routes_agree_when_all_same_parity():
    for x, y, z in [(1, 1, 1), (2, 2, 2), (2, 0, 4)]:
        v = cored_gp(x, y, z, 2, route=0)
        assert v.to_int() == cored_hexagon_count(x, y, z, 2)


@pytest.mark.parametrize("text", [
    "Rc x=2 y=1 z=2 a=[1,1] c=[1,2,1] b=[1,2]",
    "Rl x=1 y=1 z=2 a=[1] c=[2] b=[1,1]",
    "Rnw x=1 y=0 z=1 a=[1] c=[1] b=[2]",
    "Rsw x=2 y=0 z=1 a=[2] c=[1] b=[1]",
    "Qc x=1 y=1 z=1 a=[1,1] c=[1] b=[2]",
    "Ql x=2 y=1 z=1 a=[1] c=[1,1] b=[1]",
    "Qnw x=1 y=1 z=1 a=[2] c=[1] b=[1]",
    "Qne x=1 y=1 z=2 a=[1] c=[2] b=[1]",
])
def test_rq_formula_vs_oracle(text):
    s = parse_spec(text)
    assert formula_count(s) == count_tilings(build_region(s), max_area=None)


def test_h_and_b_formulas_vs_oracle():
    for text in ["H x=1 z=1 a=[1] c=[1] b=[1]", "H x=2 z=0 a=[2] c=[1] b=[1,1] orient=UDU",
                 "B x=1 y=1 z=1 c=[1,1]", "B x=2 y=0 z=1 c=[2]"]:
        s = parse_spec(text)
        assert formula_count(s) == count_tilings(build_region(s), max_area=None), text


def test_h_requires_equal_totals():
    with pytest.raises(Exception):
        h_region_count(1, 1, (1,), (), (2,))


def test_bare_parameter_wrappers():
    assert b_region_count(1, 1, 1, (1,)) == formula_count(parse_spec("B x=1 y=1 z=1 c=[1]"))
    assert h_region_count(1, 1, (1,), (1,), (1,)) == formula_count(
        parse_spec("H x=1 z=1 a=[1] c=[1] b=[1]"))


def test_dual_limit():
    assert dual_limit_product((), (1, 1), ()) == 1
    assert dual_limit_product((1, 1), (2,), (1, 1)) == 1
    with pytest.raises(TotalsMismatch):
        dual_limit_product((1,), (), (2,))


def test_audit_terms_multiply_out():
    res = formula_result(parse_spec("Rc x=2 y=1 z=2 a=[1,1] c=[1,2,1] b=[1,2]"))
    assert res.sqrt_pi_exponent == 0
    assert len(res.terms) >= 3
    assert isinstance(res.value, int) and res.value > 0


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([f for f in Family if f.is_rq]), st.integers(0, 2), st.integers(-1, 1),
       st.integers(0, 2), st.lists(st.integers(0, 2), max_size=2), st.lists(st.integers(0, 2), max_size=2),
       st.lists(st.integers(0, 2), max_size=2))
def test_formula_is_positive_integer(fam, x, y, z, a, c, b):
    s = RegionSpec(fam, x, y, z, FernSeq(a), FernSeq(c), FernSeq(b))
    if validate_spec(s):
        return
    res = formula_result(s)
    assert res.sqrt_pi_exponent == 0
    assert res.value >= 1
