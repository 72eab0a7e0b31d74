from __future__ import annotations

import pytest
from hypothesis import given, strategies as st

from fernhex.params import (
    Family,
    FernSeq,
    InvalidSpec,
    RegionSpec,
    SweepBudget,
    base_sides,
    check_spec,
    format_spec,
    h_param,
    min_y,
    parse_list,
    parse_spec,
    quasi_perimeter,
    seq_bar,
    seq_flip,
    seq_plus_one,
    seq_prepend_zero,
    strip_leading_zeros,
    validate_spec,
)

ferns = st.lists(st.integers(0, 4), max_size=5).map(FernSeq)
rq_families = st.sampled_from([f for f in Family if f.is_rq])


def test_fern_sums():
    f = FernSeq((2, 1, 3))
    assert f.total == 6
    assert f.odd_sum == 5 and f.even_sum == 1
    assert f.up_sum(False) == 1 and f.down_sum(False) == 5


def test_negative_term_rejected():
    with pytest.raises(ValueError):
        FernSeq((1, -1))


def test_sequence_operators():
    assert seq_plus_one((2, 1)) == (2, 2)
    assert seq_plus_one((2,)) == (2, 1)
    assert seq_plus_one(()) == (1,)
    assert seq_prepend_zero((1, 2)) == (0, 1, 2)
    assert seq_bar((1, 2)) == (2, 1)
    assert seq_bar((1, 2, 3)) == (0, 3, 2, 1)
    assert seq_flip((1, 2)) == (0, 2, 1)
    assert seq_flip((1, 2, 3)) == (3, 2, 1)
    assert strip_leading_zeros((0, 0, 1, 0)) == (1, 0)


@given(ferns)
def test_plus_one_adds_one(f):
    assert seq_plus_one(f).total == f.total + 1


@given(ferns)
def test_reversals_keep_total(f):
    assert seq_bar(f).total == f.total
    assert seq_flip(f).total == f.total
    assert len(seq_bar(f)) % 2 == 0
    assert len(seq_flip(f)) % 2 == 1


def test_parse_spec_basic():
    s = parse_spec("Rc x=2 y=1 z=4 a=[1,1,1,1] c=[2,2,1] b=[2,1,1,2]")
    assert s.family is Family.R_CENTER
    assert (s.x, s.y, s.z) == (2, 1, 4)
    assert s.c == (2, 2, 1)


def test_parse_spec_spaces_in_lists():
    assert parse_spec("Ql x=1 z=0 a=[1, 2] c=[ ] b=[3]").a == (1, 2)


@pytest.mark.parametrize("text", ["", "Zz x=1", "Rc x=1 x=2", "Rc x=one", "Rc q=1"])
def test_parse_spec_errors(text):
    with pytest.raises(InvalidSpec):
        parse_spec(text)


@given(rq_families, st.integers(0, 4), st.integers(-1, 3), st.integers(0, 4), ferns, ferns, ferns)
def test_format_parse_round_trip(fam, x, y, z, a, c, b):
    s = RegionSpec(fam, x, y, z, a, c, b)
    assert parse_spec(format_spec(s)) == s


def test_parity_violation():
    v = validate_spec(parse_spec("Rc x=1 y=0 z=2"))
    assert any(m.startswith("parity") for m in v)
    with pytest.raises(InvalidSpec):
        check_spec(parse_spec("Rl x=1 y=0 z=1"))


def test_min_y():
    assert min_y(parse_spec("Rnw x=0 z=0 a=[1] b=[2]")) == -1
    assert min_y(parse_spec("Rnw x=0 z=0 a=[2] b=[1]")) == 0
    assert min_y(parse_spec("Rsw x=0 z=1 a=[2] b=[1]")) == -1
    assert min_y(parse_spec("Qne x=0 z=1 a=[1] b=[2]")) == -1


def test_h_and_b_rules():
    assert validate_spec(parse_spec("H x=1 z=1 a=[1] b=[2]"))
    assert not validate_spec(parse_spec("H x=1 z=1 a=[1,1] b=[2]"))
    assert validate_spec(parse_spec("B x=1 y=2 z=1"))


@given(rq_families, st.integers(0, 4), st.integers(0, 3), st.integers(0, 4), ferns, ferns, ferns)
def test_base_hexagon_closes(fam, x, y, z, a, c, b):
    s = RegionSpec(fam, x, y, z, a, c, b)
    sides = base_sides(s)
    # the base hexagon closes up: opposite side differences agree
    assert sides[0] - sides[3] == sides[4] - sides[1] == sides[2] - sides[5]
    assert quasi_perimeter(s) == sum(sides)
    assert h_param(s) == quasi_perimeter(s) + x + z
    assert quasi_perimeter(s) >= 2 * x + 4 * z


def test_parse_list():
    assert parse_list("[1, 2,3]") == (1, 2, 3)
    assert parse_list("[]") == ()


def test_budget_rejects_bad_area():
    with pytest.raises(ValueError):
        SweepBudget(max_area=0)
