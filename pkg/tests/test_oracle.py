from __future__ import annotations

import pytest
from hypothesis import given, settings, strategies as st

from fernhex.lattice import Region, build_region, dented_semihexagon, hexagon_region
from fernhex.oracle import (
    AreaCeilingExceeded,
    LimitExceeded,
    bareiss_det,
    count_det,
    count_profile,
    count_tilings,
    enumerate_tilings,
    first_tiling,
)
from fernhex.params import parse_spec

small = st.integers(0, 3)


def test_known_hexagons():
    assert count_tilings(hexagon_region(1, 1, 1)) == 2
    assert count_tilings(hexagon_region(2, 2, 2)) == 20
    assert count_tilings(hexagon_region(0, 0, 0)) == 1


@given(small, small, small)
def test_backends_agree_on_hexagons(x, y, z):
    r = hexagon_region(x, y, z)
    assert count_profile(r.cells) == count_det(r.cells)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(0, 2), min_size=1, max_size=4))
def test_backends_agree_on_semihexagons(terms):
    r = dented_semihexagon(terms)
    assert count_profile(r.cells) == count_det(r.cells)


@settings(max_examples=40, deadline=None)
@given(small, small, small, st.data())
def test_backends_agree_on_punctured_hexagons(x, y, z, data):
    r = hexagon_region(x, y, z)
    cells = sorted(r.cells)
    if len(cells) < 2:
        return
    drop = data.draw(st.sets(st.sampled_from(cells), max_size=4))
    sub = Region(r.cells - drop)
    assert count_tilings(sub, "profile") == count_tilings(sub, "det")


def test_unbalanced_is_zero():
    r = hexagon_region(2, 2, 2)
    one = Region(r.cells - {min(r.cells)})
    assert count_tilings(one) == 0


def test_area_ceiling():
    r = hexagon_region(4, 4, 4)
    with pytest.raises(AreaCeilingExceeded):
        count_tilings(r, max_area=10)


def test_unknown_backend():
    with pytest.raises(ValueError):
        count_tilings(hexagon_region(1, 1, 1), backend="nope")


def test_enumeration_matches_count():
    r = build_region(parse_spec("Rc x=1 y=1 z=1 a=[1] c=[1] b=[1]"))
    n = count_tilings(r)
    tilings = enumerate_tilings(r, limit=n)
    assert len(tilings) == n == len(set(tilings))
    for t in tilings:
        covered = [c for loz in t for c in loz]
        assert sorted(covered) == sorted(r.cells)


def test_enumeration_limit():
    with pytest.raises(LimitExceeded):
        enumerate_tilings(hexagon_region(2, 2, 2), limit=5)


def test_first_tiling():
    t = first_tiling(hexagon_region(1, 1, 1))
    assert len(t) == 3
    assert first_tiling(Region({(0, 1)})) is None


def test_bareiss_small():
    assert bareiss_det([[2, 1], [1, 3]]) == 5
    assert bareiss_det([[0, 1], [1, 0]]) == -1
    assert bareiss_det([[1, 2], [2, 4]]) == 0
