from __future__ import annotations

import pytest
from hypothesis import given, settings, strategies as st

from fernhex.lattice import (
    CutNotSeparating,
    EmptyForced,
    GeometryConflict,
    Region,
    build_region,
    check_separating,
    cored_hexagon,
    dented_semihexagon,
    hexagon_region,
    is_up,
    neighbours,
    reflect_horizontal,
    reflect_vertical,
    remove_forced_lozenges,
    rotate60,
    rotate180,
    same_shape,
    split_at_level,
    vertices,
)
from fernhex.oracle import count_tilings
from fernhex.params import Family, FernSeq, RegionSpec, validate_spec

small = st.integers(0, 3)
ferns = st.lists(st.integers(0, 2), max_size=3).map(FernSeq)


def test_orientation_and_neighbours():
    assert is_up((0, 1)) and not is_up((0, 0))
    for c in [(0, 1), (0, 0), (3, -2)]:
        for d in neighbours(c):
            assert is_up(d) != is_up(c)
            # neighbours share an edge: two common vertices
            assert len(set(vertices(c)) & set(vertices(d))) == 2


@given(small, small, small)
def test_hexagon_area(x, y, z):
    r = hexagon_region(x, y, z)
    assert len(r) == 2 * (x * y + y * z + z * x)
    assert r.is_balanced()


def test_unit_hexagon_text():
    r = hexagon_region(1, 1, 1)
    text = r.to_text()
    assert len(text.splitlines()) == 6
    assert same_shape(Region.from_text(text), r)


@given(small, small, small)
def test_text_round_trip(x, y, z):
    r = hexagon_region(x, y, z)
    assert same_shape(Region.from_text(r.to_text()), r)


@given(small, small, small)
def test_symmetries_keep_counts(x, y, z):
    r = hexagon_region(x, y, z)
    n = count_tilings(r)
    for g in (rotate60, rotate180, reflect_vertical, reflect_horizontal):
        assert count_tilings(g(r)) == n


@given(small, small, small)
def test_six_rotations_are_identity(x, y, z):
    r = hexagon_region(x, y, z)
    s = r
    for _ in range(6):
        s = rotate60(s)
    assert same_shape(s, r)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([f for f in Family if f.is_rq]), small, st.integers(0, 2), small,
       ferns, ferns, ferns)
def test_rq_regions_balanced(fam, x, y, z, a, c, b):
    s = RegionSpec(fam, x, y, z, a, c, b)
    if validate_spec(s):
        return
    try:
        r = build_region(s)
    except GeometryConflict:
        return
    assert r.is_balanced()
    assert not (r.cells & r.removed)


def test_dented_semihexagon_area():
    r = dented_semihexagon((1, 1))
    assert r.is_balanced()
    assert len(r.removed) == 1


def test_cored_hexagon_balanced():
    for m in range(3):
        assert cored_hexagon(2, 2, 2, m).is_balanced()


def test_forced_lozenges_keep_count():
    r = build_region(RegionSpec(Family.R_CENTER, 1, 1, 1, (1,), (1,), (1,)))
    reduced, n = remove_forced_lozenges(r)
    assert n >= 0
    assert count_tilings(reduced) == count_tilings(r)


def test_forced_detects_dead_cell():
    lone = Region({(0, 1)} | {(5, 0), (5, 1)})
    reduced, _ = remove_forced_lozenges(lone)
    assert reduced is EmptyForced


def test_split_hexagon_fails_cleanly():
    r = hexagon_region(2, 2, 2)
    with pytest.raises(CutNotSeparating):
        split_at_level(r, 0)


def test_check_separating_rejects_outside_part():
    r = hexagon_region(1, 1, 1)
    with pytest.raises(CutNotSeparating):
        check_separating(r, {(100, 100)})
