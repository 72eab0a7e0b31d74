"""Triangular-lattice geometry.

Internal coordinates: a unit triangle is a pair (h, k).  h is the horizontal
strip between heights h and h+1 (h grows upward) and k is twice the x
coordinate of its centroid.  Lattice points are (X, h) with X = 2x and
X = h (mod 2).

    up   (h, k), h+k odd:  vertices (k-1, h), (k+1, h), (k, h+1)
    down (h, k), h+k even: vertices (k-1, h+1), (k+1, h+1), (k, h)

Neighbours: (h, k-1) and (h, k+1) in the same strip, plus (h-1, k) below an
up triangle or (h+1, k) above a down triangle.

The text form uses rows growing downward: ``r c U|D`` with r = -h, c = k.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .params import Family, FernSeq, InvalidSpec, RegionSpec, base_sides, check_spec


class GeometryConflict(ValueError):
    """Ferns overlap each other or leave the base hexagon."""


class CutNotSeparating(ValueError):
    """A proposed cut fails the separating or balancing condition."""


def is_up(cell) -> bool:
    h, k = cell
    return (h + k) % 2 == 1


def vertices(cell):
    h, k = cell
    if (h + k) % 2:
        return ((k - 1, h), (k + 1, h), (k, h + 1))
    return ((k - 1, h + 1), (k + 1, h + 1), (k, h))


def neighbours(cell):
    h, k = cell
    third = (h - 1, k) if (h + k) % 2 else (h + 1, k)
    return ((h, k - 1), (h, k + 1), third)


def cell_from_vertices(pts):
    """Recover (h, k) from the three vertices of a unit triangle."""
    hs = sorted(p[1] for p in pts)
    lo = hs[0]
    low = [p for p in pts if p[1] == lo]
    if len(low) == 2:
        return (lo, (low[0][0] + low[1][0]) // 2)
    return (lo, low[0][0])


@dataclass(frozen=True)
class Region:
    """A finite set of unit triangles.

    ``removed`` and ``outline`` are drawing hints only (the cells taken out
    of the base hexagon, and its corner points); they do not take part in
    equality.
    """

    cells: frozenset
    removed: frozenset = field(default=frozenset(), compare=False)
    outline: tuple = field(default=(), compare=False)

    def __post_init__(self):
        object.__setattr__(self, "cells", frozenset(self.cells))
        object.__setattr__(self, "removed", frozenset(self.removed))

    def __len__(self):
        return len(self.cells)

    def __iter__(self):
        return iter(self.cells)

    def __contains__(self, c):
        return c in self.cells

    @property
    def n_up(self) -> int:
        return sum(1 for c in self.cells if is_up(c))

    @property
    def n_down(self) -> int:
        return len(self.cells) - self.n_up

    def is_balanced(self) -> bool:
        return 2 * self.n_up == len(self.cells)

    def edges(self):
        """Yield (up, down) pairs of adjacent cells."""
        for c in self.cells:
            if is_up(c):
                for d in neighbours(c):
                    if d in self.cells:
                        yield c, d

    def translated(self, dh: int, dk: int) -> "Region":
        if (dh + dk) % 2:
            raise ValueError("translation must preserve orientation")

        def mv(c):
            return (c[0] + dh, c[1] + dk)

        return Region({mv(c) for c in self.cells}, {mv(c) for c in self.removed},
                      tuple((X + dk, h + dh) for X, h in self.outline))

    def normalized(self) -> "Region":
        """Translate so the lowest strip is 0 and the smallest k is 0 or 1."""
        if not self.cells:
            return self
        h0 = min(c[0] for c in self.cells)
        k0 = min(c[1] for c in self.cells)
        dk = -k0 if (h0 + k0) % 2 == 0 else -k0 + 1
        return self.translated(-h0, dk)

    def to_text(self) -> str:
        rows = sorted((-h, k, "U" if is_up((h, k)) else "D") for h, k in self.cells)
        return "".join(f"{r} {c} {o}\n" for r, c, o in rows)

    @classmethod
    def from_text(cls, text: str) -> "Region":
        cells = []
        for line in text.splitlines():
            if not line.strip():
                continue
            r, c, o = line.split()
            cells.append((-int(r), int(c), o))
        if not cells:
            return cls(frozenset())
        h, k, o = cells[0]
        shift = 0 if is_up((h, k)) == (o == "U") else 1
        out = set()
        for h, k, o in cells:
            cell = (h, k + shift)
            if is_up(cell) != (o == "U"):
                raise ValueError("inconsistent orientations in region text")
            out.add(cell)
        return cls(out)


# -- half-plane description of hexagons ---------------------------------------

@dataclass(frozen=True)
class Hexagon:
    """Closed hexagon cut out by three pairs of lattice lines.

    h_lo <= h <= h_hi,  p_lo <= X - h <= p_hi,  q_lo <= X + h <= q_hi.
    """

    sides: tuple
    corners: tuple  # W, NWc, NEc, E, SEc, SWc as (X, h)
    h_lo: int
    h_hi: int
    p_lo: int
    p_hi: int
    q_lo: int
    q_hi: int

    @classmethod
    def from_sides(cls, sides, west=(0, 0)) -> "Hexagon":
        n, ne, se, s, sw, nw = sides
        if min(sides) < 0:
            raise GeometryConflict(f"negative side length in {sides}")
        if n + ne != s + sw or ne + se != sw + nw:
            raise GeometryConflict(f"hexagon sides {sides} do not close up")
        X, h = west
        pts = [(X, h)]
        for length, (dx, dh) in ((nw, (1, 1)), (n, (2, 0)), (ne, (1, -1)),
                                 (se, (-1, -1)), (s, (-2, 0))):
            X, h = X + length * dx, h + length * dh
            pts.append((X, h))
        W, NWc, NEc, E, SEc, SWc = pts
        return cls(tuple(sides), tuple(pts), SEc[1], NWc[1], W[0] - W[1], E[0] - E[1],
                   W[0] + W[1], E[0] + E[1])

    @property
    def west(self):
        return self.corners[0]

    @property
    def east(self):
        return self.corners[3]

    def contains_point(self, X, h) -> bool:
        return (self.h_lo <= h <= self.h_hi and self.p_lo <= X - h <= self.p_hi
                and self.q_lo <= X + h <= self.q_hi)

    def cells(self) -> set:
        out = set()
        xs = [c[0] for c in self.corners]
        for h in range(self.h_lo, self.h_hi):
            for k in range(min(xs), max(xs) + 1):
                c = (h, k)
                if all(self.contains_point(X, hh) for X, hh in vertices(c)):
                    out.add(c)
        return out

    def left_x(self, level: int) -> int:
        """X of the west boundary at height ``level``."""
        Xw, hw = self.west
        return Xw + abs(level - hw)

    def right_x(self, level: int) -> int:
        Xe, he = self.east
        return Xe - abs(level - he)


def triangle_cells(X0: int, level: int, side: int, up: bool) -> set:
    """Cells of a triangle of the given side whose horizontal edge is
    [X0, X0 + 2*side] at height ``level``."""
    out = set()
    for j in range(side):
        h = level + j if up else level - 1 - j
        for k in range(X0 + j + 1, X0 + 2 * side - j):
            out.add((h, k))
    return out


def fern_cells(X0: int, level: int, terms, first_up: bool, leftward: bool = False):
    """Lay a fern along ``level``.

    Terms are placed left to right from X0, or right to left when
    ``leftward`` (then X0 is the right end).  Zero terms still flip the
    orientation.  Returns (cells, X at the far end).
    """
    out = set()
    up = first_up
    X = X0
    for t in terms:
        if leftward:
            out |= triangle_cells(X - 2 * t, level, t, up)
            X -= 2 * t
        else:
            out |= triangle_cells(X, level, t, up)
            X += 2 * t
        up = not up
    return out, X


# -- region constructors -------------------------------------------------------

def _gaps(spec: RegionSpec):
    s = spec.x + spec.z
    lo, hi = s // 2, (s + 1) // 2
    fam = spec.family
    if fam in (Family.R_CENTER, Family.R_NW, Family.Q_CENTER, Family.Q_NW):
        if s % 2:
            raise InvalidSpec("parity: x ≡ z (mod 2) required")
        return lo, lo
    if fam in (Family.R_LEFT, Family.R_SW, Family.Q_LEFT):
        return lo, hi
    if fam is Family.Q_NE:
        return hi, lo
    if fam is Family.H_COMBINED:
        return lo, hi
    raise InvalidSpec(f"no gap rule for {fam.value}")


def fern_level(spec: RegionSpec, hexagon: Hexagon) -> int:
    """Height of the line carrying the ferns."""
    fam = spec.family
    A, B = spec.a.total, spec.b.total
    he = hexagon.east[1]
    if fam.is_r or fam.is_q:
        up = 1 if fam in (Family.R_NW, Family.Q_NW, Family.Q_NE) else 0
        return he + spec.y + max(A - B, 0) + up
    if fam is Family.H_COMBINED:
        return hexagon.west[1]
    if fam is Family.B_SYMMETRIC:
        return hexagon.west[1] + spec.z
    if fam is Family.SEMIHEXAGON:
        return hexagon.h_lo
    raise InvalidSpec(f"no fern line for {fam.value}")


def _three_ferns(spec, hexagon, level, orient, gaps):
    """Place left, middle, right ferns on ``level``; check they fit."""
    (ou_a, ou_c, ou_b) = orient
    g1, g2 = gaps
    XL, XR = hexagon.left_x(level), hexagon.right_x(level)
    left, X = fern_cells(XL, level, spec.a, ou_a)
    mid, X = fern_cells(X + 2 * g1, level, spec.c, ou_c)
    right, Xr = fern_cells(XR, level, spec.b, ou_b, leftward=True)
    if X + 2 * g2 != Xr:
        raise GeometryConflict(
            f"ferns and gaps span {(X + 2 * g2 - XL) // 2} units but the line is {(Xr - XL) // 2} wide")
    return left | mid | right


def build_region(spec: RegionSpec) -> Region:
    """Build the region described by a validated spec."""
    check_spec(spec)
    fam = spec.family
    if fam is Family.CORED:
        return cored_hexagon(spec.x, spec.y, spec.z, spec.m)
    if fam is Family.HEXAGON:
        return hexagon_region(spec.x, spec.y, spec.z)
    if fam is Family.SEMIHEXAGON:
        return dented_semihexagon(spec.a)
    hexagon = Hexagon.from_sides(base_sides(spec))
    base = hexagon.cells()
    level = fern_level(spec, hexagon)
    if fam.is_r:
        removed = _three_ferns(spec, hexagon, level, (False, True, True), _gaps(spec))
    elif fam.is_q:
        removed = _three_ferns(spec, hexagon, level, (True, True, True), _gaps(spec))
    elif fam is Family.H_COMBINED:
        orient = tuple(o == "U" for o in spec.orient)
        removed = _three_ferns(spec, hexagon, level, orient, _gaps(spec))
    elif fam is Family.B_SYMMETRIC:
        g = (spec.x + spec.y) // 2
        XL = hexagon.left_x(level)
        removed, X = fern_cells(XL + 2 * g, level, spec.c, True)
        if X + 2 * g != hexagon.right_x(level):
            raise GeometryConflict("fern does not sit evenly between the sides")
    else:
        raise InvalidSpec(f"cannot build family {fam.value}")
    if not removed <= base:
        raise GeometryConflict("a fern leaves the base hexagon")
    return Region(base - removed, removed, hexagon.corners)


def hexagon_region(x: int, y: int, z: int) -> Region:
    """Hexagon with sides x, y, z, x, y, z clockwise from the north side."""
    hexagon = Hexagon.from_sides((x, y, z, x, y, z))
    return Region(hexagon.cells(), outline=hexagon.corners)


def semihexagon_cells(top: int, height: int):
    """Upper half of a hexagon: north side ``top``, slanted sides ``height``,
    base on h = 0 starting at X = 0."""
    hexagon = Hexagon.from_sides((top, height, 0, top + height, 0, height))
    return hexagon


def dented_semihexagon(terms) -> Region:
    """Semihexagon with up triangles of sides a1, a3, ... removed from its
    base, separated by a2, a4, ..."""
    f = FernSeq(terms)
    hexagon = semihexagon_cells(f.even_sum, f.odd_sum)
    base = hexagon.cells()
    removed, _ = fern_cells(0, 0, f, True)
    removed &= base
    return Region(base - removed, removed, hexagon.corners)


def dented_semihexagon_positions(top: int, positions) -> Region:
    """Semihexagon of north side ``top`` and height len(positions) with unit
    up triangles removed at the given 1-based base positions."""
    n = len(positions)
    hexagon = semihexagon_cells(top, n)
    base = hexagon.cells()
    removed = set()
    for p in positions:
        if not 1 <= p <= top + n:
            raise ValueError(f"dent position {p} out of range")
        removed |= triangle_cells(2 * (p - 1), 0, 1, True)
    return Region(base - removed, removed, hexagon.corners)


def core_anchor(x: int, y: int, z: int):
    """Left vertex of the core for C_{x,y,z}, with the west vertex at (0,0)."""
    # centre of the x,y,z,x,y,z hexagon in doubled units (X2, h2 are 2*X, 2*h)
    X2, h2 = 2 * x + y + z, z - y
    px, py, pz = x % 2, y % 2, z % 2
    if px == py == pz:
        pass
    elif py == pz:      # x is the odd one out: half a unit to the left
        X2 -= 2
    elif px == pz:      # y: half a unit to the north-west
        X2, h2 = X2 - 1, h2 + 1
    else:               # z: half a unit to the south-west
        X2, h2 = X2 - 1, h2 - 1
    assert X2 % 2 == 0 and h2 % 2 == 0
    return X2 // 2, h2 // 2


def cored_hexagon(x: int, y: int, z: int, m: int) -> Region:
    """Hexagon x, y+m, z, x+m, y, z+m minus an up triangle of side m near the
    centre of the inner x, y, z hexagon."""
    hexagon = Hexagon.from_sides((x, y + m, z, x + m, y, z + m))
    base = hexagon.cells()
    X0, h0 = core_anchor(x, y, z)
    core = triangle_cells(X0, h0, m, True)
    if not core <= base:
        raise GeometryConflict("core leaves the hexagon")
    return Region(base - core, core, hexagon.corners)


# -- forced lozenges, splitting, symmetries ----------------------------------

class _EmptyForced:
    """Marker: some cell has no possible partner, so there is no tiling."""

    def __repr__(self):
        return "EmptyForced"

    def __bool__(self):
        return False


EmptyForced = _EmptyForced()


def remove_forced_lozenges(r: Region):
    """Repeatedly remove cells that have exactly one possible partner.

    Returns (region, number of lozenges removed), or (EmptyForced, n) if a
    cell with no partner shows up.
    """
    cells = set(r.cells)
    removed = 0
    stack = list(cells)
    while stack:
        c = stack.pop()
        if c not in cells:
            continue
        nb = [d for d in neighbours(c) if d in cells]
        if not nb:
            return EmptyForced, removed
        if len(nb) == 1:
            d = nb[0]
            cells.discard(c)
            cells.discard(d)
            removed += 1
            for e in neighbours(d):
                if e in cells:
                    stack.append(e)
    return Region(cells, r.removed, r.outline), removed


def check_separating(r: Region, part) -> None:
    """Raise CutNotSeparating unless ``part`` meets both splitting conditions."""
    part = set(part)
    if not part <= r.cells:
        raise CutNotSeparating("part is not inside the region")
    kinds = set()
    for c in part:
        for d in neighbours(c):
            if d in r.cells and d not in part:
                kinds.add(is_up(c))
    if len(kinds) > 1:
        raise CutNotSeparating("both triangle types run along the cut")
    if 2 * sum(1 for c in part if is_up(c)) != len(part):
        raise CutNotSeparating("the part is not balanced")


def split_at_level(r: Region, level: int):
    """Split into cells above and below the horizontal line at ``level``."""
    upper = {c for c in r.cells if c[0] >= level}
    check_separating(r, upper)
    lower = r.cells - upper
    return Region(upper), Region(lower)


def split_along_fern_line(r: Region, spec: RegionSpec):
    """Split an R/Q region along its fern line.

    With z = 0 the cut is the straight line.  With x = 0 the up triangles
    of side floor(z/2), ceil(z/2) standing on the two gaps are handed to the
    lower part.
    """
    if not r.cells:
        return Region(frozenset()), Region(frozenset())
    hexagon = Hexagon.from_sides(base_sides(spec))
    level = fern_level(spec, hexagon)
    upper = {c for c in r.cells if c[0] >= level}
    if spec.z != 0:
        if spec.x != 0:
            raise CutNotSeparating("only z = 0 or x = 0 regions split along the fern line")
        g1, g2 = _gaps(spec)
        XL = hexagon.left_x(level)
        X1 = XL + 2 * spec.a.total
        X2 = X1 + 2 * g1 + 2 * spec.c.total
        bumps = triangle_cells(X1, level, g1, True) | triangle_cells(X2, level, g2, True)
        upper -= bumps
    check_separating(r, upper)
    return Region(upper), Region(r.cells - upper)


def rotate180(r: Region) -> Region:
    def f(c):
        return (-c[0] - 1, -c[1])

    return Region({f(c) for c in r.cells}, {f(c) for c in r.removed},
                  tuple((-X, -h) for X, h in r.outline))


def reflect_vertical(r: Region) -> Region:
    """Mirror in a vertical line (left and right swap)."""
    def f(c):
        return (c[0], -c[1])

    return Region({f(c) for c in r.cells}, {f(c) for c in r.removed},
                  tuple((-X, h) for X, h in r.outline))


def reflect_horizontal(r: Region) -> Region:
    """Mirror in a horizontal line (up and down swap)."""
    def f(c):
        return (-c[0] - 1, c[1])

    return Region({f(c) for c in r.cells}, {f(c) for c in r.removed},
                  tuple((X, -h) for X, h in r.outline))


def _rot60_point(X, h):
    # lattice basis i*e1 + j*e2 with X = 2i + j, h = j; rotation e1->e2, e2->e2-e1
    j = h
    i = (X - j) // 2
    i2, j2 = -j, i + j
    return 2 * i2 + j2, j2


def rotate60(r: Region) -> Region:
    """Rotate counterclockwise by 60 degrees (up and down swap)."""
    def f(c):
        return cell_from_vertices([_rot60_point(*p) for p in vertices(c)])

    return Region({f(c) for c in r.cells}, {f(c) for c in r.removed},
                  tuple(_rot60_point(*p) for p in r.outline))


def same_shape(r1: Region, r2: Region) -> bool:
    """Equal up to translation."""
    return r1.normalized().cells == r2.normalized().cells
