"""Fern sequences, region specs, sequence operators and size bookkeeping."""

from __future__ import annotations

import re
from dataclasses import dataclass, field, replace
from enum import Enum


class FernSeq(tuple):
    """Side lengths of the triangles of a fern, left to right as listed.

    Positions are 1-based for the odd/even sums, so odd_sum covers
    terms 1, 3, 5, ...
    """

    def __new__(cls, terms=()):
        terms = tuple(int(t) for t in terms)
        if any(t < 0 for t in terms):
            raise ValueError(f"fern terms must be nonnegative, got {terms}")
        return super().__new__(cls, terms)

    @property
    def total(self) -> int:
        return sum(self)

    @property
    def odd_sum(self) -> int:
        return sum(self[0::2])

    @property
    def even_sum(self) -> int:
        return sum(self[1::2])

    def up_sum(self, first_up: bool = True) -> int:
        return self.odd_sum if first_up else self.even_sum

    def down_sum(self, first_up: bool = True) -> int:
        return self.even_sum if first_up else self.odd_sum

    def padded(self) -> "FernSeq":
        """Pad to even length with a trailing 0 (empty stays empty)."""
        return self if len(self) % 2 == 0 else FernSeq(self + (0,))

    def __repr__(self):
        return "(" + ",".join(map(str, self)) + ")"


def fern_stats(f, first_up: bool = True) -> dict:
    f = FernSeq(f)
    return {
        "total": f.total,
        "odd_sum": f.odd_sum,
        "even_sum": f.even_sum,
        "up_sum": f.up_sum(first_up),
        "down_sum": f.down_sum(first_up),
    }


# -- sequence operators -----------------------------------------------------

def seq_plus_one(f) -> FernSeq:
    f = tuple(f)
    if len(f) % 2 == 0:
        if not f:
            return FernSeq((1,))
        return FernSeq(f[:-1] + (f[-1] + 1,))
    return FernSeq(f + (1,))


def seq_prepend_zero(f) -> FernSeq:
    return FernSeq((0,) + tuple(f))


def seq_bar(f) -> FernSeq:
    r = tuple(reversed(tuple(f)))
    return FernSeq(r if len(r) % 2 == 0 else (0,) + r)


def seq_flip(f) -> FernSeq:
    r = tuple(reversed(tuple(f)))
    return FernSeq(r if len(r) % 2 == 1 else (0,) + r)


def strip_leading_zeros(f) -> FernSeq:
    f = tuple(f)
    i = 0
    while i < len(f) and f[i] == 0:
        i += 1
    return FernSeq(f[i:])


# -- families -----------------------------------------------------------------

class Family(str, Enum):
    R_CENTER = "Rc"
    R_LEFT = "Rl"
    R_NW = "Rnw"
    R_SW = "Rsw"
    Q_CENTER = "Qc"
    Q_LEFT = "Ql"
    Q_NW = "Qnw"
    Q_NE = "Qne"
    H_COMBINED = "H"
    B_SYMMETRIC = "B"
    SEMIHEXAGON = "S"
    CORED = "C"
    HEXAGON = "Hex"

    @property
    def is_r(self) -> bool:
        return self.value.startswith("R")

    @property
    def is_q(self) -> bool:
        return self.value.startswith("Q")

    @property
    def is_rq(self) -> bool:
        return self.is_r or self.is_q

    @property
    def shifted(self) -> bool:
        """Families whose base hexagon carries the extra +1."""
        return self in (Family.R_NW, Family.R_SW, Family.Q_NW, Family.Q_NE)

    @property
    def same_parity(self):
        """True if x = z (mod 2) is required, False if x != z, None if no rule."""
        if self in (Family.R_CENTER, Family.R_NW, Family.Q_CENTER, Family.Q_NW):
            return True
        if self in (Family.R_LEFT, Family.R_SW, Family.Q_LEFT, Family.Q_NE):
            return False
        return None


RQ_FAMILIES = [f for f in Family if f.is_rq]

SYMBOLS = {
    Family.R_CENTER: "R⊙", Family.R_LEFT: "R←", Family.R_NW: "R↖", Family.R_SW: "R↙",
    Family.Q_CENTER: "Q⊙", Family.Q_LEFT: "Q←", Family.Q_NW: "Q↖", Family.Q_NE: "Q↗",
}


class InvalidSpec(ValueError):
    def __init__(self, violations):
        if isinstance(violations, str):
            violations = [violations]
        self.violations = list(violations)
        super().__init__("; ".join(self.violations))


@dataclass(frozen=True)
class RegionSpec:
    """A family tag plus its parameters.

    ``orient`` only matters for the H family: first-triangle orientation of
    the left, middle and right fern, as a string over {U, D}.
    """

    family: Family
    x: int = 0
    y: int = 0
    z: int = 0
    a: FernSeq = field(default_factory=FernSeq)
    c: FernSeq = field(default_factory=FernSeq)
    b: FernSeq = field(default_factory=FernSeq)
    m: int = 0
    orient: str = "UUU"

    def __post_init__(self):
        object.__setattr__(self, "family", Family(self.family))
        for name in "abc":
            object.__setattr__(self, name, FernSeq(getattr(self, name)))
        for name in "xyzm":
            object.__setattr__(self, name, int(getattr(self, name)))

    def with_(self, **kw) -> "RegionSpec":
        return replace(self, **kw)

    def __str__(self):
        return format_spec(self)


def _fmt_list(f) -> str:
    return "[" + ",".join(map(str, f)) + "]"


def format_spec(spec: RegionSpec) -> str:
    parts = [spec.family.value, f"x={spec.x}", f"y={spec.y}", f"z={spec.z}",
             f"a={_fmt_list(spec.a)}", f"c={_fmt_list(spec.c)}", f"b={_fmt_list(spec.b)}"]
    if spec.family is Family.CORED or spec.m:
        parts.append(f"m={spec.m}")
    if spec.family is Family.H_COMBINED and spec.orient != "UUU":
        parts.append(f"orient={spec.orient}")
    return " ".join(parts)


_TOKEN = re.compile(r"^(x|y|z|m)=(-?\d+)$|^(a|b|c)=\[([\d,\s]*)\]$|^orient=([UD]{3})$")


def parse_spec(text: str) -> RegionSpec:
    """Parse ``<FAM> x=.. y=.. z=.. a=[..] c=[..] b=[..] [m=..]``."""
    # allow spaces inside brackets
    text = re.sub(r"\[\s*([^\]]*?)\s*\]", lambda mo: "[" + re.sub(r"\s+", "", mo.group(1)) + "]", text)
    tokens = text.split()
    if not tokens:
        raise InvalidSpec("empty spec")
    try:
        fam = Family(tokens[0])
    except ValueError:
        raise InvalidSpec(f"unknown family {tokens[0]!r}") from None
    kw = {}
    for tok in tokens[1:]:
        mo = _TOKEN.match(tok)
        if not mo:
            raise InvalidSpec(f"cannot parse token {tok!r}")
        if mo.group(1):
            key, val = mo.group(1), int(mo.group(2))
        elif mo.group(3):
            key = mo.group(3)
            body = mo.group(4).strip()
            val = FernSeq(int(t) for t in body.split(",") if t != "") if body else FernSeq()
        else:
            key, val = "orient", mo.group(5)
        if key in kw:
            raise InvalidSpec(f"duplicate key {key}")
        kw[key] = val
    return RegionSpec(fam, **kw)


def parse_list(text: str) -> FernSeq:
    text = text.strip()
    if text.startswith("[") and text.endswith("]"):
        text = text[1:-1]
    return FernSeq(int(t) for t in text.split(",") if t.strip()) if text.strip() else FernSeq()


# -- validation ---------------------------------------------------------------

def min_y(spec: RegionSpec) -> int:
    """Smallest admissible y for an R/Q spec."""
    a, b = spec.a.total, spec.b.total
    fam = spec.family
    if fam is Family.R_NW and a < b:
        return -1
    if fam is Family.R_SW and a > b:
        return -1
    if fam in (Family.Q_NW, Family.Q_NE) and a < b:
        return -1
    return 0


def validate_spec(spec: RegionSpec) -> list:
    """Return a list of violation strings (empty when valid)."""
    out = []
    fam = spec.family
    for name in ("x", "z", "m"):
        if getattr(spec, name) < 0:
            out.append(f"range: {name} must be >= 0")
    if fam is not Family.CORED and spec.m != 0:
        out.append("range: m only applies to the C family")
    if fam.is_rq:
        lo = min_y(spec)
        if spec.y < lo:
            out.append(f"range: y must be >= {lo} for {fam.value} with a={spec.a.total}, b={spec.b.total}")
        same = fam.same_parity
        if same and (spec.x - spec.z) % 2:
            out.append("parity: x ≡ z (mod 2) required")
        if same is False and (spec.x - spec.z) % 2 == 0:
            out.append("parity: x ≢ z (mod 2) required")
    elif fam is Family.H_COMBINED:
        if spec.a.total != spec.b.total:
            out.append("totals: left and right ferns must have equal totals")
        if spec.y != 0:
            out.append("range: y is not used by the H family (must be 0)")
    elif fam is Family.B_SYMMETRIC:
        if spec.y < 0:
            out.append("range: y must be >= 0")
        if (spec.x - spec.y) % 2:
            out.append("parity: x ≡ y (mod 2) required")
        if spec.a or spec.b:
            out.append("range: B family uses only the middle fern c")
    elif fam in (Family.CORED, Family.HEXAGON):
        if spec.y < 0:
            out.append("range: y must be >= 0")
        if spec.a or spec.b or spec.c:
            out.append(f"range: {fam.value} family takes no ferns")
    elif fam is Family.SEMIHEXAGON:
        if spec.b or spec.c or spec.x or spec.y or spec.z:
            out.append("range: S family takes only the fern a")
    return out


def check_spec(spec: RegionSpec) -> RegionSpec:
    v = validate_spec(spec)
    if v:
        raise InvalidSpec(v)
    return spec


# -- size bookkeeping ---------------------------------------------------------

def base_sides(spec: RegionSpec) -> tuple:
    """Base hexagon sides (N, NE, SE, S, SW, NW)."""
    fam = spec.family
    x, y, z = spec.x, spec.y, spec.z
    a, b, c = spec.a, spec.b, spec.c
    A, B = a.total, b.total
    t = 1 if fam.shifted else 0
    if fam.is_r:
        d = abs(A - B)
        up = a.odd_sum + b.even_sum + c.even_sum
        dn = a.even_sum + b.odd_sum + c.odd_sum
        return (x + up, 2 * y + z + d + dn + t, z + up, x + dn, 2 * y + z + d + up + t, z + dn)
    if fam.is_q:
        o = a.odd_sum + b.odd_sum + c.odd_sum
        e = a.even_sum + b.even_sum + c.even_sum
        pa, pb = max(A - B, 0), max(B - A, 0)
        return (x + e, y + z + o + pa + t, y + z + e + pb, x + o, y + z + e + pa + t, y + z + o + pb)
    if fam is Family.H_COMBINED:
        u, d = h_updown(spec)
        return (x + d, z + u, z + d, x + u, z + d, z + u)
    if fam is Family.B_SYMMETRIC:
        o, e = c.odd_sum, c.even_sum
        return (x + e, y + z + o, y + z + e, x + o, y + z + e, y + z + o)
    if fam is Family.CORED:
        m = spec.m
        return (x, y + m, z, x + m, y, z + m)
    if fam is Family.HEXAGON:
        return (x, y, z, x, y, z)
    raise InvalidSpec(f"no base hexagon for family {fam.value}")


def h_updown(spec: RegionSpec) -> tuple:
    """Total up and down side lengths over the three ferns of an H spec."""
    u = d = 0
    for f, o in zip((spec.a, spec.c, spec.b), spec.orient):
        u += f.up_sum(o == "U")
        d += f.down_sum(o == "U")
    return u, d


def quasi_perimeter(spec: RegionSpec) -> int:
    """Perimeter of the base hexagon:
    2x+4y+4z+3a+3b+3c+2|a-b|, plus 2 for the shifted families."""
    if not spec.family.is_rq:
        raise InvalidSpec(f"quasi-perimeter undefined for family {spec.family.value}")
    A, B = spec.a.total, spec.b.total
    p = 2 * spec.x + 4 * spec.y + 4 * spec.z + 3 * (A + B + spec.c.total) + 2 * abs(A - B)
    return p + 2 if spec.family.shifted else p


def h_param(spec: RegionSpec) -> int:
    return quasi_perimeter(spec) + spec.x + spec.z


# -- sweep budgets ------------------------------------------------------------

DEFAULT_ALPHABET = (FernSeq(), FernSeq((1,)), FernSeq((2,)), FernSeq((1, 1)), FernSeq((2, 1)))


@dataclass(frozen=True)
class SweepBudget:
    """Bounds for exhaustive sweeps.  ``sample`` keeps a random subset of
    that many instances (chosen with ``seed``) when set."""
    max_x: int = 3
    max_y: int = 2
    max_z: int = 3
    fern_alphabet: tuple = DEFAULT_ALPHABET
    max_area: int = 100
    sample: int | None = None
    seed: int = 0

    def __post_init__(self):
        if self.max_area <= 0:
            raise ValueError("max_area must be positive")
        object.__setattr__(self, "fern_alphabet", tuple(FernSeq(f) for f in self.fern_alphabet))
