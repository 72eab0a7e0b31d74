"""Closed-form tiling counts, evaluated exactly.

Every theorem-level evaluator returns a FormulaResult whose ``terms`` list
names each factor.  Hyperfactorial blocks stay in GammaProduct form until
the very end, so the sqrt(pi) bookkeeping is checked on every call.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .exactnum import GammaProduct, hyperfactorial as H, hyperfactorial_int
from .params import Family, FernSeq, InvalidSpec, RegionSpec, check_spec


class TotalsMismatch(ValueError):
    pass


class ParityViolation(ValueError):
    pass


@dataclass
class FormulaResult:
    value: int
    terms: list = field(default_factory=list)   # (name, GammaProduct | int)
    sqrt_pi_exponent: int = 0

    def __int__(self):
        return self.value

    def log_value(self) -> float:
        """Natural log of the value, summed factor by factor."""
        out = 0.0
        for _, t in self.terms:
            out += t.log() if isinstance(t, GammaProduct) else math.log(t)
        return out


def _assemble(terms) -> FormulaResult:
    g = GammaProduct()
    q = Fraction(1)
    for _, t in terms:
        if isinstance(t, GammaProduct):
            g = g * t
        else:
            q *= t
    s = g.sqrt_pi_exponent
    val = g.to_rational() * q
    if val.denominator != 1:
        raise ArithmeticError(f"formula produced the non-integer {val}")
    return FormulaResult(val.numerator, list(terms), s)


# -- MacMahon and Cohn-Larsen-Propp -----------------------------------------

def macmahon_gp(a, b, c) -> GammaProduct:
    return H(a) * H(b) * H(c) * H(a + b + c) / (H(a + b) * H(b + c) * H(c + a))


def macmahon_P(a: int, b: int, c: int) -> int:
    """Tilings of the hexagon with sides a, b, c, a, b, c."""
    return (hyperfactorial_int(a) * hyperfactorial_int(b) * hyperfactorial_int(c)
            * hyperfactorial_int(a + b + c)
            // (hyperfactorial_int(a + b) * hyperfactorial_int(b + c) * hyperfactorial_int(c + a)))


def clp_count(positions) -> int:
    """prod_{i<j} (x_j - x_i)/(j - i) for increasing dent positions."""
    xs = list(positions)
    if any(q <= p for p, q in zip(xs, xs[1:])):
        raise ValueError("dent positions must be strictly increasing")
    num = den = 1
    for j in range(len(xs)):
        for i in range(j):
            num *= xs[j] - xs[i]
            den *= j - i
    q, r = divmod(num, den)
    assert r == 0
    return q


def dent_positions(terms) -> list:
    """Dents of S(a1, a2, ...): the odd-indexed runs of the partial sums."""
    pos = []
    t = 0
    for i, a in enumerate(terms):
        if i % 2 == 0:
            pos.extend(range(t + 1, t + a + 1))
        t += a
    return pos


@lru_cache(maxsize=None)
def _s_cached(terms: tuple) -> int:
    return clp_count(dent_positions(terms))


def s_dented(terms) -> int:
    """Tilings of the dented semihexagon S(terms)."""
    return _s_cached(tuple(int(t) for t in terms))


def s_hyperfactorial(terms) -> Fraction:
    """Hyperfactorial form of s(), used only as a cross-check.

    s = (1/H(o)) prod_{i<=j, j-i even} H(a_i+..+a_j) / prod_{j-i odd} H(a_i+..+a_j)
    """
    t = list(terms)
    if len(t) % 2 == 0:
        t = t[:-1]       # a trailing even-position run does not change the region
    o = sum(t[0::2])
    g = GammaProduct() / H(o)
    for i in range(len(t)):
        acc = 0
        for j in range(i, len(t)):
            acc += t[j]
            g = g * H(acc) if (j - i) % 2 == 0 else g / H(acc)
    return g.to_rational()


# -- cored hexagon ------------------------------------------------------------

def _cekz_gp(x, y, z, m) -> GammaProduct:
    """The cored-hexagon product, valid as written when y = z (mod 2)."""
    h = Fraction(m, 2)
    fl = lambda n: n // 2
    ce = lambda n: (n + 1) // 2
    yz = (y + z) // 2
    g = (H(m + x) * H(m + y) * H(m + z) * H(m + x + y + z)
         / (H(m + x + y) * H(m + y + z) * H(m + z + x)))
    g = g * (H(m + fl(x + y + z)) * H(m + ce(x + y + z))
             / (H(m + ce(x + y)) * H(m + yz) * H(m + fl(z + x))))
    num = H(h) ** 2
    den = GammaProduct()
    for t in (x, y, z):
        num = num * H(fl(t)) * H(ce(t))
        den = den * H(h + fl(t)) * H(h + ce(t))
    g = g * num / den
    g = g * (H(h + fl(x + y)) * H(h + ce(x + y)) * H(h + yz) ** 2
             * H(h + fl(z + x)) * H(h + ce(z + x))
             / (H(h + fl(x + y + z)) * H(h + ce(x + y + z))
                * H(fl(x + y)) * H(yz) * H(ce(z + x))))
    return g


# Which substitution handles each parity class.  "mirrored" matches a core
# shifted north-west (odd y) or south-west (odd z), which is the placement
# used by lattice.core_anchor.  "cyclic" matches the south-east / north-east
# placement instead and is kept for comparison.
CORED_CONVENTION = "mirrored"


def cored_gp(x, y, z, m, route=None, convention=None) -> GammaProduct:
    """Pick the substitution that puts a same-parity pair in the y, z slots."""
    convention = convention or CORED_CONVENTION
    if route is None:
        if (y - z) % 2 == 0:
            route = 0
        elif (x - y) % 2 == 0:
            route = 1
        else:
            route = 2
    if route == 0:
        args = (x, y, z)
    elif convention == "cyclic":
        args = (z, x, y) if route == 1 else (y, z, x)
    else:
        args = (z, y, x) if route == 1 else (y, x, z)
    if (args[1] - args[2]) % 2:
        raise ParityViolation(f"route {route} needs equal parity in the last two slots")
    return _cekz_gp(*args, m)


def cored_hexagon_count(x: int, y: int, z: int, m: int) -> int:
    return cored_gp(x, y, z, m).to_int()


def cored_hexagon_result(x, y, z, m) -> FormulaResult:
    return _assemble([(f"C({x},{y},{z})({m})", cored_gp(x, y, z, m))])


# -- three-fern families -------------------------------------------------------

def _pad(f) -> tuple:
    f = tuple(f)
    if not f:
        return (0, 0)
    return f if len(f) % 2 == 0 else f + (0,)


def _r_s_terms(a, c, b, lead, trail, g1, g2):
    """The two s() arguments shared by the R families."""
    a, c, b = _pad(a), _pad(c), _pad(b)
    br = tuple(reversed(b))          # b_n, ..., b_1
    s1 = (lead,) + a + (g1,) + c[:-1] + (c[-1] + g2 + br[0],) + br[1:]
    s2 = a[:-1] + (a[-1] + g1 + c[0],) + c[1:] + (g2,) + br + (trail,)
    return s1, s2


def _q_s_terms(a, c, b, lead, trail, g1, g2):
    a, c, b = _pad(a), _pad(c), _pad(b)
    br = tuple(reversed(b))
    s1 = a[:-1] + (a[-1] + g1,) + c[:-1] + (c[-1] + g2 + br[0],) + br[1:]
    s2 = (lead,) + a + (g1 + c[0],) + c[1:] + (g2,) + br + (trail,)
    return s1, s2


def _fmt(seq) -> str:
    return "s(" + ",".join(map(str, seq)) + ")"


def rq_result(spec: RegionSpec) -> FormulaResult:
    """Closed form for any of the eight R/Q families."""
    check_spec(spec)
    fam = spec.family
    if not fam.is_rq:
        raise InvalidSpec(f"{fam.value} is not an R or Q family")
    x, y, z = spec.x, spec.y, spec.z
    a, b, c = spec.a, spec.b, spec.c
    A, B, C = a.total, b.total, c.total
    M, mn = max(A, B), min(A, B)
    fl, ce = (x + z) // 2, (x + z + 1) // 2
    t = 1 if fam.shifted else 0
    terms = [(f"C({x},{2 * y + z + 2 * M + t},{z})({C})", cored_gp(x, 2 * y + z + 2 * M + t, z, C))]

    # gaps placed in the s() arguments, and the gap used in each H block
    if fam in (Family.R_CENTER, Family.R_NW, Family.Q_CENTER, Family.Q_NW):
        g1 = g2 = fl
        gc, gm = fl, fl
    elif fam in (Family.R_LEFT, Family.Q_LEFT):
        g1, g2 = fl, ce
        gc, gm = fl, fl
    elif fam is Family.R_SW:
        g1, g2 = fl, ce
        gc, gm = fl, ce
    else:  # Q_NE
        g1, g2 = ce, fl
        gc, gm = fl, ce

    lead = y + B - mn
    trail = y + A - mn
    if fam is Family.R_SW:
        lead += 1
    if fam in (Family.R_NW, Family.Q_NW, Family.Q_NE):
        trail += 1
    if fam.is_r:
        s1, s2 = _r_s_terms(a, c, b, lead, trail, g1, g2)
    else:
        s1, s2 = _q_s_terms(a, c, b, lead, trail, g1, g2)
    terms.append((_fmt(s1), s_dented(s1)))
    terms.append((_fmt(s2), s_dented(s2)))
    terms.append(("gap block", H(C + gc) / (H(C) * H(gc)) * H(M + y + gm) / H(M + C + y + gm)))

    if fam.is_r:
        u = M - a.odd_sum + b.odd_sum + c.odd_sum       # M - o_a + o_b + o_c
        v = M + a.odd_sum - b.odd_sum + c.even_sum      # M + o_a - o_b + e_c
        if fam in (Family.R_CENTER, Family.R_LEFT):
            blk = (H(M + y + z) * H(M + C + y + z) / (H(u + y + z) * H(v + y + z))
                   * H(u + y) * H(v + y) / H(M + y) ** 2)
        elif fam is Family.R_NW:
            blk = (H(M + y + z + 1) * H(M + C + y + z) / (H(u + y + z) * H(v + y + z + 1))
                   * H(u + y) * H(v + y + 1) / (H(M + y) * H(M + y + 1)))
        else:
            blk = (H(M + y + z) * H(M + C + y + z + 1) / (H(u + y + z + 1) * H(v + y + z))
                   * H(u + y + 1) * H(v + y) / (H(M + y) * H(M + y + 1)))
    else:
        o = a.odd_sum + b.odd_sum + c.odd_sum
        e = a.even_sum + b.even_sum + c.even_sum
        d = abs(A - B)
        if fam in (Family.Q_CENTER, Family.Q_LEFT):
            blk = (H(M + y + z) * H(M + C + y + z) / (H(o + z) * H(d + e + 2 * y + z))
                   * H(o) * H(d + e + 2 * y) / H(M + y) ** 2)
        elif fam is Family.Q_NW:
            blk = (H(M + y + z + 1) * H(M + C + y + z) / (H(o + z) * H(d + e + 2 * y + z + 1))
                   * H(o) * H(d + e + 2 * y + 1) / (H(M + y) * H(M + y + 1)))
        else:
            blk = (H(M + y + z) * H(M + C + y + z + 1) / (H(o + z) * H(d + e + 2 * y + z + 1))
                   * H(o) * H(d + e + 2 * y + 1) / (H(M + y) * H(M + y + 1)))
    terms.append(("side block", blk))
    return _assemble(terms)


def r_region_count(spec: RegionSpec) -> int:
    if not spec.family.is_r:
        raise InvalidSpec(f"{spec.family.value} is not an R family")
    return rq_result(spec).value


def q_region_count(spec: RegionSpec) -> int:
    if not spec.family.is_q:
        raise InvalidSpec(f"{spec.family.value} is not a Q family")
    return rq_result(spec).value


# -- combined and symmetric families ------------------------------------------

def line_runs(spec: RegionSpec):
    """Runs along the fern line of an H spec as (length, kind), kind in
    {'U', 'D', 'gap'}; zero-length pieces dropped."""
    fl, ce = (spec.x + spec.z) // 2, (spec.x + spec.z + 1) // 2
    out = []

    def fern(terms, up):
        for t in terms:
            out.append((t, "U" if up else "D"))
            up = not up

    oa, oc, ob = (o == "U" for o in spec.orient)
    fern(spec.a, oa)
    out.append((fl, "gap"))
    fern(spec.c, oc)
    out.append((ce, "gap"))
    # right fern is listed right to left
    tmp = []
    up = ob
    for t in spec.b:
        tmp.append((t, "U" if up else "D"))
        up = not up
    out.extend(reversed(tmp))
    return [(n, k) for n, k in out if n > 0]


def dent_runs(runs, kind) -> tuple:
    """Merge a run list into s() arguments where ``kind`` runs are dents."""
    seq = []   # alternate dent, gap, dent, ...
    for n, k in runs:
        slot = 0 if k == kind else 1
        if not seq:
            if slot == 1:
                seq.append(0)
            seq.append(n)
            continue
        last = (len(seq) - 1) % 2
        if last == slot:
            seq[-1] += n
        else:
            seq.append(n)
    return tuple(seq)


def h_region_result(spec: RegionSpec) -> FormulaResult:
    check_spec(spec)
    a, b, c = spec.a, spec.b, spec.c
    if a.total != b.total:
        raise TotalsMismatch("left and right ferns must have equal totals")
    x, z = spec.x, spec.z
    A, C = a.total, c.total
    fl = (x + z) // 2
    u = d = 0
    for f, o in zip((a, c, b), spec.orient):
        u += f.up_sum(o == "U")
        d += f.down_sum(o == "U")
    runs = line_runs(spec)
    sp, sm = dent_runs(runs, "U"), dent_runs(runs, "D")
    terms = [(f"C({x},{z + 2 * A},{z})({C})", cored_gp(x, z + 2 * A, z, C)),
             ("S+ " + _fmt(sp), s_dented(sp)),
             ("S- " + _fmt(sm), s_dented(sm)),
             ("gap block", H(C + fl) / (H(C) * H(fl)) * H(A + fl) / H(A + C + fl)),
             ("side block", H(A + z) * H(A + C + z) / (H(u + z) * H(d + z))
              * H(u) * H(d) / H(A) ** 2)]
    return _assemble(terms)


def h_region_count(x, z=0, a=(), c=(), b=(), orient="UUU") -> int:
    """Accepts either an H spec or the bare parameters."""
    if not isinstance(x, RegionSpec):
        x = RegionSpec(Family.H_COMBINED, x, 0, z, FernSeq(a), FernSeq(c), FernSeq(b), orient=orient)
    return h_region_result(x).value


def b_region_result(spec: RegionSpec) -> FormulaResult:
    x, y, z = spec.x, spec.y, spec.z
    if (x - y) % 2:
        raise ParityViolation("x ≡ y (mod 2) required")
    check_spec(spec)
    c = _pad(spec.c)
    C = sum(c)
    oc, ec = sum(c[0::2]), sum(c[1::2])
    g = (x + y) // 2
    s1 = c[:-1]
    s2 = (z, c[0] + g) + c[1:] + (g, z)
    terms = [(f"C({x},{y + 2 * z},{y})({C})", cored_gp(x, y + 2 * z, y, C)),
             (_fmt(s1), s_dented(s1)),
             (_fmt(s2), s_dented(s2)),
             ("gap block", H(C + g) / (H(C) * H(g)) * H(z + g) / H(z + C + g)),
             ("side block", H(y + z) * H(C + y + z) / (H(oc + y) * H(ec + y + 2 * z))
              * H(oc) * H(ec + 2 * z) / H(z) ** 2)]
    return _assemble(terms)


def b_region_count(x, y=0, z=0, c=()) -> int:
    """Accepts either a B spec or the bare parameters."""
    if not isinstance(x, RegionSpec):
        x = RegionSpec(Family.B_SYMMETRIC, x, y, z, c=FernSeq(c))
    return b_region_result(x).value


def dual_limit_product(a, c, b) -> int:
    a, b, c = FernSeq(a), FernSeq(b), FernSeq(c)
    if a.total != b.total:
        raise TotalsMismatch("left and right ferns must have equal totals")
    out = 1
    for f in (a, b, c):
        f = _pad(f)
        out *= s_dented(f[:-1]) * s_dented(f[1:])
    return out


# -- dispatch -------------------------------------------------------------------

def formula_result(spec: RegionSpec) -> FormulaResult:
    fam = spec.family
    if fam.is_rq:
        return rq_result(spec)
    if fam is Family.H_COMBINED:
        return h_region_result(spec)
    if fam is Family.B_SYMMETRIC:
        return b_region_result(spec)
    check_spec(spec)
    if fam is Family.CORED:
        return cored_hexagon_result(spec.x, spec.y, spec.z, spec.m)
    if fam is Family.HEXAGON:
        return _assemble([(f"P({spec.x},{spec.y},{spec.z})", macmahon_gp(spec.x, spec.y, spec.z))])
    if fam is Family.SEMIHEXAGON:
        return _assemble([(_fmt(spec.a), s_dented(spec.a))])
    raise InvalidSpec(f"no formula for {fam.value}")


def formula_count(spec: RegionSpec) -> int:
    return formula_result(spec).value
