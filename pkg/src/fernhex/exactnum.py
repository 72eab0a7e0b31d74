"""Exact arithmetic for hyperfactorial products.

Values are stored as integer exponents over gamma arguments j/2 (j >= 1),
so half-integer hyperfactorials can be multiplied and divided freely and the
power of sqrt(pi) can be checked before anything is turned into a number.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from math import factorial


class IrrationalResidue(ArithmeticError):
    """Raised when a product still carries a nonzero power of sqrt(pi)."""


def _twice(n) -> int:
    """Return 2*n as an int, insisting that n is an integer or half-integer."""
    t = Fraction(n) * 2
    if t.denominator != 1:
        raise ValueError(f"argument {n} is not a multiple of 1/2")
    return int(t)


class GammaProduct:
    """prod Gamma(j/2)**e over a finite map {j: e}.

    Immutable.  Multiplication and division just add exponent maps.
    """

    __slots__ = ("_exp",)

    def __init__(self, exponents=None):
        exp = {}
        for j, e in (exponents or {}).items():
            j = int(j)
            if j <= 0:
                raise ValueError("gamma argument must be positive")
            if e:
                exp[j] = exp.get(j, 0) + int(e)
        self._exp = {j: e for j, e in exp.items() if e}

    @classmethod
    def one(cls) -> "GammaProduct":
        return cls()

    @classmethod
    def gamma(cls, arg) -> "GammaProduct":
        return cls({_twice(arg): 1})

    @property
    def exponents(self) -> dict:
        """Map from gamma argument (as Fraction) to exponent."""
        return {Fraction(j, 2): e for j, e in sorted(self._exp.items())}

    @property
    def sqrt_pi_exponent(self) -> int:
        return sum(e for j, e in self._exp.items() if j % 2 == 1)

    def __mul__(self, other):
        if not isinstance(other, GammaProduct):
            return NotImplemented
        out = dict(self._exp)
        for j, e in other._exp.items():
            out[j] = out.get(j, 0) + e
        return GammaProduct(out)

    def __truediv__(self, other):
        if not isinstance(other, GammaProduct):
            return NotImplemented
        out = dict(self._exp)
        for j, e in other._exp.items():
            out[j] = out.get(j, 0) - e
        return GammaProduct(out)

    def __pow__(self, k: int):
        return GammaProduct({j: e * k for j, e in self._exp.items()})

    def __eq__(self, other):
        return isinstance(other, GammaProduct) and self._exp == other._exp

    def __hash__(self):
        return hash(frozenset(self._exp.items()))

    def rational_part(self) -> Fraction:
        """The value with every sqrt(pi) factor dropped."""
        num, den = 1, 1
        for j, e in self._exp.items():
            g = _gamma_rational(j)
            if e > 0:
                num *= g.numerator ** e
                den *= g.denominator ** e
            else:
                num *= g.denominator ** (-e)
                den *= g.numerator ** (-e)
        return Fraction(num, den)

    def to_rational(self) -> Fraction:
        s = self.sqrt_pi_exponent
        if s != 0:
            raise IrrationalResidue(f"sqrt(pi) exponent is {s}, not 0")
        return self.rational_part()

    def to_int(self) -> int:
        q = self.to_rational()
        if q.denominator != 1:
            raise ArithmeticError(f"value {q} is not an integer")
        return q.numerator

    def log(self) -> float:
        """Natural log of the value, sqrt(pi) factors included."""
        return sum(e * math.lgamma(j / 2) for j, e in self._exp.items())

    def __repr__(self):
        if not self._exp:
            return "GammaProduct(1)"
        parts = []
        for j, e in sorted(self._exp.items()):
            arg = str(j // 2) if j % 2 == 0 else f"{j}/2"
            parts.append(f"Γ({arg})^{e}")
        return " · ".join(parts) + f" [√π^{self.sqrt_pi_exponent}]"


@lru_cache(maxsize=None)
def _gamma_rational(j: int) -> Fraction:
    """Gamma(j/2) without its sqrt(pi) factor."""
    if j % 2 == 0:
        return Fraction(factorial(j // 2 - 1))
    n = (j - 1) // 2
    # Gamma(n + 1/2) = (2n)! / (4^n n!) sqrt(pi)
    return Fraction(factorial(2 * n), 4 ** n * factorial(n))


def hyperfactorial(n) -> GammaProduct:
    """H(n) = Gamma(n) Gamma(n-1) ... down to the last positive argument.

    For integer n this is 0! 1! ... (n-1)!.  n may be a half-integer.
    """
    t = _twice(n)
    if t < 0:
        raise ValueError(f"hyperfactorial of negative argument {n}")
    return GammaProduct({j: 1 for j in range(t, 0, -2)})


H = hyperfactorial


def gp_mul(a: GammaProduct, b: GammaProduct) -> GammaProduct:
    return a * b


def gp_div(a: GammaProduct, b: GammaProduct) -> GammaProduct:
    return a / b


def gp_to_rational(a: GammaProduct) -> Fraction:
    return a.to_rational()


@lru_cache(maxsize=None)
def hyperfactorial_int(n: int) -> int:
    """Integer H(n) for integer n >= 0, cached."""
    if n < 0:
        raise ValueError("negative argument")
    if n <= 1:
        return 1
    return hyperfactorial_int(n - 1) * factorial(n - 1)


def ratio(num, den) -> GammaProduct:
    """Product of H over num divided by product of H over den."""
    g = GammaProduct()
    for n in num:
        g = g * hyperfactorial(n)
    for n in den:
        g = g / hyperfactorial(n)
    return g


def format_rational(q) -> str:
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"
