"""Exact scalar arithmetic over the rationals and prime fields.

Scalars are plain Python objects: ``fractions.Fraction`` over the rationals,
canonical representatives ``0..p-1`` (ints) over a prime field.  All matrix
code routes arithmetic through a :class:`FieldSpec`, so there is no floating
point anywhere downstream.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class FieldSpec:
    """Ground field: characteristic 0 means the rationals, p means F_p."""

    characteristic: int = 0

    def __post_init__(self):
        c = self.characteristic
        if c != 0 and not _is_prime(c):
            raise ValueError(f"characteristic must be 0 or prime, got {c}")

    @property
    def kind(self) -> str:
        return "rational" if self.characteristic == 0 else "prime-field"

    @property
    def p(self) -> int:
        return self.characteristic

    # -- canonical scalars ------------------------------------------------

    def zero(self):
        return Fraction(0) if self.characteristic == 0 else 0

    def one(self):
        return Fraction(1) if self.characteristic == 0 else 1

    def of(self, x):
        """Coerce an int, Fraction or string like ``"-3"``/``"2/5"``."""
        if isinstance(x, str):
            x = Fraction(x)
        if self.characteristic == 0:
            return Fraction(x)
        p = self.characteristic
        if isinstance(x, Fraction):
            den = x.denominator % p
            if den == 0:
                raise ZeroDivisionError(f"denominator of {x} vanishes mod {p}")
            return (x.numerator % p) * pow(den, -1, p) % p
        return int(x) % p

    # -- arithmetic --------------------------------------------------------

    def add(self, a, b):
        s = a + b
        return s if self.characteristic == 0 else s % self.characteristic

    def sub(self, a, b):
        s = a - b
        return s if self.characteristic == 0 else s % self.characteristic

    def mul(self, a, b):
        s = a * b
        return s if self.characteristic == 0 else s % self.characteristic

    def neg(self, a):
        return -a if self.characteristic == 0 else (-a) % self.characteristic

    def invert(self, a):
        if self.characteristic == 0:
            if a == 0:
                raise ZeroDivisionError("inverse of 0")
            return 1 / Fraction(a)
        return pow(a, -1, self.characteristic)

    def div(self, a, b):
        return self.mul(a, self.invert(b))

    def is_zero(self, a) -> bool:
        return a == 0

    # -- serialization -----------------------------------------------------

    def format(self, a) -> str:
        return str(a)

    def parse(self, s) -> object:
        return self.of(s)

    def random(self, rng, nonzero: bool = False):
        """Small random scalar, for batteries and property tests."""
        if self.characteristic == 0:
            val = Fraction(rng.randint(-3, 3), rng.choice([1, 1, 1, 2]))
            while nonzero and val == 0:
                val = Fraction(rng.randint(-3, 3), rng.choice([1, 1, 1, 2]))
            return val
        p = self.characteristic
        lo = 1 if nonzero else 0
        return rng.randrange(lo, p)

    def __str__(self):
        return "Q" if self.characteristic == 0 else f"F{self.characteristic}"


QQ = FieldSpec(0)


def GF(p: int) -> FieldSpec:
    return FieldSpec(p)


GF2 = GF(2)
GF3 = GF(3)
