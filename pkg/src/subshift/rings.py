"""Exact coefficient rings: integers, rationals and prime fields."""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .errors import NotAField, ParseError


@dataclass(frozen=True)
class ModInt:
    value: int
    modulus: int

    def _coerce(self, other):
        if isinstance(other, ModInt):
            if other.modulus != self.modulus:
                raise ValueError("moduli differ")
            return other.value
        if isinstance(other, int):
            return other
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return ModInt((self.value + o) % self.modulus, self.modulus)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return ModInt((self.value - o) % self.modulus, self.modulus)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return ModInt((o - self.value) % self.modulus, self.modulus)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return ModInt((self.value * o) % self.modulus, self.modulus)

    __rmul__ = __mul__

    def __neg__(self):
        return ModInt(-self.value % self.modulus, self.modulus)

    def __bool__(self):
        return self.value != 0

    def __str__(self):
        return str(self.value)


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


class Ring:
    """A commutative unital ring of exact values.

    Values are plain Python objects (``int``, ``Fraction`` or ``ModInt``);
    the ring only knows how to build, invert and print them.
    """

    name: str
    is_field: bool

    def coerce(self, x):
        raise NotImplementedError

    @property
    def zero(self):
        return self.coerce(0)

    @property
    def one(self):
        return self.coerce(1)

    def inverse(self, x):
        raise NotImplementedError

    def parse(self, text: str):
        text = text.strip()
        m = re.fullmatch(r"([+-]?\d+)(?:/(\d+))?", text)
        if not m:
            raise ParseError(f"bad scalar {text!r}")
        num = int(m.group(1))
        den = int(m.group(2)) if m.group(2) else 1
        if den == 0:
            raise ParseError("zero denominator")
        return self.coerce(Fraction(num, den))

    def format(self, x) -> str:
        return str(x)

    def __eq__(self, other):
        return type(self) is type(other) and self.__dict__ == other.__dict__

    def __hash__(self):
        return hash((type(self).__name__, tuple(sorted(self.__dict__.items()))))

    def __repr__(self):
        return self.name


class IntegerRing(Ring):
    name = "int"
    is_field = False

    def coerce(self, x):
        if isinstance(x, ModInt):
            raise TypeError("cannot coerce a modular value into the integers")
        f = Fraction(x)
        if f.denominator != 1:
            raise ParseError(f"{x} is not an integer")
        return int(f)

    def inverse(self, x):
        if x in (1, -1):
            return x
        raise NotAField(f"{x} is not invertible over the integers")


class RationalRing(Ring):
    name = "rat"
    is_field = True

    def coerce(self, x):
        if isinstance(x, ModInt):
            raise TypeError("cannot coerce a modular value into the rationals")
        f = Fraction(x)
        return int(f) if f.denominator == 1 else f

    def inverse(self, x):
        if not x:
            raise ZeroDivisionError("inverse of zero")
        f = 1 / Fraction(x)
        return int(f) if f.denominator == 1 else f


class PrimeField(Ring):
    is_field = True

    def __init__(self, p: int):
        if not _is_prime(p):
            raise ParseError(f"gf:{p} needs a prime modulus")
        self.p = p

    @property
    def name(self):
        return f"gf:{self.p}"

    def coerce(self, x):
        if isinstance(x, ModInt):
            if x.modulus != self.p:
                raise TypeError("moduli differ")
            return x
        f = Fraction(x)
        num = f.numerator % self.p
        den = f.denominator % self.p
        if den == 0:
            raise ParseError(f"{x} has no image in gf:{self.p}")
        return ModInt(num * pow(den, -1, self.p) % self.p, self.p)

    def inverse(self, x):
        x = self.coerce(x)
        if not x:
            raise ZeroDivisionError("inverse of zero")
        return ModInt(pow(x.value, -1, self.p), self.p)


INT = IntegerRing()
RAT = RationalRing()


def parse_ring(text: str) -> Ring:
    text = text.strip().lower()
    if text in ("int", "z", "zz"):
        return INT
    if text in ("rat", "q", "qq"):
        return RAT
    m = re.fullmatch(r"gf:(\d+)", text)
    if m:
        return PrimeField(int(m.group(1)))
    raise ParseError(f"unknown ring {text!r} (expected int, rat or gf:p)")
