"""Exact dyadic rationals and functions on V_D with dyadic values."""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Iterator, Union

from .gf2 import CircVector, check_dim

Number = Union["Dyadic", int]

_TEXT_RE = re.compile(r"\s*([+-]?\d+)(?:\s*/\s*2\^(\d+))?\s*")


class Dyadic:
    """The number ``num / 2**exp`` with ``num`` odd, or zero with ``exp == 0``."""

    __slots__ = ("num", "exp")

    def __init__(self, num: int = 0, exp: int = 0):
        if exp < 0:
            num <<= -exp
            exp = 0
        if num == 0:
            exp = 0
        else:
            tz = (num & -num).bit_length() - 1
            shift = min(tz, exp)
            num >>= shift
            exp -= shift
        self.num = num
        self.exp = exp

    @classmethod
    def coerce(cls, x: Number | Fraction) -> "Dyadic":
        if isinstance(x, Dyadic):
            return x
        if isinstance(x, int):
            return cls(x)
        if isinstance(x, Fraction):
            d = x.denominator
            if d & (d - 1):
                raise ValueError(f"{x} is not dyadic")
            return cls(x.numerator, d.bit_length() - 1)
        raise TypeError(f"cannot make a Dyadic from {type(x).__name__}")

    @classmethod
    def parse(cls, text: str) -> "Dyadic":
        m = _TEXT_RE.fullmatch(text)
        if not m:
            raise ValueError(f"not a dyadic literal: {text!r}")
        return cls(int(m.group(1)), int(m.group(2) or 0))

    def _align(self, other: "Dyadic") -> tuple[int, int, int]:
        e = max(self.exp, other.exp)
        return self.num << (e - self.exp), other.num << (e - other.exp), e

    def __add__(self, other):
        try:
            other = Dyadic.coerce(other)
        except TypeError:
            return NotImplemented
        a, b, e = self._align(other)
        return Dyadic(a + b, e)

    __radd__ = __add__

    def __neg__(self) -> "Dyadic":
        return Dyadic(-self.num, self.exp)

    def __sub__(self, other):
        try:
            other = Dyadic.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        try:
            other = Dyadic.coerce(other)
        except TypeError:
            return NotImplemented
        return Dyadic(self.num * other.num, self.exp + other.exp)

    __rmul__ = __mul__

    def scale2(self, k: int) -> "Dyadic":
        """Multiply by 2**k (k may be negative)."""
        return Dyadic(self.num, self.exp - k)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Dyadic.coerce(other)
        if not isinstance(other, Dyadic):
            return NotImplemented
        return self.num == other.num and self.exp == other.exp

    def __hash__(self) -> int:
        return hash(self.to_fraction())

    def __lt__(self, other) -> bool:
        return self.to_fraction() < Dyadic.coerce(other).to_fraction()

    def __le__(self, other) -> bool:
        return self.to_fraction() <= Dyadic.coerce(other).to_fraction()

    def __gt__(self, other) -> bool:
        return self.to_fraction() > Dyadic.coerce(other).to_fraction()

    def __ge__(self, other) -> bool:
        return self.to_fraction() >= Dyadic.coerce(other).to_fraction()

    def __bool__(self) -> bool:
        return self.num != 0

    def __abs__(self) -> "Dyadic":
        return Dyadic(abs(self.num), self.exp)

    def sign(self) -> int:
        return (self.num > 0) - (self.num < 0)

    def to_fraction(self) -> Fraction:
        return Fraction(self.num, 1 << self.exp)

    def __float__(self) -> float:
        return self.num / (1 << self.exp)

    def __str__(self) -> str:
        if self.exp == 0:
            return str(self.num)
        return f"{self.num}/2^{self.exp}"

    def __repr__(self) -> str:
        return f"Dyadic({self.num}, {self.exp})"


ZERO = Dyadic(0)
ONE = Dyadic(1)


class FunctionVector:
    """A function V_D -> dyadics, stored densely by coordinate bitset."""

    __slots__ = ("dim", "values")

    def __init__(self, dim: int, values: Iterable[Number] | None = None):
        check_dim(dim)
        size = 1 << dim
        vals = [ZERO] * size if values is None else [Dyadic.coerce(v) for v in values]
        if len(vals) != size:
            raise ValueError(f"expected {size} values, got {len(vals)}")
        self.dim = dim
        self.values = vals

    @classmethod
    def point(cls, x: CircVector) -> "FunctionVector":
        f = cls(x.dim)
        f.values[x.bits] = ONE
        return f

    @classmethod
    def indicator(cls, dim: int, points: Iterable[int]) -> "FunctionVector":
        f = cls(dim)
        for b in points:
            f.values[b] = ONE
        return f

    def __getitem__(self, x: CircVector | int) -> Dyadic:
        return self.values[x if isinstance(x, int) else x.bits]

    def __add__(self, other: "FunctionVector") -> "FunctionVector":
        if other.dim != self.dim:
            raise ValueError("dimension mismatch")
        return FunctionVector(self.dim, (a + b for a, b in zip(self.values, other.values)))

    def __sub__(self, other: "FunctionVector") -> "FunctionVector":
        return self + other.scaled(-1)

    def scaled(self, c: Number) -> "FunctionVector":
        c = Dyadic.coerce(c)
        return FunctionVector(self.dim, (c * v for v in self.values))

    def support(self) -> Iterator[int]:
        return (b for b, v in enumerate(self.values) if v)

    def __eq__(self, other) -> bool:
        if not isinstance(other, FunctionVector):
            return NotImplemented
        return self.dim == other.dim and self.values == other.values

    def __repr__(self) -> str:
        items = ", ".join(f"{b}: {v}" for b, v in enumerate(self.values) if v)
        return f"FunctionVector({self.dim}, {{{items}}})"
