"""Odd arcs on the cycle Z/(D+1) and sets of them.

Points of the cycle are labelled 1..D+1.  An arc is stored as ``(start, len)``
with ``1 <= len <= D``; the whole cycle is not an arc.  A pattern is a set of
odd arcs, kept sorted by ``(start, len)``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Iterable

from .gf2 import CircVector, Gf2Subspace, check_dim, span_bits, subset_bits


class ModulusMismatchError(ValueError):
    pass


class PreconditionError(ValueError):
    """An operation was called outside its domain."""


@dataclass(frozen=True, slots=True, order=True)
class Interval:
    modulus: int
    start: int
    len: int

    def __post_init__(self) -> None:
        n = self.modulus
        if n < 3:
            raise ValueError(f"modulus must be >= 3, got {n}")
        if not 1 <= self.start <= n:
            raise ValueError(f"start {self.start} outside [1, {n}]")
        if not 1 <= self.len <= n - 1:
            raise ValueError(f"length {self.len} outside [1, {n - 1}]")

    @classmethod
    def from_range(cls, modulus: int, a: int, b: int) -> "Interval":
        """Cyclic range a, a+1, ..., b."""
        return cls(modulus, a, (b - a) % modulus + 1)

    @property
    def end(self) -> int:
        return (self.start + self.len - 2) % self.modulus + 1

    @property
    def odd(self) -> bool:
        return self.len % 2 == 1

    def elements(self) -> tuple[int, ...]:
        n = self.modulus
        return tuple((self.start - 1 + k) % n + 1 for k in range(self.len))

    def mask(self) -> int:
        """Bitset over the cycle, bit ``p-1`` for point p."""
        n = self.modulus
        run = (1 << self.len) - 1
        s = self.start - 1
        m = (run << s) | (run >> (n - s))
        return m & ((1 << n) - 1)

    def offset(self, p: int) -> int:
        """Position of point p counted from the start (may exceed len)."""
        return (p - self.start) % self.modulus

    def __contains__(self, p: int) -> bool:
        return self.offset(p) < self.len

    def rotate(self, h: int = 1) -> "Interval":
        return Interval(self.modulus, (self.start - 1 + h) % self.modulus + 1, self.len)

    def label(self) -> str:
        return f"{self.start}..{self.end}"

    def __str__(self) -> str:
        return self.label()


def _same_modulus(a: Interval, b: Interval) -> int:
    if a.modulus != b.modulus:
        raise ModulusMismatchError(f"moduli differ: {a.modulus} vs {b.modulus}")
    return a.modulus


def prec(a: Interval, b: Interval) -> bool:
    """a sits strictly inside b, touching neither end of b."""
    _same_modulus(a, b)
    off = b.offset(a.start)
    return off >= 1 and off + a.len <= b.len - 1


def disjoint(a: Interval, b: Interval) -> bool:
    return not (a.mask() & b.mask())


def spade(a: Interval, b: Interval) -> bool:
    """Disjoint, with a gap on both sides."""
    _same_modulus(a, b)
    ma, mb = a.mask(), b.mask()
    return not (ma & mb) and not is_arc(ma | mb, a.modulus)


def is_arc(mask: int, modulus: int) -> bool:
    """Whether a bitset over the cycle is a nonempty proper arc."""
    full = (1 << modulus) - 1
    if mask == 0 or mask == full:
        return False
    # An arc has exactly one point whose predecessor lies outside it.
    rot = ((mask << 1) | (mask >> (modulus - 1))) & full
    return (mask & ~rot).bit_count() == 1


def split_at(arc: Interval, p: int) -> tuple[Interval, ...]:
    """The arcs making up ``arc - {p}`` for p in arc."""
    k = arc.offset(p)
    if k >= arc.len:
        raise PreconditionError(f"{p} not in {arc}")
    n = arc.modulus
    out = []
    if k > 0:
        out.append(Interval(n, arc.start, k))
    if k < arc.len - 1:
        out.append(Interval(n, p % n + 1, arc.len - 1 - k))
    return tuple(out)


def ev_set_definition(arc: Interval) -> frozenset[int]:
    """I^ev straight from the definition, checking every point."""
    if not arc.odd:
        raise PreconditionError(f"{arc} has even length")
    out = set()
    for p in arc.elements():
        parts = split_at(arc, p)
        if len(parts) == 2 and all(q.odd for q in parts) and spade(*parts):
            out.add(p)
    return frozenset(out)


def ev_set(arc: Interval) -> frozenset[int]:
    """Interior points at odd offset from the start."""
    if not arc.odd:
        raise PreconditionError(f"{arc} has even length")
    n = arc.modulus
    return frozenset((arc.start - 1 + k) % n + 1 for k in range(1, arc.len - 1, 2))


def odd_set(arc: Interval) -> frozenset[int]:
    return frozenset(arc.elements()) - ev_set(arc)


@dataclass(frozen=True)
class Pattern:
    dim: int
    arcs: tuple[Interval, ...]

    def __post_init__(self) -> None:
        check_dim(self.dim)
        arcs = tuple(sorted(set(self.arcs)))
        if len(arcs) != len(self.arcs):
            raise ValueError("repeated arcs are not allowed in a pattern")
        for a in arcs:
            if a.modulus != self.dim + 1:
                raise ModulusMismatchError(f"{a} is not an arc mod {self.dim + 1}")
            if not a.odd:
                raise ValueError(f"{a} has even length")
        object.__setattr__(self, "arcs", arcs)

    @classmethod
    def of(cls, dim: int, *ranges: tuple[int, int]) -> "Pattern":
        """Build from cyclic ranges ``(a, b)``."""
        return cls(dim, tuple(Interval.from_range(dim + 1, a, b) for a, b in ranges))

    @property
    def modulus(self) -> int:
        return self.dim + 1

    def __len__(self) -> int:
        return len(self.arcs)

    def __iter__(self):
        return iter(self.arcs)

    def __contains__(self, arc: Interval) -> bool:
        return arc in self.arcs

    @cached_property
    def counts(self) -> tuple[int, ...]:
        """g_1..g_{D+1}: how many arcs cover each point."""
        g = [0] * self.modulus
        for a in self.arcs:
            for p in a.elements():
                g[p - 1] += 1
        return tuple(g)

    def label(self) -> str:
        return "{" + ", ".join(a.label() for a in self.arcs) + "}"

    def __str__(self) -> str:
        return self.label()

    def __repr__(self) -> str:
        return f"Pattern({self.dim}, {self.label()})"

    def rotate(self, h: int = 1) -> "Pattern":
        return Pattern(self.dim, tuple(a.rotate(h) for a in self.arcs))

    def without(self, *arcs: Interval) -> "Pattern":
        drop = set(arcs)
        return Pattern(self.dim, tuple(a for a in self.arcs if a not in drop))

    def with_(self, *arcs: Interval) -> "Pattern":
        return Pattern(self.dim, self.arcs + tuple(arcs))


_ARC_RE = re.compile(r"\s*(\d+)\.\.(\d+)\s*")


def parse_pattern(dim: int, text: str) -> Pattern:
    """Inverse of :meth:`Pattern.label`."""
    text = text.strip()
    if not (text.startswith("{") and text.endswith("}")):
        raise ValueError(f"not a pattern label: {text!r}")
    body = text[1:-1].strip()
    arcs = []
    if body:
        for piece in body.split(","):
            m = _ARC_RE.fullmatch(piece)
            if not m:
                raise ValueError(f"bad arc {piece!r}")
            arcs.append(Interval.from_range(dim + 1, int(m.group(1)), int(m.group(2))))
    return Pattern(dim, tuple(arcs))


def g(pattern: Pattern, i: int) -> int:
    if not 1 <= i <= pattern.modulus:
        raise IndexError(f"index {i} outside [1, {pattern.modulus}]")
    return pattern.counts[i - 1]


def eps_support(pattern: Pattern) -> tuple[int, ...]:
    """Points i of the cycle where g_i(g_i + 1)/2 is odd."""
    return tuple(i for i, c in enumerate(pattern.counts, 1) if c % 4 in (1, 2))


def epsilon_bits(pattern: Pattern) -> int:
    return subset_bits(pattern.dim, eps_support(pattern))


def epsilon(pattern: Pattern) -> CircVector:
    return CircVector(pattern.dim, epsilon_bits(pattern))


def pair_ok(a: Interval, b: Interval) -> bool:
    return spade(a, b) or prec(a, b) or prec(b, a)


def check_p0(pattern: Pattern) -> bool:
    return all(pair_ok(a, b) for a, b in combinations(pattern.arcs, 2))


def _below(pattern: Pattern, arc: Interval) -> list[Interval]:
    return [j for j in pattern.arcs if prec(j, arc)]


def check_p1(pattern: Pattern) -> bool:
    """Every I^ev is covered by the arcs strictly inside I.

    Under P0 the maximal arcs below I are pairwise disjoint, so covering by
    the union of everything below I is the same as a disjoint cover.
    """
    if not check_p0(pattern):
        raise PreconditionError(f"{pattern} violates P0")
    for arc in pattern.arcs:
        need = ev_set(arc)
        if not need:
            continue
        have = set()
        for j in _below(pattern, arc):
            have.update(j.elements())
        if not need <= have:
            return False
    return True


def check_p1_exhaustive(pattern: Pattern) -> bool:
    """P1 by searching all pairwise disjoint subfamilies below each arc."""
    for arc in pattern.arcs:
        need = {p for p in ev_set_definition(arc)}
        below = _below(pattern, arc)
        found = False
        for k in range(len(below) + 1):
            for combo in combinations(below, k):
                if any(not disjoint(a, b) for a, b in combinations(combo, 2)):
                    continue
                cover = set()
                for j in combo:
                    cover.update(j.elements())
                if need <= cover:
                    found = True
                    break
            if found:
                break
        if not found:
            return False
    return True


def is_phi_member(pattern: Pattern) -> bool:
    return check_p0(pattern) and check_p1(pattern)


def arc_bits(arc: Interval, dim: int) -> int:
    return subset_bits(dim, arc.elements())


def pattern_span(pattern: Pattern) -> Gf2Subspace:
    return span_bits((arc_bits(a, pattern.dim) for a in pattern.arcs), pattern.dim)


def odd_arcs(dim: int) -> list[Interval]:
    n = dim + 1
    return sorted(Interval(n, s, ln) for s in range(1, n + 1) for ln in range(1, n, 2))


def as_pattern(dim: int, arcs: Iterable[Interval]) -> Pattern:
    return Pattern(dim, tuple(arcs))
