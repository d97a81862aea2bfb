"""Linear algebra over F_2 on V_D with a circular basis.

Vectors are int bitsets over the coordinates e_1..e_D (bit ``i-1`` holds the
coefficient of ``e_i``).  The extra circular vector ``e_{D+1}`` equals the sum
of all the others and is eliminated on construction.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator


class InvalidDimensionError(ValueError):
    """Raised for an odd or too small dimension."""


class DimensionMismatchError(ValueError):
    """Raised when vectors from different spaces are combined."""


def check_dim(dim: int) -> int:
    if not isinstance(dim, int) or dim < 2 or dim % 2:
        raise InvalidDimensionError(f"dimension must be even and >= 2, got {dim!r}")
    return dim


def full_mask(dim: int) -> int:
    return (1 << dim) - 1


def subset_bits(dim: int, subset: Iterable[int]) -> int:
    """Bitset of ``e_S`` for S inside [1, D+1]."""
    bits = 0
    for s in subset:
        if not 1 <= s <= dim + 1:
            raise ValueError(f"index {s} outside [1, {dim + 1}]")
        if s == dim + 1:
            bits ^= full_mask(dim)
        else:
            bits ^= 1 << (s - 1)
    return bits


def bits_to_indices(bits: int) -> tuple[int, ...]:
    out = []
    i = 1
    while bits:
        if bits & 1:
            out.append(i)
        bits >>= 1
        i += 1
    return tuple(out)


def form_bits(x: int, y: int, dim: int) -> int:
    # Gram matrix on e_1..e_D is the path adjacency |i - j| = 1.
    shifted = ((y << 1) ^ (y >> 1)) & full_mask(dim)
    return (x & shifted).bit_count() & 1


@dataclass(frozen=True, slots=True)
class CircVector:
    dim: int
    bits: int

    def __post_init__(self) -> None:
        check_dim(self.dim)
        if self.bits < 0 or self.bits >> self.dim:
            raise ValueError(f"bits {self.bits:#x} do not fit dimension {self.dim}")

    @classmethod
    def zero(cls, dim: int) -> "CircVector":
        return cls(dim, 0)

    @classmethod
    def basis(cls, dim: int, i: int) -> "CircVector":
        """The circular basis vector e_i, i in [1, D+1]."""
        return vec_from_subset(dim, (i,))

    def indices(self) -> tuple[int, ...]:
        return bits_to_indices(self.bits)

    def __add__(self, other: "CircVector") -> "CircVector":
        return add(self, other)

    def __bool__(self) -> bool:
        return self.bits != 0

    def __repr__(self) -> str:
        return f"CircVector({self.dim}, {list(self.indices())})"


def vec_from_subset(dim: int, subset: Iterable[int]) -> CircVector:
    check_dim(dim)
    return CircVector(dim, subset_bits(dim, subset))


def _same_dim(*vs) -> int:
    dims = {v.dim for v in vs}
    if len(dims) != 1:
        raise DimensionMismatchError(f"dimensions differ: {sorted(dims)}")
    return dims.pop()


def add(x: CircVector, y: CircVector) -> CircVector:
    dim = _same_dim(x, y)
    return CircVector(dim, x.bits ^ y.bits)


def form(x: CircVector, y: CircVector) -> int:
    dim = _same_dim(x, y)
    return form_bits(x.bits, y.bits, dim)


def rref(rows: Iterable[int]) -> tuple[int, ...]:
    """Reduced row echelon form of a list of bitsets.

    The pivot of a row is its lowest set bit; rows are returned sorted by
    pivot, and every pivot bit is cleared from all other rows.
    """
    basis: list[int] = []
    for v in rows:
        for b in basis:
            if v & (b & -b):
                v ^= b
        if v:
            p = v & -v
            basis = [b ^ v if b & p else b for b in basis]
            basis.append(v)
    basis.sort(key=lambda b: b & -b)
    return tuple(basis)


def reduce_bits(v: int, rows: Iterable[int]) -> int:
    for b in rows:
        if v & (b & -b):
            v ^= b
    return v


def span_elements(rows: tuple[int, ...]) -> Iterator[int]:
    """All 2^k elements of the span of independent rows, Gray-code order."""
    v = 0
    yield v
    for n in range(1, 1 << len(rows)):
        v ^= rows[(n & -n).bit_length() - 1]
        yield v


def nullspace_bits(constraints: Iterable[int], dim: int) -> tuple[int, ...]:
    """Basis of {x : popcount(x & c) even for every constraint c}."""
    rows = rref(constraints)
    pivots = {(r & -r).bit_length() - 1: r for r in rows}
    out = []
    for free in range(dim):
        if free in pivots:
            continue
        x = 1 << free
        for p, r in pivots.items():
            if (r >> free) & 1:
                x |= 1 << p
        out.append(x)
    return rref(out)


@dataclass(frozen=True, slots=True)
class Gf2Subspace:
    dim_ambient: int
    basis_rows: tuple[int, ...]

    @property
    def rank(self) -> int:
        return len(self.basis_rows)

    def vectors(self) -> list[CircVector]:
        return [CircVector(self.dim_ambient, r) for r in self.basis_rows]

    def elements(self) -> Iterator[int]:
        return span_elements(self.basis_rows)

    def __contains__(self, x: CircVector) -> bool:
        return contains(self, x)


def span(vectors: Iterable[CircVector], dim: int | None = None) -> Gf2Subspace:
    vectors = list(vectors)
    if vectors:
        d = _same_dim(*vectors)
        if dim is not None and dim != d:
            raise DimensionMismatchError(f"expected dimension {dim}, got {d}")
        dim = d
    elif dim is None:
        raise InvalidDimensionError("span of no vectors needs an explicit dimension")
    check_dim(dim)
    return Gf2Subspace(dim, rref(v.bits for v in vectors))


def span_bits(rows: Iterable[int], dim: int) -> Gf2Subspace:
    return Gf2Subspace(dim, rref(rows))


def contains(space: Gf2Subspace, x: CircVector) -> bool:
    if space.dim_ambient != x.dim:
        raise DimensionMismatchError(f"dimensions differ: {space.dim_ambient} vs {x.dim}")
    return reduce_bits(x.bits, space.basis_rows) == 0


def perp(space: Gf2Subspace) -> Gf2Subspace:
    dim = space.dim_ambient
    mask = full_mask(dim)
    gram_rows = [((r << 1) ^ (r >> 1)) & mask for r in space.basis_rows]
    return Gf2Subspace(dim, nullspace_bits(gram_rows, dim))


def is_isotropic(space: Gf2Subspace) -> bool:
    rows = space.basis_rows
    dim = space.dim_ambient
    return all(form_bits(u, v, dim) == 0 for i, u in enumerate(rows) for v in rows[i + 1 :])
