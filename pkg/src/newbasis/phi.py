"""The family phi(V_D) of admissible arc patterns and the order on it.

Two independent enumerations are provided: a pruned depth-first search over
odd arcs (small D only) and the recursive construction that inserts a
singleton into every pattern of phi(V_{D-2}).  :class:`PhiFamily` collects
the patterns together with the epsilon table and the partial order.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator, Sequence

from .dyadic import FunctionVector
from .gf2 import (
    CircVector,
    check_dim,
    reduce_bits,
    span_bits,
    span_elements,
    subset_bits,
)
from .intervals import (
    Interval,
    Pattern,
    PreconditionError,
    check_p0,
    check_p1,
    epsilon_bits,
    ev_set,
    odd_arcs,
    odd_set,
    pair_ok,
    pattern_span,
    prec,
    split_at,
)

BRUTEFORCE_MAX_DIM = 8


class ConstructionMismatchError(AssertionError):
    """A structural property that the construction relies on failed to hold."""


class ScaleGuardError(ValueError):
    pass


def _mismatch(cond: bool, msg: str) -> None:
    if not cond:
        raise ConstructionMismatchError(msg)


# -- brute force ------------------------------------------------------------


def enumerate_bruteforce(dim: int) -> list[Pattern]:
    """All sets of odd arcs satisfying P0 and P1, by pruned search."""
    check_dim(dim)
    if dim > BRUTEFORCE_MAX_DIM:
        raise ScaleGuardError(f"brute force limited to D <= {BRUTEFORCE_MAX_DIM}")
    arcs = odd_arcs(dim)
    compat = [[pair_ok(a, b) for b in arcs] for a in arcs]
    out: list[Pattern] = []
    chosen: list[int] = []

    def dfs(k: int) -> None:
        if k == len(arcs):
            p = Pattern(dim, tuple(arcs[c] for c in chosen))
            if check_p1(p):
                out.append(p)
            return
        dfs(k + 1)
        if all(compat[c][k] for c in chosen):
            chosen.append(k)
            dfs(k + 1)
            chosen.pop()

    dfs(0)
    return sorted(out, key=sort_key)


def sort_key(p: Pattern) -> tuple[int, str]:
    return (len(p), p.label())


# -- recursion D-2 -> D -----------------------------------------------------


@lru_cache(maxsize=None)
def stretch_map(dim: int, j: int) -> tuple[tuple[int, ...], ...]:
    """Image of each point 1..D-1 of the small cycle in the big cycle.

    Entry ``k-1`` lists, in cyclic order, the points s with
    tau_j(e'_k) = sum of e_s.
    """
    if dim < 4:
        raise PreconditionError("the recursion needs D >= 4")
    if not 1 <= j <= dim + 1:
        raise PreconditionError(f"j={j} outside [1, {dim + 1}]")
    small = dim - 1
    if j == 1:
        out = [(k + 2,) for k in range(1, small)] + [(dim + 1, 1, 2)]
    elif j == dim + 1:
        out = [(dim, dim + 1, 1)] + [(k,) for k in range(2, small + 1)]
    else:
        out = []
        for k in range(1, small + 1):
            if k < j - 1:
                out.append((k,))
            elif k == j - 1:
                out.append((j - 1, j, j + 1))
            else:
                out.append((k + 2,))
    return tuple(out)


@lru_cache(maxsize=None)
def _tau_images(dim: int, j: int) -> tuple[int, ...]:
    return tuple(subset_bits(dim, pts) for pts in stretch_map(dim, j)[: dim - 2])


def tau_bits(dim: int, j: int, x: int) -> int:
    images = _tau_images(dim, j)
    out = 0
    k = 0
    while x:
        if x & 1:
            out ^= images[k]
        x >>= 1
        k += 1
    return out


def tau(j: int, x: CircVector) -> CircVector:
    """The embedding V_{D-2} -> V_D attached to j (D = x.dim + 2)."""
    dim = x.dim + 2
    return CircVector(dim, tau_bits(dim, j, x.bits))


def theta(j: int, f: FunctionVector) -> FunctionVector:
    dim = f.dim + 2
    ej = subset_bits(dim, (j,))
    out = FunctionVector(dim)
    vals = out.values
    for x, v in enumerate(f.values):
        if v:
            y = tau_bits(dim, j, x)
            vals[y] = vals[y] + v
            vals[y ^ ej] = vals[y ^ ej] + v
    return out


def stretch_arc(arc: Interval, dim: int, j: int) -> Interval:
    smap = stretch_map(dim, j)
    first = smap[arc.start - 1][0]
    last = smap[arc.end - 1][-1]
    return Interval.from_range(dim + 1, first, last)


def t_insert(j: int, small: Pattern, *, check: bool = True) -> Pattern:
    """Lift a pattern of phi(V_{D-2}) to phi(V_D) and adjoin the singleton {j}."""
    dim = small.dim + 2
    arcs = [stretch_arc(a, dim, j) for a in small.arcs]
    out = Pattern(dim, tuple(arcs) + (Interval(dim + 1, j, 1),))
    if check:
        _mismatch(len(out) == len(small) + 1, f"t_{j}({small}) lost arcs")
        _mismatch(check_p0(out), f"t_{j}({small}) = {out} violates P0")
        _mismatch(check_p1(out), f"t_{j}({small}) = {out} violates P1")
        want = span_bits(
            [tau_bits(dim, j, r) for r in pattern_span(small).basis_rows]
            + [subset_bits(dim, (j,))],
            dim,
        )
        _mismatch(pattern_span(out) == want, f"span of t_{j}({small}) is not tau_j(span) + F e_j")
    return out


# -- the family -------------------------------------------------------------


@dataclass
class PhiFamily:
    dim: int
    patterns: list[Pattern]
    eps: list[int]
    index_of: dict[Pattern, int] = field(repr=False)
    eps_to_pattern: dict[int, int] = field(repr=False)
    spans: list[tuple[int, ...]] = field(repr=False)
    # preds[b]: ranks b' != b with eps(b') in <b>
    preds: list[list[int]] = field(repr=False)
    # down[b]: bitset of ranks b' <= b
    down: list[int] = field(repr=False)
    linext: list[int] = field(repr=False)

    def __len__(self) -> int:
        return len(self.patterns)

    def __iter__(self) -> Iterator[Pattern]:
        return iter(self.patterns)

    def rank(self, p: Pattern) -> int:
        return self.index_of[p]

    def pattern_of(self, x: CircVector | int) -> Pattern:
        """B(x): the pattern whose epsilon is x."""
        bits = x if isinstance(x, int) else x.bits
        return self.patterns[self.eps_to_pattern[bits]]

    def epsilon(self, p: Pattern) -> CircVector:
        return CircVector(self.dim, self.eps[self.index_of[p]])

    def leq(self, a: Pattern | int, b: Pattern | int) -> bool:
        ia = a if isinstance(a, int) else self.index_of[a]
        ib = b if isinstance(b, int) else self.index_of[b]
        return bool((self.down[ib] >> ia) & 1)

    def lt(self, a, b) -> bool:
        return self.leq(a, b) and a != b

    def sizes(self) -> list[int]:
        return [len(p) for p in self.patterns]

    @property
    def position(self) -> list[int]:
        """position[rank] = index of the rank in the linear extension."""
        pos = [0] * len(self.linext)
        for k, r in enumerate(self.linext):
            pos[r] = k
        return pos

    def covers(self, b: int) -> list[int]:
        """Ranks covered by b in the order."""
        ps = self.preds[b]
        shadow = 0
        for q in ps:
            shadow |= self.down[q] & ~(1 << q)
        return [q for q in ps if not (shadow >> q) & 1]


def _build_family(dim: int, patterns: Sequence[Pattern]) -> PhiFamily:
    patterns = sorted(set(patterns), key=sort_key)
    size = 1 << dim
    _mismatch(len(patterns) == size, f"D={dim}: {len(patterns)} patterns, expected {size}")
    eps = [epsilon_bits(p) for p in patterns]
    eps_to = {}
    for r, x in enumerate(eps):
        _mismatch(x not in eps_to, f"epsilon collision at {patterns[eps_to.get(x, r)]} and {patterns[r]}")
        eps_to[x] = r
    index_of = {p: r for r, p in enumerate(patterns)}
    spans = []
    for p in patterns:
        rows = pattern_span(p).basis_rows
        _mismatch(len(rows) == len(p), f"arcs of {p} are dependent")
        spans.append(rows)
    fam = PhiFamily(dim, patterns, eps, index_of, eps_to, spans, [], [], [])
    build_order(fam)
    return fam


def build_order(fam: PhiFamily) -> list[int]:
    """Close eps(B') in <B> to a partial order; fills preds, linext, down."""
    n = len(fam.patterns)
    preds: list[list[int]] = []
    succs: list[list[int]] = [[] for _ in range(n)]
    for b, rows in enumerate(fam.spans):
        ps = []
        for x in span_elements(rows):
            q = fam.eps_to_pattern[x]
            if q != b:
                ps.append(q)
                succs[q].append(b)
        _mismatch(fam.eps[b] in set(span_elements(rows)), f"eps({fam.patterns[b]}) not in its span")
        preds.append(sorted(ps))
    # Kahn's algorithm; a leftover node means a cycle, i.e. antisymmetry fails.
    keys = [sort_key(p) for p in fam.patterns]
    indeg = [len(p) for p in preds]
    heap = [(keys[b], b) for b in range(n) if indeg[b] == 0]
    heapq.heapify(heap)
    linext = []
    while heap:
        _, b = heapq.heappop(heap)
        linext.append(b)
        for s in succs[b]:
            indeg[s] -= 1
            if indeg[s] == 0:
                heapq.heappush(heap, (keys[s], s))
    if len(linext) != n:
        stuck = [fam.patterns[b].label() for b in range(n) if indeg[b] > 0][:4]
        raise ConstructionMismatchError(f"order relation has a cycle through {stuck}")
    down = [0] * n
    for b in linext:
        acc = 1 << b
        for q in preds[b]:
            acc |= down[q]
        down[b] = acc
    fam.preds = preds
    fam.linext = linext
    fam.down = down
    return down


@lru_cache(maxsize=None)
def _patterns_recursive(dim: int) -> tuple[Pattern, ...]:
    check_dim(dim)
    if dim == 2:
        return tuple(enumerate_bruteforce(2))
    smaller = _patterns_recursive(dim - 2)
    out = {Pattern(dim, ())}
    for j in range(1, dim + 2):
        for p in smaller:
            out.add(t_insert(j, p))
    return tuple(sorted(out, key=sort_key))


@lru_cache(maxsize=None)
def enumerate_phi(dim: int) -> PhiFamily:
    return _build_family(dim, _patterns_recursive(dim))


def family_from_patterns(dim: int, patterns: Sequence[Pattern]) -> PhiFamily:
    return _build_family(dim, patterns)


# -- the move B -> B[i] -----------------------------------------------------


def chain_at(p: Pattern, i: int) -> list[Interval]:
    """The arcs of p containing i, innermost first; they must form a prec-chain."""
    chain = sorted((a for a in p.arcs if i in a), key=lambda a: a.len)
    for a, b in zip(chain, chain[1:]):
        _mismatch(prec(a, b), f"arcs {a}, {b} of {p} through {i} are not nested")
    return chain


def b_shift(p: Pattern, i: int) -> Pattern:
    single = Interval(p.modulus, i, 1)
    if single not in p:
        raise PreconditionError(f"{{{i}}} is not an arc of {p}")
    chain = chain_at(p, i)
    k = len(chain)
    if k >= 2:
        _mismatch(i in ev_set(chain[1]), f"{i} not in ev({chain[1]}) for {p}")
    if k >= 3:
        _mismatch(i in odd_set(chain[2]), f"{i} not in odd({chain[2]}) for {p}")
    if k == 1:
        out = p.without(single)
    else:
        h1, h2 = split_at(chain[1], i)
        out = p.without(single, chain[1]).with_(h1, h2)
    _mismatch(len(out) == len(p) - (1 if k == 1 else 0), f"size rule fails for {p}[{i}]")
    _mismatch(check_p0(out) and check_p1(out), f"{p}[{i}] = {out} is not admissible")
    want = epsilon_bits(p) ^ subset_bits(p.dim, (i,))
    _mismatch(epsilon_bits(out) == want, f"eps({p}[{i}]) != eps({p}) + e_{i}")
    return out


# -- chain statistics -------------------------------------------------------


def heights(fam: PhiFamily) -> list[int]:
    """Longest strict chain ending at each rank."""
    h = [0] * len(fam)
    for b in fam.linext:
        h[b] = max((h[q] + 1 for q in fam.preds[b]), default=0)
    return h


def depths(fam: PhiFamily) -> list[int]:
    """Longest strict chain starting at each rank."""
    succs: list[list[int]] = [[] for _ in range(len(fam))]
    for b, ps in enumerate(fam.preds):
        for q in ps:
            succs[q].append(b)
    d = [0] * len(fam)
    for b in reversed(fam.linext):
        d[b] = max((d[s] + 1 for s in succs[b]), default=0)
    return d


def nu(x: CircVector, fam: PhiFamily) -> int:
    return heights(fam)[fam.eps_to_pattern[x.bits]]


def chain_height_above(p: Pattern, fam: PhiFamily) -> int:
    return depths(fam)[fam.index_of[p]]


# -- rotation ---------------------------------------------------------------


def rotate_bits(x: int, dim: int, h: int = 1) -> int:
    """Image of x under e_i -> e_{i+h} (indices mod D+1)."""
    n = dim + 1
    pts = []
    k = 1
    while x:
        if x & 1:
            pts.append((k - 1 + h) % n + 1)
        x >>= 1
        k += 1
    return subset_bits(dim, pts)


def rotation_permutation(fam: PhiFamily, h: int = 1) -> list[int]:
    """perm[rank] = rank of the rotated pattern."""
    return [fam.index_of[p.rotate(h)] for p in fam.patterns]


def singleton_criterion(p: Pattern, i: int) -> bool:
    """Whether g_i >= 1 and both cyclic neighbours have count g_i - 1."""
    g = p.counts
    n = p.modulus
    gi = g[i - 1]
    return gi >= 1 and g[(i - 2) % n] == gi - 1 and g[i % n] == gi - 1


def in_span(x: int, rows: tuple[int, ...]) -> bool:
    return reduce_bits(x, rows) == 0


def eps_label(x: int, dim: int) -> str:
    """Subset label of a vector over e_1..e_D, e.g. ``e{1,3}``; zero is ``0``."""
    if not x:
        return "0"
    idx = [i for i in range(1, dim + 1) if (x >> (i - 1)) & 1]
    return "e{" + ",".join(map(str, idx)) + "}"


def hasse_dot(fam: PhiFamily) -> str:
    lines = [f"digraph phi_V{fam.dim} {{", "  rankdir=BT;"]
    pos = fam.position
    for b in fam.linext:
        p = fam.patterns[b]
        lines.append(f'  n{b} [label="{p.label()}\\n{eps_label(fam.eps[b], fam.dim)}"];')
    for b in fam.linext:
        for q in sorted(fam.covers(b), key=pos.__getitem__):
            lines.append(f"  n{q} -> n{b};")
    lines.append("}")
    return "\n".join(lines) + "\n"


__all__ = [
    "ConstructionMismatchError",
    "PhiFamily",
    "ScaleGuardError",
    "b_shift",
    "build_order",
    "chain_height_above",
    "enumerate_bruteforce",
    "enumerate_phi",
    "hasse_dot",
    "nu",
    "t_insert",
    "tau",
    "theta",
]
