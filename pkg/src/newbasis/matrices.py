"""Change-of-basis and Fourier matrices in the new basis, and their checks.

All matrices are indexed by family ranks and stored as CSR arrays.  ``d`` and
``r`` have integer entries.  ``n`` stores integers ``m`` with the true entry
``m / 2**(D/2)``, which makes every row operation integral.
"""

from __future__ import annotations

import json
import re
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterator

import numpy as np

from . import kernels
from .dyadic import Dyadic, FunctionVector
from .gf2 import full_mask, nullspace_bits, span_elements, subset_bits
from .intervals import eps_support
from .phi import ConstructionMismatchError, PhiFamily, depths, rotation_permutation


def _mismatch(cond: bool, msg: str) -> None:
    if not cond:
        raise ConstructionMismatchError(msg)


@dataclass
class BasisMatrix:
    """Sparse square matrix over a family; entry = data * 2**-exp."""

    family: PhiFamily
    kind: str
    indptr: np.ndarray
    indices: np.ndarray
    data: np.ndarray
    exp: int = 0

    @property
    def n(self) -> int:
        return len(self.indptr) - 1

    @property
    def nnz(self) -> int:
        return int(self.indptr[-1])

    def row_items(self, r: int) -> Iterator[tuple[int, int]]:
        lo, hi = int(self.indptr[r]), int(self.indptr[r + 1])
        for k in range(lo, hi):
            yield int(self.indices[k]), int(self.data[k])

    def row(self, r: int) -> dict[int, int]:
        return dict(self.row_items(r))

    def raw(self, r: int, c: int) -> int:
        lo, hi = int(self.indptr[r]), int(self.indptr[r + 1])
        k = lo + int(np.searchsorted(self.indices[lo:hi], c))
        if k < hi and self.indices[k] == c:
            return int(self.data[k])
        return 0

    def entry(self, r: int, c: int) -> int | Dyadic:
        v = self.raw(r, c)
        return Dyadic(v, self.exp) if self.exp else v

    def items(self) -> Iterator[tuple[int, int, int]]:
        for r in range(self.n):
            for c, v in self.row_items(r):
                yield r, c, v

    def dense(self, order: list[int] | None = None) -> list[list[int | Dyadic]]:
        order = self.family.linext if order is None else order
        return [[self.entry(r, c) for c in order] for r in order]

    def to_csv(self) -> str:
        fam = self.family
        order = fam.linext
        labels = [fam.patterns[b].label() for b in order]
        out = [",".join(['""'] + [_csv_quote(s) for s in labels])]
        for r, lab in zip(order, labels):
            row = self.row(r)
            cells = [format_value(Dyadic(row.get(c, 0), self.exp)) for c in order]
            out.append(",".join([_csv_quote(lab)] + cells))
        return "\n".join(out) + "\n"

    def to_json(self) -> str:
        fam = self.family
        pos = fam.position
        entries = []
        for r, c, v in self.items():
            q = Dyadic(v, self.exp)
            entries.append([pos[r], pos[c], q.num, q.exp])
        entries.sort()
        doc = {
            "dim": fam.dim,
            "order": [fam.patterns[b].label() for b in fam.linext],
            "entries": entries,
        }
        return json.dumps(doc, separators=(",", ":")) + "\n"


def _csv_quote(s: str) -> str:
    return '"' + s.replace('"', '""') + '"'


def format_value(q: Dyadic | int) -> str:
    return str(Dyadic.coerce(q))


def _csr_from_rows(rows: list[tuple[np.ndarray, np.ndarray]]):
    lengths = [len(c) for c, _ in rows]
    indptr = np.zeros(len(rows) + 1, dtype=np.int64)
    np.cumsum(lengths, out=indptr[1:])
    if rows:
        indices = np.concatenate([c for c, _ in rows]).astype(np.int64)
        data = np.concatenate([np.asarray(v) for _, v in rows])
    else:
        indices = np.empty(0, dtype=np.int64)
        data = np.empty(0, dtype=np.int64)
    if data.dtype != object:
        data = data.astype(np.int64)
    return indptr, indices, data


# -- d and r ----------------------------------------------------------------


def d_matrix(fam: PhiFamily) -> BasisMatrix:
    """d[A][A'] = 1 iff eps(A') lies in <A>."""
    rows = []
    for b in range(len(fam)):
        cols = np.array(sorted(fam.preds[b] + [b]), dtype=np.int64)
        _mismatch(len(cols) == 1 << len(fam.patterns[b]), f"row {fam.patterns[b]} of d has {len(cols)} ones")
        rows.append((cols, np.ones(len(cols), dtype=np.int64)))
    return BasisMatrix(fam, "d", *_csr_from_rows(rows))


def _pred_csr(fam: PhiFamily):
    ptr = np.zeros(len(fam) + 1, dtype=np.int64)
    np.cumsum([len(p) for p in fam.preds], out=ptr[1:])
    idx = np.array([q for p in fam.preds for q in p], dtype=np.int64)
    return ptr, idx


def r_matrix(fam: PhiFamily, d: BasisMatrix | None = None) -> BasisMatrix:
    """Inverse of d by back-substitution along the linear extension."""
    ptr, idx = _pred_csr(fam)
    indptr, indices, data = kernels.unitri_inverse(len(fam), np.array(fam.linext, dtype=np.int64), ptr, idx)
    r = BasisMatrix(fam, "r", indptr, indices, data)
    for c, b, v in r.items():
        if b == c:
            _mismatch(v == 1, f"r diagonal at {fam.patterns[c]} is {v}")
        else:
            _mismatch(fam.leq(b, c), f"r[{fam.patterns[c]}][{fam.patterns[b]}] != 0 but not below")
    return r


def _csr_args(m: BasisMatrix):
    return m.indptr, m.indices, m.data


def product_is_identity(a: BasisMatrix, b: BasisMatrix, scale: int = 1) -> tuple[bool, str]:
    """Whether a @ b == scale * I, checked row by row with sparse row sums."""
    n = a.n
    for r in range(n):
        lo, hi = int(a.indptr[r]), int(a.indptr[r + 1])
        cols, vals = kernels.combine_rows(*_csr_args(b), a.indices[lo:hi], a.data[lo:hi], n)
        ok = len(cols) == 1 and int(cols[0]) == r and int(vals[0]) == scale
        if not ok:
            got = {int(c): int(v) for c, v in zip(cols, vals)}
            return False, f"row {a.family.patterns[r]}: {_show(a.family, got)}"
    return True, ""


def _show(fam: PhiFamily, row: dict[int, int], limit: int = 6) -> str:
    items = [f"{fam.patterns[c].label()}:{v}" for c, v in list(row.items())[:limit]]
    return "{" + ", ".join(items) + ("" if len(row) <= limit else ", ...") + "}"


# -- Fourier transform ------------------------------------------------------


def _gram_map(dim: int) -> np.ndarray:
    """y -> J y, so that form(x, y) = popcount(x & J y) mod 2."""
    mask = full_mask(dim)
    y = np.arange(1 << dim, dtype=np.int64)
    return ((y << 1) ^ (y >> 1)) & mask


class FourierMatrix:
    """The transform f -> (y -> 2**(-D/2) sum_x (-1)**form(x, y) f(x))."""

    def __init__(self, dim: int):
        self.dim = dim
        self.half = dim // 2
        self.jmap = _gram_map(dim)

    def sign(self, y: int, x: int) -> int:
        return -1 if (x & int(self.jmap[y])).bit_count() & 1 else 1

    def entry(self, y: int, x: int) -> Dyadic:
        return Dyadic(self.sign(y, x), self.half)

    def transform_int(self, rows: np.ndarray) -> np.ndarray:
        """Integer part of F applied to each row (result times 2**(D/2))."""
        rows = np.ascontiguousarray(rows, dtype=np.int64)
        kernels.wht_rows(rows)
        return rows[:, self.jmap]

    def apply(self, f: FunctionVector) -> FunctionVector:
        e = max((v.exp for v in f.values), default=0)
        ints = [v.num << (e - v.exp) for v in f.values]
        _wht_list(ints)
        jm = self.jmap
        return FunctionVector(self.dim, (Dyadic(ints[int(jm[y])], e + self.half) for y in range(len(ints))))

    def square_is_identity(self, chunk: int = 256) -> tuple[bool, str]:
        size = 1 << self.dim
        for start in range(0, size, chunk):
            stop = min(size, start + chunk)
            block = np.zeros((stop - start, size), dtype=np.int64)
            block[np.arange(stop - start), np.arange(start, stop)] = 1
            twice = self.transform_int(self.transform_int(block))
            want = np.zeros_like(twice)
            want[np.arange(stop - start), np.arange(start, stop)] = size
            if not np.array_equal(twice, want):
                bad = int(np.argwhere(twice != want)[0][0]) + start
                return False, f"F^2 differs from identity on point {bad}"
        return True, ""


def _wht_list(a: list[int]) -> None:
    h = 1
    m = len(a)
    while h < m:
        for i in range(0, m, 2 * h):
            for j in range(i, i + h):
                x, y = a[j], a[j + h]
                a[j], a[j + h] = x + y, x - y
        h *= 2


def fourier_point(dim: int) -> FourierMatrix:
    return FourierMatrix(dim)


def perp_bits(fam: PhiFamily, b: int) -> tuple[int, ...]:
    mask = full_mask(fam.dim)
    return nullspace_bits([((x << 1) ^ (x >> 1)) & mask for x in fam.spans[b]], fam.dim)


def n_matrix(fam: PhiFamily, r: BasisMatrix, *, chunk: int = 256) -> BasisMatrix:
    """Matrix of the Fourier transform in the basis of subspace indicators."""
    dim = fam.dim
    size = 1 << dim
    half = dim // 2
    four = FourierMatrix(dim)
    eps_rank = np.empty(size, dtype=np.int64)
    for x, b in fam.eps_to_pattern.items():
        eps_rank[x] = b
    rows: list[tuple[np.ndarray, np.ndarray] | None] = [None] * len(fam)
    for start in range(0, len(fam), chunk):
        block_ranks = range(start, min(len(fam), start + chunk))
        ind = np.zeros((len(block_ranks), size), dtype=np.int64)
        for i, b in enumerate(block_ranks):
            ind[i, list(span_elements(fam.spans[b]))] = 1
        image = four.transform_int(ind)
        for i, b in enumerate(block_ranks):
            g = image[i]
            k = len(fam.patterns[b])
            closed = np.zeros(size, dtype=np.int64)
            closed[list(span_elements(perp_bits(fam, b)))] = 1 << k
            _mismatch(np.array_equal(g, closed), f"F of <{fam.patterns[b]}> is not 2^|B| times its perp indicator")
            pts = np.nonzero(g)[0]
            rows[b] = kernels.combine_rows(r.indptr, r.indices, r.data, eps_rank[pts], g[pts], len(fam))
    n = BasisMatrix(fam, "n", *_csr_from_rows(rows), exp=half)
    for b, c, v in n.items():
        if b == c:
            _mismatch(abs(v) == 1 << half, f"n diagonal at {fam.patterns[b]} is {Dyadic(v, half)}")
        else:
            _mismatch(
                fam.lt(b, c) and len(fam.patterns[b]) < len(fam.patterns[c]),
                f"n[{fam.patterns[b]}][{fam.patterns[c]}] != 0 breaks triangularity",
            )
    return n


def n_squared_is_identity(n: BasisMatrix) -> tuple[bool, str]:
    # n = m / 2^h, so n^2 = I  <=>  m^2 = 2^(2h) I = 2^D I.
    return product_is_identity(n, n, scale=1 << (2 * n.exp))


# -- checks -----------------------------------------------------------------


def inverse_size_violations(r: BasisMatrix) -> list[tuple[int, int]]:
    fam = r.family
    return [(c, b) for c, b, v in r.items() if len(fam.patterns[b]) > len(fam.patterns[c])]


def order_size_violations(fam: PhiFamily) -> list[tuple[int, int]]:
    out = []
    sizes = fam.sizes()
    for b in range(len(fam)):
        down = fam.down[b]
        q = 0
        while down:
            if down & 1 and sizes[q] > sizes[b]:
                out.append((q, b))
            down >>= 1
            q += 1
    return out


def _sparse_mul(a: dict[int, dict[int, int]], b: dict[int, dict[int, int]]) -> dict[int, dict[int, int]]:
    out: dict[int, dict[int, int]] = {}
    for i, row in a.items():
        acc: dict[int, int] = {}
        for k, v in row.items():
            for j, w in b.get(k, {}).items():
                acc[j] = acc.get(j, 0) + v * w
        acc = {j: v for j, v in acc.items() if v}
        if acc:
            out[i] = acc
    return out


CHAIN_IDENTITY_MAX_DIM = 6


def chain_identity_check(fam: PhiFamily, d: BasisMatrix, r: BasisMatrix) -> tuple[bool, str]:
    """d == sum_k (-1)^k N^k where r = I + N."""
    if fam.dim > CHAIN_IDENTITY_MAX_DIM:
        raise ValueError(f"chain identity check limited to D <= {CHAIN_IDENTITY_MAX_DIM}")
    strict = {}
    for c, b, v in r.items():
        if b != c:
            strict.setdefault(c, {})[b] = v
    total = {i: {i: 1} for i in range(len(fam))}
    power = {i: {i: 1} for i in range(len(fam))}
    sign = 1
    steps = 0
    while power:
        power = _sparse_mul(power, strict)
        sign = -sign
        steps += 1
        _mismatch(steps <= len(fam), "N is not nilpotent")
        for i, row in power.items():
            t = total.setdefault(i, {})
            for j, v in row.items():
                t[j] = t.get(j, 0) + sign * v
    for i in range(len(fam)):
        got = {j: v for j, v in total.get(i, {}).items() if v}
        want = d.row(i)
        if got != want:
            return False, f"row {fam.patterns[i]}: series {_show(fam, got)} vs d {_show(fam, want)}"
    return True, ""


@dataclass
class ConjectureReport:
    dim: int
    passed: bool
    histogram: dict[int, int]
    violations: list[tuple[str, str, str]] = field(default_factory=list)

    def summary(self) -> str:
        hist = ", ".join(f"t={t}:{c}" for t, c in sorted(self.histogram.items()))
        head = "pass" if self.passed else f"FAIL ({len(self.violations)} entries)"
        return f"D={self.dim}: {head}; exponents {hist}"


def half_power_check(n: BasisMatrix) -> ConjectureReport:
    """Every nonzero entry of n should be +-2^-t with 0 <= t <= D/2."""
    fam = n.family
    half = fam.dim // 2
    hist: Counter[int] = Counter()
    bad = []
    for b, c, v in n.items():
        q = Dyadic(v, n.exp)
        if abs(q.num) != 1 or q.exp > half:
            bad.append((fam.patterns[b].label(), fam.patterns[c].label(), str(q)))
        else:
            hist[q.exp] += 1
    return ConjectureReport(fam.dim, not bad, dict(hist), bad)


@dataclass
class ChainHeightReport:
    dim: int
    rows: list[dict]
    agree: int
    disagree: int
    signs: dict[str, int]

    def table(self) -> str:
        lines = ["pattern\tn\tt\tk\tD/2-k\tagree"]
        for row in self.rows:
            lines.append(
                f"{row['pattern']}\t{row['n']}\t{row['t']}\t{row['k']}\t{row['predicted']}\t{'yes' if row['agree'] else 'no'}"
            )
        return "\n".join(lines)

    def summary(self) -> str:
        s = ", ".join(f"{k}:{v}" for k, v in sorted(self.signs.items()))
        return f"D={self.dim}: exponent matches D/2-k for {self.agree}/{self.agree + self.disagree}; signs {s}"


def chain_height_check(fam: PhiFamily, n: BasisMatrix) -> ChainHeightReport:
    """Compare exponents in row 0 of n against D/2 minus the chain height above."""
    half = fam.dim // 2
    above = depths(fam)
    empty = fam.index_of[fam.patterns[0]]
    rows = []
    signs: Counter[str] = Counter()
    for c, v in n.row_items(empty):
        q = Dyadic(v, n.exp)
        k = above[c]
        rows.append(
            {
                "pattern": fam.patterns[c].label(),
                "n": str(q),
                "t": q.exp,
                "k": k,
                "predicted": half - k,
                "agree": q.exp == half - k,
                "sign": "+" if q.num > 0 else "-",
                "size": len(fam.patterns[c]),
                "rank": c,
            }
        )
        signs["+" if q.num > 0 else "-"] += 1
    pos = fam.position
    rows.sort(key=lambda row: pos[row["rank"]])
    agree = sum(row["agree"] for row in rows)
    return ChainHeightReport(fam.dim, rows, agree, len(rows) - agree, dict(signs))


def rotation_invariance_violations(m: BasisMatrix) -> list[tuple[int, int]]:
    """Entries that change under the simultaneous rotation of rows and columns."""
    perm = rotation_permutation(m.family)
    bad = []
    for r, c, v in m.items():
        if m.raw(perm[r], perm[c]) != v:
            bad.append((r, c))
    return bad


# -- orbit expansion of the full-space indicator ----------------------------


def canonical_orbit(points: tuple[int, ...] | list[int], modulus: int) -> tuple[int, ...]:
    """Lexicographically least rotation of a subset of Z/modulus (labels 1..modulus)."""
    pts = list(points)
    if not pts:
        return ()
    return min(tuple(sorted((p - 1 + h) % modulus + 1 for p in pts)) for h in range(modulus))


def orbit_label(orbit: tuple[int, ...]) -> str:
    if not orbit:
        return "[-]"
    sep = "," if max(orbit) > 9 else ""
    return "[" + sep.join(map(str, orbit)) + "]"


@dataclass
class Expansion:
    dim: int
    terms: list[tuple[Dyadic, tuple[int, ...]]]

    def multiset(self) -> Counter:
        return Counter((t[0], t[1]) for t in self.terms)

    def __str__(self) -> str:
        parts = []
        for coef, orbit in self.terms:
            if coef == 1:
                c = "+"
            elif coef == -1:
                c = "-"
            else:
                c = ("+" if coef > 0 else "") + str(coef)
            parts.append(c + orbit_label(orbit))
        s = "".join(parts)
        return s[1:] if s.startswith("+") else s


def vd_expansion(fam: PhiFamily, n: BasisMatrix) -> Expansion:
    """Indicator of V_D as a sum of rotation orbits of new-basis elements."""
    dim = fam.dim
    mod = dim + 1
    empty = fam.index_of[fam.patterns[0]]
    coef = {c: Dyadic(v, n.exp).scale2(dim // 2) for c, v in n.row_items(empty)}
    orbits: dict[tuple[int, ...], Dyadic] = {}
    for c, q in coef.items():
        support = eps_support(fam.patterns[c])
        key = canonical_orbit(support, mod)
        if key in orbits:
            continue
        for h in range(mod):
            rotated = [(p - 1 + h) % mod + 1 for p in support]
            other = fam.eps_to_pattern[subset_bits(dim, rotated)]
            _mismatch(
                coef.get(other, Dyadic(0)) == q,
                f"coefficient of orbit {orbit_label(key)} is not constant under rotation",
            )
        orbits[key] = q
    terms = sorted(((q, k) for k, q in orbits.items()), key=lambda t: (-len(t[1]), t[1]))
    return Expansion(dim, terms)


_TERM_RE = re.compile(r"([+-]?)\s*(\d+(?:/2\^\d+)?)?\s*\[([0-9-]*)\]")


def parse_expansion(text: str, dim: int) -> Counter:
    """Multiset of (coefficient, canonical orbit) from strings like ``[1]-2[-]``."""
    text = text.replace("−", "-").replace(" ", "")
    out: Counter = Counter()
    pos = 0
    for m in _TERM_RE.finditer(text):
        if m.start() != pos:
            raise ValueError(f"cannot parse expansion near {text[pos:]!r}")
        pos = m.end()
        sign = -1 if m.group(1) == "-" else 1
        mag = Dyadic.parse(m.group(2)) if m.group(2) else Dyadic(1)
        body = m.group(3)
        pts = () if body == "-" else tuple(int(ch) for ch in body)
        out[(mag * sign, canonical_orbit(pts, dim + 1))] += 1
    if pos != len(text):
        raise ValueError(f"trailing text in expansion: {text[pos:]!r}")
    return out


@dataclass
class Matrices:
    family: PhiFamily
    d: BasisMatrix
    r: BasisMatrix
    n: BasisMatrix


def build_all(fam: PhiFamily) -> Matrices:
    d = d_matrix(fam)
    r = r_matrix(fam, d)
    n = n_matrix(fam, r)
    return Matrices(fam, d, r, n)
