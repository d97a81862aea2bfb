"""Reference data: published expansions of the full-space indicator and
published Fourier matrices in the new basis, as printed (rows = B, columns = B')."""

from __future__ import annotations

from .dyadic import Dyadic

PUBLISHED_EXPANSIONS = {
    2: "[1]-2[-]",
    4: "[123]-4[-]",
    6: "[1245]+[1235]+[1236]-2[123]-2[135]+4[13]-4[1]+8[-]",
    8: (
        "[1246]+[123467]+[124567]-2[1234567]+2[123457]+2[134567]+2[123567]"
        "-2[13457]-2[12357]-2[13567]-4[12345]+4[1235]+4[1238]+4[147]"
        "-8[123]+8[13]-8[14]+16[-]"
    ),
}

_N2 = """
-1 1/2 1/2 1/2
0 1 0 0
0 0 1 0
0 0 0 1
"""

_N4 = """
-1 0 0 0 0 0 0 0 0 0 0 1/4 1/4 1/4 1/4 1/4
0 -1 0 0 0 0 0 0 1/2 1/2 0 1/2 0 0 0 0
0 0 -1 0 0 0 1/2 0 0 0 1/2 0 1/2 0 0 0
0 0 0 -1 0 0 0 1/2 1/2 0 0 0 0 1/2 0 0
0 0 0 0 -1 0 0 0 0 1/2 1/2 0 0 0 1/2 0
0 0 0 0 0 -1 1/2 1/2 0 0 0 0 0 0 0 1/2
0 0 0 0 0 0 1 0 0 0 0 0 0 0 0 0
0 0 0 0 0 0 0 1 0 0 0 0 0 0 0 0
0 0 0 0 0 0 0 0 1 0 0 0 0 0 0 0
0 0 0 0 0 0 0 0 0 1 0 0 0 0 0 0
0 0 0 0 0 0 0 0 0 0 1 0 0 0 0 0
0 0 0 0 0 0 0 0 0 0 0 1 0 0 0 0
0 0 0 0 0 0 0 0 0 0 0 0 1 0 0 0
0 0 0 0 0 0 0 0 0 0 0 0 0 1 0 0
0 0 0 0 0 0 0 0 0 0 0 0 0 0 1 0
0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 1
"""

# Row blocks of the D=4 display: the empty pattern, then three groups of five.
PUBLISHED_N4_BLOCKS = (1, 5, 5, 5)


def _parse_cell(s: str) -> Dyadic:
    if "/" in s:
        num, den = s.split("/")
        den = int(den)
        return Dyadic(int(num), den.bit_length() - 1)
    return Dyadic(int(s))


def _parse(text: str) -> list[list[Dyadic]]:
    return [[_parse_cell(c) for c in line.split()] for line in text.strip().splitlines()]


PUBLISHED_N = {2: _parse(_N2), 4: _parse(_N4)}
