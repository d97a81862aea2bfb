import json
from fractions import Fraction

import pytest

from newbasis.dyadic import Dyadic, FunctionVector
from newbasis.gf2 import form_bits, span_elements
from newbasis.golden import PUBLISHED_EXPANSIONS, PUBLISHED_N
from newbasis.matrices import (
    FourierMatrix,
    build_all,
    canonical_orbit,
    chain_height_check,
    chain_identity_check,
    half_power_check,
    inverse_size_violations,
    n_squared_is_identity,
    orbit_label,
    order_size_violations,
    parse_expansion,
    product_is_identity,
    rotation_invariance_violations,
    vd_expansion,
)
from newbasis.phi import depths, enumerate_phi

# Computed here and cross-checked by a dense rational solve of d^T c = 1.
COMPUTED_D8_EXPANSION = (
    "-2[1234567]+2[123457]+2[123458]+[123467]+[123478]+2[123567]-4[12345]-2[12357]"
    "-2[12358]-2[12368]+4[1235]+4[1238]+[1256]-8[123]+4[147]+8[13]-8[14]+16[-]"
)


def mats(d):
    return build_all(enumerate_phi(d))


def test_d_rows():
    for d in (2, 4, 6):
        m = mats(d)
        fam = m.family
        assert m.d.row(0) == {0: 1}
        for b, p in enumerate(fam.patterns):
            assert len(m.d.row(b)) == 2 ** len(p)


def test_r_small():
    m = mats(2)
    assert m.r.row(0) == {0: 1}
    assert m.r.row(1) == {0: -1, 1: 1}


@pytest.mark.parametrize("d", [2, 4, 6, 8])
def test_inverse_pair(d, backend):
    m = mats(d)
    assert product_is_identity(m.d, m.r) == (True, "")
    assert product_is_identity(m.r, m.d) == (True, "")


@pytest.mark.parametrize("d", [2, 4, 6, 8])
def test_r_is_point_mass(d):
    # sum_B r_C^B 1_<B> is the point mass at eps(C)
    m = mats(d)
    fam = m.family
    for c in range(0, len(fam), max(1, len(fam) // 40)):
        total = [0] * (1 << d)
        for b, v in m.r.row_items(c):
            for x in span_elements(fam.spans[b]):
                total[x] += v
        want = [0] * (1 << d)
        want[fam.eps[c]] = 1
        assert total == want


@pytest.mark.parametrize("d", [2, 4, 6, 8])
def test_size_bounds(d):
    m = mats(d)
    assert inverse_size_violations(m.r) == []
    assert order_size_violations(m.family) == []


@pytest.mark.slow
def test_size_bound_at_ten():
    m = mats(10)
    assert inverse_size_violations(m.r) == []
    assert product_is_identity(m.d, m.r)[0]


@pytest.mark.parametrize("d", [2, 4, 6])
def test_chain_identity(d):
    m = mats(d)
    assert chain_identity_check(m.family, m.d, m.r) == (True, "")


def test_fourier_against_direct_sum():
    d = 4
    four = FourierMatrix(d)
    f = FunctionVector(d, [(x * 7) % 5 - 2 for x in range(1 << d)])
    got = four.apply(f)
    for y in range(1 << d):
        direct = sum(
            (-1) ** form_bits(x, y, d) * f[x].to_fraction() for x in range(1 << d)
        ) / 4
        assert got[y].to_fraction() == direct
    delta = FunctionVector.indicator(d, [0])
    assert four.apply(delta) == FunctionVector(d, [Dyadic(1, 2)] * 16)


@pytest.mark.parametrize("d", [2, 4, 6, 8])
def test_fourier_square(d, backend):
    assert FourierMatrix(d).square_is_identity(chunk=64) == (True, "")
    assert n_squared_is_identity(mats(d).n) == (True, "")


def _dense_solve(cols, rhs):
    """Solve sum_k c_k cols[k] = rhs over the rationals (cols independent)."""
    n = len(cols)
    rows = len(rhs)
    a = [[Fraction(cols[k][i]) for k in range(n)] + [Fraction(rhs[i])] for i in range(rows)]
    piv_rows = []
    r = 0
    for k in range(n):
        p = next(i for i in range(r, rows) if a[i][k] != 0)
        a[r], a[p] = a[p], a[r]
        inv = 1 / a[r][k]
        a[r] = [v * inv for v in a[r]]
        for i in range(rows):
            if i != r and a[i][k]:
                f = a[i][k]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        piv_rows.append(r)
        r += 1
    return [a[i][n] for i in piv_rows]


@pytest.mark.parametrize("d", [2, 4])
def test_n_against_dense_rational_solve(d):
    m = mats(d)
    fam = m.family
    size = 1 << d
    cols = []
    for b in range(len(fam)):
        ind = [0] * size
        for x in span_elements(fam.spans[b]):
            ind[x] = 1
        cols.append(ind)
    for b in range(len(fam)):
        image = [
            sum((-1) ** form_bits(x, y, d) * cols[b][x] for x in range(size)) * Fraction(1, 2 ** (d // 2))
            for y in range(size)
        ]
        coef = _dense_solve(cols, image)
        assert [m.n.entry(b, c) for c in range(len(fam))] == [Dyadic.coerce(q) if m.n.exp else q for q in coef]


def test_n_at_two_matches_published():
    m = mats(2)
    assert m.n.dense() == PUBLISHED_N[2]


def test_n_structure():
    m = mats(4)
    fam = m.family
    for b, p in enumerate(fam.patterns):
        assert abs(m.n.entry(b, b)) == 1
        if len(p) == 2:
            assert m.n.row(b) == {b: 4}


@pytest.mark.parametrize("d", [2, 4, 6, 8])
def test_conjecture_holds_up_to_eight(d):
    rep = half_power_check(mats(d).n)
    assert rep.passed, rep.violations[:3]
    assert rep.histogram[0] >= len(enumerate_phi(d))


@pytest.mark.slow
def test_conjecture_report_at_ten():
    rep = half_power_check(mats(10).n)
    # a finding, frozen so that changes are noticed
    assert not rep.passed
    assert len(rep.violations) == 66
    assert ("{}", "{1..1, 3..5, 4..4, 11..6}", "-3/2^4") in rep.violations
    assert {v[2] for v in rep.violations} == {"3/2^5", "-3/2^4"}


def test_chain_height_report():
    fam = enumerate_phi(4)
    m = mats(4)
    rep = chain_height_check(fam, m.n)
    assert rep.agree + rep.disagree == len(m.n.row(0))
    dep = depths(fam)
    for row in rep.rows:
        if row["n"] == "1/2^2":
            assert dep[row["rank"]] == 0
    assert "agree" in rep.table().splitlines()[0]
    rep2 = chain_height_check(enumerate_phi(2), mats(2).n)
    assert rep2.agree == 4


@pytest.mark.parametrize("d", [2, 4, 6])
def test_rotation_invariance(d):
    m = mats(d)
    for x in (m.d, m.r, m.n):
        assert rotation_invariance_violations(x) == []


def test_orbits():
    assert canonical_orbit((3, 4), 5) == (1, 2)
    assert canonical_orbit((), 5) == ()
    assert orbit_label(()) == "[-]"
    assert orbit_label((1, 3)) == "[13]"
    assert orbit_label((1, 10)) == "[1,10]"
    parsed = parse_expansion("[1]-2[-]", 2)
    assert parsed == {(Dyadic(1), (1,)): 1, (Dyadic(-2), ()): 1}
    with pytest.raises(ValueError):
        parse_expansion("[1]?[2]", 2)


@pytest.mark.parametrize("d", [2, 4, 6])
def test_expansion_matches_published(d):
    exp = vd_expansion(enumerate_phi(d), mats(d).n)
    assert exp.multiset() == parse_expansion(PUBLISHED_EXPANSIONS[d], d)


def test_expansion_strings():
    assert str(vd_expansion(enumerate_phi(2), mats(2).n)) == "[1]-2[-]"
    assert str(vd_expansion(enumerate_phi(4), mats(4).n)) == "[123]-4[-]"


def test_expansion_at_eight_is_frozen():
    exp = vd_expansion(enumerate_phi(8), mats(8).n)
    assert str(exp) == COMPUTED_D8_EXPANSION
    assert exp.multiset() == parse_expansion(COMPUTED_D8_EXPANSION, 8)


def test_expansion_at_eight_is_independent_of_n():
    # Solve d^T c = 1 directly: 1_V = sum_B c_B 1_<B> with c = (1,...,1) r.
    fam = enumerate_phi(8)
    m = mats(8)
    c = {}
    for row in range(len(fam)):
        for b, v in m.r.row_items(row):
            c[b] = c.get(b, 0) + v
    empty = 0
    n_row = {b: Dyadic(v, m.n.exp).scale2(4) for b, v in m.n.row_items(empty)}
    assert {b: Dyadic(v) for b, v in c.items() if v} == n_row


def test_exports():
    m = mats(2)
    csv = m.n.to_csv().splitlines()
    assert csv[0] == '"","{}","{1..1}","{2..2}","{3..3}"'
    assert csv[1] == '"{}",-1,1/2^1,1/2^1,1/2^1'
    doc = json.loads(m.n.to_json())
    assert doc["order"] == ["{}", "{1..1}", "{2..2}", "{3..3}"]
    assert [0, 1, 1, 1] in doc["entries"]
    assert m.d.to_json() == m.d.to_json()


def test_d_ones_at_four():
    assert mats(4).d.nnz == 1 * 1 + 5 * 2 + 10 * 4
