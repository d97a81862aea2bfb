import pytest
from hypothesis import given
from hypothesis import strategies as st

from newbasis.gf2 import (
    CircVector,
    DimensionMismatchError,
    InvalidDimensionError,
    form,
    form_bits,
    full_mask,
    is_isotropic,
    nullspace_bits,
    perp,
    rref,
    span,
    span_bits,
    span_elements,
    subset_bits,
    vec_from_subset,
)

dims = st.sampled_from([2, 4, 6, 8, 10])


@st.composite
def dim_and_vectors(draw, count=2):
    d = draw(dims)
    vs = [draw(st.integers(0, full_mask(d))) for _ in range(count)]
    return d, vs


def _brute_form(x, y, dim):
    # form on e_1..e_D: 1 exactly between path neighbours
    total = 0
    for i in range(dim):
        for j in range(dim):
            if (x >> i) & 1 and (y >> j) & 1 and abs(i - j) == 1:
                total += 1
    return total & 1


def test_circular_basis_axioms():
    for d in (2, 4, 6, 8):
        n = d + 1
        es = [CircVector.basis(d, i) for i in range(1, n + 1)]
        total = CircVector.zero(d)
        for e in es:
            total = total + e
        assert not total
        for i in range(n):
            for j in range(n):
                adjacent = (i - j) % n in (1, n - 1)
                assert form(es[i], es[j]) == int(adjacent)


@given(dim_and_vectors(3))
def test_form_is_bilinear_and_alternating(data):
    d, (x, y, z) = data
    assert form_bits(x, x, d) == 0
    assert form_bits(x, y, d) == form_bits(y, x, d)
    assert form_bits(x ^ z, y, d) == form_bits(x, y, d) ^ form_bits(z, y, d)
    assert form_bits(x, y, d) == _brute_form(x, y, d)


@given(dims)
def test_form_is_nondegenerate(d):
    assert perp(span_bits([], d)).rank == d
    assert perp(span_bits([1 << i for i in range(d)], d)).rank == 0


@given(dim_and_vectors(4))
def test_perp_dimension_and_double_perp(data):
    d, vs = data
    w = span_bits(vs, d)
    wp = perp(w)
    assert wp.rank == d - w.rank
    assert perp(wp).basis_rows == w.basis_rows
    for u in w.basis_rows:
        for v in wp.basis_rows:
            assert form_bits(u, v, d) == 0


@given(dim_and_vectors(4))
def test_rref_is_canonical(data):
    d, vs = data
    rows = rref(vs)
    assert rref(reversed(vs)) == rows
    elems = set(span_elements(rows))
    assert len(elems) == 1 << len(rows)
    # every original vector is in the span and every span element is a sum of the inputs
    assert set(vs) <= elems
    sums = {0}
    for v in vs:
        sums |= {s ^ v for s in sums}
    assert sums == elems


@given(dim_and_vectors(3))
def test_nullspace(data):
    d, cs = data
    ns = nullspace_bits(cs, d)
    assert len(ns) == d - len(rref(cs))
    for x in span_elements(ns):
        assert all((x & c).bit_count() % 2 == 0 for c in cs)


def test_last_circular_vector_is_the_sum():
    assert subset_bits(4, [5]) == 0b1111
    assert vec_from_subset(4, [1, 5]).indices() == (2, 3, 4)


def test_span_membership_and_isotropy():
    w = span([vec_from_subset(6, [1]), vec_from_subset(6, [3])])
    assert vec_from_subset(6, [1, 3]) in w
    assert vec_from_subset(6, [2]) not in w
    assert is_isotropic(w)
    assert not is_isotropic(span([vec_from_subset(6, [1]), vec_from_subset(6, [2])]))


def test_errors():
    with pytest.raises(InvalidDimensionError):
        CircVector(3, 0)
    with pytest.raises(InvalidDimensionError):
        span([])
    with pytest.raises(DimensionMismatchError):
        CircVector(2, 1) + CircVector(4, 1)
    with pytest.raises(ValueError):
        CircVector(2, 8)
    with pytest.raises(ValueError):
        subset_bits(4, [6])
