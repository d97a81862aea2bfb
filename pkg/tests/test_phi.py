from collections import Counter

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from newbasis.dyadic import FunctionVector
from newbasis.gf2 import CircVector, span_elements, subset_bits, vec_from_subset
from newbasis.intervals import (
    Interval,
    Pattern,
    PreconditionError,
    check_p0,
    check_p1,
    epsilon_bits,
    parse_pattern,
)
from newbasis.phi import (
    b_shift,
    chain_height_above,
    enumerate_bruteforce,
    enumerate_phi,
    hasse_dot,
    nu,
    rotate_bits,
    rotation_permutation,
    singleton_criterion,
    t_insert,
    tau,
    theta,
)


@pytest.mark.parametrize("d", [2, 4, 6, 8])
def test_recursive_enumeration_matches_brute_force(d):
    fam = enumerate_phi(d)
    assert len(fam) == 2**d
    assert set(fam.patterns) == set(enumerate_bruteforce(d))
    assert sorted(fam.eps) == list(range(2**d))


def test_small_families():
    fam2 = enumerate_phi(2)
    assert [p.label() for p in fam2.patterns] == ["{}", "{1..1}", "{2..2}", "{3..3}"]
    assert Counter(fam2.sizes()) == {0: 1, 1: 3}
    assert Counter(enumerate_phi(4).sizes()) == {0: 1, 1: 5, 2: 10}


@pytest.mark.slow
def test_count_at_ten():
    fam = enumerate_phi(10)
    assert len(fam) == 1024
    assert sorted(fam.eps) == list(range(1024))


def test_tau_examples():
    assert tau(2, CircVector.zero(2)) == CircVector.zero(4)
    assert tau(2, CircVector.basis(2, 1)) == vec_from_subset(4, [1, 2, 3])


@pytest.mark.parametrize("d", [4, 6, 8])
def test_tau_preserves_the_form(d):
    from newbasis.gf2 import form_bits

    small = d - 2
    for j in range(1, d + 2):
        ej = subset_bits(d, [j])
        for x in range(1 << small):
            tx = tau(j, CircVector(small, x)).bits
            assert form_bits(tx, ej, d) == 0
            for y in (1, 3, (1 << small) - 1):
                ty = tau(j, CircVector(small, y)).bits
                assert form_bits(tx, ty, d) == form_bits(x, y, small)


def test_theta_examples():
    zero = FunctionVector(2)
    assert theta(3, zero) == FunctionVector(4)
    delta = FunctionVector.point(CircVector.zero(2))
    assert theta(3, delta) == FunctionVector.indicator(4, [0, subset_bits(4, [3])])


@pytest.mark.parametrize("d", [4, 6])
def test_theta_maps_span_indicators_to_lifted_span_indicators(d):
    for small in enumerate_phi(d - 2).patterns:
        rows = enumerate_phi(d - 2).spans[enumerate_phi(d - 2).index_of[small]]
        f = FunctionVector.indicator(d - 2, span_elements(rows))
        for j in range(1, d + 2):
            big = t_insert(j, small)
            want = enumerate_phi(d).spans[enumerate_phi(d).index_of[big]]
            assert theta(j, f) == FunctionVector.indicator(d, span_elements(want))


def test_t_insert_examples():
    assert t_insert(3, Pattern(4 - 2, ())) == Pattern.of(4, (3, 3))
    assert t_insert(2, Pattern.of(2, (1, 1))) == parse_pattern(4, "{1..3, 2..2}")


def test_b_shift_examples():
    assert b_shift(parse_pattern(4, "{2..2}"), 2) == Pattern(4, ())
    assert b_shift(parse_pattern(4, "{2..2, 1..3}"), 2) == parse_pattern(4, "{1..1, 3..3}")
    with pytest.raises(PreconditionError):
        b_shift(parse_pattern(4, "{2..2}"), 1)


@pytest.mark.parametrize("d", [2, 4, 6, 8])
def test_b_shift_law(d):
    fam = enumerate_phi(d)
    for p in fam.patterns:
        for i in range(1, d + 2):
            if Interval(d + 1, i, 1) not in p:
                continue
            q = b_shift(p, i)
            assert q in fam.index_of
            assert epsilon_bits(q) == epsilon_bits(p) ^ subset_bits(d, [i])
            assert len(q) in (len(p) - 1, len(p))


@pytest.mark.parametrize("d", [2, 4, 6, 8])
def test_singleton_criterion(d):
    for p in enumerate_phi(d).patterns:
        for i in range(1, d + 2):
            assert (Interval(d + 1, i, 1) in p) == singleton_criterion(p, i)


@pytest.mark.parametrize("d", [2, 4, 6, 8])
def test_order_respects_size(d):
    fam = enumerate_phi(d)
    for b in range(len(fam)):
        for q in range(len(fam)):
            if fam.leq(q, b):
                assert len(fam.patterns[q]) <= len(fam.patterns[b])


@pytest.mark.parametrize("d", [2, 4, 6, 8])
def test_rotation_equivariance(d):
    fam = enumerate_phi(d)
    perm = rotation_permutation(fam)
    assert sorted(perm) == list(range(len(fam)))
    for b in range(len(fam)):
        assert fam.eps[perm[b]] == rotate_bits(fam.eps[b], d)
        for q in fam.preds[b]:
            assert fam.leq(perm[q], perm[b])


@given(st.sampled_from([2, 4, 6]), st.data())
@settings(max_examples=60)
def test_rotation_by_full_turn_is_identity(d, data):
    x = data.draw(st.integers(0, (1 << d) - 1))
    assert rotate_bits(x, d, d + 1) == x
    assert rotate_bits(rotate_bits(x, d, 2), d, d - 1) == x


def test_poset_at_two():
    fam = enumerate_phi(2)
    empty = fam.patterns[0]
    assert chain_height_above(empty, fam) == 1
    assert nu(CircVector.zero(2), fam) == 0
    for a in range(1, 4):
        assert fam.lt(0, a)
        for b in range(1, 4):
            assert a == b or not fam.leq(a, b)
    dot = hasse_dot(fam)
    assert dot.count("->") == 3
    assert dot.count("label=") == 4


@pytest.mark.parametrize("d", [4, 6])
def test_hasse_edges_are_covers(d):
    fam = enumerate_phi(d)
    for b in range(len(fam)):
        for q in fam.covers(b):
            assert fam.lt(q, b)
            assert not any(fam.lt(q, m) and fam.lt(m, b) for m in range(len(fam)))


def test_patterns_are_admissible():
    for d in (2, 4, 6, 8):
        for p in enumerate_phi(d).patterns:
            assert check_p0(p) and check_p1(p)
