"""Young diagram combinatorics against brute-force oracles."""

from fractions import Fraction

import pytest

from lmsym.coeffring import MPoly, PP_T, PP_Z, PP_ZP
from lmsym.partition import (
    add_box,
    as_partition,
    boxes,
    conjugate,
    content_product,
    contains,
    corners,
    dim_skew,
    dim_syt,
    enumerate_partitions,
    frobenius,
    from_string,
    partitions_up_to,
    remove_box,
    skew_boxes,
    subpartitions,
)


def count_chains(lam, mu=()):
    """Oracle: standard tableaux of lam/mu as box-removal chains (no memo,
    no hook formula)."""
    lam = as_partition(lam)
    mu = as_partition(mu)
    if lam == mu:
        return 1
    if not contains(lam, mu):
        return 0
    total = 0
    for box in corners(lam)[1]:
        smaller = remove_box(lam, box)
        if contains(smaller, mu):
            total += count_chains(smaller, mu)
    return total


def test_enumerate_counts():
    assert enumerate_partitions(0) == [()]
    assert len(enumerate_partitions(4)) == 5
    assert len(enumerate_partitions(10)) == 42


def test_enumerate_reverse_lex_order():
    assert enumerate_partitions(4) == [(4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1)]
    for n in range(9):
        parts = enumerate_partitions(n)
        assert parts == sorted(parts, reverse=True)
        assert len(set(parts)) == len(parts)
        assert all(sum(p) == n for p in parts)


def test_corners_examples():
    assert corners((3, 2, 2))[1] == [(1, 3), (3, 2)]
    assert corners(())[0] == [(1, 1)]
    assert corners(())[1] == []
    assert corners((1,))[0] == [(1, 2), (2, 1)]
    assert corners((1,))[1] == [(1, 1)]


def test_corner_count_relation():
    for lam in partitions_up_to(8):
        addable, removable = corners(lam)
        assert len(addable) == len(removable) + 1
        for box in addable:
            assert remove_box(add_box(lam, box), box) == lam


def test_dim_examples():
    assert dim_syt(()) == 1
    assert dim_syt((2, 1)) == count_chains((2, 1)) == 2
    assert dim_syt((2, 2)) == count_chains((2, 2)) == 2


def test_dim_against_chain_oracle():
    for lam in partitions_up_to(7):
        assert dim_syt(lam) == count_chains(lam)


def test_dim_branching_rule():
    for lam in partitions_up_to(8):
        if lam:
            assert dim_syt(lam) == sum(dim_syt(remove_box(lam, b)) for b in corners(lam)[1])


def test_dim_skew_examples():
    assert dim_skew((2, 1), (1,)) == 2
    assert dim_skew((1, 1), (2,)) == 0
    assert dim_skew((2, 1), (2,)) == 1


def test_dim_skew_against_chain_oracle():
    for lam in partitions_up_to(7):
        for mu in partitions_up_to(3):
            assert dim_skew(lam, mu) == count_chains(lam, mu), (lam, mu)


def test_dim_skew_empty_is_dim():
    for lam in partitions_up_to(8):
        assert dim_skew(lam, ()) == dim_syt(lam)


def test_skew_dimension_convolution():
    # sum over mu of size k of dim(mu) dim(lam/mu) counts all tableaux of lam
    for lam in partitions_up_to(8):
        for k in range(sum(lam) + 1):
            total = sum(dim_syt(mu) * dim_skew(lam, mu) for mu in enumerate_partitions(k))
            assert total == dim_syt(lam)


def test_frobenius_examples():
    a, b = frobenius((3, 2, 2))
    assert a == (Fraction(5, 2), Fraction(1, 2))
    assert b == (Fraction(5, 2), Fraction(3, 2))
    assert frobenius(()) == ((), ())
    assert frobenius((1,)) == ((Fraction(1, 2),), (Fraction(1, 2),))


def test_frobenius_properties():
    for lam in partitions_up_to(9):
        a, b = frobenius(lam)
        assert sum(a) + sum(b) == sum(lam)
        assert all(x > 0 for x in a + b)
        assert list(a) == sorted(a, reverse=True) and list(b) == sorted(b, reverse=True)
        ca, cb = frobenius(conjugate(lam))
        assert (ca, cb) == (b, a)


def test_content_product_examples():
    zz = PP_Z * PP_ZP
    assert content_product(boxes((1,))) == zz
    assert content_product(boxes((2,))) == zz * (PP_Z + 1) * (PP_ZP + 1)
    assert content_product(boxes((1, 1))) == zz * (PP_Z - 1) * (PP_ZP - 1)
    assert content_product([]) == MPoly.const(3, 1)


def test_content_product_transposition():
    # contents negate under transposition: substituting z -> -z, z' -> -z'
    # turns the product over lam into the product over the conjugate
    flip = [-PP_Z, -PP_ZP, PP_T]
    for lam in partitions_up_to(7):
        flipped = content_product(boxes(lam)).compose(flip, 3)
        assert flipped == content_product(boxes(conjugate(lam)))


def test_subpartitions():
    subs = subpartitions((2, 1))
    assert set(subs) == {(), (1,), (2,), (1, 1), (2, 1)}
    assert all(contains((2, 1), mu) for mu in subs)


def test_skew_boxes():
    assert skew_boxes((2, 1), (1,)) == [(1, 2), (2, 1)]
    assert skew_boxes((2, 2), (2, 2)) == []


def test_box_edit_errors():
    with pytest.raises(ValueError):
        add_box((2, 2), (1, 2))
    with pytest.raises(ValueError):
        remove_box((2, 2), (1, 2))


def test_parsing():
    assert from_string("3,2,2") == (3, 2, 2)
    assert from_string("") == ()
    with pytest.raises(ValueError):
        from_string("1,2")


def test_conjugate_involution():
    for lam in partitions_up_to(8):
        assert conjugate(conjugate(lam)) == lam
        assert sum(conjugate(lam)) == sum(lam)
