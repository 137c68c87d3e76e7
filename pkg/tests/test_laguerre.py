"""Laguerre family: expansion, operator realizations, moment functional,
separation of variables."""

import random
from fractions import Fraction

from lmsym import nvariate
from lmsym.coeffring import MPoly, PP_ONE, PP_Z, PP_ZP, PP_ZZP
from lmsym.laguerre import (
    apply_e,
    apply_schur,
    inner_product,
    laguerre_sf,
    moment,
    moment_schur,
    separation_check,
    separation_diff,
)
from lmsym.partition import boxes, content_product, partitions_up_to
from lmsym.symcore import SymFunc, truncate

ZZ = PP_Z * PP_ZP


def test_family_examples():
    assert laguerre_sf(()) == SymFunc.one("s")
    assert laguerre_sf((1,)) == SymFunc("s", {(1,): 1, (): -ZZ})
    expected = SymFunc("s", {
        (2,): PP_ONE,
        (1,): -(PP_Z + 1) * (PP_ZP + 1),
        (): ZZ * (PP_Z + 1) * (PP_ZP + 1) * Fraction(1, 2),
    })
    assert laguerre_sf((2,)) == expected


def test_top_term_is_monic_schur():
    for nu in partitions_up_to(5):
        f = laguerre_sf(nu)
        assert f.terms[nu] == PP_ONE
        assert all(sum(mu) < sum(nu) for mu in f.terms if mu != nu)


def test_operator_examples():
    assert apply_schur(SymFunc.schur((1,))) == SymFunc("s", {(1,): -1, (): ZZ})
    assert apply_schur(SymFunc.one("s")).is_zero()
    assert apply_schur(SymFunc.schur((2,))) == \
        SymFunc("s", {(2,): -2, (1,): (PP_Z + 1) * (PP_ZP + 1)})
    assert apply_e(SymFunc.e(1)) == SymFunc("e", {(1,): -1, (): ZZ})
    assert apply_e(SymFunc.one("e")).is_zero()
    # e_2 = S_(1,1): the two realizations must agree
    assert apply_e(SymFunc.e(2)) == apply_schur(SymFunc.schur((1, 1))).in_basis("e")


def test_realization_agreement_small():
    for nu in partitions_up_to(4):
        s = SymFunc.schur(nu)
        assert apply_e(s.in_basis("e")) == apply_schur(s).in_basis("e"), nu


def test_eigenrelation_small():
    for nu in partitions_up_to(4):
        f = laguerre_sf(nu)
        assert apply_schur(f) == f.scale(-sum(nu))


def test_moment_examples():
    assert moment(SymFunc.one("s")) == PP_ONE
    assert moment(SymFunc.schur((1,))) == ZZ
    l1 = laguerre_sf((1,))
    assert moment(l1 * l1) == ZZ


def _moment_by_recursion(nu, memo={(): PP_ONE}):
    """Oracle: |nu| psi(S_nu) = sum over removable boxes (z+c)(z'+c) psi(S_nu-box),
    exactly the statement that psi kills the operator range."""
    from lmsym.partition import content, corners, remove_box

    nu = tuple(nu)
    if nu not in memo:
        acc = MPoly(3)
        for box in corners(nu)[1]:
            c = content(box)
            acc = acc + (PP_Z + c) * (PP_ZP + c) * _moment_by_recursion(remove_box(nu, box))
        memo[nu] = acc * Fraction(1, sum(nu))
    return memo[nu]


def test_moment_closed_form_matches_recursion_up_to_6():
    # documents that the first power of dim(nu)/|nu|! (not its square) is the
    # closed form consistent with the defining recursion
    for nu in partitions_up_to(6):
        assert moment_schur(nu) == _moment_by_recursion(nu), nu


def dim_factor_squared(nu):
    from lmsym.partition import dim_syt
    import math

    n = sum(nu)
    return content_product(boxes(nu)) * (Fraction(dim_syt(nu), math.factorial(n)) ** 2)


def test_squared_closed_form_is_inconsistent():
    # the square variant fails the recursion already at nu = (2)
    nu = (2,)
    assert dim_factor_squared(nu) != _moment_by_recursion(nu)
    assert moment_schur(nu) == _moment_by_recursion(nu)


def test_moment_kills_operator_range():
    for nu in partitions_up_to(7):
        if nu:
            assert moment(apply_schur(SymFunc.schur(nu))).is_zero(), nu


def test_inner_product_examples():
    assert inner_product(laguerre_sf((1,)), laguerre_sf((2,))).is_zero()
    assert inner_product(SymFunc.one("s"), SymFunc.one("s")) == PP_ONE
    assert inner_product(laguerre_sf((1, 1)), laguerre_sf((1, 1))) == \
        ZZ * (PP_Z - 1) * (PP_ZP - 1)


def test_orthogonality_small():
    shapes = list(partitions_up_to(3))
    for i, nu in enumerate(shapes):
        for mu in shapes[i:]:
            got = inner_product(laguerre_sf(nu), laguerre_sf(mu))
            if nu == mu:
                assert got == content_product(boxes(nu))
            else:
                assert got.is_zero()


def test_characterization_by_lower_degree_orthogonality():
    for nu in partitions_up_to(4):
        f = laguerre_sf(nu)
        for mu in partitions_up_to(sum(nu) - 1) if nu else []:
            assert moment(f * SymFunc.schur(mu)).is_zero(), (nu, mu)


def test_degenerate_factorization():
    # at z = N, z' = N + b - 1 the operator descends through the truncation
    rng = random.Random(3)
    shapes = list(partitions_up_to(4))
    for N in (1, 2, 3):
        for b in (Fraction(1, 3), Fraction(5, 2)):
            zp = N - 1 + b
            for _ in range(3):
                f = SymFunc("e", {rng.choice(shapes): Fraction(rng.randint(-3, 3)),
                                  rng.choice(shapes): Fraction(rng.randint(1, 3))})
                lhs = truncate(apply_e(f), N, z_value=Fraction(N), zp_value=zp)
                rhs_nv = nvariate.laguerre_op_x(truncate(f, N))
                rhs = rhs_nv.subs_numeric(b=b)
                assert lhs == rhs, (N, b, f.terms)


def test_separation_examples():
    assert separation_check(SymFunc.e(1))
    assert separation_check(SymFunc.one("e"))
    assert separation_check(SymFunc.e(2))


def test_separation_radial_action_on_e1():
    # on r = e_1 only the radial part acts: r d^2/dr^2 + (c - r) d/dr gives c - r
    got = apply_e(SymFunc.e(1))
    assert got == SymFunc("e", {(): PP_ZZP, (1,): -1})
    assert separation_diff(SymFunc.e(1)).is_zero()


def test_separation_full_set():
    for mono in ((1,), (2,), (3,), (4,), (2, 1), (2, 2)):
        assert separation_check(SymFunc("e", {mono: 1})), mono


def test_separation_on_combinations():
    f = SymFunc("e", {(3, 1): PP_Z, (2, 2): 2, (1,): -1})
    assert separation_check(f)
