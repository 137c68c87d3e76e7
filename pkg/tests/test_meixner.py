"""Frobenius-Schur and Meixner families, diagram realization, degeneration."""

from fractions import Fraction

import pytest

from lmsym import laguerre
from lmsym.coeffring import MPoly, NumericParams, PP_ONE, PP_T, PP_Z, PP_ZP
from lmsym.meixner import (
    apply_fs,
    apply_on_diagrams,
    fs_sf,
    fs_value,
    inner_product_me,
    jump_rates,
    laguerre_limit,
    meixner_schur,
    meixner_sf,
    meixner_value_normalized,
    moment_fs,
    moment_me,
    normalization_const,
    operator_limit_check,
)
from lmsym.partition import (
    boxes,
    content_product,
    enumerate_partitions,
    partitions_up_to,
)
from lmsym.symcore import SymFunc, eval_on_diagram

ZZ = PP_Z * PP_ZP

NP_SETS = (
    NumericParams.conjugate(1, 1, Fraction(1, 2)),
    NumericParams.real_pair(Fraction(1, 3), Fraction(2, 3), Fraction(1, 3)),
    NumericParams.conjugate(Fraction(3, 2), Fraction(1, 2), Fraction(2, 5)),
)


def test_fs_value_examples():
    assert fs_value((1,), (1,)) == 1
    assert fs_value((2,), (1, 1)) == 0
    assert fs_value((2,), (2, 1)) == 3


def test_fs_examples():
    assert fs_sf(()) == SymFunc.one("s")
    assert fs_sf((1,)) == SymFunc.schur((1,))
    # branching: FS_2 + FS_11 has diagram values |lam|(|lam|-1) = (p_1^2 - p_1)(lam)
    total = fs_sf((2,)) + fs_sf((1, 1))
    p = SymFunc.p(1)
    assert total == (p * p - p).in_basis("s")


def test_fs_held_out_values():
    # the interpolation uses sizes < |nu| only; sizes |nu| and |nu|+1 verify it
    for nu in partitions_up_to(4):
        f = fs_sf(nu)
        n = sum(nu)
        for size in (n, n + 1):
            for lam in enumerate_partitions(size):
                got = eval_on_diagram(f, lam).const_value()
                assert got == fs_value(nu, lam), (nu, lam)


def test_meixner_examples():
    assert meixner_sf(()) == SymFunc.one("fs")
    assert meixner_sf((1,)) == SymFunc("fs", {(1,): 1, (): -PP_T * ZZ})
    expected = SymFunc("fs", {
        (2,): PP_ONE,
        (1,): -PP_T * (PP_Z + 1) * (PP_ZP + 1),
        (): PP_T ** 2 * ZZ * (PP_Z + 1) * (PP_ZP + 1) * Fraction(1, 2),
    })
    assert meixner_sf((2,)) == expected


def test_operator_examples():
    assert apply_fs(SymFunc.fs((1,))) == SymFunc("fs", {(1,): -1, (): PP_T * ZZ})
    assert apply_fs(SymFunc.one("fs")).is_zero()
    m1 = meixner_sf((1,))
    assert apply_fs(m1) == m1.scale(-1)


def test_eigenrelation_small():
    for nu in partitions_up_to(4):
        m = meixner_sf(nu)
        assert apply_fs(m) == m.scale(-sum(nu)), nu


def test_jump_rate_examples():
    add, remove, total = jump_rates(())
    assert add == {(1, 1): PP_T * ZZ}
    assert remove == {}
    assert total == PP_T * ZZ

    add, remove, total = jump_rates((1,))
    assert remove == {(1, 1): PP_ONE + PP_T}
    assert add[(2, 1)] == PP_T * (PP_Z - 1) * (PP_ZP - 1) * Fraction(1, 2)
    assert add[(1, 2)] == PP_T * (PP_Z + 1) * (PP_ZP + 1) * Fraction(1, 2)


def test_rate_sum_identity():
    for lam in partitions_up_to(5):
        add, remove, total = jump_rates(lam)
        acc = MPoly(3)
        for r in add.values():
            acc = acc + r
        for r in remove.values():
            acc = acc + r
        assert acc == total, lam


def test_apply_on_diagrams_examples():
    np_ = NP_SETS[0]
    neighbors = lambda lam: [lam] + \
        [tuple(x) for x in ()]  # noqa: E731 - silence linters on tiny helper
    # constants are annihilated
    table = {lam: Fraction(1) for lam in partitions_up_to(3)}
    for lam in partitions_up_to(2):
        assert apply_on_diagrams(table, lam, np_) == 0
    # f = |lam| at the empty diagram sees only the addition term
    table = {lam: Fraction(sum(lam)) for lam in partitions_up_to(2)}
    assert apply_on_diagrams(table, (), np_) == np_.t * np_.zzp
    # values of M_(1) reproduce the eigenrelation on the diagram side
    t, zz = np_.t, np_.zzp
    mvals = {lam: Fraction(sum(lam)) - t * zz for lam in partitions_up_to(4)}
    for lam in partitions_up_to(3):
        assert apply_on_diagrams(mvals, lam, np_) == -mvals[lam], lam


def test_apply_on_diagrams_realizes_eigenrelation():
    for np_ in NP_SETS:
        for nu in partitions_up_to(4):
            f = meixner_schur(nu)
            table = {lam: np_.param_eval(eval_on_diagram(f, lam))
                     for lam in partitions_up_to(6)}
            for lam in partitions_up_to(5):
                got = apply_on_diagrams(table, lam, np_)
                assert got == -sum(nu) * table[lam], (nu, lam, np_.series)


def test_apply_on_diagrams_missing_neighbor():
    with pytest.raises(ValueError):
        apply_on_diagrams({(): Fraction(0)}, (), NP_SETS[0])


def test_moment_examples():
    assert moment_me(SymFunc.one("fs")) == PP_ONE
    assert moment_me(SymFunc.fs((1,))) == PP_T * ZZ
    m1 = meixner_sf((1,))
    assert moment_me(m1 * m1) == PP_T * (PP_T + 1) * ZZ


def _moment_me_by_recursion(nu, memo={(): PP_ONE}):
    from lmsym.partition import content, corners, remove_box

    nu = tuple(nu)
    if nu not in memo:
        acc = MPoly(3)
        for box in corners(nu)[1]:
            c = content(box)
            acc = acc + PP_T * (PP_Z + c) * (PP_ZP + c) * _moment_me_by_recursion(remove_box(nu, box))
        memo[nu] = acc * Fraction(1, sum(nu))
    return memo[nu]


def test_moment_closed_form_matches_recursion():
    for nu in partitions_up_to(6):
        assert moment_fs(nu) == _moment_me_by_recursion(nu), nu


def test_orthogonality_small():
    shapes = list(partitions_up_to(3))
    for i, nu in enumerate(shapes):
        for mu in shapes[i:]:
            got = inner_product_me(meixner_sf(nu), meixner_sf(mu))
            if nu == mu:
                want = (PP_T * (PP_T + 1)) ** sum(nu) * content_product(boxes(nu))
                assert got == want, nu
            else:
                assert got.is_zero(), (nu, mu)


def test_normalized_value_examples():
    np_ = NP_SETS[0]
    for lam in partitions_up_to(4):
        assert meixner_value_normalized((), lam, np_) == 1
        expected = 1 - Fraction(sum(lam)) / (np_.t * np_.zzp)
        assert meixner_value_normalized((1,), lam, np_) == expected
    assert meixner_value_normalized((1,), (2,), np_) == \
        meixner_value_normalized((2,), (1,), np_)


def test_value_consistency_with_symbolic_family():
    # eval of M_nu on a diagram equals (-1)^{|nu|} C''(nu) * M'_nu(lam); the
    # sign is forced by M_nu's constant term (-t)^{|nu|} dim/|nu|! * contents
    # against M'_nu(empty) = 1
    for np_ in NP_SETS[:2]:
        for nu in partitions_up_to(4):
            cnorm = np_.param_eval(normalization_const(nu)) * (-1) ** sum(nu)
            for lam in partitions_up_to(4):
                direct = np_.param_eval(eval_on_diagram(meixner_schur(nu), lam))
                assert direct == cnorm * meixner_value_normalized(nu, lam, np_), (nu, lam)


def test_autoduality_small():
    shapes = list(partitions_up_to(4))
    for np_ in NP_SETS:
        for i, nu in enumerate(shapes):
            for lam in shapes[i:]:
                assert meixner_value_normalized(nu, lam, np_) == \
                    meixner_value_normalized(lam, nu, np_), (nu, lam)


def test_degenerate_parameters_raise():
    np_ = NumericParams.real_pair(2, 4, Fraction(1, 2))
    with pytest.raises(ZeroDivisionError):
        # mu = (1,1,1) contains a box of content -2 = -z
        meixner_value_normalized((1, 1, 1), (1, 1, 1), np_)


def test_laguerre_limit_examples():
    assert laguerre_limit(()) == SymFunc.one("s")
    assert laguerre_limit((1,)) == SymFunc("s", {(1,): 1, (): -ZZ})
    assert laguerre_limit((2,)) == laguerre.laguerre_sf((2,))


def test_laguerre_limit_small():
    for nu in partitions_up_to(4):
        assert laguerre_limit(nu) == laguerre.laguerre_sf(nu), nu


def test_operator_limit_examples():
    assert operator_limit_check(SymFunc.one("s"))
    assert operator_limit_check(SymFunc.schur((1,)))
    assert operator_limit_check(SymFunc.schur((2, 1)))


def test_operator_limit_small():
    for nu in partitions_up_to(4):
        assert operator_limit_check(SymFunc.schur(nu)), nu


def test_value_table_csv():
    from lmsym.meixner import value_table_csv

    table = {(): Fraction(1), (1,): Fraction(-1, 2), (2,): Fraction(3)}
    csv = value_table_csv(table)
    assert csv == 'partition,value\n"",1\n"1",-1/2\n"2",3\n'


def test_meixner_coefficient_t_degree_bound():
    # the S_mu coefficient of M_nu is a polynomial of t-degree <= |nu| - |mu|
    for nu in partitions_up_to(5):
        f = meixner_schur(nu)
        for mu, q in f.terms.items():
            assert q.deg(2) <= sum(nu) - sum(mu), (nu, mu)
