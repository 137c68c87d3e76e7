"""Frobenius-Schur and Meixner symmetric functions, with the jump-rate
realization on Young diagrams and the exact degeneration to the Laguerre
family.

The Frobenius-Schur functions FS_nu are the inhomogeneous deformations of
the Schur functions whose diagram values have the closed form

    FS_mu(lam) = |lam|!/(|lam|-|mu|)! * dim(lam/mu)/dim(lam)   if mu <= lam,
                 0 otherwise.

They are reconstructed here by interpolation: FS_nu = S_nu + lower terms is
pinned down by its (vanishing) values on all diagrams smaller than |nu|, a
square rational linear system; the values at sizes |nu| and |nu|+1 are kept
as held-out verification in the tests.

All xi-dependence is carried polynomially through t = xi/(1-xi), so the
xi -> 1 degeneration is an exact leading-coefficient extraction in t.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

from . import laguerre as _laguerre
from . import symcore
from .coeffring import (
    MPoly,
    NumericParams,
    PP_ONE,
    PP_T,
    PP_Z,
    PP_ZERO,
    PP_ZP,
    PP_ZZP,
    leading_in_t,
    pp_const,
)
from .partition import (
    Partition,
    add_box,
    as_partition,
    boxes,
    content,
    content_product,
    corners,
    dim_skew,
    dim_syt,
    intersect,
    partitions_up_to,
    remove_box,
    skew_boxes,
    subpartitions,
)
from .symcore import SymFunc, eval_on_diagram


def fs_value(mu, lam) -> Fraction:
    """Closed-form value of FS_mu at the diagram lam."""
    mu = as_partition(mu)
    lam = as_partition(lam)
    d = dim_skew(lam, mu)
    if d == 0:
        return Fraction(0)
    n, k = sum(lam), sum(mu)
    return Fraction(math.factorial(n) * d, math.factorial(n - k) * dim_syt(lam))


@lru_cache(maxsize=None)
def _schur_value(kappa: Partition, lam: Partition) -> Fraction:
    return eval_on_diagram(SymFunc.schur(kappa), lam).const_value()


def _solve_rational(matrix: list[list[Fraction]], rhs: list[Fraction]) -> list[Fraction]:
    n = len(matrix)
    a = [row[:] + [rhs[i]] for i, row in enumerate(matrix)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col]), None)
        if piv is None:
            raise ArithmeticError("singular interpolation system")
        a[col], a[piv] = a[piv], a[col]
        inv = 1 / a[col][col]
        a[col] = [x * inv for x in a[col]]
        for r in range(n):
            if r != col and a[r][col]:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return [a[i][n] for i in range(n)]


@lru_cache(maxsize=None)
def fs_sf(nu) -> SymFunc:
    """FS_nu as a Schur-basis element with rational coefficients.

    Triangularity plus vanishing on every diagram of size < |nu| is a square
    linear system over the Schur functions of smaller size.
    """
    nu = as_partition(nu)
    n = sum(nu)
    if n == 0:
        return SymFunc.one("s")
    kappas = list(partitions_up_to(n - 1))
    matrix = [[_schur_value(kappa, lam) for kappa in kappas] for lam in kappas]
    rhs = [-_schur_value(nu, lam) for lam in kappas]
    coeffs = _solve_rational(matrix, rhs)
    terms: dict[Partition, Fraction] = {nu: Fraction(1)}
    for kappa, c in zip(kappas, coeffs):
        if c:
            terms[kappa] = c
    return SymFunc("s", terms)


@lru_cache(maxsize=None)
def _fs_expansion_table(kappa: Partition) -> tuple:
    f = fs_sf(kappa)
    return tuple(sorted(((mu, c.const_value()) for mu, c in f.terms.items()),
                        key=lambda kv: kv[0]))


symcore.register_fs_expansion(_fs_expansion_table)


def fs_to_schur(f: SymFunc) -> SymFunc:
    return f.in_basis("s")


def schur_to_fs(f: SymFunc) -> SymFunc:
    return f.in_basis("fs")


# ---------------------------------------------------------------------------
# The Meixner family.


@lru_cache(maxsize=None)
def meixner_sf(nu) -> SymFunc:
    """M_nu expanded over the Frobenius-Schur functions:

    M_nu = sum_{mu <= nu} (-t)^{|nu/mu|} dim(nu/mu)/|nu/mu|!
           * prod_{boxes of nu/mu} (z+c)(z'+c) * FS_mu.
    """
    nu = as_partition(nu)
    n = sum(nu)
    terms = {}
    for mu in subpartitions(nu):
        k = n - sum(mu)
        d = dim_skew(nu, mu)
        if d == 0:
            continue
        coeff = content_product(skew_boxes(nu, mu)) * ((-PP_T) ** k) * Fraction(d, math.factorial(k))
        terms[mu] = coeff
    return SymFunc("fs", terms)


@lru_cache(maxsize=None)
def meixner_schur(nu) -> SymFunc:
    """M_nu converted to the Schur basis (coefficients polynomial in z, z', t)."""
    return meixner_sf(nu).in_basis("s")


def apply_fs(f: SymFunc) -> SymFunc:
    """The Meixner operator in the FS basis:
    FS_nu -> -|nu| FS_nu + t sum over removable boxes (z+c)(z'+c) FS_{nu minus box}."""
    ff = f.in_basis("fs")
    out: dict[Partition, MPoly] = {}

    def add(lam, c):
        s = out.get(lam, PP_ZERO) + c
        if s.is_zero():
            out.pop(lam, None)
        else:
            out[lam] = s

    for nu, coeff in ff.terms.items():
        n = sum(nu)
        if n:
            add(nu, coeff * (-n))
        for box in corners(nu)[1]:
            c = content(box)
            add(remove_box(nu, box), coeff * (PP_T * (PP_Z + c) * (PP_ZP + c)))
    return SymFunc("fs", out)


def jump_rates(lam):
    """Symbolic jump rates of the diagram process at lam.

    add[box]    = t (z+c)(z'+c) dim(lam+box) / ((|lam|+1) dim lam)
    remove[box] = (1+t) |lam| dim(lam-box) / dim lam
    total       = (1+2t)|lam| + t z z'

    The rates sum to total: constants are annihilated by the generator.
    """
    lam = as_partition(lam)
    n = sum(lam)
    dlam = dim_syt(lam)
    addable, removable = corners(lam)
    add = {}
    for box in addable:
        c = content(box)
        ratio = Fraction(dim_syt(add_box(lam, box)), (n + 1) * dlam)
        add[box] = PP_T * (PP_Z + c) * (PP_ZP + c) * ratio
    remove = {}
    for box in removable:
        ratio = Fraction(n * dim_syt(remove_box(lam, box)), dlam)
        remove[box] = (PP_ONE + PP_T) * ratio
    total = pp_const(n) + PP_T * (2 * n) + PP_T * PP_ZZP
    return add, remove, total


def apply_on_diagrams(values, lam, np_: NumericParams):
    """Difference-operator action on a value table over diagrams:
    sum A(lam,box)[f(lam+box)-f(lam)] + sum B(lam,box)[f(lam-box)-f(lam)],
    evaluated at numeric parameters. Rates that vanish at np_ skip the lookup."""
    lam = as_partition(lam)
    n = sum(lam)
    dlam = dim_syt(lam)
    t = np_.t
    flam = _value(values, lam)
    total = 0
    addable, removable = corners(lam)
    for box in addable:
        rate = t * np_.content_factor(content(box)) \
            * Fraction(dim_syt(add_box(lam, box)), (n + 1) * dlam)
        if rate:
            total += rate * (_value(values, add_box(lam, box)) - flam)
    for box in removable:
        rate = (1 + t) * Fraction(n * dim_syt(remove_box(lam, box)), dlam)
        if rate:
            total += rate * (_value(values, remove_box(lam, box)) - flam)
    return total


def _value(values, lam):
    try:
        return values[lam]
    except KeyError:
        raise ValueError(f"value table is missing the needed neighbor {lam}") from None


def value_table_csv(values) -> str:
    """CSV export of a diagram value table: columns partition, value."""
    from .partition import sort_key, to_string

    lines = ["partition,value"]
    for lam in sorted(values, key=sort_key):
        lines.append(f'"{to_string(lam)}",{values[lam]}')
    return "\n".join(lines) + "\n"


@lru_cache(maxsize=None)
def moment_fs(nu) -> MPoly:
    """The Meixner moment functional on FS_nu:
    t^{|nu|} * content product * dim(nu)/|nu|!."""
    nu = as_partition(nu)
    n = sum(nu)
    return content_product(boxes(nu)) * (PP_T ** n) * Fraction(dim_syt(nu), math.factorial(n))


def moment_me(f: SymFunc) -> MPoly:
    """Normalized moment functional killing the Meixner operator range."""
    ff = f.in_basis("fs")
    out = PP_ZERO
    for nu, coeff in ff.terms.items():
        out = out + coeff * moment_fs(nu)
    return out


def inner_product_me(f: SymFunc, g: SymFunc) -> MPoly:
    return moment_me(f * g)


@lru_cache(maxsize=None)
def normalization_const(nu) -> MPoly:
    """The autoduality normalization C'' = t^{|nu|} (dim nu/|nu|!) * content
    product.

    The family values relate to the autodual values by
    M_nu(lam) = (-1)^{|nu|} C''(nu) M'_nu(lam): with M'_nu normalized so that
    M'_nu(empty diagram) = 1, the sign is forced by the expansion of M_nu,
    whose constant term is (-t)^{|nu|} (dim nu/|nu|!) * content product.
    Squared normalizations (as in the spectral transition function) are
    sign-free.
    """
    nu = as_partition(nu)
    n = sum(nu)
    return (PP_T ** n) * content_product(boxes(nu)) * Fraction(dim_syt(nu), math.factorial(n))


def meixner_value_normalized(nu, lam, np_: NumericParams) -> Fraction:
    """The autodual normalization M'_nu(lam), exact at numeric parameters:

    sum over mu inside both nu and lam of
    (-1)^{|mu|} t^{-|mu|} |nu|!|lam|! / (|nu|-|mu|)!(|lam|-|mu|)!
    * dim(nu/mu) dim(lam/mu) / (dim nu dim lam)
    * prod over boxes of mu of 1/((z+c)(z'+c)).

    Symmetric in nu <-> lam by inspection.
    """
    return _meixner_value_cached(as_partition(nu), as_partition(lam), np_)


@lru_cache(maxsize=None)
def _meixner_value_cached(nu: Partition, lam: Partition, np_: NumericParams) -> Fraction:
    t = np_.t
    nn, nl = sum(nu), sum(lam)
    dn, dl = dim_syt(nu), dim_syt(lam)
    total = Fraction(0)
    for mu in subpartitions(intersect(nu, lam)):
        dnm = dim_skew(nu, mu)
        dlm = dim_skew(lam, mu)
        if dnm == 0 or dlm == 0:
            continue
        k = sum(mu)
        cf = Fraction(1)
        for box in boxes(mu):
            factor = np_.content_factor(content(box))
            if factor == 0:
                raise ZeroDivisionError(
                    f"degenerate parameters: content factor vanishes on {box}")
            cf *= factor
        term = Fraction((-1) ** k) / (t ** k) \
            * Fraction(math.factorial(nn), math.factorial(nn - k)) \
            * Fraction(math.factorial(nl), math.factorial(nl - k)) \
            * Fraction(dnm * dlm, dn * dl) / cf
        total += term
    return total


# ---------------------------------------------------------------------------
# Exact xi -> 1 degeneration.


def laguerre_limit(nu) -> SymFunc:
    """Exact limit of (1-xi)^{|nu|} (1-xi)^{-G} M_nu as xi -> 1.

    In the Schur expansion the S_kappa coefficient gets rescaled by
    (1+t)^{|kappa|-|nu|}, so the limit is the coefficient of t^{|nu|-|kappa|};
    a higher t-degree would make the limit diverge and raises.
    """
    nu = as_partition(nu)
    n = sum(nu)
    ms = meixner_schur(nu)
    out = {}
    for kappa, q in ms.terms.items():
        lim = leading_in_t(q, n - sum(kappa))
        if not lim.is_zero():
            out[kappa] = lim
    return SymFunc("s", out)


def operator_limit_apply(f: SymFunc) -> SymFunc:
    """Exact xi -> 1 limit of the conjugated Meixner operator
    (1-xi)^{-G} o (Meixner operator) o (1-xi)^G applied to f.

    f must be Schur-tagged with parameter-free (rational) coefficients; the
    limit is taken per homogeneous component by leading-coefficient
    extraction in t.
    """
    fs = f.in_basis("s")
    out: dict[Partition, MPoly] = {}
    for nu, c in fs.terms.items():
        if c.deg(2) > 0:
            raise ValueError("coefficients must be free of t for the operator limit")
        n = sum(nu)
        g = apply_fs(SymFunc.schur(nu).in_basis("fs")).in_basis("s")
        for mu, q in g.terms.items():
            lim = leading_in_t(q, n - sum(mu))
            if lim.is_zero():
                continue
            s = out.get(mu, PP_ZERO) + c * lim
            if s.is_zero():
                out.pop(mu, None)
            else:
                out[mu] = s
    return SymFunc("s", out)


def operator_limit_check(f: SymFunc) -> bool:
    """The conjugated-operator limit agrees with the Laguerre operator on f."""
    return operator_limit_apply(f) == _laguerre.apply_schur(f)
