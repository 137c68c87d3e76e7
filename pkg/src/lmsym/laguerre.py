"""The Laguerre symmetric functions, their generating operator, and the
moment functional.

The family {L_nu} is the unique inhomogeneous basis with top term S_nu whose
members are eigenfunctions of the second-order operator below with eigenvalue
-|nu|. The operator has two realizations, kept deliberately independent so
they can be checked against each other:

* on Schur functions:  L S_nu = -|nu| S_nu
                       + sum over removable boxes (z+c)(z'+c) S_{nu minus box};
* as a formal PDE in the elementary generators, with coefficients
  A_mn = sum_{k < min(m,n)} (m+n-1-2k) e_{m+n-1-k} e_k  and
  B_n  = -n e_n + (z-n+1)(z'-n+1) e_{n-1}.

The moment functional is normalized by 1 -> 1 and kills the operator range;
on Schur functions it takes the closed form
psi(S_nu) = prod_boxes (z+c)(z'+c) * dim(nu)/|nu|!,
the unique form consistent with the defining recursion (the tests re-derive
it from the recursion).
"""

from __future__ import annotations

import math
from collections import Counter
from fractions import Fraction
from functools import lru_cache

from .coeffring import MPoly, PP_Z, PP_ZERO, PP_ZP, PP_ZZP
from .partition import (
    Partition,
    as_partition,
    boxes,
    content,
    content_product,
    corners,
    dim_skew,
    dim_syt,
    remove_box,
    skew_boxes,
    subpartitions,
)
from .symcore import SymFunc


@lru_cache(maxsize=None)
def laguerre_sf(nu) -> SymFunc:
    """The Laguerre symmetric function, Schur-expanded:

    L_nu = sum_{mu <= nu} (-1)^{|nu/mu|} dim(nu/mu)/|nu/mu|!
           * prod_{boxes of nu/mu} (z+c)(z'+c) * S_mu.
    """
    nu = as_partition(nu)
    n = sum(nu)
    terms = {}
    for mu in subpartitions(nu):
        k = n - sum(mu)
        d = dim_skew(nu, mu)
        if d == 0:
            continue
        coeff = content_product(skew_boxes(nu, mu)) * Fraction((-1) ** k * d, math.factorial(k))
        terms[mu] = coeff
    return SymFunc("s", terms)


def apply_schur(f: SymFunc) -> SymFunc:
    """Operator action through the Schur-basis rule."""
    fs = f.in_basis("s")
    out: dict[Partition, MPoly] = {}

    def add(lam, c):
        s = out.get(lam, PP_ZERO) + c
        if s.is_zero():
            out.pop(lam, None)
        else:
            out[lam] = s

    for nu, coeff in fs.terms.items():
        n = sum(nu)
        if n:
            add(nu, coeff * (-n))
        for box in corners(nu)[1]:
            c = content(box)
            add(remove_box(nu, box), coeff * ((PP_Z + c) * (PP_ZP + c)))
    return SymFunc("s", out)


def _strip_part(mono: Partition, part: int) -> Partition:
    out = list(mono)
    out.remove(part)
    return tuple(out)


def _with_part(mono: Partition, part: int) -> Partition:
    if part == 0:
        return mono
    return tuple(sorted(mono + (part,), reverse=True))


def apply_e(f: SymFunc) -> SymFunc:
    """Operator action as the second-order PDE in the e-generators."""
    fe = f.in_basis("e")
    out: dict[Partition, MPoly] = {}

    def add(lam, c):
        s = out.get(lam, PP_ZERO) + c
        if s.is_zero():
            out.pop(lam, None)
        else:
            out[lam] = s

    for mono, coeff in fe.terms.items():
        counts = Counter(mono)
        for n, kn in counts.items():
            # B_n d/de_n
            add(mono, coeff * (-n * kn))
            pref = (PP_Z - (n - 1)) * (PP_ZP - (n - 1)) * kn
            add(_with_part(_strip_part(mono, n), n - 1), coeff * pref)
        for m in counts:
            for n in counts:
                if m == n:
                    mult = counts[n] * (counts[n] - 1)
                    if not mult:
                        continue
                    base = _strip_part(_strip_part(mono, n), n)
                else:
                    mult = counts[m] * counts[n]
                    base = _strip_part(_strip_part(mono, m), n)
                for j in range(min(m, n)):
                    w = (m + n - 1 - 2 * j) * mult
                    add(_with_part(_with_part(base, m + n - 1 - j), j), coeff * w)
    return SymFunc("e", out)


@lru_cache(maxsize=None)
def moment_schur(nu) -> MPoly:
    """psi on a Schur function: content product times dim(nu)/|nu|!."""
    nu = as_partition(nu)
    n = sum(nu)
    return content_product(boxes(nu)) * Fraction(dim_syt(nu), math.factorial(n))


def moment(f: SymFunc) -> MPoly:
    """The moment functional: psi(1) = 1 and psi vanishes on the operator range."""
    fs = f.in_basis("s")
    out = PP_ZERO
    for nu, coeff in fs.terms.items():
        out = out + coeff * moment_schur(nu)
    return out


def inner_product(f: SymFunc, g: SymFunc) -> MPoly:
    """(f, g) = psi(f g); symmetric bilinear."""
    return moment(f * g)


# ---------------------------------------------------------------------------
# Separation of variables: r = e_1 together with the degree-zero coordinates
# eo_n = e_n / e_1^n splits the operator into a radial one-dimensional
# Laguerre part with parameter c = z z' plus (1/r) times an angular operator.
# Elements are stored as {(r-exponent, eo-monomial of parts >= 2): coeff}.


def _to_separated(f: SymFunc) -> dict:
    fe = f.in_basis("e")
    out: dict[tuple, MPoly] = {}
    for mono, coeff in fe.terms.items():
        key = (sum(mono), tuple(p for p in mono if p >= 2))
        s = out.get(key, PP_ZERO) + coeff
        if s.is_zero():
            out.pop(key, None)
        else:
            out[key] = s
    return out


def _from_separated(d: dict) -> SymFunc:
    terms: dict[Partition, MPoly] = {}
    for (k, mono), coeff in d.items():
        ones = k - sum(mono)
        if ones < 0:
            raise ValueError("element leaves the polynomial algebra (negative power of e_1)")
        key = tuple(sorted(mono + (1,) * ones, reverse=True))
        s = terms.get(key, PP_ZERO) + coeff
        if s.is_zero():
            terms.pop(key, None)
        else:
            terms[key] = s
    return SymFunc("e", terms)


def _sep_add(out: dict, key: tuple, c: MPoly):
    s = out.get(key, PP_ZERO) + c
    if s.is_zero():
        out.pop(key, None)
    else:
        out[key] = s


def separation_apply(f: SymFunc) -> SymFunc:
    """Apply the separated form: radial part r d^2/dr^2 + (c - r) d/dr plus
    (1/r) times the angular operator with tables
    Ao_mn = -mn eo_m eo_n + sum_{k<min(m,n)} (m+n-1-2k) eo_{m+n-1-k} eo_k,
    Bo_n  = -n(n-1+c) eo_n + (z-n+1)(z'-n+1) eo_{n-1}   (eo_0 = eo_1 = 1).
    """
    c_param = PP_ZZP
    sep = _to_separated(f)
    out: dict[tuple, MPoly] = {}
    for (k, mono), coeff in sep.items():
        # radial part on r^k
        if k:
            _sep_add(out, (k - 1, mono), coeff * (k * (k - 1)) + coeff * c_param * k)
            _sep_add(out, (k, mono), coeff * (-k))
        # angular part, with the global 1/r shift
        counts = Counter(mono)
        for n, kn in counts.items():
            base = _strip_part(mono, n)
            pref = -(c_param + (n - 1)) * (n * kn)
            _sep_add(out, (k - 1, mono), coeff * pref)
            pref2 = (PP_Z - (n - 1)) * (PP_ZP - (n - 1)) * kn
            _sep_add(out, (k - 1, _with_part(base, n - 1) if n - 1 >= 2 else base), coeff * pref2)
        for m in counts:
            for n in counts:
                if m == n:
                    mult = counts[n] * (counts[n] - 1)
                    if not mult:
                        continue
                    base = _strip_part(_strip_part(mono, n), n)
                else:
                    mult = counts[m] * counts[n]
                    base = _strip_part(_strip_part(mono, m), n)
                _sep_add(out, (k - 1, tuple(sorted(base + (m, n), reverse=True))),
                         coeff * (-m * n * mult))
                for j in range(min(m, n)):
                    w = (m + n - 1 - 2 * j) * mult
                    newmono = _with_part(base, m + n - 1 - j)
                    if j >= 2:
                        newmono = _with_part(newmono, j)
                    _sep_add(out, (k - 1, newmono), coeff * w)
    return _from_separated(out)


def separation_diff(f: SymFunc) -> SymFunc:
    """Difference between the separated realization and the e-PDE (zero iff
    the separation identity holds on f)."""
    return separation_apply(f) - apply_e(f)


def separation_check(f: SymFunc) -> bool:
    return separation_diff(f).is_zero()
