"""The algebra of symmetric functions over the parameter ring.

Elements are sparse linear combinations of partition-indexed basis elements
with parameter-polynomial coefficients. Four basis tags:

* "e": monomials in the elementary generators e_1, e_2, ... (free ring);
* "p": monomials in the power sums p_1, p_2, ... (free ring);
* "s": Schur functions;
* "fs": Frobenius-Schur functions (tables supplied by the meixner module).

The internal pivot is the e-basis: multiplication is free-ring convolution
there, the Schur functions enter through the Naegelsbach-Kostka determinant
S_nu = det[e_{nu'_i - i + j}], and truncation to N variables is a monomial
filter. The e-to-Schur direction uses iterated Pieri expansion (e_k * S_mu
is the sum of S_lam over vertical k-strips lam/mu); e and p are linked by
Newton's identities. All conversion tables are rational and memoized.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Mapping

from .coeffring import MPoly, PP_ONE, PP_ZERO, as_rat, param_poly_from_json, param_poly_to_json, pp_const
from .partition import (
    EMPTY,
    Partition,
    as_partition,
    conjugate,
    frobenius,
    sort_key,
)

BASES = ("e", "p", "s", "fs")


# ---------------------------------------------------------------------------
# Rational conversion tables between bases (memoized, keyed by partitions).


def _vertical_strips(mu: Partition, k: int) -> list[Partition]:
    """All lam containing mu with lam/mu a vertical strip of k boxes."""
    if k == 0:
        return [mu]
    out: list[Partition] = []

    def rec(i: int, rem: int, prev: int, prefix: list[int]):
        if i >= len(mu):
            if rem == 0:
                out.append(tuple(prefix))
            elif prev >= 1:
                out.append(tuple(prefix) + (1,) * rem)
            return
        base = mu[i]
        if base <= prev:
            prefix.append(base)
            rec(i + 1, rem, base, prefix)
            prefix.pop()
        if rem > 0 and base + 1 <= prev:
            prefix.append(base + 1)
            rec(i + 1, rem - 1, base + 1, prefix)
            prefix.pop()

    rec(0, k, k + max(mu, default=0) + 1, [])
    return out


@lru_cache(maxsize=None)
def e_mono_in_schur(mono: Partition) -> tuple:
    """Schur expansion of the e-monomial prod e_{mono_i} (integer coefficients)."""
    acc: dict[Partition, int] = {EMPTY: 1}
    for k in mono:
        new: dict[Partition, int] = {}
        for mu, c in acc.items():
            for lam in _vertical_strips(mu, k):
                new[lam] = new.get(lam, 0) + c
        acc = new
    return tuple(sorted(acc.items(), key=lambda kv: sort_key(kv[0])))


@lru_cache(maxsize=None)
def schur_in_e(lam: Partition) -> tuple:
    """e-expansion of S_lam via det[e_{lam'_i - i + j}] of order lam_1."""
    if not lam:
        return ((EMPTY, 1),)
    conj = conjugate(lam)
    m = lam[0]
    idx = [[conj[i] - (i + 1) + (j + 1) for j in range(m)] for i in range(m)]
    acc: dict[Partition, int] = {}

    def expand(row: int, avail: tuple, sign: int, parts: tuple):
        if row == m:
            key = tuple(sorted(parts, reverse=True))
            acc[key] = acc.get(key, 0) + sign
            if not acc[key]:
                del acc[key]
            return
        for pos, j in enumerate(avail):
            e_idx = idx[row][j]
            if e_idx < 0:
                continue
            newparts = parts + (e_idx,) if e_idx > 0 else parts
            expand(row + 1, avail[:pos] + avail[pos + 1:], sign if pos % 2 == 0 else -sign, newparts)

    expand(0, tuple(range(m)), 1, ())
    return tuple(sorted(acc.items(), key=lambda kv: sort_key(kv[0])))


def _free_mul(a: dict, b: dict) -> dict:
    """Product in a free ring whose monomials are partitions (merge parts)."""
    out: dict[Partition, Fraction] = {}
    for m1, c1 in a.items():
        for m2, c2 in b.items():
            key = tuple(sorted(m1 + m2, reverse=True))
            s = out.get(key, 0) + c1 * c2
            if s:
                out[key] = s
            else:
                del out[key]
    return out


@lru_cache(maxsize=None)
def p_in_e(n: int) -> tuple:
    """p_n as an e-polynomial, via Newton's identities."""
    acc: dict[Partition, int] = {(n,): (-1) ** (n - 1) * n}
    for i in range(1, n):
        sign = (-1) ** (i - 1)
        for mono, c in p_in_e(n - i):
            key = tuple(sorted(mono + (i,), reverse=True))
            s = acc.get(key, 0) + sign * c
            if s:
                acc[key] = s
            else:
                del acc[key]
    return tuple(sorted(acc.items(), key=lambda kv: sort_key(kv[0])))


@lru_cache(maxsize=None)
def e_in_p(n: int) -> tuple:
    """e_n as a p-polynomial, via Newton's identities."""
    if n == 0:
        return ((EMPTY, Fraction(1)),)
    acc: dict[Partition, Fraction] = {}
    for i in range(1, n + 1):
        sign = Fraction((-1) ** (i - 1), n)
        for mono, c in e_in_p(n - i):
            key = tuple(sorted(mono + (i,), reverse=True))
            s = acc.get(key, 0) + sign * c
            if s:
                acc[key] = s
            else:
                del acc[key]
    return tuple(sorted(acc.items(), key=lambda kv: sort_key(kv[0])))


@lru_cache(maxsize=None)
def e_mono_in_p(mono: Partition) -> tuple:
    acc: dict[Partition, Fraction] = {EMPTY: Fraction(1)}
    for k in mono:
        acc = _free_mul(acc, dict(e_in_p(k)))
    return tuple(sorted(acc.items(), key=lambda kv: sort_key(kv[0])))


@lru_cache(maxsize=None)
def p_mono_in_e(mono: Partition) -> tuple:
    acc: dict[Partition, Fraction] = {EMPTY: Fraction(1)}
    for k in mono:
        acc = _free_mul(acc, dict(p_in_e(k)))
    return tuple(sorted(acc.items(), key=lambda kv: sort_key(kv[0])))


@lru_cache(maxsize=None)
def schur_in_p(lam: Partition) -> tuple:
    acc: dict[Partition, Fraction] = {}
    for mono, c in schur_in_e(lam):
        for pm, r in e_mono_in_p(mono):
            s = acc.get(pm, 0) + c * r
            if s:
                acc[pm] = s
            else:
                del acc[pm]
    return tuple(sorted(acc.items(), key=lambda kv: sort_key(kv[0])))


# Frobenius-Schur bridge; the meixner module installs the expansion table.
_FS_EXPANSION: Callable[[Partition], tuple] | None = None


def register_fs_expansion(fn: Callable[[Partition], tuple]):
    """Install the FS -> Schur table: fn(kappa) = [(mu, Fraction)] with top term kappa."""
    global _FS_EXPANSION
    _FS_EXPANSION = fn


def _fs_expansion(kappa: Partition) -> tuple:
    if _FS_EXPANSION is None:
        raise RuntimeError("Frobenius-Schur tables unavailable; import lmsym.meixner first")
    return _FS_EXPANSION(kappa)


# ---------------------------------------------------------------------------


class SymFunc:
    """Basis-tagged element of the symmetric-function algebra.

    ``terms`` maps partitions to parameter-polynomial coefficients; for the
    free tags "e"/"p" a partition stands for the monomial in the generators
    indexed by its parts. Instances are immutable by convention.
    """

    __slots__ = ("basis", "terms")

    def __init__(self, basis: str, terms: Mapping[Partition, object] | None = None):
        if basis not in BASES:
            raise ValueError(f"unknown basis tag {basis!r}")
        clean: dict[Partition, MPoly] = {}
        if terms:
            for lam, c in terms.items():
                if not isinstance(c, MPoly):
                    c = pp_const(c)
                if c.is_zero():
                    continue
                clean[as_partition(lam)] = c
        object.__setattr__(self, "basis", basis)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, *a):
        raise AttributeError("SymFunc is immutable")

    # -- constructors ---------------------------------------------------

    @classmethod
    def one(cls, basis: str = "s") -> "SymFunc":
        return cls(basis, {EMPTY: PP_ONE})

    @classmethod
    def zero(cls, basis: str = "s") -> "SymFunc":
        return cls(basis)

    @classmethod
    def e(cls, n: int) -> "SymFunc":
        return cls("e", {(n,) if n else EMPTY: PP_ONE})

    @classmethod
    def p(cls, n: int) -> "SymFunc":
        return cls("p", {(n,) if n else EMPTY: PP_ONE})

    @classmethod
    def schur(cls, lam) -> "SymFunc":
        return cls("s", {as_partition(lam): PP_ONE})

    @classmethod
    def fs(cls, lam) -> "SymFunc":
        return cls("fs", {as_partition(lam): PP_ONE})

    # -- structure -------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        """Top degree: |index| for s/fs, weighted monomial degree for e/p."""
        if not self.terms:
            return -1
        return max(sum(lam) for lam in self.terms)

    def __eq__(self, other):
        if not isinstance(other, SymFunc):
            return NotImplemented
        if self.basis == other.basis:
            return self.terms == other.terms
        return self.in_basis(other.basis).terms == other.terms

    __hash__ = None

    def __repr__(self):
        if not self.terms:
            return f"SymFunc({self.basis!r}, 0)"
        bits = [f"({self.terms[lam]!r})*{self.basis}{list(lam)}"
                for lam in sorted(self.terms, key=sort_key)]
        return " + ".join(bits)

    # -- algebra ----------------------------------------------------------

    def _require_same(self, other: "SymFunc"):
        if self.basis != other.basis:
            raise ValueError(f"basis mismatch: {self.basis} vs {other.basis}; convert first")

    def __add__(self, other):
        if not isinstance(other, SymFunc):
            return NotImplemented
        self._require_same(other)
        out = dict(self.terms)
        for lam, c in other.terms.items():
            s = out.get(lam, PP_ZERO) + c
            if s.is_zero():
                out.pop(lam, None)
            else:
                out[lam] = s
        return SymFunc(self.basis, out)

    def __neg__(self):
        return SymFunc(self.basis, {lam: -c for lam, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, SymFunc):
            return NotImplemented
        return self + (-other)

    def scale(self, c) -> "SymFunc":
        if not isinstance(c, MPoly):
            c = pp_const(c)
        return SymFunc(self.basis, {lam: k * c for lam, k in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, MPoly)):
            return self.scale(other)
        if not isinstance(other, SymFunc):
            return NotImplemented
        fe = self.in_basis("e")
        ge = other.in_basis("e")
        out: dict[Partition, MPoly] = {}
        for m1, c1 in fe.terms.items():
            for m2, c2 in ge.terms.items():
                key = tuple(sorted(m1 + m2, reverse=True))
                s = out.get(key, PP_ZERO) + c1 * c2
                if s.is_zero():
                    out.pop(key, None)
                else:
                    out[key] = s
        return SymFunc("e", out).in_basis(self.basis)

    __rmul__ = __mul__

    # -- basis conversion --------------------------------------------------

    def _apply_table(self, table, target: str) -> "SymFunc":
        out: dict[Partition, MPoly] = {}
        for lam, coeff in self.terms.items():
            for idx, r in table(lam):
                s = out.get(idx, PP_ZERO) + coeff * r
                if s.is_zero():
                    out.pop(idx, None)
                else:
                    out[idx] = s
        return SymFunc(target, out)

    def in_basis(self, target: str) -> "SymFunc":
        if target not in BASES:
            raise ValueError(f"unknown basis tag {target!r}")
        src = self.basis
        if src == target:
            return self
        if src == "fs":
            return self._apply_table(_fs_expansion, "s").in_basis(target)
        if target == "fs":
            return _schur_to_fs(self.in_basis("s"))
        if src == "s" and target == "e":
            return self._apply_table(schur_in_e, "e")
        if src == "s" and target == "p":
            return self._apply_table(schur_in_p, "p")
        if src == "e" and target == "s":
            return self._apply_table(e_mono_in_schur, "s")
        if src == "e" and target == "p":
            return self._apply_table(e_mono_in_p, "p")
        if src == "p" and target == "e":
            return self._apply_table(p_mono_in_e, "e")
        if src == "p" and target == "s":
            return self._apply_table(p_mono_in_e, "e").in_basis("s")
        raise AssertionError("unreachable")


def _schur_to_fs(f: SymFunc) -> SymFunc:
    """Triangular back-substitution using FS_kappa = S_kappa + lower terms."""
    remaining = dict(f.terms)
    out: dict[Partition, MPoly] = {}
    while remaining:
        lam = max(remaining, key=sort_key)
        c = remaining.pop(lam)
        if c.is_zero():
            continue
        out[lam] = c
        for mu, r in _fs_expansion(lam):
            if mu == lam:
                continue
            s = remaining.get(mu, PP_ZERO) - c * r
            if s.is_zero():
                remaining.pop(mu, None)
            else:
                remaining[mu] = s
    return SymFunc("fs", out)


def convert(f: SymFunc, target: str) -> SymFunc:
    return f.in_basis(target)


def multiply(f: SymFunc, g: SymFunc) -> SymFunc:
    return f * g


# ---------------------------------------------------------------------------
# Evaluation on diagrams and on the Thoma cone.


@lru_cache(maxsize=None)
def power_sum_on_diagram(k: int, lam: Partition) -> Fraction:
    """p_k as a polynomial function of a diagram, via modified Frobenius
    coordinates: sum a_i^k - (-b_i)^k."""
    a, b = frobenius(lam)
    return sum((x ** k for x in a), Fraction(0)) - sum(((-x) ** k for x in b), Fraction(0))


def eval_on_diagram(f: SymFunc, lam) -> MPoly:
    """Value of f at a Young diagram, as a parameter polynomial."""
    lam = as_partition(lam)
    fp = f.in_basis("p")
    out = PP_ZERO
    for mono, coeff in fp.terms.items():
        val = Fraction(1)
        for k in mono:
            val *= power_sum_on_diagram(k, lam)
        if val:
            out = out + coeff * val
    return out


@dataclass(frozen=True)
class ThomaPoint:
    """Finitely supported point (alpha, beta, delta) of the Thoma cone."""

    alpha: tuple
    beta: tuple
    delta: Fraction

    def __post_init__(self):
        alpha = tuple(as_rat(x) for x in self.alpha)
        beta = tuple(as_rat(x) for x in self.beta)
        object.__setattr__(self, "alpha", alpha)
        object.__setattr__(self, "beta", beta)
        object.__setattr__(self, "delta", as_rat(self.delta))
        for seq, name in ((alpha, "alpha"), (beta, "beta")):
            if any(x < 0 for x in seq):
                raise ValueError(f"{name} must be nonnegative")
            if any(seq[i] < seq[i + 1] for i in range(len(seq) - 1)):
                raise ValueError(f"{name} must be weakly decreasing")
        if self.gamma < 0:
            raise ValueError("sum(alpha) + sum(beta) must not exceed delta")

    @property
    def gamma(self) -> Fraction:
        return self.delta - sum(self.alpha) - sum(self.beta)


def power_sum_on_thoma(k: int, omega: ThomaPoint) -> Fraction:
    if k == 1:
        return omega.delta
    tot = Fraction(0)
    for x in omega.alpha:
        tot += x ** k
    for x in omega.beta:
        tot -= (-x) ** k
    return tot


def eval_on_thoma(f: SymFunc, omega: ThomaPoint) -> MPoly:
    """Value of f at a Thoma-cone point, as a parameter polynomial.

    For rational-coefficient f the result is a constant; use const_value().
    """
    fp = f.in_basis("p")
    out = PP_ZERO
    for mono, coeff in fp.terms.items():
        val = Fraction(1)
        for k in mono:
            val *= power_sum_on_thoma(k, omega)
        if val:
            out = out + coeff * val
    return out


# ---------------------------------------------------------------------------
# Truncations to N variables and the sign involution.


def truncate(f: SymFunc, N: int, *, z_value=None, zp_value=None, t_value=None):
    """The N-th truncation: kill e_k for k > N, then read e_k as the
    elementary symmetric polynomial of x_1..x_N.

    Coefficients move to the ring Q[x_1..x_N, b, t]; occurrences of z and z'
    require explicit images (a rational or a polynomial of the target ring).
    """
    from . import nvariate

    if N < 1:
        raise ValueError("N must be positive")
    fe = f.in_basis("e")
    ring = N + 2
    images = _param_images(ring, z_value, zp_value, t_value)
    out = MPoly(ring)
    for mono, coeff in fe.terms.items():
        if mono and mono[0] > N:
            continue
        term = _map_coeff(coeff, images, ring)
        for k in mono:
            term = term * nvariate.elementary_poly(k, N)
        out = out + term
    return nvariate.NVarPoly(N, out)


def truncate_shifted(f: SymFunc, N: int, *, z_value=None, zp_value=None, t_value=None):
    """The modified truncation: on power sums,
    p_k |-> sum_i [(x_i - N + 1/2)^k - (-i + 1/2)^k].

    Realizes restriction of polynomial diagram functions to diagrams with at
    most N rows, in the coordinates x_i = lam_i + N - i.
    """
    from . import nvariate

    if N < 1:
        raise ValueError("N must be positive")
    fp = f.in_basis("p")
    ring = N + 2
    images = _param_images(ring, z_value, zp_value, t_value)
    out = MPoly(ring)
    for mono, coeff in fp.terms.items():
        term = _map_coeff(coeff, images, ring)
        for k in mono:
            term = term * nvariate.shifted_power_sum(k, N)
        out = out + term
    return nvariate.NVarPoly(N, out)


def _param_images(ring: int, z_value, zp_value, t_value) -> list:
    def lift(v, default):
        if v is None:
            return default
        if isinstance(v, MPoly):
            if v.nvars != ring:
                raise ValueError("substitution must live in the target ring")
            return v
        return MPoly.const(ring, as_rat(v))

    t_default = MPoly.gen(ring, ring - 1)
    return [lift(z_value, None), lift(zp_value, None), lift(t_value, t_default)]


def _map_coeff(coeff: MPoly, images: list, ring: int) -> MPoly:
    imgs = list(images)
    for slot, name in ((0, "z"), (1, "z'")):
        if imgs[slot] is None:
            if coeff.deg(slot) > 0:
                raise ValueError(f"coefficient involves {name}; supply {name}_value")
            imgs[slot] = MPoly(ring)
    return coeff.compose(imgs, ring)


def omega_involution(f: SymFunc) -> SymFunc:
    """The classical involutive automorphism: p_n -> (-1)^(n-1) p_n,
    equivalently S_nu -> S_nu' (diagram transposition)."""
    fp = f.in_basis("p")
    out = {}
    for mono, coeff in fp.terms.items():
        sign = (-1) ** (sum(mono) - len(mono))
        out[mono] = coeff * sign
    return SymFunc("p", out).in_basis(f.basis)


# ---------------------------------------------------------------------------
# Canonical JSON.


def symfunc_to_json(f: SymFunc) -> dict:
    terms = []
    for lam in sorted(f.terms, key=sort_key):
        terms.append({"index": list(lam), "coeff": param_poly_to_json(f.terms[lam])})
    return {"basis": f.basis.upper(), "terms": terms}


def symfunc_from_json(data) -> SymFunc:
    basis = data["basis"].lower()
    terms = {as_partition(item["index"]): param_poly_from_json(item["coeff"])
             for item in data["terms"]}
    return SymFunc(basis, terms)
