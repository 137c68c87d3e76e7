"""Exact coefficient rings: sparse polynomials over arbitrary-precision rationals.

Everything symbolic in this package lives over one of two small rings, both
realized by :class:`MPoly` with positional variables:

* the parameter ring Q[z, z', t] carried by the symmetric-function families,
  with t standing for xi/(1-xi) so that all xi-dependence stays polynomial;
* auxiliary rings such as Q[b, t] or Q[x_1..x_N, b, t] used by the N-variate
  polynomials.

:class:`NumericParams` holds an evaluated parameter point (z, z', xi) with its
series classification and evaluates parameter polynomials exactly (conjugate
pairs are handled in Gaussian-rational arithmetic, so symmetric expressions
come out as exact rationals).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence, Union

Rat = Fraction
Scalar = Union[int, Fraction]

_ZERO = Fraction(0)
_ONE = Fraction(1)


def as_rat(x) -> Fraction:
    """Coerce ints, 'p/q' strings, and Fractions to an exact rational."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"cannot interpret {x!r} as an exact rational")


def _grlex(exps):
    return (sum(exps), exps)


class MPoly:
    """Sparse polynomial in ``nvars`` positional variables over Fraction.

    ``terms`` maps exponent tuples to nonzero coefficients; the zero
    polynomial is the empty map. Instances are immutable by convention and
    safe to share between threads.
    """

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Mapping[tuple, Scalar] | None = None):
        object.__setattr__(self, "nvars", nvars)
        clean: dict[tuple, Fraction] = {}
        if terms:
            for exps, c in terms.items():
                if not isinstance(c, Fraction):
                    c = as_rat(c)
                if not c:
                    continue
                if len(exps) != nvars:
                    raise ValueError(f"exponent tuple {exps} has wrong arity (want {nvars})")
                clean[tuple(exps)] = c
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, *a):
        raise AttributeError("MPoly is immutable")

    # -- constructors -------------------------------------------------

    @classmethod
    def const(cls, nvars: int, c) -> "MPoly":
        c = as_rat(c)
        return cls(nvars, {(0,) * nvars: c} if c else {})

    @classmethod
    def gen(cls, nvars: int, i: int) -> "MPoly":
        exps = [0] * nvars
        exps[i] = 1
        return cls(nvars, {tuple(exps): _ONE})

    @classmethod
    def monomial(cls, nvars: int, exps, c=1) -> "MPoly":
        return cls(nvars, {tuple(exps): as_rat(c)})

    # -- ring operations ----------------------------------------------

    def _coerce(self, other) -> "MPoly | None":
        if isinstance(other, MPoly):
            if other.nvars != self.nvars:
                raise ValueError("mixed polynomial rings")
            return other
        if isinstance(other, (int, Fraction)):
            return MPoly.const(self.nvars, other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        out = dict(self.terms)
        for e, c in o.terms.items():
            s = out.get(e, _ZERO) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        r = MPoly.__new__(MPoly)
        object.__setattr__(r, "nvars", self.nvars)
        object.__setattr__(r, "terms", out)
        return r

    __radd__ = __add__

    def __neg__(self):
        r = MPoly.__new__(MPoly)
        object.__setattr__(r, "nvars", self.nvars)
        object.__setattr__(r, "terms", {e: -c for e, c in self.terms.items()})
        return r

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = as_rat(other)
            if not c:
                return MPoly(self.nvars)
            r = MPoly.__new__(MPoly)
            object.__setattr__(r, "nvars", self.nvars)
            object.__setattr__(r, "terms", {e: k * c for e, k in self.terms.items()})
            return r
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        out: dict[tuple, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in o.terms.items():
                key = tuple(a + b for a, b in zip(e1, e2))
                s = out.get(key, _ZERO) + c1 * c2
                if s:
                    out[key] = s
                else:
                    del out[key]
        r = MPoly.__new__(MPoly)
        object.__setattr__(r, "nvars", self.nvars)
        object.__setattr__(r, "terms", out)
        return r

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("nonnegative integer powers only")
        result = MPoly.const(self.nvars, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = MPoly.const(self.nvars, other)
        if not isinstance(other, MPoly):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    __hash__ = None  # mutable-dict backed; never used as a key

    def is_zero(self) -> bool:
        return not self.terms

    def const_value(self) -> Fraction:
        """The value of a constant polynomial (error if non-constant)."""
        if not self.terms:
            return _ZERO
        zero = (0,) * self.nvars
        if len(self.terms) == 1 and zero in self.terms:
            return self.terms[zero]
        raise ValueError(f"polynomial is not constant: {self!r}")

    def deg(self, i: int) -> int:
        """Degree in variable i (-1 for the zero polynomial)."""
        if not self.terms:
            return -1
        return max(e[i] for e in self.terms)

    def total_degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    # -- calculus and maps --------------------------------------------

    def derivative(self, i: int) -> "MPoly":
        out = {}
        for e, c in self.terms.items():
            k = e[i]
            if k:
                key = e[:i] + (k - 1,) + e[i + 1:]
                out[key] = out.get(key, _ZERO) + c * k
        return MPoly(self.nvars, out)

    def eval(self, values: Sequence) -> Fraction:
        """Exact evaluation at a full point (Fractions or ints)."""
        vals = [as_rat(v) for v in values]
        if len(vals) != self.nvars:
            raise ValueError("wrong number of values")
        total = _ZERO
        powcache: list[dict[int, Fraction]] = [{0: _ONE} for _ in range(self.nvars)]
        for e, c in self.terms.items():
            prod = c
            for i, k in enumerate(e):
                if k:
                    cache = powcache[i]
                    if k not in cache:
                        cache[k] = vals[i] ** k
                    prod = prod * cache[k]
            total += prod
        return total

    def compose(self, images: Sequence, target_nvars: int) -> "MPoly":
        """Ring map sending variable i to images[i] (MPoly or scalar)."""
        imgs = []
        for im in images:
            if isinstance(im, MPoly):
                if im.nvars != target_nvars:
                    raise ValueError("image in wrong ring")
                imgs.append(im)
            else:
                imgs.append(MPoly.const(target_nvars, im))
        out = MPoly(target_nvars)
        powcache: list[dict[int, MPoly]] = [{} for _ in range(self.nvars)]
        for e, c in self.terms.items():
            term = MPoly.const(target_nvars, c)
            for i, k in enumerate(e):
                if k:
                    cache = powcache[i]
                    if k not in cache:
                        cache[k] = imgs[i] ** k
                    term = term * cache[k]
            out = out + term
        return out

    def subs_var(self, i: int, image) -> "MPoly":
        """Substitute one variable by an element of the same ring."""
        images = [MPoly.gen(self.nvars, j) for j in range(self.nvars)]
        images[i] = image if isinstance(image, MPoly) else MPoly.const(self.nvars, image)
        return self.compose(images, self.nvars)

    def exact_div(self, g: "MPoly") -> "MPoly":
        """Exact quotient self/g; raises ArithmeticError if g does not divide."""
        if not isinstance(g, MPoly) or g.nvars != self.nvars:
            raise ValueError("divisor must live in the same ring")
        if g.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        glt = max(g.terms, key=_grlex)
        gc = g.terms[glt]
        rem = dict(self.terms)
        quo: dict[tuple, Fraction] = {}
        while rem:
            lt = max(rem, key=_grlex)
            diff = tuple(a - b for a, b in zip(lt, glt))
            if any(d < 0 for d in diff):
                raise ArithmeticError("polynomial division is not exact")
            qc = rem[lt] / gc
            quo[diff] = qc
            for ge, gcoef in g.terms.items():
                key = tuple(d + e for d, e in zip(diff, ge))
                s = rem.get(key, _ZERO) - qc * gcoef
                if s:
                    rem[key] = s
                else:
                    rem.pop(key, None)
        return MPoly(self.nvars, quo)

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for e in sorted(self.terms, key=_grlex):
            c = self.terms[e]
            mono = "*".join(f"v{i}^{k}" for i, k in enumerate(e) if k)
            bits.append(f"{c}" + (f"*{mono}" if mono else ""))
        return " + ".join(bits)


# ---------------------------------------------------------------------------
# The parameter ring Q[z, z', t] with t = xi/(1-xi).

PARAM_NVARS = 3
ParamPoly = MPoly  # arity-3 instances by convention: (z, z', t)

PP_ZERO = MPoly(3)
PP_ONE = MPoly.const(3, 1)
PP_Z = MPoly.gen(3, 0)
PP_ZP = MPoly.gen(3, 1)
PP_T = MPoly.gen(3, 2)
PP_ZZP = PP_Z * PP_ZP


def pp_const(c) -> MPoly:
    return MPoly.const(3, c)


def deg_t(p: MPoly) -> int:
    return p.deg(2)


def leading_in_t(p: MPoly, d: int) -> MPoly:
    """Coefficient of t^d as a parameter polynomial (t-degree 0).

    This realizes the exact xi->1 limit of (1-xi)^d * p: rescaling by
    (1-xi)^d = (1+t)^{-d} keeps exactly the coefficient of t^d in the limit.
    A t-degree above d means the rescaled expression diverges, which always
    signals a wrong rescaling, so it is an error.
    """
    if d < 0:
        raise ValueError("t-power must be nonnegative")
    if deg_t(p) > d:
        raise ValueError(f"t-degree {deg_t(p)} exceeds {d}; limit would diverge")
    out = {}
    for (dz, dzp, dt), c in p.terms.items():
        if dt == d:
            out[(dz, dzp, 0)] = c
    return MPoly(3, out)


def param_poly_to_json(p: MPoly) -> list[dict]:
    """Canonical JSON encoding, terms sorted by total degree then lex."""
    if p.nvars != 3:
        raise ValueError("parameter polynomials have three variables")
    out = []
    for e in sorted(p.terms, key=_grlex):
        c = p.terms[e]
        out.append({"dz": e[0], "dzp": e[1], "dt": e[2],
                    "num": str(c.numerator), "den": str(c.denominator)})
    return out


def param_poly_from_json(data) -> MPoly:
    if isinstance(data, str):
        data = json.loads(data)
    terms = {}
    for item in data:
        key = (int(item["dz"]), int(item["dzp"]), int(item["dt"]))
        terms[key] = Fraction(int(item["num"]), int(item["den"]))
    return MPoly(3, terms)


# ---------------------------------------------------------------------------
# Numeric parameter points.

PRINCIPAL = "principal"
COMPLEMENTARY = "complementary"
DEGENERATE = "degenerate"
INADMISSIBLE = "inadmissible"


def classify_pair(kind: str, a: Fraction, b: Fraction) -> str:
    """Series of a parameter pair.

    kind "conj": z = a + b*i, z' = conj(z); kind "real": (z, z') = (a, b).
    Principal: conjugate pair off the real axis. Complementary: a real pair
    inside one open integer gap (m, m+1). Degenerate: (z, z') = +-(N, N+b-1)
    up to swap, N a positive integer, b > 0. Anything else makes some content
    product negative or zero-divisorial and is inadmissible.
    """
    if kind == "conj":
        if b != 0:
            return PRINCIPAL
        a, b = a, a  # a real point doubles as the real pair (a, a)
        kind = "real"
    if kind != "real":
        raise ValueError(f"unknown parameter kind {kind!r}")
    z, zp = a, b
    if z == 0 or zp == 0:
        return INADMISSIBLE

    def is_int(x):
        return x.denominator == 1

    def degenerate_with(n, other):
        n = int(n)
        if n > 0:
            return other > n - 1
        return other < n + 1

    if is_int(z) and degenerate_with(z, zp):
        return DEGENERATE
    if is_int(zp) and degenerate_with(zp, z):
        return DEGENERATE
    if not is_int(z) and not is_int(zp):
        if (z.numerator // z.denominator) == (zp.numerator // zp.denominator):
            return COMPLEMENTARY
    return INADMISSIBLE


@dataclass(frozen=True)
class NumericParams:
    """Evaluated parameter point: z-pair plus xi, with series classification.

    kind "real" stores (z, z') as exact rationals; kind "conj" stores
    (Re z, Im z) of a conjugate pair z' = conj(z). xi must lie in (0, 1);
    t = xi/(1-xi) and z*z' are exact rationals in both cases.
    """

    kind: str
    z1: Fraction
    z2: Fraction
    xi: Fraction

    def __post_init__(self):
        if self.kind not in ("real", "conj"):
            raise ValueError(f"unknown parameter kind {self.kind!r}")
        for name in ("z1", "z2", "xi"):
            object.__setattr__(self, name, as_rat(getattr(self, name)))
        if not (0 < self.xi < 1):
            raise ValueError(f"xi must lie in (0,1), got {self.xi}")

    @classmethod
    def real_pair(cls, z, zp, xi) -> "NumericParams":
        return cls("real", as_rat(z), as_rat(zp), as_rat(xi))

    @classmethod
    def conjugate(cls, re, im, xi) -> "NumericParams":
        return cls("conj", as_rat(re), as_rat(im), as_rat(xi))

    @property
    def t(self) -> Fraction:
        return self.xi / (1 - self.xi)

    @property
    def zzp(self) -> Fraction:
        if self.kind == "real":
            return self.z1 * self.z2
        return self.z1 * self.z1 + self.z2 * self.z2

    @property
    def series(self) -> str:
        return classify_pair(self.kind, self.z1, self.z2)

    def is_admissible(self) -> bool:
        return self.series != INADMISSIBLE

    def require_admissible(self):
        if not self.is_admissible():
            raise ValueError(f"parameters {self} are inadmissible")

    def content_factor(self, c: int) -> Fraction:
        """(z + c)(z' + c) as an exact rational."""
        if self.kind == "real":
            return (self.z1 + c) * (self.z2 + c)
        return (self.z1 + c) * (self.z1 + c) + self.z2 * self.z2

    def param_eval(self, p: MPoly) -> Fraction:
        """Exact value of a parameter polynomial at this point.

        Conjugate pairs are evaluated in Gaussian-rational arithmetic; the
        result of any polynomial symmetric in z <-> z' is real, and a nonzero
        imaginary part is rejected.
        """
        if p.nvars != 3:
            raise ValueError("parameter polynomials have three variables")
        t = self.t
        if self.kind == "real":
            return p.eval((self.z1, self.z2, t))
        re, im = self.z1, self.z2
        zpow: dict[int, tuple[Fraction, Fraction]] = {0: (_ONE, _ZERO)}

        def power(k: int) -> tuple[Fraction, Fraction]:
            if k not in zpow:
                a, b = power(k - 1)
                zpow[k] = (a * re - b * im, a * im + b * re)
            return zpow[k]

        tot_re = _ZERO
        tot_im = _ZERO
        tpow: dict[int, Fraction] = {0: _ONE}
        for (dz, dzp, dt), c in p.terms.items():
            a1, b1 = power(dz)
            a2, b2 = power(dzp)
            b2 = -b2  # z' = conj(z)
            rr = a1 * a2 - b1 * b2
            ii = a1 * b2 + b1 * a2
            if dt not in tpow:
                tpow[dt] = t ** dt
            ct = c * tpow[dt]
            tot_re += ct * rr
            tot_im += ct * ii
        if tot_im != 0:
            raise ValueError("polynomial is not symmetric in z <-> z'; value is not real")
        return tot_re
