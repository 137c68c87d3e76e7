"""Univariate and N-variate orthogonal polynomials with exact coefficients.

Monic Laguerre (weight x^(b-1) e^-x on the half-line) and Meixner (negative
binomial weight on the nonnegative integers) families are built by exact
Gram-Schmidt against their moment sequences, symbolically in b and
t = xi/(1-xi). N-variate symmetric polynomials come from the determinantal
recipe det[phi_{nu_i + N - i}(x_j)] / Vandermonde, with the division checked
to be exact. The associated second-order operators are realized in the
x-coordinates (clearing denominators over the Vandermonde) and, for the
Laguerre family, in elementary-symmetric coordinates.

Ring conventions: N-variate polynomials are MPoly instances with variables
(x_1, ..., x_N, b, t); univariate ones use (x, b, t).
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, permutations

from .coeffring import MPoly, as_rat
from .partition import as_partition

LAGUERRE = "laguerre"
MEIXNER = "meixner"


def xvar(N: int, i: int) -> MPoly:
    """x_{i+1} as an element of the N-variate ring."""
    return MPoly.gen(N + 2, i)


def bvar(N: int) -> MPoly:
    return MPoly.gen(N + 2, N)


def tvar(N: int) -> MPoly:
    return MPoly.gen(N + 2, N + 1)


@lru_cache(maxsize=None)
def elementary_poly(k: int, N: int) -> MPoly:
    """Elementary symmetric polynomial e_k(x_1..x_N) in the N-variate ring."""
    ring = N + 2
    if k == 0:
        return MPoly.const(ring, 1)
    if k > N:
        return MPoly(ring)
    terms = {}
    for combo in combinations(range(N), k):
        exps = [0] * ring
        for i in combo:
            exps[i] = 1
        terms[tuple(exps)] = 1
    return MPoly(ring, terms)


@lru_cache(maxsize=None)
def shifted_power_sum(k: int, N: int) -> MPoly:
    """sum_i [(x_i - N + 1/2)^k - (-i + 1/2)^k] in the N-variate ring."""
    ring = N + 2
    out = MPoly(ring)
    shift = Fraction(1, 2) - N
    for i in range(N):
        out = out + (xvar(N, i) + shift) ** k
        out = out - MPoly.const(ring, (Fraction(1, 2) - (i + 1)) ** k)
    return out


@lru_cache(maxsize=None)
def vandermonde(N: int) -> MPoly:
    ring = N + 2
    out = MPoly.const(ring, 1)
    for i in range(N):
        for j in range(i + 1, N):
            out = out * (xvar(N, i) - xvar(N, j))
    return out


class NVarPoly:
    """Symmetric polynomial in N variables over Q[b, t].

    Thin wrapper around a flat MPoly in (x_1..x_N, b, t); construction from
    the operators below always yields symmetric results, which is checked
    on demand rather than enforced term by term.
    """

    __slots__ = ("N", "poly")

    def __init__(self, N: int, poly: MPoly):
        if poly.nvars != N + 2:
            raise ValueError("polynomial ring does not match N")
        object.__setattr__(self, "N", N)
        object.__setattr__(self, "poly", poly)

    def __setattr__(self, *a):
        raise AttributeError("NVarPoly is immutable")

    def __eq__(self, other):
        if isinstance(other, NVarPoly):
            return self.N == other.N and self.poly == other.poly
        return NotImplemented

    __hash__ = None

    def __add__(self, other):
        if isinstance(other, NVarPoly):
            if other.N != self.N:
                raise ValueError("mixed variable counts")
            return NVarPoly(self.N, self.poly + other.poly)
        return NVarPoly(self.N, self.poly + other)

    def __sub__(self, other):
        if isinstance(other, NVarPoly):
            if other.N != self.N:
                raise ValueError("mixed variable counts")
            return NVarPoly(self.N, self.poly - other.poly)
        return NVarPoly(self.N, self.poly - other)

    def __mul__(self, other):
        if isinstance(other, NVarPoly):
            if other.N != self.N:
                raise ValueError("mixed variable counts")
            return NVarPoly(self.N, self.poly * other.poly)
        return NVarPoly(self.N, self.poly * other)

    __rmul__ = __mul__

    def __neg__(self):
        return NVarPoly(self.N, -self.poly)

    def is_zero(self):
        return self.poly.is_zero()

    def is_symmetric(self) -> bool:
        for i in range(self.N - 1):
            swapped = {}
            for exps, c in self.poly.terms.items():
                key = list(exps)
                key[i], key[i + 1] = key[i + 1], key[i]
                swapped[tuple(key)] = c
            if swapped != self.poly.terms:
                return False
        return True

    def subs_numeric(self, *, b=None, t=None) -> "NVarPoly":
        p = self.poly
        if b is not None:
            p = p.subs_var(self.N, as_rat(b))
        if t is not None:
            p = p.subs_var(self.N + 1, as_rat(t))
        return NVarPoly(self.N, p)

    def eval_x(self, x, *, b=None, t=None) -> Fraction:
        """Exact value at a point x (b, t must be supplied if present)."""
        vals = [as_rat(v) for v in x]
        vals.append(as_rat(b) if b is not None else Fraction(0))
        vals.append(as_rat(t) if t is not None else Fraction(0))
        if b is None and self.poly.deg(self.N) > 0:
            raise ValueError("polynomial involves b; pass b=")
        if t is None and self.poly.deg(self.N + 1) > 0:
            raise ValueError("polynomial involves t; pass t=")
        return self.poly.eval(vals)

    def to_json(self) -> dict:
        if not self.is_symmetric():
            raise ValueError("only symmetric polynomials have a canonical encoding")
        seen = {}
        for exps, c in self.poly.terms.items():
            xpart = tuple(sorted(exps[: self.N], reverse=True))
            key = (xpart, exps[self.N], exps[self.N + 1])
            if exps[: self.N] == xpart:
                seen[key] = c
        grouped: dict[tuple, list] = {}
        for (xpart, db, dt), c in sorted(seen.items()):
            grouped.setdefault(xpart, []).append(
                {"db": db, "dt": dt, "num": str(c.numerator), "den": str(c.denominator)})
        terms = [{"exps": list(xpart), "coeff": coeff}
                 for xpart, coeff in sorted(grouped.items(), reverse=True)]
        return {"N": self.N, "terms": terms}

    def __repr__(self):
        return f"NVarPoly(N={self.N}, {self.poly!r})"


# ---------------------------------------------------------------------------
# Univariate families from exact moments.


@lru_cache(maxsize=None)
def _stirling2(k: int, j: int) -> int:
    if k == j:
        return 1
    if j == 0 or j > k:
        return 0
    return j * _stirling2(k - 1, j) + _stirling2(k - 1, j - 1)


@lru_cache(maxsize=None)
def _moment(kind: str, k: int) -> MPoly:
    """k-th moment of the weight, in the (x, b, t) ring with x-degree 0.

    Laguerre: rising factorial (b)_k. Meixner: the factorial moments are
    (b)_k t^k, so ordinary moments come via Stirling numbers.
    """
    b = MPoly.gen(3, 1)
    t = MPoly.gen(3, 2)
    if kind == LAGUERRE:
        out = MPoly.const(3, 1)
        for i in range(k):
            out = out * (b + i)
        return out
    if kind == MEIXNER:
        out = MPoly(3)
        for j in range(k + 1):
            s2 = _stirling2(k, j)
            if not s2:
                continue
            rising = MPoly.const(3, s2)
            for i in range(j):
                rising = rising * (b + i)
            out = out + rising * t ** j
        return out
    raise ValueError(f"unknown family kind {kind!r}")


def _apply_moments(kind: str, poly: MPoly) -> MPoly:
    """The moment functional applied to a polynomial in x (b, t pass through)."""
    out = MPoly(3)
    for (dx, db, dt), c in poly.terms.items():
        out = out + _moment(kind, dx) * MPoly.monomial(3, (0, db, dt), c)
    return out


class UnivariateOPFamily:
    """Monic orthogonal polynomials phi_0..phi_n with exact coefficients.

    Built by Gram-Schmidt on the moment sequence; the three-term recurrence
    coefficients are extracted afterwards and re-checked against the
    construction, so a bad moment sequence cannot pass silently.
    """

    def __init__(self, kind: str, n_max: int):
        if kind not in (LAGUERRE, MEIXNER):
            raise ValueError(f"unknown family kind {kind!r}")
        self.kind = kind
        self.n_max = n_max
        x = MPoly.gen(3, 0)
        phis = [MPoly.const(3, 1)]
        norms = [MPoly.const(3, 1)]
        for n in range(1, n_max + 1):
            xn = x ** n
            phi = xn
            for k in range(n):
                num = _apply_moments(kind, xn * phis[k])
                try:
                    c = num.exact_div(norms[k])
                except ArithmeticError as exc:
                    raise ArithmeticError(
                        f"Gram-Schmidt projection is not polynomial at n={n}, k={k}; "
                        "degenerate moment sequence") from exc
                phi = phi - c * phis[k]
            phis.append(phi)
            norms.append(_apply_moments(kind, phi * phi))
            if norms[-1].is_zero():
                raise ArithmeticError(f"vanishing norm at degree {n}")
        self.phis = phis
        self.norms = norms
        self.rec_a, self.rec_c = self._extract_recurrence()

    def phi(self, n: int) -> MPoly:
        return self.phis[n]

    def eigenvalue(self, n: int) -> int:
        """Eigenvalue mu_n of the generating operator: n for both kinds."""
        return n

    def _extract_recurrence(self):
        x = MPoly.gen(3, 0)
        rec_a, rec_c = [], []
        for n in range(self.n_max):
            a_n = _apply_moments(self.kind, x * self.phis[n] * self.phis[n]).exact_div(self.norms[n])
            c_n = self.norms[n].exact_div(self.norms[n - 1]) if n >= 1 else MPoly(3)
            rec_a.append(a_n)
            rec_c.append(c_n)
            lhs = self.phis[n + 1]
            rhs = (x - a_n) * self.phis[n] - c_n * (self.phis[n - 1] if n >= 1 else MPoly(3))
            if lhs != rhs:
                raise ArithmeticError(f"three-term recurrence fails at n={n}")
        return rec_a, rec_c


@lru_cache(maxsize=None)
def build_univariate(kind: str, n_max: int) -> UnivariateOPFamily:
    if n_max < 0:
        raise ValueError("n_max must be nonnegative")
    return UnivariateOPFamily(kind, n_max)


# ---------------------------------------------------------------------------
# N-variate polynomials and operators.


def _univariate_to_nv(p: MPoly, N: int, j: int) -> MPoly:
    """Send the univariate ring (x, b, t) into the N-variate ring, x -> x_{j+1}."""
    return p.compose([xvar(N, j), bvar(N), tvar(N)], N + 2)


def multivariate_op(nu, family: UnivariateOPFamily, N: int) -> NVarPoly:
    """det[phi_{nu_i + N - i}(x_j)] divided by the Vandermonde, exactly."""
    nu = as_partition(nu)
    if len(nu) > N:
        raise ValueError(f"partition {nu} has more than {N} rows")
    rows = list(nu) + [0] * (N - len(nu))
    degs = [rows[i] + N - 1 - i for i in range(N)]
    if max(degs, default=0) > family.n_max:
        raise ValueError("family not built to a high enough degree")
    cells = [[_univariate_to_nv(family.phi(degs[i]), N, j) for j in range(N)] for i in range(N)]
    det = MPoly(N + 2)
    for perm in permutations(range(N)):
        sign = _perm_sign(perm)
        prod = MPoly.const(N + 2, sign)
        for i in range(N):
            prod = prod * cells[i][perm[i]]
        det = det + prod
    try:
        quotient = det.exact_div(vandermonde(N))
    except ArithmeticError as exc:
        raise ArithmeticError("determinant is not divisible by the Vandermonde") from exc
    return NVarPoly(N, quotient)


def _perm_sign(perm) -> int:
    sign = 1
    for i in range(len(perm)):
        for j in range(i + 1, len(perm)):
            if perm[i] > perm[j]:
                sign = -sign
    return sign


def laguerre_op_x(f: NVarPoly) -> NVarPoly:
    """The N-variate Laguerre generator in x-coordinates (b symbolic):
    sum_i [ x_i d^2/dx_i^2 + (b - x_i) d/dx_i + sum_{j != i} (2 x_i/(x_i - x_j)) d/dx_i ].

    The singular part is computed pairwise: for symmetric input each
    2(x_i f_i - x_j f_j) is exactly divisible by (x_i - x_j); a failed
    division means the input was not symmetric.
    """
    N = f.N
    p = f.poly
    b = bvar(N)
    out = MPoly(N + 2)
    firsts = [p.derivative(i) for i in range(N)]
    for i in range(N):
        out = out + xvar(N, i) * firsts[i].derivative(i) + (b - xvar(N, i)) * firsts[i]
    for i in range(N):
        for j in range(i + 1, N):
            num = (xvar(N, i) * firsts[i] - xvar(N, j) * firsts[j]) * 2
            if num.is_zero():
                continue
            try:
                out = out + num.exact_div(xvar(N, i) - xvar(N, j))
            except ArithmeticError as exc:
                raise ValueError("operator requires a symmetric polynomial") from exc
    return NVarPoly(N, out)


def laguerre_op_e(f: MPoly, N: int) -> MPoly:
    """The same operator in elementary-symmetric coordinates: variables
    (e_1..e_N, b, t), with
    A_mn = sum_{k<min(m,n)} (m+n-1-2k) e_{m+n-1-k} e_k,
    B_n = -n e_n + (N-n+1)(N+b-n) e_{n-1}, e_0 = 1 and e_k = 0 for k > N.
    """
    if f.nvars != N + 2:
        raise ValueError("input must live in the (e_1..e_N, b, t) ring")
    ring = N + 2
    b = MPoly.gen(ring, N)

    def e(k: int) -> MPoly:
        if k == 0:
            return MPoly.const(ring, 1)
        if k > N:
            return MPoly(ring)
        return MPoly.gen(ring, k - 1)

    out = MPoly(ring)
    firsts = [f.derivative(n) for n in range(N)]
    for n in range(1, N + 1):
        fn = firsts[n - 1]
        if fn.is_zero():
            continue
        B = e(n) * (-n) + (b + (N - n)) * ((N - n + 1)) * e(n - 1)
        out = out + B * fn
        for m in range(1, N + 1):
            d2 = firsts[n - 1].derivative(m - 1)
            if d2.is_zero():
                continue
            A = MPoly(ring)
            for k in range(min(m, n)):
                A = A + (m + n - 1 - 2 * k) * e(m + n - 1 - k) * e(k)
            out = out + A * d2
    return out


def meixner_op_poly(f: NVarPoly) -> NVarPoly:
    """The N-variate Meixner generator as an exact polynomial identity.

    A_i(x) = t (b + x_i) prod_{j != i} (x_i - x_j + 1)/(x_i - x_j) and
    B_i(x) = (1+t) x_i prod_{j != i} (x_i - x_j - 1)/(x_i - x_j) multiply the
    forward/backward differences of f. Denominators are cleared against the
    Vandermonde and the final division is checked exact, which requires f
    symmetric.
    """
    N = f.N
    ring = N + 2
    p = f.poly
    b = bvar(N)
    t = tvar(N)
    acc = MPoly(ring)
    for i in range(N):
        sign = 1 if i % 2 == 0 else -1
        rest = MPoly.const(ring, sign)
        for k in range(N):
            for l in range(k + 1, N):
                if k != i and l != i:
                    rest = rest * (xvar(N, k) - xvar(N, l))
        plus = MPoly.const(ring, 1)
        minus = MPoly.const(ring, 1)
        for j in range(N):
            if j != i:
                plus = plus * (xvar(N, i) - xvar(N, j) + 1)
                minus = minus * (xvar(N, i) - xvar(N, j) - 1)
        f_up = p.subs_var(i, xvar(N, i) + 1)
        f_dn = p.subs_var(i, xvar(N, i) - 1)
        acc = acc + t * (b + xvar(N, i)) * plus * rest * (f_up - p)
        acc = acc + (t + 1) * xvar(N, i) * minus * rest * (f_dn - p)
    try:
        quotient = acc.exact_div(vandermonde(N))
    except ArithmeticError as exc:
        raise ValueError("operator requires a symmetric polynomial") from exc
    return NVarPoly(N, quotient)


def meixner_op_values(values, N: int, b, xi, x):
    """Pointwise difference-operator action on a value table.

    x must be strictly decreasing nonnegative integers; neighbors whose move
    would leave the chamber carry a structurally zero coefficient and are
    never looked up. Missing needed neighbors raise ValueError.
    """
    x = tuple(int(v) for v in x)
    if len(x) != N or any(x[i] <= x[i + 1] for i in range(N - 1)) or x[-1] < 0:
        raise ValueError(f"{x} is not in the ordered chamber")
    b = as_rat(b)
    xi = as_rat(xi)
    t = xi / (1 - xi)
    fx = _lookup(values, x)
    total = 0
    for i in range(N):
        a_i = t * (b + x[i])
        for j in range(N):
            if j != i:
                a_i *= Fraction(x[i] - x[j] + 1, x[i] - x[j])
        if a_i:
            up = x[:i] + (x[i] + 1,) + x[i + 1:]
            total += a_i * (_lookup(values, up) - fx)
        b_i = (1 + t) * x[i]
        for j in range(N):
            if j != i:
                b_i *= Fraction(x[i] - x[j] - 1, x[i] - x[j])
        if b_i:
            dn = x[:i] + (x[i] - 1,) + x[i + 1:]
            total += b_i * (_lookup(values, dn) - fx)
    return total


def _lookup(values, x):
    try:
        return values[x]
    except KeyError:
        raise ValueError(f"value table is missing the needed neighbor {x}") from None


def meixner_rate_sum(N: int, b, xi, x):
    """sum A_i + sum B_i; equals C(x) = (xi b N + (1+xi) sum x_i)/(1-xi) - N(N-1)/2."""
    x = tuple(int(v) for v in x)
    b = as_rat(b)
    xi = as_rat(xi)
    t = xi / (1 - xi)
    total = Fraction(0)
    for i in range(N):
        a_i = t * (b + x[i])
        b_i = (1 + t) * x[i]
        for j in range(N):
            if j != i:
                a_i *= Fraction(x[i] - x[j] + 1, x[i] - x[j])
                b_i *= Fraction(x[i] - x[j] - 1, x[i] - x[j])
        total += a_i + b_i
    return total


# ---------------------------------------------------------------------------
# Cross-checks against the symbolic families, and weights.


def truncation_crosscheck(nu, N: int, b, kind: str, xi=None) -> bool:
    """Truncated symbolic family at (z, z') = (N, N+b-1) vs the determinantal
    N-variate polynomial; exact comparison."""
    mismatch = truncation_mismatch(nu, N, b, kind, xi)
    return mismatch is None


def truncation_mismatch(nu, N: int, b, kind: str, xi=None):
    """None if the truncation check passes, else the offending difference."""
    # imported here: the family modules sit above this one in the layering
    from . import laguerre as _laguerre
    from . import meixner as _meixner
    from . import symcore

    nu = as_partition(nu)
    if len(nu) > N:
        raise ValueError(f"partition {nu} has more than {N} rows")
    b = as_rat(b)
    if b <= 0:
        raise ValueError("b must be positive")
    z_val = Fraction(N)
    zp_val = N - 1 + b
    top = (nu[0] if nu else 0) + N - 1
    family = build_univariate(kind, top)
    rhs = multivariate_op(nu, family, N)
    if kind == LAGUERRE:
        lhs = symcore.truncate(_laguerre.laguerre_sf(nu), N, z_value=z_val, zp_value=zp_val)
        rhs = rhs.subs_numeric(b=b)
    elif kind == MEIXNER:
        if xi is None:
            raise ValueError("xi is required for the Meixner family")
        xi = as_rat(xi)
        if not (0 < xi < 1):
            raise ValueError("xi must lie in (0,1)")
        t = xi / (1 - xi)
        lhs = symcore.truncate_shifted(_meixner.meixner_schur(nu), N,
                                       z_value=z_val, zp_value=zp_val, t_value=t)
        rhs = rhs.subs_numeric(b=b, t=t)
    else:
        raise ValueError(f"unknown family kind {kind!r}")
    diff = lhs - rhs
    return None if diff.is_zero() else diff


def weight_density(x, N: int, kind: str, params) -> float:
    """Orthogonality weight at a chamber point (density for Laguerre, atom
    mass for Meixner), in the normalization-free form V^2 prod w(x_i)."""
    if kind == LAGUERRE:
        (b,) = params if isinstance(params, (tuple, list)) else (params,)
        pts = [float(v) for v in x]
        if len(pts) != N or any(pts[i] < pts[i + 1] for i in range(N - 1)) or pts[-1] < 0:
            raise ValueError(f"{x} is outside the ordered chamber")
        v = 1.0
        for i in range(N):
            for j in range(i + 1, N):
                v *= pts[i] - pts[j]
        dens = v * v
        for p in pts:
            if p == 0.0 and float(b) < 1:
                raise ValueError("density is singular at 0 for b < 1")
            dens *= p ** (float(b) - 1.0) * math.exp(-p)
        return dens
    if kind == MEIXNER:
        b, xi = params
        b = float(b)
        xi = float(xi)
        pts = [int(v) for v in x]
        if len(pts) != N or any(pts[i] <= pts[i + 1] for i in range(N - 1)) or pts[-1] < 0:
            raise ValueError(f"{x} is outside the strict ordered chamber")
        v = 1.0
        for i in range(N):
            for j in range(i + 1, N):
                v *= pts[i] - pts[j]
        logmass = 0.0
        for p in pts:
            logmass += b * math.log1p(-xi) + math.lgamma(b + p) - math.lgamma(b) \
                - math.lgamma(p + 1) + p * math.log(xi)
        return v * v * math.exp(logmass)
    raise ValueError(f"unknown family kind {kind!r}")
