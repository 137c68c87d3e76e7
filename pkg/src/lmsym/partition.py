"""Young diagram combinatorics.

Partitions are plain tuples of weakly decreasing positive ints; boxes are
1-based (row, col) pairs with content col - row. Standard-tableau counts use
the hook length formula; skew counts use the reciprocal-factorial determinant
(exact rationals), which stays fast at sizes around 40 where the recursive
count would blow up.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Iterator

Partition = tuple
Box = tuple  # (row, col), 1-based

EMPTY: Partition = ()


def as_partition(rows) -> Partition:
    """Validate and normalize an iterable of row lengths (trailing zeros ok)."""
    lam = tuple(int(r) for r in rows)
    while lam and lam[-1] == 0:
        lam = lam[:-1]
    if any(r <= 0 for r in lam):
        raise ValueError(f"row lengths must be positive: {lam}")
    if any(lam[i] < lam[i + 1] for i in range(len(lam) - 1)):
        raise ValueError(f"rows must be weakly decreasing: {lam}")
    return lam


def from_string(s: str) -> Partition:
    """Parse comma syntax like '3,2,2'; empty string is the empty diagram."""
    s = s.strip()
    if not s:
        return EMPTY
    return as_partition(int(x) for x in s.split(","))


def to_string(lam: Partition) -> str:
    return ",".join(str(r) for r in lam)


def size(lam: Partition) -> int:
    return sum(lam)


def conjugate(lam: Partition) -> Partition:
    if not lam:
        return EMPTY
    return tuple(sum(1 for r in lam if r > i) for i in range(lam[0]))


def contains(lam: Partition, mu: Partition) -> bool:
    """Diagram containment mu <= lam."""
    if len(mu) > len(lam):
        return False
    return all(m <= l for m, l in zip(mu, lam))


def intersect(lam: Partition, mu: Partition) -> Partition:
    return tuple(min(a, b) for a, b in zip(lam, mu))


def boxes(lam: Partition) -> Iterator[Box]:
    for i, r in enumerate(lam, start=1):
        for j in range(1, r + 1):
            yield (i, j)


def content(box: Box) -> int:
    return box[1] - box[0]


def skew_boxes(lam: Partition, mu: Partition) -> list[Box]:
    """Boxes of lam not in mu (lam must contain mu)."""
    out = []
    for i, r in enumerate(lam, start=1):
        start = mu[i - 1] if i <= len(mu) else 0
        out.extend((i, j) for j in range(start + 1, r + 1))
    return out


def enumerate_partitions(n: int) -> list[Partition]:
    """All partitions of n in reverse-lexicographic order, (n) first."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    out: list[Partition] = []

    def rec(rem, maxpart, prefix):
        if rem == 0:
            out.append(tuple(prefix))
            return
        for part in range(min(rem, maxpart), 0, -1):
            prefix.append(part)
            rec(rem - part, part, prefix)
            prefix.pop()

    rec(n, n if n else 0, [])
    if n == 0:
        return [EMPTY]
    return out


def partitions_up_to(n: int) -> Iterator[Partition]:
    """All partitions of sizes 0..n, sizes ascending, reverse-lex within size."""
    for k in range(n + 1):
        yield from enumerate_partitions(k)


def sort_key(lam: Partition):
    """Canonical (size, reverse-lex) ordering key."""
    return (sum(lam), tuple(-r for r in lam))


def corners(lam: Partition) -> tuple[list[Box], list[Box]]:
    """(addable, removable) corner boxes, top row first.

    Removing a removable box or adding an addable one yields a diagram again;
    there is always exactly one more addable box than removable.
    """
    ell = len(lam)
    addable = []
    removable = []
    for i in range(1, ell + 1):
        r = lam[i - 1]
        if i == 1 or lam[i - 2] > r:
            addable.append((i, r + 1))
        if i == ell or lam[i] < r:
            removable.append((i, r))
    addable.append((ell + 1, 1))
    return addable, removable


def add_box(lam: Partition, box: Box) -> Partition:
    i = box[0]
    if i == len(lam) + 1:
        if box[1] != 1:
            raise ValueError(f"{box} is not addable to {lam}")
        return lam + (1,)
    if i < 1 or i > len(lam) or box[1] != lam[i - 1] + 1:
        raise ValueError(f"{box} is not addable to {lam}")
    if i > 1 and lam[i - 2] < lam[i - 1] + 1:
        raise ValueError(f"{box} is not addable to {lam}")
    return lam[: i - 1] + (lam[i - 1] + 1,) + lam[i:]


def remove_box(lam: Partition, box: Box) -> Partition:
    i = box[0]
    if i < 1 or i > len(lam) or box[1] != lam[i - 1]:
        raise ValueError(f"{box} is not removable from {lam}")
    if i < len(lam) and lam[i] > lam[i - 1] - 1:
        raise ValueError(f"{box} is not removable from {lam}")
    rows = lam[: i - 1] + (lam[i - 1] - 1,) + lam[i:]
    return rows[:-1] if rows and rows[-1] == 0 else rows


def hook_lengths(lam: Partition) -> list[int]:
    conj = conjugate(lam)
    out = []
    for i, r in enumerate(lam, start=1):
        for j in range(1, r + 1):
            out.append(r - j + conj[j - 1] - i + 1)
    return out


@lru_cache(maxsize=None)
def dim_syt(lam: Partition) -> int:
    """Number of standard Young tableaux of shape lam (hook length formula)."""
    n = sum(lam)
    prod = 1
    for h in hook_lengths(lam):
        prod *= h
    return math.factorial(n) // prod


@lru_cache(maxsize=None)
def log_dim_syt(lam: Partition) -> float:
    """log dim, for bulk float work on large diagrams."""
    n = sum(lam)
    return math.lgamma(n + 1) - sum(math.log(h) for h in hook_lengths(lam))


def _det_fraction(mat: list[list[Fraction]]) -> Fraction:
    """Determinant by exact Gaussian elimination with partial pivoting."""
    n = len(mat)
    a = [row[:] for row in mat]
    det = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col]), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            det = -det
        det *= a[col][col]
        inv = 1 / a[col][col]
        for r in range(col + 1, n):
            if a[r][col]:
                f = a[r][col] * inv
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return det


@lru_cache(maxsize=None)
def dim_skew(lam: Partition, mu: Partition) -> int:
    """Standard tableaux of the skew shape lam/mu.

    Computed as |lam/mu|! * det[ 1/(lam_i - mu_j - i + j)! ] with the
    reciprocal factorial of a negative argument read as 0. Returns 0 when
    mu is not contained in lam; dim lam/() = dim lam.
    """
    if not contains(lam, mu):
        return 0
    n = sum(lam) - sum(mu)
    ell = len(lam)
    if ell == 0:
        return 1
    mat = []
    for i in range(1, ell + 1):
        row = []
        for j in range(1, ell + 1):
            m = (mu[j - 1] if j <= len(mu) else 0)
            arg = lam[i - 1] - m - i + j
            row.append(Fraction(1, math.factorial(arg)) if arg >= 0 else Fraction(0))
        mat.append(row)
    val = _det_fraction(mat) * math.factorial(n)
    assert val.denominator == 1
    return int(val)


def subpartitions(lam: Partition) -> list[Partition]:
    """All diagrams contained in lam."""
    out: list[Partition] = []

    def rec(i, prev, prefix):
        if i == len(lam):
            out.append(as_partition(prefix))
            return
        for r in range(min(lam[i], prev), -1, -1):
            prefix.append(r)
            rec(i + 1, r, prefix)
            prefix.pop()

    rec(0, lam[0] if lam else 0, [])
    return out


def frobenius(lam: Partition) -> tuple[tuple[Fraction, ...], tuple[Fraction, ...]]:
    """Modified Frobenius coordinates (a; b), exact half-integers.

    a_i = lam_i - i + 1/2 and b_i is the same for the conjugate diagram, with
    i running over the d diagonal boxes; sum(a) + sum(b) = |lam|.
    """
    conj = conjugate(lam)
    d = sum(1 for i, r in enumerate(lam, start=1) if r >= i)
    a = tuple(Fraction(2 * lam[i] - 2 * i - 1, 2) for i in range(d))
    b = tuple(Fraction(2 * conj[i] - 2 * i - 1, 2) for i in range(d))
    return a, b


def content_product(bx: Iterable[Box]):
    """Product of (z + c)(z' + c) over boxes, as a parameter polynomial."""
    from .coeffring import PP_ONE, PP_Z, PP_ZP

    out = PP_ONE
    for box in bx:
        c = content(box)
        out = out * ((PP_Z + c) * (PP_ZP + c))
    return out


def to_json(lam: Partition) -> list[int]:
    return list(lam)


def from_json(data) -> Partition:
    return as_partition(data)
