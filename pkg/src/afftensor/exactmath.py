"""Exact rational helpers: small linear algebra over Fraction and square-root brackets.

Everything in this package is exact; floats never appear.  Square roots of
rationals are handled through one-sided rational brackets so that comparisons
involving Euclidean norms can be decided exactly.
"""

from __future__ import annotations

from fractions import Fraction
from math import isqrt
from typing import Sequence

Vec = tuple[Fraction, ...]
Mat = tuple[tuple[Fraction, ...], ...]


def frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


def vec(xs: Sequence) -> Vec:
    return tuple(frac(x) for x in xs)


def vec_add(a: Sequence, b: Sequence) -> Vec:
    return tuple(x + y for x, y in zip(a, b, strict=True))


def vec_sub(a: Sequence, b: Sequence) -> Vec:
    return tuple(x - y for x, y in zip(a, b, strict=True))


def vec_scale(c, a: Sequence) -> Vec:
    c = frac(c)
    return tuple(c * x for x in a)


def dot(a: Sequence, b: Sequence) -> Fraction:
    return sum((x * y for x, y in zip(a, b, strict=True)), Fraction(0))


def mat_vec(m: Sequence[Sequence], v: Sequence) -> Vec:
    return tuple(dot(row, v) for row in m)


def mat_mul(a: Sequence[Sequence], b: Sequence[Sequence]) -> Mat:
    bt = list(zip(*b))
    return tuple(tuple(dot(row, col) for col in bt) for row in a)


def identity_matrix(n: int) -> Mat:
    return tuple(
        tuple(Fraction(1) if i == j else Fraction(0) for j in range(n)) for i in range(n)
    )


def mat_inverse(m: Sequence[Sequence]) -> Mat:
    """Invert a square matrix by Gauss-Jordan elimination over Fraction."""
    n = len(m)
    a = [[frac(x) for x in row] + [Fraction(1) if i == j else Fraction(0) for j in range(n)]
         for i, row in enumerate(m)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            raise ValueError("singular matrix")
        a[col], a[piv] = a[piv], a[col]
        inv = 1 / a[col][col]
        a[col] = [x * inv for x in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return tuple(tuple(row[n:]) for row in a)


def sqrt_bounds(q, scale: int = 10**6) -> tuple[Fraction, Fraction]:
    """Rational (lower, upper) bracket of sqrt(q) for q >= 0.

    lower**2 <= q <= upper**2, with upper - lower <= 1/scale roughly.
    """
    q = frac(q)
    if q < 0:
        raise ValueError("negative radicand")
    if q == 0:
        return Fraction(0), Fraction(0)
    num, den = q.numerator, q.denominator
    s = isqrt(num * den * scale * scale)
    lower = Fraction(s, den * scale)
    upper = Fraction(s + 1, den * scale)
    return lower, upper


def sqrt_lb(q, scale: int = 10**6) -> Fraction:
    return sqrt_bounds(q, scale)[0]


def sqrt_ub(q, scale: int = 10**6) -> Fraction:
    return sqrt_bounds(q, scale)[1]


def frac_str(x: Fraction) -> str:
    """Serialize a rational exactly; integers stay bare."""
    x = frac(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def parse_frac(s: str) -> Fraction:
    return Fraction(s.strip())
