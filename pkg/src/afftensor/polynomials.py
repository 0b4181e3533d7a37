"""Multivariate integer polynomials on exponent-tuple dicts.

Just enough arithmetic for equivariant restriction computations: addition,
multiplication, exact division by a linear form, homogeneity checks and
evaluation.  Keys are exponent tuples, values nonzero ints.
"""

from __future__ import annotations

from fractions import Fraction

Poly = dict  # exponent tuple -> int


def poly_zero() -> Poly:
    return {}

def poly_const(c: int, nvars: int) -> Poly:
    return {} if c == 0 else {(0,) * nvars: c}


def poly_linear(coeffs) -> Poly:
    """Linear form sum(c_i x_i)."""
    n = len(coeffs)
    out = {}
    for i, c in enumerate(coeffs):
        if c:
            e = [0] * n
            e[i] = 1
            out[tuple(e)] = int(c)
    return out


def poly_add(a: Poly, b: Poly) -> Poly:
    out = dict(a)
    for e, c in b.items():
        v = out.get(e, 0) + c
        if v:
            out[e] = v
        else:
            out.pop(e, None)
    return out


def poly_sub(a: Poly, b: Poly) -> Poly:
    out = dict(a)
    for e, c in b.items():
        v = out.get(e, 0) - c
        if v:
            out[e] = v
        else:
            out.pop(e, None)
    return out


def poly_mul(a: Poly, b: Poly) -> Poly:
    out: Poly = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = tuple(x + y for x, y in zip(ea, eb))
            v = out.get(e, 0) + ca * cb
            if v:
                out[e] = v
            else:
                out.pop(e, None)
    return out


def poly_scale(c: int, a: Poly) -> Poly:
    return {} if c == 0 else {e: c * v for e, v in a.items()}


def poly_is_homogeneous(a: Poly, degree: int) -> bool:
    return all(sum(e) == degree for e in a)


def poly_divide_linear(a: Poly, linear: Poly) -> Poly:
    """Exact division by a linear form; raises ArithmeticError on remainder.

    Synthetic division in the pivot variable over Fraction; the final
    quotient must come out integral.
    """
    if not a:
        return {}
    (pivot_exp, pivot_coeff) = max(linear.items(), key=lambda kv: kv[0])
    k = pivot_exp.index(1)
    rest = {e: c for e, c in linear.items() if e != pivot_exp}
    quotient: dict = {}
    rem: dict = {e: Fraction(c) for e, c in a.items()}
    # eliminate monomials by decreasing exponent of the pivot variable
    while rem:
        e = max(rem, key=lambda e: (e[k], e))
        c = rem.pop(e)
        if e[k] == 0:
            raise ArithmeticError("inexact polynomial division")
        q = c / pivot_coeff
        qe = list(e)
        qe[k] -= 1
        qe = tuple(qe)
        quotient[qe] = quotient.get(qe, 0) + q
        # rem -= q * x^qe * (linear - pivot term)
        for le, lc in rest.items():
            me = tuple(x + y for x, y in zip(qe, le))
            v = rem.get(me, Fraction(0)) - q * lc
            if v:
                rem[me] = v
            else:
                rem.pop(me, None)
    out: Poly = {}
    for e, c in quotient.items():
        if c:
            if c.denominator != 1:
                raise ArithmeticError("inexact polynomial division (coefficient)")
            out[e] = int(c)
    return out


def poly_eval(a: Poly, point) -> Fraction:
    total = Fraction(0)
    for e, c in a.items():
        term = Fraction(c)
        for x, p in zip(point, e):
            if p:
                term *= Fraction(x) ** p
        total += term
    return total
