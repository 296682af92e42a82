"""Exact sparse polynomials in the marker variables (x, y, z).

A polynomial is a dict mapping exponent triples ``(a, b, c)`` to nonzero
``Fraction`` coefficients; ``x`` and ``y`` mark positive and negative
carries, ``z`` marks the expansion length.  The zero polynomial is the
empty dict.  All functions return canonical form (no zero coefficients),
so dict equality is polynomial equality.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Iterable, Tuple

Monomial = Tuple[int, int, int]
Poly = Dict[Monomial, Fraction]

ZERO: Poly = {}
ONE: Poly = {(0, 0, 0): Fraction(1)}


def const(value) -> Poly:
    """Constant polynomial."""
    coeff = Fraction(value)
    return {(0, 0, 0): coeff} if coeff else {}


def monomial(a: int, b: int, c: int, coeff=1) -> Poly:
    """Single term coeff * x^a y^b z^c."""
    coeff = Fraction(coeff)
    return {(a, b, c): coeff} if coeff else {}


def add(p: Poly, q: Poly) -> Poly:
    out = dict(p)
    for mono, coeff in q.items():
        new = out.get(mono, 0) + coeff
        if new:
            out[mono] = new
        else:
            out.pop(mono, None)
    return out


def sub(p: Poly, q: Poly) -> Poly:
    out = dict(p)
    for mono, coeff in q.items():
        new = out.get(mono, 0) - coeff
        if new:
            out[mono] = new
        else:
            out.pop(mono, None)
    return out


def neg(p: Poly) -> Poly:
    return {mono: -coeff for mono, coeff in p.items()}


def mul(p: Poly, q: Poly) -> Poly:
    if not p or not q:
        return {}
    out: Poly = {}
    for (a1, b1, c1), u in p.items():
        for (a2, b2, c2), v in q.items():
            mono = (a1 + a2, b1 + b2, c1 + c2)
            new = out.get(mono, 0) + u * v
            if new:
                out[mono] = new
            else:
                out.pop(mono, None)
    return out


def scale(p: Poly, factor) -> Poly:
    factor = Fraction(factor)
    if not factor:
        return {}
    return {mono: coeff * factor for mono, coeff in p.items()}


def evaluate(p: Poly, x, y, z) -> Fraction:
    x, y, z = Fraction(x), Fraction(y), Fraction(z)
    total = Fraction(0)
    for (a, b, c), coeff in p.items():
        total += coeff * x**a * y**b * z**c
    return total


def substitute(p: Poly, var: int, value) -> Poly:
    """Substitute a rational value for variable index 0=x, 1=y, 2=z."""
    value = Fraction(value)
    out: Poly = {}
    for mono, coeff in p.items():
        new_mono = list(mono)
        exp = new_mono[var]
        new_mono[var] = 0
        key = tuple(new_mono)
        new = out.get(key, 0) + coeff * value**exp
        if new:
            out[key] = new
        else:
            out.pop(key, None)
    return out


def derivative(p: Poly, var: int) -> Poly:
    """Formal partial derivative with respect to variable index 0=x, 1=y, 2=z."""
    out: Poly = {}
    for mono, coeff in p.items():
        exp = mono[var]
        if exp == 0:
            continue
        new_mono = list(mono)
        new_mono[var] = exp - 1
        out[tuple(new_mono)] = coeff * exp
    return out


def degree(p: Poly, var: int) -> int:
    return max((mono[var] for mono in p), default=0)


def poly_sum(polys: Iterable[Poly]) -> Poly:
    out: Poly = {}
    for p in polys:
        out = add(out, p)
    return out


def render(p: Poly, names=("x", "y", "z")) -> str:
    """Human-readable form like ``(37/64) + (1/32) x y``, deterministic order."""
    if not p:
        return "0"
    parts = []
    for mono in sorted(p):
        coeff = p[mono]
        factors = []
        for name, exp in zip(names, mono):
            if exp == 1:
                factors.append(name)
            elif exp > 1:
                factors.append(f"{name}^{exp}")
        body = " ".join(factors)
        parts.append(f"({coeff}) {body}".strip() if body else f"({coeff})")
    return " + ".join(parts)
