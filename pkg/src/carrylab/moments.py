"""Growth constants of the carry counts from det(I - zA(x, y)).

With f(x, y, z) = det(I - zA(x, y)) of a probabilistic carry machine, the
mean vector of (positive, negative) carry counts grows like
(f_x/f_z, f_y/f_z) per digit, and the variance/covariance constants come
from the second-order partials, all evaluated at (1, 1, 1).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import erf, gcd, sqrt
from typing import Dict, List, Sequence, Tuple

import numpy as np

from . import polynomial as poly
from .matrices import PolyMatrix
from .polynomial import Poly


def _integer_scaled(matrix: PolyMatrix) -> Tuple[List[List[Dict[Tuple[int, int, int], int]]], int]:
    """Clear denominators: returns (D * A as int-coefficient polys, D)."""
    denominator = 1
    for row in matrix.entries:
        for entry in row:
            for coeff in entry.values():
                denominator = denominator * coeff.denominator // gcd(
                    denominator, coeff.denominator
                )
    scaled = []
    for row in matrix.entries:
        scaled_row = []
        for entry in row:
            cell = {}
            for mono, coeff in entry.items():
                value = coeff * denominator
                assert value.denominator == 1
                cell[mono] = int(value)
            scaled_row.append(cell)
        scaled.append(scaled_row)
    return scaled, denominator


def char_det(matrix: PolyMatrix) -> Poly:
    """Exact determinant of (I - z A(x, y)) by subset dynamic programming.

    Rows are folded in one at a time; the DP state is the set of columns
    already consumed, so the cost is about n * 2^n sparse polynomial
    multiply-adds instead of n! products.
    """
    n = matrix.size
    scaled, denominator = _integer_scaled(matrix)
    # M = D*I - z * (D*A); det(M) = D^n det(I - zA)
    rows: List[List[Dict[Tuple[int, int, int], int]]] = []
    for i in range(n):
        row = []
        for j in range(n):
            cell: Dict[Tuple[int, int, int], int] = {}
            if i == j:
                cell[(0, 0, 0)] = denominator
            for (a, b, c), value in scaled[i][j].items():
                key = (a, b, c + 1)
                cell[key] = cell.get(key, 0) - value
            row.append({k: v for k, v in cell.items() if v})
        rows.append(row)

    layer: Dict[int, Dict[Tuple[int, int, int], int]] = {0: {(0, 0, 0): 1}}
    for i in range(n):
        nxt: Dict[int, Dict[Tuple[int, int, int], int]] = {}
        row = rows[i]
        for subset, accumulated in layer.items():
            for j in range(n):
                bit = 1 << j
                if subset & bit:
                    continue
                cell = row[j]
                if not cell:
                    continue
                sign = -1 if (subset >> (j + 1)).bit_count() & 1 else 1
                target = nxt.setdefault(subset | bit, {})
                for mono_a, u in accumulated.items():
                    for mono_b, v in cell.items():
                        mono = (
                            mono_a[0] + mono_b[0],
                            mono_a[1] + mono_b[1],
                            mono_a[2] + mono_b[2],
                        )
                        value = target.get(mono, 0) + sign * u * v
                        if value:
                            target[mono] = value
                        else:
                            target.pop(mono, None)
        layer = nxt
    raw = layer[(1 << n) - 1]
    scale = Fraction(1, denominator**n)
    return {mono: value * scale for mono, value in raw.items() if value}


@dataclass(frozen=True)
class MomentConstants:
    """Per-digit growth constants of the carry-count distribution."""

    e_m: Fraction
    e_n: Fraction
    v_m: Fraction
    v_n: Fraction
    c: Fraction

    def covariance_ok(self) -> bool:
        return self.v_m >= 0 and self.v_n >= 0 and self.c**2 <= self.v_m * self.v_n


def moment_constants(f: Poly) -> MomentConstants:
    """Expectation, variance, and covariance constants from the partials of f."""
    at = lambda p: poly.evaluate(p, 1, 1, 1)
    f_x = poly.derivative(f, 0)
    f_y = poly.derivative(f, 1)
    f_z = poly.derivative(f, 2)
    fx, fy, fz = at(f_x), at(f_y), at(f_z)
    if fz == 0:
        raise ValueError("degenerate spectrum: f_z(1,1,1) = 0")
    fxx = at(poly.derivative(f_x, 0))
    fyy = at(poly.derivative(f_y, 1))
    fzz = at(poly.derivative(f_z, 2))
    fxy = at(poly.derivative(f_x, 1))
    fxz = at(poly.derivative(f_x, 2))
    fyz = at(poly.derivative(f_y, 2))
    e_m = fx / fz
    e_n = fy / fz
    v_m = (fx**2 * (fzz + fz) + fz**2 * (fxx + fx) - 2 * fx * fz * fxz) / fz**3
    v_n = (fy**2 * (fzz + fz) + fz**2 * (fyy + fy) - 2 * fy * fz * fyz) / fz**3
    c = (fx * fy * (fzz + fz) + fz**2 * fxy - fy * fz * fxz - fx * fz * fyz) / fz**3
    return MomentConstants(e_m, e_n, v_m, v_n, c)


def exact_distribution(
    matrix: PolyMatrix,
    exit_weights: Sequence[Fraction],
    initial: int,
    ell: int,
) -> Dict[Tuple[int, int], Fraction]:
    """Exact joint measure of (positive, negative) carry counts at length ell.

    Forward DP over states carrying bivariate counting polynomials; the
    masses sum to the squared total word weight (1 up to an exponentially
    small deficit), not to exactly 1.
    """
    n = matrix.size
    scaled, denominator = _integer_scaled(matrix)
    state_polys: List[Dict[Tuple[int, int], int]] = [{} for _ in range(n)]
    state_polys[initial] = {(0, 0): 1}
    for _ in range(ell):
        nxt: List[Dict[Tuple[int, int], int]] = [{} for _ in range(n)]
        for i, source in enumerate(state_polys):
            if not source:
                continue
            row = scaled[i]
            for j in range(n):
                cell = row[j]
                if not cell:
                    continue
                target = nxt[j]
                for (m1, n1), u in source.items():
                    for (a, b, _), v in cell.items():
                        mono = (m1 + a, n1 + b)
                        target[mono] = target.get(mono, 0) + u * v
        state_polys = nxt
    result: Dict[Tuple[int, int], Fraction] = {}
    scale = Fraction(1, denominator**ell)
    for i, source in enumerate(state_polys):
        weight = exit_weights[i] * scale
        for mono, value in source.items():
            mass = result.get(mono, Fraction(0)) + value * weight
            if mass:
                result[mono] = mass
            else:
                result.pop(mono, None)
    return result


def marginal(
    dist: Dict[Tuple[int, int], Fraction], axis: int
) -> Dict[int, Fraction]:
    """Marginal of the joint carry-count measure (axis 0: +1, axis 1: -1)."""
    out: Dict[int, Fraction] = {}
    for mono, mass in dist.items():
        key = mono[axis]
        out[key] = out.get(key, Fraction(0)) + mass
    return out


def pmf_moments(pmf: Dict[int, Fraction]) -> Tuple[float, float, float]:
    """(mean, variance, skewness) of a normalized finite distribution."""
    total = sum(pmf.values())
    mean = sum(k * p for k, p in pmf.items()) / total
    var = sum((k - mean) ** 2 * p for k, p in pmf.items()) / total
    third = sum((k - mean) ** 3 * p for k, p in pmf.items()) / total
    sigma = sqrt(float(var))
    skew = float(third) / sigma**3 if sigma else 0.0
    return float(mean), float(var), skew


def kolmogorov_distance_to_normal(pmf: Dict[int, Fraction]) -> float:
    """Sup distance between the standardized lattice CDF and the normal CDF.

    The normal is evaluated at the midpoints k + 1/2 (continuity
    correction), the usual convention for integer-valued variables.
    """
    total = float(sum(pmf.values()))
    mean, var, _ = pmf_moments(pmf)
    sigma = sqrt(var)
    worst = 0.0
    running = 0.0
    for k in sorted(pmf):
        running += float(pmf[k]) / total
        z = (k + 0.5 - mean) / sigma
        phi = 0.5 * (1.0 + erf(z / sqrt(2.0)))
        worst = max(worst, abs(running - phi))
    return worst


def _step_moment_tables(
    matrix: PolyMatrix, axis: int
) -> Tuple[List[List[Fraction]], ...]:
    """Per-transition weights of increment powers 0..3 along one axis."""
    n = matrix.size
    tables = tuple([[Fraction(0)] * n for _ in range(n)] for _ in range(4))
    for i in range(n):
        for j in range(n):
            for mono, coeff in matrix.entries[i][j].items():
                inc = mono[axis]
                for power in range(4):
                    tables[power][i][j] += coeff * inc**power
    return tables


def count_moments(
    matrix: PolyMatrix,
    exit_weights: Sequence[Fraction],
    initial: int,
    ell: int,
    axis: int = 0,
) -> List[Tuple[Fraction, Fraction, Fraction]]:
    """Exact raw moments (E[C], E[C^2], E[C^3]) of the carry count for
    lengths 0..ell, normalized by the total measure at each length."""
    n = matrix.size
    p0, p1, p2, p3 = _step_moment_tables(matrix, axis)
    mass = [Fraction(0)] * n
    m1 = [Fraction(0)] * n
    m2 = [Fraction(0)] * n
    m3 = [Fraction(0)] * n
    mass[initial] = Fraction(1)
    history = []
    for _ in range(ell + 1):
        total = sum(m * e for m, e in zip(mass, exit_weights))
        history.append(
            (
                sum(a * e for a, e in zip(m1, exit_weights)) / total,
                sum(a * e for a, e in zip(m2, exit_weights)) / total,
                sum(a * e for a, e in zip(m3, exit_weights)) / total,
            )
        )
        new_mass = [Fraction(0)] * n
        new_m1 = [Fraction(0)] * n
        new_m2 = [Fraction(0)] * n
        new_m3 = [Fraction(0)] * n
        for i in range(n):
            if not (mass[i] or m1[i] or m2[i] or m3[i]):
                continue
            for j in range(n):
                if not p0[i][j]:
                    continue
                new_mass[j] += mass[i] * p0[i][j]
                new_m1[j] += m1[i] * p0[i][j] + mass[i] * p1[i][j]
                new_m2[j] += (
                    m2[i] * p0[i][j] + 2 * m1[i] * p1[i][j] + mass[i] * p2[i][j]
                )
                new_m3[j] += (
                    m3[i] * p0[i][j]
                    + 3 * m2[i] * p1[i][j]
                    + 3 * m1[i] * p2[i][j]
                    + mass[i] * p3[i][j]
                )
        mass, m1, m2, m3 = new_mass, new_m1, new_m2, new_m3
    return history


def mean_growth(
    matrix: PolyMatrix,
    exit_weights: Sequence[Fraction],
    initial: int,
    ell: int,
    axis: int = 0,
) -> List[Fraction]:
    """Exact E[count] for lengths 0..ell."""
    return [row[0] for row in count_moments(matrix, exit_weights, initial, ell, axis)]


def marginal_pmf_float(
    matrix: PolyMatrix,
    exit_weights: Sequence[Fraction],
    initial: int,
    ell: int,
    axis: int = 0,
) -> Dict[int, float]:
    """Float marginal of one carry count, for shape checks at lengths where
    the exact bivariate DP would be wasteful (all terms non-negative)."""
    n = matrix.size
    max_inc = max(
        (mono[axis] for row in matrix.entries for entry in row for mono in entry),
        default=0,
    )
    shifts: List[np.ndarray] = [
        np.zeros((n, n)) for _ in range(max_inc + 1)
    ]
    for i in range(n):
        for j in range(n):
            for mono, coeff in matrix.entries[i][j].items():
                shifts[mono[axis]][i, j] += float(coeff)
    width = max_inc * ell + 1
    state = np.zeros((width, n))
    state[0, initial] = 1.0
    for _ in range(ell):
        nxt = np.zeros_like(state)
        for inc, table in enumerate(shifts):
            if not table.any():
                continue
            moved = state @ table
            if inc:
                nxt[inc:] += moved[:-inc]
            else:
                nxt += moved
        state = nxt
    exits = np.array([float(e) for e in exit_weights])
    pmf = state @ exits
    total = pmf.sum()
    return {k: float(v / total) for k, v in enumerate(pmf) if v > 0.0}


def clt_shape(pmf: Dict[int, Fraction]) -> Tuple[float, float]:
    """(|skewness|, Kolmogorov distance to the fitted normal)."""
    _, _, skew = pmf_moments(pmf)
    return abs(skew), kolmogorov_distance_to_normal(pmf)
