"""Iteration counts of von Neumann addition: exact finite-length analysis
and the asymptotic main terms.

The exact side runs a run-length dynamic program over the lumped
solid/dotted chain: w(ell, k) is the weight of all length-ell inputs whose
longest solid run (including the forced extra edge after stopping in a
deferred class) is at most k, i.e. the weight of t <= k + 2.  The
asymptotic side evaluates the closed-form constant delta and the periodic
fluctuation series built from the Gamma function on the imaginary axis.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Sequence, Tuple

import mpmath
import numpy as np

from .fsm import WeightedTransducer
from .matrices import build_N_ssde


@dataclass(frozen=True)
class RunLengthChain:
    """Lumped solid/dotted chain of the von Neumann run automaton."""

    q: int
    solid: Tuple[Tuple[Fraction, ...], ...]
    dotted: Tuple[Tuple[Fraction, ...], ...]
    exit_base: Tuple[Fraction, ...]
    exit_deferred: Tuple[Fraction, ...]
    initial: int
    state_classes: Tuple[str, ...]

    @property
    def size(self) -> int:
        return len(self.exit_base)


def make_chain(q: int) -> RunLengthChain:
    solid, dotted, base, deferred, initial, machine = build_N_ssde(q)
    classes = tuple(
        "{" + ", ".join(sorted(str(m) for m in label)) + "}"
        for label in machine.state_labels
    )
    return RunLengthChain(
        q,
        tuple(tuple(row) for row in solid),
        tuple(tuple(row) for row in dotted),
        tuple(base),
        tuple(deferred),
        initial,
        classes,
    )


def _w_exact(chain: RunLengthChain, ell: int, k: int) -> Fraction:
    """Exact rational w(ell, k) via the (class, current run) DP."""
    n = chain.size
    rows = k + 1
    state = [[Fraction(0)] * n for _ in range(rows)]
    state[0][chain.initial] = Fraction(1)
    for _ in range(ell):
        collapsed = [Fraction(0)] * n
        for row in state:
            for i, value in enumerate(row):
                if value:
                    collapsed[i] += value
        nxt = [[Fraction(0)] * n for _ in range(rows)]
        for j in range(n):
            acc = Fraction(0)
            for i in range(n):
                if collapsed[i]:
                    acc += collapsed[i] * chain.dotted[i][j]
            nxt[0][j] = acc
        for r in range(rows - 1):
            src = state[r]
            dst = nxt[r + 1]
            for i in range(n):
                if src[i]:
                    for j in range(n):
                        if chain.solid[i][j]:
                            dst[j] += src[i] * chain.solid[i][j]
        state = nxt
    total = Fraction(0)
    for r in range(rows):
        for i in range(n):
            if state[r][i]:
                total += state[r][i] * chain.exit_base[i]
                if r + 1 <= k:
                    total += state[r][i] * chain.exit_deferred[i]
    return total


def _w_total_exact(chain: RunLengthChain, ell: int) -> Fraction:
    """Exact w(ell) = weight of all inputs (no run cap)."""
    n = chain.size
    full = [
        [chain.solid[i][j] + chain.dotted[i][j] for j in range(n)] for i in range(n)
    ]
    vec = [Fraction(0)] * n
    vec[chain.initial] = Fraction(1)
    for _ in range(ell):
        vec = [
            sum(vec[i] * full[i][j] for i in range(n) if vec[i]) for j in range(n)
        ]
    return sum(
        vec[i] * (chain.exit_base[i] + chain.exit_deferred[i]) for i in range(n)
    )


class _FloatSweep:
    """Batched float DP: w(ell, k) for every requested k in a single pass."""

    def __init__(self, chain: RunLengthChain, ks: Sequence[int]):
        self.ks = list(ks)
        self.k_max = max(self.ks)
        n = chain.size
        self.solid = np.array([[float(v) for v in row] for row in chain.solid])
        self.dotted = np.array([[float(v) for v in row] for row in chain.dotted])
        self.base = np.array([float(v) for v in chain.exit_base])
        self.deferred = np.array([float(v) for v in chain.exit_deferred])
        # state[k_idx, r, i]: weight in class i with current solid run r
        self.state = np.zeros((len(self.ks), self.k_max + 2, n))
        self.state[:, 0, chain.initial] = 1.0
        self.row_mask = np.zeros((len(self.ks), self.k_max + 2, 1))
        for idx, k in enumerate(self.ks):
            self.row_mask[idx, : k + 1, 0] = 1.0
        self.ell = 0

    def advance(self, steps: int) -> None:
        for _ in range(steps):
            collapsed = self.state.sum(axis=1) @ self.dotted
            shifted = self.state[:, :-1] @ self.solid
            self.state[:, 1:] = shifted
            self.state[:, 0] = collapsed
            self.state *= self.row_mask  # runs beyond each cap die
            self.ell += 1

    def totals(self) -> np.ndarray:
        """w(ell, k) for each k, at the current length."""
        base_total = (self.state * self.base).sum(axis=(1, 2))
        out = np.empty(len(self.ks))
        for idx, k in enumerate(self.ks):
            deferred_total = (self.state[idx, :k] * self.deferred).sum()
            out[idx] = base_total[idx] + deferred_total
        return out


def w_ell_k(chain: RunLengthChain, ell: int, k: int, exact: bool = False):
    """Weight of all length-ell inputs with t - 2 <= k.

    Exact mode returns a Fraction and is intended for small lengths; the
    float path is accurate to roundoff (all DP terms are non-negative).
    """
    if ell < 0 or k < 0:
        raise ValueError("ell and k must be >= 0")
    if exact:
        return _w_exact(chain, ell, k)
    sweep = _FloatSweep(chain, [k])
    sweep.advance(ell)
    return float(sweep.totals()[0])


def w_total(chain: RunLengthChain, ell: int, exact: bool = False):
    """Weight of all length-ell inputs (the cap-free normalizer)."""
    if exact:
        return _w_total_exact(chain, ell)
    n = chain.size
    full = np.array(
        [
            [float(chain.solid[i][j] + chain.dotted[i][j]) for j in range(n)]
            for i in range(n)
        ]
    )
    exits = np.array(
        [float(chain.exit_base[i] + chain.exit_deferred[i]) for i in range(n)]
    )
    vec = np.zeros(n)
    vec[chain.initial] = 1.0
    for _ in range(ell):
        vec = vec @ full
    return float(vec @ exits)


def cdf_table(
    chain: RunLengthChain, ells: Sequence[int], ks: Sequence[int]
) -> Dict[int, Dict[int, float]]:
    """P(t - 2 <= k) = w(ell, k)/w(ell) for every requested ell and k."""
    ells = sorted(set(ells))
    sweep = _FloatSweep(chain, ks)
    out: Dict[int, Dict[int, float]] = {}
    previous = 0
    for ell in ells:
        sweep.advance(ell - previous)
        previous = ell
        totals = sweep.totals()
        norm = w_total(chain, ell)
        out[ell] = {k: min(totals[i] / norm, 1.0) for i, k in enumerate(sweep.ks)}
    return out


def _k_ceiling(chain: RunLengthChain, ell: int) -> int:
    # beyond log_q(ell) + 48 the deficit 1 - w(ell,k)/w(ell) is far below
    # double precision; runs longer than ell cannot occur at all
    guess = int(math.log(max(ell, 2), chain.q)) + 48
    return min(ell, guess)


def moments_from_cdf(cdf: Dict[int, float]) -> Tuple[float, float]:
    """(mean, variance) of a variable with P(X <= k) given on 0..k_max.

    The CDF must have reached 1 (to roundoff) at its largest key.
    """
    mean = 0.0
    second = 0.0
    for k, value in sorted(cdf.items()):
        deficit = 1.0 - value
        mean += deficit
        second += (2 * k + 1) * deficit
    return mean, second - mean * mean


def exact_moments_t(
    chain: RunLengthChain, ell: int, exact: bool = False
) -> Tuple[float, float]:
    """Mean and variance of max(t - 2, 0) at length ell.

    The mean is sum_k (1 - P(t-2 <= k)), the second moment uses the
    (2k+1)-weighted sum; both truncate once the CDF deficit is below
    double-precision resolution (at k = ell at the latest).
    """
    if exact:
        norm = _w_total_exact(chain, ell)
        mean = Fraction(0)
        second = Fraction(0)
        for k in range(ell + 1):
            deficit = 1 - _w_exact(chain, ell, k) / norm
            mean += deficit
            second += (2 * k + 1) * deficit
        variance = second - mean * mean
        return float(mean), float(variance)
    ks = list(range(_k_ceiling(chain, ell) + 1))
    return moments_from_cdf(cdf_table(chain, [ell], ks)[ell])


# --- asymptotic main terms ----------------------------------------------------


def delta_printed(q: int) -> Fraction:
    """The closed-form constant delta at numeric q."""
    numerator = (q - 1) * (
        4 * q**10
        + 10 * q**9
        + 18 * q**8
        - 4 * q**7
        - 10 * q**6
        + 7 * q**5
        + 44 * q**4
        - 29 * q**3
        - 8 * q**2
        - 20 * q
        + 16
    )
    denominator = (
        4 * q**3 * (q + 1) ** 2 * (4 * q**7 - q**5 - 6 * q**4 + 8 * q**3 + 2 * q - 4)
    )
    return Fraction(numerator, denominator)


def _s0_at_one(q: int) -> Fraction:
    # s0(z) evaluated at z = 1
    tail = 2 * q - 4 + 8 * q**3 - q**5 - 6 * q**4 + 4 * q**7
    return Fraction(4 * q**7 * (q + 1) * (q + 2) ** 2 * (1 + q) * (1 - q**2) * tail)


def _s1_at_one(q: int) -> Fraction:
    # s1(z) evaluated at z = 1; the bracket collects the printed coefficients
    bracket = (
        4 * q**12
        + 2 * q**11
        + 2 * q**10
        - 30 * q**9
        + 16 * q**8
        + 23 * q**7
        + 20 * q**6
        - 110 * q**5
        + 94 * q**4
        - 33 * q**3
        + 48 * q**2
        - 52 * q
        + 16
    )
    return Fraction(-(q + 1) * (q + 2) ** 2 * q**4 * bracket)


def delta_from_s_polynomials(q: int) -> Fraction:
    """delta = s1(1)/s0(1), the second route to the same constant."""
    return _s1_at_one(q) / _s0_at_one(q)


@dataclass(frozen=True)
class NeumannAsymptotics:
    """Constants of the logarithmic main terms for one base."""

    q: int
    delta: Fraction
    psi0_coefficients: Tuple[complex, ...]  # Gamma(-2k pi i / log q), k = 1..K
    psi1_coefficients: Tuple[complex, ...]  # Gamma'(-2k pi i / log q)

    @property
    def harmonics(self) -> int:
        return len(self.psi0_coefficients)


def make_asymptotics(q: int, harmonics: int = 10) -> NeumannAsymptotics:
    delta = delta_printed(q)
    cross = delta_from_s_polynomials(q)
    if delta != cross:
        raise AssertionError(
            f"delta mismatch at q={q}: printed {delta} vs s1(1)/s0(1) {cross}"
        )
    log_q = mpmath.log(q)
    psi0 = []
    psi1 = []
    for k in range(1, harmonics + 1):
        argument = -2j * k * mpmath.pi / log_q
        gamma = mpmath.gamma(argument)
        digamma = mpmath.digamma(argument)
        psi0.append(complex(gamma))
        psi1.append(complex(gamma * digamma))  # Gamma' = Gamma * psi
    return NeumannAsymptotics(q, delta, tuple(psi0), tuple(psi1))


def psi0(asym: NeumannAsymptotics, x: float) -> float:
    """Mean-zero 1-periodic fluctuation in the expectation."""
    log_q = math.log(asym.q)
    total = 0.0
    for k, coeff in enumerate(asym.psi0_coefficients, start=1):
        total += (coeff * cmath.exp(2j * k * math.pi * x)).real
    return -2.0 * total / log_q


def psi1(asym: NeumannAsymptotics, x: float) -> float:
    """Mean-zero 1-periodic fluctuation in the variance."""
    log_q = math.log(asym.q)
    total = 0.0
    for k, coeff in enumerate(asym.psi1_coefficients, start=1):
        total += (coeff * cmath.exp(2j * k * math.pi * x)).real
    return 4.0 * total / log_q**2


EULER_GAMMA = 0.5772156649015328606


def asymptotic_expectation(asym: NeumannAsymptotics, ell: int) -> float:
    """Main term for E[t] itself (hence the +5/2)."""
    log_q = math.log(asym.q)
    x = math.log(ell) / log_q + math.log(float(asym.delta)) / log_q
    return x + EULER_GAMMA / log_q + 2.5 + psi0(asym, x)


def asymptotic_variance(asym: NeumannAsymptotics, ell: int) -> float:
    log_q = math.log(asym.q)
    x = math.log(ell) / log_q + math.log(float(asym.delta)) / log_q
    p0 = psi0(asym, x)
    return (
        math.pi**2 / (6 * log_q**2)
        + 1.0 / 12.0
        + psi1(asym, x)
        - 2 * EULER_GAMMA / log_q * p0
        - p0 * p0
    )


def distribution_check(
    chain: RunLengthChain, asym: NeumannAsymptotics, ell: int, k: int
) -> Tuple[float, float]:
    """(exact P(t <= k), predicted exp(-delta ell / q^(k-2))).

    The theorem's k counts t, the DP's counts t - 2; both sides here are
    stated in the theorem's convention.
    """
    j = k - 2
    if j < 0:
        raise ValueError("k must be at least 2")
    exact = (
        w_ell_k(chain, ell, j) / w_total(chain, ell)
        if j < ell
        else 1.0
    )
    predicted = math.exp(-float(asym.delta) * ell / asym.q ** j)
    return min(exact, 1.0), predicted
