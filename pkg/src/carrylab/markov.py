"""Transition probabilities that equidistribute the words of a regular language.

Given a primitive recognizer automaton with dominant eigenvalue lambda and
positive right/left eigenvectors w (normalized to 1 at the initial state)
and u (normalized against w), the transition i -> j receives probability
w_j / (w_i lambda) and state s the exit weight 1 / (w_s <u, e_F>).  Every
accepted word of length L then carries the same weight, which deviates
from 1/|L_ell| only by an exponentially small factor.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .fsm import Transition, WeightedTransducer, adjacency_and_checks
from .numbersys import DigitSystem


def recognizer_automaton(system: DigitSystem) -> WeightedTransducer:
    """Unweighted automaton accepting exactly the system's digit strings."""
    if system.kind == "qd":
        transitions = tuple(
            Transition(0, 0, digit)
            for digit in range(system.digit_min, system.digit_max + 1)
        )
        return WeightedTransducer(("0",), 0, frozenset({0}), transitions)
    half = system.q // 2
    # states ordered by label -1, 0, 1; the middle state is initial
    idx = {-1: 0, 0: 1, 1: 2}
    transitions = []
    for digit in range(-half, half + 1):
        if digit == half:
            transitions.append(Transition(idx[0], idx[1], digit))
        elif digit == -half:
            transitions.append(Transition(idx[0], idx[-1], digit))
        else:
            transitions.append(Transition(idx[0], idx[0], digit))
    for digit in range(0, half):
        transitions.append(Transition(idx[1], idx[0], digit))
    for digit in range(-half + 1, 1):
        transitions.append(Transition(idx[-1], idx[0], digit))
    return WeightedTransducer(
        (-1, 0, 1), idx[0], frozenset({0, 1, 2}), tuple(transitions)
    )


@dataclass(frozen=True)
class ParryWeights:
    automaton: WeightedTransducer
    eigenvalue: Fraction
    right: Tuple[Fraction, ...]  # w, with w[initial] = 1
    left: Tuple[Fraction, ...]  # u, with <u, w> = 1
    exit_weights: Tuple[Fraction, ...]
    stationary: Tuple[Fraction, ...]
    spectral_ratio: float  # |second eigenvalue| / lambda, informational
    exact: bool = True

    def probability(self, src: int, dst: int) -> Fraction:
        return self.right[dst] / (self.right[src] * self.eigenvalue)

    def final_mass(self) -> Fraction:
        return sum(
            (self.left[i] for i in sorted(self.automaton.finals)), Fraction(0)
        )


def _adjacency_matrix(m: WeightedTransducer) -> List[List[int]]:
    counts = [[0] * m.n_states for _ in range(m.n_states)]
    for t in m.transitions:
        counts[t.src][t.dst] += 1
    return counts


def _rational_nullvector(matrix: List[List[Fraction]]) -> Optional[List[Fraction]]:
    """A nonzero kernel vector of the square matrix, or None if regular."""
    n = len(matrix)
    a = [row[:] for row in matrix]
    pivot_cols: List[int] = []
    row = 0
    for col in range(n):
        pivot = next((r for r in range(row, n) if a[r][col] != 0), None)
        if pivot is None:
            continue
        a[row], a[pivot] = a[pivot], a[row]
        inv = a[row][col]
        a[row] = [value / inv for value in a[row]]
        for r in range(n):
            if r != row and a[r][col] != 0:
                factor = a[r][col]
                a[r] = [x - factor * y for x, y in zip(a[r], a[row])]
        pivot_cols.append(col)
        row += 1
        if row == n:
            break
    free = [col for col in range(n) if col not in pivot_cols]
    if not free:
        return None
    col = free[0]
    vec = [Fraction(0)] * n
    vec[col] = Fraction(1)
    for r, pivot_col in enumerate(pivot_cols):
        vec[pivot_col] = -a[r][col]
    return vec


def _power_iteration(
    a: np.ndarray, tol: float = 1e-14, max_iter: int = 100_000
) -> Tuple[float, np.ndarray]:
    n = a.shape[0]
    vec = np.full(n, 1.0 / n)
    value = 0.0
    for _ in range(max_iter):
        nxt = a @ vec
        norm = np.linalg.norm(nxt)
        if norm == 0.0:  # operator annihilates the iterate (e.g. nilpotent rest)
            return 0.0, vec
        nxt_value = float(nxt @ vec) / float(vec @ vec)
        nxt /= norm
        if abs(nxt_value - value) < tol * max(1.0, abs(nxt_value)):
            vec = nxt
            value = nxt_value
            break
        vec, value = nxt, nxt_value
    return value, np.abs(vec)


def _spectral_ratio(a: np.ndarray, value: float, right: np.ndarray, left: np.ndarray) -> float:
    # power iteration on the operator deflated by the dominant pair
    n = a.shape[0]
    left = left / (left @ right)
    deflated = a - value * np.outer(right, left)
    second, _ = _power_iteration(deflated)
    if value == 0:
        return 0.0
    return abs(second) / value


def shannon_parry(m: WeightedTransducer) -> ParryWeights:
    """Eigen-data and derived weights for a primitive recognizer automaton."""
    counts, connected, aperiodic = adjacency_and_checks(m)
    if not (connected and aperiodic):
        raise ValueError("automaton must be strongly connected and aperiodic")
    if not m.finals:
        raise ValueError("automaton needs at least one final state")
    n = m.n_states
    a_frac = [[Fraction(value) for value in row] for row in counts]
    a_float = np.array(counts, dtype=float)

    eigenvalue: Optional[Fraction] = None
    right: Optional[List[Fraction]] = None
    max_row_sum = max(sum(row) for row in counts)
    for candidate in range(1, max_row_sum + 1):
        shifted = [
            [a_frac[i][j] - (candidate if i == j else 0) for j in range(n)]
            for i in range(n)
        ]
        vec = _rational_nullvector(shifted)
        if vec is None:
            continue
        if all(v > 0 for v in vec) or all(v < 0 for v in vec):
            eigenvalue = Fraction(candidate)
            right = [abs(v) for v in vec]
            break

    exact = eigenvalue is not None
    if exact:
        transposed = [
            [a_frac[j][i] - (eigenvalue if i == j else 0) for j in range(n)]
            for i in range(n)
        ]
        left = _rational_nullvector(transposed)
        assert left is not None
        left = [abs(v) for v in left]
    else:
        value, r = _power_iteration(a_float)
        _, l = _power_iteration(a_float.T)
        residual = np.linalg.norm(a_float @ r - value * r)
        if residual > 1e-12 * max(1.0, value):
            raise ValueError(f"power iteration failed to certify: residual {residual}")
        eigenvalue = Fraction(value).limit_denominator(10**12)
        right = [Fraction(x).limit_denominator(10**12) for x in r]
        left = [Fraction(x).limit_denominator(10**12) for x in l]

    scale_r = right[m.initial]
    right = [v / scale_r for v in right]
    inner = sum(u * w for u, w in zip(left, right))
    left = [u / inner for u in left]

    final_mass = sum((left[i] for i in sorted(m.finals)), Fraction(0))
    exits = tuple(Fraction(1) / (right[i] * final_mass) for i in range(n))
    stationary = tuple(left[i] * right[i] for i in range(n))

    value_f = float(eigenvalue)
    r_f = np.array([float(v) for v in right])
    l_f = np.array([float(v) for v in left])
    ratio = _spectral_ratio(a_float, value_f, r_f / np.linalg.norm(r_f), l_f)

    return ParryWeights(
        m, eigenvalue, tuple(right), tuple(left), exits, stationary, ratio, exact
    )


def weighted_automaton(system: DigitSystem) -> WeightedTransducer:
    """The recognizer automaton equipped with its equidistribution weights."""
    base = recognizer_automaton(system)
    pw = shannon_parry(base)
    transitions = tuple(
        Transition(t.src, t.dst, t.label, t.output, pw.probability(t.src, t.dst))
        for t in base.transitions
    )
    return WeightedTransducer(
        base.state_labels, base.initial, base.finals, transitions, pw.exit_weights
    )


def word_weight(pw: ParryWeights, word: Sequence[int]) -> Fraction:
    """Exact weight W_len(word) under the equidistribution model."""
    m = pw.automaton
    step: Dict[Tuple[int, int], int] = {}
    for t in m.transitions:
        step[(t.src, t.label)] = t.dst
    state = m.initial
    weight = Fraction(1)
    for digit in word:
        nxt = step.get((state, digit))
        if nxt is None:
            raise ValueError(f"word rejected at digit {digit}")
        weight *= pw.probability(state, nxt)
        state = nxt
    if state not in m.finals:
        raise ValueError("word ends in a non-final state")
    return weight * pw.exit_weights[state]


def count_words(m: WeightedTransducer, length: int) -> int:
    """Exact number of accepted words of the given length."""
    counts = _adjacency_matrix(m)
    vec = [1 if i in m.finals else 0 for i in range(m.n_states)]
    for _ in range(length):
        vec = [sum(row[j] * vec[j] for j in range(m.n_states)) for row in counts]
    return vec[m.initial]


def sample_word(pw: ParryWeights, length: int, rng_seed: int) -> Tuple[int, ...]:
    """Random walk of the Markov chain (exit weights ignored), reproducible."""
    rng = np.random.Generator(np.random.Philox(key=rng_seed))
    m = pw.automaton
    outgoing: Dict[int, List[Transition]] = {}
    for t in m.transitions:
        outgoing.setdefault(t.src, []).append(t)
    cumulative: Dict[int, Tuple[np.ndarray, List[Transition]]] = {}
    for state, ts in outgoing.items():
        probs = np.array([float(pw.probability(t.src, t.dst)) for t in ts])
        cumulative[state] = (np.cumsum(probs), ts)
    state = m.initial
    word = []
    draws = rng.random(length)
    for u in draws:
        cum, ts = cumulative[state]
        pick = int(np.searchsorted(cum, u * cum[-1], side="right"))
        pick = min(pick, len(ts) - 1)
        word.append(ts[pick].label)
        state = ts[pick].dst
    return tuple(word)
