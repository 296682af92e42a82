"""Vectorized Monte Carlo over random expansion pairs.

Words are sampled from the equidistribution Markov chain (exit weights
ignored; the bias is exponentially small in the length), then pushed
through batch versions of the adders.  Trials are split into fixed-size
chunks with counter-based per-chunk streams, so results are byte-identical
for a given seed regardless of the worker count or scheduling.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Dict, List, Tuple

import numpy as np

from .numbersys import DigitSystem

CHUNK_TRIALS = 512


def _chunk_rng(seed: int, chunk: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(key=[seed, chunk]))


def sample_words_qd(
    system: DigitSystem, ell: int, trials: int, rng: np.random.Generator
) -> np.ndarray:
    return rng.integers(system.digit_min, system.digit_max + 1, size=(trials, ell))


def sample_words_ssde(
    system: DigitSystem, ell: int, trials: int, rng: np.random.Generator
) -> np.ndarray:
    """Markov-chain sampling of valid words, vectorized over trials.

    State encoding: 0 = interior digit (or start), +1/-1 = the previous
    digit was the boundary +-q/2.
    """
    q = system.q
    half = q // 2
    words = np.empty((trials, ell), dtype=np.int64)
    state = np.zeros(trials, dtype=np.int64)
    uniforms = rng.random((trials, ell))
    for j in range(ell):
        u = uniforms[:, j]
        digit = np.empty(trials, dtype=np.int64)
        at_zero = state == 0
        # from the interior state: each interior digit has mass 2/(2q), the
        # two boundary digits 1/(2q); draw one of 2q equal slots
        idx = np.minimum((u[at_zero] * (2 * q)).astype(np.int64), 2 * q - 1)
        interior = -half + 1 + (idx - 1) // 2
        digit[at_zero] = np.where(
            idx == 0, -half, np.where(idx == 2 * q - 1, half, interior)
        )
        # from a boundary state: q/2 legal digits, uniform with mass 2/q
        plus = state == 1
        digit[plus] = (u[plus] * half).astype(np.int64).clip(0, half - 1)
        minus = state == -1
        digit[minus] = -((u[minus] * half).astype(np.int64).clip(0, half - 1))
        words[:, j] = digit
        state = np.where(digit == half, 1, np.where(digit == -half, -1, 0))
    return words


def sample_words(
    system: DigitSystem, ell: int, trials: int, rng: np.random.Generator
) -> np.ndarray:
    if system.kind == "qd":
        return sample_words_qd(system, ell, trials, rng)
    return sample_words_ssde(system, ell, trials, rng)


def batch_carry_counts(
    system: DigitSystem, s: np.ndarray
) -> Tuple[np.ndarray, np.ndarray]:
    """(pos, neg) carry counts of standard addition, one pair per row of s."""
    trials, ell = s.shape
    q = system.q
    carry = np.zeros(trials, dtype=np.int64)
    pos = np.zeros(trials, dtype=np.int64)
    neg = np.zeros(trials, dtype=np.int64)
    if system.kind == "qd":
        d = system.d
        for j in range(ell + 1):
            a = (s[:, j] if j < ell else 0) + carry
            carry = np.where(a >= q + d, 1, np.where(a <= d - 1, -1, 0))
            if j < ell:
                pos += carry == 1
                neg += carry == -1
    else:
        half = q // 2
        zeros = np.zeros(trials, dtype=np.int64)
        for j in range(ell + 1):
            a = (s[:, j] if j < ell else zeros) + carry
            nxt = s[:, j + 1] if j + 1 < ell else zeros
            up = (a > half) | (
                (a == half) & (((-half <= nxt) & (nxt < 0)) | ((half <= nxt) & (nxt < q)))
            )
            down = (a < -half) | (
                (a == -half) & (((-q < nxt) & (nxt <= -half)) | ((0 < nxt) & (nxt <= half)))
            )
            carry = np.where(up, 1, np.where(down, -1, 0))
            if j < ell:
                pos += carry == 1
                neg += carry == -1
    return pos, neg


def batch_neumann_iterations(system: DigitSystem, x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Iteration counts t for each row pair of x and y."""
    trials, ell = x.shape
    q = system.q
    width = ell + 8  # carries creep left at most one position per round
    z = np.zeros((trials, width), dtype=np.int64)
    c = np.zeros((trials, width), dtype=np.int64)
    z[:, :ell] = x
    c[:, :ell] = y
    t = np.zeros(trials, dtype=np.int64)
    active = np.any(c != 0, axis=1)
    rounds = 0
    cap = 4 * ell + 16
    while np.any(active):
        rounds += 1
        if rounds > cap:
            raise RuntimeError("von Neumann batch did not settle")
        if np.any(z[:, -2:] != 0) or np.any(c[:, -2:] != 0):
            grow = np.zeros((trials, 8), dtype=np.int64)
            z = np.concatenate([z, grow], axis=1)
            c = np.concatenate([c, grow], axis=1)
        s = z[active] + c[active]
        if system.kind == "qd":
            d = system.d
            new_c = np.where(s >= q + d, 1, np.where(s <= d - 1, -1, 0))
        else:
            half = q // 2
            nxt = np.concatenate([s[:, 1:], np.zeros((s.shape[0], 1), dtype=np.int64)], axis=1)
            sign = np.where(s > 0, 1, -1)
            trigger = (np.abs(s) > half) | (
                (np.abs(s) == half) & (((sign * nxt) % q) >= half)
            )
            new_c = np.where(trigger, sign, 0)
        new_z = s - new_c * q
        shifted = np.zeros_like(new_c)
        shifted[:, 1:] = new_c[:, :-1]
        assert not np.any(new_c[:, -1]), "buffer growth keeps the top column free"
        z[active] = new_z
        c[active] = shifted
        t[active] += 1
        still = np.any(shifted != 0, axis=1)
        indices = np.flatnonzero(active)
        active[indices[~still]] = False
    return t


@dataclass(frozen=True)
class CarryStats:
    """Aggregated empirical statistics of one simulation run."""

    trials: int
    ell: int
    mean_pos: float
    mean_neg: float
    var_pos: float
    var_neg: float
    cov: float


def _carry_chunk(args) -> Tuple[int, np.ndarray, np.ndarray]:
    system, ell, trials, seed, chunk = args
    rng = _chunk_rng(seed, chunk)
    x = sample_words(system, ell, trials, rng)
    y = sample_words(system, ell, trials, rng)
    pos, neg = batch_carry_counts(system, x + y)
    return chunk, pos, neg


def _neumann_chunk(args) -> Tuple[int, np.ndarray]:
    system, ell, trials, seed, chunk = args
    rng = _chunk_rng(seed, chunk)
    x = sample_words(system, ell, trials, rng)
    y = sample_words(system, ell, trials, rng)
    return chunk, batch_neumann_iterations(system, x, y)


def _run_chunks(worker, system, ell, trials, seed, workers):
    sizes = [CHUNK_TRIALS] * (trials // CHUNK_TRIALS)
    if trials % CHUNK_TRIALS:
        sizes.append(trials % CHUNK_TRIALS)
    jobs = [(system, ell, size, seed, chunk) for chunk, size in enumerate(sizes)]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(worker, jobs))
    else:
        results = [worker(job) for job in jobs]
    results.sort(key=lambda item: item[0])
    return results


def simulate_carries(
    system: DigitSystem, ell: int, trials: int, seed: int, workers: int = 1
) -> CarryStats:
    """Empirical joint statistics of the carry counts (M, N)."""
    results = _run_chunks(_carry_chunk, system, ell, trials, seed, workers)
    pos = np.concatenate([r[1] for r in results])
    neg = np.concatenate([r[2] for r in results])
    return CarryStats(
        trials,
        ell,
        float(pos.mean()),
        float(neg.mean()),
        float(pos.var(ddof=1)),
        float(neg.var(ddof=1)),
        float(np.cov(pos, neg, ddof=1)[0, 1]),
    )


def simulate_neumann(
    system: DigitSystem, ell: int, trials: int, seed: int, workers: int = 1
) -> Dict[int, int]:
    """Histogram of von Neumann iteration counts over random pairs."""
    results = _run_chunks(_neumann_chunk, system, ell, trials, seed, workers)
    t = np.concatenate([r[1] for r in results])
    values, counts = np.unique(t, return_counts=True)
    return {int(v): int(c) for v, c in zip(values, counts)}
