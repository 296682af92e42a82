"""Brute-force ground truth over exhaustively enumerated expansion pairs.

Every distribution the analytic pipeline produces is recomputed here from
first principles: enumerate all digit strings of the given length, weigh
each pair by the equidistribution model, and run the actual adders.  The
analytic tests assert exact rational agreement with these numbers.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, List, Tuple

from .addition import neumann_add, standard_add_qd, standard_add_ssde
from .markov import recognizer_automaton, shannon_parry, word_weight
from .numbersys import DigitSystem, Expansion, enumerate_words

PAIR_LIMIT = 4_000_000


def _weighted_words(system: DigitSystem, ell: int) -> List[Tuple[Tuple[int, ...], Fraction]]:
    pw = shannon_parry(recognizer_automaton(system))
    words = list(enumerate_words(system, ell))
    if len(words) ** 2 > PAIR_LIMIT:
        raise ValueError(f"{len(words)}^2 pairs exceed the enumeration guard")
    return [(word, word_weight(pw, word)) for word in words]


def carry_distribution_bruteforce(
    system: DigitSystem, ell: int
) -> Dict[Tuple[int, int], Fraction]:
    """Joint measure of (+1, -1) carry counts over all weighted pairs."""
    weighted = _weighted_words(system, ell)
    out: Dict[Tuple[int, int], Fraction] = {}
    q, d = system.q, system.d
    for xs, wx in weighted:
        for ys, wy in weighted:
            s = [a + b for a, b in zip(xs, ys)]
            if system.kind == "qd":
                trace = standard_add_qd(s, q, d)
            else:
                trace = standard_add_ssde(s, q)
            key = (trace.pos_count, trace.neg_count)
            out[key] = out.get(key, Fraction(0)) + wx * wy
    return out


def neumann_distribution_bruteforce(
    system: DigitSystem, ell: int
) -> Dict[int, Fraction]:
    """Measure of the iteration count t over all weighted pairs."""
    weighted = _weighted_words(system, ell)
    out: Dict[int, Fraction] = {}
    for xs, wx in weighted:
        x = Expansion(system, xs)
        for ys, wy in weighted:
            t = neumann_add(x, Expansion(system, ys)).iterations
            out[t] = out.get(t, Fraction(0)) + wx * wy
    return out
