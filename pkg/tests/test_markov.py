from fractions import Fraction

import pytest

from carrylab.fsm import Transition, WeightedTransducer
from carrylab.markov import (
    count_words,
    recognizer_automaton,
    sample_word,
    shannon_parry,
    weighted_automaton,
    word_weight,
)
from carrylab.numbersys import enumerate_words, is_valid, qd, ssde


@pytest.mark.parametrize("q", [2, 4, 6, 8])
def test_transition_probabilities_ssde(q):
    pw = shannon_parry(recognizer_automaton(ssde(q)))
    assert pw.eigenvalue == q
    idx = {-1: 0, 0: 1, 1: 2}
    assert pw.probability(idx[-1], idx[0]) == Fraction(2, q)
    assert pw.probability(idx[1], idx[0]) == Fraction(2, q)
    assert pw.probability(idx[0], idx[1]) == Fraction(1, 2 * q)
    assert pw.probability(idx[0], idx[-1]) == Fraction(1, 2 * q)
    assert pw.probability(idx[0], idx[0]) == Fraction(1, q)


@pytest.mark.parametrize("q", [2, 4, 6, 8])
def test_exit_weights_and_stationary_ssde(q):
    pw = shannon_parry(recognizer_automaton(ssde(q)))
    factor = Fraction(q + 1, q + 2)
    assert pw.exit_weights == (2 * factor, factor, 2 * factor)
    boundary = Fraction(1, 2 * (q + 1))
    assert pw.stationary == (boundary, Fraction(q, q + 1), boundary)
    assert sum(pw.stationary) == 1


def test_stationary_is_fixed_point():
    for system in (ssde(2), ssde(6), qd(10, 0)):
        pw = shannon_parry(recognizer_automaton(system))
        n = pw.automaton.n_states
        flow = [Fraction(0)] * n
        for t in pw.automaton.transitions:
            flow[t.dst] += pw.stationary[t.src] * pw.probability(t.src, t.dst)
        assert flow == list(pw.stationary)


def test_qd_single_state_weights():
    pw = shannon_parry(recognizer_automaton(qd(10, -1)))
    assert pw.eigenvalue == 10
    assert pw.exit_weights == (Fraction(1),)
    assert pw.probability(0, 0) == Fraction(1, 10)
    assert pw.stationary == (Fraction(1),)


def test_row_stochasticity_exact():
    for system in (ssde(2), ssde(8), qd(7, -3)):
        machine = weighted_automaton(system)
        sums = {}
        for t in machine.transitions:
            sums[t.src] = sums.get(t.src, Fraction(0)) + t.weight
        assert all(value == 1 for value in sums.values())


def test_shannon_parry_rejects_periodic():
    two_cycle = WeightedTransducer(
        ("a", "b"),
        0,
        frozenset({0, 1}),
        (Transition(0, 1, 0), Transition(1, 0, 1)),
    )
    with pytest.raises(ValueError):
        shannon_parry(two_cycle)


def test_word_weight_telescopes():
    pw = shannon_parry(recognizer_automaton(ssde(2)))
    # every accepted word of length n has weight 1/(lambda^n <u, e_F>)
    final_mass = pw.final_mass()
    assert word_weight(pw, ()) == 1 / final_mass
    assert word_weight(pw, (0,)) == Fraction(1, 2) / final_mass
    for length in range(0, 7):
        expected = Fraction(1) / (pw.eigenvalue**length * final_mass)
        for word in enumerate_words(ssde(2), length):
            assert word_weight(pw, word) == expected


def test_word_weight_rejects_bad_words():
    pw = shannon_parry(recognizer_automaton(ssde(2)))
    with pytest.raises(ValueError):
        word_weight(pw, (1, 1))


def test_total_weight_close_to_one():
    # |L_n| * W_n = 1 + O(xi^n); for ssde the error is exactly (-1/q)^n-ish
    for q in (2, 4):
        system = ssde(q)
        machine = recognizer_automaton(system)
        pw = shannon_parry(machine)
        errors = []
        for length in range(1, 13):
            total = count_words(machine, length) * Fraction(1) / (
                pw.eigenvalue**length * pw.final_mass()
            )
            errors.append(abs(total - 1))
        for early, late in zip(errors, errors[1:]):
            ratio = float(late / early)
            assert 1 / (2 * q) <= ratio <= 2 / q  # decay rate 1/q within factor 2


def test_count_words_values():
    machine = recognizer_automaton(ssde(2))
    assert [count_words(machine, n) for n in range(5)] == [1, 3, 5, 11, 21]
    machine = recognizer_automaton(ssde(4))
    assert count_words(machine, 3) == 77  # brute-force enumeration agrees
    machine = recognizer_automaton(qd(10, 0))
    assert count_words(machine, 4) == 10**4


def test_sample_word_reproducible_and_valid():
    pw = shannon_parry(recognizer_automaton(ssde(4)))
    first = sample_word(pw, 50, rng_seed=123)
    second = sample_word(pw, 50, rng_seed=123)
    assert first == second
    assert sample_word(pw, 0, rng_seed=5) == ()
    assert is_valid(ssde(4), list(first))
    assert sample_word(pw, 50, rng_seed=124) != first


def test_sampled_digit_frequencies():
    # 0-digit frequency (q+2)/(q(q+1)), +-q/2 frequency 1/(2(q+1))
    q = 2
    pw = shannon_parry(recognizer_automaton(ssde(q)))
    counts = {0: 0, 1: 0, -1: 0}
    total = 0
    for seed in range(200):
        word = sample_word(pw, 500, rng_seed=seed)
        for digit in word:
            counts[digit] += 1
            total += 1
    freq0 = counts[0] / total
    expected0 = (q + 2) / (q * (q + 1))
    sigma = (expected0 * (1 - expected0) / total) ** 0.5
    assert abs(freq0 - expected0) < 4 * sigma + 1e-4
    assert abs(counts[1] / total - 1 / 6) < 0.01
    assert abs(counts[-1] / total - 1 / 6) < 0.01
