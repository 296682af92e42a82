import random
from itertools import product

import pytest

from carrylab.addition import (
    longest_solid_run,
    neumann_add,
    neumann_step,
    standard_add,
    standard_add_qd,
    standard_add_ssde,
    ssde_run_edges,
)
from carrylab.numbersys import Expansion, decode, encode, enumerate_words, is_valid, qd, ssde


def test_standard_add_qd_worked_example():
    # adding (1 2 3 -1) and (1 2 1 -1) in base 5 with offset -1
    trace = standard_add_qd([-2, 4, 4, 2], 5, -1)
    assert trace.carries == (-1, 0, 1, 0)
    assert trace.result.msb_first() == [3, -1, 3, 3]
    assert trace.pos_count == 1 and trace.neg_count == 1


def test_standard_add_qd_zero_and_decimal():
    trace = standard_add_qd([0, 0, 0], 7, -2)
    assert trace.result.digits == () and all(c == 0 for c in trace.carries)
    trace = standard_add_qd([12, 9], 10, 0)
    assert trace.carries == (1, 1)
    assert trace.result.msb_first() == [1, 0, 2]
    assert decode(trace.result) == 102


def test_standard_add_qd_range_check():
    with pytest.raises(ValueError):
        standard_add_qd([19], 10, 0)
    with pytest.raises(ValueError):
        standard_add_qd([-1], 10, 0)


def test_standard_add_ssde_worked_example():
    trace = standard_add_ssde([4, 1, -2, 2], 4)
    assert trace.carries == (1, 1, 0, 0)
    assert trace.result.msb_first() == [2, -1, -2, 0]
    assert decode(trace.result) == 104


def test_standard_add_ssde_zero_and_naf():
    trace = standard_add_ssde([0, 0], 6)
    assert trace.result.digits == () and trace.pos_count == trace.neg_count == 0
    # NAF 1 + NAF 10
    trace = standard_add_ssde([1, 1], 2)
    assert decode(trace.result) == 3
    assert trace.result.msb_first() == [1, 0, -1]
    with pytest.raises(ValueError):
        standard_add_ssde([3], 2)


def _random_expansion(system, length, rng):
    words = None
    digits = []
    # draw by rejection from the recognizer's digit ranges
    while True:
        digits = [rng.randint(system.digit_min, system.digit_max) for _ in range(length)]
        if is_valid(system, digits):
            return Expansion(system, tuple(digits))


@pytest.mark.parametrize(
    "system", [qd(10, 0), qd(5, -1), qd(10, -9), ssde(2), ssde(4), ssde(6)]
)
def test_value_preservation_and_validity_random(system):
    rng = random.Random(hash(system.spec_string()) & 0xFFFF)
    for _ in range(300):
        length = rng.randint(0, 12)
        x = _random_expansion(system, length, rng)
        y = _random_expansion(system, length, rng)
        trace = standard_add(x, y)
        assert decode(trace.result) == decode(x) + decode(y)
        assert is_valid(system, trace.result.digits)
        assert trace.pos_count + trace.neg_count <= len(trace.carries)


def test_recurrence_invariant_holds():
    # s_j + c_j = z_j + q c_{j+1} at every position, c_0 = 0
    rng = random.Random(5)
    for system in (qd(7, -3), ssde(4)):
        for _ in range(50):
            x = _random_expansion(system, 6, rng)
            y = _random_expansion(system, 6, rng)
            trace = standard_add(x, y)
            s = list(trace.digitwise_sum)
            z = list(trace.result.digits) + [0] * 8
            carries = [0] + list(trace.carries) + [0]
            for j in range(len(s)):
                assert s[j] + carries[j] == z[j] + system.q * carries[j + 1]


def test_exhaustive_small_ssde_pairs():
    for q in (2, 4):
        system = ssde(q)
        words = list(enumerate_words(system, 3))
        for xs in words:
            for ys in words:
                trace = standard_add_ssde([a + b for a, b in zip(xs, ys)], q)
                expected = decode(Expansion(system, xs)) + decode(Expansion(system, ys))
                assert decode(trace.result) == expected
                assert is_valid(system, trace.result.digits)


def test_carry_symmetry_under_negation():
    rng = random.Random(11)
    for q in (2, 4, 6):
        for _ in range(100):
            x = _random_expansion(ssde(q), 8, rng)
            y = _random_expansion(ssde(q), 8, rng)
            s = [a + b for a, b in zip(x.digits, y.digits)]
            plus = standard_add_ssde(s, q)
            minus = standard_add_ssde([-v for v in s], q)
            assert minus.carries == tuple(-c for c in plus.carries)
            assert minus.result.digits == tuple(-d for d in plus.result.digits)


def test_swap_invariance():
    # exchanging x_i and y_i leaves the digitwise sum, hence the trace, alone
    x = encode(314, ssde(4))
    y = encode(266, ssde(4))
    n = max(len(x), len(y))
    xs = list(x.digits) + [0] * (n - len(x))
    ys = list(y.digits) + [0] * (n - len(y))
    base = standard_add(x, y)
    swapped_x = Expansion(ssde(4), tuple(ys))
    swapped_y = Expansion(ssde(4), tuple(xs))
    other = standard_add(swapped_x, swapped_y)
    assert base.carries == other.carries
    assert base.result == other.result


def test_neumann_step_table4_row():
    z, c = neumann_step([-4, -2, 1, 1, 2], ssde(4))
    assert z == [0, 2, 1, 1, 2]
    assert c == [0, -1, -1, 0, 0, 0]


def test_neumann_step_fixed_point():
    for system in (ssde(4), qd(10, 0)):
        word = encode(1234, system)
        z, c = neumann_step(list(word.digits), system)
        assert z == list(word.digits)
        assert all(v == 0 for v in c)


def test_neumann_step_decimal_first_round():
    z, c = neumann_step([12, 9, 4, 13], qd(10, 0))
    assert z == [2, 9, 4, 3]
    assert c == [0, 1, 0, 0, 1]


def test_neumann_add_worked_examples():
    x = Expansion(ssde(4), (-2, -1, 0, 1, 1))
    y = Expansion(ssde(4), (-2, -1, 1, 0, 1))
    trace = neumann_add(x, y)
    assert trace.iterations == 2
    assert decode(trace.result) == 580
    x = encode(5377, qd(10, 0))
    y = encode(8125, qd(10, 0))
    trace = neumann_add(x, y)
    assert trace.iterations == 3
    assert decode(trace.result) == 13502


def test_neumann_add_zero_second_summand():
    for system in (ssde(2), qd(10, 0)):
        x = encode(97, system)
        trace = neumann_add(x, encode(0, system))
        assert trace.iterations == 0
        assert decode(trace.result) == 97


def test_neumann_add_random_correctness():
    rng = random.Random(23)
    for system in (ssde(2), ssde(4), ssde(6), qd(10, 0), qd(5, -1)):
        for _ in range(150):
            x = _random_expansion(system, rng.randint(1, 10), rng)
            y = _random_expansion(system, rng.randint(1, 10), rng)
            trace = neumann_add(x, y)
            assert decode(trace.result) == decode(x) + decode(y)
            assert not any(trace.states[-1][1])
            for earlier in trace.states[:-1]:
                assert any(earlier[1])


def test_run_automaton_edges_are_deterministic_and_complete():
    for q in (2, 4, 6, 8):
        seen = {}
        for src, dst, lo, hi, solid in ssde_run_edges(q):
            for label in range(lo, hi + 1):
                assert (src, label) not in seen
                seen[(src, label)] = (dst, solid)
        states = {1, 2, 3, 4, 5, 7, 8, 9, 10}
        for state in states:
            for label in range(-q, q + 1):
                assert (state, label) in seen, (q, state, label)


def test_longest_solid_run_examples():
    # the worked pair with t = 2 has no solid edge at all
    assert longest_solid_run([-4, -2, 1, 1, 2], 4) == 0
    assert longest_solid_run([0, 0, 0, 0], 6) == 0


@pytest.mark.parametrize("q", [2, 4])
def test_run_length_matches_iteration_count_exhaustive(q):
    system = ssde(q)
    words = [list(w) for w in enumerate_words(system, 4)]
    for xs in words:
        for ys in words:
            s = [a + b for a, b in zip(xs, ys)]
            run = longest_solid_run(s, q)
            t = neumann_add(
                Expansion(system, tuple(xs)), Expansion(system, tuple(ys))
            ).iterations
            assert max(t, 2) == run + 2, (xs, ys, t, run)


def test_run_length_matches_iteration_count_random_q6():
    rng = random.Random(77)
    system = ssde(6)
    for _ in range(2000):
        x = _random_expansion(system, rng.randint(1, 12), rng)
        y = _random_expansion(system, rng.randint(1, 12), rng)
        n = max(len(x), len(y))
        s = [
            (x.digits[j] if j < len(x) else 0) + (y.digits[j] if j < len(y) else 0)
            for j in range(n)
        ]
        run = longest_solid_run(s, 6)
        t = neumann_add(x, y).iterations
        assert max(t, 2) == run + 2
