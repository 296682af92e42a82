from fractions import Fraction

import pytest

from carrylab import matrices, moments, neumann, oracle
from carrylab.numbersys import Expansion, decode, qd, ssde


def test_decimal_single_digit_carry_probability():
    dist = oracle.carry_distribution_bruteforce(qd(10, 0), 1)
    # pairs of decimal digits with sum >= 10
    assert dist[(1, 0)] == Fraction(45, 100)
    assert dist[(0, 0)] == Fraction(55, 100)


def test_length_zero_mass():
    for system in (qd(10, 0), ssde(4)):
        dist = oracle.carry_distribution_bruteforce(system, 0)
        assert list(dist) == [(0, 0)]


def test_carry_distribution_matches_exact_pipeline():
    cases = [
        (ssde(2), range(0, 5), None),
        (ssde(4), range(1, 4), None),
        (qd(10, 0), range(1, 3), None),
        (qd(5, -1), range(1, 4), None),
    ]
    for system, ells, _ in cases:
        if system.kind == "qd":
            matrix = matrices.build_S_qd(system.q, system.d)
            exits = [Fraction(1)] * 3
            initial = 1
        else:
            machine = matrices.standard_machine_ssde(system.q)
            matrix = matrices.machine_poly_matrix(machine)
            exits = list(machine.exit_weights)
            initial = machine.initial
        for ell in ells:
            brute = oracle.carry_distribution_bruteforce(system, ell)
            analytic = moments.exact_distribution(matrix, exits, initial, ell)
            assert brute == analytic, (system, ell)


def test_neumann_bruteforce_single_pair_weight():
    dist = oracle.neumann_distribution_bruteforce(ssde(4), 1)
    # 25 weighted pairs of single digits; mass is (|L_1| W_1)^2 = (5 * 5/24)^2
    assert sum(dist.values()) == Fraction(25, 24) ** 2
    assert set(dist) <= {0, 1, 2, 3}


def test_worked_pair_iteration_count_appears():
    x = Expansion(ssde(4), (-2, -1, 0, 1, 1))
    y = Expansion(ssde(4), (-2, -1, 1, 0, 1))
    from carrylab.addition import neumann_add

    assert neumann_add(x, y).iterations == 2


def test_neumann_bruteforce_matches_dp():
    for q in (2, 4):
        chain = neumann.make_chain(q)
        for ell in (1, 2):
            brute = oracle.neumann_distribution_bruteforce(ssde(q), ell)
            total = sum(brute.values())
            assert total == neumann._w_total_exact(chain, ell)
            for k in range(ell + 1):
                expected = sum(mass for t, mass in brute.items() if t - 2 <= k)
                assert neumann._w_exact(chain, ell, k) == expected


def test_size_guard():
    with pytest.raises(ValueError):
        oracle.carry_distribution_bruteforce(qd(10, 0), 4)
