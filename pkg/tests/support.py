"""Shared test helpers: transcribed closed forms and small exact utilities."""

from fractions import Fraction

from carrylab import polynomial as poly


def qd_theorem_constants(q: int, d: int):
    """Transcribed growth constants for the qd carry process.

    The covariance polynomial is transcribed with its sign corrected: the
    published display is the negative of the true covariance (the
    brute-force oracle and the machine pipeline agree on the negative
    value; see test_moments for the explicit relation).
    """
    e_pos = Fraction((q + d - 1) ** 2, 2 * (q - 1) ** 2)
    e_neg = Fraction(d * d, 2 * (q - 1) ** 2)
    den = 4 * (q - 1) ** 5 * (q + 1)
    v_pos = Fraction(
        (q + d - 1) ** 2
        * (q**4 - 2 * q**3 * d - q**2 * d**2 - 4 * q * d**2 - 2 * q**2 - d**2 + 2 * d + 1),
        den,
    )
    v_neg = Fraction(
        d**2
        * (2 * q**4 - q**2 * d**2 - 4 * q**3 - 6 * q**2 * d - 4 * q * d**2
           + 4 * q**2 + 6 * q * d - d**2 - 4 * q + 2),
        den,
    )
    cov = -Fraction(
        d
        * (q + d - 1)
        * (q**3 * d + q**2 * d**2 - q**3 + 3 * q**2 * d + 4 * q * d**2
           + 2 * q**2 - 3 * q * d + d**2 - q - d),
        den,
    )
    return e_pos, e_neg, v_pos, v_neg, cov


def ssde_theorem_constants(q: int):
    """Transcribed growth constants for the ssde carry process."""
    e = Fraction(q * q + 2 * q + 4, 8 * (q + 1) ** 2)
    v = Fraction(
        7 * q**6 + 48 * q**5 + 159 * q**4 + 128 * q**3 - 48 * q**2 - 12 * q - 8,
        64 * (q + 1) ** 5 * (q - 1),
    )
    cov = -Fraction(
        q**6 + 24 * q**5 + 33 * q**4 + 80 * q**3 + 120 * q**2 - 12 * q - 8,
        64 * (q + 1) ** 5 * (q - 1),
    )
    return e, v, cov


def output_distribution(machine, length: int):
    """Exact weighted distribution over output strings of length-n paths."""
    outgoing = [[] for _ in range(machine.n_states)]
    for t in machine.transitions:
        outgoing[t.src].append(t)
    current = {(machine.initial, ()): Fraction(1)}
    for _ in range(length):
        nxt = {}
        for (state, out), weight in current.items():
            for t in outgoing[state]:
                key = (t.dst, out + t.output)
                nxt[key] = nxt.get(key, Fraction(0)) + weight * t.weight
        current = nxt
    result = {}
    for (state, out), weight in current.items():
        exit_w = machine.exit_weights[state] if machine.exit_weights else Fraction(1)
        result[out] = result.get(out, Fraction(0)) + weight * exit_w
    return {k: v for k, v in result.items() if v}


def matrices_equal(a, b) -> bool:
    if a.size != b.size:
        return False
    return all(
        a.entries[i][j] == b.entries[i][j]
        for i in range(a.size)
        for j in range(a.size)
    )
