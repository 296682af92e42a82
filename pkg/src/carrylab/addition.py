"""Standard and von Neumann addition with exposed carry sequences.

The adders consume the digitwise sum ``s = x + y`` (least significant
first): standard addition resolves carries sequentially with one digit of
lookahead in the ssde case, while von Neumann's scheme repairs all
positions in parallel and iterates until the carry sequence vanishes.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Sequence, Tuple

from .numbersys import DigitSystem, Expansion, decode


@dataclass(frozen=True)
class AdditionTrace:
    """Result of one standard addition over a digitwise sum."""

    digitwise_sum: Tuple[int, ...]
    result: Expansion
    carries: Tuple[int, ...]  # c_1, c_2, ... (one per input position)

    @property
    def pos_count(self) -> int:
        return sum(1 for c in self.carries if c == 1)

    @property
    def neg_count(self) -> int:
        return sum(1 for c in self.carries if c == -1)


@dataclass(frozen=True)
class NeumannTrace:
    """Full history of one von Neumann addition."""

    system: DigitSystem
    iterations: int
    states: Tuple[Tuple[Tuple[int, ...], Tuple[int, ...]], ...]  # (z^(k), c^(k))

    @property
    def result(self) -> Expansion:
        digits = list(self.states[-1][0])
        while digits and digits[-1] == 0:
            digits.pop()
        return Expansion(self.system, tuple(digits))


def _strip_leading_zeros(digits: List[int]) -> Tuple[int, ...]:
    while digits and digits[-1] == 0:
        digits.pop()
    return tuple(digits)


def standard_add_qd(s: Sequence[int], q: int, d: int = 0) -> AdditionTrace:
    """Sequential addition for digit set {d, ..., q+d-1}; no lookahead."""
    lo, hi = 2 * d, 2 * q + 2 * d - 2
    for value in s:
        if not lo <= value <= hi:
            raise ValueError(f"digitwise sum {value} outside [{lo}, {hi}]")
    carry = 0
    out: List[int] = []
    carries: List[int] = []
    for j in range(len(s) + 1):
        a = (s[j] if j < len(s) else 0) + carry
        if a >= q + d:
            carry = 1
        elif a <= d - 1:
            carry = -1
        else:
            carry = 0
        out.append(a - carry * q)
        if j < len(s):
            carries.append(carry)
    assert carry == 0, "a single flush position always absorbs the last carry"
    result = Expansion(DigitSystem("qd", q, d), _strip_leading_zeros(out))
    return AdditionTrace(tuple(s), result, tuple(carries))


def standard_add_ssde(s: Sequence[int], q: int) -> AdditionTrace:
    """Sequential ssde addition; the boundary digit +-q/2 is disambiguated
    by reading the raw next digit s_{j+1} (zero past the end)."""
    half = q // 2
    for value in s:
        if not -q <= value <= q:
            raise ValueError(f"digitwise sum {value} outside [-{q}, {q}]")
    carry = 0
    out: List[int] = []
    carries: List[int] = []
    for j in range(len(s) + 1):
        a = (s[j] if j < len(s) else 0) + carry
        nxt = s[j + 1] if j + 1 < len(s) else 0
        if a > half:
            carry = 1
        elif a < -half:
            carry = -1
        elif a == half and (-half <= nxt < 0 or half <= nxt < q):
            carry = 1
        elif a == -half and (-q < nxt <= -half or 0 < nxt <= half):
            carry = -1
        else:
            carry = 0
        out.append(a - carry * q)
        if j < len(s):
            carries.append(carry)
    assert carry == 0
    result = Expansion(DigitSystem("ssde", q), _strip_leading_zeros(out))
    return AdditionTrace(tuple(s), result, tuple(carries))


def standard_add(x: Expansion, y: Expansion) -> AdditionTrace:
    """Standard addition of two expansions of the same system."""
    if x.system != y.system:
        raise ValueError("summands must share a digit system")
    n = max(len(x), len(y))
    s = [
        (x.digits[j] if j < len(x) else 0) + (y.digits[j] if j < len(y) else 0)
        for j in range(n)
    ]
    if x.system.kind == "qd":
        return standard_add_qd(s, x.system.q, x.system.d)
    return standard_add_ssde(s, x.system.q)


def neumann_step(s: Sequence[int], system: DigitSystem) -> Tuple[List[int], List[int]]:
    """One parallel correction step (z, c) = add(s); c has a leading c_0 = 0."""
    q = system.q
    z: List[int] = []
    c: List[int] = [0]
    if system.kind == "ssde":
        half = q // 2
        for j, value in enumerate(s):
            nxt = s[j + 1] if j + 1 < len(s) else 0
            sign = 1 if value > 0 else -1
            if abs(value) > half or (abs(value) == half and (sign * nxt) % q >= half):
                carry = sign
            else:
                carry = 0
            z.append(value - carry * q)
            c.append(carry)
    else:
        d = system.d
        for value in s:
            if value >= q + d:
                carry = 1
            elif value <= d - 1:
                carry = -1
            else:
                carry = 0
            z.append(value - carry * q)
            c.append(carry)
    return z, c


def neumann_add(x: Expansion, y: Expansion) -> NeumannTrace:
    """Iterate (z, c) <- add(z + c) from (x, y) until the carries vanish."""
    if x.system != y.system:
        raise ValueError("summands must share a digit system")
    system = x.system
    z = list(x.digits)
    c = list(y.digits)
    cap = 4 * max(len(z), len(c), 1) + 16
    states = [(tuple(z), tuple(c))]
    iterations = 0
    while any(c):
        n = max(len(z), len(c))
        s = [(z[j] if j < len(z) else 0) + (c[j] if j < len(c) else 0) for j in range(n)]
        z, c = neumann_step(s, system)
        states.append((tuple(z), tuple(c)))
        iterations += 1
        if iterations > cap:
            raise RuntimeError(f"von Neumann addition did not settle after {cap} rounds")
    return NeumannTrace(system, iterations, tuple(states))


# --- longest run of carry-generating positions ------------------------------
#
# Nine-state automaton over the digitwise sums of two ssde expansions; the
# number of von Neumann iterations satisfies t <= k+2 exactly when at most k
# consecutive solid edges are traversed.  Stopping in state 2 or 7 forces one
# further solid edge (the carry decision at the top position spills over).

RUN_START = 1
RUN_DEFERRED_STATES = frozenset({2, 7})


def ssde_run_edges(q: int) -> List[Tuple[int, int, int, int, bool]]:
    """Edges (src, dst, lo, hi, solid) of the run automaton for base q."""
    h = q // 2
    raw = [
        (1, 1, -h + 1, h - 1, False),
        (1, 4, h + 1, q, False),
        (1, 5, h, h, False),
        (1, 9, -q, -h - 1, False),
        (1, 10, -h, -h, False),
        (2, 1, -h + 1, -1, False),
        (2, 1, 0, h - 2, True),
        (2, 2, h, h, False),
        (2, 3, h - 1, h - 1, True),
        (2, 4, h + 1, q - 1, False),
        (2, 4, q, q, True),
        (2, 7, -h - 1, -h - 1, True),
        (2, 8, -h, -h, False),
        (2, 9, -q, -h - 2, True),
        (3, 1, -h + 1, -1, True),
        (3, 1, 0, h - 1, False),
        (3, 2, h, h, True),
        (3, 4, q, q, False),
        (3, 4, h + 1, q - 1, True),
        (3, 8, -h, -h, True),
        (3, 9, -q, -h - 1, False),
        (4, 1, -h + 1, h - 2, False),
        (4, 2, h, h, False),
        (4, 3, h - 1, h - 1, False),
        (4, 4, h + 1, q, False),
        (4, 7, -h - 1, -h - 1, False),
        (4, 8, -h, -h, False),
        (4, 9, -q, -h - 2, False),
        (5, 1, -h + 1, h - 1, False),
        (5, 2, h, h, False),
        (5, 4, h + 1, q, False),
        (5, 8, -h, -h, False),
        (5, 9, -q, -h - 1, False),
    ]
    # states 7..10 mirror 2..5 under digit negation (state 1 is its own mirror)
    mirror = {1: 1, 2: 7, 3: 8, 4: 9, 5: 10, 7: 2, 8: 3, 9: 4, 10: 5}
    mirrored = [
        (mirror[src], mirror[dst], -hi, -lo, solid)
        for src, dst, lo, hi, solid in raw
        if src != 1
    ]
    edges = raw + mirrored
    return [(src, dst, lo, hi, solid) for src, dst, lo, hi, solid in edges if lo <= hi]


def _run_transition_table(q: int) -> Dict[int, Dict[int, Tuple[int, bool]]]:
    table: Dict[int, Dict[int, Tuple[int, bool]]] = {}
    for src, dst, lo, hi, solid in ssde_run_edges(q):
        row = table.setdefault(src, {})
        for label in range(lo, hi + 1):
            if label in row:
                raise AssertionError(f"ambiguous label {label} from state {src}")
            row[label] = (dst, solid)
    return table


def longest_solid_run(s: Sequence[int], q: int) -> int:
    """Maximum number of consecutive solid edges when reading s (LSB first).

    The trailing zero block of the input is handled internally: ending in
    state 2 or 7 costs one further solid edge.
    """
    table = _run_transition_table(q)
    state = RUN_START
    run = best = 0
    for value in s:
        state, solid = table[state][value]
        if solid:
            run += 1
            best = max(best, run)
        else:
            run = 0
    if state in RUN_DEFERRED_STATES:
        best = max(best, run + 1)
    return best
