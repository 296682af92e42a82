"""Weighted labeled automata and transducers.

Three constructions drive everything downstream: the additive Cartesian
product (recognizing digitwise sums of two independent words), composition
of a carry transducer with such a product, and Markov-chain lumping, which
contracts states with identical weighted output behavior.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction
from math import gcd
from typing import Callable, Dict, FrozenSet, Hashable, List, Optional, Sequence, Tuple


@dataclass(frozen=True)
class Transition:
    src: int
    dst: int
    label: Optional[int]  # input label; None once transitions have been merged
    output: Tuple[int, ...] = ()  # carry string over {-1, 0, 1}, length 0..2
    weight: Optional[Fraction] = None
    solid: bool = False


@dataclass(frozen=True)
class WeightedTransducer:
    state_labels: Tuple[Hashable, ...]
    initial: int
    finals: FrozenSet[int]
    transitions: Tuple[Transition, ...]
    exit_weights: Optional[Tuple[Fraction, ...]] = None

    @property
    def n_states(self) -> int:
        return len(self.state_labels)

    def outgoing(self) -> List[List[Transition]]:
        rows: List[List[Transition]] = [[] for _ in range(self.n_states)]
        for t in self.transitions:
            rows[t.src].append(t)
        return rows

    def is_probabilistic(self) -> bool:
        """Row sums of transition weights are exactly 1 at every state."""
        sums = [Fraction(0)] * self.n_states
        for t in self.transitions:
            if t.weight is None:
                return False
            sums[t.src] += t.weight
        return all(s == 1 for s in sums)

    def check_deterministic(self) -> None:
        seen = set()
        for t in self.transitions:
            key = (t.src, t.label)
            if key in seen:
                raise ValueError(f"two transitions from state {t.src} on label {t.label}")
            seen.add(key)


def additive_product(a: WeightedTransducer, b: WeightedTransducer) -> WeightedTransducer:
    """Product machine reading digitwise sums: labels add, weights multiply."""
    if a.exit_weights is None or b.exit_weights is None:
        raise ValueError("additive product needs exit weights on both machines")
    n_b = b.n_states
    labels = tuple(
        (la, lb) for la in a.state_labels for lb in b.state_labels
    )

    def pair(i: int, j: int) -> int:
        return i * n_b + j

    transitions = []
    for ta in a.transitions:
        for tb in b.transitions:
            if ta.weight is None or tb.weight is None:
                raise ValueError("additive product needs weighted transitions")
            transitions.append(
                Transition(
                    pair(ta.src, tb.src),
                    pair(ta.dst, tb.dst),
                    ta.label + tb.label,
                    (),
                    ta.weight * tb.weight,
                )
            )
    exits = tuple(
        a.exit_weights[i] * b.exit_weights[j]
        for i in range(a.n_states)
        for j in range(n_b)
    )
    finals = frozenset(pair(i, j) for i in a.finals for j in b.finals)
    return WeightedTransducer(
        labels, pair(a.initial, b.initial), finals, tuple(transitions), exits
    )


def compose(b: WeightedTransducer, a: WeightedTransducer) -> WeightedTransducer:
    """Feed the output of the weighted automaton a into the transducer b.

    States are all pairs (b state, a state); each a-transition with label s
    pairs with the unique b-transition reading s from the current b state.
    """
    if a.exit_weights is None:
        raise ValueError("composition needs exit weights on the inner machine")
    b.check_deterministic()
    by_input: Dict[Tuple[int, int], Transition] = {}
    for t in b.transitions:
        by_input[(t.src, t.label)] = t
    n_a = a.n_states
    labels = tuple(
        (lb, la) for lb in b.state_labels for la in a.state_labels
    )

    def pair(i: int, j: int) -> int:
        return i * n_a + j

    transitions = []
    a_labels = {t.label for t in a.transitions}
    for src_b in range(b.n_states):
        for label in a_labels:
            if (src_b, label) not in by_input:
                raise ValueError(
                    f"transducer cannot read label {label} in state {src_b}"
                )
    for ta in a.transitions:
        for src_b in range(b.n_states):
            tb = by_input[(src_b, ta.label)]
            transitions.append(
                Transition(
                    pair(src_b, ta.src),
                    pair(tb.dst, ta.dst),
                    ta.label,
                    tb.output,
                    ta.weight,
                    tb.solid,
                )
            )
    exits = tuple(
        a.exit_weights[j] for _ in range(b.n_states) for j in range(n_a)
    )
    finals = frozenset(
        pair(i, j) for i in range(b.n_states) for j in a.finals
    )
    return WeightedTransducer(
        labels, pair(b.initial, a.initial), finals, tuple(transitions), exits
    )


def _reachable(m: WeightedTransducer) -> List[int]:
    adjacency: Dict[int, List[int]] = {}
    for t in m.transitions:
        adjacency.setdefault(t.src, []).append(t.dst)
    seen = {m.initial}
    stack = [m.initial]
    while stack:
        state = stack.pop()
        for nxt in adjacency.get(state, ()):
            if nxt not in seen:
                seen.add(nxt)
                stack.append(nxt)
    return sorted(seen)


def _merge_parallel(transitions: Sequence[Transition]) -> List[Transition]:
    """Combine transitions sharing (src, dst, output, solid), summing weights.

    Input labels are dropped: merged transitions represent groups of them.
    """
    merged: Dict[Tuple, Fraction] = {}
    for t in transitions:
        key = (t.src, t.dst, t.output, t.solid)
        merged[key] = merged.get(key, Fraction(0)) + (t.weight or Fraction(0))
    return [
        Transition(src, dst, None, output, weight, solid)
        for (src, dst, output, solid), weight in sorted(
            merged.items(), key=lambda item: (item[0][0], item[0][1], item[0][2], item[0][3])
        )
    ]


def lump(
    m: WeightedTransducer,
    respect_solid: bool = False,
    state_key: Optional[Callable[[Hashable], Hashable]] = None,
) -> WeightedTransducer:
    """Contract the coarsest behavior-preserving partition of the states.

    Unreachable states are dropped first.  Two states land in one block
    only if their merged outgoing transitions are in bijection preserving
    output label, weight (and the solid flag when requested) and the block
    of the target; exit weights must agree as well.  ``state_key`` seeds
    the partition with an extra invariant per state.
    """
    if not m.is_probabilistic():
        raise ValueError("lumping requires a probabilistic machine")
    keep = _reachable(m)
    index = {old: new for new, old in enumerate(keep)}
    labels = tuple(m.state_labels[old] for old in keep)
    exits = tuple(
        m.exit_weights[old] if m.exit_weights is not None else Fraction(1)
        for old in keep
    )
    finality = tuple(old in m.finals for old in keep)
    transitions = _merge_parallel(
        [
            replace(t, src=index[t.src], dst=index[t.dst])
            for t in m.transitions
            if t.src in index and t.dst in index
        ]
    )
    n = len(keep)
    outgoing: List[List[Transition]] = [[] for _ in range(n)]
    for t in transitions:
        outgoing[t.src].append(t)

    block_of = [0] * n
    seed: Dict[Hashable, int] = {}
    for state in range(n):
        key = (
            exits[state],
            finality[state],
            state_key(labels[state]) if state_key else None,
        )
        block_of[state] = seed.setdefault(key, len(seed))

    while True:
        signatures: Dict[int, Tuple] = {}
        for state in range(n):
            sig = tuple(
                sorted(
                    (
                        t.output,
                        t.solid if respect_solid else False,
                        t.weight,
                        block_of[t.dst],
                    )
                    for t in outgoing[state]
                )
            )
            signatures[state] = (block_of[state], sig)
        remap: Dict[Tuple, int] = {}
        new_block_of = [0] * n
        for state in range(n):
            new_block_of[state] = remap.setdefault(signatures[state], len(remap))
        if new_block_of == block_of:
            break
        block_of = new_block_of

    n_blocks = max(block_of) + 1
    # deterministic block order: by smallest member state
    order = sorted(range(n_blocks), key=lambda blk: min(s for s in range(n) if block_of[s] == blk))
    rank = {blk: pos for pos, blk in enumerate(order)}
    members: List[List[int]] = [[] for _ in range(n_blocks)]
    for state in range(n):
        members[rank[block_of[state]]].append(state)

    new_labels = tuple(frozenset(labels[s] for s in group) for group in members)
    new_exits = tuple(exits[group[0]] for group in members)
    new_finals = frozenset(i for i, group in enumerate(members) if finality[group[0]])
    new_transitions = _merge_parallel(
        [
            Transition(
                rank[block_of[t.src]],
                rank[block_of[t.dst]],
                None,
                t.output,
                t.weight,
                t.solid,
            )
            for group in members
            for t in outgoing[group[0]]
        ]
    )
    return WeightedTransducer(
        new_labels,
        rank[block_of[index[m.initial]]],
        new_finals,
        tuple(new_transitions),
        new_exits,
    )


def adjacency_and_checks(
    m: WeightedTransducer,
) -> Tuple[List[List[int]], bool, bool]:
    """Adjacency counts plus strong connectivity and aperiodicity."""
    n = m.n_states
    counts = [[0] * n for _ in range(n)]
    for t in m.transitions:
        counts[t.src][t.dst] += 1

    forward: List[List[int]] = [[] for _ in range(n)]
    backward: List[List[int]] = [[] for _ in range(n)]
    for i in range(n):
        for j in range(n):
            if counts[i][j]:
                forward[i].append(j)
                backward[j].append(i)

    def sweep(adj: List[List[int]]) -> set:
        seen = {0}
        stack = [0]
        while stack:
            state = stack.pop()
            for nxt in adj[state]:
                if nxt not in seen:
                    seen.add(nxt)
                    stack.append(nxt)
        return seen

    connected = len(sweep(forward)) == n and len(sweep(backward)) == n

    aperiodic = False
    if connected:
        level = {0: 0}
        queue = [0]
        while queue:
            state = queue.pop(0)
            for nxt in forward[state]:
                if nxt not in level:
                    level[nxt] = level[state] + 1
                    queue.append(nxt)
        g = 0
        for i in range(n):
            for j in forward[i]:
                g = gcd(g, level[i] + 1 - level[j])
        aperiodic = g == 1
    return counts, connected, aperiodic


def serialize(m: WeightedTransducer) -> str:
    """Deterministic text dump with exact rational weights."""

    def frac(value: Optional[Fraction]) -> str:
        if value is None:
            return "-"
        return f"{value.numerator}/{value.denominator}"

    lines = [f"states {m.n_states}", f"initial {m.initial}"]
    lines.append("finals " + " ".join(str(i) for i in sorted(m.finals)))
    for i, label in enumerate(m.state_labels):
        exit_w = m.exit_weights[i] if m.exit_weights is not None else None
        lines.append(f"state {i} label={_label_text(label)} exit={frac(exit_w)}")
    for t in sorted(
        m.transitions, key=lambda t: (t.src, t.dst, t.output, t.label is None, str(t.label))
    ):
        out = "".join("+" if c == 1 else "-" if c == -1 else "0" for c in t.output) or "."
        label = "*" if t.label is None else str(t.label)
        solid = " solid" if t.solid else ""
        lines.append(
            f"trans {t.src} {t.dst} label={label} output={out} weight={frac(t.weight)}{solid}"
        )
    return "\n".join(lines) + "\n"


def _label_text(label: Hashable) -> str:
    if isinstance(label, frozenset):
        return "{" + ",".join(sorted(str(x) for x in label)) + "}"
    return str(label)
