"""Digit systems and expansions.

Two families are supported:

* base-q systems with digit set ``{d, ..., q+d-1}`` for ``-q < d <= 0``
  ("qd" systems; d = 0 is the ordinary q-ary system), and
* symmetric signed-digit expansions ("ssde") for even base q with digits
  ``{-q/2, ..., q/2}``, where the redundancy of the two boundary digits is
  resolved by the adjacency rule
  ``|x_j| = q/2  =>  0 <= sgn(x_j) * x_{j+1} <= q/2 - 1``.

Digits are stored least-significant first; all textual I/O is
most-significant first (comma-separated signed integers).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, List, Sequence, Tuple


@dataclass(frozen=True)
class DigitSystem:
    """A qd or ssde digit system; immutable and hashable."""

    kind: str  # "qd" | "ssde"
    q: int
    d: int = 0  # offset, qd only

    def __post_init__(self):
        if self.kind == "qd":
            if self.q < 2:
                raise ValueError(f"base must be >= 2, got {self.q}")
            if not (-self.q < self.d <= 0):
                raise ValueError(f"offset must satisfy -q < d <= 0, got d={self.d}")
        elif self.kind == "ssde":
            if self.q < 2 or self.q % 2:
                raise ValueError(f"ssde base must be even and >= 2, got {self.q}")
            if self.d != 0:
                raise ValueError("ssde systems have no offset")
        else:
            raise ValueError(f"unknown system kind {self.kind!r}")

    @property
    def digit_min(self) -> int:
        return self.d if self.kind == "qd" else -self.q // 2

    @property
    def digit_max(self) -> int:
        return self.q + self.d - 1 if self.kind == "qd" else self.q // 2

    def digit_in_range(self, digit: int) -> bool:
        return self.digit_min <= digit <= self.digit_max

    def spec_string(self) -> str:
        if self.kind == "qd":
            return f"qd:q={self.q},d={self.d}"
        return f"ssde:q={self.q}"

    def __str__(self) -> str:
        return self.spec_string()


def qd(q: int, d: int = 0) -> DigitSystem:
    return DigitSystem("qd", q, d)


def ssde(q: int) -> DigitSystem:
    return DigitSystem("ssde", q)


def parse_system(spec: str) -> DigitSystem:
    """Parse a system spec string like ``qd:q=10,d=-1`` or ``ssde:q=4``."""
    kind, _, rest = spec.partition(":")
    kind = kind.strip().lower()
    params = {}
    for item in rest.split(","):
        item = item.strip()
        if not item:
            continue
        key, _, value = item.partition("=")
        try:
            params[key.strip()] = int(value)
        except ValueError:
            raise ValueError(f"bad system spec {spec!r}") from None
    if kind == "qd":
        if "q" not in params:
            raise ValueError(f"bad system spec {spec!r}: missing q")
        return qd(params["q"], params.get("d", 0))
    if kind == "ssde":
        if "q" not in params:
            raise ValueError(f"bad system spec {spec!r}: missing q")
        return ssde(params["q"])
    raise ValueError(f"unknown system kind in {spec!r}")


def _ssde_pair_ok(q: int, low: int, high: int) -> bool:
    """Adjacency rule at one position: low is the less significant digit."""
    if abs(low) != q // 2:
        return True
    s = 1 if low > 0 else -1
    return 0 <= s * high <= q // 2 - 1


def is_valid(system: DigitSystem, digits: Sequence[int]) -> bool:
    """True iff the digits (LSB first) form a valid word of the system.

    A zero is assumed beyond the most significant stored digit, so a word
    ending in +-q/2 is fine.
    """
    if not all(system.digit_in_range(x) for x in digits):
        return False
    if system.kind == "ssde":
        q = system.q
        for j, low in enumerate(digits):
            high = digits[j + 1] if j + 1 < len(digits) else 0
            if not _ssde_pair_ok(q, low, high):
                return False
    return True


@dataclass(frozen=True)
class Expansion:
    """A finite digit string with its system; index 0 = least significant."""

    system: DigitSystem
    digits: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "digits", tuple(self.digits))
        if not is_valid(self.system, self.digits):
            raise ValueError(f"invalid digits {list(self.digits)} for {self.system}")

    def __len__(self) -> int:
        return len(self.digits)

    def value(self) -> int:
        return decode(self)

    def msb_first(self) -> List[int]:
        return list(reversed(self.digits))

    def __str__(self) -> str:
        return format_digits(self.digits)


def format_digits(digits_lsb: Sequence[int]) -> str:
    """Render LSB-first digits as the MSB-first comma-separated form."""
    if not digits_lsb:
        return "0"
    return ",".join(str(x) for x in reversed(digits_lsb))


def parse_digits(text: str) -> List[int]:
    """Parse MSB-first comma-separated digits into the LSB-first list."""
    items = [item.strip() for item in text.split(",") if item.strip()]
    return [int(item) for item in reversed(items)]


def decode(x: Expansion) -> int:
    """Exact value sum(digits[i] * q^i)."""
    total = 0
    for digit in reversed(x.digits):
        total = total * x.system.q + digit
    return total


def encode(n: int, system: DigitSystem) -> Expansion:
    """The unique expansion of n, without leading zeros (empty for n = 0)."""
    q, d = system.q, system.d
    if system.kind == "qd":
        if d == 0 and n < 0:
            raise ValueError(f"{system} represents non-negative integers only")
        if d == -q + 1 and n > 0:
            raise ValueError(f"{system} represents non-positive integers only")
        digits = []
        while n != 0:
            r = (n - d) % q + d
            digits.append(r)
            n = (n - r) // q
        return Expansion(system, tuple(digits))
    # ssde: greedy symmetric remainder; the boundary digit +-q/2 is picked
    # so that the next digit is forced into the legal range.
    half = q // 2
    digits = []
    while n != 0:
        r = n % q
        if r > half:
            r -= q
        elif r == half:
            # the next quotient decides between +q/2 and -q/2
            if ((n - half) // q) % q >= half:
                r = -half
        digits.append(r)
        n = (n - r) // q
    return Expansion(system, tuple(digits))


def enumerate_words(system: DigitSystem, length: int) -> Iterator[Tuple[int, ...]]:
    """Yield every valid digit string (LSB first) of the given length once.

    Leading zeros are allowed; feasible only for small lengths.
    """
    if length < 0:
        raise ValueError("length must be >= 0")
    q = system.q
    digit_range = range(system.digit_min, system.digit_max + 1)

    def extend(prefix: Tuple[int, ...]) -> Iterator[Tuple[int, ...]]:
        if len(prefix) == length:
            yield prefix
            return
        last = prefix[-1] if prefix else 0
        for digit in digit_range:
            if system.kind == "ssde" and prefix and not _ssde_pair_ok(q, last, digit):
                continue
            yield from extend(prefix + (digit,))

    # the final digit may be +-q/2 (a zero is assumed beyond it)
    yield from extend(())
