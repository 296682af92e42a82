"""carrylab: signed-digit number systems and exact carry statistics.

Implements qd and symmetric signed-digit expansions, their standard and
von Neumann addition algorithms, and the full probabilistic analysis of
the carry processes: equidistribution weights, transfer-matrix moment
constants, and the logarithmic asymptotics of the parallel-addition
iteration count, all cross-checked against brute-force enumeration.
"""

from .numbersys import (
    DigitSystem,
    Expansion,
    decode,
    encode,
    enumerate_words,
    is_valid,
    parse_system,
    qd,
    ssde,
)
from .addition import (
    AdditionTrace,
    NeumannTrace,
    longest_solid_run,
    neumann_add,
    neumann_step,
    standard_add,
    standard_add_qd,
    standard_add_ssde,
)

__version__ = "0.1.0"

__all__ = [
    "AdditionTrace",
    "DigitSystem",
    "Expansion",
    "NeumannTrace",
    "decode",
    "encode",
    "enumerate_words",
    "is_valid",
    "longest_solid_run",
    "neumann_add",
    "neumann_step",
    "parse_system",
    "qd",
    "ssde",
    "standard_add",
    "standard_add_qd",
    "standard_add_ssde",
]
