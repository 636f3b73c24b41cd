"""Deutsch-Jozsa and Grover drivers that expose every intermediate state.

Both algorithms run as pure phase-oracle circuits on the n-qubit register (the
oracle work qubit is eliminated by phase kickback). The Deutsch-Jozsa oracle is
expanded into its disjunctive normal form, one minterm phase block per
satisfying input, so the trace shows the state after every block instead of one
opaque oracle call.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .statevector import (StateVector, hadamard_all, popcount_table,
                          prepare_basis_state, reflect_about_basis_state)

BUILTIN_ORACLE_NAMES = ("parity", "parity-low4", "constant0", "constant1")


@dataclass(frozen=True, eq=False)
class OracleSpec:
    """Boolean function on n bits as a truth table indexed by x."""

    n: int
    table: np.ndarray

    def __post_init__(self) -> None:
        table = np.asarray(self.table, dtype=np.uint8).reshape(-1)
        if self.n < 1:
            raise ValueError(f"need at least one qubit, got n={self.n}")
        if table.size != 1 << self.n:
            raise ValueError(
                f"truth table length {table.size} does not match 2**{self.n}"
            )
        if np.any(table > 1):
            raise ValueError("truth table entries must be 0 or 1")
        table.setflags(write=False)
        object.__setattr__(self, "table", table)

    @property
    def kind(self) -> str:
        ones = int(self.table.sum())
        if ones in (0, self.table.size):
            return "constant"
        if 2 * ones == self.table.size:
            return "balanced"
        return "other"


@dataclass(frozen=True)
class Minterm:
    """One DNF term: matches exactly x, complementing the listed bit positions."""

    x: int
    complemented_bits: tuple[int, ...]


@dataclass(frozen=True)
class DnfDecomposition:
    n: int
    minterms: tuple[Minterm, ...]


@dataclass(frozen=True)
class GroverConfig:
    """Search setup: target tau, start gamma, iteration count."""

    n: int
    target: int
    start: int = 0
    iterations: int | None = None

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError(f"need at least one qubit, got n={self.n}")
        size = 1 << self.n
        if not 0 <= self.target < size:
            raise ValueError(f"target {self.target} out of range for n={self.n}")
        if not 0 <= self.start < size:
            raise ValueError(f"start {self.start} out of range for n={self.n}")
        if self.iterations is None:
            object.__setattr__(self, "iterations",
                               default_grover_iterations(self.n))
        elif self.iterations < 0:
            raise ValueError("iterations must be nonnegative")


def builtin_oracles(name: str, n: int) -> OracleSpec:
    """Named oracles: parity, parity-low4, constant0, constant1."""
    xs = np.arange(1 << n)
    if name == "parity":
        table = popcount_table(n) & 1
    elif name == "parity-low4":
        table = np.array([(int(x) & 0xF).bit_count() & 1 for x in xs])
    elif name == "constant0":
        table = np.zeros(xs.size, dtype=np.uint8)
    elif name == "constant1":
        table = np.ones(xs.size, dtype=np.uint8)
    else:
        raise ValueError(
            f"unknown oracle {name!r}; builtins are {', '.join(BUILTIN_ORACLE_NAMES)}"
        )
    return OracleSpec(n, table)


def oracle_from_string(text: str, n: int | None = None) -> OracleSpec:
    """Truth table from a string of '0'/'1' characters, whitespace ignored."""
    bits = "".join(text.split())
    if bits.strip("01"):
        raise ValueError("truth table may contain only '0' and '1'")
    size = len(bits)
    if size < 2 or size & (size - 1):
        raise ValueError(f"truth table length {size} is not a power of two")
    inferred = size.bit_length() - 1
    if n is not None and n != inferred:
        raise ValueError(f"truth table encodes n={inferred}, expected n={n}")
    return OracleSpec(inferred, np.frombuffer(bits.encode(), dtype=np.uint8) - ord("0"))


def oracle_from_file(path, n: int | None = None) -> OracleSpec:
    with open(path, encoding="ascii") as fh:
        return oracle_from_string(fh.read(), n)


def dnf_decompose(oracle: OracleSpec) -> DnfDecomposition:
    """One minterm per satisfying input, ascending in x.

    The complemented bits of a minterm are the zero bits of its x: wrapping the
    multi-controlled phase flip in X gates on those positions makes the block
    fire on x alone.
    """
    minterms = []
    for x in np.nonzero(oracle.table)[0]:
        x = int(x)
        complemented = tuple(b for b in range(oracle.n) if not (x >> b) & 1)
        minterms.append(Minterm(x, complemented))
    return DnfDecomposition(oracle.n, tuple(minterms))


def apply_minterm_block(state: StateVector, minterm: Minterm) -> StateVector:
    """Phase block of one minterm: flips the sign of amplitude x only."""
    return reflect_about_basis_state(state, minterm.x)


def dj_run(oracle: OracleSpec, initial: int = 0) -> list[tuple[str, StateVector]]:
    """Deutsch-Jozsa with the oracle unrolled into minterm blocks.

    Emits (label, state) pairs: the initial basis state, the state after the
    first Hadamard layer, one state per minterm block, and the state after the
    closing Hadamard layer. Constant oracles contribute no minterm steps
    (constant1 contributes all 2**n).
    """
    if not 0 <= initial < (1 << oracle.n):
        raise ValueError(f"initial {initial} out of range for n={oracle.n}")
    steps = []
    state = prepare_basis_state(oracle.n, initial)
    steps.append(("initial", state))
    state = hadamard_all(state)
    steps.append(("hadamard", state))
    for minterm in dnf_decompose(oracle).minterms:
        state = apply_minterm_block(state, minterm)
        steps.append((f"minterm-{minterm.x}", state))
    state = hadamard_all(state)
    steps.append(("hadamard", state))
    return steps


def grover_run(config: GroverConfig) -> list[tuple[str, StateVector]]:
    """Grover search emitting the state after every gate.

    After the initial state and the first Hadamard layer, each iteration
    contributes four states: after the target phase flip, a Hadamard layer,
    the start-state reflection (with the iterant's global minus folded in),
    and another Hadamard layer. The final emitted state is the measured one.
    """
    steps = []
    state = prepare_basis_state(config.n, config.start)
    steps.append(("initial", state))
    state = hadamard_all(state)
    steps.append(("hadamard", state))
    for _ in range(config.iterations):
        state = reflect_about_basis_state(state, config.target)
        steps.append(("target-flip", state))
        state = hadamard_all(state)
        steps.append(("hadamard", state))
        state = reflect_about_basis_state(state, config.start)
        state = StateVector(config.n, -state.amps)
        steps.append(("start-reflect", state))
        state = hadamard_all(state)
        steps.append(("hadamard", state))
    return steps


def default_grover_iterations(n: int) -> int:
    """round((pi/4) sqrt(2**n)); 13 for n=8."""
    return round(math.pi / 4 * math.sqrt(1 << n))


def grover_success_probability(n: int, iterations: int) -> float:
    """Closed form sin^2((2l+1) arcsin(2**(-n/2))) for the measured target."""
    return math.sin((2 * iterations + 1) * math.asin(2.0 ** (-n / 2))) ** 2
