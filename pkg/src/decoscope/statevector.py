"""Dense state vector for a register of n spin-1/2 qubits, plus the gate set.

Bit convention: computational index x carries binary digits x_{n-1} ... x_0 and
qubit i owns digit x_i. A 0 bit is spin-down (m_i = -1/2), a 1 bit spin-up, so
|00...0> is the fully polarized state with collective projection m = -n/2.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True, eq=False)
class StateVector:
    """Immutable register state: n qubits, 2**n complex amplitudes.

    Amplitudes are stored as complex128 and never renormalized; gates return
    fresh instances. The wrapped array is marked read-only.
    """

    n: int
    amps: np.ndarray

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError(f"need at least one qubit, got n={self.n}")
        amps = np.array(self.amps, dtype=np.complex128, copy=True).reshape(-1)
        if amps.shape != (1 << self.n,):
            raise ValueError(
                f"amplitude count {amps.size} does not match 2**{self.n}"
            )
        amps.setflags(write=False)
        object.__setattr__(self, "amps", amps)

    def norm(self) -> float:
        return float(np.linalg.norm(self.amps))

    def probabilities(self) -> np.ndarray:
        return self.amps.real**2 + self.amps.imag**2

    def probability(self, x: int) -> float:
        a = self.amps[x]
        return float(a.real**2 + a.imag**2)

    def __repr__(self) -> str:  # full arrays are unreadable for n >= 4
        return f"StateVector(n={self.n}, dim={self.amps.size})"


def popcount_table(n: int) -> np.ndarray:
    """Number of set bits for every index 0 .. 2**n - 1."""
    counts = np.zeros(1, dtype=np.int64)
    for _ in range(n):
        counts = np.concatenate([counts, counts + 1])
    return counts


def m_value(x: int, n: int) -> float:
    """Collective spin projection of basis state |x>: popcount(x) - n/2."""
    if not 0 <= x < (1 << n):
        raise ValueError(f"basis index {x} out of range for n={n}")
    return x.bit_count() - n / 2


def prepare_basis_state(n: int, x: int) -> StateVector:
    """Computational basis state |x> on n qubits."""
    if not 0 <= x < (1 << n):
        raise ValueError(f"basis index {x} out of range for n={n}")
    amps = np.zeros(1 << n, dtype=np.complex128)
    amps[x] = 1.0
    return StateVector(n, amps)


def hadamard_all(state: StateVector) -> StateVector:
    """Apply H to every qubit (normalized fast Walsh-Hadamard transform)."""
    v = state.amps.copy()
    size = v.size
    h = 1
    while h < size:
        blocks = v.reshape(-1, 2 * h)
        top = blocks[:, :h].copy()
        bottom = blocks[:, h:]
        blocks[:, :h] = top + bottom
        blocks[:, h:] = top - bottom
        h *= 2
    v *= 2.0 ** (-0.5 * state.n)
    return StateVector(state.n, v)


def phase_oracle(state: StateVector, oracle) -> StateVector:
    """Multiply each amplitude by (-1)**f(x) for a truth table f.

    The oracle work qubit is eliminated by phase kickback, so the register
    size stays n. Accepts anything with fields n and table (see OracleSpec).
    """
    if oracle.n != state.n:
        raise ValueError(f"oracle is for n={oracle.n}, state has n={state.n}")
    signs = 1.0 - 2.0 * np.asarray(oracle.table, dtype=np.float64)
    return StateVector(state.n, state.amps * signs)


def reflect_about_basis_state(state: StateVector, g: int) -> StateVector:
    """Apply I - 2|g><g|, i.e. flip the sign of the single amplitude at g."""
    if not 0 <= g < (1 << state.n):
        raise ValueError(f"basis index {g} out of range for n={state.n}")
    v = state.amps.copy()
    v[g] = -v[g]
    return StateVector(state.n, v)
