"""Collective relaxation and dephasing vulnerability scores for register states.

The longitudinal (T1) score sums P(j, m) weighted by the downward collective
emission factor j(j+1) - m(m-1), normalized to the single-qubit rate. The
transverse (T2) score needs only the m-marginal: the double sum over
computational pairs of |c_i|^2 |c_j|^2 |m_i - m_j| collapses to an
(n+1)x(n+1) sum over marginal masses, O(2**n + n^2) instead of O(4**n).
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .statevector import StateVector, popcount_table
from .symmetrized import SymmetrizedBasis


@dataclass(frozen=True, eq=False)
class JmDistribution:
    """Probability mass P(j, m) of a state over the symmetrized sectors."""

    n: int
    entries: dict[tuple[float, float], float]

    def prob(self, j: float, m: float) -> float:
        return self.entries.get((float(j), float(m)), 0.0)

    def total(self) -> float:
        return float(sum(self.entries.values()))

    def sorted_items(self) -> list[tuple[tuple[float, float], float]]:
        return sorted(self.entries.items(), key=lambda kv: (-kv[0][0], kv[0][1]))


@dataclass(frozen=True, eq=False)
class MMarginal:
    """Probability mass by collective projection; probs[k] is for m = k - n/2."""

    n: int
    probs: np.ndarray

    @property
    def m_values(self) -> np.ndarray:
        return np.arange(self.n + 1) - self.n / 2

    def prob(self, m: float) -> float:
        k = round(m + self.n / 2)
        if abs(m + self.n / 2 - k) > 1e-9 or not 0 <= k <= self.n:
            raise ValueError(f"invalid projection m={m} for n={self.n}")
        return float(self.probs[k])


@dataclass(frozen=True, eq=False)
class StepRecord:
    index: int
    label: str
    t1: float
    t2: float
    pjm: JmDistribution | None = None


@dataclass(frozen=True, eq=False)
class StepTrace:
    """Per-step vulnerability scores along an algorithm trajectory."""

    n: int
    steps: list[StepRecord] = field(default_factory=list)


def p_jm(state: StateVector, basis: SymmetrizedBasis) -> JmDistribution:
    """Project a state onto every (j, m) sector: P(j,m) = sum_a |<j,m,a|psi>|^2."""
    if basis.n != state.n:
        raise ValueError(f"basis is for n={basis.n}, state has n={state.n}")
    entries = {}
    for key, sec in basis.sectors.items():
        overlaps = sec.coeffs @ state.amps[sec.indices]
        entries[key] = float(np.sum(overlaps.real**2 + overlaps.imag**2))
    return JmDistribution(state.n, entries)


def m_marginal(state: StateVector) -> MMarginal:
    probs = state.probabilities()
    marg = np.bincount(popcount_table(state.n), weights=probs,
                       minlength=state.n + 1)
    return MMarginal(state.n, marg)


def t1_rate(dist: JmDistribution) -> float:
    """Collective emission rate over the single-qubit rate, cold bath.

    Weights each (j, m) mass by the downward factor j(j+1) - m(m-1).
    """
    return float(sum(p * (j * (j + 1) - m * (m - 1))
                     for (j, m), p in dist.entries.items()))


def t2_rate(state: StateVector) -> float:
    """Collective dephasing rate over the single-qubit rate."""
    marg = m_marginal(state).probs
    k = np.arange(marg.size)
    gaps = np.abs(k[:, None] - k[None, :]).astype(np.float64)
    return float(marg @ gaps @ marg)


def dephasing_fidelity(state: StateVector, gamma0_t: float) -> float:
    """Fidelity of the dephased state after dimensionless time gamma0_t.

    F = sqrt(sum_{m,m'} P_m P_m' exp(-gamma0_t |m - m'|)); the first-order
    expansion is 1 - t2_rate * gamma0_t / 2.
    """
    if gamma0_t < 0:
        raise ValueError(f"gamma0_t must be nonnegative, got {gamma0_t}")
    marg = m_marginal(state).probs
    k = np.arange(marg.size)
    decay = np.exp(-gamma0_t * np.abs(k[:, None] - k[None, :]))
    return float(np.sqrt(marg @ decay @ marg))


def trace_metrics(states, basis: SymmetrizedBasis, labels=None,
                  include_pjm: bool = False, workers: int | None = None) -> StepTrace:
    """Score an ordered list of states; steps are indexed from 0.

    workers > 1 evaluates steps in a thread pool; results are assembled by
    index, so the output is identical for any worker count.
    """
    states = list(states)
    if not states:
        raise ValueError("need at least one state")
    n = states[0].n
    if any(s.n != n for s in states):
        raise ValueError("all states must share one register size")
    if basis.n != n:
        raise ValueError(f"basis is for n={basis.n}, states have n={n}")
    if labels is None:
        labels = [f"step-{i}" for i in range(len(states))]
    labels = [str(l) for l in labels]
    if len(labels) != len(states):
        raise ValueError("labels and states differ in length")

    def one(state: StateVector):
        dist = p_jm(state, basis)
        return t1_rate(dist), t2_rate(state), dist if include_pjm else None

    if workers is None:
        workers = 1
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(one, states))
    else:
        results = [one(s) for s in states]
    steps = [StepRecord(i, labels[i], r[0], r[1], r[2])
             for i, r in enumerate(results)]
    return StepTrace(n, steps)


def default_workers() -> int:
    return os.cpu_count() or 1
