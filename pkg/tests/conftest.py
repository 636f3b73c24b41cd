"""Shared test helpers: cached bases, random states, span residuals, remixing."""

from __future__ import annotations

import numpy as np
import pytest

from decoscope import (Sector, StateVector, SymmetrizedBasis,
                       build_symmetrized_basis)


@pytest.fixture(scope="session")
def basis_cache():
    cache: dict[int, SymmetrizedBasis] = {}

    def get(n: int) -> SymmetrizedBasis:
        if n not in cache:
            cache[n] = build_symmetrized_basis(n)
        return cache[n]

    return get


def random_state(n: int, rng: np.random.Generator) -> StateVector:
    v = rng.normal(size=1 << n) + 1j * rng.normal(size=1 << n)
    return StateVector(n, v / np.linalg.norm(v))


def span_residual(amps: np.ndarray, vectors) -> float:
    """Distance from amps to the span of the given (possibly oblique) vectors."""
    stacked = np.stack([np.asarray(v, dtype=np.complex128) for v in vectors],
                       axis=1)
    q, _ = np.linalg.qr(stacked)
    proj = q @ (q.conj().T @ amps)
    return float(np.linalg.norm(amps - proj))


def remixed_basis(basis: SymmetrizedBasis,
                  rng: np.random.Generator) -> SymmetrizedBasis:
    """Random orthogonal remix inside every degenerate (j, m) block."""
    sectors = {}
    for key, sec in basis.sectors.items():
        d = sec.coeffs.shape[0]
        g = rng.normal(size=(d, d))
        q, r = np.linalg.qr(g)
        q = q * np.sign(np.diag(r))
        sectors[key] = Sector(sec.j, sec.m, sec.indices, q @ sec.coeffs)
    return SymmetrizedBasis(basis.n, sectors, dict(basis.degeneracy))
