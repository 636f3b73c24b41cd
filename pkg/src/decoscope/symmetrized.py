"""Symmetrized collective-spin basis |j, m, alpha> over the computational states.

Each basis vector is a simultaneous eigenstate of J^2 (eigenvalue j(j+1)) and
J^z (eigenvalue m). Construction never touches the full 2**n-dimensional
operator: J^z is diagonal in the computational basis, so J^2 block-diagonalizes
over fixed-m sectors and each block is a small real symmetric matrix. The
degenerate eigenvectors inside one (j, m) block carry the extra label
alpha = 1 .. d(j); any orthonormal remixing of them describes the same physics,
and every exported metric is invariant under such remixing.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .statevector import popcount_table

# Above this the sector coefficient tables get into the hundreds of MB.
MAX_QUBITS = 14

# Eigenvalues of the sector matrices are clustered to the nearest j(j+1).
CLUSTER_TOL = 1e-6

_SIGN_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class Sector:
    """One (j, m) block: packed coefficients over the m-sector support.

    indices lists the computational states x with m_value(x) = m, ascending.
    coeffs has shape (d, len(indices)); row alpha-1 holds the coefficients of
    |j, m, alpha> on those states. All coefficients are real.
    """

    j: float
    m: float
    indices: np.ndarray
    coeffs: np.ndarray


@dataclass(frozen=True, eq=False)
class SymmetrizedBasis:
    """Complete orthonormal |j, m, alpha> basis for n qubits."""

    n: int
    sectors: dict[tuple[float, float], Sector]
    degeneracy: dict[float, int]

    def j_values(self) -> list[float]:
        return sorted(self.degeneracy)

    def sector(self, j: float, m: float) -> Sector:
        key = (float(j), float(m))
        if key not in self.sectors:
            raise ValueError(f"no sector (j={j}, m={m}) for n={self.n}")
        return self.sectors[key]

    def vector(self, j: float, m: float, alpha: int) -> np.ndarray:
        """Full-length (2**n) real coefficient array of |j, m, alpha>."""
        sec = self.sector(j, m)
        if not 1 <= alpha <= sec.coeffs.shape[0]:
            raise ValueError(
                f"alpha={alpha} out of range 1..{sec.coeffs.shape[0]} "
                f"for sector (j={j}, m={m})"
            )
        out = np.zeros(1 << self.n)
        out[sec.indices] = sec.coeffs[alpha - 1]
        return out

    def stacked(self) -> tuple[np.ndarray, list[tuple[float, float, int]]]:
        """All basis vectors as rows, with their (j, m, alpha) labels."""
        rows = []
        labels = []
        for (j, m) in sorted(self.sectors, key=lambda key: (-key[0], -key[1])):
            sec = self.sectors[(j, m)]
            for a in range(sec.coeffs.shape[0]):
                row = np.zeros(1 << self.n)
                row[sec.indices] = sec.coeffs[a]
                rows.append(row)
                labels.append((j, m, a + 1))
        return np.stack(rows), labels


def degeneracy(n: int, j: float) -> int:
    """Multiplicity d(j) of total spin j for n spin-1/2 constituents."""
    two_j = round(2 * j)
    if abs(2 * j - two_j) > 1e-9 or two_j < 0 or two_j > n or (n - two_j) % 2:
        raise ValueError(f"invalid total spin j={j} for n={n}")
    a = (n + two_j) // 2 + 1  # n/2 + j + 1
    b = (n - two_j) // 2      # n/2 - j
    return math.factorial(n) * (two_j + 1) // (math.factorial(a) * math.factorial(b))


def transition_factor(j: float, m: float, direction: str) -> float:
    """Squared collective ladder matrix element |<j,m+-1,a|J^+-|j,m,a>|^2.

    "up" gives (j-m)(j+m+1), "down" gives (j+m)(j-m+1). The downward factor
    vanishes at m=-j: maximally subradiant, nothing left to emit collectively.
    """
    if direction not in ("up", "down"):
        raise ValueError(f"direction must be 'up' or 'down', got {direction!r}")
    if j < 0 or abs(m) > j + 1e-12:
        raise ValueError(f"require 0 <= |m| <= j, got j={j}, m={m}")
    if direction == "up":
        return (j - m) * (j + m + 1)
    return (j + m) * (j - m + 1)


def sector_indices(n: int, m: float) -> np.ndarray:
    """Computational states with collective projection m, ascending."""
    k = _ups_for_m(n, m)
    return np.nonzero(popcount_table(n) == k)[0]


def j_squared_matrix(n: int, m: float) -> np.ndarray:
    """J^2 restricted to the m-sector, over sector_indices(n, m) ordering.

    Matrix elements follow from J^2 = (J^+J^- + J^-J^+)/2 + (J^z)^2: the
    diagonal is n/2 + m^2 and every pair of sector states related by moving
    one up-spin to a down site couples with coefficient 1.
    """
    k = _ups_for_m(n, m)
    indices = sector_indices(n, m)
    pos = {int(x): i for i, x in enumerate(indices)}
    dim = indices.size
    mat = np.zeros((dim, dim))
    diag = n / 2 + m * m
    for i, x in enumerate(map(int, indices)):
        mat[i, i] = diag
        for a in range(n):
            if not (x >> a) & 1:
                continue
            for b in range(n):
                if (x >> b) & 1:
                    continue
                y = (x ^ (1 << a)) | (1 << b)
                mat[i, pos[y]] = 1.0
    return mat


def build_symmetrized_basis(n: int) -> SymmetrizedBasis:
    """Diagonalize every m-sector of J^2 and assemble the |j,m,alpha> basis.

    Within a degenerate cluster the eigensolver output (already orthonormal)
    gets a deterministic alpha convention: signs fixed so the first
    non-negligible coefficient is positive, then rows sorted lexicographically.
    """
    if not 1 <= n <= MAX_QUBITS:
        raise ValueError(f"n={n} outside supported range 1..{MAX_QUBITS}")
    sectors: dict[tuple[float, float], Sector] = {}
    counts: dict[float, int] = {}
    j_min = 0.5 if n % 2 else 0.0
    for k in range(n + 1):
        m = k - n / 2
        indices = sector_indices(n, m)
        evals, evecs = np.linalg.eigh(j_squared_matrix(n, m))
        targets = np.arange(max(j_min, abs(m)), n / 2 + 0.5)
        blocks: dict[float, list[np.ndarray]] = {}
        for idx, lam in enumerate(evals):
            near = int(np.argmin(np.abs(targets * (targets + 1) - lam)))
            j = float(targets[near])
            if abs(j * (j + 1) - lam) > CLUSTER_TOL:
                raise RuntimeError(
                    f"sector eigenvalue {lam} does not cluster to any j(j+1)"
                )
            blocks.setdefault(j, []).append(evecs[:, idx].copy())
        for j, vecs in blocks.items():
            rows = np.stack([_canonical_sign(v) for v in vecs])
            order = sorted(range(len(vecs)),
                           key=lambda r: tuple(np.round(rows[r], 12)))
            rows = rows[order]
            if rows.shape[0] != degeneracy(n, j):
                raise RuntimeError(
                    f"block (j={j}, m={m}) has {rows.shape[0]} vectors, "
                    f"expected d(j)={degeneracy(n, j)}"
                )
            sectors[(j, m)] = Sector(j, m, indices, rows)
            if m == -j:
                counts[j] = rows.shape[0]
    total = sum(d * round(2 * j + 1) for j, d in counts.items())
    if total != 1 << n:
        raise RuntimeError(f"basis dimension {total} != 2**{n}")
    return SymmetrizedBasis(n, sectors, counts)


def apply_lowering(vecs: np.ndarray, n: int) -> np.ndarray:
    """Collective J^- on full-length coefficients (first axis = state index)."""
    v = np.asarray(vecs)
    out = np.zeros_like(v)
    every = np.arange(1 << n)
    for b in range(n):
        bit = 1 << b
        src = np.nonzero(every & bit)[0]
        out[src ^ bit] += v[src]
    return out


def apply_raising(vecs: np.ndarray, n: int) -> np.ndarray:
    """Collective J^+ on full-length coefficients (first axis = state index)."""
    v = np.asarray(vecs)
    out = np.zeros_like(v)
    every = np.arange(1 << n)
    for b in range(n):
        bit = 1 << b
        src = np.nonzero(every & bit == 0)[0]
        out[src | bit] += v[src]
    return out


def apply_j_squared(vecs: np.ndarray, n: int) -> np.ndarray:
    """Collective J^2 on full-length coefficients (first axis = state index)."""
    v = np.asarray(vecs)
    mvals = popcount_table(n) - n / 2
    if v.ndim > 1:
        mvals = mvals.reshape((-1,) + (1,) * (v.ndim - 1))
    ladder = 0.5 * (apply_raising(apply_lowering(v, n), n)
                    + apply_lowering(apply_raising(v, n), n))
    return ladder + mvals * mvals * v


def _ups_for_m(n: int, m: float) -> int:
    k = m + n / 2
    k_int = round(k)
    if abs(k - k_int) > 1e-9 or not 0 <= k_int <= n:
        raise ValueError(f"invalid projection m={m} for n={n}")
    return k_int


def _canonical_sign(vec: np.ndarray) -> np.ndarray:
    for c in vec:
        if abs(c) > _SIGN_TOL:
            return vec if c > 0 else -vec
    return vec
