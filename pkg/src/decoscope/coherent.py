"""Spin coherent states, overlaps, completeness quadrature and Q maps.

A spin coherent state |theta, phi> is the product of one identical single-spin
rotation per qubit applied to |00...0>. In the computational basis the
amplitude of x depends only on its popcount k:

    amp(x) = cos(theta/2)**(n-k) * (exp(-i phi) sin(theta/2))**k

which reproduces the binomial expansion over the maximal-j ladder
tau**k sqrt(C(n,k)) / (1+|tau|^2)**(n/2) with tau = exp(-i phi) tan(theta/2),
without ever forming tau (stable at theta = pi where tan overflows).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .statevector import StateVector, popcount_table
from .symmetrized import SymmetrizedBasis

DEFAULT_THETA_NODES = 181
DEFAULT_PHI_NODES = 361


@dataclass(frozen=True)
class CoherentParams:
    """Polar angle theta in [0, pi], azimuth phi in radians."""

    theta: float
    phi: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.theta) and math.isfinite(self.phi)):
            raise ValueError("angles must be finite")
        if not 0 <= self.theta <= math.pi:
            raise ValueError(f"theta={self.theta} outside [0, pi]")

    @property
    def tau(self) -> complex:
        """Stereographic parameter exp(-i phi) tan(theta/2); undefined at pi."""
        if self.theta >= math.pi:
            raise ValueError("tau diverges at theta = pi")
        return cmath.exp(-1j * self.phi) * math.tan(self.theta / 2)


@dataclass(frozen=True, eq=False)
class QGrid:
    """Q(theta, phi) samples; values[i, j] belongs to (thetas[i], phis[j])."""

    thetas: np.ndarray
    phis: np.ndarray
    values: np.ndarray


def uniform_mesh(n_theta: int = DEFAULT_THETA_NODES,
                 n_phi: int = DEFAULT_PHI_NODES) -> tuple[np.ndarray, np.ndarray]:
    """Uniform inclusive mesh: theta over [0, pi], phi over [-pi, pi]."""
    if n_theta < 2 or n_phi < 2:
        raise ValueError("mesh needs at least 2 nodes per axis")
    return np.linspace(0.0, math.pi, n_theta), np.linspace(-math.pi, math.pi, n_phi)


def single_qubit_rotation(theta: float, phi: float) -> np.ndarray:
    """2x2 rotation taking |0> (spin-down) to the (theta, phi) spinor.

    Ordered (|0>, |1>) = (down, up); column 0 is (cos(theta/2),
    exp(-i phi) sin(theta/2)).
    """
    c = math.cos(theta / 2)
    s = math.sin(theta / 2)
    phase = cmath.exp(-1j * phi)
    return np.array([[c, -s / phase], [s * phase, c]], dtype=np.complex128)


def _popcount_coefficients(n: int, thetas: np.ndarray,
                           phis: np.ndarray) -> np.ndarray:
    """Rows of per-popcount amplitudes for flat (theta, phi) pairs."""
    ks = np.arange(n + 1)
    c = np.cos(thetas / 2)[:, None]
    s = np.sin(thetas / 2)[:, None]
    phase = np.exp(-1j * phis)[:, None]
    return c ** (n - ks[None, :]) * (phase * s) ** ks[None, :]


def coherent_state(n: int, params: CoherentParams) -> StateVector:
    """Product state |theta, phi> on n qubits."""
    if n < 1:
        raise ValueError(f"need at least one qubit, got n={n}")
    coef = _popcount_coefficients(n, np.array([params.theta]),
                                  np.array([params.phi]))[0]
    return StateVector(n, coef[popcount_table(n)])


def rotate_manifold_state(basis: SymmetrizedBasis, j: float, alpha: int,
                          params: CoherentParams) -> StateVector:
    """Rotate the bottom-rung state |j, -j, alpha> by the coherent rotation.

    The same single-qubit rotation is applied to every qubit, so the result
    stays inside the total-spin-j manifold. With j = n/2 this reproduces
    coherent_state exactly.
    """
    n = basis.n
    rot = single_qubit_rotation(params.theta, params.phi)
    v = basis.vector(j, -j, alpha).astype(np.complex128).reshape([2] * n)
    for axis in range(n):
        v = np.moveaxis(np.tensordot(rot, v, axes=(1, axis)), 0, axis)
    return StateVector(n, v.reshape(-1))


def overlap_sq(n: int, p1: CoherentParams, p2: CoherentParams) -> float:
    """|<p2|p1>|^2 = cos(Phi/2)**(2n) with Phi the sphere angle between them."""
    if n < 1:
        raise ValueError(f"need at least one qubit, got n={n}")
    cos_big = (math.cos(p1.theta) * math.cos(p2.theta)
               + math.sin(p1.theta) * math.sin(p2.theta)
               * math.cos(abs(p1.phi - p2.phi)))
    cos_big = min(1.0, max(-1.0, cos_big))
    return ((1.0 + cos_big) / 2.0) ** n


def symmetric_sector_projector(n: int) -> np.ndarray:
    """Projector onto the j = n/2 manifold, built combinatorially."""
    pc = popcount_table(n)
    sizes = np.array([math.comb(n, k) for k in range(n + 1)], dtype=np.float64)
    eq = (pc[:, None] == pc[None, :]).astype(np.float64)
    return eq / sizes[pc][:, None]


def quadrature_projector(n: int, n_theta: int, n_phi: int) -> np.ndarray:
    """(n+1)/(4 pi) integral of |theta,phi><theta,phi| by quadrature.

    Gauss-Legendre nodes in cos(theta) and a uniform open grid in phi. The
    integrand is a trigonometric polynomial of degree n in each angle, so
    modest node counts already integrate it exactly to rounding.
    """
    if n_theta < 1 or n_phi < 1:
        raise ValueError("quadrature needs at least one node per axis")
    u, w_theta = np.polynomial.legendre.leggauss(n_theta)
    thetas = np.arccos(u)
    phis = 2 * math.pi * np.arange(n_phi) / n_phi - math.pi
    tt, pp = np.meshgrid(thetas, phis, indexing="ij")
    ww = np.repeat(w_theta, n_phi) * (2 * math.pi / n_phi)
    coef = _popcount_coefficients(n, tt.reshape(-1), pp.reshape(-1))
    amps = coef[:, popcount_table(n)]
    return (amps.T * ww) @ amps.conj() * (n + 1) / (4 * math.pi)


def completeness_residual(n: int, n_theta: int, n_phi: int) -> float:
    """Max deviation of the coherent-state quadrature from the j=n/2 projector."""
    diff = quadrature_projector(n, n_theta, n_phi) - symmetric_sector_projector(n)
    return float(np.max(np.abs(diff)))


def q_function(state: StateVector, thetas: np.ndarray | None = None,
               phis: np.ndarray | None = None) -> QGrid:
    """Sample Q(theta, phi) = |<theta,phi|psi>|^2 on a separable mesh.

    Only the n+1 popcount-binned amplitude sums of psi enter, so the cost per
    node is O(n), not O(2**n).
    """
    if thetas is None or phis is None:
        d_thetas, d_phis = uniform_mesh()
        thetas = d_thetas if thetas is None else thetas
        phis = d_phis if phis is None else phis
    thetas = np.atleast_1d(np.asarray(thetas, dtype=np.float64))
    phis = np.atleast_1d(np.asarray(phis, dtype=np.float64))
    if thetas.size == 0 or phis.size == 0:
        raise ValueError("mesh axes must be nonempty")
    n = state.n
    ks = np.arange(n + 1)
    sums = np.bincount(popcount_table(n), weights=state.amps.real,
                       minlength=n + 1) \
        + 1j * np.bincount(popcount_table(n), weights=state.amps.imag,
                           minlength=n + 1)
    c = np.cos(thetas / 2)[:, None]
    s = np.sin(thetas / 2)[:, None]
    radial = c ** (n - ks[None, :]) * s ** ks[None, :]
    azimuthal = np.exp(1j * np.outer(ks, phis))
    overlaps = (radial * sums[None, :]) @ azimuthal
    return QGrid(thetas, phis, overlaps.real**2 + overlaps.imag**2)
