"""File formats: trace JSON/CSV, state files, oracle tables, CG dumps, Q grids.

All floating-point fields are written with 17 significant digits, which round
trips IEEE doubles exactly, so write-then-read returns bitwise-equal numbers.
JSON is the canonical trace format; CSV drops the P(j,m) payload.
"""

from __future__ import annotations

import json
import math

import numpy as np

from .coherent import QGrid
from .metrics import JmDistribution, StepRecord, StepTrace
from .statevector import StateVector
from .symmetrized import SymmetrizedBasis

STATE_NORM_TOL = 1e-6


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def trace_to_json(trace: StepTrace) -> str:
    lines = ['{"n": %d, "steps": [' % trace.n]
    for i, step in enumerate(trace.steps):
        fields = [
            '"index": %d' % step.index,
            '"label": %s' % json.dumps(step.label),
            '"t1": %s' % _fmt(step.t1),
            '"t2": %s' % _fmt(step.t2),
        ]
        if step.pjm is not None:
            entries = ", ".join(
                '{"j": %s, "m": %s, "p": %s}' % (_fmt(j), _fmt(m), _fmt(p))
                for (j, m), p in step.pjm.sorted_items()
            )
            fields.append('"pjm": [%s]' % entries)
        tail = "," if i + 1 < len(trace.steps) else ""
        lines.append("  {%s}%s" % (", ".join(fields), tail))
    lines.append("]}")
    return "\n".join(lines) + "\n"


def write_trace_json(trace: StepTrace, path) -> None:
    with open(path, "w", encoding="ascii") as fh:
        fh.write(trace_to_json(trace))


def read_trace_json(path) -> StepTrace:
    with open(path, encoding="ascii") as fh:
        raw = json.load(fh)
    n = int(raw["n"])
    steps = []
    for i, item in enumerate(raw["steps"]):
        if int(item["index"]) != i:
            raise ValueError(f"step indices not contiguous at position {i}")
        pjm = None
        if "pjm" in item:
            entries = {(float(e["j"]), float(e["m"])): float(e["p"])
                       for e in item["pjm"]}
            pjm = JmDistribution(n, entries)
        steps.append(StepRecord(i, str(item["label"]), float(item["t1"]),
                                float(item["t2"]), pjm))
    return StepTrace(n, steps)


def write_trace_csv(trace: StepTrace, path) -> None:
    """Lossy delimited form: index,label,t1,t2 (no P(j,m) columns)."""
    with open(path, "w", encoding="ascii") as fh:
        fh.write("index,label,t1,t2\n")
        for step in trace.steps:
            fh.write(f"{step.index},{step.label},{_fmt(step.t1)},{_fmt(step.t2)}\n")


def write_state_file(state: StateVector, path) -> None:
    """One amplitude per line as 're im'."""
    with open(path, "w", encoding="ascii") as fh:
        for a in state.amps:
            fh.write(f"{_fmt(a.real)} {_fmt(a.imag)}\n")


def read_state_file(path) -> StateVector:
    """Read 2**n lines of 're im'; rejects norms off unity by > 1e-6."""
    amps = []
    with open(path, encoding="ascii") as fh:
        for lineno, line in enumerate(fh, 1):
            if not line.strip():
                continue
            parts = line.split()
            if len(parts) != 2:
                raise ValueError(
                    f"{path}:{lineno}: expected 're im', got {line.strip()!r}"
                )
            amps.append(complex(float(parts[0]), float(parts[1])))
    size = len(amps)
    if size < 2 or size & (size - 1):
        raise ValueError(f"{path}: {size} amplitudes is not a power of two >= 2")
    vec = np.array(amps, dtype=np.complex128)
    norm = float(np.linalg.norm(vec))
    if abs(norm - 1.0) > STATE_NORM_TOL:
        raise ValueError(f"{path}: norm {norm} deviates from 1 by more than "
                         f"{STATE_NORM_TOL}")
    return StateVector(size.bit_length() - 1, vec)


def write_basis_csv(basis: SymmetrizedBasis, path) -> None:
    """Coefficient table with columns j,m,alpha,x,coefficient.

    Rows are grouped by m-sector (descending m), then descending j, ascending
    alpha and x, mirroring the usual tabulated layout.
    """
    with open(path, "w", encoding="ascii") as fh:
        fh.write("j,m,alpha,x,coefficient\n")
        keys = sorted(basis.sectors, key=lambda key: (-key[1], -key[0]))
        for key in keys:
            sec = basis.sectors[key]
            for a in range(sec.coeffs.shape[0]):
                for x, c in zip(sec.indices, sec.coeffs[a]):
                    fh.write(f"{_fmt(sec.j)},{_fmt(sec.m)},{a + 1},"
                             f"{int(x)},{_fmt(c)}\n")


def write_qgrid_csv(grid: QGrid, path) -> None:
    with open(path, "w", encoding="ascii") as fh:
        fh.write("theta,phi,q\n")
        for i, theta in enumerate(grid.thetas):
            for j, phi in enumerate(grid.phis):
                fh.write(f"{_fmt(theta)},{_fmt(phi)},{_fmt(grid.values[i, j])}\n")


def write_qgrid_pgm(grid: QGrid, path) -> None:
    """Binary 8-bit PGM; Q=1 maps to black, Q=0 to white."""
    q = np.clip(grid.values, 0.0, 1.0)
    pixels = np.round((1.0 - q) * 255).astype(np.uint8)
    height, width = pixels.shape
    with open(path, "wb") as fh:
        fh.write(f"P5\n{width} {height}\n255\n".encode("ascii"))
        fh.write(pixels.tobytes())
