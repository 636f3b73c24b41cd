"""Serialization round trips, format rejection paths, output determinism."""

import numpy as np
import pytest

from conftest import random_state
from decoscope import (builtin_oracles, dj_run, prepare_basis_state,
                       read_state_file, read_trace_json, trace_metrics,
                       write_basis_csv, write_qgrid_csv, write_qgrid_pgm,
                       write_state_file, write_trace_csv, write_trace_json)
from decoscope.coherent import QGrid


def _small_trace(basis_cache, include_pjm=True):
    steps = dj_run(builtin_oracles("parity", 3), 0)
    return trace_metrics([s for _, s in steps], basis_cache(3),
                         labels=[l for l, _ in steps], include_pjm=include_pjm)


def test_trace_json_roundtrip_bitwise(tmp_path, basis_cache):
    trace = _small_trace(basis_cache)
    path = tmp_path / "trace.json"
    write_trace_json(trace, path)
    back = read_trace_json(path)
    assert back.n == trace.n
    assert len(back.steps) == len(trace.steps)
    for a, b in zip(trace.steps, back.steps):
        assert (a.index, a.label) == (b.index, b.label)
        assert a.t1 == b.t1 and a.t2 == b.t2  # 17 significant digits round trip
        assert a.pjm.entries == b.pjm.entries


def test_trace_json_detects_gap_in_indices(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text('{"n": 2, "steps": ['
                    '{"index": 0, "label": "a", "t1": 0, "t2": 0},'
                    '{"index": 2, "label": "b", "t1": 0, "t2": 0}]}')
    with pytest.raises(ValueError):
        read_trace_json(path)


def test_trace_csv_layout(tmp_path, basis_cache):
    trace = _small_trace(basis_cache, include_pjm=False)
    path = tmp_path / "trace.csv"
    write_trace_csv(trace, path)
    lines = path.read_text().splitlines()
    assert lines[0] == "index,label,t1,t2"
    assert len(lines) == 1 + len(trace.steps)
    first = lines[1].split(",")
    assert first[0] == "0" and first[1] == "initial"
    assert float(first[2]) == trace.steps[0].t1


def test_state_file_roundtrip(tmp_path):
    rng = np.random.default_rng(53)
    state = random_state(4, rng)
    path = tmp_path / "state.txt"
    write_state_file(state, path)
    back = read_state_file(path)
    assert back.n == 4
    np.testing.assert_array_equal(back.amps, state.amps)


def test_state_file_rejects_bad_norm(tmp_path):
    path = tmp_path / "state.txt"
    path.write_text("1.0 0.0\n0.1 0.0\n")
    with pytest.raises(ValueError):
        read_state_file(path)


def test_state_file_rejects_bad_shape(tmp_path):
    path = tmp_path / "state.txt"
    path.write_text("1.0 0.0\n0.0 0.0\n0.0 0.0\n")
    with pytest.raises(ValueError):
        read_state_file(path)
    path.write_text("1.0\n0.0\n")
    with pytest.raises(ValueError):
        read_state_file(path)


def test_state_file_skips_blank_lines(tmp_path):
    path = tmp_path / "state.txt"
    path.write_text("1.0 0.0\n\n0.0 0.0\n")
    assert read_state_file(path).probability(0) == 1.0


def test_basis_csv_layout(tmp_path, basis_cache):
    path = tmp_path / "basis.csv"
    write_basis_csv(basis_cache(2), path)
    lines = path.read_text().splitlines()
    assert lines[0] == "j,m,alpha,x,coefficient"
    assert len(lines) == 1 + 6  # sectors of sizes 1, 2, 2, 1
    singlet = [l for l in lines[1:] if l.startswith("0,0,")]
    coeffs = sorted(float(l.split(",")[4]) for l in singlet)
    np.testing.assert_allclose(coeffs, [-(2**-0.5), 2**-0.5], atol=1e-12)


def test_qgrid_csv(tmp_path):
    grid = QGrid(np.array([0.0, 1.0]), np.array([0.0, 0.5, 1.0]),
                 np.arange(6, dtype=float).reshape(2, 3) / 10)
    path = tmp_path / "q.csv"
    write_qgrid_csv(grid, path)
    lines = path.read_text().splitlines()
    assert lines[0] == "theta,phi,q"
    assert len(lines) == 7
    assert lines[1] == "0,0,0"
    assert lines[-1] == "1,1,0.5"


def test_qgrid_pgm_black_is_full_q(tmp_path):
    grid = QGrid(np.array([0.0, 1.0]), np.array([0.0, 0.5, 1.0]),
                 np.array([[1.0, 0.5, 0.0], [0.0, 1.0, 0.25]]))
    path = tmp_path / "q.pgm"
    write_qgrid_pgm(grid, path)
    raw = path.read_bytes()
    assert raw.startswith(b"P5\n3 2\n255\n")
    pixels = raw[len(b"P5\n3 2\n255\n"):]
    assert list(pixels) == [0, 128, 255, 255, 0, 191]


def test_trace_bytes_identical_across_worker_counts(tmp_path, basis_cache):
    steps = dj_run(builtin_oracles("parity", 4), 0)
    states = [s for _, s in steps]
    labels = [l for l, _ in steps]
    paths = []
    for workers in (1, 4):
        trace = trace_metrics(states, basis_cache(4), labels=labels,
                              include_pjm=True, workers=workers)
        path = tmp_path / f"w{workers}.json"
        write_trace_json(trace, path)
        paths.append(path.read_bytes())
    assert paths[0] == paths[1]


def test_rewrite_is_byte_stable(tmp_path, basis_cache):
    trace = trace_metrics([prepare_basis_state(3, 2)], basis_cache(3))
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    write_trace_json(trace, a)
    write_trace_json(trace, b)
    assert a.read_bytes() == b.read_bytes()
