"""Exact n-qubit Deutsch-Jozsa and Grover trajectories with per-step
collective T1/T2 vulnerability scores.

The register is a dense state vector. Scoring projects each intermediate state
onto the symmetrized total-spin basis for the longitudinal rate, aggregates
the m-marginal for the dephasing rate, and samples spin-coherent overlaps for
Q maps of where the state sits on the collective sphere.
"""

from .algorithms import (BUILTIN_ORACLE_NAMES, DnfDecomposition, GroverConfig,
                         Minterm, OracleSpec, apply_minterm_block,
                         builtin_oracles, default_grover_iterations,
                         dj_run, dnf_decompose, grover_run,
                         grover_success_probability, oracle_from_file,
                         oracle_from_string)
from .coherent import (CoherentParams, QGrid, coherent_state,
                       completeness_residual, overlap_sq, q_function,
                       quadrature_projector, rotate_manifold_state,
                       single_qubit_rotation, symmetric_sector_projector,
                       uniform_mesh)
from .metrics import (JmDistribution, MMarginal, StepRecord, StepTrace,
                      dephasing_fidelity, m_marginal, p_jm, t1_rate, t2_rate,
                      trace_metrics)
from .statevector import (StateVector, hadamard_all, m_value, phase_oracle,
                          popcount_table, prepare_basis_state,
                          reflect_about_basis_state)
from .symmetrized import (MAX_QUBITS, Sector, SymmetrizedBasis,
                          apply_j_squared, apply_lowering, apply_raising,
                          build_symmetrized_basis, degeneracy,
                          j_squared_matrix, sector_indices, transition_factor)
from .traceio import (read_state_file, read_trace_json, write_basis_csv,
                      write_qgrid_csv, write_qgrid_pgm, write_state_file,
                      write_trace_csv, write_trace_json)

__version__ = "0.1.0"
