"""Entanglement witnesses from positive linear maps.

Thin wrapper over the compiled core: Choi matrices of the generalized Choi
family, witness pairings, PPT-state search, exposedness certificates, and the
determinant-polynomial machinery.
"""

from ._core import (
    apply_map,
    canonical_kill_vectors,
    certify_exposedness,
    choi_matrix,
    choi_matrix_t,
    classify,
    d_polynomial,
    decompose_on_plane,
    det_oracle,
    detects,
    eig_min,
    enumerate_kill_vectors,
    find_detected_ppt_state,
    is_ppt,
    kill_value,
    pairing,
    partial_transpose,
    span_rank,
    t_params,
)

__version__ = "0.1.0"

__all__ = [
    "apply_map",
    "canonical_kill_vectors",
    "certify_exposedness",
    "choi_matrix",
    "choi_matrix_t",
    "classify",
    "d_polynomial",
    "decompose_on_plane",
    "det_oracle",
    "detects",
    "eig_min",
    "enumerate_kill_vectors",
    "find_detected_ppt_state",
    "is_ppt",
    "kill_value",
    "pairing",
    "partial_transpose",
    "span_rank",
    "t_params",
]
