"""
Oscillation profiles, Richardson/Haupt indices and inequality checks.
"""

from .profile import OscillationProfile, profile
from .indices import MIN_STABILITY_MARGIN, IndexReport, Indices, indices
from .checks import (
    CheckRecord,
    CheckStatus,
    comparison_bound,
    comparison_lower_bound,
    degenerate_clusters,
    ghost_lower_bound_check,
    index_bound,
    index_upper_bounds,
    inverse_p_length,
    lyapunov_check,
    minimum_principle_check,
    orthogonality_check,
    n_degenerate,
    rapoport_check,
)
from .report import check_suite, index_report

__all__ = [
    "OscillationProfile",
    "profile",
    "MIN_STABILITY_MARGIN",
    "IndexReport",
    "Indices",
    "indices",
    "CheckRecord",
    "CheckStatus",
    "comparison_bound",
    "comparison_lower_bound",
    "degenerate_clusters",
    "ghost_lower_bound_check",
    "index_bound",
    "index_upper_bounds",
    "inverse_p_length",
    "lyapunov_check",
    "minimum_principle_check",
    "orthogonality_check",
    "n_degenerate",
    "rapoport_check",
    "check_suite",
    "index_report",
]
