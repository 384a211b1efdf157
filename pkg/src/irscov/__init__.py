"""Coverage probability of IRS-aided links.

Closed forms (exact for one element, Gamma-approximated for any count), an
optimal element-count solver and a seeded Monte Carlo cross-check.
"""
from .channel import Scenario, average_snr, far_field_min_distance, path_loss, validate
from .coverage import (
    CoverageQuery,
    CoverageResult,
    analytic_coverage,
    coverage_exact_n1,
    coverage_general,
    optimal_elements,
)
from .dist import GammaParams, RayleighPair, moment_match, sum_params
from .mc import SimConfig, SimReport, simulate_coverage, simulate_sweep

__version__ = "0.1.0"

__all__ = [
    "Scenario",
    "average_snr",
    "far_field_min_distance",
    "path_loss",
    "validate",
    "CoverageQuery",
    "CoverageResult",
    "analytic_coverage",
    "coverage_exact_n1",
    "coverage_general",
    "optimal_elements",
    "GammaParams",
    "RayleighPair",
    "moment_match",
    "sum_params",
    "SimConfig",
    "SimReport",
    "simulate_coverage",
    "simulate_sweep",
]
