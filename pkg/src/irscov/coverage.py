"""Closed-form coverage probability and the minimum-element solver.

Coverage is ``Pr(SNR >= gamma_th)`` with the phase-aligned SNR
``A^2 * avg_snr / (d_s d_r)^2``.  For a single element the law of ``A`` is
known exactly; for any ``N`` the Gamma approximation gives

    P_cov = Q(N k, s),   s = d_s d_r / theta * sqrt(gamma_th / avg_snr)

with ``Q`` the regularized upper incomplete Gamma function.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

from . import specfun
from .channel import Scenario, average_snr
from .dist import RayleighPair, moment_match, sum_params
from .errors import DomainError, NoSolutionError, PreconditionError

__all__ = [
    "CoverageQuery",
    "CoverageResult",
    "coverage_exact_n1",
    "coverage_general",
    "analytic_coverage",
    "optimal_elements",
]

EXACT = "exact-n1"
GAMMA = "gamma-approx"
MONTE_CARLO = "monte-carlo"

_DEGENERATE = "average SNR is zero (no elements or grazing incidence); coverage is 0"


@dataclass(frozen=True)
class CoverageQuery:
    scenario: Scenario
    gamma_th: float  # linear SNR threshold

    def __post_init__(self):
        if not self.gamma_th >= 0:
            raise DomainError(f"gamma_th must be >= 0, got {self.gamma_th}")


@dataclass(frozen=True)
class CoverageResult:
    probability: float
    method: str
    s_value: float
    shape_value: float | None = None
    diagnostics: tuple[str, ...] = field(default=())


def _clamp(p: float) -> float:
    return min(1.0, max(0.0, p))


def coverage_exact_n1(q: CoverageQuery) -> CoverageResult:
    """Exact single-element coverage ``x K1(x)``, ``x = d_s d_r / a * sqrt(gamma_th / avg_snr)``."""
    s = q.scenario
    if s.n_elements != 1:
        raise PreconditionError(f"exact form needs exactly one element, got N={s.n_elements}")
    if q.gamma_th == 0:
        return CoverageResult(1.0, EXACT, 0.0)
    snr = average_snr(s)
    if snr == 0:
        return CoverageResult(0.0, EXACT, math.inf, diagnostics=(_DEGENERATE,))
    x = s.d_s * s.d_r / s.fading_product * math.sqrt(q.gamma_th / snr)
    if math.isinf(x):
        return CoverageResult(0.0, EXACT, x)
    return CoverageResult(_clamp(x * specfun.bessel_k1(x)), EXACT, x)


def coverage_general(q: CoverageQuery) -> CoverageResult:
    """Gamma-approximated coverage for any number of elements.

    ``N = 0`` is answered by its limit (0, or 1 at a zero threshold) rather
    than evaluating ``Q(0, s)``.
    """
    s = q.scenario
    n = s.n_elements
    if n < 0:
        raise DomainError(f"n_elements must be >= 0, got {n}")
    if q.gamma_th == 0:
        return CoverageResult(1.0, GAMMA, 0.0, n * moment_match(_pair(s)).shape)
    if n == 0:
        return CoverageResult(0.0, GAMMA, math.inf, 0.0)
    g = sum_params(moment_match(_pair(s)), n)
    snr = average_snr(s)
    if snr == 0:
        return CoverageResult(0.0, GAMMA, math.inf, g.shape, (_DEGENERATE,))
    arg = s.d_s * s.d_r / g.scale * math.sqrt(q.gamma_th / snr)
    if math.isinf(arg):
        return CoverageResult(0.0, GAMMA, arg, g.shape)
    return CoverageResult(_clamp(specfun.reg_gamma_q(g.shape, arg)), GAMMA, arg, g.shape)


def analytic_coverage(q: CoverageQuery, method: str = "gamma") -> CoverageResult:
    """Dispatch on ``method``: ``"gamma"``, ``"exact"`` or ``"auto"`` (exact when N = 1)."""
    if method == "exact" or (method == "auto" and q.scenario.n_elements == 1):
        return coverage_exact_n1(q)
    if method in ("gamma", "auto"):
        return coverage_general(q)
    raise ValueError(f"unknown method {method!r}")


def _pair(s: Scenario) -> RayleighPair:
    return RayleighPair(s.sigma1, s.sigma2)


def optimal_elements(
    scenario: Scenario,
    gamma_th: float,
    epsilon: float = 1e-3,
    max_elements: int = 10**6,
) -> int:
    """Smallest N whose Gamma-approximated coverage reaches ``1 - epsilon``.

    The element side stays fixed, so the area grows as ``N * l_e**2``.
    Coverage is monotone in N, so the search gallops upward from N = 1 and
    then bisects the last bracket.

    Raises
    ------
    DomainError
        If ``gamma_th <= 0`` or ``epsilon`` is outside (0, 1).
    NoSolutionError
        If the target is not met at ``max_elements``.
    """
    if not gamma_th > 0:
        raise DomainError(f"gamma_th must be > 0, got {gamma_th}")
    if not 0 < epsilon < 1:
        raise DomainError(f"epsilon must lie in (0, 1), got {epsilon}")
    target = 1.0 - epsilon

    def covered(n):
        q = CoverageQuery(scenario.replace(n_elements=n), gamma_th)
        return coverage_general(q).probability >= target

    lo, hi = 0, 1
    while not covered(hi):
        if hi >= max_elements:
            raise NoSolutionError(
                f"coverage {target} not reached with up to {max_elements} elements"
            )
        lo, hi = hi, min(2 * hi, max_elements)
    # invariant: covered(hi) and (lo == 0 or not covered(lo))
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if covered(mid):
            hi = mid
        else:
            lo = mid
    return hi
