r"""Distribution of the composite channel amplitude.

For one element the amplitude is the product :math:`\eta = \alpha\beta` of two
independent Rayleigh variables with parameters :math:`\sigma_1, \sigma_2`.
With :math:`a = \sigma_1\sigma_2`,

.. math::

    f_\eta(\eta) = \frac{\eta}{a^2} K_0(\eta/a), \qquad
    F_\eta(\eta) = 1 - \frac{\eta}{a} K_1(\eta/a).

The product is approximated by a Gamma law with matching first and second
moments (:math:`a\pi/2` and :math:`4a^2`); sums of ``n`` such terms are again
Gamma with the shape multiplied by ``n``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import specfun
from .errors import DomainError

__all__ = [
    "RayleighPair",
    "GammaParams",
    "GAMMA_SHAPE",
    "product_moments",
    "product_pdf",
    "product_cdf",
    "product_sf",
    "moment_match",
    "sum_params",
    "gamma_cdf",
    "a_squared_cdf",
    "ks_statistic",
    "max_cdf_gap",
    "sample_rayleigh",
    "sample_product",
]

# k = pi^2 / (16 - pi^2), independent of the fading coefficients
GAMMA_SHAPE = math.pi**2 / (16 - math.pi**2)
_SCALE_FACTOR = (16 - math.pi**2) / (2 * math.pi)


@dataclass(frozen=True)
class RayleighPair:
    """Rayleigh parameters of the two hops."""

    sigma1: float
    sigma2: float

    def __post_init__(self):
        if not (self.sigma1 > 0 and self.sigma2 > 0):
            raise DomainError(
                f"Rayleigh parameters must be positive, got {self.sigma1}, {self.sigma2}"
            )

    @property
    def a(self) -> float:
        return self.sigma1 * self.sigma2


@dataclass(frozen=True)
class GammaParams:
    shape: float
    scale: float

    def __post_init__(self):
        if not (self.shape > 0 and self.scale > 0):
            raise DomainError(f"Gamma parameters must be positive, got {self}")

    def moments(self) -> tuple[float, float]:
        """Raw first and second moments."""
        k, th = self.shape, self.scale
        return k * th, k * (k + 1) * th**2


def product_moments(pair: RayleighPair) -> tuple[float, float]:
    """Exact raw moments ``E[eta] = a pi / 2`` and ``E[eta^2] = 4 a^2``."""
    return pair.a * math.pi / 2, 4 * pair.a**2


def _non_negative(eta, name="eta"):
    arr = np.asarray(eta, dtype=float)
    if np.any(~(arr >= 0)):
        raise DomainError(f"{name} must be non-negative")
    return arr


def product_pdf(pair: RayleighPair, eta):
    """Density of the Rayleigh product; 0 at ``eta = 0`` (removable singularity)."""
    arr = _non_negative(eta)
    x = np.atleast_1d(arr / pair.a)
    out = np.zeros_like(x)
    pos = x > 0
    if pos.any():
        out[pos] = x[pos] * specfun.bessel_k0(x[pos]) / pair.a
    return float(out[0]) if arr.ndim == 0 else out


def product_sf(pair: RayleighPair, eta):
    """Survival function ``(eta/a) K1(eta/a)`` of the Rayleigh product."""
    arr = _non_negative(eta)
    x = np.atleast_1d(arr / pair.a)
    out = np.ones_like(x)
    pos = x > 0
    if pos.any():
        out[pos] = np.clip(x[pos] * specfun.bessel_k1(x[pos]), 0.0, 1.0)
    return float(out[0]) if arr.ndim == 0 else out


def product_cdf(pair: RayleighPair, eta):
    """CDF ``1 - (eta/a) K1(eta/a)``.  The CDF of eta^2 at z is ``product_cdf(pair, sqrt(z))``."""
    return 1.0 - product_sf(pair, eta)


def moment_match(pair: RayleighPair) -> GammaParams:
    """Gamma law sharing the first two moments of the Rayleigh product."""
    return GammaParams(GAMMA_SHAPE, _SCALE_FACTOR * pair.a)


def sum_params(g: GammaParams, n: int) -> GammaParams:
    """Gamma law of the sum of ``n`` independent copies (same scale)."""
    if n < 1:
        raise DomainError(f"need at least one term, got n={n}")
    return GammaParams(n * g.shape, g.scale)


def gamma_cdf(g: GammaParams, x):
    return specfun.reg_gamma_p(g.shape, _non_negative(x, "x") / g.scale)


def a_squared_cdf(g: GammaParams, n: int, z):
    """CDF of ``A^2`` where ``A`` is the ``n``-fold Gamma sum.

    ``P(n k, sqrt(z) / theta)``, a generalized Gamma law.
    """
    total = sum_params(g, n)
    z = _non_negative(z, "z")
    return specfun.reg_gamma_p(total.shape, np.sqrt(z) / total.scale)


def ks_statistic(sample, model_cdf) -> float:
    """Two-sided Kolmogorov-Smirnov distance between a sample and a model CDF.

    ``sample`` is either an :class:`irscov.mc.EmpiricalCDF` or a sorted
    1-d array.  Both step edges ``i/n`` and ``(i-1)/n`` are compared against
    the model at every sample point.
    """
    x = np.asarray(getattr(sample, "samples", sample), dtype=float)
    if x.size == 0:
        raise DomainError("KS statistic needs at least one sample")
    n = x.size
    f = np.broadcast_to(np.asarray(model_cdf(x), dtype=float), x.shape)
    i = np.arange(1, n + 1)
    d_plus = np.max(i / n - f)
    d_minus = np.max(f - (i - 1) / n)
    return float(max(d_plus, d_minus))


def max_cdf_gap(cdf_a, cdf_b, grid) -> float:
    """Largest absolute difference between two CDFs on a grid."""
    grid = np.asarray(grid, dtype=float)
    return float(np.max(np.abs(np.asarray(cdf_a(grid)) - np.asarray(cdf_b(grid)))))


def sample_rayleigh(sigma: float, rng: np.random.Generator, size=None):
    """Rayleigh draws by inverse transform ``sigma * sqrt(-2 ln U)``."""
    u = 1.0 - rng.random(size)  # in (0, 1]
    return sigma * np.sqrt(-2.0 * np.log(u))


def sample_product(pair: RayleighPair, rng: np.random.Generator, size=None):
    """Draw ``alpha * beta`` with independent Rayleigh factors.

    Returns a float when ``size`` is None, otherwise an array of that shape.
    """
    alpha = sample_rayleigh(pair.sigma1, rng, size)
    beta = sample_rayleigh(pair.sigma2, rng, size)
    out = alpha * beta
    return float(out) if size is None else out
