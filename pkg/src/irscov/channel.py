"""Deterministic link budget of an IRS-assisted link.

All quantities are linear (powers in milliwatts, gains dimensionless, angles
in radians).  dB conversions belong to the command-line layer.
"""
from __future__ import annotations

import dataclasses
import math
import numbers
from dataclasses import dataclass

__all__ = [
    "Scenario",
    "Diagnostic",
    "path_loss",
    "average_snr",
    "instantaneous_snr",
    "far_field_min_distance",
    "surface_side",
    "validate",
    "incidence_cosine",
]

# Fading coefficient at which the default link (P_s = 0 dBm, noise -90 dBm,
# lambda = 6 cm, l_e = lambda/2, d_s = d_r = 100 m) needs 8, 12 and 19
# elements for complete coverage (eps = 1e-3) at 10, 20 and 30 dB.  Any value
# in [21.75, 22.75] does; only the product sigma * lambda matters.
CALIBRATED_SIGMA = 22.5


@dataclass(frozen=True)
class Scenario:
    """Geometry, radio and surface description of one link.

    Attributes
    ----------
    d_s, d_r : float
        Source-to-surface and surface-to-destination distances [m].
    theta_s : float
        Angle of incidence measured from the surface normal [rad].
    g_s, g_r : float
        Linear antenna gains.
    p_s : float
        Transmit power [mW].
    noise_power : float
        Noise variance sigma_n^2 [mW].
    element_side : float
        Side length l_e of one square element [m].
    n_elements : int
        Number of reflecting elements N.
    wavelength : float
        Carrier wavelength [m].
    sigma1, sigma2 : float
        Rayleigh parameters of the source-to-surface and surface-to-destination
        hops.
    """

    d_s: float = 100.0
    d_r: float = 100.0
    theta_s: float = 0.0
    g_s: float = 1.0
    g_r: float = 1.0
    p_s: float = 1.0
    noise_power: float = 1e-9  # -90 dBm
    element_side: float = 0.03
    n_elements: int = 1
    wavelength: float = 0.06
    sigma1: float = CALIBRATED_SIGMA
    sigma2: float = CALIBRATED_SIGMA

    @property
    def area(self) -> float:
        """Total reflecting area ``uw = N * l_e**2``."""
        return self.n_elements * self.element_side**2

    @property
    def fading_product(self) -> float:
        return self.sigma1 * self.sigma2

    def replace(self, **changes) -> "Scenario":
        return dataclasses.replace(self, **changes)


@dataclass(frozen=True)
class Diagnostic:
    field: str
    severity: str  # "error" | "warning"
    message: str


def incidence_cosine(theta_s: float) -> float:
    """cos(theta_s), snapped to exactly 0 at grazing incidence."""
    if abs(theta_s - math.pi / 2) < 1e-12:
        return 0.0
    return math.cos(theta_s)


def path_loss(s: Scenario) -> float:
    """Far-field path loss of the surface-assisted link.

    ``G_s G_r / (4 pi)^2 * (uw / (d_s d_r))^2 * cos(theta_s)``; note the
    single power of the cosine, unlike :func:`average_snr`.
    """
    return (
        s.g_s * s.g_r / (4 * math.pi) ** 2
        * (s.area / (s.d_s * s.d_r)) ** 2
        * incidence_cosine(s.theta_s)
    )


def average_snr(s: Scenario) -> float:
    """Average SNR scale factor ``P_s G_s G_r (uw cos theta_s)^2 / (16 pi^2 sigma_n^2)``.

    The distance attenuation is not included; see :func:`instantaneous_snr`.
    """
    eff_area = s.area * incidence_cosine(s.theta_s)
    return s.p_s * s.g_s * s.g_r * eff_area**2 / (16 * math.pi**2 * s.noise_power)


def instantaneous_snr(s: Scenario, gain):
    """SNR for composite amplitude ``gain = sum_i alpha_i beta_i`` (scalar or array)."""
    return gain**2 * average_snr(s) / (s.d_s**2 * s.d_r**2)


def surface_side(s: Scenario) -> float:
    """Side of the smallest square grid holding all elements."""
    return s.element_side * math.ceil(math.sqrt(s.n_elements))


def far_field_min_distance(s: Scenario) -> float:
    """Fraunhofer distance ``2 max(u, w)^2 / lambda`` of the surface."""
    return 2 * surface_side(s) ** 2 / s.wavelength


def validate(s: Scenario) -> list[Diagnostic]:
    """Check scenario invariants; an empty list means the scenario is usable."""
    out = []

    def err(field, msg):
        out.append(Diagnostic(field, "error", msg))

    for name in ("d_s", "d_r", "p_s", "noise_power", "element_side", "wavelength",
                 "sigma1", "sigma2"):
        value = getattr(s, name)
        if not (math.isfinite(value) and value > 0):
            err(name, f"must be positive and finite, got {value!r}")
    for name in ("g_s", "g_r"):
        value = getattr(s, name)
        if not (math.isfinite(value) and value > 0):
            err(name, f"linear gain must be positive, got {value!r}")
    if not (0 <= s.theta_s <= math.pi / 2 + 1e-12):
        err("theta_s", f"must lie in [0, pi/2], got {s.theta_s!r}")
    elif incidence_cosine(s.theta_s) == 0.0:
        out.append(Diagnostic("theta_s", "warning",
                              "grazing incidence: effective area and SNR are zero"))
    if isinstance(s.n_elements, bool) or not isinstance(s.n_elements, numbers.Integral) or s.n_elements < 0:
        err("n_elements", f"must be a non-negative integer, got {s.n_elements!r}")

    if any(d.severity == "error" for d in out):
        return out

    bound = far_field_min_distance(s)
    for name in ("d_s", "d_r"):
        if getattr(s, name) < bound:
            out.append(Diagnostic(
                name, "warning",
                f"{getattr(s, name):g} m is inside the far-field bound {bound:g} m",
            ))
    return out
