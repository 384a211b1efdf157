"""Monte Carlo estimate of coverage for the phase-aligned link.

With ideal phase control every reflected path adds coherently, so each trial
only needs the composite amplitude ``A = sum_i alpha_i beta_i``.

Trials are cut into fixed-size chunks; chunk ``i`` draws from its own stream
``SeedSequence(seed, spawn_key=(i,))``.  The chunking never depends on the
worker count, so any number of workers yields the same counts.
"""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .channel import Scenario, average_snr
from .coverage import CoverageQuery
from .dist import RayleighPair, sample_product
from .errors import DomainError

__all__ = [
    "SimConfig",
    "SimReport",
    "EmpiricalCDF",
    "empirical_cdf",
    "chunk_rng",
    "simulate_gains",
    "simulate_coverage",
    "simulate_sweep",
]

CHUNK_TRIALS = 8192


@dataclass(frozen=True)
class SimConfig:
    trials: int = 100_000
    seed: int = 0
    workers: int = 1

    def __post_init__(self):
        if self.trials < 1:
            raise DomainError(f"trials must be >= 1, got {self.trials}")
        if self.workers < 1:
            raise DomainError(f"workers must be >= 1, got {self.workers}")
        if not 0 <= self.seed < 2**64:
            raise DomainError("seed must be an unsigned 64-bit integer")


@dataclass(frozen=True)
class SimReport:
    estimate: float
    trials: int
    seed: int
    half_width_95: float
    scenario_echo: Scenario
    gamma_th: float
    successes: int


@dataclass(frozen=True)
class EmpiricalCDF:
    """Right-continuous step CDF of a sample; ``samples`` is sorted."""

    samples: np.ndarray

    def __call__(self, x):
        return np.searchsorted(self.samples, x, side="right") / self.samples.size

    @property
    def n(self) -> int:
        return self.samples.size


def empirical_cdf(samples) -> EmpiricalCDF:
    x = np.sort(np.asarray(samples, dtype=float).ravel())
    if x.size == 0:
        raise DomainError("empirical CDF of an empty sample")
    return EmpiricalCDF(x)


def chunk_rng(seed: int, index: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(index,)))


def _chunks(trials: int):
    n_chunks = math.ceil(trials / CHUNK_TRIALS)
    return [
        (i, min(CHUNK_TRIALS, trials - i * CHUNK_TRIALS)) for i in range(n_chunks)
    ]


def _chunk_gains(scenario: Scenario, seed: int, index: int, size: int) -> np.ndarray:
    n = scenario.n_elements
    if n == 0:
        return np.zeros(size)
    pair = RayleighPair(scenario.sigma1, scenario.sigma2)
    rng = chunk_rng(seed, index)
    return sample_product(pair, rng, (size, n)).sum(axis=1)


def _map_chunks(fn, trials: int, workers: int):
    chunks = _chunks(trials)
    if workers == 1:
        return [fn(c) for c in chunks]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, chunks))


def simulate_gains(scenario: Scenario, cfg: SimConfig) -> np.ndarray:
    """All composite amplitudes ``A`` of a run, in chunk order."""
    parts = _map_chunks(
        lambda c: _chunk_gains(scenario, cfg.seed, *c), cfg.trials, cfg.workers
    )
    return np.concatenate(parts)


def _half_width(p: float, trials: int) -> float:
    return 1.96 * math.sqrt(p * (1 - p) / trials)


def simulate_sweep(scenario: Scenario, thresholds, cfg: SimConfig) -> list[SimReport]:
    """Coverage estimates at several thresholds from one common set of trials."""
    th = np.asarray(thresholds, dtype=float)
    if np.any(~(th >= 0)):
        raise DomainError("thresholds must be >= 0")
    snr_scale = average_snr(scenario) / (scenario.d_s * scenario.d_r) ** 2

    def count(chunk):
        gains = _chunk_gains(scenario, cfg.seed, *chunk)
        snr = np.sort(gains**2 * snr_scale)
        return snr.size - np.searchsorted(snr, th, side="left")

    counts = np.sum(_map_chunks(count, cfg.trials, cfg.workers), axis=0)
    reports = []
    for t, c in zip(th, np.atleast_1d(counts)):
        p = int(c) / cfg.trials
        reports.append(SimReport(
            estimate=p,
            trials=cfg.trials,
            seed=cfg.seed,
            half_width_95=_half_width(p, cfg.trials),
            scenario_echo=scenario,
            gamma_th=float(t),
            successes=int(c),
        ))
    return reports


def simulate_coverage(q: CoverageQuery, cfg: SimConfig) -> SimReport:
    """Fraction of trials whose SNR reaches the threshold."""
    return simulate_sweep(q.scenario, [q.gamma_th], cfg)[0]
