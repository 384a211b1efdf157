"""Acceptance criteria, one test each.

Every test prints a single ``criterion N PASS|FAIL: ...`` line.  The lines are
also collected and repeated in the pytest terminal summary, so they show up
without ``-s``.
"""
import io
import math
import time

import mpmath as mp
import numpy as np

import oracles
from irscov import specfun as sf
from irscov.channel import Scenario
from irscov.cli import run
from irscov.coverage import CoverageQuery, coverage_exact_n1, coverage_general, optimal_elements
from irscov.dist import (
    RayleighPair,
    gamma_cdf,
    ks_statistic,
    moment_match,
    product_cdf,
    product_moments,
    product_pdf,
    sample_product,
)
from irscov.mc import SimConfig, chunk_rng, empirical_cdf, simulate_coverage, simulate_sweep

RESULTS: list[str] = []
EPS = 1e-3


def report(n, ok, detail):
    line = f"criterion {n} {'PASS' if ok else 'FAIL'}: {detail}"
    RESULTS.append(line)
    print(line)
    assert ok, line


def db(x):
    return 10.0 ** (np.asarray(x, dtype=float) / 10.0)


def max_rel(got, want):
    got, want = np.asarray(got, dtype=float), np.asarray(want, dtype=float)
    return float(np.max(np.abs(got / want - 1.0)))


def test_criterion_01_special_functions(oracle_table):
    t = {k: np.asarray(v) for k, v in oracle_table.items()}
    start = time.perf_counter()
    k0, k1 = sf.bessel_k0(t["bessel_x"]), sf.bessel_k1(t["bessel_x"])
    k0e, k1e = sf.bessel_k0e(t["bessel_x"]), sf.bessel_k1e(t["bessel_x"])
    p = sf.reg_gamma_p(t["gamma_k"], t["gamma_s"])
    q = sf.reg_gamma_q(t["gamma_k"], t["gamma_s"])
    elapsed = time.perf_counter() - start

    # values below the 1e-300 flush threshold must come back as exact zeros
    live = t["k0"] >= sf.UNDERFLOW
    live1 = t["k1"] >= sf.UNDERFLOW
    flushed_ok = bool(np.all(k0[~live] == 0.0) and np.all(k1[~live1] == 0.0))
    errs = {
        "K0": max_rel(k0[live], t["k0"][live]),
        "K1": max_rel(k1[live1], t["k1"][live1]),
        "K0e": max_rel(k0e, t["k0_scaled"]),
        "K1e": max_rel(k1e, t["k1_scaled"]),
        "P": max_rel(p, t["gamma_p"]),
        "Q": max_rel(q, t["gamma_q"]),
    }
    ok = max(errs.values()) <= 1e-9 and flushed_ok and elapsed < 1.0
    detail = ", ".join(f"{k} {v:.1e}" for k, v in errs.items())
    report(1, ok, f"max rel err {detail}; {int((~live).sum())} point(s) flushed to 0 below "
                  f"1e-300; {elapsed * 1e3:.1f} ms")


def test_criterion_02_pdf_cdf_consistency():
    pair = RayleighPair(1.3, 0.7)
    a = pair.a
    eta = np.geomspace(0.01 * a, 15 * a, 50)
    h = 1e-5 * eta
    deriv = (product_cdf(pair, eta + h) - product_cdf(pair, eta - h)) / (2 * h)
    fd_err = max_rel(deriv, product_pdf(pair, eta))
    breaks = [0, 0.01 * a, 0.1 * a, a, 3 * a, 10 * a, 30 * a, 80 * a]
    total = float(mp.quad(lambda x: product_pdf(pair, float(x)), breaks))
    ok = fd_err <= 1e-5 and abs(total - 1.0) <= 1e-6
    report(2, ok, f"finite-difference rel err {fd_err:.1e} on 50 points; |int pdf - 1| = "
                  f"{abs(total - 1):.1e}")


def test_criterion_03_moment_matching():
    pair = RayleighPair(0.8, 1.7)
    draws = sample_product(pair, np.random.default_rng(2024), 1_000_000)
    m1_true, m2_true = product_moments(pair)
    e1 = abs(draws.mean() / (pair.a * math.pi / 2) - 1)
    e2 = abs(np.mean(draws**2) / (4 * pair.a**2) - 1)
    g1, g2 = moment_match(pair).moments()
    alg = max(abs(g1 / m1_true - 1), abs(g2 / m2_true - 1))
    ok = e1 < 0.01 and e2 < 0.01 and alg <= 1e-12
    report(3, ok, f"sampled moment rel err {e1:.2e} / {e2:.2e}; matched Gamma moment rel err "
                  f"{alg:.1e}")


def test_criterion_04_ks_gamma_fit():
    start = time.perf_counter()
    stats = []
    for i, sigma in enumerate((0.5, 1.0, 2.0)):
        pair = RayleighPair(sigma, sigma)
        ecdf = empirical_cdf(sample_product(pair, chunk_rng(7, i), 100_000))
        fit = moment_match(pair)
        stats.append(ks_statistic(ecdf, lambda x: gamma_cdf(fit, x)))
    elapsed = time.perf_counter() - start
    ok = max(stats) < 0.02 and elapsed < 10.0
    report(4, ok, "KS vs Gamma fit " + ", ".join(f"{v:.4f}" for v in stats)
                  + f" for sigma 0.5, 1, 2; {elapsed:.2f} s")


def test_criterion_05_single_element():
    start = time.perf_counter()
    s = Scenario()
    th_db = np.linspace(-30, 30, 61)
    th = db(th_db)
    exact = np.array([coverage_exact_n1(CoverageQuery(s, t)).probability for t in th])
    approx = np.array([coverage_general(CoverageQuery(s, t)).probability for t in th])
    gaps = np.abs(exact - approx)
    at9 = gaps[np.argmin(np.abs(th_db + 9))]
    reps = simulate_sweep(s, th, SimConfig(trials=100_000, seed=5))
    excess = max(abs(r.estimate - p) - r.half_width_95 for r, p in zip(reps, exact))
    elapsed = time.perf_counter() - start
    ok = at9 < 5e-3 and excess <= 1e-3 and elapsed < 30.0
    report(5, ok, f"max |exact - gamma| {gaps.max():.2e}, at -9 dB {at9:.2e}; worst MC excess "
                  f"over CI {excess:.1e} (<= 1e-3); {elapsed:.2f} s")


def test_criterion_06_several_elements():
    th = db(np.linspace(-20, 30, 20))
    worst = -math.inf
    for n in (2, 3, 4, 5):
        s = Scenario(n_elements=n)
        reps = simulate_sweep(s, th, SimConfig(trials=100_000, seed=n))
        for r in reps:
            p = coverage_general(CoverageQuery(s, r.gamma_th)).probability
            worst = max(worst, abs(r.estimate - p) - r.half_width_95)
    p3 = coverage_general(CoverageQuery(Scenario(n_elements=3), db(10))).probability
    p4 = coverage_general(CoverageQuery(Scenario(n_elements=4), db(10))).probability
    ok = worst <= 0.02 and p4 - p3 > 0.2
    report(6, ok, f"worst MC excess over CI {worst:.2e} (<= 0.02); P(N=4) - P(N=3) at 10 dB = "
                  f"{p4 - p3:.3f} (published 0.45)")


def test_criterion_07_optimal_elements():
    s = Scenario()
    assert s.element_side == s.wavelength / 2
    counts, first, confirmed = [], True, True
    for t in (10, 20, 30):
        n = optimal_elements(s, float(db(t)), EPS)
        counts.append(n)
        at = coverage_general(CoverageQuery(s.replace(n_elements=n), float(db(t)))).probability
        below = coverage_general(CoverageQuery(s.replace(n_elements=n - 1), float(db(t)))).probability
        first &= at >= 1 - EPS and (n == 1 or below < 1 - EPS)
        rep = simulate_coverage(CoverageQuery(s.replace(n_elements=n), float(db(t))),
                                SimConfig(trials=100_000, seed=t))
        confirmed &= rep.estimate >= 1 - EPS - rep.half_width_95
    increasing = all(b > a for a, b in zip(counts, counts[1:]))
    ok = increasing and first and confirmed
    match = "matches" if counts == [8, 12, 19] else "differs from"
    report(7, ok, f"N* = {counts} at 10/20/30 dB ({match} published 8, 12, 19); first crossing "
                  f"{first}; MC confirmed {confirmed}")


def test_criterion_08_trends():
    start = time.perf_counter()
    base = Scenario(n_elements=6)
    grids = {
        "element_side": [base.replace(element_side=v) for v in np.linspace(0.01, 0.06, 10)],
        "n_fixed_area": [base.replace(n_elements=n, element_side=math.sqrt(base.area / n))
                         for n in range(1, 11)],
        "sigma": [base.replace(sigma1=v, sigma2=v) for v in np.linspace(10, 40, 10)],
        "theta_s": [base.replace(theta_s=math.radians(v)) for v in np.linspace(0, 89, 10)],
    }
    rising = {"element_side": True, "n_fixed_area": True, "sigma": True, "theta_s": False}
    bad = []
    for t in (0.0, 10.0, 20.0):
        for name, scens in grids.items():
            p = [coverage_general(CoverageQuery(sc, float(db(t)))).probability for sc in scens]
            d = np.diff(p)
            if not (np.all(d >= 0) if rising[name] else np.all(d <= 0)):
                bad.append(f"{name}@{t:g}dB")
    elapsed = time.perf_counter() - start
    ok = not bad and elapsed < 10.0
    report(8, ok, f"4 trends x 3 thresholds, violations: {bad or 'none'}; {elapsed * 1e3:.0f} ms")


def test_criterion_09_limits():
    from irscov.channel import average_snr

    s = Scenario(n_elements=4)
    p0 = coverage_general(CoverageQuery(s, 0.0)).probability
    p_hi = coverage_general(CoverageQuery(s, 1e9 * average_snr(s))).probability
    p_n0 = coverage_general(CoverageQuery(s.replace(n_elements=0), 1.0)).probability
    p_big = coverage_general(CoverageQuery(s.replace(n_elements=10_000), float(db(10)))).probability
    ok = p0 == 1.0 and p_hi < 1e-6 and p_n0 == 0.0 and p_big >= 1 - 1e-9
    report(9, ok, f"P(0) = {p0}, P(1e9 x mean SNR) = {p_hi:.1e}, P(N=0) = {p_n0}, "
                  f"1 - P(N=1e4) = {1 - p_big:.1e}")


def test_criterion_10_determinism():
    outs = []
    for workers in ("1", "4"):
        buf = io.StringIO()
        code = run(["validate-mc", "--trials", "50000", "--seed", "123", "--workers", workers],
                   buf, io.StringIO())
        assert code == 0
        outs.append(buf.getvalue().encode())
    ok = outs[0] == outs[1]
    report(10, ok, f"validate-mc CSV with --workers 1 and 4 byte-identical ({len(outs[0])} bytes)")
