"""How many elements are needed for coverage of at least 1 - 1e-3?"""
import math

from irscov import CoverageQuery, Scenario, coverage_general, optimal_elements

s = Scenario()
for t in (0, 10, 20, 30, 40):
    th = 10 ** (t / 10)
    n = optimal_elements(s, th, epsilon=1e-3)
    p = coverage_general(CoverageQuery(s.replace(n_elements=n), th)).probability
    prev = coverage_general(CoverageQuery(s.replace(n_elements=n - 1), th)).probability if n > 1 else None
    extra = f", N*-1 gives {prev:.5f}" if prev is not None else ""
    print(f"{t:3d} dB: N* = {n:3d}, P = {p:.5f}{extra}")

# a tilted source needs more elements for the same threshold
for deg in (0, 30, 60, 80):
    n = optimal_elements(s.replace(theta_s=math.radians(deg)), 10.0)
    print(f"theta_s = {deg:2d} deg at 10 dB: N* = {n}")
