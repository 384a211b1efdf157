"""Special functions used by the coverage formulas.

K0 and K1 drive the exact single-element law, the regularized incomplete
Gamma drives the many-element approximation.  All are plain numpy.
"""
import numpy as np

from irscov import specfun

x = np.array([1e-4, 0.1, 1.0, 2.0, 10.0, 100.0, 700.0])
print(f"{'x':>8} {'K0(x)':>14} {'K1(x)':>14} {'e^x K0(x)':>12}")
for xi, k0, k1, k0e in zip(x, specfun.bessel_k0(x), specfun.bessel_k1(x), specfun.bessel_k0e(x)):
    print(f"{xi:8g} {k0:14.6e} {k1:14.6e} {k0e:12.6f}")
# K0(700) is about 5e-306: flushed to zero, the scaled form keeps the digits.

print()
shape = np.pi**2 / (16 - np.pi**2)
for n in (1, 4, 16):
    s = np.array([0.5, 2.0, 8.0, 32.0])
    q = specfun.reg_gamma_q(n * shape, s)
    print(f"Q({n * shape:7.3f}, s) for s = {s.tolist()}: {np.round(q, 6).tolist()}")
