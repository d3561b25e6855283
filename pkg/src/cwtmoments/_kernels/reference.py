"""Pure-numpy kernel implementations (fallback backend).

Each function mirrors the compiled backend exactly: float64 in, float64 out,
same recurrences in the same order, so the two backends agree to the last
few ulps.
"""

import numpy as np


def mexican_hat(x):
    """(1 - x^2) exp(-x^2/2) evaluated elementwise."""
    x = np.asarray(x, dtype=np.float64)
    return (1.0 - x * x) * np.exp(-0.5 * x * x)


def hermite_he(n, x):
    """Probabilists' Hermite polynomial He_n(x) via the three-term recurrence.

    He_0 = 1, He_1 = x, He_{k+1}(x) = x He_k(x) - k He_{k-1}(x).
    """
    x = np.asarray(x, dtype=np.float64)
    if n == 0:
        return np.ones_like(x)
    if n == 1:
        return x.copy()
    hkm1 = np.ones_like(x)
    hk = x.copy()
    for k in range(1, n):
        hkm1, hk = hk, x * hk - k * hkm1
    return hk


def hermite_gaussian(n, x):
    """He_n(x) * exp(-x^2/2), the Gaussian-derivative kernel."""
    x = np.asarray(x, dtype=np.float64)
    return hermite_he(n, x) * np.exp(-0.5 * x * x)


def taylor_eval(coeffs, center, x):
    """Horner evaluation of sum_k coeffs[k] * (x - center)^k."""
    coeffs = np.asarray(coeffs, dtype=np.float64)
    x = np.asarray(x, dtype=np.float64)
    u = x - center
    acc = np.full_like(u, coeffs[-1])
    for k in range(len(coeffs) - 2, -1, -1):
        acc = acc * u + coeffs[k]
    return acc
