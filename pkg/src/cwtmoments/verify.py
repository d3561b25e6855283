"""Empirical validation of the asymptotic claims.

Two tools: a log-log least-squares fit of remainder magnitudes against the
dilation grid (the fitted slope is the observed decay order), and the
seminorm decay probe that measures sup |D^a [psi_q((x-b)/a)]| over the
moving window (b/a - M, b + M), where psi_q is the wavelet minus its
Taylor polynomial of degree q-1 at the origin.  Windows with b < 0 map
onto the b >= 0 case through reflection.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import EmptyWindowError, InsufficientDataError

GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


def geometric_grid(start, ratio, count):
    """start * ratio^k for k = 0..count-1."""
    if start <= 0 or ratio <= 1 or count < 1:
        raise ValueError("need start > 0, ratio > 1, count >= 1")
    return np.array([start * ratio**k for k in range(count)], dtype=np.float64)


@dataclass(frozen=True)
class OrderFitReport:
    """Least-squares fit of log|remainder| against log a."""

    a_grid: tuple
    abs_remainders: tuple
    slope: float
    intercept: float
    r_squared: float
    excluded_points: tuple


def remainder_order_fit(a_grid, remainders, floor=1e-14):
    """Fit log|remainder| = slope * log a + intercept.

    Points with |remainder| < floor are excluded (they sit in quadrature
    noise and corrupt the regression); at least 3 points must survive.

    Parameters
    ----------
    a_grid : sequence of float
        Strictly increasing geometric grid with ratio >= 2, length >= 4.
    remainders : sequence of float
        Signed or absolute remainders, same length.
    floor : float
        Exclusion threshold on |remainder|.
    """
    a_grid = np.asarray(a_grid, dtype=np.float64)
    remainders = np.asarray(remainders, dtype=np.float64)
    if a_grid.shape != remainders.shape or a_grid.size < 4:
        raise ValueError("a_grid and remainders must have equal length >= 4")
    if not np.all(np.diff(a_grid) > 0):
        raise ValueError("a_grid must be strictly increasing")
    ratios = a_grid[1:] / a_grid[:-1]
    if not (np.allclose(ratios, ratios[0], rtol=1e-9) and ratios[0] >= 2.0 - 1e-12):
        raise ValueError("a_grid must be geometric with ratio >= 2")

    abs_r = np.abs(remainders)
    keep = abs_r >= floor
    excluded = tuple(int(i) for i in np.nonzero(~keep)[0])
    if keep.sum() < 3:
        raise InsufficientDataError(
            f"only {int(keep.sum())} remainders above the {floor:g} floor; "
            f"need at least 3 for an order fit"
        )
    x = np.log(a_grid[keep])
    y = np.log(abs_r[keep])
    slope, intercept = np.polyfit(x, y, 1)
    fitted = slope * x + intercept
    ss_res = float(np.sum((y - fitted) ** 2))
    ss_tot = float(np.sum((y - np.mean(y)) ** 2))
    r_squared = 1.0 if ss_tot == 0.0 else 1.0 - ss_res / ss_tot
    return OrderFitReport(
        a_grid=tuple(a_grid.tolist()),
        abs_remainders=tuple(abs_r.tolist()),
        slope=float(slope),
        intercept=float(intercept),
        r_squared=r_squared,
        excluded_points=excluded,
    )


def _golden_max(fn, lo, hi, iterations=60):
    """Golden-section search for the maximum of a scalar function."""
    x1 = hi - GOLDEN * (hi - lo)
    x2 = lo + GOLDEN * (hi - lo)
    f1, f2 = fn(x1), fn(x2)
    for _ in range(iterations):
        if hi - lo < 1e-13 * (1.0 + abs(lo) + abs(hi)):
            break
        if f1 < f2:
            lo, x1, f1 = x1, x2, f2
            x2 = lo + GOLDEN * (hi - lo)
            f2 = fn(x2)
        else:
            hi, x2, f2 = x2, x1, f1
            x1 = hi - GOLDEN * (hi - lo)
            f1 = fn(x1)
    return max(f1, f2)


def _residual_derivative(w, q, alpha, u):
    """D^alpha of (psi - Taylor_{q-1} at 0) evaluated at u (array)."""
    value = w.derivative(alpha, u)
    if q > 0 and alpha <= q - 1:
        poly = w.taylor(q - 1, 0.0).derivative(alpha)
        value = value - poly(u)
    return value


def seminorm_sup(w, q, b, M, alpha, a, grid_points=4096, refine=True):
    """sup over the window (b/a - M, b + M) of |D^alpha_x [psi_q((x-b)/a)]|.

    psi_q is the wavelet minus its degree-(q-1) Taylor polynomial at 0
    (psi itself when q = 0); the x-derivative contributes the chain factor
    a^(-alpha).  The sup is a dense-grid maximum plus golden-section
    refinement around the best grid point.
    """
    if q < 0:
        raise ValueError("q must be >= 0")
    if not a > 0:
        raise ValueError("dilation a must be strictly positive")
    if M <= 0:
        raise ValueError("window half-width M must be positive")
    if b < 0:
        return seminorm_sup(
            w.reflected(), q, -b, M, alpha, a, grid_points=grid_points, refine=refine
        )
    lo = b / a - M
    hi = b + M
    if not lo < hi:
        raise EmptyWindowError(
            f"window ({lo:g}, {hi:g}) is empty for b={b:g}, M={M:g}, a={a:g}"
        )
    scale = a ** (-float(alpha))

    def magnitude(x):
        u = (np.asarray(x, dtype=np.float64) - b) / a
        return scale * np.abs(_residual_derivative(w, q, alpha, u))

    grid = np.linspace(lo, hi, grid_points)
    values = magnitude(grid)
    imax = int(np.argmax(values))
    best = float(values[imax])
    if refine:
        blo = grid[max(imax - 1, 0)]
        bhi = grid[min(imax + 1, grid_points - 1)]
        best = max(best, float(_golden_max(lambda x: float(magnitude(x)), blo, bhi)))
    return best


def seminorm_decay_check(w, q, b, M, alpha, a_grid, grid_points=4096, floor=1e-14):
    """Order-fit the seminorm sup against the dilation grid.

    Returns an OrderFitReport whose slope should satisfy slope <= -q (up to
    fit tolerance) when q derivatives vanish at the origin.
    """
    a_grid = np.asarray(a_grid, dtype=np.float64)
    sups = np.array(
        [seminorm_sup(w, q, b, M, alpha, a, grid_points=grid_points) for a in a_grid]
    )
    return remainder_order_fit(a_grid, sups, floor=floor)
