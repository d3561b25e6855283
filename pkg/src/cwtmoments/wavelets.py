"""Mother wavelets with exact high-order derivatives and Taylor polynomials.

The Mexican-Hat wavelet psi(x) = (1 - x^2) exp(-x^2/2) is the mandatory
instance.  Writing psi = -g'' with g(x) = exp(-x^2/2) and using the
probabilists' Hermite recurrence He_{n+1}(x) = x He_n(x) - n He_{n-1}(x)
gives every derivative in closed form:

    D^a psi(x) = (-1)^(a+1) He_{a+2}(x) exp(-x^2/2)

A central-difference engine (step sweep + Richardson extrapolation, run in
extended precision) is kept alongside as an independent cross-check.
"""

from dataclasses import dataclass

import mpmath as mp
import numpy as np

from . import _kernels
from .errors import DerivativeOrderError

DEFAULT_MAX_DERIVATIVE_ORDER = 16

HERMITE_RECURRENCE = "hermite-recurrence"
CENTRAL_DIFFERENCE = "central-difference"


def central_difference_derivative(fn, order, x, h0=1.0, levels=8, dps=50):
    """Order-th derivative of ``fn`` at ``x`` by central differences.

    Uses the symmetric n-th difference on a halving step sweep
    h0, h0/2, ..., with Richardson extrapolation of the O(h^2) error
    series.  Evaluation runs in ``dps``-digit arithmetic, so the usual
    float64 roundoff wall of high-order differences does not apply;
    ``fn`` may return mpmath values or plain floats.

    Returns a float.
    """
    order = int(order)
    if order < 0:
        raise ValueError("derivative order must be >= 0")
    if order == 0:
        return float(fn(x))
    with mp.workdps(dps):
        xm = mp.mpf(x)
        binom = [mp.binomial(order, k) for k in range(order + 1)]

        def stencil(h):
            acc = mp.mpf(0)
            for k in range(order + 1):
                offset = (mp.mpf(order) / 2 - k) * h
                term = binom[k] * mp.mpf(fn(xm + offset))
                acc += term if k % 2 == 0 else -term
            return acc / h**order

        rows = []
        h = mp.mpf(h0)
        for i in range(levels):
            row = [stencil(h)]
            for j in range(1, i + 1):
                p = mp.mpf(4) ** j
                row.append((p * row[j - 1] - rows[i - 1][j - 1]) / (p - 1))
            rows.append(row)
            h /= 2
        return float(rows[-1][-1])


@dataclass(frozen=True)
class TaylorPolynomial:
    """Taylor polynomial about ``center``: P(x) = sum_a coefficients[a] (x - center)^a.

    coefficients[a] = D^a psi(center) / a!, all degree+1 of them stored.
    """

    center: float
    coefficients: tuple

    @property
    def degree(self):
        return len(self.coefficients) - 1

    def __call__(self, x):
        return _kernels.taylor_eval(self.coefficients, self.center, x)

    def derivative(self, order=1):
        """Derivative as a new TaylorPolynomial about the same center."""
        coeffs = self.coefficients
        for _ in range(order):
            coeffs = tuple((k + 1) * c for k, c in enumerate(coeffs[1:]))
            if not coeffs:
                coeffs = (0.0,)
        return TaylorPolynomial(self.center, coeffs)


class Wavelet:
    """Base class: a smooth real mother wavelet with derivative capability.

    Subclasses must implement ``eval``; the default derivative engine is
    central differences, subclasses with closed forms override.
    """

    name = "wavelet"
    admissible = False
    # |D^a psi(x)| is numerically negligible for |x| > tail_cutoff (low orders)
    tail_cutoff = 12.0
    # |psi_hat(w)| < 1e-16 for |w| > fourier_cutoff
    fourier_cutoff = 12.0
    max_derivative_order = DEFAULT_MAX_DERIVATIVE_ORDER

    def eval(self, x):
        raise NotImplementedError

    def __call__(self, x):
        return self.eval(x)

    def _check_order(self, order):
        if order < 0:
            raise DerivativeOrderError("derivative order must be >= 0")
        if order > self.max_derivative_order:
            raise DerivativeOrderError(
                f"derivative order {order} exceeds configured maximum "
                f"{self.max_derivative_order} for wavelet {self.name!r}"
            )

    def derivative(self, order, x):
        self._check_order(order)
        if order == 0:
            return self.eval(x)
        x_arr = np.asarray(x, dtype=np.float64)
        if x_arr.ndim == 0:
            return central_difference_derivative(self.eval, order, float(x_arr))
        return np.array(
            [central_difference_derivative(self.eval, order, xi) for xi in x_arr]
        )

    def taylor(self, degree, center):
        """Taylor polynomial of this wavelet about ``center``."""
        if degree < 0:
            raise ValueError("Taylor degree must be >= 0")
        coeffs = []
        fact = 1.0
        for a in range(degree + 1):
            if a > 0:
                fact *= a
            coeffs.append(self.derivative(a, float(center)) / fact)
        return TaylorPolynomial(float(center), tuple(coeffs))

    def fourier(self, omega):
        """Closed-form Fourier transform, or None if unavailable."""
        return None

    def reflected(self):
        return ReflectedWavelet(self)


class ReflectedWavelet(Wavelet):
    """x -> psi(-x); used to map the b < 0 seminorm window onto b >= 0."""

    def __init__(self, base):
        self.base = base
        self.name = base.name + "-reflected"
        self.admissible = base.admissible
        self.tail_cutoff = base.tail_cutoff
        self.fourier_cutoff = base.fourier_cutoff
        self.max_derivative_order = base.max_derivative_order

    def eval(self, x):
        return self.base.eval(np.negative(x))

    def derivative(self, order, x):
        self._check_order(order)
        sign = -1.0 if order % 2 else 1.0
        return sign * self.base.derivative(order, np.negative(x))

    def reflected(self):
        return self.base


class MexicanHatWavelet(Wavelet):
    """(1 - x^2) exp(-x^2/2) with exact Hermite-recurrence derivatives."""

    name = "mexican-hat"
    admissible = True

    def __init__(self, engine=HERMITE_RECURRENCE, max_derivative_order=DEFAULT_MAX_DERIVATIVE_ORDER):
        if engine not in (HERMITE_RECURRENCE, CENTRAL_DIFFERENCE):
            raise ValueError(f"unknown derivative engine {engine!r}")
        self.engine = engine
        self.max_derivative_order = max_derivative_order

    def eval(self, x):
        return _kernels.mexican_hat(x)

    def _eval_mp(self, x):
        return (1 - x * x) * mp.exp(-x * x / 2)

    def derivative(self, order, x):
        self._check_order(order)
        if self.engine == CENTRAL_DIFFERENCE and order > 0:
            x_arr = np.asarray(x, dtype=np.float64)
            if x_arr.ndim == 0:
                return central_difference_derivative(self._eval_mp, order, float(x_arr))
            return np.array(
                [central_difference_derivative(self._eval_mp, order, xi) for xi in x_arr]
            )
        sign = -1.0 if order % 2 == 0 else 1.0
        return sign * _kernels.hermite_gaussian(order + 2, x)

    def fourier(self, omega):
        """psi_hat(w) = sqrt(2*pi) w^2 exp(-w^2/2) under f_hat(w) = int f e^{-iwx} dx."""
        omega = np.asarray(omega, dtype=np.float64)
        out = np.sqrt(2.0 * np.pi) * omega * omega * np.exp(-0.5 * omega * omega)
        return float(out) if out.ndim == 0 else out

    def reflected(self):
        # even wavelet: reflection is the identity
        return self


MEXICAN_HAT = MexicanHatWavelet()


def eval_mexican_hat(x):
    """(1 - x^2) exp(-x^2/2)."""
    return _kernels.mexican_hat(x)


def wavelet_derivative(w, order, x):
    """D^order of the mother wavelet at x, via the wavelet's engine."""
    return w.derivative(order, x)


def taylor_polynomial(w, degree, center):
    """Taylor polynomial of ``w`` about ``center`` with degree+1 coefficients."""
    return w.taylor(degree, center)


def mexican_hat_quadratic_coeffs(a, b):
    """Closed-form degree-2 Taylor coefficients of x -> psi(x - b/a) about 0.

    Returns (c0, c1, c2) with common factor exp(-b^2 / (2 a^2)):

        c0 = E (a^2 - b^2) / a^2
        c1 = E b (3 a^2 - b^2) / a^3
        c2 = E (6 a^2 b^2 - 3 a^4 - b^4) / (2 a^4)

    These equal D^k psi(-b/a) / k! and cross-check the recurrence engine.
    """
    a = float(a)
    b = float(b)
    e = np.exp(-b * b / (2.0 * a * a))
    c0 = e * (a * a - b * b) / a**2
    c1 = e * b * (3.0 * a * a - b * b) / a**3
    c2 = e * (6.0 * a * a * b * b - 3.0 * a**4 - b**4) / (2.0 * a**4)
    return c0, c1, c2
