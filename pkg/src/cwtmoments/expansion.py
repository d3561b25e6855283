"""Moment asymptotic expansions of the wavelet transform.

Large dilation: (W f)(a, b) ~ sum_a mu_a D^a psi(-b/a) / (a! a^(a+1/2)),
with the input's moments as coefficients.  Small dilation swaps the roles:
the wavelet's moments pair with derivatives of the analyzed function,

    a^(-1/2) <psi(x/a), f(x + b)> ~ sum_a mu_a(psi) D^a f(b) a^(a+1/2) / a!.

For the power growth class only the first floor(gamma) - 1 orders are
valid (see :func:`truncation_limit`); requesting more raises
:class:`TruncationOrderError`.
"""

import math
from dataclasses import dataclass

import numpy as np

from .distributions import (
    DistributionInput,
    MomentSequence,
    moment_sequence,
    truncation_limit,
)
from .errors import TruncationOrderError
from .quadrature import QuadratureSpec, integrate
from .transform import cwt_direct
from .wavelets import Wavelet, mexican_hat_quadratic_coeffs

__all__ = [
    "ExpansionResult",
    "expansion_large_a",
    "large_a_expansion",
    "expansion_small_a",
    "small_a_reference",
    "mexican_hat_quadratic_partial_sum",
    "mexican_hat_small_a_gamma_moments",
    "mexican_hat_small_a_gamma_expansion",
    "small_a_coefficient_comparison",
    "truncation_limit",
]


@dataclass(frozen=True)
class ExpansionResult:
    """Per-order terms, running partial sums, and (optionally) remainders
    against a reference transform value."""

    a: float
    b: float
    terms: tuple
    partial_sums: tuple
    reference: float = None
    remainders: tuple = None

    def with_reference(self, reference):
        reference = float(reference)
        remainders = tuple(reference - s for s in self.partial_sums)
        return ExpansionResult(
            a=self.a,
            b=self.b,
            terms=self.terms,
            partial_sums=self.partial_sums,
            reference=reference,
            remainders=remainders,
        )

    @property
    def order(self):
        return len(self.terms) - 1


def _assemble(a, b, terms, reference):
    # running sum built term by term so partial_sums[n] is bit-exactly
    # partial_sums[n-1] + terms[n]
    partial = []
    acc = 0.0
    for t in terms:
        acc = acc + t
        partial.append(acc)
    result = ExpansionResult(
        a=float(a), b=float(b), terms=tuple(terms), partial_sums=tuple(partial)
    )
    if reference is not None:
        result = result.with_reference(reference)
    return result


def _require_orders(moments, N, what):
    for alpha in range(N + 1):
        if not moments.available(alpha):
            cap = moments.max_valid_order
            detail = moments.missing_reason or f"moment {alpha} unavailable"
            raise TruncationOrderError(
                f"{what} of order N={N} needs moments 0..{N}, but {detail}"
                + (f" (cap = floor(gamma) - 1 = {cap})" if cap is not None else ""),
                cap=cap,
            )


def expansion_large_a(moments, w, a, b, N, reference=None):
    """Large-dilation expansion terms mu_a D^a psi(-b/a) / (a! a^(a+1/2)).

    Parameters
    ----------
    moments : MomentSequence
        Moments of the analyzed input, valid at least through order N.
    w : Wavelet
    a, b : float
        Dilation (a > 0) and translation.
    N : int
        Truncation order (inclusive).
    reference : float, optional
        Transform value to difference against for remainders.
    """
    if not a > 0:
        raise ValueError("dilation a must be strictly positive")
    if N < 0:
        raise ValueError("truncation order N must be >= 0")
    _require_orders(moments, N, "large-dilation expansion")
    a = float(a)
    center = -float(b) / a
    terms = []
    fact = 1.0
    for alpha in range(N + 1):
        if alpha > 0:
            fact *= alpha
        terms.append(
            moments[alpha] * w.derivative(alpha, center) / (fact * a ** (alpha + 0.5))
        )
    return _assemble(a, b, terms, reference)


def large_a_expansion(f, w, a, b, N, spec=None, with_reference=True):
    """Convenience pipeline: moments of ``f``, expansion, direct reference."""
    spec = spec or QuadratureSpec()
    moments = moment_sequence(f, N, spec)
    reference = cwt_direct(f, w, a, b, spec).value if with_reference else None
    return expansion_large_a(moments, w, a, b, N, reference=reference)


def expansion_small_a(psi_moments, f_profile, a, b, N, reference=None):
    """Small-dilation expansion terms mu_a(psi) D^a f(b) a^(a+1/2) / a!.

    ``f_profile`` must provide exact or numeric derivatives at b through
    order N (any :class:`~cwtmoments.distributions.DensityProfile`).
    """
    if not a > 0:
        raise ValueError("dilation a must be strictly positive")
    if N < 0:
        raise ValueError("truncation order N must be >= 0")
    _require_orders(psi_moments, N, "small-dilation expansion")
    a = float(a)
    b = float(b)
    terms = []
    fact = 1.0
    for alpha in range(N + 1):
        if alpha > 0:
            fact *= alpha
        terms.append(
            psi_moments[alpha]
            * f_profile.derivative(alpha, b)
            * a ** (alpha + 0.5)
            / fact
        )
    return _assemble(a, b, terms, reference)


def small_a_reference(psi, f_profile, a, b, spec=None):
    """The pairing a^(-1/2) <psi(x/a), f(x + b)> by quadrature.

    ``psi`` may be a Wavelet, a density DistributionInput, or a point-mass
    DistributionInput (closed form).  The substitution u = x/a turns the
    density case into sqrt(a) * int psi(u) f(a u + b) du, which keeps the
    integrand well-scaled as a -> 0.
    """
    if not a > 0:
        raise ValueError("dilation a must be strictly positive")
    spec = spec or QuadratureSpec()
    a = float(a)
    b = float(b)
    root = math.sqrt(a)
    if isinstance(psi, DistributionInput) and psi.kind == "point_masses":
        total = 0.0
        for m in psi.point_masses:
            k = m.derivative_order
            total += m.weight * (-1.0) ** k * a**k * f_profile.derivative(k, a * m.location + b)
        return root * total

    if isinstance(psi, Wavelet):
        lo, hi = -psi.tail_cutoff, psi.tail_cutoff
        psi_fn = psi.eval
    else:
        profile = psi.density
        lo, hi = profile.truncation_interval(0, spec.truncation_T)
        psi_fn = profile

    def g(u):
        return psi_fn(u) * f_profile(a * u + b)

    value, _ = integrate(g, lo, hi, spec)
    return root * value


def mexican_hat_quadratic_partial_sum(mu0, mu1, mu2, a, b):
    """Order-2 partial sum from the closed-form quadratic coefficients.

    Evaluates sum_{k<=2} c_k(a, b) mu_k / a^(k+1/2) with the c_k of
    :func:`cwtmoments.wavelets.mexican_hat_quadratic_coeffs`; must agree
    with the recurrence-based expansion to roundoff.
    """
    c0, c1, c2 = mexican_hat_quadratic_coeffs(a, b)
    a = float(a)
    return c0 * mu0 / a**0.5 + c1 * mu1 / a**1.5 + c2 * mu2 / a**2.5


def mexican_hat_small_a_gamma_moments(up_to):
    """Gamma-function coefficient variant of the small-dilation series.

    Even orders 2j carry -2^((2j-1)/2) Gamma((2j+1)/2); odd orders are 0.
    This family does not match the quadrature moments of the Mexican-Hat
    wavelet: already at order 0 it gives -sqrt(pi/2) while the moment of a
    zero-mean wavelet vanishes.  It is retained so the discrepancy can be
    evaluated side by side (:func:`small_a_coefficient_comparison`) rather
    than silently picking one normalization.
    """
    values = {}
    provenance = {}
    for order in range(up_to + 1):
        if order % 2 == 0:
            j = order // 2
            values[order] = -(2.0 ** ((2 * j - 1) / 2.0)) * math.gamma((2 * j + 1) / 2.0)
        else:
            values[order] = 0.0
        provenance[order] = "closed_form"
    return MomentSequence(values=values, provenance=provenance, max_valid_order=None)


def mexican_hat_small_a_gamma_expansion(f_profile, a, b, N, reference=None):
    """Small-dilation expansion using the Gamma-formula coefficients."""
    return expansion_small_a(
        mexican_hat_small_a_gamma_moments(N), f_profile, a, b, N, reference=reference
    )


def small_a_coefficient_comparison(up_to, spec=None, tol=1e-9):
    """Side-by-side table: quadrature moments of the Mexican-Hat wavelet vs
    the Gamma-formula coefficients, with a mismatch flag per order.

    Returns a list of dicts with keys order, moment, gamma_coefficient,
    difference, mismatch.
    """
    from .distributions import Growth, MexicanHatDensityProfile

    spec = spec or QuadratureSpec()
    mh = DistributionInput.from_density(MexicanHatDensityProfile(), Growth.sub_exponential())
    oracle = moment_sequence(mh, up_to, spec)
    gamma = mexican_hat_small_a_gamma_moments(up_to)
    rows = []
    for order in range(up_to + 1):
        m = float(oracle[order])
        g = float(gamma[order])
        diff = g - m
        rows.append(
            {
                "order": order,
                "moment": m,
                "gamma_coefficient": g,
                "difference": diff,
                "mismatch": bool(abs(diff) > tol * (1.0 + abs(m))),
            }
        )
    return rows
