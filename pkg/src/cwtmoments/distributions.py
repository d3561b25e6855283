"""Distribution-like inputs and their moment sequences mu_a = <f, x^a>.

An input is either a finite combination of point masses (delta derivatives)
or a density with a support descriptor, always carrying a caller-declared
growth class.  The growth class is bookkeeping, never inferred: it decides
how many moments are considered valid (the power class caps them at
floor(gamma) - 1) and is named in divergence errors.

Sign convention for derivative masses:  <delta^(k)(. - c), phi> = (-1)^k phi^(k)(c).
"""

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.interpolate import CubicSpline

from .errors import MomentDivergenceError, QuadratureNonConvergence
from .quadrature import QuadratureSpec, integrate
from .wavelets import MEXICAN_HAT, central_difference_derivative

GROWTH_KINDS = ("compact", "sub_exponential", "power", "all_power", "tempered_fourier")


def truncation_limit(gamma):
    """Largest valid expansion/moment order for the power growth class.

    The rule is floor(gamma) - 1; a negative result means no valid order.
    """
    return math.floor(gamma) - 1


@dataclass(frozen=True)
class Growth:
    """Declared growth class of a distribution input."""

    kind: str
    gamma: float = None

    def __post_init__(self):
        if self.kind not in GROWTH_KINDS:
            raise ValueError(f"unknown growth class {self.kind!r}")
        if self.kind == "power":
            if self.gamma is None or not math.isfinite(self.gamma):
                raise ValueError("power growth class requires a finite gamma")
        elif self.gamma is not None:
            raise ValueError(f"growth class {self.kind!r} does not take a gamma")

    @classmethod
    def compact(cls):
        return cls("compact")

    @classmethod
    def sub_exponential(cls):
        return cls("sub_exponential")

    @classmethod
    def power(cls, gamma):
        return cls("power", float(gamma))

    @classmethod
    def all_power(cls):
        return cls("all_power")

    @classmethod
    def tempered_fourier(cls):
        return cls("tempered_fourier")

    @property
    def max_moment_order(self):
        """Moment-order cap, or None when unbounded."""
        if self.kind == "power":
            return truncation_limit(self.gamma)
        return None

    def describe(self):
        if self.kind == "power":
            return f"power (gamma={self.gamma:g})"
        return self.kind


def gaussian_tail_T(alpha, base=9.0):
    """Half-width where |x|^alpha exp(-x^2/2) drops below ~1e-16."""
    return base + math.sqrt(2.0 * alpha * math.log(40.0))


# ---------------------------------------------------------------------------
# density profiles


class DensityProfile:
    """A density: callable on arrays, with optional exact derivatives,
    optional closed-form Fourier transform, and a support descriptor
    (None means full line)."""

    support = None
    label = "density"

    def __call__(self, x):
        raise NotImplementedError

    def derivative(self, order, x):
        """D^order at scalar x; default is a finite-difference fallback."""
        if order == 0:
            return float(self(np.float64(x)))
        return central_difference_derivative(
            lambda t: float(self(np.float64(t))), order, float(x), h0=0.5, levels=5
        )

    def fourier(self, omega):
        """Closed-form f_hat(w) = int f(x) e^{-iwx} dx, or None."""
        return None

    def truncation_interval(self, alpha=0, base_T=9.0):
        """Interval outside which x^alpha * f(x) is negligible."""
        if self.support is not None:
            return self.support
        T = gaussian_tail_T(alpha, base_T)
        return (-T, T)

    def shifted(self, c):
        return ShiftedProfile(self, c)


class GaussianProfile(DensityProfile):
    """amplitude * exp(-(x - center)^2 / (2 width^2))."""

    def __init__(self, center=0.0, width=1.0, amplitude=1.0):
        if width <= 0:
            raise ValueError("width must be positive")
        self.center = float(center)
        self.width = float(width)
        self.amplitude = float(amplitude)
        self.label = f"gaussian(center={self.center:g}, width={self.width:g})"

    def __call__(self, x):
        u = (np.asarray(x, dtype=np.float64) - self.center) / self.width
        out = self.amplitude * np.exp(-0.5 * u * u)
        return out

    def derivative(self, order, x):
        from . import _kernels

        u = (float(x) - self.center) / self.width
        sign = -1.0 if order % 2 else 1.0
        return sign * self.amplitude * _kernels.hermite_gaussian(order, u) / self.width**order

    def fourier(self, omega):
        omega = np.asarray(omega, dtype=np.float64)
        mag = self.amplitude * self.width * np.sqrt(2.0 * np.pi) * np.exp(
            -0.5 * (self.width * omega) ** 2
        )
        return mag * np.exp(-1j * omega * self.center)

    def truncation_interval(self, alpha=0, base_T=9.0):
        T = self.width * gaussian_tail_T(alpha, base_T)
        return (self.center - T, self.center + T)


class BumpProfile(DensityProfile):
    """Smooth compactly supported bump: exp(1 - 1/(1 - u^2)) on |u| < 1,
    u = (x - center)/width; identically zero outside."""

    def __init__(self, center=0.0, width=1.0):
        if width <= 0:
            raise ValueError("width must be positive")
        self.center = float(center)
        self.width = float(width)
        self.support = (self.center - self.width, self.center + self.width)
        self.label = f"bump(center={self.center:g}, width={self.width:g})"

    def __call__(self, x):
        x = np.asarray(x, dtype=np.float64)
        u = (x - self.center) / self.width
        out = np.zeros_like(u)
        inside = np.abs(u) < 1.0
        ui = u[inside]
        out[inside] = np.exp(1.0 - 1.0 / (1.0 - ui * ui))
        return out


class MexicanHatDensityProfile(DensityProfile):
    """The Mexican-Hat wavelet treated as a density input."""

    label = "mexican-hat"

    def __call__(self, x):
        return MEXICAN_HAT.eval(x)

    def derivative(self, order, x):
        return MEXICAN_HAT.derivative(order, float(x))

    def fourier(self, omega):
        out = MEXICAN_HAT.fourier(omega)
        return np.asarray(out, dtype=np.complex128)


class TabulatedProfile(DensityProfile):
    """Piecewise-cubic interpolant of a sampled density; zero outside the
    data range, which is also the declared support."""

    def __init__(self, x, y, label="tabulated"):
        x = np.asarray(x, dtype=np.float64)
        y = np.asarray(y, dtype=np.float64)
        if x.ndim != 1 or x.shape != y.shape or x.size < 4:
            raise ValueError("need matching 1-d arrays with at least 4 samples")
        if not np.all(np.diff(x) > 0):
            raise ValueError("sample abscissae must be strictly increasing")
        self._spline = CubicSpline(x, y)
        self.support = (float(x[0]), float(x[-1]))
        self.label = label

    @classmethod
    def from_file(cls, path):
        data = np.loadtxt(path)
        if data.ndim != 2 or data.shape[1] != 2:
            raise ValueError(f"{path}: expected two numeric columns (x, f(x))")
        return cls(data[:, 0], data[:, 1], label=str(path))

    def __call__(self, x):
        x = np.asarray(x, dtype=np.float64)
        lo, hi = self.support
        out = np.where((x >= lo) & (x <= hi), self._spline(x), 0.0)
        return out

    def derivative(self, order, x):
        if order <= 3:
            return float(self._spline(float(x), nu=order))
        return super().derivative(order, x)


class CallableProfile(DensityProfile):
    """Wrap an arbitrary vectorized callable as a density."""

    def __init__(self, fn, support=None, label="callable", derivative_fn=None, fourier_fn=None):
        self._fn = fn
        self.support = support
        self.label = label
        self._derivative_fn = derivative_fn
        self._fourier_fn = fourier_fn

    def __call__(self, x):
        return np.asarray(self._fn(np.asarray(x, dtype=np.float64)), dtype=np.float64)

    def derivative(self, order, x):
        if self._derivative_fn is not None:
            return self._derivative_fn(order, float(x))
        return super().derivative(order, x)

    def fourier(self, omega):
        if self._fourier_fn is None:
            return None
        return self._fourier_fn(np.asarray(omega, dtype=np.float64))


class ShiftedProfile(DensityProfile):
    """base(x - shift)."""

    def __init__(self, base, shift):
        self.base = base
        self.shift = float(shift)
        if base.support is not None:
            self.support = (base.support[0] + self.shift, base.support[1] + self.shift)
        self.label = f"{base.label} shifted by {self.shift:g}"

    def __call__(self, x):
        return self.base(np.asarray(x, dtype=np.float64) - self.shift)

    def derivative(self, order, x):
        return self.base.derivative(order, float(x) - self.shift)

    def fourier(self, omega):
        inner = self.base.fourier(omega)
        if inner is None:
            return None
        omega = np.asarray(omega, dtype=np.float64)
        return inner * np.exp(-1j * omega * self.shift)

    def truncation_interval(self, alpha=0, base_T=9.0):
        lo, hi = self.base.truncation_interval(alpha, base_T)
        return (lo + self.shift, hi + self.shift)


# ---------------------------------------------------------------------------
# inputs


@dataclass(frozen=True)
class PointMass:
    """weight * delta^(derivative_order) placed at location."""

    location: float
    derivative_order: int = 0
    weight: float = 1.0

    def __post_init__(self):
        if self.derivative_order < 0:
            raise ValueError("derivative_order must be >= 0")


@dataclass(frozen=True)
class DistributionInput:
    """Tagged union: point-mass combination or density, plus growth class."""

    kind: str
    growth: Growth
    point_masses: tuple = ()
    density: DensityProfile = None
    label: str = ""

    def __post_init__(self):
        if self.kind not in ("point_masses", "density"):
            raise ValueError(f"unknown input kind {self.kind!r}")
        if self.kind == "point_masses":
            if not self.point_masses or self.density is not None:
                raise ValueError("point_masses input requires masses and no density")
        else:
            if self.density is None or self.point_masses:
                raise ValueError("density input requires a profile and no masses")
            if self.growth.kind == "compact" and self.density.support is None:
                raise ValueError(
                    "compact growth class requires a finite support descriptor"
                )
        if not self.label:
            object.__setattr__(self, "label", self._default_label())

    def _default_label(self):
        if self.kind == "density":
            return self.density.label
        parts = []
        for m in self.point_masses:
            tick = "'" * m.derivative_order
            parts.append(f"{m.weight:g}*delta{tick}@{m.location:g}")
        return " + ".join(parts)

    @classmethod
    def delta(cls, location=0.0, weight=1.0):
        return cls.from_point_masses([PointMass(location, 0, weight)])

    @classmethod
    def delta_derivative(cls, order, location=0.0, weight=1.0):
        return cls.from_point_masses([PointMass(location, order, weight)])

    @classmethod
    def from_point_masses(cls, masses, growth=None):
        growth = growth or Growth.compact()
        return cls(kind="point_masses", growth=growth, point_masses=tuple(masses))

    @classmethod
    def from_density(cls, profile, growth=None):
        if growth is None:
            growth = Growth.compact() if profile.support is not None else Growth.sub_exponential()
        return cls(kind="density", growth=growth, density=profile)

    @classmethod
    def from_file(cls, path):
        return cls.from_density(TabulatedProfile.from_file(path), Growth.compact())

    def shifted(self, c):
        """The translate f(. - c) with the same growth class."""
        if self.kind == "point_masses":
            masses = tuple(
                PointMass(m.location + c, m.derivative_order, m.weight)
                for m in self.point_masses
            )
            return DistributionInput(
                kind="point_masses", growth=self.growth, point_masses=masses
            )
        return DistributionInput(
            kind="density", growth=self.growth, density=self.density.shifted(c)
        )


@dataclass
class MomentSequence:
    """Cached moments with per-order provenance.

    ``values[a]`` holds mu_a; ``provenance[a]`` is "closed_form" or
    "quadrature"; orders beyond ``max_valid_order`` are absent and
    ``missing_reason`` says why.
    """

    values: dict
    provenance: dict
    max_valid_order: int = None  # None = unbounded
    missing_reason: str = None

    def __post_init__(self):
        for a, v in self.values.items():
            if not math.isfinite(v):
                raise ValueError(f"moment of order {a} is not finite: {v}")

    def available(self, order):
        return order in self.values

    def __getitem__(self, order):
        try:
            return self.values[order]
        except KeyError:
            raise MomentDivergenceError(
                self.missing_reason or f"moment of order {order} was not computed",
                order=order,
            ) from None

    def max_order(self):
        return max(self.values) if self.values else -1


def _point_mass_moment(masses, alpha):
    total = 0.0
    for m in masses:
        k = m.derivative_order
        if alpha < k:
            continue
        # <delta^(k)(. - c), x^alpha> = (-1)^k * alpha!/(alpha-k)! * c^(alpha-k)
        total += m.weight * (-1.0) ** k * math.perm(alpha, k) * m.location ** (alpha - k)
    return total


def _density_moment(d, alpha, spec):
    profile = d.density
    g = lambda x: x**alpha * profile(x)
    lo, hi = profile.truncation_interval(alpha, spec.truncation_T)
    value, err = integrate(g, lo, hi, spec)
    if profile.support is None:
        # doubled-domain convergence check on the truncation
        width = hi - lo
        left, _ = integrate(g, lo - 0.5 * width, lo, spec)
        right, _ = integrate(g, hi, hi + 0.5 * width, spec)
        tail = left + right
        value += tail
        if abs(tail) > max(spec.abs_tol, spec.rel_tol * abs(value)):
            raise MomentDivergenceError(
                f"moment of order {alpha} did not converge under domain doubling "
                f"(tail contribution {tail:.3e}) for growth class {d.growth.describe()}",
                growth_class=d.growth,
                order=alpha,
            )
    return value


def moment(d, alpha, spec=None):
    """mu_alpha = <f, x^alpha> for a distribution input.

    Point-mass moments are exact closed forms; density moments are
    quadratures over the (possibly truncated) support.

    Raises
    ------
    MomentDivergenceError
        If alpha exceeds the growth-class cap, or a full-line quadrature
        fails its tail-doubling convergence check.
    """
    alpha = int(alpha)
    if alpha < 0:
        raise ValueError("moment order must be >= 0")
    spec = spec or QuadratureSpec()
    cap = d.growth.max_moment_order
    if cap is not None and alpha > cap:
        raise MomentDivergenceError(
            f"moment of order {alpha} is not valid for growth class "
            f"{d.growth.describe()}: orders above {cap} (floor(gamma) - 1) diverge",
            growth_class=d.growth,
            order=alpha,
        )
    if d.kind == "point_masses":
        return _point_mass_moment(d.point_masses, alpha)
    try:
        return _density_moment(d, alpha, spec)
    except QuadratureNonConvergence as exc:
        raise MomentDivergenceError(
            f"moment of order {alpha} quadrature did not converge for growth "
            f"class {d.growth.describe()}: {exc}",
            growth_class=d.growth,
            order=alpha,
        ) from exc


def moment_sequence(d, up_to, spec=None):
    """Moments 0..min(up_to, cap) with provenance; capped orders are absent."""
    if up_to < 0:
        raise ValueError("up_to must be >= 0")
    spec = spec or QuadratureSpec()
    cap = d.growth.max_moment_order
    values = {}
    provenance = {}
    missing_reason = None
    top = up_to if cap is None else min(up_to, cap)
    for alpha in range(top + 1):
        try:
            values[alpha] = moment(d, alpha, spec)
        except MomentDivergenceError as exc:
            missing_reason = str(exc)
            break
        provenance[alpha] = "closed_form" if d.kind == "point_masses" else "quadrature"
    if cap is not None and up_to > cap and missing_reason is None:
        missing_reason = (
            f"orders above {cap} are invalid for growth class {d.growth.describe()} "
            f"(cap = floor(gamma) - 1)"
        )
    return MomentSequence(
        values=values,
        provenance=provenance,
        max_valid_order=cap,
        missing_reason=missing_reason,
    )
