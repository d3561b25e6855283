"""Numerical kernels with a compiled core and a pure-numpy fallback.

The compiled extension (``_native``) is preferred when it imported cleanly;
otherwise the numpy reference implementation is used.  Set the environment
variable ``CWTMOMENTS_KERNELS=python`` to force the fallback, or call
:func:`use_backend` at runtime (the benchmark does this to time both).

All wrappers accept scalars or array-likes and return float64 scalars or
arrays accordingly.
"""

import os

import numpy as np

from . import reference

try:
    from . import _native
except ImportError:
    _native = None

_impl = None
_backend_name = None


def available_backends():
    names = ["python"]
    if _native is not None:
        names.insert(0, "native")
    return names


def use_backend(name):
    """Select the kernel backend ("native" or "python")."""
    global _impl, _backend_name
    if name == "native":
        if _native is None:
            raise RuntimeError("compiled kernel backend is not available")
        _impl = _native
    elif name == "python":
        _impl = reference
    else:
        raise ValueError(f"unknown kernel backend {name!r}")
    _backend_name = name


def current_backend():
    return _backend_name


if os.environ.get("CWTMOMENTS_KERNELS") == "python" or _native is None:
    use_backend("python")
else:
    use_backend("native")


def _as_array(x):
    scalar = np.ndim(x) == 0
    arr = np.ascontiguousarray(x, dtype=np.float64)
    shape = arr.shape
    if arr.ndim != 1:
        arr = arr.reshape(-1)
    return arr, scalar, shape


def _restore(out, scalar, shape):
    if scalar:
        return float(out[0])
    return out.reshape(shape)


def mexican_hat(x):
    """(1 - x^2) exp(-x^2/2)."""
    arr, scalar, shape = _as_array(x)
    return _restore(_impl.mexican_hat(arr), scalar, shape)


def hermite_he(n, x):
    """Probabilists' Hermite polynomial He_n(x)."""
    arr, scalar, shape = _as_array(x)
    return _restore(_impl.hermite_he(int(n), arr), scalar, shape)


def hermite_gaussian(n, x):
    """He_n(x) * exp(-x^2/2)."""
    arr, scalar, shape = _as_array(x)
    return _restore(_impl.hermite_gaussian(int(n), arr), scalar, shape)


def taylor_eval(coeffs, center, x):
    """Evaluate sum_k coeffs[k] * (x - center)^k by Horner's rule."""
    coeffs = np.ascontiguousarray(coeffs, dtype=np.float64)
    if coeffs.size == 0:
        raise ValueError("taylor_eval needs at least one coefficient")
    arr, scalar, shape = _as_array(x)
    return _restore(_impl.taylor_eval(coeffs, float(center), arr), scalar, shape)
