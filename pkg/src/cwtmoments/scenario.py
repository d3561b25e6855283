"""Scenario files: a sectioned key=value format driving the verification
pipelines, with CSV artifacts as output.

Grammar (one statement per line, '#' starts a comment):

    name = bump_large_a          top-level keys come first
    mode = large_a               large_a | small_a | fourier_check | seminorm | moments
    wavelet = mexican-hat
    b = 1.0
    N = 2

    [input]                      sections: input, a_grid, tolerances, assert
    kind = density
    profile = bump               gaussian | bump | mexican-hat | file:PATH
    center = 0.3
    width = 1.0
    growth_class = compact       compact | sub_exponential | power G | all_power | tempered_fourier

    [a_grid]
    start = 16
    ratio = 2
    count = 7

    [assert]
    slope_max = -2.2

Seminorm scenarios take top-level ``q``, ``alpha`` and ``M`` instead of an
[input] section; [assert] accepts slope_max, slope_min, remainder_max and
rel_diff_max, with mode-appropriate defaults when the section is omitted.

Every run writes <name>_terms.csv, <name>_remainders.csv and <name>_fit.csv
into the output directory, formatted with shortest-round-trip floats so
repeated runs are byte-identical.
"""

import os
from dataclasses import dataclass, field

import numpy as np

from .distributions import (
    BumpProfile,
    DistributionInput,
    GaussianProfile,
    Growth,
    MexicanHatDensityProfile,
    PointMass,
    TabulatedProfile,
    moment_sequence,
    truncation_limit,
)
from .errors import InsufficientDataError, ScenarioError
from .expansion import (
    expansion_large_a,
    expansion_small_a,
    small_a_coefficient_comparison,
    small_a_reference,
)
from .quadrature import QuadratureSpec
from .transform import cwt_direct, cwt_fourier
from .verify import geometric_grid, remainder_order_fit, seminorm_sup
from .wavelets import MexicanHatWavelet

MODES = ("large_a", "small_a", "fourier_check", "seminorm", "moments")
ORDER_FIT_MODES = ("large_a", "small_a", "seminorm")
SECTIONS = ("input", "a_grid", "tolerances", "assert")
ASSERT_KEYS = ("slope_max", "slope_min", "remainder_max", "rel_diff_max")

WAVELETS = {"mexican-hat": MexicanHatWavelet}


def _parse_sections(text):
    """Split scenario text into {section: {key: (value, line)}}; the
    top-level preamble lives under the '' key.  'mass' may repeat."""
    data = {"": {}}
    current = ""
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("["):
            if not line.endswith("]"):
                raise ScenarioError("unterminated section header", lineno)
            current = line[1:-1].strip().lower()
            if current not in SECTIONS:
                raise ScenarioError(
                    f"unknown section [{current}]; expected one of {', '.join(SECTIONS)}",
                    lineno,
                )
            data.setdefault(current, {})
            continue
        if "=" not in line:
            raise ScenarioError("expected 'key = value'", lineno)
        key, _, value = line.partition("=")
        key = key.strip().lower()
        value = value.strip()
        if not key:
            raise ScenarioError("empty key", lineno)
        bucket = data[current]
        if key == "mass":
            bucket.setdefault("mass", []).append((value, lineno))
        elif key in bucket:
            raise ScenarioError(f"duplicate key {key!r}", lineno)
        else:
            bucket[key] = (value, lineno)
    return data


_REQUIRED = object()


def _take(data, section, key, convert, default=_REQUIRED, where="scenario"):
    bucket = data.get(section, {})
    if key not in bucket:
        if default is _REQUIRED:
            place = f"[{section}]" if section else "top level"
            raise ScenarioError(f"missing required key {key!r} in {place}")
        return default
    value, lineno = bucket.pop(key)
    try:
        return convert(value)
    except ScenarioError:
        raise
    except Exception as exc:
        raise ScenarioError(f"bad value for {key!r}: {exc}", lineno) from exc


def _as_float(value):
    return float(value)


def _as_int(value):
    f = float(value)
    if f != int(f):
        raise ValueError(f"{value!r} is not an integer")
    return int(f)


def _as_growth(value):
    parts = value.replace(":", " ").split()
    kind = parts[0]
    if kind == "power":
        if len(parts) != 2:
            raise ValueError("power growth class needs a gamma, e.g. 'power 3.5'")
        return Growth.power(float(parts[1]))
    if len(parts) != 1:
        raise ValueError(f"unexpected arguments for growth class {kind!r}")
    return Growth(kind)


def _as_mode(value):
    if value not in MODES:
        raise ValueError(f"unknown mode {value!r}; expected one of {', '.join(MODES)}")
    return value


def _as_wavelet(value):
    if value not in WAVELETS:
        raise ValueError(
            f"unknown wavelet {value!r}; built-ins: {', '.join(sorted(WAVELETS))}"
        )
    return value


def _as_name(value):
    allowed = set("abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789_-")
    if not value or any(c not in allowed for c in value):
        raise ValueError(
            f"scenario name {value!r} must use only letters, digits, '_' and '-'"
        )
    return value


def _reject_unknown(data):
    for section, bucket in data.items():
        for key, entry in bucket.items():
            lineno = entry[0][1] if key == "mass" else entry[1]
            place = f"[{section}]" if section else "top level"
            raise ScenarioError(f"unknown key {key!r} in {place}", lineno)


def _build_input(data):
    bucket = data.get("input")
    if bucket is None:
        raise ScenarioError("missing [input] section")
    masses = bucket.pop("mass", None)
    kind = _take(data, "input", "kind", str, default="density" if masses is None else "point_masses")
    if kind == "point_masses":
        if not masses:
            raise ScenarioError("point_masses input needs at least one 'mass = LOC K WEIGHT' line")
        growth = _take(data, "input", "growth_class", _as_growth, default=Growth.compact())
        pm = []
        for value, lineno in masses:
            parts = value.split()
            if len(parts) != 3:
                raise ScenarioError("mass line must be 'mass = LOC K WEIGHT'", lineno)
            try:
                loc, k, wgt = float(parts[0]), int(parts[1]), float(parts[2])
            except ValueError as exc:
                raise ScenarioError(f"bad mass line: {exc}", lineno) from exc
            pm.append(PointMass(loc, k, wgt))
        return DistributionInput.from_point_masses(pm, growth)
    if kind != "density":
        raise ScenarioError(f"unknown input kind {kind!r}")
    profile_name = _take(data, "input", "profile", str)
    center = _take(data, "input", "center", _as_float, default=0.0)
    width = _take(data, "input", "width", _as_float, default=1.0)
    if profile_name == "gaussian":
        profile = GaussianProfile(center, width)
        default_growth = Growth.sub_exponential()
    elif profile_name == "bump":
        profile = BumpProfile(center, width)
        default_growth = Growth.compact()
    elif profile_name == "mexican-hat":
        profile = MexicanHatDensityProfile()
        default_growth = Growth.sub_exponential()
    elif profile_name.startswith("file:"):
        profile = TabulatedProfile.from_file(profile_name[5:])
        default_growth = Growth.compact()
    else:
        raise ScenarioError(
            f"unknown profile {profile_name!r}; expected gaussian, bump, "
            f"mexican-hat or file:PATH"
        )
    growth = _take(data, "input", "growth_class", _as_growth, default=default_growth)
    return DistributionInput.from_density(profile, growth)


@dataclass
class Scenario:
    name: str
    mode: str
    wavelet: object
    input: DistributionInput
    a_grid: np.ndarray
    b: float
    N: int
    q: int
    alpha: int
    M: float
    spec: QuadratureSpec
    asserts: dict = field(default_factory=dict)

    @classmethod
    def from_text(cls, text):
        data = _parse_sections(text)

        name = _take(data, "", "name", _as_name)
        mode = _take(data, "", "mode", _as_mode)
        wavelet_name = _take(data, "", "wavelet", _as_wavelet, default="mexican-hat")
        wavelet = WAVELETS[wavelet_name]()

        b = _take(data, "", "b", _as_float, default=0.0)
        need_n = mode in ("large_a", "small_a", "moments")
        N = _take(data, "", "n", _as_int, default=None if not need_n else _REQUIRED)
        q = _take(data, "", "q", _as_int, default=1 if mode == "seminorm" else None)
        alpha = _take(data, "", "alpha", _as_int, default=0 if mode == "seminorm" else None)
        M = _take(data, "", "m", _as_float, default=1.0 if mode == "seminorm" else None)

        dist = _build_input(data) if mode != "seminorm" else None

        grid = None
        if mode in ("large_a", "small_a", "fourier_check", "seminorm"):
            start = _take(data, "a_grid", "start", _as_float)
            ratio = _take(data, "a_grid", "ratio", _as_float)
            count = _take(data, "a_grid", "count", _as_int)
            if mode in ORDER_FIT_MODES and count < 4:
                raise ScenarioError(
                    f"mode {mode!r} fits a decay order and needs a_grid count >= 4, got {count}"
                )
            grid = geometric_grid(start, ratio, count)

        spec_kwargs = {}
        for key_name in ("abs_tol", "rel_tol", "truncation_t", "max_subdivisions"):
            conv = _as_int if key_name == "max_subdivisions" else _as_float
            val = _take(data, "tolerances", key_name, conv, default=None)
            if val is not None:
                spec_kwargs[key_name.replace("truncation_t", "truncation_T")] = val
        spec = QuadratureSpec(**spec_kwargs)

        asserts = {}
        for key_name in ASSERT_KEYS:
            val = _take(data, "assert", key_name, _as_float, default=None)
            if val is not None:
                asserts[key_name] = val

        _reject_unknown(data)

        if N is not None and N < 0:
            raise ScenarioError("N must be >= 0")

        # power-class inputs cap the usable expansion order; moments mode
        # instead reports the capped orders as absent
        if dist is not None and dist.growth.kind == "power" and mode == "large_a":
            cap = truncation_limit(dist.growth.gamma)
            if N is not None and N > cap:
                raise ScenarioError(
                    f"N={N} exceeds the expansion cap floor(gamma)-1 = {cap} for "
                    f"growth class {dist.growth.describe()}"
                )

        if not asserts:
            if mode == "large_a":
                asserts["slope_max"] = -(N + 0.5) + 0.3
            elif mode == "seminorm":
                asserts["slope_max"] = -q + 0.3
            elif mode == "fourier_check":
                asserts["rel_diff_max"] = 1e-7

        return cls(
            name=name,
            mode=mode,
            wavelet=wavelet,
            input=dist,
            a_grid=grid,
            b=b,
            N=N,
            q=q,
            alpha=alpha,
            M=M,
            spec=spec,
            asserts=asserts,
        )

    @classmethod
    def from_file(cls, path):
        with open(path, "r", encoding="utf-8") as fh:
            return cls.from_text(fh.read())


def _fmt(v):
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    return repr(float(v))


def _write_csv(path, header, rows):
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(_fmt(v) for v in row) + "\n")


@dataclass
class ScenarioOutcome:
    exit_code: int
    messages: list
    artifacts: list
    fit: object = None


def _run_expansion_mode(s, out):
    term_rows = []
    rem_rows = []
    remainders = []
    if s.mode == "large_a":
        moments = moment_sequence(s.input, s.N, s.spec)
        for a in s.a_grid:
            ref = cwt_direct(s.input, s.wavelet, a, s.b, s.spec).value
            res = expansion_large_a(moments, s.wavelet, a, s.b, s.N, reference=ref)
            for alpha, (term, psum) in enumerate(zip(res.terms, res.partial_sums)):
                term_rows.append((a, alpha, term, psum))
            rem_rows.append((a, s.N, res.reference, res.partial_sums[s.N], res.remainders[s.N]))
            remainders.append(res.remainders[s.N])
    else:
        mh_density = DistributionInput.from_density(
            MexicanHatDensityProfile(), Growth.sub_exponential()
        )
        psi_moments = moment_sequence(mh_density, s.N, s.spec)
        profile = s.input.density
        if profile is None:
            raise ScenarioError("small_a mode needs a density input (the analyzed function)")
        for a in s.a_grid:
            ref = small_a_reference(s.wavelet, profile, a, s.b, s.spec)
            res = expansion_small_a(psi_moments, profile, a, s.b, s.N, reference=ref)
            for alpha, (term, psum) in enumerate(zip(res.terms, res.partial_sums)):
                term_rows.append((a, alpha, term, psum))
            rem_rows.append((a, s.N, res.reference, res.partial_sums[s.N], res.remainders[s.N]))
            remainders.append(res.remainders[s.N])
        out.messages.append("coefficient comparison (quadrature moments vs Gamma formula):")
        for row in small_a_coefficient_comparison(s.N, s.spec):
            flag = "MISMATCH" if row["mismatch"] else "ok"
            out.messages.append(
                f"  order {row['order']}: moment {row['moment']:.9g} vs "
                f"gamma formula {row['gamma_coefficient']:.9g} [{flag}]"
            )
    return term_rows, rem_rows, np.asarray(remainders)


def run_scenario(scenario, out_dir="."):
    """Execute a scenario and write its CSV artifacts.

    Returns a ScenarioOutcome with exit_code 0 (all assertions pass) or
    1 (assertion failures; the messages carry a failure table).
    """
    s = scenario
    os.makedirs(out_dir, exist_ok=True)
    out = ScenarioOutcome(exit_code=0, messages=[], artifacts=[])
    term_rows = []
    rem_rows = []
    fit = None
    fit_error = None
    diffs = None

    if s.mode in ("large_a", "small_a"):
        term_rows, rem_rows, remainders = _run_expansion_mode(s, out)
        try:
            fit = remainder_order_fit(s.a_grid, remainders)
        except InsufficientDataError as exc:
            fit_error = str(exc)
    elif s.mode == "seminorm":
        sups = []
        for a in s.a_grid:
            sup = seminorm_sup(s.wavelet, s.q, s.b, s.M, s.alpha, a)
            sups.append(sup)
            term_rows.append((a, s.alpha, sup, sup))
            rem_rows.append((a, s.q, sup, 0.0, sup))
        fit = remainder_order_fit(s.a_grid, np.asarray(sups))
    elif s.mode == "fourier_check":
        diffs = []
        for a in s.a_grid:
            direct = cwt_direct(s.input, s.wavelet, a, s.b, s.spec).value
            four = cwt_fourier(s.input, s.wavelet, a, s.b, s.spec).value
            term_rows.append((a, 0, four, direct))
            rem_rows.append((a, 0, direct, four, direct - four))
            diffs.append(abs(direct - four) / (1.0 + abs(direct)))
        diffs = np.asarray(diffs)
    elif s.mode == "moments":
        moments = moment_sequence(s.input, s.N, s.spec)
        running = 0.0
        for alpha in sorted(moments.values):
            running += moments.values[alpha]
            term_rows.append((0.0, alpha, moments.values[alpha], running))
        if moments.missing_reason:
            out.messages.append(f"note: {moments.missing_reason}")

    paths = {
        "terms": os.path.join(out_dir, f"{s.name}_terms.csv"),
        "remainders": os.path.join(out_dir, f"{s.name}_remainders.csv"),
        "fit": os.path.join(out_dir, f"{s.name}_fit.csv"),
    }
    _write_csv(paths["terms"], ("a", "alpha", "term", "partial_sum"), term_rows)
    _write_csv(paths["remainders"], ("a", "N", "reference", "partial_sum", "remainder"), rem_rows)
    fit_rows = [(fit.slope, fit.intercept, fit.r_squared)] if fit is not None else []
    _write_csv(paths["fit"], ("slope", "intercept", "r_squared"), fit_rows)
    out.artifacts = [paths["terms"], paths["remainders"], paths["fit"]]
    out.fit = fit

    failures = []
    for key, bound in sorted(s.asserts.items()):
        if key in ("slope_max", "slope_min"):
            if fit is None:
                failures.append((key, bound, "n/a", f"no order fit available ({fit_error})"))
                continue
            ok = fit.slope <= bound if key == "slope_max" else fit.slope >= bound
            if not ok:
                failures.append((key, bound, fit.slope, "slope bound violated"))
        elif key == "remainder_max":
            worst = max((abs(r[4]) for r in rem_rows), default=0.0)
            if worst > bound:
                failures.append((key, bound, worst, "remainder bound violated"))
        elif key == "rel_diff_max":
            if diffs is None:
                failures.append((key, bound, "n/a", "no method comparison in this mode"))
            elif diffs.max() > bound:
                failures.append((key, bound, float(diffs.max()), "method disagreement"))

    if fit is not None:
        out.messages.append(
            f"fit: slope {fit.slope:.6g}, intercept {fit.intercept:.6g}, "
            f"r_squared {fit.r_squared:.6g}, excluded {list(fit.excluded_points)}"
        )
    if failures:
        out.exit_code = 1
        out.messages.append("assertion failures:")
        out.messages.append(f"  {'assertion':<14} {'bound':>14} {'actual':>14}  reason")
        for key, bound, actual, reason in failures:
            actual_s = f"{actual:.6g}" if isinstance(actual, float) else str(actual)
            out.messages.append(f"  {key:<14} {bound:>14.6g} {actual_s:>14}  {reason}")
    else:
        checked = ", ".join(f"{k}={v:g}" for k, v in sorted(s.asserts.items())) or "none"
        out.messages.append(f"assertions passed ({checked})")
    return out
