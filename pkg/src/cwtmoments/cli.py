"""Command-line front end.

Subcommands:

    cwtmoments run <scenario>  [--out-dir DIR]   run a scenario file (or a
                                                 built-in scenario by name)
    cwtmoments list                              built-in wavelets, inputs,
                                                 growth classes, scenarios
    cwtmoments moments <input> --up-to N         moment table as CSV on stdout
    cwtmoments cwt <input> --a A --b B           transform value(s) on stdout

Exit codes: 0 pass, 1 assertion failure, 2 usage or parse error.

Input tokens for ``moments``/``cwt``: ``delta[@LOC]``,
``delta-derivative[:K][@LOC]``, ``gaussian[:CENTER[,WIDTH]]``,
``bump[:CENTER[,WIDTH]]``, ``mexican-hat``, or a path to a two-column
(x, f(x)) text file.
"""

import argparse
import os
import sys
from importlib import resources

from .distributions import (
    BumpProfile,
    DistributionInput,
    GaussianProfile,
    Growth,
    MexicanHatDensityProfile,
    moment_sequence,
)
from .errors import CwtMomentsError, ScenarioError
from .quadrature import QuadratureSpec
from .scenario import Scenario, run_scenario
from .transform import cwt_direct, cwt_fourier
from .wavelets import MexicanHatWavelet

BUILTIN_SCENARIOS = ("delta-exact", "bump-large-a", "gaussian-small-a")


def list_builtins():
    """Deterministic listing of built-in wavelets, inputs and scenarios."""
    lines = [
        "wavelets:",
        "  mexican-hat",
        "input kinds:",
        "  delta               point mass, e.g. delta@0.5",
        "  delta-derivative    derivative mass, e.g. delta-derivative:2@0",
        "  gaussian            density, e.g. gaussian:0,1",
        "  bump                compact density, e.g. bump:0.3,1",
        "  mexican-hat         the wavelet itself as a density",
        "  <path>              two-column (x, f(x)) file, cubic interpolation",
        "growth classes:",
        "  compact, sub_exponential, power <gamma>, all_power, tempered_fourier",
        "example scenarios (run with: cwtmoments run <name>):",
    ]
    for name in BUILTIN_SCENARIOS:
        lines.append(f"  {name}")
    return "\n".join(lines)


def parse_input_token(token):
    """Build a DistributionInput from a compact CLI token."""
    if os.path.exists(token):
        return DistributionInput.from_file(token)
    location = 0.0
    main = token
    if "@" in token:
        main, _, loc_s = token.partition("@")
        location = float(loc_s)
    name, _, params = main.partition(":")
    if name == "delta":
        return DistributionInput.delta(location)
    if name == "delta-derivative":
        order = int(params) if params else 1
        return DistributionInput.delta_derivative(order, location)
    args = [float(p) for p in params.split(",") if p] if params else []
    if name == "gaussian":
        center = args[0] if args else 0.0
        width = args[1] if len(args) > 1 else 1.0
        return DistributionInput.from_density(
            GaussianProfile(center, width), Growth.sub_exponential()
        )
    if name == "bump":
        center = args[0] if args else 0.0
        width = args[1] if len(args) > 1 else 1.0
        return DistributionInput.from_density(BumpProfile(center, width), Growth.compact())
    if name == "mexican-hat":
        return DistributionInput.from_density(
            MexicanHatDensityProfile(), Growth.sub_exponential()
        )
    raise ValueError(
        f"unknown input {token!r}; see 'cwtmoments list' for the accepted forms"
    )


def _load_scenario(ref):
    if os.path.exists(ref):
        return Scenario.from_file(ref)
    if ref in BUILTIN_SCENARIOS:
        text = (
            resources.files("cwtmoments").joinpath(f"scenarios/{ref}.scn").read_text()
        )
        return Scenario.from_text(text)
    raise ScenarioError(
        f"scenario {ref!r} is neither a file nor a built-in "
        f"({', '.join(BUILTIN_SCENARIOS)})"
    )


def _cmd_run(args):
    try:
        scenario = _load_scenario(args.scenario)
    except ScenarioError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    try:
        outcome = run_scenario(scenario, args.out_dir)
    except CwtMomentsError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    for line in outcome.messages:
        print(line)
    for path in outcome.artifacts:
        print(f"wrote {path}")
    return outcome.exit_code


def _cmd_list(_args):
    print(list_builtins())
    return 0


def _cmd_moments(args):
    try:
        dist = parse_input_token(args.input)
    except (ValueError, CwtMomentsError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    seq = moment_sequence(dist, args.up_to, QuadratureSpec())
    print("order,value,provenance")
    for order in sorted(seq.values):
        print(f"{order},{seq.values[order]!r},{seq.provenance[order]}")
    if seq.missing_reason:
        print(f"note: {seq.missing_reason}", file=sys.stderr)
    return 0


def _cmd_cwt(args):
    try:
        dist = parse_input_token(args.input)
    except (ValueError, CwtMomentsError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if args.a <= 0:
        print("error: --a must be strictly positive", file=sys.stderr)
        return 2
    w = MexicanHatWavelet()
    spec = QuadratureSpec()
    print("method,a,b,value")
    try:
        if args.method in ("direct", "both"):
            p = cwt_direct(dist, w, args.a, args.b, spec)
            print(f"direct,{p.a!r},{p.b!r},{p.value!r}")
        if args.method in ("fourier", "both"):
            p = cwt_fourier(dist, w, args.a, args.b, spec)
            print(f"fourier,{p.a!r},{p.b!r},{p.value!r}")
    except CwtMomentsError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="cwtmoments",
        description="Wavelet transforms of distribution-like inputs and "
        "verification of their moment asymptotic expansions.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run a scenario file or built-in scenario")
    p_run.add_argument("scenario", help="scenario file path or built-in name")
    p_run.add_argument("--out-dir", default=".", help="directory for CSV artifacts")
    p_run.set_defaults(func=_cmd_run)

    p_list = sub.add_parser("list", help="list built-ins")
    p_list.set_defaults(func=_cmd_list)

    p_mom = sub.add_parser("moments", help="print a moment table")
    p_mom.add_argument("input", help="input token, e.g. delta@0 or gaussian")
    p_mom.add_argument("--up-to", type=int, required=True, help="highest moment order")
    p_mom.set_defaults(func=_cmd_moments)

    p_cwt = sub.add_parser("cwt", help="evaluate the transform at one (a, b)")
    p_cwt.add_argument("input", help="input token, e.g. delta@0 or gaussian")
    p_cwt.add_argument("--a", type=float, required=True, help="dilation (> 0)")
    p_cwt.add_argument("--b", type=float, default=0.0, help="translation")
    p_cwt.add_argument(
        "--method", choices=("direct", "fourier", "both"), default="direct"
    )
    p_cwt.set_defaults(func=_cmd_cwt)
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors already
        return int(exc.code or 0)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
