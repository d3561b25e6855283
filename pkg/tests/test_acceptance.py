"""Acceptance suite: every criterion at its stated tolerance, one pass/fail
line per criterion (run with -s to see them)."""

import math
import time

import numpy as np
import pytest

import cwtmoments as cm
from cwtmoments.expansion import (
    expansion_large_a,
    expansion_small_a,
    mexican_hat_quadratic_partial_sum,
    small_a_coefficient_comparison,
    small_a_reference,
    truncation_limit,
)
from cwtmoments.scenario import Scenario, run_scenario
from cwtmoments.verify import geometric_grid, remainder_order_fit, seminorm_decay_check

W = cm.MexicanHatWavelet()


def _report(number, label, elapsed, budget):
    print(f"[criterion {number}] PASS {label} ({elapsed:.2f} s, budget {budget:.0f} s)")
    assert elapsed < budget, f"criterion {number} exceeded its {budget:.0f} s budget"


def test_criterion_1_delta_exactness():
    t0 = time.perf_counter()
    cases = [
        (cm.DistributionInput.delta(0.0), 0),
        (cm.DistributionInput.delta_derivative(1, 0.0), 1),
    ]
    for f, k in cases:
        moments = cm.moment_sequence(f, 3)
        for a in (1.0, 10.0, 100.0):
            for b in (-2.0, 0.0, 3.0):
                closed = a**-0.5 * (-1.0) ** k * a**-k * W.derivative(k, -b / a)
                for N in range(k, 4):
                    partial = expansion_large_a(moments, W, a, b, N).partial_sums[N]
                    assert abs(partial - closed) <= 1e-12 * abs(closed), (k, a, b, N)
    _report(1, "delta/delta' partial sums equal the closed-form transform to 1e-12",
            time.perf_counter() - t0, 1.0)


def test_criterion_2_large_a_remainder_order():
    t0 = time.perf_counter()
    bump = cm.DistributionInput.from_density(cm.BumpProfile(0.3, 1.0), cm.Growth.compact())
    grid = geometric_grid(16.0, 2.0, 7)
    b = 1.0
    moments = cm.moment_sequence(bump, 3)
    references = {a: cm.cwt_direct(bump, W, a, b).value for a in grid}
    slopes = {}
    for N in (0, 1, 2, 3):
        remainders = [
            expansion_large_a(moments, W, a, b, N, reference=references[a]).remainders[N]
            for a in grid
        ]
        fit = remainder_order_fit(grid, remainders)
        bound = -(N + 0.5) + 0.3
        assert fit.slope <= bound, (N, fit.slope, bound)
        slopes[N] = fit.slope
    _report(2, f"remainder slopes {['%.2f' % slopes[n] for n in range(4)]} within "
               "O(a^-(N+1/2)) bounds", time.perf_counter() - t0, 30.0)


def test_criterion_3_quadratic_example_consistency():
    t0 = time.perf_counter()
    rng = np.random.default_rng(42)
    for _ in range(100):
        a = float(rng.uniform(2.0, 1000.0))
        b = float(rng.uniform(-5.0, 5.0))
        mu = rng.normal(size=3)
        moments = cm.MomentSequence(
            values={0: float(mu[0]), 1: float(mu[1]), 2: float(mu[2])},
            provenance={},
            max_valid_order=None,
        )
        generic = expansion_large_a(moments, W, a, b, 2).partial_sums[2]
        closed = mexican_hat_quadratic_partial_sum(mu[0], mu[1], mu[2], a, b)
        assert abs(closed - generic) <= 1e-12 * (1.0 + abs(generic)), (a, b)
    _report(3, "closed-form quadratic-coefficient expansion agrees with the "
               "generic N=2 sum to 1e-12 on 100 random (a, b)",
            time.perf_counter() - t0, 1.0)


def test_criterion_4_small_a_expansion():
    t0 = time.perf_counter()
    mh_density = cm.DistributionInput.from_density(
        cm.MexicanHatDensityProfile(), cm.Growth.sub_exponential()
    )
    psi_moments = cm.moment_sequence(mh_density, 4)
    f = cm.GaussianProfile()
    b = 0.5
    grid = np.array([0.025, 0.05, 0.1, 0.2, 0.4])
    remainders = []
    for a in grid:
        ref = small_a_reference(W, f, a, b)
        res = expansion_small_a(psi_moments, f, a, b, 4, reference=ref)
        remainders.append(res.remainders[4])
    fit = remainder_order_fit(grid, remainders)
    # orders 0, 1, 3 have vanishing wavelet moments, so the first term
    # dropped by N=4 is order 6: exponent 6 + 1/2
    next_exponent = 6.5
    assert fit.slope >= next_exponent - 0.3, fit.slope

    rows = small_a_coefficient_comparison(4)
    by_order = {r["order"]: r for r in rows}
    assert by_order[0]["mismatch"] is True
    assert by_order[0]["gamma_coefficient"] == pytest.approx(-math.sqrt(math.pi / 2), rel=1e-12)
    assert abs(by_order[0]["moment"]) < 1e-10
    print("[criterion 4] gamma-formula coefficient comparison (documented discrepancy):")
    for r in rows:
        flag = "MISMATCH" if r["mismatch"] else "ok"
        print(f"    order {r['order']}: moment {r['moment']:+.9f}  "
              f"gamma formula {r['gamma_coefficient']:+.9f}  [{flag}]")
    _report(4, f"small-a remainder exponent {fit.slope:.2f} >= {next_exponent} - 0.3; "
               "order-0 coefficient discrepancy reported", time.perf_counter() - t0, 30.0)


def test_criterion_5_seminorm_decay():
    t0 = time.perf_counter()
    grid = geometric_grid(4.0, 2.0, 8)
    worst = {}
    for q in (1, 2, 3):
        for alpha in (0, 1):
            for b in (0.0, 2.0):
                fit = seminorm_decay_check(W, q, b, 1.0, alpha, grid)
                assert fit.slope <= -q + 0.3, (q, alpha, b, fit.slope)
                worst[q] = max(worst.get(q, -math.inf), fit.slope)
    _report(5, f"seminorm sup slopes per q: "
               f"{ {q: '%.2f' % s for q, s in sorted(worst.items())} }",
            time.perf_counter() - t0, 30.0)


def test_criterion_6_fourier_cross_check():
    t0 = time.perf_counter()
    const = cm.parseval_constant(W)
    assert const == pytest.approx(1.0 / (2.0 * math.pi), rel=1e-10)

    inputs = [
        cm.DistributionInput.delta(0.0),
        cm.DistributionInput.delta(1.0),
        cm.DistributionInput.delta_derivative(1, 0.0),
        cm.DistributionInput.from_density(cm.GaussianProfile(), cm.Growth.sub_exponential()),
        cm.DistributionInput.from_density(cm.BumpProfile(0.3, 1.0), cm.Growth.compact()),
    ]
    pairs = ((1.0, 0.0), (2.0, 1.0), (4.0, -0.5), (0.5, 1.5))
    combos = 0
    for f in inputs:
        for a, b in pairs:
            direct = cm.cwt_direct(f, W, a, b).value
            four = cm.cwt_fourier(f, W, a, b).value
            assert abs(direct - four) <= 1e-7 * (1.0 + abs(direct)), (f.label, a, b)
            combos += 1
    assert combos == 20

    duality_cases = [
        cm.DistributionInput.delta(0.0),
        cm.DistributionInput.delta(1.5),
        cm.DistributionInput.delta_derivative(1, 0.5),
        cm.DistributionInput.from_density(cm.BumpProfile(0.3, 1.0), cm.Growth.compact()),
        cm.DistributionInput.from_density(cm.BumpProfile(-0.5, 2.0), cm.Growth.compact()),
    ]
    for f in duality_cases:
        for alpha in range(5):
            lhs, rhs = cm.fourier_moment_check(f, alpha)
            assert abs(lhs - rhs.conjugate()) <= 1e-6 * (1.0 + abs(rhs)), (f.label, alpha)
    _report(6, "20 direct/fourier combos agree to 1e-7; derivative/moment "
               "duality holds to 1e-6 through order 4", time.perf_counter() - t0, 30.0)


def test_criterion_7_truncation_rule():
    t0 = time.perf_counter()
    rng = np.random.default_rng(7)
    for _ in range(60):
        gamma = float(rng.uniform(0.5, 10.0))
        cap = truncation_limit(gamma)
        assert cap == math.floor(gamma) - 1
        d = cm.DistributionInput(
            kind="point_masses",
            growth=cm.Growth.power(gamma),
            point_masses=cm.DistributionInput.delta(0.0).point_masses,
        )
        moments = cm.moment_sequence(d, 12)
        if cap >= 0:
            ok = expansion_large_a(moments, W, 10.0, 0.5, cap)
            assert len(ok.terms) == cap + 1
        bad_n = max(cap + 1, 0)
        with pytest.raises(cm.TruncationOrderError) as info:
            expansion_large_a(moments, W, 10.0, 0.5, bad_n)
        assert info.value.cap == cap
        assert "floor(gamma) - 1" in str(info.value)
    _report(7, "orders above floor(gamma)-1 rejected, orders at or below it "
               "succeed, over random gamma in [0.5, 10]", time.perf_counter() - t0, 30.0)


def test_criterion_8_deterministic_artifacts(tmp_path):
    t0 = time.perf_counter()
    text = """
name = determinism_probe
mode = large_a
b = 1.0
N = 2

[input]
kind = density
profile = bump
center = 0.3
width = 1.0
growth_class = compact

[a_grid]
start = 16
ratio = 2
count = 7
"""
    outs = []
    for tag in ("one", "two"):
        out_dir = tmp_path / tag
        outcome = run_scenario(Scenario.from_text(text), out_dir)
        assert outcome.exit_code == 0
        outs.append(out_dir)
    for suffix in ("terms", "remainders", "fit"):
        b1 = (outs[0] / f"determinism_probe_{suffix}.csv").read_bytes()
        b2 = (outs[1] / f"determinism_probe_{suffix}.csv").read_bytes()
        assert b1 == b2, f"{suffix} CSV differs between identical runs"
    _report(8, "identical scenario runs produce byte-identical CSV artifacts",
            time.perf_counter() - t0, 30.0)
