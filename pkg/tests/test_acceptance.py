"""Acceptance gate: eight criteria, one test each.

Each test prints through the terminal-summary hook in conftest.py as one
ACCEPTANCE line.  Tolerances and runtime limits are pinned here on purpose;
loosening them is a behavior change, not a test fix.
"""
import math
import time

import numpy as np
import pytest

import nevkit as nk
from nevkit.bounds import (
    counterexample_scan,
    counting_bound,
    generate_cases,
    growth_bound_lhs,
    growth_bound_verify,
    poisson_jensen_bound,
    random_rational,
    reference_case,
    verify_suite,
)
from nevkit.characteristics import (
    ChargeView,
    classical_characteristic,
    diff_nevanlinna,
    diff_nevanlinna_total,
    integrated_counting,
    jensen_residual,
)
from nevkit.integrators import lebesgue, log_kernel_integral, omega_log_kernel_pair
from nevkit.potentials import circle_mean_plus

from conftest import random_model

LN = math.log


def test_criterion_1_remark_identity():
    # integral of the clipped envelope of ln|5/(z-1)| against m(t)=t on [0,2]
    # equals 2 ln 5 + 2, by the direct route and by the window substitution
    start = time.perf_counter()
    want = 2.0 * LN(5.0) + 2.0
    direct = growth_bound_lhs(reference_case())
    substituted = log_kernel_integral(lebesgue(2.0), x=1.0, r=2.0, R=2.5)
    elapsed = time.perf_counter() - start
    assert abs(direct - want) <= 1e-4 * want
    assert abs(substituted - want) <= 1e-4 * want
    assert elapsed < 1.0


def test_criterion_2_soundness_suite():
    start = time.perf_counter()
    reports = verify_suite(generate_cases(200, seed=1))
    fixture = growth_bound_verify(reference_case())
    elapsed = time.perf_counter() - start
    failures = [r.case_id for r in reports if not r.passed]
    assert failures == []
    assert len(reports) == 200
    closed_ratio = (2.0 * LN(5.0) + 2.0) \
        / (12.0 * LN(5.0 / 2.0) * (2.0 * LN(8.0) + 2.0))
    assert fixture.verdict == "pass"
    assert abs(fixture.ratio - closed_ratio) <= 1e-3
    assert elapsed < 60.0


def test_criterion_3_jensen_identity():
    start = time.perf_counter()
    worst = 0.0
    for seed in range(1, 101):
        model = random_model(seed, positive_only=True)
        rng = np.random.default_rng((55, seed))
        window = nk.RadialWindow(0.3 + 0.4 * float(rng.uniform()),
                                 3.2 + 1.3 * float(rng.uniform()))
        worst = max(worst, abs(jensen_residual(model, window)))
    elapsed = time.perf_counter() - start
    assert worst <= 1e-10
    assert elapsed < 1.0


def test_criterion_4_dual_formula_agreement():
    window = nk.RadialWindow(1.5, 4.5)
    worst_route = 0.0
    for seed in range(1, 51):
        model = random_model(seed)
        a = diff_nevanlinna(model, window, tol=1e-8, route="charge")
        b = diff_nevanlinna(model, window, tol=1e-8, route="canonical")
        worst_route = max(worst_route, abs(a - b))
    assert worst_route <= 4e-6

    worst_bridge = 0.0
    for i in range(1, 21):
        zeros, poles, scale, r, R = random_rational(i, seed=1)
        model = nk.from_rational(zeros=zeros, poles=poles, scale=scale)
        lhs = diff_nevanlinna_total(model, nk.RadialWindow(r, R), tol=1e-8)
        at_r = classical_characteristic(zeros, poles, scale, r=r, tol=1e-8)
        at_R = classical_characteristic(zeros, poles, scale, r=R, tol=1e-8)
        bridge = at_R.total - at_r.total + at_r.proximity
        worst_bridge = max(worst_bridge, abs(lhs - bridge))
    assert worst_bridge <= 4e-6


def test_criterion_5_property_grid():
    r_lo, r_hi = 1.5, 4.8
    outer_grid = np.geomspace(2.0, r_hi, 33)
    inner_grid = np.geomspace(0.5, r_lo, 33)
    check_at = nk.RadialWindow(1.5, 4.0)

    worst_mono = math.inf     # increments in R; must stay >= 0 up to noise
    worst_anti = -math.inf    # increments in r; must stay <= 0 up to noise
    worst_convex = math.inf   # second differences on the uniform ln R grid
    worst_sym = 0.0
    worst_shift = 0.0
    for seed in range(1, 26):
        model = random_model(seed)
        neg = ChargeView.negative_part(model)
        radii = set(map(float, outer_grid)) | set(map(float, inner_grid))
        cp = {t: circle_mean_plus(model, t, tol=1e-10) for t in sorted(radii)}

        def t_u(r, R):
            return cp[R] - cp[r] + integrated_counting(neg, nk.RadialWindow(r, R))

        along_R = np.array([t_u(r_lo, float(R)) for R in outer_grid])
        worst_mono = min(worst_mono, float(np.diff(along_R).min()))
        worst_convex = min(worst_convex, float(np.diff(along_R, n=2).min()))
        along_r = np.array([t_u(float(r), r_hi) for r in inner_grid])
        worst_anti = max(worst_anti, float(np.diff(along_r).max()))

        sym_gap = abs(diff_nevanlinna(model, check_at, tol=1e-8, route="charge")
                      - diff_nevanlinna(nk.negate(model), check_at, tol=1e-8,
                                        route="charge"))
        worst_sym = max(worst_sym, sym_gap)
        shift_gap = abs(diff_nevanlinna_total(model, check_at, tol=1e-8)
                        - diff_nevanlinna_total(nk.negate(model), check_at, tol=1e-8)
                        - nk.circle_mean(model, check_at.inner))
        worst_shift = max(worst_shift, shift_gap)

    assert worst_mono >= -1e-9
    assert worst_anti <= 1e-9
    assert worst_convex >= -1e-7
    assert worst_sym <= 1e-6
    assert worst_shift <= 1e-6


def test_criterion_6_counterexample_divergence():
    start = time.perf_counter()
    rows = counterexample_scan()
    elapsed = time.perf_counter() - start
    finite = [row for row in rows if row.epsilon > 0.0]
    assert len(finite) == 6
    for row in finite:
        assert row.lhs >= LN(5.0) + LN(1.0 / row.epsilon) - 1.0
    ordered = sorted(finite, key=lambda row: -row.epsilon)
    assert all(a.lhs < b.lhs for a, b in zip(ordered, ordered[1:]))
    assert all(a.dini < b.dini for a, b in zip(ordered, ordered[1:]))
    limit = [row for row in rows if row.epsilon == 0.0]
    assert len(limit) == 1
    assert limit[0].lhs == math.inf and limit[0].dini == math.inf
    assert elapsed < 5.0


def test_criterion_7_pointwise_and_counting_bounds():
    window = nk.RadialWindow(1.5, 4.5)
    for seed in range(1, 101):
        model = random_model(seed)
        rng = np.random.default_rng((77, seed))
        theta = float(rng.uniform(0.0, 2.0 * math.pi))
        w = float(rng.uniform(0.0, window.inner)) \
            * complex(math.cos(theta), math.sin(theta))
        value, bound = poisson_jensen_bound(model, w, window)
        assert value <= bound + 1e-10

    for seed in range(1, 51):
        rng = np.random.default_rng((88, seed))
        view = ChargeView(tuple((float(r), float(m)) for r, m in
                                zip(rng.uniform(0.0, 4.5, size=7),
                                    rng.uniform(0.0, 2.5, size=7))))
        count, mid, loose = counting_bound(view, r_star=2.0, R=5.0, r=1.0)
        assert count <= mid + 1e-10
        assert mid <= loose + 1e-10


def test_criterion_8_kint_inequality():
    for case in generate_cases(25, seed=1):
        lhs, rhs = omega_log_kernel_pair(case.integrator, R=case.window.outer)
        assert lhs <= rhs
    want = 2.0 * LN(8.0) + 2.0
    lhs, rhs = omega_log_kernel_pair(lebesgue(2.0), R=4.0)
    assert abs(lhs - want) <= 1e-6
    assert abs(rhs - lhs) <= 1e-6
