"""End-to-end acceptance suite.

Each test covers one headline guarantee of the package, prints a single
PASS/FAIL line with the measured figure against its stated tolerance, and
enforces the runtime budget it was designed for.  Run with ``-s`` to see the
lines as they go by.
"""

from __future__ import annotations

import time

import numpy as np
import pytest

from fracchemo import (
    Field,
    Grid,
    KernelSpec,
    Params,
    StepperConfig,
    assemble_restricted,
    check_inner_persistence,
    check_outer_decay,
    classify,
    constant_field,
    drifted_principal_eigen,
    eigenvalue_gap,
    equilibrium,
    fit_front,
    fractional_laplacian,
    gradient,
    heat_kernel_value,
    helmholtz_solve,
    homogeneous_ode,
    kato_limit_check,
    kato_quantity,
    kernel_mass,
    make_x0_initial,
    principal_eigenpair,
    semigroup_defect,
    simulate,
    table_threshold,
    threshold_from_M,
)

from test_regime import draw_for_row


def report(number: int, ok: bool, detail: str) -> None:
    print(f"[criterion {number}] {'PASS' if ok else 'FAIL'}: {detail}")
    assert ok, detail


def budget(number: int, started: float, limit: float) -> None:
    elapsed = time.perf_counter() - started
    assert elapsed < limit, (
        f"criterion {number} took {elapsed:.1f}s, budget {limit:.0f}s"
    )


def test_criterion_1_spectral_exactness():
    started = time.perf_counter()
    grid_1d = Grid(1, 2.0 * np.pi, 64)
    grid_2d = Grid(2, 2.0 * np.pi, 32)
    x = grid_1d.coordinates[0]
    f = Field(grid=grid_1d, values=np.cos(3.0 * x))
    frac = fractional_laplacian(f, 0.75)
    plane_frac = float(
        np.max(np.abs(frac.values - 3.0**1.5 * np.cos(3.0 * x)))
    ) / 3.0**1.5
    solved = helmholtz_solve(f, 2.0, 1.5)
    exact = 1.5 / (2.0 + 9.0) * np.cos(3.0 * x)
    plane_helm = float(np.max(np.abs(solved.values - exact))) * (
        2.0 + 9.0
    ) / 1.5

    # gradient of the screened solve stays below sqrt(N) mu / sqrt(lam)
    # times the sup of the source, over 100 random nonnegative fields
    rng = np.random.default_rng(11)
    worst_ratio = 0.0
    for grid in (grid_1d, grid_2d):
        for _ in range(50):
            values = rng.random(grid.shape)
            lam = float(rng.uniform(0.5, 4.0))
            mu = float(rng.uniform(0.5, 4.0))
            k = float(rng.uniform(1.0, 2.0))
            source = Field(grid=grid, values=values**k)
            sol = helmholtz_solve(source, lam, mu)
            grad_sup = max(
                float(np.max(np.abs(comp.values))) for comp in gradient(sol)
            )
            bound = np.sqrt(grid.dim) * mu / np.sqrt(lam) * float(
                np.max(values**k)
            )
            worst_ratio = max(worst_ratio, grad_sup / bound)
    ok = plane_frac <= 1e-12 and plane_helm <= 1e-12 and worst_ratio <= 1.0
    report(1, ok, (
        f"plane-wave errors {plane_frac:.2e}, {plane_helm:.2e} (<= 1e-12); "
        f"gradient-bound ratio {worst_ratio:.3f} (<= 1) on 100 fields"
    ))
    budget(1, started, 10.0)


def test_criterion_2_kernel_suite():
    started = time.perf_counter()
    mass_gaps = {}
    for alpha, radius in ((0.6, 3e5), (0.75, 1e4), (0.9, 1.5e3)):
        mass = kernel_mass(
            KernelSpec(alpha=alpha, dim=1, t=1.0), truncation_radius=radius
        )
        mass_gaps[alpha] = abs(mass - 1.0)
    spec = KernelSpec(alpha=0.5, dim=1, t=2.0)
    cauchy_gap = max(
        abs(heat_kernel_value(spec, x) - 2.0 / (np.pi * (4.0 + x * x)))
        for x in np.linspace(0.0, 8.0, 9)
    )
    probe_grid = Grid(1, 2.0 * np.pi, 64)
    xs = probe_grid.coordinates[0]
    probe = Field(
        grid=probe_grid, values=1.0 + 0.5 * np.cos(xs) + 0.25 * np.sin(2 * xs)
    )
    defect = semigroup_defect(0.75, 1, 0.4, 0.7, probe)

    alpha = 0.75
    one = constant_field(Grid(1, 2.0, 4096), 1.0)
    closed = 2.0 * 0.3 ** (2.0 * alpha - 1.0) / (2.0 * alpha - 1.0)
    kato_gap = abs(kato_quantity(one, 0.3, alpha) - closed) / closed
    table = kato_limit_check(one, alpha, [0.5 * 2.0**-j for j in range(7)])
    exponent_gap = abs(table.fitted_exponent - (2.0 * alpha - 1.0))
    ok = (
        all(gap <= 1e-6 for gap in mass_gaps.values())
        and cauchy_gap <= 1e-6
        and defect <= 1e-12
        and kato_gap <= 1e-6
        and table.vanishes
        and exponent_gap <= 0.05
    )
    report(2, ok, (
        f"mass gaps {max(mass_gaps.values()):.2e} (<= 1e-6), cauchy "
        f"{cauchy_gap:.2e} (<= 1e-6), semigroup {defect:.2e} (<= 1e-12), "
        f"kato {kato_gap:.2e} (<= 1e-6), exponent off by "
        f"{exponent_gap:.3f} (<= 0.05)"
    ))
    budget(2, started, 60.0)


def test_criterion_3_threshold_table_equivalence():
    started = time.perf_counter()
    rng = np.random.default_rng(5)
    worst = 0.0
    for row in (1, 2, 3, 4):
        for _ in range(1000):
            p = draw_for_row(rng, row)
            for column in ("a", "c"):
                gap = abs(
                    table_threshold(p, column) - threshold_from_M(p, column)
                )
                worst = max(worst, gap)
    ok = worst <= 1e-12
    report(3, ok, (
        f"threshold formulas agree to {worst:.2e} (<= 1e-12) over "
        "1000 draws per sign row"
    ))
    budget(3, started, 5.0)


BOUNDEDNESS_CASES = {
    "a": dict(chi1=0.5, chi2=0.3, lambda1=1.0, lambda2=1.2, a=1.0, b=1.5,
              gamma=2.0, k=1.0),
    "b": dict(chi1=0.5, chi2=1.5, lambda1=2.0, lambda2=1.0, a=1.0, b=1.0,
              gamma=1.8, k=1.0),
    "c": dict(chi1=0.5, chi2=0.2, lambda1=1.0, lambda2=1.0, a=0.5, b=2.0,
              gamma=2.5, k=2.0),
    "d": dict(chi1=1.0, chi2=1.0, lambda1=1.0, lambda2=1.0, a=1.0, b=1.0,
              gamma=2.5, k=2.0),
}


def test_criterion_4_boundedness_cases():
    started = time.perf_counter()
    grid = Grid(1, 2.0 * np.pi, 256)
    x = grid.coordinates[0]
    initial = {
        "a": 1.5 - 0.5 * np.cos(x),
        "b": 1.2 + 0.3 * np.cos(x),
        "c": 1.0 + 0.3 * np.cos(x),
        "d": 1.0 + 0.3 * np.cos(x),
    }
    ratios = {}
    for case, overrides in BOUNDEDNESS_CASES.items():
        p = Params(dim=1, alpha=0.75, mu1=1.0, mu2=1.0, **overrides)
        u0 = Field(grid=grid, values=initial[case])
        verdict = classify(p, u0_sup=float(np.max(initial[case])))
        assert verdict.boundedness_case == case
        record = simulate(
            u0, p,
            StepperConfig(dt=0.05, t_end=100.0, snapshot_stride=10),
            c0_predicted=verdict.C0,
        )
        assert not record.blew_up
        ratios[case] = float(np.max(record.column("sup_u"))) / verdict.C0
    ok = all(r <= 1.05 for r in ratios.values())
    detail = ", ".join(f"{c}: {r:.4f}" for c, r in sorted(ratios.items()))
    report(4, ok, f"sup_u / C0 over T=100 at n=256: {detail} (all <= 1.05)")
    budget(4, started, 300.0)


ASYMPTOTIC_REGIMES = {
    "a": dict(chi1=0.3, chi2=0.5, lambda1=1.2, lambda2=1.0, gamma=2.0, k=1.0),
    "b": dict(chi1=1.0, chi2=1.0, lambda1=1.0, lambda2=1.0, gamma=2.5, k=1.0),
}


def test_criterion_5_equilibrium_convergence():
    started = time.perf_counter()
    grid = Grid(1, 2.0 * np.pi, 128)
    x = grid.coordinates[0]
    worst = {}
    for case, overrides in ASYMPTOTIC_REGIMES.items():
        p = Params(dim=1, alpha=0.75, mu1=1.0, mu2=1.0, a=1.0, b=1.0,
                   **overrides)
        u_star, _, _ = equilibrium(p)
        u0 = Field(grid=grid, values=u_star * (1.0 + 0.3 * np.cos(x)))
        verdict = classify(p, u0_sup=float(np.max(u0.values)))
        assert verdict.asymptotic_case == case
        record = simulate(
            u0, p, StepperConfig(dt=0.05, t_end=50.0, snapshot_stride=20)
        )
        worst[case] = max(
            record.column("dist_u")[-1],
            record.column("dist_v")[-1],
            record.column("dist_w")[-1],
        )
    ok = all(w <= 1e-3 for w in worst.values())
    detail = ", ".join(f"{c}: {w:.2e}" for c, w in sorted(worst.items()))
    report(5, ok, f"equilibrium distances at T=50: {detail} (all <= 1e-3)")
    budget(5, started, 120.0)


def test_criterion_6_front_spreading():
    started = time.perf_counter()
    p = Params(dim=1, alpha=0.75, chi1=0.5, chi2=0.5, lambda1=1.0,
               lambda2=1.0, mu1=1.0, mu2=1.0, a=1.0, b=1.0, gamma=2.0, k=1.0)
    grid = Grid(1, 800.0, 4096)
    u0 = make_x0_initial(grid, c_star=1.0, alpha=p.alpha, floor=1e-8)
    record = simulate(
        u0, p,
        StepperConfig(dt=0.02, t_end=11.0, snapshot_stride=25, level=0.5,
                      adaptive=False),
        keep_fields=True,
    )
    fitted = fit_front(
        record.times, record.column("R_level"), extent=800.0,
        window=(2.0, 11.0),
    )
    times = np.array([s.t for s in record.snapshots])
    fields = [s.u for s in record.snapshots]
    inner = check_inner_persistence(times, fields, lower_rate=0.4, delta=0.5)
    outer = check_outer_decay(times, fields, upper_rate=0.4, eps=0.8)
    ok = (
        0.32 <= fitted.rate <= 0.48
        and fitted.r_squared >= 0.99
        and inner.ok
        and outer.ok
    )
    report(6, ok, (
        f"front rate {fitted.rate:.4f} in [0.32, 0.48] "
        f"(r2 = {fitted.r_squared:.4f}); inner persistence "
        f"{'holds' if inner.ok else 'fails'}, outer decay "
        f"{'holds' if outer.ok else 'fails'}"
    ))
    budget(6, started, 600.0)


def test_criterion_7_upper_bound_monotone_in_k():
    started = time.perf_counter()
    base = dict(dim=1, alpha=0.75, chi1=1.0, chi2=1.0, lambda1=1.0,
                lambda2=2.0, mu1=1.0, mu2=1.0, a=1.0, b=1.0, gamma=3.5)
    uppers = [
        classify(Params(**base, k=k), u0_sup=2.0).speed_upper
        for k in (1.0, 1.5, 2.0)
    ]
    balanced = classify(
        Params(dim=1, alpha=0.75, chi1=1.0, chi2=1.0, lambda1=1.0,
               lambda2=1.0, mu1=1.0, mu2=1.0, a=1.0, b=1.0, gamma=2.5,
               k=1.0),
        u0_sup=2.0,
    )
    monotone = all(u2 >= u1 for u1, u2 in zip(uppers, uppers[1:]))
    collapses = balanced.speed_upper == balanced.speed_lower
    ok = monotone and collapses
    report(7, ok, (
        f"upper speed bound over k in (1, 1.5, 2): "
        + ", ".join(f"{u:.4f}" for u in uppers)
        + f" (non-decreasing); balanced case upper == lower "
        f"({balanced.speed_upper:.4f})"
    ))
    budget(7, started, 1.0)


def test_criterion_8_eigen_suite():
    started = time.perf_counter()
    op = assemble_restricted(1.0, 512, 0.75)
    lam, _ = principal_eigenpair(op)
    gap = eigenvalue_gap(op)
    lam_double, _ = principal_eigenpair(assemble_restricted(2.0, 512, 0.75))
    scale_gap = abs(lam_double / lam - 2.0**-1.5) / 2.0**-1.5
    drifted = [
        drifted_principal_eigen(op, c, 1.0, lam + 0.05)
        for c in (-0.2, 0.0, 0.2)
    ]
    ok = (
        lam > 0.0
        and gap > 1e-3
        and scale_gap <= 0.01
        and all(value < -1e-8 for value in drifted)
    )
    report(8, ok, (
        f"lambda1 = {lam:.4f} > 0, relative gap {gap:.3f} > 1e-3, "
        f"domain scaling off by {scale_gap:.2e} (<= 1%), drifted values "
        + ", ".join(f"{v:.2e}" for v in drifted)
        + " (all < -1e-8)"
    ))
    budget(8, started, 120.0)


def test_criterion_9_homogeneous_reduction():
    started = time.perf_counter()
    rng = np.random.default_rng(2024)
    grid = Grid(1, 2.0 * np.pi, 32)
    worst = 0.0
    for _ in range(10):
        p = Params(
            dim=1,
            alpha=float(rng.uniform(0.55, 0.95)),
            chi1=float(rng.uniform(0.0, 2.0)),
            chi2=float(rng.uniform(0.0, 2.0)),
            lambda1=float(rng.uniform(0.5, 2.0)),
            lambda2=float(rng.uniform(0.5, 2.0)),
            mu1=float(rng.uniform(0.5, 2.0)),
            mu2=float(rng.uniform(0.5, 2.0)),
            a=float(rng.uniform(1.2, 2.0)),
            b=float(rng.uniform(0.8, 2.0)),
            gamma=float(rng.uniform(2.0, 3.0)),
            k=float(rng.uniform(1.0, 2.0)),
        )
        u0 = float(rng.uniform(0.3, 2.5))
        record = simulate(
            constant_field(grid, u0), p,
            StepperConfig(dt=0.01, t_end=20.0, snapshot_stride=100,
                          adaptive=False),
        )
        oracle = homogeneous_ode(p, u0, 20.0, t_eval=np.array([20.0]))
        worst = max(worst, abs(record.column("sup_u")[-1] - oracle.y[-1]))
    ok = worst <= 1e-8
    report(9, ok, (
        f"homogeneous runs track the scalar law to {worst:.2e} at T=20 "
        "(<= 1e-8) over 10 random draws"
    ))
    budget(9, started, 60.0)
