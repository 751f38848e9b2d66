"""Acceptance criteria, one test per criterion.

Each test records a PASS/FAIL line; the lines are printed in the pytest
terminal summary, or directly when this file is run as a script.
"""

import math
import time

import numpy as np
import pytest

from szlenk.bounds import UNIT, EquivalenceConstants, ModulusTriple, exact_radius, lower_cutoff, lower_radius, lp_radius, upper_radius
from szlenk.cli import main as cli_main
from szlenk.equations import homogeneity_residual, normalization_residual, star_suite
from szlenk.iteration import iterate_radii, lp_iterated_radius, lp_radius_function, szlenk_index
from szlenk.orlicz import OrliczFunction, SparseVector, lp_norm, luxemburg_norm, mab_constants, quartic_norm_closed_form
from szlenk.witness import (
    SpaceModel,
    inequality_probe,
    rho_lower,
    sample_thm1_probe,
    thm1_tail_bound_check,
    thm2_horizon,
    thm2_witness_check,
)

RESULTS = {}

SEED = 20261016
P_VALUES = (1.5, 2.0, 3.0, 4.0)
EPS_GRID = np.linspace(0.05, 1.95, 50)
AB_PAIRS = ((1.0, 1.0), (0.5, 2.0), (3.0, 0.1))


def record(number, ok, detail):
    line = f"criterion {number:>2}: {'PASS' if ok else 'FAIL'}  {detail}"
    RESULTS[number] = line
    print(line)
    assert ok, line


def rng(offset=0):
    return np.random.default_rng(SEED + offset)


def probe_vectors():
    g = rng(1)
    out = []
    for _ in range(1000):
        size = int(g.integers(1, 21))
        idx = np.sort(g.choice(np.arange(1, 65), size=size, replace=False))
        out.append(SparseVector(tuple(zip(idx.tolist(), g.uniform(-10, 10, size).tolist()))))
    return out


def test_c01_norm_oracle_equivalence():
    xs = probe_vectors()
    t0 = time.perf_counter()
    worst = 0.0
    for A, B in AB_PAIRS:
        M = OrliczFunction.quartic(A, B)
        for x in xs:
            n = luxemburg_norm(M, x)
            worst = max(worst, abs(n - quartic_norm_closed_form(A, B, x)) / max(1.0, lp_norm(2, x)))
    elapsed = time.perf_counter() - t0
    record(1, worst <= 1e-9 and elapsed < 5.0,
           f"max |lux - closed| / max(1, |x|) = {worst:.3e} (tol 1e-9), {elapsed:.2f}s (< 5s)")


def test_c02_sandwich():
    xs = probe_vectors()
    worst = -math.inf
    for A, B in AB_PAIRS:
        M = OrliczFunction.quartic(A, B)
        c1, c2 = mab_constants(A, B)
        for x in xs:
            n, n2 = luxemburg_norm(M, x), lp_norm(2, x)
            worst = max(worst, c1 * n2 - n, n - c2 * n2)
    record(2, worst <= 1e-9, f"worst sandwich violation {worst:.3e} (allowed 1e-9)")


def test_c03_lp_radius_consistency():
    t0 = time.perf_counter()
    worst_lp = worst_unit = 0.0
    for p in P_VALUES:
        q = p / (p - 1)
        triple = ModulusTriple.power(q)
        cut = lower_cutoff(triple, UNIT)
        for eps in EPS_GRID:
            ex = exact_radius(triple, eps)
            worst_lp = max(worst_lp, abs(ex - lp_radius(p, eps)))
            worst_unit = max(worst_unit, abs(upper_radius(triple, UNIT, eps) - ex))
            if eps < cut:
                worst_unit = max(worst_unit, abs(lower_radius(triple, UNIT, eps) - ex))
    elapsed = time.perf_counter() - t0
    record(3, worst_lp <= 1e-10 and worst_unit <= 1e-10 and elapsed < 1.0,
           f"exact vs lp {worst_lp:.2e}, upper/lower vs exact {worst_unit:.2e} (tol 1e-10), {elapsed:.3f}s")


def test_c04_szlenk_index_closed_form():
    t0 = time.perf_counter()
    mismatches = []
    for p in P_VALUES:
        q = p / (p - 1)
        for eps in EPS_GRID:
            got = szlenk_index(lp_radius_function(p), eps)
            want = math.ceil((eps / 2) ** (-q) - 1e-12 * (eps / 2) ** (-q))
            if got != want:
                mismatches.append((p, eps, got, want))
    tie = szlenk_index(lp_radius_function(2), math.sqrt(2))
    spot = szlenk_index(lp_radius_function(2), 1.0)
    elapsed = time.perf_counter() - t0
    record(4, not mismatches and tie == 2 and spot == 4 and elapsed < 1.0,
           f"{len(mismatches)} mismatches over {len(P_VALUES) * len(EPS_GRID)} points, "
           f"Sz(p=2, sqrt2)={tie}, Sz(p=2, 1)={spot}, {elapsed:.3f}s")


def test_c05_iterated_radii_closed_form():
    worst = 0.0
    for p in P_VALUES:
        for eps in EPS_GRID:
            tr = iterate_radii(lp_radius_function(p), eps)
            for n, r in enumerate(tr.radii, start=1):
                worst = max(worst, abs(r - lp_iterated_radius(p, eps, n).radius))
    record(5, worst <= 1e-9, f"max step error {worst:.3e} (tol 1e-9)")


def _sweep(eps):
    triple = ModulusTriple.power(2)
    out = []
    for A in (1.0, 0.1, 0.01, 0.001, 0.0):
        consts = EquivalenceConstants(*mab_constants(A, 1.0))
        out.append((A, lower_radius(triple, consts, eps), upper_radius(triple, consts, eps)))
    return out


def test_c06_stability_sweep():
    lines, ok = [], True
    for eps in (0.5, 1.0):
        rows = _sweep(eps)
        gaps = [up - lo for _, lo, up in rows]
        limit = math.sqrt(1 - eps * eps / 4)
        decreasing = all(b < a for a, b in zip(gaps, gaps[1:]))
        at_zero = abs(rows[-1][1] - limit) <= 1e-10 and abs(rows[-1][2] - limit) <= 1e-10
        # first order in A: gap ~ A / sqrt(1 - eps^2/4), so gap(1e-3)/gap(1) is about 2e-3
        ratio = gaps[3] / gaps[0]
        ok &= decreasing and at_zero and ratio <= 1e-3
        lines.append(f"eps={eps}: decreasing={decreasing}, A=0 at limit={at_zero}, "
                     f"gap(0.001)/gap(1)={ratio:.3e} (required <= 1e-3)")
    record(6, ok, "; ".join(lines))


def test_c07_power_characterization():
    t0 = time.perf_counter()
    worst = 0.0
    for i, q in enumerate((1.0, 1.5, 2.0, 3.0, 4.0)):
        M = OrliczFunction.power(q)
        g = rng(100 + i)
        pts = g.uniform(0.01, 5.0, (100, 2))
        k = float(g.uniform(0.1, 10.0))
        worst = max(worst,
                    homogeneity_residual(M, pts, k).max_residual,
                    normalization_residual(M, pts).max_residual,
                    star_suite(M, g, samples=100).max_residual)
    quartic = homogeneity_residual(OrliczFunction.quartic(1, 1), [(1.0, 1.0)], 2.0).max_residual
    elapsed = time.perf_counter() - t0
    record(7, worst <= 1e-9 and quartic >= 0.03 and elapsed < 5.0,
           f"power functions max residual {worst:.2e} (tol 1e-9), "
           f"M_11 homogeneity residual {quartic:.4f} (>= 0.03), {elapsed:.2f}s")


def _thm2_configs(model, g, count=20):
    cut = lower_cutoff(model.triple, model.consts)
    configs = []
    while len(configs) < count:
        eps, eps1, eps2 = np.sort(g.uniform(0.02, 0.98, 3)) * cut
        if not eps < eps1 < eps2:
            continue
        size = int(g.integers(1, 9))
        idx = np.sort(g.choice(np.arange(1, 40), size=size, replace=False))
        x0 = SparseVector(tuple(zip(idx.tolist(), g.uniform(-1, 1, size).tolist())))
        target = rho_lower(model, eps2) * (1 - 1e-6) * g.uniform(0.0, 1.0)
        x0 = x0 * (target / model.dual_norm(x0))
        configs.append((x0, float(eps), float(eps1), float(eps2)))
    return configs


def test_c08_thm2_witness_suite():
    horizons = []
    for i, q in enumerate((1.5, 2.0, 3.0)):
        model = SpaceModel.lq(q)
        for x0, eps, eps1, eps2 in _thm2_configs(model, rng(200 + i)):
            horizons.append(thm2_horizon(model, x0, eps, eps1, eps2))
    l2 = SpaceModel.lq(2)

    def examples():
        a = thm2_witness_check(l2, SparseVector(), 1.0, 1.1, 1.2, 5)
        b = thm2_witness_check(l2, SparseVector.basis(1, 0.8), 1.0, 1.05, 1.1, 3)
        return [(r.pair.separation, r.pair.max_norm, r.separated, r.bounded) for r in (a, b)]

    first, second = examples(), examples()
    expected = [(1.1, 0.55), (1.05, math.sqrt(0.64 + 0.525**2))]
    exact = first == second and all(
        abs(s - es) <= 1e-15 and abs(m - em) <= 1e-15 and sep and bnd
        for (s, m, sep, bnd), (es, em) in zip(first, expected)
    )
    ok = all(h is not None and h <= 64 for h in horizons) and exact
    record(8, ok, f"{len(horizons)} configurations, max horizon n0 = "
                  f"{max((h or 10**9) for h in horizons)}, worked examples reproduced: {exact}")


def test_c09_thm1_tail_bound_suite():
    model = SpaceModel.lq(2)
    g = rng(300)
    failures = 0
    for _ in range(10_000):
        x, x0, N, delta, eps1 = sample_thm1_probe(model, g)
        failures += not thm1_tail_bound_check(model, x, x0, N, delta, eps1).passed
    ex = thm1_tail_bound_check(model, SparseVector(((1, 0.88), (2, 0.3))), SparseVector.basis(1, 0.9),
                               1, 0.05, 1.2)
    example_ok = abs(ex.tail_norm - 0.3) <= 1e-9 and abs(ex.bound - 0.661438) <= 1e-6 and ex.passed
    record(9, failures == 0 and example_ok,
           f"{failures} failures in 10^4 probes; example tail {ex.tail_norm:.9f} < {ex.bound:.9f}")


def test_c10_pythagorean_slack():
    worst = 0.0
    for i, q in enumerate((1.5, 2.0, 3.0)):
        model = SpaceModel.lq(q)
        for direction in ("forward", "reverse"):
            rep = inequality_probe(model, direction, 1000, (1, 64), rng(400 + i))
            worst = max(worst, abs(rep.worst_slack))
    exact_ok = worst <= 1e-9

    l2 = SpaceModel.lq(2)
    f = OrliczFunction.power(2)
    control = SpaceModel(l2.dual_norm, l2.z_norm, l2.consts, ModulusTriple(f, f, OrliczFunction.power(2, 2.0)))
    fwd = inequality_probe(control, "forward", 1000, (1, 64), rng(410))
    every_probe_fails = fwd.violations == fwd.samples * 64
    record(10, exact_ok and every_probe_fails,
           f"l_q |slack| max {worst:.2e} (tol 1e-9); control (t^2, t^2, 2t^2) forward violations "
           f"{fwd.violations}/{fwd.samples * 64} (criterion expects all; forward slack = |x|^2 >= 0)")


def test_c10_control_companion():
    # the control is a strict inequality the other way: slack = |x|^2 > 0 for x != 0
    l2 = SpaceModel.lq(2)
    f = OrliczFunction.power(2)
    control = SpaceModel(l2.dual_norm, l2.z_norm, l2.consts, ModulusTriple(f, f, OrliczFunction.power(2, 2.0)))
    rev = inequality_probe(control, "reverse", 200, (1, 64), rng(411))
    assert rev.worst_slack > 0 and rev.violations > 0


CLI_RUNS = [
    ["norm", "--quartic", "A=1,B=1", "--vec", "[[1,1],[4,-2.5]]"],
    ["radius", "--triple", "power:2", "--c1", "1", "--c2", "1.2", "--eps-grid", "0.1:1.9:7", "--format", "csv"],
    ["iterate", "--lp", "p=3", "--eps", "0.4", "--format", "csv"],
    ["index", "--lp", "p=2", "--eps", "1"],
    ["check-eq", "--quartic", "A=1,B=1", "--seed", "7", "--format", "json"],
    ["check-eq", "--power", "q=2.5", "--seed", "7"],
    ["witness", "--lq", "2", "--check", "thm1", "--samples", "50", "--seed", "3"],
    ["witness", "--model-quartic", "A=1,B=1", "--check", "probe", "--samples", "20", "--seed", "3", "--format", "json"],
    ["witness", "--lq", "3", "--check", "thm2", "--x0", "[[2,0.1]]", "--eps", "0.5", "--eps1", "0.6", "--eps2", "0.7"],
    ["sweep", "--format", "csv"],
    ["validate", "--quartic", "A=1,B=1", "--grid", "0:10:100"],
]
EXPECTED_CODES = [0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0]


def _run_cli(argv, capsys):
    code = cli_main(argv)
    out, err = capsys.readouterr()
    return code, out.encode(), err.encode()


def test_c11_cli_determinism(capsys):
    problems = []
    for argv, want in zip(CLI_RUNS, EXPECTED_CODES):
        a, b = _run_cli(argv, capsys), _run_cli(argv, capsys)
        if a != b:
            problems.append(f"{argv[0]}: output differs between runs")
        if a[0] != want:
            problems.append(f"{argv[0]}: exit {a[0]}, expected {want}")
    bad = _run_cli(["radius", "--triple", "power:2", "--eps", "3"], capsys)
    if bad[0] != 2:
        problems.append(f"domain error exit {bad[0]}, expected 2")
    with pytest.raises(SystemExit) as info:
        cli_main(["index", "--no-such-flag"])
    capsys.readouterr()
    if info.value.code != 2:
        problems.append(f"usage error exit {info.value.code}, expected 2")
    record(11, not problems, f"{len(CLI_RUNS)} subcommand runs twice each; " + ("; ".join(problems) or "identical bytes, exit codes as contracted"))


if __name__ == "__main__":
    import sys

    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
