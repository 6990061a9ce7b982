"""Acceptance suite: every criterion asserts at its stated tolerance and
prints one pass/fail line (run with -s to see them on success)."""
import math
import time

import numpy as np

from qcollide import (
    CollisionSpec,
    QubitState,
    TransferMatrix,
    apply_channel,
    build_unitary,
    collision_action,
    continuous_map,
    decoherence_rates,
    generator_analytic,
    generator_numeric,
    gks_positivity,
    homogenization_rates,
    induced_map,
    instantaneous_generator,
    integrate_master_equation,
    is_completely_positive,
    lindblad_from_generator,
    tomography,
)
from qcollide.cli import main

from conftest import random_spec, random_state

LN2 = math.log(2.0)


def _report(name, passed, detail):
    print(f"[acceptance] {name}: {'PASS' if passed else 'FAIL'} ({detail})")
    assert passed, f"{name}: {detail}"


def _spec(family, eta, reservoir, tau=1.0):
    return CollisionSpec(family, eta, tau, QubitState(np.asarray(reservoir, dtype=float)))


def _rates(spec):
    return homogenization_rates(spec) if spec.family == "swap" else decoherence_rates(spec)


def _direction(k):
    golden = math.pi * (3.0 - math.sqrt(5.0))
    z = 1.0 - 2.0 * ((k + 0.5) / 16.0 % 1.0)
    radial = math.sqrt(max(1.0 - z * z, 0.0))
    return np.array([radial * math.cos(golden * k), radial * math.sin(golden * k), z])


def test_criterion_01_oracle_equivalence(rng):
    start = time.perf_counter()
    worst = 0.0
    for _ in range(1000):
        spec = random_spec(rng)
        reconstructed = tomography(collision_action(build_unitary(spec), spec.reservoir))
        worst = max(worst, float(np.abs(reconstructed.m - induced_map(spec).m).max()))
    elapsed = time.perf_counter() - start
    _report(
        "C1 oracle equivalence (1000 random collisions)",
        worst <= 1e-12 and elapsed <= 5.0,
        f"max defect {worst:.3e} tol 1e-12, runtime {elapsed:.2f}s limit 5s",
    )


def test_criterion_02_discrete_continuous_interpolation():
    worst = 0.0
    for i, eta in enumerate(np.linspace(0.1, 1.4, 10)):
        for j, radius in enumerate(np.linspace(0.0, 0.5, 10)):
            spec = _spec("swap", float(eta), radius * _direction(10 * i + j))
            e = induced_map(spec).m
            rates = homogenization_rates(spec)
            power = np.eye(4)
            for n in range(1, 51):
                power = power @ e
                defect = np.abs(power - continuous_map(rates, n * spec.tau).m).max()
                worst = max(worst, float(defect))
    _report(
        "C2 discrete/continuous interpolation (10x10 grid, n<=50)",
        worst <= 1e-10,
        f"max defect {worst:.3e} tol 1e-10",
    )


def test_criterion_03_semigroup_law(rng):
    worst = 0.0
    specs = [
        _spec("swap", 0.7, [0.0, 0.0, 0.5]),
        _spec("swap", 1.2, [0.3, -0.2, 0.1], tau=0.5),
        _spec("swap", 0.3, [0.0, 0.0, 0.0], tau=2.0),
        _spec("cnot-target", 0.9, [0.1, 0.0, -0.3]),
        _spec("cnot-control", 1.1, [0.25, 0.1, 0.0], tau=0.7),
    ]
    for spec in specs:
        rates = _rates(spec)
        for t, s in rng.uniform(0.0, 10.0 * spec.tau, size=(1000, 2)):
            et = continuous_map(rates, float(t)).m
            es = continuous_map(rates, float(s)).m
            ets = continuous_map(rates, float(t + s)).m
            worst = max(worst, float(np.abs(et @ es - ets).max()))
    _report(
        "C3 semigroup law (1000 random (t,s) per parameter point)",
        worst <= 1e-10,
        f"max defect {worst:.3e} tol 1e-10",
    )


def test_criterion_04_complete_positivity():
    worst = math.inf
    points = 0
    times = np.linspace(0.0, 10.0, 9)
    for eta in np.linspace(0.1, 1.4, 5):
        for w in np.linspace(0.0, 0.5, 5):
            rates = homogenization_rates(_spec("swap", float(eta), [0.0, 0.0, float(w)]))
            for t in times:
                worst = min(worst, is_completely_positive(continuous_map(rates, float(t))).min_eigenvalue)
                points += 1
    for family in ("cnot-target", "cnot-control"):
        for eta in np.linspace(0.1, 1.4, 5):
            for w in np.linspace(-0.45, 0.45, 5):
                reservoir = [0.0, 0.0, float(w)] if family == "cnot-target" else [float(w), 0.0, 0.0]
                rates = decoherence_rates(_spec(family, float(eta), reservoir))
                for t in times:
                    worst = min(worst, is_completely_positive(continuous_map(rates, float(t))).min_eigenvalue)
                    points += 1
    _report(
        f"C4 complete positivity ({points} grid points, both families)",
        points >= 400 and worst >= -1e-12,
        f"min Choi eigenvalue {worst:.3e} tol -1e-12",
    )


def test_criterion_05_rate_inequality():
    worst = -math.inf
    for eta in np.linspace(0.0, 1.5, 16):
        for w in np.linspace(0.0, 0.5, 11):
            rates = homogenization_rates(_spec("swap", float(eta), [0.0, 0.0, float(w)]))
            worst = max(worst, rates.gamma1 - 2.0 * rates.gamma2)
    boundary = 0.0
    for eta in np.linspace(0.1, 1.5, 8):
        rates = homogenization_rates(_spec("swap", float(eta), [0.0, 0.0, 0.5]))
        boundary = max(boundary, abs(rates.gamma1 - 2.0 * rates.gamma2))
    _report(
        "C5 rate inequality gamma1 <= 2 gamma2 (+ purity boundary equality)",
        worst <= 1e-12 and boundary <= 1e-12,
        f"max violation {worst:.3e}, boundary residual {boundary:.3e}, tol 1e-12",
    )


def test_criterion_06_worked_example_regression():
    rates = homogenization_rates(_spec("swap", math.pi / 4, [0.0, 0.0, 0.5]))
    form = lindblad_from_generator(generator_analytic(rates))
    defects = {
        "gamma1": abs(rates.gamma1 - LN2),
        "gamma2": abs(rates.gamma2 - LN2 / 2),
        "omega": abs(rates.omega - math.pi / 4),
        "h3": abs(form.h[2] - math.pi / 8),
        "d11": abs(form.d[0, 0] - LN2 / 4),
        "d22": abs(form.d[1, 1] - LN2 / 4),
        "d33": abs(form.d[2, 2]),
        "e12": abs(form.e[0, 1] - LN2 / 4),
        "h1": abs(form.h[0]),
        "h2": abs(form.h[1]),
    }
    worst = max(defects.values())
    _report(
        "C6 worked example regression (eta=pi/4, w=1/2, tau=1)",
        worst <= 1e-12,
        f"max defect {worst:.3e} tol 1e-12 over {sorted(defects)}",
    )


def test_criterion_07_generator_consistency(rng):
    worst_pair = 0.0
    worst_fd = 0.0
    for _ in range(40):
        spec = random_spec(rng, eta_hi=1.4)
        rates = _rates(spec)
        analytic = generator_analytic(rates).m
        numeric = generator_numeric(induced_map(spec), spec.tau).m
        worst_pair = max(worst_pair, float(np.abs(analytic - numeric).max()))
        fd = instantaneous_generator(lambda t: continuous_map(rates, t), spec.tau, 1e-4).m
        worst_fd = max(worst_fd, float(np.abs(analytic - fd).max()),
                       float(np.abs(numeric - fd).max()))
    _report(
        "C7 generator consistency (analytic vs principal log vs finite difference)",
        worst_pair <= 1e-9 and worst_fd <= 1e-6,
        f"analytic/log defect {worst_pair:.3e} tol 1e-9, finite-difference defect {worst_fd:.3e} tol 1e-6",
    )


def test_criterion_08_decay_limit():
    spec = _spec("swap", math.pi / 4, [0.0, 0.0, -0.5])
    rates = homogenization_rates(spec)
    form = lindblad_from_generator(generator_analytic(rates))
    initial = QubitState(np.array([0.0, 0.0, 0.5]))
    gamma1 = rates.gamma1
    final = integrate_master_equation(form, initial, 20.0 / gamma1, spec.tau / 100.0)
    endpoint = float(np.linalg.norm(final.r - [0.0, 0.0, -0.5]))
    worst_rel = 0.0
    for factor in (2.0, 5.0, 10.0, 20.0):
        t = factor / gamma1
        out = integrate_master_equation(form, initial, t, spec.tau / 100.0)
        population = 0.5 + out.r[2]
        expected = math.exp(-gamma1 * t)
        worst_rel = max(worst_rel, abs(population - expected) / expected)
    _report(
        "C8 decay limit (w=-1/2: relaxation to the south pole, e^{-Gamma1 t} populations)",
        abs(rates.gamma1 - 2 * rates.gamma2) <= 1e-12 and endpoint <= 1e-6 and worst_rel <= 1e-6,
        f"endpoint distance {endpoint:.3e} tol 1e-6, worst relative population error {worst_rel:.3e} tol 1e-6",
    )


def test_criterion_09_negative_controls(capsys):
    rc_inject = main(["check", "--interaction", "swap", "--eta", repr(math.pi / 4),
                      "--tau", "1", "--reservoir", "0,0,0.5", "--inject-gamma2-violation"])
    out = capsys.readouterr().out
    failed = {line.split(":")[0] for line in out.strip().split("\n") if "FAIL" in line}
    transpose = is_completely_positive(TransferMatrix(np.diag([1.0, 1.0, -1.0, 1.0])))
    rc_full_swap = main(["rates", "--interaction", "swap", "--eta", repr(math.pi / 2),
                         "--reservoir", "0,0,0.5"])
    capsys.readouterr()
    ok = (
        rc_inject == 1
        and failed == {"complete_positivity", "rate_inequality"}
        and not transpose.completely_positive
        and rc_full_swap == 3
    )
    _report(
        "C9 negative controls (injected gamma2 violation, transpose map, eta=pi/2)",
        ok,
        f"inject rc={rc_inject} failed={sorted(failed)}, transpose min eig "
        f"{transpose.min_eigenvalue:.3e}, full-swap rc={rc_full_swap}",
    )


def test_criterion_10_typo_adjudication(rng):
    worst_target = 0.0
    worst_control = 0.0
    printed_forms_differ = False
    for _ in range(100):
        eta = float(rng.uniform(0.05, 1.5))
        s, c = math.sin(eta), math.cos(eta)

        reservoir = random_state(rng)
        spec = _spec("cnot-target", eta, reservoir.r)
        xi11 = 0.5 - reservoir.r[2]
        block = tomography(collision_action(build_unitary(spec), spec.reservoir)).m[2:4, 2:4]
        svals = np.linalg.svd(block, compute_uv=False)
        derived = math.sqrt(max(1.0 - 4 * s * s * xi11 * (1.0 - xi11), 0.0))
        worst_target = max(worst_target, float(np.abs(svals - derived).max()))
        printed = math.sqrt(1.0 + 4 * s * s * xi11 * (1.0 - xi11))
        if printed - svals.max() > 1e-3:
            printed_forms_differ = True

        reservoir = random_state(rng)
        spec = _spec("cnot-control", eta, reservoir.r)
        sx = 2.0 * reservoir.r[0]
        block = tomography(collision_action(build_unitary(spec), spec.reservoir)).m[1:3, 1:3]
        svals = np.linalg.svd(block, compute_uv=False)
        derived = math.sqrt(c * c + s * s * sx * sx)
        worst_control = max(worst_control, float(np.abs(svals - derived).max()))

    _report(
        "C10 typo adjudication (CNOT contraction factors from oracle singular values)",
        worst_target <= 1e-12 and worst_control <= 1e-12 and printed_forms_differ,
        f"target defect {worst_target:.3e}, control defect {worst_control:.3e}, tol 1e-12; "
        f"printed plus-sign form rejected: {printed_forms_differ}",
    )
