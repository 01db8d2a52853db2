"""Exit criteria, one test per criterion. Results are echoed in the terminal summary."""

import math
import time

import numpy as np
import pytest

from crash_phase import kinematics as kin
from crash_phase.fleet import generate_synthetic_fleet
from crash_phase.kinematics import BrakingScenario
from crash_phase.oracle import OracleConfig, simulate
from crash_phase.predictor import is_tie, predicts_collision
from crash_phase.solver import Phase, analyze, phase1_collision, phase3_collision
from crash_phase.sweep import SweepConfig, run_sweep

RESULTS: dict[str, tuple[bool, str]] = {}


def fmt(x):
    return "none" if x is None else f"{x:.4f}"


def record(key, ok, detail):
    RESULTS[key] = (bool(ok), detail)
    assert ok, detail


def fig2(a_l):
    return BrakingScenario.from_kmh(96.6, 5.0, a_l, -20.0, d_default=10, t_gap=1.4)


def random_scenarios(n, seed):
    rng = np.random.default_rng(seed)
    cols = zip(rng.uniform(10, 40, n), rng.uniform(0, 3, n),
               rng.uniform(-12, -2, n), rng.uniform(-12, -2, n))
    return [BrakingScenario(float(v), float(tr), float(al), float(ae)) for v, tr, al, ae in cols]


def test_ac01_safe_distance():
    d = kin.safe_distance(27.78, 10, 1.4)
    record("AC1 safe distance", abs(d - 48.89) <= 0.01, f"D={d:.4f} m (target 48.89 +/- 0.01)")


def test_ac02_phase1_threshold():
    base = dict(v_c=27.78, a_l=-11.91, a_e=-7.7, d_override=48.9)
    t_star = math.sqrt(-2 * 48.9 / -11.91)
    ok = abs(t_star - 2.866) <= 5e-4 and abs(t_star - 2.9) <= 0.05
    for t_r in (0.5, 1.0, 2.5, 2.86, t_star - 1e-6, t_star, t_star + 1e-6, 2.9, 3.5, 5.0):
        fired = phase1_collision(BrakingScenario(t_r=t_r, **base)) is not None
        ok = ok and fired == (t_r >= t_star)
    record("AC2 phase-1 threshold", ok, f"sqrt(-2D/a_l)={t_star:.4f} s; fires iff T_r >= it")


def test_ac03_fig2a_exception():
    s = fig2(-3.3)
    v = analyze(s)
    ref = simulate(s, OracleConfig(dt=1e-4)).verdict
    ok = (v.collides and v.phase is Phase.PHASE2 and abs(v.t_c - 5.52) <= 0.01
          and ref.collides and abs(ref.t_c - 5.52) <= 0.01 and not predicts_collision(s))
    record("AC3 Fig.2(a) exception", ok,
           f"phase={v.phase.name} t_c={fmt(v.t_c)} oracle={fmt(ref.t_c)} predictor={predicts_collision(s)}")


def test_ac04_fig2b_phase1():
    s = fig2(-4.0)
    v = analyze(s)
    ref = simulate(s, OracleConfig(dt=1e-4)).verdict
    bound = -2 * s.d / s.t_r ** 2
    ok = (v.phase is Phase.PHASE1 and abs(v.t_c - 4.88) <= 0.01 and ref.phase is Phase.PHASE1
          and abs(ref.t_c - 4.88) <= 0.01 and s.a_l <= bound and abs(bound + 3.805) <= 5e-4)
    record("AC4 Fig.2(b) phase 1", ok,
           f"t_c={fmt(v.t_c)} oracle={fmt(ref.t_c)}; a_l=-4 <= {bound:.4f}")


def test_ac05_fig2c_no_collision():
    s = fig2(-2.0)
    exact, pred, ref = analyze(s).collides, predicts_collision(s), simulate(s).verdict.collides
    record("AC5 Fig.2(c) no collision", not (exact or pred or ref),
           f"analyze={exact} predictor={pred} oracle={ref}")


def test_ac06_sweep_consistency():
    fleet = generate_synthetic_fleet(50, -11.91, -7.7, seed=42)
    cfg = SweepConfig(v_c=27.78, t_r_grid=(0, 0.5, 1, 1.5, 2, 2.5), d_default=10, t_gap=1.4)
    start = time.perf_counter()
    report = run_sweep(fleet, cfg, workers=1)
    elapsed = time.perf_counter() - start
    ok = report.total_experiments == 14_700 and not report.disagreements and elapsed < 5.0
    record("AC6 sweep consistency", ok,
           f"{report.total_experiments} experiments, {len(report.disagreements)} disagreements, "
           f"{report.ties_excluded} ties, {elapsed:.2f} s")


def test_ac07_oracle_equivalence():
    dt = 1e-4
    cfg = OracleConfig(dt=dt)
    start = time.perf_counter()
    bool_fail = 0
    worst = 0.0
    for s in random_scenarios(1000, seed=2024):
        exact = analyze(s)
        ref = simulate(s, cfg).verdict
        if exact.collides != ref.collides:
            bool_fail += 1
        elif exact.collides:
            worst = max(worst, abs(exact.t_c - ref.t_c))
    elapsed = time.perf_counter() - start
    ok = bool_fail == 0 and worst <= 2 * dt and elapsed < 120
    record("AC7 oracle equivalence", ok,
           f"{bool_fail} boolean mismatches, max |dt_c|={worst:.2e} s, {elapsed:.1f} s")


def test_ac08_predictor_one_sided():
    false_pos = ties = 0
    for s in random_scenarios(10_000, seed=8):
        if is_tie(s):
            ties += 1
            continue
        if predicts_collision(s) and not analyze(s).collides:
            false_pos += 1
    record("AC8 predictor one-sided", false_pos == 0, f"{false_pos} false positives, {ties} ties")


def test_ac09_monotone_safety():
    violations = 0
    for s in random_scenarios(1000, seed=9):
        if analyze(s).collides:
            continue
        harder = BrakingScenario(s.v_c, s.t_r, s.a_l, s.a_e * 1.1)
        quicker = BrakingScenario(s.v_c, max(0.0, s.t_r - 0.1), s.a_l, s.a_e)
        violations += analyze(harder).collides + analyze(quicker).collides
    record("AC9 monotone safety", violations == 0, f"{violations} violations")


def test_ac10_phase3_erratum():
    s = BrakingScenario(27.78, 2.5, -11.91, -7.7, d_override=48.9)
    corrected = phase3_collision(s)
    printed = phase3_collision(s, printed=True)
    ref = simulate(s, OracleConfig(dt=1e-4)).verdict
    ok = (corrected is not None and ref.collides and abs(corrected - 2.956) <= 0.005
          and abs(ref.t_c - corrected) <= 0.005
          and (printed is None or abs(printed - ref.t_c) > 0.005))
    record("AC10 phase-3 constant-term erratum", ok,
           f"corrected={fmt(corrected)} oracle={fmt(ref.t_c)} printed-form={fmt(printed)}")
