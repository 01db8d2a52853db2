import random

import pytest
from hypothesis import given, strategies as st

from crash_phase import kinematics as kin
from crash_phase.kinematics import BrakingScenario
from crash_phase.predictor import is_tie, predicts_collision, stopping_margin
from crash_phase.solver import Phase, analyze

scenarios = st.builds(
    BrakingScenario,
    v_c=st.floats(10, 40),
    t_r=st.floats(0, 3),
    a_l=st.floats(-12, -2),
    a_e=st.floats(-12, -2),
)


def test_fig2a_is_missed(fig2a):
    assert kin.ego_stop_position(fig2a) == pytest.approx(152.17, abs=0.01)
    assert kin.lead_stop_position(fig2a) == pytest.approx(156.66, abs=0.01)
    assert not predicts_collision(fig2a)
    assert analyze(fig2a).phase is Phase.PHASE2


def test_identical_braking():
    s = BrakingScenario(25, 0, -6, -6)
    assert stopping_margin(s) == pytest.approx(-s.d)
    assert not predicts_collision(s)


def test_pd_endpoints_no_collision():
    s = BrakingScenario(27.78, 1, -7.7, -11.91, d_override=48.9)
    assert kin.ego_stop_position(s) == pytest.approx(60.18, abs=0.01)
    assert kin.lead_stop_position(s) == pytest.approx(99.01, abs=0.01)
    assert not predicts_collision(s)
    assert not analyze(s).collides


def test_strict_inequality_at_tie():
    # ego rest position equal to lead rest position: v_c t_r = D with equal braking
    s = BrakingScenario(20, 1.5, -5, -5, d_override=30)
    assert is_tie(s)
    assert not predicts_collision(s)


def test_no_false_positive_randomized():
    rng = random.Random(7)
    for _ in range(10_000):
        s = BrakingScenario(rng.uniform(10, 40), rng.uniform(0, 3),
                            rng.uniform(-12, -2), rng.uniform(-12, -2))
        if predicts_collision(s) and not is_tie(s):
            assert analyze(s).collides


@given(scenarios)
def test_exact_when_lead_stops_first(s):
    v = analyze(s)
    tl = v.timeline
    if is_tie(s):
        return
    if v.phase is Phase.PHASE3 or (v.phase is Phase.NONE and tl.t_sl < tl.t_se):
        assert predicts_collision(s) == v.collides
