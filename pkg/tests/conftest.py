import sys

import pytest

from crash_phase.kinematics import BrakingScenario

FIG2_VC_KMH = 96.6


def fig2(a_l: float) -> BrakingScenario:
    return BrakingScenario.from_kmh(FIG2_VC_KMH, 5.0, a_l, -20.0)


@pytest.fixture
def fig2a():
    return fig2(-3.3)


@pytest.fixture
def fig2b():
    return fig2(-4.0)


@pytest.fixture
def fig2c():
    return fig2(-2.0)


@pytest.fixture
def pd_extreme():
    # strongest lead, weakest ego, longest reaction in the sweep grid
    return BrakingScenario(27.78, 2.5, -11.91, -7.7, d_override=48.9)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(mod.RESULTS, key=lambda k: int(k.split()[0][2:])):
        ok, detail = mod.RESULTS[key]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {key}: {detail}")
