"""Exact three-phase collision analysis.

Phase 1 is the reaction window ``[0, t_r]`` (lead braking, ego cruising),
phase 2 is ``[t_r, min(t_sl, t_se)]`` (both braking) and phase 3 starts when
the first vehicle stops. Each phase reduces to a polynomial of degree <= 2 in t.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from . import kinematics as kin
from .kinematics import BrakingScenario, PhaseTimeline

TIME_TOL = 1e-9
DISC_TOL = 1e-12


class Phase(enum.IntEnum):
    NONE = 0
    PHASE1 = 1
    PHASE2 = 2
    PHASE3 = 3


@dataclass(frozen=True)
class CollisionVerdict:
    collides: bool
    phase: Phase
    timeline: PhaseTimeline
    t_c: float | None = None
    d_c: float | None = None
    relative_impact_speed: float | None = None

    def to_dict(self) -> dict:
        return {
            "collides": self.collides,
            "phase": int(self.phase),
            "phase_name": self.phase.name,
            "t_c": self.t_c,
            "d_c": self.d_c,
            "relative_impact_speed": self.relative_impact_speed,
            "timeline": self.timeline.to_dict(),
        }


def solve_quadratic(a: float, b: float, c: float) -> list[float]:
    """Real roots of ``a t^2 + b t + c = 0`` in ascending order.

    Uses the cancellation-free form (larger-magnitude root first, the other
    from the product of roots). A vanishing leading coefficient falls back to
    the linear equation. A slightly negative discriminant, within DISC_TOL
    relative to the magnitude of its terms, counts as a double root (grazing
    contact).
    """
    if a == 0.0:
        if b == 0.0:
            return []
        return [-c / b]
    disc = b * b - 4.0 * a * c
    if disc < 0.0:
        if disc < -DISC_TOL * (b * b + abs(4.0 * a * c)):
            return []
        disc = 0.0
    sq = math.sqrt(disc)
    q = -0.5 * (b + math.copysign(sq, b))
    if q == 0.0:
        # b == 0 and c == 0
        return [0.0, 0.0]
    roots = sorted((q / a, c / q))
    return roots


def _first_in(roots: list[float], lo: float, hi: float) -> float | None:
    hits = [r for r in roots if lo - TIME_TOL <= r <= hi + TIME_TOL]
    return min(hits) if hits else None


def phase1_collision(s: BrakingScenario, *, require_lead_moving: bool = False) -> tuple[float, float] | None:
    """Contact during the reaction window, as ``(t_c, d_c)``.

    The cruising ego meets the braking lead's parabola at ``sqrt(-2 D / a_l)``;
    this is a hit iff that instant is within ``t_r``, equivalently
    ``a_l <= -2 D / t_r^2``. The parabola is only the lead's path until it
    stops; with ``require_lead_moving`` a meeting after ``t_sl`` is rejected.
    """
    t_c = math.sqrt(-2.0 * s.d / s.a_l)
    if t_c > s.t_r + TIME_TOL:
        return None
    if require_lead_moving and t_c > -s.v_c / s.a_l + TIME_TOL:
        return None
    return t_c, s.v_c * t_c


def phase2_collision(s: BrakingScenario, tl: PhaseTimeline | None = None) -> float | None:
    """Earliest contact with both vehicles braking, or None."""
    tl = tl or kin.stopping_times(s)
    hi = min(tl.t_sl, tl.t_se)
    if hi < s.t_r - TIME_TOL:
        return None
    roots = solve_quadratic(s.a_l - s.a_e,
                            2.0 * s.a_e * s.t_r,
                            2.0 * s.d - s.a_e * s.t_r ** 2)
    return _first_in(roots, s.t_r, hi)


def phase3_constant(s: BrakingScenario, *, printed: bool = False) -> float:
    """Constant term of the stopped-lead intersection quadratic.

    Equating the braking ego with the lead's rest position gives
    ``a_e T_r^2 + v_c^2 / a_l - 2 D``. ``printed=True`` returns the variant
    with ``v_c^2 / a_e``, kept only to demonstrate that it disagrees with
    the simulator.
    """
    a = s.a_e if printed else s.a_l
    return s.a_e * s.t_r ** 2 + s.v_c ** 2 / a - 2.0 * s.d


def phase3_collision(s: BrakingScenario, tl: PhaseTimeline | None = None, *, printed: bool = False) -> float | None:
    """Contact between the still-braking ego and the stopped lead, or None."""
    tl = tl or kin.stopping_times(s)
    if tl.t_se <= tl.t_sl:
        return None
    roots = solve_quadratic(s.a_e,
                            2.0 * (s.v_c - s.a_e * s.t_r),
                            phase3_constant(s, printed=printed))
    return _first_in(roots, max(s.t_r, tl.t_sl), tl.t_se)


def reaction_window_stopped_lead(s: BrakingScenario, tl: PhaseTimeline | None = None) -> float | None:
    """Contact on ``[t_sl, t_r]`` when the lead stops before the ego reacts."""
    tl = tl or kin.stopping_times(s)
    if tl.t_sl >= s.t_r:
        return None
    t_c = kin.lead_stop_position(s) / s.v_c
    if tl.t_sl - TIME_TOL <= t_c <= s.t_r + TIME_TOL:
        return t_c
    return None


def analyze(s: BrakingScenario) -> CollisionVerdict:
    tl = kin.stopping_times(s)
    phase = Phase.NONE
    t_c = None

    hit1 = phase1_collision(s, require_lead_moving=True)
    if hit1 is not None:
        phase, t_c = Phase.PHASE1, hit1[0]
    if t_c is None:
        t_c = phase2_collision(s, tl)
        if t_c is not None:
            phase = Phase.PHASE2
    if t_c is None:
        t_c = reaction_window_stopped_lead(s, tl)
        if t_c is None:
            t_c = phase3_collision(s, tl)
        if t_c is not None:
            phase = Phase.PHASE3

    if t_c is None:
        return CollisionVerdict(False, Phase.NONE, tl)
    dv = kin.ego_velocity(t_c, s) - kin.lead_velocity(t_c, s)
    return CollisionVerdict(True, phase, tl, t_c, kin.ego_position(t_c, s), max(0.0, dv))
