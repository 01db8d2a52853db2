"""Scenario model and piecewise constant-acceleration laws for the lead/ego pair.

Coordinates: the ego front is at 0 when the lead starts braking (t = 0), the
lead rear starts at ``D``. Decelerations are negative. Every position and
velocity is clamped once the vehicle has stopped, so all laws are total on
``t >= 0``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .errors import DomainError

KMH = 1.0 / 3.6


def _check_finite(**values: float) -> None:
    for name, value in values.items():
        if not math.isfinite(value):
            raise DomainError(f"{name} must be finite, got {value!r}")


def safe_distance(v: float, d_default: float, t_gap: float) -> float:
    """Initial spacing kept by the cruise controller: ``d_default + t_gap * v``."""
    _check_finite(v=v, d_default=d_default, t_gap=t_gap)
    if v < 0 or d_default < 0 or t_gap < 0:
        raise DomainError("safe_distance inputs must be non-negative")
    return d_default + t_gap * v


@dataclass(frozen=True)
class BrakingScenario:
    """One hard-brake episode.

    Args:
        v_c: shared cruise speed at t = 0, m/s.
        t_r: ego driver reaction time, s.
        a_l: lead deceleration, m/s^2 (negative).
        a_e: ego deceleration, m/s^2 (negative).
        d_default: default spacing, m.
        t_gap: time-gap constant, s.
        d_override: explicit initial gap in m; replaces the safe-distance
            formula when given.
    """

    v_c: float
    t_r: float
    a_l: float
    a_e: float
    d_default: float = 10.0
    t_gap: float = 1.4
    d_override: float | None = None
    d: float = field(init=False)

    def __post_init__(self):
        _check_finite(v_c=self.v_c, t_r=self.t_r, a_l=self.a_l, a_e=self.a_e,
                      d_default=self.d_default, t_gap=self.t_gap)
        if self.v_c <= 0:
            raise DomainError(f"v_c must be positive, got {self.v_c}")
        if self.t_r < 0:
            raise DomainError(f"t_r must be non-negative, got {self.t_r}")
        if self.a_l >= 0 or self.a_e >= 0:
            raise DomainError("decelerations a_l and a_e must be negative")
        if self.d_default < 0 or self.t_gap < 0:
            raise DomainError("d_default and t_gap must be non-negative")
        if self.d_override is None:
            d = safe_distance(self.v_c, self.d_default, self.t_gap)
        else:
            _check_finite(d_override=self.d_override)
            if self.d_override <= 0:
                raise DomainError(f"d_override must be positive, got {self.d_override}")
            d = float(self.d_override)
        object.__setattr__(self, "d", d)

    @classmethod
    def from_kmh(cls, v_kmh: float, t_r: float, a_l: float, a_e: float, **kwargs) -> "BrakingScenario":
        return cls(v_kmh * KMH, t_r, a_l, a_e, **kwargs)

    def to_dict(self) -> dict:
        return {
            "v_c": self.v_c,
            "t_r": self.t_r,
            "a_l": self.a_l,
            "a_e": self.a_e,
            "d_default": self.d_default,
            "t_gap": self.t_gap,
            "d": self.d,
            "d_overridden": self.d_override is not None,
        }


@dataclass(frozen=True)
class PhaseTimeline:
    t_r: float
    t_sl: float
    t_se: float
    ego_stops_first: bool

    def to_dict(self) -> dict:
        return {"t_r": self.t_r, "t_sl": self.t_sl, "t_se": self.t_se,
                "ego_stops_first": self.ego_stops_first}


@dataclass(frozen=True)
class TrajectorySample:
    t: float
    lead_pos: float
    ego_pos: float
    lead_vel: float
    ego_vel: float

    @property
    def gap(self) -> float:
        return self.lead_pos - self.ego_pos


def stopping_times(s: BrakingScenario) -> PhaseTimeline:
    t_sl = -s.v_c / s.a_l
    t_se = -s.v_c / s.a_e + s.t_r
    return PhaseTimeline(s.t_r, t_sl, t_se, t_se < t_sl)


def _check_time(t: float) -> None:
    if not t >= 0:
        raise DomainError(f"t must be non-negative, got {t!r}")


def lead_stop_position(s: BrakingScenario) -> float:
    return -s.v_c ** 2 / (2 * s.a_l) + s.d


def ego_stop_position(s: BrakingScenario) -> float:
    return s.v_c * s.t_r - s.v_c ** 2 / (2 * s.a_e)


def lead_position(t: float, s: BrakingScenario) -> float:
    _check_time(t)
    if t >= -s.v_c / s.a_l:
        return lead_stop_position(s)
    return 0.5 * s.a_l * t * t + s.v_c * t + s.d


def ego_position(t: float, s: BrakingScenario) -> float:
    # braking branch uses (t - t_r); the unshifted printed form is discontinuous at t_r
    _check_time(t)
    if t <= s.t_r:
        return s.v_c * t
    if t >= s.t_r - s.v_c / s.a_e:
        return ego_stop_position(s)
    tau = t - s.t_r
    return 0.5 * s.a_e * tau * tau + s.v_c * tau + s.v_c * s.t_r


def lead_velocity(t: float, s: BrakingScenario) -> float:
    _check_time(t)
    if t >= -s.v_c / s.a_l:
        return 0.0
    return max(0.0, s.v_c + s.a_l * t)


def ego_velocity(t: float, s: BrakingScenario) -> float:
    _check_time(t)
    if t <= s.t_r:
        return s.v_c
    if t >= s.t_r - s.v_c / s.a_e:
        return 0.0
    return max(0.0, s.v_c + s.a_e * (t - s.t_r))


def gap(t: float, s: BrakingScenario) -> float:
    return lead_position(t, s) - ego_position(t, s)


def sample(t: float, s: BrakingScenario) -> TrajectorySample:
    return TrajectorySample(t, lead_position(t, s), ego_position(t, s),
                            lead_velocity(t, s), ego_velocity(t, s))
