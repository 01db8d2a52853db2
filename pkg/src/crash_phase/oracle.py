"""Brute-force time-stepping simulator used as ground truth for the solver.

Both vehicles are advanced on the grid ``t_k = k * dt``. Within a step the
motion is integrated exactly for piecewise-constant acceleration: the step is
split at brake onset and at the instant a vehicle reaches zero speed. The
only approximation is therefore where contact is located between two grid
points (linear interpolation of the gap).

Nothing here calls the closed-form trajectory laws; stop times and the phase
label come from the simulated state.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numba
import numpy as np

from .errors import ConfigError, OracleHorizonError
from .kinematics import BrakingScenario, TrajectorySample, stopping_times
from .solver import CollisionVerdict, Phase


@dataclass(frozen=True)
class OracleConfig:
    """Simulator settings.

    ``t_max`` defaults to ``max(60, t_se + 5)``. ``sample_dt`` sets the
    spacing of recorded trajectory samples. ``detect`` can be turned off to
    run the vehicles to rest without stopping at contact.
    """

    dt: float = 1e-4
    t_max: float | None = None
    sample_dt: float = 0.01
    detect: bool = True

    def __post_init__(self):
        if not (math.isfinite(self.dt) and self.dt > 0):
            raise ConfigError(f"dt must be positive, got {self.dt}")
        if self.t_max is not None and not self.t_max > self.dt:
            raise ConfigError("t_max must exceed dt")
        if not self.sample_dt > 0:
            raise ConfigError("sample_dt must be positive")


@dataclass(frozen=True)
class OracleResult:
    verdict: CollisionVerdict
    samples: list[TrajectorySample]
    min_gap: float
    lead_stop_time: float | None
    ego_stop_time: float | None


@numba.njit(cache=True)
def _advance(x, v, a, onset, t0, t1):
    """Exact motion over [t0, t1]: cruise until ``onset``, then brake at ``a`` to rest.

    Returns (x, v, stop_time) with stop_time = -1 unless the vehicle stops inside.
    """
    stop = -1.0
    if v <= 0.0:
        return x, 0.0, stop
    t = t0
    if t < onset:
        tc = min(t1, onset)
        x += v * (tc - t)
        t = tc
    tau = t1 - t
    if tau > 0.0:
        t_rest = v / -a
        if tau >= t_rest:
            x += v * t_rest + 0.5 * a * t_rest * t_rest
            v = 0.0
            stop = t + t_rest
        else:
            x += v * tau + 0.5 * a * tau * tau
            v += a * tau
    return x, v, stop


@numba.njit(cache=True)
def _run(v_c, t_r, a_l, a_e, d, dt, t_max, every, detect):
    n_max = int(math.ceil(t_max / dt)) + 1
    cap = n_max // every + 3
    out = np.empty((cap, 5))
    n_out = 0

    xl, vl = d, v_c
    xe, ve = 0.0, v_c
    t_sl = -1.0
    t_se = -1.0
    out[0, 0] = 0.0
    out[0, 1] = xl
    out[0, 2] = xe
    out[0, 3] = vl
    out[0, 4] = ve
    n_out = 1
    min_gap = xl - xe
    hit = False
    t_c = -1.0
    moving = True
    k = 0
    while k < n_max:
        t0 = k * dt
        t1 = (k + 1) * dt
        nxl, nvl, sl = _advance(xl, vl, a_l, 0.0, t0, t1)
        nxe, nve, se = _advance(xe, ve, a_e, t_r, t0, t1)
        g0 = xl - xe
        g1 = nxl - nxe
        if detect and g1 <= 0.0:
            t_c = t0 + dt * g0 / (g0 - g1)
            xl, vl, sl_c = _advance(xl, vl, a_l, 0.0, t0, t_c)
            xe, ve, se_c = _advance(xe, ve, a_e, t_r, t0, t_c)
            if sl_c >= 0.0:
                t_sl = sl_c
            if se_c >= 0.0:
                t_se = se_c
            hit = True
            min_gap = min(min_gap, 0.0)
            out[n_out, 0] = t_c
            out[n_out, 1] = xl
            out[n_out, 2] = xe
            out[n_out, 3] = vl
            out[n_out, 4] = ve
            n_out += 1
            break
        xl, vl, xe, ve = nxl, nvl, nxe, nve
        if sl >= 0.0:
            t_sl = sl
        if se >= 0.0:
            t_se = se
        min_gap = min(min_gap, g1)
        k += 1
        moving = vl > 0.0 or ve > 0.0
        if k % every == 0 or not moving:
            out[n_out, 0] = k * dt
            out[n_out, 1] = xl
            out[n_out, 2] = xe
            out[n_out, 3] = vl
            out[n_out, 4] = ve
            n_out += 1
        if not moving:
            break
    return hit, t_c, min_gap, t_sl, t_se, moving, out[:n_out]


def simulate(s: BrakingScenario, cfg: OracleConfig | None = None) -> OracleResult:
    cfg = cfg or OracleConfig()
    t_max = cfg.t_max
    if t_max is None:
        t_max = max(60.0, s.t_r - s.v_c / s.a_e + 5.0)
    every = max(1, int(round(cfg.sample_dt / cfg.dt)))
    hit, t_c, min_gap, t_sl, t_se, moving, out = _run(
        s.v_c, s.t_r, s.a_l, s.a_e, s.d, cfg.dt, t_max, every, cfg.detect)
    if not hit and moving:
        raise OracleHorizonError(f"vehicles still moving at t_max={t_max}")

    samples = [TrajectorySample(*map(float, row)) for row in out]
    t_sl = float(t_sl) if t_sl >= 0 else None
    t_se = float(t_se) if t_se >= 0 else None
    timeline = stopping_times(s)
    if not hit:
        verdict = CollisionVerdict(False, Phase.NONE, timeline)
    else:
        last = samples[-1]
        if t_sl is not None:
            phase = Phase.PHASE3
        elif t_c <= s.t_r:
            phase = Phase.PHASE1
        else:
            phase = Phase.PHASE2
        verdict = CollisionVerdict(True, phase, timeline, float(t_c), last.ego_pos,
                                   max(0.0, last.ego_vel - last.lead_vel))
    return OracleResult(verdict, samples, float(min_gap), t_sl, t_se)
