"""Fleet-wide consistency experiment: exact solver vs. stopping-position screen.

Every ordered (lead, ego) pair of the fleet is crossed with a reaction-time
grid. Experiments are numbered pair-major (lead, then ego, then grid point) and
results are merged in that order, so reports do not depend on parallelism.
"""

from __future__ import annotations

import csv
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Sequence, TextIO

from .errors import ConfigError, DomainError
from .fleet import VehicleProfile
from .kinematics import BrakingScenario
from .oracle import OracleConfig, simulate
from .predictor import TIE_TOL, predicts_collision, stopping_margin
from .solver import analyze

DEFAULT_TR_GRID = (0.0, 0.5, 1.0, 1.5, 2.0, 2.5)
DISAGREEMENT_COLUMNS = ["lead_id", "ego_id", "T_r", "exact_collides", "exact_phase",
                        "exact_t_c", "predicted"]


@dataclass(frozen=True)
class SweepConfig:
    v_c: float = 27.78
    t_r_grid: tuple[float, ...] = DEFAULT_TR_GRID
    d_default: float = 10.0
    t_gap: float = 1.4
    include_self_pairs: bool = False
    oracle_check_fraction: float = 0.0
    oracle_dt: float = 1e-4

    def __post_init__(self):
        object.__setattr__(self, "t_r_grid", tuple(float(t) for t in self.t_r_grid))
        if not self.t_r_grid:
            raise ConfigError("t_r_grid must not be empty")
        if any(not (math.isfinite(t) and t >= 0) for t in self.t_r_grid):
            raise ConfigError("reaction times must be finite and non-negative")
        if not (math.isfinite(self.v_c) and self.v_c > 0):
            raise ConfigError("v_c must be positive")
        if self.d_default < 0 or self.t_gap < 0:
            raise ConfigError("d_default and t_gap must be non-negative")
        if not 0.0 <= self.oracle_check_fraction <= 1.0:
            raise ConfigError("oracle_check_fraction must lie in [0, 1]")
        if not self.oracle_dt > 0:
            raise ConfigError("oracle_dt must be positive")


@dataclass(frozen=True)
class Disagreement:
    lead_id: str
    ego_id: str
    t_r: float
    exact_collides: bool
    exact_phase: int
    exact_t_c: float | None
    predicted: bool
    scenario: dict

    def csv_row(self) -> list:
        return [self.lead_id, self.ego_id, self.t_r, self.exact_collides, self.exact_phase,
                "" if self.exact_t_c is None else self.exact_t_c, self.predicted]


@dataclass
class SweepReport:
    total_experiments: int = 0
    collisions_exact: int = 0
    collisions_predicted: int = 0
    ties_excluded: int = 0
    oracle_checks: int = 0
    oracle_mismatches: int = 0
    disagreements: list[Disagreement] = field(default_factory=list)

    @property
    def agreements(self) -> int:
        return self.total_experiments - self.ties_excluded - len(self.disagreements)

    def merge(self, other: "SweepReport") -> None:
        self.total_experiments += other.total_experiments
        self.collisions_exact += other.collisions_exact
        self.collisions_predicted += other.collisions_predicted
        self.ties_excluded += other.ties_excluded
        self.oracle_checks += other.oracle_checks
        self.oracle_mismatches += other.oracle_mismatches
        self.disagreements.extend(other.disagreements)

    def to_dict(self, cfg: SweepConfig | None = None, fleet_size: int | None = None) -> dict:
        out = {
            "total_experiments": self.total_experiments,
            "agreements": self.agreements,
            "collisions_exact": self.collisions_exact,
            "collisions_predicted": self.collisions_predicted,
            "ties_excluded": self.ties_excluded,
            "oracle_checks": self.oracle_checks,
            "oracle_mismatches": self.oracle_mismatches,
            "disagreement_count": len(self.disagreements),
            "disagreements": [asdict(d) for d in self.disagreements],
        }
        if cfg is not None:
            cfg_dict = asdict(cfg)
            cfg_dict["t_r_grid"] = list(cfg.t_r_grid)
            out["config"] = cfg_dict
        if fleet_size is not None:
            out["fleet_size"] = fleet_size
        return out

    def write_disagreements_csv(self, stream: TextIO) -> None:
        writer = csv.writer(stream, lineterminator="\n")
        writer.writerow(DISAGREEMENT_COLUMNS)
        for d in self.disagreements:
            writer.writerow(d.csv_row())


def _oracle_selected(idx: int, fraction: float) -> bool:
    # exactly floor(N * fraction) experiments spread evenly over the index range
    return math.floor((idx + 1) * fraction) > math.floor(idx * fraction)


def _run_leads(fleet: Sequence[VehicleProfile], cfg: SweepConfig, leads: range) -> SweepReport:
    report = SweepReport()
    n = len(fleet)
    per_lead = n if cfg.include_self_pairs else n - 1
    n_grid = len(cfg.t_r_grid)
    oracle_cfg = OracleConfig(dt=cfg.oracle_dt)
    for i in leads:
        lead = fleet[i]
        pair_idx = i * per_lead
        for j, ego in enumerate(fleet):
            if i == j and not cfg.include_self_pairs:
                continue
            for g, t_r in enumerate(cfg.t_r_grid):
                s = BrakingScenario(cfg.v_c, t_r, lead.a_max, ego.a_max,
                                    d_default=cfg.d_default, t_gap=cfg.t_gap)
                exact = analyze(s)
                predicted = predicts_collision(s)
                report.total_experiments += 1
                report.collisions_exact += exact.collides
                report.collisions_predicted += predicted
                if abs(stopping_margin(s)) <= TIE_TOL:
                    report.ties_excluded += 1
                elif exact.collides != predicted:
                    report.disagreements.append(Disagreement(
                        lead.id, ego.id, t_r, exact.collides, int(exact.phase), exact.t_c,
                        predicted, s.to_dict()))
                idx = pair_idx * n_grid + g
                if cfg.oracle_check_fraction and _oracle_selected(idx, cfg.oracle_check_fraction):
                    report.oracle_checks += 1
                    ref = simulate(s, oracle_cfg).verdict
                    if ref.collides != exact.collides or (
                            exact.collides and abs(ref.t_c - exact.t_c) > 2 * cfg.oracle_dt):
                        report.oracle_mismatches += 1
            pair_idx += 1
    return report


def _chunks(n: int, parts: int) -> list[range]:
    size = math.ceil(n / parts)
    return [range(lo, min(n, lo + size)) for lo in range(0, n, size)]


def default_workers() -> int:
    env = os.environ.get("CRASH_PHASE_THREADS")
    if env:
        return max(1, int(env))
    return 1


def run_sweep(fleet: Sequence[VehicleProfile], cfg: SweepConfig | None = None,
              workers: int | None = None) -> SweepReport:
    """Evaluate every ordered fleet pair over the reaction-time grid.

    ``workers`` > 1 spreads lead vehicles over processes; the merged report is
    identical to a sequential run.
    """
    cfg = cfg or SweepConfig()
    fleet = list(fleet)
    if not fleet:
        raise DomainError("fleet must not be empty")
    workers = workers or default_workers()
    n = len(fleet)
    if workers <= 1 or n < 2:
        return _run_leads(fleet, cfg, range(n))

    chunks = _chunks(n, workers)
    report = SweepReport()
    with ProcessPoolExecutor(max_workers=workers) as pool:
        futures = [pool.submit(_run_leads, fleet, cfg, c) for c in chunks]
        for fut in futures:
            report.merge(fut.result())
    return report
