"""Collision analysis for a two-vehicle cruise-control hard-brake scenario."""

from .errors import ConfigError, DomainError, FleetParseError, OracleHorizonError
from .fleet import (VehicleProfile, decel_from_stopping_distance, generate_synthetic_fleet,
                    parse_fleet_csv, write_fleet_csv)
from .kinematics import (BrakingScenario, PhaseTimeline, TrajectorySample, ego_position,
                         ego_velocity, gap, lead_position, lead_velocity, safe_distance,
                         stopping_times)
from .oracle import OracleConfig, OracleResult, simulate
from .predictor import predicts_collision
from .solver import (CollisionVerdict, Phase, analyze, phase1_collision, phase2_collision,
                     phase3_collision)
from .sweep import SweepConfig, SweepReport, run_sweep

__version__ = "0.1.0"
