"""Vehicle braking profiles: CSV ingestion and synthetic fleets.

CSV format (UTF-8, LF or CRLF, no quoting)::

    make,model,stopping_distance_m
    Foo,Bar,36.2

Stopping distances are pure braking distances from the reference speed
(100 km/h unless told otherwise).
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from typing import Iterable, TextIO

import numpy as np

from .errors import DomainError, FleetParseError

REFERENCE_SPEED = 27.78  # 100 km/h, m/s
HEADER = ["make", "model", "stopping_distance_m"]


@dataclass(frozen=True)
class VehicleProfile:
    id: str
    a_max: float

    def __post_init__(self):
        if not (math.isfinite(self.a_max) and self.a_max < 0):
            raise DomainError(f"a_max must be negative and finite, got {self.a_max}")


def decel_from_stopping_distance(d_stop: float, v0: float = REFERENCE_SPEED) -> float:
    if not (math.isfinite(d_stop) and math.isfinite(v0)) or d_stop <= 0 or v0 <= 0:
        raise DomainError("stopping distance and reference speed must be positive")
    return -v0 * v0 / (2.0 * d_stop)


def stopping_distance_from_decel(a: float, v0: float = REFERENCE_SPEED) -> float:
    if not (math.isfinite(a) and a < 0) or v0 <= 0:
        raise DomainError("deceleration must be negative and reference speed positive")
    return -v0 * v0 / (2.0 * a)


def parse_fleet_csv(stream: TextIO | Iterable[str], v0: float = REFERENCE_SPEED) -> list[VehicleProfile]:
    reader = csv.reader(stream, quoting=csv.QUOTE_NONE)
    header = next(reader, None)
    if header is None or [h.strip() for h in header] != HEADER:
        raise FleetParseError(f"expected header {','.join(HEADER)!r}, got {header!r}")
    profiles = []
    for row_no, row in enumerate(reader, start=1):
        if not row or all(not cell.strip() for cell in row):
            continue
        if len(row) != 3:
            raise FleetParseError(f"expected 3 fields, got {len(row)}", row_no)
        make, model, raw = (cell.strip() for cell in row)
        try:
            dist = float(raw)
        except ValueError:
            raise FleetParseError(f"non-numeric stopping distance {raw!r}", row_no) from None
        if not (math.isfinite(dist) and dist > 0):
            raise FleetParseError(f"stopping distance must be positive, got {raw!r}", row_no)
        profiles.append(VehicleProfile(f"{make} {model}".strip(),
                                       decel_from_stopping_distance(dist, v0)))
    return profiles


def write_fleet_csv(profiles: Iterable[VehicleProfile], stream: TextIO, v0: float = REFERENCE_SPEED) -> None:
    """Write profiles in the ingestion format; ids split into make/model at the first space."""
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(HEADER)
    for p in profiles:
        make, _, model = p.id.partition(" ")
        writer.writerow([make, model, repr(stopping_distance_from_decel(p.a_max, v0))])


def generate_synthetic_fleet(n: int, a_min: float, a_max: float, seed: int) -> list[VehicleProfile]:
    """``n`` profiles with decelerations uniform on ``[a_min, a_max]``.

    The distribution is uniform because only the range of real fleets is
    known. ``a_min == a_max`` is accepted and yields a constant fleet.
    """
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    if not (math.isfinite(a_min) and math.isfinite(a_max)) or not a_min <= a_max < 0:
        raise DomainError(f"need a_min <= a_max < 0, got [{a_min}, {a_max}]")
    rng = np.random.default_rng(seed)
    values = rng.uniform(a_min, a_max, size=n)
    # a + (b - a) * u can round just outside [a, b]
    values = np.clip(values, a_min, a_max)
    width = max(4, len(str(n)))
    return [VehicleProfile(f"synthetic-{i + 1:0{width}d}", float(a)) for i, a in enumerate(values)]
