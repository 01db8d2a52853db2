"""Single-inequality collision screen based on hypothetical stopping positions.

The ego collides if it would come to rest beyond the lead's rest position.
This is exact once the lead has stopped first, and can miss phase-2 contacts
where the ego overtakes the lead's path and then stops short of it.
"""

from __future__ import annotations

from .kinematics import BrakingScenario, ego_stop_position, lead_stop_position

TIE_TOL = 1e-9


def stopping_margin(s: BrakingScenario) -> float:
    """Ego rest position minus lead rest position (positive means overlap)."""
    return ego_stop_position(s) - lead_stop_position(s)


def predicts_collision(s: BrakingScenario) -> bool:
    return ego_stop_position(s) > lead_stop_position(s)


def is_tie(s: BrakingScenario, tol: float = TIE_TOL) -> bool:
    return abs(stopping_margin(s)) <= tol
