"""Weighted usefulness score, ranking, and community core."""

from __future__ import annotations

from dataclasses import dataclass, fields
import math
from typing import Mapping

from .errors import ValidationError
from .metrics import CharacteristicVector, check_simplex


@dataclass(frozen=True)
class WeightVector:
    c_activeness: float = 0.2
    c_attractiveness: float = 0.2
    c_creativeness: float = 0.2
    c_reactiveness: float = 0.2
    c_loyalty: float = 0.2

    def __post_init__(self):
        check_simplex(self.as_tuple(), "usefulness weights")

    def as_tuple(self) -> tuple[float, ...]:
        return tuple(getattr(self, f.name) for f in fields(self))

    def to_dict(self) -> dict[str, float]:
        return {f.name: getattr(self, f.name) for f in fields(self)}


# Named presets for common development scenarios. Configs may add more.
WEIGHT_PROFILES = {
    "balanced": WeightVector(),
    "growth": WeightVector(0.4, 0.3, 0.2, 0.05, 0.05),
    "quality": WeightVector(0.1, 0.2, 0.5, 0.1, 0.1),
    "moderation": WeightVector(0.2, 0.1, 0.2, 0.2, 0.3),
}


@dataclass(frozen=True)
class RankedUser:
    login: str
    usefulness: float
    rank: int
    class_name: str


def compute_usefulness(cv: CharacteristicVector, w: WeightVector) -> float:
    if not isinstance(w, WeightVector):
        raise ValidationError(f"expected WeightVector, got {type(w).__name__}")
    terms = (
        w.c_activeness * cv.activeness_total,
        w.c_attractiveness * cv.attractiveness,
        w.c_creativeness * cv.creativeness,
        w.c_reactiveness * cv.reactiveness,
        w.c_loyalty * cv.loyalty,
    )
    # Weights may miss 1 by the simplex tolerance; keep the score in range.
    return min(1.0, max(0.0, math.fsum(terms)))


def rank_users(scores: Mapping[str, float], assignments: Mapping) -> list[RankedUser]:
    """Order users by usefulness, highest first; equal scores by login."""
    if set(scores) != set(assignments):
        only_scores = sorted(set(scores) - set(assignments))
        only_assign = sorted(set(assignments) - set(scores))
        raise ValidationError(f"login mismatch: scores only {only_scores}, assignments only {only_assign}")
    order = sorted(scores, key=lambda login: (-scores[login], login))
    return [
        RankedUser(login, scores[login], rank, _class_of(assignments[login]))
        for rank, login in enumerate(order, start=1)
    ]


def _class_of(assignment) -> str:
    return assignment if isinstance(assignment, str) else assignment.class_name


def extract_core(ranked: list[RankedUser], threshold: float) -> list[RankedUser]:
    if not 0.0 <= threshold <= 1.0:
        raise ValidationError(f"core threshold {threshold!r} outside [0, 1]")
    core = []
    for user in ranked:
        if user.usefulness < threshold:
            break
        core.append(user)
    return core
