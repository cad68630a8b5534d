"""Normalized behavioral characteristics computed from activity counts.

Activeness sub-scores are a user's share of the community total for each
activity kind. The remaining four characteristics are ratios of the user's
own reactions, received reactions, and reply behavior. A ratio with a zero
denominator is 0.
"""

from __future__ import annotations

from dataclasses import dataclass, fields
import math

from .errors import ValidationError
from .ingest import ActivityCounts, CommunityTotals

ACTIVENESS_KINDS = ("thread", "poll", "post", "vote", "feedback")

CHARACTERISTICS = (
    "activeness_thread",
    "activeness_poll",
    "activeness_post",
    "activeness_vote",
    "activeness_feedback",
    "activeness_total",
    "creativeness",
    "attractiveness",
    "reactiveness",
    "loyalty",
)

# The five characteristics the classification rules and usefulness use.
# "activeness" stands for activeness_total.
TOP_LEVEL = {
    "activeness": "activeness_total",
    "creativeness": "creativeness",
    "attractiveness": "attractiveness",
    "reactiveness": "reactiveness",
    "loyalty": "loyalty",
}

SIMPLEX_TOL = 1e-9


@dataclass(frozen=True)
class CharacteristicVector:
    activeness_thread: float = 0.0
    activeness_poll: float = 0.0
    activeness_post: float = 0.0
    activeness_vote: float = 0.0
    activeness_feedback: float = 0.0
    activeness_total: float = 0.0
    creativeness: float = 0.0
    attractiveness: float = 0.0
    reactiveness: float = 0.0
    loyalty: float = 0.0

    def __post_init__(self):
        for f in fields(self):
            v = getattr(self, f.name)
            if not 0.0 <= v <= 1.0:
                raise ValidationError(f"{f.name} = {v!r} outside [0, 1]")

    def to_dict(self) -> dict[str, float]:
        return {name: getattr(self, name) for name in CHARACTERISTICS}

    def top_level(self) -> dict[str, float]:
        return {short: getattr(self, name) for short, name in TOP_LEVEL.items()}


@dataclass(frozen=True)
class ActivenessWeights:
    w_thread: float = 0.2
    w_poll: float = 0.2
    w_post: float = 0.2
    w_vote: float = 0.2
    w_feedback: float = 0.2

    def __post_init__(self):
        check_simplex(self.as_tuple(), "activeness weights")

    def as_tuple(self) -> tuple[float, ...]:
        return (self.w_thread, self.w_poll, self.w_post, self.w_vote, self.w_feedback)

    def to_dict(self) -> dict[str, float]:
        return {f.name: getattr(self, f.name) for f in fields(self)}


def check_simplex(values, what: str) -> None:
    values = [float(v) for v in values]
    for v in values:
        if not math.isfinite(v) or v < 0:
            raise ValidationError(f"{what}: every weight must be a finite number >= 0, got {v!r}")
    total = math.fsum(values)
    if abs(total - 1.0) > SIMPLEX_TOL:
        raise ValidationError(f"{what}: weights must sum to 1, got {total!r}")


def _ratio(num: int, den: int) -> float:
    return num / den if den else 0.0


def compute_characteristics(
    counts: ActivityCounts,
    totals: CommunityTotals,
    aw: ActivenessWeights = ActivenessWeights(),
) -> CharacteristicVector:
    if totals.member_count < 1:
        raise ValidationError(f"invalid totals: member_count must be >= 1, got {totals.member_count}")
    shares = (
        _ratio(counts.threads_created, totals.total_threads),
        _ratio(counts.polls_created, totals.total_polls),
        _ratio(counts.posts_created, totals.total_posts),
        _ratio(counts.votes_cast, totals.total_votes),
        _ratio(counts.feedback_given, totals.total_feedback),
    )
    # fsum of a simplex combination of values in [0, 1] cannot leave [0, 1]
    # except by the simplex tolerance; clip that residue.
    total = min(1.0, math.fsum(w * s for w, s in zip(aw.as_tuple(), shares)))
    return CharacteristicVector(
        *shares,
        activeness_total=total,
        creativeness=_ratio(counts.positive_feedback_received, counts.total_feedback_received),
        attractiveness=_ratio(counts.distinct_reactors, totals.member_count - 1),
        reactiveness=_ratio(counts.replies_authored, counts.posts_created),
        loyalty=_ratio(counts.positive_feedback_given, counts.feedback_given),
    )


def characteristics_for_all(counts: dict, totals: CommunityTotals, aw: ActivenessWeights = ActivenessWeights()):
    return {login: compute_characteristics(c, totals, aw) for login, c in counts.items()}
