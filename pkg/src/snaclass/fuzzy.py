"""Linguistic variables with low/medium/high shoulder-trapezoid memberships.

Every characteristic uses the same three-term shape, parameterised by eight
breakpoints supplied by an expert:

    low    : 1 on [0, p_low_1), falls to 0 across [p_low_1, p_low_2]
    medium : rises across [p_med_1, p_med_2), 1 on [p_med_2, p_med_3],
             falls across (p_med_3, p_med_4)
    high   : rises across [p_high_1, p_high_2), 1 on [p_high_2, 1]

The breakpoints must satisfy

    p_low_1 <= p_med_1 <= p_low_2 <= p_med_2 <= p_med_3
            <= p_high_1 <= p_med_4 <= p_high_2 < 1
"""

from __future__ import annotations

from dataclasses import astuple, dataclass, fields
import math

import numpy as np

from .errors import DomainError, RampDegeneracyError, ThresholdOrderError, ValidationError

TERMS = ("low", "medium", "high")

# (left, right) for each link of the ordering chain, in chain order.
ORDER_CHAIN = (
    ("p_low_1", "p_med_1"),
    ("p_med_1", "p_low_2"),
    ("p_low_2", "p_med_2"),
    ("p_med_2", "p_med_3"),
    ("p_med_3", "p_high_1"),
    ("p_high_1", "p_med_4"),
    ("p_med_4", "p_high_2"),
)

# Ramp endpoints that must differ, plus the two overlaps that keep the
# three terms covering [0, 1] without a zero gap.
STRICT_PAIRS = (
    ("p_low_1", "p_low_2"),
    ("p_med_1", "p_med_2"),
    ("p_med_3", "p_med_4"),
    ("p_high_1", "p_high_2"),
    ("p_med_1", "p_low_2"),
    ("p_high_1", "p_med_4"),
)


@dataclass(frozen=True)
class ThresholdSet:
    p_low_1: float
    p_low_2: float
    p_med_1: float
    p_med_2: float
    p_med_3: float
    p_med_4: float
    p_high_1: float
    p_high_2: float

    @classmethod
    def from_sequence(cls, values) -> "ThresholdSet":
        values = [float(v) for v in values]
        if len(values) != 8:
            raise ValidationError(f"threshold set needs 8 values, got {len(values)}")
        return cls(*values)

    @classmethod
    def from_mapping(cls, data: dict) -> "ThresholdSet":
        names = [f.name for f in fields(cls)]
        missing = [n for n in names if n not in data]
        if missing:
            raise ValidationError(f"threshold set missing {', '.join(missing)}")
        unknown = sorted(set(data) - set(names))
        if unknown:
            raise ValidationError(f"threshold set has unknown keys {', '.join(unknown)}")
        return cls(**{n: float(data[n]) for n in names})

    def as_tuple(self) -> tuple[float, ...]:
        return astuple(self)

    def to_dict(self) -> dict[str, float]:
        return {f.name: getattr(self, f.name) for f in fields(self)}


# Thresholds used when a characteristic has no configured set.
REFERENCE_THRESHOLDS = ThresholdSet(0.1, 0.3, 0.2, 0.4, 0.6, 0.8, 0.7, 0.9)


@dataclass(frozen=True)
class MembershipDegrees:
    low: float
    medium: float
    high: float

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.low, self.medium, self.high)

    def degree(self, term: str) -> float:
        if term not in TERMS:
            raise ValueError(f"unknown term {term!r}")
        return getattr(self, term)

    def to_dict(self) -> dict[str, float]:
        return {"low": self.low, "medium": self.medium, "high": self.high}


def threshold_violations(t: ThresholdSet) -> list[ValidationError]:
    """All problems with ``t``, ordering errors first and in chain order."""
    problems: list[ValidationError] = []
    for name, value in t.to_dict().items():
        if not math.isfinite(value):
            problems.append(ValidationError(f"{name} = {value!r} is not a finite number"))
    if problems:
        return problems
    if t.p_low_1 < 0:
        problems.append(ThresholdOrderError("0", "p_low_1", f"0 <= p_low_1 violated (p_low_1 = {t.p_low_1})"))
    for left, right in ORDER_CHAIN:
        a, b = getattr(t, left), getattr(t, right)
        if not a <= b:
            problems.append(ThresholdOrderError(left, right, f"{left} <= {right} violated ({a} > {b})"))
    if not t.p_high_2 < 1:
        problems.append(ThresholdOrderError("p_high_2", "1", f"p_high_2 < 1 violated (p_high_2 = {t.p_high_2})"))
    if problems:
        return problems
    for left, right in STRICT_PAIRS:
        a, b = getattr(t, left), getattr(t, right)
        if not a < b:
            problems.append(RampDegeneracyError(left, right, f"{left} < {right} required, both are {a}"))
    return problems


def validate_thresholds(t: ThresholdSet) -> ThresholdSet:
    """Return ``t`` unchanged if it is a usable threshold set.

    Raises the first problem found: :class:`ThresholdOrderError` for a broken
    link of the ordering chain, :class:`RampDegeneracyError` when two
    breakpoints that bound a ramp (or a term overlap) coincide.
    """
    problems = threshold_violations(t)
    if problems:
        raise problems[0]
    return t


def evaluate(x: float, t: ThresholdSet) -> MembershipDegrees:
    """Degrees of ``x`` in the low/medium/high terms; ``t`` must be validated."""
    if not 0.0 <= x <= 1.0:
        raise DomainError(f"characteristic value {x!r} outside [0, 1]")

    if x < t.p_low_1:
        low = 1.0
    elif x <= t.p_low_2:
        low = (t.p_low_2 - x) / (t.p_low_2 - t.p_low_1)
    else:
        low = 0.0

    if t.p_med_1 <= x < t.p_med_2:
        medium = (x - t.p_med_1) / (t.p_med_2 - t.p_med_1)
    elif t.p_med_2 <= x <= t.p_med_3:
        medium = 1.0
    elif t.p_med_3 < x < t.p_med_4:
        medium = (t.p_med_4 - x) / (t.p_med_4 - t.p_med_3)
    else:
        medium = 0.0

    if t.p_high_1 <= x < t.p_high_2:
        high = (x - t.p_high_1) / (t.p_high_2 - t.p_high_1)
    elif x >= t.p_high_2:
        high = 1.0
    else:
        high = 0.0

    return MembershipDegrees(low, medium, high)


def evaluate_array(xs, t: ThresholdSet) -> np.ndarray:
    """Vectorised :func:`evaluate`; returns an array of shape ``(len(xs), 3)``.

    Uses the same branch boundaries and arithmetic as the scalar version, so
    results agree bit for bit.
    """
    xs = np.asarray(xs, dtype=float)
    if xs.size and (xs.min() < 0.0 or xs.max() > 1.0 or np.isnan(xs).any()):
        raise DomainError("characteristic values outside [0, 1]")
    out = np.zeros(xs.shape + (3,))

    with np.errstate(divide="ignore", invalid="ignore"):
        low_ramp = (t.p_low_2 - xs) / (t.p_low_2 - t.p_low_1)
        med_up = (xs - t.p_med_1) / (t.p_med_2 - t.p_med_1)
        med_down = (t.p_med_4 - xs) / (t.p_med_4 - t.p_med_3)
        high_ramp = (xs - t.p_high_1) / (t.p_high_2 - t.p_high_1)

    out[..., 0] = np.select([xs < t.p_low_1, xs <= t.p_low_2], [1.0, low_ramp], 0.0)
    out[..., 1] = np.select(
        [
            (t.p_med_1 <= xs) & (xs < t.p_med_2),
            (t.p_med_2 <= xs) & (xs <= t.p_med_3),
            (t.p_med_3 < xs) & (xs < t.p_med_4),
        ],
        [med_up, 1.0, med_down],
        0.0,
    )
    out[..., 2] = np.select(
        [(t.p_high_1 <= xs) & (xs < t.p_high_2), xs >= t.p_high_2], [high_ramp, 1.0], 0.0
    )
    return out


def dominant_term(d: MembershipDegrees) -> str:
    """Term with the largest degree; on ties the lower term wins."""
    best = None
    best_degree = 0.0
    for term, degree in zip(TERMS, d.as_tuple()):
        if degree > best_degree:
            best, best_degree = term, degree
    if best is None:
        raise AssertionError(f"membership coverage violated: all degrees zero in {d}")
    return best


@dataclass(frozen=True)
class LinguisticVariable:
    """A named characteristic with its three terms over [0, 1]."""

    name: str
    thresholds: ThresholdSet = REFERENCE_THRESHOLDS
    terms: tuple[str, ...] = TERMS
    domain: tuple[float, float] = (0.0, 1.0)

    def __post_init__(self):
        if tuple(self.terms) != TERMS:
            raise ValidationError(f"terms must be {TERMS}, got {self.terms}")
        validate_thresholds(self.thresholds)

    def degrees(self, x: float) -> MembershipDegrees:
        return evaluate(x, self.thresholds)

    def term(self, x: float) -> str:
        return dominant_term(self.degrees(x))
