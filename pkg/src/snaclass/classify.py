"""Production rules mapping linguistic terms to behavioral classes.

A rule fires to the degree its antecedent holds: AND across characteristics
is ``min``, the allowed-term set within one characteristic is ``max``. A
user gets the class of the strongest rule, ties going to the lower priority
number. If nothing fires the user is ``Unclassified``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
import json
from pathlib import Path
from typing import Mapping

from .errors import ValidationError
from .fuzzy import REFERENCE_THRESHOLDS, TERMS, MembershipDegrees, ThresholdSet, dominant_term, evaluate
from .metrics import TOP_LEVEL, CharacteristicVector


class UserClass(str, Enum):
    ACTIVIST = "Activist"
    MODERATOR = "Moderator"
    FLAMER = "Flamer"
    AUTHOR = "Author"
    CRITIC = "Critic"
    READER = "Reader"


UNCLASSIFIED = "Unclassified"


@dataclass(frozen=True)
class Rule:
    class_name: UserClass
    antecedent: Mapping[str, frozenset]
    priority: int

    def __post_init__(self):
        if not self.antecedent:
            raise ValidationError(f"rule {self.priority} ({self.class_name.value}) has an empty antecedent")
        for name, terms in self.antecedent.items():
            if name not in TOP_LEVEL:
                raise ValidationError(f"rule {self.priority}: unknown characteristic {name!r}")
            if not terms:
                raise ValidationError(f"rule {self.priority}: empty term set for {name}")
            bad = set(terms) - set(TERMS)
            if bad:
                raise ValidationError(f"rule {self.priority}: unknown terms {sorted(bad)} for {name}")

    def to_dict(self) -> dict:
        return {
            "class": self.class_name.value,
            "priority": self.priority,
            "antecedent": {k: [t for t in TERMS if t in v] for k, v in self.antecedent.items()},
        }


def _rule(cls: UserClass, priority: int, **antecedent) -> Rule:
    return Rule(cls, {k: frozenset(v) for k, v in antecedent.items()}, priority)


def default_ruleset() -> list[Rule]:
    mh, lm = ("medium", "high"), ("low", "medium")
    return [
        _rule(UserClass.ACTIVIST, 1, activeness=mh, creativeness=mh, reactiveness=lm),
        _rule(UserClass.MODERATOR, 2, activeness=mh, reactiveness=("high",), loyalty=mh),
        _rule(UserClass.FLAMER, 3, activeness=mh, creativeness=("low",), loyalty=("low",)),
        _rule(UserClass.AUTHOR, 4, activeness=("low",), creativeness=mh, attractiveness=mh, reactiveness=("low",)),
        _rule(UserClass.CRITIC, 5, creativeness=("low",), reactiveness=("low", "high"), attractiveness=("high",), loyalty=("low",)),
        _rule(UserClass.READER, 6, activeness=("low",), creativeness=("low",), attractiveness=lm, reactiveness=("low",)),
    ]


def check_ruleset(rules: list[Rule]) -> list[Rule]:
    priorities = [r.priority for r in rules]
    if len(set(priorities)) != len(priorities):
        raise ValidationError(f"rule priorities must be unique, got {priorities}")
    if not rules:
        raise ValidationError("ruleset is empty")
    return sorted(rules, key=lambda r: r.priority)


def ruleset_from_dict(data: dict) -> list[Rule]:
    try:
        entries = data["rules"]
        rules = [
            Rule(
                UserClass(entry["class"]),
                {k: frozenset(v) for k, v in entry["antecedent"].items()},
                int(entry["priority"]),
            )
            for entry in entries
        ]
    except (KeyError, TypeError, AttributeError) as exc:
        raise ValidationError(f"malformed ruleset: {exc!r}") from None
    except ValueError as exc:
        raise ValidationError(f"malformed ruleset: {exc}") from None
    return check_ruleset(rules)


def load_ruleset(path) -> list[Rule]:
    text = Path(path).read_text(encoding="utf-8")
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValidationError(f"{path}: malformed JSON at line {exc.lineno}: {exc.msg}") from None
    return ruleset_from_dict(data)


def firing_strength(rule: Rule, memberships: Mapping[str, MembershipDegrees]) -> float:
    strength = 1.0
    for name, allowed in rule.antecedent.items():
        if name not in memberships:
            raise KeyError(f"rule {rule.priority} needs memberships for {name!r}")
        d = memberships[name]
        strength = min(strength, max(d.degree(t) for t in allowed))
    return strength


@dataclass(frozen=True)
class ClassAssignment:
    login: str
    class_name: str
    firing_strengths: dict = field(default_factory=dict)
    dominant_terms: dict = field(default_factory=dict)
    memberships: dict = field(default_factory=dict)

    @property
    def strength(self) -> float:
        return self.firing_strengths.get(self.class_name, 0.0)


def classify_memberships(login: str, memberships: Mapping[str, MembershipDegrees], rules: list[Rule]) -> ClassAssignment:
    best, best_strength = None, 0.0
    strengths: dict[str, float] = {}
    for rule in sorted(rules, key=lambda r: r.priority):
        s = firing_strength(rule, memberships)
        # Two rules for one class: report the stronger.
        key = rule.class_name.value
        strengths[key] = max(strengths.get(key, 0.0), s)
        if s > best_strength:
            best, best_strength = rule, s
    return ClassAssignment(
        login=login,
        class_name=UNCLASSIFIED if best is None else best.class_name.value,
        firing_strengths=strengths,
        dominant_terms={name: dominant_term(d) for name, d in memberships.items()},
        memberships=dict(memberships),
    )


def top_level_memberships(cv: CharacteristicVector, thresholds: Mapping[str, ThresholdSet]) -> dict[str, MembershipDegrees]:
    """Degrees for the five rule characteristics, keyed by short name."""
    out = {}
    for short, name in TOP_LEVEL.items():
        out[short] = evaluate(getattr(cv, name), thresholds.get(name, REFERENCE_THRESHOLDS))
    return out


def classify_user(
    cv: CharacteristicVector,
    thresholds: Mapping[str, ThresholdSet],
    rules: list[Rule] | None = None,
    login: str = "",
) -> ClassAssignment:
    if rules is None:
        rules = default_ruleset()
    return classify_memberships(login, top_level_memberships(cv, thresholds), rules)
