"""End-to-end run: log -> counts -> characteristics -> classes -> ranking."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
import json
from typing import Optional

from .classify import UNCLASSIFIED, ClassAssignment, Rule, UserClass, classify_user, default_ruleset, load_ruleset
from .config import Config
from .fuzzy import dominant_term, evaluate
from .ingest import ActivityCounts, CommunityTotals, aggregate
from .metrics import CHARACTERISTICS, CharacteristicVector, compute_characteristics
from .usefulness import RankedUser, compute_usefulness, extract_core, rank_users

SCHEMA_VERSION = 1


@dataclass(frozen=True)
class UserResult:
    login: str
    counts: ActivityCounts
    characteristics: CharacteristicVector
    assignment: ClassAssignment
    usefulness: float


@dataclass(frozen=True)
class PipelineResult:
    users: dict
    totals: CommunityTotals
    ranked: list
    core: list
    config: Config
    rules: list
    core_threshold: float


def rules_for(config: Config, ruleset_path=None) -> list[Rule]:
    path = ruleset_path or config.ruleset_path
    return default_ruleset() if path is None else load_ruleset(path)


def run_pipeline(events, profiles, config: Config, rules: Optional[list[Rule]] = None, core_threshold: Optional[float] = None) -> PipelineResult:
    if rules is None:
        rules = rules_for(config)
    if core_threshold is None:
        core_threshold = config.core_threshold
    counts, totals = aggregate(events, profiles)
    users = {}
    for login, c in counts.items():
        cv = compute_characteristics(c, totals, config.activeness_weights)
        assignment = classify_user(cv, config.thresholds, rules, login=login)
        users[login] = UserResult(login, c, cv, assignment, compute_usefulness(cv, config.weights))
    ranked = rank_users({u.login: u.usefulness for u in users.values()}, {u.login: u.assignment for u in users.values()})
    core = extract_core(ranked, core_threshold)
    return PipelineResult(users, totals, ranked, core, config, rules, core_threshold)


def _user_row(result: PipelineResult, ranked: RankedUser, with_core: bool, core_logins: set) -> dict:
    u = result.users[ranked.login]
    cv = u.characteristics.to_dict()
    memberships = {name: evaluate(cv[name], result.config.thresholds[name]) for name in CHARACTERISTICS}
    row = {
        "rank": ranked.rank,
        "login": u.login,
        "class": u.assignment.class_name,
        "usefulness": u.usefulness,
        "counts": u.counts.to_dict(),
        "characteristics": cv,
        "memberships": {name: d.to_dict() for name, d in memberships.items()},
        "dominant_terms": {name: dominant_term(d) for name, d in memberships.items()},
        "firing_strengths": dict(u.assignment.firing_strengths),
    }
    if with_core:
        row["in_core"] = u.login in core_logins
    return row


def build_report(result: PipelineResult, command: str) -> dict:
    with_core = command == "rank"
    core_logins = {r.login for r in result.core}
    histogram = Counter(u.assignment.class_name for u in result.users.values())
    classes = [c.value for c in UserClass] + [UNCLASSIFIED]
    summary = {
        "member_count": result.totals.member_count,
        "totals": result.totals.to_dict(),
        "class_histogram": {c: histogram.get(c, 0) for c in classes},
    }
    if with_core:
        summary["core_threshold"] = result.core_threshold
        summary["core"] = [r.login for r in result.core]
    return {
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "parameters": {
            "weights": result.config.weights.to_dict(),
            "activeness_weights": result.config.activeness_weights.to_dict(),
        },
        "users": [_user_row(result, r, with_core, core_logins) for r in result.ranked],
        "summary": summary,
    }


def dump_report(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True, ensure_ascii=False) + "\n"
