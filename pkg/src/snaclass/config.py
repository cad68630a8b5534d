"""Expert-supplied parameters, read from one JSON document.

Layout (every section optional)::

    {
      "thresholds": {
        "activeness_total": [0.1, 0.3, 0.2, 0.4, 0.6, 0.8, 0.7, 0.9],
        "creativeness": {"p_low_1": 0.1, "p_low_2": 0.3, ...},
        ...
      },
      "activeness_weights": {"w_thread": 0.2, ...},
      "weights": {"c_activeness": 0.2, ...}   or   "growth",
      "weight_profiles": {"my_scenario": {"c_activeness": 0.5, ...}},
      "core_threshold": 0.5,
      "ruleset": "rules.json"
    }

List-form thresholds are in field order: p_low_1, p_low_2, p_med_1, p_med_2,
p_med_3, p_med_4, p_high_1, p_high_2. A relative ruleset path is resolved
against the config file's directory.
"""

from __future__ import annotations

from dataclasses import dataclass, field
import json
from pathlib import Path
from typing import Optional

from .errors import ValidationError
from .fuzzy import REFERENCE_THRESHOLDS, ThresholdSet, threshold_violations
from .metrics import CHARACTERISTICS, ActivenessWeights
from .usefulness import WEIGHT_PROFILES, WeightVector

DEFAULT_CORE_THRESHOLD = 0.5

KNOWN_SECTIONS = {"thresholds", "activeness_weights", "weights", "weight_profiles", "core_threshold", "ruleset"}


@dataclass(frozen=True)
class Config:
    thresholds: dict = field(default_factory=lambda: {c: REFERENCE_THRESHOLDS for c in CHARACTERISTICS})
    activeness_weights: ActivenessWeights = ActivenessWeights()
    weights: WeightVector = WeightVector()
    core_threshold: float = DEFAULT_CORE_THRESHOLD
    ruleset_path: Optional[Path] = None

    def to_dict(self) -> dict:
        return {
            "thresholds": {k: self.thresholds[k].to_dict() for k in CHARACTERISTICS},
            "activeness_weights": self.activeness_weights.to_dict(),
            "weights": self.weights.to_dict(),
            "core_threshold": self.core_threshold,
            "ruleset": None if self.ruleset_path is None else str(self.ruleset_path),
        }


class ConfigError(ValidationError):
    def __init__(self, problems: list[str]):
        self.problems = problems
        super().__init__("; ".join(problems))


def _threshold_set(raw) -> ThresholdSet:
    if isinstance(raw, dict):
        return ThresholdSet.from_mapping(raw)
    if isinstance(raw, (list, tuple)):
        return ThresholdSet.from_sequence(raw)
    raise ValidationError(f"expected a list of 8 numbers or an object, got {type(raw).__name__}")


def _build(cls, raw, section: str):
    if not isinstance(raw, dict):
        raise ValidationError(f"{section} must be an object")
    try:
        return cls(**{k: float(v) for k, v in raw.items()})
    except TypeError as exc:
        raise ValidationError(str(exc)) from None


def parse_config(data: dict, base_dir: Optional[Path] = None) -> tuple[Config, list[str], list[str]]:
    """Build a :class:`Config` from decoded JSON.

    Returns ``(config, problems, warnings)``. ``config`` is only meaningful
    when ``problems`` is empty; every problem found is reported, not just the
    first.
    """
    problems: list[str] = []
    warnings: list[str] = []
    if not isinstance(data, dict):
        return Config(), ["config must be a JSON object"], warnings

    for key in sorted(set(data) - KNOWN_SECTIONS):
        warnings.append(f"unknown section {key!r} ignored")

    thresholds = {}
    raw_thresholds = data.get("thresholds")
    if raw_thresholds is None:
        warnings.append("no thresholds section: all characteristics use the reference thresholds")
        raw_thresholds = {}
    elif not isinstance(raw_thresholds, dict):
        problems.append("thresholds: must be an object keyed by characteristic")
        raw_thresholds = {}
    for key in sorted(set(raw_thresholds) - set(CHARACTERISTICS)):
        problems.append(f"thresholds.{key}: unknown characteristic")
    for name in CHARACTERISTICS:
        if name not in raw_thresholds:
            if data.get("thresholds") is not None:
                warnings.append(f"thresholds.{name}: not set, using reference thresholds")
            thresholds[name] = REFERENCE_THRESHOLDS
            continue
        try:
            t = _threshold_set(raw_thresholds[name])
        except (ValidationError, ValueError, TypeError) as exc:
            problems.append(f"thresholds.{name}: {exc}")
            continue
        for err in threshold_violations(t):
            problems.append(f"thresholds.{name}: {err}")
        thresholds[name] = t

    aw = ActivenessWeights()
    if "activeness_weights" in data:
        try:
            aw = _build(ActivenessWeights, data["activeness_weights"], "activeness_weights")
        except (ValidationError, ValueError) as exc:
            problems.append(f"activeness_weights: {exc}")
    else:
        warnings.append("no activeness_weights section: using equal weights 0.2")

    profiles = dict(WEIGHT_PROFILES)
    for pname, raw in (data.get("weight_profiles") or {}).items():
        try:
            profiles[pname] = _build(WeightVector, raw, f"weight_profiles.{pname}")
        except (ValidationError, ValueError) as exc:
            problems.append(f"weight_profiles.{pname}: {exc}")

    weights = WeightVector()
    raw_weights = data.get("weights")
    if raw_weights is None:
        warnings.append("no weights section: using equal usefulness weights 0.2")
    elif isinstance(raw_weights, str):
        if raw_weights in profiles:
            weights = profiles[raw_weights]
        else:
            problems.append(f"weights: unknown profile {raw_weights!r} (known: {', '.join(sorted(profiles))})")
    else:
        try:
            weights = _build(WeightVector, raw_weights, "weights")
        except (ValidationError, ValueError) as exc:
            problems.append(f"weights: {exc}")

    core = DEFAULT_CORE_THRESHOLD
    if "core_threshold" in data:
        try:
            core = float(data["core_threshold"])
            if not 0.0 <= core <= 1.0:
                problems.append(f"core_threshold: {core} outside [0, 1]")
        except (TypeError, ValueError):
            problems.append(f"core_threshold: not a number: {data['core_threshold']!r}")

    ruleset_path = None
    if data.get("ruleset") is not None:
        ruleset_path = Path(data["ruleset"])
        if base_dir is not None and not ruleset_path.is_absolute():
            ruleset_path = base_dir / ruleset_path

    return Config(thresholds, aw, weights, core, ruleset_path), problems, warnings


def read_config(path) -> tuple[Config, list[str], list[str]]:
    """Read and parse a config file. Raises ``OSError`` if it cannot be read."""
    path = Path(path)
    text = path.read_text(encoding="utf-8")
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        return Config(), [f"malformed JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}"], []
    return parse_config(data, base_dir=path.parent)


def load_config(path=None) -> Config:
    """Config from ``path`` (defaults when ``None``); raises :class:`ConfigError`."""
    if path is None:
        return Config()
    config, problems, _ = read_config(path)
    if problems:
        raise ConfigError(problems)
    return config
