"""Fuzzy rule-based behavioral classification and usefulness ranking of
online-community users from their activity logs."""

from .classify import (
    UNCLASSIFIED,
    ClassAssignment,
    Rule,
    UserClass,
    classify_user,
    default_ruleset,
    firing_strength,
)
from .config import Config, load_config
from .errors import DomainError, ParseError, RampDegeneracyError, RecordError, ThresholdOrderError, ValidationError
from .fuzzy import (
    REFERENCE_THRESHOLDS,
    LinguisticVariable,
    MembershipDegrees,
    ThresholdSet,
    dominant_term,
    evaluate,
    evaluate_array,
    validate_thresholds,
)
from .ingest import ActivityCounts, ActivityEvent, CommunityTotals, UserProfile, aggregate, parse_event_log, serialize_log
from .metrics import ActivenessWeights, CharacteristicVector, compute_characteristics
from .pipeline import run_pipeline
from .usefulness import RankedUser, WeightVector, compute_usefulness, extract_core, rank_users

__version__ = "0.1.0"
