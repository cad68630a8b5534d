"""Reading community activity logs and tallying them per user.

A log is JSON Lines. Each line carries a ``"record"`` field that is either
``"user"`` (a profile) or ``"event"`` (one action). Unknown extra fields are
ignored.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field, fields
from datetime import datetime, timezone
from enum import Enum
import io
import json
from typing import IO, Iterable, Optional, Union

from .errors import ParseError, RecordError


class EventKind(str, Enum):
    THREAD_CREATED = "ThreadCreated"
    POLL_CREATED = "PollCreated"
    POST_CREATED = "PostCreated"
    VOTE_CAST = "VoteCast"
    FEEDBACK_GIVEN = "FeedbackGiven"


class Polarity(str, Enum):
    POSITIVE = "Positive"
    NEGATIVE = "Negative"


class Status(str, Enum):
    GUEST = "guest"
    MEMBER = "member"
    MODERATOR = "moderator"
    ADMINISTRATOR = "administrator"


# Kinds that react to someone else's content.
REACTIONS = (EventKind.VOTE_CAST, EventKind.FEEDBACK_GIVEN)


def parse_timestamp(text: str) -> datetime:
    if not isinstance(text, str):
        raise ValueError(f"timestamp must be a string, got {text!r}")
    if text.endswith(("Z", "z")):
        text = text[:-1] + "+00:00"
    ts = datetime.fromisoformat(text)
    if ts.tzinfo is None:
        raise ValueError(f"timestamp {text!r} has no UTC offset")
    return ts.astimezone(timezone.utc)


def format_timestamp(ts: datetime) -> str:
    return ts.astimezone(timezone.utc).isoformat().replace("+00:00", "Z")


@dataclass(frozen=True)
class UserProfile:
    login: str
    status: Optional[Status] = None
    email: Optional[str] = None
    member_name: Optional[str] = None
    last_visit: Optional[datetime] = None
    personal_data: dict = field(default_factory=dict, hash=False, compare=True)

    def to_record(self) -> dict:
        rec: dict = {"record": "user", "login": self.login}
        if self.status is not None:
            rec["status"] = self.status.value
        if self.email is not None:
            rec["email"] = self.email
        if self.member_name is not None:
            rec["member_name"] = self.member_name
        if self.last_visit is not None:
            rec["last_visit"] = format_timestamp(self.last_visit)
        if self.personal_data:
            rec["personal_data"] = dict(self.personal_data)
        return rec


@dataclass(frozen=True)
class ActivityEvent:
    kind: EventKind
    actor: str
    timestamp: datetime
    content_id: str
    target_author: Optional[str] = None
    polarity: Optional[Polarity] = None

    @property
    def is_reply(self) -> bool:
        return (
            self.kind is EventKind.POST_CREATED
            and self.target_author is not None
            and self.target_author != self.actor
        )

    def to_record(self) -> dict:
        rec: dict = {
            "record": "event",
            "kind": self.kind.value,
            "actor": self.actor,
            "timestamp": format_timestamp(self.timestamp),
            "content_id": self.content_id,
        }
        if self.target_author is not None:
            rec["target_author"] = self.target_author
        if self.polarity is not None:
            rec["polarity"] = self.polarity.value
        return rec


@dataclass(frozen=True)
class ActivityCounts:
    threads_created: int = 0
    polls_created: int = 0
    posts_created: int = 0
    votes_cast: int = 0
    feedback_given: int = 0
    positive_feedback_given: int = 0
    replies_authored: int = 0
    positive_feedback_received: int = 0
    total_feedback_received: int = 0
    distinct_reactors: int = 0

    def to_dict(self) -> dict[str, int]:
        return {f.name: getattr(self, f.name) for f in fields(self)}


@dataclass(frozen=True)
class CommunityTotals:
    total_threads: int = 0
    total_polls: int = 0
    total_posts: int = 0
    total_votes: int = 0
    total_feedback: int = 0
    member_count: int = 0

    def to_dict(self) -> dict[str, int]:
        return {f.name: getattr(self, f.name) for f in fields(self)}


def _require_str(rec: dict, key: str, lineno: int, optional: bool = False) -> Optional[str]:
    value = rec.get(key)
    if value is None:
        if optional:
            return None
        raise RecordError(lineno, f"missing required field {key!r}")
    if not isinstance(value, str) or not value:
        raise RecordError(lineno, f"field {key!r} must be a non-empty string")
    return value


def _enum(cls, value, key: str, lineno: int):
    try:
        return cls(value)
    except ValueError:
        allowed = ", ".join(m.value for m in cls)
        raise RecordError(lineno, f"unknown {key} {value!r} (expected one of {allowed})") from None


def _timestamp(value, key: str, lineno: int) -> datetime:
    try:
        return parse_timestamp(value)
    except (TypeError, ValueError) as exc:
        raise RecordError(lineno, f"bad {key}: {exc}") from None


def profile_from_record(rec: dict, lineno: int = 0) -> UserProfile:
    login = _require_str(rec, "login", lineno)
    status = rec.get("status")
    last_visit = rec.get("last_visit")
    personal_data = rec.get("personal_data") or {}
    if not isinstance(personal_data, dict):
        raise RecordError(lineno, "personal_data must be an object")
    return UserProfile(
        login=login,
        status=None if status is None else _enum(Status, status, "status", lineno),
        email=_require_str(rec, "email", lineno, optional=True),
        member_name=_require_str(rec, "member_name", lineno, optional=True),
        last_visit=None if last_visit is None else _timestamp(last_visit, "last_visit", lineno),
        personal_data=personal_data,
    )


def event_from_record(rec: dict, lineno: int = 0) -> ActivityEvent:
    if "kind" not in rec:
        raise RecordError(lineno, "missing required field 'kind'")
    kind = _enum(EventKind, rec["kind"], "kind", lineno)
    actor = _require_str(rec, "actor", lineno)
    if "timestamp" not in rec:
        raise RecordError(lineno, "missing required field 'timestamp'")
    timestamp = _timestamp(rec["timestamp"], "timestamp", lineno)
    content_id = _require_str(rec, "content_id", lineno)
    target = _require_str(rec, "target_author", lineno, optional=True)
    polarity = rec.get("polarity")

    if kind is EventKind.FEEDBACK_GIVEN:
        if polarity is None:
            raise RecordError(lineno, "FeedbackGiven requires polarity")
        polarity = _enum(Polarity, polarity, "polarity", lineno)
    elif polarity is not None:
        raise RecordError(lineno, f"polarity is only allowed on FeedbackGiven, not {kind.value}")

    if kind in REACTIONS:
        if target is None:
            raise RecordError(lineno, f"{kind.value} requires target_author")
        if target == actor:
            raise RecordError(lineno, f"self-reaction: {actor!r} cannot react to own content")
    elif target is not None and kind is not EventKind.POST_CREATED:
        raise RecordError(lineno, f"target_author is not allowed on {kind.value}")

    return ActivityEvent(kind, actor, timestamp, content_id, target, polarity)


def parse_event_log(source: Union[IO, bytes, str, Iterable[str]]):
    """Parse a JSON-Lines log into ``(events, profiles)``.

    ``source`` may be a binary or text stream, raw bytes, or an iterable of
    lines. Blank lines are skipped. Actors and target authors without a user
    record get a minimal profile at their first mention. Line numbers in
    errors are 1-based.
    """
    if isinstance(source, bytes):
        source = io.StringIO(source.decode("utf-8"))
    elif isinstance(source, str):
        source = io.StringIO(source)

    events: list[ActivityEvent] = []
    profiles: dict[str, UserProfile] = {}
    declared: set[str] = set()
    last_seen: dict[str, tuple[datetime, int]] = {}

    for lineno, raw in enumerate(source, start=1):
        if isinstance(raw, bytes):
            try:
                raw = raw.decode("utf-8")
            except UnicodeDecodeError as exc:
                raise ParseError(lineno, f"not UTF-8: {exc}") from None
        if not raw.strip():
            continue
        try:
            rec = json.loads(raw)
        except json.JSONDecodeError as exc:
            raise ParseError(lineno, f"malformed JSON: {exc.msg}") from None
        if not isinstance(rec, dict):
            raise ParseError(lineno, "record is not a JSON object")

        shape = rec.get("record")
        if shape == "user":
            profile = profile_from_record(rec, lineno)
            if profile.login in declared:
                raise RecordError(lineno, f"duplicate user record for {profile.login!r}")
            declared.add(profile.login)
            # Replaces any implicit profile in place, keeping first-mention order.
            profiles[profile.login] = profile
        elif shape == "event":
            event = event_from_record(rec, lineno)
            events.append(event)
            for login in (event.actor, event.target_author):
                if login is not None and login not in profiles:
                    profiles[login] = UserProfile(login=login)
            prev = last_seen.get(event.actor)
            if prev is None or event.timestamp > prev[0]:
                last_seen[event.actor] = (event.timestamp, lineno)
        else:
            raise RecordError(lineno, f"unknown record type {shape!r} (expected 'user' or 'event')")

    for login, (ts, lineno) in last_seen.items():
        lv = profiles[login].last_visit
        if lv is not None and ts > lv:
            raise RecordError(lineno, f"event by {login!r} at {format_timestamp(ts)} is after last_visit {format_timestamp(lv)}")

    return events, list(profiles.values())


def serialize_log(events: Iterable[ActivityEvent], profiles: Iterable[UserProfile] = ()) -> str:
    """Inverse of :func:`parse_event_log`: profiles first, then events."""
    lines = [json.dumps(p.to_record(), sort_keys=True) for p in profiles]
    lines += [json.dumps(e.to_record(), sort_keys=True) for e in events]
    return "".join(line + "\n" for line in lines)


def aggregate(events: Iterable[ActivityEvent], profiles: Iterable[UserProfile] = ()):
    """Tally events into ``({login: ActivityCounts}, CommunityTotals)``.

    Users known only from ``profiles`` get all-zero counts. Result order is
    sorted by login so it does not depend on event order.
    """
    tally: dict[str, dict[str, int]] = defaultdict(lambda: defaultdict(int))
    reactors: dict[str, set[str]] = defaultdict(set)
    for p in profiles:
        tally[p.login]
    for e in events:
        mine = tally[e.actor]
        if e.kind is EventKind.THREAD_CREATED:
            mine["threads_created"] += 1
        elif e.kind is EventKind.POLL_CREATED:
            mine["polls_created"] += 1
        elif e.kind is EventKind.POST_CREATED:
            mine["posts_created"] += 1
            if e.is_reply:
                mine["replies_authored"] += 1
        elif e.kind is EventKind.VOTE_CAST:
            mine["votes_cast"] += 1
        elif e.kind is EventKind.FEEDBACK_GIVEN:
            mine["feedback_given"] += 1
            positive = e.polarity is Polarity.POSITIVE
            if positive:
                mine["positive_feedback_given"] += 1
            theirs = tally[e.target_author]
            theirs["total_feedback_received"] += 1
            if positive:
                theirs["positive_feedback_received"] += 1
        if e.target_author is not None:
            tally[e.target_author]
        if e.kind in REACTIONS:
            reactors[e.target_author].add(e.actor)

    counts = {}
    for login in sorted(tally):
        row = dict(tally[login])
        row["distinct_reactors"] = len(reactors.get(login, ()))
        counts[login] = ActivityCounts(**row)

    totals = CommunityTotals(
        total_threads=sum(c.threads_created for c in counts.values()),
        total_polls=sum(c.polls_created for c in counts.values()),
        total_posts=sum(c.posts_created for c in counts.values()),
        total_votes=sum(c.votes_cast for c in counts.values()),
        total_feedback=sum(c.feedback_given for c in counts.values()),
        member_count=len(counts),
    )
    return counts, totals
