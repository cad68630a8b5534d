"""Synthetic community logs for tests and experiments."""

from __future__ import annotations

from datetime import datetime, timedelta, timezone
import random

from .ingest import ActivityEvent, EventKind, Polarity, Status, UserProfile

START = datetime(2020, 1, 1, tzinfo=timezone.utc)
STEP = timedelta(minutes=10)

_PREFIX = {
    EventKind.THREAD_CREATED: "t",
    EventKind.POLL_CREATED: "pl",
    EventKind.POST_CREATED: "p",
}


class _Builder:
    def __init__(self, rng: random.Random):
        self.rng = rng
        self.creations: list[tuple] = []
        self.reactions: list[tuple] = []
        self.content: dict[str, list[str]] = {}
        self._n = 0

    def create(self, kind: EventKind, actor: str, reply_to: str | None = None):
        self._n += 1
        cid = f"{_PREFIX[kind]}{self._n:04d}"
        self.content.setdefault(actor, []).append(cid)
        self.creations.append((kind, actor, cid, reply_to, None))

    def react(self, kind: EventKind, actor: str, target: str, polarity: Polarity | None = None):
        self.reactions.append((kind, actor, None, target, polarity))

    def events(self) -> list[ActivityEvent]:
        self.rng.shuffle(self.creations)
        self.rng.shuffle(self.reactions)
        out = []
        for i, (kind, actor, cid, target, polarity) in enumerate(self.creations + self.reactions):
            if cid is None:
                owned = self.content.get(target) or [f"{target}-c0"]
                cid = self.rng.choice(owned)
            out.append(ActivityEvent(kind, actor, START + i * STEP, cid, target, polarity))
        return out


def synthetic_log(n_users: int, n_events: int, seed: int = 0):
    """Random valid ``(events, profiles)`` with ``n_users`` active users."""
    if n_users < 2:
        raise ValueError("need at least two users so reactions have a target")
    rng = random.Random(seed)
    logins = [f"user{i:03d}" for i in range(n_users)]
    b = _Builder(rng)
    kinds = list(EventKind)
    for _ in range(n_events):
        kind = rng.choice(kinds)
        actor = rng.choice(logins)
        if kind in _PREFIX:
            reply_to = None
            if kind is EventKind.POST_CREATED and rng.random() < 0.5:
                reply_to = rng.choice(logins)
            b.create(kind, actor, reply_to)
        else:
            target = rng.choice([u for u in logins if u != actor])
            polarity = rng.choice(list(Polarity)) if kind is EventKind.FEEDBACK_GIVEN else None
            b.react(kind, actor, target, polarity)
    profiles = [UserProfile(login, status=Status.MEMBER) for login in logins]
    return b.events(), profiles


# Community totals of the archetype fixture, and the flamer's share of each.
ARCHETYPE_TOTALS = {"threads": 50, "polls": 20, "posts": 250, "votes": 100, "feedback": 80}
FLAMER_QUOTA = {"threads": 20, "polls": 8, "posts": 100, "votes": 40, "feedback": 32}


def archetype_log(seed: int = 2020):
    """20 users and 500 events with two planted archetypes.

    ``flamer`` produces 40% of every activity kind, always replies to other
    users, gives only negative feedback, and gets only negative feedback
    from two users. ``lurker`` has a profile and no activity at all. The 18
    ordinary users ``u00``..``u17`` share the rest at random and never react
    to ``flamer`` beyond the two planted critics ``u01`` and ``u02``.
    """
    rng = random.Random(seed)
    ordinary = [f"u{i:02d}" for i in range(18)]
    b = _Builder(rng)

    def others(actor):
        return [u for u in ordinary if u != actor]

    for _ in range(FLAMER_QUOTA["threads"]):
        b.create(EventKind.THREAD_CREATED, "flamer")
    for _ in range(FLAMER_QUOTA["polls"]):
        b.create(EventKind.POLL_CREATED, "flamer")
    for _ in range(FLAMER_QUOTA["posts"]):
        b.create(EventKind.POST_CREATED, "flamer", reply_to=rng.choice(ordinary))
    for _ in range(FLAMER_QUOTA["votes"]):
        b.react(EventKind.VOTE_CAST, "flamer", rng.choice(ordinary))
    for _ in range(FLAMER_QUOTA["feedback"]):
        b.react(EventKind.FEEDBACK_GIVEN, "flamer", rng.choice(ordinary), Polarity.NEGATIVE)

    for critic in ("u01", "u02"):
        b.react(EventKind.VOTE_CAST, critic, "flamer")
        b.react(EventKind.FEEDBACK_GIVEN, critic, "flamer", Polarity.NEGATIVE)
        b.react(EventKind.FEEDBACK_GIVEN, critic, "flamer", Polarity.NEGATIVE)
    planted_votes, planted_feedback = 2, 4

    for kind, key in ((EventKind.THREAD_CREATED, "threads"), (EventKind.POLL_CREATED, "polls")):
        for _ in range(ARCHETYPE_TOTALS[key] - FLAMER_QUOTA[key]):
            b.create(kind, rng.choice(ordinary))
    for _ in range(ARCHETYPE_TOTALS["posts"] - FLAMER_QUOTA["posts"]):
        actor = rng.choice(ordinary)
        b.create(EventKind.POST_CREATED, actor, reply_to=rng.choice(others(actor)) if rng.random() < 0.5 else None)
    for _ in range(ARCHETYPE_TOTALS["votes"] - FLAMER_QUOTA["votes"] - planted_votes):
        actor = rng.choice(ordinary)
        b.react(EventKind.VOTE_CAST, actor, rng.choice(others(actor)))
    for _ in range(ARCHETYPE_TOTALS["feedback"] - FLAMER_QUOTA["feedback"] - planted_feedback):
        actor = rng.choice(ordinary)
        polarity = Polarity.POSITIVE if rng.random() < 0.7 else Polarity.NEGATIVE
        b.react(EventKind.FEEDBACK_GIVEN, actor, rng.choice(others(actor)), polarity)

    events = b.events()
    profiles = [UserProfile(login, status=Status.MEMBER) for login in ordinary]
    profiles.append(UserProfile("flamer", status=Status.MEMBER, member_name="Loud Larry"))
    profiles.append(
        UserProfile("lurker", status=Status.GUEST, member_name="Quiet Quinn", last_visit=datetime(2020, 1, 2, tzinfo=timezone.utc))
    )
    return events, profiles
