"""Exit criteria. Run with ``pytest tests/test_acceptance.py``; a pass/fail
line per criterion is printed in the terminal summary."""

import itertools
import json
import subprocess
import sys
import time

import numpy as np
import pytest

from oracles import PLATEAU, TERMS, crisp_class
from snaclass.classify import classify_user
from snaclass.config import parse_config
from snaclass.errors import ThresholdOrderError
from snaclass.fuzzy import REFERENCE_THRESHOLDS, ORDER_CHAIN, ThresholdSet, evaluate, evaluate_array, validate_thresholds
from snaclass.ingest import aggregate, parse_event_log, serialize_log
from snaclass.metrics import CHARACTERISTICS, TOP_LEVEL, CharacteristicVector, characteristics_for_all
from snaclass.synth import archetype_log, synthetic_log
from snaclass.usefulness import WeightVector, compute_usefulness

CHAIN_ORDER = ("p_low_1", "p_med_1", "p_low_2", "p_med_2", "p_med_3", "p_high_1", "p_med_4", "p_high_2")
REF = {name: REFERENCE_THRESHOLDS for name in CHARACTERISTICS}


def random_threshold_set(rng):
    values = np.sort(rng.uniform(0.0, 0.999, 8))
    return ThresholdSet(**dict(zip(CHAIN_ORDER, values.tolist())))


@pytest.mark.acceptance(1, "membership validity sweep: 1000 threshold sets x 1000 points, zero violations, < 10 s")
def test_membership_sweep():
    rng = np.random.default_rng(20200101)
    start = time.perf_counter()
    violations = []
    checked = 0
    while checked < 1000:
        t = random_threshold_set(rng)
        validate_thresholds(t)
        xs = np.sort(np.concatenate([[0.0, 1.0], rng.uniform(0, 1, 990), t.as_tuple()]))
        assert xs.size == 1000
        d = evaluate_array(xs, t)
        low, med, high = d[:, 0], d[:, 1], d[:, 2]
        if d.min() < 0 or d.max() > 1:
            violations.append((t, "range"))
        if not (d.max(axis=1) > 0).all():
            violations.append((t, "coverage"))
        if (np.diff(low) > 0).any():
            violations.append((t, "low increasing"))
        if (np.diff(high) < 0).any():
            violations.append((t, "high decreasing"))
        peak = int(np.argmax(med))
        if (np.diff(med[: peak + 1]) < 0).any() or (np.diff(med[peak:]) > 0).any():
            violations.append((t, "medium not unimodal"))
        if checked < 10:
            scalar = np.array([evaluate(float(x), t).as_tuple() for x in xs])
            if not np.array_equal(scalar, d):
                violations.append((t, "array and scalar evaluation differ"))
        checked += 1
    elapsed = time.perf_counter() - start
    assert violations == []
    assert elapsed < 10.0, f"sweep took {elapsed:.2f} s"


@pytest.mark.acceptance(2, "reference-threshold hand values within 1e-12")
def test_hand_values(ref):
    table = {
        0.0: (1.0, 0.0, 0.0),
        0.2: (0.5, 0.0, 0.0),
        0.5: (0.0, 1.0, 0.0),
        0.75: (0.0, 0.25, 0.25),
        0.95: (0.0, 0.0, 1.0),
    }
    for x, expected in table.items():
        got = evaluate(x, ref).as_tuple()
        assert max(abs(g - e) for g, e in zip(got, expected)) <= 1e-12, (x, got)


@pytest.mark.acceptance(3, "rule engine equals exhaustive set-membership oracle on all 243 crisp assignments, < 1 s")
def test_rule_oracle():
    start = time.perf_counter()
    mismatches = []
    cases = list(itertools.product(TERMS, repeat=5))
    for assignment in cases:
        cv = CharacteristicVector(**{TOP_LEVEL[k]: PLATEAU[t] for k, t in zip(TOP_LEVEL, assignment)})
        got = classify_user(cv, REF).class_name
        want = crisp_class(*assignment)
        if got != want:
            mismatches.append((assignment, got, want))
    elapsed = time.perf_counter() - start
    assert len(cases) == 243
    assert mismatches == []
    assert elapsed < 1.0, f"took {elapsed:.3f} s"


@pytest.mark.acceptance(4, "usefulness in [0,1], linear within 1e-12, monotone per coordinate over 10,000 random pairs")
def test_usefulness_properties():
    rng = np.random.default_rng(31)
    fields = ("activeness_total", "attractiveness", "creativeness", "reactiveness", "loyalty")
    violations = []
    for _ in range(10_000):
        w = WeightVector(*rng.dirichlet(np.ones(5)).tolist())
        values = rng.uniform(0, 1, 5)
        cv = CharacteristicVector(**dict(zip(fields, values.tolist())))
        me = compute_usefulness(cv, w)
        if not 0.0 <= me <= 1.0:
            violations.append(("bounds", me))
        lam = rng.uniform()
        scaled = CharacteristicVector(**dict(zip(fields, (lam * values).tolist())))
        if abs(compute_usefulness(scaled, w) - lam * me) > 1e-12:
            violations.append(("linearity", lam))
        k = rng.integers(5)
        bumped = values.copy()
        bumped[k] = rng.uniform(values[k], 1.0)
        if compute_usefulness(CharacteristicVector(**dict(zip(fields, bumped.tolist()))), w) < me:
            violations.append(("monotone", k))
    assert violations == []


@pytest.mark.acceptance(5, "activeness shares sum to 1 within 1e-9 on 100+ random logs")
def test_share_property():
    rng = np.random.default_rng(5)
    checked_kinds = 0
    for seed in range(120):
        events, profiles = synthetic_log(int(rng.integers(2, 30)), int(rng.integers(1, 400)), seed)
        counts, totals = aggregate(events, profiles)
        cvs = characteristics_for_all(counts, totals)
        for kind, total in (
            ("activeness_thread", totals.total_threads),
            ("activeness_poll", totals.total_polls),
            ("activeness_post", totals.total_posts),
            ("activeness_vote", totals.total_votes),
            ("activeness_feedback", totals.total_feedback),
        ):
            if total > 0:
                assert abs(sum(getattr(cv, kind) for cv in cvs.values()) - 1.0) <= 1e-9
                checked_kinds += 1
    assert checked_kinds >= 500


@pytest.mark.acceptance(6, "rank on 20-user/500-event fixture is byte-identical over 3 runs; planted Reader and Flamer")
def test_end_to_end(data_dir):
    log = data_dir / "community_20x500.jsonl"
    events, profiles = archetype_log()
    assert log.read_text() == serialize_log(events, profiles), "fixture drifted; rerun scripts/make_fixture.py"
    parsed_events, parsed_profiles = parse_event_log(log.read_bytes())
    assert (len(parsed_profiles), len(parsed_events)) == (20, 500)

    outputs = [
        subprocess.run([sys.executable, "-m", "snaclass", "rank", str(log)], capture_output=True, check=True).stdout
        for _ in range(3)
    ]
    assert outputs[0] == outputs[1] == outputs[2]

    rows = {r["login"]: r for r in json.loads(outputs[0])["users"]}
    lurker, flamer = rows["lurker"], rows["flamer"]

    assert lurker["characteristics"] == {name: 0.0 for name in CHARACTERISTICS}
    assert lurker["class"] == "Reader"
    assert lurker["firing_strengths"]["Reader"] == 1.0

    # Flamer made 40% of each activity kind, all posts are replies, gave and
    # got only negative feedback, and drew reactions from 2 of 19 others.
    cv = flamer["characteristics"]
    for kind in ("thread", "poll", "post", "vote", "feedback"):
        assert cv[f"activeness_{kind}"] == 0.4
    assert cv["activeness_total"] == pytest.approx(0.4, abs=1e-12)
    assert (cv["creativeness"], cv["reactiveness"], cv["loyalty"]) == (0.0, 1.0, 0.0)
    assert cv["attractiveness"] == 2 / 19
    assert flamer["dominant_terms"]["activeness_total"] == "medium"
    assert flamer["class"] == "Flamer"
    assert flamer["firing_strengths"]["Flamer"] == pytest.approx(1.0, abs=1e-12)
    assert all(s == 0.0 for c, s in flamer["firing_strengths"].items() if c != "Flamer")


def _swap(values, i):
    v = list(values)
    v[i], v[i + 1] = v[i + 1], v[i]
    return v


CHAIN_VALUES = [getattr(REFERENCE_THRESHOLDS, n) for n in CHAIN_ORDER]
SINGLE_VIOLATIONS = [(dict(zip(CHAIN_ORDER, _swap(CHAIN_VALUES, i))), ORDER_CHAIN[i]) for i in range(7)]
SINGLE_VIOLATIONS.append(({**dict(zip(CHAIN_ORDER, CHAIN_VALUES)), "p_high_2": 1.0}, ("p_high_2", "1")))


@pytest.mark.acceptance(7, "each of the 8 single ordering-chain violations is rejected, naming the pair")
def test_single_violations():
    assert len(SINGLE_VIOLATIONS) == 8
    for values, pair in SINGLE_VIOLATIONS:
        t = ThresholdSet(**values)
        with pytest.raises(ThresholdOrderError) as exc:
            validate_thresholds(t)
        assert exc.value.pair == pair
        left, right = pair
        message = str(exc.value)
        assert left in message and right in message

        _, problems, _ = parse_config({"thresholds": {"reactiveness": t.to_dict()}})
        assert len(problems) == 1, problems
        assert problems[0].startswith("thresholds.reactiveness:")
        assert left in problems[0] and right in problems[0]
