"""Rank one log under every built-in weight profile and compare the cores.

    python scripts/compare_profiles.py [LOG] [--top N] [--core-threshold X]
"""

import argparse
from dataclasses import replace
from pathlib import Path

from snaclass.config import Config
from snaclass.ingest import parse_event_log
from snaclass.pipeline import run_pipeline
from snaclass.usefulness import WEIGHT_PROFILES

DEFAULT_LOG = Path(__file__).resolve().parents[1] / "tests" / "data" / "community_20x500.jsonl"


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("log", nargs="?", default=DEFAULT_LOG)
    ap.add_argument("--top", type=int, default=5)
    ap.add_argument("--core-threshold", type=float, default=0.4)
    args = ap.parse_args()

    with open(args.log, "rb") as fh:
        events, profiles = parse_event_log(fh)

    base = Config()
    for name, weights in WEIGHT_PROFILES.items():
        result = run_pipeline(events, profiles, replace(base, weights=weights), core_threshold=args.core_threshold)
        top = ", ".join(f"{r.login}({r.usefulness:.3f}, {r.class_name})" for r in result.ranked[: args.top])
        print(f"{name:<11} core={len(result.core):>3}  top: {top}")


if __name__ == "__main__":
    main()
