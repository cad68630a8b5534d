"""Write the planted-archetype fixture log used by the acceptance tests.

    python scripts/make_fixture.py [OUT]
"""

import sys
from pathlib import Path

from snaclass.ingest import serialize_log
from snaclass.synth import archetype_log

DEFAULT_OUT = Path(__file__).resolve().parents[1] / "tests" / "data" / "community_20x500.jsonl"


def main():
    out = Path(sys.argv[1]) if len(sys.argv) > 1 else DEFAULT_OUT
    events, profiles = archetype_log()
    out.write_text(serialize_log(events, profiles), encoding="utf-8")
    print(f"wrote {len(profiles)} users, {len(events)} events to {out}")


if __name__ == "__main__":
    main()
