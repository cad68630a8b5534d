import json

import pytest

from snaclass.cli import main
from snaclass.usefulness import compute_usefulness, WeightVector
from snaclass.metrics import CharacteristicVector


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def two_users(data_dir):
    return data_dir / "two_users.jsonl"


def test_validate_ok(capsys, data_dir):
    code, out, _ = run(capsys, "validate-config", data_dir / "config.json")
    assert code == 0 and out.endswith("ok\n")


def test_validate_high_2(capsys, data_dir, tmp_path):
    data = json.loads((data_dir / "config.json").read_text())
    data["thresholds"]["loyalty"][7] = 1.0
    (tmp_path / "c.json").write_text(json.dumps(data))
    code, out, _ = run(capsys, "validate-config", tmp_path / "c.json")
    assert code == 1
    assert "thresholds.loyalty" in out and "p_high_2 < 1" in out


def test_validate_missing_weights_warns(capsys, data_dir, tmp_path):
    data = json.loads((data_dir / "config.json").read_text())
    del data["weights"]
    (tmp_path / "c.json").write_text(json.dumps(data))
    code, _, err = run(capsys, "validate-config", tmp_path / "c.json")
    assert code == 0
    assert "warning: no weights section" in err


def test_validate_missing_file(capsys, tmp_path):
    code, _, _ = run(capsys, "validate-config", tmp_path / "nope.json")
    assert code == 2


def test_validate_bad_ruleset(capsys, tmp_path):
    (tmp_path / "r.json").write_text('{"rules": []}')
    (tmp_path / "c.json").write_text('{"ruleset": "r.json"}')
    code, out, _ = run(capsys, "validate-config", tmp_path / "c.json")
    assert code == 1 and "ruleset" in out


def test_classify_two_users(capsys, two_users, data_dir):
    code, out, _ = run(capsys, "classify", two_users, "--config", data_dir / "config.json")
    assert code == 0
    report = json.loads(out)
    assert report["schema_version"] == 1
    rows = {r["login"]: r for r in report["users"]}
    assert [r["login"] for r in report["users"]] == ["ann", "bob"]
    ann, bob = rows["ann"], rows["bob"]
    # ann: thread share 1, post share 1, no polls exist -> total 0.4; 2/2 positive received; 1 of 1 other user reacted; 1 of 3 posts a reply
    assert ann["characteristics"]["activeness_total"] == pytest.approx(0.4, abs=1e-12)
    assert ann["characteristics"]["creativeness"] == 1.0
    assert ann["characteristics"]["attractiveness"] == 1.0
    assert ann["characteristics"]["reactiveness"] == pytest.approx(1 / 3, abs=1e-15)
    assert ann["class"] == "Activist"
    # min(medium 1, high 1, medium (1/3 - 0.2)/0.2)
    assert ann["firing_strengths"]["Activist"] == pytest.approx(2 / 3, abs=1e-12)
    # bob: vote share 1, feedback share 1 -> total 0.4; nothing received; no posts; 2/2 positive given
    assert bob["characteristics"]["activeness_total"] == pytest.approx(0.4, abs=1e-12)
    assert bob["characteristics"]["loyalty"] == 1.0
    assert bob["class"] == "Unclassified"
    assert "in_core" not in ann


def test_rank_two_users(capsys, two_users):
    code, out, _ = run(capsys, "rank", two_users)
    report = json.loads(out)
    ann, bob = report["users"]
    assert (ann["login"], ann["rank"], ann["in_core"]) == ("ann", 1, True)
    assert ann["usefulness"] == pytest.approx(0.2 * (0.4 + 1 + 1 + 1 / 3 + 0), abs=1e-12)
    assert (bob["login"], bob["rank"], bob["in_core"]) == ("bob", 2, False)
    assert bob["usefulness"] == pytest.approx(0.28, abs=1e-12)
    assert report["summary"]["core"] == ["ann"]
    assert report["summary"]["class_histogram"]["Activist"] == 1


def test_rank_core_zero(capsys, two_users):
    _, out, _ = run(capsys, "rank", two_users, "--core-threshold", "0")
    assert all(r["in_core"] for r in json.loads(out)["users"])


def test_rank_core_out_of_range(capsys, two_users):
    with pytest.raises(SystemExit) as exc:
        main(["rank", str(two_users), "--core-threshold", "2.0"])
    assert exc.value.code == 1
    assert "usage error" in capsys.readouterr().err


def test_users_without_events_are_readers(capsys, tmp_path):
    log = tmp_path / "log.jsonl"
    log.write_text('{"record":"user","login":"a"}\n{"record":"user","login":"b"}\n')
    _, out, _ = run(capsys, "classify", log)
    assert [r["class"] for r in json.loads(out)["users"]] == ["Reader", "Reader"]


def test_malformed_line_three(capsys, two_users, tmp_path):
    lines = two_users.read_text().splitlines()
    lines[2] = "{oops"
    log = tmp_path / "bad.jsonl"
    log.write_text("\n".join(lines))
    code, _, err = run(capsys, "classify", log)
    assert code == 1
    assert "line 3" in err


def test_missing_log(capsys, tmp_path):
    code, _, _ = run(capsys, "classify", tmp_path / "missing.jsonl")
    assert code == 2


def test_invalid_config_exit(capsys, two_users, tmp_path):
    (tmp_path / "c.json").write_text('{"core_threshold": 7}')
    code, _, err = run(capsys, "rank", two_users, "--config", tmp_path / "c.json")
    assert code == 1 and "core_threshold" in err


def test_table_format(capsys, two_users):
    code, out, _ = run(capsys, "rank", two_users, "--format", "table")
    assert code == 0
    assert "ann" in out and "core (ME >= 0.5): ann" in out


def test_ruleset_flag(capsys, two_users, tmp_path):
    (tmp_path / "r.json").write_text('{"rules": [{"class": "Critic", "priority": 1, "antecedent": {"loyalty": ["high"]}}]}')
    _, out, _ = run(capsys, "classify", two_users, "--ruleset", tmp_path / "r.json")
    classes = {r["login"]: r["class"] for r in json.loads(out)["users"]}
    assert classes == {"ann": "Unclassified", "bob": "Critic"}


def test_explain_consistent(capsys, two_users):
    _, out, _ = run(capsys, "rank", two_users)
    rows = {r["login"]: r for r in json.loads(out)["users"]}
    for login, row in rows.items():
        code, trace, _ = run(capsys, "explain", two_users, "--user", login)
        assert code == 0
        lines = trace.splitlines()
        assert lines[lines.index("[class]") + 1].strip() == row["class"]
        me = float(next(l for l in lines if l.strip().startswith("ME = ")).split("=")[1])
        assert me == row["usefulness"]
        assert f"rank {row['rank']} of 2" in trace


def test_explain_me_by_hand(capsys, two_users):
    _, trace, _ = run(capsys, "explain", two_users, "--user", "bob")
    me = float(next(l for l in trace.splitlines() if l.strip().startswith("ME = ")).split("=")[1])
    assert me == pytest.approx(0.2 * 0.4 + 0.2 * 1.0, abs=1e-12)
    cv = CharacteristicVector(activeness_vote=1.0, activeness_feedback=1.0, activeness_total=0.4, loyalty=1.0)
    assert me == pytest.approx(compute_usefulness(cv, WeightVector()), abs=1e-12)


def test_explain_unknown_user(capsys, two_users):
    code, _, err = run(capsys, "explain", two_users, "--user", "zed")
    assert code == 1 and "zed" in err


def test_module_entry_point(two_users):
    import subprocess
    import sys

    proc = subprocess.run([sys.executable, "-m", "snaclass", "classify", str(two_users)], capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["command"] == "classify"
