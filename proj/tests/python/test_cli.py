import json
import os
import subprocess

import pytest

CLI = os.environ.get("DTGW_CLI")

pytestmark = pytest.mark.skipif(not CLI, reason="DTGW_CLI not set")

EVENTS_A = "0 a b\n0 a c\n0 b c\n20 a b\n"
EVENTS_B = "0 a b\n0 c d\n20 a d\n20 b c\n40 a c\n"


def run(*args, **kw):
    return subprocess.run([CLI, *args], capture_output=True, text=True, **kw)


def write(tmp_path, name, text):
    p = tmp_path / name
    p.write_text(text)
    return str(p)


def test_distance_identity(tmp_path):
    a = write(tmp_path, "a.events", EVENTS_A)
    r = run("distance", a, a)
    assert r.returncode == 0, r.stderr
    report = json.loads(r.stdout)
    assert report["distance"] == 0.0
    assert report["exact"] is False
    assert len(report["mapping"]) == 3


def test_distance_exact_flag(tmp_path):
    a = write(tmp_path, "a.events", EVENTS_A)
    b = write(tmp_path, "b.events", EVENTS_B)
    exact = json.loads(run("distance", a, b, "--exact").stdout)
    heur = json.loads(run("distance", a, b).stdout)
    assert exact["exact"] is True
    assert exact["distance"] <= heur["distance"] + 1e-9


def test_decide_exit_codes(tmp_path):
    a = write(tmp_path, "a.events", EVENTS_A)
    b = write(tmp_path, "b.events", EVENTS_B)
    same = run("decide", a, a, "-c", "0")
    assert same.returncode == 0
    assert same.stdout.strip() == "yes"
    diff = run("decide", a, b, "-c", "0")
    assert diff.returncode == 1
    assert diff.stdout.strip() == "no"
    assert run("decide", a, b, "-c", "1e9").returncode == 0


def test_matrix_csv(tmp_path):
    a = write(tmp_path, "a.events", EVENTS_A)
    b = write(tmp_path, "b.events", EVENTS_B)
    c = write(tmp_path, "c.events", EVENTS_A)
    r = run("matrix", a, b, c)
    assert r.returncode == 0, r.stderr
    lines = r.stdout.strip().splitlines()
    assert lines[0] == "name,a,b,c"
    rows = [line.split(",") for line in lines[1:]]
    cells = [[float(x) for x in row[1:]] for row in rows]
    assert [row[0] for row in rows] == ["a", "b", "c"]
    for i in range(3):
        assert cells[i][i] == 0.0
        for j in range(3):
            assert cells[i][j] == cells[j][i]
    assert cells[0][2] == 0.0  # identical inputs
    assert cells[0][1] > 0.0


def test_perturb_p_zero_round_trip(tmp_path):
    a = write(tmp_path, "a.events", EVENTS_A)
    r = run("perturb", a, "--model", "temporal-rewire", "--p", "0")
    assert r.returncode == 0, r.stderr
    assert r.stdout == EVENTS_A
    noisy = run("perturb", a, "--model", "deletion", "--p", "1", "--seed", "3")
    assert noisy.returncode == 0
    assert noisy.stdout == ""


def test_qp_export(tmp_path):
    a = write(tmp_path, "a.events", EVENTS_A)
    b = write(tmp_path, "b.events", EVENTS_B)
    r = run("qp-export", a, b)
    assert r.returncode == 0, r.stderr
    assert r.stdout.startswith("# dtgw binary quadratic model")
    assert r.stdout.rstrip().endswith("end")


def test_cluster_partition(tmp_path):
    files = [
        write(tmp_path, "a1.events", EVENTS_A),
        write(tmp_path, "a2.events", EVENTS_A),
        write(tmp_path, "b1.events", EVENTS_B),
        write(tmp_path, "b2.events", EVENTS_B),
    ]
    r = run("cluster", *files, "-k", "2")
    assert r.returncode == 0, r.stderr
    report = json.loads(r.stdout)
    groups = [sorted(group) for group in report["partition"]]
    assert sorted(groups) == [["a1", "a2"], ["b1", "b2"]]
    assert report["newick"].endswith(";")


def test_deanon_accuracy(tmp_path):
    # every vertex has a distinct degree series, so the zero mapping is unique
    a = write(tmp_path, "a.events", "0 a b\n0 a c\n20 a b\n40 b c\n")
    truth = write(tmp_path, "truth.json", json.dumps([["a", "a"], ["b", "b"], ["c", "c"]]))
    r = run("deanon", a, a, "--truth", truth)
    assert r.returncode == 0, r.stderr
    assert json.loads(r.stdout)["accuracy"] == 1.0


def test_manifest_and_overrides(tmp_path):
    a = write(tmp_path, "a.events", EVENTS_A)
    bad = write(tmp_path, "bad.json", json.dumps({"no_such_key": 1}))
    assert run("distance", a, a, "--manifest", bad).returncode == 3

    broken = write(tmp_path, "broken.json", json.dumps({"max_iter": 0}))
    assert run("distance", a, a, "--manifest", broken).returncode == 2
    fixed = run("distance", a, a, "--manifest", broken, "--max-iter", "5")
    assert fixed.returncode == 0, fixed.stderr

    manifest = write(tmp_path, "run.json", json.dumps({"inputs": [a, a], "exact": True}))
    r = run("distance", "--manifest", manifest)
    assert r.returncode == 0, r.stderr
    assert json.loads(r.stdout)["exact"] is True


def test_usage_and_budget_errors(tmp_path):
    assert run().returncode == 2
    assert run("distance", "--bogus-flag").returncode == 2
    a = write(tmp_path, "a.events", EVENTS_A)
    missing = run("distance", a, str(tmp_path / "nope.events"))
    assert missing.returncode == 3
    tiny = run("distance", a, a, "--exact", "--budget", "1")
    assert tiny.returncode == 4
