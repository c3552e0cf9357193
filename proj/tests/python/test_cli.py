import os
import subprocess

import pytest

CLI = os.environ.get("LRCLUSTER_CLI")

pytestmark = pytest.mark.skipif(not CLI, reason="LRCLUSTER_CLI not set")


def run(*args, ok=True):
    p = subprocess.run([CLI, *map(str, args)], capture_output=True, text=True)
    if ok:
        assert p.returncode == 0, p.stderr
    return p


def test_pipeline(tmp_path):
    coll = tmp_path / "c.mcol"
    plan = tmp_path / "plan.json"
    store = tmp_path / "s.msvd"
    run("gen", "--profile", "shared-subspace", "--count", 10, "--rows", 24, "--cols", 4,
        "--true-rank", 3, "--seed", 1, "--output", coll)
    run("cluster", "--input", coll, "--algorithm", "residual", "--epsilon", 0.05, "--rank", 3,
        "--output", plan)
    run("compress", "--input", coll, "--plan", plan, "--output", store)
    report = run("verify", "--input", coll, "--store", store, "--plan", plan).stdout
    assert report.splitlines()[0].startswith("cluster_id")
    out = tmp_path / "blocks"
    run("reconstruct", "--input", store, "--all", "--output", out)
    assert len(list(out.iterdir())) == 10


def test_reports_are_deterministic(tmp_path):
    coll = tmp_path / "c.mcol"
    run("gen", "--count", 8, "--rows", 16, "--cols", 3, "--seed", 4, "--output", coll)
    a = run("bench-slack", "--input", coll, "--rank", 3, "--sizes", "2,4", "--trials", 3).stdout
    b = run("bench-slack", "--input", coll, "--rank", 3, "--sizes", "2,4", "--trials", 3).stdout
    assert a == b
    s1 = run("sweep", "--input", coll, "--epsilons", "0.1,0.3", "--ranks", "2,3", "--no-timing").stdout
    s2 = run("sweep", "--input", coll, "--epsilons", "0.1,0.3", "--ranks", "2,3", "--no-timing").stdout
    assert s1 == s2


def test_errors_exit_nonzero_with_one_line(tmp_path):
    p = run("cluster", "--input", tmp_path / "missing.mcol", "--rank", 2, ok=False)
    assert p.returncode != 0
    assert len(p.stderr.strip().splitlines()) == 1
    p = run("cluster", "--input", tmp_path / "missing.mcol", "--rank", 2, "--algorithm", "bogus", ok=False)
    assert p.returncode != 0
