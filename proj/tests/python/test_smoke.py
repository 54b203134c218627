"""Smoke tests for the Python bindings."""

import json
import os
import subprocess

import pytest

import autohd


def test_version():
    assert autohd.__version__


def test_builtins_listed():
    names = autohd.builtin_names()
    assert set(names) == {
        "bw_misplaced_plus_distance",
        "g24_min_expr_gap",
        "cube_nonuniform_faces",
    }
    for name in names:
        parsed = autohd.parse_heuristic(autohd.builtin_source(name), name.split("_")[0]
                                        .replace("bw", "blocksworld")
                                        .replace("g24", "game24")
                                        .replace("cube", "cube2x2"))
        assert parsed["ok"], parsed


def test_gen_solve_oracle_roundtrip():
    records = autohd.gen_dataset("cube2x2", {"buckets": {"1": 2, "2": 2}}, seed=7)
    assert len(records) == 4
    for record in records:
        oracle = autohd.oracle("cube2x2", record)
        assert oracle["optimal_depth"] == record["optimal_moves"]

        result = autohd.solve("cube2x2", record,
                              heuristic="builtin:cube_nonuniform_faces")
        assert result["status"] == "solved"
        plan = result["plans"][0]
        assert plan["valid"]
        assert plan["length"] == record["optimal_moves"]

        check = autohd.validate("cube2x2", record, plan["actions"])
        assert check["valid"], check


def test_game24_solve_and_heuristic():
    record = {"id": "t", "numbers": [4, 4, 6, 8]}
    value = autohd.heuristic_value("game24", record, "builtin:g24_min_expr_gap")
    assert value["value"] == 0.0

    result = autohd.solve("game24", record, heuristic="builtin:g24_min_expr_gap",
                          algorithm="greedy", num_solutions=3)
    assert result["status"] == "solved"
    assert 1 <= len(result["plans"]) <= 3
    assert all(plan["valid"] for plan in result["plans"])


def test_parse_errors_are_reported():
    bad = autohd.parse_heuristic("foo(state", "cube2x2")
    assert not bad["ok"]
    assert "foo" in bad["error"]


def test_validate_rejects_bad_plans():
    record = {"id": "t", "numbers": [4, 4, 6, 8]}
    check = autohd.validate("game24", record, ["4 + 4"])
    assert not check["valid"]
    assert "goal unmet" in check["reason"]


def test_evolve_stub_archive_shape():
    records = autohd.gen_dataset("cube2x2", {"buckets": {"1": 2, "2": 2}}, seed=9)
    archive = autohd.evolve_stub("cube2x2", records, b=2, generations=1, seed=3)
    assert len(archive["generations"]) == 2
    assert archive["global_best"]["accuracy"] >= archive["generations"][0]["best"]["accuracy"]


def test_prompt_templates_available():
    names = autohd.prompt_template_names()
    assert "propose_cube2x2" in names
    rendered = autohd.render_prompt("propose_cube2x2", {})
    assert "Heuristic Description:" in rendered


@pytest.mark.skipif("AUTOHD_CLI" not in os.environ, reason="CLI path not provided")
def test_cli_agrees_with_bindings(tmp_path):
    dataset = tmp_path / "cube.jsonl"
    records = autohd.gen_dataset("cube2x2", {"buckets": {"2": 1}}, seed=11)
    dataset.write_text("\n".join(json.dumps(r) for r in records) + "\n")

    out = subprocess.run(
        [os.environ["AUTOHD_CLI"], "solve", "--domain", "cube2x2", "--dataset",
         str(dataset), "--heuristic", "builtin:cube_nonuniform_faces"],
        capture_output=True, text=True)
    assert out.returncode == 0, out.stdout + out.stderr
    assert "status: solved" in out.stdout

    native = autohd.solve("cube2x2", records[0],
                          heuristic="builtin:cube_nonuniform_faces")
    assert native["status"] == "solved"
