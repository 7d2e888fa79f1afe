import json

import pytest

import salcheck


def test_catalog_has_fourteen_sorted_entries():
    entries = salcheck.catalog()
    ids = [e["id"] for e in entries]
    assert len(ids) == 14
    assert ids == sorted(ids)
    assert [e["id"] for e in entries if e["known_buggy"]] == ["ew-flag-buggy"]


def test_buggy_flag_report():
    report = salcheck.check("ew-flag-buggy", tests=50, seed=42)
    assert report["schema"] == "salcheck/1"
    cx = report["counterexample"]
    assert cx["property"] in ("BottomUpStep", "LinearizationExists")
    assert sum(1 for s in cx["recipe"]["steps"] if s["type"] == "do") <= 4


def test_counter_passes_and_report_is_deterministic():
    a = salcheck.check_json("ctr-inc-mrdt", tests=100, seed=7)
    b = salcheck.check_json("ctr-inc-mrdt", tests=100, seed=7)
    assert a == b
    assert "counterexample" not in json.loads(a)


def test_render_round_trip():
    text = salcheck.check_json("ew-flag-buggy", tests=20, seed=1)
    assert salcheck.render(text, "json") == text
    dot = salcheck.render(text, "dot")
    assert dot.startswith("digraph")
    with pytest.raises(ValueError):
        salcheck.render(text[: len(text) // 2], "text")


def test_demos():
    assert salcheck.demo("or-set-mrdt")["final_state"] == "#[(1, 3)]#"
    buggy = salcheck.demo("ew-flag-buggy")
    assert buggy["anomalous"]
    assert "(2, true)" in buggy["text"] and "(2, false)" in buggy["text"]
    assert not salcheck.demo("ew-flag-fixed")["anomalous"]


def test_oracle_and_final_state():
    recipe = salcheck.demo("or-set-mrdt")["recipe"]
    assert salcheck.final_state("or-set-mrdt", recipe) == "#[(1, 3)]#"
    assert salcheck.oracle("or-set-mrdt", recipe)["found"]


def test_run_cli_exit_codes():
    code, out, _ = salcheck.run_cli(["list"])
    assert code == 0 and "KNOWN-BUGGY" in out
    code, _, err = salcheck.run_cli(["check", "nosuch"])
    assert code == 2 and "nosuch" in err
