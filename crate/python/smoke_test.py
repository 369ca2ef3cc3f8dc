"""Smoke test for the ringext Python module.

Build first:  maturin develop -m crates/py/Cargo.toml
Run:          python python/smoke_test.py
"""

import json
import pathlib
import sys

import ringext

ROOT = pathlib.Path(__file__).resolve().parent.parent


def load(name):
    return ringext.Extension.from_json((ROOT / "instances" / name).read_text())


def main():
    y4 = load("truncated-y4.json")
    assert (y4.base_dim, y4.top_dim) == (1, 4), y4
    assert y4.is_subintegral() and not y4.is_t_closed()
    assert y4.interval_size() == 6
    assert y4.oracle_agrees()

    doc = json.loads(y4.analyze())
    assert doc["interval_length"] == 3
    assert doc["predicates"]["arithmetic"] is False
    assert doc["nagata"]["fip"] is False

    dot = y4.lattice("dot")
    assert dot.count(" -> ") == 7

    tower = load("f2-f64.json")
    nag = json.loads(tower.nagata())
    assert nag["fip"] is True and nag["cardinality"] == 4 and nag["lambda"] == 2

    report = json.loads(y4.check())
    assert all(r["status"] != "fail" for r in report["results"]), report

    for text in ringext.generate("local-subintegral", q=2, max_dim=5, count=5, seed=3):
        ext = ringext.Extension.from_json(text)
        assert ext.is_subintegral()
        agreement = json.loads(ringext.analyze(text))["nagata"]["criteria"]
        assert agreement["agree"], agreement

    try:
        y4.analyze(node_budget=2)
    except ringext.BudgetExceeded:
        pass
    else:
        raise AssertionError("expected BudgetExceeded")

    try:
        load("corrupted-table.json")
    except ValueError as e:
        assert "associativity" in str(e)
    else:
        raise AssertionError("expected ValueError")

    print("python smoke test: ok")
    return 0


if __name__ == "__main__":
    sys.exit(main())
