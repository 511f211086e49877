import json
import os
from fractions import Fraction
from pathlib import Path

import jsonschema
import pytest

import diagbase

SOURCE = Path(os.environ.get("DIAGBASE_SOURCE_DIR", Path(__file__).resolve().parents[2]))


def test_catalog_and_version():
    assert "A5" in diagbase.catalog()
    assert "L2(8)" in diagbase.catalog()
    assert diagbase.REPORT_SCHEMA_VERSION == 1
    assert "thm1.1-k2" in diagbase.suite_names()


def test_suite_report_validates_against_schema():
    schema = json.loads((SOURCE / "schemas" / "report.schema.json").read_text())
    report = diagbase.run_suite("thm1.1-k2", T=["A5"], threads=2)
    jsonschema.validate(report, schema)
    assert report["pass"]
    assert len(report["assertions"]) == 5
    assert diagbase.failures(report) == []


def test_partition_suite_reports_evidence():
    report = diagbase.run_suite("partition-lemmas", n=[6], k_max=12, sim_n=[60], ceil_m_max=20)
    failed = {a["id"] for a in diagbase.failures(report)}
    assert failed == {"partition-lemmas/sigma/n=6/k=8/Q=A", "partition-lemmas/sigma/n=6/k=8/Q=S",
                      "partition-lemmas/sigma/n=6/k=12/Q=A", "partition-lemmas/sigma/n=6/k=12/Q=S"}


def test_base_stats_full_group():
    r = diagbase.base_stats("A5", 2, "full_W")
    assert r["b"] == 4
    assert r["greedy_sizes"] == [4]
    assert r["match"]
    twisted = diagbase.base_stats(config={"T": "A5", "k": 3, "preset": "custom", "top": "S", "q": "A"},
                                  irredundant=False)
    assert twisted["b"] == 2


def test_rc_bounds_exact_for_l2_8():
    r = diagbase.rc_bounds("L2_8", 2, "socle", max_len=4)
    assert (r["lower"], r["upper"], r["I"]) == (4, 4, 3)


def test_simulator_and_closed_forms():
    s = diagbase.greedy_refine_sim(60, 3600, "A")
    assert s["value"] == 4 and s["ell"] == 2
    assert diagbase.closed_forms(60, 3600, "S", "A", "A5") == (3, 4)
    assert diagbase.closed_forms(60, 2, "S", "S", "A5", True) == (4, 4)
    assert diagbase.ceil_chain(11, 3, 1)


def test_qtilde_and_criterion():
    exact, recount = diagbase.qtilde("A5", "5A")
    assert exact == recount == Fraction(10)
    c = diagbase.criterion("PSp", 3, 5)
    assert c["holds"] and c["value"] < Fraction(1, 100)


def test_errors_are_typed():
    with pytest.raises(diagbase.ResourceError):
        diagbase.base_stats("A5", 2, "socle", cap_omega=10)
    with pytest.raises(diagbase.ConfigError):
        diagbase.run_suite("no-such-suite")
    with pytest.raises(diagbase.DiagbaseError):
        diagbase.qtilde("A5", "13Z")
