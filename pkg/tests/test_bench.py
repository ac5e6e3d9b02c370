import csv

import pytest
from hypothesis import given, settings, strategies as st

from dlcontrast.bench import (
    CSV_FIELDS,
    BenchConfig,
    Limits,
    RunRecord,
    measure,
    read_csv,
    run_benchmark,
    select_cqs,
    summarize,
    write_csv,
    write_summary_csv,
)
from dlcontrast.contrast import explain_entity
from dlcontrast.parser import parse_kb
from dlcontrast.syntax import Atomic, ConceptAssertion

HEADER = ("kb_file,run_id,query_concept,fact_individual,foil_individual,fact_just_abox_size,"
          "foil_present_size,foil_missing_size,conflict_size,consistent_after_addition,"
          "divergence,runtime_ms,status")


def test_select_cqs(krun):
    cqs = select_cqs(krun, Limits(), seed=7)
    assert ("Hired", "alice", "bob") in cqs
    assert cqs == select_cqs(krun, Limits(), seed=7)
    for q, x, y in cqs:
        assert x != y


def test_select_cqs_needs_a_negative_instance():
    assert select_cqs(parse_kb("ClassAssertion(A x)\n"), Limits(), 0) == []


def test_select_cqs_prefers_derived_facts(krun):
    derived = {("Hired", "alice"), ("AIExpert", "alice"), ("Theorist", "bob")}
    cqs = select_cqs(krun, Limits(max_facts=1, max_foils=1), seed=3)
    for q, x, _ in cqs:
        if q in {"Hired", "AIExpert", "Theorist"}:
            assert (q, x) in derived


def test_run_benchmark_examples(fixtures_dir, tmp_path):
    paths = [fixtures_dir / "krun.dlkb", fixtures_dir / "krun_disjoint.dlkb"]
    recs = run_benchmark(paths, BenchConfig(runs_per_kb=5, seed=1))
    assert len(recs) == 10
    assert all(r.status == "ok" for r in recs)
    assert any(r.conflict_size == 2 for r in recs if r.kb_file == "krun_disjoint.dlkb")
    assert run_benchmark([], BenchConfig()) == []
    bad = tmp_path / "bad.dlkb"
    bad.write_text("SubClassOf(A\n")
    recs = run_benchmark([bad], BenchConfig())
    assert [r.status for r in recs] == ["error"]


def test_records_reverify(fixtures_dir, krun_disjoint):
    recs = run_benchmark([fixtures_dir / "krun_disjoint.dlkb"], BenchConfig(runs_per_kb=3, seed=2))
    for r in recs:
        ce = explain_entity(krun_disjoint, ConceptAssertion(Atomic(r.query_concept), r.fact_individual),
                            r.foil_individual)
        assert r.fact_just_abox_size == sum(not a.is_tbox for a in ce.fact_part) >= 1
        assert r.foil_missing_size == len(ce.foil_missing)
        assert r.conflict_size == len(ce.conflicts)
        assert r.consistent_after_addition == (r.conflict_size == 0)


def test_measure_fields(krun):
    m = measure(krun, "Hired", "alice", "bob")
    assert m["fact_just_abox_size"] == 1
    assert m["foil_present_size"] == 0
    assert m["foil_missing_size"] == 1
    assert m["divergence"] == 0
    # J(P) has three ABox axioms, J_t(Q) has Qualified(bob) and AI(ml); AI(ml) is shared
    assert m["common_axioms_ratio"] == pytest.approx(25.0)


def test_too_large_kbs_are_skipped(fixtures_dir):
    recs = run_benchmark([fixtures_dir / "krun.dlkb"], BenchConfig(max_axioms=5))
    assert [r.status for r in recs] == ["skipped"]


def test_csv_header_and_round_trip(tmp_path, fixtures_dir):
    p = tmp_path / "runs.csv"
    write_csv([], p)
    assert p.read_text().splitlines() == [HEADER]
    recs = run_benchmark([fixtures_dir / "krun_disjoint.dlkb"], BenchConfig(runs_per_kb=1))
    write_csv(recs, p)
    assert len(p.read_text().splitlines()) == 2
    assert read_csv(p) == recs
    assert ",".join(CSV_FIELDS) == HEADER


names = st.text(alphabet=st.characters(blacklist_categories=("Cs",), blacklist_characters="\x00"), max_size=8)


@settings(max_examples=50, deadline=None)
@given(st.lists(st.builds(
    RunRecord, names, st.integers(0, 99), names, names, names,
    st.integers(0, 9), st.integers(0, 9), st.integers(0, 9), st.integers(0, 9),
    st.booleans(), st.integers(0, 9), st.integers(0, 10**6), st.sampled_from(["ok", "skipped", "error"]),
), max_size=5))
def test_csv_round_trip_property(tmp_path_factory, recs):
    p = tmp_path_factory.mktemp("csv") / "r.csv"
    write_csv(recs, p)
    assert read_csv(p) == recs


def test_summarize_examples(tmp_path):
    one = RunRecord("k", 0, "Q", "a", "b", 2, 1, 1, 0, True, 0, 5)
    s = summarize([one])
    assert s.average("fact_just_abox_size") == 2
    assert s.average("foil_present_size") == 1
    assert s.average("foil_missing_size") == 1
    two = RunRecord("k", 1, "Q", "a", "c", 1, 0, 1, 2, False, 0, 7)
    s = summarize([one, two, RunRecord("k", 2, status="error")])
    assert s.conflict_rate_pct == 50.0
    assert s.consistency_rate_pct == 50.0
    assert s.n_ok == 2 and s.n_runs == 3
    assert s.metrics["conflict_size"] == (1.0, 0, 2)
    empty = summarize([])
    assert empty.empty and empty.n_ok == 0
    out = tmp_path / "overall_averages.csv"
    write_summary_csv(s, out)
    rows = list(csv.reader(out.open()))
    assert rows[0] == ["metric", "average", "min", "max"]
    assert ["conflict_rate_pct", "50.00", "", ""] in rows
