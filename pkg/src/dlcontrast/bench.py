"""Benchmark harness: contrastive question sampling, timed runs, CSV logs."""
from __future__ import annotations

import csv
import logging
import random
import time
from dataclasses import dataclass, field, fields
from pathlib import Path

from .contrast import explain_entity
from .parser import ParseError, load_owl_subset, parse_kb
from .reasoner import ELReasoner, reasoner_for
from .syntax import Atomic, ConceptAssertion, KnowledgeBase, RoleAssertion

log = logging.getLogger(__name__)

CSV_FIELDS = (
    "kb_file", "run_id", "query_concept", "fact_individual", "foil_individual",
    "fact_just_abox_size", "foil_present_size", "foil_missing_size", "conflict_size",
    "consistent_after_addition", "divergence", "runtime_ms", "status",
)
METRICS = (
    "fact_just_abox_size", "foil_present_size", "foil_missing_size",
    "conflict_size", "divergence", "runtime_ms",
)


@dataclass
class RunRecord:
    kb_file: str
    run_id: int
    query_concept: str = ""
    fact_individual: str = ""
    foil_individual: str = ""
    fact_just_abox_size: int = 0
    foil_present_size: int = 0
    foil_missing_size: int = 0
    conflict_size: int = 0
    consistent_after_addition: bool = False
    divergence: int = 0
    runtime_ms: int = 0
    status: str = "ok"
    # Jaccard overlap of the ABox parts of J(P) and J_t(Q), in percent; not logged
    common_axioms_ratio: float | None = field(default=None, compare=False)

    def row(self) -> list:
        out = []
        for name in CSV_FIELDS:
            v = getattr(self, name)
            out.append(("true" if v else "false") if isinstance(v, bool) else v)
        return out


@dataclass
class Limits:
    max_queries: int = 5
    max_facts: int = 2
    max_foils: int = 2
    max_positive_fraction: float = 0.9


@dataclass
class BenchConfig:
    runs_per_kb: int = 5
    limits: Limits = field(default_factory=Limits)
    seed: int = 0
    max_axioms: int = 10_000


# -- question selection --------------------------------------------------------


def _related(kb: KnowledgeBase, a: str, b: str) -> bool:
    """Both individuals have an asserted atomic concept or a same-role edge in common."""
    concepts = {}
    edges = {}
    for ax in kb.abox:
        if isinstance(ax, ConceptAssertion) and isinstance(ax.concept, Atomic):
            concepts.setdefault(ax.individual, set()).add(ax.concept.name)
        elif isinstance(ax, RoleAssertion):
            edges.setdefault(ax.subject, set()).add(("out", ax.role))
            edges.setdefault(ax.object, set()).add(("in", ax.role))
    return bool(concepts.get(a, set()) & concepts.get(b, set()) or edges.get(a, set()) & edges.get(b, set()))


def select_cqs(kb: KnowledgeBase, limits: Limits | None = None, seed: int = 0,
               reasoner: ELReasoner | None = None) -> list:
    """(query, fact individual, foil individual) triples, deterministic for a seed.

    Triples are interleaved across queries so the first few runs cover
    different concepts.
    """
    limits = limits or Limits()
    r = reasoner or reasoner_for(kb)
    rng = random.Random(seed)
    sig = kb.signature
    inds = sorted(sig.individual_names)
    if not inds:
        return []
    types = r.classify_individuals()
    asserted = {(a.concept.name, a.individual) for a in kb.abox
                if isinstance(a, ConceptAssertion) and isinstance(a.concept, Atomic)}
    per_query = []
    queries = [q for q in sorted(sig.concept_names)]
    rng.shuffle(queries)
    for q in queries:
        pos = [i for i in inds if q in types.get(i, ())]
        neg = [i for i in inds if q not in types.get(i, ())]
        if not pos or not neg or len(pos) / len(inds) > limits.max_positive_fraction:
            continue
        derived = [i for i in pos if (q, i) not in asserted]
        stated = [i for i in pos if (q, i) in asserted]
        rng.shuffle(derived)
        rng.shuffle(stated)
        triples = []
        for x in derived + stated:
            foils = [y for y in neg if _related(kb, x, y)]
            if not foils:
                continue
            rng.shuffle(foils)
            triples += [(q, x, y) for y in foils[: limits.max_foils]]
            if len(triples) >= limits.max_facts * limits.max_foils:
                break
        if triples:
            per_query.append(triples)
        if len(per_query) == limits.max_queries:
            break
    out = []
    for k in range(max((len(t) for t in per_query), default=0)):
        out += [t[k] for t in per_query if k < len(t)]
    return out


# -- runs ----------------------------------------------------------------------


def load_kb(path) -> KnowledgeBase:
    path = Path(path)
    text = path.read_text(encoding="utf-8")
    if path.suffix in (".ofn", ".owl", ".omn"):
        kb, skipped = load_owl_subset(text)
        if skipped:
            log.info("%s: skipped %d axioms outside EL", path.name, skipped)
        return kb
    return parse_kb(text)


def _abox_jaccard(a, b) -> float:
    a = {x for x in a if not x.is_tbox}
    b = {x for x in b if not x.is_tbox}
    union = a | b
    return 100.0 * len(a & b) / len(union) if union else 100.0


def measure(kb: KnowledgeBase, query: str, x: str, y: str) -> dict:
    """One timed entity explanation, returning the record fields."""
    fact = ConceptAssertion(Atomic(query), x)
    t0 = time.perf_counter()
    ce = explain_entity(kb, fact, y)
    missing = ce.foil_missing
    consistent = ELReasoner((*kb.axioms, *missing)).is_consistent() if missing else True
    elapsed = time.perf_counter() - t0
    jp, jq = ce.fact_justification, ce.foil_justification
    return dict(
        fact_just_abox_size=sum(1 for a in ce.fact_part if not a.is_tbox),
        foil_present_size=sum(1 for a in ce.foil_present if not a.is_tbox),
        foil_missing_size=len(missing),
        conflict_size=len(ce.conflicts),
        consistent_after_addition=consistent,
        divergence=ce.divergence,
        runtime_ms=int(round(elapsed * 1000)),
        common_axioms_ratio=_abox_jaccard(jp.axioms, jq.true_part),
    )


def run_benchmark(kb_paths, config: BenchConfig | None = None) -> list:
    config = config or BenchConfig()
    records = []
    for path in kb_paths:
        name = Path(path).name
        try:
            kb = load_kb(path)
        except (OSError, ParseError, ValueError) as e:
            log.warning("%s: %s", name, e)
            records.append(RunRecord(name, 0, status="error"))
            continue
        if len(kb) > config.max_axioms:
            records.append(RunRecord(name, 0, status="skipped"))
            continue
        r = reasoner_for(kb)
        if not r.is_consistent():
            records.append(RunRecord(name, 0, status="skipped"))
            continue
        cqs = select_cqs(kb, config.limits, config.seed, r)
        for run in range(config.runs_per_kb):
            if not cqs:
                records.append(RunRecord(name, run, status="skipped"))
                continue
            q, x, y = cqs[run % len(cqs)]
            rec = RunRecord(name, run, q, x, y)
            try:
                for k, v in measure(kb, q, x, y).items():
                    setattr(rec, k, v)
            except Exception as e:  # one bad question must not sink the batch
                log.warning("%s run %d: %s", name, run, e)
                rec.status = "error"
            records.append(rec)
    return records


# -- CSV -----------------------------------------------------------------------


def write_csv(records, path) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        w.writerow(CSV_FIELDS)
        for rec in records:
            w.writerow(rec.row())


def read_csv(path) -> list:
    types = {f.name: f.type for f in fields(RunRecord)}
    out = []
    with open(path, newline="", encoding="utf-8") as fh:
        for row in csv.DictReader(fh):
            kw = {}
            for k in CSV_FIELDS:
                v = row[k]
                if types[k] == "int":
                    v = int(v)
                elif types[k] == "bool":
                    v = v == "true"
                kw[k] = v
            out.append(RunRecord(**kw))
    return out


# -- aggregation ---------------------------------------------------------------


@dataclass
class SummaryStats:
    n_runs: int = 0
    n_ok: int = 0
    empty: bool = True
    metrics: dict = field(default_factory=dict)  # name -> (average, min, max)
    common_axioms_ratio_pct: float = 0.0
    conflict_rate_pct: float = 0.0
    consistency_rate_pct: float = 0.0

    def average(self, metric: str) -> float:
        return self.metrics[metric][0]


def _pct(n, d):
    return 100.0 * n / d if d else 0.0


def summarize(records) -> SummaryStats:
    records = list(records)
    ok = [r for r in records if r.status == "ok"]
    if not ok:
        return SummaryStats(n_runs=len(records), metrics={m: (0.0, 0, 0) for m in METRICS})
    metrics = {}
    for m in METRICS:
        vals = [getattr(r, m) for r in ok]
        metrics[m] = (sum(vals) / len(vals), min(vals), max(vals))
    ratios = [r.common_axioms_ratio for r in ok if r.common_axioms_ratio is not None]
    return SummaryStats(
        n_runs=len(records),
        n_ok=len(ok),
        empty=False,
        metrics=metrics,
        common_axioms_ratio_pct=sum(ratios) / len(ratios) if ratios else 0.0,
        conflict_rate_pct=_pct(sum(r.conflict_size > 0 for r in ok), len(ok)),
        consistency_rate_pct=_pct(sum(r.consistent_after_addition for r in ok), len(ok)),
    )


def write_summary_csv(stats: SummaryStats, path) -> None:
    """``metric,average,min,max``; the percentage rows leave min and max empty."""
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        w.writerow(("metric", "average", "min", "max"))
        for m in METRICS:
            avg, lo, hi = stats.metrics.get(m, (0.0, 0, 0))
            w.writerow((m, f"{avg:.2f}", lo, hi))
        w.writerow(("common_axioms_ratio_pct", f"{stats.common_axioms_ratio_pct:.2f}", "", ""))
        w.writerow(("conflict_rate_pct", f"{stats.conflict_rate_pct:.2f}", "", ""))
        w.writerow(("consistency_rate_pct", f"{stats.consistency_rate_pct:.2f}", "", ""))
        w.writerow(("ok_runs", stats.n_ok, "", ""))
