"""``dlcontrast`` command line.

Exit status: 0 success or true, 1 a clean negative answer, 2 an error.
"""
from __future__ import annotations

import json
import logging
import os
import sys
from pathlib import Path

import click

from . import bench as bench_mod
from .abduce import abduce
from .contrast import (
    ContrastiveExplanation,
    ContrastiveQuestion,
    ce_full_partition,
    explain_concept,
    explain_entity,
    preferred_ce,
)
from .errors import NoExplanation, PreconditionError
from .justify import justify_all
from .parser import ParseError, parse_axiom
from .reasoner import reasoner_for
from .syntax import sort_axioms

STRATEGIES = ("relative", "full", "symdiff", "lipton")
PREFERENCES = ("divergence", "cardinality", "subset")


class _Fail(Exception):
    def __init__(self, message, code=2):
        super().__init__(message)
        self.code = code


def _texts(axioms):
    return [a.text for a in sort_axioms(axioms)]


def _emit(payload: dict, as_json: bool) -> None:
    if as_json:
        click.echo(json.dumps(payload, indent=2, ensure_ascii=False))
        return
    for key, value in payload.items():
        if key == "command":
            continue
        if isinstance(value, list) and value and isinstance(value[0], (list, dict)):
            click.echo(f"{key}:")
            for i, item in enumerate(value, 1):
                if isinstance(item, dict):
                    click.echo(f"  [{i}]")
                    for k, v in item.items():
                        click.echo(f"    {k}: {_human(v)}")
                else:
                    click.echo(f"  [{i}] {_human(item)}")
        else:
            click.echo(f"{key}: {_human(value)}")


def _human(v):
    if isinstance(v, list):
        return "{" + ", ".join(map(str, v)) + "}"
    if isinstance(v, dict):
        return ", ".join(f"{k}={_human(x)}" for k, x in v.items())
    if isinstance(v, bool):
        return "yes" if v else "no"
    return str(v)


def _run(command: str, as_json: bool, body):
    """Run ``body`` and turn its outcome into output plus an exit code."""
    try:
        payload, code = body()
    except _Fail as e:
        payload, code = {"command": command, "error": str(e)}, e.code
    except (ParseError, PreconditionError, OSError) as e:
        payload, code = {"command": command, "error": str(e)}, 2
    if "error" in payload and not as_json:
        click.echo(f"error: {payload['error']}", err=True)
    else:
        _emit(payload, as_json)
    sys.exit(code)


def _load(path):
    try:
        return bench_mod.load_kb(path)
    except OSError as e:
        raise _Fail(f"cannot read {path}: {e.strerror or e}") from e
    except ParseError as e:
        raise _Fail(f"{path}:{e}") from e


def _axiom(text):
    try:
        return parse_axiom(text)
    except ParseError as e:
        raise _Fail(f"axiom {text!r}: {e}") from e


@click.group()
@click.option("--backend", type=click.Choice(["numba", "numpy"]), default=None,
              help="Saturation kernel (default: numba when installed).")
@click.option("-v", "--verbose", is_flag=True)
def main(backend, verbose):
    """Justifications, abduction and contrastive explanations for EL knowledge bases."""
    if backend:
        os.environ["DLCONTRAST_BACKEND"] = backend
    logging.basicConfig(level=logging.INFO if verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")


@main.command()
@click.argument("kb_path")
@click.option("--axiom", "axiom_text", default=None, help="Entailment to test; omit to test consistency.")
@click.option("--json", "as_json", is_flag=True)
def check(kb_path, axiom_text, as_json):
    """Consistency check, or entailment check with --axiom."""

    def body():
        kb = _load(kb_path)
        r = reasoner_for(kb)
        result = r.is_consistent() if axiom_text is None else r.entails(_axiom(axiom_text))
        return {"command": "check", "kb": kb_path, "query": axiom_text, "result": result}, 0 if result else 1

    _run("check", as_json, body)


@main.command()
@click.argument("kb_path")
@click.option("--axiom", "axiom_text", required=True)
@click.option("--all", "all_", is_flag=True, help="Enumerate all justifications.")
@click.option("--max", "max_count", default=1000, show_default=True)
@click.option("--json", "as_json", is_flag=True)
def justify(kb_path, axiom_text, all_, max_count, as_json):
    """Minimal subsets of the KB entailing an axiom."""

    def body():
        kb = _load(kb_path)
        js = justify_all(kb, _axiom(axiom_text), max_count if all_ else 1)
        return {
            "command": "justify",
            "kb": kb_path,
            "axiom": axiom_text,
            "justifications": [_texts(j.axioms) for j in js],
            "truncated": bool(all_ and js.truncated),
        }, 0

    _run("justify", as_json, body)


@main.command("abduce")
@click.argument("kb_path")
@click.option("--axiom", "axiom_text", required=True)
@click.option("--max-size", default=1, show_default=True)
@click.option("--json", "as_json", is_flag=True)
def abduce_cmd(kb_path, axiom_text, max_size, as_json):
    """Minimal consistent sets of assertions that would entail an axiom."""

    def body():
        kb = _load(kb_path)
        hyps = abduce(kb, _axiom(axiom_text), max_size)
        return {
            "command": "abduce",
            "kb": kb_path,
            "axiom": axiom_text,
            "max_size": max_size,
            "hypotheses": [_texts(h.axioms) for h in hyps],
        }, 0 if hyps else 1

    _run("abduce", as_json, body)


def render(ce: ContrastiveExplanation, strategy: str) -> dict:
    """JSON form of ``ce`` under a presentation strategy.

    The set-based strategies are split into the three parts by where each
    axiom comes from: only the fact side, only the foil side in the KB, or
    the missing hypothesis.
    """
    if strategy == "relative":
        return ce.to_dict("relative")
    jp, jq = ce.fact_justification, ce.foil_justification
    if strategy in ("full", "symdiff"):
        full = ce_full_partition(jp, jq)
        parts = full.fact_part, full.foil_present, full.foil_missing
    else:
        parts = jp.axioms, frozenset(), jq.missing_part
    out = ContrastiveExplanation(*parts, conflicts=ce.conflicts, pair=ce.pair,
                                 bounded_optimal=ce.bounded_optimal)
    return out.to_dict(strategy)


@main.command()
@click.argument("kb_path")
@click.option("--fact", "fact_text", required=True)
@click.option("--foil", "foil_text", required=True)
@click.option("--strategy", type=click.Choice(STRATEGIES), default="relative", show_default=True)
@click.option("--prefer", type=click.Choice(PREFERENCES), default="divergence", show_default=True)
@click.option("--max-hyp", default=1, show_default=True, help="Largest hypothesis size searched.")
@click.option("--just-bound", default=64, show_default=True, help="Justifications enumerated per side.")
@click.option("--all", "all_", is_flag=True, help="List every candidate (concept contrasts).")
@click.option("--json", "as_json", is_flag=True)
def explain(kb_path, fact_text, foil_text, strategy, prefer, max_hyp, just_bound, all_, as_json):
    """Why FACT holds rather than FOIL."""

    def body():
        kb = _load(kb_path)
        cq = ContrastiveQuestion.of(_axiom(fact_text), _axiom(foil_text))
        if cq.kind == "concept" and all_:
            ces = explain_concept(kb, cq.fact, cq.foil.concept, max_hyp, just_bound)
        elif cq.kind == "entity" and prefer == "divergence" and strategy == "relative":
            ces = [explain_entity(kb, cq.fact, cq.foil.individual)]
        else:
            try:
                ces = [preferred_ce(kb, cq, prefer, just_bound, max_hyp)]
            except NoExplanation:
                ces = []
        return {
            "command": "explain",
            "kb": kb_path,
            "fact": fact_text,
            "foil": foil_text,
            "kind": cq.kind,
            "prefer": prefer,
            "explanations": [render(ce, strategy) for ce in ces],
        }, 0 if ces else 1

    _run("explain", as_json, body)


@main.command("bench")
@click.argument("directory", type=click.Path(file_okay=False))
@click.option("--runs", default=5, show_default=True)
@click.option("--seed", default=0, show_default=True)
@click.option("--out", "out_csv", default="runs.csv", show_default=True)
@click.option("--summary", "summary_csv", default=None,
              help="Summary CSV path (default: overall_averages.csv next to --out).")
@click.option("--max-queries", default=5, show_default=True)
@click.option("--json", "as_json", is_flag=True)
def bench_cmd(directory, runs, seed, out_csv, summary_csv, max_queries, as_json):
    """Run entity explanations over every KB in DIRECTORY and log them."""

    def body():
        d = Path(directory)
        if not d.is_dir():
            raise _Fail(f"not a directory: {directory}")
        paths = sorted(p for p in d.iterdir() if p.suffix in (".dlkb", ".ofn", ".owl"))
        config = bench_mod.BenchConfig(runs_per_kb=runs, seed=seed,
                                       limits=bench_mod.Limits(max_queries=max_queries))
        records = bench_mod.run_benchmark(paths, config)
        bench_mod.write_csv(records, out_csv)
        summary_path = summary_csv or str(Path(out_csv).with_name("overall_averages.csv"))
        stats = bench_mod.summarize(records)
        bench_mod.write_summary_csv(stats, summary_path)
        return {
            "command": "bench",
            "csv": out_csv,
            "summary_csv": summary_path,
            "records": len(records),
            "summary": {
                "n_runs": stats.n_runs,
                "n_ok": stats.n_ok,
                "empty": stats.empty,
                "metrics": {k: list(v) for k, v in stats.metrics.items()},
                "common_axioms_ratio_pct": round(stats.common_axioms_ratio_pct, 2),
                "conflict_rate_pct": round(stats.conflict_rate_pct, 2),
                "consistency_rate_pct": round(stats.consistency_rate_pct, 2),
            },
        }, 0

    _run("bench", as_json, body)


if __name__ == "__main__":
    main()
