"""Contrastive explanations: why the fact P holds rather than the foil Q.

A relative-partition explanation is a triple (fact part, present foil part,
missing foil part) plus a set of ABox conflicts.  Renaming under the
contrast pair lets axioms that differ only in the contrasted name count as
shared.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field, replace
from typing import Iterable

from .abduce import FoilJustification, Hypothesis, abduce, candidate_space, foil_justification, split_foil
from .errors import ContrastError, NoExplanation, PreconditionError
from .justify import Justification, _bits, inconsistency_justification, justify, justify_all
from .reasoner import ELReasoner, reasoner_for
from .syntax import (
    Atomic,
    Axiom,
    Concept,
    ConceptAssertion,
    ContrastPair,
    KnowledgeBase,
    RoleAssertion,
    rename,
    sort_axioms,
)

log = logging.getLogger(__name__)

CRITERIA = ("subset", "cardinality", "divergence")


# -- questions and explanations ------------------------------------------------


@dataclass(frozen=True)
class ContrastiveQuestion:
    fact: ConceptAssertion
    foil: ConceptAssertion
    pair: ContrastPair | None
    kind: str

    @classmethod
    def of(cls, fact: Axiom, foil: Axiom) -> "ContrastiveQuestion":
        if not (isinstance(fact, ConceptAssertion) and isinstance(foil, ConceptAssertion)):
            raise ContrastError("fact and foil must both be concept assertions")
        if fact.concept == foil.concept and fact.individual != foil.individual:
            return cls(fact, foil, ContrastPair("entity", fact.individual, foil.individual), "entity")
        if fact.individual == foil.individual and fact.concept != foil.concept:
            if isinstance(fact.concept, Atomic) and isinstance(foil.concept, Atomic):
                pair = ContrastPair("concept", fact.concept.name, foil.concept.name)
            else:
                log.warning("complex concept contrast: falling back to plain set difference")
                pair = None
            return cls(fact, foil, pair, "concept")
        raise ContrastError("foil must differ from the fact in exactly the individual or the concept")

    def validate(self, kb: KnowledgeBase, reasoner: ELReasoner | None = None) -> None:
        r = reasoner or reasoner_for(kb)
        if not r.is_consistent():
            raise PreconditionError("contrastive questions need a consistent KB")
        if not r.entails(self.fact):
            raise ContrastError(f"fact {self.fact} is not entailed")
        if r.entails(self.foil):
            raise ContrastError(f"foil {self.foil} is already entailed")


@dataclass(frozen=True, eq=False)
class ContrastiveExplanation:
    fact_part: frozenset
    foil_present: frozenset
    foil_missing: frozenset
    conflicts: frozenset = frozenset()
    fact_justification: Justification | None = field(default=None, repr=False)
    foil_justification: FoilJustification | None = field(default=None, repr=False)
    pair: ContrastPair | None = None
    bounded_optimal: bool = False

    @property
    def foil_part(self) -> frozenset:
        return self.foil_present | self.foil_missing

    @property
    def components(self) -> tuple:
        return self.fact_part, self.foil_present, self.foil_missing, self.conflicts

    @property
    def size(self) -> int:
        return len(self.fact_part | self.foil_present | self.foil_missing)

    @property
    def divergence(self) -> int:
        return divergence(self, self.pair)

    def lex_key(self) -> tuple:
        return tuple(tuple(a.text for a in sort_axioms(p)) for p in self.components[:3])

    def __eq__(self, other):
        if not isinstance(other, ContrastiveExplanation):
            return NotImplemented
        return self.components == other.components

    def __hash__(self):
        return hash(self.components)

    def to_dict(self, strategy: str = "relative") -> dict:
        def texts(s):
            return [a.text for a in sort_axioms(s)]

        return {
            "fact": texts(self.fact_part),
            "foil_present": texts(self.foil_present),
            "foil_missing": texts(self.foil_missing),
            "conflicts": texts(self.conflicts),
            "divergence": self.divergence,
            "strategy": strategy,
            "bounded_optimal": self.bounded_optimal,
        }


def _axioms(x) -> frozenset:
    if isinstance(x, (Justification, Hypothesis)):
        return x.axioms
    if isinstance(x, FoilJustification):
        return x.axioms
    return frozenset(x)


# -- set operations ------------------------------------------------------------


def relative_diff(j1: Iterable[Axiom], j2: Iterable[Axiom], pair: ContrastPair | None,
                  inverse: bool = False) -> frozenset:
    """Axioms of ``j1`` with no counterpart in ``j2`` under the renaming.

    Forward (default): keep α unless α or its renaming is in ``j2``.
    Inverse: keep α unless α is in ``j2`` or is the renaming of a member of
    ``j2``; this is the diff taken from the foil side back to the fact side.
    """
    j2 = frozenset(j2)
    if inverse:
        image = {rename(b, pair) for b in j2}
        return frozenset(a for a in j1 if a not in j2 and a not in image)
    return frozenset(a for a in j1 if a not in j2 and rename(a, pair) not in j2)


def relative_symdiff(a: Iterable[Axiom], b: Iterable[Axiom], pair: ContrastPair | None) -> frozenset:
    a, b = frozenset(a), frozenset(b)
    return relative_diff(a, b, pair) | relative_diff(b, a, pair, inverse=True)


def ce_symdiff(jp: Justification, jq: FoilJustification) -> frozenset:
    return _axioms(jp) ^ _axioms(jq)


def ce_lipton(jp: Justification, h) -> frozenset:
    return _axioms(jp) | _axioms(h)


def ce_full_partition(jp: Justification, jq: FoilJustification) -> ContrastiveExplanation:
    j = _axioms(jp)
    return ContrastiveExplanation(
        j - jq.true_part, jq.true_part - j, jq.missing_part,
        fact_justification=jp if isinstance(jp, Justification) else None,
        foil_justification=jq,
    )


def ce_relative(jp: Justification, jq: FoilJustification, pair: ContrastPair | None) -> ContrastiveExplanation:
    j = _axioms(jp)
    return ContrastiveExplanation(
        relative_diff(j, jq.true_part, pair),
        relative_diff(jq.true_part, j, pair, inverse=True),
        jq.missing_part,
        fact_justification=jp if isinstance(jp, Justification) else None,
        foil_justification=jq,
        pair=pair,
    )


def divergence(ce: ContrastiveExplanation, pair: ContrastPair | None = None) -> int:
    pair = ce.pair if pair is None else pair
    return len(relative_symdiff(ce.fact_part, ce.foil_present | ce.foil_missing, pair))


# -- conflicts -----------------------------------------------------------------


def compute_conflicts(kb: KnowledgeBase, foil_missing: Iterable[Axiom],
                      foil_support: Iterable[Axiom] = ()) -> frozenset:
    """ABox assertions that clash with the missing foil axioms.

    Repeatedly takes a minimal inconsistent subset of (T, (A \\ C) ∪ missing)
    and adds its ABox members to C, leaving out ``foil_support`` (the foil's
    own axioms already in the KB) unless nothing else is left.  Every block
    added is a minimal clash: dropping any one of its members from that
    inconsistent subset restores consistency.
    """
    missing = [a for a in foil_missing if a not in kb]
    r = ELReasoner((*kb.axioms, *missing))
    n_kb = len(kb.axioms)
    if not r.is_consistent(r.mask_from_indices(range(n_kb))):
        raise PreconditionError("conflict extraction needs a consistent KB")
    everything = (1 << len(r.universe)) - 1
    abox = sum(1 << i for i, a in enumerate(kb.axioms) if not a.is_tbox)
    support = sum(1 << r.index[a] for a in foil_support if a in r.index and not a.is_tbox)
    conflicts = 0
    while True:
        mask = everything & ~conflicts
        if r.is_consistent(r.mask_from_indices(_bits(mask))):
            break
        clash = inconsistency_justification(r, mask)
        block = clash & abox & ~support or clash & abox
        if not block:
            raise PreconditionError("the TBox together with the missing foil axioms is inconsistent")
        conflicts |= block
    return frozenset(r.universe[i] for i in _bits(conflicts))


# -- explanations --------------------------------------------------------------


def _entity_candidate(kb: KnowledgeBase, j: Justification, cq: ContrastiveQuestion) -> FoilJustification:
    renamed = frozenset(rename(a, cq.pair) for a in j.axioms)
    return split_foil(kb, Justification(renamed, cq.foil))


def explain_entity(kb: KnowledgeBase, fact: Axiom, foil_individual: str) -> ContrastiveExplanation:
    """Explanation obtained by renaming a fact justification onto the foil individual."""
    if not isinstance(fact, ConceptAssertion):
        raise ContrastError("fact must be a concept assertion")
    cq = ContrastiveQuestion.of(fact, ConceptAssertion(fact.concept, foil_individual))
    r = reasoner_for(kb)
    cq.validate(kb, r)
    j = justify(kb, fact, r)
    jq = _entity_candidate(kb, j, cq)
    ce = ce_relative(j, jq, cq.pair)
    support = [a for a in jq.true_part if not a.is_tbox]
    return replace(ce, conflicts=compute_conflicts(kb, jq.missing_part, support))


def _sort_key(ce: ContrastiveExplanation) -> tuple:
    return ce.divergence, ce.size, ce.lex_key()


def explain_concept(kb: KnowledgeBase, fact: Axiom, foil_concept, max_hyp: int,
                    just_bound: int = 16) -> list:
    """All relative explanations for a concept contrast, best first."""
    if not isinstance(fact, ConceptAssertion):
        raise ContrastError("fact must be a concept assertion")
    d = Atomic(foil_concept) if isinstance(foil_concept, str) else foil_concept
    cq = ContrastiveQuestion.of(fact, ConceptAssertion(d, fact.individual))
    cq.validate(kb)
    if max_hyp == 0:
        return []
    hyps = abduce(kb, cq.foil, max_hyp)
    facts = justify_all(kb, fact, just_bound)
    out = {}
    for h in hyps:
        jq = foil_justification(kb, h)
        conflicts = compute_conflicts(kb, jq.missing_part, [a for a in jq.true_part if not a.is_tbox])
        for j in facts:
            ce = replace(ce_relative(j, jq, cq.pair), conflicts=conflicts)
            out.setdefault(ce, ce)
    return sorted(out, key=_sort_key)


# -- preferred explanations ----------------------------------------------------


class _BitIndex:
    """Axioms as bit positions, with the renaming precomputed per bit."""

    def __init__(self, pair: ContrastPair | None):
        self.pair = pair
        self.pos: dict = {}
        self.axioms: list = []
        self.img: list = []
        self.pre: list = []

    def bit(self, a: Axiom) -> int:
        i = self.pos.get(a)
        if i is None:
            i = self.pos[a] = len(self.axioms)
            self.axioms.append(a)
            self.img.append(i)
            self.pre.append(0)
            ra = rename(a, self.pair)
            j = i if ra == a else self.bit(ra)
            self.img[i] = j
            self.pre[j] |= 1 << i
        return i

    def mask(self, axioms) -> int:
        m = 0
        for a in axioms:
            m |= 1 << self.bit(a)
        return m

    def rho(self, m: int) -> int:
        out = 0
        for i in _bits(m):
            out |= 1 << self.img[i]
        return out

    def preimage(self, m: int) -> int:
        out = 0
        for i in _bits(m):
            out |= self.pre[i]
        return out

    def sets(self, m: int) -> frozenset:
        return frozenset(self.axioms[i] for i in _bits(m))


def _valid_renaming(kb, cq, j, jq: FoilJustification, hyp_bound) -> bool:
    """Whether the renamed justification is also an enumerable candidate."""
    h = jq.missing_part
    if not h or len(h) > hyp_bound:
        return False
    for a in h:
        ok = a == cq.foil or isinstance(a, RoleAssertion) or (
            isinstance(a, ConceptAssertion) and isinstance(a.concept, Atomic))
        if not ok:
            return False
    r = ELReasoner((*kb.axioms, *sort_axioms(h)))
    if not r.is_consistent() or not r.entails(cq.foil):
        return False
    base = set(kb.axioms)
    for a in h:
        if r.entails(cq.foil, among=base | (h - {a})):
            return False
    for a in jq.axioms:
        if r.entails(cq.foil, among=jq.axioms - {a}):
            return False
    return True


def preferred_ce(kb: KnowledgeBase, cq: ContrastiveQuestion, criterion: str = "divergence",
                 just_bound: int = 64, hyp_bound: int = 1) -> ContrastiveExplanation:
    """Best relative explanation under ``criterion`` within the search bounds.

    Candidates pair every enumerated fact justification with every
    justification of the foil under every abduced hypothesis.  Ties are broken
    by divergence, then size, then the sorted serializations.  The result is
    flagged ``bounded_optimal`` when a larger search could still find a better
    candidate.
    """
    if criterion not in CRITERIA:
        raise ValueError(f"criterion must be one of {CRITERIA}")
    r = reasoner_for(kb)
    cq.validate(kb, r)
    pair = cq.pair
    facts = justify_all(kb, cq.fact, just_bound, r)
    truncated = facts.truncated
    foils = []
    for h in abduce(kb, cq.foil, hyp_bound):
        js = justify_all(kb.union(sort_axioms(h.axioms)), cq.foil, just_bound)
        truncated |= js.truncated
        foils.extend(split_foil(kb, j) for j in js)
    if cq.kind == "entity":
        cand = _entity_candidate(kb, facts[0], cq)
        if _valid_renaming(kb, cq, facts[0], cand, hyp_bound) and cand not in foils:
            foils.append(cand)
    if not foils:
        raise NoExplanation(f"no hypothesis of size <= {hyp_bound} for {cq.foil}")

    idx = _BitIndex(pair)
    fmask = [idx.mask(j.axioms) for j in facts]
    frho = [idx.rho(m) for m in fmask]
    qmask = [(idx.mask(jq.true_part), idx.mask(jq.missing_part)) for jq in foils]

    def div(f, p, m):
        foil = p | m
        d1 = f & ~(foil | idx.preimage(foil))
        d2 = foil & ~(f | idx.rho(f))
        return (d1 | d2).bit_count()

    best_score = None
    tied: dict = {}
    everything: dict = {}
    for qi, (t, m) in enumerate(qmask):
        blocked = t | idx.preimage(t)
        for fi, f_all in enumerate(fmask):
            f = f_all & ~blocked
            p = t & ~(f_all | frho[fi])
            size = f.bit_count() + p.bit_count() + m.bit_count()
            if criterion == "subset":
                everything.setdefault((f, p, m), (fi, qi, size))
                continue
            if criterion == "cardinality":
                if best_score is not None and size > best_score[0]:
                    continue
                score = (size, div(f, p, m))
            else:
                score = (div(f, p, m), size)
            if best_score is None or score < best_score:
                best_score, tied = score, {}
            if score == best_score:
                tied.setdefault((f, p, m), (fi, qi))

    if criterion == "subset":
        items = sorted(everything.items(), key=lambda kv: kv[1][2])
        minimal = {}
        for (f, p, m), (fi, qi, size) in items:
            dominated = any(
                f2 & ~f == 0 and p2 & ~p == 0 and m2 & ~m == 0
                for (f2, p2, m2) in minimal
            )
            if not dominated:
                minimal[(f, p, m)] = (fi, qi)
        scored = {k: (div(*k), sum(x.bit_count() for x in k)) for k in minimal}
        best_score = min(scored.values())
        tied = {k: minimal[k] for k, s in scored.items() if s == best_score}

    def lex(k):
        return tuple(tuple(sorted(a.text for a in idx.sets(x))) for x in k)

    key = min(tied, key=lex)
    fi, qi = tied[key]
    ce = ce_relative(facts[fi], foils[qi], pair)
    jq = foils[qi]
    ce = replace(ce, conflicts=compute_conflicts(kb, jq.missing_part, [a for a in jq.true_part if not a.is_tbox]))

    exhausted = hyp_bound >= len(candidate_space(kb, cq.foil))
    d, s = ce.divergence, ce.size
    if criterion == "cardinality":
        could_improve = hyp_bound + 1 < s or (hyp_bound + 1 == s and d > 0)
    else:
        could_improve = d > 0 or hyp_bound + 1 < s
    return replace(ce, bounded_optimal=truncated or (not exhausted and could_improve))
