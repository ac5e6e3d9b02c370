"""ABox abduction over atomic and role assertions, bounded by size."""
from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import PreconditionError
from .justify import Justification, justify
from .reasoner import ELReasoner
from .syntax import (
    Atomic,
    Axiom,
    ConceptAssertion,
    KnowledgeBase,
    RoleAssertion,
    Signature,
    axiom_concept_names,
    axiom_individuals,
    sort_axioms,
)


@dataclass(frozen=True)
class Hypothesis:
    axioms: frozenset
    target: Axiom

    def __iter__(self):
        return iter(sort_axioms(self.axioms))

    def __len__(self):
        return len(self.axioms)


@dataclass(frozen=True)
class FoilJustification:
    true_part: frozenset
    missing_part: frozenset
    target: Axiom

    @property
    def axioms(self) -> frozenset:
        return self.true_part | self.missing_part


def candidate_space(kb: KnowledgeBase, target: Axiom) -> list:
    """Atomic concept and role assertions over the names of ``kb`` and ``target``.

    The target itself is always a candidate.  Assertions already in ``kb``
    are left out since adding them changes nothing.
    """
    sig: Signature = kb.signature
    inds = sorted(sig.individual_names | axiom_individuals(target))
    concepts = sorted(sig.concept_names | axiom_concept_names(target))
    cands = [ConceptAssertion(Atomic(c), i) for c in concepts for i in inds]
    cands += [RoleAssertion(r, s, o) for r in sorted(sig.role_names) for s in inds for o in inds]
    cands.append(target)
    return sort_axioms(a for a in set(cands) if a not in kb)


def abduce(kb: KnowledgeBase, target: Axiom, max_size: int) -> list:
    """All subset-minimal consistent hypotheses with at most ``max_size`` assertions.

    Ordered by size, then lexicographically on the sorted serializations.
    """
    if max_size < 0:
        raise ValueError("max_size must be non-negative")
    cands = candidate_space(kb, target)
    r = ELReasoner((*kb.axioms, *cands))
    base = r.mask(kb.axioms)
    if not r.is_consistent(base):
        raise PreconditionError("abduction needs a consistent KB")
    if r.entails(target, among=base):
        raise PreconditionError(f"{target} is already entailed")
    offset = len(kb.axioms)
    found: list = []
    dead: list = []  # minimal candidate sets inconsistent with kb
    for size in range(1, max_size + 1):
        for combo in itertools.combinations(range(len(cands)), size):
            s = frozenset(combo)
            if any(f <= s for f in found) or any(d <= s for d in dead):
                continue
            m = base.copy()
            m[[offset + i for i in combo]] = True
            if not r.is_consistent(m):
                dead.append(s)
                continue
            if r.entails(target, among=m):
                found.append(s)
    return [Hypothesis(frozenset(cands[i] for i in f), target) for f in found]


def foil_justification(kb: KnowledgeBase, h: Hypothesis) -> FoilJustification:
    """Justify the hypothesis target in kb ∪ h and split it by membership in kb."""
    j: Justification = justify(kb.union(h.axioms), h.target)
    return split_foil(kb, j)


def split_foil(kb: KnowledgeBase, j: Justification) -> FoilJustification:
    true = frozenset(a for a in j.axioms if a in kb)
    return FoilJustification(true, j.axioms - true, j.target)
