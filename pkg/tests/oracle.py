"""Slow reference implementations used to cross-check the real ones.

Entailment builds the canonical model directly from the unnormalized axioms:
one element per individual, one witness per existential filler, one for ⊤,
and one for the left side of a queried inclusion.  Everything else is brute
force over subsets.
"""
from __future__ import annotations

import itertools
from functools import lru_cache

from dlcontrast.syntax import (
    And,
    Atomic,
    Bottom,
    ConceptAssertion,
    GCI,
    RoleAssertion,
    Some,
    Top,
    axiom_concept_names,
    axiom_individuals,
    rename,
)

BOT = "⊥"


def _fillers(c, out):
    if isinstance(c, Some):
        out.add(c.filler)
        _fillers(c.filler, out)
    elif isinstance(c, And):
        for x in c.conjuncts:
            _fillers(x, out)


class Model:
    def __init__(self, axioms, extra_concepts=()):
        self.gcis = [a for a in axioms if isinstance(a, GCI)]
        fillers = set()
        for a in axioms:
            for c in _concepts_of(a):
                _fillers(c, fillers)
        for c in extra_concepts:
            _fillers(c, fillers)
        self.labels = {}
        self.edges = {}
        for a in axioms:
            for i in axiom_individuals(a):
                self._elem(("ind", i))
        self._elem(("top",))
        for f in fillers:
            self._elem(("w", f))
        for f in fillers:
            self.add(("w", f), f)
        for a in axioms:
            if isinstance(a, ConceptAssertion):
                self.add(("ind", a.individual), a.concept)
            elif isinstance(a, RoleAssertion):
                self.edges[("ind", a.subject)].add((a.role, ("ind", a.object)))

    def _elem(self, e):
        self.labels.setdefault(e, set())
        self.edges.setdefault(e, set())

    def add(self, e, c):
        if isinstance(c, Atomic):
            self.labels[e].add(c.name)
        elif isinstance(c, Bottom):
            self.labels[e].add(BOT)
        elif isinstance(c, And):
            for x in c.conjuncts:
                self.add(e, x)
        elif isinstance(c, Some):
            w = ("w", c.filler)
            self._elem(w)
            self.edges[e].add((c.role, w))

    def holds(self, c, e, depth=0) -> bool:
        if BOT in self.labels[e]:
            return True
        if isinstance(c, Top):
            return True
        if isinstance(c, Bottom):
            return False
        if isinstance(c, Atomic):
            return c.name in self.labels[e]
        if isinstance(c, And):
            return all(self.holds(x, e) for x in c.conjuncts)
        return any(r == c.role and self.holds(c.filler, t) for r, t in self.edges[e])

    def run(self):
        changed = True
        while changed:
            changed = False
            for e in list(self.labels):
                before = (len(self.labels[e]), len(self.edges[e]))
                for g in self.gcis:
                    if self.holds(g.sub, e):
                        self.add(e, g.sup)
                # an element with an unsatisfiable successor is unsatisfiable
                if any(BOT in self.labels[t] for _, t in self.edges[e]):
                    self.labels[e].add(BOT)
                if (len(self.labels[e]), len(self.edges[e])) != before:
                    changed = True
        return self

    def inconsistent(self) -> bool:
        return any(BOT in lab for e, lab in self.labels.items() if e[0] in ("ind", "top"))


def _concepts_of(a):
    if isinstance(a, GCI):
        return (a.sub, a.sup)
    if isinstance(a, ConceptAssertion):
        return (a.concept,)
    return ()


@lru_cache(maxsize=200_000)
def _consistent(axioms: frozenset) -> bool:
    return not Model(axioms).run().inconsistent()


@lru_cache(maxsize=400_000)
def _entails(axioms: frozenset, q) -> bool:
    if isinstance(q, RoleAssertion):
        return q in axioms or not _consistent(axioms)
    m = Model(axioms, _concepts_of(q))
    if isinstance(q, GCI):
        e = ("query",)
        m._elem(e)
        m.add(e, q.sub)
        m.run()
        return m.inconsistent() or m.holds(q.sup, e)
    m._elem(("ind", q.individual))
    m.run()
    return m.inconsistent() or m.holds(q.concept, ("ind", q.individual))


def consistent(axioms) -> bool:
    return _consistent(frozenset(axioms))


def entails(axioms, q) -> bool:
    return _entails(frozenset(axioms), q)


def minimal_subsets(universe, good) -> list:
    """All subset-minimal subsets of ``universe`` satisfying monotone ``good``."""
    universe = sorted(universe)
    found = []
    for k in range(len(universe) + 1):
        for combo in itertools.combinations(universe, k):
            s = frozenset(combo)
            if any(f <= s for f in found):
                continue
            if good(s):
                found.append(s)
    return found


def justifications(axioms, q) -> set:
    axioms = frozenset(axioms)
    if not entails(axioms, q):
        return set()
    return set(minimal_subsets(axioms, lambda s: entails(s, q)))


def candidates(axioms, target) -> list:
    inds = set(axiom_individuals(target))
    names = set(axiom_concept_names(target))
    roles = set()
    for a in axioms:
        inds |= axiom_individuals(a)
        names |= axiom_concept_names(a)
        if isinstance(a, RoleAssertion):
            roles.add(a.role)
        for c in _concepts_of(a):
            roles |= _roles(c)
    out = {ConceptAssertion(Atomic(n), i) for n in names for i in inds}
    out |= {RoleAssertion(r, s, o) for r in roles for s in inds for o in inds}
    out.add(target)
    return sorted(out - set(axioms))


def _roles(c):
    if isinstance(c, Some):
        return {c.role} | _roles(c.filler)
    if isinstance(c, And):
        return set().union(*(_roles(x) for x in c.conjuncts))
    return set()


def hypotheses(axioms, target, max_size) -> set:
    """Brute-force subset-minimal consistent hypotheses of bounded size."""
    axioms = frozenset(axioms)
    cands = candidates(axioms, target)
    found = []
    for k in range(1, max_size + 1):
        for combo in itertools.combinations(cands, k):
            s = frozenset(combo)
            if any(f <= s for f in found):
                continue
            if consistent(axioms | s) and entails(axioms | s, target):
                found.append(s)
    return set(found)


# -- contrastive explanations, written from the definitions --------------------


def rel_minus(j1, j2, pair):
    return frozenset(a for a in j1 if a not in j2 and rename(a, pair) not in j2)


def rel_minus_back(j1, j2, pair):
    image = {rename(b, pair) for b in j2}
    return frozenset(a for a in j1 if a not in j2 and a not in image)


def ce_parts(jp, jq, kb_axioms, pair):
    kb_axioms = frozenset(kb_axioms)
    true = frozenset(a for a in jq if a in kb_axioms)
    missing = frozenset(jq) - true
    return rel_minus(jp, true, pair), rel_minus_back(true, jp, pair), missing


def div(parts, pair):
    fact, present, missing = parts
    foil = present | missing
    return len(rel_minus(fact, foil, pair) | rel_minus_back(foil, fact, pair))


def lex(parts):
    return tuple(tuple(sorted(a.text for a in p)) for p in parts)


def all_ces(kb_axioms, fact, foil, pair, hyp_bound) -> list:
    kb_axioms = frozenset(kb_axioms)
    out = set()
    facts = justifications(kb_axioms, fact)
    for h in hypotheses(kb_axioms, foil, hyp_bound):
        for jq in justifications(kb_axioms | h, foil):
            for jp in facts:
                out.add(ce_parts(jp, jq, kb_axioms, pair))
    return sorted(out, key=lex)


def best_cardinality(ces, pair):
    return min(ces, key=lambda p: (sum(map(len, p)), div(p, pair), lex(p)))


def best_divergence(ces, pair):
    return min(ces, key=lambda p: (div(p, pair), sum(map(len, p)), lex(p)))
