"""Knowledge-base generators for tests, benchmarks and fixtures."""
from __future__ import annotations

import random

from .syntax import (
    BOTTOM,
    TOP,
    Atomic,
    ConceptAssertion,
    GCI,
    KnowledgeBase,
    RoleAssertion,
    Some,
    conj,
    disjoint,
)


def kn_family(n: int) -> KnowledgeBase:
    """Chain of diamonds with 2**n justifications of A_n(x), each of size 2n+1."""
    A = [Atomic(f"A{i}") for i in range(n + 1)]
    axioms = [ConceptAssertion(A[0], "x")]
    for i in range(1, n + 1):
        X, Y = Atomic(f"X{i}"), Atomic(f"Y{i}")
        axioms += [GCI(A[i - 1], conj(X, Y)), GCI(X, A[i]), GCI(Y, A[i])]
    return KnowledgeBase(axioms)


def two_path_kb() -> KnowledgeBase:
    """Two assertions on x jointly reach C through an intermediate concept E."""
    A1, A2, E, C = (Atomic(s) for s in ("A1", "A2", "E", "C"))
    return KnowledgeBase([
        GCI(conj(A1, A2), E),
        GCI(E, C),
        ConceptAssertion(A1, "x"),
        ConceptAssertion(A2, "x"),
    ])


def chain_kb(n_axioms: int) -> KnowledgeBase:
    """A0(x), A0 ⊑ A1, ..., with a side individual y; n_axioms axioms in total."""
    k = n_axioms - 2
    axioms = [ConceptAssertion(Atomic("A0"), "x"), ConceptAssertion(Atomic("B"), "y")]
    axioms += [GCI(Atomic(f"A{i}"), Atomic(f"A{i + 1}")) for i in range(k)]
    return KnowledgeBase(axioms)


def random_concept(rng: random.Random, concepts, roles, depth=2, allow_bottom=False):
    roll = rng.random()
    if depth <= 0 or roll < 0.55:
        if allow_bottom and rng.random() < 0.05:
            return BOTTOM
        if rng.random() < 0.04:
            return TOP
        return Atomic(rng.choice(concepts))
    if roll < 0.8 or not roles:
        return conj(*(random_concept(rng, concepts, roles, depth - 1) for _ in range(rng.randint(2, 3))))
    return Some(rng.choice(roles), random_concept(rng, concepts, roles, depth - 1))


def random_kb(
    rng: random.Random,
    n_axioms: int,
    n_concepts: int = 4,
    n_roles: int = 2,
    n_individuals: int = 3,
    bottom: bool = True,
    depth: int = 2,
    abox_ratio: float = 0.5,
) -> KnowledgeBase:
    concepts = [f"C{i}" for i in range(n_concepts)]
    roles = [f"r{i}" for i in range(n_roles)]
    inds = [f"a{i}" for i in range(n_individuals)]
    axioms = []
    while len(axioms) < n_axioms:
        if rng.random() < abox_ratio:
            if roles and rng.random() < 0.35:
                axioms.append(RoleAssertion(rng.choice(roles), rng.choice(inds), rng.choice(inds)))
            else:
                c = random_concept(rng, concepts, roles, depth - 1) if rng.random() < 0.2 else Atomic(rng.choice(concepts))
                axioms.append(ConceptAssertion(c, rng.choice(inds)))
        elif bottom and rng.random() < 0.12:
            axioms.append(disjoint(Atomic(rng.choice(concepts)), Atomic(rng.choice(concepts))))
        else:
            sub = random_concept(rng, concepts, roles, depth)
            sup = random_concept(rng, concepts, roles, depth - 1, allow_bottom=bottom)
            axioms.append(GCI(sub, sup))
        axioms = list(dict.fromkeys(axioms))
    return KnowledgeBase(axioms)


def synthetic_ontology(n_axioms: int, seed: int, disjoint_pairs: int = 2) -> KnowledgeBase:
    """Ontology-shaped KB: class tree, existential definitions, a populated ABox.

    Axioms whose addition would make the KB inconsistent are dropped, so the
    result is always consistent.
    """
    from .reasoner import ELReasoner

    rng = random.Random(seed)
    n_classes = max(6, n_axioms // 4)
    n_roles = max(2, n_axioms // 60)
    n_inds = max(4, n_axioms // 5)
    classes = [f"K{i}" for i in range(n_classes)]
    roles = [f"p{i}" for i in range(n_roles)]
    inds = [f"i{i}" for i in range(n_inds)]
    parent = {c: (rng.choice(classes[:i]) if i else None) for i, c in enumerate(classes)}

    def ancestors(c):
        out = []
        while parent[c] is not None:
            c = parent[c]
            out.append(c)
        return out

    deep = [c for c in classes if len(ancestors(c)) >= 2]

    tbox = [GCI(Atomic(c), Atomic(p)) for c, p in parent.items() if p is not None]
    n_tbox = int(n_axioms * 0.45)
    while len(tbox) < n_tbox:
        roll = rng.random()
        a, b, c = rng.sample(classes, 3)
        r = rng.choice(roles)
        if roll < 0.45:
            tbox.append(GCI(Some(r, Atomic(a)), Atomic(b)))
        elif roll < 0.75:
            tbox.append(GCI(conj(Atomic(a), Atomic(b)), Atomic(c)))
        else:
            tbox.append(GCI(Atomic(a), Some(r, Atomic(b))))
        tbox = list(dict.fromkeys(tbox))
    # disjointness low in the hierarchy, between classes on different branches
    for _ in range(disjoint_pairs):
        if len(deep) >= 2:
            a, b = rng.sample(deep, 2)
            if a not in ancestors(b) and b not in ancestors(a):
                tbox.append(disjoint(Atomic(a), Atomic(b)))

    abox = []
    while len(tbox) + len(abox) < n_axioms * 1.3:
        if rng.random() < 0.6:
            leafish = classes[n_classes // 3:]
            abox.append(ConceptAssertion(Atomic(rng.choice(leafish)), rng.choice(inds)))
        else:
            s, o = rng.sample(inds, 2)
            abox.append(RoleAssertion(rng.choice(roles), s, o))
        abox = list(dict.fromkeys(abox))

    kept = list(dict.fromkeys(tbox))
    universe = kept + abox
    reasoner = ELReasoner(universe)
    mask = reasoner.mask(kept)
    for a in abox:
        if len(kept) >= n_axioms:
            break
        mask[reasoner.index[a]] = True
        if reasoner.is_consistent(mask):
            kept.append(a)
        else:
            mask[reasoner.index[a]] = False
    return KnowledgeBase(kept)
