"""Translation of axioms into EL normal-form rules over atom names.

Atoms are plain strings.  Input concept names are used verbatim; every fresh
atom contains a bracket character, which the name grammar forbids, so fresh
atoms never clash with the input signature:

* ``{a}``      surrogate concept of individual ``a``
* ``[C]``      defined name for the complex concept whose text is ``C``
* ``⊤``/``⊥``  top and bottom

Rules are tuples:

* ``("sub", A, B)``        A ⊑ B
* ``("conj", A1, A2, B)``  A1 ⊓ A2 ⊑ B
* ``("exr", A, r, B)``     A ⊑ ∃r.B
* ``("exl", r, A, B)``     ∃r.A ⊑ B
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable

from ..syntax import (
    And,
    Atomic,
    Axiom,
    Bottom,
    Concept,
    ConceptAssertion,
    GCI,
    RoleAssertion,
    Some,
    Top,
)

TOP_ATOM = "⊤"
BOTTOM_ATOM = "⊥"


def surrogate(individual: str) -> str:
    return "{" + individual + "}"


def is_fresh(atom: str) -> bool:
    return atom[0] in "{[" or atom in (TOP_ATOM, BOTTOM_ATOM)


def atom_of(c: Concept) -> str:
    if isinstance(c, Atomic):
        return c.name
    if isinstance(c, Top):
        return TOP_ATOM
    if isinstance(c, Bottom):
        return BOTTOM_ATOM
    return "[" + c.text + "]"


@lru_cache(maxsize=None)
def definitions(c: Concept) -> tuple:
    """Rules giving every complex subconcept of ``c`` its defined atom."""
    if isinstance(c, Some):
        f = atom_of(c.filler)
        n = atom_of(c)
        return definitions(c.filler) + (("exr", n, c.role, f), ("exl", c.role, f, n))
    if isinstance(c, And):
        rules = []
        for x in c.conjuncts:
            rules.extend(definitions(x))
        n = atom_of(c)
        atoms = [atom_of(x) for x in c.conjuncts]
        rules.extend(("sub", n, a) for a in atoms)
        prev = atoms[0]
        for j in range(1, len(atoms)):
            if j == len(atoms) - 1:
                tgt = n
            else:
                tgt = "[And(" + " ".join(x.text for x in c.conjuncts[: j + 1]) + ")]"
            rules.append(("conj", prev, atoms[j], tgt))
            prev = tgt
        return tuple(rules)
    return ()


@lru_cache(maxsize=None)
def axiom_rules(a: Axiom) -> tuple:
    """``(main, defs)``: the rule stating ``a`` and the definitional rules."""
    if isinstance(a, GCI):
        return (("sub", atom_of(a.sub), atom_of(a.sup)),), definitions(a.sub) + definitions(a.sup)
    if isinstance(a, ConceptAssertion):
        return (("sub", surrogate(a.individual), atom_of(a.concept)),), definitions(a.concept)
    if isinstance(a, RoleAssertion):
        return (("exr", surrogate(a.subject), a.role, surrogate(a.object)),), ()
    raise TypeError(f"not an axiom: {a!r}")


def rule_atoms(rule: tuple) -> tuple:
    kind = rule[0]
    if kind == "sub":
        return rule[1], rule[2]
    if kind == "conj":
        return rule[1], rule[2], rule[3]
    if kind == "exr":
        return rule[1], rule[3]
    return rule[2], rule[3]


@dataclass(frozen=True)
class NormalizedKB:
    rules: frozenset
    individual_surrogates: dict = field(default_factory=dict)

    @property
    def atoms(self) -> set:
        out = {TOP_ATOM, BOTTOM_ATOM}
        for r in self.rules:
            out.update(rule_atoms(r))
        out.update(self.individual_surrogates.values())
        return out


def normalize(axioms: Iterable[Axiom]) -> NormalizedKB:
    rules, surr = set(), {}
    for a in axioms:
        main, defs = axiom_rules(a)
        rules.update(main)
        rules.update(defs)
        if isinstance(a, ConceptAssertion):
            surr[a.individual] = surrogate(a.individual)
        elif isinstance(a, RoleAssertion):
            surr[a.subject] = surrogate(a.subject)
            surr[a.object] = surrogate(a.object)
    return NormalizedKB(frozenset(rules), surr)
