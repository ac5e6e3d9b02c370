"""Concepts, axioms and knowledge bases for EL with bottom.

Every node carries its canonical text; equality and hashing go through that
text, so two structurally equal objects are interchangeable in sets.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Iterator

NAME_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_.:#/-]*\Z")
RESERVED = frozenset({"Thing", "Nothing"})


def valid_name(name: str) -> bool:
    return bool(NAME_RE.match(name))


class _Node:
    """Shared equality, ordering and hashing on the serialized form."""

    _text: str

    def __eq__(self, other):
        if not isinstance(other, _Node):
            return NotImplemented
        return self._text == other._text

    def __ne__(self, other):
        eq = self.__eq__(other)
        return eq if eq is NotImplemented else not eq

    def __lt__(self, other):
        return self._text < other._text

    def __le__(self, other):
        return self._text <= other._text

    def __hash__(self):
        return hash(self._text)

    def __str__(self):
        return self._text

    @property
    def text(self) -> str:
        return self._text


class Concept(_Node):
    pass


@dataclass(frozen=True, eq=False, repr=False)
class Atomic(Concept):
    name: str
    _text: str = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if not valid_name(self.name) or self.name in RESERVED:
            raise ValueError(f"invalid concept name {self.name!r}")
        object.__setattr__(self, "_text", self.name)

    def __repr__(self):
        return f"Atomic({self.name!r})"


@dataclass(frozen=True, eq=False, repr=False)
class Top(Concept):
    _text: str = field(init=False, repr=False, compare=False, default="Thing")

    def __repr__(self):
        return "TOP"


@dataclass(frozen=True, eq=False, repr=False)
class Bottom(Concept):
    _text: str = field(init=False, repr=False, compare=False, default="Nothing")

    def __repr__(self):
        return "BOTTOM"


TOP = Top()
BOTTOM = Bottom()


@dataclass(frozen=True, eq=False, repr=False)
class And(Concept):
    conjuncts: tuple
    _text: str = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        cs = tuple(self.conjuncts)
        if not cs:
            raise ValueError("conjunction needs at least one conjunct")
        object.__setattr__(self, "conjuncts", cs)
        object.__setattr__(self, "_text", "And(" + " ".join(c.text for c in cs) + ")")

    def __repr__(self):
        return f"And{self.conjuncts!r}"


@dataclass(frozen=True, eq=False, repr=False)
class Some(Concept):
    role: str
    filler: Concept
    _text: str = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if not valid_name(self.role):
            raise ValueError(f"invalid role name {self.role!r}")
        object.__setattr__(self, "_text", f"Some({self.role} {self.filler.text})")

    def __repr__(self):
        return f"Some({self.role!r}, {self.filler!r})"


def canonicalize(c: Concept) -> Concept:
    """Flatten, dedupe and sort conjunctions; collapse singletons."""
    if isinstance(c, And):
        parts = {}
        for sub in c.conjuncts:
            sub = canonicalize(sub)
            for leaf in sub.conjuncts if isinstance(sub, And) else (sub,):
                parts[leaf.text] = leaf
        if len(parts) == 1:
            return next(iter(parts.values()))
        return And(tuple(parts[k] for k in sorted(parts)))
    if isinstance(c, Some):
        filler = canonicalize(c.filler)
        return c if filler is c.filler else Some(c.role, filler)
    return c


def conj(*cs: Concept) -> Concept:
    return canonicalize(And(cs))


def concept_names(c: Concept) -> set:
    if isinstance(c, Atomic):
        return {c.name}
    if isinstance(c, And):
        return set().union(*(concept_names(x) for x in c.conjuncts))
    if isinstance(c, Some):
        return concept_names(c.filler)
    return set()


def role_names(c: Concept) -> set:
    if isinstance(c, And):
        return set().union(*(role_names(x) for x in c.conjuncts))
    if isinstance(c, Some):
        return {c.role} | role_names(c.filler)
    return set()


def subconcepts(c: Concept) -> Iterator[Concept]:
    yield c
    if isinstance(c, And):
        for x in c.conjuncts:
            yield from subconcepts(x)
    elif isinstance(c, Some):
        yield from subconcepts(c.filler)


# -- axioms ------------------------------------------------------------------


class Axiom(_Node):
    is_tbox = False

    def __repr__(self):
        return f"<{self._text}>"


@dataclass(frozen=True, eq=False, repr=False)
class GCI(Axiom):
    sub: Concept
    sup: Concept
    _text: str = field(init=False, repr=False, compare=False)
    is_tbox = True

    def __post_init__(self):
        object.__setattr__(self, "sub", canonicalize(self.sub))
        object.__setattr__(self, "sup", canonicalize(self.sup))
        object.__setattr__(self, "_text", f"SubClassOf({self.sub.text} {self.sup.text})")


@dataclass(frozen=True, eq=False, repr=False)
class ConceptAssertion(Axiom):
    concept: Concept
    individual: str
    _text: str = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if not valid_name(self.individual):
            raise ValueError(f"invalid individual name {self.individual!r}")
        object.__setattr__(self, "concept", canonicalize(self.concept))
        object.__setattr__(self, "_text", f"ClassAssertion({self.concept.text} {self.individual})")


@dataclass(frozen=True, eq=False, repr=False)
class RoleAssertion(Axiom):
    role: str
    subject: str
    object: str
    _text: str = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        for n in (self.role, self.subject, self.object):
            if not valid_name(n):
                raise ValueError(f"invalid name {n!r}")
        object.__setattr__(
            self, "_text", f"PropertyAssertion({self.role} {self.subject} {self.object})"
        )


def disjoint(c1: Concept, c2: Concept) -> GCI:
    return GCI(conj(c1, c2), BOTTOM)


def axiom_individuals(a: Axiom) -> set:
    if isinstance(a, ConceptAssertion):
        return {a.individual}
    if isinstance(a, RoleAssertion):
        return {a.subject, a.object}
    return set()


def axiom_concept_names(a: Axiom) -> set:
    if isinstance(a, GCI):
        return concept_names(a.sub) | concept_names(a.sup)
    if isinstance(a, ConceptAssertion):
        return concept_names(a.concept)
    return set()


def axiom_role_names(a: Axiom) -> set:
    if isinstance(a, GCI):
        return role_names(a.sub) | role_names(a.sup)
    if isinstance(a, ConceptAssertion):
        return role_names(a.concept)
    return {a.role}


# -- signature, contrast pairs, renaming ---------------------------------------


@dataclass(frozen=True)
class Signature:
    concept_names: frozenset = frozenset()
    role_names: frozenset = frozenset()
    individual_names: frozenset = frozenset()

    @classmethod
    def of(cls, axioms: Iterable[Axiom]) -> "Signature":
        cs, rs, inds = set(), set(), set()
        for a in axioms:
            cs |= axiom_concept_names(a)
            rs |= axiom_role_names(a)
            inds |= axiom_individuals(a)
        return cls(frozenset(cs), frozenset(rs), frozenset(inds))


@dataclass(frozen=True)
class ContrastPair:
    kind: str  # "entity" or "concept"
    source: str
    target: str

    def __post_init__(self):
        if self.kind not in ("entity", "concept"):
            raise ValueError(f"unknown contrast kind {self.kind!r}")
        if self.source == self.target:
            raise ValueError("contrast pair needs two distinct names")

    def reverse(self) -> "ContrastPair":
        return ContrastPair(self.kind, self.target, self.source)


def _rename_concept(c: Concept, src: str, dst: str) -> Concept:
    if isinstance(c, Atomic):
        return Atomic(dst) if c.name == src else c
    if isinstance(c, And):
        parts = tuple(_rename_concept(x, src, dst) for x in c.conjuncts)
        if all(p is q for p, q in zip(parts, c.conjuncts)):
            return c
        return And(parts)
    if isinstance(c, Some):
        filler = _rename_concept(c.filler, src, dst)
        return c if filler is c.filler else Some(c.role, filler)
    return c


def rename(a: Axiom, pair: ContrastPair | None) -> Axiom:
    """Replace every occurrence of ``pair.source`` by ``pair.target``."""
    if pair is None:
        return a
    s, t = pair.source, pair.target
    if pair.kind == "entity":
        if isinstance(a, ConceptAssertion) and a.individual == s:
            return ConceptAssertion(a.concept, t)
        if isinstance(a, RoleAssertion) and s in (a.subject, a.object):
            return RoleAssertion(
                a.role, t if a.subject == s else a.subject, t if a.object == s else a.object
            )
        return a
    if isinstance(a, GCI):
        sub, sup = _rename_concept(a.sub, s, t), _rename_concept(a.sup, s, t)
        return a if (sub is a.sub and sup is a.sup) else GCI(sub, sup)
    if isinstance(a, ConceptAssertion):
        c = _rename_concept(a.concept, s, t)
        return a if c is a.concept else ConceptAssertion(c, a.individual)
    return a


# -- knowledge bases -----------------------------------------------------------


class KnowledgeBase:
    """Ordered, duplicate-free set of axioms; immutable."""

    def __init__(self, axioms: Iterable[Axiom] = ()):
        order: dict = {}
        for a in axioms:
            if not isinstance(a, Axiom):
                raise TypeError(f"not an axiom: {a!r}")
            order.setdefault(a, len(order))
        self._order = order
        self.axioms = tuple(order)
        self._signature = None
        self._cache: dict = {}

    @property
    def tbox(self) -> tuple:
        return tuple(a for a in self.axioms if a.is_tbox)

    @property
    def abox(self) -> tuple:
        return tuple(a for a in self.axioms if not a.is_tbox)

    def source_order(self, a: Axiom) -> int:
        return self._order[a]

    @property
    def signature(self) -> Signature:
        if self._signature is None:
            self._signature = Signature.of(self.axioms)
        return self._signature

    def union(self, extra: Iterable[Axiom]) -> "KnowledgeBase":
        return KnowledgeBase((*self.axioms, *extra))

    def restrict(self, keep: Iterable[Axiom]) -> "KnowledgeBase":
        keep = set(keep)
        return KnowledgeBase(a for a in self.axioms if a in keep)

    def __contains__(self, a) -> bool:
        return a in self._order

    def __iter__(self):
        return iter(self.axioms)

    def __len__(self):
        return len(self.axioms)

    def __eq__(self, other):
        if not isinstance(other, KnowledgeBase):
            return NotImplemented
        return self.axioms == other.axioms

    def __hash__(self):
        return hash(self.axioms)

    def __repr__(self):
        return f"KnowledgeBase(|T|={len(self.tbox)}, |A|={len(self.abox)})"


def signature(kb: KnowledgeBase) -> Signature:
    return kb.signature


def sort_axioms(axioms: Iterable[Axiom]) -> list:
    return sorted(axioms, key=lambda a: a.text)
