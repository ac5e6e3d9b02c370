"""Entailment, consistency and instance checks by saturation.

An :class:`ELReasoner` compiles a fixed universe of axioms once.  Each query
then names the subset of that universe to reason over, so black-box
procedures that probe many subsets pay for compilation only once.  Every
query saturates exactly the selected subset from scratch.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .._accel import BACKENDS, default_backend
from ..syntax import (
    Axiom,
    Concept,
    ConceptAssertion,
    GCI,
    KnowledgeBase,
    RoleAssertion,
    axiom_individuals,
)
from ._kernels import KERNELS
from .normalize import (
    BOTTOM_ATOM,
    TOP_ATOM,
    NormalizedKB,
    atom_of,
    axiom_rules,
    definitions,
    is_fresh,
    surrogate,
)

_KINDS = ("sub", "conj", "exr", "exl")


class InconsistentKB(ValueError):
    """Raised where an answer would be degenerate on an inconsistent KB."""


class _Encoder:
    def __init__(self):
        self.atoms = {TOP_ATOM: 0, BOTTOM_ATOM: 1}
        self.names = [TOP_ATOM, BOTTOM_ATOM]
        self.surrogate_flags = [False, False]
        self.roles: dict = {}

    def atom(self, name: str) -> int:
        i = self.atoms.get(name)
        if i is None:
            i = self.atoms[name] = len(self.names)
            self.names.append(name)
            self.surrogate_flags.append(name[0] == "{")
        return i

    def role(self, name: str) -> int:
        return self.roles.setdefault(name, len(self.roles))

    def rule(self, r: tuple) -> tuple:
        kind = r[0]
        if kind == "sub":
            return self.atom(r[1]), self.atom(r[2])
        if kind == "conj":
            return self.atom(r[1]), self.atom(r[2]), self.atom(r[3])
        if kind == "exr":
            return self.atom(r[1]), self.role(r[2]), self.atom(r[3])
        return self.role(r[1]), self.atom(r[2]), self.atom(r[3])


def _run_kernel(backend: str, n: int, tables: dict, roots=None):
    sub, conj, exr, exl = (tables[k] for k in _KINDS)
    if roots is None:
        roots = np.arange(n, dtype=np.int64)
    return KERNELS[backend](
        n,
        sub[:, 0], sub[:, 1],
        conj[:, 0], conj[:, 1], conj[:, 2],
        exr[:, 0], exr[:, 1], exr[:, 2],
        exl[:, 0], exl[:, 1], exl[:, 2],
        np.asarray(roots, dtype=np.int64),
    )


_WIDTH = {"sub": 2, "conj": 3, "exr": 3, "exl": 3}
# columns of each table that hold atoms (the others hold roles)
_ATOM_COLS = {"sub": (0, 1), "conj": (0, 1, 2), "exr": (0, 2), "exl": (1, 2)}


class ELReasoner:
    """Saturation-based reasoner over subsets of a fixed axiom universe."""

    def __init__(self, axioms: Iterable[Axiom], backend: str | None = None):
        self.backend = backend or default_backend()
        if self.backend not in BACKENDS:
            raise ValueError(f"unknown backend {self.backend!r}")
        self.universe = tuple(dict.fromkeys(axioms))
        self.index = {a: i for i, a in enumerate(self.universe)}
        self._enc = _Encoder()
        self._rows: dict = {k: [] for k in _KINDS}
        self._defs_seen: set = set()
        self._tables = None
        self._last = None
        for i, a in enumerate(self.universe):
            main, defs = axiom_rules(a)
            for r in main:
                self._rows[r[0]].append((*self._enc.rule(r), i))
            self._add_defs(defs)
            for ind in axiom_individuals(a):
                self._enc.atom(surrogate(ind))

    # -- compilation --------------------------------------------------------

    def _add_defs(self, defs):
        for r in defs:
            if r not in self._defs_seen:
                self._defs_seen.add(r)
                self._rows[r[0]].append((*self._enc.rule(r), -1))
                self._tables = None
                self._last = None

    def _concept_atom(self, c: Concept) -> int:
        self._add_defs(definitions(c))
        return self._enc.atom(atom_of(c))

    def _compiled(self):
        if self._tables is None:
            self._tables = {
                k: np.array(rows, dtype=np.int64).reshape(-1, _WIDTH[k] + 1)
                for k, rows in self._rows.items()
            }
        return self._tables

    def mask(self, among: Iterable[Axiom] | None = None) -> np.ndarray:
        if among is None:
            return np.ones(len(self.universe), dtype=bool)
        if isinstance(among, np.ndarray):
            return among
        m = np.zeros(len(self.universe), dtype=bool)
        for a in among:
            m[self.index[a]] = True
        return m

    def mask_from_indices(self, indices: Iterable[int]) -> np.ndarray:
        m = np.zeros(len(self.universe), dtype=bool)
        m[list(indices)] = True
        return m

    # -- saturation ---------------------------------------------------------

    def _saturate(self, mask: np.ndarray, required: tuple = ()):
        """Saturate the selected subset; returns (S, local index of atoms)."""
        tables = self._compiled()
        key = (mask.tobytes(), required)
        if self._last is not None and self._last[0] == key:
            return self._last[1]
        keep_ext = np.append(mask, True)
        picked = {k: t[keep_ext[t[:, -1]], :-1] for k, t in tables.items()}
        used = [np.array((0, 1, *required), dtype=np.int64)]
        for k, t in picked.items():
            used.extend(t[:, c] for c in _ATOM_COLS[k])
        active = np.unique(np.concatenate(used))
        local = np.full(len(self._enc.names), -1, dtype=np.int64)
        local[active] = np.arange(len(active))
        for k, t in picked.items():
            t = t.copy()
            for c in _ATOM_COLS[k]:
                t[:, c] = local[t[:, c]]
            picked[k] = t
        flags = self._enc.surrogate_flags
        roots = [local[a] for a in (0, *required)]
        roots += [i for i, a in enumerate(active) if flags[a]]
        S = _run_kernel(self.backend, len(active), picked, roots)[0]
        result = (S, local, active)
        self._last = (key, result)
        return result

    def _inconsistent(self, S, active) -> bool:
        if S[0, 1]:
            return True
        flags = self._enc.surrogate_flags
        surr = np.array([flags[i] for i in active], dtype=bool)
        return bool(S[surr, 1].any())

    # -- queries ------------------------------------------------------------

    def is_consistent(self, among=None) -> bool:
        m = self.mask(among)
        S, _, active = self._saturate(m)
        return not self._inconsistent(S, active)

    def entails(self, axiom: Axiom, among=None) -> bool:
        m = self.mask(among)
        if isinstance(axiom, RoleAssertion):
            i = self.index.get(axiom)
            if i is not None and m[i]:
                return True
            return not self.is_consistent(m)
        if isinstance(axiom, ConceptAssertion):
            lhs = self._enc.atom(surrogate(axiom.individual))
            rhs = self._concept_atom(axiom.concept)
        elif isinstance(axiom, GCI):
            lhs = self._concept_atom(axiom.sub)
            rhs = self._concept_atom(axiom.sup)
        else:
            raise TypeError(f"not an axiom: {axiom!r}")
        S, local, active = self._saturate(m, (lhs, rhs))
        a, b = local[lhs], local[rhs]
        if S[a, b] or S[a, 1]:
            return True
        return self._inconsistent(S, active)

    def classify_individuals(self, among=None) -> dict:
        """Map each individual of the selected axioms to its entailed atomic concepts."""
        m = self.mask(among)
        S, local, active = self._saturate(m)
        if self._inconsistent(S, active):
            raise InconsistentKB("instance retrieval on an inconsistent KB")
        names = self._enc.names
        concepts = [(local[i], names[i]) for i in active if not is_fresh(names[i])]
        out = {}
        for idx in np.nonzero(m)[0]:
            for ind in axiom_individuals(self.universe[idx]):
                if ind in out:
                    continue
                row = S[local[self._enc.atoms[surrogate(ind)]]]
                out[ind] = {nm for j, nm in concepts if row[j]}
        return out

    def instances(self, concept: Concept, among=None) -> set:
        m = self.mask(among)
        c = self._concept_atom(concept)
        S, local, active = self._saturate(m, (c,))
        if self._inconsistent(S, active):
            raise InconsistentKB("instance retrieval on an inconsistent KB")
        out = set()
        for idx in np.nonzero(m)[0]:
            for ind in axiom_individuals(self.universe[idx]):
                if S[local[self._enc.atoms[surrogate(ind)]], local[c]]:
                    out.add(ind)
        return out


# -- module-level convenience API --------------------------------------------


def _as_kb(kb) -> KnowledgeBase:
    return kb if isinstance(kb, KnowledgeBase) else KnowledgeBase(kb)


def reasoner_for(kb, backend: str | None = None) -> ELReasoner:
    kb = _as_kb(kb)
    key = ("reasoner", backend or default_backend())
    r = kb._cache.get(key)
    if r is None:
        r = kb._cache[key] = ELReasoner(kb.axioms, backend)
    return r


def entails(kb, axiom: Axiom, backend: str | None = None) -> bool:
    return reasoner_for(kb, backend).entails(axiom)


def is_consistent(kb, backend: str | None = None) -> bool:
    return reasoner_for(kb, backend).is_consistent()


def instances(kb, concept: Concept, backend: str | None = None) -> set:
    return reasoner_for(kb, backend).instances(concept)


@dataclass(frozen=True)
class Closure:
    subsumptions: frozenset
    links: frozenset


def saturate(n: NormalizedKB, backend: str | None = None) -> Closure:
    enc = _Encoder()
    rows: dict = {k: [] for k in _KINDS}
    for r in sorted(n.rules):
        rows[r[0]].append(enc.rule(r))
    for s in sorted(n.individual_surrogates.values()):
        enc.atom(s)
    tables = {k: np.array(v, dtype=np.int64).reshape(-1, _WIDTH[k]) for k, v in rows.items()}
    roles = {i: r for r, i in enc.roles.items()}
    S, src, role, dst = _run_kernel(backend or default_backend(), len(enc.names), tables)
    a, b = np.nonzero(S)
    names = enc.names
    subs = frozenset((names[i], names[j]) for i, j in zip(a, b))
    links = frozenset((names[i], roles[r], names[j]) for i, r, j in zip(src, role, dst))
    return Closure(subs, links)
