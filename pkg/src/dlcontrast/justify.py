"""Subset-minimal justifications by deletion, and their enumeration."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .errors import PreconditionError
from .reasoner import ELReasoner, reasoner_for
from .syntax import Axiom, KnowledgeBase, sort_axioms


@dataclass(frozen=True)
class Justification:
    axioms: frozenset
    target: Axiom

    def __iter__(self):
        return iter(sort_axioms(self.axioms))

    def __len__(self):
        return len(self.axioms)

    def __contains__(self, a):
        return a in self.axioms


class JustificationList(list):
    """List of justifications with a flag telling whether the search was cut short."""

    truncated: bool = False


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class _Search:
    """Deletion and hitting-set search over bitmasks of universe positions."""

    def __init__(self, reasoner: ELReasoner, target: Axiom, candidates: int | None = None):
        self.r = reasoner
        self.target = target
        n = len(reasoner.universe)
        self.full = (1 << n) - 1 if candidates is None else candidates
        # branching order: lexicographic on the serialized axiom
        self.rank = sorted(range(n), key=lambda i: reasoner.universe[i].text)

    def entails(self, mask: int) -> bool:
        return self.r.entails(self.target, among=self.r.mask_from_indices(_bits(mask)))

    def shrink(self, mask: int) -> int:
        """Drop axioms in descending load order while the entailment survives."""
        for i in sorted(_bits(mask), reverse=True):
            trial = mask & ~(1 << i)
            if self.entails(trial):
                mask = trial
        return mask

    def enumerate(self, max_count: int):
        found: list = []
        closed: list = []
        seen = set()
        queue = deque([0])
        truncated = False
        while queue:
            path = queue.popleft()
            if any(c & path == c for c in closed):
                continue
            just = next((j for j in found if not j & path), None)
            if just is None:
                rest = self.full & ~path
                if not self.entails(rest):
                    closed.append(path)
                    continue
                if len(found) == max_count:
                    truncated = True
                    break
                just = self.shrink(rest)
                found.append(just)
            for i in self.rank:
                if just >> i & 1:
                    child = path | (1 << i)
                    if child not in seen:
                        seen.add(child)
                        queue.append(child)
        return found, truncated


def _search(kb, target, reasoner=None) -> _Search:
    r = reasoner or reasoner_for(kb)
    if not r.entails(target):
        raise PreconditionError(f"{target} is not entailed")
    return _Search(r, target)


def _to_just(s: _Search, mask: int) -> Justification:
    u = s.r.universe
    return Justification(frozenset(u[i] for i in _bits(mask)), s.target)


def justify(kb: KnowledgeBase, target: Axiom, reasoner: ELReasoner | None = None) -> Justification:
    """One justification; deterministic given the load order of ``kb``."""
    s = _search(kb, target, reasoner)
    return _to_just(s, s.shrink(s.full))


def justify_all(
    kb: KnowledgeBase, target: Axiom, max_count: int = 1000, reasoner: ELReasoner | None = None
) -> JustificationList:
    """Justifications found by a hitting-set tree, at most ``max_count`` of them."""
    if max_count < 1:
        raise ValueError("max_count must be positive")
    s = _search(kb, target, reasoner)
    masks, truncated = s.enumerate(max_count)
    out = JustificationList(_to_just(s, m) for m in masks)
    out.truncated = truncated
    return out


def inconsistency_justification(reasoner: ELReasoner, mask: int) -> int:
    """Deletion-minimal inconsistent subset of ``mask`` (bitmask over the universe)."""

    def bad(m):
        return not reasoner.is_consistent(reasoner.mask_from_indices(_bits(m)))

    for i in sorted(_bits(mask), reverse=True):
        trial = mask & ~(1 << i)
        if bad(trial):
            mask = trial
    return mask
