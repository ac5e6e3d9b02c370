"""Native KB text format and a lossy loader for OWL functional syntax."""
from __future__ import annotations

import bisect
import itertools
import re
from dataclasses import dataclass

from .syntax import (
    BOTTOM,
    TOP,
    And,
    Atomic,
    ConceptAssertion,
    GCI,
    KnowledgeBase,
    RoleAssertion,
    Some,
    canonicalize,
    conj,
    disjoint,
)


class ParseError(ValueError):
    def __init__(self, line: int, column: int, message: str, snippet: str = ""):
        self.line, self.column, self.message, self.snippet = line, column, message, snippet
        super().__init__(f"{line}:{column}: {message}" + (f" near {snippet!r}" if snippet else ""))


_TOKEN = re.compile(
    r"(?P<ws>\s+)|(?P<comment>#[^\n]*)|(?P<lp>\()|(?P<rp>\))"
    r"|(?P<name>[A-Za-z_][A-Za-z0-9_.:#/-]*)|(?P<bad>.)",
    re.S,
)


class _Positions:
    def __init__(self, text: str):
        self.starts = [0] + [m.end() for m in re.finditer("\n", text)]

    def __call__(self, offset: int) -> tuple:
        i = bisect.bisect_right(self.starts, offset) - 1
        return i + 1, offset - self.starts[i] + 1


class _Native:
    HEADS = ("SubClassOf", "DisjointClasses", "ClassAssertion", "PropertyAssertion")

    def __init__(self, text: str):
        self.pos = _Positions(text)
        self.end = len(text)
        self.toks = []
        for m in _TOKEN.finditer(text):
            kind = m.lastgroup
            if kind in ("ws", "comment"):
                continue
            if kind == "bad":
                self.fail(m.start(), "unexpected character", m.group())
            self.toks.append((kind, m.group(), m.start()))
        self.i = 0

    def fail(self, offset, message, snippet=""):
        line, col = self.pos(offset)
        raise ParseError(line, col, message, snippet)

    def peek(self, k=0):
        j = self.i + k
        return self.toks[j] if j < len(self.toks) else ("eof", "", self.end)

    def take(self, kind, what):
        tok = self.peek()
        if tok[0] != kind:
            self.fail(tok[2], f"expected {what}", tok[1])
        self.i += 1
        return tok

    def statements(self):
        while self.peek()[0] != "eof":
            yield self.statement()

    def statement(self):
        kind, head, off = self.peek()
        if kind != "name" or head not in self.HEADS:
            self.fail(off, "unknown statement head", head)
        self.i += 1
        self.take("lp", "'('")
        if head == "SubClassOf":
            ax = GCI(self.concept(), self.concept())
        elif head == "DisjointClasses":
            ax = disjoint(self.concept(), self.concept())
        elif head == "ClassAssertion":
            c = self.concept()
            ax = ConceptAssertion(c, self.name("individual name (ClassAssertion takes a concept and an individual)"))
        else:
            role = self.name("role name")
            subj = self.name("subject individual")
            ax = RoleAssertion(role, subj, self.name("object individual"))
        self.take("rp", f"')' closing {head}")
        return ax

    def name(self, what):
        return self.take("name", what)[1]

    def concept(self):
        kind, text, off = self.peek()
        if kind != "name":
            self.fail(off, "expected concept", text)
        self.i += 1
        if text in ("And", "Some") and self.peek()[0] == "lp":
            self.i += 1
            if text == "And":
                parts = [self.concept(), self.concept()]
                while self.peek()[0] != "rp":
                    parts.append(self.concept())
                self.i += 1
                return canonicalize(And(tuple(parts)))
            role = self.name("role name")
            filler = self.concept()
            self.take("rp", "')' closing Some")
            return Some(role, filler)
        if text == "Thing":
            return TOP
        if text == "Nothing":
            return BOTTOM
        return Atomic(text)


def parse_kb(text: str) -> KnowledgeBase:
    return KnowledgeBase(_Native(text).statements())


def parse_axiom(text: str):
    p = _Native(text)
    ax = p.statement()
    kind, tok, off = p.peek()
    if kind != "eof":
        p.fail(off, "trailing input after statement", tok)
    return ax


def serialize(kb: KnowledgeBase) -> str:
    return "".join(a.text + "\n" for a in kb.axioms)


# -- OWL functional syntax subset ---------------------------------------------

_OWL_TOKEN = re.compile(
    r'(?P<ws>\s+)|(?P<comment>#[^\n]*)|(?P<lp>\()|(?P<rp>\))|(?P<iri><[^>\s]*>)'
    r'|(?P<lit>"(?:[^"\\]|\\.)*"(?:\^\^(?:<[^>]*>|[^\s()]+)|@[A-Za-z0-9-]+)?)'
    r'|(?P<atom>[^\s()"<>]+)|(?P<bad>.)',
    re.S,
)

# Non-logical axioms: dropped without counting them as skipped.
_IGNORED = {
    "Prefix", "Import", "Annotation", "Declaration", "AnnotationAssertion",
    "SubAnnotationPropertyOf", "AnnotationPropertyDomain", "AnnotationPropertyRange",
}
_OWL = "http://www.w3.org/2002/07/owl#"


class _Unsupported(Exception):
    pass


@dataclass
class _SExpr:
    head: str
    args: list


def _owl_tree(text: str) -> list:
    pos = _Positions(text)
    stack = [_SExpr("", [])]
    opened = []
    for m in _OWL_TOKEN.finditer(text):
        kind = m.lastgroup
        if kind in ("ws", "comment"):
            continue
        if kind == "bad":
            raise ParseError(*pos(m.start()), "unexpected character", m.group())
        top = stack[-1].args
        if kind == "lp":
            if not top or not isinstance(top[-1], tuple) or top[-1][0] != "atom":
                raise ParseError(*pos(m.start()), "'(' without a head symbol", "(")
            stack.append(_SExpr(top.pop()[1], []))
            opened.append(m.start())
        elif kind == "rp":
            if len(stack) == 1:
                raise ParseError(*pos(m.start()), "unbalanced ')'", ")")
            node = stack.pop()
            opened.pop()
            stack[-1].args.append(node)
        else:
            top.append((kind, m.group()))
    if len(stack) > 1:
        raise ParseError(*pos(opened[-1]), "unclosed '('", stack[-1].head)
    return stack[0].args


class _OwlMapper:
    def __init__(self):
        self.prefixes: dict = {}

    def name(self, tok) -> str:
        if not isinstance(tok, tuple) or tok[0] not in ("atom", "iri"):
            raise _Unsupported
        kind, text = tok
        if kind == "iri":
            iri = text[1:-1]
            for pfx, base in sorted(self.prefixes.items(), key=lambda kv: -len(kv[1])):
                if base and iri.startswith(base) and len(iri) > len(base):
                    text = (pfx + ":" if pfx else "") + iri[len(base):]
                    break
            else:
                text = iri
        elif text.startswith(":"):
            text = text[1:]
        text = re.sub(r"[^A-Za-z0-9_.:#/-]", "_", text)
        if not text or not (text[0].isascii() and (text[0].isalpha() or text[0] == "_")):
            text = "_" + text
        if text in ("Thing", "Nothing"):
            text += "_"
        return text

    def expand(self, tok) -> str:
        kind, text = tok
        if kind == "iri":
            return text[1:-1]
        pfx, _, local = text.rpartition(":")
        return self.prefixes.get(pfx, pfx + ":") + local

    def concept(self, tok):
        if isinstance(tok, tuple):
            full = self.expand(tok)
            if full in (_OWL + "Thing", "owl:Thing"):
                return TOP
            if full in (_OWL + "Nothing", "owl:Nothing"):
                return BOTTOM
            return Atomic(self.name(tok))
        if tok.head == "ObjectIntersectionOf" and len(tok.args) >= 2:
            return conj(*(self.concept(a) for a in tok.args))
        if tok.head == "ObjectSomeValuesFrom" and len(tok.args) == 2:
            return Some(self.name(tok.args[0]), self.concept(tok.args[1]))
        raise _Unsupported

    def axioms(self, node: _SExpr) -> list:
        head = node.head
        args = [a for a in node.args if not (isinstance(a, _SExpr) and a.head == "Annotation")]
        if head == "SubClassOf" and len(args) == 2:
            return [GCI(self.concept(args[0]), self.concept(args[1]))]
        if head == "EquivalentClasses" and len(args) >= 2:
            out = []
            for c, d in itertools.combinations([self.concept(a) for a in args], 2):
                out += [GCI(c, d), GCI(d, c)]
            return out
        if head == "DisjointClasses" and len(args) >= 2:
            cs = [self.concept(a) for a in args]
            return [disjoint(c, d) for c, d in itertools.combinations(cs, 2)]
        if head == "ClassAssertion" and len(args) == 2:
            return [ConceptAssertion(self.concept(args[0]), self.name(args[1]))]
        if head == "ObjectPropertyAssertion" and len(args) == 3:
            return [RoleAssertion(*(self.name(a) for a in args))]
        raise _Unsupported


def load_owl_subset(text: str) -> tuple:
    """Load the EL-expressible part of an OWL functional-syntax document.

    Returns ``(kb, skipped)`` where ``skipped`` counts logical axioms that used
    an unsupported construct.
    """
    mapper = _OwlMapper()
    body = []
    for item in _owl_tree(text):
        if not isinstance(item, _SExpr):
            continue
        if item.head == "Prefix":
            toks = [a for a in item.args if isinstance(a, tuple)]
            if len(toks) == 2 and toks[1][0] == "iri":
                mapper.prefixes[toks[0][1].rstrip("=").rstrip(":")] = toks[1][1][1:-1]
        elif item.head == "Ontology":
            body.extend(x for x in item.args if isinstance(x, _SExpr))
        else:
            body.append(item)
    axioms, skipped = [], 0
    for node in body:
        if node.head in _IGNORED:
            continue
        try:
            axioms.extend(mapper.axioms(node))
        except (_Unsupported, ValueError):
            skipped += 1
    return KnowledgeBase(axioms), skipped
