"""In-memory RDF graph: terms, triples, indexes, N-Triples, isomorphism.

Design notes:

- Terms are immutable dataclasses (:class:`IRI`, :class:`BlankNode`,
  :class:`Literal`). Literal identity is (lexical form, datatype, language
  tag); there is no value-space canonicalization, so ``"01"^^xsd:int`` and
  ``"1"^^xsd:int`` are different terms.
- IRI validation is purely syntactic (a scheme followed by ``:``); nothing
  is ever resolved over the network.
- :class:`Graph` keeps a triple set plus subject-, predicate- and
  object-major indexes, so pattern matching scans only the smallest
  candidate set. Insertion is idempotent (set semantics).
- Serialization is canonical: statements sorted by their serialized
  (subject, predicate, object) forms, one per line, ``\\n`` endings. Byte
  identity of output is therefore a pure function of the triple set.
- Graphs are mutable while being built and immutable after :meth:`freeze`;
  frozen graphs are safe to share across concurrent readers.
- ``isomorphic`` runs a backtracking blank-node bijection search and
  refuses graphs above a small blank-node budget rather than risk a wrong
  answer on adversarial input.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Optional, Union

RDF_NS = "http://www.w3.org/1999/02/22-rdf-syntax-ns#"
XSD_NS = "http://www.w3.org/2001/XMLSchema#"
RDF_LANG_STRING = RDF_NS + "langString"
XSD_STRING = XSD_NS + "string"

_SCHEME_RE = re.compile(r"^[A-Za-z][A-Za-z0-9+.\-]*:")
_BLANK_LABEL_RE = re.compile(r"^[A-Za-z0-9_]+$")
_LANG_TAG_RE = re.compile(r"^[A-Za-z]+(-[A-Za-z0-9]+)*$")


class RdfError(ValueError):
    """Base class for RDF model and syntax errors."""


class NTriplesParseError(RdfError):
    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


class FrozenGraphError(RdfError):
    """Mutation attempted on a frozen graph."""


class BlankBudgetError(RdfError):
    """Isomorphism check refused: too many blank nodes for exact search."""


@dataclass(frozen=True, slots=True)
class IRI:
    value: str

    def __post_init__(self):
        if not _SCHEME_RE.match(self.value):
            raise RdfError(f"not an absolute IRI: {self.value!r}")

    def __repr__(self):
        return f"<{self.value}>"


@dataclass(frozen=True, slots=True)
class BlankNode:
    label: str

    def __post_init__(self):
        if not _BLANK_LABEL_RE.match(self.label):
            raise RdfError(f"invalid blank node label: {self.label!r}")

    def __repr__(self):
        return f"_:{self.label}"


@dataclass(frozen=True, slots=True)
class Literal:
    lexical: str
    datatype: str = XSD_STRING
    lang: Optional[str] = None

    def __post_init__(self):
        if self.lang is not None:
            if not _LANG_TAG_RE.match(self.lang):
                raise RdfError(f"invalid language tag: {self.lang!r}")
            if self.datatype not in (XSD_STRING, RDF_LANG_STRING):
                raise RdfError("language-tagged literal must use rdf:langString")
            object.__setattr__(self, "datatype", RDF_LANG_STRING)
        elif self.datatype == RDF_LANG_STRING:
            raise RdfError("rdf:langString literal requires a language tag")

    def __repr__(self):
        return nt_term(self)


Term = Union[IRI, BlankNode, Literal]


@dataclass(frozen=True, slots=True)
class Triple:
    s: Term
    p: Term
    o: Term

    def __post_init__(self):
        if isinstance(self.s, Literal):
            raise RdfError("literal subject not allowed")
        if not isinstance(self.p, IRI):
            raise RdfError("predicate must be an IRI")

    def __iter__(self):
        return iter((self.s, self.p, self.o))


def iri(value: str) -> IRI:
    return IRI(value)


def bnode(label: str) -> BlankNode:
    return BlankNode(label)


def lit(lexical: str, datatype: Optional[str] = None, lang: Optional[str] = None) -> Literal:
    if lang is not None:
        return Literal(lexical, RDF_LANG_STRING, lang)
    return Literal(lexical, datatype or XSD_STRING)


# ---------------------------------------------------------------------------
# Canonical N-Triples formatting


def _escape_literal(text: str) -> str:
    out = []
    for ch in text:
        if ch == "\\":
            out.append("\\\\")
        elif ch == '"':
            out.append('\\"')
        elif ch == "\n":
            out.append("\\n")
        elif ch == "\r":
            out.append("\\r")
        elif ch == "\t":
            out.append("\\t")
        elif ord(ch) < 0x20:
            out.append(f"\\u{ord(ch):04X}")
        else:
            out.append(ch)
    return "".join(out)


def _escape_iri(value: str) -> str:
    out = []
    for ch in value:
        if ch in '<>"{}|^`\\' or ord(ch) <= 0x20:
            out.append(f"\\u{ord(ch):04X}")
        else:
            out.append(ch)
    return "".join(out)


def nt_term(term: Term) -> str:
    """Serialize one term in N-Triples syntax."""
    if isinstance(term, IRI):
        return f"<{_escape_iri(term.value)}>"
    if isinstance(term, BlankNode):
        return f"_:{term.label}"
    if isinstance(term, Literal):
        body = f'"{_escape_literal(term.lexical)}"'
        if term.lang is not None:
            return f"{body}@{term.lang}"
        if term.datatype != XSD_STRING:
            return f"{body}^^<{_escape_iri(term.datatype)}>"
        return body
    raise RdfError(f"not a term: {term!r}")


def nt_triple(t: Triple) -> str:
    return f"{nt_term(t.s)} {nt_term(t.p)} {nt_term(t.o)} ."


def _triple_key(t: Triple) -> tuple[str, str, str]:
    return (nt_term(t.s), nt_term(t.p), nt_term(t.o))


# ---------------------------------------------------------------------------
# Graph


class Graph:
    """Indexed set of triples with deterministic iteration order."""

    __slots__ = ("_triples", "_by_s", "_by_p", "_by_o", "_frozen", "_blank_labels",
                 "_blank_counter", "_closure_cache")

    def __init__(self, triples: Iterable[Triple] = ()):
        self._triples: set[Triple] = set()
        self._by_s: dict[Term, set[Triple]] = {}
        self._by_p: dict[Term, set[Triple]] = {}
        self._by_o: dict[Term, set[Triple]] = {}
        self._frozen = False
        self._blank_labels: set[str] = set()
        self._blank_counter = 0
        self._closure_cache: dict[IRI, dict] = {}
        for t in triples:
            self.add(t)

    # -- mutation

    def add(self, t: Triple) -> bool:
        """Insert a triple; returns False when it was already present."""
        if self._frozen:
            raise FrozenGraphError("graph is frozen")
        if t in self._triples:
            return False
        self._triples.add(t)
        self._by_s.setdefault(t.s, set()).add(t)
        self._by_p.setdefault(t.p, set()).add(t)
        self._by_o.setdefault(t.o, set()).add(t)
        for term in (t.s, t.o):
            if isinstance(term, BlankNode):
                self._blank_labels.add(term.label)
        return True

    def add_all(self, triples: Iterable[Triple]) -> None:
        for t in triples:
            self.add(t)

    def new_blank(self) -> BlankNode:
        """A blank node with a label unused anywhere in this graph."""
        if self._frozen:
            raise FrozenGraphError("graph is frozen")
        while True:
            self._blank_counter += 1
            label = f"b{self._blank_counter}"
            if label not in self._blank_labels:
                self._blank_labels.add(label)
                return BlankNode(label)

    def freeze(self) -> "Graph":
        self._frozen = True
        return self

    @property
    def frozen(self) -> bool:
        return self._frozen

    def copy(self) -> "Graph":
        """An unfrozen copy with the same triples."""
        return Graph(self._triples)

    # -- access

    def __len__(self) -> int:
        return len(self._triples)

    def __contains__(self, t: Triple) -> bool:
        return t in self._triples

    def __iter__(self) -> Iterator[Triple]:
        return iter(sorted(self._triples, key=_triple_key))

    def __eq__(self, other) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self._triples == other._triples

    def __hash__(self):
        raise TypeError("Graph is not hashable")

    def match(self, s: Optional[Term] = None, p: Optional[Term] = None,
              o: Optional[Term] = None) -> list[Triple]:
        """All triples matching the pattern; None is a wildcard.

        Results come back in canonical (sorted serialization) order.
        """
        candidates: Optional[set[Triple]] = None
        for term, index in ((s, self._by_s), (p, self._by_p), (o, self._by_o)):
            if term is None:
                continue
            bucket = index.get(term)
            if not bucket:
                return []
            if candidates is None or len(bucket) < len(candidates):
                candidates = bucket
        if candidates is None:
            candidates = self._triples
        out = [t for t in candidates
               if (s is None or t.s == s)
               and (p is None or t.p == p)
               and (o is None or t.o == o)]
        out.sort(key=_triple_key)
        return out

    def objects(self, s: Term, p: Term) -> list[Term]:
        return [t.o for t in self.match(s, p, None)]

    def subjects(self, p: Term, o: Term) -> list[Term]:
        return [t.s for t in self.match(None, p, o)]

    def value(self, s: Term, p: Term) -> Optional[Term]:
        found = self.objects(s, p)
        return found[0] if found else None

    def closure_pairs(self, p: IRI) -> "dict[Term, set[Term]]":
        """Transitive closure (one or more hops) of the ``p`` edge relation.

        Cached per predicate; only safe to rely on once the graph is frozen.
        """
        cached = self._closure_cache.get(p)
        if cached is not None and self._frozen:
            return cached
        adjacency: dict[Term, set[Term]] = {}
        for t in self._by_p.get(p, ()):
            adjacency.setdefault(t.s, set()).add(t.o)
        reach: dict[Term, set[Term]] = {}
        for start in adjacency:
            seen: set[Term] = set()
            stack = list(adjacency[start])
            while stack:
                node = stack.pop()
                if node in seen:
                    continue
                seen.add(node)
                stack.extend(adjacency.get(node, ()))
            reach[start] = seen
        if self._frozen:
            self._closure_cache[p] = reach
        return reach


# ---------------------------------------------------------------------------
# N-Triples parsing

_UCHAR_RE = re.compile(r"\\u([0-9A-Fa-f]{4})|\\U([0-9A-Fa-f]{8})")
_IRIREF_RE = re.compile(r'<([^\x00-\x20<>"{}|^`]*)>')
_BLANK_RE = re.compile(r"_:([A-Za-z0-9_]+)")
_STRING_RE = re.compile(r'"((?:[^"\\\n\r]|\\.)*)"')
_LANG_RE = re.compile(r"@([A-Za-z]+(?:-[A-Za-z0-9]+)*)")

_ECHAR = {"t": "\t", "b": "\b", "n": "\n", "r": "\r", "f": "\f",
          '"': '"', "'": "'", "\\": "\\"}


def _unescape(raw: str, line: int) -> str:
    out = []
    i = 0
    n = len(raw)
    while i < n:
        ch = raw[i]
        if ch != "\\":
            out.append(ch)
            i += 1
            continue
        if i + 1 >= n:
            raise NTriplesParseError("dangling escape", line)
        nxt = raw[i + 1]
        if nxt in _ECHAR:
            out.append(_ECHAR[nxt])
            i += 2
        elif nxt == "u":
            hexpart = raw[i + 2:i + 6]
            if len(hexpart) != 4 or not all(c in "0123456789abcdefABCDEF" for c in hexpart):
                raise NTriplesParseError(f"bad \\u escape: {raw[i:i+6]!r}", line)
            out.append(chr(int(hexpart, 16)))
            i += 6
        elif nxt == "U":
            hexpart = raw[i + 2:i + 10]
            if len(hexpart) != 8 or not all(c in "0123456789abcdefABCDEF" for c in hexpart):
                raise NTriplesParseError(f"bad \\U escape: {raw[i:i+10]!r}", line)
            code = int(hexpart, 16)
            if code > 0x10FFFF:
                raise NTriplesParseError("\\U escape out of range", line)
            out.append(chr(code))
            i += 10
        else:
            raise NTriplesParseError(f"bad escape: \\{nxt}", line)
    return "".join(out)


def _parse_iri(raw: str, line: int) -> IRI:
    value = _unescape(raw, line)
    if not _SCHEME_RE.match(value):
        raise NTriplesParseError(f"non-absolute IRI: {value!r}", line)
    return IRI(value)


def _parse_nt_term(text: str, pos: int, line: int) -> tuple[Term, int]:
    ch = text[pos]
    if ch == "<":
        m = _IRIREF_RE.match(text, pos)
        if not m:
            raise NTriplesParseError("malformed IRI", line)
        return _parse_iri(m.group(1), line), m.end()
    if ch == "_":
        m = _BLANK_RE.match(text, pos)
        if not m:
            raise NTriplesParseError("malformed blank node label", line)
        return BlankNode(m.group(1)), m.end()
    if ch == '"':
        m = _STRING_RE.match(text, pos)
        if not m:
            raise NTriplesParseError("malformed string literal", line)
        lexical = _unescape(m.group(1), line)
        end = m.end()
        if end < len(text) and text[end] == "@":
            lm = _LANG_RE.match(text, end)
            if not lm:
                raise NTriplesParseError("malformed language tag", line)
            return Literal(lexical, RDF_LANG_STRING, lm.group(1)), lm.end()
        if text.startswith("^^", end):
            m2 = _IRIREF_RE.match(text, end + 2)
            if not m2:
                raise NTriplesParseError("malformed datatype IRI", line)
            dt = _parse_iri(m2.group(1), line)
            return Literal(lexical, dt.value), m2.end()
        return Literal(lexical), end
    raise NTriplesParseError(f"unexpected character {ch!r}", line)


def _skip_ws(text: str, pos: int) -> int:
    while pos < len(text) and text[pos] in " \t":
        pos += 1
    return pos


def parse_ntriples(text: str) -> Graph:
    """Parse a W3C N-Triples document (one statement per line).

    Blank node labels are preserved per document scope. ``#`` comment lines
    and trailing comments after the statement dot are allowed.
    """
    g = Graph()
    for lineno, raw_line in enumerate(text.splitlines(), start=1):
        stripped = raw_line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        pos = _skip_ws(raw_line, 0)
        s, pos = _parse_nt_term(raw_line, pos, lineno)
        pos = _skip_ws(raw_line, pos)
        p, pos = _parse_nt_term(raw_line, pos, lineno)
        if not isinstance(p, IRI):
            raise NTriplesParseError("predicate must be an IRI", lineno)
        pos = _skip_ws(raw_line, pos)
        o, pos = _parse_nt_term(raw_line, pos, lineno)
        pos = _skip_ws(raw_line, pos)
        if pos >= len(raw_line) or raw_line[pos] != ".":
            raise NTriplesParseError("expected '.' at end of statement", lineno)
        pos = _skip_ws(raw_line, pos + 1)
        if pos < len(raw_line) and raw_line[pos] != "#":
            raise NTriplesParseError("trailing content after '.'", lineno)
        try:
            g.add(Triple(s, p, o))
        except RdfError as exc:
            raise NTriplesParseError(str(exc), lineno) from exc
    return g


def serialize_ntriples(g: Graph) -> str:
    """Canonical N-Triples: sorted statements, one per line, ``\\n`` ends."""
    lines = sorted(nt_triple(t) for t in g._triples)
    if not lines:
        return ""
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Isomorphism


def _is_ground(t: Triple) -> bool:
    return not (isinstance(t.s, BlankNode) or isinstance(t.o, BlankNode))


def _blank_nodes(g: Graph) -> set[BlankNode]:
    found: set[BlankNode] = set()
    for t in g._triples:
        if isinstance(t.s, BlankNode):
            found.add(t.s)
        if isinstance(t.o, BlankNode):
            found.add(t.o)
    return found


def _signature(b: BlankNode, g: Graph) -> tuple:
    """Mapping-invariant profile of one blank node's incident triples."""
    parts = []
    for t in g.match(s=b):
        other = "?" if isinstance(t.o, BlankNode) else nt_term(t.o)
        parts.append(("s", nt_term(t.p), other, t.o == b))
    for t in g.match(o=b):
        if t.s == b:
            continue
        other = "?" if isinstance(t.s, BlankNode) else nt_term(t.s)
        parts.append(("o", nt_term(t.p), other, False))
    return tuple(sorted(parts))


def isomorphic(g1: Graph, g2: Graph, blank_budget: int = 20) -> bool:
    """True iff a blank-node bijection maps g1 exactly onto g2.

    Raises :class:`BlankBudgetError` when the combined blank-node count
    exceeds ``blank_budget`` (the search is exact backtracking, so the
    budget keeps it desk-scale instead of silently wrong).
    """
    b1 = sorted(_blank_nodes(g1), key=lambda b: b.label)
    b2 = sorted(_blank_nodes(g2), key=lambda b: b.label)
    if len(b1) + len(b2) > blank_budget:
        raise BlankBudgetError(
            f"{len(b1) + len(b2)} blank nodes exceed the budget of {blank_budget}")
    if len(g1) != len(g2) or len(b1) != len(b2):
        return False
    ground1 = {t for t in g1._triples if _is_ground(t)}
    ground2 = {t for t in g2._triples if _is_ground(t)}
    if ground1 != ground2:
        return False
    if not b1:
        return True

    blank1 = [t for t in g1._triples if not _is_ground(t)]
    blank2 = {t for t in g2._triples if not _is_ground(t)}
    sig2: dict[tuple, list[BlankNode]] = {}
    for b in b2:
        sig2.setdefault(_signature(b, g2), []).append(b)
    candidates: dict[BlankNode, list[BlankNode]] = {}
    for b in b1:
        candidates[b] = sig2.get(_signature(b, g1), [])
        if not candidates[b]:
            return False

    order = sorted(b1, key=lambda b: (len(candidates[b]), b.label))

    def apply(term: Term, mapping: dict) -> Term:
        return mapping.get(term, term) if isinstance(term, BlankNode) else term

    def consistent(mapping: dict) -> bool:
        # Triples whose blank endpoints are all mapped must land in g2.
        for t in blank1:
            if isinstance(t.s, BlankNode) and t.s not in mapping:
                continue
            if isinstance(t.o, BlankNode) and t.o not in mapping:
                continue
            if Triple(apply(t.s, mapping), t.p, apply(t.o, mapping)) not in blank2:
                return False
        return True

    used: set[BlankNode] = set()

    def backtrack(i: int, mapping: dict) -> bool:
        if i == len(order):
            image = {Triple(apply(t.s, mapping), t.p, apply(t.o, mapping))
                     for t in blank1}
            return image == blank2
        b = order[i]
        for cand in candidates[b]:
            if cand in used:
                continue
            mapping[b] = cand
            used.add(cand)
            if consistent(mapping) and backtrack(i + 1, mapping):
                return True
            used.discard(cand)
            del mapping[b]
        return False

    return backtrack(0, {})
