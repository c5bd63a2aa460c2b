"""SPARQL-subset parser and evaluator.

The grammar is frozen to what the competency-question catalogue needs:

- ``SELECT [DISTINCT] ?vars|* WHERE { ... } [ORDER BY ?v ...]``
- basic graph patterns with ``;`` / ``,`` sugar and the ``a`` keyword;
- a one-or-more-hops closure modifier ``+`` on IRI predicates;
- ``FILTER`` with ``= != < >`` comparisons, ``BOUND`` / ``!BOUND`` and
  ``REGEX(?var, "pattern")``;
- ``VALUES ?var { term ... }`` inline bindings;
- ``MINUS { ... }`` and ``OPTIONAL { ... }`` nested groups.

Anything else a full SPARQL 1.1 processor would accept (UNION, BIND,
aggregates, subqueries, property-path alternation, updates, ...) is
rejected by name at parse time.

Evaluation is bag-semantics over a frozen graph: VALUES tables and triple
patterns are joined left-deep, most-selective pattern first (bound-term
count, ties by textual order), then OPTIONAL left-joins, then MINUS, then
FILTERs. ``p+`` matches the transitive closure of ``p``. MINUS removes a
row when some inner row shares at least one variable and agrees on all
shared ones. Type-mismatched FILTER comparisons evaluate to false rather
than erroring. Result rows come back in ORDER BY order when given,
otherwise sorted by their serialized form, so output is deterministic.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from typing import Optional, Union

from .rdf import (
    XSD_NS, XSD_STRING, RDF_LANG_STRING, RDF_NS, Graph, IRI, Literal, Term,
    nt_term,
)

RDF_TYPE = IRI(RDF_NS + "type")

_NUMERIC_DATATYPES = {
    XSD_NS + "integer", XSD_NS + "decimal", XSD_NS + "double",
    XSD_NS + "float", XSD_NS + "int", XSD_NS + "long",
    XSD_NS + "short", XSD_NS + "byte", XSD_NS + "nonNegativeInteger",
    XSD_NS + "positiveInteger",
}

_UNSUPPORTED_KEYWORDS = {
    "UNION", "BIND", "GRAPH", "SERVICE", "ASK", "CONSTRUCT", "DESCRIBE",
    "INSERT", "DELETE", "LOAD", "FROM", "NAMED", "REDUCED", "GROUP",
    "HAVING", "LIMIT", "OFFSET", "EXISTS", "NOT", "AS", "WITH",
}


class QueryError(ValueError):
    """Base class for query parsing and evaluation errors."""


class QueryParseError(QueryError):
    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"line {line}, column {col}: {message}")
        self.line = line
        self.col = col


# ---------------------------------------------------------------------------
# AST


@dataclass(frozen=True)
class Var:
    name: str

    def __repr__(self):
        return f"?{self.name}"


TermOrVar = Union[Term, Var]


@dataclass
class TriplePattern:
    s: TermOrVar
    p: TermOrVar
    o: TermOrVar
    plus: bool = False  # one-or-more-hops closure on an IRI predicate


@dataclass
class Comparison:
    op: str  # = != < >
    lhs: TermOrVar
    rhs: TermOrVar


@dataclass
class BoundTest:
    var: Var
    negated: bool = False


@dataclass
class RegexTest:
    var: Var
    pattern: str
    negated: bool = False


FilterExpr = Union[Comparison, BoundTest, RegexTest]


@dataclass
class Filter:
    expr: FilterExpr


@dataclass
class Values:
    var: Var
    terms: list


@dataclass
class Group:
    elements: list = field(default_factory=list)


@dataclass
class Minus:
    group: Group


@dataclass
class OptionalGroup:
    group: Group


@dataclass
class SelectQuery:
    prefixes: dict
    variables: Optional[list[Var]]  # None means '*'
    distinct: bool
    where: Group
    order_by: list[Var] = field(default_factory=list)


# ---------------------------------------------------------------------------
# Lexer

_IRIREF_RE = re.compile(r'<([^\x00-\x20<>"{}|^`\\]*)>')
_STRING_RE = re.compile(r'"((?:[^"\\\n\r]|\\.)*)"')
_PNAME_RE = re.compile(r"([A-Za-z][A-Za-z0-9_\-]*)?:([A-Za-z0-9_][A-Za-z0-9_.\-]*)?")
_VAR_RE = re.compile(r"[?]([A-Za-z_][A-Za-z0-9_]*)")
_WORD_RE = re.compile(r"[A-Za-z][A-Za-z0-9_\-]*")
_NUMBER_RE = re.compile(r"[+-]?[0-9]+(\.[0-9]+)?")
_LANG_RE = re.compile(r"@([A-Za-z]+(?:-[A-Za-z0-9]+)*)")

_ECHAR = {"t": "\t", "b": "\b", "n": "\n", "r": "\r", "f": "\f",
          '"': '"', "'": "'", "\\": "\\"}


@dataclass(frozen=True)
class _Token:
    kind: str
    value: object
    line: int
    col: int


class _Lexer:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0
        self.line = 1
        self.col = 1

    def _advance(self, n: int):
        chunk = self.text[self.pos:self.pos + n]
        newlines = chunk.count("\n")
        if newlines:
            self.line += newlines
            self.col = n - chunk.rfind("\n")
        else:
            self.col += n
        self.pos += n

    def _error(self, message: str):
        raise QueryParseError(message, self.line, self.col)

    def _skip_ws(self):
        while self.pos < len(self.text):
            ch = self.text[self.pos]
            if ch in " \t\r\n":
                self._advance(1)
            elif ch == "#":
                end = self.text.find("\n", self.pos)
                self._advance((end if end != -1 else len(self.text)) - self.pos)
            else:
                return

    def _unescape(self, raw: str) -> str:
        out = []
        i = 0
        while i < len(raw):
            if raw[i] != "\\":
                out.append(raw[i])
                i += 1
                continue
            nxt = raw[i + 1] if i + 1 < len(raw) else ""
            if nxt in _ECHAR:
                out.append(_ECHAR[nxt])
                i += 2
            elif nxt == "u" and i + 6 <= len(raw):
                out.append(chr(int(raw[i + 2:i + 6], 16)))
                i += 6
            else:
                self._error(f"bad escape: \\{nxt}")
        return "".join(out)

    def tokens(self) -> list[_Token]:
        out = []
        while True:
            tok = self._next_token()
            out.append(tok)
            if tok.kind == "EOF":
                return out

    def _next_token(self) -> _Token:
        self._skip_ws()
        line, col = self.line, self.col
        if self.pos >= len(self.text):
            return _Token("EOF", None, line, col)
        text, pos = self.text, self.pos
        ch = text[pos]

        if ch == "<":
            m = _IRIREF_RE.match(text, pos)
            if m:
                self._advance(m.end() - pos)
                return _Token("IRIREF", self._unescape(m.group(1)), line, col)
            self._advance(1)
            return _Token("LT", "<", line, col)
        if ch == ">":
            self._advance(1)
            return _Token("GT", ">", line, col)
        if ch == '"':
            m = _STRING_RE.match(text, pos)
            if not m:
                self._error("unterminated string literal")
            self._advance(m.end() - pos)
            return _Token("STRING", self._unescape(m.group(1)), line, col)
        if ch == "@":
            m = _LANG_RE.match(text, pos)
            if not m:
                self._error("malformed language tag")
            self._advance(m.end() - pos)
            return _Token("LANGTAG", m.group(1), line, col)
        if text.startswith("^^", pos):
            self._advance(2)
            return _Token("HATHAT", "^^", line, col)
        if ch == "?":
            m = _VAR_RE.match(text, pos)
            if not m:
                self._error("malformed variable name")
            self._advance(m.end() - pos)
            return _Token("VAR", m.group(1), line, col)
        if ch == "$":
            self._error("unsubstituted query parameter (did you supply all "
                        "required parameters?)")
        if text.startswith("!=", pos):
            self._advance(2)
            return _Token("NEQ", "!=", line, col)
        if ch == "!":
            self._advance(1)
            return _Token("BANG", "!", line, col)
        if ch == "=":
            self._advance(1)
            return _Token("EQ", "=", line, col)
        if ch in "{}().,;*+":
            self._advance(1)
            kinds = {"{": "LBRACE", "}": "RBRACE", "(": "LPAREN", ")": "RPAREN",
                     ".": "DOT", ",": "COMMA", ";": "SEMI", "*": "STAR", "+": "PLUS"}
            return _Token(kinds[ch], ch, line, col)
        if ch == "_" and text.startswith("_:", pos):
            m = re.compile(r"_:([A-Za-z0-9_]+)").match(text, pos)
            if not m:
                self._error("malformed blank node label")
            self._advance(m.end() - pos)
            return _Token("BLANK", m.group(1), line, col)
        m = _NUMBER_RE.match(text, pos)
        if m and (ch.isdigit() or ch in "+-"):
            self._advance(m.end() - pos)
            return _Token("NUMBER", m.group(0), line, col)
        m = _PNAME_RE.match(text, pos)
        if m and ":" in text[pos:m.end()]:
            local = m.group(2) or ""
            while local.endswith("."):
                local = local[:-1]  # statement dot, not part of the name
            self._advance(m.end() - pos - (len(m.group(2) or "") - len(local)))
            return _Token("PNAME", (m.group(1) or "", local), line, col)
        m = _WORD_RE.match(text, pos)
        if m:
            word = m.group(0)
            # A bare word followed by ':' is a PNAME prefix; handled above.
            self._advance(len(word))
            return _Token("WORD", word, line, col)
        self._error(f"unexpected character {ch!r}")


# ---------------------------------------------------------------------------
# Parser


class _Parser:
    def __init__(self, text: str):
        self.toks = _Lexer(text).tokens()
        self.i = 0
        self.prefixes: dict[str, str] = {}

    @property
    def tok(self) -> _Token:
        return self.toks[self.i]

    def _next(self) -> _Token:
        tok = self.toks[self.i]
        if tok.kind != "EOF":
            self.i += 1
        return tok

    def _error(self, message: str, tok: Optional[_Token] = None):
        tok = tok or self.tok
        raise QueryParseError(message, tok.line, tok.col)

    def _is_word(self, *words: str) -> bool:
        return self.tok.kind == "WORD" and self.tok.value.upper() in words

    def _expect_word(self, word: str):
        if not self._is_word(word):
            self._error(f"expected {word}")
        self._next()

    def _check_unsupported(self):
        if self.tok.kind == "WORD" and self.tok.value.upper() in _UNSUPPORTED_KEYWORDS:
            self._error(f"unsupported SPARQL construct: {self.tok.value.upper()}")

    def _resolve_pname(self, tok: _Token) -> IRI:
        prefix, local = tok.value
        if prefix not in self.prefixes:
            self._error(f"unknown prefix: {prefix!r}", tok)
        try:
            return IRI(self.prefixes[prefix] + local)
        except ValueError as exc:
            self._error(str(exc), tok)

    def parse(self) -> SelectQuery:
        while self._is_word("PREFIX"):
            self._next()
            name = self._next()
            if name.kind != "PNAME" or name.value[1]:
                self._error("expected 'prefix:' in PREFIX declaration", name)
            iriref = self._next()
            if iriref.kind != "IRIREF":
                self._error("expected IRI in PREFIX declaration", iriref)
            self.prefixes[name.value[0]] = iriref.value
        self._check_unsupported()
        self._expect_word("SELECT")
        distinct = False
        if self._is_word("DISTINCT"):
            distinct = True
            self._next()
        variables: Optional[list[Var]] = None
        if self.tok.kind == "STAR":
            self._next()
        else:
            variables = []
            while self.tok.kind == "VAR":
                variables.append(Var(self._next().value))
            if not variables:
                self._error("expected projection variables or '*'")
        if self._is_word("WHERE"):
            self._next()
        where = self._parse_group()
        order_by: list[Var] = []
        if self._is_word("ORDER"):
            self._next()
            self._expect_word("BY")
            while self.tok.kind == "VAR":
                order_by.append(Var(self._next().value))
            if not order_by:
                self._error("expected variables after ORDER BY")
        self._check_unsupported()
        if self.tok.kind != "EOF":
            self._error(f"unexpected trailing token {self.tok.value!r}")

        query = SelectQuery(self.prefixes, variables, distinct, where, order_by)
        in_scope = _group_vars(where)
        for v in (variables or []):
            if v.name not in in_scope:
                raise QueryError(
                    f"projected variable ?{v.name} does not appear in the pattern")
        for v in order_by:
            if v.name not in in_scope:
                raise QueryError(
                    f"ORDER BY variable ?{v.name} does not appear in the pattern")
        return query

    def _parse_group(self) -> Group:
        if self.tok.kind != "LBRACE":
            self._error("expected '{'")
        self._next()
        group = Group()
        while self.tok.kind != "RBRACE":
            if self.tok.kind == "EOF":
                self._error("unterminated group (missing '}')")
            self._check_unsupported()
            if self._is_word("FILTER"):
                self._next()
                group.elements.append(Filter(self._parse_filter_expr()))
            elif self._is_word("VALUES"):
                self._next()
                group.elements.append(self._parse_values())
            elif self._is_word("MINUS"):
                self._next()
                group.elements.append(Minus(self._parse_group()))
            elif self._is_word("OPTIONAL"):
                self._next()
                group.elements.append(OptionalGroup(self._parse_group()))
            elif self.tok.kind == "LBRACE":
                # A bare nested group only appears in UNION syntax here.
                if any(t.kind == "WORD" and t.value.upper() == "UNION"
                       for t in self.toks[self.i:]):
                    self._error("unsupported SPARQL construct: UNION")
                self._error("nested groups are only supported after "
                            "OPTIONAL or MINUS")
            else:
                self._parse_triple_block(group)
        self._next()
        return group

    def _parse_term_or_var(self, position: str) -> TermOrVar:
        tok = self.tok
        if tok.kind == "VAR":
            self._next()
            return Var(tok.value)
        if tok.kind == "IRIREF":
            self._next()
            try:
                return IRI(tok.value)
            except ValueError as exc:
                self._error(str(exc), tok)
        if tok.kind == "PNAME":
            self._next()
            return self._resolve_pname(tok)
        if tok.kind == "WORD" and tok.value == "a" and position == "predicate":
            self._next()
            return RDF_TYPE
        if tok.kind == "BLANK":
            self._error("blank nodes are not allowed in query patterns", tok)
        if tok.kind == "STRING":
            if position == "predicate":
                self._error("literal not allowed as predicate", tok)
            return self._parse_literal()
        if tok.kind == "NUMBER":
            if position == "predicate":
                self._error("literal not allowed as predicate", tok)
            self._next()
            dt = "decimal" if "." in tok.value else "integer"
            return Literal(tok.value, XSD_NS + dt)
        self._check_unsupported()
        self._error(f"expected {position} term, found {tok.kind}")

    def _parse_literal(self) -> Literal:
        tok = self._next()
        lexical = tok.value
        if self.tok.kind == "LANGTAG":
            return Literal(lexical, RDF_LANG_STRING, self._next().value)
        if self.tok.kind == "HATHAT":
            self._next()
            dt_tok = self.tok
            if dt_tok.kind == "IRIREF":
                self._next()
                return Literal(lexical, dt_tok.value)
            if dt_tok.kind == "PNAME":
                self._next()
                return Literal(lexical, self._resolve_pname(dt_tok).value)
            self._error("expected datatype IRI after '^^'")
        return Literal(lexical)

    def _parse_triple_block(self, group: Group):
        subject = self._parse_term_or_var("subject")
        while True:
            predicate = self._parse_term_or_var("predicate")
            plus = False
            if self.tok.kind == "PLUS":
                if not isinstance(predicate, IRI):
                    self._error("closure modifier '+' requires an IRI predicate")
                plus = True
                self._next()
            while True:
                obj = self._parse_term_or_var("object")
                group.elements.append(TriplePattern(subject, predicate, obj, plus))
                if self.tok.kind == "COMMA":
                    self._next()
                    continue
                break
            if self.tok.kind == "SEMI":
                while self.tok.kind == "SEMI":
                    self._next()
                if self.tok.kind in ("DOT", "RBRACE"):
                    break
                continue
            break
        if self.tok.kind == "DOT":
            self._next()

    def _parse_filter_expr(self) -> FilterExpr:
        if self.tok.kind != "LPAREN":
            self._error("expected '(' after FILTER")
        self._next()
        expr = self._parse_bool_expr()
        if self.tok.kind != "RPAREN":
            self._error("expected ')' to close FILTER")
        self._next()
        return expr

    def _parse_bool_expr(self) -> FilterExpr:
        negated = False
        if self.tok.kind == "BANG":
            negated = True
            self._next()
        if self._is_word("BOUND"):
            self._next()
            var = self._parse_call_var()
            return BoundTest(var, negated)
        if self._is_word("REGEX"):
            self._next()
            if self.tok.kind != "LPAREN":
                self._error("expected '(' after REGEX")
            self._next()
            if self.tok.kind != "VAR":
                self._error("REGEX expects a variable as first argument")
            var = Var(self._next().value)
            if self.tok.kind != "COMMA":
                self._error("expected ',' in REGEX")
            self._next()
            if self.tok.kind != "STRING":
                self._error("REGEX expects a string pattern")
            pattern = self._next().value
            if self.tok.kind != "RPAREN":
                self._error("expected ')' to close REGEX")
            self._next()
            return RegexTest(var, pattern, negated)
        if negated:
            self._error("'!' only applies to BOUND or REGEX")
        lhs = self._parse_operand()
        op_tok = self.tok
        if op_tok.kind == "EQ":
            op = "="
        elif op_tok.kind == "NEQ":
            op = "!="
        elif op_tok.kind == "LT":
            op = "<"
        elif op_tok.kind == "GT":
            op = ">"
        else:
            self._error("expected comparison operator (=, !=, <, >)")
        self._next()
        rhs = self._parse_operand()
        return Comparison(op, lhs, rhs)

    def _parse_call_var(self) -> Var:
        if self.tok.kind != "LPAREN":
            self._error("expected '('")
        self._next()
        if self.tok.kind != "VAR":
            self._error("expected a variable")
        var = Var(self._next().value)
        if self.tok.kind != "RPAREN":
            self._error("expected ')'")
        self._next()
        return var

    def _parse_operand(self) -> TermOrVar:
        return self._parse_term_or_var("object")

    def _parse_values(self) -> Values:
        if self.tok.kind != "VAR":
            self._error("VALUES expects a single variable")
        var = Var(self._next().value)
        if self.tok.kind != "LBRACE":
            self._error("expected '{' after VALUES variable")
        self._next()
        terms = []
        while self.tok.kind != "RBRACE":
            if self.tok.kind == "EOF":
                self._error("unterminated VALUES block")
            terms.append(self._parse_term_or_var("object"))
        self._next()
        for t in terms:
            if isinstance(t, Var):
                raise QueryError("VALUES terms must be constants")
        return Values(var, terms)


def _group_vars(group: Group) -> set[str]:
    names: set[str] = set()
    for el in group.elements:
        if isinstance(el, TriplePattern):
            for part in (el.s, el.p, el.o):
                if isinstance(part, Var):
                    names.add(part.name)
        elif isinstance(el, Values):
            names.add(el.var.name)
        elif isinstance(el, (Minus, OptionalGroup)):
            names |= _group_vars(el.group)
    return names


def _group_vars_ordered(group: Group) -> list[str]:
    names: list[str] = []

    def visit(g: Group):
        for el in g.elements:
            if isinstance(el, TriplePattern):
                for part in (el.s, el.p, el.o):
                    if isinstance(part, Var) and part.name not in names:
                        names.append(part.name)
            elif isinstance(el, Values):
                if el.var.name not in names:
                    names.append(el.var.name)
            elif isinstance(el, (Minus, OptionalGroup)):
                visit(el.group)

    visit(group)
    return names


def parse_query(text: str) -> SelectQuery:
    """Parse a query in the subset grammar into an AST."""
    return _Parser(text).parse()


# ---------------------------------------------------------------------------
# Evaluation

Solution = dict[str, Term]


class ResultTable:
    """Bag of variable bindings with a fixed header and deterministic order."""

    def __init__(self, variables: list[str], rows: list[tuple]):
        self.variables = list(variables)
        self.rows = [tuple(r) for r in rows]

    def __len__(self):
        return len(self.rows)

    def __eq__(self, other):
        if not isinstance(other, ResultTable):
            return NotImplemented
        return self.variables == other.variables and self.rows == other.rows

    def column(self, name: str) -> list:
        idx = self.variables.index(name)
        return [row[idx] for row in self.rows]

    def distinct_values(self, name: str) -> set:
        return {v for v in self.column(name) if v is not None}

    def to_tsv(self) -> str:
        lines = ["\t".join(f"?{v}" for v in self.variables)]
        for row in self.rows:
            lines.append("\t".join("" if t is None else nt_term(t) for t in row))
        return "\n".join(lines) + "\n"

    def to_json(self) -> str:
        payload = {
            "vars": self.variables,
            "rows": [[None if t is None else nt_term(t) for t in row]
                     for row in self.rows],
        }
        return json.dumps(payload, sort_keys=True, indent=2) + "\n"


def _row_sort_key(row: tuple) -> tuple:
    return tuple("" if t is None else nt_term(t) for t in row)


def _substitute(part: TermOrVar, sol: Solution):
    if isinstance(part, Var):
        return sol.get(part.name)
    return part


def _match_pattern(g: Graph, pat: TriplePattern, sol: Solution) -> list[Solution]:
    s = _substitute(pat.s, sol)
    p = _substitute(pat.p, sol)
    o = _substitute(pat.o, sol)
    out: list[Solution] = []
    if pat.plus:
        closure = g.closure_pairs(pat.p)  # parser guarantees an IRI predicate
        if s is not None:
            targets = closure.get(s, set())
            pairs = [(s, t) for t in targets if o is None or t == o]
        elif o is not None:
            pairs = [(src, o) for src, targets in closure.items() if o in targets]
        else:
            pairs = [(src, t) for src, targets in closure.items() for t in targets]
        for subj, obj in pairs:
            ext = dict(sol)
            ok = True
            for part, val in ((pat.s, subj), (pat.o, obj)):
                if isinstance(part, Var):
                    if part.name in ext and ext[part.name] != val:
                        ok = False
                        break
                    ext[part.name] = val
            if ok:
                out.append(ext)
        return out
    for t in g.match(s, p, o):
        ext = dict(sol)
        ok = True
        for part, val in ((pat.s, t.s), (pat.p, t.p), (pat.o, t.o)):
            if isinstance(part, Var):
                if part.name in ext and ext[part.name] != val:
                    ok = False
                    break
                ext[part.name] = val
        if ok:
            out.append(ext)
    return out


def _pattern_selectivity(pat: TriplePattern, bound: set[str]) -> int:
    score = 0
    for part in (pat.s, pat.p, pat.o):
        if not isinstance(part, Var) or part.name in bound:
            score += 1
    return score


def _compatible(a: Solution, b: Solution) -> bool:
    for k, v in b.items():
        if k in a and a[k] != v:
            return False
    return True


def _shared_agree(a: Solution, b: Solution) -> bool:
    shared = a.keys() & b.keys()
    if not shared:
        return False
    return all(a[k] == b[k] for k in shared)


def _numeric_value(term: Term) -> Optional[float]:
    if isinstance(term, Literal) and term.lang is None:
        if term.datatype in _NUMERIC_DATATYPES:
            try:
                return float(term.lexical)
            except ValueError:
                return None
    return None


def _eval_filter(expr: FilterExpr, sol: Solution) -> bool:
    if isinstance(expr, BoundTest):
        result = expr.var.name in sol
        return not result if expr.negated else result
    if isinstance(expr, RegexTest):
        term = sol.get(expr.var.name)
        if not isinstance(term, Literal):
            return False  # unbound / non-literal: an error value, filter false
        matched = re.search(expr.pattern, term.lexical) is not None
        return not matched if expr.negated else matched
    lhs = _substitute(expr.lhs, sol)
    rhs = _substitute(expr.rhs, sol)
    if lhs is None or rhs is None:
        return False
    if expr.op == "=":
        return lhs == rhs
    if expr.op == "!=":
        return lhs != rhs
    ln, rn = _numeric_value(lhs), _numeric_value(rhs)
    if ln is not None and rn is not None:
        return ln < rn if expr.op == "<" else ln > rn
    if (isinstance(lhs, Literal) and isinstance(rhs, Literal)
            and lhs.datatype == XSD_STRING and rhs.datatype == XSD_STRING):
        return lhs.lexical < rhs.lexical if expr.op == "<" else lhs.lexical > rhs.lexical
    return False  # type mismatch


def _eval_group(group: Group, g: Graph) -> list[Solution]:
    patterns = [el for el in group.elements if isinstance(el, TriplePattern)]
    values = [el for el in group.elements if isinstance(el, Values)]
    optionals = [el for el in group.elements if isinstance(el, OptionalGroup)]
    minuses = [el for el in group.elements if isinstance(el, Minus)]
    filters = [el for el in group.elements if isinstance(el, Filter)]

    sols: list[Solution] = [{}]
    bound: set[str] = set()
    for v in values:
        joined: list[Solution] = []
        for sol in sols:
            for term in v.terms:
                if v.var.name in sol and sol[v.var.name] != term:
                    continue
                ext = dict(sol)
                ext[v.var.name] = term
                joined.append(ext)
        sols = joined
        bound.add(v.var.name)

    remaining = list(enumerate(patterns))
    while remaining:
        remaining.sort(key=lambda item: (-_pattern_selectivity(item[1], bound), item[0]))
        idx, pat = remaining.pop(0)
        sols = [ext for sol in sols for ext in _match_pattern(g, pat, sol)]
        for part in (pat.s, pat.p, pat.o):
            if isinstance(part, Var):
                bound.add(part.name)
        if not sols:
            break

    for opt in optionals:
        right = _eval_group(opt.group, g)
        joined = []
        for sol in sols:
            matches = [r for r in right if _compatible(sol, r)]
            if matches:
                for r in matches:
                    merged = dict(sol)
                    merged.update(r)
                    joined.append(merged)
            else:
                joined.append(sol)
        sols = joined

    for m in minuses:
        right = _eval_group(m.group, g)
        sols = [sol for sol in sols
                if not any(_shared_agree(sol, r) for r in right)]

    for f in filters:
        sols = [sol for sol in sols if _eval_filter(f.expr, sol)]

    return sols


def evaluate(query: SelectQuery, g: Graph) -> ResultTable:
    """Evaluate a parsed query over a frozen graph."""
    if not g.frozen:
        raise QueryError("graph must be frozen before evaluation")
    sols = _eval_group(query.where, g)
    if query.variables is None:
        header = _group_vars_ordered(query.where)
    else:
        header = [v.name for v in query.variables]
    rows = [tuple(sol.get(name) for name in header) for sol in sols]
    if query.distinct:
        rows = list(dict.fromkeys(rows))
    if query.order_by:
        positions = [header.index(v.name) for v in query.order_by]
        rows.sort(key=lambda row: (
            tuple("" if row[i] is None else nt_term(row[i]) for i in positions),
            _row_sort_key(row)))
    else:
        rows.sort(key=_row_sort_key)
    return ResultTable(header, rows)


def run_query(text: str, g: Graph) -> ResultTable:
    return evaluate(parse_query(text), g)
