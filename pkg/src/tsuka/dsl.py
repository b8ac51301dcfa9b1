"""Parser and pretty-printer for the textual rule language.

The grammar is one line per rule::

    rule   := "IF" clause (conn clause)* "THEN" clause
    conn   := "AND" | "OR"          -- one kind per rule, no mixing
    clause := IDENT "IS" IDENT      -- optionally wrapped in parentheses

Keywords are case-insensitive; identifiers are case-sensitive
``[A-Za-z_][A-Za-z0-9_]*``.  In rule files, ``#`` starts a comment and blank
lines are ignored.  Every failure carries a source span so callers can point
at the offending characters.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum

from .errors import TsukaError
from .inference import Clause, Connective, Rule, Schema, validate_rule

_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")
_KEYWORDS = frozenset({"IF", "AND", "OR", "THEN", "IS"})


@dataclass(frozen=True)
class SourceSpan:
    """1-based position of a token inside the parsed source."""

    line: int
    column: int
    length: int

    def __post_init__(self):
        if self.line < 1 or self.column < 1 or self.length < 1:
            raise ValueError(f"degenerate span: {self}")


class ParseErrorKind(Enum):
    SYNTAX = "syntax"
    UNKNOWN_VARIABLE = "unknown_variable"
    UNKNOWN_TERM = "unknown_term"
    WRONG_SIDE = "wrong_side"
    MIXED_CONNECTIVE = "mixed_connective"


@dataclass(frozen=True)
class ParseError:
    """A single diagnostic; not an exception, see :class:`RuleSyntaxError`."""

    span: SourceSpan
    kind: ParseErrorKind
    message: str

    def __str__(self):
        return f"line {self.span.line} col {self.span.column}: {self.message}"


class RuleSyntaxError(TsukaError, ValueError):
    """Raised when rule text fails to parse; carries every diagnostic found."""

    def __init__(self, errors):
        self.errors = tuple(errors)
        super().__init__("; ".join(str(e) for e in self.errors))


@dataclass(frozen=True)
class _Token:
    text: str
    line: int
    column: int

    @property
    def span(self) -> SourceSpan:
        return SourceSpan(self.line, self.column, len(self.text))

    @property
    def keyword(self) -> str | None:
        upper = self.text.upper()
        return upper if upper in _KEYWORDS else None


class _ParseFailure(Exception):
    def __init__(self, error: ParseError):
        self.error = error


def _fail(span: SourceSpan, kind: ParseErrorKind, message: str):
    raise _ParseFailure(ParseError(span, kind, message))


def _tokenize(src: str, line: int) -> list[_Token]:
    tokens = []
    i = 0
    while i < len(src):
        ch = src[i]
        if ch in " \t\r":
            i += 1
            continue
        if ch in "()":
            tokens.append(_Token(ch, line, i + 1))
            i += 1
            continue
        m = _IDENT.match(src, i)
        if m:
            tokens.append(_Token(m.group(), line, i + 1))
            i = m.end()
            continue
        _fail(
            SourceSpan(line, i + 1, 1),
            ParseErrorKind.SYNTAX,
            f"unexpected character {ch!r}",
        )
    return tokens


class _RuleParser:
    def __init__(self, tokens: list[_Token], schema: Schema, line: int):
        self.tokens = tokens
        self.schema = schema
        self.line = line
        self.pos = 0

    def _eof_span(self) -> SourceSpan:
        if self.tokens:
            last = self.tokens[-1]
            return SourceSpan(last.line, last.column + len(last.text) - 1, 1)
        return SourceSpan(self.line, 1, 1)

    def peek(self) -> _Token | None:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self, expected: str) -> _Token:
        token = self.peek()
        if token is None:
            _fail(self._eof_span(), ParseErrorKind.SYNTAX, f"expected {expected}, found end of rule")
        self.pos += 1
        return token

    def keyword(self, name: str) -> _Token:
        token = self.take(name)
        if token.keyword != name:
            _fail(token.span, ParseErrorKind.SYNTAX, f"expected {name}, found {token.text!r}")
        return token

    def identifier(self, what: str) -> _Token:
        token = self.take(what)
        if token.text in "()" or token.keyword is not None:
            _fail(token.span, ParseErrorKind.SYNTAX, f"expected {what}, found {token.text!r}")
        return token

    def clause(self) -> tuple[_Token, _Token]:
        depth = 0
        while (token := self.peek()) is not None and token.text == "(":
            self.pos += 1
            depth += 1
        variable = self.identifier("a variable name")
        self.keyword("IS")
        term = self.identifier("a term name")
        while depth:
            closer = self.take("')'")
            if closer.text != ")":
                _fail(closer.span, ParseErrorKind.SYNTAX, f"expected ')', found {closer.text!r}")
            depth -= 1
        return variable, term

    def parse(self) -> Rule:
        self.keyword("IF")
        clauses = [self.clause()]
        connective: Connective | None = None
        while True:
            token = self.peek()
            if token is None:
                _fail(self._eof_span(), ParseErrorKind.SYNTAX, "expected AND, OR or THEN, found end of rule")
            if token.keyword == "THEN":
                self.pos += 1
                break
            if token.keyword in ("AND", "OR"):
                self.pos += 1
                kind = Connective[token.keyword]
                if connective is None:
                    connective = kind
                elif connective is not kind:
                    _fail(
                        token.span,
                        ParseErrorKind.MIXED_CONNECTIVE,
                        f"rule mixes {connective.value} and {kind.value}; use one connective per rule",
                    )
                clauses.append(self.clause())
                continue
            _fail(token.span, ParseErrorKind.SYNTAX, f"expected AND, OR or THEN, found {token.text!r}")
        consequent = self.clause()
        if (extra := self.peek()) is not None:
            _fail(extra.span, ParseErrorKind.SYNTAX, f"unexpected trailing input {extra.text!r}")
        return self._resolve(clauses, connective or Connective.AND, consequent)

    def _resolve(self, clauses, connective, consequent) -> Rule:
        antecedent = []
        for variable_tok, term_tok in clauses:
            variable = self.schema.find(variable_tok.text)
            if variable is None:
                _fail(
                    variable_tok.span,
                    ParseErrorKind.UNKNOWN_VARIABLE,
                    f"unknown variable {variable_tok.text!r}",
                )
            if self.schema.is_output(variable_tok.text):
                _fail(
                    variable_tok.span,
                    ParseErrorKind.WRONG_SIDE,
                    f"output variable {variable_tok.text!r} cannot appear before THEN",
                )
            if term_tok.text not in variable.terms:
                _fail(
                    term_tok.span,
                    ParseErrorKind.UNKNOWN_TERM,
                    f"variable {variable_tok.text!r} has no term {term_tok.text!r}",
                )
            antecedent.append(Clause(variable_tok.text, term_tok.text))
        variable_tok, term_tok = consequent
        variable = self.schema.find(variable_tok.text)
        if variable is None:
            _fail(
                variable_tok.span,
                ParseErrorKind.UNKNOWN_VARIABLE,
                f"unknown variable {variable_tok.text!r}",
            )
        if not self.schema.is_output(variable_tok.text):
            _fail(
                variable_tok.span,
                ParseErrorKind.WRONG_SIDE,
                f"input variable {variable_tok.text!r} cannot appear after THEN",
            )
        if term_tok.text not in variable.terms:
            _fail(
                term_tok.span,
                ParseErrorKind.UNKNOWN_TERM,
                f"variable {variable_tok.text!r} has no term {term_tok.text!r}",
            )
        return Rule(
            antecedent=tuple(antecedent),
            connective=connective,
            consequent=Clause(variable_tok.text, term_tok.text),
        )


def parse_rule(src: str, schema: Schema, *, line: int = 1) -> Rule:
    """Parse a single rule; raises :class:`RuleSyntaxError` with one diagnostic."""
    try:
        tokens = _tokenize(src, line)
        if not tokens:
            _fail(SourceSpan(line, 1, 1), ParseErrorKind.SYNTAX, "empty rule")
        return _RuleParser(tokens, schema, line).parse()
    except _ParseFailure as failure:
        raise RuleSyntaxError([failure.error]) from None


def parse_ruleset(src: str, schema: Schema) -> tuple[Rule, ...]:
    """Parse a rule file: one rule per non-empty line, ``#`` comments.

    All-or-nothing: either every line parses and the rules are returned in
    source order, or a :class:`RuleSyntaxError` aggregating every failing
    line is raised.
    """
    rules: list[Rule] = []
    errors: list[ParseError] = []
    for lineno, raw in enumerate(src.split("\n"), start=1):
        text = raw.split("#", 1)[0]
        if not text.strip():
            continue
        try:
            rules.append(parse_rule(text, schema, line=lineno))
        except RuleSyntaxError as exc:
            errors.extend(exc.errors)
    if errors:
        raise RuleSyntaxError(errors)
    if not rules:
        raise RuleSyntaxError(
            [ParseError(SourceSpan(1, 1, 1), ParseErrorKind.SYNTAX, "no rules found")]
        )
    return tuple(rules)


def format_rule(rule: Rule, schema: Schema) -> str:
    """Canonical single-line text for a schema-valid rule.

    ``parse_rule(format_rule(r))`` reproduces ``r`` exactly.
    """
    validate_rule(rule, schema)
    connective = f" {rule.connective.value} "
    antecedent = connective.join(f"{c.variable} IS {c.term}" for c in rule.antecedent)
    return f"IF {antecedent} THEN {rule.consequent.variable} IS {rule.consequent.term}"


def format_ruleset(rules, schema: Schema) -> str:
    """One canonical line per rule, newline-terminated."""
    return "".join(format_rule(rule, schema) + "\n" for rule in rules)
