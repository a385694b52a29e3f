# src/utils/formula_parser.py
"""Reader for formula text such as ``forall y. !in(y,x)``.

``|`` binds loosest, then ``&``, then ``!``; a quantifier's scope extends as
far to the right as possible.
"""
import re

from src.models.formula import And, Const, Equal, Exists, Forall, Formula, Member, Not, Or
from src.utils.errors import ParseError


class FormulaSyntaxError(ParseError):
    pass


_TOKEN = re.compile(r"\s*(?:(?P<word>[A-Za-z_][A-Za-z0-9_']*)|(?P<punct>[()=&|!.,]))")
_KEYWORDS = {"in", "exists", "forall", "true", "false"}


def _tokenize(text):
    tokens = []
    pos = 0
    end = len(text.rstrip())
    while pos < end:
        match = _TOKEN.match(text, pos)
        if not match:
            raise FormulaSyntaxError(f"unexpected character {text[pos]!r}", 1, pos + 1)
        kind = match.lastgroup
        tokens.append((kind, match.group(kind), match.start(kind) + 1))
        pos = match.end()
    return tokens


class _Parser:
    def __init__(self, text):
        self.text = text
        self.tokens = _tokenize(text)
        self.index = 0

    def peek(self):
        return self.tokens[self.index][1] if self.index < len(self.tokens) else None

    def error(self, message):
        column = self.tokens[self.index][2] if self.index < len(self.tokens) else len(self.text.rstrip()) + 1
        raise FormulaSyntaxError(message, 1, column)

    def take(self, expected=None):
        if self.index >= len(self.tokens):
            self.error(f"expected {expected!r}" if expected else "unexpected end of formula")
        kind, value, _ = self.tokens[self.index]
        if expected is not None and value != expected:
            self.error(f"expected {expected!r}, found {value!r}")
        self.index += 1
        return kind, value

    def variable(self):
        if self.index >= len(self.tokens):
            self.error("expected a variable")
        kind, value, _ = self.tokens[self.index]
        if kind != "word" or value in _KEYWORDS:
            self.error(f"expected a variable, found {value!r}")
        self.index += 1
        return value

    def formula(self) -> Formula:
        result = self.conjunction()
        while self.peek() == "|":
            self.take("|")
            result = Or(result, self.conjunction())
        return result

    def conjunction(self) -> Formula:
        result = self.unary()
        while self.peek() == "&":
            self.take("&")
            result = And(result, self.unary())
        return result

    def unary(self) -> Formula:
        head = self.peek()
        if head == "!":
            self.take("!")
            return Not(self.unary())
        if head in ("exists", "forall"):
            self.take()
            var = self.variable()
            self.take(".")
            body = self.formula()
            return Exists(var, body) if head == "exists" else Forall(var, body)
        if head == "(":
            self.take("(")
            inner = self.formula()
            self.take(")")
            return inner
        if head == "in":
            self.take("in")
            self.take("(")
            left = self.variable()
            self.take(",")
            right = self.variable()
            self.take(")")
            return Member(left, right)
        if head in ("true", "false"):
            self.take()
            return Const(head == "true")
        left = self.variable()
        self.take("=")
        return Equal(left, self.variable())


def parse_formula(text: str) -> Formula:
    parser = _Parser(text)
    if not parser.tokens:
        raise FormulaSyntaxError("empty formula", 1, 1)
    result = parser.formula()
    if parser.index < len(parser.tokens):
        parser.error(f"unexpected {parser.peek()!r} after formula")
    return result
