# src/models/ordinal.py
"""Ordinal notations below epsilon_0 in Cantor normal form.

An ordinal is a finite tuple of ``(exponent, coefficient)`` terms with strictly
decreasing exponents, each exponent itself an :class:`Ordinal`. The empty tuple
is zero. Values are immutable and safe to share between threads.
"""
import re
from dataclasses import dataclass
from enum import Enum
from functools import total_ordering
from typing import Optional, Tuple

from src.utils.errors import ParseError, WorkbenchError


class NotALimit(WorkbenchError):
    pass


class OrdinalSyntaxError(ParseError):
    pass


class Comparison(Enum):
    LESS = -1
    EQUAL = 0
    GREATER = 1


class OrdinalKind(Enum):
    ZERO = "zero"
    SUCCESSOR = "successor"
    LIMIT = "limit"


@total_ordering
@dataclass(frozen=True)
class Ordinal:
    terms: Tuple[Tuple["Ordinal", int], ...] = ()

    def __post_init__(self):
        previous = None
        for exponent, coefficient in self.terms:
            if not isinstance(exponent, Ordinal):
                raise TypeError(f"exponent must be an Ordinal, got {exponent!r}")
            if not isinstance(coefficient, int) or coefficient < 1:
                raise ValueError(f"coefficients must be positive integers, got {coefficient!r}")
            if previous is not None and compare(exponent, previous) is not Comparison.LESS:
                raise ValueError("exponents must be strictly decreasing")
            previous = exponent

    @classmethod
    def natural(cls, n: int) -> "Ordinal":
        if n < 0:
            raise ValueError("ordinals are non-negative")
        return cls() if n == 0 else cls(((cls(), n),))

    @classmethod
    def omega_power(cls, exponent: "Ordinal", coefficient: int = 1) -> "Ordinal":
        return cls(((exponent, coefficient),))

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def is_finite(self) -> bool:
        return self.is_zero or (len(self.terms) == 1 and self.terms[0][0].is_zero)

    def to_int(self) -> int:
        if not self.is_finite:
            raise ValueError(f"{self} is infinite")
        return self.terms[0][1] if self.terms else 0

    def __lt__(self, other):
        if not isinstance(other, Ordinal):
            return NotImplemented
        return compare(self, other) is Comparison.LESS

    def __add__(self, other):
        if isinstance(other, int):
            other = Ordinal.natural(other)
        if not isinstance(other, Ordinal):
            return NotImplemented
        return add(self, other)

    def __str__(self):
        return format_ordinal(self, spaced=True)

    def __repr__(self):
        return f"Ordinal({format_ordinal(self, spaced=False)})"


ZERO = Ordinal()
ONE = Ordinal.natural(1)
OMEGA = Ordinal.omega_power(ONE)


@dataclass(frozen=True)
class Classification:
    kind: OrdinalKind
    pred: Optional[Ordinal] = None


def compare(a: Ordinal, b: Ordinal) -> Comparison:
    for (ea, ca), (eb, cb) in zip(a.terms, b.terms):
        by_exponent = compare(ea, eb)
        if by_exponent is not Comparison.EQUAL:
            return by_exponent
        if ca != cb:
            return Comparison.LESS if ca < cb else Comparison.GREATER
    if len(a.terms) == len(b.terms):
        return Comparison.EQUAL
    return Comparison.LESS if len(a.terms) < len(b.terms) else Comparison.GREATER


def add(a: Ordinal, b: Ordinal) -> Ordinal:
    if b.is_zero:
        return a
    lead_exponent, lead_coefficient = b.terms[0]
    kept = []
    for exponent, coefficient in a.terms:
        order = compare(exponent, lead_exponent)
        if order is Comparison.GREATER:
            kept.append((exponent, coefficient))
        elif order is Comparison.EQUAL:
            merged = (exponent, coefficient + lead_coefficient)
            return Ordinal(tuple(kept) + (merged,) + b.terms[1:])
        else:
            break
    # terms of a below b's leading exponent are absorbed
    return Ordinal(tuple(kept) + b.terms)


def mul_omega(a: Ordinal) -> Ordinal:
    """Return omega * a, distributing omega over the Cantor normal form of a."""
    return Ordinal(tuple((add(ONE, exponent), coefficient) for exponent, coefficient in a.terms))


def classify(a: Ordinal) -> Classification:
    if a.is_zero:
        return Classification(OrdinalKind.ZERO)
    last_exponent, last_coefficient = a.terms[-1]
    if not last_exponent.is_zero:
        return Classification(OrdinalKind.LIMIT)
    head = a.terms[:-1]
    if last_coefficient > 1:
        head = head + ((last_exponent, last_coefficient - 1),)
    return Classification(OrdinalKind.SUCCESSOR, Ordinal(head))


def fundamental_sequence(a: Ordinal, n: int) -> Ordinal:
    """The n-th element of the standard fundamental sequence of the limit a."""
    if classify(a).kind is not OrdinalKind.LIMIT:
        raise NotALimit(f"{a} is not a limit ordinal")
    if n < 0:
        raise ValueError("sequence index must be a natural number")
    gamma, coefficient = a.terms[-1]
    head = a.terms[:-1]
    if coefficient > 1:
        head = head + ((gamma, coefficient - 1),)
    prefix = Ordinal(head)
    shape = classify(gamma)
    if shape.kind is OrdinalKind.SUCCESSOR:
        # a = prefix + w^(d+1): step through prefix + w^d * n
        step = Ordinal.omega_power(shape.pred, n) if n > 0 else ZERO
        return add(prefix, step)
    return add(prefix, Ordinal.omega_power(fundamental_sequence(gamma, n)))


def format_ordinal(a: Ordinal, spaced: bool = True) -> str:
    if a.is_zero:
        return "0"
    joiner = " + " if spaced else "+"
    return joiner.join(_format_term(exponent, coefficient) for exponent, coefficient in a.terms)


def _format_term(exponent: Ordinal, coefficient: int) -> str:
    if exponent.is_zero:
        return str(coefficient)
    if exponent == ONE:
        base = "w"
    elif exponent.is_finite:
        base = f"w^{exponent.to_int()}"
    elif exponent == OMEGA:
        base = "w^w"
    else:
        # grouped exponents never contain whitespace, so they survive the code lexer
        base = f"w^({format_ordinal(exponent, spaced=False)})"
    return base if coefficient == 1 else f"{base}*{coefficient}"


_TOKEN = re.compile(r"\s*(?:(\d+)|(w)|([\^*+()]))")


def parse_ordinal(text: str) -> Ordinal:
    """Parse ``0``, naturals, ``w`` and sums of products such as ``w^2*3 + w + 5``."""
    tokens = []
    pos = 0
    stripped_end = len(text.rstrip())
    while pos < stripped_end:
        match = _TOKEN.match(text, pos)
        if not match:
            raise OrdinalSyntaxError(f"unexpected character {text[pos]!r} in ordinal", 1, pos + 1)
        value = match.group(1) or match.group(2) or match.group(3)
        tokens.append((value, match.start(match.lastindex) + 1))
        pos = match.end()
    if not tokens:
        raise OrdinalSyntaxError("empty ordinal", 1, 1)
    parser = _OrdinalParser(tokens)
    result = parser.parse_sum()
    if parser.peek() is not None:
        value, column = parser.tokens[parser.index]
        raise OrdinalSyntaxError(f"unexpected {value!r} in ordinal", 1, column)
    return result


class _OrdinalParser:
    def __init__(self, tokens):
        self.tokens = tokens
        self.index = 0

    def peek(self):
        return self.tokens[self.index][0] if self.index < len(self.tokens) else None

    def take(self, expected=None):
        if self.index >= len(self.tokens):
            column = self.tokens[-1][1] + len(self.tokens[-1][0]) if self.tokens else 1
            raise OrdinalSyntaxError("unexpected end of ordinal", 1, column)
        value, column = self.tokens[self.index]
        if expected is not None and value != expected:
            raise OrdinalSyntaxError(f"expected {expected!r}, found {value!r}", 1, column)
        self.index += 1
        return value, column

    def parse_sum(self) -> Ordinal:
        total = self.parse_product()
        while self.peek() == "+":
            self.take("+")
            total = add(total, self.parse_product())
        return total

    def parse_product(self) -> Ordinal:
        value, column = self.take()
        if value.isdigit():
            base = Ordinal.natural(int(value))
            exponent = ZERO
        elif value == "w":
            exponent = ONE
            if self.peek() == "^":
                self.take("^")
                exponent = self.parse_exponent()
            base = Ordinal.omega_power(exponent)
        else:
            raise OrdinalSyntaxError(f"expected a natural or 'w', found {value!r}", 1, column)
        if self.peek() == "*":
            self.take("*")
            factor, factor_column = self.take()
            if not factor.isdigit():
                raise OrdinalSyntaxError("coefficients must be naturals", 1, factor_column)
            if base.is_zero or int(factor) == 0:
                return ZERO
            coefficient = base.terms[0][1] * int(factor)
            return Ordinal.omega_power(exponent, coefficient)
        return base

    def parse_exponent(self) -> Ordinal:
        value, column = self.take()
        if value.isdigit():
            return Ordinal.natural(int(value))
        if value == "w":
            return OMEGA
        if value == "(":
            inner = self.parse_sum()
            self.take(")")
            return inner
        raise OrdinalSyntaxError(f"bad exponent {value!r}", 1, column)
