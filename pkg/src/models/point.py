# src/models/point.py
from dataclasses import dataclass

from src.utils.errors import ParseError


class PointSyntaxError(ParseError):
    pass


def _check_bits(text, what):
    if any(ch not in "01" for ch in text):
        raise ValueError(f"{what} must be a bit string, got {text!r}")


def _primitive_root(word: str) -> str:
    size = len(word)
    for d in range(1, size + 1):
        if size % d == 0 and word[:d] * (size // d) == word:
            return word[:d]
    return word


@dataclass(frozen=True)
class Point:
    """An eventually periodic point of Cantor space: ``prefix`` followed by ``period`` forever.

    Construction canonicalizes: the period is made primitive and the prefix is
    shortened as far as it goes, so equal sequences compare equal.
    """

    prefix: str
    period: str

    def __post_init__(self):
        _check_bits(self.prefix, "prefix")
        _check_bits(self.period, "period")
        if not self.period:
            raise ValueError("period must be nonempty")
        prefix, period = self.prefix, _primitive_root(self.period)
        while prefix and prefix[-1] == period[-1]:
            prefix = prefix[:-1]
            period = period[-1] + period[:-1]
        object.__setattr__(self, "prefix", prefix)
        object.__setattr__(self, "period", period)

    @classmethod
    def constant(cls, bit: int) -> "Point":
        return cls("", str(bit))

    @classmethod
    def parse(cls, text: str) -> "Point":
        head, sep, tail = text.strip().partition(";")
        head, tail = head.strip(), tail.strip()
        if not sep:
            raise PointSyntaxError(f"point {text!r} must have the form prefix;period", 1, 1)
        for offset, ch in enumerate(head + ";" + tail):
            if ch not in "01;":
                raise PointSyntaxError(f"unexpected character {ch!r} in point", 1, offset + 1)
        if not tail:
            raise PointSyntaxError("period must be nonempty", 1, len(head) + 2)
        return cls(head, tail)

    def bit(self, n: int) -> int:
        if n < 0:
            raise IndexError("bit positions are natural numbers")
        if n < len(self.prefix):
            return int(self.prefix[n])
        return int(self.period[(n - len(self.prefix)) % len(self.period)])

    def bits(self, n: int) -> str:
        """The first n bits as a string."""
        return "".join(str(self.bit(i)) for i in range(n))

    def shift(self, k: int) -> "Point":
        if k <= len(self.prefix):
            return Point(self.prefix[k:], self.period)
        offset = (k - len(self.prefix)) % len(self.period)
        return Point("", self.period[offset:] + self.period[:offset])

    def __str__(self):
        return f"{self.prefix};{self.period}"
