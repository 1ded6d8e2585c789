"""Parser and printer for the operator-expression mini-language.

Grammar (whitespace is insignificant, error positions are 1-based):

    expression  = [ term { "+" term } ]
    term        = coefficient [ "*" ] { factor }     (at least one part)
    factor      = ( "X" | "D" ) [ "^" posint ]
    coefficient = nonneg-int [ "/" posint ]

A bare coefficient is a multiple of the identity word, so "0" parses to
the zero process and every canonical process round-trips through
``pretty``.  Negative coefficients raise NegativeCoefficientError, a
distinct subclass of the syntax error.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import groupby

from .algebra import Process, Word

__all__ = ["ExprSyntaxError", "NegativeCoefficientError", "parse", "pretty"]


class ExprSyntaxError(ValueError):
    """Malformed expression; `position` is the 1-based character index."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


class NegativeCoefficientError(ExprSyntaxError):
    """Coefficients count copies of a word and must be nonnegative."""


class _Scanner:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0  # 0-based; errors report pos + 1

    def skip_ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def fail(self, message: str, at: int | None = None):
        raise ExprSyntaxError(message, (self.pos if at is None else at) + 1)

    def digits(self) -> int:
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        return int(self.text[start : self.pos])

    def coefficient(self) -> Fraction:
        if self.peek() == "-":
            raise NegativeCoefficientError("negative coefficient", self.pos + 1)
        numerator = self.digits()
        mark = self.pos
        self.skip_ws()
        if self.peek() != "/":
            self.pos = mark
            return Fraction(numerator)
        self.pos += 1
        self.skip_ws()
        if not self.peek().isdigit():
            self.fail("expected denominator after '/'")
        den_at = self.pos
        denominator = self.digits()
        if denominator == 0:
            self.fail("denominator must be positive", den_at)
        return Fraction(numerator, denominator)

    def term(self) -> tuple[Word, Fraction]:
        coeff = None
        if self.peek() == "-":
            raise NegativeCoefficientError("negative coefficient", self.pos + 1)
        if self.peek().isdigit():
            coeff = self.coefficient()
            self.skip_ws()
            if self.peek() == "*":
                self.pos += 1
                self.skip_ws()
        letters = []
        while self.peek() in ("X", "D"):
            gen = self.peek()
            self.pos += 1
            count = 1
            mark = self.pos
            self.skip_ws()
            if self.peek() == "^":
                caret_at = self.pos
                self.pos += 1
                self.skip_ws()
                if not self.peek().isdigit():
                    self.fail("missing exponent after '^'", caret_at)
                exp_at = self.pos
                count = self.digits()
                if count == 0:
                    self.fail("exponent must be positive", exp_at)
            else:
                self.pos = mark
            letters.append(gen * count)
            self.skip_ws()
        if coeff is None and not letters:
            self.fail("expected a coefficient or a generator")
        return Word("".join(letters)), Fraction(1) if coeff is None else coeff


def parse(text: str) -> Process:
    """Parse an expression into a canonical process (like terms merged).

    Raises ExprSyntaxError with a 1-based position on malformed input and
    NegativeCoefficientError on a leading minus sign.
    """
    scanner = _Scanner(text)
    scanner.skip_ws()
    if not scanner.peek():
        return Process.zero()
    terms = [scanner.term()]
    while scanner.peek():
        if scanner.peek() != "+":
            scanner.fail("expected '+' between terms")
        scanner.pos += 1
        scanner.skip_ws()
        terms.append(scanner.term())
    return Process(terms)


def _word_key(word: Word):
    # longer words first, then lexicographic with X before D
    return (-len(word.letters), [gen != "X" for gen in word.letters])


def pretty(p: Process) -> str:
    """Canonical rendering; parse(pretty(p)) == p for every process.

    Terms are sorted by word (descending length, then X before D), runs of
    one generator collapse to exponents, and a unit coefficient is omitted
    unless the word is empty.
    """
    if not p.terms:
        return "0"
    rendered = []
    for word in sorted(p.terms, key=_word_key):
        weight = p.terms[word]
        pieces = [] if weight == 1 and word.letters else [str(weight)]
        for gen, run in groupby(word.letters):
            n = len(list(run))
            pieces.append(gen if n == 1 else f"{gen}^{n}")
        rendered.append(" ".join(pieces))
    return " + ".join(rendered)
