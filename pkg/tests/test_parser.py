import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from weylurn import (
    ExprSyntaxError,
    NegativeCoefficientError,
    Process,
    Word,
    parse,
    pretty,
)

EXAMPLE_STRINGS = [
    "2 X^3 D + 5 X D^2 X",
    "X D + 1/2 X + 1/2 D",
    "X D",
    "D X",
    "D^2 X^2",
    "X D + X",
    "X",
    "D",
    "X^2 D",
    "D^2 X",
    "X + D",
    "0",
    "",
    "3",
    "2*X^4",
    "  1/3  D  +  7 ",
]

words = st.text(alphabet="XD", max_size=5).map(Word)
weights = st.fractions(min_value=Fraction(1, 9), max_value=9, max_denominator=9)
processes = st.dictionaries(words, weights, max_size=4).map(Process)


class TestParse:
    def test_weighted_sum(self):
        assert parse("2 X^3 D + 5 X D^2 X") == Process({Word("XXXD"): 2, Word("XDDX"): 5})

    def test_rational_weights(self):
        got = parse("X D + 1/2 X + 1/2 D")
        assert got == Process({Word("XD"): 1, Word("X"): Fraction(1, 2), Word("D"): Fraction(1, 2)})

    def test_empty_is_zero(self):
        assert parse("") == Process.zero()
        assert parse("   ") == Process.zero()
        assert parse("0") == Process.zero()

    def test_bare_constant_is_identity_multiple(self):
        assert parse("3") == Process({Word(): 3})
        assert parse("1/2") == Process({Word(): Fraction(1, 2)})

    def test_explicit_star_and_tight_spacing(self):
        assert parse("2*X^3D") == parse("2 X^3 D")
        assert parse("1/2X") == parse("1/2 X")

    def test_merges_like_terms(self):
        assert parse("X + X + 2 X") == Process({Word("X"): 4})

    def test_missing_exponent_position(self):
        with pytest.raises(ExprSyntaxError) as err:
            parse("X ^")
        assert err.value.position == 3

    def test_zero_exponent_rejected(self):
        with pytest.raises(ExprSyntaxError):
            parse("X^0")

    def test_trailing_garbage_position(self):
        with pytest.raises(ExprSyntaxError) as err:
            parse("X 2")
        assert err.value.position == 3

    def test_missing_term_after_plus(self):
        with pytest.raises(ExprSyntaxError):
            parse("X + ")

    def test_zero_denominator(self):
        with pytest.raises(ExprSyntaxError):
            parse("1/0 X")

    def test_negative_coefficient_distinct_error(self):
        with pytest.raises(NegativeCoefficientError) as err:
            parse("X + -2 D")
        assert err.value.position == 5
        assert isinstance(err.value, ExprSyntaxError)

    def test_unknown_character(self):
        with pytest.raises(ExprSyntaxError):
            parse("X * Y")


class TestPretty:
    def test_single_word(self):
        assert pretty(Process({Word("XD"): 1})) == "X D"

    def test_weighted_sum(self):
        p = Process({Word("XXXD"): 2, Word("XDDX"): 5})
        assert pretty(p) == "2 X^3 D + 5 X D^2 X"

    def test_zero(self):
        assert pretty(Process.zero()) == "0"

    def test_identity_term(self):
        assert pretty(Process({Word(): 3, Word("X"): 1})) == "X + 3"
        assert pretty(Process({Word(): 1})) == "1"

    def test_sort_order(self):
        p = Process({Word("D"): 1, Word("X"): 1, Word("XD"): 1, Word("DX"): 1})
        assert pretty(p) == "X D + D X + X + D"


class TestRoundTrip:
    @given(processes)
    @settings(max_examples=150)
    def test_parse_pretty_identity(self, p):
        assert parse(pretty(p)) == p

    def test_seeded_sweep(self):
        rng = random.Random(7)
        for _ in range(100):
            pairs = []
            for _ in range(rng.randint(0, 4)):
                letters = "".join(rng.choice("XD") for _ in range(rng.randint(0, 5)))
                pairs.append((Word(letters), Fraction(rng.randint(1, 9), rng.randint(1, 9))))
            p = Process(pairs)
            assert parse(pretty(p)) == p

    @pytest.mark.parametrize("text", EXAMPLE_STRINGS)
    def test_pretty_parse_idempotent(self, text):
        once = pretty(parse(text))
        assert pretty(parse(once)) == once
