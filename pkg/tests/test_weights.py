######################
# Test prior weights
######################
import map_ties as mt
from fractions import Fraction
import pytest
from hypothesis import given, strategies as st


terms = st.dictionaries(st.integers(-4, 4), st.fractions(max_denominator=9).filter(bool), max_size=4)
weights = terms.map(mt.LaurentWeight)
positive_q = st.fractions(min_value=Fraction(1, 9), max_value=9, max_denominator=9).filter(lambda q: q > 0)


class Test_parse_weight:
    def test_one(self):
        assert mt.parse_weight("q^2").terms == {2: 1}

    def test_two(self):
        assert mt.parse_weight("2 + q^2 + q^-2").terms == {0: 2, 2: 1, -2: 1}

    def test_three(self):
        assert mt.parse_weight("1/3*q^-1 + 1/3*q^-1").terms == {-1: Fraction(2, 3)}

    def test_four(self):
        assert mt.parse_weight(" - 3/4 q + q ^ +2 ").terms == {1: Fraction(-3, 4), 2: 1}

    def test_five(self):
        with pytest.raises(mt.WeightSyntaxError) as err:
            mt.parse_weight("2 + * q")
        assert err.value.position == 4

    def test_six(self):
        with pytest.raises(mt.WeightSyntaxError):
            mt.parse_weight("1/0")

    def test_seven(self):
        with pytest.raises(mt.InstanceError):
            mt.parse_weight("q - q", nonzero=True)
        assert mt.parse_weight("q - q").is_zero()

    def test_eight(self):
        with pytest.raises(mt.WeightSyntaxError):
            mt.parse_weight("")

    @given(weights)
    def test_round_trip(self, w):
        assert mt.parse_weight(mt.format_weight(w)) == w


class Test_eval_weight:
    def test_one(self):
        assert mt.eval_weight(mt.parse_weight("q^2"), 2) == 4

    def test_two(self):
        assert mt.eval_weight(mt.parse_weight("2 + q^2 + q^-2"), 2) == Fraction(25, 4)

    def test_three(self):
        assert mt.eval_weight(mt.parse_weight("3*q^-1"), Fraction(3, 2)) == 2

    def test_four(self):
        with pytest.raises(mt.MapTiesError):
            mt.eval_weight(mt.parse_weight("q"), 0)

    @given(weights, weights, positive_q)
    def test_ring_laws(self, a, b, q):
        assert (a + b).evaluate(q) == a.evaluate(q) + b.evaluate(q)
        assert (a * b).evaluate(q) == a.evaluate(q) * b.evaluate(q)
        assert (a - a).is_zero()


class Test_format_weight:
    def test_one(self):
        assert mt.format_weight(mt.parse_weight("q^-2 + 2 + q^2")) == "q^2 + 2 + q^-2"

    def test_two(self):
        assert str(mt.LaurentWeight({1: -1, 0: Fraction(1, 2)})) == "-q + 1/2"

    def test_three(self):
        assert str(mt.LaurentWeight()) == "0"


class Test_parse_rational:
    def test_one(self):
        assert mt.parse_rational("1/3") == Fraction(1, 3)

    def test_two(self):
        assert mt.parse_rational(" 7 ") == 7

    def test_three(self):
        with pytest.raises(mt.MapTiesError):
            mt.parse_rational("0.25")

    @given(st.fractions())
    def test_canonical(self, value):
        parsed = mt.parse_rational(mt.format_rational(value))
        assert parsed == value and parsed.denominator > 0
