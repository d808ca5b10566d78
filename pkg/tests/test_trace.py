from fractions import Fraction

import pytest

from wordmeasure.ratfn import RationalFunction, rf
from wordmeasure.surfaces import PairCapExceeded
from wordmeasure.trace import (
    parity_report,
    scl_upper_bound,
    trace_exact,
    trace_leading,
)
from wordmeasure.words import parse, parse_tuple, word_tuple

GOLDEN_FUNCTIONS = {
    "[x,y]": rf((1,), (0, 1)),
    "[x^2,y]": rf((2,), (0, 1)),
    "[x,y]^2": rf((-4,), (0, -1, 0, 1)),
    "[x,y]^3": rf((36, 0, 9), (0, 4, 0, -5, 0, 1)),
    "[x,y][x,z]": RationalFunction.zero(),
    "[x,y][x^2y^2,z]": rf((-8, 0, 1), (0, 4, 0, -5, 0, 1)),
    "[x,y][x,z][x,t]": RationalFunction.zero(),
}


class TestExactValues:
    def test_golden_functions(self, golden_tuples):
        for text, t in golden_tuples.items():
            assert trace_exact(t).function == GOLDEN_FUNCTIONS[text], text

    def test_unbalanced_is_zero(self):
        result = trace_exact(parse_tuple(["x"], 1))
        assert result.function.is_zero
        assert not result.balanced
        assert result.leading is None

    def test_annulus_constants(self):
        assert trace_exact(parse_tuple(["x", "X"], 1)).function == 1
        assert trace_exact(parse_tuple(["x^2", "X^2"], 1)).function == 2
        assert trace_exact(parse_tuple(["x^3", "X^3"], 1)).function == 3
        assert trace_exact(parse_tuple(["xy", "YX"], 2)).function == 1

    def test_annulus_limit_for_word_and_inverse(self):
        # a non-power word against its inverse tends to 1 at n = infinity
        result = trace_exact(parse_tuple(["[x,y]", "yxYX"], 2))
        assert result.function == rf((0, 0, 1), (-1, 0, 1))  # n^2/(n^2-1)
        assert result.leading == (0, 1)

    def test_empty_word_multiplies_by_n(self):
        with_empty = trace_exact(parse_tuple(["[x,y]", ""], 2))
        assert with_empty.function == rf((1,))  # (1/n) * n
        only_empty = trace_exact(parse_tuple(["", ""], 1))
        assert only_empty.function == rf((0, 0, 1))  # n^2

    def test_validity_threshold(self, golden_tuples):
        assert trace_exact(golden_tuples["[x,y]^3"]).validity_threshold == 3
        assert trace_exact(golden_tuples["[x,y]"]).validity_threshold == 1

    def test_evaluate_guards_threshold(self, golden_tuples):
        result = trace_exact(golden_tuples["[x,y]^2"])
        assert result.evaluate(2) == Fraction(-4, 6)
        with pytest.raises(ValueError):
            result.evaluate(1)
        # the bare rational function has a pole at 1 here, but the guard
        # triggers first; opting out reaches the function itself
        assert result.evaluate(5, allow_below_threshold=True) == Fraction(-4, 120)

    def test_presentation_independence(self):
        # Match() depends on the written form; the trace must not
        conjugated = parse_tuple(["x [x,y] X"], 2)
        assert (
            trace_exact(conjugated, cyclic_reduce=False).function
            == GOLDEN_FUNCTIONS["[x,y]"]
        )

    def test_conjugation_and_inversion_invariance(self, golden_tuples):
        for text in ("[x,y]", "[x,y]^2", "[x^2,y]"):
            t = golden_tuples[text]
            base = trace_exact(t).function
            word = t.words[0]
            u = parse("y", 2)
            conjugated = word_tuple([u * word * u.inverse()], t.rank)
            assert trace_exact(conjugated, cyclic_reduce=False).function == base
            assert trace_exact(word_tuple([word.inverse()], t.rank)).function == base

    def test_multiplicative_on_disjoint_generators(self):
        # trace(w1 w2) = trace(w1) trace(w2) / n for disjoint generator sets
        product = trace_exact(parse_tuple(["[x,y][z,t]"], 4)).function
        f1 = trace_exact(parse_tuple(["[x,y]"], 2)).function
        f2 = trace_exact(parse_tuple(["[z,t]"], 4)).function
        assert product == f1 * f2 * rf((1,), (0, 1))

    def test_pair_cap(self):
        with pytest.raises(PairCapExceeded):
            trace_exact(parse_tuple(["[x,y]^2"], 2), cap=8)


class TestLeading:
    def test_commutator_square(self, golden_tuples):
        lead = trace_leading(golden_tuples["[x,y]^2"])
        assert (lead.exponent, lead.coefficient) == (-3, -4)
        assert not lead.degenerate

    def test_degenerate_two_commutators(self, golden_tuples):
        lead = trace_leading(golden_tuples["[x,y][x,z]"])
        assert (lead.exponent, lead.coefficient) == (-3, 0)
        assert lead.degenerate

    def test_squared_generator_commutator(self, golden_tuples):
        lead = trace_leading(golden_tuples["[x^2,y]"])
        assert (lead.exponent, lead.coefficient) == (-1, 2)

    def test_unbalanced_flagged(self):
        lead = trace_leading(parse_tuple(["x"], 1))
        assert lead.exponent is None
        assert lead.degenerate and not lead.balanced

    def test_consistency_with_laurent(self, golden_tuples):
        # the exact leading term agrees with the shortcut unless degenerate,
        # in which case the true exponent drops by at least 2
        for t in golden_tuples.values():
            result = trace_exact(t)
            lead = trace_leading(t)
            if lead.coefficient != 0:
                assert result.leading == (lead.exponent, Fraction(lead.coefficient))
            elif not result.function.is_zero:
                assert result.leading[0] <= lead.exponent - 2

    def test_exponent_never_beats_ch(self, golden_tuples):
        for t in golden_tuples.values():
            result = trace_exact(t)
            lead = trace_leading(t)
            if result.leading is not None:
                assert result.leading[0] <= lead.exponent


class TestParity:
    def test_single_word_odd_exponents(self, golden_tuples):
        assert parity_report(golden_tuples["[x,y]^2"])

    def test_pair_of_words_even_exponents(self):
        assert parity_report(parse_tuple(["x", "X"], 1))
        assert parity_report(parse_tuple(["x^2", "X^2"], 1))

    def test_unbalanced_vacuous(self):
        assert parity_report(parse_tuple(["x"], 1))

    def test_all_golden(self, golden_tuples):
        for t in golden_tuples.values():
            assert parity_report(t)


class TestSclBound:
    def test_commutator_budget_one(self):
        assert scl_upper_bound(parse("[x,y]", 2), 1) == Fraction(1, 2)

    def test_commutator_budget_three(self):
        assert scl_upper_bound(parse("[x,y]", 2), 3) == Fraction(1, 2)

    def test_monotone_in_budget(self):
        w = parse("[x,y][x,z]", 3)
        bounds = [scl_upper_bound(w, b) for b in (1, 2, 3)]
        assert bounds[0] >= bounds[1] >= bounds[2]

    def test_rejects_unbalanced(self):
        with pytest.raises(ValueError):
            scl_upper_bound(parse("x", 1), 2)
        with pytest.raises(ValueError):
            scl_upper_bound(parse("x X", 1), 2)

    def test_cap_skips_tuples_but_total_failure_raises(self):
        w = parse("[x,y]", 2)
        # cap small enough to kill every tuple
        with pytest.raises(PairCapExceeded):
            scl_upper_bound(w, 2, cap=0)
