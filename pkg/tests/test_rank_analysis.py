import random
from fractions import Fraction

import pytest
import sympy as sp

from clusterforge.core import ONE, all_words, cf_value, dual_word, q_number
from clusterforge.rank_analysis import (
    analyze, has_unimodal_growth, hook_expansion_text, is_almost_weakly_trapezoidal, is_symmetric,
    is_unimodal, is_weakly_trapezoidal, plateaus, q_deformed_rational, q_deformed_rational_dual,
    q_rational_value_at_one, rank_enumerated, rank_fibonacci, rank_hook, rank_recursive,
    symmetry_by_shape,
)
from clusterforge.snakegraph import cf_of_word, straight_segments


def test_recursion_on_the_three_segment_example():
    assert rank_recursive("aabaa").to_list() == [1, 2, 3, 3, 3, 2, 1]


def test_single_tile():
    assert rank_recursive("").to_list() == [1, 1]


def test_hook_closed_form():
    assert rank_recursive("aabbbb") == ONE + (q_number(3) * q_number(5)).shift(1)


def test_hook_expansion_texts():
    assert hook_expansion_text("aabaa") == "H12H3 + H1H^23"
    assert hook_expansion_text("abbaab") == "H12H34 + H1H^23H4"
    assert rank_hook("abbaab") == rank_recursive("abbaab")


def test_straight_graph_is_a_q_number():
    for n in range(1, 8):
        s = "a" * (n - 1)
        assert rank_hook(s) == rank_fibonacci(s) == rank_recursive(s) == q_number(n + 1)


def test_fibonacci_matches_hook_on_random_three_segment_shapes():
    rng = random.Random(7)
    for _ in range(20):
        k = [rng.randint(1, 4) for _ in range(3)]
        s = "a" * k[0] + "b" * k[1] + "a" * k[2]
        assert len(straight_segments(s)) == 3
        assert rank_fibonacci(s) == rank_hook(s)


def test_four_segment_corner_formula():
    # degree-reversed reading of the displayed four-segment sum
    for shape in ("abbaab", "aabbbaab", "abab", "aabbaabb"):
        k1, k2, k3, k4 = straight_segments(shape)
        qn = q_number
        total = (qn(k1) * qn(k4) + (qn(k1) * qn(k2) * qn(k3) * qn(k4)).shift(1)
                 + (qn(k3) * qn(k4)).shift(k1 + k2) + (qn(k1) * qn(k2)).shift(k3 + k4)
                 + ONE.shift(k1 + k2 + k3 + k4 - 1))
        assert rank_fibonacci(shape) == total.reversed()


@pytest.mark.parametrize("length", range(0, 8))
def test_all_rank_methods_agree_with_enumeration(length):
    for s in all_words(length, length):
        L = rank_enumerated(s)
        assert rank_recursive(s) == L
        assert rank_hook(s) == L
        assert rank_fibonacci(s) == L


def test_coefficient_predicates():
    assert is_unimodal([1, 2, 3, 3, 2, 1])
    assert not is_unimodal([1, 3, 2, 3])
    assert is_symmetric([1, 2, 1]) and not is_symmetric([1, 1, 2, 1])
    assert is_weakly_trapezoidal([1, 2, 3, 3, 3, 2, 1])
    assert not is_weakly_trapezoidal([1, 1, 2, 1])
    assert is_almost_weakly_trapezoidal([1, 1, 2, 2, 1])
    assert has_unimodal_growth([1, 2, 4, 5, 4, 2, 1])
    assert not has_unimodal_growth([1, 1, 1])
    assert plateaus([1, 2, 3, 3, 3, 2, 1]) == [(2, 3)]


def test_constant_polynomial():
    flags = analyze(ONE)
    assert flags["unimodal"] and flags["symmetric"]


def test_hook_coefficients():
    for k1 in range(2, 7):
        for k2 in range(2, 7):
            p = rank_recursive("a" * (k1 - 1) + "b" * (k2 - 1)).to_list()
            n, k = k1 + k2 - 1, min(k1, k2)
            assert max(p) == k
            assert [i for i, c in enumerate(p) if c == k] == list(range(k, n - k + 2))


def test_q_number_times_hook():
    for k1 in range(2, 6):
        for k2 in range(2, 6):
            hook = rank_recursive("a" * (k1 - 1) + "b" * (k2 - 1))
            for m in range(2, 5):
                flags = analyze(q_number(m) * hook)
                assert flags["weakly_trapezoidal"] and flags["unimodal_growth"]


def test_symmetry_predictions_hold():
    for s in all_words(8):
        d = symmetry_by_shape(s)
        assert d["L_symmetric"] == d["L_symmetric_predicted"]
        assert d["P_symmetric"] == d["P_symmetric_predicted"]


def test_silver_mean_truncation():
    # shape with continued fraction [2,2,2,2,2] (written [2,2,2,2,1,1])
    d = symmetry_by_shape("aabbaabb")
    assert d["P_symmetric"] and not d["L_symmetric"]


def test_even_zigzag_is_symmetric():
    for n in (2, 4, 6):
        assert symmetry_by_shape(("ab" * n)[: n - 1])["L_symmetric"]


def _reference_q_rational(cf):
    """Nested q-continued fraction with alternating q and 1/q parts."""
    q = sp.Symbol("q")
    cf = list(cf)
    if len(cf) % 2 and cf[-1] > 1:
        cf = cf[:-1] + [cf[-1] - 1, 1]

    def qn(a, t):
        return sum(t ** i for i in range(a))

    def rec(i):
        even = i % 2 == 0
        head = qn(cf[i], q) if even else qn(cf[i], 1 / q)
        if i == len(cf) - 1:
            return head
        return head + (q ** cf[i] if even else q ** -cf[i]) / rec(i + 1)

    return q, sp.cancel(sp.together(rec(0)))


def _as_expr(p, q):
    return sum(c * q ** i for i, c in enumerate(p.to_list()))


def test_q_deformed_rational_running_example():
    num, den = q_deformed_rational("ab")
    assert num.to_list() == [1, 1, 2, 1]
    assert q_rational_value_at_one((num, den)) == Fraction(5, 3)


@pytest.mark.parametrize("w", all_words(6))
def test_q_deformed_rationals_match_reference(w):
    q, ref = _reference_q_rational(cf_of_word(w))
    num, den = q_deformed_rational(w)
    assert sp.cancel(_as_expr(num, q) / _as_expr(den, q) - ref) == 0
    q, ref_dual = _reference_q_rational(cf_of_word(dual_word(w)))
    num, den = q_deformed_rational_dual(w)
    assert sp.cancel(_as_expr(num, q) / _as_expr(den, q) - ref_dual) == 0
    assert q_rational_value_at_one((num, den)) == cf_value(cf_of_word(dual_word(w)))
