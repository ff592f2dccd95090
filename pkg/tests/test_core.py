from fractions import Fraction

import pytest

from clusterforge.core import (
    InvalidWord, QPolynomial, all_words, cf_dual, cf_normalize, cf_value, check_word,
    conjugate_word, dual_word, fibonacci, q_binomial, q_number, reverse_word, word_predicates,
)


def test_check_word_rejects_other_letters():
    with pytest.raises(InvalidWord):
        check_word("abc")
    assert check_word("") == ""


def test_dual_word_examples():
    assert dual_word("ab") == "bb"
    assert dual_word("") == ""
    assert dual_word(dual_word("aabab")) == "aabab"


def test_dual_is_involution_on_short_words():
    assert all(dual_word(dual_word(w)) == w for w in all_words(8))


def test_word_predicates():
    assert word_predicates("aabb")["self_conjugate"]
    assert not word_predicates("aabb")["symmetric"]
    assert word_predicates("baaab")["symmetric"]
    empty = word_predicates("")
    assert empty["straight"] and empty["zigzag"]


def test_straight_words_dualize_to_zigzag():
    for w in all_words(8, 1):
        assert word_predicates(w)["straight"] == word_predicates(dual_word(w))["zigzag"]


def test_conjugate_and_reverse():
    assert reverse_word("aab") == "baa"
    assert conjugate_word("aabb") == "aabb"


def test_all_words_counts():
    assert len(all_words(6)) == 127
    assert len(all_words(10, 1)) == 2046


def test_cf_value():
    assert cf_value([1, 1, 1, 1]) == Fraction(5, 3)
    assert cf_value([7]) == 7
    assert cf_value([2, 1, 1]) == Fraction(5, 2)
    with pytest.raises(ValueError):
        cf_value([1, 0])


def test_cf_dual():
    assert cf_dual([1, 1, 1, 1]) == [4]
    assert cf_dual(cf_dual([3, 2])) == [3, 2]
    assert cf_dual([2, 2]) == [1, 2, 1]


def test_cf_normalize_merges_trailing_one():
    assert cf_normalize([2, 1]) == [3]
    assert cf_value(cf_normalize([1, 2, 1])) == cf_value([1, 2, 1])


def test_fibonacci():
    assert [fibonacci(k) for k in range(1, 9)] == [1, 1, 2, 3, 5, 8, 13, 21]


def test_q_numbers_and_binomials():
    assert q_number(4).to_list() == [1, 1, 1, 1]
    assert q_binomial(6, 3).to_list() == [1, 1, 2, 3, 3, 3, 3, 2, 1, 1]
    assert q_binomial(5, 0).to_list() == [1]
    assert q_binomial(4, 2).to_list() == [1, 1, 2, 1, 1]


def test_q_binomial_pascal_recurrence():
    for n in range(1, 10):
        for k in range(1, n):
            rhs = q_binomial(n - 1, k - 1) + q_binomial(n - 1, k).shift(k)
            assert q_binomial(n, k) == rhs


def test_qpolynomial_arithmetic():
    p = QPolynomial.of([1, 2, 1])
    assert (p * q_number(2)).to_list() == [1, 3, 3, 1]
    assert p(1) == 4
    assert p.shift(2).to_list() == [0, 0, 1, 2, 1]
    assert p.shift(2).shift(-2) == p
    assert QPolynomial.of([1, 2, 3]).reversed().to_list() == [3, 2, 1]
    assert (p * q_number(3)).exact_div(q_number(3)) == p
    with pytest.raises(ValueError):
        p.shift(-1)
