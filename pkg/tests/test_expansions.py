import pytest

from clusterforge.cluster_engine import cluster_variable
from clusterforge.core import all_words
from clusterforge.expansions import (
    KINDS, L_extremes, P_extremes, angle_extremes, check_all_isomorphisms, diagonal_product,
    enumerate_A, enumerate_B, enumerate_L, enumerate_P, enumerate_S, enumerate_T, expansion_poset,
    expansion_value, path_extremes, weight_sum,
)
from clusterforge.laurent import x, xs
from clusterforge.poset import (
    chain, fence, fibonacci_cube, is_distributive, order_ideals, poset_isomorphic,
)
from clusterforge.snakegraph import snake_graph
from clusterforge.triangulation import triangulation_from_word


@pytest.mark.parametrize("kind", KINDS)
def test_running_example_has_five_terms(kind, x_ab):
    X = expansion_poset("ab", kind)
    assert len(X) == 5
    assert expansion_value("ab", kind) == x_ab


def test_T_sum_is_written_directly(x_ab):
    T = enumerate_T("ab")
    assert weight_sum(T) == x_ab
    assert xs(6, 9) * x(2) ** -1 in set(T.weights)


def test_P_of_running_example():
    G = snake_graph("ab")
    P = enumerate_P(G)
    lo, hi = P_extremes(G, P)
    assert P.minimal() == [lo] and P.maximal() == [hi]
    assert P.weights[lo] == xs(1, 3, 6, 9)
    assert poset_isomorphic(P, fibonacci_cube(3))


def test_L_on_dual_graph_sums_to_arc(x_ab):
    G = snake_graph("bb")
    L = enumerate_L(G)
    assert len(L) == 5
    assert weight_sum(L) / diagonal_product(3) == x_ab
    lo, hi = L_extremes(G, L)
    assert L.minimal() == [lo] and L.maximal() == [hi]


def test_A_weights_match_P_weights():
    A = enumerate_A("ab")
    P = enumerate_P("ab")
    assert sorted(map(str, A.weights)) == sorted(map(str, P.weights))
    T = triangulation_from_word("ab")
    lo, hi = angle_extremes(T, A)
    assert A.minimal() == [lo] and A.maximal() == [hi]


def test_B_minimum_on_fan():
    B = enumerate_B(triangulation_from_word("bb"))
    assert len(B) == 5
    assert B.weights[B.minimal()[0]] == xs(1, 3, 6, 9)


def test_S_maximum_uses_a_diagonal_twice():
    T = triangulation_from_word("bb")
    S = enumerate_S(T)
    top = S.payloads[S.maximal()[0]]
    assert any(top.count(lab) == 2 for lab in range(1, T.n + 1))
    lo, hi = path_extremes(T, S, "S")
    assert S.minimal() == [lo] and S.maximal() == [hi]


def test_quadrilateral_cases():
    for kind in KINDS:
        X = expansion_poset("", kind)
        assert poset_isomorphic(X, chain(2))
    T = enumerate_T("")
    assert sorted(len(p) for p in T.payloads) == [3, 3]
    assert sorted(sum(1 for e in p if e[1] == "b") for p in T.payloads) == [2, 2]


def test_empty_word_T_cli_example():
    assert len(expansion_poset("", "T")) == 2


def test_zigzag_and_straight_graphs():
    for n in range(1, 7):
        zig = "ab" * n
        straight = "a" * n
        # G_w is straight when w is zigzag and the other way round
        assert poset_isomorphic(enumerate_P(straight), chain(len(straight) + 2))
        assert poset_isomorphic(enumerate_P(zig[:n]), fibonacci_cube(n + 1))


@pytest.mark.parametrize("w", all_words(4))
def test_all_expansions_match_the_oracle(w):
    xw = cluster_variable(triangulation_from_word(w))
    for kind in KINDS:
        assert expansion_value(w, kind) == xw, kind


@pytest.mark.parametrize("w", all_words(4))
def test_structure_maps_are_isomorphisms(w):
    maps = check_all_isomorphisms(w)
    assert len(maps) == 8
    P = expansion_poset(w, "P")
    for name in ("P->A", "A->T", "P->L*", "A->B*", "T->S*"):
        assert sorted(maps[name].values()) == list(range(len(P)))


def test_expansion_lattices_are_distributive_ideal_lattices():
    for w in all_words(4):
        P = expansion_poset(w, "P")
        assert is_distributive(P)
        assert poset_isomorphic(P, order_ideals(fence(w)))


def test_unknown_kind():
    with pytest.raises(ValueError):
        expansion_poset("ab", "Q")
