from collections import Counter
from itertools import permutations

from clusterforge.cluster_engine import cluster_variable
from clusterforge.core import all_words
from clusterforge.laurent import xs
from clusterforge.triangulation import (
    dual_resolution_tree, dual_triangulation, enumerate_dual_resolutions, enumerate_resolutions,
    is_fan, is_zigzag, resolution_sum, resolution_tree, triangulation_from_word,
)


def test_running_example_hexagon():
    T = triangulation_from_word("ab")
    assert T.size == 6 and T.n == 3
    labels = sorted(lab for lab in T.edge_labels.values())
    assert labels == list(range(1, 10))
    assert is_zigzag(T)


def test_fan_and_quadrilateral():
    assert is_fan(triangulation_from_word("bb"))
    Q = triangulation_from_word("")
    assert Q.size == 4 and is_fan(Q) and is_zigzag(Q)


def test_consecutive_triangles_share_one_diagonal():
    for w in all_words(6):
        T = triangulation_from_word(w)
        for i in range(1, T.n + 1):
            shared = set(T.triangle_edges(i - 1)) & set(T.triangle_edges(i))
            assert shared == {i}


def test_dual_triangulation():
    T = triangulation_from_word("ab")
    D = dual_triangulation(T)
    E = triangulation_from_word("bb")
    assert D.edge_labels == E.edge_labels and D.triangles == E.triangles
    A = triangulation_from_word("abab")
    assert dual_triangulation(dual_triangulation(A)).edge_labels == A.edge_labels


def test_quadrilateral_dual_swaps_boundary_labels():
    Q = triangulation_from_word("")
    D = dual_triangulation(Q)
    assert D.triangle_labels(1) != Q.triangle_labels(1)
    assert sorted(D.triangle_labels(1)) == sorted(Q.triangle_labels(1))


def test_resolutions_of_running_example(x_ab):
    leaves = enumerate_resolutions("ab")
    assert len(leaves) == 8
    assert resolution_sum("ab") == x_ab
    assert resolution_sum(dual_triangulation(triangulation_from_word("ab")), dual=True) == x_ab


def test_one_crossing():
    leaves = enumerate_resolutions("")
    assert len(leaves) == 2 and all(d.loops == 0 for d, _ in leaves)
    assert {wt for _, wt in leaves} == {xs(2, 4), xs(3, 5)}
    slides = enumerate_dual_resolutions("")
    assert len(slides) == 2 and all(d.loops == 0 for d, _ in slides)


def test_resolution_order_does_not_matter():
    T = triangulation_from_word("abb")
    ref = Counter(str(leaf.weight) for leaf in resolution_tree(T).leaves())
    for order in permutations(range(1, T.n + 1)):
        assert Counter(str(leaf.weight) for leaf in resolution_tree(T, order).leaves()) == ref


def test_dual_tree_matches_primal_tree():
    T = triangulation_from_word("ab")
    primal = resolution_tree(T)
    dual = dual_resolution_tree(dual_triangulation(T))
    assert primal.canonical() == dual.canonical()


def test_skein_sum_equals_arc_variable():
    for w in all_words(4):
        assert resolution_sum(w) == cluster_variable(triangulation_from_word(w))
