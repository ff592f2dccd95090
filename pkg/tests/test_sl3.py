from itertools import combinations

import pytest

from clusterforge.laurent import Laurent
from clusterforge.poset import chain, poset_isomorphic
from clusterforge.sl3 import (
    FrozenEdge, SL3Diagram, build_fan_sl3_seed, diagram_sum, edge_path_conditions, edge_poset,
    edge_var, enumerate_edge_diagrams, enumerate_face_diagrams, face_path_conditions, face_poset,
    face_var, fan_face, fan_face_to_sl2, flip, flip_oracle_edge, flip_oracle_face, longest_edge,
    sl2_fan_hat_ys, sl2_longest_arc, staircase_poset, verify_fork_join,
)


def e(a, b):
    return Laurent.var(edge_var(a, b))


def f(*t):
    return Laurent.var(face_var(t))


def test_quadrilateral_edge_flip():
    i, j, k, l = 1, 3, 0, 2
    expected = (e(i, k) * e(l, j) / e(l, k)
                + e(i, k) * e(l, i) * f(j, k, l) / (f(i, k, l) * e(l, k))
                + e(i, l) * e(k, j) / e(k, l)
                + e(i, l) * e(k, i) * f(j, k, l) / (f(i, k, l) * e(k, l)))
    assert flip_oracle_edge(4, 1, 3) == expected
    assert len(enumerate_edge_diagrams(4, 1, 3)) == 4


def test_quadrilateral_face_flip():
    i, j, k, l = 0, 1, 3, 2
    expected = (e(i, j) * f(i, k, l) + e(i, k) * f(i, j, l)) / e(i, l)
    assert flip_oracle_face(4, (0, 1, 3)) == expected
    assert len(enumerate_face_diagrams(4, (0, 1, 3))) == 2


def test_flip_twice_restores_the_seed():
    S = build_fan_sl3_seed(5)
    T = flip(S, (0, 2))
    assert T.diagonals != S.diagonals
    back = flip(T, (1, 3))
    assert back.diagonals == S.diagonals
    assert back.seed.cluster == S.seed.cluster


def test_boundary_edges_cannot_flip():
    with pytest.raises(FrozenEdge):
        flip(build_fan_sl3_seed(5), (0, 1))


def test_seed_elements_expand_to_themselves():
    ds = enumerate_edge_diagrams(6, 0, 3)
    assert len(ds) == 1 and ds[0].size() == 1
    fs = enumerate_face_diagrams(6, (0, 2, 3))
    assert len(fs) == 1 and fs[0].weight == f(0, 2, 3)


@pytest.mark.parametrize("N", range(4, 8))
def test_enumeration_matches_flip_oracle(N):
    for a in range(N):
        for b in range(N):
            if a != b:
                assert diagram_sum(enumerate_edge_diagrams(N, a, b)) == flip_oracle_edge(N, a, b)
    for tri in combinations(range(N), 3):
        assert diagram_sum(enumerate_face_diagrams(N, tri)) == flip_oracle_face(N, tri)


def test_counts_for_pentagon_and_hexagon():
    assert len(enumerate_edge_diagrams(5, *longest_edge(5))) == 9
    assert len(enumerate_face_diagrams(6, fan_face(6))) == 4


@pytest.mark.parametrize("N", range(4, 8))
def test_expansion_posets(N):
    n = N - 3
    assert poset_isomorphic(face_poset(N, fan_face(N)), chain(n + 1))
    assert poset_isomorphic(edge_poset(N, *longest_edge(N)), staircase_poset(n))


def test_longest_edge_extremes_in_pentagon():
    P = edge_poset(5, *longest_edge(5))
    lo = P.payloads[P.minimal()[0]]
    hi = P.payloads[P.maximal()[0]]
    assert lo.counts() == {("e", (1, 2)): 1, ("e", (0, 2)): -1, ("e", (0, 4)): 1}
    assert hi.counts() == {("e", (1, 0)): 1, ("e", (3, 0)): -1, ("e", (3, 4)): 1}


def test_diagram_algebra():
    d = SL3Diagram.blue_edge(1, 2) * SL3Diagram.blue_face((0, 1, 2))
    assert (d * d.inverse()).size() == 0
    assert d.weight == e(1, 2) * f(0, 1, 2)
    data = d.to_json()
    assert data["edges"][0]["color"] == "blue" and data["faces"][0]["tri"] == [0, 1, 2]


@pytest.mark.parametrize("N", range(4, 7))
def test_every_diagram_is_a_fork_join_immersion(N):
    for a in range(N):
        for b in range(N):
            if a == b:
                continue
            for d in enumerate_edge_diagrams(N, a, b):
                assert all(edge_path_conditions(N, d, a, b).values())
    for tri in combinations(range(N), 3):
        for d in enumerate_face_diagrams(N, tri):
            assert all(face_path_conditions(N, d, tri).values())


def test_duplicated_edge_is_rejected():
    bad = SL3Diagram.of({("e", (1, 2)): 2, ("e", (3, 2)): -1, ("e", (3, 0)): 1,
                         ("e", (1, 0)): -1, ("e", (0, 2)): -1, ("e", (0, 3)): 1})
    result = verify_fork_join(bad, (1, 3))
    assert not result
    assert not edge_path_conditions(4, bad, 1, 3)["network"]


def test_unit_diagram_is_a_trivial_network():
    assert verify_fork_join(SL3Diagram.blue_edge(0, 3), (0, 3))


@pytest.mark.parametrize("N", range(4, 8))
def test_fan_face_chain_maps_to_sl2_arc(N):
    P = face_poset(N, fan_face(N))
    order = sorted(range(len(P)), key=lambda k: P.ranks[k])
    images = [fan_face_to_sl2(P.payloads[k]) for k in order]
    assert sum(images, Laurent()) == sl2_longest_arc(N)
    ys = sl2_fan_hat_ys(N)
    steps = ys + [y ** -1 for y in ys]
    for a, b in zip(images, images[1:]):
        assert any(b == a * y for y in steps)
