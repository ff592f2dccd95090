"""End-to-end acceptance run.

Each criterion is a function returning (passed, detail).  The pytest
wrappers assert on it, and the terminal summary prints one PASS/FAIL line
per criterion.  Run ``python tests/test_acceptance.py`` for the report alone.
"""

from __future__ import annotations

import time
from collections import Counter
from fractions import Fraction
from itertools import permutations

import pytest

from clusterforge.cluster_engine import (
    cluster_variable, monomials_of, ptolemy_chord_oracle, seed_for_word, support_orbit,
)
from clusterforge.core import all_words, cf_dual, cf_value, dual_word, fibonacci, q_binomial
from clusterforge.expansions import (
    KINDS, check_all_isomorphisms, diagonal_product, enumerate_L, expansion_poset, weight_sum,
)
from clusterforge.laurent import xs
from clusterforge.poset import (
    fence, grid_lattice, order_ideals, poset_isomorphic, rank_generating_function,
)
from clusterforge.rank_analysis import (
    analyze, rank_enumerated, rank_fibonacci, rank_hook, rank_recursive,
)
from clusterforge.sl3 import (
    diagram_sum, edge_poset, enumerate_edge_diagrams, enumerate_face_diagrams, face_poset,
    fan_face, flip_oracle_edge, flip_oracle_face, longest_edge, staircase_poset,
)
from clusterforge.poset import chain
from clusterforge.snakegraph import (
    SnakeGraph, cf_from_snake, cf_of_word, embed_lattice_paths, matching_count_of_shape,
    orbit_poset, snake_graph, straight_segments, truncated_matching_count,
)
from clusterforge.triangulation import (
    dual_triangulation, resolution_sum, resolution_tree, triangulation_from_word,
)

RESULTS: dict[int, tuple[bool, str]] = {}


def _x_ab():
    num = xs(2, 2, 7, 8) + xs(2, 5, 7, 9) + xs(4, 5, 6, 9) + xs(2, 4, 6, 8) + xs(1, 3, 6, 9)
    return num * xs(1, 2, 3) ** -1


def _oracle(w):
    return cluster_variable(triangulation_from_word(w))


# ---------------------------------------------------------------- criteria

def running_example():
    t = time.perf_counter()
    target = _x_ab()
    sizes, values = {}, {}
    for kind in KINDS:
        X = expansion_poset("ab", kind)
        sizes[kind] = len(X)
        total = weight_sum(X)
        values[kind] = total if kind == "T" else total / xs(1, 2, 3)
    elapsed = time.perf_counter() - t
    ok = all(s == 5 for s in sizes.values()) and all(v == target for v in values.values()) and elapsed < 1
    return ok, f"sizes {sizes}, all sums equal x_ab: {all(v == target for v in values.values())}, {elapsed:.2f}s"


def oracle_sweep():
    t = time.perf_counter()
    words = all_words(6)
    bad = []
    for w in words:
        xw = _oracle(w)
        for kind in KINDS:
            X = expansion_poset(w, kind)
            total = weight_sum(X)
            if kind != "T":
                total = total / diagonal_product(len(w) + 1)
            if total != xw:
                bad.append((w, kind))
    elapsed = time.perf_counter() - t
    return not bad and elapsed < 60, f"{len(words)} words (length 0..6), mismatches {bad[:5]}, {elapsed:.1f}s"


def continued_fractions():
    G = snake_graph("ab")
    cf = cf_of_word("ab")
    quotient = Fraction(matching_count_of_shape(G.shape), truncated_matching_count(G, cf[0]))
    ab_ok = cf_value(cf) == Fraction(5, 3) == quotient and len(expansion_poset("ab", "P")) == 5
    fib_ok = all(
        cf_value(cf_from_snake(SnakeGraph.from_shape("a" * (n - 1)))) == Fraction(fibonacci(n + 2), fibonacci(n))
        and cf_value(cf_from_snake(SnakeGraph.from_shape("b" * (n - 1)))) == Fraction(fibonacci(n + 2), fibonacci(n + 1))
        for n in range(1, 13)
    )
    words = all_words(8)
    dual_ok = all(cf_dual(cf_dual(cf_of_word(w))) == cf_of_word(w) for w in words)
    ok = ab_ok and fib_ok and dual_ok
    return ok, f"CF(ab)=5/3=|P|/|P^a1|: {ab_ok}; straight shapes n<=12: {fib_ok}; involution on {len(words)} words: {dual_ok}"


def rank_formulas():
    t = time.perf_counter()
    shapes = all_words(10, 1)
    bad = [s for s in shapes
           if not rank_recursive(s) == rank_hook(s) == rank_fibonacci(s) == rank_enumerated(s)]
    example = rank_recursive("aabaa").to_list() == [1, 2, 3, 3, 3, 2, 1]
    elapsed = time.perf_counter() - t
    ok = not bad and example and len(shapes) == 2046 and elapsed < 300
    return ok, f"{len(shapes)} shapes, disagreements {bad[:5]}, aabaa exact: {example}, {elapsed:.1f}s"


def trapezoidal_rank_shape():
    shapes = [s for s in all_words(10, 1) if len(straight_segments(s)) <= 4]
    failures = Counter()
    examples = {}
    not_unimodal = 0
    for s in shapes:
        flags = analyze(rank_recursive(s))
        not_unimodal += not flags["unimodal"]
        if not (flags["weakly_trapezoidal"] and flags["unimodal_growth"]):
            d = len(straight_segments(s))
            failures[d] += 1
            examples.setdefault(d, (s, rank_recursive(s).to_list()))
    detail = (f"{len(shapes)} shapes with <=4 segments; counterexamples by segment count {dict(sorted(failures.items()))}; "
              f"e.g. {examples.get(3)} and {examples.get(4)}; all unimodal: {not_unimodal == 0}")
    return not failures, detail


def orbit_structure():
    O73 = rank_generating_function(orbit_poset(7, 3)).to_list() == [1, 1, 2, 3, 3, 3, 3, 2, 1, 1]
    graded = all(
        orbit_poset(n, j).is_graded() and rank_generating_function(orbit_poset(n, j)) == q_binomial(n - 1, j)
        for n in range(1, 10) for j in range(n)
    )
    cover_ok = True
    for n in range(1, 8):
        for i in range(n):
            covered, targets = set(), set()
            for shape in orbit_poset(n, i).payloads:
                e = embed_lattice_paths(SnakeGraph.from_shape(shape))
                cover_ok &= e["is_interval"]
                targets.add((e["n"], e["j"]))
                covered |= set(e["images"])
            (m, j), = targets
            cover_ok &= covered == set(orbit_poset(m, j).payloads)
    grid = poset_isomorphic(orbit_poset(7, 3), grid_lattice(3, 3))
    ok = O73 and graded and cover_ok and grid
    return ok, f"O(7,3) polynomial: {O73}; graded q-binomials n<=9: {graded}; interval covers n<=7: {cover_ok}"


def duality():
    words = all_words(8)
    bad = []
    for w in words:
        try:
            check_all_isomorphisms(w)
        except Exception as exc:  # report, do not stop the sweep
            bad.append((w, str(exc)))
            continue
        if not poset_isomorphic(expansion_poset(w, "P"), order_ideals(fence(w))):
            bad.append((w, "P vs ideals"))
        if not poset_isomorphic(enumerate_L(snake_graph(w)), order_ideals(fence(dual_word(w)))):
            bad.append((w, "L vs ideals"))
    return not bad, f"{len(words)} words up to length 8, failures {bad[:3]}"


def support_orbits():
    words = all_words(6)
    mismatched, overlaps, extra_example = 0, 0, None
    starts_checked = 0
    for w in words:
        T = triangulation_from_word(w)
        S = seed_for_word(w)
        support = monomials_of(cluster_variable(T))
        for m in sorted(support, key=str):
            starts_checked += 1
            orbit = support_orbit(m, S)
            if orbit != support:
                mismatched += 1
                if extra_example is None:
                    extra_example = (w, str(m), sorted(str(o) for o in orbit - support))
        orbits = []
        for chord, var in ptolemy_chord_oracle(T.size, T).items():
            sup = monomials_of(var)
            orbits.append(support_orbit(min(sup, key=str), S))
        for a in range(len(orbits)):
            for b in range(a + 1, len(orbits)):
                overlaps += bool(orbits[a] & orbits[b])
    detail = (f"{starts_checked} starts over {len(words)} words: {mismatched} orbits differ from the support "
              f"(first: {extra_example}); overlapping chord-orbit pairs: {overlaps}")
    return mismatched == 0 and overlaps == 0, detail


def sl3_expansions():
    t = time.perf_counter()
    ok = True
    parts = []
    for N in range(4, 9):
        n = N - 3
        face = enumerate_face_diagrams(N, fan_face(N))
        edge = enumerate_edge_diagrams(N, *longest_edge(N))
        f_ok = len(face) == n + 1 and poset_isomorphic(face_poset(N, fan_face(N)), chain(n + 1))
        e_ok = len(edge) == (n + 1) ** 2 and poset_isomorphic(edge_poset(N, *longest_edge(N)), staircase_poset(n))
        s_ok = (diagram_sum(face) == flip_oracle_face(N, fan_face(N))
                and diagram_sum(edge) == flip_oracle_edge(N, *longest_edge(N)))
        ok &= f_ok and e_ok and s_ok
        parts.append(f"N={N}: {len(face)}/{len(edge)}")
    ok &= len(enumerate_edge_diagrams(5, *longest_edge(5))) == 9
    ok &= len(enumerate_face_diagrams(6, fan_face(6))) == 4
    elapsed = time.perf_counter() - t
    return ok and elapsed < 60, f"face/edge terms {', '.join(parts)}; oracle sums equal; {elapsed:.1f}s"


def resolution_skein():
    words = all_words(5)
    bad = []
    for w in words:
        T = triangulation_from_word(w)
        xw = cluster_variable(T)
        if resolution_sum(T) != xw:
            bad.append((w, "sum"))
        ref = None
        for order in permutations(range(1, T.n + 1)):
            leaves = Counter((leaf.diagram, str(leaf.weight)) for leaf in resolution_tree(T, order).leaves())
            if ref is None:
                ref = leaves
            elif leaves != ref:
                bad.append((w, "order"))
                break
        if resolution_sum(dual_triangulation(T), dual=True) != resolution_sum(T):
            bad.append((w, "dual"))
    return not bad, f"{len(words)} words up to length 5, all resolution orders; failures {bad[:5]}"


CRITERIA = {
    1: ("running example", running_example),
    2: ("oracle sweep", oracle_sweep),
    3: ("continued fractions", continued_fractions),
    4: ("rank formulas", rank_formulas),
    5: ("trapezoidal rank shape", trapezoidal_rank_shape),
    6: ("orbit posets", orbit_structure),
    7: ("duality", duality),
    8: ("support orbits", support_orbits),
    9: ("SL3 expansions", sl3_expansions),
    10: ("resolution skein", resolution_skein),
}

KNOWN_FAILURES = {
    5: "counterexamples to the trapezoidal / unimodal-growth claim exist inside its hypotheses",
    8: "the orbit filter admits monomials outside the support from length 4 on",
}


def evaluate(number: int) -> tuple[bool, str]:
    if number not in RESULTS:
        RESULTS[number] = CRITERIA[number][1]()
    return RESULTS[number]


def report_line(number: int) -> str:
    ok, detail = RESULTS[number]
    return f"criterion {number:2d} {CRITERIA[number][0]}: {'PASS' if ok else 'FAIL'} ({detail})"


def _case(number):
    marks = []
    if number in KNOWN_FAILURES:
        marks.append(pytest.mark.xfail(strict=True, reason=KNOWN_FAILURES[number]))
    return pytest.param(number, marks=marks, id=f"criterion_{number}")


@pytest.mark.slow
@pytest.mark.parametrize("number", [_case(k) for k in CRITERIA])
def test_acceptance(number):
    ok, detail = evaluate(number)
    assert ok, detail


def test_unimodality_holds_even_where_trapezoidal_fails():
    shapes = [s for s in all_words(10, 1) if len(straight_segments(s)) <= 4]
    assert all(analyze(rank_recursive(s))["unimodal"] for s in shapes)


def test_smallest_trapezoidal_counterexample():
    # segments (4,1,2): a three-segment shape with k1, k3 >= 2
    assert straight_segments("aaaba") == [4, 1, 2]
    p = rank_recursive("aaaba")
    assert p.to_list() == [1, 2, 2, 3, 3, 2, 1] == rank_enumerated("aaaba").to_list()
    assert not analyze(p)["weakly_trapezoidal"]


def test_growth_counterexample():
    p = rank_recursive("aaabbab")
    assert len(straight_segments("aaabbab")) == 4
    assert p.to_list() == [1, 2, 4, 5, 7, 7, 5, 3, 1]
    assert not analyze(p)["unimodal_growth"]


def test_support_orbit_counterexample():
    xw = _oracle("aabb")
    orbit = support_orbit(min(monomials_of(xw), key=str), seed_for_word("aabb"))
    assert orbit - monomials_of(xw)


if __name__ == "__main__":
    for k in CRITERIA:
        evaluate(k)
        print(report_line(k), flush=True)
