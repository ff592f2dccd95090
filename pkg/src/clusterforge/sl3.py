"""SL3 expansions in fan triangulations of a polygon.

Polygon vertices are 0..N-1 in counterclockwise order and the fan vertex
is 0.  Every edge {u, v} of a triangulation carries two variables, ``e{u}.{v}``
(the directed edge u->v, sitting next to u) and ``e{v}.{u}``; every triangle
{a, b, c} carries one face variable ``f{a}.{b}.{c}`` with a < b < c.

The flip oracle performs four quiver mutations per flip.  The enumerators
build colored SL3 diagrams by recursion on the fan and are checked against
the oracle, against (T1)-(T4)/(F1)-(F3) style validators, and against an
explicit reconstruction of the underlying alternating fork-join network.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, permutations
from typing import Iterable, Iterator

from .cluster_engine import Quiver, Seed, hat_y, initial_seed, mutate_seed
from .laurent import Laurent
from .poset import FinitePoset


class FrozenEdge(ValueError):
    """Flip requested at a boundary segment."""


class NotFan(ValueError):
    """The requested enumeration needs the fan triangulation."""


def edge_var(u: int, v: int) -> str:
    return f"e{u}.{v}"


def face_var(tri: Iterable[int]) -> str:
    a, b, c = sorted(tri)
    return f"f{a}.{b}.{c}"


def _chord(u: int, v: int) -> frozenset:
    return frozenset((u, v))


def _is_boundary(N: int, u: int, v: int) -> bool:
    return (u - v) % N in (1, N - 1)


def _crosses(N: int, a: int, b: int, c: int, d: int) -> bool:
    """Do chords ab and cd cross in their interiors?"""
    if len({a, b, c, d}) < 4:
        return False

    def between(x, lo, hi):
        return 0 < (x - lo) % N < (hi - lo) % N

    return between(c, a, b) != between(d, a, b)


# ---------------------------------------------------------------- seeds

def triangles_of(N: int, diagonals: Iterable[frozenset]) -> list[tuple[int, int, int]]:
    edges = {frozenset((i, (i + 1) % N)) for i in range(N)} | set(diagonals)
    tris = []
    for a, b, c in combinations(range(N), 3):
        if {frozenset((a, b)), frozenset((b, c)), frozenset((a, c))} <= edges:
            tris.append((a, b, c))
    if len(tris) != N - 2:
        raise ValueError("diagonals do not triangulate the polygon")
    return tris


def sl3_quiver(N: int, diagonals: Iterable[frozenset]) -> Quiver:
    """3-triangulation: inside each triangle, one 3-cycle per corner through the face node."""
    diagonals = set(diagonals)
    tris = triangles_of(N, diagonals)
    nodes = []
    for u in range(N):
        for v in range(N):
            if u != v and (frozenset((u, v)) in diagonals or _is_boundary(N, u, v)):
                nodes.append(edge_var(u, v))
    nodes.extend(face_var(t) for t in tris)
    mutable = [edge_var(u, v) for d in diagonals for u, v in (tuple(d), tuple(d)[::-1])]
    mutable.extend(face_var(t) for t in tris)
    arrows = []
    for a, b, c in tris:
        F = face_var((a, b, c))
        for p, q, r in ((a, b, c), (b, c, a), (c, a, b)):
            arrows.extend([(F, edge_var(p, q)), (edge_var(p, q), edge_var(p, r)), (edge_var(p, r), F)])
    return Quiver.from_arrows(sorted(nodes), mutable, arrows)


@dataclass(frozen=True)
class SL3Seed:
    """A triangulated N-gon with its 3-triangulation seed (variables are Laurent in the initial fan seed)."""

    N: int
    diagonals: frozenset
    seed: Seed

    @property
    def triangles(self) -> list[tuple[int, int, int]]:
        return triangles_of(self.N, self.diagonals)

    def has_edge(self, u: int, v: int) -> bool:
        return _chord(u, v) in self.diagonals or _is_boundary(self.N, u, v)

    def edge(self, u: int, v: int) -> Laurent:
        return self.seed[edge_var(u, v)]

    def face(self, tri) -> Laurent:
        return self.seed[face_var(tri)]


# name kept close to the domain: a fan seed on an N-gon
FanSL3Seed = SL3Seed


def fan_diagonals(N: int) -> frozenset:
    return frozenset(_chord(0, m) for m in range(2, N - 1))


def build_fan_sl3_seed(polygon_size: int) -> SL3Seed:
    N = polygon_size
    if N < 3:
        raise ValueError("polygon needs at least three vertices")
    diags = fan_diagonals(N)
    Q = sl3_quiver(N, diags)
    return SL3Seed(N, diags, initial_seed(Q, {v: v for v in Q.nodes}))


def flip(S: SL3Seed, diagonal: tuple[int, int]) -> SL3Seed:
    """Mutate at both edge nodes of the diagonal, then at the two flanking face nodes.

    The four new variables are renamed after the flipped triangulation; the
    renaming is checked by comparing the mutated quiver with the
    3-triangulation quiver of the new triangulation.
    """
    u, v = diagonal
    d = _chord(u, v)
    if d not in S.diagonals:
        raise FrozenEdge(f"{u}-{v} is not an internal diagonal of the triangulation")
    tris = [t for t in S.triangles if u in t and v in t]
    (p,) = [x for x in tris[0] if x not in (u, v)]
    (q,) = [x for x in tris[1] if x not in (u, v)]
    old_faces = [face_var(t) for t in tris]
    seed = S.seed
    for k in (edge_var(u, v), edge_var(v, u), *old_faces):
        seed = mutate_seed(seed, k)
    new_diags = (S.diagonals - {d}) | {_chord(p, q)}
    target = sl3_quiver(S.N, new_diags)
    new_faces = [face_var((p, q, u)), face_var((p, q, v))]
    old_edges = [edge_var(u, v), edge_var(v, u)]
    new_edges = [edge_var(p, q), edge_var(q, p)]
    # the mutated nodes may trade roles (edge nodes can come back as faces)
    found = None
    for names in permutations(new_edges + new_faces):
        rename = dict(zip(old_edges + old_faces, names))
        Q = seed.quiver
        arrows = {(rename.get(i, i), rename.get(j, j)): m for (i, j), m in Q.arrows.items()}
        candidate = Quiver(tuple(sorted(rename.get(x, x) for x in Q.nodes)),
                           frozenset(rename.get(x, x) for x in Q.mutable), arrows)
        if candidate.without_frozen_frozen() == target.without_frozen_frozen():
            if found is not None:
                raise RuntimeError("ambiguous renaming after a flip")
            found = {rename.get(k, k): val for k, val in seed.cluster.items()}
    if found is None:
        raise RuntimeError("mutated quiver is not a 3-triangulation quiver")
    return SL3Seed(S.N, new_diags, Seed(target, found))


def _first_crossing(S: SL3Seed, i: int, j: int):
    """Diagonal crossed by chord ij that lies in a triangle at i."""
    for t in S.triangles:
        if i not in t:
            continue
        a, b = [x for x in t if x != i]
        if _chord(a, b) in S.diagonals and _crosses(S.N, i, j, a, b):
            return a, b
    return None


def seed_with_edge(S: SL3Seed, i: int, j: int) -> SL3Seed:
    while not S.has_edge(i, j):
        S = flip(S, _first_crossing(S, i, j))
    return S


def flip_oracle_edge(N: int, i: int, j: int) -> Laurent:
    """Variable of the directed edge i->j obtained by flips from the fan."""
    return seed_with_edge(_fan_seed(N), i, j).edge(i, j)


def flip_oracle_face(N: int, tri) -> Laurent:
    S = _fan_seed(N)
    a, b, c = sorted(tri)
    for u, v in ((a, b), (b, c), (a, c)):
        S = seed_with_edge(S, u, v)
    return S.face((a, b, c))


@lru_cache(maxsize=None)
def _fan_seed(N: int) -> SL3Seed:
    return build_fan_sl3_seed(N)


# ---------------------------------------------------------------- diagrams

@dataclass(frozen=True, order=True)
class SL3Diagram:
    """Colored multiset of directed edges and faces; positive counts are blue, negative red.

    Blue and red copies of the same element cancel, so a diagram is the same
    thing as a Laurent monomial in the seed variables.
    """

    elements: tuple  # sorted ((kind, vertices), count) with kind "e" or "f"

    @classmethod
    def of(cls, counts: dict) -> "SL3Diagram":
        return cls(tuple(sorted((k, c) for k, c in counts.items() if c)))

    @classmethod
    def blue_edge(cls, u: int, v: int) -> "SL3Diagram":
        return cls.of({("e", (u, v)): 1})

    @classmethod
    def blue_face(cls, tri) -> "SL3Diagram":
        return cls.of({("f", tuple(sorted(tri))): 1})

    def counts(self) -> Counter:
        return Counter(dict(self.elements))

    def __mul__(self, other: "SL3Diagram") -> "SL3Diagram":
        c = self.counts()
        c.update(other.counts())
        return SL3Diagram.of(dict(c))

    def inverse(self) -> "SL3Diagram":
        return SL3Diagram(tuple((k, -c) for k, c in self.elements))

    def size(self) -> int:
        return sum(abs(c) for _, c in self.elements)

    def blue(self) -> list:
        return [k for k, c in self.elements for _ in range(c) if c > 0]

    def red(self) -> list:
        return [k for k, c in self.elements for _ in range(-c) if c < 0]

    @property
    def weight(self) -> Laurent:
        exps = []
        for (kind, verts), c in self.elements:
            exps.append((edge_var(*verts) if kind == "e" else face_var(verts), c))
        return Laurent.monomial(exps)

    def to_json(self) -> dict:
        edges, faces = [], []
        for (kind, verts), c in self.elements:
            color = "blue" if c > 0 else "red"
            if kind == "e":
                edges.append({"from": verts[0], "to": verts[1], "color": color, "mult": abs(c)})
            else:
                faces.append({"tri": list(verts), "color": color, "mult": abs(c)})
        return {"edges": edges, "faces": faces, "weight": str(self.weight)}


def _mono(*parts: tuple[str, tuple, int]) -> SL3Diagram:
    counts: Counter = Counter()
    for kind, verts, c in parts:
        counts[(kind, tuple(sorted(verts)) if kind == "f" else tuple(verts))] += c
    return SL3Diagram.of(dict(counts))


# ---------------------------------------------------------------- recursive enumeration

def _fan_has_edge(N: int, u: int, v: int) -> bool:
    return _is_boundary(N, u, v) or 0 in (u, v)


def _fan_has_face(N: int, tri) -> bool:
    a, b, c = sorted(tri)
    return a == 0 and c == b + 1


def _check_fan(seed_or_N) -> int:
    if isinstance(seed_or_N, SL3Seed):
        if seed_or_N.diagonals != fan_diagonals(seed_or_N.N):
            raise NotFan("enumeration is implemented for the fan at vertex 0")
        return seed_or_N.N
    return int(seed_or_N)


@lru_cache(maxsize=None)
def _edge_paths(N: int, i: int, j: int) -> tuple[SL3Diagram, ...]:
    if _fan_has_edge(N, i, j):
        return (SL3Diagram.blue_edge(i, j),)
    # first diagonal crossed by i->j is 0-m with m the neighbour of i towards j
    m = i + 1 if i < j else i - 1
    k, l = 0, m
    out = []
    # (a) prepend i->k against l->k; (b) prepend i->l against k->l
    for pi in _edge_paths(N, l, j):
        out.append(_mono(("e", (i, k), 1), ("e", (l, k), -1)) * pi)
    for pi in _edge_paths(N, k, j):
        out.append(_mono(("e", (i, l), 1), ("e", (k, l), -1)) * pi)
    # (c) both ways around the triangle ikl, then a face path for jkl
    around = [
        _mono(("e", (i, l), 1), ("e", (k, i), 1), ("f", (i, k, l), -1), ("e", (k, l), -1)),
        _mono(("e", (i, k), 1), ("e", (l, i), 1), ("f", (i, k, l), -1), ("e", (l, k), -1)),
    ]
    for phi in _face_paths(N, tuple(sorted((j, k, l)))):
        for a in around:
            out.append(a * phi)
    return tuple(out)


def _face_split(N: int, tri: tuple[int, int, int]) -> tuple[int, int, int, int]:
    """(i, j, k, l): i the near vertex of the splitting edge il."""
    a, b, c = tri
    if a == 0:
        return 0, b, c, b + 1
    return b, a, c, 0


@lru_cache(maxsize=None)
def _face_paths(N: int, tri: tuple[int, int, int]) -> tuple[SL3Diagram, ...]:
    if _fan_has_face(N, tri):
        return (SL3Diagram.blue_face(tri),)
    i, j, k, l = _face_split(N, tri)
    red = _mono(("e", (i, l), -1))
    out = []
    for phi in _face_paths(N, tuple(sorted((i, k, l)))):
        for pi in _edge_paths(N, i, j):
            out.append(phi * pi * red)
    for theta in _face_paths(N, tuple(sorted((i, j, l)))):
        for kappa in _edge_paths(N, i, k):
            out.append(theta * kappa * red)
    return tuple(out)


def enumerate_edge_diagrams(seed_or_N, i: int, j: int) -> list[SL3Diagram]:
    N = _check_fan(seed_or_N)
    _check_vertices(N, i, j)
    return list(_edge_paths(N, i, j))


def enumerate_face_diagrams(seed_or_N, tri) -> list[SL3Diagram]:
    N = _check_fan(seed_or_N)
    tri = tuple(sorted(tri))
    _check_vertices(N, *tri)
    if len(set(tri)) != 3:
        raise ValueError("a face needs three distinct vertices")
    return list(_face_paths(N, tri))


def _check_vertices(N: int, *vs: int) -> None:
    if any(not 0 <= v < N for v in vs) or len(set(vs)) != len(vs):
        raise ValueError(f"vertices {vs} are not distinct vertices of the {N}-gon")


def diagram_sum(diagrams: Iterable[SL3Diagram]) -> Laurent:
    total = Laurent()
    for d in diagrams:
        total = total + d.weight
    return total


# ---------------------------------------------------------------- posets

def _hat_ys(N: int) -> list[SL3Diagram]:
    S = _fan_seed(N)
    out = []
    for k in sorted(S.seed.quiver.mutable):
        m, _ = hat_y(S.seed, k).only_monomial()
        counts = {}
        for name, e in m:
            if name.startswith("e"):
                u, v = map(int, name[1:].split("."))
                counts[("e", (u, v))] = e
            else:
                counts[("f", tuple(map(int, name[1:].split("."))))] = e
        out.append(SL3Diagram.of(counts))
    return out


def _expansion_poset(N: int, diagrams: list[SL3Diagram], name: str) -> FinitePoset:
    """Covers are multiplication by a ŷ of a mutable node, oriented so the poset has a unique minimum."""
    items = sorted(set(diagrams))
    if len(items) != len(diagrams):
        raise ValueError(f"{name}: two T-paths share a weight")
    index = {d: n for n, d in enumerate(items)}
    rel = set()
    for d in items:
        for y in _hat_ys(N):
            e = d * y
            if e in index:
                rel.add((index[d], index[e]))
    return FinitePoset(tuple(items), frozenset(rel), tuple(d.weight for d in items), name)


def edge_poset(seed_or_N, i: int, j: int) -> FinitePoset:
    N = _check_fan(seed_or_N)
    P = _expansion_poset(N, enumerate_edge_diagrams(N, i, j), f"T_{i}{j}")
    return _orient(P)


def face_poset(seed_or_N, tri) -> FinitePoset:
    N = _check_fan(seed_or_N)
    tri = tuple(sorted(tri))
    P = _expansion_poset(N, enumerate_face_diagrams(N, tri), "T_" + "".join(map(str, tri)))
    return _orient(P)


def _orient(P: FinitePoset) -> FinitePoset:
    if len(P.minimal()) == 1 or len(P.maximal()) != 1:
        return P
    return FinitePoset(P.payloads, frozenset((b, a) for a, b in P.covers), P.weights, P.name, True)


def longest_edge(N: int) -> tuple[int, int]:
    """The directed edge 1 -> N-1 crossing every diagonal of the fan."""
    return 1, N - 1


def fan_face(N: int) -> tuple[int, int, int]:
    return 0, 1, N - 1


def staircase_poset(n: int) -> FinitePoset:
    """Lattice points weakly under the path (a b b)^n and above the x-axis, ordered by unit steps."""
    pts = [(x, y) for x in range(n + 1) for y in range(2 * x + 1)]
    index = {p: k for k, p in enumerate(pts)}
    covers = set()
    for (x, y), k in index.items():
        for q in ((x + 1, y), (x, y + 1)):
            if q in index:
                covers.add((k, index[q]))
    return FinitePoset(tuple(pts), frozenset(covers), name=f"L_gamma({n})")


# ---------------------------------------------------------------- crossing rules

def _between(N: int, x: int, lo: int, hi: int) -> bool:
    """x strictly inside the counterclockwise arc from lo to hi."""
    return 0 < (x - lo) % N < (hi - lo) % N


def edge_crosses_edge(N: int, e1: tuple[int, int], e2: tuple[int, int]) -> bool:
    return _crosses(N, *e1, *e2)


def edge_crosses_face(N: int, edge: tuple[int, int], tri) -> bool:
    """Directed arc i->j against face pqr."""
    i, j = edge
    if j in tri:
        return False
    if i in tri:
        q, r = [x for x in tri if x != i]
        return _between(N, j, q, r) != _between(N, i, q, r)
    sides = [(tri[0], tri[1]), (tri[1], tri[2]), (tri[0], tri[2])]
    return sum(_crosses(N, i, j, a, b) for a, b in sides) == 2


def face_crosses_face(N: int, t1, t2) -> bool:
    """Faces cross when a side of one passes through the interior of the other."""
    s1, s2 = set(t1), set(t2)
    if s1 == s2:
        return False
    for a, b in combinations(sorted(t1), 2):
        for c, d in combinations(sorted(t2), 2):
            if _crosses(N, a, b, c, d):
                return True
    return False


def red_elements_cross_edge(N: int, d: SL3Diagram, i: int, j: int) -> bool:
    for kind, verts in d.red():
        ok = edge_crosses_edge(N, verts, (i, j)) if kind == "e" else edge_crosses_face(N, (i, j), verts)
        if not ok:
            return False
    return True


def red_elements_cross_face(N: int, d: SL3Diagram, tri) -> bool:
    for kind, verts in d.red():
        ok = edge_crosses_face(N, verts, tri) if kind == "e" else face_crosses_face(N, verts, tri)
        if not ok:
            return False
    return True


# ---------------------------------------------------------------- fork-join networks

BLUE, RED = "blue", "red"


@dataclass
class ForkJoinResult:
    """Outcome of rebuilding the alternating fork-join network behind a diagram.

    ``routes`` lists, for every source-to-sink path of the network, its steps
    as (vertex, forward, color) with the first entry (source, None, None).
    Vertices are polygon vertices or ("c", triangle) tripod centres.
    """

    ok: bool
    routes: list
    reason: str = ""

    def __bool__(self) -> bool:
        return self.ok


def _image_multiset(d: SL3Diagram) -> Counter:
    M: Counter = Counter()
    for (kind, verts), c in d.elements:
        color = BLUE if c > 0 else RED
        if kind == "e":
            M[(("e", verts[0], verts[1]), color)] += abs(c)
        else:
            for p in verts:
                M[(("t", verts, p), color)] += abs(c)
    return M


def _tail_head(key):
    if key[0] == "e":
        return key[1], key[2]
    return ("c", key[1]), key[2]


def _moves(M: Counter, x, forward: bool, color: str):
    for (key, col), m in M.items():
        if m <= 0 or col != color:
            continue
        tail, head = _tail_head(key)
        if forward and tail == x:
            yield key, head
        elif not forward and head == x:
            yield key, tail


def _take(M: Counter, key, color) -> Counter:
    out = M.copy()
    out[(key, color)] -= 1
    if not out[(key, color)]:
        del out[(key, color)]
    return out


def _flip(color: str) -> str:
    return RED if color == BLUE else BLUE


def _branch_walks(x, prev, length, color, M, used, route):
    """Fork branches: alternate after an odd forward edge; stop after an even number of edges."""
    if length % 2 == 0:
        yield x, prev, color, M, used, route
    forward = (length + 1) % 2 == 1
    c = _flip(color)
    for key, y in list(_moves(M, x, forward, c)):
        if y == prev or key in used:
            continue
        yield from _branch_walks(y, x, length + 1, c, _take(M, key, c), used | {key},
                                 route + [(y, forward, c)])


def _network_walks(x, prev, pos, color, M, used, routes, sink, need_empty):
    """Main-line walks from x; yields (M_left, routes) on reaching sink after a forward edge."""
    if pos % 2 == 1 and x == sink and (not need_empty or not M):
        yield M, routes
    forward = (pos + 1) % 2 == 1
    nxt = BLUE if pos == 0 else _flip(color)
    for key, y in list(_moves(M, x, forward, nxt)):
        if y == prev or key in used:
            continue
        step = (y, forward, nxt)
        yield from _network_walks(y, x, pos + 1, nxt, _take(M, key, nxt), used | {key},
                                  [r + [step] for r in routes], sink, need_empty)
    if pos == 0 or pos % 2 == 1:
        return
    # fork: the entering edge was inverted; both branches leave forward in the same colour
    outs = [(k, y) for k, y in _moves(M, x, True, color) if y != prev and k not in used]
    for a in range(len(outs)):
        for b in range(a + 1, len(outs)):
            (k1, y1), (k2, y2) = outs[a], outs[b]
            if y1 == y2:
                continue
            M0 = _take(_take(M, k1, color), k2, color)
            for t, p1, c1, M1, u1, r1 in _branch_walks(y1, x, 1, color, M0, used | {k1}, [(y1, True, color)]):
                if len(r1) < 2:
                    continue
                for t2, p2, c2, M2, u2, r2 in _branch_walks(y2, x, 1, color, M1, used | {k2}, [(y2, True, color)]):
                    if t2 != t or len(r2) < 2 or p2 == p1 or c2 != c1:
                        continue
                    union = u1 | u2
                    for key, z in list(_moves(M2, t, True, c1)):
                        if z in (p1, p2) or key in union:
                            continue
                        step = (z, True, c1)
                        new_routes = [r + r1 + [step] for r in routes] + [r + r2 + [step] for r in routes]
                        yield from _network_walks(z, t, pos + 1, c1, _take(M2, key, c1), union | {key},
                                                  new_routes, sink, need_empty)


def network_reconstructions(diagram: SL3Diagram, target: tuple) -> Iterator[list]:
    """Every way of reading the diagram as the image of an alternating fork-join network.

    For an edge target (i, j) each result is the list of source-to-sink
    routes; for a face target it is the routes of all three branches.
    """
    M = _image_multiset(diagram)
    if len(target) == 2:
        i, j = target
        for _, routes in _network_walks(i, None, 0, None, M, frozenset(), [[(i, None, None)]], j, True):
            yield routes
        return
    tri = tuple(sorted(target))
    starts = [verts for (kind, verts), c in diagram.elements if kind == "f" and c > 0]
    for start in starts:
        centre = ("c", start)
        M0 = M
        for p in start:
            M0 = _take(M0, ("t", start, p), BLUE)
        for order in permutations(tri):
            yield from _face_branches(centre, list(start), list(order), M0)


def verify_fork_join(diagram: SL3Diagram, target: tuple, accept=None) -> ForkJoinResult:
    """Rebuild an alternating fork-join network (edge target) or a triple of them (face target).

    The image multiset must be used up exactly: every directed edge once per
    copy, every face as its three tripod edges in one colour.  ``accept``
    optionally filters the candidate route lists.
    """
    seen_any = None
    for routes in network_reconstructions(diagram, target):
        if accept is None or accept(routes):
            return ForkJoinResult(True, routes)
        seen_any = routes
    if seen_any is not None:
        return ForkJoinResult(False, seen_any, "networks exist but none meets the path conditions")
    return ForkJoinResult(False, [], f"no alternating fork-join network has this image for target {target}")


def _face_branches(centre, firsts, sinks, M):
    if not firsts:
        if not M:
            yield []
        return
    p, sink = firsts[0], sinks[0]
    last = len(firsts) == 1
    start = [(centre, None, None), (p, True, BLUE)]
    for left, routes in _network_walks(p, centre, 1, BLUE, M, frozenset({("t", centre[1], p)}),
                                       [start], sink, last):
        for rest in _face_branches(centre, firsts[1:], sinks[1:], left):
            yield routes + rest


# ---------------------------------------------------------------- T-path conditions

def _side(N: int, x, m: int) -> int:
    """Position of a vertex or tripod centre relative to the fan diagonal 0-m (0 means on it)."""
    if isinstance(x, tuple):
        tri = x[1]
        return -1 if max(tri) <= m else 1
    if x in (0, m):
        return 0
    return -1 if x < m else 1


def _one_way(N: int, route) -> bool:
    for m in range(2, N - 1):
        seen = [s for s in (_side(N, v, m) for v, _, _ in route) if s]
        changes = sum(1 for a, b in zip(seen, seen[1:]) if a != b)
        if changes > 1:
            return False
    return True


def _simple(route) -> bool:
    keys = []
    for (u, _, _), (v, fwd, _) in zip(route, route[1:]):
        keys.append((u, v) if fwd else (v, u))
    return len(keys) == len(set(keys))


def _edge_routes_ok(N: int):
    return lambda routes: all(_simple(r) and _one_way(N, r) for r in routes)


def _stops_at_targets(routes, tri) -> bool:
    for r in routes:
        for pos, (v, fwd, col) in enumerate(r[1:], start=1):
            if v in tri and fwd and col == BLUE and pos != len(r) - 1:
                return False
    return True


def _face_routes_ok(N: int, tri):
    def ok(routes):
        return _stops_at_targets(routes, tri) and all(
            _simple(r) and _one_way(N, r) and (len(r) - 1) % 2 == 1 for r in routes)
    return ok


def edge_path_conditions(N: int, d: SL3Diagram, i: int, j: int) -> dict:
    """(T1)-(T4) for an edge-type diagram; T1 and T4 are read off a rebuilt network.

    "T4" asks for one network satisfying T1 and T4 together.
    """
    target = (i, j)
    return {
        "network": bool(verify_fork_join(d, target)),
        "T1": bool(verify_fork_join(d, target, lambda rs: all(_simple(r) for r in rs))),
        "T2": d.size() % 2 == 1,
        "T3": red_elements_cross_edge(N, d, i, j),
        "T4": bool(verify_fork_join(d, target, _edge_routes_ok(N))),
    }


def face_path_conditions(N: int, d: SL3Diagram, tri) -> dict:
    """(F1)-(F3) for a face-type diagram, read off a rebuilt triple of networks.

    "F3" asks for one triple satisfying F1 and F3 together.
    """
    tri = tuple(sorted(tri))
    f1 = lambda rs: all(_simple(r) and _one_way(N, r) and (len(r) - 1) % 2 == 1 for r in rs)
    return {
        "network": bool(verify_fork_join(d, tri)),
        "F1": bool(verify_fork_join(d, tri, f1)),
        "F2": red_elements_cross_face(N, d, tri),
        "F3": bool(verify_fork_join(d, tri, _face_routes_ok(N, tri))),
    }


# ---------------------------------------------------------------- comparison with SL2

@dataclass(frozen=True)
class _Labels:
    edge_labels: dict


def sl2_fan_labels(N: int) -> dict:
    """Edges of the fan, labelled "u.v" with u < v."""
    edges = [(i, i + 1) for i in range(N - 1)] + [(0, N - 1)] + [(0, m) for m in range(2, N - 1)]
    return {(min(e), max(e)): f"{min(e)}.{max(e)}" for e in edges}


def sl2_longest_arc(N: int) -> Laurent:
    from .cluster_engine import ptolemy_chord_oracle
    a, b = longest_edge(N)
    return ptolemy_chord_oracle(N, _Labels(sl2_fan_labels(N)))[(a, b)]


def sl2_fan_hat_ys(N: int) -> list[Laurent]:
    from .cluster_engine import Quiver as Q2, initial_seed as seed2
    labels = sl2_fan_labels(N)
    arrows = []
    for m in range(1, N - 1):
        a, b, c = labels[(0, m)], labels[(m, m + 1)], labels[(0, m + 1)]
        arrows.extend([(a, b), (b, c), (c, a)])
    nodes = sorted(labels.values())
    quiver = Q2.from_arrows(nodes, [labels[(0, m)] for m in range(2, N - 1)], arrows)
    S = seed2(quiver)
    return [hat_y(S, k) for k in sorted(quiver.mutable)]


def fan_face_to_sl2(d: SL3Diagram) -> Laurent:
    """Swap the blue face (0, m, m+1) for the boundary edge m-(m+1) and forget orientations."""
    blue_faces = [v for (kind, v), c in d.elements if kind == "f" and c > 0]
    if len(blue_faces) != 1 or any(kind == "f" and c < 0 for (kind, _), c in d.elements):
        raise ValueError("fan-face diagrams carry exactly one face, and it is blue")
    (face,) = blue_faces
    _, m, m1 = face
    exps = [(f"x{m}.{m1}", 1)]
    for (kind, verts), c in d.elements:
        if kind == "e":
            u, v = sorted(verts)
            exps.append((f"x{u}.{v}", c))
    return Laurent.monomial(exps)
