"""The six expansion posets of a polygon cluster variable and the maps between them.

Payload conventions (all hashable and canonical):

* P  sorted tuple of snake-graph edges (pairs of lattice points)
* L  string of steps "E"/"N" on the snake graph
* A, B  tuple with one entry per triangle: the label of the side opposite the chosen angle
* T  tuple of (label, colour) with colour "b" or "r", in path order
* S  tuple of labels in path order

Weights are Laurent monomials.  P, A, L, B and S weights are polynomials;
T weights carry the extra factor 1/(x1...xn).
"""

from __future__ import annotations

from collections import Counter, deque
from typing import Callable

from .core import check_word
from .laurent import Laurent
from .poset import FinitePoset
from .snakegraph import (
    SnakeGraph,
    dual_snake_graph_with_map,
    path_edges,
    perfect_matchings,
    snake_graph,
)
from .triangulation import LabeledTriangulation, dual_triangulation, triangulation_from_word

KINDS = ("P", "A", "T", "L", "B", "S")


class IsomorphismFailure(RuntimeError):
    """A structure map between expansion posets failed its checks."""


def _var(lab: int) -> Laurent:
    return Laurent.var(f"x{lab}")


def _product(labels) -> Laurent:
    exps = Counter(f"x{lab}" for lab in labels)
    return Laurent.monomial(exps)


def diagonal_product(n: int) -> Laurent:
    return _product(range(1, n + 1))


def _poset(items: list, weight: Callable, up_moves: Callable, name: str) -> FinitePoset:
    items = sorted(items)
    index = {p: k for k, p in enumerate(items)}
    covers = set()
    for p in items:
        for q in up_moves(p):
            if q not in index:
                raise IsomorphismFailure(f"{name}: up-move from {p!r} leaves the set ({q!r})")
            covers.add((index[p], index[q]))
    return FinitePoset(tuple(items), frozenset(covers), tuple(weight(p) for p in items), name)


def _as_T(w_or_T) -> LabeledTriangulation:
    if isinstance(w_or_T, LabeledTriangulation):
        return w_or_T
    return triangulation_from_word(check_word(w_or_T))


def _as_G(w_or_G) -> SnakeGraph:
    if isinstance(w_or_G, SnakeGraph):
        return w_or_G
    return snake_graph(check_word(w_or_G))


# ---------------------------------------------------------------- P, L

def _tile_sides(G: SnakeGraph, i: int) -> dict:
    return {s: G.side(i, s) for s in "SWNE"}


def enumerate_P(w_or_G) -> FinitePoset:
    """Perfect matchings of G_w; up-twists follow the tile parity rule."""
    G = _as_G(w_or_G)
    labels = G.edge_label
    items = [tuple(sorted(m)) for m in perfect_matchings(G)]

    def up(p):
        es = set(p)
        for i in range(1, G.n + 1):
            t = _tile_sides(G, i)
            hor, ver = {t["S"], t["N"]}, {t["W"], t["E"]}
            src, dst = (hor, ver) if i % 2 == 1 else (ver, hor)
            if src <= es:
                yield tuple(sorted((es - src) | dst))

    return _poset(items, lambda p: _product(labels[e] for e in p), up, f"P[{G.word}]")


def enumerate_L(w_or_G) -> FinitePoset:
    """Lattice paths on G; an up-flip trades a tile's S,E edges for W,N."""
    from .snakegraph import lattice_paths
    G = _as_G(w_or_G)
    labels = G.edge_label
    items = lattice_paths(G)
    present = set(items)

    def up(p):
        for k in range(len(p) - 1):
            if p[k:k + 2] == "EN":
                q = p[:k] + "NE" + p[k + 2:]
                if q in present:
                    yield q

    return _poset(items, lambda p: _product(labels[e] for e in path_edges(p)), up, f"L[{G.word}]")


def boundary_only(G: SnakeGraph, edges) -> bool:
    return all(G.is_boundary_edge(e) for e in edges)


def P_extremes(G: SnakeGraph, P: FinitePoset) -> tuple[int, int]:
    """Indices of the all-boundary matchings with / without the first S edge."""
    s1 = G.side(1, "S")
    lo = [k for k, p in enumerate(P.payloads) if boundary_only(G, p) and s1 in p]
    hi = [k for k, p in enumerate(P.payloads) if boundary_only(G, p) and s1 not in p]
    if len(lo) != 1 or len(hi) != 1:
        raise IsomorphismFailure("extreme matchings are not unique")
    return lo[0], hi[0]


def L_extremes(G: SnakeGraph, L: FinitePoset) -> tuple[int, int]:
    s1 = G.side(1, "S")
    lo = [k for k, p in enumerate(L.payloads) if boundary_only(G, path_edges(p)) and s1 in path_edges(p)]
    hi = [k for k, p in enumerate(L.payloads) if boundary_only(G, path_edges(p)) and s1 not in path_edges(p)]
    if len(lo) != 1 or len(hi) != 1:
        raise IsomorphismFailure("extreme lattice paths are not unique")
    return lo[0], hi[0]


# ---------------------------------------------------------------- quadrilateral data

def quad_sides(T: LabeledTriangulation, i: int) -> dict:
    """Sides u/d of the two triangles at diagonal i (u touches the left end)."""
    l, r = T.diagonal(i)
    below = T.opposite_vertex(i - 1, i)
    above = T.opposite_vertex(i, i)
    return {
        "u_prev": T.label(l, below),
        "d_prev": T.label(r, below),
        "u": T.label(l, above),
        "d": T.label(r, above),
    }


def _diag_endpoints(T: LabeledTriangulation) -> set:
    out = set()
    for i in range(1, T.n + 1):
        out.update(T.label_edges[i])
    return out


def _angle_choices(T: LabeledTriangulation) -> list[list[tuple[int, int]]]:
    """Per triangle: (vertex, opposite label) for angles at diagonal endpoints."""
    ends = _diag_endpoints(T)
    out = []
    for i, tri in enumerate(T.triangles):
        out.append(sorted((v, T.opposite_label(i, v)) for v in tri if v in ends))
    return out


def _angle_vertex(T: LabeledTriangulation, i: int, opp: int) -> int:
    u, v = T.label_edges[opp]
    return next(x for x in T.triangles[i] if x not in (u, v))


# ---------------------------------------------------------------- A, B

def enumerate_A(w_or_T) -> FinitePoset:
    """Angle matchings: one angle per triangle, no vertex used twice."""
    T = _as_T(w_or_T)
    choices = _angle_choices(T)
    items: list[tuple] = []

    def grow(i, used, acc):
        if i == len(choices):
            items.append(tuple(acc))
            return
        for v, opp in choices[i]:
            if v not in used:
                used.add(v)
                acc.append(opp)
                grow(i + 1, used, acc)
                acc.pop()
                used.discard(v)

    grow(0, set(), [])

    def up(p):
        for i in range(1, T.n + 1):
            l, r = T.diagonal(i)
            if _angle_vertex(T, i - 1, p[i - 1]) == l and _angle_vertex(T, i, p[i]) == r:
                q = list(p)
                q[i - 1] = T.opposite_label(i - 1, r)
                q[i] = T.opposite_label(i, l)
                yield tuple(q)

    return _poset(items, _product, up, f"A[{T.word}]")


def enumerate_B(w_or_T) -> FinitePoset:
    """Angle lattice paths: one angle per triangle, parity rule at every vertex.

    At each endpoint of a diagonal the number of chosen angles has the parity
    of the number of triangles there.  The two ends of the arc carry no
    angles at all, so the rule is not applied to them.
    """
    T = _as_T(w_or_T)
    choices = _angle_choices(T)
    last_triangle = {v: max(T.triangles_at(v)) for v in range(T.size)}
    ends = _diag_endpoints(T)
    want = {v: len(T.triangles_at(v)) % 2 for v in ends}
    closing = {i: [v for v in ends if last_triangle[v] == i] for i in range(len(choices))}
    items: list[tuple] = []
    count = Counter()

    def grow(i, acc):
        if i == len(choices):
            items.append(tuple(acc))
            return
        for v, opp in choices[i]:
            count[v] += 1
            if all(count[x] % 2 == want[x] for x in closing[i]):
                acc.append(opp)
                grow(i + 1, acc)
                acc.pop()
            count[v] -= 1

    grow(0, [])

    def up(p):
        for i in range(1, T.n + 1):
            l, r = T.diagonal(i)
            src, dst = (l, r) if i % 2 == 1 else (r, l)
            if _angle_vertex(T, i - 1, p[i - 1]) == src and _angle_vertex(T, i, p[i]) == src:
                q = list(p)
                q[i - 1] = T.opposite_label(i - 1, dst)
                q[i] = T.opposite_label(i, dst)
                yield tuple(q)

    return _poset(items, _product, up, f"B[{T.word}]")


def _boundary_angle(T: LabeledTriangulation, i: int, v: int) -> bool:
    tri = T.triangles[i]
    sides = [T.label(v, x) for x in tri if x != v]
    return sum(T.is_boundary_label(s) for s in sides) == 1


def angle_extremes(T: LabeledTriangulation, X: FinitePoset) -> tuple[int, int]:
    """Only boundary angles; the first triangle's angle touches side 2n+1 (min) or 2n (max)."""
    n = T.n
    lo, hi = [], []
    for k, p in enumerate(X.payloads):
        verts = [_angle_vertex(T, i, opp) for i, opp in enumerate(p)]
        if not all(_boundary_angle(T, i, v) for i, v in enumerate(verts)):
            continue
        first = {T.label(verts[0], x) for x in T.triangles[0] if x != verts[0]}
        if 2 * n + 1 in first:
            lo.append(k)
        if 2 * n in first:
            hi.append(k)
    if len(lo) != 1 or len(hi) != 1:
        raise IsomorphismFailure("extreme angle selections are not unique")
    return lo[0], hi[0]


# ---------------------------------------------------------------- T, S

def _adjacency(T: LabeledTriangulation) -> dict:
    adj: dict[int, list[tuple[int, int]]] = {v: [] for v in range(T.size)}
    for (u, v), lab in sorted(T.edge_labels.items(), key=lambda kv: kv[1]):
        adj[u].append((v, lab))
        adj[v].append((u, lab))
    return adj


def enumerate_T(w_or_T) -> FinitePoset:
    """Alternating blue/red paths a -> b, distinct edges, red diagonals in increasing order."""
    T = _as_T(w_or_T)
    adj = _adjacency(T)
    n = T.n
    items: list[tuple] = []

    def walk(v, used, last_red, acc):
        blue_next = len(acc) % 2 == 0
        if not blue_next and v == T.b:
            items.append(tuple(acc))
        for u, lab in adj[v]:
            if lab in used:
                continue
            if not blue_next and not (lab <= n and lab > last_red):
                continue
            used.add(lab)
            acc.append((lab, "b" if blue_next else "r"))
            walk(u, used, lab if not blue_next else last_red, acc)
            acc.pop()
            used.discard(lab)

    walk(T.a, set(), 0, [])
    signed = {p: _signed(p) for p in items}
    by_signed = {}
    for p, s in signed.items():
        if by_signed.setdefault(s, p) != p:
            raise IsomorphismFailure("two T-paths share a coloured edge set")

    def up(p):
        base = dict(signed[p])
        for i in range(1, n + 1):
            q = quad_sides(T, i)
            c = Counter(base)
            for lab, delta in ((q["d_prev"], -1), (q["u"], -1), (q["d"], 1), (q["u_prev"], 1)):
                c[lab] += delta
            key = frozenset((k, v) for k, v in c.items() if v)
            if key in by_signed:
                yield by_signed[key]

    return _poset(items, T_weight, up, f"T[{T.word}]")


def _signed(p) -> frozenset:
    c = Counter()
    for lab, col in p:
        c[lab] += 1 if col == "b" else -1
    return frozenset((k, v) for k, v in c.items() if v)


def T_weight(p) -> Laurent:
    exps = Counter()
    for lab, col in p:
        exps[f"x{lab}"] += 1 if col == "b" else -1
    return Laurent.monomial(exps)


def _distances_to(T: LabeledTriangulation, target: int) -> dict:
    adj = _adjacency(T)
    dist = {target: 0}
    queue = deque([target])
    while queue:
        v = queue.popleft()
        for u, _ in adj[v]:
            if u not in dist:
                dist[u] = dist[v] + 1
                queue.append(u)
    return dist


def S_walks(T: LabeledTriangulation) -> list[tuple]:
    """Every walk a -> b with n+1 edges touching every triangle (edges may repeat).

    Kept as a reference: some edge multisets are reached by two walks that
    differ only in the order of their middle edges.
    """
    adj = _adjacency(T)
    n = T.n
    length = n + 1
    dist = _distances_to(T, T.b)
    owners = {lab: [i for i in range(len(T.triangles)) if lab in T.triangle_edges(i)] for lab in T.label_edges}
    hit = Counter()
    items: list[tuple] = []

    def walk(v, acc):
        remaining = length - len(acc)
        if remaining == 0:
            if v == T.b and len(hit) == n + 1:
                items.append(tuple(acc))
            return
        if dist[v] > remaining or (n + 1 - len(hit)) > 2 * remaining:
            return
        for u, lab in adj[v]:
            for i in owners[lab]:
                hit[i] += 1
            acc.append(lab)
            walk(u, acc)
            acc.pop()
            for i in owners[lab]:
                hit[i] -= 1
                if not hit[i]:
                    del hit[i]

    walk(T.a, [])
    return items


def S_paths(T: LabeledTriangulation) -> list[tuple]:
    """Walks a -> b whose k-th edge is a side of triangle k-1 (k = 1..n+1)."""
    sides = [set(T.triangle_edges(i)) for i in range(len(T.triangles))]
    adj = _adjacency(T)
    items: list[tuple] = []

    def walk(v, acc):
        k = len(acc)
        if k == len(sides):
            if v == T.b:
                items.append(tuple(acc))
            return
        for u, lab in adj[v]:
            if lab in sides[k]:
                acc.append(lab)
                walk(u, acc)
                acc.pop()

    walk(T.a, [])
    return items


def enumerate_S(w_or_T) -> FinitePoset:
    T = _as_T(w_or_T)
    n = T.n
    items = S_paths(T)
    by_multiset = {}
    for p in items:
        if by_multiset.setdefault(frozenset(Counter(p).items()), p) != p:
            raise IsomorphismFailure("two S-paths share an edge multiset")

    def up(p):
        c0 = Counter(p)
        for i in range(1, n + 1):
            q = quad_sides(T, i)
            src, dst = ((q["d_prev"], q["d"]), (q["u_prev"], q["u"])) if i % 2 == 1 else \
                ((q["u_prev"], q["u"]), (q["d_prev"], q["d"]))
            c = Counter(c0)
            c.subtract(src)
            if any(v < 0 for v in c.values()):
                continue
            c.update(dst)
            key = frozenset((k, v) for k, v in c.items() if v)
            if key in by_multiset:
                yield by_multiset[key]

    return _poset(items, _product, up, f"S[{T.word}]")


def path_extremes(T: LabeledTriangulation, X: FinitePoset, kind: str) -> tuple[int, int]:
    """Paths using only diagonals apart from the first and last edge.

    The minimum starts with side 2n and the maximum with side 2n+1, for
    both kinds; this is the reading forced by the structure maps.
    """
    n = T.n
    lo, hi = [], []
    for k, p in enumerate(X.payloads):
        labs = [e[0] for e in p] if kind == "T" else list(p)
        if not all(lab <= n for lab in labs[1:-1]):
            continue
        first = labs[0]
        lo_start, hi_start = 2 * n, 2 * n + 1
        if first == lo_start:
            lo.append(k)
        if first == hi_start:
            hi.append(k)
    if len(lo) != 1 or len(hi) != 1:
        raise IsomorphismFailure(f"extreme {kind}-paths are not unique")
    return lo[0], hi[0]


# ---------------------------------------------------------------- dispatch

def expansion_poset(w: str, kind: str) -> FinitePoset:
    """The expansion poset of x_w of the given kind.

    P, A and T live on w itself; L, B and S are built on the dual word,
    which is where their weights sum to x_w.  The dual objects come from
    reflecting G_w and regluing Δ_w, so the one-diagonal case keeps the
    label swap that the dual quadrilateral carries.
    """
    check_word(w)
    builders = {"P": enumerate_P, "A": enumerate_A, "T": enumerate_T,
                "L": enumerate_L, "B": enumerate_B, "S": enumerate_S}
    if kind not in builders:
        raise ValueError(f"unknown expansion kind {kind!r}; expected one of {', '.join(KINDS)}")
    if kind in "PAT":
        return builders[kind](w)
    if kind == "L":
        return enumerate_L(dual_snake_graph_with_map(snake_graph(w))[0])
    return builders[kind](dual_triangulation(triangulation_from_word(w)))


def weight_sum(X: FinitePoset) -> Laurent:
    total = Laurent()
    for wt in X.weights:
        total = total + wt
    return total


def expansion_value(w: str, kind: str) -> Laurent:
    """x_w from one expansion (T sums directly, the others are divided by x1...xn)."""
    X = expansion_poset(w, kind)
    total = weight_sum(X)
    if kind == "T":
        return total
    return total / diagonal_product(len(w) + 1)


# ---------------------------------------------------------------- maps

def _edge_to_angle(G: SnakeGraph, T: LabeledTriangulation) -> dict:
    """Snake-graph edge -> (triangle index, opposite label).

    Tile i is the quadrilateral of diagonal i; its S and W sides lie in
    triangle i-1 and its N and E sides in triangle i.  The angle opposite a
    side carries that side's label.
    """
    out = {}
    for i in range(1, G.n + 1):
        for s in "SWNE":
            e = G.side(i, s)
            tri = i - 1 if s in "SW" else i
            val = (tri, G.edge_label[e])
            if out.setdefault(e, val) != val:
                raise IsomorphismFailure(f"edge {e} folds to two different angles")
    return out


def _angles_payload(pairs, n_triangles: int):
    slots = [None] * n_triangles
    for tri, opp in pairs:
        if slots[tri] is not None:
            raise IsomorphismFailure(f"two angles land in triangle {tri}")
        slots[tri] = opp
    if any(s is None for s in slots):
        raise IsomorphismFailure("some triangle received no angle")
    return tuple(slots)


def _check(source: FinitePoset, target: FinitePoset, fn, weight_factor: Laurent | None = None) -> dict:
    mapping = {}
    index = {p: k for k, p in enumerate(target.payloads)}
    for k, p in enumerate(source.payloads):
        img = fn(p)
        if img not in index:
            raise IsomorphismFailure(f"{source.name} -> {target.name}: {p!r} maps outside ({img!r})")
        mapping[k] = index[img]
        wt = source.weights[k] if weight_factor is None else source.weights[k] * weight_factor
        if wt != target.weights[index[img]]:
            raise IsomorphismFailure(f"{source.name} -> {target.name}: weight changes at {p!r}")
    if len(set(mapping.values())) != len(target) or len(source) != len(target):
        raise IsomorphismFailure(f"{source.name} -> {target.name}: not a bijection")
    if {(mapping[a], mapping[b]) for a, b in source.covers} != set(target.covers):
        raise IsomorphismFailure(f"{source.name} -> {target.name}: covers not preserved")
    return mapping


def P_to_A(w: str) -> dict:
    G, T = snake_graph(w), triangulation_from_word(w)
    P, A = enumerate_P(G), enumerate_A(T)
    e2a = _edge_to_angle(G, T)
    return _check(P, A, lambda p: _angles_payload([e2a[e] for e in p], T.n + 1))


def L_to_B(w: str) -> dict:
    G, T = snake_graph(w), triangulation_from_word(w)
    L, B = enumerate_L(G), enumerate_B(T)
    e2a = _edge_to_angle(G, T)
    return _check(L, B, lambda p: _angles_payload([e2a[e] for e in path_edges(p)], T.n + 1))


def A_to_T(w: str) -> dict:
    """Blue sides opposite the chosen angles, every diagonal red, colours cancel."""
    T = triangulation_from_word(w)
    A, TP = enumerate_A(T), enumerate_T(T)
    by_signed = {_signed(p): p for p in TP.payloads}
    n = T.n

    def fn(p):
        c = Counter(p)
        for i in range(1, n + 1):
            c[i] -= 1
        return by_signed.get(frozenset((k, v) for k, v in c.items() if v))

    return _check(A, TP, fn, diagonal_product(n) ** -1)


def B_to_S(w: str) -> dict:
    """Each chosen angle contributes its opposite side."""
    T = triangulation_from_word(w)
    B, S = enumerate_B(T), enumerate_S(T)
    by_multiset = {frozenset(Counter(p).items()): p for p in S.payloads}
    return _check(B, S, lambda p: by_multiset.get(frozenset(Counter(p).items())))


def L_to_S(w: str) -> dict:
    """Read the labels along the lattice path."""
    G = snake_graph(w)
    L, S = enumerate_L(G), enumerate_S(triangulation_from_word(w))
    return _check(L, S, lambda p: tuple(G.edge_label[e] for e in path_edges(p)))


def P_to_Ldual(w: str) -> dict:
    """Carry each matched edge through the tile reflections onto G_{w*}."""
    G = snake_graph(w)
    Gd, emap = dual_snake_graph_with_map(G)
    P, L = enumerate_P(G), enumerate_L(Gd)

    def fn(p):
        images = sorted(emap[e] for e in p)
        steps = []
        pos = (0, 0)
        remaining = set(images)
        while remaining:
            nxt = [e for e in remaining if e[0] == pos]
            if len(nxt) != 1:
                return None
            e = nxt[0]
            remaining.discard(e)
            steps.append("E" if e[1][0] > pos[0] else "N")
            pos = e[1]
        return "".join(steps)

    return _check(P, L, fn)


def A_to_Bdual(w: str) -> dict:
    """Identity on (triangle, opposite label) codes; the dual keeps each triangle's labels."""
    A = enumerate_A(w)
    B = expansion_poset(w, "B")
    return _check(A, B, lambda p: p)


def T_to_Sdual(w: str) -> dict:
    """Superpose a blue copy of every diagonal, cancel, and read the edges in the dual."""
    T = triangulation_from_word(w)
    TP = enumerate_T(T)
    S = expansion_poset(w, "S")
    by_multiset = {frozenset(Counter(p).items()): p for p in S.payloads}
    n = T.n

    def fn(p):
        c = Counter(dict(_signed(p)))
        for i in range(1, n + 1):
            c[i] += 1
        if any(v < 0 for v in c.values()):
            return None
        return by_multiset.get(frozenset((k, v) for k, v in c.items() if v))

    return _check(TP, S, fn, diagonal_product(n))


ISOMORPHISMS = {
    "P->A": P_to_A,
    "A->T": A_to_T,
    "L->B": L_to_B,
    "B->S": B_to_S,
    "L->S": L_to_S,
    "P->L*": P_to_Ldual,
    "A->B*": A_to_Bdual,
    "T->S*": T_to_Sdual,
}


def check_all_isomorphisms(w: str) -> dict:
    """Run every structure map for w; returns {name: index map}."""
    return {name: fn(w) for name, fn in ISOMORPHISMS.items()}
