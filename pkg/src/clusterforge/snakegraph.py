"""Snake graphs: tiles glued right (a) or up (b), labeled by a triangulation.

Coordinates: tile T1 has its south-west corner at (0, 0).  An edge is a
sorted pair of lattice points.  Sides of a tile are named S, W, N, E.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Iterable

from .core import check_word, dual_word
from .poset import FinitePoset
from .triangulation import LabeledTriangulation, triangulation_from_word

SIDES = ("S", "W", "N", "E")

Point = tuple  # (x, y)
Edge = tuple  # (Point, Point), sorted


class InvalidSnakeGraph(ValueError):
    pass


def side_segment(anchor: Point, side: str) -> Edge:
    x, y = anchor
    return {
        "S": ((x, y), (x + 1, y)),
        "N": ((x, y + 1), (x + 1, y + 1)),
        "W": ((x, y), (x, y + 1)),
        "E": ((x + 1, y), (x + 1, y + 1)),
    }[side]


def anchors_from_shape(shape: str) -> tuple[Point, ...]:
    x = y = 0
    out = [(0, 0)]
    for c in shape:
        if c == "a":
            x += 1
        else:
            y += 1
        out.append((x, y))
    return tuple(out)


@dataclass(frozen=True, eq=False)
class SnakeGraph:
    """A snake graph with optional edge labels (one dict per tile)."""

    shape: str
    tile_labels: tuple | None = None  # per tile: {"S": lab, "W": lab, "N": lab, "E": lab}
    word: str | None = None

    def __post_init__(self):
        check_word(self.shape)
        if self.tile_labels is not None and len(self.tile_labels) != len(self.shape) + 1:
            raise InvalidSnakeGraph("need one label dict per tile")

    @classmethod
    def from_shape(cls, shape: str) -> "SnakeGraph":
        return cls(shape)

    @property
    def n(self) -> int:
        return len(self.shape) + 1

    @cached_property
    def tiles(self) -> tuple[Point, ...]:
        return anchors_from_shape(self.shape)

    def side(self, i: int, side: str) -> Edge:
        """Segment of side ``side`` of tile i (1-indexed)."""
        return side_segment(self.tiles[i - 1], side)

    @cached_property
    def edges(self) -> tuple[Edge, ...]:
        seen = []
        for anchor in self.tiles:
            for s in SIDES:
                seg = side_segment(anchor, s)
                if seg not in seen:
                    seen.append(seg)
        return tuple(sorted(seen))

    @cached_property
    def edge_set(self) -> frozenset:
        return frozenset(self.edges)

    @cached_property
    def vertices(self) -> tuple[Point, ...]:
        return tuple(sorted({p for e in self.edges for p in e}))

    @cached_property
    def edge_label(self) -> dict:
        if self.tile_labels is None:
            raise InvalidSnakeGraph("this snake graph carries no labels")
        out = {}
        for i, anchor in enumerate(self.tiles):
            for s in SIDES:
                seg = side_segment(anchor, s)
                lab = self.tile_labels[i][s]
                if out.setdefault(seg, lab) != lab:
                    raise InvalidSnakeGraph(f"edge {seg} has conflicting labels")
        return out

    def internal_edge(self, i: int) -> Edge:
        """e_i, shared by tiles i and i+1 (1 <= i <= n-1)."""
        return self.side(i + 1, "S" if self.shape[i - 1] == "b" else "W")

    def tile_sides_of(self, edge: Edge) -> list[tuple[int, str]]:
        out = []
        for i, anchor in enumerate(self.tiles, start=1):
            for s in SIDES:
                if side_segment(anchor, s) == edge:
                    out.append((i, s))
        return out

    def is_boundary_edge(self, edge: Edge) -> bool:
        return len(self.tile_sides_of(edge)) == 1

    def start(self) -> Point:
        return (0, 0)

    def end(self) -> Point:
        x, y = self.tiles[-1]
        return (x + 1, y + 1)

    def to_json(self) -> dict:
        edges = []
        for e in self.edges:
            item = {"from": list(e[0]), "to": list(e[1]), "boundary": self.is_boundary_edge(e)}
            if self.tile_labels is not None:
                item["label"] = self.edge_label[e]
            edges.append(item)
        return {"shape": self.shape, "tiles": [{"x": x, "y": y} for x, y in self.tiles], "edges": edges}

    def same_labels(self, other: "SnakeGraph") -> bool:
        return self.shape == other.shape and self.tile_labels == other.tile_labels


def snake_graph(w: str | LabeledTriangulation) -> SnakeGraph:
    """Unfold the triangles Δ0..Δn of Σ_w into a labeled snake graph.

    Tile i carries the quadrilateral around diagonal i: T1 has corners
    SW=a, SE=right(1), NW=left(1), NE=apex of Δ1.  Each next tile is glued
    along the third side of the triangle between the two diagonals.
    """
    T = w if isinstance(w, LabeledTriangulation) else triangulation_from_word(w)
    n = T.n
    # corners per tile as polygon vertices
    l1, r1 = T.diagonal(1)
    corners = {"SW": T.a, "SE": r1, "NW": l1, "NE": T.opposite_vertex(1, 1)}
    tiles = [corners]
    shape = []
    for i in range(1, n):
        cur = tiles[-1]
        c = cur["NE"]
        u = [p for p in T.label_edges[i + 1] if p != c]
        if len(u) != 1 or c not in T.label_edges[i + 1]:
            raise InvalidSnakeGraph(f"diagonal {i+1} does not meet the apex of triangle {i}")
        u = u[0]
        v = [p for p in T.label_edges[i] if p != u][0]
        if v == cur["NW"]:
            nxt = {"SW": v, "SE": c, "NW": u}
            shape.append("b")
        elif v == cur["SE"]:
            nxt = {"SW": v, "NW": c, "SE": u}
            shape.append("a")
        else:
            raise InvalidSnakeGraph("unfolding lost track of the diagonal endpoints")
        nxt["NE"] = T.opposite_vertex(i + 1, i + 1)
        tiles.append(nxt)
    labels = []
    for t in tiles:
        labels.append({
            "W": T.label(t["SW"], t["NW"]),
            "S": T.label(t["SW"], t["SE"]),
            "N": T.label(t["NW"], t["NE"]),
            "E": T.label(t["SE"], t["NE"]),
        })
    return SnakeGraph("".join(shape), tuple(labels), T.word)


def _reflect_point(p: Point, center: Point) -> Point:
    return (center[0] + (p[1] - center[1]), center[1] + (p[0] - center[0]))


def dual_snake_graph_with_map(G: SnakeGraph) -> tuple[SnakeGraph, dict]:
    """Apply the reflections T1, ..., Tn and report where each edge lands.

    T_i fixes tile i's S and W sides, exchanges its N and E sides, and
    mirrors every later tile in the line of slope 1 through tile i's SW corner.
    """
    anchors = list(G.tiles)
    ids = [{s: side_segment(a, s) for s in SIDES} for a in anchors]
    for i in range(len(anchors)):
        ids[i]["N"], ids[i]["E"] = ids[i]["E"], ids[i]["N"]
        center = anchors[i]
        for j in range(i + 1, len(anchors)):
            anchors[j] = _reflect_point(anchors[j], center)
            d = ids[j]
            d["S"], d["W"] = d["W"], d["S"]
            d["N"], d["E"] = d["E"], d["N"]
    shape = []
    for p, q in zip(anchors, anchors[1:]):
        if q == (p[0] + 1, p[1]):
            shape.append("a")
        elif q == (p[0], p[1] + 1):
            shape.append("b")
        else:
            raise InvalidSnakeGraph("reflections broke the tile chain")
    shape = "".join(shape)
    if anchors[0] != (0, 0):
        raise InvalidSnakeGraph("first tile moved")
    edge_map: dict = {}
    for a, d in zip(anchors, ids):
        for s in SIDES:
            new = side_segment(a, s)
            old = d[s]
            if edge_map.setdefault(old, new) != new:
                raise InvalidSnakeGraph(f"edge {old} has two images")
    labels = None
    if G.tile_labels is not None:
        labels = tuple({s: G.edge_label[d[s]] for s in SIDES} for d in ids)
    word = dual_word(G.word) if G.word is not None else None
    return SnakeGraph(shape, labels, word), edge_map


def dual_snake_graph(G: SnakeGraph) -> SnakeGraph:
    return dual_snake_graph_with_map(G)[0]


# ---------------------------------------------------------------- signs

def _line_index(edge: Edge) -> int:
    (x1, y1), (x2, y2) = edge
    if y1 == y2:
        return y1 - x1 - 1
    return y1 - x1


def sign_of_edge(edge: Edge) -> str:
    """'-' on the diagonal lines of the same parity as the first south edge."""
    return "-" if (_line_index(edge) - _line_index(((0, 0), (1, 0)))) % 2 == 0 else "+"


def sign_edges(G: SnakeGraph) -> list[Edge]:
    """The edges e0, e1, ..., en read by the sign sequence."""
    n = G.n
    edges = [G.side(1, "S")]
    edges += [G.internal_edge(i) for i in range(1, n)]
    if n == 1:
        edges.append(G.side(1, "N"))
        return edges
    entered = "S" if G.shape[-1] == "b" else "W"
    if n == 2:
        across = G.shape == "b"
    else:
        across = G.shape[-1] == G.shape[-2]
    if across:
        last = {"S": "N", "W": "E"}[entered]
    else:
        last = {"S": "E", "W": "N"}[entered]
    edges.append(G.side(n, last))
    return edges


def sign_sequence(G: SnakeGraph) -> list[str]:
    return [sign_of_edge(e) for e in sign_edges(G)]


def run_lengths(signs: Iterable[str]) -> list[int]:
    out: list[int] = []
    prev = None
    for s in signs:
        if s == prev:
            out[-1] += 1
        else:
            out.append(1)
        prev = s
    return out


def cf_from_snake(G: SnakeGraph) -> list[int]:
    return run_lengths(sign_sequence(G))


def cf_of_word(w: str) -> list[int]:
    return cf_from_snake(SnakeGraph.from_shape(dual_word(w)))


# ---------------------------------------------------------------- shapes

def straight_segments(G: SnakeGraph | str) -> list[int]:
    """[k1..kd]: first/last segment tile counts, middle segments minus one."""
    shape = G.shape if isinstance(G, SnakeGraph) else check_word(G)
    if not shape:
        return [1]
    runs = run_lengths(shape)
    if len(runs) == 1:
        return [runs[0] + 1]
    return [runs[0] + 1] + runs[1:-1] + [runs[-1] + 1]


def shape_from_segments(ks: list[int], start: str = "a") -> str:
    """Inverse of straight_segments for a given first letter."""
    if len(ks) == 1:
        return start * (ks[0] - 1)
    out = []
    letter = start
    for idx, k in enumerate(ks):
        count = k - 1 if idx in (0, len(ks) - 1) else k
        out.append(letter * count)
        letter = "b" if letter == "a" else "a"
    return "".join(out)


def groupoid_neighbors(G: SnakeGraph | str) -> set[str]:
    """Shapes reached by one local move ab <-> ba."""
    shape = G.shape if isinstance(G, SnakeGraph) else check_word(G)
    out = set()
    for i in range(len(shape) - 1):
        pair = shape[i:i + 2]
        if pair in ("ab", "ba"):
            out.add(shape[:i] + pair[::-1] + shape[i + 2:])
    return out


def orbit_poset(n: int, j: int) -> FinitePoset:
    """Shapes with n tiles and j letters b, ordered by ab -> ba going up."""
    if n < 1 or not 0 <= j <= n - 1:
        raise ValueError(f"need n >= 1 and 0 <= j <= n-1, got n={n}, j={j}")
    length = n - 1
    shapes = []
    for pos in combinations(range(length), j):
        s = ["a"] * length
        for p in pos:
            s[p] = "b"
        shapes.append("".join(s))
    shapes.sort()
    index = {s: k for k, s in enumerate(shapes)}
    covers = []
    for s in shapes:
        for i in range(length - 1):
            if s[i:i + 2] == "ab":
                covers.append((index[s], index[s[:i] + "ba" + s[i + 2:]]))
    return FinitePoset(tuple(shapes), frozenset(covers), None, f"O^{n}_{j}", True)


# ---------------------------------------------------------------- paths

def lattice_paths(G: SnakeGraph) -> list[str]:
    """Monotone paths SW(T1) -> NE(Tn) along graph edges, as E/N step strings."""
    target = G.end()
    edges = G.edge_set
    out: list[str] = []

    def walk(p: Point, steps: list[str]):
        if p == target:
            out.append("".join(steps))
            return
        right = (p[0] + 1, p[1])
        if (p, right) in edges:
            steps.append("E")
            walk(right, steps)
            steps.pop()
        up = (p[0], p[1] + 1)
        if (p, up) in edges:
            steps.append("N")
            walk(up, steps)
            steps.pop()

    walk((0, 0), [])
    return sorted(out)


def path_edges(steps: str) -> tuple[Edge, ...]:
    p = (0, 0)
    out = []
    for s in steps:
        q = (p[0] + 1, p[1]) if s == "E" else (p[0], p[1] + 1)
        out.append((p, q))
        p = q
    return tuple(out)


def path_to_shape(steps: str) -> str:
    return steps.replace("E", "a").replace("N", "b")


def embed_lattice_paths(G: SnakeGraph) -> dict:
    """Send each lattice path to a shape with n+2 tiles (E -> a, N -> b).

    Returns the interval endpoints inside the orbit poset and checks that
    the image is exactly that closed interval, ordered like the paths.
    """
    from .poset import poset_isomorphic
    paths = lattice_paths(G)
    images = [path_to_shape(p) for p in paths]
    j = images[0].count("b")
    O = orbit_poset(G.n + 2, j)
    lo = path_to_shape(lowest_path(G))
    hi = path_to_shape(highest_path(G))
    ilo, ihi = O.index_of(lo), O.index_of(hi)
    interval = [v for v in range(len(O)) if O.leq(ilo, v) and O.leq(v, ihi)]
    sub = O.induced(interval)
    image_set = {O.index_of(s) for s in images}
    L = lattice_path_poset(G)
    ok = image_set == set(interval) and poset_isomorphic(sub, L)
    return {"n": G.n + 2, "j": j, "lo": lo, "hi": hi, "images": sorted(images), "is_interval": ok}


def lowest_path(G: SnakeGraph) -> str:
    """The path hugging the lower-right boundary (prefers E)."""
    return _greedy_path(G, "E")


def highest_path(G: SnakeGraph) -> str:
    return _greedy_path(G, "N")


def _greedy_path(G: SnakeGraph, first: str) -> str:
    target = G.end()
    edges = G.edge_set
    p = (0, 0)
    steps = []
    while p != target:
        options = [first, "N" if first == "E" else "E"]
        for s in options:
            q = (p[0] + 1, p[1]) if s == "E" else (p[0], p[1] + 1)
            if (p, q) in edges and _reaches(q, target, edges):
                steps.append(s)
                p = q
                break
        else:
            raise InvalidSnakeGraph("no monotone path to the last tile")
    return "".join(steps)


def _reaches(p: Point, target: Point, edges: frozenset) -> bool:
    if p == target:
        return True
    r = (p[0] + 1, p[1])
    u = (p[0], p[1] + 1)
    return ((p, r) in edges and _reaches(r, target, edges)) or ((p, u) in edges and _reaches(u, target, edges))


def tiles_below(G: SnakeGraph, steps: str) -> frozenset:
    """Tiles lying below/right of a lattice path (the path's rank data)."""
    pts = [(0, 0)]
    for s in steps:
        x, y = pts[-1]
        pts.append((x + 1, y) if s == "E" else (x, y + 1))
    # for each column x, the path's lowest height at which it leaves column x
    height_at = {}
    for (x1, y1), (x2, y2) in zip(pts, pts[1:]):
        if y1 == y2:  # E step from column x1
            height_at[x1] = y1
    below = set()
    for i, (x, y) in enumerate(G.tiles, start=1):
        if y < height_at.get(x, -1):
            below.add(i)
    return frozenset(below)


def lattice_path_poset(G: SnakeGraph) -> FinitePoset:
    """Unweighted lattice-path poset; up-flips replace an E,N corner by N,E."""
    paths = lattice_paths(G)
    index = {p: k for k, p in enumerate(paths)}
    covers = []
    for p in paths:
        for k in range(len(p) - 1):
            if p[k:k + 2] == "EN":
                q = p[:k] + "NE" + p[k + 2:]
                if q in index:
                    covers.append((index[p], index[q]))
    return FinitePoset(tuple(paths), frozenset(covers), None, f"L[{G.shape}]", True)


def perfect_matchings(G: SnakeGraph) -> list[frozenset]:
    """All perfect matchings of the graph, by backtracking on vertices."""
    incident: dict[Point, list[Edge]] = {v: [] for v in G.vertices}
    for e in G.edges:
        incident[e[0]].append(e)
        incident[e[1]].append(e)
    order = list(G.vertices)
    out: list[frozenset] = []

    def search(covered: set, chosen: list):
        for v in order:
            if v not in covered:
                break
        else:
            out.append(frozenset(chosen))
            return
        for e in incident[v]:
            other = e[1] if e[0] == v else e[0]
            if other in covered:
                continue
            covered.add(v)
            covered.add(other)
            chosen.append(e)
            search(covered, chosen)
            chosen.pop()
            covered.discard(v)
            covered.discard(other)

    search(set(), [])
    return out


def matching_count_of_shape(shape: str) -> int:
    return len(perfect_matchings(SnakeGraph.from_shape(shape)))


def truncated_matching_count(G: SnakeGraph, k: int) -> int:
    """Perfect matchings after deleting the first k tiles (1 if none remain)."""
    if k >= G.n:
        return 1
    return matching_count_of_shape(G.shape[k:])
