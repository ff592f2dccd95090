"""Quivers, seeds, mutation, and the Ptolemy oracle for polygon cluster variables."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Hashable, Iterable, Mapping, Sequence

from .core import check_word
from .laurent import ExactDivisionFailed, Laurent, exact_divide

__all__ = [
    "ExactDivisionFailed", "FrozenVertex", "Quiver", "Seed", "Laurent",
    "mutate_quiver", "mutate_seed", "build_Qw", "quiver_from_triangulation",
    "ptolemy_chord_oracle", "cluster_variable", "hat_y", "support_orbit",
    "initial_seed", "seed_for_word", "mutate_sequence", "monomials_of",
]


class FrozenVertex(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class Quiver:
    """Quiver without loops or 2-cycles, stored as signed arrow counts.

    ``arrows[(i, j)] = m > 0`` means m arrows i -> j.  Only one of (i, j),
    (j, i) is ever present.
    """

    nodes: tuple
    mutable: frozenset
    arrows: Mapping

    @classmethod
    def from_arrows(cls, nodes: Sequence, mutable: Iterable, arrows: Iterable[tuple]) -> "Quiver":
        nodes = tuple(nodes)
        known = set(nodes)
        net: dict[tuple, int] = {}
        for i, j in arrows:
            if i == j:
                raise ValueError(f"loop at {i}")
            if i not in known or j not in known:
                raise ValueError(f"arrow {i}->{j} uses an unknown node")
            net[(i, j)] = net.get((i, j), 0) + 1
        return cls(nodes, frozenset(mutable), _cancel(net))

    def count(self, i, j) -> int:
        return self.arrows.get((i, j), 0)

    def b(self, i, j) -> int:
        """Skew-symmetric exchange entry #(i->j) - #(j->i)."""
        return self.arrows.get((i, j), 0) - self.arrows.get((j, i), 0)

    @cached_property
    def _incoming(self) -> dict:
        inc: dict = {v: [] for v in self.nodes}
        for (i, j), m in self.arrows.items():
            inc[j].append((i, m))
        return inc

    @cached_property
    def _outgoing(self) -> dict:
        out: dict = {v: [] for v in self.nodes}
        for (i, j), m in self.arrows.items():
            out[i].append((j, m))
        return out

    def into(self, k) -> list[tuple[Hashable, int]]:
        return list(self._incoming[k])

    def out_of(self, k) -> list[tuple[Hashable, int]]:
        return list(self._outgoing[k])

    @property
    def frozen(self) -> frozenset:
        return frozenset(self.nodes) - self.mutable

    def arrow_list(self) -> list[tuple]:
        return sorted(((i, j) for (i, j), m in self.arrows.items() for _ in range(m)), key=_arrow_key)

    def without_frozen_frozen(self) -> "Quiver":
        fz = self.frozen
        kept = {e: m for e, m in self.arrows.items() if not (e[0] in fz and e[1] in fz)}
        return Quiver(self.nodes, self.mutable, kept)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Quiver):
            return NotImplemented
        return (set(self.nodes) == set(other.nodes) and self.mutable == other.mutable
                and dict(self.arrows) == dict(other.arrows))

    def __hash__(self) -> int:
        return hash((frozenset(self.nodes), self.mutable, frozenset(self.arrows.items())))

    def to_json(self) -> dict:
        return {
            "nodes": list(self.nodes),
            "mutable": sorted(self.mutable, key=str),
            "arrows": [list(a) for a in self.arrow_list()],
        }


def _arrow_key(a):
    return (str(type(a[0])), a[0], str(type(a[1])), a[1])


def _cancel(net: dict) -> dict:
    out: dict = {}
    for (i, j), m in net.items():
        if (j, i) in out:
            continue
        d = m - net.get((j, i), 0)
        if d > 0:
            out[(i, j)] = d
        elif d < 0:
            out[(j, i)] = -d
    return out


def mutate_quiver(Q: Quiver, k) -> Quiver:
    """Compose paths through k, reverse arrows at k, cancel 2-cycles."""
    if k not in Q.mutable:
        raise FrozenVertex(f"cannot mutate at frozen or unknown node {k!r}")
    net: dict = {}
    for (i, j), m in Q.arrows.items():
        if i == k or j == k:
            net[(j, i)] = net.get((j, i), 0) + m
        else:
            net[(i, j)] = net.get((i, j), 0) + m
    for i, mi in Q.into(k):
        for j, mj in Q.out_of(k):
            if i != j:
                net[(i, j)] = net.get((i, j), 0) + mi * mj
    return Quiver(Q.nodes, Q.mutable, _cancel(net))


@dataclass(frozen=True, eq=False)
class Seed:
    quiver: Quiver
    cluster: Mapping  # node -> Laurent

    def __getitem__(self, node) -> Laurent:
        return self.cluster[node]


def initial_seed(Q: Quiver, names: Mapping | None = None) -> Seed:
    """Attach the variable x{node} (or names[node]) to every node."""
    return Seed(Q, {v: Laurent.var(names[v] if names else f"x{v}") for v in Q.nodes})


def mutate_seed(S: Seed, k) -> Seed:
    Q = S.quiver
    if k not in Q.mutable:
        raise FrozenVertex(f"cannot mutate at frozen or unknown node {k!r}")
    inc = Laurent.const(1)
    for i, m in Q.into(k):
        inc = inc * S.cluster[i] ** m
    out = Laurent.const(1)
    for j, m in Q.out_of(k):
        out = out * S.cluster[j] ** m
    new = exact_divide(inc + out, S.cluster[k])
    cluster = dict(S.cluster)
    cluster[k] = new
    return Seed(mutate_quiver(Q, k), cluster)


def mutate_sequence(S: Seed, ks: Iterable) -> Seed:
    for k in ks:
        S = mutate_seed(S, k)
    return S


def build_Qw(w: str) -> Quiver:
    """Quiver on 1..2n+3 (mutable 1..n) made of 3-cycles, one per triangle of Σ_w."""
    check_word(w)
    n = len(w) + 1
    arrows = []

    def cycle(p, q, r):
        arrows.extend([(p, q), (q, r), (r, p)])

    cycle(2 * n + 1, 1, 2 * n)
    for i, c in enumerate(w, start=1):
        if c == "a":
            cycle(i, n + i, i + 1)
        else:
            cycle(i, i + 1, n + i)
    if len(w) % 2 == 0 and len(w) >= 2 and w[-1] != w[-2]:
        cycle(n, 2 * n + 3, 2 * n + 2)
    else:
        cycle(n, 2 * n + 2, 2 * n + 3)
    return Quiver.from_arrows(range(1, 2 * n + 4), range(1, n + 1), arrows)


def quiver_from_triangulation(T) -> Quiver:
    """Arrows follow the clockwise order of the sides inside each triangle."""
    arrows = []
    for i in range(len(T.triangles)):
        p, q, r = T.triangle_labels(i)
        arrows.extend([(p, q), (q, r), (r, p)])
    m = 2 * T.n + 3
    return Quiver.from_arrows(range(1, m + 1), range(1, T.n + 1), arrows)


def seed_for_word(w: str) -> Seed:
    return initial_seed(build_Qw(w))


# ---------------------------------------------------------------- Ptolemy

def ptolemy_chord_oracle(size: int, T) -> dict[tuple[int, int], Laurent]:
    """Cluster variable of every chord (i, j), i < j, of a triangulated polygon.

    ``T`` provides ``edge_labels`` (sorted vertex pair -> label).  Chords of
    the triangulation get their own variable; any other chord (i, j) is
    expanded in the quadrilateral formed with the first triangle it enters
    at i, which lowers the crossing number.
    """
    labels = dict(T.edge_labels)
    if len(labels) != 2 * size - 3:
        raise ValueError("edge labels do not form a triangulation of the polygon")
    memo: dict[tuple[int, int], Laurent] = {e: Laurent.var(f"x{lab}") for e, lab in labels.items()}
    neighbors: dict[int, set[int]] = {v: set() for v in range(size)}
    for (u, v) in labels:
        neighbors[u].add(v)
        neighbors[v].add(u)

    def ccw_offset(i: int, v: int) -> int:
        return (v - i) % size

    def value(i: int, j: int) -> Laurent:
        key = (min(i, j), max(i, j))
        if key in memo:
            return memo[key]
        # neighbors of i on either side of j (angularly adjacent around i)
        dj = ccw_offset(i, j)
        before = max((v for v in neighbors[i] if ccw_offset(i, v) < dj), key=lambda v: ccw_offset(i, v))
        after = min((v for v in neighbors[i] if ccw_offset(i, v) > dj), key=lambda v: ccw_offset(i, v))
        p, q = before, after
        if (min(p, q), max(p, q)) not in labels:
            raise ValueError("triangulation is missing the edge opposite a vertex")
        # quadrilateral i, p, j, q: x_ij x_pq = x_ip x_jq + x_iq x_pj
        num = memo[(min(i, p), max(i, p))] * value(j, q) + memo[(min(i, q), max(i, q))] * value(p, j)
        res = exact_divide(num, memo[(min(p, q), max(p, q))])
        memo[key] = res
        return res

    for i in range(size):
        for j in range(i + 1, size):
            value(i, j)
    return memo


def cluster_variable(T) -> Laurent:
    """Cluster variable of the arc from T.a to T.b."""
    return ptolemy_chord_oracle(T.size, T)[(min(T.a, T.b), max(T.a, T.b))]


# ---------------------------------------------------------------- groupoid

def hat_y(S: Seed, k) -> Laurent:
    """Product of attachments over arrows into k divided by those out of k."""
    Q = S.quiver
    if k not in Q.nodes:
        raise ValueError(f"unknown node {k!r}")
    val = Laurent.const(1)
    for i, m in Q.into(k):
        val = val * S.cluster[i] ** m
    for j, m in Q.out_of(k):
        val = val * S.cluster[j] ** (-m)
    if not val.is_monomial():
        raise ValueError("hat_y is only a monomial for seeds with monomial attachments")
    return val


def _admissible(mono: Laurent, frozen_vars: set[str], strict: bool) -> bool:
    m, _ = mono.only_monomial()
    for v, e in m:
        if v in frozen_vars and (e < 0 or e > 1):
            return False
        if strict and abs(e) > 1:
            return False
    return True


def support_orbit(start: Laurent, S: Seed, strict: bool = True, limit: int = 100000) -> set[Laurent]:
    """Closure of a monomial under multiplication by hat_y(k)^(+-1), k mutable.

    A monomial survives when no frozen variable sits in its denominator and
    no frozen variable appears squared (or higher) in its numerator.  With
    ``strict`` (the default) it must also have no squared variable in its
    denominator; without this the closure can leave the support.
    """
    if not start.is_monomial():
        raise ValueError("orbit start must be a single monomial")
    Q = S.quiver
    frozen_vars = set()
    for v in Q.frozen:
        frozen_vars.update(S.cluster[v].variables())
    ys = []
    for k in sorted(Q.mutable, key=str):
        y = hat_y(S, k)
        ys.extend([y, y ** -1])
    m0, _ = start.only_monomial()
    start = Laurent({m0: 1})
    seen = {start}
    queue = deque([start])
    while queue:
        cur = queue.popleft()
        for y in ys:
            nxt = cur * y
            if nxt in seen or not _admissible(nxt, frozen_vars, strict):
                continue
            seen.add(nxt)
            if len(seen) > limit:
                raise RuntimeError("orbit exceeded the size limit")
            queue.append(nxt)
    return seen


def monomials_of(p: Laurent) -> set[Laurent]:
    return {Laurent({m: 1}) for m, _ in p.items()}
