"""Exact combinatorial invariants of small graphs.

Everything here is exhaustive search over bitmasks, memoised per call.
Isolated vertices are irrelevant to all of these invariants and are ignored.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Iterator, Sequence

from .errors import GuardError
from .graph import Graph, bits, is_chordal_mask, popcount

COCHORD_EDGE_GUARD = 20
VD_VERTEX_GUARD = 12


def _edges_in(adj: Sequence[int], mask: int) -> list[tuple[int, int]]:
    return [(u, v) for v in bits(mask) for u in bits(adj[v] & mask & ((1 << v) - 1))]


def _max_degree_in(adj: Sequence[int], mask: int) -> int:
    return max((popcount(adj[v] & mask) for v in bits(mask)), default=0)


# -- matchings ---------------------------------------------------------------


def matching_number(g: Graph) -> int:
    adj = g.adj

    @lru_cache(maxsize=None)
    def best(mask: int) -> int:
        for v in bits(mask):
            nb = adj[v] & mask
            if nb:
                rest = mask & ~(1 << v)
                return max([best(rest)] + [1 + best(rest & ~(1 << u)) for u in bits(nb)])
        return 0

    return best(g.vertex_mask)


def induced_matching_number(g: Graph) -> int:
    """nu(G): largest set of edges that are pairwise disjoint and joined by no edge."""
    adj = g.adj

    @lru_cache(maxsize=None)
    def best(mask: int) -> int:
        for v in bits(mask):
            nb = adj[v] & mask
            if nb:
                rest = mask & ~(1 << v)
                options = [best(rest)]
                for u in bits(nb):
                    closed = adj[u] | adj[v] | (1 << u) | (1 << v)
                    options.append(1 + best(mask & ~closed))
                return max(options)
        return 0

    return best(g.vertex_mask)


def _matchings(adj: Sequence[int], edges: list[tuple[int, int]]) -> Iterator[tuple[int, int]]:
    """Yield (size, covered-vertex mask) of every matching."""

    def rec(i: int, covered: int, size: int):
        if i == len(edges):
            yield size, covered
            return
        yield from rec(i + 1, covered, size)
        u, v = edges[i]
        if not covered >> u & 1 and not covered >> v & 1:
            yield from rec(i + 1, covered | (1 << u) | (1 << v), size + 1)

    yield from rec(0, 0, 0)


def min_max_matching(g: Graph) -> int:
    """Smallest size of a maximal matching."""
    edges = g.edges()
    best = None
    for size, covered in _matchings(g.adj, edges):
        if best is not None and size >= best:
            continue
        # maximal iff the uncovered vertices are independent
        if all(covered >> u & 1 or covered >> v & 1 for u, v in edges):
            best = size
    return best or 0


# -- co-chordal cover --------------------------------------------------------


def is_cochordal_edge_set(g: Graph, edge_mask: int, edges: list[tuple[int, int]]) -> bool:
    """Does the subgraph formed by the selected edges have a chordal complement?

    The complement is taken on the vertex support of the selected edges;
    vertices outside the support would be universal in the complement and
    cannot change chordality.
    """
    adj = [0] * g.n
    support = 0
    for i in bits(edge_mask):
        u, v = edges[i]
        adj[u] |= 1 << v
        adj[v] |= 1 << u
        support |= (1 << u) | (1 << v)
    comp = [support & ~adj[v] & ~(1 << v) if support >> v & 1 else 0 for v in range(g.n)]
    return is_chordal_mask(comp, support)


def maximal_cochordal_edge_sets(g: Graph) -> list[int]:
    edges = g.edges()
    m = len(edges)
    good = [s for s in range(1, 1 << m) if is_cochordal_edge_set(g, s, edges)]
    good.sort(key=popcount, reverse=True)
    maximal: list[int] = []
    for s in good:
        if not any(s & t == s for t in maximal):
            maximal.append(s)
    return maximal


def cochordal_cover_number(g: Graph, guard_override: bool = False) -> int:
    """Fewest co-chordal subgraphs whose edge sets cover E(G).

    Any cover can be enlarged part-by-part to maximal co-chordal edge sets,
    so an exact set cover over the maximal ones gives the minimum.
    """
    edges = g.edges()
    m = len(edges)
    if m == 0:
        return 0
    if m > COCHORD_EDGE_GUARD and not guard_override:
        raise GuardError(f"cochordal_cover_number: {m} edges exceeds guard {COCHORD_EDGE_GUARD}")
    parts = maximal_cochordal_edge_sets(g)
    full = (1 << m) - 1
    containing = [[p for p in parts if p >> i & 1] for i in range(m)]

    def cover(uncovered: int, k: int) -> bool:
        if not uncovered:
            return True
        if k == 0:
            return False
        i = (uncovered & -uncovered).bit_length() - 1
        return any(cover(uncovered & ~p, k - 1) for p in containing[i])

    k = 1
    while not cover(full, k):
        k += 1
    return k


# -- star packings -----------------------------------------------------------


@dataclass(frozen=True)
class StarPacking:
    centers: tuple[int, ...]
    residual_edges: tuple[tuple[int, int], ...]
    trace: tuple[int, ...]  # vertex masks of H_1..H_k, isolated vertices removed

    @property
    def weight(self) -> int:
        return len(self.centers) + len(self.residual_edges)


def _strip_isolated(adj: Sequence[int], mask: int) -> int:
    return sum(1 << v for v in bits(mask) if adj[v] & mask)


def all_star_packings(g: Graph) -> Iterator[StarPacking]:
    """Every packing reachable by the recursive choice of degree >= 2 centres.

    A graph whose components are single edges (or vertices) has the one
    packing with no centres whose residual is its edge set.
    """
    adj = g.adj

    def rec(mask: int, centers: tuple[int, ...], trace: tuple[int, ...]):
        pivots = [v for v in bits(mask) if popcount(adj[v] & mask) >= 2]
        if not pivots:
            yield StarPacking(centers, tuple(_edges_in(adj, mask)), trace)
            return
        for v in pivots:
            rest = _strip_isolated(adj, mask & ~(adj[v] | (1 << v)))
            yield from rec(rest, centers + (v,), trace + (rest,))

    yield from rec(_strip_isolated(adj, g.vertex_mask), (), ())


def zeta(g: Graph) -> tuple[int, StarPacking]:
    """Maximum star-packing weight, with a packing attaining it."""
    adj = g.adj

    @lru_cache(maxsize=None)
    def best(mask: int) -> tuple[int, tuple[int, ...]]:
        pivots = [v for v in bits(mask) if popcount(adj[v] & mask) >= 2]
        if not pivots:
            return len(_edges_in(adj, mask)), ()
        top = (-1, ())
        for v in pivots:
            rest = _strip_isolated(adj, mask & ~(adj[v] | (1 << v)))
            val, seq = best(rest)
            if val + 1 > top[0]:
                top = (val + 1, (v,) + seq)
        return top

    start = _strip_isolated(adj, g.vertex_mask)
    value, centers = best(start)
    mask, trace = start, []
    for v in centers:
        mask = _strip_isolated(adj, mask & ~(adj[v] | (1 << v)))
        trace.append(mask)
    packing = StarPacking(centers, tuple(_edges_in(adj, mask)), tuple(trace))
    assert packing.weight == value
    return value, packing


def zeta_value(g: Graph) -> int:
    return zeta(g)[0]


# -- vertex decomposability --------------------------------------------------


def maximal_independent_sets(adj: Sequence[int], mask: int) -> Iterator[int]:
    """Bron-Kerbosch with pivoting, run on the complement of G[mask]."""

    def rec(r: int, p: int, x: int):
        if not p and not x:
            yield r
            return
        pivot = min(bits(p | x), key=lambda u: popcount(p & (adj[u] | (1 << u))))
        for v in bits(p & (adj[pivot] | (1 << pivot))):
            keep = ~(adj[v] | (1 << v))
            yield from rec(r | (1 << v), p & keep, x & keep)
            p &= ~(1 << v)
            x |= 1 << v

    yield from rec(0, mask, 0)


def _is_shedding(adj: Sequence[int], mask: int, x: int) -> bool:
    """No independent set of G\\N[x] is a maximal independent set of G\\x."""
    nbrs = adj[x] & mask
    return all(s & nbrs for s in maximal_independent_sets(adj, mask & ~(1 << x)))


class _VD:
    def __init__(self, g: Graph):
        self.adj = g.adj
        self.memo: dict[int, int | None] = {}

    def witness(self, mask: int) -> int | None:
        """A vertex certifying decomposability of G[mask], -1 if edgeless, None if not VD."""
        if mask in self.memo:
            return self.memo[mask]
        adj = self.adj
        result: int | None = None
        if not any(adj[v] & mask for v in bits(mask)):
            result = -1
        else:
            for x in bits(mask):
                if not adj[x] & mask:
                    continue
                if (
                    _is_shedding(adj, mask, x)
                    and self.decomposable(mask & ~(1 << x))
                    and self.decomposable(mask & ~(adj[x] | (1 << x)))
                ):
                    result = x
                    break
        self.memo[mask] = result
        return result

    def decomposable(self, mask: int) -> bool:
        return self.witness(mask) is not None


def _vd_guard(g: Graph, guard_override: bool) -> Graph:
    h = g.without_isolated()
    if h.n > VD_VERTEX_GUARD and not guard_override:
        raise GuardError(f"vertex decomposability: {h.n} vertices exceeds guard {VD_VERTEX_GUARD}")
    return h


def is_vertex_decomposable(g: Graph, guard_override: bool = False) -> bool:
    _vd_guard(g, guard_override)
    return _VD(g).decomposable(_strip_isolated(g.adj, g.vertex_mask))


def is_shedding_vertex(g: Graph, x: int) -> bool:
    return _is_shedding(g.adj, g.vertex_mask, x)


def shedding_set(g: Graph, guard_override: bool = False) -> set[int]:
    """S(G): shedding vertices x with G\\x vertex decomposable."""
    _vd_guard(g, guard_override)
    vd = _VD(g)
    full = g.vertex_mask
    return {
        x
        for x in range(g.n)
        if g.adj[x] and _is_shedding(g.adj, full, x) and vd.decomposable(full & ~(1 << x))
    }


@dataclass(frozen=True)
class SheddingCertificate:
    """Recursive transcript: ``vertex`` sheds, ``deletion``/``link`` certify G\\x and G\\N[x]."""

    vertices: tuple[int, ...]
    vertex: int | None
    deletion: SheddingCertificate | None = None
    link: SheddingCertificate | None = None

    def to_json(self) -> dict:
        if self.vertex is None:
            return {"vertices": list(self.vertices), "edgeless": True}
        return {
            "vertices": list(self.vertices),
            "vertex": self.vertex,
            "deletion": self.deletion.to_json(),
            "link": self.link.to_json(),
        }


def shedding_certificate(g: Graph, guard_override: bool = False) -> SheddingCertificate | None:
    """Full decomposition transcript, or None when G is not vertex decomposable."""
    _vd_guard(g, guard_override)
    vd = _VD(g)

    def build(mask: int) -> SheddingCertificate:
        x = vd.witness(mask)
        verts = tuple(bits(mask))
        if x == -1:
            return SheddingCertificate(verts, None)
        return SheddingCertificate(
            verts,
            x,
            build(mask & ~(1 << x)),
            build(mask & ~(g.adj[x] | (1 << x))),
        )

    start = _strip_isolated(g.adj, g.vertex_mask)
    if not vd.decomposable(start):
        return None
    return build(start)


def has_induced_cycle(g: Graph, length: int) -> bool:
    """Brute force over vertex subsets of the given size."""
    for sub in combinations(range(g.n), length):
        m = sum(1 << v for v in sub)
        if all(popcount(g.adj[v] & m) == 2 for v in sub) and g.induced_subgraph(sub).is_connected():
            return True
    return False


def contains_cycle(g: Graph, length: int) -> bool:
    """Is there a cycle of exactly this length as a (not necessarily induced) subgraph?"""
    adj = g.adj

    def extend(start: int, v: int, used: int, k: int) -> bool:
        if k == length:
            return bool(adj[v] >> start & 1)
        # vertices after the start only, so each cycle is found from its smallest vertex
        for u in bits(adj[v] & ~used & ~((1 << (start + 1)) - 1)):
            if extend(start, u, used | (1 << u), k + 1):
                return True
        return False

    return any(extend(s, s, 1 << s, 1) for s in range(g.n))
