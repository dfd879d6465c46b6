"""Even-connections and the colon graph G'.

Two vertices u, v are even-connected with respect to a multiset of edges
e_1..e_s when there is a walk u = p_0, p_1, ..., p_{2k+1} = v in G whose
steps p_{2l+1}p_{2l+2} are drawn from the e_i (each used at most its
multiplicity).  k = 0 is the trivial connection along an edge of G.  The
degree-two generators of (I(G)^{s+1} : e_1...e_s) are exactly the products
uv of connected pairs; G' is the graph of the polarization of that ideal.

All searches are breadth-first over the finite state space
(vertex, remaining multiplicities, step parity), so certificates are
shortest and deterministic.
"""

from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass, field
from typing import Hashable, Iterable, Iterator, Sequence

from .errors import DomainError
from .graph import Graph, bits
from .monomial import MonomialIdeal, edge_ideal, minimalize, shadow_name, variable_names


def _norm(e: Sequence[int]) -> tuple[int, int]:
    u, v = e
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class EdgeMultiset:
    """The edges e_1..e_s (repeats allowed), in the order given."""

    edges: tuple[tuple[int, int], ...]

    @classmethod
    def of(cls, g: Graph, edges: Iterable[Sequence[int]]) -> EdgeMultiset:
        normed = tuple(_norm(e) for e in edges)
        for u, v in normed:
            if not (0 <= u < g.n and 0 <= v < g.n) or not g.has_edge(u, v):
                raise DomainError(f"{{{u}, {v}}} is not an edge of the graph")
        return cls(normed)

    def __len__(self) -> int:
        return len(self.edges)

    @property
    def distinct(self) -> tuple[tuple[int, int], ...]:
        return tuple(dict.fromkeys(self.edges))

    @property
    def multiplicities(self) -> tuple[int, ...]:
        c = Counter(self.edges)
        return tuple(c[e] for e in self.distinct)

    def without(self, index: int) -> EdgeMultiset:
        return EdgeMultiset(self.edges[:index] + self.edges[index + 1:])

    def restricted_to(self, g: Graph) -> EdgeMultiset:
        """The e_i lying in ``g`` (an induced subgraph), relabelled to g's vertices.

        ``g.labels`` must hold the parent-graph vertices.
        """
        pos = {lab: i for i, lab in enumerate(g.vertex_labels())}
        kept = []
        for u, v in self.edges:
            if u in pos and v in pos and g.has_edge(pos[u], pos[v]):
                kept.append(_norm((pos[u], pos[v])))
        return EdgeMultiset(tuple(kept))


def edge_multisets(g: Graph, s: int) -> Iterator[EdgeMultiset]:
    """All multisets of s edges of g, as sorted tuples."""
    from itertools import combinations_with_replacement

    for combo in combinations_with_replacement(g.edges(), s):
        yield EdgeMultiset(tuple(combo))


@dataclass(frozen=True)
class EvenConnection:
    path: tuple[int, ...]
    assignment: tuple[int, ...]  # positions in e_1..e_s used by steps p_{2l+1}p_{2l+2}

    @property
    def k(self) -> int:
        return (len(self.path) - 1) // 2

    def to_json(self) -> dict:
        return {"path": list(self.path), "assignment": list(self.assignment), "k": self.k}


def check_certificate(g: Graph, e: EdgeMultiset, cert: EvenConnection, u: int, v: int) -> bool:
    """Independent re-check of every condition of an even-connection."""
    p = cert.path
    if len(p) % 2 != 0 or p[0] != u or p[-1] != v or len(cert.assignment) != cert.k:
        return False
    if any(not g.has_edge(p[r], p[r + 1]) for r in range(len(p) - 1)):
        return False
    if len(set(cert.assignment)) != len(cert.assignment):
        return False
    for l, i in enumerate(cert.assignment):
        if not 0 <= i < len(e) or _norm((p[2 * l + 1], p[2 * l + 2])) != e.edges[i]:
            return False
    used = Counter(_norm((p[2 * l + 1], p[2 * l + 2])) for l in range(cert.k))
    have = Counter(e.edges)
    return all(used[x] <= have[x] for x in used)


# -- state-space search ------------------------------------------------------

# A state is (parity, vertex, remaining, flag).  parity 0: at p_{2l}, next
# step is a free edge of G; parity 1: at p_{2l+1}, either stop here or take
# one of the e_i.  ``flag`` tracks how a pivot edge {x, y} has been used:
# 0 unused, 1 used at least once in the direction y -> x, 2 used only x -> y.


class _Search:
    def __init__(self, g: Graph, e: EdgeMultiset, start: int, pivot: tuple[int, int] | None = None):
        self.g = g
        self.e = e
        self.distinct = e.distinct
        self.pivot = pivot  # (x, y) oriented
        full = e.multiplicities
        self.full = full
        init = (0, start, full, 0)
        self.parent: dict[tuple, tuple | None] = {init: None}
        queue = deque([init])
        while queue:
            state = queue.popleft()
            for nxt in self._moves(state):
                if nxt not in self.parent:
                    self.parent[nxt] = state
                    queue.append(nxt)

    def _moves(self, state):
        parity, w, rem, flag = state
        if parity == 0:
            for z in bits(self.g.adj[w]):
                yield (1, z, rem, flag)
            return
        for d, (a, b) in enumerate(self.distinct):
            if not rem[d] or w not in (a, b):
                continue
            z = b if w == a else a
            new_rem = rem[:d] + (rem[d] - 1,) + rem[d + 1:]
            new_flag = flag
            if self.pivot is not None and {a, b} == set(self.pivot):
                x, y = self.pivot
                if (w, z) == (y, x):
                    new_flag = 1
                elif flag == 0:
                    new_flag = 2
            yield (0, z, new_rem, new_flag)

    def endpoints(self, nontrivial_only: bool = False) -> Iterator[tuple]:
        for state in self.parent:
            if state[0] == 1 and (not nontrivial_only or state[2] != self.full):
                yield state

    def certificate(self, state) -> EvenConnection:
        chain = []
        while state is not None:
            chain.append(state)
            state = self.parent[state]
        chain.reverse()
        path = tuple(s[1] for s in chain)
        # assign the j-th use of an edge to its j-th occurrence in e_1..e_s
        occurrences: dict[tuple[int, int], list[int]] = {}
        for i, edge in enumerate(self.e.edges):
            occurrences.setdefault(edge, []).append(i)
        seen: Counter = Counter()
        assignment = []
        for l in range((len(path) - 1) // 2):
            edge = _norm((path[2 * l + 1], path[2 * l + 2]))
            assignment.append(occurrences[edge][seen[edge]])
            seen[edge] += 1
        return EvenConnection(path, tuple(assignment))


def _check_vertex(g: Graph, *vs: int) -> None:
    for v in vs:
        if not (isinstance(v, int) and 0 <= v < g.n):
            raise DomainError(f"vertex {v!r} not in 0..{g.n - 1}")


def find_even_connection(g: Graph, e: EdgeMultiset, u: int, v: int) -> EvenConnection | None:
    """A shortest even-connection from u to v, or None.

    An edge {u, v} of G gives the trivial certificate with k = 0; for
    u == v at least one e_i must be used.
    """
    _check_vertex(g, u, v)
    search = _Search(g, e, u)
    best = None
    for state in search.endpoints():
        if state[1] != v or (u == v and state[2] == search.full):
            continue
        cert = search.certificate(state)
        if best is None or len(cert.path) < len(best.path):
            best = cert
    return best


def all_even_connections(g: Graph, e: EdgeMultiset, u: int, v: int, nontrivial: bool = True) -> Iterator[EvenConnection]:
    """Every even-connection walk from u to v (finite: k <= s)."""
    _check_vertex(g, u, v)
    distinct = e.distinct
    occurrences: dict[tuple[int, int], list[int]] = {}
    for i, edge in enumerate(e.edges):
        occurrences.setdefault(edge, []).append(i)

    def rec(path: list[int], rem: list[int], assign: list[int]):
        w = path[-1]
        for z in bits(g.adj[w]):
            path.append(z)
            k = len(assign)
            if z == v and (k >= 1 or (not nontrivial and u != v)):
                yield EvenConnection(tuple(path), tuple(assign))
            for d, (a, b) in enumerate(distinct):
                if rem[d] and z in (a, b):
                    z2 = b if z == a else a
                    used = e.multiplicities[d] - rem[d]
                    rem[d] -= 1
                    path.append(z2)
                    assign.append(occurrences[(a, b)][used])
                    yield from rec(path, rem, assign)
                    assign.pop()
                    path.pop()
                    rem[d] += 1
            path.pop()

    yield from rec([u], list(e.multiplicities), [])


def connected_pairs(g: Graph, e: EdgeMultiset) -> set[tuple[int, int]]:
    """Pairs (u, v), u <= v, whose product uv is a degree-2 generator of the colon.

    This is E(G) together with all even-connected pairs, squares included.
    """
    pairs = set(g.edges())
    for u in range(g.n):
        search = _Search(g, e, u)
        for state in search.endpoints(nontrivial_only=True):
            v = state[1]
            pairs.add((u, v) if u <= v else (v, u))
    return pairs


def colon_ideal_from_connections(g: Graph, e: EdgeMultiset) -> MonomialIdeal:
    gens = []
    for u, v in connected_pairs(g, e):
        m = [0] * g.n
        m[u] += 1
        m[v] += 1
        gens.append(tuple(m))
    return MonomialIdeal(variable_names(g.n), minimalize(gens))


def colon_graph(g: Graph, e: EdgeMultiset) -> tuple[Graph, list[tuple[int, int]]]:
    """G' and its vertex map ``[(base vertex, level), ...]``.

    Vertices are every vertex of G (level 1) plus a level-2 shadow for each
    self-even-connected vertex, ordered base-major, level-minor.  Labels of
    G' are ``(label of base in G, level)``.  An empty multiset gives G itself.
    """
    pairs = connected_pairs(g, e)
    selfs = {u for u, v in pairs if u == v}
    vmap = []
    for v in range(g.n):
        vmap.append((v, 1))
        if v in selfs:
            vmap.append((v, 2))
    pos = {c: i for i, c in enumerate(vmap)}
    edges = []
    for u, v in pairs:
        if u == v:
            edges.append((pos[(u, 1)], pos[(u, 2)]))
        else:
            edges.append((pos[(u, 1)], pos[(v, 1)]))
    labels = tuple((g.label(v), level) for v, level in vmap)
    return Graph.from_edges(len(vmap), edges, labels=labels), vmap


def colon_graph_edge_ideal(g: Graph, e: EdgeMultiset) -> MonomialIdeal:
    """I(G') with variables named like :func:`edgereg.monomial.polarize` names them."""
    gp, vmap = colon_graph(g, e)
    base = variable_names(g.n)
    return edge_ideal(gp, [shadow_name(base[v], level) for v, level in vmap])


# -- neighbour classification ------------------------------------------------


@dataclass(frozen=True)
class NeighborClassification:
    pivot: tuple[int, int]  # (x, y): e_i = {x, y}, classification around y
    x1: frozenset  # members as (base vertex, level) of G'
    x2: frozenset
    witnesses: dict = field(default_factory=dict, compare=False)


def classify_neighbors(g: Graph, e: EdgeMultiset, i: int, y: int) -> NeighborClassification:
    """Split N_{G'}(y) by how connections to y use the pivot edge e_i = {x, y}.

    u lands in X1 when some connection u ~> y never uses e_i or uses it
    at least once stepping from y to x; otherwise every connection uses
    e_i only from x to y and u lands in X2.  A neighbour of y in G is in X1
    through the trivial connection.  The shadow y^(2), when present, is
    classified by the self-connections y ~> y.
    """
    if not 0 <= i < len(e):
        raise DomainError(f"pivot index {i} out of range for {len(e)} edges")
    a, b = e.edges[i]
    if y not in (a, b):
        raise DomainError(f"vertex {y} is not an endpoint of e_{i} = {{{a}, {b}}}")
    x = b if y == a else a
    gp, vmap = colon_graph(g, e)
    ypos = vmap.index((y, 1))
    x1, x2, witnesses = set(), set(), {}
    for idx in bits(gp.adj[ypos]):
        u, level = vmap[idx]
        search = _Search(g, e, u, pivot=(x, y))
        best_by_flag = {}
        for state in search.endpoints():
            if state[1] != y:
                continue
            if level == 2 and state[2] == search.full:
                continue
            flag = state[3]
            cert = search.certificate(state)
            prev = best_by_flag.get(flag)
            if prev is None or len(cert.path) < len(prev.path):
                best_by_flag[flag] = cert
        if 0 in best_by_flag or 1 in best_by_flag:
            x1.add((u, level))
            witnesses[(u, level)] = best_by_flag.get(0) or best_by_flag.get(1)
        elif 2 in best_by_flag:
            x2.add((u, level))
            witnesses[(u, level)] = best_by_flag[2]
        else:  # pragma: no cover - every G' neighbour of y is connected to it
            raise AssertionError(f"no connection from {u} to {y}")
    return NeighborClassification((x, y), frozenset(x1), frozenset(x2), witnesses)
