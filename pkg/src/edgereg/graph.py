"""Finite simple graphs with bitset adjacency, graph6 I/O and enumeration.

Vertices are the integers ``0..n-1``; ``adj[v]`` is an int whose bit ``u``
is set when ``{u, v}`` is an edge.  Graphs are immutable.  An optional
``labels`` tuple records where each vertex came from (for instance the
parent-graph vertex of an induced subgraph); labels never take part in
equality.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Any, Hashable, Iterable, Iterator, Sequence

from .errors import DomainError, GraphParseError, GuardError

ENUMERATION_GUARD = 8
GRAPH6_MAX_N = 62


def bits(mask: int) -> Iterator[int]:
    """Yield the positions of the set bits of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


@dataclass(frozen=True)
class Graph:
    n: int
    adj: tuple[int, ...]
    labels: tuple[Hashable, ...] | None = field(default=None, compare=False)

    def __post_init__(self) -> None:
        if self.n < 0 or len(self.adj) != self.n:
            raise DomainError(f"adjacency has {len(self.adj)} rows for n={self.n}")
        full = (1 << self.n) - 1
        for v, row in enumerate(self.adj):
            if row & ~full:
                raise DomainError(f"vertex {v} has a neighbour outside 0..{self.n - 1}")
            if row >> v & 1:
                raise DomainError(f"self-loop at vertex {v}")
            for u in bits(row):
                if not self.adj[u] >> v & 1:
                    raise DomainError(f"adjacency not symmetric at {{{u}, {v}}}")
        if self.labels is not None and len(self.labels) != self.n:
            raise DomainError("labels must have one entry per vertex")

    @classmethod
    def from_edges(
        cls,
        n: int,
        edges: Iterable[Sequence[int]],
        labels: Sequence[Hashable] | None = None,
    ) -> Graph:
        adj = [0] * n
        for e in edges:
            u, v = e
            if not (0 <= u < n and 0 <= v < n):
                raise DomainError(f"edge {{{u}, {v}}} out of range for n={n}")
            if u == v:
                raise DomainError(f"self-loop at vertex {u}")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return cls(n, tuple(adj), tuple(labels) if labels is not None else None)

    # -- basic queries -------------------------------------------------------

    @property
    def vertex_mask(self) -> int:
        return (1 << self.n) - 1

    def label(self, v: int) -> Hashable:
        return self.labels[v] if self.labels is not None else v

    def vertex_labels(self) -> tuple[Hashable, ...]:
        return self.labels if self.labels is not None else tuple(range(self.n))

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for v in range(self.n) for u in bits(self.adj[v] & ((1 << v) - 1))]

    def labelled_edges(self) -> set[frozenset]:
        return {frozenset((self.label(u), self.label(v))) for u, v in self.edges()}

    @property
    def num_edges(self) -> int:
        return sum(popcount(row) for row in self.adj) // 2

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def degree(self, v: int) -> int:
        return popcount(self.adj[v])

    def degrees(self) -> list[int]:
        return [popcount(row) for row in self.adj]

    def neighbors(self, v: int) -> list[int]:
        return list(bits(self.adj[v]))

    def isolated_vertices(self) -> list[int]:
        return [v for v in range(self.n) if not self.adj[v]]

    def has_isolated(self) -> bool:
        return any(row == 0 for row in self.adj)

    def _check(self, vertices: Iterable[int]) -> list[int]:
        vs = list(vertices)
        for v in vs:
            if not (isinstance(v, int) and 0 <= v < self.n):
                raise DomainError(f"vertex {v!r} not in 0..{self.n - 1}")
        return vs

    # -- derived graphs ------------------------------------------------------

    def induced_subgraph(self, vertices: Iterable[int]) -> Graph:
        """Graph on ``vertices`` (kept in increasing order) with all edges inside it."""
        keep = sorted(set(self._check(vertices)))
        pos = {v: i for i, v in enumerate(keep)}
        adj = []
        for v in keep:
            row = 0
            for u in bits(self.adj[v]):
                if u in pos:
                    row |= 1 << pos[u]
            adj.append(row)
        return Graph(len(keep), tuple(adj), tuple(self.label(v) for v in keep))

    def delete(self, vertices: Iterable[int]) -> Graph:
        """``G \\ U``: the induced subgraph on the complement of ``vertices``."""
        drop = set(self._check(vertices))
        return self.induced_subgraph(v for v in range(self.n) if v not in drop)

    def closed_nbhd_mask(self, vertices: Iterable[int]) -> int:
        m = 0
        for v in self._check(vertices):
            m |= self.adj[v] | (1 << v)
        return m

    def without_isolated(self) -> Graph:
        if not self.has_isolated():
            return self
        return self.induced_subgraph(v for v in range(self.n) if self.adj[v])

    def complement(self) -> Graph:
        full = self.vertex_mask
        return Graph(self.n, tuple(full & ~row & ~(1 << v) for v, row in enumerate(self.adj)), self.labels)

    def relabel(self, order: Sequence[int]) -> Graph:
        """New graph whose vertex ``i`` is old vertex ``order[i]``."""
        pos = {v: i for i, v in enumerate(order)}
        adj = []
        for v in order:
            row = 0
            for u in bits(self.adj[v]):
                row |= 1 << pos[u]
            adj.append(row)
        return Graph(self.n, tuple(adj), tuple(self.label(v) for v in order))

    def components(self) -> list[list[int]]:
        seen = 0
        comps = []
        for v in range(self.n):
            if seen >> v & 1:
                continue
            comp = frontier = 1 << v
            while frontier:
                nxt = 0
                for u in bits(frontier):
                    nxt |= self.adj[u]
                frontier = nxt & ~comp
                comp |= frontier
            seen |= comp
            comps.append(list(bits(comp)))
        return comps

    def is_connected(self) -> bool:
        return self.n <= 1 or len(self.components()) == 1

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={self.edges()})"


# -- graph6 ------------------------------------------------------------------


def to_graph6(g: Graph) -> str:
    if g.n > GRAPH6_MAX_N:
        raise DomainError(f"graph6 short form supports n <= {GRAPH6_MAX_N}, got {g.n}")
    out = [chr(g.n + 63)]
    acc = nbits = 0
    for j in range(1, g.n):
        for i in range(j):
            acc = (acc << 1) | (g.adj[j] >> i & 1)
            nbits += 1
            if nbits == 6:
                out.append(chr(acc + 63))
                acc = nbits = 0
    if nbits:
        out.append(chr((acc << (6 - nbits)) + 63))
    return "".join(out)


def from_graph6(text: str) -> Graph:
    s = text.strip()
    if s.startswith(">>graph6<<"):
        s = s[len(">>graph6<<"):]
    if not s:
        raise GraphParseError("empty graph6 string", 0)
    for pos, ch in enumerate(s):
        if not 63 <= ord(ch) <= 126:
            raise GraphParseError(f"illegal graph6 character {ch!r}", pos)
    n = ord(s[0]) - 63
    if n > GRAPH6_MAX_N:
        raise GraphParseError("long-form graph6 header (n > 62) is not supported", 0)
    nbits = n * (n - 1) // 2
    need = (nbits + 5) // 6
    body = s[1:]
    if len(body) < need:
        raise GraphParseError(f"truncated bit stream: need {need} data bytes, got {len(body)}", len(s))
    if len(body) > need:
        raise GraphParseError("trailing bytes after graph6 data", 1 + need)
    stream = 0
    for ch in body:
        stream = (stream << 6) | (ord(ch) - 63)
    pad = 6 * need - nbits
    if stream & ((1 << pad) - 1):
        raise GraphParseError("non-zero padding bits", len(s) - 1)
    stream >>= pad
    adj = [0] * n
    k = nbits - 1
    for j in range(1, n):
        for i in range(j):
            if stream >> k & 1:
                adj[i] |= 1 << j
                adj[j] |= 1 << i
            k -= 1
    return Graph(n, tuple(adj))


def read_graph6_file(path) -> list[Graph]:
    with open(path, encoding="ascii") as fh:
        return [from_graph6(line) for line in fh if line.strip()]


def write_graph6_file(path, graphs: Iterable[Graph]) -> None:
    with open(path, "w", encoding="ascii") as fh:
        for g in graphs:
            fh.write(to_graph6(g) + "\n")


# -- JSON adjacency ----------------------------------------------------------


def to_json_obj(g: Graph) -> dict[str, Any]:
    return {"n": g.n, "edges": [list(e) for e in g.edges()]}


def from_json(data: str | dict) -> Graph:
    if isinstance(data, str):
        try:
            data = json.loads(data)
        except json.JSONDecodeError as exc:
            raise GraphParseError(f"invalid JSON: {exc.msg}", exc.pos) from None
    try:
        n = int(data["n"])
        edges = [tuple(int(x) for x in e) for e in data.get("edges", [])]
    except (KeyError, TypeError, ValueError) as exc:
        raise GraphParseError(f"JSON graph needs 'n' and 'edges': {exc}") from None
    return Graph.from_edges(n, edges)


# -- constructions -----------------------------------------------------------


def empty(n: int) -> Graph:
    return Graph(n, (0,) * n)


def path(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle(n: int) -> Graph:
    if n < 3:
        raise DomainError(f"cycle needs n >= 3, got {n}")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def complete(n: int) -> Graph:
    return Graph.from_edges(n, [(i, j) for j in range(n) for i in range(j)])


def star(m: int) -> Graph:
    """K_{1,m} with centre 0."""
    return Graph.from_edges(m + 1, [(0, i) for i in range(1, m + 1)])


def house() -> Graph:
    """Triangle t1 t2 t5 sitting on the square t2 t3 t4 t5; vertex i is t_{i+1}."""
    t = {name: i for i, name in enumerate(("t1", "t2", "t3", "t4", "t5"))}
    pairs = [("t1", "t2"), ("t1", "t5"), ("t2", "t5"), ("t2", "t3"), ("t3", "t4"), ("t4", "t5")]
    return Graph.from_edges(5, [(t[a], t[b]) for a, b in pairs], labels=tuple(t))


def disjoint_union(g1: Graph, g2: Graph) -> Graph:
    shift = g1.n
    edges = g1.edges() + [(u + shift, v + shift) for u, v in g2.edges()]
    return Graph.from_edges(g1.n + g2.n, edges)


def add_whiskers(g: Graph, vertices: Iterable[int]) -> Graph:
    """Attach a new pendant vertex to each vertex of ``vertices`` (in increasing order)."""
    s = sorted(set(g._check(vertices)))
    edges = g.edges() + [(x, g.n + i) for i, x in enumerate(s)]
    return Graph.from_edges(g.n + len(s), edges)


def named_graph(spec: str) -> Graph | None:
    """Parse family names such as ``C5``, ``P4``, ``K3``, ``S3`` (star), ``E4`` or ``house``."""
    s = spec.strip()
    if s.lower() == "house":
        return house()
    if "+" in s:
        parts = [named_graph(p) for p in s.split("+")]
        if any(p is None for p in parts):
            return None
        out = parts[0]
        for p in parts[1:]:
            out = disjoint_union(out, p)
        return out
    if len(s) >= 2 and s[0] in "CPKSE" and s[1:].isdigit():
        k = int(s[1:])
        return {"C": cycle, "P": path, "K": complete, "S": star, "E": empty}[s[0]](k)
    return None


def parse_graph(spec: str) -> Graph:
    """Accept a family name, a JSON adjacency object or a graph6 string."""
    g = named_graph(spec)
    if g is not None:
        return g
    if spec.strip().startswith("{"):
        return from_json(spec)
    return from_graph6(spec)


# -- free functions mirroring the methods ------------------------------------


def induced_subgraph(g: Graph, vertices: Iterable[int]) -> Graph:
    return g.induced_subgraph(vertices)


def closed_nbhd(g: Graph, vertices: Iterable[int]) -> set[int]:
    return set(bits(g.closed_nbhd_mask(vertices)))


def complement(g: Graph) -> Graph:
    return g.complement()


# -- chordality --------------------------------------------------------------


def _mcs_order(adj: Sequence[int], mask: int) -> list[int]:
    """Maximum cardinality search over the vertices in ``mask``; returns visit order."""
    weight = {v: 0 for v in bits(mask)}
    order = []
    while weight:
        v = max(weight, key=lambda u: (weight[u], -u))
        del weight[v]
        order.append(v)
        for u in bits(adj[v]):
            if u in weight:
                weight[u] += 1
    return order


def is_chordal_mask(adj: Sequence[int], mask: int) -> bool:
    visit = _mcs_order(adj, mask)
    peo = visit[::-1]
    pos = {v: i for i, v in enumerate(peo)}
    for v in peo:
        later = [u for u in bits(adj[v] & mask) if pos[u] > pos[v]]
        if len(later) < 2:
            continue
        parent = min(later, key=pos.__getitem__)
        rest = mask_of(later) & ~(1 << parent)
        if rest & ~adj[parent]:
            return False
    return True


def is_chordal(g: Graph) -> bool:
    """True iff ``g`` has a perfect elimination ordering (found by MCS, then verified)."""
    return is_chordal_mask(g.adj, g.vertex_mask)


def perfect_elimination_ordering(g: Graph) -> list[int] | None:
    if not is_chordal(g):
        return None
    return _mcs_order(g.adj, g.vertex_mask)[::-1]


# -- canonical form and enumeration -----------------------------------------


def canonical_order(g: Graph) -> tuple[tuple[int, ...], list[int]]:
    """Relabeling minimising the graph6-order adjacency bit string.

    The key is the tuple of upper-triangle columns (column ``j`` holds the
    adjacencies of new vertex ``j`` to new vertices ``0..j-1``, most
    significant bit first), which compares exactly like the flat bit string.
    The search is exhaustive over relabelings, pruned by prefix comparison
    and by skipping a vertex whose twin was already tried at that position.
    """
    n, adj = g.n, g.adj
    twin_of = {}
    for v in range(n):
        for u in range(v):
            if adj[u] & ~(1 << v) == adj[v] & ~(1 << u):
                twin_of.setdefault(v, set()).add(u)
    best: list[tuple[int, ...] | None] = [None]
    best_order: list[list[int]] = [[]]

    def rec(order: list[int], remaining: int, cols: list[int]) -> None:
        j = len(order)
        if j == n:
            t = tuple(cols)
            if best[0] is None or t < best[0]:
                best[0] = t
                best_order[0] = list(order)
            return
        cand = {}
        for v in bits(remaining):
            c = 0
            row = adj[v]
            for u in order:
                c = (c << 1) | (row >> u & 1)
            cand[v] = c
        low = min(cand.values())
        if best[0] is not None:
            prefix = tuple(cols) + (low,)
            if prefix > best[0][: j + 1]:
                return
        tried: list[int] = []
        for v, c in cand.items():
            if c != low:
                continue
            if any(u in twin_of.get(v, ()) for u in tried):
                continue
            tried.append(v)
            order.append(v)
            cols.append(c)
            rec(order, remaining & ~(1 << v), cols)
            order.pop()
            cols.pop()

    rec([], g.vertex_mask, [])
    return (best[0] if best[0] is not None else ()), best_order[0]


def canonical_form(g: Graph) -> Graph:
    _, order = canonical_order(g)
    return g.relabel(order)


def canonical_key(g: Graph) -> tuple[int, tuple[int, ...]]:
    return g.n, canonical_order(g)[0]


def is_isomorphic(g1: Graph, g2: Graph) -> bool:
    return g1.n == g2.n and g1.num_edges == g2.num_edges and canonical_key(g1) == canonical_key(g2)


@lru_cache(maxsize=None)
def _all_graphs(n: int) -> tuple[Graph, ...]:
    if n == 0:
        return (Graph(0, ()),)
    found: dict[tuple[int, ...], Graph] = {}
    for h in _all_graphs(n - 1):
        for nb in range(1 << (n - 1)):
            adj = [row | ((nb >> v & 1) << (n - 1)) for v, row in enumerate(h.adj)] + [nb]
            g = Graph(n, tuple(adj))
            key, order = canonical_order(g)
            if key not in found:
                found[key] = g.relabel(order)
    return tuple(found[k] for k in sorted(found, key=lambda k: (sum(popcount(c) for c in k), k)))


def enumerate_graphs(n: int, no_isolated: bool = False, guard_override: bool = False) -> Iterator[Graph]:
    """One canonical representative per isomorphism class of graphs on ``n`` vertices."""
    if n < 0:
        raise DomainError("n must be non-negative")
    if n > ENUMERATION_GUARD and not guard_override:
        raise GuardError(f"enumerate_graphs({n}) exceeds guard n <= {ENUMERATION_GUARD}")
    for g in _all_graphs(n):
        if no_isolated and g.has_isolated():
            continue
        yield Graph(g.n, g.adj)
