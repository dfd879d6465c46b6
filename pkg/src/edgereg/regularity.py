"""Castelnuovo-Mumford regularity of monomial ideals.

For a squarefree ideal with Stanley-Reisner complex Delta, Hochster's
formula gives

    reg(I) = max{ d + 2 : H~_d(Delta|W) != 0 for some W }.

Delta|W is a cone unless W is a union of generator supports (a vertex of W
lying in no generator inside W is a cone point), so only those unions are
visited.  Non-squarefree ideals go through polarization, which preserves
regularity.  All values are for the ideal: reg(R/I) = reg(I) - 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from .errors import DomainError, GuardError
from .evenconn import EdgeMultiset, colon_graph, edge_multisets
from .graph import Graph, bits, popcount
from .homology import (
    _compact,
    current_audit,
    field_name,
    parse_field,
    register_cache,
    sr_homology,
    sr_homology_direct,
)
from .monomial import (
    MonomialIdeal,
    colon,
    edge_ideal,
    edge_product,
    polarize,
    power,
)

REGULARITY_VAR_GUARD = 20


@dataclass(frozen=True)
class RegularityReport:
    value: int
    witness: tuple[str, ...]
    dim: int | None
    field: str = "QQ"
    degenerate: bool = False
    ideal: MonomialIdeal | None = None  # the squarefree ideal the witness refers to

    @property
    def reg_mod(self) -> int:
        """reg(R/I)."""
        return self.value - 1

    def to_json(self) -> dict:
        out = {
            "reg": self.value,
            "reg_mod": self.reg_mod,
            "witness": {"W": list(self.witness), "dim": self.dim},
            "field": self.field,
        }
        if self.degenerate:
            out["degenerate"] = True
        return out

    def verify_witness(self) -> bool:
        """Recompute H~_dim(Delta|W) by direct elimination and check it is non-zero."""
        if self.dim is None:
            return self.value == 0
        if self.ideal is None:
            return False
        pos = {name: i for i, name in enumerate(self.ideal.vars)}
        w = 0
        for name in self.witness:
            w |= 1 << pos[name]
        masks = [_gen_mask(g) for g in self.ideal.gens]
        m, nonfaces = _compact(w, [g for g in masks if g & w == g])
        betti = sr_homology_direct(m, nonfaces, parse_field(self.field))
        return betti.get(self.dim, 0) > 0 and self.value == self.dim + 2


def _gen_mask(g) -> int:
    m = 0
    for i, e in enumerate(g):
        if e:
            m |= 1 << i
    return m


def _union_closure(masks: Sequence[int]) -> list[int]:
    seen = set(masks)
    frontier = list(seen)
    while frontier:
        nxt = []
        for w in frontier:
            for g in masks:
                u = w | g
                if u not in seen:
                    seen.add(u)
                    nxt.append(u)
        frontier = nxt
    return list(seen)


def _lex_key(w: int) -> tuple[int, tuple[int, ...]]:
    return popcount(w), tuple(bits(w))


def regularity_squarefree(ideal: MonomialIdeal, field="QQ", guard_override: bool = False) -> RegularityReport:
    p = parse_field(field)
    if not ideal.is_squarefree():
        raise DomainError("ideal is not squarefree; use regularity(), which polarizes first")
    if ideal.is_zero():
        return RegularityReport(0, (), None, field_name(p), True, ideal)
    if ideal.is_unit():
        return RegularityReport(0, (), None, field_name(p), False, ideal)
    nsupport = len(ideal.support())
    if nsupport > REGULARITY_VAR_GUARD and not guard_override:
        raise GuardError(f"{nsupport} variables exceeds regularity guard {REGULARITY_VAR_GUARD}")
    masks = [_gen_mask(g) for g in ideal.gens]
    audit = current_audit()
    best, best_w, best_d = -1, 0, None
    # increasing |W|, lexicographic within a size; a later W only replaces
    # the witness on strict improvement
    for w in sorted(_union_closure(masks), key=_lex_key):
        inside = [g for g in masks if g & w == g]
        key = _compact(w, inside)
        betti = sr_homology(*key, p)
        if audit is not None:
            audit.check(*key, betti, p)
        if betti:
            d = max(betti)
            if d + 2 > best:
                best, best_w, best_d = d + 2, w, d
    names = tuple(ideal.vars[i] for i in bits(best_w))
    return RegularityReport(best, names, best_d, field_name(p), False, ideal)


def regularity(ideal: MonomialIdeal, field="QQ", guard_override: bool = False) -> RegularityReport:
    """Regularity of any monomial ideal, via its polarization."""
    if ideal.is_squarefree():
        return regularity_squarefree(ideal, field, guard_override)
    pol, _ = polarize(ideal)
    nsupport = len(pol.support())
    if nsupport > REGULARITY_VAR_GUARD and not guard_override:
        raise GuardError(
            f"polarization has {nsupport} variables, exceeding regularity guard {REGULARITY_VAR_GUARD}"
        )
    return regularity_squarefree(pol, field, guard_override=True)


def edge_regularity(g: Graph, field="QQ") -> int:
    """reg(I(G)), 0 for an edgeless graph."""
    return power_regularity(g, 1, field).value


_computed_powers: set[tuple[Graph, int]] = set()


@lru_cache(maxsize=100_000)
def _power_regularity(g: Graph, q: int, p: int, guard_override: bool) -> RegularityReport:
    report = regularity(power(edge_ideal(g), q), p, guard_override)
    _computed_powers.add((g, q))
    return report


def computed_powers() -> list[tuple[Graph, int]]:
    """Every (G, q) whose power regularity has been computed in this process."""
    return sorted(_computed_powers, key=lambda t: (t[0].n, t[0].adj, t[1]))


def power_regularity(g: Graph, q: int, field="QQ", guard_override: bool = False) -> RegularityReport:
    if q < 1:
        raise DomainError("power_regularity needs q >= 1")
    return _power_regularity(Graph(g.n, g.adj), q, parse_field(field), guard_override)


def _as_multiset(g: Graph, e) -> EdgeMultiset:
    return e if isinstance(e, EdgeMultiset) else EdgeMultiset.of(g, e)


def colon_regularity(g: Graph, e, field="QQ", guard_override: bool = False) -> RegularityReport:
    """reg(I^{s+1} : e1...es) from the edge ideal of the colon graph."""
    e = _as_multiset(g, e)
    gp, _ = colon_graph(g, e)
    names = tuple(str(lbl) for lbl in gp.vertex_labels())
    return regularity_squarefree(edge_ideal(gp, names), field, guard_override)


def colon_regularity_algebraic(g: Graph, e, field="QQ", guard_override: bool = False) -> RegularityReport:
    """Same value computed from the monomial colon, with no graph theory involved."""
    e = _as_multiset(g, e)
    ideal = colon(power(edge_ideal(g), len(e) + 1), edge_product(g.n, e.edges))
    return regularity(ideal, field, guard_override)


def banerjee_bound(g: Graph, q: int, field="QQ", guard_override: bool = False) -> int:
    """Upper bound on reg(I(G)^q) from the colon recursion.

    max( reg(I^{q-1}), max_M reg(I^q : M) + 2(q-1) ) over the distinct
    minimal generators M of I^{q-1}.
    """
    if q < 2:
        raise DomainError("banerjee_bound needs q >= 2")
    if g.num_edges == 0:
        raise DomainError("banerjee_bound needs a graph with an edge")
    bound = power_regularity(g, q - 1, field, guard_override).value
    seen = set()
    for e in edge_multisets(g, q - 1):
        prod = edge_product(g.n, e.edges)
        if prod in seen:
            continue
        seen.add(prod)
        bound = max(bound, colon_regularity(g, e, field, guard_override).value + 2 * (q - 1))
    return bound


register_cache(_power_regularity.cache_clear)


def clear_caches() -> None:
    _power_regularity.cache_clear()
    sr_homology.cache_clear()
