"""Named, reproducible checks over enumerated or constructed graph families.

Each check id owns a default :class:`FamilySpec`, a time budget and a
formula anchor.  :func:`instances` lists the (graph6, parameters) pairs a
family expands to, :func:`evaluate` turns one of them into a
:class:`TheoremCheck`, and :func:`sweep` runs a whole family (optionally in
a worker pool) into a :class:`SweepReport`.  Everything is deterministic
given the seed.
"""

from __future__ import annotations

import math
import random
import time
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations, combinations_with_replacement
from typing import Callable, Iterable, Iterator

from .errors import DomainError, GuardError
from .evenconn import (
    EdgeMultiset,
    all_even_connections,
    classify_neighbors,
    colon_graph,
    colon_graph_edge_ideal,
    connected_pairs,
    edge_multisets,
)
from .graph import (
    Graph,
    bits,
    canonical_form,
    canonical_key,
    cycle,
    disjoint_union,
    enumerate_graphs,
    house,
    is_chordal,
    parse_graph,
    to_graph6,
)
from .homology import field_audit, parse_field, register_cache
from .invariants import (
    cochordal_cover_number,
    contains_cycle,
    induced_matching_number,
    is_vertex_decomposable,
    shedding_set,
    zeta_value,
)
from .monomial import colon, edge_ideal, edge_product, polarize, power
from .regularity import (
    REGULARITY_VAR_GUARD,
    banerjee_bound,
    colon_regularity,
    colon_regularity_algebraic,
    computed_powers,
    power_regularity,
    regularity,
)

HOLDS = "holds"
VIOLATED = "violated"
SKIPPED = "skipped-guard"


# -- families and results ----------------------------------------------------


@dataclass(frozen=True)
class FamilySpec:
    """Which instances a sweep visits.

    Graphs are all isomorphism classes on nmin..nmax vertices without
    isolated vertices (optionally connected).  Powers q run over 1..qmax,
    plus every (n_limit, q) pair in ``extra_q`` for graphs with n <= n_limit.
    Edge multisets run exhaustively over s = 1..smax and, when
    ``sample_s`` is set, ``samples`` seeded draws of size sample_s.
    """

    nmin: int = 2
    nmax: int = 6
    qmax: int = 2
    extra_q: tuple[tuple[int, int], ...] = ()
    smax: int = 2
    sample_s: int = 0
    samples: int = 0
    connected: bool = False
    seed: int = 0
    cycles: tuple[tuple[int, ...], ...] = ()
    guard_override: bool = False

    def to_json(self) -> dict:
        out = {
            "nmin": self.nmin,
            "nmax": self.nmax,
            "qmax": self.qmax,
            "smax": self.smax,
            "connected": self.connected,
        }
        if self.extra_q:
            out["extra_q"] = [list(t) for t in self.extra_q]
        if self.sample_s:
            out["sample_s"] = self.sample_s
            out["samples"] = self.samples
        if self.cycles:
            out["cycles"] = [list(c) for c in self.cycles]
        return out

    def powers_for(self, n: int) -> list[int]:
        qs = set(range(1, self.qmax + 1))
        for limit, q in self.extra_q:
            if n <= limit:
                qs.update(range(1, q + 1))
        return sorted(qs)


@dataclass(frozen=True)
class Instance:
    graph: str  # graph6 or a family name such as "house" or "C5+C7"
    params: tuple[tuple[str, object], ...] = ()

    @classmethod
    def of(cls, g: Graph | str, **params) -> Instance:
        spec = g if isinstance(g, str) else to_graph6(g)
        return cls(spec, tuple(sorted(params.items())))

    def load(self) -> Graph:
        return parse_graph(self.graph)

    @property
    def p(self) -> dict:
        return dict(self.params)

    def graph6(self) -> str:
        return to_graph6(self.load())

    def to_json(self) -> dict:
        return {"graph6": self.graph6(), "params": _jsonable(self.p)}


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple, set, frozenset)):
        items = [_jsonable(v) for v in x]
        return sorted(items, key=repr) if isinstance(x, (set, frozenset)) else items
    return x


@dataclass
class TheoremCheck:
    id: str
    instance: Instance
    verdict: str
    lhs: object = None
    rhs: object = None
    evidence: dict = field(default_factory=dict)

    def violation(self) -> dict:
        out = self.instance.to_json()
        out["lhs"] = _jsonable(self.lhs)
        out["rhs"] = _jsonable(self.rhs)
        if self.evidence:
            out["evidence"] = _jsonable(self.evidence)
        return out

    def to_json(self) -> dict:
        out = {"id": self.id, "verdict": self.verdict, **self.instance.to_json()}
        out["lhs"] = _jsonable(self.lhs)
        out["rhs"] = _jsonable(self.rhs)
        out["evidence"] = _jsonable(self.evidence)
        return out


@dataclass
class SweepReport:
    id: str
    family: FamilySpec
    checked: int
    violations: list[dict]
    skipped: list[dict]
    elapsed_ms: int
    anchor: str
    budget_s: float
    label: str = "verified"
    summary: dict = field(default_factory=dict)

    @property
    def within_budget(self) -> bool:
        return self.elapsed_ms <= self.budget_s * 1000

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_json(self) -> dict:
        return {
            "id": self.id,
            "family": self.family.to_json(),
            "checked": self.checked,
            "violations": self.violations,
            "seed": self.family.seed,
            "elapsed_ms": self.elapsed_ms,
            "anchor": self.anchor,
            "label": self.label,
            "budget_ms": int(self.budget_s * 1000),
            "within_budget": self.within_budget,
            "skipped": self.skipped,
            "summary": _jsonable(self.summary),
        }

    CSV_HEADER = "id,checked,violations,skipped,seed,elapsed_ms,budget_ms,label"

    def csv_row(self) -> str:
        return (
            f"{self.id},{self.checked},{len(self.violations)},{len(self.skipped)},"
            f"{self.family.seed},{self.elapsed_ms},{int(self.budget_s * 1000)},{self.label}"
        )


# -- cached graph quantities -------------------------------------------------


def _plain(g: Graph) -> Graph:
    return Graph(g.n, g.adj)


@lru_cache(maxsize=None)
def _zeta(g: Graph) -> int:
    return zeta_value(g)


@lru_cache(maxsize=None)
def _nu(g: Graph) -> int:
    return induced_matching_number(g)


def zeta_of(g: Graph) -> int:
    return _zeta(_plain(g))


def nu_of(g: Graph) -> int:
    return _nu(_plain(g))


def reg_of(g: Graph, field=0) -> int:
    """reg(I(G)); 0 (degenerate) when G has no edges."""
    return power_regularity(g, 1, field).value


@lru_cache(maxsize=None)
def _reg_canonical(g: Graph) -> int:
    return reg_of(g)


def reg_up_to_iso(g: Graph) -> int:
    """reg(I(G)) memoised on the isomorphism class."""
    if g.num_edges == 0:
        return 0
    return _reg_canonical(_plain(canonical_form(g.without_isolated())))


# -- regularity drop sets ----------------------------------------------------


@dataclass(frozen=True)
class RegDropSets:
    """P(G) and, for vertex decomposable G, S(G); vertex labels of G."""

    p: frozenset
    s: frozenset | None
    reg: int
    degenerate: frozenset  # x with G \\ N[x] edgeless (zero ideal, reg 0 by convention)

    def to_json(self) -> dict:
        return {
            "P": _jsonable(self.p),
            "S": None if self.s is None else _jsonable(self.s),
            "reg": self.reg,
            "degenerate": _jsonable(self.degenerate),
        }


def reg_drop_set(g: Graph) -> set:
    """P(G) = {x : reg(I(G \\ N[x])) + 1 <= reg(I(G))}, as vertex labels."""
    return set(reg_drop_sets(g, with_s=False).p)


def reg_drop_sets(g: Graph, with_s: bool = True) -> RegDropSets:
    r = reg_up_to_iso(g)
    p, degenerate = set(), set()
    for x in range(g.n):
        rest = g.delete(bits(g.closed_nbhd_mask([x])))
        if rest.num_edges == 0:
            degenerate.add(g.label(x))
        if reg_up_to_iso(rest) + 1 <= r:
            p.add(g.label(x))
    s = None
    if with_s and g.num_edges and is_vertex_decomposable(g):
        s = frozenset(g.label(x) for x in shedding_set(g))
    return RegDropSets(frozenset(p), s, r, frozenset(degenerate))


def _drop_exists(g: Graph) -> bool:
    r = reg_up_to_iso(g)
    return any(reg_up_to_iso(g.delete(bits(g.closed_nbhd_mask([x])))) + 1 <= r for x in range(g.n))


@lru_cache(maxsize=None)
def _hereditary_drop(g: Graph) -> bool:
    if not _drop_exists(g):
        return False
    for v in range(g.n):
        h = g.delete([v]).without_isolated()
        if h.num_edges and not _hereditary_drop(_plain(canonical_form(h))):
            return False
    return True


# both memoise regularity values, so an audit must start from scratch
register_cache(_reg_canonical.cache_clear)
register_cache(_hereditary_drop.cache_clear)


def hereditary_drop(g: Graph) -> bool:
    """Every induced subgraph with an edge has a vertex in its P-set.

    Induced subgraphs without edges are left out: for them both sides of the
    defining inequality are 0 and the condition cannot hold.
    """
    h = g.without_isolated()
    return h.num_edges == 0 or _hereditary_drop(_plain(canonical_form(h)))


# -- instance generation -----------------------------------------------------


def family_graphs(fam: FamilySpec) -> Iterator[Graph]:
    for n in range(max(fam.nmin, 2), fam.nmax + 1):
        for g in enumerate_graphs(n, no_isolated=True):
            if fam.connected and not g.is_connected():
                continue
            yield g


def _multiset_instances(fam: FamilySpec, graphs: list[Graph] | None = None) -> list[Instance]:
    graphs = list(family_graphs(fam)) if graphs is None else graphs
    out = []
    for g in graphs:
        for s in range(1, fam.smax + 1):
            for e in edge_multisets(g, s):
                out.append(Instance.of(g, edges=e.edges))
    if fam.sample_s and fam.samples:
        s = fam.sample_s
        rng = random.Random(fam.seed)
        weights = [math.comb(g.num_edges + s - 1, s) for g in graphs]
        for _ in range(fam.samples):
            g = rng.choices(graphs, weights=weights)[0]
            combos = list(combinations_with_replacement(g.edges(), s))
            out.append(Instance.of(g, edges=rng.choice(combos), sampled=True))
    return out


def _power_instances(fam: FamilySpec, keep: Callable[[Graph], bool] = lambda g: True) -> list[Instance]:
    out = []
    for g in family_graphs(fam):
        if keep(g):
            for q in fam.powers_for(g.n):
                out.append(Instance.of(g, q=q))
    return out


def _graph_instances(fam: FamilySpec, keep: Callable[[Graph], bool] = lambda g: True) -> list[Instance]:
    return [Instance.of(g) for g in family_graphs(fam) if keep(g)]


def _edges_of(inst: Instance, g: Graph) -> EdgeMultiset:
    return EdgeMultiset.of(g, inst.p["edges"])


# -- individual checks -------------------------------------------------------


def _verdict(ok: bool) -> str:
    return HOLDS if ok else VIOLATED


def _power_reg(g: Graph, q: int, fieldp: int):
    return power_regularity(g, q, fieldp)


def _lower_bound_note(g: Graph, q: int, value: int) -> dict:
    lb = 2 * q + nu_of(g) - 1
    return {"lb_bht": lb, "lb_bht_holds": lb <= value}


def _eval_thm_4_2(inst: Instance, fieldp: int) -> TheoremCheck:
    g = inst.load()
    lhs = power_regularity(g, 1, fieldp).value
    rhs = zeta_of(g) + 1
    return TheoremCheck("thm-4.2", inst, _verdict(lhs <= rhs), lhs, rhs)


def _eval_thm_4_5(inst: Instance, fieldp: int) -> TheoremCheck:
    g = inst.load()
    e = _edges_of(inst, g)
    report = colon_regularity(g, e, fieldp)
    rhs = zeta_of(g) + 1
    return TheoremCheck(
        "thm-4.5", inst, _verdict(report.value <= rhs), report.value, rhs, {"witness": report.to_json()["witness"]}
    )


def _eval_thm_4_6(inst: Instance, fieldp: int) -> TheoremCheck:
    g = inst.load()
    q = inst.p["q"]
    value = _power_reg(g, q, fieldp).value
    rhs = 2 * q + zeta_of(g) - 1
    return TheoremCheck("thm-4.6", inst, _verdict(value <= rhs), value, rhs, _lower_bound_note(g, q, value))


def _eval_lb_bht(inst: Instance, fieldp: int) -> TheoremCheck:
    g = inst.load()
    q = inst.p["q"]
    value = _power_reg(g, q, fieldp).value
    lhs = 2 * q + nu_of(g) - 1
    return TheoremCheck("lb-bht", inst, _verdict(lhs <= value), lhs, value)


def _eval_conj(check_id: str, inst: Instance, fieldp: int, extra: dict | None = None) -> TheoremCheck:
    g = inst.load()
    q = inst.p["q"]
    value = _power_reg(g, q, fieldp).value
    rhs = 2 * q + reg_of(g, fieldp) - 2
    ev = _lower_bound_note(g, q, value)
    if extra:
        ev.update(extra)
    return TheoremCheck(check_id, inst, _verdict(value <= rhs), value, rhs, ev)


def _eval_thm_4_8(inst: Instance, fieldp: int) -> TheoremCheck:
    g = inst.load()
    check = _eval_conj("thm-4.8", inst, fieldp, {"hypothesis": True})
    if inst.p["q"] == 2:
        # the step the argument actually proves: reg(I^2 : e) <= reg(I)
        r = reg_of(g, fieldp)
        worst = max(colon_regularity(g, [e], fieldp).value for e in g.edges())
        check.evidence["max_colon_reg_s1"] = worst
        if worst > r:
            check.verdict = VIOLATED
            check.lhs, check.rhs = worst, r
            check.evidence["failed"] = "reg(I^2 : e) <= reg(I)"
    return check


def _eval_thm_5_3(inst: Instance, fieldp: int) -> TheoremCheck:
    return _eval_conj("thm-5.3", inst, fieldp, {"vertex_decomposable": True})


def _eval_conj_1_2(inst: Instance, fieldp: int) -> TheoremCheck:
    return _eval_conj("conj-1.2", inst, fieldp)


_COR_CLASSES = {
    "chordal": is_chordal,
    "c5free-vd": lambda g: is_vertex_decomposable(g) and not contains_cycle(g, 5),
}


def _eval_cor_5_4(inst: Instance, fieldp: int) -> TheoremCheck:
    g = inst.load()
    q = inst.p["q"]
    cls = inst.p.get("class")
    if cls is None:
        # single-graph runs: pick the first class the graph belongs to
        cls = next((c for c, member in _COR_CLASSES.items() if member(g)), None)
        if cls is None:
            raise DomainError(
                "graph is neither chordal nor C5-free vertex decomposable; "
                "whiskered instances come from family sweeps"
            )
    elif cls in _COR_CLASSES and not _COR_CLASSES[cls](g):
        raise DomainError(f"graph is not in the class {cls!r}")
    value = _power_reg(g, q, fieldp).value
    rhs = 2 * q + nu_of(g) - 1
    return TheoremCheck("cor-5.4-" + cls, inst, _verdict(value == rhs), value, rhs, {"class": cls})


def _eval_prop_4_7(inst: Instance, fieldp: int) -> TheoremCheck:
    lengths = inst.p["cycles"]
    _require_good_cycle(lengths)
    q = inst.p["q"]
    g = _cycle_union(lengths)
    nvars = g.n * q if q > 1 else g.n
    if nvars > REGULARITY_VAR_GUARD and not inst.p.get("guard_override", False):
        return TheoremCheck(
            "prop-4.7", inst, SKIPPED, None, None,
            {"reason": f"polarization needs {nvars} variables, guard is {REGULARITY_VAR_GUARD}"},
        )
    value = power_regularity(g, q, fieldp, guard_override=True).value
    z = zeta_of(g)
    rhs = 2 * q + z - 1
    ev = {"zeta": z, "nu": nu_of(g)}
    if g.num_edges <= 20:
        ev["cochord"] = cochordal_cover_number(g)
    return TheoremCheck("prop-4.7", inst, _verdict(value == rhs), value, rhs, ev)


def _cycle_union(lengths: Iterable[int]) -> Graph:
    out = None
    for k in lengths:
        c = cycle(k)
        out = c if out is None else disjoint_union(out, c)
    return out


def _eval_froberg(inst: Instance, fieldp: int) -> TheoremCheck:
    g = inst.load()
    r = reg_of(g, fieldp)
    chordal = is_chordal(g.complement())
    return TheoremCheck("froberg", inst, _verdict((r == 2) == chordal), r == 2, chordal, {"reg": r})


def _eval_colon_routes(inst: Instance, fieldp: int) -> TheoremCheck:
    g = inst.load()
    e = _edges_of(inst, g)
    a = colon_regularity(g, e, fieldp).value
    b = colon_regularity_algebraic(g, e, fieldp).value
    return TheoremCheck("colon-routes", inst, _verdict(a == b), a, b)


def _gen_names(ideal) -> set[frozenset]:
    return {frozenset(ideal.vars[i] for i, e in enumerate(g) if e) for g in ideal.gens}


def _eval_oracle_colon(inst: Instance, fieldp: int) -> TheoremCheck:
    g = inst.load()
    e = _edges_of(inst, g)
    via_graph = colon_graph_edge_ideal(g, e)
    via_algebra, _ = polarize(colon(power(edge_ideal(g), len(e) + 1), edge_product(g.n, e.edges)))
    a, b = _gen_names(via_graph), _gen_names(via_algebra)
    evidence = {} if a == b else {"only_graph": a - b, "only_algebra": b - a}
    return TheoremCheck("oracle-colon", inst, _verdict(a == b), len(a), len(b), evidence)


def _eval_banerjee(inst: Instance, fieldp: int) -> TheoremCheck:
    g = inst.load()
    q = inst.p["q"]
    bound = banerjee_bound(g, q, fieldp)
    value = power_regularity(g, q, fieldp).value
    rhs_zeta = 2 * q + zeta_of(g) - 1
    ok = value <= bound <= rhs_zeta
    return TheoremCheck("banerjee", inst, _verdict(ok), value, bound, {"zeta_bound": rhs_zeta})


def _eval_obs_5_2(inst: Instance, fieldp: int) -> TheoremCheck:
    g = inst.load()
    sets = reg_drop_sets(g)
    ok = sets.s is not None and sets.s <= sets.p
    return TheoremCheck("obs-5.2", inst, _verdict(ok), sets.s, sets.p, sets.to_json())


def _eval_q_4_10(inst: Instance, fieldp: int) -> TheoremCheck:
    g = inst.load()
    ideal = edge_ideal(g)
    r = reg_of(g, fieldp)
    regs = {}
    for x in range(g.n):
        m = [0] * g.n
        m[x] = 1
        regs[x] = regularity(colon(ideal, tuple(m)), fieldp).value
    good = sorted(x for x, v in regs.items() if v + 1 <= r)
    return TheoremCheck(
        "q-4.10", inst, _verdict(bool(good)), min(regs.values()) + 1, r,
        {"reg": r, "colon_regs": regs, "satisfying": good},
    )


# -- lemma checks (label-space comparisons) ----------------------------------


def _edge_set(g: Graph) -> set[frozenset]:
    return g.labelled_edges()


def _induced_in(a: Graph, b: Graph) -> tuple[bool, str]:
    """Is the edge ideal of ``a`` that of an induced subgraph of ``b``?

    Compared on labels: every vertex of ``a`` carrying an edge must be a
    vertex of ``b``, and on the shared labels the two edge sets agree.
    Vertices of ``a`` without edges do not affect I(a) and are ignored.
    """
    blabels = set(b.vertex_labels())
    ea = _edge_set(a)
    for edge in ea:
        for lab in edge:
            if lab not in blabels:
                return False, f"vertex {lab!r} of an edge is missing"
    shared = blabels & set(a.vertex_labels())
    eb = {e for e in _edge_set(b) if e <= shared}
    if ea != eb:
        return False, f"edges differ: only-left {sorted(map(sorted, ea - eb), key=repr)} only-right {sorted(map(sorted, eb - ea), key=repr)}"
    return True, ""


def _delete_labels(g: Graph, labels: set) -> Graph:
    return g.delete([v for v in range(g.n) if g.label(v) in labels])


def _closed_nbhd_labels(g: Graph, label) -> set:
    v = g.vertex_labels().index(label)
    return {g.label(u) for u in bits(g.closed_nbhd_mask([v]))}


def _colon_of_induced(g: Graph, e: EdgeMultiset, sub: Graph) -> Graph:
    """(sub)' for the e_i lying inside the induced subgraph ``sub`` (labels = vertices of g)."""
    return colon_graph(sub, e.restricted_to(sub))[0]


def _lem_result(check_id: str, inst: Instance, failures: list, applicable: int) -> TheoremCheck:
    if failures:
        return TheoremCheck(check_id, inst, VIOLATED, failures[0][0], failures[0][1], {"failures": failures[:5]})
    return TheoremCheck(check_id, inst, HOLDS, None, None, {"applicable": applicable})


@lru_cache(maxsize=64)
def _power_ideal(g: Graph, q: int):
    return power(edge_ideal(g), q)


def _eval_lem_3_2(inst: Instance, fieldp: int) -> TheoremCheck:
    g = inst.load()
    e = _edges_of(inst, g)
    s = len(e)
    failures, applicable = [], 0
    left = None
    for i, (a, b) in enumerate(e.edges):
        if g.degree(a) != 1 and g.degree(b) != 1:
            continue
        applicable += 1
        if left is None:
            left = colon(_power_ideal(_plain(g), s + 1), edge_product(g.n, e.edges))
        right = colon(_power_ideal(_plain(g), s), edge_product(g.n, e.without(i).edges))
        if left != right:
            failures.append((str(left), str(right), {"i": i}))
    return _lem_result("lem-3.2", inst, failures, applicable)


def _eval_lem_3_3(inst: Instance, fieldp: int) -> TheoremCheck:
    g = inst.load()
    e = _edges_of(inst, g)
    gp = colon_graph(g, e)[0]
    touched = {v for edge in e.edges for v in edge}
    failures, applicable = [], 0
    for x in range(g.n):
        if x in touched:
            continue
        applicable += 1
        left = _delete_labels(gp, {(x, 1), (x, 2)})
        right = _colon_of_induced(g, e, g.delete([x]))
        if _edge_set(left) != _edge_set(right):
            failures.append((sorted(map(sorted, _edge_set(left))), sorted(map(sorted, _edge_set(right))), {"x": x}))
    return _lem_result("lem-3.3", inst, failures, applicable)


def _eval_lem_3_4(inst: Instance, fieldp: int) -> TheoremCheck:
    g = inst.load()
    e = _edges_of(inst, g)
    pairs = connected_pairs(g, e)

    def joined(a: int, b: int) -> bool:
        return (min(a, b), max(a, b)) in pairs

    failures, applicable = [], 0
    for u in range(g.n):
        for v in range(u, g.n):
            for cert in all_even_connections(g, e, u, v, nontrivial=True):
                applicable += 1
                for p in set(cert.path):
                    for w in range(g.n):
                        if joined(w, p) and not (joined(u, w) or joined(v, w)):
                            failures.append((cert.to_json(), {"w": w, "p": p}, {}))
    return _lem_result("lem-3.4", inst, failures, applicable)


def _eval_lem_3_5(inst: Instance, fieldp: int) -> TheoremCheck:
    g = inst.load()
    e = _edges_of(inst, g)
    gp = colon_graph(g, e)[0]
    failures = []
    for y in range(g.n):
        left = _delete_labels(gp, _closed_nbhd_labels(gp, (y, 1)))
        right = _colon_of_induced(g, e, g.delete(bits(g.closed_nbhd_mask([y]))))
        ok, why = _induced_in(left, right)
        if not ok:
            failures.append((why, None, {"y": y}))
    return _lem_result("lem-3.5", inst, failures, g.n)


def _eval_lem_3_6(inst: Instance, fieldp: int) -> TheoremCheck:
    g = inst.load()
    e = _edges_of(inst, g)
    gp = colon_graph(g, e)[0]
    support = 0
    for a, b in e.edges:
        support |= (1 << a) | (1 << b)
    others = [v for v in range(g.n) if not support >> v & 1]
    failures, applicable = [], 0
    for r in range(len(others) + 1):
        for extra in combinations(others, r):
            keep = list(bits(support)) + list(extra)
            sub = g.induced_subgraph(keep)
            hp = _colon_of_induced(g, e, sub)
            applicable += 1
            # H' must sit inside G' as the induced subgraph on its own vertices
            shared = set(hp.vertex_labels())
            if not shared <= set(gp.vertex_labels()):
                failures.append(("vertex of H' missing from G'", sorted(map(str, shared)), {"keep": keep}))
                continue
            restricted = {edge for edge in _edge_set(gp) if edge <= shared}
            if restricted != _edge_set(hp):
                failures.append(("edges differ", None, {"keep": keep}))
    return _lem_result("lem-3.6", inst, failures, applicable)


def _eval_lem_3_7(inst: Instance, fieldp: int) -> TheoremCheck:
    g = inst.load()
    e = _edges_of(inst, g)
    gp = colon_graph(g, e)[0]
    failures, applicable = [], 0
    seen = set()
    for i, (a, b) in enumerate(e.edges):
        for y, x in ((a, b), (b, a)):
            if (e.edges[i], y) in seen:
                continue
            seen.add((e.edges[i], y))
            cls = classify_neighbors(g, e, i, y)
            x1_labels = {(g.label(v), lvl) for v, lvl in cls.x1}
            g1 = _delete_labels(gp, x1_labels)
            for (u, level), part in [(m, 1) for m in sorted(cls.x1)] + [(m, 2) for m in sorted(cls.x2)]:
                # the shadow y^(2) stands for u = y itself
                applicable += 1
                target = _colon_of_induced(g, e, g.delete(bits(g.closed_nbhd_mask([u, x]))))
                host = gp if part == 1 else g1
                left = _delete_labels(host, _closed_nbhd_labels(host, (g.label(u), 1)))
                ok, why = _induced_in(left, target)
                if not ok:
                    failures.append((why, None, {"i": i, "y": y, "u": [u, level], "part": part}))
    return _lem_result("lem-3.7", inst, failures, applicable)


# -- whole-family checks -----------------------------------------------------


def _eval_enum_5(inst: Instance, fieldp: int) -> TheoremCheck:
    n = inst.p["n"]
    graphs = list(enumerate_graphs(n, no_isolated=True))
    vd = [g for g in graphs if is_vertex_decomposable(g)]
    p_exceptions, s_exceptions = [], []
    for g in graphs:
        p = reg_drop_set(g)
        rest = g.delete([v for v in range(g.n) if v in p])
        if rest.num_edges:
            p_exceptions.append(g)
    for g in vd:
        s = shedding_set(g)
        rest = g.delete(list(s))
        if rest.num_edges:
            s_exceptions.append(g)

    def colon_is_identity(g: Graph, exceptional: set) -> bool:
        inside = [(u, v) for u, v in g.edges() if u not in exceptional and v not in exceptional]
        ideal = edge_ideal(g)
        return all(colon(power(ideal, 2), edge_product(g.n, [ed])) == ideal for ed in inside)

    from .graph import is_isomorphic

    evidence = {
        "graphs": len(graphs),
        "vertex_decomposable": len(vd),
        "edge_outside_P": [to_graph6(g) for g in p_exceptions],
        "edge_outside_S": [to_graph6(g) for g in s_exceptions],
        "colon_identity_P": all(colon_is_identity(g, reg_drop_set(g)) for g in p_exceptions),
        "colon_identity_S": all(colon_is_identity(g, shedding_set(g)) for g in s_exceptions),
    }
    expected = inst.p.get("expected")
    ok = evidence["colon_identity_P"] and evidence["colon_identity_S"]
    if expected:
        ok = ok and len(graphs) == expected["graphs"] and len(vd) == expected["vertex_decomposable"]
        ok = ok and len(s_exceptions) == expected["edge_outside_S"]
        ok = ok and len(p_exceptions) == expected["edge_outside_P"]
        if expected.get("house"):
            ok = ok and len(p_exceptions) == 1 and is_isomorphic(p_exceptions[0], house())
    lhs = [len(graphs), len(vd), len(s_exceptions), len(p_exceptions)]
    rhs = None if not expected else [
        expected["graphs"], expected["vertex_decomposable"], expected["edge_outside_S"], expected["edge_outside_P"]
    ]
    return TheoremCheck("enum-5", Instance.of("E%d" % n, n=n), _verdict(ok), lhs, rhs, evidence)


def _eval_house_colon(inst: Instance, fieldp: int) -> TheoremCheck:
    g = inst.load()
    ideal = edge_ideal(g)
    t = {lab: i for i, lab in enumerate(g.vertex_labels())}
    sq = colon(power(ideal, 2), edge_product(g.n, [(t["t3"], t["t4"])]))
    r = reg_of(g, fieldp)
    p = reg_drop_set(g)
    ok = sq == ideal and r == 2 and p == {"t2", "t5"}
    return TheoremCheck(
        "house-colon", inst, _verdict(ok), [str(sq), r, sorted(p)], [str(ideal), 2, ["t2", "t5"]],
    )


# -- registry ----------------------------------------------------------------


@dataclass(frozen=True)
class CheckDef:
    id: str
    anchor: str
    family: FamilySpec
    budget_s: float
    instances: Callable[[FamilySpec], list[Instance]]
    evaluate: Callable[[Instance, int], TheoremCheck]
    label: str = "verified"
    description: str = ""


def _vd_graph(g: Graph) -> bool:
    return is_vertex_decomposable(g)


def _cor_instances(fam: FamilySpec, which: str) -> list[Instance]:
    out = []
    for cls, member in _COR_CLASSES.items():
        if which in (cls, "all"):
            for inst in _power_instances(fam, member):
                out.append(Instance(inst.graph, inst.params + (("class", cls),)))
    if which in ("whiskered", "all"):
        out.extend(_whiskered_instances(fam))
    return [Instance(i.graph, tuple(sorted(i.params))) for i in out]


def _whiskered_instances(fam: FamilySpec) -> list[Instance]:
    """H with whiskers on S, H \\ S chordal, at most nmax vertices in total."""
    from .graph import add_whiskers

    seen, out = set(), []
    for nh in range(1, fam.nmax):
        for h in enumerate_graphs(nh):
            for smask in range(1, 1 << nh):
                if nh + bin(smask).count("1") > fam.nmax:
                    continue
                if not is_chordal(h.delete(bits(smask))):
                    continue
                g = add_whiskers(h, bits(smask)).without_isolated()
                if g.num_edges == 0:
                    continue
                key = canonical_key(g)
                if key in seen:
                    continue
                seen.add(key)
                for q in fam.powers_for(g.n):
                    out.append(Instance.of(g, q=q, **{"class": "whiskered"}))
    return out


def _hereditary_instances(fam: FamilySpec) -> list[Instance]:
    return _power_instances(fam, hereditary_drop)


def _lb_instances(fam: FamilySpec) -> list[Instance]:
    """The family itself plus every power computed so far in this process."""
    out = {i: None for i in _power_instances(fam)}
    for g, q in computed_powers():
        if g.num_edges:
            out.setdefault(Instance.of(g, q=q), None)
    return list(out)


def _require_good_cycle(lengths) -> None:
    if not any(k % 3 in (0, 1) for k in lengths):
        raise DomainError(f"cycle union {tuple(lengths)} needs a cycle of length 0 or 1 mod 3")


def _prop_instances(fam: FamilySpec) -> list[Instance]:
    out = []
    for lengths in fam.cycles:
        _require_good_cycle(lengths)
        for q in range(1, fam.qmax + 1):
            spec = "+".join(f"C{k}" for k in lengths)
            params = (("cycles", tuple(lengths)), ("q", q))
            if fam.guard_override:
                params += (("guard_override", True),)
            out.append(Instance(spec, params))
    return out


_LEMMA_FAMILY = FamilySpec(nmax=6, smax=2, sample_s=3, samples=150, seed=0)

REGISTRY: dict[str, CheckDef] = {}


def _register(defn: CheckDef) -> None:
    REGISTRY[defn.id] = defn


_register(CheckDef(
    "thm-4.2", "reg(I(G)) <= zeta(G) + 1", FamilySpec(nmax=7, qmax=1), 180,
    _graph_instances, _eval_thm_4_2,
))
_register(CheckDef(
    "thm-4.5", "reg(I(G)^(s+1) : e_1...e_s) <= zeta(G) + 1",
    FamilySpec(nmax=6, smax=2, sample_s=3, samples=200), 900,
    _multiset_instances, _eval_thm_4_5,
))
_register(CheckDef(
    "thm-4.6", "reg(I(G)^q) <= 2q + zeta(G) - 1", FamilySpec(nmax=6, qmax=2, extra_q=((5, 3),)), 600,
    _power_instances, _eval_thm_4_6,
))
_register(CheckDef(
    "lb-bht", "2q + nu(G) - 1 <= reg(I(G)^q)", FamilySpec(nmax=6, qmax=2, extra_q=((5, 3),)), 600,
    _lb_instances, _eval_lb_bht,
))
_register(CheckDef(
    "thm-4.8", "every induced H has x with reg(I(H \\ N_H[x])) + 1 <= reg(I(H)) implies reg(I(G)^q) <= 2q + reg(I(G)) - 2",
    FamilySpec(nmax=6, qmax=2, extra_q=((5, 3),)), 900,
    _hereditary_instances, _eval_thm_4_8,
))
_register(CheckDef(
    "thm-5.3", "G vertex decomposable implies reg(I(G)^q) <= 2q + reg(I(G)) - 2",
    FamilySpec(nmax=6, qmax=2, extra_q=((5, 3),)), 600,
    lambda fam: _power_instances(fam, _vd_graph), _eval_thm_5_3,
))
for _cls in ("chordal", "c5free-vd", "whiskered"):
    _register(CheckDef(
        f"cor-5.4-{_cls}", "reg(I(G)^q) = 2q + nu(G) - 1", FamilySpec(nmax=6, qmax=2), 600,
        (lambda c: lambda fam: _cor_instances(fam, c))(_cls), _eval_cor_5_4,
    ))
_register(CheckDef(
    "cor-5.4", "reg(I(G)^q) = 2q + nu(G) - 1 (chordal, C5-free vertex decomposable, whiskered)",
    FamilySpec(nmax=6, qmax=2), 900,
    lambda fam: _cor_instances(fam, "all"), _eval_cor_5_4,
))
_register(CheckDef(
    "conj-1.2", "reg(I(G)^q) <= 2q + reg(I(G)) - 2", FamilySpec(nmax=6, qmax=2, extra_q=((5, 3),)), 600,
    _power_instances, _eval_conj_1_2, label="evidence",
))
_register(CheckDef(
    "prop-4.7", "reg(I(H)^q) = 2q + zeta(H) - 1 for unions of cycles, one of length 0 or 1 mod 3",
    FamilySpec(qmax=2, cycles=((3,), (4,), (6,), (7,), (9,), (3, 3), (3, 4), (3, 5), (4, 5), (5, 6), (5, 7))),
    900, _prop_instances, _eval_prop_4_7,
))
_register(CheckDef(
    "lem-3.2", "N(x) = {y}, e_i = xy implies (I^(s+1) : e_1...e_s) = (I^s : prod_{j != i} e_j)",
    _LEMMA_FAMILY, 600, _multiset_instances, _eval_lem_3_2,
))
_register(CheckDef(
    "lem-3.3", "x in no e_i implies I(G' \\ x) = polarization of (I(G \\ x)^(s+1) : e_1...e_s)",
    _LEMMA_FAMILY, 600, _multiset_instances, _eval_lem_3_3,
))
_register(CheckDef(
    "lem-3.4", "{w, p_i} in E(G') implies {u, w} in E(G') or {v, w} in E(G')",
    _LEMMA_FAMILY, 900, _multiset_instances, _eval_lem_3_4,
))
_register(CheckDef(
    "lem-3.5", "G' \\ N_G'[y] is an induced subgraph of H', H = G \\ N_G[y]",
    _LEMMA_FAMILY, 600, _multiset_instances, _eval_lem_3_5,
))
_register(CheckDef(
    "lem-3.6", "H induced in G, e_i in E(H) implies H' induced in G'",
    _LEMMA_FAMILY, 900, _multiset_instances, _eval_lem_3_6,
))
_register(CheckDef(
    "lem-3.7", "u in X_1: G' \\ N_G'[u] induced in (G \\ N_G[u,x])'; u in X_2: G'_1 \\ N_G'_1[u] induced in (G \\ N_G[u,x])'",
    _LEMMA_FAMILY, 900, _multiset_instances, _eval_lem_3_7,
))
_register(CheckDef(
    "enum-5", "n = 5: 23 graphs, 20 vertex decomposable, 2 with an edge off S(G), 1 (the house) with an edge off P(G)",
    FamilySpec(nmin=5, nmax=5), 120,
    lambda fam: [Instance.of("E5", n=5, expected={
        "graphs": 23, "vertex_decomposable": 20, "edge_outside_S": 2, "edge_outside_P": 1, "house": True,
    })] if (fam.nmin, fam.nmax) == (5, 5) else [Instance.of("E%d" % n, n=n) for n in range(fam.nmin, fam.nmax + 1)],
    _eval_enum_5,
))
_register(CheckDef(
    "house-colon", "(I(G)^2 : t3 t4) = I(G), reg(I(G)) = 2, P(G) = {t2, t5}", FamilySpec(), 30,
    lambda fam: [Instance.of("house")], _eval_house_colon,
))
_register(CheckDef(
    "q-4.10", "some x with reg(I(G) : x) + 1 <= reg(I(G))", FamilySpec(nmax=6, connected=True), 600,
    _graph_instances, _eval_q_4_10, label="evidence",
))
_register(CheckDef(
    "froberg", "reg(I(G)) = 2 iff the complement of G is chordal", FamilySpec(nmax=6), 120,
    _graph_instances, _eval_froberg,
))
_register(CheckDef(
    "colon-routes", "reg of I(G') equals reg of the monomial colon (I^(s+1) : e_1...e_s)",
    FamilySpec(nmax=5, smax=2), 600, _multiset_instances, _eval_colon_routes,
))
_register(CheckDef(
    "oracle-colon", "I(G') = polarization of (I(G)^(s+1) : e_1...e_s)",
    FamilySpec(nmax=6, smax=2, sample_s=3, samples=300), 1800, _multiset_instances, _eval_oracle_colon,
))
_register(CheckDef(
    "banerjee", "reg(I^q) <= max(reg(I^(q-1)), max_M reg(I^q : M) + 2(q-1)) <= 2q + zeta(G) - 1",
    FamilySpec(nmax=5, qmax=2), 600,
    lambda fam: [i for i in _power_instances(fam) if i.p["q"] >= 2], _eval_banerjee,
))
_register(CheckDef(
    "obs-5.2", "G vertex decomposable implies S(G) is contained in P(G)", FamilySpec(nmax=6), 300,
    lambda fam: _graph_instances(fam, _vd_graph), _eval_obs_5_2,
))

ALIASES = {"question-4.10": "q-4.10", "4.10": "q-4.10"}


def check_ids() -> list[str]:
    return sorted(REGISTRY)


def get_check(check_id: str) -> CheckDef:
    cid = ALIASES.get(check_id, check_id)
    if cid not in REGISTRY:
        raise DomainError(f"unknown check id {check_id!r}; valid ids: {', '.join(check_ids())}")
    return REGISTRY[cid]


# -- running -----------------------------------------------------------------


def evaluate(check_id: str, inst: Instance, field="QQ") -> TheoremCheck:
    defn = get_check(check_id)
    try:
        return defn.evaluate(inst, parse_field(field))
    except GuardError as exc:
        return TheoremCheck(defn.id, inst, SKIPPED, None, None, {"reason": str(exc)})


def _evaluate_packed(args) -> TheoremCheck:
    return evaluate(*args)


def verify(check_id: str, instance, field="QQ", **params) -> TheoremCheck:
    """Run one check on one instance (a Graph, a graph spec string or an :class:`Instance`)."""
    if not isinstance(instance, Instance):
        instance = Instance.of(instance, **params)
    return evaluate(check_id, instance, field)


def iter_checks(check_id: str, family: FamilySpec | None = None, field="QQ", jobs: int = 1) -> Iterator[TheoremCheck]:
    defn = get_check(check_id)
    fam = family or defn.family
    insts = defn.instances(fam)
    if jobs > 1 and len(insts) > 1:
        import multiprocessing

        with multiprocessing.Pool(jobs) as pool:
            yield from pool.imap(_evaluate_packed, [(defn.id, i, field) for i in insts], chunksize=8)
    else:
        for inst in insts:
            yield evaluate(defn.id, inst, field)


def sweep(check_id: str, family: FamilySpec | None = None, field="QQ", jobs: int = 1) -> SweepReport:
    defn = get_check(check_id)
    fam = family or defn.family
    start = time.perf_counter()
    checked, violations, skipped = 0, [], []
    summary: dict = {}
    for chk in iter_checks(defn.id, fam, field, jobs):
        if chk.verdict == SKIPPED:
            skipped.append({**chk.instance.to_json(), "reason": chk.evidence.get("reason")})
            continue
        checked += 1
        if chk.verdict == VIOLATED:
            violations.append(chk.violation())
        if chk.evidence.get("lb_bht_holds") is False:
            summary.setdefault("lb_bht_violations", []).append(chk.instance.to_json())
        if defn.id == "enum-5":
            summary.update(chk.evidence)
        if defn.id == "q-4.10" and chk.verdict == HOLDS:
            summary["graphs_with_satisfying_vertex"] = summary.get("graphs_with_satisfying_vertex", 0) + 1
    elapsed = int((time.perf_counter() - start) * 1000)
    key = lambda v: (v["graph6"], repr(v["params"]))
    violations.sort(key=key)
    skipped.sort(key=key)
    return SweepReport(defn.id, fam, checked, violations, skipped, elapsed, defn.anchor, defn.budget_s, defn.label, summary)


def audited_sweeps(check_ids_: Iterable[str], field="QQ") -> tuple[list[SweepReport], dict]:
    """Run sweeps with every homology computation cross-checked over QQ and GF(32003)."""
    with field_audit() as audit:
        reports = [sweep(c, field=field) for c in check_ids_]
    return reports, audit.summary()
