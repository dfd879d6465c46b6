"""Monomial ideals as antichains of exponent vectors.

A monomial is a tuple of non-negative exponents aligned with the ideal's
variable names.  A :class:`MonomialIdeal` stores its minimal generators,
sorted by (degree, exponent tuple), so equal ideals compare equal.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import DomainError, GraphParseError
from .graph import Graph

Monomial = tuple[int, ...]


def degree(m: Monomial) -> int:
    return sum(m)


def divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def gcd(a: Monomial, b: Monomial) -> Monomial:
    return tuple(min(x, y) for x, y in zip(a, b))


def lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


def quotient(a: Monomial, b: Monomial) -> Monomial:
    """a / gcd(a, b)."""
    return tuple(x - y if x > y else 0 for x, y in zip(a, b))


def is_squarefree(m: Monomial) -> bool:
    return all(e <= 1 for e in m)


def _sort_key(m: Monomial):
    return (sum(m), m)


def minimalize(gens: Iterable[Monomial]) -> tuple[Monomial, ...]:
    """Reduce to the divisibility antichain, sorted by (degree, exponents)."""
    kept: list[Monomial] = []
    for m in sorted(set(gens), key=_sort_key):
        if not any(divides(k, m) for k in kept):
            kept.append(m)
    return tuple(kept)


@dataclass(frozen=True)
class MonomialIdeal:
    vars: tuple[str, ...]
    gens: tuple[Monomial, ...]

    @classmethod
    def from_generators(cls, variables: Sequence[str], gens: Iterable[Sequence[int]]) -> MonomialIdeal:
        variables = tuple(variables)
        if len(set(variables)) != len(variables):
            raise DomainError("variable names must be unique")
        checked = []
        for g in gens:
            g = tuple(int(e) for e in g)
            if len(g) != len(variables) or any(e < 0 for e in g):
                raise DomainError(f"bad exponent vector {g} for {len(variables)} variables")
            checked.append(g)
        return cls(variables, minimalize(checked))

    @property
    def nvars(self) -> int:
        return len(self.vars)

    def is_zero(self) -> bool:
        return not self.gens

    def is_unit(self) -> bool:
        return any(degree(g) == 0 for g in self.gens)

    def is_squarefree(self) -> bool:
        return all(is_squarefree(g) for g in self.gens)

    def contains(self, m: Monomial) -> bool:
        return any(divides(g, m) for g in self.gens)

    def support(self) -> list[int]:
        return [i for i in range(self.nvars) if any(g[i] for g in self.gens)]

    def format_monomial(self, m: Monomial) -> str:
        parts = []
        for name, e in zip(self.vars, m):
            if e == 1:
                parts.append(name)
            elif e > 1:
                parts.append(f"{name}^{e}")
        return "*".join(parts) or "1"

    def __str__(self) -> str:
        return "(" + ", ".join(self.format_monomial(g) for g in self.gens) + ")"

    def to_json(self) -> dict:
        return {"vars": list(self.vars), "gens": [list(g) for g in self.gens]}

    @classmethod
    def from_json(cls, data: str | dict) -> MonomialIdeal:
        if isinstance(data, str):
            try:
                data = json.loads(data)
            except json.JSONDecodeError as exc:
                raise GraphParseError(f"invalid ideal JSON: {exc.msg}", exc.pos) from None
        return cls.from_generators(data["vars"], data["gens"])


def variable_names(n: int) -> tuple[str, ...]:
    return tuple(f"x{i}" for i in range(n))


def edge_monomial(n: int, edge: Sequence[int]) -> Monomial:
    u, v = edge
    m = [0] * n
    m[u] += 1
    m[v] += 1
    return tuple(m)


def edge_product(n: int, edges: Iterable[Sequence[int]]) -> Monomial:
    m = [0] * n
    for u, v in edges:
        m[u] += 1
        m[v] += 1
    return tuple(m)


def edge_ideal(g: Graph, names: Sequence[str] | None = None) -> MonomialIdeal:
    names = tuple(names) if names is not None else variable_names(g.n)
    return MonomialIdeal(names, minimalize(edge_monomial(g.n, e) for e in g.edges()))


def unit_ideal(variables: Sequence[str]) -> MonomialIdeal:
    return MonomialIdeal(tuple(variables), ((0,) * len(variables),))


def product(a: MonomialIdeal, b: MonomialIdeal) -> MonomialIdeal:
    if a.vars != b.vars:
        raise DomainError("ideals live in different rings")
    return MonomialIdeal(a.vars, minimalize(mul(x, y) for x in a.gens for y in b.gens))


def power(ideal: MonomialIdeal, q: int) -> MonomialIdeal:
    """Minimal generators of I^q; q = 0 gives the unit ideal."""
    if q < 0:
        raise DomainError("power needs q >= 0")
    if q == 0:
        return unit_ideal(ideal.vars)
    result = ideal
    for _ in range(q - 1):
        result = product(result, ideal)
    return result


def naive_power(ideal: MonomialIdeal, q: int) -> MonomialIdeal:
    """Expand every q-fold product before reducing (reference for tiny cases)."""
    from itertools import product as cartesian

    if q == 0:
        return unit_ideal(ideal.vars)
    prods = []
    for combo in cartesian(ideal.gens, repeat=q):
        m = (0,) * ideal.nvars
        for g in combo:
            m = mul(m, g)
        prods.append(m)
    return MonomialIdeal(ideal.vars, minimalize(prods))


def colon(ideal: MonomialIdeal, m: Monomial) -> MonomialIdeal:
    """(I : m), generated by g / gcd(g, m)."""
    if len(m) != ideal.nvars:
        raise DomainError("monomial and ideal have different numbers of variables")
    return MonomialIdeal(ideal.vars, minimalize(quotient(g, m) for g in ideal.gens))


def add_variables(ideal: MonomialIdeal, indices: Iterable[int]) -> MonomialIdeal:
    """(I, x_i : i in indices)."""
    extra = []
    for i in indices:
        e = [0] * ideal.nvars
        e[i] = 1
        extra.append(tuple(e))
    return MonomialIdeal(ideal.vars, minimalize(list(ideal.gens) + extra))


# -- polarization ------------------------------------------------------------


def shadow_name(base: str, level: int) -> str:
    return base if level == 1 else f"{base}^({level})"


def polarize(ideal: MonomialIdeal) -> tuple[MonomialIdeal, list[tuple[int, int]]]:
    """Squarefree polarization.

    A factor x^e becomes x^(1) x^(2) ... x^(e); level 1 keeps the base name.
    New variables are ordered base-major, level-minor and only the levels up
    to each variable's largest exponent appear.  Returns the ideal and the
    correspondence ``[(base index, level), ...]`` for its variables.
    """
    top = [max((g[i] for g in ideal.gens), default=0) for i in range(ideal.nvars)]
    corr = []
    for i, t in enumerate(top):
        for level in range(1, max(t, 1) + 1):
            corr.append((i, level))
    pos = {c: k for k, c in enumerate(corr)}
    names = tuple(shadow_name(ideal.vars[i], level) for i, level in corr)
    gens = []
    for g in ideal.gens:
        m = [0] * len(corr)
        for i, e in enumerate(g):
            for level in range(1, e + 1):
                m[pos[(i, level)]] = 1
        gens.append(tuple(m))
    return MonomialIdeal(names, minimalize(gens)), corr


def depolarize(ideal: MonomialIdeal, corr: Sequence[tuple[int, int]], base_vars: Sequence[str]) -> MonomialIdeal:
    """Inverse of :func:`polarize`: a shadow at level l counts as one factor of its base."""
    gens = []
    for g in ideal.gens:
        m = [0] * len(base_vars)
        for k, e in enumerate(g):
            if e:
                m[corr[k][0]] += e
        gens.append(tuple(m))
    return MonomialIdeal(tuple(base_vars), minimalize(gens))


def graph_of_quadratic_ideal(ideal: MonomialIdeal) -> Graph:
    """Graph on the support variables with one edge per generator.

    Every minimal generator must be squarefree of degree two.
    """
    for g in ideal.gens:
        if degree(g) != 2 or not is_squarefree(g):
            raise DomainError(f"generator {ideal.format_monomial(g)} is not a squarefree quadric")
    support = ideal.support()
    pos = {v: i for i, v in enumerate(support)}
    edges = [tuple(pos[i] for i, e in enumerate(g) if e) for g in ideal.gens]
    return Graph.from_edges(len(support), edges, labels=tuple(ideal.vars[i] for i in support))
