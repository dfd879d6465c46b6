"""Simplicial complexes and exact reduced homology.

Ranks are computed over the rationals (fraction-free integer elimination)
or over a prime field.  A field is passed around as an int: 0 for QQ,
otherwise the prime.

Two entry points compute homology:

* :func:`reduced_homology_ranks` works from the face list of an explicit
  :class:`SimplicialComplex` by matrix elimination.
* :func:`sr_homology` works from the minimal non-faces of a Stanley-Reisner
  complex.  It splits Delta = (Delta \\ v) u (v * link v) and reads the
  answer off the Mayer-Vietoris sequence whenever that sequence forces it,
  falling back to elimination otherwise.  Results are memoised.
"""

from __future__ import annotations

import contextlib
from dataclasses import dataclass, field
from functools import lru_cache
from math import gcd
from typing import Hashable, Iterable, Iterator, Sequence

from .errors import DomainError, GuardError
from .graph import Graph, bits, popcount

QQ = 0
DEFAULT_PRIME = 32003
HOMOLOGY_GROUND_GUARD = 24

Betti = dict  # homological degree -> nonzero rank


def _is_prime(p: int) -> bool:
    return p >= 2 and all(p % d for d in range(2, int(p**0.5) + 1))


def parse_field(spec) -> int:
    """'QQ' -> 0; 'gfp' -> 32003; 'GF(p)' or an int p -> p (p prime)."""
    if isinstance(spec, int):
        p = spec
    else:
        s = str(spec).strip().lower()
        if s in ("qq", "q", "rational", "rationals"):
            return QQ
        if s in ("gfp", "gf", "fp"):
            return DEFAULT_PRIME
        if s.startswith("gf(") and s.endswith(")") and s[3:-1].isdigit():
            p = int(s[3:-1])
        elif s.isdigit():
            p = int(s)
        else:
            raise DomainError(f"unknown field {spec!r}; use QQ, gfp or GF(p)")
    if p != QQ and not _is_prime(p):
        raise DomainError(f"GF({p}) is not a prime field")
    return p


def field_name(p: int) -> str:
    return "QQ" if p == QQ else f"GF({p})"


# -- ranks -------------------------------------------------------------------


def rank_mod_p(rows: Iterable[dict[int, int]], p: int) -> int:
    pivots: dict[int, dict[int, int]] = {}
    for row in rows:
        r = {c: v % p for c, v in row.items() if v % p}
        while r:
            c = min(r)
            piv = pivots.get(c)
            if piv is None:
                inv = pow(r[c], p - 2, p)
                pivots[c] = {k: v * inv % p for k, v in r.items()}
                break
            a = r[c]
            for k, v in piv.items():
                nv = (r.get(k, 0) - a * v) % p
                if nv:
                    r[k] = nv
                else:
                    r.pop(k, None)
    return len(pivots)


def rank_rational(rows: Iterable[dict[int, int]]) -> int:
    """Rank over QQ by fraction-free elimination on integer rows.

    Reducing row r against a stored pivot row q with leading entries a, b
    replaces r by b*r - a*q, then divides out the content; integers stay
    exact and small for boundary matrices.
    """
    pivots: dict[int, dict[int, int]] = {}
    for row in rows:
        r = {c: v for c, v in row.items() if v}
        while r:
            c = min(r)
            piv = pivots.get(c)
            if piv is None:
                g = 0
                for v in r.values():
                    g = gcd(g, v)
                sign = -1 if r[c] < 0 else 1
                pivots[c] = {k: sign * v // g for k, v in r.items()}
                break
            a, b = r[c], piv[c]
            if b != 1:
                r = {k: b * v for k, v in r.items()}
            for k, v in piv.items():
                nv = r.get(k, 0) - a * v
                if nv:
                    r[k] = nv
                else:
                    r.pop(k, None)
            if r:
                g = 0
                for v in r.values():
                    g = gcd(g, v)
                    if g == 1:
                        break
                if g > 1:
                    r = {k: v // g for k, v in r.items()}
    return len(pivots)


def matrix_rank(rows: list[dict[int, int]], p: int) -> int:
    return rank_rational(rows) if p == QQ else rank_mod_p(rows, p)


# -- field audit -------------------------------------------------------------


@dataclass
class FieldAudit:
    """Cross-checks homology computations while active.

    Every complex handed to :meth:`check` is rebuilt from its faces,
    collapsed, and reduced by elimination over both QQ and GF(prime); the
    two answers and the engine's answer must all coincide.  Each distinct
    complex is checked once.
    """

    prime: int = DEFAULT_PRIME
    checked: int = 0
    mismatches: list = field(default_factory=list)
    _seen: set = field(default_factory=set, repr=False)

    def record(self, description, qq: Betti, fp: Betti, engine: Betti | None = None, p: int = QQ) -> None:
        self.checked += 1
        if qq != fp or (engine is not None and engine != (qq if p == QQ else fp)):
            self.mismatches.append(
                {"complex": description, "QQ": qq, field_name(self.prime): fp, "engine": engine}
            )

    def check(self, m: int, nonfaces: tuple[int, ...], engine: Betti, p: int = QQ) -> None:
        key = (m, nonfaces)
        if key in self._seen:
            return
        self._seen.add(key)
        core = collapse(_faces_from_nonfaces(m, nonfaces))
        self.record(("nonfaces", m, nonfaces), _betti_from_faces(core, QQ), _betti_from_faces(core, self.prime), engine, p)

    def summary(self) -> dict:
        return {"prime": self.prime, "checked": self.checked, "mismatches": list(self.mismatches)}


_audit: FieldAudit | None = None
_cache_clearers: list = []


def register_cache(clear) -> None:
    """Caches registered here are flushed whenever an audit starts."""
    _cache_clearers.append(clear)


@contextlib.contextmanager
def field_audit(prime: int = DEFAULT_PRIME) -> Iterator[FieldAudit]:
    """Audit every homology computation made inside the block.

    Memoised results are dropped on entry so that nothing escapes the audit.
    """
    global _audit
    previous = _audit
    _audit = FieldAudit(prime)
    sr_homology.cache_clear()
    for clear in _cache_clearers:
        clear()
    try:
        yield _audit
    finally:
        _audit = previous


def current_audit() -> FieldAudit | None:
    return _audit


def collapse(levels: list[list[int]]) -> list[list[int]]:
    """Remove free pairs (sigma, tau) until none is left.

    sigma is free when tau is its only coface; the empty face takes part, so
    the reduced chain complex changes only by a chain homotopy equivalence
    over the integers.  Input and output are faces grouped by size.
    """
    cofaces: dict[int, int] = {}
    for level in levels:
        for f in level:
            cofaces[f] = 0
    ground = 0
    for f in cofaces:
        ground |= f
    for t in cofaces:
        rest = t
        while rest:
            b = rest & -rest
            rest ^= b
            cofaces[t ^ b] += 1
    stack = [f for f, c in cofaces.items() if c == 1]
    while stack:
        s = stack.pop()
        if cofaces.get(s) != 1:
            continue
        rest = ground & ~s
        while rest:
            b = rest & -rest
            rest ^= b
            if s | b in cofaces:
                t = s | b
                break
        del cofaces[s]
        del cofaces[t]
        for face in (t, s):
            rest = face
            while rest:
                b = rest & -rest
                rest ^= b
                r = face ^ b
                c = cofaces.get(r)
                if c is not None:
                    cofaces[r] = c - 1
                    if c == 2:
                        stack.append(r)
    if not cofaces:
        return []
    out: list[list[int]] = [[] for _ in range(max(map(popcount, cofaces)) + 1)]
    for f in cofaces:
        out[popcount(f)].append(f)
    for level in out:
        level.sort()
    return out


def _betti_from_faces(faces_by_dim: list[list[int]], p: int) -> Betti:
    """Reduced homology ranks from faces grouped by size (index 0 holds the empty face)."""
    index = [{f: i for i, f in enumerate(level)} for level in faces_by_dim]
    ranks = [0] * (len(faces_by_dim) + 1)
    for size in range(1, len(faces_by_dim)):
        below = index[size - 1]
        rows = []
        for f in faces_by_dim[size]:
            row = {}
            sign = 1
            for v in bits(f):
                row[below[f & ~(1 << v)]] = sign
                sign = -sign
            rows.append(row)
        ranks[size] = matrix_rank(rows, p)
    betti = {}
    for size in range(len(faces_by_dim)):
        h = len(faces_by_dim[size]) - ranks[size] - ranks[size + 1]
        if h:
            betti[size - 1] = h
    return betti


def _audited_betti(faces_by_dim: list[list[int]], p: int, description) -> Betti:
    result = _betti_from_faces(faces_by_dim, p)
    if _audit is not None:
        other = _audit.prime if p == QQ else QQ
        other_result = _betti_from_faces(faces_by_dim, other)
        if p == QQ:
            _audit.record(description, result, other_result)
        else:
            _audit.record(description, other_result, result)
    return result


# -- explicit complexes ------------------------------------------------------


def _maximal(masks: Iterable[int]) -> list[int]:
    out: list[int] = []
    for m in sorted(set(masks), key=popcount, reverse=True):
        if not any(m & o == m for o in out):
            out.append(m)
    return sorted(out)


class SimplicialComplex:
    """A complex on a labelled ground set, stored by its facets.

    Ground elements that lie in no facet are allowed (they are not vertices).
    A complex with no facets is the void complex; ``[frozenset()]`` is {emptyset}.
    """

    def __init__(self, ground: Sequence[Hashable], facets: Iterable[Iterable[Hashable]]):
        self.ground = tuple(ground)
        self._pos = {x: i for i, x in enumerate(self.ground)}
        if len(self._pos) != len(self.ground):
            raise DomainError("ground set has repeated elements")
        masks = []
        for f in facets:
            m = 0
            for x in f:
                if x not in self._pos:
                    raise DomainError(f"{x!r} is not in the ground set")
                m |= 1 << self._pos[x]
            masks.append(m)
        self._facets = _maximal(masks)

    @classmethod
    def _from_masks(cls, ground: Sequence[Hashable], masks: Iterable[int]) -> SimplicialComplex:
        cx = cls(ground, [])
        cx._facets = _maximal(masks)
        return cx

    def _labels(self, mask: int) -> frozenset:
        return frozenset(self.ground[i] for i in bits(mask))

    def _mask(self, face: Iterable[Hashable]) -> int:
        m = 0
        for x in face:
            if x not in self._pos:
                raise DomainError(f"{x!r} is not in the ground set")
            m |= 1 << self._pos[x]
        return m

    @property
    def facets(self) -> list[frozenset]:
        return [self._labels(f) for f in self._facets]

    @property
    def dim(self) -> int:
        return max((popcount(f) for f in self._facets), default=0) - 1

    def is_void(self) -> bool:
        return not self._facets

    def vertices(self) -> frozenset:
        m = 0
        for f in self._facets:
            m |= f
        return self._labels(m)

    def contains(self, face: Iterable[Hashable]) -> bool:
        m = self._mask(face)
        return any(m & f == m for f in self._facets)

    def is_cone(self) -> bool:
        if not self._facets:
            return False
        common = self._facets[0]
        for f in self._facets[1:]:
            common &= f
        return common != 0

    def faces_by_dim(self) -> list[list[int]]:
        seen: set[int] = set()
        for f in self._facets:
            sub = f
            while True:
                seen.add(sub)
                if sub == 0:
                    break
                sub = (sub - 1) & f
        top = self.dim + 1
        out: list[list[int]] = [[] for _ in range(top + 1)]
        for s in seen:
            out[popcount(s)].append(s)
        for level in out:
            level.sort()
        return out

    def faces(self) -> list[frozenset]:
        return [self._labels(f) for level in self.faces_by_dim() for f in level]

    def link(self, face: Iterable[Hashable]) -> SimplicialComplex:
        m = self._mask(face)
        if not self.contains(face):
            raise DomainError("link of a set that is not a face")
        return SimplicialComplex._from_masks(self.ground, [f & ~m for f in self._facets if f & m == m])

    def restrict(self, subset: Iterable[Hashable]) -> SimplicialComplex:
        keep = [x for x in self.ground if x in set(subset)]
        w = self._mask(keep)
        pos = {self._pos[x]: i for i, x in enumerate(keep)}
        masks = []
        for f in self._facets:
            g = 0
            for i in bits(f & w):
                g |= 1 << pos[i]
            masks.append(g)
        return SimplicialComplex._from_masks(keep, masks)

    def deletion(self, v: Hashable) -> SimplicialComplex:
        return self.restrict([x for x in self.ground if x != v])

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, SimplicialComplex)
            and set(self.facets) == set(other.facets)
        )

    def __repr__(self) -> str:
        return f"SimplicialComplex(facets={[sorted(map(str, f)) for f in self.facets]})"


def simplex(ground: Sequence[Hashable]) -> SimplicialComplex:
    return SimplicialComplex(ground, [ground])


def independence_complex(g: Graph) -> SimplicialComplex:
    from .invariants import maximal_independent_sets

    return SimplicialComplex._from_masks(g.vertex_labels(), maximal_independent_sets(g.adj, g.vertex_mask))


def reduced_homology_ranks(cx: SimplicialComplex, field=QQ, guard_override: bool = False) -> dict[int, int]:
    """Ranks of reduced homology in every dimension -1 .. dim (zeros included)."""
    p = parse_field(field)
    if len(cx.ground) > HOMOLOGY_GROUND_GUARD and not guard_override:
        raise GuardError(f"ground set of {len(cx.ground)} exceeds guard {HOMOLOGY_GROUND_GUARD}")
    if cx.is_void():
        return {}
    dims = range(-1, cx.dim + 1)
    if cx.is_cone():
        return {d: 0 for d in dims}
    betti = _audited_betti(cx.faces_by_dim(), p, ("facets", tuple(cx._facets)))
    return {d: betti.get(d, 0) for d in dims}


# -- Stanley-Reisner complexes from minimal non-faces --------------------------


def _compact(ground: int, nonfaces: Iterable[int]) -> tuple[int, tuple[int, ...]]:
    pos = {v: i for i, v in enumerate(bits(ground))}
    out = []
    for g in nonfaces:
        c = 0
        for v in bits(g):
            c |= 1 << pos[v]
        out.append(c)
    return len(pos), tuple(sorted(out))


def _minimal_sets(sets: Iterable[int]) -> list[int]:
    out: list[int] = []
    for s in sorted(set(sets), key=popcount):
        if not any(o & s == o for o in out):
            out.append(s)
    return out


def _faces_from_nonfaces(m: int, nonfaces: Sequence[int]) -> list[list[int]]:
    by_top: list[list[int]] = [[] for _ in range(m)]
    for g in nonfaces:
        by_top[g.bit_length() - 1].append(g)
    levels: list[list[int]] = [[0]]
    frontier = [0]
    while frontier:
        nxt = []
        for f in frontier:
            start = f.bit_length()
            for v in range(start, m):
                h = f | (1 << v)
                if not any(g & h == g for g in by_top[v]):
                    nxt.append(h)
        if nxt:
            levels.append(sorted(nxt))
        frontier = nxt
    return levels


def _shift(b: Betti, k: int) -> Betti:
    return {d + k: r for d, r in b.items()}


@lru_cache(maxsize=500_000)
def sr_homology(m: int, nonfaces: tuple[int, ...], p: int = QQ) -> Betti:
    """Reduced homology of the complex on ground 0..m-1 with these minimal non-faces.

    ``nonfaces`` must be an antichain of non-empty masks, sorted.  Returns
    only the non-zero ranks.
    """
    singles = 0
    for g in nonfaces:
        if g & (g - 1) == 0:
            singles |= g
    if singles:
        ground = ((1 << m) - 1) & ~singles
        return sr_homology(*_compact(ground, [g for g in nonfaces if not g & singles]), p)
    if m == 0:
        return {-1: 1}
    covered = 0
    for g in nonfaces:
        covered |= g
    if covered != (1 << m) - 1:
        return {}

    counts = [0] * m
    for g in nonfaces:
        for v in bits(g):
            counts[v] += 1
    order = sorted(range(m), key=lambda v: (-counts[v], v))
    full = (1 << m) - 1
    for v in order:
        rest = full & ~(1 << v)
        deletion = sr_homology(*_compact(rest, [g for g in nonfaces if not g >> v & 1]), p)
        link = sr_homology(*_compact(rest, _minimal_sets(g & ~(1 << v) for g in nonfaces)), p)
        if not link:
            return deletion
        if not deletion:
            return _shift(link, 1)
        if not set(link) & set(deletion):
            out = dict(deletion)
            for d, r in link.items():
                out[d + 1] = out.get(d + 1, 0) + r
            return out
        break  # undecided for the most frequent vertex: eliminate directly
    return _audited_betti(_faces_from_nonfaces(m, nonfaces), p, ("nonfaces", m, nonfaces))


def sr_homology_direct(m: int, nonfaces: Sequence[int], p: int = QQ) -> Betti:
    """Same as :func:`sr_homology` but always by elimination (reference route)."""
    if m == 0:
        return {-1: 1}
    return _betti_from_faces(_faces_from_nonfaces(m, nonfaces), p)


def stanley_reisner_complex(m: int, nonfaces: Sequence[int], ground: Sequence[Hashable] | None = None) -> SimplicialComplex:
    levels = _faces_from_nonfaces(m, nonfaces)
    ground = tuple(ground) if ground is not None else tuple(range(m))
    return SimplicialComplex._from_masks(ground, [f for level in levels for f in level])
