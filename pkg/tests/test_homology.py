from __future__ import annotations

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from edgereg.errors import DomainError, GuardError
from edgereg.graph import complete, cycle, empty, path
from edgereg.homology import (
    DEFAULT_PRIME,
    QQ,
    FieldAudit,
    SimplicialComplex,
    _betti_from_faces,
    _faces_from_nonfaces,
    _minimal_sets,
    collapse,
    current_audit,
    field_audit,
    field_name,
    independence_complex,
    parse_field,
    rank_mod_p,
    rank_rational,
    reduced_homology_ranks,
    simplex,
    sr_homology,
    sr_homology_direct,
    stanley_reisner_complex,
)

# six-vertex real projective plane: torsion in H_1 over the integers
RP2 = SimplicialComplex(range(1, 7), [
    (1, 2, 3), (1, 3, 4), (1, 4, 5), (1, 5, 6), (1, 6, 2),
    (2, 3, 5), (3, 4, 6), (4, 5, 2), (5, 6, 3), (6, 2, 4),
])


@st.composite
def nonface_sets(draw, max_m: int = 7):
    m = draw(st.integers(1, max_m))
    full = (1 << m) - 1
    raw = draw(st.lists(st.integers(1, full), max_size=8))
    return m, tuple(sorted(_minimal_sets(raw)))


def to_rows(matrix) -> list[dict[int, int]]:
    return [{c: v for c, v in enumerate(row) if v} for row in matrix]


class TestRanks:
    @settings(max_examples=80)
    @given(st.lists(st.lists(st.integers(-3, 3), min_size=5, max_size=5), min_size=1, max_size=6))
    def test_rational_rank_against_sympy(self, matrix):
        assert rank_rational(to_rows(matrix)) == sympy.Matrix(matrix).rank()

    def test_rank_drops_mod_p(self):
        rows = to_rows([[7, 0], [0, 1]])
        assert rank_rational(rows) == 2
        assert rank_mod_p(rows, 7) == 1

    def test_field_parsing(self):
        assert parse_field("QQ") == parse_field("qq") == QQ
        assert parse_field("gfp") == DEFAULT_PRIME
        assert parse_field("GF(7)") == 7
        assert field_name(QQ) == "QQ" and field_name(7) == "GF(7)"
        with pytest.raises(DomainError):
            parse_field("GF(8)")
        with pytest.raises(DomainError):
            parse_field("reals")


class TestComplexes:
    def test_independence_complexes(self):
        assert set(independence_complex(complete(2)).facets) == {frozenset({0}), frozenset({1})}
        d5 = independence_complex(cycle(5))
        assert d5.dim == 1 and len(d5.facets) == 5
        assert independence_complex(empty(4)) == simplex(range(4))

    def test_link_and_restriction(self):
        s = simplex("abcd")
        assert s.link("a") == simplex("bcd")
        d5 = independence_complex(cycle(5))
        assert d5.link([]) == d5
        p = d5.restrict([0, 1, 2, 3])
        assert set(p.facets) == {frozenset({0, 2}), frozenset({0, 3}), frozenset({1, 3})}
        assert d5.deletion(4) == p
        with pytest.raises(DomainError):
            d5.link([0, 1])

    def test_ground_errors(self):
        with pytest.raises(DomainError):
            SimplicialComplex("aa", [])
        with pytest.raises(DomainError):
            SimplicialComplex("ab", ["c"])

    def test_void_and_empty(self):
        void = SimplicialComplex("ab", [])
        assert void.is_void() and reduced_homology_ranks(void) == {}
        only_empty = SimplicialComplex("ab", [()])
        assert reduced_homology_ranks(only_empty) == {-1: 1}


class TestHomology:
    def test_hollow_triangle(self):
        cx = SimplicialComplex("abc", ["ab", "bc", "ac"])
        assert reduced_homology_ranks(cx) == {-1: 0, 0: 0, 1: 1}

    def test_full_simplex(self):
        assert set(reduced_homology_ranks(simplex(range(5))).values()) == {0}

    def test_pentagon(self):
        assert reduced_homology_ranks(independence_complex(cycle(5))) == {-1: 0, 0: 0, 1: 1}

    def test_two_points(self):
        assert reduced_homology_ranks(independence_complex(complete(2))) == {-1: 0, 0: 1}

    def test_projective_plane_depends_on_field(self):
        assert set(reduced_homology_ranks(RP2, "QQ").values()) == {0}
        assert reduced_homology_ranks(RP2, 2) == {-1: 0, 0: 0, 1: 1, 2: 1}
        assert set(reduced_homology_ranks(RP2, "gfp").values()) == {0}

    def test_guard(self):
        with pytest.raises(GuardError):
            reduced_homology_ranks(simplex(range(30)))

    @settings(max_examples=150)
    @given(nonface_sets())
    def test_recursive_engine_matches_elimination(self, data):
        m, nonfaces = data
        for p in (QQ, DEFAULT_PRIME, 2):
            assert sr_homology(m, nonfaces, p) == sr_homology_direct(m, nonfaces, p)

    @settings(max_examples=150)
    @given(nonface_sets())
    def test_collapse_preserves_homology(self, data):
        m, nonfaces = data
        faces = _faces_from_nonfaces(m, nonfaces)
        assert _betti_from_faces(collapse(faces), QQ) == _betti_from_faces(faces, QQ)

    @settings(max_examples=150)
    @given(nonface_sets())
    def test_euler_characteristic(self, data):
        m, nonfaces = data
        faces = _faces_from_nonfaces(m, nonfaces)
        chi = sum((-1) ** (size - 1) * len(level) for size, level in enumerate(faces))
        betti = sr_homology(m, nonfaces)
        assert chi == sum((-1) ** d * r for d, r in betti.items())

    def test_stanley_reisner_of_path(self):
        # nonfaces {0,1} and {1,2}: the complex is the edge {0,2} plus the point 1
        cx = stanley_reisner_complex(3, (0b011, 0b110))
        assert set(cx.facets) == {frozenset({0, 2}), frozenset({1})}
        assert cx == independence_complex(path(3))


class TestFieldAudit:
    def test_records_agreement(self):
        with field_audit() as audit:
            assert current_audit() is audit
            reduced_homology_ranks(independence_complex(cycle(5)))
        assert current_audit() is None
        assert audit.checked == 1 and not audit.mismatches

    def test_flags_torsion(self):
        audit = FieldAudit(prime=2)
        rp2_nonfaces = []
        verts = RP2.ground
        for a in range(6):
            for b in range(a + 1, 6):
                for c in range(b + 1, 6):
                    if not RP2.contains([verts[a], verts[b], verts[c]]):
                        rp2_nonfaces.append((1 << a) | (1 << b) | (1 << c))
        nonfaces = tuple(sorted(_minimal_sets(rp2_nonfaces)))
        engine = sr_homology(6, nonfaces, QQ)
        audit.check(6, nonfaces, engine, QQ)
        assert audit.checked == 1 and len(audit.mismatches) == 1
        assert audit.summary()["prime"] == 2

    def test_each_complex_once(self):
        audit = FieldAudit()
        audit.check(2, (0b11,), {0: 1})
        audit.check(2, (0b11,), {0: 1})
        assert audit.checked == 1 and not audit.mismatches
