"""Tests for finite ordered complexes and their calculus."""

from __future__ import annotations

from itertools import combinations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from polyramsey.complex import (
    EMPTY,
    FiniteOrderedComplex,
    approx,
    bounded_full,
    canonicalize,
    close_downward,
    enumerate_class,
    fin_down_set,
    format_text,
    full_simplex,
    initial_segment,
    leq,
    leq_fin,
    parse_text,
    pure_set,
    restrict,
)
from polyramsey.config import PolyramseySettings
from polyramsey.exceptions import InvalidInputError, ResourceLimitError
from polyramsey.oracles import PureSetOracle, TruncationFileOracle


@st.composite
def complexes(draw: st.DrawFn) -> FiniteOrderedComplex:
    vertices = sorted(
        draw(st.sets(st.integers(0, 12), min_size=1, max_size=6))
    )
    facets = draw(
        st.lists(
            st.sets(st.sampled_from(vertices), min_size=1, max_size=4),
            max_size=5,
        )
    )
    return close_downward(facets, vertices)


class TestFiniteOrderedComplex:
    def test_valid_complex_keeps_sorted_facets(self) -> None:
        c = FiniteOrderedComplex(
            (0, 1, 2), (frozenset({1, 2}), frozenset({0, 1}))
        )
        assert c.facets == (frozenset({0, 1}), frozenset({1, 2}))

    def test_vertices_must_increase(self) -> None:
        with pytest.raises(InvalidInputError):
            FiniteOrderedComplex((1, 0), (frozenset({0}), frozenset({1})))

    def test_facets_must_cover(self) -> None:
        with pytest.raises(InvalidInputError):
            FiniteOrderedComplex((0, 1), (frozenset({0}),))

    def test_facets_must_be_antichain(self) -> None:
        with pytest.raises(InvalidInputError):
            FiniteOrderedComplex(
                (0, 1), (frozenset({0}), frozenset({0, 1}))
            )

    def test_negative_labels_rejected(self) -> None:
        with pytest.raises(InvalidInputError):
            close_downward([], [-1, 0])

    def test_faces_sorted_by_size_then_colex(self, path3) -> None:
        faces = [sorted(f) for f in path3.faces(include_empty=True)]
        assert faces == [[], [0], [1], [2], [0, 1], [1, 2]]

    def test_has_face_includes_empty(self, path3) -> None:
        assert path3.has_face([])
        assert path3.has_face([1, 2])
        assert not path3.has_face([0, 2])
        assert not path3.has_face([7])


class TestCloseDownward:
    def test_simplex_closure(self) -> None:
        """One listed simplex gives all seven nonempty subsets."""
        c = close_downward([[0, 1, 2]], [0, 1, 2])
        assert c.facets == (frozenset({0, 1, 2}),)
        assert c.face_count == 7

    def test_singletons_forced(self) -> None:
        c = close_downward([], [0, 3])
        assert c.facets == (frozenset({0}), frozenset({3}))

    def test_three_edges_no_triangle(self) -> None:
        c = close_downward([[0, 1], [1, 2], [0, 2]], [0, 1, 2])
        assert len(c.facets) == 3
        assert not c.has_face([0, 1, 2])

    def test_label_outside_rejected(self) -> None:
        with pytest.raises(InvalidInputError):
            close_downward([[0, 5]], [0, 1])


class TestRestrictApprox:
    def test_trace_of_simplex(self) -> None:
        c = restrict(full_simplex([0, 1, 2]), [0, 2])
        assert c.facets == (frozenset({0, 2}),)

    def test_trace_of_disjoint_edges(self) -> None:
        c = close_downward([[0, 1], [2, 3]], [0, 1, 2, 3])
        assert restrict(c, [1, 2]) == pure_set([1, 2])

    def test_restrict_outside_rejected(self, path3) -> None:
        with pytest.raises(InvalidInputError):
            restrict(path3, [0, 9])

    def test_approx_zero_is_empty(self, path3) -> None:
        assert approx(path3, 0) == EMPTY

    def test_approx_of_oracles(self) -> None:
        evens = PureSetOracle(start=0, step=2)
        assert approx(evens, 2) == pure_set([0, 2])

    def test_approx_beyond_size_rejected(self, path3) -> None:
        with pytest.raises(InvalidInputError):
            approx(path3, 4)

    @given(complexes(), st.data())
    def test_trace_equals_faces_inside(self, c, data) -> None:
        y = frozenset(data.draw(st.sets(st.sampled_from(c.vertices))))
        faces = c.faces()
        traced = {f & y for f in faces} - {frozenset()}
        assert traced == {f for f in faces if f <= y}
        assert set(restrict(c, y).faces()) == traced

    @pytest.mark.parametrize("n", [1, 2, 3, 4])
    def test_trace_exhaustive(self, n) -> None:
        for c in enumerate_class(n):
            for size in range(n + 1):
                for y in map(frozenset, combinations(range(n), size)):
                    inside = {f for f in c.faces() if f <= y}
                    assert set(restrict(c, y).faces()) == inside

    @given(complexes())
    def test_restrict_to_all_vertices_is_identity(self, c) -> None:
        assert restrict(c, c.vertices) == c

    @given(complexes(), st.data())
    def test_approximations_are_coherent(self, c, data) -> None:
        m = data.draw(st.integers(0, len(c)))
        n = data.draw(st.integers(0, m))
        assert approx(approx(c, m), n) == approx(c, n)
        assert initial_segment(approx(c, n), c)


class TestOrders:
    def test_restriction_is_below(self, path3) -> None:
        assert leq(restrict(path3, [0, 2]), path3)

    def test_edge_not_below_pure_pair(self, edge) -> None:
        assert not leq(edge, pure_set([0, 1]))

    def test_pure_pair_below_edge(self) -> None:
        assert leq(pure_set([0, 2]), full_simplex([0, 2]))

    def test_leq_against_oracle(self) -> None:
        assert leq(pure_set([2, 5]), PureSetOracle())
        assert not leq(full_simplex([2, 5]), PureSetOracle())

    def test_short_file_oracle_on_the_left(self) -> None:
        known = TruncationFileOracle((pure_set(range(3)),))
        assert leq(known, PureSetOracle())
        assert not leq(known, PureSetOracle(step=2))

    def test_short_file_oracle_on_the_right(self) -> None:
        known = TruncationFileOracle((pure_set(range(3)),))
        assert leq(pure_set([0, 2]), known)
        assert not leq(pure_set([0, 5]), known)

    def test_leq_fin_reflexive(self, path3) -> None:
        assert leq_fin(path3, path3)

    def test_leq_fin_needs_same_maximum(self) -> None:
        assert not leq_fin(pure_set([0, 5]), pure_set([0, 3]))

    def test_leq_fin_inside_truncation(self) -> None:
        assert leq_fin(pure_set([2, 5]), approx(PureSetOracle(), 6))

    def test_leq_fin_empty_rejected(self) -> None:
        with pytest.raises(InvalidInputError):
            leq_fin(EMPTY, pure_set([0]))

    def test_initial_segment(self) -> None:
        assert not initial_segment(pure_set([1]), pure_set([0, 1]))
        assert initial_segment(pure_set([0, 1]), full_simplex([0, 1, 2]))

    def test_fin_down_set_of_edge(self, edge) -> None:
        """{1}, the pure pair and the edge itself."""
        found = fin_down_set(edge)
        assert len(found) == 3
        assert all(leq_fin(b, edge) for b in found)


class TestCanonicalize:
    def test_relabel_onto_prefix(self) -> None:
        c = close_downward([[3, 7]], [3, 7])
        assert canonicalize(c) == full_simplex([0, 1])

    def test_empty(self) -> None:
        assert canonicalize(EMPTY) == EMPTY

    @given(complexes())
    def test_idempotent(self, c) -> None:
        once = canonicalize(c)
        assert canonicalize(once) == once
        assert once.vertices == tuple(range(len(c)))
        assert len(once.facets) == len(c.facets)


def naive_class(n: int, k: int | None = None) -> set[frozenset[frozenset[int]]]:
    """Downward-closed families of faces with two or more vertices."""
    top = n if k is None else min(k, n)
    candidates = [
        frozenset(u)
        for size in range(2, top + 1)
        for u in combinations(range(n), size)
    ]
    found = set()
    for bits in range(1 << len(candidates)):
        family = {c for i, c in enumerate(candidates) if bits >> i & 1}
        if all(
            frozenset(sub) in family
            for face in family
            for sub in combinations(face, len(face) - 1)
            if len(sub) >= 2
        ):
            found.add(frozenset(family))
    return found


class TestEnumerateClass:
    @pytest.mark.parametrize(("n", "count"), [(0, 1), (1, 1), (2, 2), (3, 9)])
    def test_unbounded_counts(self, n, count) -> None:
        assert len(enumerate_class(n)) == count

    @pytest.mark.parametrize(
        ("n", "count"), [(1, 1), (2, 2), (3, 8), (4, 64)]
    )
    def test_graph_counts(self, n, count) -> None:
        assert len(enumerate_class(n, 2)) == count

    @pytest.mark.parametrize(
        ("n", "k"),
        [(0, None), (2, None), (3, None), (4, None), (4, 2), (4, 3), (5, 2)],
    )
    def test_matches_brute_force(self, n, k) -> None:
        found = {
            frozenset(f for f in c.faces() if len(f) >= 2)
            for c in enumerate_class(n, k)
        }
        assert found == naive_class(n, k)
        assert len(enumerate_class(n, k)) == len(found)

    def test_k1_is_the_pure_set(self) -> None:
        assert enumerate_class(4, 1) == [pure_set(range(4))]

    def test_members_are_canonical_and_distinct(self) -> None:
        found = enumerate_class(3)
        assert len(set(found)) == len(found)
        assert all(canonicalize(c) == c for c in found)

    def test_guard(self) -> None:
        settings = PolyramseySettings(enumerate_max_unbounded=3)
        with pytest.raises(ResourceLimitError):
            enumerate_class(4, settings=settings)

    def test_bounded_members(self) -> None:
        assert bounded_full(range(3), 2) in enumerate_class(3, 2)


class TestTextFormat:
    def test_format(self, path3) -> None:
        assert format_text(path3) == "V: 0 1 2 | F: 0,1 1,2"

    def test_format_empty(self) -> None:
        assert format_text(EMPTY) == "V: | F:"

    def test_parse(self, path3) -> None:
        assert parse_text("V: 0 1 2 | F: 0,1 1,2") == path3
        assert parse_text("V: 4 6") == pure_set([4, 6])

    def test_parse_rejects_garbage(self) -> None:
        with pytest.raises(InvalidInputError):
            parse_text("0 1 2")
        with pytest.raises(InvalidInputError):
            parse_text("V: 0 x")
