"""Tests for the Ramsey space: pigeonhole, approximations, finite checks."""

from __future__ import annotations

from itertools import combinations, product

import numpy as np
import pytest

from polyramsey.complex import approx, full_simplex, pure_set, restrict
from polyramsey.exceptions import InvalidInputError, NoCandidatesError
from polyramsey.oracles import (
    BoundedFullOracle,
    FullSimplexOracle,
    PureSetOracle,
    RandomStreamOracle,
    TruncationFileOracle,
)
from polyramsey.space import (
    Scope,
    enumerate_space_approx,
    neighborhood_member,
    one_vertex_extensions,
    pigeonhole_step,
    space_ramsey_check,
    space_ramsey_search_min,
)


class TestPigeonholeStep:
    def test_constant_coloring(self) -> None:
        result = pigeonhole_step(
            pure_set([0]), PureSetOracle(), lambda ext: 1, horizon=10
        )
        assert result.color == 1
        assert result.truncation == pure_set(range(10))

    def test_parity_keeps_the_larger_class(self) -> None:
        result = pigeonhole_step(
            pure_set([0]),
            PureSetOracle(),
            lambda ext: ext.max_vertex % 2,
            horizon=50,
        )
        assert result.depth == 1
        assert result.candidates == 49
        assert result.color == 1
        rest = result.truncation.vertices[1:]
        assert rest == tuple(range(1, 50, 2))

    def test_ties_go_to_color_zero(self) -> None:
        result = pigeonhole_step(
            pure_set([0]),
            PureSetOracle(),
            lambda ext: ext.max_vertex % 2,
            horizon=5,
        )
        assert result.color == 0
        assert result.truncation.vertices == (0, 2, 4)

    def test_extensions_are_monochromatic(self, edge) -> None:
        marked = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47}

        def coloring(ext):
            return int(ext.max_vertex in marked)

        result = pigeonhole_step(edge, FullSimplexOracle(), coloring)
        assert result.depth == 2
        extensions = one_vertex_extensions(edge, result.truncation)
        assert extensions
        assert {coloring(e) for e in extensions} == {result.color}
        for ext in extensions:
            assert ext == restrict(result.truncation, ext.vertices)
            assert ext.has_face(ext.vertices)

    @pytest.mark.parametrize("seed", range(100))
    def test_random_instances(self, seed) -> None:
        rng = np.random.default_rng(seed)
        big = (
            PureSetOracle(),
            PureSetOracle(step=2),
            FullSimplexOracle(),
            BoundedFullOracle(2),
            RandomStreamOracle(seed=seed, p=0.4, k=2),
        )[seed % 5]
        a = big.truncate(int(rng.integers(1, 5)))
        table = rng.integers(0, 2, size=200)

        def coloring(ext):
            return int(table[ext.max_vertex] + seed * ext.face_count) % 2

        result = pigeonhole_step(a, big, coloring, horizon=50)
        assert approx(result.truncation, len(a)) == a
        extensions = one_vertex_extensions(a, result.truncation)
        assert 2 * len(extensions) >= result.candidates
        assert {coloring(e) for e in extensions} == {result.color}

    def test_no_candidates(self) -> None:
        with pytest.raises(NoCandidatesError):
            pigeonhole_step(pure_set([0, 1]), pure_set([0, 1]), lambda e: 0)

    def test_zero_horizon_has_no_candidates(self) -> None:
        with pytest.raises(NoCandidatesError):
            pigeonhole_step(
                pure_set([0]), PureSetOracle(), lambda e: 0, horizon=0
            )

    def test_a_must_be_an_approximation(self, edge) -> None:
        with pytest.raises(InvalidInputError):
            pigeonhole_step(edge, PureSetOracle(), lambda e: 0)

    def test_colors_are_binary(self) -> None:
        with pytest.raises(InvalidInputError):
            pigeonhole_step(
                pure_set([0]), PureSetOracle(), lambda e: 2, horizon=5
            )


class TestEnumerateSpaceApprox:
    def test_pure_pairs_ending_at_two(self) -> None:
        found = enumerate_space_approx(PureSetOracle(), 3, 2)
        assert found == [pure_set([0, 2]), pure_set([1, 2])]

    def test_forced_when_k_equals_m(self) -> None:
        found = enumerate_space_approx(PureSetOracle(), 4, 4)
        assert found == [pure_set(range(4))]

    def test_simplex_pairs(self) -> None:
        found = enumerate_space_approx(FullSimplexOracle(), 2, 2)
        assert found == [pure_set([0, 1]), full_simplex([0, 1])]

    def test_bad_lengths(self) -> None:
        with pytest.raises(InvalidInputError):
            enumerate_space_approx(PureSetOracle(), 2, 3)


def least_depth_by_brute_force(k: int, n: int, exact: bool) -> int:
    """Two-colorings of k-sets inside a pure set, tried one by one."""
    m = n
    while True:
        colored = [
            u for u in combinations(range(m), k) if not exact or u[-1] == m - 1
        ]
        targets = [
            t for t in combinations(range(m), n) if not exact or t[-1] == m - 1
        ]
        index = {u: i for i, u in enumerate(colored)}
        if all(
            any(
                len(
                    {
                        coloring[index[u]]
                        for u in combinations(t, k)
                        if u in index
                    }
                )
                <= 1
                for t in targets
            )
            for coloring in product(range(2), repeat=len(colored))
        ):
            return m
        m += 1


class TestSpaceRamsey:
    @pytest.mark.parametrize("m", [2, 3, 4])
    def test_k_equals_n_holds(self, m) -> None:
        result = space_ramsey_check(PureSetOracle(), 2, 2, 2, m)
        assert result.holds

    def test_exact_scope_fails_with_counterexample(self) -> None:
        result = space_ramsey_check(PureSetOracle(), 2, 3, 2, 3)
        assert not result.holds
        assert result.counterexample is not None
        assert len(result.counterexample) == len(result.colored)

    @pytest.mark.parametrize(
        ("oracle", "k", "n", "scope", "expected"),
        [
            (PureSetOracle(), 1, 2, Scope.EXACT, 2),
            (PureSetOracle(), 1, 2, Scope.CUMULATIVE, 3),
            (FullSimplexOracle(), 1, 2, Scope.EXACT, 2),
            (FullSimplexOracle(), 1, 2, Scope.CUMULATIVE, 3),
            (PureSetOracle(), 2, 3, Scope.EXACT, 4),
            (PureSetOracle(), 2, 3, Scope.CUMULATIVE, 6),
        ],
    )
    def test_search_min(self, oracle, k, n, scope, expected) -> None:
        result = space_ramsey_search_min(oracle, k, n, 2, 7, scope=scope)
        assert result.value == expected

    @pytest.mark.parametrize(("k", "n"), [(1, 2), (2, 3)])
    @pytest.mark.parametrize("scope", list(Scope))
    def test_search_min_against_brute_force(self, k, n, scope) -> None:
        expected = least_depth_by_brute_force(k, n, scope is Scope.EXACT)
        result = space_ramsey_search_min(
            PureSetOracle(), k, n, 2, 7, scope=scope
        )
        assert result.value == expected

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_search_min_k_equals_n(self, n) -> None:
        result = space_ramsey_search_min(PureSetOracle(), n, n, 2, 5)
        assert result.value == n

    def test_not_found(self) -> None:
        result = space_ramsey_search_min(
            PureSetOracle(), 2, 3, 2, 5, scope=Scope.CUMULATIVE
        )
        assert not result.found

    def test_bad_parameters(self) -> None:
        with pytest.raises(InvalidInputError):
            space_ramsey_check(PureSetOracle(), 3, 2, 2, 4)


class TestNeighborhood:
    def test_own_approximation(self) -> None:
        oracle = FullSimplexOracle()
        assert neighborhood_member(oracle, full_simplex(range(3)), oracle)

    def test_foreign_vertex(self) -> None:
        evens = PureSetOracle(step=2)
        assert not neighborhood_member(evens, pure_set([0, 1]), evens)

    def test_evens_below_naturals(self) -> None:
        evens = PureSetOracle(step=2)
        assert neighborhood_member(
            evens, pure_set([0, 2]), PureSetOracle(), horizon=8
        )

    def test_short_finite_candidate(self) -> None:
        assert not neighborhood_member(
            pure_set([0]), pure_set([0, 2]), PureSetOracle()
        )

    def test_short_file_oracle(self) -> None:
        known = TruncationFileOracle((pure_set(range(3)),))
        assert neighborhood_member(known, pure_set([0]), PureSetOracle())
        assert not neighborhood_member(
            known, pure_set([0]), PureSetOracle(step=2)
        )
