"""Tests for oracle kinds and the depth function."""

from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from polyramsey.complex import (
    approx,
    bounded_full,
    close_downward,
    full_simplex,
    pure_set,
)
from polyramsey.exceptions import ConfigurationError, HorizonExceededError
from polyramsey.oracles import (
    UNDEFINED,
    BoundedFullOracle,
    Depth,
    FullSimplexOracle,
    PureSetOracle,
    RandomStreamOracle,
    TruncationFileOracle,
    depth,
)


class TestBuiltinOracles:
    def test_full_simplex_truncation(self) -> None:
        assert FullSimplexOracle().truncate(3) == full_simplex([0, 1, 2])

    def test_bounded_full_truncation(self) -> None:
        oracle = BoundedFullOracle(k=2)
        assert oracle.truncate(4) == bounded_full(range(4), 2)
        assert oracle.has_face([3, 9])
        assert not oracle.has_face([0, 1, 2])

    def test_bounded_full_needs_k(self) -> None:
        with pytest.raises(ConfigurationError):
            BoundedFullOracle.from_params({})

    def test_pure_set_over_evens(self) -> None:
        evens = PureSetOracle.from_params({"start": 0, "step": 2})
        assert evens.truncate(2) == pure_set([0, 2])
        assert evens.has_face([4])
        assert not evens.has_face([3])
        assert not evens.has_face([0, 2])

    def test_bad_integer_param(self) -> None:
        with pytest.raises(ConfigurationError):
            PureSetOracle.from_params({"step": "two"})

    def test_headers_round_trip(self) -> None:
        oracle = PureSetOracle(start=1, step=3)
        header = oracle.header()
        assert header == {
            "kind": "pure-set",
            "params": {"start": 1, "step": 3},
        }
        assert PureSetOracle.from_params(header["params"]) == oracle


class TestRandomStreamOracle:
    def test_requires_seed(self) -> None:
        with pytest.raises(ConfigurationError):
            RandomStreamOracle.from_params({"p": 0.5})

    def test_same_seed_same_stream(self) -> None:
        first = RandomStreamOracle(seed=7).truncate(7)
        second = RandomStreamOracle(seed=7).truncate(7)
        assert first == second

    @settings(max_examples=20, deadline=None)
    @given(st.integers(0, 2**32), st.integers(0, 7))
    def test_truncations_are_coherent(self, seed, n) -> None:
        oracle = RandomStreamOracle(seed=seed)
        assert approx(oracle.truncate(8), n) == oracle.truncate(n)

    def test_has_face_agrees_with_truncation(self) -> None:
        oracle = RandomStreamOracle(seed=3, p=0.7)
        c = oracle.truncate(6)
        for mask in range(1, 1 << 6):
            face = [i for i in range(6) if mask >> i & 1]
            assert oracle.has_face(face) == c.has_face(face)

    def test_bounded_stream_caps_faces(self) -> None:
        c = RandomStreamOracle(seed=1, p=1.0, k=2).truncate(5)
        assert c == bounded_full(range(5), 2)

    def test_zero_bias_is_pure(self) -> None:
        assert RandomStreamOracle(seed=1, p=0.0).truncate(4) == pure_set(
            range(4)
        )


class TestTruncationFileOracle:
    def test_incoherent_truncations_rejected(self) -> None:
        with pytest.raises(ConfigurationError):
            TruncationFileOracle(
                truncations=(
                    full_simplex([0, 1]),
                    pure_set([0, 1, 2]),
                )
            )

    def test_beyond_file_raises(self, path3) -> None:
        oracle = TruncationFileOracle(truncations=(path3,))
        assert oracle.truncate(2) == full_simplex([0, 1])
        with pytest.raises(HorizonExceededError):
            oracle.truncate(4)
        with pytest.raises(HorizonExceededError):
            oracle.label(3)

    def test_from_params(self) -> None:
        oracle = TruncationFileOracle.from_params(
            {"truncations": [{"vertices": [0, 1], "facets": [[0, 1]]}]}
        )
        assert oracle.longest == full_simplex([0, 1])

    def test_malformed_params(self) -> None:
        with pytest.raises(ConfigurationError):
            TruncationFileOracle.from_params({"truncations": [{"v": 1}]})


class TestDepth:
    def test_pure_pair_in_naturals(self) -> None:
        """5 is the sixth natural number."""
        assert depth(pure_set([2, 5]), PureSetOracle()) == Depth(6)

    def test_face_missing_is_undefined(self) -> None:
        a = close_downward([[1, 3]], [1, 3])
        assert depth(a, PureSetOracle()) == UNDEFINED
        assert str(UNDEFINED) == "undefined"

    def test_vertex_missing_is_undefined(self) -> None:
        evens = PureSetOracle(step=2)
        assert not depth(pure_set([3]), evens).defined

    @pytest.mark.parametrize("n", [1, 2, 5])
    def test_own_truncation(self, n) -> None:
        oracle = FullSimplexOracle()
        assert depth(approx(oracle, n), oracle) == Depth(n)

    def test_finite_host(self, path3) -> None:
        assert depth(pure_set([0, 2]), path3) == Depth(3)
        assert not depth(full_simplex([0, 2]), path3).defined

    def test_horizon_exhausted(self) -> None:
        assert not depth(pure_set([500]), PureSetOracle(), horizon=100).defined

    @settings(max_examples=25, deadline=None)
    @given(st.sets(st.integers(0, 30), min_size=1, max_size=5))
    def test_depth_at_least_length(self, labels) -> None:
        a = pure_set(labels)
        value = depth(a, PureSetOracle())
        assert value.value is not None
        assert value.value >= len(a)
