"""Tests for isometry module."""

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cplanes.core_seq import ConvergentSeq, L1Functional, sup_norm
from cplanes.corpus import exhaustive_functionals, random_ball_member, random_sequence
from cplanes.errors import (
    NotInC0Error,
    NotInHyperplaneError,
    NotOneComplementedError,
    WrongClassError,
)
from cplanes.hyperplane import member, one_complemented
from cplanes.isometry import embed_c_into_wf, iso_c0, project_wf_to_c

ISO_C_GRID = [f for f in exhaustive_functionals(4, 4) if one_complemented(f)]


class TestEmbed:
    """Tests for the isometry of c onto W_f."""

    @pytest.mark.parametrize(
        ("coeffs", "x", "expected"),
        [
            ((0, 1), ConvergentSeq.of([5], 2), ConvergentSeq.of([0, 5], 2)),
            (("1/2", "1/2"), ConvergentSeq.of([], 1), ConvergentSeq.of([-1], 1)),
            (
                ("1/4", "1/2", "1/4"),
                ConvergentSeq.of([1], 0),
                ConvergentSeq.of(["-1/2", 1], 0),
            ),
        ],
    )
    def test_examples(
        self, coeffs: tuple, x: ConvergentSeq, expected: ConvergentSeq
    ) -> None:
        f = L1Functional.of(*coeffs)
        y = embed_c_into_wf(f, x)
        assert y == expected
        assert member(f, y)
        assert sup_norm(y) == sup_norm(x)

    def test_inserts_after_the_head(self) -> None:
        f = L1Functional.of("1/4", 0, 0, "3/4")
        x = ConvergentSeq.of([1, 2], 0)
        y = embed_c_into_wf(f, x)
        # j0 = 4: alpha sits at position 3
        assert y.coords(3)[:2] == [1, 2]
        assert member(f, y)

    def test_requires_one_complemented(self) -> None:
        with pytest.raises(NotOneComplementedError):
            embed_c_into_wf(L1Functional.of("3/4", "1/4"), ConvergentSeq())

    @pytest.mark.parametrize("f", ISO_C_GRID, ids=str)
    def test_isometry_on_grid(self, f: L1Functional) -> None:
        rng = random.Random(len(f.coeffs))
        for _ in range(25):
            x = random_sequence(rng, max_prefix=6, max_den=5)
            y = embed_c_into_wf(f, x)
            assert member(f, y)
            assert sup_norm(y) == sup_norm(x)
            assert y.tail == x.tail
            assert project_wf_to_c(f, y) == x

    @settings(max_examples=40)
    @given(st.integers(min_value=0, max_value=10_000), st.fractions(-3, 3, 6))
    def test_linear(self, seed: int, t: Fraction) -> None:
        rng = random.Random(seed)
        f = rng.choice(ISO_C_GRID)
        x = random_sequence(rng, 4, 5)
        y = random_sequence(rng, 4, 5)
        assert embed_c_into_wf(f, x + y.scaled(t)) == embed_c_into_wf(
            f, x
        ) + embed_c_into_wf(f, y).scaled(t)


class TestProject:
    """Tests for the inverse map W_f -> c."""

    def test_examples(self) -> None:
        assert project_wf_to_c(
            L1Functional.of(0, 1), ConvergentSeq.of([0, 5], 2)
        ) == ConvergentSeq.of([5], 2)
        assert project_wf_to_c(
            L1Functional.of("1/2", "1/2"), ConvergentSeq.of([-1], 1)
        ) == ConvergentSeq.constant(1)

    def test_rejects_non_members(self) -> None:
        with pytest.raises(NotInHyperplaneError):
            project_wf_to_c(L1Functional.of(0, 1), ConvergentSeq.of([1], 0))

    @pytest.mark.parametrize("f", ISO_C_GRID[:20], ids=str)
    def test_embed_after_project(self, f: L1Functional) -> None:
        rng = random.Random(3)
        for _ in range(10):
            w = random_ball_member(rng, f, max_prefix=5, max_den=5)
            assert embed_c_into_wf(f, project_wf_to_c(f, w)) == w


class TestIsoC0:
    """Tests for the identification of W_f with c0."""

    def test_identity(self) -> None:
        x = ConvergentSeq.of([3], 0)
        assert iso_c0(L1Functional.of(1), x) == x
        assert iso_c0(L1Functional.of(-1), ConvergentSeq()) == ConvergentSeq()

    def test_nonzero_limit(self) -> None:
        with pytest.raises(NotInC0Error):
            iso_c0(L1Functional.of(1), ConvergentSeq.constant(1))

    def test_wrong_class(self) -> None:
        with pytest.raises(WrongClassError) as exc_info:
            iso_c0(L1Functional.of("3/4", "1/4"), ConvergentSeq())
        assert exc_info.value.detail["hyperplane_class"] == "dual_l1_only"


@pytest.mark.slow
@pytest.mark.parametrize(
    "f", [f for f in exhaustive_functionals(3, 3) if one_complemented(f)], ids=str
)
def test_isometry_exact_on_many_samples(f: L1Functional) -> None:
    """Embedding and its inverse are exact on a thousand samples per f."""
    rng = random.Random(17)
    for _ in range(1000):
        x = random_sequence(rng, max_prefix=6, max_den=7)
        y = embed_c_into_wf(f, x)
        assert member(f, y)
        assert sup_norm(y) == sup_norm(x)
        assert project_wf_to_c(f, y) == x

        w = random_ball_member(rng, f, max_prefix=6, max_den=7)
        assert embed_c_into_wf(f, project_wf_to_c(f, w)) == w
