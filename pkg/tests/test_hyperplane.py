"""Tests for hyperplane module."""

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cplanes.core_seq import ConvergentSeq, L1Functional
from cplanes.corpus import exhaustive_functionals, random_feasible_z, random_functional
from cplanes.errors import (
    NBelowThresholdError,
    NotAProjectionError,
    NotOneComplementedError,
    OneComplementedError,
)
from cplanes.hyperplane import (
    HyperplaneClass,
    alpha_n,
    c0_one_complemented,
    classify,
    lambda_n,
    member,
    min_projection,
    min_projections,
    minimizing_projection,
    one_complemented,
    projection_apply,
    projection_constant,
    projection_norm,
    threshold_index,
)

GRID = exhaustive_functionals(max_den=4, max_support=3)


@pytest.fixture
def f_lead() -> L1Functional:
    """f = (3/4, 1/4), the running example of the dual_l1_only class."""
    return L1Functional.of("3/4", "1/4")


@pytest.fixture
def f_flat() -> L1Functional:
    """f = (1/4, 1/4, 1/4, 1/4), no coefficient reaches 1/2."""
    return L1Functional.of("1/4", "1/4", "1/4", "1/4")


class TestProjectionApply:
    """Tests for P_z(x) = x - f(x) z."""

    def test_subtracts_multiple_of_z(self) -> None:
        f = L1Functional.of(0, 1)
        z = ConvergentSeq.of([1], 0)
        x = ConvergentSeq.of([3, 4], 2)
        image = projection_apply(f, z, x)
        assert image == ConvergentSeq.of([0, 4], 2)
        assert member(f, image)

    def test_fixes_members(self, f_lead: L1Functional) -> None:
        z = ConvergentSeq.constant(1)
        x = ConvergentSeq.of([3], -1)
        assert member(f_lead, x)
        assert projection_apply(f_lead, z, x) == x

    def test_kills_z(self) -> None:
        f = L1Functional.of(1)
        z = ConvergentSeq.constant(1)
        assert projection_apply(f, z, z) == ConvergentSeq.constant(0)

    def test_rejects_infeasible_z(self, f_lead: L1Functional) -> None:
        with pytest.raises(NotAProjectionError) as exc_info:
            projection_apply(f_lead, ConvergentSeq.constant("4/3"), ConvergentSeq())
        assert exc_info.value.detail["pairing"] == "4/3"


class TestProjectionNorm:
    """Tests for the norm formula."""

    def test_norm_one_projection(self) -> None:
        assert projection_norm(L1Functional.of(0, 1), ConvergentSeq.of([1], 0)) == 1

    def test_constant_z(self, f_lead: L1Functional) -> None:
        # row term 3/2, tail term 2
        assert projection_norm(f_lead, ConvergentSeq.constant(1)) == 2

    def test_unit_functional(self) -> None:
        assert projection_norm(L1Functional.of(1), ConvergentSeq.constant(1)) == 2

    def test_tail_four_thirds_is_not_a_projection(self, f_lead: L1Functional) -> None:
        with pytest.raises(NotAProjectionError):
            projection_norm(f_lead, ConvergentSeq.constant("4/3"))

    @settings(max_examples=60)
    @given(st.integers(min_value=0, max_value=10_000))
    def test_at_least_one_and_at_least_constant(self, seed: int) -> None:
        rng = random.Random(seed)
        f = random_functional(rng, max_support=5, max_den=6)
        z = random_feasible_z(rng, f, max_prefix=6, max_den=6)
        norm = projection_norm(f, z)
        assert norm >= 1
        assert norm >= projection_constant(f)

    @settings(max_examples=40)
    @given(st.integers(min_value=0, max_value=10_000))
    def test_projection_is_idempotent(self, seed: int) -> None:
        rng = random.Random(seed)
        f = random_functional(rng, max_support=4, max_den=5)
        z = random_feasible_z(rng, f, max_prefix=4, max_den=5)
        x = random_feasible_z(rng, f, max_prefix=4, max_den=5).scaled(seed % 7)
        once = projection_apply(f, z, x)
        assert projection_apply(f, z, once) == once


class TestOneComplemented:
    """Tests for norm-one projections."""

    def test_indices(self, f_lead: L1Functional) -> None:
        assert one_complemented(L1Functional.of(0, 1)) == [2]
        assert one_complemented(f_lead) == []
        assert one_complemented(L1Functional.of(0, "1/2", "1/2")) == [2, 3]

    def test_unique_min_projection(self) -> None:
        spec = min_projection(L1Functional.of(0, 1))
        assert spec.z == ConvergentSeq.of([1], 0)
        assert spec.norm == 1
        assert spec.unique is True

    def test_non_unique_min_projection(self) -> None:
        f = L1Functional.of(0, "1/2", "1/2")
        spec = min_projection(f)
        assert spec.z == ConvergentSeq.of([2], 0)
        assert spec.unique is False
        variants = min_projections(f)
        assert [s.z for s in variants] == [
            ConvergentSeq.of([2], 0),
            ConvergentSeq.of([0, 2], 0),
        ]
        assert all(s.norm == 1 for s in variants)

    def test_unit_functional_is_not_one_complemented(self) -> None:
        with pytest.raises(NotOneComplementedError):
            min_projection(L1Functional.of(1))


class TestProjectionConstant:
    """Tests for the closed form of the projection constant."""

    def test_examples(self, f_lead: L1Functional, f_flat: L1Functional) -> None:
        assert projection_constant(L1Functional.of(1)) == 2
        assert projection_constant(f_lead) == Fraction(9, 5)
        assert projection_constant(f_flat) == Fraction(11, 7)
        assert projection_constant(L1Functional.of(0, "1/2", "1/2")) == 1

    @pytest.mark.parametrize("f", GRID, ids=str)
    def test_extremes_match_classes(self, f: L1Functional) -> None:
        constant = projection_constant(f)
        assert 1 <= constant <= 2
        assert (constant == 1) == (classify(f) is HyperplaneClass.ISO_C)
        assert (constant == 2) == (classify(f) is HyperplaneClass.ISO_C0)


class TestMinimizingProjection:
    """Tests for z^N and its threshold."""

    def test_lead_example(self, f_lead: L1Functional) -> None:
        assert alpha_n(f_lead, 2) == Fraction(5, 4)
        assert lambda_n(f_lead, 2) == Fraction(4, 5)
        spec = minimizing_projection(f_lead, 2)
        assert spec.z == ConvergentSeq.of(["8/5"], "4/5")
        assert spec.norm == Fraction(9, 5)

    def test_below_support(self, f_lead: L1Functional) -> None:
        assert threshold_index(f_lead) == 1
        spec = minimizing_projection(f_lead, 1)
        assert spec.z == ConvergentSeq.constant(1)
        assert spec.norm == 2

    def test_flat_example(self, f_flat: L1Functional) -> None:
        spec = minimizing_projection(f_flat, 4)
        assert lambda_n(f_flat, 4) == Fraction(4, 7)
        assert spec.z == ConvergentSeq.of(["8/7", "8/7", "8/7"], "4/7")
        assert spec.norm == Fraction(11, 7)

    def test_one_complemented_guard(self) -> None:
        with pytest.raises(OneComplementedError):
            minimizing_projection(L1Functional.of(0, 1), 3)

    def test_below_threshold(self) -> None:
        f = L1Functional.of(0, "1/3", "1/3", "1/3")
        n0 = threshold_index(f)
        assert n0 > 1
        with pytest.raises(NBelowThresholdError) as exc_info:
            minimizing_projection(f, n0 - 1)
        assert exc_info.value.detail["n0"] == n0

    def test_threshold_requires_every_later_length(self) -> None:
        f = L1Functional.of("1/10", "9/20", "-9/20")
        # The condition holds at N = 1 and N = 3 but fails at N = 2
        assert alpha_n(f, 1) == Fraction(1, 10)
        assert alpha_n(f, 2) == Fraction(83, 20)
        assert threshold_index(f) == 3

        # z^1 happens to reach 1 + lambda_1, z^2 overshoots 1 + lambda_2
        assert projection_norm(f, ConvergentSeq.constant(10)) == 11
        z2 = ConvergentSeq.of(["200/83"], "20/83")
        assert projection_norm(f, z2) == Fraction(117, 83)
        assert 1 + lambda_n(f, 2) == Fraction(103, 83)

        for n in (1, 2):
            with pytest.raises(NBelowThresholdError):
                minimizing_projection(f, n)
        spec = minimizing_projection(f, 3)
        assert spec.norm == projection_constant(f) == Fraction(101, 91)

    @pytest.mark.parametrize(
        "f", [f for f in GRID if not one_complemented(f)], ids=str
    )
    def test_infimum_attained_beyond_support(self, f: L1Functional) -> None:
        constant = projection_constant(f)
        for n in range(max(f.support, 1), f.support + 3):
            assert lambda_n(f, n) == constant - 1
            assert minimizing_projection(f, n).norm == constant

    @pytest.mark.parametrize(
        "f", [f for f in GRID if not one_complemented(f)], ids=str
    )
    def test_norm_bound_above_threshold(self, f: L1Functional) -> None:
        for n in range(threshold_index(f), f.support + 1):
            spec = minimizing_projection(f, n)
            assert spec.norm <= 1 + lambda_n(f, n)


class TestClassify:
    """Tests for the four-way classification."""

    @pytest.mark.parametrize(
        ("coeffs", "expected"),
        [
            ((0, "1/2", "1/2"), HyperplaneClass.ISO_C),
            ((1,), HyperplaneClass.ISO_C0),
            ((-1,), HyperplaneClass.ISO_C0),
            (("3/4", "1/4"), HyperplaneClass.DUAL_L1_ONLY),
            (("1/2", "-1/4", "1/4"), HyperplaneClass.DUAL_L1_ONLY),
            (("1/4", "1/4", "1/4", "1/4"), HyperplaneClass.DUAL_NOT_L1),
        ],
    )
    def test_examples(self, coeffs: tuple, expected: HyperplaneClass) -> None:
        assert classify(L1Functional.of(*coeffs)) is expected

    def test_c0_criterion_counts_first_index(self) -> None:
        assert c0_one_complemented(L1Functional.of("3/4", "1/4"))
        assert not c0_one_complemented(L1Functional.of("1/4", "1/4", "1/4", "1/4"))
        assert c0_one_complemented(L1Functional.of("1/2", "1/2"))

    def test_dual_is_l1(self) -> None:
        assert HyperplaneClass.ISO_C.dual_is_l1
        assert not HyperplaneClass.DUAL_NOT_L1.dual_is_l1


@pytest.mark.slow
def test_norm_one_branch_on_full_grid() -> None:
    """Norm-one projections exist exactly on the 1-complemented part of the grid."""
    for f in exhaustive_functionals(max_den=8, max_support=4):
        constant = projection_constant(f)
        if one_complemented(f):
            assert all(spec.norm == 1 for spec in min_projections(f)), str(f)
            assert min_projection(f).norm == 1
        else:
            assert constant > 1, str(f)
            assert (constant == 2) == (abs(f.coeff(1)) == 1 and f.support == 1)
