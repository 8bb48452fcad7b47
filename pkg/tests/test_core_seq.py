"""Tests for core_seq module."""

import inspect
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from cplanes.core_seq import (
    ConvergentSeq,
    L1Functional,
    L1Vector,
    as_fraction,
    coord,
    l1_norm,
    limit,
    normalize,
    pair,
    sign,
    sign_or_one,
    sup_norm,
)
from cplanes.errors import NotNormalizedError, ZeroVectorError

rationals = st.fractions(min_value=-3, max_value=3, max_denominator=12)
vectors = st.lists(rationals, max_size=5).map(lambda c: L1Vector(tuple(c)))
sequences = st.builds(
    lambda p, t: ConvergentSeq(tuple(p), t),
    st.lists(rationals, max_size=5),
    rationals,
)


class TestScalars:
    """Tests for scalar helpers."""

    def test_as_fraction_accepts_exact_values(self) -> None:
        assert as_fraction("3/4") == Fraction(3, 4)
        assert as_fraction(2) == Fraction(2)
        assert as_fraction(Fraction(1, 3)) == Fraction(1, 3)

    def test_as_fraction_rejects_floats(self) -> None:
        with pytest.raises(TypeError, match="Inexact"):
            as_fraction(0.5)

    def test_sign_conventions(self) -> None:
        assert sign(Fraction(0)) == 0
        assert sign(Fraction(-2)) == -1
        assert sign_or_one(Fraction(0)) == 1
        assert sign_or_one(Fraction(-1, 5)) == -1


class TestL1Vector:
    """Tests for L1Vector."""

    def test_trailing_zeros_are_dropped(self) -> None:
        assert L1Vector.of(1, 0, 0).coeffs == (Fraction(1),)
        assert L1Vector.of(0).is_zero()

    def test_unit_vector(self) -> None:
        e3 = L1Vector.unit(3)
        assert e3.coeffs == (0, 0, 1)
        assert e3.coeff(3) == 1
        assert e3.coeff(7) == 0

    def test_l1_norm_examples(self) -> None:
        assert l1_norm(L1Vector.of(1)) == 1
        assert l1_norm(L1Vector.of("3/4", "1/4")) == 1
        assert l1_norm(L1Vector.of("1/2", "-1/3")) == Fraction(5, 6)

    def test_addition_and_negation(self) -> None:
        total = L1Vector.of(1, 2) + L1Vector.of(-1, -2, 3)
        assert total == L1Vector.of(0, 0, 3)
        assert -L1Vector.of(1, -2) == L1Vector.of(-1, 2)


class TestL1Functional:
    """Tests for L1Functional and normalize."""

    def test_requires_norm_one(self) -> None:
        with pytest.raises(NotNormalizedError) as exc_info:
            L1Functional.of(1, 1)
        assert exc_info.value.detail["l1_norm"] == "2"

    def test_normalize_examples(self) -> None:
        assert normalize(L1Vector.of("1/2", "1/2")) == L1Functional.of("1/2", "1/2")
        assert normalize(L1Vector.of(3, 1)) == L1Functional.of("3/4", "1/4")

    def test_normalize_zero_vector(self) -> None:
        with pytest.raises(ZeroVectorError):
            normalize(L1Vector.of(0))

    def test_support_and_negation(self) -> None:
        f = L1Functional.of("-1/2", 0, "1/2")
        assert f.support == 3
        assert (-f).coeffs == (Fraction(1, 2), 0, Fraction(-1, 2))


class TestConvergentSeq:
    """Tests for ConvergentSeq."""

    def test_canonical_prefix(self) -> None:
        x = ConvergentSeq.of([1, 2, 2], 2)
        assert x.prefix == (1,)
        assert x.tail == 2

    def test_accessors(self) -> None:
        x = ConvergentSeq.of([1, -3], 2)
        assert sup_norm(x) == 3
        assert limit(ConvergentSeq.of([], 0)) == 0
        assert coord(ConvergentSeq.of([5], 9), 2) == 9
        assert x.coords(4) == [1, -3, 2, 2]

    def test_coord_rejects_non_positive_index(self) -> None:
        with pytest.raises(ValueError, match="positive"):
            ConvergentSeq.of([1], 0).coord(0)

    def test_arithmetic(self) -> None:
        x = ConvergentSeq.of([1, 2], 3)
        y = ConvergentSeq.of([1], 1)
        assert x - y == ConvergentSeq.of([0, 1], 2)
        assert x.scaled("1/2") == ConvergentSeq.of(["1/2", 1], "3/2")


class TestPair:
    """Tests for the duality pairing."""

    def test_examples(self) -> None:
        x = ConvergentSeq.of(["7/2"], "1/3")
        assert pair(L1Vector.of(1), x) == Fraction(1, 3)
        assert pair(L1Vector.of(0, 1), x) == Fraction(7, 2)
        assert pair(
            L1Functional.of("1/2", "1/2"), ConvergentSeq.of([1, -1], "1/2")
        ) == Fraction(3, 4)

    def test_zero_vector_pairs_to_zero(self) -> None:
        assert pair(L1Vector(), ConvergentSeq.of([4], 5)) == 0

    @given(vectors, vectors, sequences, rationals)
    def test_linear_in_f(
        self, f: L1Vector, g: L1Vector, x: ConvergentSeq, t: Fraction
    ) -> None:
        assert pair(f + g.scaled(t), x) == pair(f, x) + t * pair(g, x)

    @given(vectors, sequences, sequences, rationals)
    def test_linear_in_x(
        self, f: L1Vector, x: ConvergentSeq, y: ConvergentSeq, t: Fraction
    ) -> None:
        assert pair(f, x + y.scaled(t)) == pair(f, x) + t * pair(f, y)

    @given(vectors, sequences)
    def test_bounded_by_norms(self, f: L1Vector, x: ConvergentSeq) -> None:
        assert abs(pair(f, x)) <= l1_norm(f) * sup_norm(x)

    @given(sequences)
    def test_canonicalization_is_idempotent(self, x: ConvergentSeq) -> None:
        again = ConvergentSeq(x.prefix, x.tail)
        assert again == x
        assert sup_norm(again) == sup_norm(x)


@pytest.mark.parametrize("function", [sup_norm, limit, coord, pair, l1_norm, normalize])
def test_sequence_helpers_are_documented(function: object) -> None:
    """Test that the public sequence helpers carry docstrings."""
    assert inspect.getdoc(function)
