"""Exact scalar sequences: finitely supported l1 vectors and members of c.

Indexing follows the usual convention for c: a sequence has coordinates
x_1, x_2, ... and x_0 denotes its limit. A functional f = (f_1, f_2, ...)
pairs f_1 with the limit and f_{i+1} with x_i.
"""

from collections.abc import Iterable
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational

from cplanes.errors import NotNormalizedError, ZeroVectorError

type Scalar = Rational | int | str


def as_fraction(value: Scalar) -> Fraction:
    """Convert an exact scalar to a Fraction.

    Args:
        value: Integer, rational or ``"p/q"`` literal.

    Returns:
        The value as a Fraction.

    Raises:
        TypeError: If the value is a float (inexact input is never accepted).
    """
    if isinstance(value, float):
        raise TypeError(f"Inexact scalar not accepted: {value!r}")
    return Fraction(value)


def sign(value: Fraction) -> int:
    """Return -1, 0 or 1 according to the sign of value."""
    return (value > 0) - (value < 0)


def sign_or_one(value: Fraction) -> int:
    """Sign with the witness convention sgn(0) = +1."""
    return -1 if value < 0 else 1


@dataclass(frozen=True)
class L1Vector:
    """Finitely supported element of l1 with exact coefficients.

    Stored in canonical form: trailing zero coefficients are dropped, so the
    zero vector has an empty coefficient tuple.
    """

    coeffs: tuple[Fraction, ...] = ()

    def __post_init__(self) -> None:
        values = [as_fraction(c) for c in self.coeffs]
        while values and values[-1] == 0:
            values.pop()
        object.__setattr__(self, "coeffs", tuple(values))

    @classmethod
    def of(cls, *values: Scalar) -> "L1Vector":
        return cls(tuple(as_fraction(v) for v in values))

    @classmethod
    def unit(cls, n: int) -> "L1Vector":
        """Return the n-th unit coordinate vector e_n (1-based)."""
        if n < 1:
            raise ValueError(f"Unit vector index must be positive, got {n}")
        return cls((Fraction(0),) * (n - 1) + (Fraction(1),))

    def __len__(self) -> int:
        return len(self.coeffs)

    def coeff(self, j: int) -> Fraction:
        """Return f_j (1-based); zero beyond the support."""
        if j < 1:
            raise ValueError(f"Coefficient index must be positive, got {j}")
        return self.coeffs[j - 1] if j <= len(self.coeffs) else Fraction(0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def scaled(self, factor: Scalar) -> "L1Vector":
        factor = as_fraction(factor)
        return L1Vector(tuple(factor * c for c in self.coeffs))

    def __add__(self, other: "L1Vector") -> "L1Vector":
        size = max(len(self), len(other))
        return L1Vector(
            tuple(self.coeff(j) + other.coeff(j) for j in range(1, size + 1))
        )

    def __neg__(self) -> "L1Vector":
        return self.scaled(-1)


@dataclass(frozen=True)
class L1Functional:
    """Norm-one element of l1, the functional whose kernel is W_f."""

    inner: L1Vector

    def __post_init__(self) -> None:
        norm = l1_norm(self.inner)
        if norm != 1:
            raise NotNormalizedError(
                f"Functional must have l1 norm 1, got {norm}", l1_norm=str(norm)
            )

    @classmethod
    def of(cls, *values: Scalar) -> "L1Functional":
        return cls(L1Vector.of(*values))

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return self.inner.coeffs

    @property
    def support(self) -> int:
        """Length of the stored coefficient list."""
        return len(self.inner)

    def coeff(self, j: int) -> Fraction:
        return self.inner.coeff(j)

    def __neg__(self) -> "L1Functional":
        return L1Functional(-self.inner)


@dataclass(frozen=True)
class ConvergentSeq:
    """Eventually constant member of c.

    ``prefix`` holds x_1..x_m; every later coordinate, and the limit, equals
    ``tail``. Canonical form never ends the prefix with the tail value.
    """

    prefix: tuple[Fraction, ...] = ()
    tail: Fraction = Fraction(0)

    def __post_init__(self) -> None:
        tail = as_fraction(self.tail)
        values = [as_fraction(v) for v in self.prefix]
        while values and values[-1] == tail:
            values.pop()
        object.__setattr__(self, "prefix", tuple(values))
        object.__setattr__(self, "tail", tail)

    @classmethod
    def of(cls, prefix: Iterable[Scalar] = (), tail: Scalar = 0) -> "ConvergentSeq":
        """Build a sequence from scalars, e.g. ``of(["1/2"], 0)``."""
        return cls(tuple(as_fraction(v) for v in prefix), as_fraction(tail))

    @classmethod
    def constant(cls, value: Scalar) -> "ConvergentSeq":
        return cls((), as_fraction(value))

    def coord(self, i: int) -> Fraction:
        """Return x_i for i >= 1; the tail beyond the prefix."""
        if i < 1:
            raise ValueError(f"Coordinate index must be positive, got {i}")
        return self.prefix[i - 1] if i <= len(self.prefix) else self.tail

    def coords(self, length: int) -> list[Fraction]:
        """Return [x_1, ..., x_length]."""
        return [self.coord(i) for i in range(1, length + 1)]

    def scaled(self, factor: Scalar) -> "ConvergentSeq":
        factor = as_fraction(factor)
        return ConvergentSeq(tuple(factor * v for v in self.prefix), factor * self.tail)

    def __add__(self, other: "ConvergentSeq") -> "ConvergentSeq":
        size = max(len(self.prefix), len(other.prefix))
        return ConvergentSeq(
            tuple(a + b for a, b in zip(self.coords(size), other.coords(size))),
            self.tail + other.tail,
        )

    def __sub__(self, other: "ConvergentSeq") -> "ConvergentSeq":
        return self + other.scaled(-1)

    def __neg__(self) -> "ConvergentSeq":
        return self.scaled(-1)


def _vector(f: L1Vector | L1Functional) -> L1Vector:
    return f.inner if isinstance(f, L1Functional) else f


def l1_norm(y: L1Vector | L1Functional) -> Fraction:
    """Return the sum of absolute values of the stored coefficients."""
    return sum((abs(c) for c in _vector(y).coeffs), Fraction(0))


def normalize(y: L1Vector) -> L1Functional:
    """Scale y to a norm-one functional.

    Raises:
        ZeroVectorError: If y is the zero vector.
    """
    norm = l1_norm(y)
    if norm == 0:
        raise ZeroVectorError("Cannot normalize the zero vector")
    return L1Functional(y.scaled(1 / norm))


def pair(f: L1Vector | L1Functional, x: ConvergentSeq) -> Fraction:
    """Evaluate f(x) = f_1 x_0 + sum_{i>=1} f_{i+1} x_i exactly."""
    coeffs = _vector(f).coeffs
    if not coeffs:
        return Fraction(0)
    total = coeffs[0] * x.tail
    for i, c in enumerate(coeffs[1:], start=1):
        total += c * x.coord(i)
    return total


def sup_norm(x: ConvergentSeq) -> Fraction:
    """Return sup_i |x_i|, which is attained on the prefix or the tail.

    Args:
        x: Eventually constant sequence.

    Returns:
        The exact sup norm.
    """
    return max([abs(x.tail), *(abs(v) for v in x.prefix)])


def limit(x: ConvergentSeq) -> Fraction:
    """Return lim x_i, the tail value."""
    return x.tail


def coord(x: ConvergentSeq, i: int) -> Fraction:
    """Return x_i, see ConvergentSeq.coord.

    Raises:
        ValueError: If i < 1.
    """
    return x.coord(i)
