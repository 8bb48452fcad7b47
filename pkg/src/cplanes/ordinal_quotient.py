"""Measures on [0, omega*n] realising W_f as a quotient of C(omega*n).

A point omega*k + m is stored as ``OrdinalPoint(block=k, offset=m)``. Points
with offset 0 and block >= 1 are limit points; all other points are
isolated. A continuous function is stored block by block: the values at
offsets m >= 1 of block k form an eventually constant sequence, and the
value at omega*(k+1) must equal that sequence's limit.
"""

from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from fractions import Fraction

from cplanes.core_seq import ConvergentSeq, L1Functional, Scalar, as_fraction
from cplanes.duality import weak_star_limit
from cplanes.errors import DomainMismatchError, WrongClassError
from cplanes.hyperplane import HyperplaneClass, classify


@dataclass(frozen=True, order=True)
class OrdinalPoint:
    """The ordinal omega*block + offset."""

    block: int
    offset: int = 0

    def __post_init__(self) -> None:
        if self.block < 0 or self.offset < 0:
            raise ValueError(
                f"Ordinal coordinates must be non-negative, got "
                f"({self.block}, {self.offset})"
            )

    def within(self, n: int) -> bool:
        """Return True iff the point lies in [0, omega*n]."""
        return self.block < n or (self.block == n and self.offset == 0)


@dataclass(frozen=True)
class COmegaNFunc:
    """Continuous function on [0, omega*n] with eventually constant blocks.

    ``blocks[k]`` gives the values at omega*k + m for m >= 1 and
    ``anchors[k]`` the value at omega*k.
    """

    n: int
    blocks: tuple[ConvergentSeq, ...]
    anchors: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        anchors = tuple(as_fraction(a) for a in self.anchors)
        object.__setattr__(self, "blocks", tuple(self.blocks))
        object.__setattr__(self, "anchors", anchors)
        if self.n < 1:
            raise ValueError(f"n must be positive, got {self.n}")
        if len(self.blocks) != self.n or len(anchors) != self.n + 1:
            raise ValueError(
                f"Expected {self.n} blocks and {self.n + 1} anchors, got "
                f"{len(self.blocks)} and {len(anchors)}"
            )
        for k in range(1, self.n + 1):
            if anchors[k] != self.blocks[k - 1].tail:
                raise ValueError(
                    f"Discontinuous at omega*{k}: anchor {anchors[k]} differs from "
                    f"the block limit {self.blocks[k - 1].tail}"
                )

    @classmethod
    def from_blocks(
        cls, blocks: Sequence[ConvergentSeq], first: Scalar = 0
    ) -> "COmegaNFunc":
        """Build the function from its blocks; limit anchors follow by continuity.

        Args:
            blocks: Values on each block at offsets m >= 1.
            first: Value at the isolated point 0.

        Returns:
            The continuous function.
        """
        anchors = (as_fraction(first), *(b.tail for b in blocks))
        return cls(n=len(blocks), blocks=tuple(blocks), anchors=anchors)

    @classmethod
    def constant(cls, n: int, value: Scalar) -> "COmegaNFunc":
        return cls.from_blocks([ConvergentSeq.constant(value)] * n, value)

    def __call__(self, point: OrdinalPoint) -> Fraction:
        if not point.within(self.n):
            raise DomainMismatchError(
                f"Point ({point.block}, {point.offset}) lies outside [0, omega*{self.n}]",
                block=point.block,
                offset=point.offset,
            )
        if point.offset == 0:
            return self.anchors[point.block]
        return self.blocks[point.block].coord(point.offset)

    def sup_norm(self) -> Fraction:
        values = [abs(a) for a in self.anchors]
        for block in self.blocks:
            values.extend(abs(v) for v in block.prefix)
        return max(values)


@dataclass(frozen=True)
class FinMeasure:
    """Finitely supported signed measure, stored as (point, weight) atoms."""

    atoms: tuple[tuple[OrdinalPoint, Fraction], ...] = ()

    def __post_init__(self) -> None:
        merged: dict[OrdinalPoint, Fraction] = {}
        for point, weight in self.atoms:
            merged[point] = merged.get(point, Fraction(0)) + as_fraction(weight)
        atoms = tuple(sorted((p, w) for p, w in merged.items() if w != 0))
        object.__setattr__(self, "atoms", atoms)

    @classmethod
    def from_atoms(
        cls, atoms: Iterable[tuple[OrdinalPoint, Scalar]]
    ) -> "FinMeasure":
        return cls(tuple((p, as_fraction(w)) for p, w in atoms))

    @property
    def support(self) -> list[OrdinalPoint]:
        return [p for p, _ in self.atoms]

    @property
    def total_variation(self) -> Fraction:
        return sum((abs(w) for _, w in self.atoms), Fraction(0))


def _require_quotient_class(f: L1Functional) -> None:
    hyperplane_class = classify(f)
    if hyperplane_class not in (
        HyperplaneClass.DUAL_L1_ONLY,
        HyperplaneClass.ISO_C0,
    ):
        raise WrongClassError(
            f"The measure construction needs 1/2 <= |f_1| <= 1 and |f_j| < 1/2 "
            f"for j >= 2, class is {hyperplane_class.value}",
            hyperplane_class=hyperplane_class.value,
        )


def alternating_offset(i: int, j: int) -> int:
    """Offset i(i-1)/2 + j of the j-th alternating atom of mu_i."""
    return i * (i - 1) // 2 + j


def make_mu(f: L1Functional, i: int) -> FinMeasure:
    """Return the measure mu_i, the image of the unit vector e_i.

    For i < n, mu_i is the Dirac mass at omega*i. For i >= n it combines
    masses -f_j/f_1 at omega*(j-2) + i with an alternating average of
    weight (2|f_1| - 1)/|f_1| on block n-1.

    Raises:
        WrongClassError: If f is outside the construction's class.
    """
    _require_quotient_class(f)
    if i < 1:
        raise ValueError(f"Measure index must be positive, got {i}")
    n = f.support
    if i < n:
        return FinMeasure(((OrdinalPoint(i, 0), Fraction(1)),))

    lead = f.coeff(1)
    atoms = [
        (OrdinalPoint(j - 2, i), -f.coeff(j) / lead)
        for j in range(2, n + 1)
        if f.coeff(j) != 0
    ]
    weight = (2 * abs(lead) - 1) / (abs(lead) * i)
    if weight != 0:
        atoms.extend(
            (OrdinalPoint(n - 1, alternating_offset(i, j)), (-1) ** j * weight)
            for j in range(1, i + 1)
        )
    return FinMeasure(tuple(atoms))


def integrate(mu: FinMeasure, g: COmegaNFunc) -> Fraction:
    """Evaluate mu(g) = sum of weight * g(point).

    Raises:
        DomainMismatchError: If an atom lies outside g's domain.
    """
    return sum((w * g(p) for p, w in mu.atoms), Fraction(0))


@dataclass(frozen=True)
class QuotientImage:
    """First m values of (mu_i(g))_i and the exact limit of the sequence."""

    values: tuple[Fraction, ...]
    limit: Fraction

    def as_sequence(self) -> ConvergentSeq:
        return ConvergentSeq(self.values, self.limit)


def _require_domain(f: L1Functional, g: COmegaNFunc) -> None:
    if g.n != f.support:
        raise DomainMismatchError(
            f"Function lives on [0, omega*{g.n}] but f has support {f.support}",
            n=g.n,
            support=f.support,
        )


def measure_limit(f: L1Functional, g: COmegaNFunc) -> Fraction:
    """Closed form of lim_i mu_i(g): -(1/f_1) sum_{j>=2} f_j lim(block j-2)."""
    _require_quotient_class(f)
    _require_domain(f, g)
    total = sum(
        (f.coeff(j) * g.blocks[j - 2].tail for j in range(2, f.support + 1)),
        Fraction(0),
    )
    return -total / f.coeff(1)


def quotient_apply(f: L1Functional, g: COmegaNFunc, m: int) -> QuotientImage:
    """Map g to the sequence (mu_i(g))_i, an element of W_f.

    Raises:
        WrongClassError: If f is outside the construction's class.
        DomainMismatchError: If g does not live on [0, omega*n], n = support.
    """
    limit = measure_limit(f, g)
    values = tuple(integrate(make_mu(f, i), g) for i in range(1, m + 1))
    return QuotientImage(values=values, limit=limit)


def membership_residual(f: L1Functional, g: COmegaNFunc) -> Fraction:
    """Return f_1 L + sum_{i<n} f_{i+1} mu_i(g), which vanishes on W_f."""
    image = quotient_apply(f, g, f.support - 1)
    return f.coeff(1) * image.limit + sum(
        (f.coeff(i + 1) * v for i, v in enumerate(image.values, start=1)),
        Fraction(0),
    )


def mu_limit_compatibility(f: L1Functional, g: COmegaNFunc) -> bool:
    """Check lim_i mu_i(g) = sum_j e_hat_j mu_j(g) exactly."""
    _require_quotient_class(f)
    ehat = weak_star_limit(f).ehat
    image = quotient_apply(f, g, len(ehat))
    paired = sum(
        (c * v for c, v in zip(ehat.coeffs, image.values, strict=True)), Fraction(0)
    )
    return image.limit == paired


def atoms_disjoint(f: L1Functional, i: int) -> bool:
    """Check that the two parts of mu_i sit on disjoint point sets."""
    n = f.support
    if i < n:
        return True
    mu = make_mu(f, i)
    first = {p for p in mu.support if p.block < n - 1}
    second = {p for p in mu.support if p.block == n - 1 and p.offset > 0}
    return first.isdisjoint(second) and len(first) + len(second) == len(mu.support)

