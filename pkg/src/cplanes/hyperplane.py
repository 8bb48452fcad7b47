"""Projections of c onto the hyperplane W_f = ker f and its classification.

Every projection onto W_f has the form P_z(x) = x - f(x) z with f(z) = 1.
Its norm is the supremum over i >= 1 of

    |1 - f_{i+1} z_i| + |z_i| (1 - |f_{i+1}|),

which for finitely supported f and eventually constant z is a maximum over
finitely many terms plus the constant term 1 + |z_0| reached beyond both
supports.
"""

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from cplanes.core_seq import ConvergentSeq, L1Functional, pair, sign
from cplanes.errors import (
    NBelowThresholdError,
    NotAProjectionError,
    NotOneComplementedError,
    OneComplementedError,
)
from cplanes.logger import get_logger

HALF = Fraction(1, 2)


class HyperplaneClass(Enum):
    """Isometric type of W_f."""

    ISO_C = "iso_c"
    ISO_C0 = "iso_c0"
    DUAL_L1_ONLY = "dual_l1_only"
    DUAL_NOT_L1 = "dual_not_l1"

    @property
    def dual_is_l1(self) -> bool:
        return self is not HyperplaneClass.DUAL_NOT_L1


@dataclass(frozen=True)
class ProjectionSpec:
    """A projection P_z onto W_f together with its norm.

    ``unique`` is only set by ``min_projection``: whether P_z is the only
    norm-one projection.
    """

    f: L1Functional
    z: ConvergentSeq
    norm: Fraction
    unique: bool | None = None

    @classmethod
    def build(
        cls, f: L1Functional, z: ConvergentSeq, unique: bool | None = None
    ) -> "ProjectionSpec":
        return cls(f=f, z=z, norm=projection_norm(f, z), unique=unique)


def _require_projection(f: L1Functional, z: ConvergentSeq) -> None:
    value = pair(f, z)
    if value != 1:
        raise NotAProjectionError(
            f"P_z is a projection onto W_f only when f(z) = 1, got {value}",
            pairing=str(value),
        )


def member(f: L1Functional, x: ConvergentSeq) -> bool:
    """Return True iff x lies in W_f."""
    return pair(f, x) == 0


def projection_apply(
    f: L1Functional, z: ConvergentSeq, x: ConvergentSeq
) -> ConvergentSeq:
    """Apply P_z(x) = x - f(x) z.

    Raises:
        NotAProjectionError: If f(z) != 1.
    """
    _require_projection(f, z)
    return x - z.scaled(pair(f, x))


def norm_term(f_next: Fraction, z_i: Fraction) -> Fraction:
    """Row term |1 - f_{i+1} z_i| + |z_i| (1 - |f_{i+1}|) of the norm formula."""
    return abs(1 - f_next * z_i) + abs(z_i) * (1 - abs(f_next))


def projection_norm(f: L1Functional, z: ConvergentSeq) -> Fraction:
    """Return ||P_z|| exactly.

    Raises:
        NotAProjectionError: If f(z) != 1.
    """
    _require_projection(f, z)
    last = max(len(z.prefix), f.support - 1)
    terms = [norm_term(f.coeff(i + 1), z.coord(i)) for i in range(1, last + 1)]
    terms.append(1 + abs(z.tail))
    return max(terms)


def one_complemented(f: L1Functional) -> list[int]:
    """Return every index j >= 2 with |f_j| >= 1/2.

    An empty list means W_f admits no norm-one projection.
    """
    return [j for j in range(2, f.support + 1) if abs(f.coeff(j)) >= HALF]


def _norm_one_z(f: L1Functional, j0: int) -> ConvergentSeq:
    prefix = [Fraction(0)] * (j0 - 2) + [1 / f.coeff(j0)]
    return ConvergentSeq(tuple(prefix), Fraction(0))


def min_projections(f: L1Functional) -> list[ProjectionSpec]:
    """Return the norm-one projection built from each qualifying index."""
    indices = one_complemented(f)
    unique = len(indices) == 1
    return [ProjectionSpec.build(f, _norm_one_z(f, j0), unique) for j0 in indices]


def min_projection(f: L1Functional) -> ProjectionSpec:
    """Return the norm-one projection for the smallest qualifying index.

    Raises:
        NotOneComplementedError: If no index j >= 2 has |f_j| >= 1/2.
    """
    projections = min_projections(f)
    if not projections:
        raise NotOneComplementedError("W_f admits no norm-one projection")
    return projections[0]


def _ratio(c: Fraction) -> Fraction:
    return abs(c) / (1 - 2 * abs(c))


def projection_constant(f: L1Functional) -> Fraction:
    """Return inf ||P_z|| over all projections of c onto W_f.

    Equals 1 when W_f is 1-complemented, otherwise 1 + lambda with
    lambda = (|f_1| + sum_{j>=2} |f_j| / (1 - 2|f_j|))^{-1}.
    """
    if one_complemented(f):
        return Fraction(1)
    denominator = abs(f.coeff(1)) + sum(
        (_ratio(c) for c in f.coeffs[1:]), Fraction(0)
    )
    value = 1 + 1 / denominator
    get_logger().debug(f"Projection constant {value} (lambda = {1 / denominator})")
    return value


def alpha_n(f: L1Functional, n: int) -> Fraction:
    """Return alpha_N, the normalising sum behind the projection z^N."""
    if one_complemented(f):
        raise OneComplementedError("alpha_N is only defined when |f_j| < 1/2, j >= 2")
    head = sum((_ratio(f.coeff(j + 1)) for j in range(1, n)), Fraction(0))
    rest = sum((f.coeff(j + 1) for j in range(n, f.support)), Fraction(0))
    return abs(f.coeff(1)) + head + sign(f.coeff(1)) * rest


def lambda_n(f: L1Functional, n: int) -> Fraction:
    """Return lambda_N = 1 / alpha_N.

    Args:
        f: Functional with no norm-one projection.
        n: Length N of the block of z^N.

    Returns:
        The tail value of z^N; 1 + lambda_N bounds its norm from N0 on.

    Raises:
        OneComplementedError: If f is 1-complemented.
    """
    return 1 / alpha_n(f, n)


def _threshold_condition(f: L1Functional, n: int) -> bool:
    alpha = alpha_n(f, n)
    return alpha > 0 and all(alpha >= _ratio(f.coeff(k + 1)) for k in range(1, n))


def threshold_index(f: L1Functional) -> int:
    """Return the smallest N0 such that z^N is admissible for every N >= N0.

    The condition always holds once N reaches the support length, so only
    smaller N are inspected.

    Raises:
        OneComplementedError: If W_f is 1-complemented.
    """
    n0 = max(f.support, 1)
    for n in range(f.support - 1, 0, -1):
        if not _threshold_condition(f, n):
            break
        n0 = n
    return n0


def minimizing_projection(f: L1Functional, n: int) -> ProjectionSpec:
    """Return the projection P_{z^N} whose norm is at most 1 + lambda_N.

    For N at or beyond the support length lambda_N = lambda and the norm
    equals the projection constant.

    Raises:
        OneComplementedError: If W_f is 1-complemented.
        NBelowThresholdError: If N < N0.
    """
    if one_complemented(f):
        raise OneComplementedError(
            "W_f is 1-complemented; use min_projection instead"
        )
    n0 = threshold_index(f)
    if n < n0:
        raise NBelowThresholdError(
            f"N = {n} is below the admissible threshold N0 = {n0}", n=n, n0=n0
        )
    lam = lambda_n(f, n)
    prefix = tuple(
        lam * sign(f.coeff(j + 1)) / (1 - 2 * abs(f.coeff(j + 1))) for j in range(1, n)
    )
    z = ConvergentSeq(prefix, lam * sign(f.coeff(1)))
    return ProjectionSpec.build(f, z)


def classify(f: L1Functional) -> HyperplaneClass:
    """Return the isometric class of W_f.

    ISO_C when some |f_j| >= 1/2 with j >= 2, ISO_C0 when |f_1| = 1,
    DUAL_L1_ONLY when 1/2 <= |f_1| < 1, DUAL_NOT_L1 otherwise.
    """
    if one_complemented(f):
        return HyperplaneClass.ISO_C
    lead = abs(f.coeff(1))
    if lead == 1:
        return HyperplaneClass.ISO_C0
    if lead >= HALF:
        return HyperplaneClass.DUAL_L1_ONLY
    return HyperplaneClass.DUAL_NOT_L1


def c0_one_complemented(f: L1Functional) -> bool:
    """Return True iff ker f is 1-complemented in c0 (some |f_j| >= 1/2, j >= 1)."""
    return any(abs(c) >= HALF for c in f.coeffs)
