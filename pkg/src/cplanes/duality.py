"""Duality between l1 and the dual of W_f.

A vector y in l1 acts on x in W_f by phi(y)(x) = sum_{j>=1} x_j y_j. When
1/2 <= |f_1| < 1 and |f_j| < 1/2 for j >= 2 the map phi is an isometry onto
the dual of W_f and the unit vectors e_n converge weak* to
e_hat = (-f_2/f_1, -f_3/f_1, ...).
"""

from dataclasses import dataclass
from fractions import Fraction

from cplanes.core_seq import (
    ConvergentSeq,
    L1Functional,
    L1Vector,
    l1_norm,
    sign_or_one,
)
from cplanes.errors import (
    DegenerateWitnessError,
    NBelowThresholdError,
    NotInHyperplaneError,
    NotInUnitBallError,
    WrongClassError,
    ZeroLeadCoefficientError,
)
from cplanes.hyperplane import HALF, HyperplaneClass, classify, member
from cplanes.logger import get_logger


@dataclass(frozen=True)
class WeakStarLimit:
    """The weak* limit of the unit vectors, with a warning when it is only formal."""

    ehat: L1Vector
    warning: str | None = None


@dataclass(frozen=True)
class DualWitness:
    """A point x^N of the unit ball of W_f and |phi(y)(x^N)|."""

    x: ConvergentSeq
    value: Fraction


@dataclass(frozen=True)
class PredualResult:
    """Functional whose hyperplane is the predual, and the hyperplane's class."""

    functional: L1Functional
    hyperplane_class: HyperplaneClass


def phi_apply(f: L1Functional, y: L1Vector, x: ConvergentSeq) -> Fraction:
    """Evaluate phi(y)(x) = sum_j x_j y_j.

    Raises:
        NotInHyperplaneError: If x is not in W_f.
    """
    if not member(f, x):
        raise NotInHyperplaneError("phi(y) is only evaluated on W_f")
    return sum(
        (c * x.coord(j) for j, c in enumerate(y.coeffs, start=1)), Fraction(0)
    )


def weak_star_limit(f: L1Functional) -> WeakStarLimit:
    """Return e_hat with e_hat_j = -f_{j+1} / f_1.

    The formula is evaluated whenever f_1 != 0. For f = +-e_1 the limit is
    the zero vector. In the classes ISO_C and DUAL_NOT_L1 a warning is
    attached since the unit vectors are not known to converge there.

    Raises:
        ZeroLeadCoefficientError: If f_1 = 0.
    """
    lead = f.coeff(1)
    if lead == 0:
        raise ZeroLeadCoefficientError("e_hat requires f_1 != 0")
    ehat = L1Vector(tuple(-c / lead for c in f.coeffs[1:]))

    hyperplane_class = classify(f)
    warning = None
    if hyperplane_class not in (
        HyperplaneClass.DUAL_L1_ONLY,
        HyperplaneClass.ISO_C0,
    ):
        warning = (
            f"Hyperplane class is {hyperplane_class.value}; e_hat is the formal "
            f"limit only"
        )
        get_logger().warning(warning)
    return WeakStarLimit(ehat=ehat, warning=warning)


def witness_threshold(f: L1Functional) -> int:
    """Smallest N >= 1 with sum_{j>N} |f_{j+1}| < 1/2."""
    for n in range(1, f.support):
        tail = sum((abs(c) for c in f.coeffs[n + 1 :]), Fraction(0))
        if tail < HALF:
            return n
    return max(f.support - 1, 1)


def dual_norm_lower_witness(f: L1Functional, y: L1Vector, n: int) -> DualWitness:
    """Return x^N = (sgn y_1, ..., sgn y_N, x_0, x_0, ...) in the unit ball of W_f.

    The limit x_0 solves f(x^N) = 0. Once N covers the supports of y and f
    the returned value equals ||y||_1, so phi preserves norms.

    Raises:
        WrongClassError: Outside the class DUAL_L1_ONLY.
        NBelowThresholdError: If N is below the witness threshold.
        DegenerateWitnessError: If the equation for x_0 has no solution.
    """
    hyperplane_class = classify(f)
    if hyperplane_class is not HyperplaneClass.DUAL_L1_ONLY:
        raise WrongClassError(
            f"Norm witnesses need class dual_l1_only, got {hyperplane_class.value}",
            hyperplane_class=hyperplane_class.value,
        )
    n0 = witness_threshold(f)
    if n < n0:
        raise NBelowThresholdError(
            f"N = {n} is below the witness threshold {n0}", n=n, n0=n0
        )

    signs = [Fraction(sign_or_one(y.coeff(j))) for j in range(1, n + 1)]
    head = sum((f.coeff(j + 1) * s for j, s in enumerate(signs, start=1)), Fraction(0))
    denominator = f.coeff(1) + sum(
        (f.coeff(j + 1) for j in range(n + 1, f.support)), Fraction(0)
    )
    if denominator == 0:
        raise DegenerateWitnessError("Equation for the witness limit is singular")
    x = ConvergentSeq(tuple(signs), -head / denominator)

    return DualWitness(x=x, value=abs(phi_apply(f, y, x)))


def dual_norm(f: L1Functional, y: L1Vector) -> Fraction:
    """Evaluate ||phi(y)|| through the witness at N = max(supports)."""
    n = max(len(y), f.support, witness_threshold(f))
    return dual_norm_lower_witness(f, y, n).value


def predual_from_limit(ehat: L1Vector) -> PredualResult:
    """Recover the functional whose hyperplane has e_hat as its basis limit.

    If e_hat = +-e_m the predual is c, represented by f = e_2. Otherwise
    f_1 = 1 / (1 + ||e_hat||_1) and f_n = -e_hat_{n-1} f_1 for n >= 2.

    Raises:
        NotInUnitBallError: If ||e_hat||_1 > 1.
    """
    norm = l1_norm(ehat)
    if norm > 1:
        raise NotInUnitBallError(
            f"Weak* limits of the unit vectors have norm <= 1, got {norm}",
            l1_norm=str(norm),
        )
    nonzero = [c for c in ehat.coeffs if c != 0]
    if len(nonzero) == 1 and abs(nonzero[0]) == 1:
        return PredualResult(
            functional=L1Functional.of(0, 1), hyperplane_class=HyperplaneClass.ISO_C
        )

    lead = 1 / (1 + norm)
    f = L1Functional(L1Vector((lead, *(-c * lead for c in ehat.coeffs))))
    return PredualResult(functional=f, hyperplane_class=classify(f))
