"""Independent oracles for the closed forms and the implication suite.

The brute-force oracles are exact; ``numeric_projection_constant`` is the
only floating-point code in the package.
"""

import time
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

import numpy as np

from cplanes.core_seq import (
    ConvergentSeq,
    L1Functional,
    L1Vector,
    sign_or_one,
    sup_norm,
)
from cplanes.corpus import sample_sequences
from cplanes.duality import phi_apply, weak_star_limit
from cplanes.hyperplane import (
    HyperplaneClass,
    c0_one_complemented,
    classify,
    member,
    min_projection,
    minimizing_projection,
    one_complemented,
    projection_apply,
    projection_constant,
    threshold_index,
)
from cplanes.isometry import embed_c_into_wf, iso_c0, project_wf_to_c
from cplanes.logger import get_logger
from cplanes.report_types import CheckResult, check

# Smaller decreases are treated as rounding noise
MIN_GAIN = 1e-12


@dataclass(frozen=True)
class NormWitness:
    """A unit-ball point x and the norm of its image under P_z."""

    x: ConvergentSeq
    value: Fraction


def norm_depth(f: L1Functional, z: ConvergentSeq) -> int:
    """Smallest witness length at which the oracles reproduce ||P_z|| exactly."""
    return max(len(z.prefix), f.support - 1) + 1


def attained_norm_witness(
    f: L1Functional, z: ConvergentSeq, n: int, i: int
) -> NormWitness:
    """Return x^(n,i) with x_j = sgn(delta_ij - f_{j+1} z_i) for j <= n.

    Beyond n (and in the limit) the witness equals sgn(-f_1 z_i). Zero
    arguments take the sign +1.

    Raises:
        NotAProjectionError: If f(z) != 1.
    """
    z_i = z.coord(i)
    prefix = tuple(
        Fraction(sign_or_one((1 if j == i else 0) - f.coeff(j + 1) * z_i))
        for j in range(1, n + 1)
    )
    x = ConvergentSeq(prefix, Fraction(sign_or_one(-f.coeff(1) * z_i)))
    return NormWitness(x=x, value=sup_norm(projection_apply(f, z, x)))


def attained_norm(f: L1Functional, z: ConvergentSeq, n: int) -> Fraction:
    """Maximum of the witness values over i = 1..n."""
    return max(attained_norm_witness(f, z, n, i).value for i in range(1, n + 1))


def extreme_point_norm_oracle(f: L1Functional, z: ConvergentSeq, depth: int) -> Fraction:
    """Maximise ||P_z x|| over x with prefix in {-1, 1}^depth and tail in {-1, 1}.

    Always a lower bound for ||P_z||; exact once depth reaches ``norm_depth``.

    Raises:
        NotAProjectionError: If f(z) != 1.
    """
    best = Fraction(0)
    for signs in product((-1, 1), repeat=depth + 1):
        x = ConvergentSeq(tuple(Fraction(s) for s in signs[:-1]), Fraction(signs[-1]))
        best = max(best, sup_norm(projection_apply(f, z, x)))
    return best


@dataclass(frozen=True)
class NumericEstimate:
    """Result of the floating-point minimisation."""

    value: float
    converged: bool
    evaluations: int


def _start_point(f: L1Functional, truncation: int) -> ConvergentSeq:
    if one_complemented(f):
        return min_projection(f).z
    return minimizing_projection(f, max(truncation, threshold_index(f))).z


def _float_norm(weights: np.ndarray, z: np.ndarray) -> float:
    rows = np.abs(1 - weights[1:] * z[1:]) + np.abs(z[1:]) * (1 - np.abs(weights[1:]))
    return float(max(rows.max(initial=0.0), 1 + abs(z[0])))


def numeric_projection_constant(
    f: L1Functional,
    truncation: int = 32,
    max_iterations: int = 20000,
    tolerance: float = 1e-9,
) -> NumericEstimate:
    """Minimise ||P_z|| over z with ``truncation`` free coordinates and a tail.

    Deterministic coordinate descent on the affine set f(z) = 1: each move
    shifts one coordinate and compensates on the coordinate with the largest
    |f_j|. Offsets are scanned on a grid that is refined by a factor 4 each
    time a full sweep stops improving, until the step falls below
    ``tolerance``. ``max_iterations`` bounds the number of objective
    evaluations; hitting it returns the best value with ``converged=False``.
    """
    start = _start_point(f, truncation)
    size = max(truncation, f.support - 1, len(start.prefix))
    weights = np.array([float(f.coeff(j + 1)) for j in range(size + 1)])
    z = np.array([float(start.tail), *(float(v) for v in start.coords(size))])

    pivot = int(np.argmax(np.abs(weights)))
    moves = [k for k in range(size + 1) if k != pivot]
    offsets = [m for m in range(-4, 5) if m]

    best = _float_norm(weights, z)
    evaluations = 1
    step = 1.0
    while step >= tolerance:
        improved = False
        for k in moves:
            direction = np.zeros(size + 1)
            direction[k] = 1.0
            direction[pivot] = -weights[k] / weights[pivot]
            trial_best, trial_z = best, None
            for m in offsets:
                candidate = z + (m * step) * direction
                value = _float_norm(weights, candidate)
                evaluations += 1
                if value < trial_best - MIN_GAIN:
                    trial_best, trial_z = value, candidate
            if trial_z is not None:
                best, z, improved = trial_best, trial_z, True
            if evaluations >= max_iterations:
                get_logger().warning(
                    f"Numeric oracle stopped after {evaluations} evaluations "
                    f"(step {step:g})"
                )
                return NumericEstimate(best, converged=False, evaluations=evaluations)
        if not improved:
            step /= 4
    return NumericEstimate(best, converged=True, evaluations=evaluations)


@dataclass
class ImplicationReport:
    """Truth values of the eight properties and the status of each implication."""

    properties: dict[int, bool]
    checks: list[CheckResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)


# (premise, conclusion, both directions)
IMPLICATIONS: list[tuple[int, int, bool]] = [
    (1, 2, True),
    (2, 3, True),
    (3, 4, False),
    (4, 5, True),
    (6, 5, False),
    (6, 7, True),
    (7, 8, True),
]


def _embeds_isometrically(f: L1Functional, sample: list[ConvergentSeq]) -> bool:
    for x in sample:
        y = embed_c_into_wf(f, x)
        if not member(f, y) or sup_norm(y) != sup_norm(x):
            return False
        if project_wf_to_c(f, y) != x:
            return False
    return True


def _property_values(f: L1Functional, sample: list[ConvergentSeq]) -> dict[int, bool]:
    constant = projection_constant(f)
    complemented = bool(one_complemented(f))
    hyperplane_class = classify(f)

    p1 = complemented and min_projection(f).norm == 1
    p2 = complemented and _embeds_isometrically(f, sample)
    null_sample = [ConvergentSeq(x.prefix, Fraction(0)) for x in sample]
    p6 = hyperplane_class is HyperplaneClass.ISO_C0 and all(
        iso_c0(f, x) == x for x in null_sample
    )
    return {
        1: p1,
        2: p2,
        3: complemented,
        4: hyperplane_class.dual_is_l1,
        5: c0_one_complemented(f),
        6: p6,
        7: constant == 2,
        8: f.support == 1 and abs(f.coeff(1)) == 1,
    }


def implication_suite(
    f: L1Functional, sample_size: int = 8, seed: int = 0
) -> ImplicationReport:
    """Evaluate the eight properties on f and check every stated implication."""
    sample = sample_sequences(sample_size, max_prefix=f.support + 2, seed=seed)
    started = time.perf_counter()
    properties = _property_values(f, sample)
    elapsed = time.perf_counter() - started

    report = ImplicationReport(properties=properties)
    for premise, conclusion, both in IMPLICATIONS:
        a, b = properties[premise], properties[conclusion]
        arrow = "<=>" if both else "=>"
        ok = a == b if both else (not a or b)
        result = check(
            f"({premise}){arrow}({conclusion})",
            expected="holds",
            got=f"({premise})={a}, ({conclusion})={b}",
            ok=ok,
        )
        result.elapsed = elapsed
        report.checks.append(result)
    return report


def weak_star_convergence_check(f: L1Functional, x: ConvergentSeq, n: int) -> Fraction:
    """Return |phi(e_n)(x) - phi(e_hat)(x)| for x in W_f.

    Raises:
        NotInHyperplaneError: If x is not in W_f.
        ZeroLeadCoefficientError: If f_1 = 0.
    """
    ehat = weak_star_limit(f).ehat
    return abs(phi_apply(f, L1Vector.unit(n), x) - phi_apply(f, ehat, x))

