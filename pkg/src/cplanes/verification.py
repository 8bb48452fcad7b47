"""Cross-verification of every closed form against the independent oracles."""

import random
import time
from collections.abc import Callable, Sequence
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

from cplanes.config import Config
from cplanes.core_seq import ConvergentSeq, L1Functional, l1_norm, sup_norm
from cplanes.corpus import (
    random_ball_member,
    random_comega_func,
    random_feasible_z,
    random_l1_vector,
    random_sequence,
)
from cplanes.duality import (
    dual_norm,
    phi_apply,
    predual_from_limit,
    weak_star_limit,
)
from cplanes.errors import CPlanesError
from cplanes.hyperplane import (
    HyperplaneClass,
    ProjectionSpec,
    classify,
    min_projection,
    min_projections,
    minimizing_projection,
    projection_constant,
    projection_norm,
)
from cplanes.isometry import embed_c_into_wf, iso_c0, project_wf_to_c
from cplanes.logger import get_logger
from cplanes.oracles import (
    attained_norm,
    extreme_point_norm_oracle,
    implication_suite,
    norm_depth,
    numeric_projection_constant,
    weak_star_convergence_check,
)
from cplanes.ordinal_quotient import (
    atoms_disjoint,
    make_mu,
    membership_residual,
    mu_limit_compatibility,
)
from cplanes.report_types import CheckResult, VerificationReport, check

# Largest sign-pattern search the brute-force oracle is asked to run
MAX_BRUTE_FORCE_DEPTH = 14

type Outcome = tuple[object, object, bool]


class Verifier:
    """Builds the verification report of one functional."""

    def __init__(self, f: L1Functional, config: Config) -> None:
        self.f = f
        self.config = config
        self.logger = get_logger()
        self.hyperplane_class = classify(f)
        self.rng = random.Random(config.verify.seed)
        self.checks: list[CheckResult] = []

    def run(self) -> VerificationReport:
        """Run every check that applies to the class of W_f."""
        self.logger.debug(
            f"Verifying f = {[str(c) for c in self.f.coeffs]} "
            f"[{self.hyperplane_class.value}]"
        )
        self._check_projections()
        self._check_oracles()
        self._check_implications()

        if self.hyperplane_class is HyperplaneClass.ISO_C:
            self._check_isometry_c()
        if self.hyperplane_class is HyperplaneClass.ISO_C0:
            self._check_isometry_c0()
        if self.hyperplane_class is HyperplaneClass.DUAL_L1_ONLY:
            self._check_duality()
        if self.hyperplane_class in (
            HyperplaneClass.DUAL_L1_ONLY,
            HyperplaneClass.ISO_C0,
        ):
            self._check_measures()

        report = VerificationReport(
            subject=[str(c) for c in self.f.coeffs],
            hyperplane_class=self.hyperplane_class.value,
            checks=self.checks,
        )
        if not report.passed:
            self.logger.warning(
                f"{len(report.failures)} check(s) failed for "
                f"f = ({', '.join(report.subject)})"
            )
        return report

    def _run(self, name: str, compute: Callable[[], Outcome]) -> None:
        started = time.perf_counter()
        try:
            expected, got, ok = compute()
        except CPlanesError as e:
            self.logger.debug(f"Check {name} raised {e.code}", exc_info=True)
            expected, got, ok = "no error", e.code, False
        result = check(name, expected, got, ok)
        result.elapsed = time.perf_counter() - started
        self.checks.append(result)

    def _optimal_projection(self) -> ProjectionSpec:
        if self.hyperplane_class is HyperplaneClass.ISO_C:
            return min_projection(self.f)
        return minimizing_projection(self.f, max(self.f.support, 1))

    def _feasible_samples(self) -> list[ConvergentSeq]:
        return [
            random_feasible_z(self.rng, self.f, self.f.support + 1, 6)
            for _ in range(self.config.verify.sample_size)
        ]

    def _depth(self, z: ConvergentSeq) -> int:
        return self.config.oracle.depth or norm_depth(self.f, z)

    def _bounded(
        self, z: ConvergentSeq, depth: int, expected: Fraction, value: Fraction
    ) -> Outcome:
        # Below norm_depth the oracles only see part of the sign patterns
        if depth >= norm_depth(self.f, z):
            return expected, value, value == expected
        return f"<= {expected}", value, value <= expected

    def _check_projections(self) -> None:
        constant = projection_constant(self.f)

        def attained() -> Outcome:
            spec = self._optimal_projection()
            return constant, spec.norm, spec.norm == constant

        def bounds() -> Outcome:
            return "[1, 2]", constant, 1 <= constant <= 2

        def extremes() -> Outcome:
            iso_c = self.hyperplane_class is HyperplaneClass.ISO_C
            iso_c0 = self.hyperplane_class is HyperplaneClass.ISO_C0
            ok = (constant == 1) == iso_c and (constant == 2) == iso_c0
            return self.hyperplane_class.value, constant, ok

        def lower_bound() -> Outcome:
            norms = [projection_norm(self.f, z) for z in self._feasible_samples()]
            worst = min(norms, default=constant)
            return f">= {constant}", worst, worst >= constant

        self._run("projection_constant_attained", attained)
        self._run("projection_constant_range", bounds)
        self._run("projection_constant_extremes", extremes)
        self._run("projection_norm_lower_bound", lower_bound)

        if self.hyperplane_class is HyperplaneClass.ISO_C:

            def all_norm_one() -> Outcome:
                norms = [spec.norm for spec in min_projections(self.f)]
                return 1, norms, all(n == 1 for n in norms)

            self._run("norm_one_projections", all_norm_one)

    def _check_oracles(self) -> None:
        spec = self._optimal_projection()
        depth = self._depth(spec.z)

        def witness() -> Outcome:
            value = attained_norm(self.f, spec.z, depth)
            return self._bounded(spec.z, depth, spec.norm, value)

        def witness_random() -> Outcome:
            for z in self._feasible_samples():
                sample_depth = self._depth(z)
                value = attained_norm(self.f, z, sample_depth)
                outcome = self._bounded(
                    z, sample_depth, projection_norm(self.f, z), value
                )
                if not outcome[2]:
                    return outcome
            return "formula", "formula", True

        def brute_force() -> Outcome:
            search_depth = min(depth, MAX_BRUTE_FORCE_DEPTH)
            value = extreme_point_norm_oracle(self.f, spec.z, search_depth)
            return self._bounded(spec.z, search_depth, spec.norm, value)

        def numeric() -> Outcome:
            oracle = self.config.oracle
            estimate = numeric_projection_constant(
                self.f,
                truncation=oracle.truncation,
                max_iterations=oracle.max_iterations,
                tolerance=oracle.tolerance,
            )
            expected = float(projection_constant(self.f))
            ok = abs(estimate.value - expected) <= oracle.agreement
            return f"{expected:.9f}", f"{estimate.value:.9f}", ok

        self._run("attained_norm_witness", witness)
        self._run("attained_norm_witness_random", witness_random)
        self._run("extreme_point_norm_oracle", brute_force)
        self._run("numeric_projection_constant", numeric)

    def _check_implications(self) -> None:
        report = implication_suite(
            self.f,
            sample_size=self.config.verify.sample_size,
            seed=self.config.verify.seed,
        )
        for result in report.checks:
            result.name = f"implication {result.name}"
            self.checks.append(result)

    def _check_isometry_c(self) -> None:
        def round_trip() -> Outcome:
            for _ in range(self.config.verify.sample_size):
                x = random_sequence(self.rng, self.f.support + 2, 6)
                y = embed_c_into_wf(self.f, x)
                if sup_norm(y) != sup_norm(x) or project_wf_to_c(self.f, y) != x:
                    return "isometry", y, False
                w = random_ball_member(self.rng, self.f, self.f.support + 2, 6)
                if embed_c_into_wf(self.f, project_wf_to_c(self.f, w)) != w:
                    return "isometry", w, False
            return "isometry", "isometry", True

        self._run("isometry_c_round_trip", round_trip)

    def _check_isometry_c0(self) -> None:
        def identity() -> Outcome:
            for _ in range(self.config.verify.sample_size):
                x = random_sequence(self.rng, self.f.support + 2, 6)
                x = ConvergentSeq(x.prefix, Fraction(0))
                if iso_c0(self.f, x) != x:
                    return x, iso_c0(self.f, x), False
            return "identity", "identity", True

        self._run("isometry_c0_identity", identity)

    def _check_duality(self) -> None:
        def norms() -> Outcome:
            for _ in range(self.config.verify.sample_size):
                y = random_l1_vector(self.rng, self.f.support + 2, 6)
                if dual_norm(self.f, y) != l1_norm(y):
                    return l1_norm(y), dual_norm(self.f, y), False
            return "l1 norm", "l1 norm", True

        def contraction() -> Outcome:
            for _ in range(self.config.verify.sample_size):
                y = random_l1_vector(self.rng, self.f.support + 2, 6)
                x = random_ball_member(self.rng, self.f, self.f.support + 2, 6)
                value = abs(phi_apply(self.f, y, x))
                if value > l1_norm(y):
                    return f"<= {l1_norm(y)}", value, False
            return "bounded", "bounded", True

        def convergence() -> Outcome:
            for _ in range(self.config.verify.sample_size):
                x = random_ball_member(self.rng, self.f, self.f.support + 2, 6)
                gap = weak_star_convergence_check(self.f, x, len(x.prefix) + 1)
                if gap != 0:
                    return 0, gap, False
            return 0, 0, True

        def round_trip() -> Outcome:
            expected = self.f if self.f.coeff(1) > 0 else -self.f
            result = predual_from_limit(weak_star_limit(self.f).ehat)
            got = result.functional
            return list(map(str, expected.coeffs)), list(map(str, got.coeffs)), (
                got == expected
            )

        self._run("dual_norm_isometry", norms)
        self._run("dual_pairing_bound", contraction)
        self._run("weak_star_convergence", convergence)
        self._run("predual_round_trip", round_trip)

    def _check_measures(self) -> None:
        n = self.f.support
        indices = range(1, 2 * n + 3)

        def variation() -> Outcome:
            for i in indices:
                total = make_mu(self.f, i).total_variation
                if total != 1:
                    return 1, total, False
            return 1, 1, True

        def disjoint() -> Outcome:
            bad = [i for i in indices if not atoms_disjoint(self.f, i)]
            return [], bad, not bad

        functions = [
            random_comega_func(self.rng, n, 4, 6)
            for _ in range(self.config.verify.sample_size)
        ]

        def membership() -> Outcome:
            residuals = [membership_residual(self.f, g) for g in functions]
            nonzero = [r for r in residuals if r != 0]
            return 0, nonzero, not nonzero

        def compatibility() -> Outcome:
            ok = all(mu_limit_compatibility(self.f, g) for g in functions)
            return True, ok, ok

        self._run("mu_total_variation", variation)
        self._run("mu_atoms_disjoint", disjoint)
        self._run("quotient_membership", membership)
        if self.hyperplane_class is HyperplaneClass.DUAL_L1_ONLY:
            self._run("mu_limit_compatibility", compatibility)


def verify(f: L1Functional, config: Config | None = None) -> VerificationReport:
    """Build the verification report of f."""
    return Verifier(f, config or Config()).run()


def sweep(
    functionals: Sequence[L1Functional],
    config: Config | None = None,
    workers: int = 1,
) -> list[VerificationReport]:
    """Verify every functional; reports come back in input order.

    Args:
        functionals: Instances to verify.
        config: Shared configuration.
        workers: Number of processes; 1 runs in the calling process.
    """
    config = config or Config()
    logger = get_logger()
    logger.info(f"Verifying {len(functionals)} functional(s) with {workers} worker(s)")

    if workers <= 1:
        reports = [verify(f, config) for f in functionals]
    else:
        with ProcessPoolExecutor(max_workers=workers) as executor:
            reports = list(
                executor.map(verify, functionals, [config] * len(functionals))
            )

    failed = sum(1 for r in reports if not r.passed)
    if failed:
        logger.warning(f"{failed} of {len(reports)} report(s) have failures")
    else:
        logger.info(f"All {len(reports)} report(s) passed")
    return reports
