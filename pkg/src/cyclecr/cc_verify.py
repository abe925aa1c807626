#!/usr/bin/env python3

import logging
import math
from dataclasses import asdict, dataclass, fields
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from cyclecr.cc_cross_ratio import (
    capacitance,
    cross_ratio,
    point_cross_ratio,
    point_cross_ratio_squared_modulus,
    resolve_orthogonal_limit,
    resolve_tangent_limit,
    steiner_power_cr,
)
from cyclecr.cc_cycles import (
    Cycle,
    PointZ,
    det_fsc,
    from_circle,
    from_point,
    inversive_distance,
    is_isotropic,
    is_line,
    pairing,
    product,
    product_signature,
    steiner_power,
    to_fsc,
)
from cyclecr.cc_exceptions import CycleError
from cyclecr.cc_figures import compare_vertical_axis, harmonic_figure, lobachevsky_distance, moebius_distance
from cyclecr.cc_moebius import MoebiusMatrix, apply_to_cycle, reflect_in_cycle
from cyclecr.cc_numeric import CrossRatioTag, Real, Scalar, Tolerance, euclidean_norm, exact_div

ProductFunc = Callable[[Sequence[Scalar], Sequence[Scalar]], Scalar]


@dataclass(frozen=True)
class InvariantResult:
    name: str
    passed: bool
    # largest deviation observed over all trials
    max_residual: float
    trials: int
    note: str = ""

    def as_row(self) -> Dict[str, object]:
        return asdict(self)


RESULT_FIELDS = tuple(f.name for f in fields(InvariantResult))


class _Suite:
    """Accumulates residuals of one invariant over its trials."""

    def __init__(self, name: str, threshold: float) -> None:
        self.name = name
        self.threshold = threshold
        self.max_residual = 0.0
        self.trials = 0
        self.failures: List[str] = []
        self.notes: List[str] = []

    def record(self, residual: Real, context: str = "") -> None:
        residual = float(residual)
        self.trials += 1
        if not residual <= self.threshold:  # also catches nan
            self.failures.append(f"{context} residual {residual:.3g}".strip())
        if math.isnan(residual) or residual > self.max_residual:
            self.max_residual = residual

    def require(self, is_ok: bool, context: str) -> None:
        if not is_ok:
            self.failures.append(context)

    def error(self, e: Exception, context: str = "") -> None:
        self.trials += 1
        self.failures.append(f"{context} {type(e).__name__}: {e}".strip())

    def result(self) -> InvariantResult:
        passed = not self.failures
        notes = list(self.notes)
        if self.failures:
            notes.insert(0, f"{len(self.failures)} failure(s), first: {self.failures[0]}")
        return InvariantResult(self.name, passed, self.max_residual, self.trials, "; ".join(notes))


def _relative(a: Scalar, b: Scalar) -> float:
    return float(abs(a - b)) / max(float(abs(a)), float(abs(b)), 1.0)


def _projective_residual(u: Sequence[Real], v: Sequence[Real]) -> float:
    """Largest 2x2 minor of the unit-length representatives; 0 iff u and v are proportional."""
    nu, nv = euclidean_norm(u), euclidean_norm(v)
    a = [float(x) / nu for x in u]
    b = [float(x) / nv for x in v]
    return max(abs(a[i] * b[j] - a[j] * b[i]) for i in range(4) for j in range(i + 1, 4))


class Cc_Verifier:
    # name, method, threshold
    SUITES: Tuple[Tuple[str, str, float], ...] = (
        ("product-signature", "check_signature", 0.0),
        ("product-determinant", "check_product_determinant", 1e-9),
        ("flt-invariance", "check_flt_invariance", 1e-6),
        ("squared-modulus", "check_squared_modulus", 1e-9),
        ("capacitance-fixture", "check_capacitance_fixture", 1e-12),
        ("projective-invariance", "check_projective_invariance", 1e-9),
        ("limit-resolutions", "check_limit_resolutions", 0.0),
        ("harmonic-figure", "check_harmonic_figure", 1e-6),
        ("distance", "check_distance", 1e-6),
        ("vertical-axis", "check_vertical_axis", 1e-6),
        ("reflection", "check_reflection", 1e-6),
        ("steiner-power", "check_steiner_power", 1e-6),
    )

    def __init__(
        self,
        seed: int = 0,
        trials: int = 200,
        tol: Optional[Tolerance] = None,
        product_func: ProductFunc = pairing,
    ) -> None:
        if trials < 0:
            raise ValueError(f"trials should be non-negative, got {trials}")
        self.seed = seed
        self.trials = trials
        self.tol = tol
        self.product_func = product_func

    def run(self) -> List[InvariantResult]:
        if self.trials == 0:
            logging.info("[Verify] 0 trials requested, nothing to check")
            return []

        children = np.random.SeedSequence(self.seed).spawn(len(self.SUITES))
        results = []
        for (name, method, threshold), child in zip(self.SUITES, children):
            suite = _Suite(name, threshold)
            logging.debug(f"[Verify] running {name} with {self.trials} trials")
            getattr(self, method)(suite, np.random.default_rng(child))
            result = suite.result()
            logging.debug(f"[Verify] {name}: passed={result.passed} max residual={result.max_residual:.3g}")
            results.append(result)
        return results

    @staticmethod
    def all_passed(results: Sequence[InvariantResult]) -> bool:
        return all(result.passed for result in results)

    # > random inputs

    @staticmethod
    def random_fraction(rng: np.random.Generator, bound: int = 20) -> Fraction:
        return Fraction(int(rng.integers(-bound, bound + 1)), int(rng.integers(1, 10)))

    def random_rational_cycle(self, rng: np.random.Generator) -> Cycle:
        while True:
            values = [self.random_fraction(rng) for _ in range(4)]
            if any(values):
                return Cycle(*values)

    @staticmethod
    def random_cycle(rng: np.random.Generator, min_self_product: float = 0.1) -> Cycle:
        """A float cycle kept away from the isotropic cone."""
        while True:
            C = Cycle.from_vector(rng.normal(size=4))
            if abs(product(C, C)) >= min_self_product * euclidean_norm(C) ** 2:
                return C

    @staticmethod
    def random_circle(rng: np.random.Generator, min_abs_y: float = 0.0) -> Cycle:
        while True:
            x, y = rng.uniform(-2, 2, size=2)
            if abs(y) >= min_abs_y:
                return from_circle(PointZ(float(x), float(y)), float(rng.uniform(0.3, 2.0)))

    @staticmethod
    def random_upper_point(rng: np.random.Generator) -> complex:
        return complex(rng.uniform(-2, 2), rng.uniform(0.2, 3.0))

    @staticmethod
    def random_moebius(rng: np.random.Generator, is_real: bool = False) -> MoebiusMatrix:
        """Entries of moderate size with |det| >= 0.5; real maps also get det > 0."""
        while True:
            entries = rng.normal(size=4)
            if not is_real:
                entries = entries + 1j * rng.normal(size=4)
            a, b, c, d = (complex(x) for x in entries)
            det = a * d - b * c
            if is_real and det.real < 0:
                a, b = -a, -b
                det = -det
            if abs(det) >= 0.5:
                return MoebiusMatrix(a, b, c, d)

    # > suites

    def check_signature(self, suite: _Suite, rng: np.random.Generator) -> None:
        positive, negative = product_signature()
        suite.record(0.0 if (positive, negative) == (1, 3) else 1.0, f"signature ({positive}, {negative})")
        suite.notes.append(f"signature ({positive}, {negative})")

    def check_product_determinant(self, suite: _Suite, rng: np.random.Generator) -> None:
        for i in range(self.trials):
            C = self.random_rational_cycle(rng)
            exact = self.product_func(C, C) - 2 * det_fsc(C)
            suite.require(exact == 0, f"trial {i}: <C, C> != 2·det for {C}")

            mat = to_fsc(C)
            lhs = np.conj(mat) @ mat
            rhs = -float(det_fsc(C)) * np.eye(2)
            suite.record(float(np.max(np.abs(lhs - rhs))) / max(euclidean_norm(C) ** 2, 1.0), f"trial {i}")

    def check_flt_invariance(self, suite: _Suite, rng: np.random.Generator) -> None:
        for i in range(self.trials):
            cycles = [self.random_cycle(rng) for _ in range(4)]
            M = self.random_moebius(rng)
            try:
                images = [apply_to_cycle(M, C, self.tol) for C in cycles]
            except CycleError as e:
                suite.error(e, f"trial {i}")
                continue
            before = cross_ratio(*cycles, tol=self.tol)
            after = cross_ratio(*images, tol=self.tol)
            if before.tag is not after.tag:
                suite.error(ValueError(f"tag {before.tag.value} became {after.tag.value}"), f"trial {i}")
                continue
            if before.is_finite:
                suite.record(_relative(before.value, after.value), f"trial {i}")  # type:ignore
            else:
                suite.record(0.0)

    def _cross_ratio_with_product(self, Cs: Sequence[Cycle]) -> Scalar:
        p = self.product_func
        C1, C2, C3, C4 = Cs
        return exact_div(p(C1, C3) * p(C2, C4), p(C1, C4) * p(C2, C3))

    def check_squared_modulus(self, suite: _Suite, rng: np.random.Generator) -> None:
        for i in range(self.trials):
            # rational configuration, exact comparison
            points: List[PointZ] = []
            while len(points) < 4:
                p = PointZ(self.random_fraction(rng, 9), self.random_fraction(rng, 9))
                if p not in points:
                    points.append(p)
            oracle = point_cross_ratio_squared_modulus(*points)
            try:
                value = self._cross_ratio_with_product([from_point(p) for p in points])
            except ZeroDivisionError as e:
                suite.error(e, f"rational trial {i}")
                continue
            suite.record(0.0 if value == oracle else max(_relative(value, oracle), 1.0), f"rational trial {i}")

            # float configuration
            zs = [complex(*rng.uniform(-3, 3, size=2)) for _ in range(4)]
            try:
                float_oracle = abs(point_cross_ratio(*zs)) ** 2
                value = self._cross_ratio_with_product([from_point(PointZ.from_complex(z)) for z in zs])
            except (CycleError, ZeroDivisionError) as e:
                suite.error(e, f"float trial {i}")
                continue
            suite.record(_relative(value, float_oracle), f"float trial {i}")

    def check_capacitance_fixture(self, suite: _Suite, rng: np.random.Generator) -> None:
        unit = from_circle(PointZ(0, 0), 1)

        def classical(d: float, r: float, R: float) -> float:
            return ((r * r + R * R - d * d) / (2 * r * R)) ** 2

        fixtures = (
            ("concentric r=1, R=2", from_circle(PointZ(0, 0), 2), Fraction(25, 16), classical(0, 1, 2)),
            ("external tangency", from_circle(PointZ(2, 0), 1), 1, classical(2, 1, 1)),
            # the oracle of a line is (distance from the centre / r)^2
            ("diameter line", Cycle(0, 1, 0, 0), 0, 0.0),
        )
        for label, C1, expected, oracle in fixtures:
            value = capacitance(unit, C1, self.tol)
            if not value.is_finite:
                suite.error(ValueError(f"capacitance is {value}"), label)
                continue
            exact = value.value  # type:ignore
            suite.record(max(abs(exact - expected), abs(float(exact) - oracle)), label)

    def check_projective_invariance(self, suite: _Suite, rng: np.random.Generator) -> None:
        for i in range(self.trials):
            cycles = [self.random_rational_cycle(rng) for _ in range(4)]
            scaled = []
            for C in cycles:
                factor = Fraction(0)
                while factor == 0:
                    factor = self.random_fraction(rng)
                scaled.append(C.scaled(factor))
            before, after = cross_ratio(*cycles, tol=self.tol), cross_ratio(*scaled, tol=self.tol)
            if before != after:
                suite.error(ValueError(f"{before} became {after}"), f"trial {i}")
            else:
                suite.record(0.0)

    def _rational_cycle_through(self, rng: np.random.Generator, x0: Fraction, y0: Fraction) -> Cycle:
        """A non-isotropic rational cycle passing the point (x0, y0)."""
        while True:
            if rng.uniform() < 0.2:
                l, n = self.random_fraction(rng), self.random_fraction(rng)  # noqa: E741
                if l == 0 and n == 0:
                    continue
                C = Cycle(0, l, n, 2 * (l * x0 + n * y0))
            else:
                a, b = self.random_fraction(rng), self.random_fraction(rng)
                C = Cycle(1, a, b, 2 * a * x0 + 2 * b * y0 - x0 * x0 - y0 * y0)
            if product(C, C) != 0:
                return C

    def check_limit_resolutions(self, suite: _Suite, rng: np.random.Generator) -> None:
        for i in range(self.trials):
            x0, y0 = self.random_fraction(rng), self.random_fraction(rng)
            C = self._rational_cycle_through(rng, x0, y0)
            try:
                orthogonal = resolve_orthogonal_limit(C, PointZ(x0, y0), self.tol)
                tangent = resolve_tangent_limit(from_point(PointZ(x0, y0)), C, self.tol)
            except CycleError as e:
                suite.error(e, f"trial {i}")
                continue
            if orthogonal.tag is not CrossRatioTag.FINITE:
                suite.error(ValueError(f"orthogonal limit is {orthogonal}"), f"trial {i}")
                continue
            suite.record(abs(orthogonal.value), f"trial {i} orthogonal")  # type:ignore
            suite.record(abs(tangent - 1), f"trial {i} tangent")

    def check_harmonic_figure(self, suite: _Suite, rng: np.random.Generator) -> None:
        for i in range(self.trials):
            mirror, C1 = self.random_circle(rng), self.random_circle(rng)
            try:
                report = harmonic_figure(mirror, C1, rng, tol=self.tol)
            except CycleError as e:
                suite.error(e, f"trial {i}")
                continue
            suite.record(abs(report.cross_ratio - 1), f"trial {i}")

    def check_distance(self, suite: _Suite, rng: np.random.Generator) -> None:
        try:
            report = moebius_distance(from_point(PointZ(0, 1)), from_point(PointZ(0, 2)), self.tol)
            suite.record(abs(report.abs_distance - math.log(2)), "points i, 2i")
        except CycleError as e:
            suite.error(e, "points i, 2i")

        for i in range(self.trials):
            z1, z2 = self.random_upper_point(rng), self.random_upper_point(rng)
            Z1, Z2 = (from_point(PointZ.from_complex(z)) for z in (z1, z2))
            M = self.random_moebius(rng, is_real=True)
            try:
                d = moebius_distance(Z1, Z2, self.tol)
                suite.record(_relative(d.abs_distance, lobachevsky_distance(z1, z2)), f"trial {i} metric")

                W1, W2 = (apply_to_cycle(M, Z, self.tol) for Z in (Z1, Z2))
                moved = moebius_distance(W1, W2, self.tol)
                suite.record(abs(moved.abs_distance - d.abs_distance), f"trial {i} invariance")

                # a third point on the geodesic through z1 and z2
                z3 = self._point_on_geodesic(d.C, rng)
                if z3 is not None:
                    Z3 = from_point(z3)
                    d12 = d.distance
                    d23 = moebius_distance(Z2, Z3, self.tol).distance
                    d13 = moebius_distance(Z1, Z3, self.tol).distance
                    suite.record(abs(d13 - d12 - d23), f"trial {i} additivity")
            except CycleError as e:
                suite.error(e, f"trial {i}")

    def _point_on_geodesic(self, geodesic: Cycle, rng: np.random.Generator) -> Optional[PointZ]:
        """A random upper half-plane point of a geodesic, None when it barely rises above the real line."""
        if is_line(geodesic, self.tol):
            # vertical line l·x = m/2
            return PointZ(float(geodesic.m) / (2 * float(geodesic.l)), float(rng.uniform(0.2, 3.0)))
        cx = float(geodesic.l) / float(geodesic.k)
        r2 = cx * cx - float(geodesic.m) / float(geodesic.k)
        if r2 <= 0.04:
            return None
        theta = rng.uniform(0.15, math.pi - 0.15)
        r = math.sqrt(r2)
        return PointZ(cx + r * math.cos(theta), r * math.sin(theta))

    def check_vertical_axis(self, suite: _Suite, rng: np.random.Generator) -> None:
        relationship = "verbatim = 2·d + 2·log(m2/k2)"
        for i in range(self.trials):
            a1, a2 = rng.uniform(0.5, 5.0, size=2)
            r1, r2 = rng.uniform(0.0, 0.9 * a1), rng.uniform(0.0, 0.9 * a2)
            C1 = from_circle(PointZ(0.0, float(a1)), float(r1))
            C2 = from_circle(PointZ(0.0, float(a2)), float(r2))
            if abs(float(C1.m) - float(C2.m)) < 1e-3:
                continue
            try:
                comparison = compare_vertical_axis(C1, C2, self.tol)
            except CycleError as e:
                suite.error(e, f"trial {i}")
                continue
            suite.record(abs(comparison.difference - comparison.predicted_difference), f"trial {i}")
        suite.notes.append(f"measured: {relationship}")

    def check_reflection(self, suite: _Suite, rng: np.random.Generator) -> None:
        for i in range(self.trials):
            C, X, Y = (self.random_cycle(rng) for _ in range(3))
            try:
                X1, Y1 = reflect_in_cycle(C, X, self.tol), reflect_in_cycle(C, Y, self.tol)
                X2 = reflect_in_cycle(C, X1, self.tol)
                suite.record(_projective_residual(X2, X), f"trial {i} involution")
                before, after = inversive_distance(X, Y, self.tol), inversive_distance(X1, Y1, self.tol)
            except CycleError as e:
                suite.error(e, f"trial {i}")
                continue
            suite.require(before.is_imaginary == after.is_imaginary, f"trial {i}: imaginary flag changed")
            suite.record(_relative(before.value, after.value), f"trial {i} inversive distance")

    def check_steiner_power(self, suite: _Suite, rng: np.random.Generator) -> None:
        for i in range(self.trials):
            C, C1 = self.random_circle(rng, 0.2), self.random_circle(rng, 0.2)
            if is_isotropic(C, self.tol) or is_isotropic(C1, self.tol):
                continue
            try:
                cr = steiner_power_cr(C, C1, self.tol)
                power = steiner_power(C, C1, self.tol)
                y, y1 = float(C.n / C.k), float(C1.n / C1.k)
                if y * y1 < 0:
                    lhs, rhs = cr * 2 * abs(y * y1), power
                else:
                    root = math.sqrt(float(product(C, C)) * float(product(C1, C1)))
                    lhs, rhs = cr * 2 * y * y1, 2 * root - power
                suite.record(_relative(lhs, rhs), f"trial {i} relation")

                M = self.random_moebius(rng, is_real=True)
                D, D1 = (apply_to_cycle(M, c, self.tol) for c in (C, C1))
                moved = steiner_power_cr(D, D1, self.tol)
                suite.record(_relative(moved, cr), f"trial {i} invariance")
            except CycleError as e:
                suite.error(e, f"trial {i}")
