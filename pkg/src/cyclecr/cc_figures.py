#!/usr/bin/env python3

import cmath
import logging
import math
from dataclasses import dataclass
from typing import Iterator, List, Optional, Sequence, Tuple, Union

import numpy as np

from cyclecr.cc_cycles import (
    C_REAL,
    Cycle,
    PointZ,
    functional,
    is_isotropic,
    is_orthogonal,
    negligible_product,
    pairing,
)
from cyclecr.cc_exceptions import (
    ConstructionFailedError,
    DegenerateConstraintsError,
    DegeneratePencilError,
    DegenerateRankError,
    LogOfZeroError,
    PreconditionError,
    ZeroVectorError,
)
from cyclecr.cc_moebius import reflect_in_cycle
from cyclecr.cc_numeric import (
    CrossRatioTag,
    Real,
    Tolerance,
    approx_eq,
    binary_quadratic_roots,
    euclidean_norm,
    format_number,
    is_zero,
    nullspace,
    proj_eq,
    resolve_tolerance,
)
from cyclecr.cc_settings.cc_settings import Cc_Settings


@dataclass(frozen=True)
class Pencil:
    """The projective line spanned by A and B, parametrised as (1 - t)·A + t·B."""

    A: Cycle
    B: Cycle

    def __post_init__(self) -> None:
        if proj_eq(self.A, self.B):
            raise DegeneratePencilError(f"{self.A} and {self.B} span a single cycle.")


def pencil_at(P: Pencil, t: Real) -> Cycle:
    try:
        return Cycle(*((1 - t) * a + t * b for a, b in zip(P.A, P.B)))
    except ZeroVectorError as e:
        raise ZeroVectorError(f"The pencil through {P.A} and {P.B} vanishes at t={t}.") from e


@dataclass(frozen=True)
class ComplexCycle:
    """A cycle with complex coordinates, paired bilinearly without conjugation."""

    k: complex
    l: complex  # noqa: E741
    n: complex
    m: complex

    def __post_init__(self) -> None:
        if all(x == 0 for x in self):
            raise ZeroVectorError("(0, 0, 0, 0) is not a cycle.")

    @classmethod
    def from_vector(cls, v: Sequence[complex]) -> "ComplexCycle":
        return cls(*(complex(x) for x in v))

    @classmethod
    def from_cycle(cls, C: Cycle) -> "ComplexCycle":
        return cls.from_vector([complex(float(x)) for x in C])

    def __iter__(self) -> Iterator[complex]:
        return iter((self.k, self.l, self.n, self.m))

    def __len__(self) -> int:
        return 4

    def __getitem__(self, idx: int) -> complex:
        return (self.k, self.l, self.n, self.m)[idx]

    def is_real(self, tol: Optional[Tolerance] = None) -> bool:
        scale = euclidean_norm(self)
        return all(is_zero(x.imag, tol, scale) for x in self)

    def to_cycle(self, tol: Optional[Tolerance] = None) -> Cycle:
        if not self.is_real(tol):
            raise ValueError(f"{self} has non-real coordinates.")
        return Cycle(*(x.real for x in self))

    def canonical(self, tol: Optional[Tolerance] = None) -> "ComplexCycle":
        """Scaled to k = 1, or to a unit largest coordinate when k vanishes."""
        if not is_zero(self.k, tol, euclidean_norm(self)):
            pivot = self.k
        else:
            pivot = max(self, key=abs)
        return ComplexCycle(*(x / pivot for x in self))

    def is_infinite(self, tol: Optional[Tolerance] = None) -> bool:
        return is_zero(self.k, tol, euclidean_norm(self))

    def point(self, tol: Optional[Tolerance] = None) -> PointZ:
        """The point of a real zero-radius cycle."""
        if self.is_infinite(tol):
            return PointZ.infinity()
        c = self.to_cycle(tol)
        return PointZ(c.l / c.k, c.n / c.k)

    def __str__(self) -> str:
        return "(" + ", ".join(format_number(x) for x in self) + ")"


CycleLike = Union[Cycle, ComplexCycle]


def orthogonal_pencil(C: Cycle, C1: Cycle, tol: Optional[Tolerance] = None) -> Pencil:
    """All cycles orthogonal to both C and C1."""
    basis = nullspace([functional(C), functional(C1)], tol)
    if len(basis) != 2:
        raise DegenerateConstraintsError(
            f"Orthogonality to {C} and {C1} has rank {4 - len(basis)}, expected 2."
        )
    return Pencil(Cycle.from_vector(basis[0]), Cycle.from_vector(basis[1]))


def orthogonal_to_three(C1: Cycle, C2: Cycle, C3: Cycle, tol: Optional[Tolerance] = None) -> Cycle:
    """The cycle orthogonal to C1, C2 and C3; its radius may be imaginary."""
    basis = nullspace([functional(C1), functional(C2), functional(C3)], tol)
    if len(basis) != 1:
        raise DegenerateRankError(
            f"Orthogonality to {C1}, {C2} and {C3} has rank {4 - len(basis)}, expected 3.",
            basis=[Cycle.from_vector(v) for v in basis],
        )
    return Cycle.from_vector(basis[0])


def _ordered(
    z1: ComplexCycle, z2: ComplexCycle, tol: Optional[Tolerance]
) -> Tuple[ComplexCycle, ComplexCycle]:
    """
    Order a pair of point cycles independent of how the pencil was
    parametrised: real points by (at infinity, l, n) with infinity last; in a
    conjugate pair the one whose first non-real coordinate among l, n, m has a
    positive imaginary part comes first.
    """
    if z1.is_real(tol) and z2.is_real(tol):
        if z1.is_infinite(tol) != z2.is_infinite(tol):
            return (z2, z1) if z1.is_infinite(tol) else (z1, z2)
        scale = max(euclidean_norm(z1), euclidean_norm(z2))
        for a, b in ((z1.l.real, z2.l.real), (z1.n.real, z2.n.real)):
            if not approx_eq(a, b, tol, scale):
                return (z1, z2) if a < b else (z2, z1)
        return z1, z2

    scale = euclidean_norm(z1)
    for x in (z1.l, z1.n, z1.m):
        if not is_zero(x.imag, tol, scale):
            return (z1, z2) if x.imag > 0 else (z2, z1)
    return z1, z2


def intersection_points(
    C: Cycle, Co: Cycle, tol: Optional[Tolerance] = None
) -> Tuple[ComplexCycle, ComplexCycle]:
    """
    The two zero-radius cycles orthogonal to both C and Co, i.e. their common
    points. They are complex conjugate when the cycles do not meet and equal
    when the cycles touch.
    """
    basis = nullspace([functional(C), functional(Co)], tol)
    if len(basis) != 2:
        raise DegenerateConstraintsError(
            f"Orthogonality to {C} and {Co} has rank {4 - len(basis)}, expected 2."
        )
    A, B = basis
    roots = binary_quadratic_roots(pairing(A, A), 2 * pairing(A, B), pairing(B, B), tol)
    z1, z2 = (
        ComplexCycle.from_vector(u * A + v * B).canonical(tol) for u, v in roots.roots  # type:ignore
    )
    logging.debug(f"[Figures] {C} meets {Co}: {roots.kind.value} roots {z1}, {z2}")
    return _ordered(z1, z2, tol)


def complex_cross_ratio(
    C1: CycleLike, C2: CycleLike, C3: CycleLike, C4: CycleLike, tol: Optional[Tolerance] = None
) -> Tuple[CrossRatioTag, Optional[complex]]:
    """The cycles cross ratio with the bilinear complex pairing."""
    p13, p24 = pairing(C1, C3), pairing(C2, C4)
    p14, p23 = pairing(C1, C4), pairing(C2, C3)
    is_num_zero = negligible_product(p13, C1, C3, tol) or negligible_product(p24, C2, C4, tol)
    is_den_zero = negligible_product(p14, C1, C4, tol) or negligible_product(p23, C2, C3, tol)
    if is_den_zero and is_num_zero:
        return CrossRatioTag.INDETERMINATE, None
    if is_den_zero:
        return CrossRatioTag.INFINITE, None
    if is_num_zero:
        return CrossRatioTag.FINITE, 0j
    return CrossRatioTag.FINITE, complex(p13 * p24 / (p14 * p23))


@dataclass(frozen=True)
class HarmonicReport:
    mirror: Cycle
    C1: Cycle
    C2: Cycle
    Co: Cycle
    Z1: ComplexCycle
    Z2: ComplexCycle
    t: float
    attempts: int
    cross_ratio: complex
    degenerate: Optional[str] = None

    def labelled_cycles(self) -> List[Tuple[str, CycleLike]]:
        return [
            ("C", self.mirror),
            ("C1", self.C1),
            ("C2", self.C2),
            ("Co", self.Co),
            ("Z1", self.Z1),
            ("Z2", self.Z2),
        ]


def harmonic_figure(
    C: Cycle,
    C1: Cycle,
    rng: Optional[np.random.Generator] = None,
    *,
    max_retries: Optional[int] = None,
    tol: Optional[Tolerance] = None,
) -> HarmonicReport:
    """
    Reflect C1 in the mirror C, take a cycle Co orthogonal to C and C1 (hence
    to the reflection C2) and intersect it with C at Z1, Z2. The cross ratio
    [C1, C2; Z1, Z2] is 1 for every admissible Co.

    :param rng: draws the pencil parameter of Co; seeded from the
        "Random/seed" setting when omitted
    """
    if is_isotropic(C, tol):
        raise ConstructionFailedError("mirror", f"{C} is isotropic")
    if rng is None:
        rng = np.random.default_rng(int(Cc_Settings.value("Random/seed")))
    if max_retries is None:
        max_retries = int(Cc_Settings.value("Figure/max-retries"))

    C2 = reflect_in_cycle(C, C1, tol)
    degenerate = None
    if proj_eq(C2, C1, tol):
        degenerate = "C2 ≡ C1"
        logging.info(f"[Figures] {C1} is orthogonal to the mirror, its reflection is itself")

    try:
        pencil = orthogonal_pencil(C, C1, tol)
    except (DegenerateConstraintsError, DegeneratePencilError) as e:
        raise ConstructionFailedError("orthogonal pencil", str(e)) from e

    for attempt in range(1, max_retries + 1):
        t = float(rng.uniform(0.0, 1.0))
        Co = pencil_at(pencil, t)
        if is_isotropic(Co, tol):
            logging.debug(f"[Figures] attempt {attempt}: Co={Co} is isotropic, redrawing")
            continue
        if not is_orthogonal(Co, C2, tol):
            raise ConstructionFailedError("reflection", f"Co={Co} is not orthogonal to C2={C2}")
        try:
            Z1, Z2 = intersection_points(C, Co, tol)
        except DegenerateConstraintsError as e:
            logging.debug(f"[Figures] attempt {attempt}: {e}")
            continue
        tag, ratio = complex_cross_ratio(C1, C2, Z1, Z2, tol)
        if tag is not CrossRatioTag.FINITE or ratio == 0:
            logging.debug(f"[Figures] attempt {attempt}: cross ratio is {tag.value}, redrawing")
            continue
        return HarmonicReport(C, C1, C2, Co, Z1, Z2, t, attempt, ratio, degenerate)  # type:ignore

    raise ConstructionFailedError("orthogonal cycle", f"no generic Co found in {max_retries} attempts")


@dataclass(frozen=True)
class DistanceReport:
    C1: Cycle
    C2: Cycle
    # common orthogonal cycle of C1, C2 and the real line
    C: Cycle
    Z1: ComplexCycle
    Z2: ComplexCycle
    cross_ratio: complex
    # ½ of the principal logarithm of the cross ratio
    log_value: complex
    distance: float
    abs_distance: float
    is_real: bool

    def labelled_cycles(self) -> List[Tuple[str, CycleLike]]:
        return [
            ("C1", self.C1),
            ("C2", self.C2),
            ("R", C_REAL),
            ("C", self.C),
            ("Z1", self.Z1),
            ("Z2", self.Z2),
        ]


def moebius_distance(C1: Cycle, C2: Cycle, tol: Optional[Tolerance] = None) -> DistanceReport:
    """
    ½·log [C1, C2; Z1, Z2] where Z1, Z2 are the points the real line shares
    with the cycle orthogonal to C1, C2 and the real line. On zero-radius
    cycles of the upper half-plane this is the hyperbolic distance up to sign.
    """
    tol = resolve_tolerance(tol)
    if proj_eq(C1, C2, tol):
        raise PreconditionError("precondition: the two cycles coincide")
    for cycle in (C1, C2):
        if proj_eq(cycle, C_REAL, tol):
            raise PreconditionError("precondition: cycle equals real line")

    try:
        C = orthogonal_to_three(C1, C2, C_REAL, tol)
    except DegenerateRankError as e:
        raise ConstructionFailedError("common orthogonal cycle", str(e)) from e
    if is_isotropic(C, tol):
        raise ConstructionFailedError("common orthogonal cycle", f"{C} is isotropic")

    try:
        Z1, Z2 = intersection_points(C, C_REAL, tol)
    except DegenerateConstraintsError as e:
        raise ConstructionFailedError("intersection points", str(e)) from e

    tag, ratio = complex_cross_ratio(C1, C2, Z1, Z2, tol)
    if tag is not CrossRatioTag.FINITE or ratio == 0:
        raise LogOfZeroError(f"[C1, C2; Z1, Z2] is {'0' if ratio == 0 else tag.value}.")

    log_value = 0.5 * cmath.log(ratio)  # type:ignore
    is_real = is_zero(ratio.imag, tol, abs(ratio)) and ratio.real > 0  # type:ignore
    if not is_real:
        logging.info(f"[Figures] cross ratio {format_number(ratio)} is not real and positive")  # type:ignore
    return DistanceReport(
        C1, C2, C, Z1, Z2, ratio, log_value, log_value.real, abs(log_value.real), is_real  # type:ignore
    )


def lobachevsky_distance(z1: complex, z2: complex) -> float:
    """arccosh(1 + |z1 - z2|^2 / (2·y1·y2)) on the upper half-plane."""
    if z1.imag <= 0 or z2.imag <= 0:
        raise PreconditionError("precondition: points must lie in the upper half-plane")
    return math.acosh(1 + abs(z1 - z2) ** 2 / (2 * z1.imag * z2.imag))


def _log_ratio(num: Real, den: Real, name: str) -> float:
    if den == 0 or num / den <= 0:
        raise LogOfZeroError(f"log({name}) is undefined for {format_number(num)}/{format_number(den)}.")
    return math.log(num / den)


def vertical_axis_formula(C1: Cycle, C2: Cycle) -> float:
    """log(m1/k1) - log(k2/m2), taken literally."""
    return _log_ratio(C1.m, C1.k, "m1/k1") - _log_ratio(C2.k, C2.m, "k2/m2")


@dataclass(frozen=True)
class VerticalAxisComparison:
    construction: float
    verbatim: float
    # verbatim - 2·construction
    difference: float
    # 2·log(m2/k2)
    predicted_difference: float

    def holds(self, atol: float = 1e-6) -> bool:
        return abs(self.difference - self.predicted_difference) <= atol


def compare_vertical_axis(C1: Cycle, C2: Cycle, tol: Optional[Tolerance] = None) -> VerticalAxisComparison:
    """
    For cycles centred on the imaginary axis the construction gives
    2·d = log(m1/k1) - log(m2/k2), so the literal formula exceeds 2·d by
    2·log(m2/k2).
    """
    report = moebius_distance(C1, C2, tol)
    verbatim = vertical_axis_formula(C1, C2)
    return VerticalAxisComparison(
        construction=report.distance,
        verbatim=verbatim,
        difference=verbatim - 2 * report.distance,
        predicted_difference=2 * _log_ratio(C2.m, C2.k, "m2/k2"),
    )
