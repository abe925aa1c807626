#!/usr/bin/env python3

import math
from dataclasses import dataclass
from typing import Iterator, Optional, Sequence, Tuple

import numpy as np

from cyclecr.cc_exceptions import (
    DegenerateLineError,
    IsLineError,
    IsotropicCycleError,
    NegativeRadicandError,
    NotAPointError,
    StructureLostError,
    ZeroVectorError,
)
from cyclecr.cc_numeric import (
    Real,
    Scalar,
    Tolerance,
    approx_eq,
    euclidean_norm,
    exact_div,
    format_number,
    is_zero,
    proj_eq,
    resolve_tolerance,
)


@dataclass(frozen=True)
class PointZ:
    """A point z = x + iy of the plane, or the point at infinity."""

    x: Real = 0
    y: Real = 0
    is_infinite: bool = False

    @classmethod
    def infinity(cls) -> "PointZ":
        return cls(0, 0, True)

    @classmethod
    def from_complex(cls, z: complex) -> "PointZ":
        return cls(z.real, z.imag)

    def to_complex(self) -> complex:
        if self.is_infinite:
            raise ValueError("The point at infinity has no complex coordinate.")
        return complex(float(self.x), float(self.y))

    def __str__(self) -> str:
        if self.is_infinite:
            return "inf"
        return f"({format_number(self.x)}, {format_number(self.y)})"


@dataclass(frozen=True)
class Cycle:
    """
    Homogeneous tetracyclic coordinates (k, l, n, m) of the cycle
    k(x^2 + y^2) - 2lx - 2ny + m = 0. Any nonzero multiple describes the same
    point set; the sign of the vector carries the orientation.
    """

    k: Real
    l: Real  # noqa: E741
    n: Real
    m: Real

    def __post_init__(self) -> None:
        if self.k == 0 and self.l == 0 and self.n == 0 and self.m == 0:
            raise ZeroVectorError("(0, 0, 0, 0) is not a cycle.")

    @classmethod
    def from_vector(cls, v: Sequence[Real]) -> "Cycle":
        if len(v) != 4:
            raise ValueError(f"A cycle has 4 coordinates, got {len(v)}.")
        return cls(*(float(x) for x in v))

    def __iter__(self) -> Iterator[Real]:
        return iter((self.k, self.l, self.n, self.m))

    def __len__(self) -> int:
        return 4

    def __getitem__(self, idx: int) -> Real:
        return (self.k, self.l, self.n, self.m)[idx]

    def as_tuple(self) -> Tuple[Real, Real, Real, Real]:
        return (self.k, self.l, self.n, self.m)

    @property
    def L(self) -> complex:
        return complex(float(self.l), float(self.n))

    def scaled(self, factor: Real) -> "Cycle":
        return Cycle(factor * self.k, factor * self.l, factor * self.n, factor * self.m)

    def __add__(self, other: "Cycle") -> "Cycle":
        return Cycle(*(a + b for a, b in zip(self, other)))

    def __sub__(self, other: "Cycle") -> "Cycle":
        return Cycle(*(a - b for a, b in zip(self, other)))

    def __mul__(self, factor: Real) -> "Cycle":
        return self.scaled(factor)

    __rmul__ = __mul__

    def __neg__(self) -> "Cycle":
        return self.scaled(-1)

    def __str__(self) -> str:
        return "(" + ", ".join(format_number(x) for x in self) + ")"


C_INF = Cycle(0, 0, 0, 1)
# positive n keeps the upper half-plane on the positive side; the matrix
#  [[i, 0], [0, i]] decodes to the opposite orientation (0, 0, -1, 0)
C_REAL = Cycle(0, 0, 1, 0)


def from_circle(center: PointZ, r: Real) -> Cycle:
    if center.is_infinite:
        raise ValueError("A circle needs a finite center.")
    if r < 0:
        raise ValueError(f"Radius should be non-negative, got {r}.")
    x, y = center.x, center.y
    return Cycle(1, x, y, x * x + y * y - r * r)


def from_line(l: Real, n: Real, half_m: Real) -> Cycle:  # noqa: E741
    """The line l·x + n·y = half_m."""
    if l == 0 and n == 0:
        raise DegenerateLineError("A line needs (l, n) != (0, 0).")
    return Cycle(0, l, n, 2 * half_m)


def from_point(z: PointZ) -> Cycle:
    if z.is_infinite:
        return C_INF
    return Cycle(1, z.x, z.y, z.x * z.x + z.y * z.y)


def pairing(u: Sequence[Scalar], v: Sequence[Scalar]) -> Scalar:
    """
    The bilinear form k·m1 + k1·m - 2·l·l1 - 2·n·n1 on 4-sequences. No
    coefficient is conjugated, so complex cycles pair bilinearly.
    """
    return u[0] * v[3] + v[0] * u[3] - 2 * u[1] * v[1] - 2 * u[2] * v[2]


def product(C: Cycle, C1: Cycle) -> Real:
    return pairing(C, C1)


def functional(C: Cycle) -> Tuple[Real, Real, Real, Real]:
    """Coefficients f with f·X = <X, C>."""
    return (C.m, -2 * C.l, -2 * C.n, C.k)


def negligible_product(
    value: Scalar, C: Sequence[Scalar], C1: Sequence[Scalar], tol: Optional[Tolerance] = None
) -> bool:
    """Whether a product of C and C1 vanishes once both are scaled to unit length."""
    return is_zero(value, tol, euclidean_norm(C) * euclidean_norm(C1))


def det_fsc(C: Cycle) -> Real:
    return C.m * C.k - C.l * C.l - C.n * C.n


def to_fsc(C: Cycle) -> np.ndarray:
    L = C.L
    return np.array([[L.conjugate(), -float(C.m)], [float(C.k), -L]], dtype=complex)


def from_fsc(matrix: np.ndarray, tol: Optional[Tolerance] = None) -> Cycle:
    """
    Read (k, L, m) back from [[conj(L), -m], [k, -L]]. The two diagonal slots
    are averaged; off-diagonal imaginary parts or a diagonal mismatch beyond
    tolerance raise StructureLostError.
    """
    tol = resolve_tolerance(tol)
    mat = np.asarray(matrix, dtype=complex)
    scale = float(np.max(np.abs(mat)))
    if scale == 0:
        raise ZeroVectorError("The zero matrix encodes no cycle.")

    threshold = tol.eps_abs * max(scale, 1.0)
    k, m = mat[1, 0], -mat[0, 1]
    L_top, L_bottom = mat[0, 0].conjugate(), -mat[1, 1]
    if abs(k.imag) > threshold or abs(m.imag) > threshold or abs(L_top - L_bottom) > threshold:
        raise StructureLostError(f"Matrix is not of the form [[conj(L), -m], [k, -L]]:\n{mat}")
    L = (L_top + L_bottom) / 2
    return Cycle(float(k.real), float(L.real), float(L.imag), float(m.real))


def fsc_product(C: Cycle, C1: Cycle) -> float:
    """-tr(C·conj(C1)) evaluated on the matrices."""
    return float(-np.trace(to_fsc(C) @ np.conj(to_fsc(C1))).real)


def radius_squared(C: Cycle, tol: Optional[Tolerance] = None) -> Real:
    """Negative for circles with imaginary radius."""
    if is_line(C, tol):
        raise IsLineError(f"{C} is a straight line.")
    return exact_div(C.l * C.l + C.n * C.n - C.k * C.m, C.k * C.k)


def center(C: Cycle, tol: Optional[Tolerance] = None) -> PointZ:
    if is_line(C, tol):
        raise IsLineError(f"{C} is a straight line.")
    return PointZ(exact_div(C.l, C.k), exact_div(C.n, C.k))


def is_line(C: Cycle, tol: Optional[Tolerance] = None) -> bool:
    return negligible_product(product(C, C_INF), C, C_INF, tol)


def is_isotropic(C: Cycle, tol: Optional[Tolerance] = None) -> bool:
    """Zero-radius cycles, infinity included."""
    return negligible_product(product(C, C), C, C, tol)


def is_point(C: Cycle, tol: Optional[Tolerance] = None) -> bool:
    return is_isotropic(C, tol) and not proj_eq(C, C_INF, tol)


def passes_through(C: Cycle, Z: Cycle, tol: Optional[Tolerance] = None) -> bool:
    if not is_point(Z, tol):
        raise NotAPointError(f"{Z} is not a zero-radius cycle.")
    return negligible_product(product(C, Z), C, Z, tol)


def is_orthogonal(C: Cycle, C1: Cycle, tol: Optional[Tolerance] = None) -> bool:
    return negligible_product(product(C, C1), C, C1, tol)


def is_lobachevsky_line(C: Cycle, tol: Optional[Tolerance] = None) -> bool:
    return is_orthogonal(C, C_REAL, tol)


def is_tangent(C: Cycle, C1: Cycle, tol: Optional[Tolerance] = None) -> bool:
    p = product(C, C1)
    scale = (euclidean_norm(C) * euclidean_norm(C1)) ** 2
    return approx_eq(p * p, product(C, C) * product(C1, C1), tol, scale)


@dataclass(frozen=True)
class InversiveDistance:
    """
    <C, C1> / sqrt(|<C, C><C1, C1>|). When the radicand is negative the
    inversive distance is -i·value and is_imaginary is set.
    """

    value: float
    is_imaginary: bool = False

    @property
    def squared(self) -> float:
        return -self.value * self.value if self.is_imaginary else self.value * self.value

    def as_complex(self) -> complex:
        return complex(0, -self.value) if self.is_imaginary else complex(self.value)


def inversive_distance(C: Cycle, C1: Cycle, tol: Optional[Tolerance] = None) -> InversiveDistance:
    """
    For two real circles with k > 0 this is -(r^2 + R^2 - d^2)/(2rR), the
    negative of the classical inversive distance, since <C, C1> = d^2 - r^2 - R^2
    at k = 1.
    """
    for cycle in (C, C1):
        if is_isotropic(cycle, tol):
            raise IsotropicCycleError(f"{cycle} is isotropic.")
    radicand = product(C, C) * product(C1, C1)
    value = float(product(C, C1)) / math.sqrt(abs(float(radicand)))
    return InversiveDistance(value, radicand < 0)


def normalize_k(C: Cycle, tol: Optional[Tolerance] = None) -> Cycle:
    if is_line(C, tol):
        raise IsLineError(f"{C} is a straight line and cannot be scaled to k=1.")
    return C.scaled(exact_div(1, C.k))


def normalize_det(C: Cycle, tol: Optional[Tolerance] = None) -> Cycle:
    """Scale by a positive factor so that <C, C> = ±1."""
    if is_isotropic(C, tol):
        raise IsotropicCycleError(f"{C} is isotropic and cannot be scaled to <C, C> = ±1.")
    return C.scaled(1 / math.sqrt(abs(float(product(C, C)))))


def steiner_power(C: Cycle, C1: Cycle, tol: Optional[Tolerance] = None) -> float:
    """<C, C1> + sqrt(<C, C><C1, C1>) for k = 1 representatives."""
    c, c1 = normalize_k(C, tol), normalize_k(C1, tol)
    radicand = product(c, c) * product(c1, c1)
    if radicand < 0 and not is_zero(radicand, tol):
        raise NegativeRadicandError(f"<C, C><C1, C1> = {format_number(radicand)} is negative.")
    return float(product(c, c1)) + math.sqrt(max(float(radicand), 0.0))


BASIS_CYCLES = (Cycle(1, 0, 0, 0), Cycle(0, 1, 0, 0), Cycle(0, 0, 1, 0), Cycle(0, 0, 0, 1))


def gram_matrix() -> np.ndarray:
    return np.array([[float(product(a, b)) for b in BASIS_CYCLES] for a in BASIS_CYCLES])


def product_signature() -> Tuple[int, int]:
    """(number of positive, number of negative) eigenvalues of the cycle product."""
    eigenvalues = np.linalg.eigvalsh(gram_matrix())
    return int(np.sum(eigenvalues > 0)), int(np.sum(eigenvalues < 0))
