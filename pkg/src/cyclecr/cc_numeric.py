#!/usr/bin/env python3

import logging
import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np

from cyclecr.cc_exceptions import AllZeroError, BothZeroPolynomialsError, ZeroVectorError
from cyclecr.cc_settings.cc_settings import Cc_Settings

# int and Fraction inputs keep the polynomial identities exact; floats are
#  compared under a Tolerance
Real = Union[int, float, Fraction]
Scalar = Union[int, float, Fraction, complex]


@dataclass(frozen=True)
class Tolerance:
    eps_abs: float = 1e-9
    eps_rel: float = 1e-9

    def __post_init__(self) -> None:
        if not (self.eps_abs > 0 and self.eps_rel > 0):
            raise ValueError(f"Tolerance thresholds must be positive, got {self}.")


def get_default_tolerance() -> Tolerance:
    return Tolerance(float(Cc_Settings.value("Numeric/eps-abs")), float(Cc_Settings.value("Numeric/eps-rel")))


def resolve_tolerance(tol: Optional[Tolerance]) -> Tolerance:
    return tol if tol is not None else get_default_tolerance()


def is_zero(a: Scalar, tol: Optional[Tolerance] = None, scale: float = 1.0) -> bool:
    return abs(a) <= resolve_tolerance(tol).eps_abs * scale


def approx_eq(a: Scalar, b: Scalar, tol: Optional[Tolerance] = None, scale: float = 1.0) -> bool:
    """
    :param scale: multiplies eps_abs, so that products of vectors can be compared
        with a threshold matching their magnitude
    """
    tol = resolve_tolerance(tol)
    diff = abs(a - b)
    return diff <= tol.eps_abs * scale or diff <= tol.eps_rel * max(abs(a), abs(b))


def exact_div(a: Scalar, b: Scalar) -> Scalar:
    """Divide without leaving the rationals when both operands are int or Fraction."""
    if isinstance(a, (int, Fraction)) and isinstance(b, (int, Fraction)):
        return Fraction(a) / Fraction(b)
    return a / b


def sup_norm(v: Sequence[Scalar]) -> float:
    return float(max(abs(x) for x in v))


def euclidean_norm(v: Sequence[Scalar]) -> float:
    return math.sqrt(sum(float(abs(x)) ** 2 for x in v))


def format_number(x: Scalar) -> str:
    if isinstance(x, complex):
        if x.imag == 0:
            return format_number(x.real)
        return f"{x.real:.15g}{x.imag:+.15g}i"
    return f"{float(x):.15g}"


def proj_eq(u: Sequence[Scalar], v: Sequence[Scalar], tol: Optional[Tolerance] = None) -> bool:
    """
    True iff u = λ·v for some λ != 0. Every 2x2 minor u_i·v_j - u_j·v_i has to
    vanish; the threshold grows with |u|·|v| so that the answer does not depend
    on the representatives.
    """
    if len(u) != len(v):
        raise ValueError(f"Vectors of different lengths: {len(u)} and {len(v)}.")
    su, sv = sup_norm(u), sup_norm(v)
    if su == 0 or sv == 0:
        raise ZeroVectorError("proj_eq is undefined for the zero vector.")

    threshold = resolve_tolerance(tol).eps_abs * su * sv
    for i in range(len(u)):
        for j in range(i + 1, len(u)):
            if abs(u[i] * v[j] - u[j] * v[i]) > threshold:
                return False
    return True


def oriented_eq(u: Sequence[Real], v: Sequence[Real], tol: Optional[Tolerance] = None) -> bool:
    if not proj_eq(u, v, tol):
        return False
    # the largest component of v fixes the sign of λ
    i = max(range(len(v)), key=lambda idx: abs(v[idx]))
    return u[i] * v[i] > 0


def nullspace(rows: Sequence[Sequence[Real]], tol: Optional[Tolerance] = None) -> List[np.ndarray]:
    """
    Solve the homogeneous system rows·x = 0 for x in R^4 by complete-pivoting
    Gauss-Jordan elimination. Rows are scaled to unit length first, so the rank
    decision compares pivots against eps_abs independent of the row scales.

    :return: unit vectors spanning the solution space, orthonormal when there
        are several; the basis size is 4 - rank
    """
    tol = resolve_tolerance(tol)
    if len(rows) > 3:
        raise ValueError(f"At most 3 constraints are supported, got {len(rows)}.")

    a = np.array([[float(x) for x in row] for row in rows], dtype=float).reshape(-1, 4)
    norms = np.linalg.norm(a, axis=1)
    a = a[norms > 0] / norms[norms > 0, None]
    perm = np.arange(4)
    nrows = a.shape[0]

    rank = 0
    while rank < nrows:
        sub = np.abs(a[rank:, rank:])
        i, j = np.unravel_index(np.argmax(sub), sub.shape)
        if sub[i, j] <= tol.eps_abs:
            break
        i, j = i + rank, j + rank
        a[[rank, i]] = a[[i, rank]]
        a[:, [rank, j]] = a[:, [j, rank]]
        perm[[rank, j]] = perm[[j, rank]]
        a[rank] /= a[rank, rank]
        for r in range(nrows):
            if r != rank:
                a[r] -= a[r, rank] * a[rank]
        rank += 1

    basis = []
    for free in range(rank, 4):
        x = np.zeros(4)
        x[free] = 1.0
        x[:rank] = -a[:rank, free]
        v = np.zeros(4)
        v[perm] = x
        basis.append(v)

    if len(basis) > 1:
        q, _ = np.linalg.qr(np.column_stack(basis))
        basis = [q[:, idx].copy() for idx in range(q.shape[1])]
    else:
        basis = [v / np.linalg.norm(v) for v in basis]
    logging.debug(f"[Numeric] nullspace: {nrows} constraint(s), rank {rank}, basis size {len(basis)}")
    return basis


class RootKind(Enum):
    DISTINCT_REAL = "distinct-real"
    DOUBLE = "double"
    COMPLEX_PAIR = "complex-pair"
    # a ≈ 0: at most one finite root
    LINEAR = "linear"


@dataclass(frozen=True)
class QuadraticRoots:
    kind: RootKind
    roots: Tuple[Scalar, ...]

    @property
    def is_real(self) -> bool:
        return self.kind is not RootKind.COMPLEX_PAIR


def quadratic_roots(a: Real, b: Real, c: Real, tol: Optional[Tolerance] = None) -> QuadraticRoots:
    """
    Roots of a·t^2 + b·t + c = 0 with multiplicity. Distinct real roots come in
    ascending order, a conjugate pair with the positive imaginary part first.
    """
    tol = resolve_tolerance(tol)
    scale = float(max(abs(a), abs(b), abs(c)))
    if scale <= tol.eps_abs:
        raise AllZeroError(f"All coefficients vanish: ({a}, {b}, {c}).")

    if is_zero(a, tol, scale):
        if is_zero(b, tol, scale):
            return QuadraticRoots(RootKind.LINEAR, ())
        return QuadraticRoots(RootKind.LINEAR, (exact_div(-c, b),))

    if approx_eq(b * b, 4 * a * c, tol, scale * scale):
        root = exact_div(-b, 2 * a)
        return QuadraticRoots(RootKind.DOUBLE, (root, root))

    disc = b * b - 4 * a * c
    if disc > 0:
        # no cancellation between b and the root of the discriminant
        q = -0.5 * (b + math.copysign(math.sqrt(disc), b))
        r1, r2 = q / a, c / q
        return QuadraticRoots(RootKind.DISTINCT_REAL, (min(r1, r2), max(r1, r2)))

    re = float(-b / (2 * a))
    im = math.sqrt(-disc) / (2 * abs(float(a)))
    return QuadraticRoots(RootKind.COMPLEX_PAIR, (complex(re, im), complex(re, -im)))


# (u, v) representatives of the two roots of a binary quadratic form
HomogeneousRoot = Tuple[complex, complex]


@dataclass(frozen=True)
class BinaryQuadraticRoots:
    kind: RootKind
    roots: Tuple[HomogeneousRoot, HomogeneousRoot]


def binary_quadratic_roots(a: Real, b: Real, c: Real, tol: Optional[Tolerance] = None) -> BinaryQuadraticRoots:
    """
    Roots (u:v) of a·u^2 + b·u·v + c·v^2 = 0, solved on the chart v=1 when
    |a| >= |c| and on u=1 otherwise.
    """
    tol = resolve_tolerance(tol)
    scale = float(max(abs(a), abs(b), abs(c)))
    if scale <= tol.eps_abs:
        raise AllZeroError(f"All coefficients vanish: ({a}, {b}, {c}).")

    if abs(a) >= abs(c):
        if is_zero(a, tol, scale):
            # both squares negligible: the form is u·v
            return BinaryQuadraticRoots(RootKind.DISTINCT_REAL, ((1 + 0j, 0j), (0j, 1 + 0j)))
        res = quadratic_roots(a, b, c, tol)
        r1, r2 = res.roots
        return BinaryQuadraticRoots(res.kind, ((complex(r1), 1 + 0j), (complex(r2), 1 + 0j)))

    res = quadratic_roots(c, b, a, tol)
    s1, s2 = res.roots
    return BinaryQuadraticRoots(res.kind, ((1 + 0j, complex(s1)), (1 + 0j, complex(s2))))


def poly_add(p: Sequence[Scalar], q: Sequence[Scalar]) -> List[Scalar]:
    size = max(len(p), len(q))
    return [(p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0) for i in range(size)]


def poly_mul(p: Sequence[Scalar], q: Sequence[Scalar]) -> List[Scalar]:
    if not p or not q:
        return []
    out: List[Scalar] = [0] * (len(p) + len(q) - 1)
    for i, pi in enumerate(p):
        for j, qj in enumerate(q):
            out[i + j] += pi * qj
    return out


class CrossRatioTag(Enum):
    FINITE = "finite"
    INFINITE = "infinite"
    INDETERMINATE = "indeterminate"


@dataclass(frozen=True)
class CrossRatioValue:
    tag: CrossRatioTag
    value: Optional[Real] = None

    def __post_init__(self) -> None:
        if (self.tag is CrossRatioTag.FINITE) != (self.value is not None):
            raise ValueError(f"A {self.tag.value} cross ratio cannot carry the value {self.value}.")

    @classmethod
    def finite(cls, value: Real) -> "CrossRatioValue":
        return cls(CrossRatioTag.FINITE, value)

    @classmethod
    def infinite(cls) -> "CrossRatioValue":
        return cls(CrossRatioTag.INFINITE)

    @classmethod
    def indeterminate(cls) -> "CrossRatioValue":
        return cls(CrossRatioTag.INDETERMINATE)

    @property
    def is_finite(self) -> bool:
        return self.tag is CrossRatioTag.FINITE

    def __str__(self) -> str:
        if self.tag is CrossRatioTag.FINITE:
            return format_number(self.value)  # type:ignore
        elif self.tag is CrossRatioTag.INFINITE:
            return "inf"
        return "indeterminate"


def _lowest_order(coeffs: Sequence[Scalar], tol: Tolerance) -> Optional[int]:
    for i, c in enumerate(coeffs):
        if not is_zero(c, tol):
            return i
    return None


def lowest_order_ratio(
    num_coeffs: Sequence[Real], den_coeffs: Sequence[Real], tol: Optional[Tolerance] = None
) -> CrossRatioValue:
    """
    Limit of num(t)/den(t) as t -> 0+, coefficients in ascending powers of t.
    """
    tol = resolve_tolerance(tol)
    p = _lowest_order(num_coeffs, tol)
    q = _lowest_order(den_coeffs, tol)
    logging.debug(f"[Numeric] lowest orders: numerator {p}, denominator {q}")

    if p is None and q is None:
        raise BothZeroPolynomialsError("Numerator and denominator vanish identically.")
    if p is None:
        return CrossRatioValue.finite(0)
    if q is None or p < q:
        return CrossRatioValue.infinite()
    if p > q:
        return CrossRatioValue.finite(0)
    return CrossRatioValue.finite(exact_div(num_coeffs[p], den_coeffs[q]))
