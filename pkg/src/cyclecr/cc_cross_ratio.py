#!/usr/bin/env python3

import logging
import math
from typing import List, Optional, Sequence

from cyclecr.cc_cycles import (
    C_REAL,
    Cycle,
    PointZ,
    from_point,
    is_point,
    negligible_product,
    pairing,
    passes_through,
    product,
)
from cyclecr.cc_exceptions import (
    NegativeRadicandError,
    NotAPointError,
    NotIncidentError,
    PreconditionError,
    UndefinedTermError,
)
from cyclecr.cc_numeric import (
    CrossRatioTag,
    CrossRatioValue,
    Real,
    Scalar,
    Tolerance,
    approx_eq,
    exact_div,
    format_number,
    is_zero,
    lowest_order_ratio,
    poly_mul,
)

__all__ = [
    "CrossRatioTag",
    "CrossRatioValue",
    "capacitance",
    "cross_ratio",
    "harmonic_conjugate",
    "point_cross_ratio",
    "point_cross_ratio_squared_modulus",
    "product_polynomial",
    "resolve_orthogonal_limit",
    "resolve_tangent_limit",
    "steiner_power_cr",
]


def cross_ratio(C1: Cycle, C2: Cycle, C3: Cycle, C4: Cycle, tol: Optional[Tolerance] = None) -> CrossRatioValue:
    """
    <C1, C3><C2, C4> / (<C1, C4><C2, C3>). A factor counts as vanishing when
    it does so for unit-length representatives; the Finite value itself is
    computed from the raw products and is exact on rational input.
    """
    p13, p24 = product(C1, C3), product(C2, C4)
    p14, p23 = product(C1, C4), product(C2, C3)
    is_num_zero = negligible_product(p13, C1, C3, tol) or negligible_product(p24, C2, C4, tol)
    is_den_zero = negligible_product(p14, C1, C4, tol) or negligible_product(p23, C2, C3, tol)

    if is_den_zero and is_num_zero:
        return CrossRatioValue.indeterminate()
    if is_den_zero:
        return CrossRatioValue.infinite()
    if is_num_zero:
        return CrossRatioValue.finite(0)
    return CrossRatioValue.finite(exact_div(p13 * p24, p14 * p23))


def capacitance(C: Cycle, C1: Cycle, tol: Optional[Tolerance] = None) -> CrossRatioValue:
    """[C, C1; C1, C], the square of the inversive distance: 0 for orthogonal, 1 for tangent cycles."""
    return cross_ratio(C, C1, C1, C, tol)


def steiner_power_cr(C: Cycle, C1: Cycle, tol: Optional[Tolerance] = None) -> float:
    """
    [C, R; C1, R] + sqrt([C, R; C, R])·sqrt([C1, R; C1, R]) with R the real line.
    Representatives need no normalisation and the value is invariant under
    Moebius maps. It equals
    (sqrt(<C, C><C1, C1>) - sgn(n·n1)·<C, C1>) / (2|n·n1|).
    """
    terms = {
        "[C, R; C1, R]": cross_ratio(C, C_REAL, C1, C_REAL, tol),
        "[C, R; C, R]": cross_ratio(C, C_REAL, C, C_REAL, tol),
        "[C1, R; C1, R]": cross_ratio(C1, C_REAL, C1, C_REAL, tol),
    }
    for name, term in terms.items():
        if not term.is_finite:
            raise UndefinedTermError(f"{name} is {term}.")

    cross, self_c, self_c1 = (term.value for term in terms.values())
    roots = []
    for name, value in (("[C, R; C, R]", self_c), ("[C1, R; C1, R]", self_c1)):
        if value < 0 and not is_zero(value, tol):  # type:ignore
            raise NegativeRadicandError(f"{name} = {format_number(value)} is negative.")  # type:ignore
        roots.append(math.sqrt(max(float(value), 0.0)))  # type:ignore
    return float(cross) + roots[0] * roots[1]  # type:ignore


def product_polynomial(
    A: Sequence[Scalar], dA: Sequence[Scalar], B: Sequence[Scalar], dB: Sequence[Scalar]
) -> List[Scalar]:
    """Coefficients in ascending powers of t of <A + t·dA, B + t·dB>."""
    return [pairing(A, B), pairing(A, dB) + pairing(dA, B), pairing(dA, dB)]


# d/dt of the zero-radius family (1, x0, y0, x0^2 + y0^2 - t)
_SHRINK = (0, 0, 0, -1)
_STILL = (0, 0, 0, 0)


def resolve_orthogonal_limit(C: Cycle, center: PointZ, tol: Optional[Tolerance] = None) -> CrossRatioValue:
    """
    [C, Z_t; Z_t, C] at t = 0 for the circles Z_t of radius sqrt(t) around
    center. When C passes the center the plain value is 0/0 and the limit is
    taken on the polynomials in t; otherwise the plain value is returned.
    """
    if center.is_infinite:
        raise PreconditionError("precondition: the center of the shrinking family must be finite")
    Z0 = from_point(center)
    if not negligible_product(product(C, Z0), C, Z0, tol):
        logging.debug(f"[CrossRatio] {C} misses {center}, evaluating the capacitance directly")
        return capacitance(C, Z0, tol)

    c_z = product_polynomial(C, _STILL, Z0, _SHRINK)[:2]
    z_z = product_polynomial(Z0, _SHRINK, Z0, _SHRINK)
    num = poly_mul(c_z, c_z)
    den = poly_mul([product(C, C)], z_z)
    logging.debug(f"[CrossRatio] orthogonal limit: num {num}, den {den}")
    return lowest_order_ratio(num, den, tol)


def resolve_tangent_limit(Z: Cycle, C: Cycle, tol: Optional[Tolerance] = None) -> Real:
    """
    [C_t, C; C, C_t] along the pencil C_t = (1 - t)·Z + t·C of cycles touching C
    at the point Z. The rational function is identically 1 for t > 0, which is
    checked coefficientwise before the limit is returned.
    """
    if not is_point(Z, tol):
        raise NotAPointError(f"{Z} is not a zero-radius cycle.")
    if not passes_through(C, Z, tol):
        raise NotIncidentError(f"{C} does not pass the point {Z}.")

    slope = tuple(c - z for c, z in zip(C, Z))
    ct_c = product_polynomial(Z, slope, C, _STILL)[:2]
    ct_ct = product_polynomial(Z, slope, Z, slope)
    num = poly_mul(ct_c, ct_c)
    den = poly_mul(ct_ct, [product(C, C)])
    logging.debug(f"[CrossRatio] tangent limit: num {num}, den {den}")

    scale = float(max(abs(x) for x in (*num, *den)))
    if not all(approx_eq(a, b, tol, max(scale, 1.0)) for a, b in zip(num, den)):
        raise PreconditionError("precondition: the tangent pencil cross ratio is not identically 1")
    return lowest_order_ratio(num, den, tol).value  # type:ignore


def point_cross_ratio(z1: complex, z2: complex, z3: complex, z4: complex) -> complex:
    """(z1 - z3)(z2 - z4) / ((z1 - z4)(z2 - z3))"""
    den = (z1 - z4) * (z2 - z3)
    if den == 0:
        raise UndefinedTermError("Point cross ratio with a vanishing denominator.")
    return (z1 - z3) * (z2 - z4) / den


def point_cross_ratio_squared_modulus(z1: PointZ, z2: PointZ, z3: PointZ, z4: PointZ) -> Real:
    """|(z1, z2; z3, z4)|^2 from squared distances, exact on rational coordinates."""

    def dist2(p: PointZ, q: PointZ) -> Real:
        return (p.x - q.x) ** 2 + (p.y - q.y) ** 2

    den = dist2(z1, z4) * dist2(z2, z3)
    if den == 0:
        raise UndefinedTermError("Point cross ratio with a vanishing denominator.")
    return exact_div(dist2(z1, z3) * dist2(z2, z4), den)


def harmonic_conjugate(c: complex, z1: complex, z2: complex) -> complex:
    """The point c' with (c, c'; z1, z2) = -1."""
    mid = (z1 + z2) / 2
    if c == mid:
        raise UndefinedTermError("The midpoint of z1 and z2 is conjugate to infinity.")
    return mid + (z1 - mid) ** 2 / (c - mid)
