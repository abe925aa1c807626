#!/usr/bin/env python3

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from cyclecr.cc_cycles import Cycle, PointZ, from_fsc, is_isotropic, product, to_fsc
from cyclecr.cc_exceptions import DegenerateMirrorError, SingularMatrixError
from cyclecr.cc_numeric import Tolerance, exact_div, get_default_tolerance, is_zero


@dataclass(frozen=True)
class MoebiusMatrix:
    """The FLT z -> (a·z + b) / (c·z + d)."""

    a: complex
    b: complex
    c: complex
    d: complex

    def __post_init__(self) -> None:
        if abs(self.det) <= get_default_tolerance().eps_abs:
            raise SingularMatrixError(f"Matrix [[{self.a}, {self.b}], [{self.c}, {self.d}]] is not invertible.")

    @classmethod
    def identity(cls) -> "MoebiusMatrix":
        return cls(1, 0, 0, 1)

    @classmethod
    def from_array(cls, arr: np.ndarray) -> "MoebiusMatrix":
        arr = np.asarray(arr, dtype=complex)
        if arr.shape != (2, 2):
            raise ValueError(f"Expected a 2x2 matrix, got shape {arr.shape}.")
        return cls(complex(arr[0, 0]), complex(arr[0, 1]), complex(arr[1, 0]), complex(arr[1, 1]))

    @property
    def det(self) -> complex:
        return self.a * self.d - self.b * self.c

    def as_array(self) -> np.ndarray:
        return np.array([[self.a, self.b], [self.c, self.d]], dtype=complex)

    def adjugate(self) -> np.ndarray:
        return np.array([[self.d, -self.b], [-self.c, self.a]], dtype=complex)


def apply_to_point(M: MoebiusMatrix, z: PointZ, tol: Optional[Tolerance] = None) -> PointZ:
    if z.is_infinite:
        if is_zero(M.c, tol, max(abs(M.a), abs(M.c))):
            return PointZ.infinity()
        return PointZ.from_complex(complex(M.a / M.c))

    w = z.to_complex()
    den = M.c * w + M.d
    if is_zero(den, tol, abs(M.c * w) + abs(M.d)):
        return PointZ.infinity()
    return PointZ.from_complex(complex((M.a * w + M.b) / den))


def apply_to_cycle(M: MoebiusMatrix, C: Cycle, tol: Optional[Tolerance] = None) -> Cycle:
    """
    Decode conj(M)·C·adj(M). This is det(M)·conj(M)·C·M^-1, a positive multiple
    of an FSCc matrix for every invertible M, so orientation is kept without
    normalising det(M).
    """
    return from_fsc(np.conj(M.as_array()) @ to_fsc(C) @ M.adjugate(), tol)


def conjugate_cycle(C: Cycle) -> Cycle:
    """Mirror image in the real axis."""
    return Cycle(C.k, C.l, -C.n, C.m)


def reflect_in_cycle(C: Cycle, C1: Cycle, tol: Optional[Tolerance] = None) -> Cycle:
    """
    Reflection of C1 in the mirror C, the cycle with matrix C·conj(C1)·C.

    From C·conj(X) + X·conj(C) = -<C, X>·I and conj(C)·C = -det(C)·I the matrix
    equals ½<C, C>·C1 - <C, C1>·C, which is evaluated directly and stays exact on
    rational input.
    """
    if is_isotropic(C, tol):
        raise DegenerateMirrorError(f"Mirror {C} is isotropic.")
    half_self = exact_div(product(C, C), 2)
    cross = product(C, C1)
    return Cycle(*(half_self * x1 - cross * x for x, x1 in zip(C, C1)))


def compose(M1: MoebiusMatrix, M2: MoebiusMatrix) -> MoebiusMatrix:
    """z -> M1(M2(z))"""
    return MoebiusMatrix.from_array(M1.as_array() @ M2.as_array())


def inverse(M: MoebiusMatrix) -> MoebiusMatrix:
    return MoebiusMatrix.from_array(M.adjugate() / M.det)


def is_moebius(M: MoebiusMatrix, tol: Optional[Tolerance] = None) -> bool:
    """Real entries and positive determinant: the FLT keeps the real line and its sides."""
    entries = (M.a, M.b, M.c, M.d)
    scale = max(abs(x) for x in entries)
    if not all(is_zero(complex(x).imag, tol, scale) for x in entries):
        return False
    return M.det.real > 0


def _to_zero_one_infinity(z1: complex, z2: complex, z3: complex) -> MoebiusMatrix:
    return MoebiusMatrix(z2 - z3, -z1 * (z2 - z3), z2 - z1, -z3 * (z2 - z1))


def from_three_points(zs: Sequence[complex], ws: Sequence[complex]) -> MoebiusMatrix:
    """The FLT sending three distinct finite points zs to ws respectively."""
    if len(zs) != 3 or len(ws) != 3:
        raise ValueError("Exactly three source and three target points are needed.")
    try:
        source = _to_zero_one_infinity(*(complex(z) for z in zs))
        target = _to_zero_one_infinity(*(complex(w) for w in ws))
    except SingularMatrixError as e:
        raise SingularMatrixError("The three points must be distinct.") from e
    return compose(inverse(target), source)
