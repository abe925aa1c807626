#!/usr/bin/env python3

from fractions import Fraction

import numpy as np

from cyclecr.cc_cycles import (
    C_INF,
    C_REAL,
    Cycle,
    PointZ,
    center,
    det_fsc,
    from_circle,
    from_fsc,
    from_line,
    from_point,
    fsc_product,
    functional,
    inversive_distance,
    is_isotropic,
    is_line,
    is_lobachevsky_line,
    is_orthogonal,
    is_point,
    is_tangent,
    normalize_det,
    normalize_k,
    pairing,
    passes_through,
    product,
    product_signature,
    radius_squared,
    steiner_power,
    to_fsc,
)
from cyclecr.cc_exceptions import (
    DegenerateLineError,
    IsLineError,
    IsotropicCycleError,
    NegativeRadicandError,
    NotAPointError,
    StructureLostError,
    ZeroVectorError,
)

from tests.base_tmpl import BaseTmpl, imaginary_axis, infinity, real_line, unit


class TestCycle(BaseTmpl):
    def test_zero_vector(self):
        self.assertRaises(ZeroVectorError, Cycle, 0, 0, 0, 0)
        self.assertRaises(ValueError, Cycle.from_vector, [1, 0, 0])

    def test_constructors(self):
        self.assertEqual(from_circle(PointZ(2, 0), 1), Cycle(1, 2, 0, 3))
        self.assertEqual(from_line(1, 0, 1), Cycle(0, 1, 0, 2))
        self.assertEqual(from_point(PointZ(0, 1)), Cycle(1, 0, 1, 1))
        self.assertEqual(from_point(PointZ.infinity()), C_INF)
        self.assertRaises(ValueError, from_circle, PointZ(0, 0), -1)
        self.assertRaises(DegenerateLineError, from_line, 0, 0, 1)

    def test_arithmetic(self):
        self.assertEqual(unit + real_line, Cycle(1, 0, 1, -1))
        self.assertEqual(2 * unit, Cycle(2, 0, 0, -2))
        self.assertEqual(-unit, Cycle(-1, 0, 0, 1))
        self.assertEqual(str(Cycle(1, 0, Fraction(1, 2), -1)), "(1, 0, 0.5, -1)")

    def test_center_and_radius(self):
        C = Cycle(1, 2, 0, 3)
        self.assertEqual(center(C), PointZ(2, 0))
        self.assertEqual(radius_squared(C), 1)
        self.assertEqual(radius_squared(Cycle(1, 0, 0, 1)), -1)
        self.assertEqual(center(Cycle(2, 1, 1, 0)), PointZ(Fraction(1, 2), Fraction(1, 2)))
        self.assertRaises(IsLineError, center, imaginary_axis)
        self.assertRaises(IsLineError, radius_squared, real_line)


class TestProduct(BaseTmpl):
    def test_examples(self):
        self.assertEqual(product(unit, imaginary_axis), 0)
        self.assertEqual(product(unit, Cycle(1, 2, 0, 3)), 2)
        self.assertEqual(product(C_REAL, C_INF), 0)
        # concentric circles of radii 1 and 2
        self.assertEqual(product(unit, Cycle(1, 0, 0, -4)), -5)

    def test_self_product_is_twice_the_determinant(self):
        for C in (Cycle(Fraction(1, 3), 2, Fraction(-5, 7), 4), Cycle(3, 1, -1, Fraction(2, 9)), unit):
            self.assertEqual(product(C, C), 2 * det_fsc(C))

    def test_matrix_form_agrees(self):
        rng = np.random.default_rng(7)
        for _ in range(20):
            C = Cycle.from_vector(rng.uniform(-3, 3, 4))
            C1 = Cycle.from_vector(rng.uniform(-3, 3, 4))
            self.assertAlmostEqual(fsc_product(C, C1), product(C, C1), places=9)

    def test_functional(self):
        C = Cycle(1, 2, 3, 4)
        X = Cycle(-2, 5, 1, 7)
        self.assertEqual(sum(f * x for f, x in zip(functional(C), X)), product(X, C))

    def test_complex_pairing_is_bilinear(self):
        # no conjugation on either side
        self.assertEqual(pairing((1j, 0, 0, 1j), (1, 0, 0, 1)), 2j)
        self.assertEqual(pairing((0, 1j, 0, 0), (0, 1j, 0, 0)), 2)

    def test_signature(self):
        self.assertEqual(product_signature(), (1, 3))


class TestMatrixForm(BaseTmpl):
    def test_decode(self):
        C = Cycle(2.0, -1.0, 0.5, 3.0)
        self.assertEqual(from_fsc(to_fsc(C)), C)
        self.assertAlmostEqual(np.linalg.det(to_fsc(C)).real, det_fsc(C))

    def test_structure_lost(self):
        self.assertRaises(StructureLostError, from_fsc, np.array([[1, 1j], [1, 1]]))
        self.assertRaises(StructureLostError, from_fsc, np.array([[1, 0], [1, 1]]))
        self.assertRaises(ZeroVectorError, from_fsc, np.zeros((2, 2)))


class TestPredicates(BaseTmpl):
    def test_line_point_isotropic(self):
        self.assertTrue(is_line(imaginary_axis))
        self.assertTrue(is_line(infinity))
        self.assertFalse(is_line(unit))
        self.assertTrue(is_isotropic(infinity))
        self.assertFalse(is_point(infinity))
        self.assertTrue(is_point(Cycle(1, 0, 1, 1)))
        self.assertFalse(is_point(unit))

    def test_incidence(self):
        self.assertTrue(passes_through(unit, Cycle(1, 1, 0, 1)))
        self.assertFalse(passes_through(unit, Cycle(1, 2, 0, 4)))
        self.assertTrue(passes_through(imaginary_axis, from_point(PointZ(0, 5))))
        self.assertRaises(NotAPointError, passes_through, unit, unit)
        self.assertRaises(NotAPointError, passes_through, unit, infinity)

    def test_orthogonal_and_tangent(self):
        self.assertTrue(is_orthogonal(unit, imaginary_axis))
        self.assertTrue(is_lobachevsky_line(unit))
        self.assertFalse(is_lobachevsky_line(Cycle(1, 0, 1, 0)))
        self.assertTrue(is_tangent(unit, Cycle(1, 2, 0, 3)))
        self.assertTrue(is_tangent(unit, Cycle(0, 1, 0, 2)))
        self.assertFalse(is_tangent(unit, Cycle(1, 1, 0, 0)))


class TestInversiveDistance(BaseTmpl):
    def test_concentric(self):
        d = inversive_distance(unit, Cycle(1, 0, 0, -4))
        self.assertAlmostEqual(d.value, -1.25)
        self.assertFalse(d.is_imaginary)
        self.assertAlmostEqual(d.squared, 25 / 16)

    def test_orientation_flips_sign(self):
        d = inversive_distance(-unit, Cycle(1, 0, 0, -4))
        self.assertAlmostEqual(d.value, 1.25)

    def test_imaginary(self):
        # a real circle against one of imaginary radius
        d = inversive_distance(Cycle(1, 0, 0, -4), Cycle(1, 1, 0, 2))
        self.assertTrue(d.is_imaginary)
        self.assertAlmostEqual(d.as_complex().real, 0.0)
        self.assertLess(d.squared, 0)

    def test_isotropic(self):
        self.assertRaises(IsotropicCycleError, inversive_distance, unit, Cycle(1, 0, 1, 1))


class TestNormalization(BaseTmpl):
    def test_normalize_k(self):
        C = normalize_k(Cycle(2, 2, 4, 6))
        self.assertEqual(C, Cycle(1, 1, 2, 3))
        self.assertIsInstance(C.l, Fraction)
        self.assertRaises(IsLineError, normalize_k, imaginary_axis)

    def test_normalize_det(self):
        C = normalize_det(Cycle(3, 0, 0, -12))
        self.assertAlmostEqual(product(C, C), -1.0)
        self.assertGreater(C.k, 0)
        self.assertAlmostEqual(product(normalize_det(Cycle(1, 0, 0, 1)), normalize_det(Cycle(1, 0, 0, 1))), 1.0)
        self.assertRaises(IsotropicCycleError, normalize_det, Cycle(1, 0, 1, 1))


class TestSteinerPower(BaseTmpl):
    def test_two_points(self):
        # |i - (3 - i)|^2
        self.assertAlmostEqual(steiner_power(Cycle(1, 0, 1, 1), Cycle(1, 3, -1, 10)), 13.0)

    def test_circles(self):
        # <C, C1> + sqrt(4) for the circles of radius 1 at 0 and 2
        self.assertAlmostEqual(steiner_power(unit, Cycle(1, 2, 0, 3)), 4.0)
        self.assertAlmostEqual(steiner_power(unit, Cycle(2, 4, 0, 6)), 4.0)

    def test_negative_radicand(self):
        self.assertRaises(NegativeRadicandError, steiner_power, unit, Cycle(1, 0, 0, 1))
        self.assertRaises(IsLineError, steiner_power, unit, real_line)
