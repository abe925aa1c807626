#!/usr/bin/env python3

from fractions import Fraction

import numpy as np
from hypothesis import given, seed
from hypothesis import strategies as st

from cyclecr.cc_exceptions import AllZeroError, BothZeroPolynomialsError, ZeroVectorError
from cyclecr.cc_numeric import (
    CrossRatioTag,
    CrossRatioValue,
    RootKind,
    Tolerance,
    approx_eq,
    binary_quadratic_roots,
    exact_div,
    format_number,
    get_default_tolerance,
    is_zero,
    lowest_order_ratio,
    nullspace,
    oriented_eq,
    poly_add,
    poly_mul,
    proj_eq,
    quadratic_roots,
)
from cyclecr.cc_settings.cc_settings import Cc_Settings

from tests.base_tmpl import BaseTmpl

vectors = st.lists(st.floats(min_value=-100, max_value=100), min_size=4, max_size=4).filter(
    lambda v: max(abs(x) for x in v) > 1e-3
)
factors = st.floats(min_value=0.01, max_value=100) | st.floats(min_value=-100, max_value=-0.01)


class TestTolerance(BaseTmpl):
    def test_default_tolerance_follows_settings(self):
        self.assertEqual(get_default_tolerance(), Tolerance(1e-9, 1e-9))
        Cc_Settings.setValue("Numeric/eps-abs", 1e-6)
        self.assertEqual(get_default_tolerance().eps_abs, 1e-6)
        self.assertTrue(is_zero(5e-7))

    def test_invalid_tolerance(self):
        self.assertRaises(ValueError, Tolerance, 0, 1e-9)
        self.assertRaises(ValueError, Tolerance, 1e-9, -1)

    def test_scale(self):
        self.assertFalse(is_zero(1e-8))
        self.assertTrue(is_zero(1e-8, scale=100))
        self.assertTrue(approx_eq(1e6, 1e6 + 1e-4))
        self.assertFalse(approx_eq(0.0, 1e-8))
        self.assertTrue(approx_eq(0.0, 1e-8, scale=100))

    def test_exact_div(self):
        self.assertEqual(exact_div(1, 3), Fraction(1, 3))
        self.assertIsInstance(exact_div(Fraction(1, 2), 2), Fraction)
        self.assertIsInstance(exact_div(1.0, 4), float)

    def test_format_number(self):
        self.assertEqual(format_number(Fraction(16, 9)), "1.77777777777778")
        self.assertEqual(format_number(2), "2")
        self.assertEqual(format_number(complex(0.5, -1)), "0.5-1i")
        self.assertEqual(format_number(complex(3, 0)), "3")


class TestProjectiveEquality(BaseTmpl):
    def test_proj_eq(self):
        self.assertTrue(proj_eq((1, 2, 3, 4), (2, 4, 6, 8)))
        self.assertTrue(proj_eq((1, 2, 3, 4), (-1, -2, -3, -4)))
        self.assertFalse(proj_eq((1, 2, 3, 4), (1, 2, 3, 5)))
        self.assertTrue(proj_eq((1e-12, 2e-12, 0, 0), (1, 2, 0, 0)))
        self.assertRaises(ZeroVectorError, proj_eq, (0, 0, 0, 0), (1, 0, 0, 0))
        self.assertRaises(ValueError, proj_eq, (1, 0, 0), (1, 0, 0, 0))

    def test_oriented_eq(self):
        self.assertTrue(oriented_eq((1, 2, 3, 4), (2, 4, 6, 8)))
        self.assertFalse(oriented_eq((1, 2, 3, 4), (-1, -2, -3, -4)))

    @seed(20240229)
    @given(vectors, factors)
    def test_proj_eq_ignores_representative(self, v, factor):
        scaled = [factor * x for x in v]
        self.assertTrue(proj_eq(v, scaled))
        self.assertEqual(oriented_eq(scaled, v), factor > 0)


class TestNullspace(BaseTmpl):
    def test_rank_two(self):
        rows = [(1, 0, 0, 0), (0, 1, 0, 0)]
        basis = nullspace(rows)
        self.assertEqual(len(basis), 2)
        gram = np.array([[b1 @ b2 for b2 in basis] for b1 in basis])
        np.testing.assert_allclose(gram, np.eye(2), atol=1e-12)
        for row in rows:
            for b in basis:
                self.assertAlmostEqual(float(np.dot(row, b)), 0.0, places=12)

    def test_rank_deficient_rows(self):
        # the third row is the sum of the first two
        rows = [(1, 2, 0, 1), (0, 1, 1, 0), (1, 3, 1, 1)]
        basis = nullspace(rows)
        self.assertEqual(len(basis), 2)
        for b in basis:
            self.assertAlmostEqual(float(np.linalg.norm(b)), 1.0, places=12)
            for row in rows:
                self.assertAlmostEqual(float(np.dot(row, b)), 0.0, places=12)

    def test_rank_three(self):
        basis = nullspace([(1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0)])
        self.assertEqual(len(basis), 1)
        self.assertProjEqual(basis[0], (0, 0, 0, 1))

    def test_scaled_rows(self):
        # row scale does not change the rank decision
        basis = nullspace([(1e-6, 0, 0, 0), (0, 1e6, 0, 0)])
        self.assertEqual(len(basis), 2)

    def test_too_many_rows(self):
        self.assertRaises(ValueError, nullspace, [(1, 0, 0, 0)] * 4)


class TestQuadraticRoots(BaseTmpl):
    def test_distinct_real(self):
        res = quadratic_roots(1, -3, 2)
        self.assertIs(res.kind, RootKind.DISTINCT_REAL)
        self.assertAlmostEqual(res.roots[0], 1.0)
        self.assertAlmostEqual(res.roots[1], 2.0)

    def test_cancellation(self):
        # the small root would lose all digits with the textbook formula
        res = quadratic_roots(1, -1e8, 1)
        self.assertAlmostEqualRel(res.roots[0], 1e-8, rel=1e-12)
        self.assertAlmostEqualRel(res.roots[1], 1e8, rel=1e-12)

    def test_double(self):
        res = quadratic_roots(1, -2, 1)
        self.assertIs(res.kind, RootKind.DOUBLE)
        self.assertEqual(res.roots, (1, 1))

    def test_complex_pair(self):
        res = quadratic_roots(1, 0, 1)
        self.assertIs(res.kind, RootKind.COMPLEX_PAIR)
        self.assertFalse(res.is_real)
        self.assertEqual(res.roots, (1j, -1j))

    def test_linear(self):
        self.assertEqual(quadratic_roots(0, 2, -4).roots, (2,))
        res = quadratic_roots(0, 0, 3)
        self.assertIs(res.kind, RootKind.LINEAR)
        self.assertEqual(res.roots, ())
        self.assertRaises(AllZeroError, quadratic_roots, 0, 0, 0)

    def test_binary(self):
        res = binary_quadratic_roots(0, 1, 0)
        self.assertEqual(res.roots, ((1, 0), (0, 1)))

        res = binary_quadratic_roots(2, -3, 1)
        (u1, v1), (u2, v2) = res.roots
        self.assertAlmostEqual(u1 / v1, 0.5)
        self.assertAlmostEqual(u2 / v2, 1.0)

        # |c| > |a|: solved on the chart u = 1
        res = binary_quadratic_roots(1, -3, 2)
        for u, v in res.roots:
            self.assertAlmostEqual(abs(u * u - 3 * u * v + 2 * v * v), 0.0)
        self.assertRaises(AllZeroError, binary_quadratic_roots, 0, 0, 0)


class TestPolynomials(BaseTmpl):
    def test_arithmetic(self):
        self.assertEqual(poly_mul([1, 1], [1, -1]), [1, 0, -1])
        self.assertEqual(poly_add([1, 2], [0, 0, 3]), [1, 2, 3])
        self.assertEqual(poly_mul([], [1]), [])

    def test_lowest_order_ratio(self):
        self.assertEqual(lowest_order_ratio([0, 0, 1], [0, -2, 0]), CrossRatioValue.finite(0))
        self.assertEqual(lowest_order_ratio([0, 1], [0, 2]), CrossRatioValue.finite(Fraction(1, 2)))
        self.assertEqual(lowest_order_ratio([1], [0, 1]).tag, CrossRatioTag.INFINITE)
        self.assertEqual(lowest_order_ratio([0, 2], [0, 0, 5]).tag, CrossRatioTag.INFINITE)
        self.assertEqual(lowest_order_ratio([0, 0], [0, 3]), CrossRatioValue.finite(0))
        self.assertEqual(lowest_order_ratio([1, 0], [0, 0]).tag, CrossRatioTag.INFINITE)
        self.assertRaises(BothZeroPolynomialsError, lowest_order_ratio, [0, 0], [0])

    def test_cross_ratio_value(self):
        self.assertEqual(str(CrossRatioValue.finite(Fraction(1, 4))), "0.25")
        self.assertEqual(str(CrossRatioValue.infinite()), "inf")
        self.assertEqual(str(CrossRatioValue.indeterminate()), "indeterminate")
        self.assertRaises(ValueError, CrossRatioValue, CrossRatioTag.INFINITE, 1)
        self.assertRaises(ValueError, CrossRatioValue, CrossRatioTag.FINITE)
