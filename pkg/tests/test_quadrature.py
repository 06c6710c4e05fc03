import itertools
import math
import unittest

import numpy as np

from numpy.testing import assert_allclose

from pyq2x.exceptions import IncompatibleKindError
from pyq2x.experiments import coefficient_difference, random_center, random_element, reference_element
from pyq2x.geometry import ElementKind, SimplexElement
from pyq2x.q2x import ExpansionKind, ExpansionRequest, expand
from pyq2x.quadrature import expand_by_quadrature, gauss_legendre_unit, simplex_rule

def _monomial_integral(exponents):

    """ Integral of u^a v^b w^c over the unit simplex of matching dimension. """

    numerator = math.prod(math.factorial(k) for k in exponents)

    return numerator / math.factorial(sum(exponents) + len(exponents))

class TestGaussLegendre(unittest.TestCase):
    def test_midpoint_rule(self):
        rule = gauss_legendre_unit(1)

        assert_allclose(rule.nodes[:, 0], [0.5], atol=1e-16)
        assert_allclose(rule.weights, [1.0], rtol=1e-15)

    def test_two_points(self):
        rule = gauss_legendre_unit(2)
        offset = 1 / (2 * math.sqrt(3))

        assert_allclose(sorted(rule.nodes[:, 0]), [0.5 - offset, 0.5 + offset], rtol=1e-15)
        assert_allclose(rule.weights, [0.5, 0.5], rtol=1e-15)

    def test_exact_degree(self):
        rule = gauss_legendre_unit(5)

        self.assertEqual(rule.exact_degree, 9)
        self.assertAlmostEqual(rule.integrate(rule.nodes[:, 0] ** 9), 0.1, delta=1e-15)

    def test_high_order_weights(self):
        rule = gauss_legendre_unit(40)

        self.assertAlmostEqual(rule.weights.sum(), 1.0, delta=1e-14)
        self.assertTrue(np.all((rule.nodes > 0) & (rule.nodes < 1)))
        self.assertAlmostEqual(rule.integrate(rule.nodes[:, 0] ** 79), 1 / 80, delta=1e-15)

    def test_rejects_empty_rule(self):
        with self.assertRaises(ValueError):
            gauss_legendre_unit(0)

class TestSimplexRule(unittest.TestCase):
    def test_single_node_triangle(self):
        rule = simplex_rule(2, 0)

        self.assertEqual(rule.size, 1)
        self.assertAlmostEqual(rule.weights.sum(), 0.5, places=15)

    def test_examples(self):
        triangle = simplex_rule(2, 3)
        tetra = simplex_rule(3, 2)
        u, v = triangle.nodes.T

        self.assertAlmostEqual(triangle.integrate(u * u * v), 1 / 60, delta=1e-15)
        self.assertAlmostEqual(tetra.integrate(tetra.nodes[:, 0]), 1 / 24, delta=1e-15)

    def test_monomial_exactness(self):
        for dim in (1, 2, 3):
            for degree in (0, 1, 4, 7, 10):
                rule = simplex_rule(dim, degree)

                for exponents in itertools.product(range(degree + 1), repeat=dim):
                    if sum(exponents) > degree:
                        continue

                    values = np.prod(rule.nodes ** np.array(exponents), axis=1)
                    expected = _monomial_integral(exponents)

                    self.assertLess(abs(rule.integrate(values) - expected) / expected, 1e-14)

    def test_nodes_inside_simplex(self):
        for dim in (2, 3):
            nodes = simplex_rule(dim, 9).nodes

            self.assertTrue(np.all(nodes >= 0))
            self.assertTrue(np.all(nodes.sum(axis=1) <= 1))

    def test_rejects_bad_arguments(self):
        with self.assertRaises(ValueError):
            simplex_rule(4, 2)
        with self.assertRaises(ValueError):
            simplex_rule(2, -1)

class TestExpandByQuadrature(unittest.TestCase):
    def test_monopole_matches(self):
        rng = np.random.default_rng(30)

        for kind, code in (("S", "K"), ("T", "L"), ("Q", "N")):
            e = SimplexElement(kind, rng.uniform(-1, 1, size=(ElementKind.parse(kind).vertex_count, 3)))
            request = ExpansionRequest((0.3, 0.2, -0.1), 6, code)

            self.assertAlmostEqual(
                expand_by_quadrature(e, request)[0, 0] / expand(e, request)[0, 0], 1.0, delta=1e-15
            )

    def test_reference_triangle(self):
        e = reference_element("T", rt=0.1)

        for kind in ("L", "M"):
            request = ExpansionRequest((0, 0, 0), 10, kind)
            difference = coefficient_difference(
                expand(e, request).data, expand_by_quadrature(e, request).data
            )

            self.assertLessEqual(difference, 1e-12)

    def test_unit_tetra(self):
        e = SimplexElement("Q", [(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1)])
        request = ExpansionRequest((0, 0, 0), 20, "N")
        difference = coefficient_difference(
            expand(e, request).data, expand_by_quadrature(e, request).data
        )

        self.assertLessEqual(difference, 1e-11)

    def test_random_elements(self):
        rng = np.random.default_rng(31)

        for code in ("K", "L", "M", "N"):
            kind = ExpansionKind.parse(code)

            for _ in range(100):
                e = random_element(rng, kind.element_kind, density=rng.uniform(0.5, 2.0))
                request = ExpansionRequest(random_center(rng), 20, kind)
                difference = coefficient_difference(
                    expand(e, request).data, expand_by_quadrature(e, request).data
                )

                self.assertLessEqual(difference, 1e-12)

    def test_incompatible_kind(self):
        with self.assertRaises(IncompatibleKindError):
            expand_by_quadrature(reference_element("S"), ExpansionRequest((0, 0, 0), 4, "N"))

if __name__ == "__main__":
    unittest.main()
