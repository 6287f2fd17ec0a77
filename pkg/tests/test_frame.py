from fractions import Fraction
from itertools import product
from unittest import TestCase, main

import numpy

from sesquifield.frame import (
    CURVATURE_CONVENTION,
    FrameAlgebra,
    connection_from_structure,
    curvature_derivative,
    curvature_from_connection,
    load_preset,
    milnor_algebra,
    nabla_curvature,
    preset_names,
    second_bianchi_defect,
)
from sesquifield.util import StructureError


__author__ = "The Sesquifield Project"
__copyright__ = "Copyright 2026-, The Sesquifield Project"
__credits__ = ["The Sesquifield Project"]
__license__ = "BSD"
__version__ = "2026.10.16"
__maintainer__ = "The Sesquifield Project"
__status__ = "alpha"

half, quarter = Fraction(1, 2), Fraction(1, 4)


def _geometry(algebra):
    connection = connection_from_structure(algebra)
    curvature = curvature_from_connection(algebra, connection)
    return connection, curvature


def _random_milnor(rng):
    l1, l2, l3 = (Fraction(int(rng.integers(-4, 5)), int(rng.integers(1, 4))) for _ in range(3))
    return milnor_algebra(l1, l2, l3)


class TestFrameAlgebra(TestCase):
    def test_presets(self):
        """shipped presets and their brackets"""
        self.assertTrue({"nil", "sol", "abelian"} <= set(preset_names()))
        nil = load_preset("nil")
        self.assertEqual(nil.brackets(), [(1, 3, 2, Fraction(1))])
        self.assertEqual(nil.bracket(2, 0), (0, -1, 0))
        sol = load_preset("sol")
        self.assertEqual(sol.jet_direction, 2)
        self.assertEqual(load_preset("abelian").brackets(), [])

    def test_unknown_preset(self):
        """unknown names raise KeyError"""
        with self.assertRaises(KeyError):
            load_preset("torus")

    def test_antisymmetry_violation(self):
        """structure constants must be antisymmetric in i, j"""
        structure = numpy.zeros((3, 3, 3), dtype=int)
        structure[0, 1, 2] = 1
        with self.assertRaises(StructureError) as ctx:
            FrameAlgebra(structure)
        self.assertEqual(ctx.exception.index, (1, 2, 3))
        self.assertIn("(1, 2, 3)", str(ctx.exception))

    def test_conflicting_brackets(self):
        """a bracket and its partner must agree"""
        with self.assertRaises(StructureError) as ctx:
            FrameAlgebra.from_brackets(3, [(1, 2, 3, 1), (2, 1, 3, 1)])
        self.assertEqual(ctx.exception.index, (2, 1, 3))

    def test_jacobi_violation(self):
        """[e1,e2]=e3 with [e2,e3]=e2 is not a Lie algebra"""
        with self.assertRaises(StructureError) as ctx:
            FrameAlgebra.from_brackets(3, [(1, 2, 3, 1), (2, 3, 2, 1)])
        self.assertIn("Jacobi", str(ctx.exception))

    def test_bracket_range(self):
        """indices outside 1..dim and [e_i, e_i] != 0 are rejected"""
        with self.assertRaises(StructureError):
            FrameAlgebra.from_brackets(3, [(1, 4, 2, 1)])
        with self.assertRaises(StructureError):
            FrameAlgebra.from_brackets(3, [(2, 2, 1, 1)])
        with self.assertRaises(StructureError):
            FrameAlgebra.from_brackets(0, [])

    def test_unimodular(self):
        """Nil, Sol and Milnor algebras are unimodular, ax+b is not"""
        for name in ("nil", "sol", "abelian"):
            self.assertTrue(load_preset(name).is_unimodular(), name)
        self.assertTrue(milnor_algebra(1, -2, 3).is_unimodular())
        affine = FrameAlgebra.from_brackets(2, [(1, 2, 2, 1)])
        self.assertFalse(affine.is_unimodular())

    def test_with_jet(self):
        """jet copies carry a ring and act along one direction"""
        sol = load_preset("sol").with_jet(order=4)
        self.assertTrue(sol.is_jet)
        self.assertEqual(sol.ring.symbols, ("f0", "f1", "f2", "f3", "f4", "d1", "d2"))
        f0 = sol.ring.gen("f0")
        self.assertEqual(sol.frame_derivative(2, f0), sol.ring.gen("f1"))
        self.assertTrue(sol.frame_derivative(0, f0).is_zero())
        with self.assertRaises(StructureError):
            load_preset("nil").with_jet()
        with self.assertRaises(IndexError):
            sol.frame_derivative(3, f0)


class TestNilGeometry(TestCase):
    def setUp(self):
        self.algebra = load_preset("nil")
        self.connection, self.curvature = _geometry(self.algebra)

    def test_connection(self):
        """all 27 connection components"""
        expect = {
            (0, 1): (0, 0, -half),
            (0, 2): (0, half, 0),
            (1, 0): (0, 0, -half),
            (1, 2): (half, 0, 0),
            (2, 0): (0, -half, 0),
            (2, 1): (half, 0, 0),
        }
        for i, j in product(range(3), repeat=2):
            self.assertEqual(self.connection(i, j), expect.get((i, j), (0, 0, 0)), (i, j))

    def test_curvature(self):
        """the nine curvature components R(e_i, e_j) e_k"""
        expect = {
            (0, 1, 0): (0, -quarter, 0),
            (0, 1, 1): (quarter, 0, 0),
            (0, 1, 2): (0, 0, 0),
            (1, 2, 0): (0, 0, 0),
            (1, 2, 1): (0, 0, -quarter),
            (1, 2, 2): (0, quarter, 0),
            (2, 0, 0): (0, 0, -3 * quarter),
            (2, 0, 1): (0, 0, 0),
            (2, 0, 2): (3 * quarter, 0, 0),
        }
        for (i, j, k), value in expect.items():
            self.assertEqual(self.curvature(i, j, k), value, (i, j, k))

    def test_ricci(self):
        """Ricci diagonal (-1/2, 1/2, -1/2) and sectional curvatures"""
        ricci = [self.curvature.ricci(j, j) for j in range(3)]
        self.assertEqual(ricci, [-half, half, -half])
        self.assertEqual(self.curvature.scalar(), -half)
        self.assertEqual(self.curvature.sectional(0, 2), -3 * quarter)
        self.assertEqual(self.curvature.sectional(0, 1), quarter)
        with self.assertRaises(ValueError):
            self.curvature.sectional(1, 1)

    def test_convention(self):
        """curvature carries its sign convention"""
        self.assertEqual(self.curvature.convention, CURVATURE_CONVENTION)

    def test_nabla_curvature(self):
        """directional derivative is linear in the direction"""
        zero = nabla_curvature(
            self.algebra, self.connection, self.curvature, (0, 0, 0), 0, 1, 2
        )
        self.assertEqual(zero, (0, 0, 0))
        nr = curvature_derivative(self.connection, self.curvature)
        for u, v, z in product(range(3), repeat=3):
            got = nabla_curvature(
                self.algebra, self.connection, self.curvature, (2, 0, -1), u, v, z
            )
            expect = tuple(2 * nr[0, u, v, z, l] - nr[2, u, v, z, l] for l in range(3))
            self.assertEqual(got, expect)
        with self.assertRaises(ValueError):
            nabla_curvature(self.algebra, self.connection, self.curvature, (1, 0), 0, 1, 2)

    def test_derivative_computed_once(self):
        """repeated calls reuse the derivative array for the same connection"""
        first = self.curvature.derivative(self.connection)
        nabla_curvature(self.algebra, self.connection, self.curvature, (1, 1, 1), 0, 1, 2)
        self.assertIs(self.curvature.derivative(self.connection), first)
        other = connection_from_structure(self.algebra)
        again = self.curvature.derivative(other)
        self.assertIsNot(again, first)
        self.assertTrue((again == first).all())


class TestSolGeometry(TestCase):
    def test_sectional(self):
        """K(e1,e2)=1, K(e1,e3)=K(e2,e3)=-1"""
        _, curvature = _geometry(load_preset("sol"))
        self.assertEqual(curvature.sectional(0, 1), 1)
        self.assertEqual(curvature.sectional(0, 2), -1)
        self.assertEqual(curvature.sectional(1, 2), -1)
        self.assertEqual([curvature.ricci(j, j) for j in range(3)], [0, 0, -2])

    def test_abelian_flat(self):
        """flat frame has zero connection and curvature"""
        connection, curvature = _geometry(load_preset("abelian"))
        self.assertFalse(any(connection.gamma.flat))
        self.assertFalse(any(curvature.r.flat))


class TestSymmetries(TestCase):
    def test_connection_checks(self):
        """a torsion carrying connection is rejected"""
        nil = load_preset("nil")
        connection = connection_from_structure(load_preset("abelian"))
        with self.assertRaises(StructureError):
            connection.check(nil)

    def test_second_bianchi(self):
        """cyclic sum of nabla R vanishes on presets and random Milnor algebras"""
        algebras = [load_preset("nil"), load_preset("sol")]
        rng = numpy.random.default_rng(7)
        algebras.extend(_random_milnor(rng) for _ in range(5))
        for algebra in algebras:
            connection, curvature = _geometry(algebra)
            self.assertTrue(curvature.check())
            nr = curvature_derivative(connection, curvature)
            self.assertIsNone(second_bianchi_defect(nr), algebra)

    def test_pair_symmetry_random(self):
        """curvature symmetries hold on random Milnor algebras"""
        rng = numpy.random.default_rng(11)
        for _ in range(10):
            algebra = _random_milnor(rng)
            connection, curvature = _geometry(algebra)
            r = curvature.r
            for i, j, k, l in product(range(3), repeat=4):
                self.assertEqual(r[i, j, k, l], -r[i, j, l, k])
                self.assertEqual(r[i, j, k, l], r[k, l, i, j])


if __name__ == "__main__":
    main()
