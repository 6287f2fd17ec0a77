from fractions import Fraction
from unittest import TestCase, main

from sesquifield.case_studies import (
    DELTA_RING,
    FAMILY_NAMES,
    WITNESS_DELTA,
    OdeOperator,
    circle_parameter,
    classify_nil,
    compare_published_systems,
    derive_sol_ode,
    family_map_condition,
    get_family,
    map_failure_witness,
    nil_systems,
    published_systems,
    rational_sqrt,
    verify_family,
    verify_sol_solution,
)
from sesquifield.engine import DeltaPair
from sesquifield.field import left_invariant_ring


__author__ = "The Sesquifield Project"
__copyright__ = "Copyright 2026-, The Sesquifield Project"
__credits__ = ["The Sesquifield Project"]
__license__ = "BSD"
__version__ = "2026.10.16"
__maintainer__ = "The Sesquifield Project"
__status__ = "alpha"


def _delta_poly(text):
    return DELTA_RING.parse(text)


class TestSolOde(TestCase):
    def test_symbolic_operator(self):
        """d2 f'''' - (d1 + 4 d2) f'' + (2 d1 + 4 d2) f"""
        operator = derive_sol_ode()
        expect = ["2*d1 + 4*d2", "0", "-d1 - 4*d2", "0", "d2"]
        self.assertEqual(list(operator.coefficients), [_delta_poly(c) for c in expect])
        self.assertEqual(operator.sign, 1)

    def test_numeric_operator(self):
        """d = (1, 1) gives f'''' - 5 f'' + 6 f"""
        operator = derive_sol_ode((1, 1))
        self.assertEqual(list(operator.coefficients), [6, 0, -5, 0, 1])
        self.assertEqual(str(operator), "(1)*f'''' + (-5)*f'' + (6)*f")

    def test_order_independent(self):
        """higher jet orders give the same operator"""
        self.assertEqual(derive_sol_ode(order=5), derive_sol_ode())
        with self.assertRaises(ValueError):
            derive_sol_ode(order=3)

    def test_vieta(self):
        """lambda^2 roots 2 and (d1 + 2 d2)/d2"""
        c0, c2, c4 = derive_sol_ode().characteristic_polynomial()
        self.assertEqual(c4, _delta_poly("d2"))
        # product of roots times d2 and sum of roots times d2
        self.assertEqual(c0, _delta_poly("2*(d1 + 2*d2)"))
        self.assertEqual(-c2, _delta_poly("2*d2 + (d1 + 2*d2)"))

    def test_characteristic_value(self):
        """lambda^2 = 2 is a root for every weight pair"""
        operator = derive_sol_ode()
        d = DeltaPair(3, "1/2")
        self.assertEqual(operator.characteristic_value(2, d), 0)
        self.assertEqual(operator.characteristic_value(Fraction(8), d), 0)
        self.assertEqual(operator.characteristic_value(2), 0)
        with self.assertRaises(ValueError):
            operator.characteristic_value(1)
        self.assertEqual(operator.characteristic_value(1, d), Fraction(7, 2))

    def test_odd_terms(self):
        """odd order terms have no lambda^2 form"""
        with self.assertRaises(ValueError):
            OdeOperator([1, 1, 0, 0, 1]).characteristic_polynomial()
        with self.assertRaises(ValueError):
            OdeOperator([1, 0, 1])

    def test_verify_solution(self):
        """closed form exponentials solve the operator"""
        self.assertTrue(verify_sol_solution((1, 1)))
        self.assertTrue(verify_sol_solution(("1/2", 3), constants=(1, 0, 2, 0)))

    def test_verify_solution_errors(self):
        """d2 = 0 and non-positive exponents are refused"""
        with self.assertRaises(ValueError):
            verify_sol_solution((1, 0))
        with self.assertRaises(ValueError):
            verify_sol_solution((-3, 1))

    def test_double_root_warns(self):
        """d1 = 0 makes the two exponent pairs coincide"""
        with self.assertWarns(RuntimeWarning):
            self.assertTrue(verify_sol_solution((0, 1)))


class TestNilSystems(TestCase):
    def setUp(self):
        self.ring = left_invariant_ring(3)

    def test_vertical_matches_published(self):
        """the vertical systems agree exactly"""
        self.assertEqual(nil_systems().vertical, published_systems().vertical)

    def test_horizontal_difference(self):
        """computed minus published is d2 |X|^2 times a monomial"""
        diff = compare_published_systems()
        self.assertTrue(all(p.is_zero() for p in diff["vertical"]))
        expect = [
            self.ring.parse("d2*b*g*(a^2 + b^2 + g^2)"),
            self.ring.parse("d2*a*b*(a^2 + b^2 + g^2)"),
        ]
        self.assertEqual(diff["horizontal"], expect)

    def test_substitute(self):
        """numeric weights leave polynomials in a, b, g"""
        systems = nil_systems((1, -1))
        self.assertEqual(systems.vertical[0], self.ring.parse("a*(4 - b^2)"))
        self.assertEqual(set(systems.to_dict()), {"vertical", "horizontal"})

    def test_evaluate(self):
        vertical, horizontal = nil_systems().evaluate((0, 2, 2), (1, -1))
        self.assertEqual(vertical, (0, 0, 0))
        self.assertEqual(horizontal, (-32, 0))


class TestCircleParameter(TestCase):
    def test_rational_sqrt(self):
        self.assertEqual(rational_sqrt(Fraction(9, 4)), Fraction(3, 2))
        self.assertIsNone(rational_sqrt(2))
        self.assertIsNone(rational_sqrt(-1))

    def test_values(self):
        """t^2 = -(2 d1 + d2)/d2"""
        self.assertEqual(circle_parameter((1, -1)), 1)
        self.assertEqual(circle_parameter(("5/2", -1)), 2)
        self.assertEqual(circle_parameter((-1, 2)), 0)

    def test_errors(self):
        """negative or irrational t^2 and d2 = 0"""
        for d in ((1, 1), (1, -3), (1, 0), (2, -1)):
            with self.assertRaises(ValueError):
                circle_parameter(d)


class TestFamilies(TestCase):
    def test_names(self):
        self.assertIn("diag-23", FAMILY_NAMES)
        with self.assertRaises(KeyError):
            get_family("diag-99")

    def test_diag_23(self):
        """members solve both published systems on d1 = -d2"""
        result = verify_family("diag-23", (1, -1))
        self.assertEqual(result.t, 1)
        self.assertEqual(len(result.members), 4)
        self.assertTrue(result.map_relation_holds)
        self.assertTrue(result.passed)
        self.assertFalse(result.computed_map_agrees)
        self.assertEqual(result.to_dict()["family"], "diag-23")

    def test_map_relation_off(self):
        """away from d1 = -d2 only the vertical system is required"""
        result = verify_family("diag-23", ("5/2", -1))
        self.assertFalse(result.map_relation_holds)
        self.assertTrue(result.passed)

    def test_half_family(self):
        """axis families are verified at d1 = -d2/2"""
        result = verify_family("axis-alpha", (1, 2))
        self.assertEqual(result.delta, DeltaPair(-1, 2))
        self.assertEqual(result.t, 0)
        self.assertTrue(result.passed)

    def test_classify(self):
        """every family passes and the negative control fails"""
        report = classify_nil((1, -1))
        self.assertTrue(report.passed)
        self.assertEqual(len(report.families), len(FAMILY_NAMES))
        self.assertFalse(report.negative_control.is_vector_field)
        self.assertEqual(report.to_dict()["t"], "1")
        with self.assertRaises(ValueError):
            classify_nil((1, 1))

    def test_witness(self):
        """(4, 4, 0) at d = (5/2, -1) solves the vertical system only"""
        witness = map_failure_witness()
        self.assertEqual(witness.delta, WITNESS_DELTA)
        self.assertTrue(witness.is_vector_field)
        self.assertFalse(witness.published_map)
        self.assertFalse(witness.computed_map)
        self.assertEqual(witness.computed_horizontal, (0, -224))


class TestFamilyMapCondition(TestCase):
    def test_diag_23(self):
        """horizontal system on the family after eliminating t"""
        computed = family_map_condition("diag-23")
        self.assertEqual(computed[0], _delta_poly("16*d2*(2*d1 + d2)*(d1 - d2)"))
        self.assertTrue(computed[1].is_zero())
        published = family_map_condition("diag-23", published_systems())
        self.assertEqual(published[0], _delta_poly("-48*d2*(2*d1 + d2)*(d1 + d2)"))

    def test_sampled_family(self):
        with self.assertRaises(ValueError):
            family_map_condition("axis-alpha")


if __name__ == "__main__":
    main()
