"""
Unit testai diagonal_analysis.py: klasifikacija, periodai, kompaktiškumas.
"""
import unittest
from fractions import Fraction

import numpy as np

import spectrum_gen as sg
import unit_scalar as us
from diagonal_analysis import (ClassificationKind, ExactVector, PeriodicClassification, classify_diagonal,
                               compactness_note, compactness_note_from_eigenvalues, is_periodic,
                               period_of_vector, periodic_index_set, periods_report)
from errors import ContractViolation, NotPeriodic, SchemaError
from unit_scalar import IDENTITY, RationalRotation
from utils import INFINITE


def _finite_roots_spec():
    """α_1 = 1, α_2 = -1, visos kitos e^{2πi(√2-1)}."""
    return sg.SpectrumSpec(sg.Constant(us.sqrt2_offset(0, 1)),
                           ((1, IDENTITY), (2, RationalRotation(1, 2))))


class TestExactVector(unittest.TestCase):

    def test_zero_coefficients_dropped(self):
        x = ExactVector.from_mapping({3: 0, 1: 2, 2: (Fraction(1, 2), -1)})
        self.assertEqual(x.indices, [1, 2])
        self.assertEqual(x.coefficients[2], (Fraction(1, 2), Fraction(-1)))
        self.assertTrue(ExactVector.from_mapping({4: 0}).is_zero())

    def test_complex_coefficients(self):
        x = ExactVector.from_mapping({1: 2 + 3j})
        self.assertEqual(x.coefficients[1], (Fraction(2), Fraction(3)))
        with self.assertRaises(ContractViolation):
            ExactVector.from_mapping({1: 0.5j})

    def test_add(self):
        x = ExactVector.basis(1, 2).add(ExactVector.from_mapping({2: -1, 3: 1}))
        self.assertEqual(x.indices, [1, 3])

    def test_to_numeric(self):
        x = ExactVector.from_mapping({2: (1, 1), 9: 5})
        np.testing.assert_array_equal(x.to_numeric(3), np.array([0, 1 + 1j, 0]))

    def test_contracts(self):
        with self.assertRaises(ContractViolation):
            ExactVector.basis(0)
        with self.assertRaises(ContractViolation):
            ExactVector(((1, (1, 0)), (1, (2, 0))))

    def test_dict_roundtrip(self):
        x = ExactVector.from_mapping({2: (Fraction(1, 3), -2)})
        data = x.to_dict()
        self.assertEqual(data, {"support": [{"n": 2, "re": "1/3", "im": -2}]})
        self.assertEqual(ExactVector.from_dict(data), x)

    def test_from_dict_errors(self):
        bad = [
            {"support": [{"n": 1, "re": 1}, {"n": 1, "re": 2}]},
            {"support": [{"n": 0, "re": 1}]},
            {"support": [{"n": 1, "re": 0.5}]},
            {"support": [{"n": 1, "phase": 1}]},
            {"support": [], "d": 3},
        ]
        for data in bad:
            with self.subTest(data=data):
                with self.assertRaises(SchemaError):
                    ExactVector.from_dict(data)


class TestClassification(unittest.TestCase):
    """Penkios P(T) klasės pagal spektro metaduomenis."""

    def test_harmonic_is_proper_dense(self):
        c = classify_diagonal(sg.harmonic())
        self.assertEqual(c.kind, ClassificationKind.PROPER_DENSE)
        self.assertFalse(c.closed)
        self.assertTrue(c.dense)
        self.assertEqual(c.closure_codimension, 0)
        self.assertEqual(c.rule, "all_roots_unbounded_order")

    def test_residue_pattern_is_whole_space(self):
        c = classify_diagonal(sg.residue_pattern(4))
        self.assertEqual(c.kind, ClassificationKind.WHOLE_SPACE)
        self.assertEqual(c.exponent, 4)
        self.assertEqual(c.kernel_exponent, 4)

    def test_identity(self):
        c = classify_diagonal(sg.constant(IDENTITY))
        self.assertEqual(c.kind, ClassificationKind.WHOLE_SPACE)
        self.assertEqual(c.exponent, 1)

    def test_irrational_dense_is_zero_only(self):
        c = classify_diagonal(sg.irrational_dense())
        self.assertEqual(c.kind, ClassificationKind.ZERO_ONLY)
        self.assertTrue(c.closed)
        self.assertEqual(c.closure_codimension, INFINITE)
        self.assertIsNone(c.kernel_exponent)

    def test_codimension_examples(self):
        for m in (1, 2, 5):
            with self.subTest(m=m):
                c = classify_diagonal(sg.codimension_example(m))
                self.assertEqual(c.kind, ClassificationKind.PROPER_NON_CLOSED)
                self.assertFalse(c.closed)
                self.assertFalse(c.dense)
                self.assertEqual(c.closure_codimension, m)

    def test_finitely_many_roots_is_closed(self):
        c = classify_diagonal(_finite_roots_spec())
        self.assertEqual(c.kind, ClassificationKind.CLOSED_PROPER)
        self.assertEqual(c.kernel_exponent, 2)
        self.assertEqual(c.closure_codimension, INFINITE)

    def test_adjoint_has_same_class(self):
        for spec in (sg.codimension_example(1), sg.harmonic(), sg.residue_pattern(6), sg.irrational_dense()):
            with self.subTest(family=spec.base.family):
                original = classify_diagonal(spec)
                adjoint = classify_diagonal(sg.adjoint_spec(spec))
                self.assertEqual(original.to_dict(), adjoint.to_dict())

    def test_inconsistent_classification_refused(self):
        with self.assertRaises(ContractViolation):
            PeriodicClassification(ClassificationKind.WHOLE_SPACE, closed=False, dense=True,
                                   closure_codimension=0, exponent=1, kernel_exponent=1)
        with self.assertRaises(ContractViolation):
            PeriodicClassification(ClassificationKind.ZERO_ONLY, closed=True, dense=False,
                                   closure_codimension=0, exponent=2)

    def test_to_dict(self):
        data = classify_diagonal(sg.irrational_dense()).to_dict()
        self.assertEqual(data["kind"], "zero_only")
        self.assertEqual(data["closure_codimension"], "inf")
        self.assertTrue(data["summary"])


class TestPeriods(unittest.TestCase):

    def test_harmonic_period_is_lcm(self):
        self.assertEqual(period_of_vector(sg.harmonic(), ExactVector.basis(2, 3)), 6)
        self.assertEqual(period_of_vector(sg.harmonic(), ExactVector.basis(4, 6, 10)), 60)

    def test_basis_vector_periods(self):
        for n in range(1, 30):
            with self.subTest(n=n):
                self.assertEqual(period_of_vector(sg.harmonic(), ExactVector.basis(n)), n)

    def test_not_periodic(self):
        spec = sg.codimension_one_example()
        with self.assertRaises(NotPeriodic):
            period_of_vector(spec, ExactVector.basis(1, 2))
        self.assertFalse(is_periodic(spec, ExactVector.basis(1)))
        self.assertTrue(is_periodic(spec, ExactVector.basis(2, 3)))

    def test_zero_vector(self):
        with self.assertRaises(ContractViolation):
            period_of_vector(sg.harmonic(), ExactVector())

    def test_periodic_index_set(self):
        spec = sg.codimension_one_example()
        self.assertEqual(periodic_index_set(spec, 8), list(range(2, 9)))
        self.assertEqual(periodic_index_set(spec, 8, max_order=8), [2, 3, 4])
        self.assertEqual(periodic_index_set(sg.irrational_dense(), 10), [])

    def test_periods_report(self):
        rows = periods_report(sg.codimension_one_example(), [ExactVector.basis(3), ExactVector.basis(1)])
        self.assertEqual(rows[0]["verdict"], "periodic")
        self.assertEqual(rows[0]["period"], 4)
        self.assertEqual(rows[1]["verdict"], "not_periodic")
        self.assertIsNone(rows[1]["period"])


class TestCompactness(unittest.TestCase):

    def test_without_certificate(self):
        note = compactness_note(sg.harmonic(), False)
        self.assertFalse(note.certified)
        self.assertIsNone(note.dimension)

    def test_with_certificate(self):
        note = compactness_note(_finite_roots_spec(), True)
        self.assertTrue(note.certified)
        self.assertEqual(note.dimension, 2)

    def test_certificate_contradiction(self):
        with self.assertRaises(ContractViolation):
            compactness_note(sg.harmonic(), True)

    def test_from_eigenvalues(self):
        note = compactness_note_from_eigenvalues([1.0, 0.5, -1.0, 0.0, 1j])
        self.assertEqual(note.periodic_indices, (0, 2, 4))
        self.assertEqual(note.dimension, 3)
        self.assertEqual(note.to_dict()["dim_P"], 3)


if __name__ == '__main__':
    unittest.main()
