"""
Unit testai permutation.py: šeimos, orbitos, klasifikacija, grupiniai vektoriai.
"""
import math
import unittest

import numpy as np

import permutation as pm
from diagonal_analysis import ClassificationKind, ExactVector
from errors import ContractViolation, NotPeriodic, SchemaError, UnsupportedFamily, UnsupportedSelector
from permutation import (ConstantBlocks, DoublingBlocks, EvenOffsetBlocks, ExplicitGroup, FiniteCycles,
                         GroupedVector, Interleave, Inverse, ZigzagShift)
from utils import INFINITE


class TestFamilies(unittest.TestCase):
    """Šeimų σ ir σ^{-1} reikšmės."""

    def test_doubling_blocks(self):
        spec = DoublingBlocks()
        expected = {1: 1, 2: 3, 3: 2, 4: 5, 6: 7, 7: 4}
        for n, image in expected.items():
            with self.subTest(n=n):
                self.assertEqual(pm.apply(spec, n), image)
                self.assertEqual(pm.apply_inverse(spec, image), n)
        self.assertEqual(pm.orbit_card(spec, 5), 4)
        self.assertEqual(pm.orbit_card(spec, 1), 1)

    def test_constant_blocks(self):
        spec = ConstantBlocks(3)
        self.assertEqual(pm.apply(spec, 3), 1)
        self.assertEqual(pm.apply(spec, 4), 5)
        self.assertEqual(pm.apply_inverse(spec, 4), 6)
        self.assertEqual(pm.orbit_card(spec, 100), 3)

    def test_zigzag(self):
        spec = ZigzagShift()
        self.assertEqual([pm.zigzag_label(n) for n in range(1, 6)], [0, 1, -1, 2, -2])
        self.assertEqual(pm.apply(spec, 1), 2)
        self.assertEqual(pm.apply(spec, 3), 1)
        self.assertEqual(pm.apply_inverse(spec, 1), 3)
        self.assertEqual(pm.orbit_card(spec, 7), INFINITE)

    def test_interleave(self):
        spec = Interleave(ZigzagShift(), ConstantBlocks(2))
        self.assertEqual(pm.apply(spec, 2), 4)
        self.assertEqual(pm.apply(spec, 1), 3)
        self.assertEqual(pm.apply(spec, 3), 1)
        self.assertEqual(pm.orbit_card(spec, 2), INFINITE)
        self.assertEqual(pm.orbit_card(spec, 5), 2)

    def test_finite_cycles(self):
        spec = FiniteCycles(((1, 2), (3, 4, 5)))
        self.assertEqual(pm.apply(spec, 2), 1)
        self.assertEqual(pm.apply(spec, 5), 3)
        self.assertEqual(pm.apply(spec, 9), 9)
        self.assertEqual(pm.orbit_card(spec, 4), 3)
        self.assertEqual(pm.orbit_card(spec, 9), 1)

    def test_finite_cycles_contracts(self):
        for cycles in (((1, 2), (2, 3)), ((),), ((0, 1),)):
            with self.subTest(cycles=cycles):
                with self.assertRaises(ContractViolation):
                    FiniteCycles(cycles)
        with self.assertRaises(ContractViolation):
            ConstantBlocks(0)

    def test_bad_index(self):
        with self.assertRaises(ContractViolation):
            pm.apply(DoublingBlocks(), 0)

    def test_inverse(self):
        spec = FiniteCycles(((1, 2, 3),))
        self.assertEqual(pm.apply(pm.inverse_spec(spec), 2), 1)
        wrapped = pm.inverse_spec(DoublingBlocks())
        self.assertIsInstance(wrapped, Inverse)
        self.assertEqual(pm.apply(wrapped, 4), 7)
        self.assertEqual(pm.inverse_spec(wrapped), DoublingBlocks())
        self.assertEqual(pm.core_family(Inverse(Inverse(ZigzagShift()))), ZigzagShift())


class TestOrbits(unittest.TestCase):

    def test_orbit_of(self):
        self.assertEqual(pm.orbit_of(DoublingBlocks(), 4), [4, 5, 6, 7])
        self.assertEqual(pm.orbit_of(FiniteCycles(((2, 5),)), 5), [5, 2])
        with self.assertRaises(ContractViolation):
            pm.orbit_of(ZigzagShift(), 1)

    def test_sigma_power(self):
        self.assertEqual(pm.sigma_power(ConstantBlocks(3), 1, -1), 3)
        self.assertEqual(pm.sigma_power(ConstantBlocks(3), 1, 301), 2)
        self.assertEqual(pm.sigma_power(ZigzagShift(), 1, 2), 4)
        self.assertEqual(pm.sigma_power(ZigzagShift(), 1, -2), 5)


class TestClassification(unittest.TestCase):
    """Permutacijų P(T) klasės; kodimensija visada 0 arba begalinė."""

    def test_cases(self):
        K = ClassificationKind
        cases = [
            (ConstantBlocks(4), K.WHOLE_SPACE, 0),
            (FiniteCycles(((1, 2), (3, 4, 5))), K.WHOLE_SPACE, 0),
            (DoublingBlocks(), K.PROPER_DENSE, 0),
            (Interleave(DoublingBlocks(), ConstantBlocks(3)), K.PROPER_DENSE, 0),
            (ZigzagShift(), K.ZERO_ONLY, INFINITE),
            (Interleave(ZigzagShift(), ZigzagShift()), K.ZERO_ONLY, INFINITE),
            (Interleave(ZigzagShift(), ConstantBlocks(2)), K.CLOSED_PROPER, INFINITE),
            (Interleave(ZigzagShift(), DoublingBlocks()), K.PROPER_NON_CLOSED, INFINITE),
        ]
        for spec, kind, codim in cases:
            with self.subTest(family=spec.family, kind=kind.value):
                c = pm.classify_permutation(spec)
                self.assertEqual(c.kind, kind)
                self.assertEqual(c.closure_codimension, codim)

    def test_exponents(self):
        self.assertEqual(pm.classify_permutation(ConstantBlocks(4)).exponent, 4)
        self.assertEqual(pm.classify_permutation(FiniteCycles(((1, 2), (3, 4, 5)))).exponent, 6)
        self.assertEqual(pm.classify_permutation(pm.identity_spec()).exponent, 1)
        self.assertEqual(pm.classify_permutation(Interleave(ZigzagShift(), ConstantBlocks(2))).kernel_exponent, 2)

    def test_inverse_keeps_class(self):
        for spec in (DoublingBlocks(), ZigzagShift(), ConstantBlocks(5)):
            with self.subTest(family=spec.family):
                self.assertEqual(pm.classify_permutation(spec).to_dict(),
                                 pm.classify_permutation(Inverse(spec)).to_dict())


class TestPeriods(unittest.TestCase):

    def test_finite_cycles(self):
        spec = FiniteCycles(((1, 2), (3, 4, 5)))
        self.assertEqual(pm.period_of_vector(spec, ExactVector.basis(3, 4, 5)), 1)
        self.assertEqual(pm.period_of_vector(spec, ExactVector.basis(3)), 3)
        self.assertEqual(pm.period_of_vector(spec, ExactVector.from_mapping({1: 2, 3: 1j})), 6)
        self.assertEqual(pm.period_of_vector(spec, ExactVector.basis(1, 2, 7)), 1)

    def test_doubling_blocks(self):
        self.assertEqual(pm.period_of_vector(DoublingBlocks(), ExactVector.basis(4, 6)), 2)
        self.assertEqual(pm.period_of_vector(DoublingBlocks(), ExactVector.basis(8)), 8)

    def test_infinite_orbit(self):
        with self.assertRaises(NotPeriodic):
            pm.period_of_vector(ZigzagShift(), ExactVector.basis(1))
        self.assertFalse(pm.is_periodic(ZigzagShift(), ExactVector.basis(1)))
        self.assertTrue(pm.is_periodic(ConstantBlocks(2), ExactVector.basis(1)))

    def test_zero_vector(self):
        with self.assertRaises(ContractViolation):
            pm.period_of_vector(ConstantBlocks(2), ExactVector())


class TestGroupedVectors(unittest.TestCase):
    """T²x = x, bet x nepriklauso baigtinių orbitų sąjungai."""

    def test_proper_inclusion(self):
        x = pm.proper_inclusion_vector()
        self.assertTrue(pm.verify_structured_period(DoublingBlocks(), x, 2))
        self.assertTrue(pm.verify_structured_period(DoublingBlocks(), x, 4))
        self.assertFalse(pm.verify_structured_period(DoublingBlocks(), x, 1))
        self.assertFalse(pm.verify_structured_period(DoublingBlocks(), x, 3))
        self.assertFalse(pm.naive_union_member(DoublingBlocks(), x))
        self.assertTrue(pm.verify_structured_period(Inverse(DoublingBlocks()), x, 2))

    def test_to_numeric(self):
        x = pm.proper_inclusion_vector().to_numeric(7)
        expected = np.zeros(7, dtype=complex)
        expected[1] = 0.5
        expected[3] = expected[5] = 2.0 ** -4
        np.testing.assert_array_equal(x, expected)

    def test_unsupported_selector(self):
        with self.assertRaises(UnsupportedSelector):
            pm.verify_structured_period(ConstantBlocks(4), pm.proper_inclusion_vector(), 2)

    def test_square_summability(self):
        x = GroupedVector((EvenOffsetBlocks(1, None, (1, 0)),))
        self.assertFalse(x.square_summable)
        with self.assertRaises(ContractViolation):
            pm.verify_structured_period(DoublingBlocks(), x, 2)
        self.assertTrue(GroupedVector((EvenOffsetBlocks(1, 3, (1, 0)),)).square_summable)

    def test_explicit_groups(self):
        x = GroupedVector((ExplicitGroup({2, 3}, (1, 0)),))
        self.assertTrue(pm.verify_structured_period(DoublingBlocks(), x, 1))
        self.assertTrue(pm.naive_union_member(DoublingBlocks(), x))
        self.assertFalse(pm.verify_structured_period(ZigzagShift(), x, 1))
        self.assertFalse(pm.verify_structured_period(ConstantBlocks(3), GroupedVector((ExplicitGroup({1}, (1, 0)),)), 2))

    def test_overlap_refused(self):
        with self.assertRaises(ContractViolation):
            GroupedVector((ExplicitGroup({2}, (1, 0)), EvenOffsetBlocks()))
        with self.assertRaises(ContractViolation):
            GroupedVector((EvenOffsetBlocks(1, 3), EvenOffsetBlocks(3, None)))

    def test_bounded_union(self):
        self.assertTrue(pm.naive_union_member(ConstantBlocks(4), pm.proper_inclusion_vector()))
        self.assertTrue(pm.naive_union_member(DoublingBlocks(), ExactVector.basis(4, 6)))
        self.assertFalse(pm.naive_union_member(ZigzagShift(), ExactVector.basis(1)))

    def test_infinite_selector_union(self):
        x = pm.proper_inclusion_vector()
        cases = [
            (ZigzagShift(), False),
            (Interleave(DoublingBlocks(), FiniteCycles(((1, 2),))), False),
            (Inverse(Interleave(ZigzagShift(), ConstantBlocks(2))), False),
            (Interleave(ConstantBlocks(3), ZigzagShift()), True),
            (Interleave(FiniteCycles(((1, 2, 3),)), DoublingBlocks()), True),
            (FiniteCycles(((2, 4), (1, 3, 5))), True),
        ]
        for spec, expected in cases:
            with self.subTest(family=spec.family, expected=expected):
                self.assertEqual(pm.naive_union_member(spec, x), expected)

    def test_dict_roundtrip(self):
        x = GroupedVector((ExplicitGroup({1}, (2, 0)), EvenOffsetBlocks(2, None)))
        data = x.to_dict()
        self.assertEqual(data["groups"][1]["weight"], "two_pow_neg_k_squared")
        self.assertEqual(GroupedVector.from_dict(data), x)

    def test_from_dict_errors(self):
        bad = [
            {"groups": [{"selector": "odd_blocks"}]},
            {"groups": [{"selector": "explicit", "indices": [1]}]},
            {"groups": [{"selector": "explicit", "indices": [2], "weight": {"re": 1}},
                        {"selector": "even_offset_blocks"}]},
            {"vectors": []},
        ]
        for data in bad:
            with self.subTest(data=data):
                with self.assertRaises(SchemaError):
                    GroupedVector.from_dict(data)


class TestDistance(unittest.TestCase):

    def test_distance(self):
        self.assertEqual(pm.permutation_distance_check(ConstantBlocks(2), pm.identity_spec(), 4), math.sqrt(2))
        self.assertEqual(pm.permutation_distance_check(DoublingBlocks(), DoublingBlocks(), 64), 0.0)
        # skiriasi tik už zondavimo ribos
        self.assertEqual(pm.permutation_distance_check(FiniteCycles(((9, 10),)), pm.identity_spec(), 8), 0.0)


class TestSerialization(unittest.TestCase):

    def test_roundtrip(self):
        specs = [
            Interleave(Inverse(ConstantBlocks(3)), FiniteCycles(((1, 2),))),
            DoublingBlocks(),
            Inverse(ZigzagShift()),
        ]
        for spec in specs:
            with self.subTest(family=spec.family):
                self.assertEqual(pm.spec_from_dict(pm.spec_to_dict(spec)), spec)

    def test_schema_errors(self):
        bad = [
            {"family": None},
            {"family": ["shuffle"]},
            {"family": "constant_blocks", "L": 0},
            {"family": "constant_blocks"},
            {"family": "doubling_blocks", "L": 2},
            {"family": "finite_cycles", "cycles": [[1, 2], [2, 3]]},
            {"family": "finite_cycles", "cycles": "1,2"},
            [],
        ]
        for data in bad:
            with self.subTest(data=data):
                with self.assertRaises(SchemaError):
                    pm.spec_from_dict(data)

    def test_unknown_family_is_unsupported(self):
        for data in ({"family": "shuffle"}, {"family": "inverse", "base": {"family": "shuffle"}}):
            with self.subTest(data=data):
                with self.assertRaises(UnsupportedFamily) as ctx:
                    pm.spec_from_dict(data)
                self.assertEqual(ctx.exception.exit_code, 3)


if __name__ == '__main__':
    unittest.main()
