"""
Unit testai spec_io.py: spec failų validacija, skaitymas ir rašymas.
"""
import json
import os
import tempfile
import unittest

import permutation as pm
import spectrum_gen as sg
from diagonal_analysis import ExactVector
from errors import SchemaError
from permutation import GroupedVector
from spec_io import (DIAGONAL, PERMUTATION, load_spec_file, parse_spec_file, parse_vector,
                     parse_vector_argument, save_spec_file, spec_file_to_dict)

SPECS_DIR = os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), 'operator_specs')

HARMONIC = {"operator": {"kind": "diagonal", "spec": {"base": {"family": "harmonic"}}}}


class TestParseSpecFile(unittest.TestCase):

    def test_minimal(self):
        spec_file = parse_spec_file(HARMONIC)
        self.assertEqual(spec_file.kind, DIAGONAL)
        self.assertTrue(spec_file.is_diagonal)
        self.assertEqual(spec_file.spec, sg.harmonic())
        self.assertEqual(spec_file.vectors, ())
        self.assertEqual(spec_file.oracle, {})

    def test_permutation_with_vectors(self):
        data = {
            "operator": {"kind": "permutation", "spec": {"family": "doubling_blocks"}},
            "vectors": [
                {"support": [{"n": 4, "re": 1}]},
                {"groups": [{"selector": "even_offset_blocks"}]},
            ],
            "oracle": {"d": 31, "max_m": 100, "tol": 1e-8, "seed": 3},
        }
        spec_file = parse_spec_file(data)
        self.assertEqual(spec_file.kind, PERMUTATION)
        self.assertEqual(spec_file.spec, pm.DoublingBlocks())
        self.assertIsInstance(spec_file.vectors[0], ExactVector)
        self.assertEqual(spec_file.vectors[1], pm.proper_inclusion_vector())
        self.assertEqual(spec_file.oracle, {"d": 31, "max_m": 100, "tol": 1e-8, "seed": 3})

    def test_schema_errors(self):
        bad = [
            [],
            {"vectors": []},
            dict(HARMONIC, extra=1),
            {"operator": {"kind": "dense", "spec": {}}},
            {"operator": {"kind": "diagonal"}},
            dict(HARMONIC, vectors={"support": []}),
            dict(HARMONIC, vectors=[{"indices": [1]}]),
            dict(HARMONIC, vectors=[{"groups": [{"selector": "even_offset_blocks"}]}]),
            dict(HARMONIC, oracle={"d": 0}),
            dict(HARMONIC, oracle={"tol": -1}),
            dict(HARMONIC, oracle={"seed": -2}),
            dict(HARMONIC, oracle={"horizon": 5}),
        ]
        for data in bad:
            with self.subTest(data=data):
                with self.assertRaises(SchemaError) as ctx:
                    parse_spec_file(data)
                self.assertEqual(ctx.exception.exit_code, 2)


class TestFiles(unittest.TestCase):

    def test_bundled_specs_load(self):
        names = sorted(f for f in os.listdir(SPECS_DIR) if f.endswith('.json'))
        self.assertGreaterEqual(len(names), 9)
        for name in names:
            with self.subTest(spec=name):
                spec_file = load_spec_file(os.path.join(SPECS_DIR, name))
                self.assertIn(spec_file.kind, (DIAGONAL, PERMUTATION))

    def test_save_and_load(self):
        spec_file = load_spec_file(os.path.join(SPECS_DIR, 'doubling_blocks.json'))
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, 'copy.json')
            save_spec_file(spec_file, path)
            restored = load_spec_file(path)
        self.assertEqual(restored, spec_file)
        self.assertEqual(restored.oracle, spec_file.oracle)

    def test_missing_and_broken_files(self):
        with self.assertRaises(SchemaError):
            load_spec_file('/nonexistent/spec.json')
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, 'broken.json')
            with open(path, 'w', encoding='utf-8') as f:
                f.write('{"operator": ')
            with self.assertRaises(SchemaError):
                load_spec_file(path)

    def test_to_dict(self):
        data = spec_file_to_dict(parse_spec_file(HARMONIC))
        self.assertEqual(data["operator"]["spec"], {"base": {"family": "harmonic"}, "overrides": []})
        self.assertNotIn("vectors", data)
        json.dumps(data)


class TestVectorArguments(unittest.TestCase):

    def test_shorthand(self):
        self.assertEqual(parse_vector_argument("2,3"), ExactVector.basis(2, 3))
        self.assertEqual(parse_vector_argument(" 5 "), ExactVector.basis(5))

    def test_json(self):
        x = parse_vector_argument('{"support": [{"n": 1, "re": "1/2", "im": 1}]}')
        self.assertIsInstance(x, ExactVector)
        g = parse_vector_argument('{"groups": [{"selector": "explicit", "indices": [1, 2], "weight": {"re": 1}}]}')
        self.assertIsInstance(g, GroupedVector)

    def test_errors(self):
        for text in ("", "a,b", "0,1", "{broken", '{"x": 1}'):
            with self.subTest(text=text):
                with self.assertRaises(SchemaError):
                    parse_vector_argument(text)
        with self.assertRaises(SchemaError):
            parse_vector([1, 2])


if __name__ == '__main__':
    unittest.main()
