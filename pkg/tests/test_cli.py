"""
CLI testai: grąžinimo kodai, išvesties formatai ir procesas iš komandinės eilutės.
"""
import io
import json
import os
import subprocess
import sys
import tempfile
import unittest
from contextlib import redirect_stdout
from unittest.mock import patch

import cli

ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
SPECS_DIR = os.path.join(ROOT, 'operator_specs')


def _spec(name):
    return os.path.join(SPECS_DIR, name)


def run_cli(*argv):
    """Paleidžia cli.main ir grąžina (kodas, stdout)."""
    buffer = io.StringIO()
    with redirect_stdout(buffer):
        code = cli.main(list(argv))
    return code, buffer.getvalue()


class TestClassify(unittest.TestCase):

    def test_kinds(self):
        cases = {
            'harmonic.json': 'proper_dense',
            'residue_mod_4.json': 'whole_space',
            'zigzag.json': 'zero_only',
            'dyadic_codim1.json': 'proper_non_closed',
            'irrational_dense.json': 'zero_only',
        }
        for name, kind in cases.items():
            with self.subTest(spec=name):
                code, out = run_cli('classify', _spec(name), '--format', 'json')
                self.assertEqual(code, 0)
                self.assertEqual(json.loads(out)["classification"]["kind"], kind)

    def test_text_format(self):
        code, out = run_cli('classify', _spec('residue_mod_4.json'))
        self.assertEqual(code, 0)
        self.assertIn("kind: whole_space", out)
        self.assertIn("exponent: 4", out)


class TestPeriod(unittest.TestCase):

    def test_vector_argument(self):
        code, out = run_cli('period', _spec('harmonic.json'), '--vector', '2,3', '--format', 'json')
        self.assertEqual(code, 0)
        self.assertEqual(json.loads(out)["rows"][0]["period"], 6)

    def test_not_periodic_is_not_an_error(self):
        code, out = run_cli('period', _spec('zigzag.json'), '--vector', '1', '--format', 'json')
        self.assertEqual(code, 0)
        self.assertEqual(json.loads(out)["rows"][0]["verdict"], "not_periodic")

    def test_file_vectors(self):
        code, out = run_cli('period', _spec('doubling_blocks.json'), '--format', 'json')
        self.assertEqual(code, 0)
        rows = json.loads(out)["rows"]
        self.assertEqual(rows[0]["structured"][1], {"M": 2, "holds": True})
        self.assertEqual(rows[1]["period"], 2)

    def test_unsupported_selector(self):
        vector = '{"groups": [{"selector": "even_offset_blocks"}]}'
        code, _ = run_cli('period', _spec('constant_blocks_L4.json'), '--vector', vector, '--M', '2')
        self.assertEqual(code, 3)


class TestApproximate(unittest.TestCase):

    def test_level(self):
        code, out = run_cli('approximate', _spec('irrational_dense.json'), '--level', '3', '--probe', '16',
                            '--format', 'json')
        self.assertEqual(code, 0)
        report = json.loads(out)
        self.assertEqual(report["approximation"]["n"], 3)
        self.assertEqual(report["approximation"]["exponent"], 8)

    def test_csv_convergence(self):
        code, out = run_cli('approximate', _spec('irrational_dense.json'), '--n-max', '5', '--probe', '16',
                            '--format', 'csv')
        self.assertEqual(code, 0)
        lines = out.strip().splitlines()
        self.assertIn('"Lygis n"', lines[0])
        self.assertEqual(len(lines), 7)
        self.assertIn('"Visi lygiai rėžyje";"taip"', lines[-1])

    def test_permutation_is_impossible(self):
        code, _ = run_cli('approximate', _spec('constant_blocks_L4.json'))
        self.assertEqual(code, 4)

    def test_no_probe_limited(self):
        code, _ = run_cli('approximate', _spec('irrational_dense.json'), '--no-probe-limited')
        self.assertEqual(code, 3)


class TestOracle(unittest.TestCase):

    def test_passes(self):
        code, out = run_cli('oracle', _spec('constant_blocks_L4.json'), '--format', 'json')
        self.assertEqual(code, 0)
        report = json.loads(out)
        self.assertTrue(report["passed"])
        self.assertEqual(report["config"]["d"], 16)
        exponent = next(c for c in report["checks"] if c["check"] == "exponent")
        self.assertEqual(exponent["result"]["deviation"], 0.0)

    def test_flags_override_file(self):
        code, out = run_cli('oracle', _spec('residue_mod_4.json'), '--d', '12', '--seed', '4', '--format', 'json')
        self.assertEqual(code, 0)
        config = json.loads(out)["config"]
        self.assertEqual((config["d"], config["seed"]), (12, 4))

    def test_csv(self):
        code, out = run_cli('oracle', _spec('residue_mod_4.json'), '--format', 'csv')
        self.assertEqual(code, 0)
        self.assertIn('"Patikra"', out.splitlines()[0])

    def test_failure_exit_code(self):
        failed = {"config": {}, "passed": False, "checks": [{"check": "kernel", "passed": False}]}
        with patch('reports.cmd_oracle', return_value=failed), patch('cli.generate_checks_csv', return_value=""):
            code, _ = run_cli('oracle', _spec('residue_mod_4.json'), '--format', 'json')
        self.assertEqual(code, 5)

    def test_infinite_orbit_without_surrogate(self):
        spec = {"operator": {"kind": "permutation", "spec": {
            "family": "interleave", "even": {"family": "zigzag_shift"}, "odd": {"family": "doubling_blocks"}}}}
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, 'mixed.json')
            with open(path, 'w', encoding='utf-8') as f:
                json.dump(spec, f)
            code, _ = run_cli('oracle', path, '--d', '8')
        self.assertEqual(code, 3)


class TestExamples(unittest.TestCase):

    def test_listing(self):
        code, out = run_cli('examples', '--format', 'json')
        self.assertEqual(code, 0)
        self.assertEqual(len(json.loads(out)["examples"]), 12)

    def test_named_is_deterministic(self):
        first = run_cli('examples', '--name', 'codim-m', '--format', 'json')
        second = run_cli('examples', '--name', 'codim-m', '--format', 'json')
        self.assertEqual(first, second)
        self.assertEqual(json.loads(first[1])["report"]["classification"]["closure_codimension"], 3)

    def test_xlsx(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, 'out', 'examples.xlsx')
            code, _ = run_cli('examples', '--name', 'bilateral-shift', '--xlsx', path)
            self.assertEqual(code, 0)
            self.assertTrue(os.path.exists(path))


class TestErrors(unittest.TestCase):
    """Schemos klaidos grąžina 2, nepalaikomos šeimos 3."""

    def test_schema_errors(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, 'bad.json')
            with open(path, 'w', encoding='utf-8') as f:
                json.dump({"operator": {"kind": "diagonal", "spec": {"base": {"family": "harmonic"}}},
                           "unexpected": True}, f)
            cases = [
                ('classify', path),
                ('classify', os.path.join(tmp, 'missing.json')),
                ('examples', '--name', 'nope'),
                ('classify', _spec('harmonic.json'), '--format', 'csv'),
                ('period', _spec('harmonic.json'), '--vector', '0'),
                ('oracle', _spec('harmonic.json'), '--d', '-3'),
                ('frobnicate',),
                (),
            ]
            for argv in cases:
                with self.subTest(argv=argv):
                    code, _ = run_cli(*argv)
                    self.assertEqual(code, 2)

    def test_unknown_family_is_unsupported(self):
        specs = {
            'diagonal.json': {"operator": {"kind": "diagonal", "spec": {"base": {"family": "bessel_zeros"}}}},
            'permutation.json': {"operator": {"kind": "permutation", "spec": {"family": "shuffle"}}},
        }
        with tempfile.TemporaryDirectory() as tmp:
            for name, data in specs.items():
                path = os.path.join(tmp, name)
                with open(path, 'w', encoding='utf-8') as f:
                    json.dump(data, f)
                with self.subTest(spec=name):
                    code, _ = run_cli('classify', path)
                    self.assertEqual(code, 3)


class TestSubprocess(unittest.TestCase):

    def test_entry_point(self):
        result = subprocess.run(
            [sys.executable, 'cli.py', 'classify', _spec('harmonic.json'), '--format', 'json'],
            cwd=ROOT, capture_output=True, text=True, timeout=120,
        )
        self.assertEqual(result.returncode, 0, result.stderr)
        self.assertEqual(json.loads(result.stdout)["family"], "harmonic")

    def test_exit_code_propagates(self):
        result = subprocess.run(
            [sys.executable, 'cli.py', 'approximate', _spec('zigzag.json')],
            cwd=ROOT, capture_output=True, text=True, timeout=120,
        )
        self.assertEqual(result.returncode, 4)


if __name__ == '__main__':
    unittest.main()
