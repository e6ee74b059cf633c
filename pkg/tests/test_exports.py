"""
CSV ir Excel eksporto testai.
"""
import io
import os
import tempfile
import unittest

import pandas as pd
from openpyxl import load_workbook

import spectrum_gen as sg
from approximation import convergence_table
from generate_csv import (generate_checks_csv, generate_convergence_csv, get_column_map_for_checks,
                          get_column_map_for_convergence)
from generate_excel import flatten_report, generate_examples_workbook


class TestConvergenceCsv(unittest.TestCase):

    def test_headers_and_summary(self):
        rows = [row.to_dict() for row in convergence_table(sg.irrational_dense(), 4, 16)]
        text = generate_convergence_csv(rows)
        df = pd.read_csv(io.StringIO(text), sep=';', dtype=str, keep_default_na=False)
        self.assertEqual(list(df.columns), [header for _, header in get_column_map_for_convergence()])
        self.assertEqual(len(df), 5)
        self.assertEqual(list(df["Lygis n"][:4]), ["1", "2", "3", "4"])
        self.assertEqual(df.iloc[-1]["Lygis n"], "Visi lygiai rėžyje")
        self.assertEqual(df.iloc[-1]["Stebima paklaida"], "taip")

    def test_summary_reports_violation(self):
        rows = [{"n": 1, "observed": 4.0, "bound": 3.14, "tight_bound": 1.41}]
        self.assertIn('"ne"', generate_convergence_csv(rows))

    def test_quoting(self):
        text = generate_convergence_csv([{"n": 1, "observed": 0.5, "bound": 3.0, "tight_bound": 1.0}])
        self.assertTrue(text.startswith('"Lygis n";"Stebima paklaida"'))

    def test_empty(self):
        self.assertEqual(generate_convergence_csv([]), "")


class TestChecksCsv(unittest.TestCase):

    def test_nested_result_is_json(self):
        checks = [
            {"check": "kernel", "d": 8, "result": {"match": True}, "passed": True, "tolerance": 1e-9,
             "horizon": None, "surrogate": False},
            {"check": "surrogate_period", "d": 8, "result": 8, "passed": True, "tolerance": 1e-9,
             "horizon": 64, "surrogate": True},
        ]
        df = pd.read_csv(io.StringIO(generate_checks_csv(checks)), sep=';', dtype=str, keep_default_na=False)
        self.assertEqual(list(df.columns), [header for _, header in get_column_map_for_checks()])
        self.assertEqual(df.iloc[0]["Rezultatas"], '{"match": true}')
        self.assertEqual(df.iloc[1]["Surogatas"], "True")

    def test_missing_column(self):
        df = pd.read_csv(io.StringIO(generate_checks_csv([{"check": "x", "passed": False}])), sep=';')
        self.assertIn("Horizontas", df.columns)

    def test_empty(self):
        self.assertEqual(generate_checks_csv([]), "")


class TestExcel(unittest.TestCase):

    def test_flatten_report(self):
        rows = flatten_report({"b": {"c": 1}, "a": [1, 2], "rows": [{"x": None}]})
        self.assertEqual(rows, [("a", "[1, 2]"), ("b.c", 1), ("rows[0].x", None)])

    def test_workbook(self):
        reports = {
            "first": {"name": "first", "report": {"passed": True, "value": 0.5}},
            "second": {"name": "second", "report": {"missing": None}},
        }
        with tempfile.TemporaryDirectory() as tmp:
            path = generate_examples_workbook(reports, os.path.join(tmp, 'examples.xlsx'))
            wb = load_workbook(path)
            self.assertEqual(wb.sheetnames, ["first", "second"])
            ws = wb["first"]
            self.assertEqual([ws.cell(row=1, column=c).value for c in (1, 2)], ["Laukas", "Reikšmė"])
            values = {ws.cell(row=r, column=1).value: ws.cell(row=r, column=2).value for r in range(2, ws.max_row + 1)}
            self.assertEqual(values["report.passed"], "taip")
            self.assertEqual(values["report.value"], 0.5)

    def test_empty_workbook(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = generate_examples_workbook({}, os.path.join(tmp, 'empty.xlsx'))
            self.assertEqual(load_workbook(path).sheetnames, ["Pavyzdžiai"])


if __name__ == '__main__':
    unittest.main()
