import os
import json
import logging
from openpyxl import Workbook
from openpyxl.utils import get_column_letter
from openpyxl.styles import Font, Alignment, Border, Side, PatternFill

HEADER_FILL = PatternFill(start_color="007BFF", end_color="007BFF", fill_type="solid")


def get_column_map_for_excel():
    """ Grąžina stulpelių žemėlapį (lauko kelias -> antraštė). """
    return [
        ("path", "Laukas"),
        ("value", "Reikšmė"),
    ]


def flatten_report(report, prefix: str = "") -> list:
    """
    Ataskaitos žodyną išskleidžia į (kelias, reikšmė) poras.

    Sąrašai su paprastomis reikšmėmis rašomi viena ląstele kaip JSON.
    """
    rows = []
    if isinstance(report, dict):
        for key in sorted(report):
            path = f"{prefix}.{key}" if prefix else str(key)
            rows.extend(flatten_report(report[key], path))
    elif isinstance(report, list) and any(isinstance(item, (dict, list)) for item in report):
        for i, item in enumerate(report):
            rows.extend(flatten_report(item, f"{prefix}[{i}]"))
    elif isinstance(report, list):
        rows.append((prefix, json.dumps(report, ensure_ascii=False)))
    else:
        rows.append((prefix, report))
    return rows


def _sheet_title(name: str) -> str:
    # Excel lapo pavadinimas ne ilgesnis nei 31 simbolis
    return name[:31]


def generate_examples_workbook(reports: dict, output_path: str) -> str:
    """
    Sukuria Excel failą su vienu lapu kiekvienam auksiniam pavyzdžiui.

    Args:
        reports: {pavadinimas: cmd_examples(pavadinimas)}
        output_path: Kur išsaugoti .xlsx

    Returns:
        str: Išsaugoto failo kelias
    """
    wb = Workbook()
    wb.remove(wb.active)

    if not reports:
        logging.warning("GENERATE_EXCEL.PY - gavo tuščią ataskaitų žodyną.")
        ws = wb.create_sheet('Pavyzdžiai')
        _write_header(ws)
        return _finalize_excel_formatting(wb, output_path)

    for name in sorted(reports):
        ws = wb.create_sheet(_sheet_title(name))
        _write_header(ws)
        for row_idx, (path, value) in enumerate(flatten_report(reports[name]), 2):
            ws.cell(row=row_idx, column=1, value=path)
            cell = ws.cell(row=row_idx, column=2, value=_cell_value(value))
            if isinstance(value, float):
                cell.number_format = '0.000000000000'
                cell.alignment = Alignment(horizontal="right", vertical="center")

    return _finalize_excel_formatting(wb, output_path)


def _cell_value(value):
    if value is None:
        return ""
    if isinstance(value, bool):
        return "taip" if value else "ne"
    return value


def _write_header(ws):
    for col_idx, (_, header) in enumerate(get_column_map_for_excel(), 1):
        cell = ws.cell(row=1, column=col_idx, value=header)
        cell.font = Font(bold=True, color="FFFFFF")
        cell.alignment = Alignment(horizontal="center", vertical="center", wrap_text=True)
        cell.fill = HEADER_FILL


def _finalize_excel_formatting(wb, output_path):
    """Užbaigia Excel formatavimą ir išsaugo failą."""
    thin_border = Border(
        left=Side(style='thin'),
        right=Side(style='thin'),
        top=Side(style='thin'),
        bottom=Side(style='thin')
    )

    for ws in wb.worksheets:
        for row in ws.iter_rows():
            for cell in row:
                cell.border = thin_border
        ws.column_dimensions[get_column_letter(1)].width = 45
        ws.column_dimensions[get_column_letter(2)].width = 60
        ws.row_dimensions[1].height = 30

    directory = os.path.dirname(output_path)
    if directory:
        os.makedirs(directory, exist_ok=True)
    wb.save(output_path)
    logging.info("Excel failas sėkmingai sugeneruotas: %s", output_path)
    return output_path
