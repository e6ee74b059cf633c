import pandas as pd
from io import StringIO
import logging
import csv
import json


def get_column_map_for_convergence():
    """ Grąžina stulpelių žemėlapį (originalus raktas -> nauja antraštė). """
    return [
        ("n", "Lygis n"),
        ("observed", "Stebima paklaida"),
        ("bound", "Rėžis 2π/2^n"),
        ("tight_bound", "Tikslus rėžis 2sin(π/2^(n+1))"),
    ]


def get_column_map_for_checks():
    return [
        ("check", "Patikra"),
        ("d", "Dimensija d"),
        ("passed", "Sėkminga"),
        ("tolerance", "Tolerancija"),
        ("horizon", "Horizontas"),
        ("surrogate", "Surogatas"),
        ("result", "Rezultatas"),
    ]


def _frame_from_rows(rows: list, columns_map: list) -> pd.DataFrame:
    df = pd.DataFrame(rows)
    df_export = pd.DataFrame()
    for original_key, new_header in columns_map:
        if original_key in df.columns:
            df_export[new_header] = df[original_key]
        else:
            df_export[new_header] = pd.Series([None] * len(df), name=new_header)
            logging.warning(f"CSV generavime nerastas stulpelis su raktu: '{original_key}'. Sukurtas tuščias stulpelis '{new_header}'.")
    return df_export


def _to_csv_string(df: pd.DataFrame) -> str:
    csv_buffer = StringIO()
    df.to_csv(csv_buffer, index=False, sep=';', decimal='.', quoting=csv.QUOTE_ALL)
    return csv_buffer.getvalue()


def generate_convergence_csv(rows: list) -> str:
    """
    Konvergencijos lentelė (approximate --n-max) CSV formatu.

    Args:
        rows: ConvergenceRow.to_dict() žodynai

    Returns:
        str: CSV tekstas su ';' skyrikliu
    """
    if not rows:
        logging.warning("generate_convergence_csv gavo tuščią eilučių sąrašą.")
        return ""
    df = _frame_from_rows(rows, get_column_map_for_convergence())

    # Paskutinė eilutė: ar visi lygiai tenkina rėžį
    within = bool((df["Stebima paklaida"] <= df["Rėžis 2π/2^n"]).all())
    summary = {df.columns[0]: "Visi lygiai rėžyje", df.columns[1]: "taip" if within else "ne"}
    summary_df = pd.DataFrame([summary], columns=df.columns)
    return _to_csv_string(pd.concat([df, summary_df], ignore_index=True))


def generate_checks_csv(checks: list) -> str:
    """Orakulo patikrų įrašai CSV formatu; sudėtiniai rezultatai įrašomi kaip JSON."""
    if not checks:
        logging.warning("generate_checks_csv gavo tuščią patikrų sąrašą.")
        return ""
    prepared = []
    for check in checks:
        row = dict(check)
        if isinstance(row.get("result"), (dict, list)):
            row["result"] = json.dumps(row["result"], ensure_ascii=False, sort_keys=True)
        prepared.append(row)
    df = _frame_from_rows(prepared, get_column_map_for_checks())
    logging.debug(f"DataFrame CSV eksportui: \n{df.head()}")
    return _to_csv_string(df)
