"""
Ataskaitų kūrėjai, bendri CLI ir Flask API sluoksniams, ir auksinių pavyzdžių registras.

Visos ataskaitos yra JSON tinkami žodynai; to_json rikiuoja raktus, todėl
išvestis deterministinė esant tiems patiems parametrams ir seed.
"""
import json
import math
from typing import Any, Dict, List, Optional

import numpy as np

import approximation as ap
import diagonal_analysis as da
import permutation as pm
import spectrum_gen as sg
import truncation_oracle as to
import unit_scalar as us
from diagonal_analysis import ExactVector
from errors import NotNormal, NotPeriodic, SchemaError
from permutation import GroupedVector
from spec_io import SpecFile, load_spec_file
from utils import log_function_call

GOLDEN_PRECISION = 12


def to_json(report: Any) -> str:
    return json.dumps(report, ensure_ascii=False, indent=2, sort_keys=True)


def _clean(value: float) -> float:
    """Apvalina auksinėms ataskaitoms; -0.0 tampa 0.0."""
    return round(float(value), GOLDEN_PRECISION) + 0.0


def render_text(report: Any, indent: int = 0) -> str:
    """Žmogui skaitoma ataskaitos forma (--format text)."""
    pad = "  " * indent
    lines = []
    if isinstance(report, dict):
        for key in sorted(report):
            value = report[key]
            if isinstance(value, (dict, list)) and value:
                lines.append(f"{pad}{key}:")
                lines.append(render_text(value, indent + 1))
            else:
                lines.append(f"{pad}{key}: {_scalar_text(value)}")
    elif isinstance(report, list):
        for item in report:
            if isinstance(item, (dict, list)):
                lines.append(f"{pad}-")
                lines.append(render_text(item, indent + 1))
            else:
                lines.append(f"{pad}- {_scalar_text(item)}")
    else:
        lines.append(f"{pad}{_scalar_text(report)}")
    return "\n".join(lines)


def _scalar_text(value: Any) -> str:
    if value is None:
        return "-"
    if isinstance(value, bool):
        return "taip" if value else "ne"
    if isinstance(value, (list, dict)):
        return "[]" if isinstance(value, list) else "{}"
    return str(value)


# ======================
# Ataskaitos spec failams
# ======================

def classify_report(spec_file: SpecFile) -> Dict[str, Any]:
    if spec_file.is_diagonal:
        classification = da.classify_diagonal(spec_file.spec)
        metadata = sg.metadata(spec_file.spec).to_dict()
        family = spec_file.spec.base.family
    else:
        classification = pm.classify_permutation(spec_file.spec)
        metadata = pm.permutation_metadata(spec_file.spec).to_dict()
        family = spec_file.spec.family
    return {
        "operator": spec_file.kind,
        "family": family,
        "classification": classification.to_dict(),
        "metadata": metadata,
    }


def _exact_period_row(spec_file: SpecFile, x: ExactVector) -> Dict[str, Any]:
    period_fn = da.period_of_vector if spec_file.is_diagonal else pm.period_of_vector
    try:
        return {"vector": x.to_dict(), "verdict": "periodic", "period": period_fn(spec_file.spec, x)}
    except NotPeriodic as e:
        return {"vector": x.to_dict(), "verdict": "not_periodic", "period": None, "reason": str(e)}


def _structured_period_row(spec_file: SpecFile, x: GroupedVector, probes: List[int]) -> Dict[str, Any]:
    if spec_file.is_diagonal:
        raise SchemaError("Grupiniai vektoriai galimi tik permutacijų operatoriams")
    checks = [{"M": M, "holds": pm.verify_structured_period(spec_file.spec, x, M)} for M in probes]
    return {
        "vector": x.to_dict(),
        "structured": checks,
        "naive_union_member": pm.naive_union_member(spec_file.spec, x),
    }


def period_report(spec_file: SpecFile, vectors: List, M: Optional[int] = None) -> Dict[str, Any]:
    """
    Periodų ataskaita kiekvienam vektoriui.

    Args:
        spec_file: Nuskaitytas spec failas
        vectors: Tikslūs arba grupiniai vektoriai
        M: Grupiniams vektoriams tikrinamas T^M x = x; None reiškia M = 1..4

    Returns:
        dict su 'rows' sąrašu
    """
    if not vectors:
        raise SchemaError("Nenurodytas nė vienas vektorius (--vector arba 'vectors' faile)")
    probes = [M] if M is not None else [1, 2, 3, 4]
    rows = []
    for x in vectors:
        if isinstance(x, GroupedVector):
            rows.append(_structured_period_row(spec_file, x, probes))
        else:
            rows.append(_exact_period_row(spec_file, x))
    return {"operator": spec_file.kind, "rows": rows}


def approximation_report(spec_file: SpecFile, level: int, probe: int, n_max: Optional[int] = None,
                         allow_probe_limited: bool = True) -> Dict[str, Any]:
    if not spec_file.is_diagonal:
        ap.refuse_permutation_approximation()
    result = ap.approximate(spec_file.spec, level, probe, allow_probe_limited)
    snapped_class = da.classify_diagonal(result.snapped_spec)
    report = {
        "approximation": result.to_dict(),
        "snapped_classification": snapped_class.to_dict(),
    }
    if n_max is not None:
        report["convergence"] = [row.to_dict() for row in ap.convergence_table(spec_file.spec, n_max, probe)]
    return report


def oracle_report(spec_file: SpecFile, d: int, max_m: int, tol: float, seed: int) -> Dict[str, Any]:
    checks = to.run_oracle_suite(spec_file, d=d, max_m=max_m, tol=tol, seed=seed)
    return {
        "config": {"d": d, "max_m": max_m, "tol": tol, "seed": seed},
        "checks": [c.to_dict() for c in checks],
        "passed": all(c.passed for c in checks),
    }


# ======================
# cmd_* (spec failo keliu)
# ======================

def cmd_classify(spec_path: str) -> Dict[str, Any]:
    log_function_call("cmd_classify", spec_path=spec_path)
    return classify_report(load_spec_file(spec_path))


def cmd_period(spec_path: str, vector=None, M: Optional[int] = None) -> Dict[str, Any]:
    log_function_call("cmd_period", spec_path=spec_path, M=M)
    spec_file = load_spec_file(spec_path)
    vectors = [vector] if vector is not None else list(spec_file.vectors)
    return period_report(spec_file, vectors, M)


def cmd_approximate(spec_path: str, level: int, probe: int, n_max: Optional[int] = None,
                    allow_probe_limited: bool = True) -> Dict[str, Any]:
    log_function_call("cmd_approximate", spec_path=spec_path, level=level, probe=probe, n_max=n_max)
    return approximation_report(load_spec_file(spec_path), level, probe, n_max, allow_probe_limited)


def cmd_oracle(spec_path: str, d: Optional[int] = None, max_m: Optional[int] = None,
               tol: Optional[float] = None, seed: Optional[int] = None) -> Dict[str, Any]:
    """
    Orakulo ataskaita. Prioritetas: argumentai, failo 'oracle' blokas, ORACLE_DEFAULTS.
    """
    log_function_call("cmd_oracle", spec_path=spec_path, d=d, max_m=max_m, tol=tol, seed=seed)
    spec_file = load_spec_file(spec_path)
    config = dict(to.ORACLE_DEFAULTS)
    config.update(spec_file.oracle)
    for key, value in (("d", d), ("max_m", max_m), ("tol", tol), ("seed", seed)):
        if value is not None:
            config[key] = value
    return oracle_report(spec_file, config["d"], config["max_m"], config["tol"], config["seed"])


def cmd_examples(name: Optional[str] = None) -> Dict[str, Any]:
    log_function_call("cmd_examples", name=name)
    if name is None:
        return {"examples": [{"name": key, "description": desc} for key, (desc, _) in sorted(GOLDEN_EXAMPLES.items())]}
    if name not in GOLDEN_EXAMPLES:
        raise SchemaError(f"Nežinomas pavyzdys '{name}'. Galimi: {', '.join(sorted(GOLDEN_EXAMPLES))}")
    description, build = GOLDEN_EXAMPLES[name]
    return {"name": name, "description": description, "report": build()}


def all_golden_reports() -> Dict[str, Dict[str, Any]]:
    return {name: cmd_examples(name) for name in sorted(GOLDEN_EXAMPLES)}


# ======================
# Auksiniai pavyzdžiai
# ======================

def _diagonal_summary(spec: sg.SpectrumSpec) -> Dict[str, Any]:
    return {
        "spec": sg.spec_to_dict(spec),
        "classification": da.classify_diagonal(spec).to_dict(),
        "metadata": sg.metadata(spec).to_dict(),
    }


def _golden_codim1() -> Dict[str, Any]:
    spec = sg.codimension_one_example()
    op = to.truncate(spec, 64)
    basis = to.compare_periodic_basis(spec, op, to.ORACLE_DEFAULTS['max_m'], to.ORACLE_DEFAULTS['tol'])
    report = _diagonal_summary(spec)
    report["oracle_d64"] = {
        "generating_index_set": _index_range(basis["generating_index_set"]),
        "verified": _index_range(basis["brute_force"]),
        "beyond_horizon": _index_range(basis["beyond_horizon"]),
        "match": basis["match"],
    }
    return report


def _index_range(indices: List[int]) -> Any:
    """Ištisinį intervalą užrašo kaip [a, b], kitaip grąžina sąrašą."""
    if indices and indices == list(range(indices[0], indices[-1] + 1)) and len(indices) > 2:
        return {"from": indices[0], "to": indices[-1]}
    return indices


def _golden_codim_m() -> Dict[str, Any]:
    return _diagonal_summary(sg.codimension_example(3))


def _golden_harmonic() -> Dict[str, Any]:
    spec = sg.harmonic()
    d = 64
    op = to.truncate(spec, d)
    periods = {}
    for n in range(1, d + 1):
        periods[str(n)] = to.detect_period(op, ExactVector.basis(n).to_numeric(d), 4 * d)
    report = _diagonal_summary(spec)
    report["detected_periods_e_n"] = periods
    report["periods_equal_index"] = all(periods[str(n)] == n for n in range(1, d + 1))
    return report


def _golden_roots_enum() -> Dict[str, Any]:
    spec = sg.roots_enumeration()
    epsilon = to.ORACLE_DEFAULTS['gap_epsilon']
    report = _diagonal_summary(spec)
    report["gap_search"] = {
        "epsilon": epsilon,
        "N": to.gap_search(lambda N: to.spectrum_prefix(spec, N), epsilon),
        "gap_at_512": _clean(to.circular_gap(to.spectrum_prefix(spec, 512))),
    }
    return report


def _golden_residue_mod_k() -> Dict[str, Any]:
    spec = sg.residue_pattern(4)
    op = to.truncate(spec, 8)
    report = _diagonal_summary(spec)
    report["kernel_d8"] = to.kernel_report(op, 4, set(range(1, 9)))
    report["kernel_d8"]["leakage"] = _clean(report["kernel_d8"]["leakage"])
    return report


def _golden_irrational_dense() -> Dict[str, Any]:
    spec = sg.irrational_dense()
    epsilon = to.ORACLE_DEFAULTS['gap_epsilon']
    horizon = to.ORACLE_DEFAULTS['max_m']
    op = to.truncate(spec, 4)
    report = _diagonal_summary(spec)
    report["first_values"] = [us.to_dict(v) for v in sg.prefix_values(spec, 4)]
    for item in report["first_values"]:
        item["t_approx"] = _clean(item["t_approx"])
    report["gap_search"] = {"epsilon": epsilon, "N": to.gap_search(lambda N: to.spectrum_prefix(spec, N), epsilon)}
    report["detect_period_e_1"] = {
        "horizon": horizon,
        "tol": to.ORACLE_DEFAULTS['tol'],
        "result": to.detect_period(op, ExactVector.basis(1).to_numeric(4), horizon),
    }
    return report


def _golden_convolution() -> Dict[str, Any]:
    grid = 1024
    n_range = range(-4, 5)
    single = to.convolution_eigenvalues(to.basis_function_samples(1, grid), n_range)
    # h = u_1 + u_2: λ_1 = λ_2 = 1
    pair = to.convolution_eigenvalues(to.basis_function_samples(1, grid) + to.basis_function_samples(2, grid),
                                      n_range)
    return {
        "grid": grid,
        "h_u1": _clean_convolution(single.to_dict()),
        "h_u1_plus_u2": _clean_convolution(pair.to_dict()),
    }


def _clean_convolution(data: Dict[str, Any]) -> Dict[str, Any]:
    data["eigenvalues"] = {n: [_clean(v[0]), _clean(v[1])] for n, v in data["eigenvalues"].items()}
    return data


def _golden_proper_inclusion() -> Dict[str, Any]:
    spec = pm.DoublingBlocks()
    x = pm.proper_inclusion_vector()
    op = to.truncate(spec, 127)
    numeric = x.to_numeric(op.d)
    twice = op.apply(op.apply(numeric))
    return {
        "permutation": pm.spec_to_dict(spec),
        "classification": pm.classify_permutation(spec).to_dict(),
        "vector": x.to_dict(),
        "structured_period": {str(M): pm.verify_structured_period(spec, x, M) for M in (1, 2, 3, 4)},
        "naive_union_member": pm.naive_union_member(spec, x),
        "numeric_d": op.d,
        "numeric_T2x_residual": _clean(np.max(np.abs(twice - numeric))),
    }


def _golden_bilateral_shift() -> Dict[str, Any]:
    spec = pm.ZigzagShift()
    try:
        period = pm.period_of_vector(spec, ExactVector.basis(1))
        verdict = "periodic"
    except NotPeriodic:
        period, verdict = None, "not_periodic"
    surrogate = to.truncate_cyclic(spec, 8)
    e1 = ExactVector.basis(1).to_numeric(8)
    return {
        "permutation": pm.spec_to_dict(spec),
        "classification": pm.classify_permutation(spec).to_dict(),
        "e_1": {"verdict": verdict, "period": period},
        "surrogate_d8": {"surrogate": surrogate.surrogate, "period_e_1": to.detect_period(surrogate, e1, 64)},
    }


def _golden_approximation() -> Dict[str, Any]:
    spec = sg.irrational_dense()
    rows = ap.convergence_table(spec, 10, 64)
    return {
        "spec": sg.spec_to_dict(spec),
        "probe": 64,
        "convergence": [
            {"n": r.n, "observed": _clean(r.observed_error), "bound": _clean(r.bound),
             "tight_bound": _clean(r.tight_bound)}
            for r in rows
        ],
        "within_bound": all(r.observed_error <= r.tight_bound + 1e-12 for r in rows),
        "permutation_refusal": ap.PERMUTATION_REFUSAL,
    }


def _golden_non_normal() -> Dict[str, Any]:
    op = to.non_normal_example()
    square_defect = float(np.max(np.abs(op.power_matrix(2) - np.eye(2))))
    try:
        to.normal_matrix_exponent(op, 8)
        verdict = "normal"
    except NotNormal:
        verdict = "not_normal"
    return {
        "matrix": [[_clean(v.real) for v in row] for row in op.as_matrix()],
        "square_minus_identity": _clean(square_defect),
        "normality_defect": _clean(to.normality_defect(op)),
        "unitary_defect": _clean(to.unitary_defect(op)),
        "verdict": verdict,
    }


def _golden_distance() -> Dict[str, Any]:
    pairs = [
        (pm.DoublingBlocks(), pm.Inverse(pm.DoublingBlocks())),
        (pm.FiniteCycles(((1, 2, 3),)), pm.FiniteCycles(((1, 3, 2),))),
        (pm.ConstantBlocks(4), pm.Inverse(pm.ConstantBlocks(4))),
    ]
    rows = []
    for a, b in pairs:
        op_a, op_b = to.truncate_pair(a, b, 8)
        rows.append({
            "a": pm.spec_to_dict(a),
            "b": pm.spec_to_dict(b),
            "d": op_a.d,
            "lower_bound": _clean(pm.permutation_distance_check(a, b, op_a.d)),
            "truncated_norm": _clean(to.operator_norm_difference(op_a, op_b)),
        })
    return {"pairs": rows, "sqrt2": _clean(math.sqrt(2))}


GOLDEN_EXAMPLES: Dict[str, tuple] = {
    "codim1": ("Dvejetainės šaknys su α_1 = e^{2√2πi}: P(T) neuždaras, uždarinio kodimensija 1", _golden_codim1),
    "codim-m": ("Tas pats su α_1..α_3 perrašytais: kodimensija 3", _golden_codim_m),
    "harmonic": ("α_n = e^{2πi/n}: P(T) tikras tankus poerdvis, e_n periodas n", _golden_harmonic),
    "roots-enum": ("Visos vieneto šaknys: spektras - visas apskritimas", _golden_roots_enum),
    "residue-mod-k": ("α_n = e^{2πi(n mod 4)/4}: P(T) = H, T^4 = I", _golden_residue_mod_k),
    "irrational-dense": ("Iracionalūs pasukimai, tankūs apskritime: P(T) = {0}", _golden_irrational_dense),
    "convolution": ("Sąsūkos operatorius: dim P(K) = 1, kai h = u_1", _golden_convolution),
    "proper-inclusion": ("Dvigubėjantys blokai: T²x = x, bet x ne baigtinių orbitų sąjungoje", _golden_proper_inclusion),
    "bilateral-shift": ("Dvipusis poslinkis: P(T) = {0}; baigtinis surogatas periodinis", _golden_bilateral_shift),
    "approximation": ("Aproksimacija 2^n-osiomis šaknimis: paklaida <= 2π/2^n", _golden_approximation),
    "non-normal": ("T² = I, bet T nenormalus: eksponentės teiginys reikalauja normalumo", _golden_non_normal),
    "distance": ("Skirtingų permutacijų operatorių atstumas >= √2", _golden_distance),
}
