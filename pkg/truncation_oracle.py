"""
Skaitinis baigtinių pjūvių orakulas ℂ^d erdvėje.

Iš specifikacijų sudaro baigtines matricas, periodus randa iteruodamas, ir
nepriklausomai patikrina simbolinius teiginius (branduoliai, eksponentė,
spektro tankumas, sąsūkos tikrinės reikšmės).
"""
import logging
import math
import os
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Callable, Dict, List, Optional, Sequence, Set, Union

import numpy as np
import scipy.linalg
import sympy
from scipy.integrate import trapezoid
from scipy.stats import unitary_group

import diagonal_analysis as da
import permutation as pm
import spectrum_gen as sg
import unit_scalar as us
from diagonal_analysis import ClassificationKind, ExactVector
from errors import ContractViolation, NotNormal, NotPeriodic, OrbitClosureUnavailable, UnsupportedFamily
from permutation import GroupedVector, ZigzagShift
from spectrum_gen import CLOSURE_FULL_CIRCLE, SpectrumSpec
from utils import is_finite_card, lcm_all

# Orakulo konfigūracija (perrašoma .env arba CLI vėliavomis)
ORACLE_DEFAULTS = {
    'd': int(os.getenv('PERIODIC_D', '128')),
    'max_m': int(os.getenv('PERIODIC_MAX_M', '16384')),
    'tol': float(os.getenv('PERIODIC_TOL', '1e-9')),
    'seed': int(os.getenv('PERIODIC_SEED', '0')),
    'null_threshold': 1e-7,
    'span_tolerance': 1e-6,
    'unitary_tolerance': 1e-12,
    'gap_epsilon': 0.1,
    'gap_search_limit': 10_000,
    'orbit_closure_limit': 1 << 16,
    'kernel_max_d': 256,
}


class OperatorKind(str, Enum):
    DIAGONAL = "diagonal"
    PERMUTATION = "permutation"
    DENSE_NORMAL = "dense_normal"


@dataclass
class TruncatedOperator:
    """
    Baigtinis operatoriaus pjūvis.

    Permutacijai images[j] = σ(j+1) - 1 (0-bazinis indeksavimas).
    """
    d: int
    kind: OperatorKind
    entries: Optional[np.ndarray] = None
    images: Optional[np.ndarray] = None
    matrix: Optional[np.ndarray] = None
    surrogate: bool = False

    def __post_init__(self):
        if self.kind is OperatorKind.PERMUTATION:
            if sorted(self.images.tolist()) != list(range(self.d)):
                raise ContractViolation("Permutacijos pjūvis nėra {1..d} bijekcija")

    def as_matrix(self) -> np.ndarray:
        if self.kind is OperatorKind.DIAGONAL:
            return np.diag(self.entries)
        if self.kind is OperatorKind.PERMUTATION:
            M = np.zeros((self.d, self.d), dtype=complex)
            M[self.images, np.arange(self.d)] = 1.0
            return M
        return self.matrix

    def apply(self, x: np.ndarray) -> np.ndarray:
        if self.kind is OperatorKind.DIAGONAL:
            return self.entries * x
        if self.kind is OperatorKind.PERMUTATION:
            y = np.empty_like(x)
            y[self.images] = x
            return y
        return self.matrix @ x

    def power_matrix(self, k: int) -> np.ndarray:
        return np.linalg.matrix_power(self.as_matrix(), k)


# ======================
# Pjūvių sudarymas
# ======================

def orbit_closed_dimension(spec: pm.PermutationSpec, d_request: int) -> int:
    """Mažiausias d >= d_request, kad {1..d} būtų pilnų baigtinių orbitų sąjunga."""
    limit = ORACLE_DEFAULTS['orbit_closure_limit']
    d = d_request
    visited: Set[int] = set()
    n = 1
    while n <= d:
        if n not in visited:
            if not is_finite_card(spec.orbit_card(n)):
                raise OrbitClosureUnavailable(
                    f"Indeksas {n} guli begalinėje orbitoje; naudokite truncate_cyclic")
            orbit = pm.orbit_of(spec, n)
            visited.update(orbit)
            d = max(d, max(orbit))
            if d > limit:
                raise OrbitClosureUnavailable(f"Orbitomis uždara dimensija viršija {limit}")
        n += 1
    return d


def truncate(spec: Union[SpectrumSpec, pm.PermutationSpec], d_request: int) -> TruncatedOperator:
    """
    Pirmųjų d koordinačių pjūvis; permutacijoms d apvalinamas iki orbitomis uždaro.

    Raises:
        OrbitClosureUnavailable: jei {1..d_request} kerta begalinę orbitą
    """
    if d_request < 1:
        raise ContractViolation(f"truncate: d turi būti >= 1, gauta {d_request}")
    if isinstance(spec, SpectrumSpec):
        return TruncatedOperator(d_request, OperatorKind.DIAGONAL, entries=spectrum_prefix(spec, d_request))
    d = orbit_closed_dimension(spec, d_request)
    images = np.array([spec.apply(n) - 1 for n in range(1, d + 1)], dtype=int)
    if d != d_request:
        logging.debug("Permutacijos pjūvis išplėstas nuo %d iki %d", d_request, d)
    return TruncatedOperator(d, OperatorKind.PERMUTATION, images=images)


def truncate_cyclic(spec: pm.PermutationSpec, d: int) -> TruncatedOperator:
    """
    Dvipusio poslinkio baigtinis surogatas: d-ciklas orbitos tvarka su apvyniojimu.

    Surogato P = ℂ^d, todėl rezultatai visada žymimi surogate=True.
    """
    if d < 2:
        raise ContractViolation(f"truncate_cyclic: d turi būti >= 2, gauta {d}")
    core, step = spec, 1
    while isinstance(core, pm.Inverse):
        core, step = core.base, -step
    if not isinstance(core, ZigzagShift):
        raise UnsupportedFamily(f"truncate_cyclic palaiko tik zigzag poslinkį, gauta {spec.family}")
    labels = [pm.zigzag_label(n) for n in range(1, d + 1)]
    lo, hi = min(labels), max(labels)
    images = []
    for z in labels:
        nxt = z + step
        if nxt > hi:
            nxt = lo
        elif nxt < lo:
            nxt = hi
        images.append(pm.zigzag_index(nxt) - 1)
    return TruncatedOperator(d, OperatorKind.PERMUTATION, images=np.array(images, dtype=int), surrogate=True)


def truncate_pair(a: pm.PermutationSpec, b: pm.PermutationSpec, d_request: int):
    """Abiem permutacijoms bendra orbitomis uždara dimensija."""
    d = d_request
    while True:
        d_next = orbit_closed_dimension(b, orbit_closed_dimension(a, d))
        if d_next == d:
            return truncate(a, d), truncate(b, d)
        d = d_next


def spectrum_prefix(spec: SpectrumSpec, N: int) -> np.ndarray:
    return np.array([us.to_complex(v) for v in sg.prefix_values(spec, N)], dtype=complex)


def dense_from_diagonal(entries: Sequence[complex], unitary: np.ndarray) -> TruncatedOperator:
    D = np.diag(np.asarray(entries, dtype=complex))
    return TruncatedOperator(len(entries), OperatorKind.DENSE_NORMAL, matrix=unitary @ D @ unitary.conj().T)


def dense_operator(matrix) -> TruncatedOperator:
    matrix = np.asarray(matrix, dtype=complex)
    return TruncatedOperator(matrix.shape[0], OperatorKind.DENSE_NORMAL, matrix=matrix)


def random_unitary(d: int, rng: np.random.Generator) -> np.ndarray:
    if d == 1:
        return np.array([[np.exp(2j * np.pi * rng.random())]])
    return unitary_group.rvs(d, random_state=rng)


def non_normal_example() -> TruncatedOperator:
    """T(e_1) = 2e_2, T(e_2) = ½e_1: T² = I, bet T nėra normalus."""
    return dense_operator([[0.0, 0.5], [2.0, 0.0]])


# ======================
# Periodų paieška
# ======================

def _check_horizon(max_m: int, tol: float) -> None:
    if max_m < 1 or tol <= 0:
        raise ContractViolation(f"Neteisingas horizontas max_m={max_m}, tol={tol}")


def detect_period(op: TruncatedOperator, x, max_m: Optional[int] = None, tol: Optional[float] = None) -> Optional[int]:
    """
    Mažiausias m <= max_m, kad ‖T^m x - x‖∞ < tol; None, jei nerastas.

    Args:
        op: Pjūvis
        x: Kompleksinis vektorius ilgio d
        max_m: Iteracijų horizontas
        tol: Tolerancija

    Returns:
        int arba None (NotFound)
    """
    max_m = ORACLE_DEFAULTS['max_m'] if max_m is None else max_m
    tol = ORACLE_DEFAULTS['tol'] if tol is None else tol
    _check_horizon(max_m, tol)
    x = np.asarray(x, dtype=complex)
    if not np.any(x):
        raise ContractViolation("detect_period: x negali būti nulinis")

    if op.kind is OperatorKind.DIAGONAL:
        support = np.flatnonzero(x)
        values, coeffs = op.entries[support], x[support]
        chunk = 1024
        for start in range(1, max_m + 1, chunk):
            ms = np.arange(start, min(start + chunk, max_m + 1))
            powers = np.power(values[None, :], ms[:, None])
            deviation = np.max(np.abs(coeffs[None, :] * (powers - 1.0)), axis=1)
            hits = np.flatnonzero(deviation < tol)
            if hits.size:
                return int(ms[hits[0]])
        return None

    y = x.copy()
    for m in range(1, max_m + 1):
        y = op.apply(y)
        if np.max(np.abs(y - x)) < tol:
            return m
    return None


def brute_force_periodic_basis(op: TruncatedOperator, max_m: Optional[int] = None,
                               tol: Optional[float] = None) -> Set[int]:
    """Bazės indeksai k (1-baziniai), kurių e_k turi rastą periodą <= max_m."""
    max_m = ORACLE_DEFAULTS['max_m'] if max_m is None else max_m
    tol = ORACLE_DEFAULTS['tol'] if tol is None else tol
    _check_horizon(max_m, tol)

    if op.kind is OperatorKind.DIAGONAL:
        found = np.zeros(op.d, dtype=bool)
        chunk = max(1, min(1024, (1 << 20) // max(op.d, 1)))
        for start in range(1, max_m + 1, chunk):
            ms = np.arange(start, min(start + chunk, max_m + 1))
            powers = np.power(op.entries[None, :], ms[:, None])
            found |= np.any(np.abs(powers - 1.0) < tol, axis=0)
            if found.all():
                break
        return {int(k) + 1 for k in np.flatnonzero(found)}

    if op.kind is OperatorKind.PERMUTATION:
        identity = np.arange(op.d)
        found = np.zeros(op.d, dtype=bool)
        current = op.images.copy()
        for _ in range(max_m):
            found |= current == identity
            if found.all():
                break
            current = op.images[current]
        return {int(k) + 1 for k in np.flatnonzero(found)}

    raise ContractViolation("brute_force_periodic_basis: tik diagonalūs ir permutacijų pjūviai")


def predicted_periodic_basis(spec: Union[SpectrumSpec, pm.PermutationSpec], d: int, max_m: int) -> Set[int]:
    """Simbolinė prognozė: {k <= d : α_k ∈ G su eile <= max_m} arba orbitos dydis <= max_m."""
    if isinstance(spec, SpectrumSpec):
        return set(da.periodic_index_set(spec, d, max_order=max_m))
    return {n for n in range(1, d + 1) if is_finite_card(spec.orbit_card(n)) and spec.orbit_card(n) <= max_m}


def beyond_horizon_indices(spec: SpectrumSpec, d: int, max_m: int) -> Set[int]:
    """Indeksai, kurių tiksli eilė viršija iteracijų horizontą."""
    return {
        n for n, value in enumerate(sg.prefix_values(spec, d), start=1)
        if us.is_root_of_unity(value) and us.order(value) > max_m
    }


def compare_periodic_basis(spec, op: TruncatedOperator, max_m: int, tol: float) -> Dict[str, Any]:
    """
    Palygina iteracijomis rastą bazę su simboline prognoze.

    Indeksai, kurių eilė viršija horizontą, nepalyginami: jie pateikiami atskirai.
    """
    brute = brute_force_periodic_basis(op, max_m, tol)
    predicted = predicted_periodic_basis(spec, op.d, max_m)
    beyond: Set[int] = set()
    generating: List[int] = sorted(predicted)
    if isinstance(spec, SpectrumSpec):
        beyond = beyond_horizon_indices(spec, op.d, max_m)
        generating = da.periodic_index_set(spec, op.d)
    return {
        "match": (brute - beyond) == predicted,
        "brute_force": sorted(brute - beyond),
        "predicted": sorted(predicted),
        "generating_index_set": generating,
        "beyond_horizon": sorted(beyond),
    }


# ======================
# Branduoliai, eksponentė, spektras
# ======================

def kernel_report(op: TruncatedOperator, k: int, predicted_basis: Set[int],
                  null_threshold: Optional[float] = None, span_tolerance: Optional[float] = None) -> Dict[str, Any]:
    null_threshold = ORACLE_DEFAULTS['null_threshold'] if null_threshold is None else null_threshold
    span_tolerance = ORACLE_DEFAULTS['span_tolerance'] if span_tolerance is None else span_tolerance
    M = op.power_matrix(k) - np.eye(op.d)
    _, singular, vh = scipy.linalg.svd(M)
    null_space = vh[singular < null_threshold].conj().T
    outside = [j for j in range(op.d) if (j + 1) not in predicted_basis]
    leakage = 0.0
    if null_space.size and outside:
        leakage = float(np.max(np.abs(null_space[outside, :])))
    dimension = int(null_space.shape[1])
    return {
        "k": k,
        "null_dimension": dimension,
        "predicted_dimension": len(predicted_basis),
        "leakage": leakage,
        "match": dimension == len(predicted_basis) and leakage < span_tolerance,
    }


def kernel_compare(op: TruncatedOperator, k: int, predicted_basis: Set[int]) -> bool:
    """Ar skaitinis ker(T^k - I) lygus span{e_j : j ∈ predicted_basis}."""
    return kernel_report(op, k, predicted_basis)["match"]


def unitary_defect(op: TruncatedOperator) -> float:
    M = op.as_matrix()
    return float(np.max(np.abs(M.conj().T @ M - np.eye(op.d))))


def normality_defect(op: TruncatedOperator) -> float:
    M = op.as_matrix()
    return float(np.max(np.abs(M @ M.conj().T - M.conj().T @ M)))


@dataclass
class NormalExponentReport:
    exponent: Optional[int]
    unitary_defect: float
    normality_defect: float
    eigenvalue_snaps: List[Dict[str, Any]] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "N": self.exponent,
            "unitary_defect": self.unitary_defect,
            "normality_defect": self.normality_defect,
            "eigenvalue_snaps": self.eigenvalue_snaps,
        }


def normal_matrix_exponent(op: TruncatedOperator, max_N: int, tol: Optional[float] = None) -> NormalExponentReport:
    """
    Mažiausias N <= max_N, kad ‖T^N - I‖∞ < tol, normaliai matricai.

    Raises:
        NotNormal: jei ‖TT* - T*T‖∞ >= 1e-9
    """
    tol = ORACLE_DEFAULTS['tol'] if tol is None else tol
    defect = normality_defect(op)
    if defect >= 1e-9:
        raise NotNormal(f"Matrica nėra normali: ‖TT* - T*T‖∞ = {defect:.3e}")

    A = op.as_matrix()
    identity = np.eye(op.d)
    power = A.copy()
    exponent = None
    for N in range(1, max_N + 1):
        if np.max(np.abs(power - identity)) < tol:
            exponent = N
            break
        power = power @ A

    snaps = []
    for value in np.linalg.eigvals(A):
        p, q, distance = us.nearest_root_of_unity(complex(value), max_N)
        snaps.append({
            "eigenvalue": [float(value.real), float(value.imag)],
            "root": f"{p}/{q}",
            "order": q,
            "distance": float(distance),
        })
    snaps.sort(key=lambda s: (s["order"], s["root"]))
    return NormalExponentReport(exponent, unitary_defect(op), defect, snaps)


def spectral_mapping_check(op: TruncatedOperator, k: int) -> float:
    """max_j |(T^k)_jj - (T_jj)^k| diagonaliam pjūviui."""
    if op.kind is not OperatorKind.DIAGONAL:
        raise ContractViolation("spectral_mapping_check: reikalingas diagonalus pjūvis")
    if k < 1:
        raise ContractViolation(f"spectral_mapping_check: k turi būti >= 1, gauta {k}")
    powered = np.diag(op.power_matrix(k))
    return float(np.max(np.abs(powered - np.power(op.entries, k)), initial=0.0))


def circular_gap(values: Sequence[complex]) -> float:
    """Didžiausias lankas tarp gretimų surikiuotų kampų (įskaitant apvyniojimą)."""
    values = np.asarray(values, dtype=complex)
    if values.size == 0:
        raise ContractViolation("circular_gap: reikalinga bent viena reikšmė")
    angles = np.sort(np.mod(np.angle(values), 2 * np.pi))
    wrap = 2 * np.pi - (angles[-1] - angles[0])
    gaps = np.diff(angles)
    return float(max(wrap, gaps.max(initial=0.0)))


def gap_search(values_fn: Callable[[int], Sequence[complex]], epsilon: float,
               limit: Optional[int] = None) -> Optional[int]:
    """
    Mažiausias N <= limit, kad pirmųjų N reikšmių tarpas <= epsilon.

    Tarpas nedidėja didėjant N, todėl pirma dvigubinama, tada ieškoma dvejetainiu būdu.

    Args:
        values_fn: N -> pirmosios N reikšmių
        epsilon: Leistinas tarpas
        limit: Didžiausias N

    Returns:
        N arba None, jei iki limit nepasiekta
    """
    limit = ORACLE_DEFAULTS['gap_search_limit'] if limit is None else limit
    hi = 1
    while True:
        values = np.asarray(values_fn(hi), dtype=complex)
        if circular_gap(values) <= epsilon:
            break
        if hi >= limit:
            return None
        hi = min(2 * hi, limit)
    lo = hi // 2 + 1
    while lo < hi:
        mid = (lo + hi) // 2
        if circular_gap(values[:mid]) <= epsilon:
            hi = mid
        else:
            lo = mid + 1
    return hi


# ======================
# Sąsūkos operatorius
# ======================

def basis_function_samples(n: int, grid_size: int) -> np.ndarray:
    """u_n(x) = e^{inx}/√(2π) ant tolygaus tinklelio [-π, π]."""
    grid = np.linspace(-np.pi, np.pi, grid_size)
    return np.exp(1j * n * grid) / np.sqrt(2 * np.pi)


@dataclass
class ConvolutionReport:
    eigenvalues: Dict[int, complex]
    periodic_indices: List[int]

    @property
    def dimension(self) -> int:
        return len(self.periodic_indices)

    def to_dict(self) -> dict:
        return {
            "eigenvalues": {str(n): [round(v.real, 12), round(v.imag, 12)] for n, v in self.eigenvalues.items()},
            "periodic_indices": self.periodic_indices,
            "dim_P": self.dimension,
        }


def convolution_eigenvalues(h_samples: Sequence[complex], n_range: Sequence[int], tol: float = 1e-6,
                            max_order: int = 64) -> ConvolutionReport:
    """
    λ_n = (1/√(2π)) ∫ h(x) e^{-inx} dx trapecijų taisykle ant tolygaus tinklelio [-π, π].

    Args:
        h_samples: h reikšmės tinklelio taškuose (abu galai įskaityti)
        n_range: Indeksai n
        tol: Atstumas iki vieneto šaknies
        max_order: Didžiausia tikrinama šaknies eilė

    Returns:
        ConvolutionReport
    """
    h = np.asarray(h_samples, dtype=complex)
    if h.size < 16:
        raise ContractViolation(f"convolution_eigenvalues: tinklelis per mažas ({h.size} < 16)")
    grid = np.linspace(-np.pi, np.pi, h.size)
    eigenvalues = {
        int(n): complex(trapezoid(h * np.exp(-1j * n * grid), grid) / np.sqrt(2 * np.pi))
        for n in n_range
    }
    ordered = list(eigenvalues)
    note = da.compactness_note_from_eigenvalues([eigenvalues[n] for n in ordered], tol, max_order)
    return ConvolutionReport(eigenvalues, [ordered[i] for i in note.periodic_indices])


# ======================
# Kiti matai
# ======================

def operator_norm_difference(a: TruncatedOperator, b: TruncatedOperator) -> float:
    if a.d != b.d:
        raise ContractViolation(f"Skirtingos dimensijos: {a.d} ir {b.d}")
    return float(np.linalg.norm(a.as_matrix() - b.as_matrix(), 2))


def diagonal_difference_norm(a: TruncatedOperator, b: TruncatedOperator) -> float:
    if a.kind is not OperatorKind.DIAGONAL or b.kind is not OperatorKind.DIAGONAL or a.d != b.d:
        raise ContractViolation("diagonal_difference_norm: reikalingi vienodo dydžio diagonalūs pjūviai")
    return float(np.max(np.abs(a.entries - b.entries)))


def random_exact_vector(rng: np.random.Generator, indices: Sequence[int], max_support: int = 4) -> ExactVector:
    """Atsitiktinis baigtinės atramos vektorius su mažais sveikais koeficientais."""
    size = int(rng.integers(1, min(max_support, len(indices)) + 1))
    support = rng.choice(np.asarray(indices), size=size, replace=False)
    coefficients = {}
    for n in support:
        re_part = int(rng.integers(-3, 4))
        im_part = int(rng.integers(-3, 4))
        coefficients[int(n)] = (re_part or 1, im_part)
    return ExactVector.from_mapping(coefficients)


# ======================
# Patikrų rinkinys
# ======================

@dataclass
class CheckResult:
    check: str
    d: int
    result: Any
    passed: bool
    tolerance: Optional[float] = None
    horizon: Optional[int] = None
    surrogate: bool = False

    def to_dict(self) -> dict:
        return {
            "check": self.check,
            "d": self.d,
            "result": self.result,
            "passed": self.passed,
            "tolerance": self.tolerance,
            "horizon": self.horizon,
            "surrogate": self.surrogate,
        }


def _exact_period(period_fn: Callable, spec, x: ExactVector) -> Optional[int]:
    try:
        return period_fn(spec, x)
    except NotPeriodic:
        return None


def _period_agreement(spec, op: TruncatedOperator, vectors: List[ExactVector], period_fn: Callable,
                      max_m: int, tol: float) -> CheckResult:
    rows = []
    for x in vectors:
        exact = _exact_period(period_fn, spec, x)
        numeric = detect_period(op, x.to_numeric(op.d), max_m, tol)
        expected = exact if exact is not None and exact <= max_m else None
        rows.append({"support": x.indices, "exact": exact, "numeric": numeric, "agree": numeric == expected})
    return CheckResult("period_agreement", op.d, rows, all(r["agree"] for r in rows), tol, max_m)


def _sample_vectors(rng: np.random.Generator, indices: Sequence[int], count: int) -> List[ExactVector]:
    if not indices:
        return []
    return [random_exact_vector(rng, indices) for _ in range(count)]


def _diagonal_suite(spec: SpectrumSpec, vectors: List[ExactVector], d: int, max_m: int, tol: float,
                    rng: np.random.Generator) -> List[CheckResult]:
    op = truncate(spec, d)
    classification = da.classify_diagonal(spec)
    meta = sg.metadata(spec)
    checks = []

    basis = compare_periodic_basis(spec, op, max_m, tol)
    checks.append(CheckResult("periodic_basis", d, basis, basis["match"], tol, max_m))

    defect = unitary_defect(op)
    checks.append(CheckResult("unitary_defect", d, defect, defect < ORACLE_DEFAULTS['unitary_tolerance'],
                              ORACLE_DEFAULTS['unitary_tolerance']))

    mapping = {str(k): spectral_mapping_check(op, k) for k in (1, 2, 3, 5)}
    checks.append(CheckResult("spectral_mapping", d, mapping, max(mapping.values()) < tol, tol))

    if classification.kind is ClassificationKind.WHOLE_SPACE:
        checks.append(_exponent_check(op, classification.exponent, spec, tol))

    if classification.kernel_exponent is not None and d <= ORACLE_DEFAULTS['kernel_max_d']:
        predicted = set(da.periodic_index_set(spec, d))
        report = kernel_report(op, classification.kernel_exponent, predicted)
        checks.append(CheckResult("kernel", d, report, report["match"], ORACLE_DEFAULTS['null_threshold']))

    if meta.claimed_spectrum_closure.kind == CLOSURE_FULL_CIRCLE:
        limit = ORACLE_DEFAULTS['gap_search_limit']
        epsilon = ORACLE_DEFAULTS['gap_epsilon']
        found = gap_search(lambda N: spectrum_prefix(spec, N), epsilon, limit)
        result = {"epsilon": epsilon, "N": found, "gap_at_d": circular_gap(op.entries)}
        checks.append(CheckResult("circular_gap", d, result, found is not None, epsilon, limit))

    resolvable = sorted(set(range(1, d + 1)) - beyond_horizon_indices(spec, d, max_m))
    beyond = set(range(1, d + 1)) - set(resolvable)
    sample = [x for x in vectors if not set(x.indices) & beyond and max(x.indices, default=0) <= d]
    sample += _sample_vectors(rng, resolvable, 24)
    checks.append(_period_agreement(spec, op, sample, da.period_of_vector, max_m, tol))
    return checks


def _exponent_check(op: TruncatedOperator, exponent: int, spec, tol: float) -> CheckResult:
    """‖T^N - I‖∞ < tol ir T^{N'/p} != I kiekvienam pirminiam p | N' (N' - pjūvio eksponentė)."""
    identity = np.eye(op.d)
    deviation = float(np.max(np.abs(op.power_matrix(exponent) - identity)))
    if isinstance(spec, SpectrumSpec):
        local = lcm_all(us.order(v) for v in sg.prefix_values(spec, op.d))
    else:
        local = lcm_all(int(spec.orbit_card(n)) for n in range(1, op.d + 1))
    threshold = min(0.5, math.sin(math.pi / local)) if local > 1 else 0.0
    minimality = {}
    for p in sympy.primefactors(local):
        minimality[str(local // p)] = float(np.max(np.abs(op.power_matrix(local // p) - identity)))
    passed = deviation < tol and all(v > threshold for v in minimality.values())
    result = {"N": exponent, "prefix_exponent": local, "deviation": deviation, "proper_divisor_defects": minimality}
    return CheckResult("exponent", op.d, result, passed, tol)


def _permutation_suite(spec: pm.PermutationSpec, vectors: List[Union[ExactVector, GroupedVector]], d: int,
                       max_m: int, tol: float, rng: np.random.Generator) -> List[CheckResult]:
    classification = pm.classify_permutation(spec)
    try:
        op = truncate(spec, d)
    except OrbitClosureUnavailable:
        if not isinstance(pm.core_family(spec), ZigzagShift):
            raise
        return _surrogate_suite(spec, classification, d, max_m, tol)

    checks = []
    basis = compare_periodic_basis(spec, op, max_m, tol)
    checks.append(CheckResult("periodic_basis", op.d, basis, basis["match"], tol, max_m))

    defect = unitary_defect(op)
    checks.append(CheckResult("unitary_defect", op.d, defect, defect < ORACLE_DEFAULTS['unitary_tolerance'],
                              ORACLE_DEFAULTS['unitary_tolerance']))

    if classification.kind is ClassificationKind.WHOLE_SPACE:
        checks.append(_exponent_check(op, classification.exponent, spec, tol))

    if op.d <= ORACLE_DEFAULTS['kernel_max_d']:
        # pjūvyje P = ker(T^M - I), M - pjūvio orbitų dydžių lcm
        M = lcm_all(int(spec.orbit_card(n)) for n in range(1, op.d + 1))
        report = kernel_report(op, M, set(range(1, op.d + 1)))
        checks.append(CheckResult("kernel", op.d, report, report["match"], ORACLE_DEFAULTS['null_threshold']))

    exact_vectors = [x for x in vectors if isinstance(x, ExactVector) and max(x.indices, default=0) <= op.d]
    exact_vectors += _sample_vectors(rng, list(range(1, op.d + 1)), 24)
    checks.append(_period_agreement(spec, op, exact_vectors, pm.period_of_vector, max_m, tol))

    grouped = [x for x in vectors if isinstance(x, GroupedVector)]
    if grouped:
        rows = []
        for x in grouped:
            numeric = x.to_numeric(op.d)
            for M in (1, 2, 3, 4):
                symbolic = pm.verify_structured_period(spec, x, M)
                moved = numeric
                for _ in range(M):
                    moved = op.apply(moved)
                residual = float(np.max(np.abs(moved - numeric)))
                rows.append({"M": M, "symbolic": symbolic, "residual": residual,
                             "agree": symbolic == (residual < 1e-12)})
        checks.append(CheckResult("structured_period", op.d, rows, all(r["agree"] for r in rows), 1e-12))
    return checks


def _surrogate_suite(spec: pm.PermutationSpec, classification, d: int, max_m: int, tol: float) -> List[CheckResult]:
    op = truncate_cyclic(spec, max(d, 2))
    checks = [CheckResult("symbolic_zero_only", op.d, classification.kind.value,
                          classification.kind is ClassificationKind.ZERO_ONLY)]
    e1 = np.zeros(op.d, dtype=complex)
    e1[0] = 1.0
    period = detect_period(op, e1, max_m, tol)
    checks.append(CheckResult("surrogate_period", op.d, period, period == op.d, tol, max_m, surrogate=True))
    defect = unitary_defect(op)
    checks.append(CheckResult("unitary_defect", op.d, defect, defect < ORACLE_DEFAULTS['unitary_tolerance'],
                              ORACLE_DEFAULTS['unitary_tolerance'], surrogate=True))
    return checks


def run_oracle_suite(spec_file, d: Optional[int] = None, max_m: Optional[int] = None,
                     tol: Optional[float] = None, seed: Optional[int] = None) -> List[CheckResult]:
    """
    Paleidžia visas orakulo patikras spec failui.

    Args:
        spec_file: Objektas su laukais kind ("diagonal" | "permutation"), spec ir vectors
        d, max_m, tol, seed: Horizontai; None reiškia ORACLE_DEFAULTS

    Returns:
        Patikrų įrašai, surikiuoti pagal patikros pavadinimą
    """
    d = ORACLE_DEFAULTS['d'] if d is None else d
    max_m = ORACLE_DEFAULTS['max_m'] if max_m is None else max_m
    tol = ORACLE_DEFAULTS['tol'] if tol is None else tol
    seed = ORACLE_DEFAULTS['seed'] if seed is None else seed
    rng = np.random.default_rng(seed)
    vectors = list(spec_file.vectors)

    if spec_file.kind == OperatorKind.DIAGONAL.value:
        exact = [x for x in vectors if isinstance(x, ExactVector)]
        checks = _diagonal_suite(spec_file.spec, exact, d, max_m, tol, rng)
    else:
        checks = _permutation_suite(spec_file.spec, vectors, d, max_m, tol, rng)

    failed = [c.check for c in checks if not c.passed]
    if failed:
        logging.warning("Orakulo patikros nepavyko: %s", ", ".join(failed))
    else:
        logging.info("Visos %d orakulo patikros sėkmingos (d=%d)", len(checks), d)
    return sorted(checks, key=lambda c: c.check)
