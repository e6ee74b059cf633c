"""
Diagonalių operatorių periodinių taškų analizė.

T(e_n) = α_n e_n. Vektorius x = Σ c_n e_n yra periodinis tada ir tik tada,
kai visos α_n su c_n != 0 yra vieneto šaknys; jo periodas yra jų eilių lcm.
P(T) aprašomas klasifikacija ir generuojančia indeksų aibe {n : α_n ∈ G}.
"""
import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

import numpy as np

import spectrum_gen as sg
import unit_scalar as us
from errors import ContractViolation, NotPeriodic, SchemaError
from spectrum_gen import SpectrumSpec
from utils import Card, format_card, fraction_to_json, is_finite_card, lcm_all, parse_fraction

ExactComplex = Tuple[Fraction, Fraction]


@dataclass(frozen=True)
class ExactVector:
    """Baigtinio atramos vektorius su tiksliais kompleksiniais racionaliais koeficientais."""
    support: Tuple[Tuple[int, ExactComplex], ...] = ()

    def __post_init__(self):
        cleaned = {}
        for n, (re_part, im_part) in self.support:
            if isinstance(n, bool) or not isinstance(n, int) or n < 1:
                raise ContractViolation(f"Vektoriaus indeksas turi būti >= 1, gauta {n!r}")
            if n in cleaned:
                raise ContractViolation(f"Pasikartojantis vektoriaus indeksas {n}")
            value = (Fraction(re_part), Fraction(im_part))
            if value != (0, 0):
                cleaned[n] = value
        object.__setattr__(self, 'support', tuple(sorted(cleaned.items())))

    @classmethod
    def from_mapping(cls, coefficients: Mapping[int, Union[int, Fraction, complex, Tuple]]) -> "ExactVector":
        """
        Patogus konstruktorius: {2: 1, 3: -1} arba {2: (Fraction(1, 2), 1)}.

        Kompleksiniai (complex) koeficientai priimami tik su sveikomis dalimis.
        """
        items = []
        for n, c in coefficients.items():
            if isinstance(c, tuple):
                items.append((n, (Fraction(c[0]), Fraction(c[1]))))
            elif isinstance(c, complex):
                if c.real != int(c.real) or c.imag != int(c.imag):
                    raise ContractViolation(f"Netikslus kompleksinis koeficientas {c}")
                items.append((n, (Fraction(int(c.real)), Fraction(int(c.imag)))))
            else:
                items.append((n, (Fraction(c), Fraction(0))))
        return cls(tuple(items))

    @classmethod
    def basis(cls, *indices: int) -> "ExactVector":
        """e_{n1} + e_{n2} + ..."""
        return cls.from_mapping({n: 1 for n in indices})

    @property
    def coefficients(self) -> Dict[int, ExactComplex]:
        return dict(self.support)

    @property
    def indices(self) -> List[int]:
        return [n for n, _ in self.support]

    def is_zero(self) -> bool:
        return not self.support

    def add(self, other: "ExactVector") -> "ExactVector":
        merged = self.coefficients
        for n, (re_part, im_part) in other.support:
            old = merged.get(n, (Fraction(0), Fraction(0)))
            merged[n] = (old[0] + re_part, old[1] + im_part)
        return ExactVector(tuple(merged.items()))

    def to_numeric(self, d: int) -> np.ndarray:
        x = np.zeros(d, dtype=complex)
        for n, (re_part, im_part) in self.support:
            if n <= d:
                x[n - 1] = complex(float(re_part), float(im_part))
        return x

    def to_dict(self) -> dict:
        return {"support": [
            {"n": n, "re": fraction_to_json(re_part), "im": fraction_to_json(im_part)}
            for n, (re_part, im_part) in self.support
        ]}

    @classmethod
    def from_dict(cls, data: dict) -> "ExactVector":
        if not isinstance(data, dict) or set(data) != {"support"} or not isinstance(data["support"], list):
            raise SchemaError("ExactVector turi turėti tik 'support' sąrašą")
        items = []
        for entry in data["support"]:
            if not isinstance(entry, dict) or "n" not in entry or not set(entry) <= {"n", "re", "im"}:
                raise SchemaError(f"Neteisingas koeficiento įrašas: {entry!r}")
            n = entry["n"]
            if isinstance(n, bool) or not isinstance(n, int) or n < 1:
                raise SchemaError(f"Indeksas turi būti >= 1, gauta {n!r}")
            items.append((n, (parse_fraction(entry.get("re", 0), "re"), parse_fraction(entry.get("im", 0), "im"))))
        if len({n for n, _ in items}) != len(items):
            raise SchemaError("ExactVector: pasikartojantys indeksai")
        return cls(tuple(items))


class ClassificationKind(str, Enum):
    ZERO_ONLY = "zero_only"
    CLOSED_PROPER = "closed_proper"
    PROPER_NON_CLOSED = "proper_non_closed"
    PROPER_DENSE = "proper_dense"
    WHOLE_SPACE = "whole_space"


@dataclass(frozen=True)
class PeriodicClassification:
    kind: ClassificationKind
    closed: bool
    dense: bool
    closure_codimension: Card
    exponent: Optional[int] = None
    kernel_exponent: Optional[int] = None
    rule: str = ""
    summary: str = ""

    def __post_init__(self):
        K = ClassificationKind
        consistent = (
            (self.kind is not K.WHOLE_SPACE or (self.closed and self.dense and self.closure_codimension == 0))
            and (self.kind is not K.ZERO_ONLY or (self.closed and not self.dense))
            and (self.kind is not K.PROPER_DENSE or (not self.closed and self.closure_codimension == 0))
            and ((self.exponent is not None) == (self.kind is K.WHOLE_SPACE))
            and ((self.kernel_exponent is not None) == (self.closed and self.kind is not K.ZERO_ONLY))
        )
        if not consistent:
            raise ContractViolation(f"Nesuderinta klasifikacija: {self}")

    def to_dict(self) -> dict:
        return {
            "kind": self.kind.value,
            "exponent": self.exponent,
            "closed": self.closed,
            "dense": self.dense,
            "closure_codimension": format_card(self.closure_codimension),
            "kernel_exponent": self.kernel_exponent,
            "rule": self.rule,
            "summary": self.summary,
        }


# Klasifikavimo taisyklių aprašai ataskaitoms
RULE_SUMMARIES = {
    "no_roots_of_unity": "Nė viena α_n nėra vieneto šaknis, todėl P(T) = {0}.",
    "all_roots_bounded_order": "Visos α_n yra vieneto šaknys ir jų eilės aprėžtos: P(T) = H, T^N = I.",
    "all_roots_unbounded_order": "Visos α_n yra vieneto šaknys, bet eilės neaprėžtos: P(T) tikras tankus poerdvis.",
    "finitely_many_root_values": "Baigtinai daug skirtingų vieneto šaknų reikšmių: P(T) = ker(T^k - I) uždaras.",
    "infinitely_many_root_values": "Be galo daug skirtingų vieneto šaknų reikšmių, o kai kurios α_n ne šaknys: P(T) neuždaras ir netankus.",
    "permutation_bounded_orbits": "Visos orbitos baigtinės ir aprėžtos: P(T) = H, T^N = I.",
    "permutation_unbounded_orbits": "Visos orbitos baigtinės, bet neaprėžtos: P(T) tikras tankus poerdvis.",
    "permutation_no_finite_orbits": "Visos orbitos begalinės: P(T) = {0}.",
    "permutation_bounded_finite_orbits": "Yra begalinių orbitų, baigtinės orbitos aprėžtos: P(T) = ker(T^M - I) uždaras.",
    "permutation_unbounded_finite_orbits": "Yra begalinių orbitų, baigtinės orbitos neaprėžtos: P(T) neuždaras.",
}


def make_classification(kind: ClassificationKind, rule: str, *, closed: bool, dense: bool,
                        closure_codimension: Card, exponent: Optional[int] = None,
                        kernel_exponent: Optional[int] = None) -> PeriodicClassification:
    return PeriodicClassification(
        kind=kind, closed=closed, dense=dense, closure_codimension=closure_codimension,
        exponent=exponent, kernel_exponent=kernel_exponent, rule=rule, summary=RULE_SUMMARIES[rule],
    )


def classify_diagonal(spec: SpectrumSpec) -> PeriodicClassification:
    """
    Klasifikuoja P(T) pagal spektro metaduomenis.

    Args:
        spec: Spektro specifikacija

    Returns:
        PeriodicClassification
    """
    meta = sg.metadata(spec)
    K = ClassificationKind

    if meta.G_index_count == 0:
        result = make_classification(K.ZERO_ONLY, "no_roots_of_unity", closed=True, dense=False,
                                     closure_codimension=meta.non_G_index_count)
    elif meta.all_in_G and is_finite_card(meta.sup_order):
        result = make_classification(K.WHOLE_SPACE, "all_roots_bounded_order", closed=True, dense=True,
                                     closure_codimension=0, exponent=meta.orders_lcm,
                                     kernel_exponent=meta.orders_lcm)
    elif meta.all_in_G:
        result = make_classification(K.PROPER_DENSE, "all_roots_unbounded_order", closed=False, dense=True,
                                     closure_codimension=0)
    elif meta.distinct_G_values_finite:
        result = make_classification(K.CLOSED_PROPER, "finitely_many_root_values", closed=True, dense=False,
                                     closure_codimension=meta.non_G_index_count,
                                     kernel_exponent=meta.orders_lcm)
    else:
        result = make_classification(K.PROPER_NON_CLOSED, "infinitely_many_root_values", closed=False,
                                     dense=False, closure_codimension=meta.non_G_index_count)

    logging.debug("Diagonalus operatorius %s klasifikuotas kaip %s", spec.base.family, result.kind.value)
    return result


def period_of_vector(spec: SpectrumSpec, x: ExactVector) -> int:
    """
    Tikslus vektoriaus periodas: atramos tikrinių reikšmių eilių lcm.

    Raises:
        ContractViolation: jei x = 0
        NotPeriodic: jei kuri nors atramos reikšmė yra iracionalus pasukimas
    """
    if x.is_zero():
        raise ContractViolation("period_of_vector: x negali būti nulinis vektorius")
    orders = []
    for n in x.indices:
        value = sg.value_at(spec, n)
        if not us.is_root_of_unity(value):
            raise NotPeriodic(f"α_{n} = {value} nėra vieneto šaknis, x neperiodinis")
        orders.append(us.order(value))
    return lcm_all(orders)


def is_periodic(spec: SpectrumSpec, x: ExactVector) -> bool:
    return all(us.is_root_of_unity(sg.value_at(spec, n)) for n in x.indices)


def periodic_index_set(spec: SpectrumSpec, d: int, max_order: Optional[int] = None) -> List[int]:
    """
    Generuojanti indeksų aibė {n <= d : α_n ∈ G}, pasirinktinai tik su eile <= max_order.
    """
    result = []
    for n, value in enumerate(sg.prefix_values(spec, d), start=1):
        if not us.is_root_of_unity(value):
            continue
        if max_order is not None and us.order(value) > max_order:
            continue
        result.append(n)
    return result


@dataclass(frozen=True)
class CompactnessNote:
    certified: bool
    dimension: Optional[int]
    periodic_indices: Tuple[int, ...] = ()

    def to_dict(self) -> dict:
        return {"certified": self.certified, "dim_P": self.dimension, "periodic_indices": list(self.periodic_indices)}


def compactness_note(spec: SpectrumSpec, decay_certificate: bool) -> CompactnessNote:
    """
    Kompaktiško normalaus operatoriaus patikslinimas: P(T) baigtinės dimensijos.

    Args:
        spec: Spektro specifikacija
        decay_certificate: Kvietėjas patvirtina, kad |α_n| -> 0 jo modelyje

    Returns:
        CompactnessNote su dim P(T) = G_index_count

    Raises:
        ContractViolation: jei be galo daug indeksų turi vieneto šaknis
    """
    if not decay_certificate:
        return CompactnessNote(certified=False, dimension=None)
    meta = sg.metadata(spec)
    if not is_finite_card(meta.G_index_count):
        raise ContractViolation(
            "Mažėjimo sertifikatas prieštarauja metaduomenims: be galo daug α_n yra vieneto šaknys")
    return CompactnessNote(certified=True, dimension=int(meta.G_index_count))


def compactness_note_from_eigenvalues(values: Sequence[complex], tol: float = 1e-6,
                                      max_order: int = 64) -> CompactnessNote:
    """
    Baigtinis skaitinis variantas: tikrinės reikšmės, už sąrašo ribų lygios 0.

    Skaičiuojamos reikšmės, esančios tol atstumu nuo vieneto šaknies, kurios eilė <= max_order.
    """
    indices = tuple(
        i for i, value in enumerate(values)
        if us.nearest_root_of_unity(complex(value), max_order)[2] < tol
    )
    return CompactnessNote(certified=True, dimension=len(indices), periodic_indices=indices)


def adjoint_spec(spec: SpectrumSpec) -> SpectrumSpec:
    return sg.adjoint_spec(spec)


def periods_report(spec: SpectrumSpec, vectors: Iterable[ExactVector]) -> List[dict]:
    """Kiekvienam vektoriui: periodas arba NotPeriodic verdiktas."""
    rows = []
    for x in vectors:
        try:
            rows.append({"vector": x.to_dict(), "verdict": "periodic", "period": period_of_vector(spec, x)})
        except NotPeriodic as e:
            rows.append({"vector": x.to_dict(), "verdict": "not_periodic", "period": None, "reason": str(e)})
    return rows
