"""
Permutacijų operatoriai T_σ(e_n) = e_{σ(n)}.

Orbitų kardinalumai imami iš šeimos struktūros, ne iš iteravimo, todėl
begalinė orbita nustatoma tiksliai. Vektorius periodinis tada ir tik tada,
kai jo koeficientai invariantiški σ^m atžvilgiu.
"""
import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import ClassVar, Dict, Iterator, List, Optional, Tuple, Union

import numpy as np
import sympy

from diagonal_analysis import (ClassificationKind, ExactComplex, ExactVector, PeriodicClassification,
                               make_classification)
from errors import ContractViolation, NotPeriodic, SchemaError, UnsupportedFamily, UnsupportedSelector
from utils import INFINITE, Card, format_card, fraction_to_json, is_finite_card, lcm_all, parse_fraction


@dataclass(frozen=True)
class PermutationMetadata:
    has_infinite_orbit: bool
    has_finite_orbit: bool
    sup_finite_orbit: Optional[Card]
    finite_orbit_lcm: Optional[int]

    def to_dict(self) -> dict:
        return {
            "has_infinite_orbit": self.has_infinite_orbit,
            "has_finite_orbit": self.has_finite_orbit,
            "sup_finite_orbit": format_card(self.sup_finite_orbit),
            "finite_orbit_lcm": self.finite_orbit_lcm,
        }


# ======================
# Šeimos
# ======================

@dataclass(frozen=True)
class FiniteCycles:
    """Baigtinis nesikertančių ciklų rinkinys, kitur tapatumas."""
    cycles: Tuple[Tuple[int, ...], ...]
    family: ClassVar[str] = "finite_cycles"

    def __post_init__(self):
        cycles = tuple(tuple(c) for c in self.cycles)
        seen = set()
        for cycle in cycles:
            if not cycle:
                raise ContractViolation("FiniteCycles: ciklas negali būti tuščias")
            for n in cycle:
                if isinstance(n, bool) or not isinstance(n, int) or n < 1:
                    raise ContractViolation(f"FiniteCycles: indeksas turi būti >= 1, gauta {n!r}")
                if n in seen:
                    raise ContractViolation(f"FiniteCycles: ciklai kertasi ties {n}")
                seen.add(n)
        object.__setattr__(self, 'cycles', cycles)

    @cached_property
    def _forward(self) -> Dict[int, int]:
        return {c[i]: c[(i + 1) % len(c)] for c in self.cycles for i in range(len(c))}

    @cached_property
    def _backward(self) -> Dict[int, int]:
        return {image: n for n, image in self._forward.items()}

    @cached_property
    def _cards(self) -> Dict[int, int]:
        return {n: len(c) for c in self.cycles for n in c}

    def apply(self, n: int) -> int:
        return self._forward.get(n, n)

    def apply_inverse(self, n: int) -> int:
        return self._backward.get(n, n)

    def orbit_card(self, n: int) -> Card:
        return self._cards.get(n, 1)

    def metadata(self) -> PermutationMetadata:
        # fiksuotų taškų visada be galo daug
        sizes = [len(c) for c in self.cycles] + [1]
        return PermutationMetadata(False, True, max(sizes), lcm_all(sizes))


@dataclass(frozen=True)
class DoublingBlocks:
    """Blokai B_k = {2^{k-1}, ..., 2^k - 1}, kiekvienas cikliškai pastumiamas."""
    family: ClassVar[str] = "doubling_blocks"

    @staticmethod
    def block_bounds(n: int) -> Tuple[int, int]:
        k = n.bit_length()
        return 2 ** (k - 1), 2 ** k - 1

    def apply(self, n: int) -> int:
        start, end = self.block_bounds(n)
        return start if n == end else n + 1

    def apply_inverse(self, n: int) -> int:
        start, end = self.block_bounds(n)
        return end if n == start else n - 1

    def orbit_card(self, n: int) -> Card:
        return 2 ** (n.bit_length() - 1)

    def metadata(self) -> PermutationMetadata:
        return PermutationMetadata(False, True, INFINITE, None)


@dataclass(frozen=True)
class ConstantBlocks:
    L: int
    family: ClassVar[str] = "constant_blocks"

    def __post_init__(self):
        if isinstance(self.L, bool) or not isinstance(self.L, int) or self.L < 1:
            raise ContractViolation(f"ConstantBlocks: L turi būti >= 1, gauta {self.L!r}")

    def apply(self, n: int) -> int:
        block, offset = divmod(n - 1, self.L)
        return block * self.L + (offset + 1) % self.L + 1

    def apply_inverse(self, n: int) -> int:
        block, offset = divmod(n - 1, self.L)
        return block * self.L + (offset - 1) % self.L + 1

    def orbit_card(self, n: int) -> Card:
        return self.L

    def metadata(self) -> PermutationMetadata:
        return PermutationMetadata(False, True, self.L, self.L)


def zigzag_label(n: int) -> int:
    """ℕ -> ℤ: 1->0, 2->1, 3->-1, 4->2, 5->-2, ..."""
    return n // 2 if n % 2 == 0 else -((n - 1) // 2)


def zigzag_index(z: int) -> int:
    return 2 * z if z > 0 else -2 * z + 1


@dataclass(frozen=True)
class ZigzagShift:
    """Dvipusis poslinkis k -> k+1 ant ℤ, perkeltas į ℕ zigzago indeksavimu."""
    family: ClassVar[str] = "zigzag_shift"

    def apply(self, n: int) -> int:
        return zigzag_index(zigzag_label(n) + 1)

    def apply_inverse(self, n: int) -> int:
        return zigzag_index(zigzag_label(n) - 1)

    def orbit_card(self, n: int) -> Card:
        return INFINITE

    def metadata(self) -> PermutationMetadata:
        return PermutationMetadata(True, False, None, None)


@dataclass(frozen=True)
class Interleave:
    """Lyginiai indeksai 2m juda pagal `even` (ant m), nelyginiai 2m-1 pagal `odd`."""
    even: "PermutationSpec"
    odd: "PermutationSpec"
    family: ClassVar[str] = "interleave"

    def apply(self, n: int) -> int:
        if n % 2 == 0:
            return 2 * self.even.apply(n // 2)
        return 2 * self.odd.apply((n + 1) // 2) - 1

    def apply_inverse(self, n: int) -> int:
        if n % 2 == 0:
            return 2 * self.even.apply_inverse(n // 2)
        return 2 * self.odd.apply_inverse((n + 1) // 2) - 1

    def orbit_card(self, n: int) -> Card:
        if n % 2 == 0:
            return self.even.orbit_card(n // 2)
        return self.odd.orbit_card((n + 1) // 2)

    def metadata(self) -> PermutationMetadata:
        a, b = self.even.metadata(), self.odd.metadata()
        sups = [s for s in (a.sup_finite_orbit, b.sup_finite_orbit) if s is not None]
        sup = max(sups) if sups else None
        lcm = None
        if is_finite_card(sup):
            lcm = lcm_all(m.finite_orbit_lcm for m in (a, b) if m.has_finite_orbit)
        return PermutationMetadata(
            a.has_infinite_orbit or b.has_infinite_orbit,
            a.has_finite_orbit or b.has_finite_orbit,
            sup,
            lcm,
        )


@dataclass(frozen=True)
class Inverse:
    base: "PermutationSpec"
    family: ClassVar[str] = "inverse"

    def apply(self, n: int) -> int:
        return self.base.apply_inverse(n)

    def apply_inverse(self, n: int) -> int:
        return self.base.apply(n)

    def orbit_card(self, n: int) -> Card:
        return self.base.orbit_card(n)

    def metadata(self) -> PermutationMetadata:
        return self.base.metadata()


PermutationSpec = Union[FiniteCycles, DoublingBlocks, ConstantBlocks, ZigzagShift, Interleave, Inverse]


def identity_spec() -> FiniteCycles:
    return FiniteCycles(())


# ======================
# Operacijos
# ======================

def _check_index(n: int, where: str) -> None:
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise ContractViolation(f"{where}: indeksas turi būti >= 1, gauta {n!r}")


def apply(spec: PermutationSpec, n: int) -> int:
    _check_index(n, "apply")
    return spec.apply(n)


def apply_inverse(spec: PermutationSpec, n: int) -> int:
    _check_index(n, "apply_inverse")
    return spec.apply_inverse(n)


def orbit_card(spec: PermutationSpec, m: int) -> Card:
    """|[m]| iš šeimos struktūros; INFINITE begalinei orbitai."""
    _check_index(m, "orbit_card")
    return spec.orbit_card(m)


def permutation_metadata(spec: PermutationSpec) -> PermutationMetadata:
    return spec.metadata()


def orbit_of(spec: PermutationSpec, m: int) -> List[int]:
    """Baigtinė orbita σ tvarka, pradedant nuo m."""
    card = orbit_card(spec, m)
    if not is_finite_card(card):
        raise ContractViolation(f"Orbita per {m} begalinė, jos išvardyti negalima")
    orbit = [m]
    for _ in range(int(card) - 1):
        orbit.append(spec.apply(orbit[-1]))
    return orbit


def sigma_power(spec: PermutationSpec, n: int, m: int) -> int:
    """σ^m(n); baigtinėms orbitoms laipsnis imamas moduliu orbitos dydžio."""
    card = spec.orbit_card(n)
    if is_finite_card(card):
        m %= int(card)
    step = spec.apply if m >= 0 else spec.apply_inverse
    for _ in range(abs(m)):
        n = step(n)
    return n


def inverse_spec(spec: PermutationSpec) -> PermutationSpec:
    if isinstance(spec, FiniteCycles):
        return FiniteCycles(tuple(tuple(reversed(c)) for c in spec.cycles))
    if isinstance(spec, Inverse):
        return spec.base
    return Inverse(spec)


def classify_permutation(spec: PermutationSpec) -> PeriodicClassification:
    """
    Klasifikuoja P(T_σ) pagal orbitų metaduomenis.

    Uždarinio kodimensija visada 0 arba begalinė: begalinė orbita turi be galo daug indeksų.
    """
    meta = spec.metadata()
    K = ClassificationKind

    if not meta.has_infinite_orbit and is_finite_card(meta.sup_finite_orbit):
        result = make_classification(K.WHOLE_SPACE, "permutation_bounded_orbits", closed=True, dense=True,
                                     closure_codimension=0, exponent=meta.finite_orbit_lcm,
                                     kernel_exponent=meta.finite_orbit_lcm)
    elif not meta.has_infinite_orbit:
        result = make_classification(K.PROPER_DENSE, "permutation_unbounded_orbits", closed=False, dense=True,
                                     closure_codimension=0)
    elif not meta.has_finite_orbit:
        result = make_classification(K.ZERO_ONLY, "permutation_no_finite_orbits", closed=True, dense=False,
                                     closure_codimension=INFINITE)
    elif is_finite_card(meta.sup_finite_orbit):
        result = make_classification(K.CLOSED_PROPER, "permutation_bounded_finite_orbits", closed=True,
                                     dense=False, closure_codimension=INFINITE,
                                     kernel_exponent=meta.finite_orbit_lcm)
    else:
        result = make_classification(K.PROPER_NON_CLOSED, "permutation_unbounded_finite_orbits", closed=False,
                                     dense=False, closure_codimension=INFINITE)

    logging.debug("Permutacija %s klasifikuota kaip %s", spec.family, result.kind.value)
    return result


def period_of_vector(spec: PermutationSpec, x: ExactVector) -> int:
    """
    Mažiausias m >= 1, kad c_{σ^m(n)} = c_n visiems atramos n.

    Tikrinami L = lcm(orbitų dydžių, kertančių atramą) dalikliai didėjimo tvarka.

    Raises:
        ContractViolation: jei x = 0
        NotPeriodic: jei atramos indeksas guli begalinėje orbitoje
    """
    if x.is_zero():
        raise ContractViolation("period_of_vector: x negali būti nulinis vektorius")
    coefficients = x.coefficients
    sizes = []
    for n in coefficients:
        card = spec.orbit_card(n)
        if not is_finite_card(card):
            raise NotPeriodic(f"Indeksas {n} guli begalinėje orbitoje, x neperiodinis")
        sizes.append(int(card))
    L = lcm_all(sizes)
    for m in sympy.divisors(L):
        if all(coefficients.get(sigma_power(spec, n, m)) == c for n, c in coefficients.items()):
            return int(m)
    # L visada tinka, čia nepasiekiama
    raise ContractViolation(f"Periodas nerastas tarp {L} daliklių")


def is_periodic(spec: PermutationSpec, x: ExactVector) -> bool:
    try:
        period_of_vector(spec, x)
    except NotPeriodic:
        return False
    except ContractViolation:
        return x.is_zero()
    return True


# ======================
# Grupiniai vektoriai
# ======================

TWO_POW_NEG_K_SQUARED = "two_pow_neg_k_squared"


@dataclass(frozen=True)
class ExplicitGroup:
    indices: frozenset
    weight: ExactComplex

    def __post_init__(self):
        object.__setattr__(self, 'indices', frozenset(self.indices))
        object.__setattr__(self, 'weight', (Fraction(self.weight[0]), Fraction(self.weight[1])))
        if self.weight == (0, 0):
            raise ContractViolation("Grupės svoris negali būti 0")
        for n in self.indices:
            _check_index(n, "ExplicitGroup")

    @property
    def square_summable(self) -> bool:
        return True

    def contains(self, n: int) -> bool:
        return n in self.indices


@dataclass(frozen=True)
class EvenOffsetBlocks:
    """
    Grupių šeima: kiekvienam k iš [k_from, k_to] aibė {2^k + 2j : 0 <= j < 2^{k-1}}
    su svoriu 2^{-k²} (weight=None) arba pastoviu svoriu.
    """
    k_from: int = 1
    k_to: Optional[int] = None
    weight: Optional[ExactComplex] = None

    def __post_init__(self):
        if self.k_from < 1 or (self.k_to is not None and self.k_to < self.k_from):
            raise ContractViolation(f"Neteisingas blokų intervalas [{self.k_from}, {self.k_to}]")
        if self.weight is not None:
            weight = (Fraction(self.weight[0]), Fraction(self.weight[1]))
            if weight == (0, 0):
                raise ContractViolation("Grupės svoris negali būti 0")
            object.__setattr__(self, 'weight', weight)

    @property
    def square_summable(self) -> bool:
        # Σ_k 2^{k-1} 2^{-2k²} < ∞; pastovus svoris sumuojamas tik baigtiniam intervalui
        return self.weight is None or self.k_to is not None

    def weight_at(self, k: int) -> ExactComplex:
        if self.weight is None:
            return Fraction(1, 2 ** (k * k)), Fraction(0)
        return self.weight

    @staticmethod
    def block_indices(k: int) -> List[int]:
        return [2 ** k + 2 * j for j in range(2 ** (k - 1))]

    def contains(self, n: int) -> bool:
        k = n.bit_length() - 1
        in_range = k >= self.k_from and (self.k_to is None or k <= self.k_to)
        return in_range and (n - 2 ** k) % 2 == 0

    def ks_up_to(self, d: int) -> Iterator[int]:
        k = self.k_from
        while 2 ** k <= d and (self.k_to is None or k <= self.k_to):
            yield k
            k += 1


Group = Union[ExplicitGroup, EvenOffsetBlocks]


@dataclass(frozen=True)
class GroupedVector:
    groups: Tuple[Group, ...] = ()

    def __post_init__(self):
        groups = tuple(self.groups)
        object.__setattr__(self, 'groups', groups)
        explicit = [g for g in groups if isinstance(g, ExplicitGroup)]
        families = [g for g in groups if isinstance(g, EvenOffsetBlocks)]
        seen = set()
        for g in explicit:
            if seen & g.indices or any(f.contains(n) for f in families for n in g.indices):
                raise ContractViolation("GroupedVector: grupės turi nesikirsti")
            seen |= g.indices
        for i, a in enumerate(families):
            for b in families[i + 1:]:
                a_hi = a.k_to if a.k_to is not None else math.inf
                b_hi = b.k_to if b.k_to is not None else math.inf
                if max(a.k_from, b.k_from) <= min(a_hi, b_hi):
                    raise ContractViolation("GroupedVector: blokų šeimos kertasi")

    @property
    def square_summable(self) -> bool:
        return all(g.square_summable for g in self.groups)

    def is_empty(self) -> bool:
        return not self.groups

    def to_numeric(self, d: int) -> np.ndarray:
        """Vektoriaus projekcija į pirmąsias d koordinačių."""
        x = np.zeros(d, dtype=complex)
        for g in self.groups:
            if isinstance(g, ExplicitGroup):
                value = complex(float(g.weight[0]), float(g.weight[1]))
                for n in g.indices:
                    if n <= d:
                        x[n - 1] = value
                continue
            for k in g.ks_up_to(d):
                re_part, im_part = g.weight_at(k)
                value = complex(float(re_part), float(im_part))
                for n in g.block_indices(k):
                    if n <= d:
                        x[n - 1] = value
        return x

    def to_dict(self) -> dict:
        items = []
        for g in self.groups:
            if isinstance(g, ExplicitGroup):
                items.append({"selector": "explicit", "indices": sorted(g.indices),
                              "weight": _weight_to_dict(g.weight)})
            else:
                items.append({"selector": "even_offset_blocks", "k_from": g.k_from, "k_to": g.k_to,
                              "weight": TWO_POW_NEG_K_SQUARED if g.weight is None else _weight_to_dict(g.weight)})
        return {"groups": items}

    @classmethod
    def from_dict(cls, data: dict) -> "GroupedVector":
        if not isinstance(data, dict) or set(data) != {"groups"} or not isinstance(data["groups"], list):
            raise SchemaError("GroupedVector turi turėti tik 'groups' sąrašą")
        groups = []
        for item in data["groups"]:
            selector = item.get("selector") if isinstance(item, dict) else None
            if selector == "explicit":
                if set(item) != {"selector", "indices", "weight"}:
                    raise SchemaError(f"explicit grupės laukai: selector, indices, weight; gauta {sorted(item)}")
                groups.append(ExplicitGroup(frozenset(item["indices"]), _weight_from_dict(item["weight"])))
            elif selector == "even_offset_blocks":
                if not set(item) <= {"selector", "k_from", "k_to", "weight"}:
                    raise SchemaError(f"even_offset_blocks: nežinomi laukai {sorted(item)}")
                weight = item.get("weight", TWO_POW_NEG_K_SQUARED)
                groups.append(EvenOffsetBlocks(
                    k_from=item.get("k_from", 1),
                    k_to=item.get("k_to"),
                    weight=None if weight == TWO_POW_NEG_K_SQUARED else _weight_from_dict(weight),
                ))
            else:
                raise SchemaError(f"Nežinomas grupės selektorius: {selector!r}")
        try:
            return cls(tuple(groups))
        except ContractViolation as e:
            raise SchemaError(str(e))


def _weight_to_dict(weight: ExactComplex) -> dict:
    return {"re": fraction_to_json(weight[0]), "im": fraction_to_json(weight[1])}


def _weight_from_dict(data) -> ExactComplex:
    if not isinstance(data, dict) or not set(data) <= {"re", "im"}:
        raise SchemaError(f"Svoris turi būti {{'re', 'im'}} objektas, gauta {data!r}")
    return parse_fraction(data.get("re", 0), "re"), parse_fraction(data.get("im", 0), "im")


def proper_inclusion_vector() -> GroupedVector:
    """x = Σ_k 2^{-k²} Σ_j e_{2^k + 2j}: T²x = x, bet x nepriklauso baigtinių orbitų sąjungai."""
    return GroupedVector((EvenOffsetBlocks(1, None, None),))


def core_family(spec: PermutationSpec) -> PermutationSpec:
    while isinstance(spec, Inverse):
        spec = spec.base
    return spec


def verify_structured_period(spec: PermutationSpec, x: GroupedVector, M: int) -> bool:
    """
    Ar T^M x = x: kiekvienos grupės indeksų aibė turi būti invariantiška σ^M atžvilgiu.

    Raises:
        ContractViolation: jei kvadratinis sumuojamumas nesertifikuotas
        UnsupportedSelector: jei blokų šeimos negalima patikrinti uždara forma
    """
    if not x.square_summable:
        raise ContractViolation("verify_structured_period: x kvadratinis sumuojamumas nesertifikuotas")
    if isinstance(M, bool) or not isinstance(M, int) or M < 1:
        raise ContractViolation(f"M turi būti >= 1, gauta {M!r}")
    for group in x.groups:
        if isinstance(group, ExplicitGroup):
            for n in group.indices:
                if not is_finite_card(spec.orbit_card(n)):
                    return False
                if sigma_power(spec, n, M) not in group.indices:
                    return False
            continue
        if not isinstance(core_family(spec), DoublingBlocks):
            raise UnsupportedSelector(
                f"Blokų selektorius netikrinamas uždara forma permutacijai {spec.family}")
        # aibė {2^k + 2j} guli bloke dydžio 2^k, σ^M ją pastumia per M mod 2^k
        if M % 2 != 0:
            return False
    return True


def _even_tail_bounded(spec: PermutationSpec) -> bool:
    """Ar visų lyginių indeksų nuo kurio nors vietos orbitos baigtinės ir aprėžtos."""
    core = core_family(spec)
    if isinstance(core, Interleave):
        # lyginiai 2m, m >= m0, apima visą `even` komponentės uodegą
        core = core.even
    meta = core.metadata()
    return not meta.has_infinite_orbit and is_finite_card(meta.sup_finite_orbit)


def naive_union_member(spec: PermutationSpec, x: Union[GroupedVector, ExactVector]) -> bool:
    """Ar sup orbitų dydžių per nenulinius koeficientus baigtinis."""
    if isinstance(x, ExactVector):
        return all(is_finite_card(spec.orbit_card(n)) for n in x.indices)
    for group in x.groups:
        if isinstance(group, ExplicitGroup):
            if not all(is_finite_card(spec.orbit_card(n)) for n in group.indices):
                return False
            continue
        if group.k_to is not None:
            for k in range(group.k_from, group.k_to + 1):
                if not all(is_finite_card(spec.orbit_card(n)) for n in group.block_indices(k)):
                    return False
            continue
        # begalinė šeima = visi lyginiai indeksai nuo 2^k_from
        if not _even_tail_bounded(spec):
            return False
    return True


def permutation_distance_check(a: PermutationSpec, b: PermutationSpec, probe_limit: int) -> float:
    """
    Apatinis ‖T_a - T_b‖ rėžis: √2, jei σ_a(n) != σ_b(n) kuriam nors n <= probe_limit, kitaip 0.
    """
    for n in range(1, probe_limit + 1):
        if a.apply(n) != b.apply(n):
            return math.sqrt(2)
    return 0.0


# ======================
# JSON
# ======================

def spec_to_dict(spec: PermutationSpec) -> dict:
    data = {"family": spec.family}
    if isinstance(spec, FiniteCycles):
        data["cycles"] = [list(c) for c in spec.cycles]
    elif isinstance(spec, ConstantBlocks):
        data["L"] = spec.L
    elif isinstance(spec, Interleave):
        data["even"] = spec_to_dict(spec.even)
        data["odd"] = spec_to_dict(spec.odd)
    elif isinstance(spec, Inverse):
        data["base"] = spec_to_dict(spec.base)
    return data


_FIELDS = {
    "finite_cycles": {"family", "cycles"},
    "doubling_blocks": {"family"},
    "constant_blocks": {"family", "L"},
    "zigzag_shift": {"family"},
    "interleave": {"family", "even", "odd"},
    "inverse": {"family", "base"},
}


def spec_from_dict(data: dict) -> PermutationSpec:
    """
    Nuskaito PermutationSpec iš JSON žodyno.

    Raises:
        SchemaError
        UnsupportedFamily: jei šeimos pavadinimas nežinomas
    """
    if not isinstance(data, dict):
        raise SchemaError(f"PermutationSpec turi būti objektas, gauta {data!r}")
    family = data.get("family")
    if not isinstance(family, str) or not family:
        raise SchemaError(f"Permutacijų šeima turi būti netuščia eilutė, gauta {family!r}")
    if family not in _FIELDS:
        raise UnsupportedFamily(f"Nepalaikoma permutacijų šeima: {family!r}")
    if set(data) != _FIELDS[family]:
        raise SchemaError(f"{family}: laukai turi būti {sorted(_FIELDS[family])}, gauta {sorted(data)}")
    try:
        if family == "finite_cycles":
            if not isinstance(data["cycles"], list) or not all(isinstance(c, list) for c in data["cycles"]):
                raise SchemaError("finite_cycles: cycles turi būti sąrašų sąrašas")
            return FiniteCycles(tuple(tuple(c) for c in data["cycles"]))
        if family == "doubling_blocks":
            return DoublingBlocks()
        if family == "constant_blocks":
            return ConstantBlocks(data["L"])
        if family == "zigzag_shift":
            return ZigzagShift()
        if family == "interleave":
            return Interleave(spec_from_dict(data["even"]), spec_from_dict(data["odd"]))
        return Inverse(spec_from_dict(data["base"]))
    except ContractViolation as e:
        raise SchemaError(str(e))
