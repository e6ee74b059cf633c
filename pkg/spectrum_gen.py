"""
Begalinių tikrinių reikšmių sekų {α_n} generatoriai diagonaliems operatoriams.

Kiekviena šeima turi uždaros formos metaduomenis apie VISĄ seką (ne tik
pradinę atkarpą), todėl klasifikavimo taisykles galima taikyti simboliškai.
Baigtinis skaičius perrašymų (overrides) koreguoja skaičiavimus indeksas po indekso.
"""
import bisect
import itertools
import logging
import math
import threading
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import ClassVar, Dict, Iterator, List, Optional, Tuple, Union

import sympy

import unit_scalar as us
from errors import ContractViolation, SchemaError, UnsupportedFamily
from unit_scalar import IDENTITY, RationalRotation, UnitScalar
from utils import INFINITE, Card, card_minus, card_plus, format_card, lcm_all

CLOSURE_FINITE_SET = "finite_set"
CLOSURE_FINITE_SET_PLUS_ONE = "finite_set_plus_one"
CLOSURE_FULL_CIRCLE = "full_circle"


# ======================
# Racionaliųjų [0, 1) išvardijimas: vardiklis didėja, skaitiklis didėja
# ======================

# _BLOCK_STARTS[q] = pirmasis indeksas su vardikliu q; tik pildomas gale
_BLOCK_STARTS: List[int] = [0, 1, 2]
_BLOCK_LOCK = threading.Lock()


def _extend_blocks(n: int) -> None:
    if _BLOCK_STARTS[-1] > n:
        return
    with _BLOCK_LOCK:
        while _BLOCK_STARTS[-1] <= n:
            q = len(_BLOCK_STARTS) - 1
            _BLOCK_STARTS.append(_BLOCK_STARTS[-1] + int(sympy.totient(q)))


def enumerated_fraction(n: int) -> Fraction:
    """
    n-oji suprastinta trupmena p/q ∈ [0, 1) kanoninėje tvarkoje.

    Tvarka: 0/1, 1/2, 1/3, 2/3, 1/4, 3/4, 1/5, ...

    Args:
        n: Indeksas (n >= 1)

    Returns:
        Fraction
    """
    _extend_blocks(n)
    q = bisect.bisect_right(_BLOCK_STARTS, n) - 1
    position = n - _BLOCK_STARTS[q]
    if q == 1:
        return Fraction(0)
    numerators = (p for p in range(1, q) if math.gcd(p, q) == 1)
    return Fraction(next(itertools.islice(numerators, position, None)), q)


def scalar_sort_key(s: UnitScalar):
    if isinstance(s, RationalRotation):
        return (0, s.t, "")
    return (1, Fraction(s.t_approx), s.t_formula)


# ======================
# Skaičiavimo būsena (vidinė)
# ======================

@dataclass
class _Tally:
    value_counts: Optional[Dict[UnitScalar, Card]]
    g_counts: Optional[Dict[UnitScalar, Card]]
    g_index_count: Card
    non_g_index_count: Card
    closure_kind: str

    def remove(self, value: UnitScalar) -> None:
        if us.is_root_of_unity(value):
            self.g_index_count = card_minus(self.g_index_count)
            _decrement(self.g_counts, value)
        else:
            self.non_g_index_count = card_minus(self.non_g_index_count)
        _decrement(self.value_counts, value)

    def add(self, value: UnitScalar) -> None:
        if us.is_root_of_unity(value):
            self.g_index_count = card_plus(self.g_index_count)
            _increment(self.g_counts, value)
        else:
            self.non_g_index_count = card_plus(self.non_g_index_count)
        _increment(self.value_counts, value)


def _decrement(counts: Optional[dict], value: UnitScalar) -> None:
    if counts is None or value not in counts:
        return
    counts[value] = card_minus(counts[value])
    if counts[value] == 0:
        del counts[value]


def _increment(counts: Optional[dict], value: UnitScalar) -> None:
    if counts is not None:
        counts[value] = card_plus(counts.get(value, 0))


def _tally_from_counts(counts: Dict[UnitScalar, Card]) -> _Tally:
    g_counts = {s: c for s, c in counts.items() if us.is_root_of_unity(s)}
    non_g = {s: c for s, c in counts.items() if not us.is_root_of_unity(s)}
    return _Tally(
        value_counts=dict(counts),
        g_counts=g_counts,
        g_index_count=sum(g_counts.values(), 0),
        non_g_index_count=sum(non_g.values(), 0),
        closure_kind=CLOSURE_FINITE_SET,
    )


# ======================
# Bazinės šeimos
# ======================

@dataclass(frozen=True)
class Constant:
    value: UnitScalar
    family: ClassVar[str] = "constant"

    def value_at(self, n: int) -> UnitScalar:
        return self.value

    def tally(self) -> _Tally:
        return _tally_from_counts({self.value: INFINITE})


@dataclass(frozen=True)
class ExplicitThenConstant:
    prefix: Tuple[UnitScalar, ...]
    tail: UnitScalar
    family: ClassVar[str] = "explicit_then_constant"

    def __post_init__(self):
        object.__setattr__(self, 'prefix', tuple(self.prefix))

    def value_at(self, n: int) -> UnitScalar:
        if n <= len(self.prefix):
            return self.prefix[n - 1]
        return self.tail

    def tally(self) -> _Tally:
        counts: Dict[UnitScalar, Card] = {self.tail: INFINITE}
        for value in self.prefix:
            counts[value] = card_plus(counts.get(value, 0))
        return _tally_from_counts(counts)


@dataclass(frozen=True)
class PeriodicPattern:
    pattern: Tuple[UnitScalar, ...]
    family: ClassVar[str] = "periodic"

    def __post_init__(self):
        object.__setattr__(self, 'pattern', tuple(self.pattern))
        if not self.pattern:
            raise ContractViolation("PeriodicPattern: šablonas negali būti tuščias")

    def value_at(self, n: int) -> UnitScalar:
        return self.pattern[(n - 1) % len(self.pattern)]

    def tally(self) -> _Tally:
        return _tally_from_counts({value: INFINITE for value in self.pattern})


@dataclass(frozen=True)
class HarmonicRoots:
    """α_n = e^{2πi/n}: visos vieneto šaknys, eilės neaprėžtos, kaupiasi prie 1."""
    family: ClassVar[str] = "harmonic"

    def value_at(self, n: int) -> UnitScalar:
        return RationalRotation(1, n)

    def tally(self) -> _Tally:
        return _Tally(None, None, INFINITE, 0, CLOSURE_FINITE_SET_PLUS_ONE)


@dataclass(frozen=True)
class DyadicRoots:
    """α_1 = 1, α_n = e^{2πi/2^{n-1}} kai n >= 2."""
    family: ClassVar[str] = "dyadic"

    def value_at(self, n: int) -> UnitScalar:
        if n == 1:
            return IDENTITY
        return RationalRotation(1, 2 ** (n - 1))

    def tally(self) -> _Tally:
        return _Tally(None, None, INFINITE, 0, CLOSURE_FINITE_SET_PLUS_ONE)


@dataclass(frozen=True)
class RootsEnumeration:
    """Išvardija visą vieneto šaknų grupę G."""
    family: ClassVar[str] = "roots_enum"

    def value_at(self, n: int) -> UnitScalar:
        t = enumerated_fraction(n)
        return RationalRotation(t.numerator, t.denominator)

    def tally(self) -> _Tally:
        return _Tally(None, None, INFINITE, 0, CLOSURE_FULL_CIRCLE)


@dataclass(frozen=True)
class IrrationalDense:
    """α_n = e^{2πi·frac(q_n + √2)}: tankus apskritime, nė vienas nėra vieneto šaknis."""
    family: ClassVar[str] = "irrational_dense"

    def value_at(self, n: int) -> UnitScalar:
        return us.sqrt2_offset(enumerated_fraction(n), 1)

    def tally(self) -> _Tally:
        return _Tally(None, {}, 0, INFINITE, CLOSURE_FULL_CIRCLE)


@dataclass(frozen=True)
class Conjugate:
    """Bazinės šeimos kompleksinis jungtinis (α_n -> ᾱ_n)."""
    base: "BaseFamily"
    family: ClassVar[str] = "conjugate"

    def value_at(self, n: int) -> UnitScalar:
        return us.conjugate(self.base.value_at(n))

    def tally(self) -> _Tally:
        inner = self.base.tally()
        return _Tally(
            value_counts=_conjugate_counts(inner.value_counts),
            g_counts=_conjugate_counts(inner.g_counts),
            g_index_count=inner.g_index_count,
            non_g_index_count=inner.non_g_index_count,
            closure_kind=inner.closure_kind,
        )


def _conjugate_counts(counts: Optional[dict]) -> Optional[dict]:
    if counts is None:
        return None
    return {us.conjugate(s): c for s, c in counts.items()}


BaseFamily = Union[Constant, ExplicitThenConstant, PeriodicPattern, HarmonicRoots,
                   DyadicRoots, RootsEnumeration, IrrationalDense, Conjugate]


# ======================
# SpectrumSpec ir metaduomenys
# ======================

@dataclass(frozen=True)
class SpectrumSpec:
    base: BaseFamily
    overrides: Tuple[Tuple[int, UnitScalar], ...] = ()

    def __post_init__(self):
        items = dict(self.overrides) if not isinstance(self.overrides, dict) else self.overrides
        for n in items:
            if isinstance(n, bool) or not isinstance(n, int) or n < 1:
                raise ContractViolation(f"Perrašymo indeksas turi būti >= 1, gauta {n!r}")
        object.__setattr__(self, 'overrides', tuple(sorted(items.items())))

    @cached_property
    def override_map(self) -> Dict[int, UnitScalar]:
        return dict(self.overrides)


@dataclass(frozen=True)
class SpectrumClosure:
    """
    Deklaruotas spektro uždarinys.

    finite_set: points = visas reikšmių aibė; finite_set_plus_one: uždarinys yra
    {α_n} ∪ points (kaupimosi taškas 1); full_circle: visas apskritimas.
    """
    kind: str
    points: Tuple[UnitScalar, ...] = ()

    def to_dict(self) -> dict:
        return {"kind": self.kind, "points": [us.to_dict(p) for p in self.points]}


@dataclass(frozen=True)
class SpectrumMetadata:
    all_in_G: bool
    distinct_G_values_finite: bool
    sup_order: Optional[Card]
    non_G_index_count: Card
    G_index_count: Card
    claimed_spectrum_closure: SpectrumClosure
    orders_lcm: Optional[int] = None
    distinct_values: Optional[Tuple[UnitScalar, ...]] = field(default=None, compare=False)

    def to_dict(self) -> dict:
        return {
            "all_in_G": self.all_in_G,
            "distinct_G_values_finite": self.distinct_G_values_finite,
            "sup_order": format_card(self.sup_order),
            "non_G_index_count": format_card(self.non_G_index_count),
            "G_index_count": format_card(self.G_index_count),
            "claimed_spectrum_closure": self.claimed_spectrum_closure.to_dict(),
            "orders_lcm": self.orders_lcm,
        }


def value_at(spec: SpectrumSpec, n: int) -> UnitScalar:
    """α_n: perrašymas, jei yra, kitaip bazinės šeimos reikšmė."""
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise ContractViolation(f"value_at: indeksas turi būti >= 1, gauta {n!r}")
    override = spec.override_map.get(n)
    if override is not None:
        return override
    return spec.base.value_at(n)


def iter_values(spec: SpectrumSpec) -> Iterator[UnitScalar]:
    """Tingus generatorius α_1, α_2, ..."""
    for n in itertools.count(1):
        yield value_at(spec, n)


def prefix_values(spec: SpectrumSpec, d: int) -> List[UnitScalar]:
    if isinstance(d, bool) or not isinstance(d, int) or d < 1:
        raise ContractViolation(f"prefix_values: d turi būti >= 1, gauta {d!r}")
    return list(itertools.islice(iter_values(spec), d))


def metadata(spec: SpectrumSpec) -> SpectrumMetadata:
    """
    Tikslūs visos sekos metaduomenys.

    Bazinės šeimos skaičiavimai imami iš uždaros formos, tada kiekvienas
    perrašytas indeksas atimamas (sena reikšmė) ir pridedamas (nauja reikšmė).

    Args:
        spec: Spektro specifikacija

    Returns:
        SpectrumMetadata
    """
    tally = spec.base.tally()
    for n, new_value in spec.overrides:
        tally.remove(spec.base.value_at(n))
        tally.add(new_value)

    g_counts = tally.g_counts
    if g_counts is None:
        sup_order, orders_lcm = INFINITE, None
    elif not g_counts:
        sup_order, orders_lcm = None, None
    else:
        orders = [us.order(s) for s in g_counts]
        sup_order, orders_lcm = max(orders), lcm_all(orders)

    distinct_values = None
    if tally.value_counts is not None:
        distinct_values = tuple(sorted(tally.value_counts, key=scalar_sort_key))

    if tally.closure_kind == CLOSURE_FINITE_SET and distinct_values is not None:
        closure = SpectrumClosure(CLOSURE_FINITE_SET, distinct_values)
    elif tally.closure_kind == CLOSURE_FINITE_SET_PLUS_ONE:
        closure = SpectrumClosure(CLOSURE_FINITE_SET_PLUS_ONE, (IDENTITY,))
    else:
        closure = SpectrumClosure(CLOSURE_FULL_CIRCLE)

    return SpectrumMetadata(
        all_in_G=tally.non_g_index_count == 0,
        distinct_G_values_finite=g_counts is not None,
        sup_order=sup_order,
        non_G_index_count=tally.non_g_index_count,
        G_index_count=tally.g_index_count,
        claimed_spectrum_closure=closure,
        orders_lcm=orders_lcm,
        distinct_values=distinct_values,
    )


def conjugate_family(base: BaseFamily) -> BaseFamily:
    if isinstance(base, Constant):
        return Constant(us.conjugate(base.value))
    if isinstance(base, ExplicitThenConstant):
        return ExplicitThenConstant(tuple(us.conjugate(s) for s in base.prefix), us.conjugate(base.tail))
    if isinstance(base, PeriodicPattern):
        return PeriodicPattern(tuple(us.conjugate(s) for s in base.pattern))
    if isinstance(base, Conjugate):
        return base.base
    return Conjugate(base)


def adjoint_spec(spec: SpectrumSpec) -> SpectrumSpec:
    """T* generatorius: kiekviena reikšmė pakeičiama jungtine."""
    return SpectrumSpec(
        conjugate_family(spec.base),
        tuple((n, us.conjugate(s)) for n, s in spec.overrides),
    )


# ======================
# Vardiniai konstruktoriai
# ======================

def harmonic() -> SpectrumSpec:
    return SpectrumSpec(HarmonicRoots())


def dyadic() -> SpectrumSpec:
    return SpectrumSpec(DyadicRoots())


def roots_enumeration() -> SpectrumSpec:
    return SpectrumSpec(RootsEnumeration())


def irrational_dense() -> SpectrumSpec:
    return SpectrumSpec(IrrationalDense())


def constant(s: UnitScalar) -> SpectrumSpec:
    return SpectrumSpec(Constant(s))


def residue_pattern(k: int) -> SpectrumSpec:
    """α_n = e^{2πi (n mod k)/k}."""
    if k < 1:
        raise ContractViolation(f"residue_pattern: k turi būti >= 1, gauta {k}")
    return SpectrumSpec(PeriodicPattern(tuple(RationalRotation(n % k, k) for n in range(1, k + 1))))


def codimension_example(m: int = 1) -> SpectrumSpec:
    """
    Dvejetainės šaknys, kurių pirmos m reikšmių pakeistos į e^{2√2πi}.

    P(T) uždarinio kodimensija lygi m, o P(T) nėra uždaras.
    """
    if m < 1:
        raise ContractViolation(f"codimension_example: m turi būti >= 1, gauta {m}")
    irrational = us.sqrt2_offset(0, 2)
    return SpectrumSpec(DyadicRoots(), tuple((n, irrational) for n in range(1, m + 1)))


def codimension_one_example() -> SpectrumSpec:
    return codimension_example(1)


# ======================
# JSON
# ======================

_SIMPLE_FAMILIES = {
    HarmonicRoots.family: HarmonicRoots,
    DyadicRoots.family: DyadicRoots,
    RootsEnumeration.family: RootsEnumeration,
    IrrationalDense.family: IrrationalDense,
}


def family_to_dict(base: BaseFamily) -> dict:
    data = {"family": base.family}
    if isinstance(base, Constant):
        data["value"] = us.to_dict(base.value)
    elif isinstance(base, ExplicitThenConstant):
        data["prefix"] = [us.to_dict(s) for s in base.prefix]
        data["tail"] = us.to_dict(base.tail)
    elif isinstance(base, PeriodicPattern):
        data["pattern"] = [us.to_dict(s) for s in base.pattern]
    elif isinstance(base, Conjugate):
        data["base"] = family_to_dict(base.base)
    return data


def _expect_keys(data: dict, allowed: set, where: str) -> None:
    unknown = set(data) - allowed
    if unknown:
        raise SchemaError(f"{where}: nežinomi laukai {sorted(unknown)}")
    missing = allowed - set(data)
    if missing:
        raise SchemaError(f"{where}: trūksta laukų {sorted(missing)}")


def family_from_dict(data: dict) -> BaseFamily:
    if not isinstance(data, dict):
        raise SchemaError(f"Šeimos aprašas turi būti objektas, gauta {data!r}")
    name = data.get("family")
    if not isinstance(name, str) or not name:
        raise SchemaError(f"Spektro šeima turi būti netuščia eilutė, gauta {name!r}")
    if name in _SIMPLE_FAMILIES:
        _expect_keys(data, {"family"}, name)
        return _SIMPLE_FAMILIES[name]()
    if name == Constant.family:
        _expect_keys(data, {"family", "value"}, name)
        return Constant(us.from_dict(data["value"]))
    if name == ExplicitThenConstant.family:
        _expect_keys(data, {"family", "prefix", "tail"}, name)
        if not isinstance(data["prefix"], list):
            raise SchemaError("explicit_then_constant: prefix turi būti sąrašas")
        return ExplicitThenConstant(tuple(us.from_dict(s) for s in data["prefix"]), us.from_dict(data["tail"]))
    if name == PeriodicPattern.family:
        _expect_keys(data, {"family", "pattern"}, name)
        if not isinstance(data["pattern"], list) or not data["pattern"]:
            raise SchemaError("periodic: pattern turi būti netuščias sąrašas")
        return PeriodicPattern(tuple(us.from_dict(s) for s in data["pattern"]))
    if name == Conjugate.family:
        _expect_keys(data, {"family", "base"}, name)
        return Conjugate(family_from_dict(data["base"]))
    raise UnsupportedFamily(f"Nepalaikoma spektro šeima: {name!r}")


def spec_to_dict(spec: SpectrumSpec) -> dict:
    return {
        "base": family_to_dict(spec.base),
        "overrides": [{"n": n, "value": us.to_dict(s)} for n, s in spec.overrides],
    }


def spec_from_dict(data: dict) -> SpectrumSpec:
    """
    Nuskaito SpectrumSpec iš JSON žodyno; nežinomi laukai atmetami.

    Raises:
        SchemaError
        UnsupportedFamily: jei šeimos pavadinimas nežinomas
    """
    if not isinstance(data, dict) or "base" not in data:
        raise SchemaError("SpectrumSpec turi turėti 'base' lauką")
    unknown = set(data) - {"base", "overrides"}
    if unknown:
        raise SchemaError(f"SpectrumSpec: nežinomi laukai {sorted(unknown)}")
    overrides = {}
    for item in data.get("overrides", []):
        if not isinstance(item, dict):
            raise SchemaError(f"Neteisingas perrašymas: {item!r}")
        _expect_keys(item, {"n", "value"}, "override")
        n = item["n"]
        if isinstance(n, bool) or not isinstance(n, int) or n < 1:
            raise SchemaError(f"Perrašymo indeksas turi būti >= 1, gauta {n!r}")
        if n in overrides:
            raise SchemaError(f"Pasikartojantis perrašymo indeksas {n}")
        overrides[n] = us.from_dict(item["value"])
    spec = SpectrumSpec(family_from_dict(data["base"]), tuple(overrides.items()))
    logging.debug("Nuskaityta spektro specifikacija: %s su %d perrašymais", spec.base.family, len(overrides))
    return spec
