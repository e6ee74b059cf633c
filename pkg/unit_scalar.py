"""
Tiksli vienetinio apskritimo skaliarų aritmetika.

Skaliaras e^{2πit} saugomas per pasukimo skaičių t ∈ [0, 1):
  - RationalRotation: t = p/q (vienetinė šaknis, eilė q);
  - IrrationalRotation: t sertifikuotai iracionalus. Kuriamas tik per
    sqrt2_offset (t = frac(r + m·√2), m != 0) arba declared_irrational.

Slankiojo kablelio reikšmės niekada automatiškai neklasifikuojamos.
"""
import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Union

import sympy

from errors import ContractViolation, OrderUndefined, SchemaError

DECLARED_PREFIX = "declared:"

_SQRT2_FORMULA = re.compile(r'^frac\((-?\d+)(?:/(\d+))? \+ (-?\d+)\*sqrt\(2\)\)$')


@dataclass(frozen=True)
class RationalRotation:
    """e^{2πip/q}, visada suprastinta: 0 <= p < q, gcd(p, q) = 1."""
    p: int
    q: int = 1

    def __post_init__(self):
        if isinstance(self.q, bool) or not isinstance(self.q, int) or self.q < 1:
            raise ContractViolation(f"Vardiklis turi būti teigiamas sveikasis skaičius, gauta {self.q!r}")
        t = Fraction(self.p, self.q) % 1
        object.__setattr__(self, 'p', t.numerator)
        object.__setattr__(self, 'q', t.denominator)

    @property
    def t(self) -> Fraction:
        return Fraction(self.p, self.q)

    def __str__(self):
        return f"{self.p}/{self.q}"


@lru_cache(maxsize=65536)
def _frac_offset_sqrt2(numerator: int, denominator: int, coeff: int) -> float:
    expr = sympy.Rational(numerator, denominator) + coeff * sympy.sqrt(2)
    if expr.is_rational is not False:
        raise ContractViolation(f"Nepavyko sertifikuoti iracionalumo: {expr}")
    return float((expr - sympy.floor(expr)).evalf(30))


@dataclass(frozen=True)
class IrrationalRotation:
    """
    Iracionalus pasukimas.

    sqrt2 tipo reikšmėms t = frac(offset + sqrt2_coeff·√2) ir lygybė yra tiksli
    (pora (offset mod 1, sqrt2_coeff) vienareikšmė, nes √2 iracionalus).
    Deklaruotoms reikšmėms sqrt2_coeff = 0, o tapatybę nusako provenance ir t_approx.
    """
    offset: Fraction
    sqrt2_coeff: int
    provenance: str
    declared_t: Optional[float] = None
    t_approx: float = field(default=0.0, compare=False)

    def __post_init__(self):
        if self.sqrt2_coeff == 0:
            if not self.provenance.startswith(DECLARED_PREFIX) or self.declared_t is None:
                raise ContractViolation("Iracionalus pasukimas be sertifikato neleidžiamas")
            if not 0.0 <= self.declared_t < 1.0:
                raise ContractViolation(f"Deklaruotas t turi būti [0, 1): {self.declared_t}")
            object.__setattr__(self, 'offset', Fraction(0))
            object.__setattr__(self, 't_approx', float(self.declared_t))
            return
        offset = Fraction(self.offset) % 1
        object.__setattr__(self, 'offset', offset)
        object.__setattr__(self, 'declared_t', None)
        object.__setattr__(self, 't_approx', _frac_offset_sqrt2(offset.numerator, offset.denominator, self.sqrt2_coeff))

    @property
    def is_declared(self) -> bool:
        return self.sqrt2_coeff == 0

    @property
    def t_formula(self) -> str:
        if self.is_declared:
            return self.provenance
        return f"frac({self.offset.numerator}/{self.offset.denominator} + {self.sqrt2_coeff}*sqrt(2))"

    def __str__(self):
        return self.t_formula


UnitScalar = Union[RationalRotation, IrrationalRotation]

IDENTITY = RationalRotation(0, 1)


def rational(p: int, q: int = 1) -> RationalRotation:
    return RationalRotation(p, q)


def sqrt2_offset(r: Union[Fraction, int, str] = 0, m: int = 1) -> IrrationalRotation:
    """
    Sertifikuotai iracionalus pasukimas t = frac(r + m·√2).

    Args:
        r: Racionalus poslinkis
        m: Nenulinis sveikasis √2 koeficientas

    Returns:
        IrrationalRotation
    """
    if m == 0:
        raise ContractViolation("sqrt2_offset: koeficientas m negali būti 0")
    return IrrationalRotation(offset=Fraction(r), sqrt2_coeff=m, provenance="sqrt2-offset")


def declared_irrational(t_approx: float, provenance: str) -> IrrationalRotation:
    """Vartotojo deklaruotas (assert-irrational) pasukimas su kilmės aprašu."""
    if not provenance.startswith(DECLARED_PREFIX):
        provenance = DECLARED_PREFIX + provenance
    return IrrationalRotation(offset=Fraction(0), sqrt2_coeff=0, provenance=provenance,
                              declared_t=float(t_approx) % 1.0)


def rotation_number(s: UnitScalar) -> Union[Fraction, float]:
    if isinstance(s, RationalRotation):
        return s.t
    return s.t_approx


def order(s: UnitScalar) -> int:
    """
    Multiplikatyvinė eilė: mažiausias m >= 1, kad s^m = 1.

    Raises:
        OrderUndefined: iracionaliam pasukimui
    """
    if isinstance(s, IrrationalRotation):
        raise OrderUndefined(f"Eilė neapibrėžta iracionaliam pasukimui {s.t_formula}")
    return s.q


def power(s: UnitScalar, k: int) -> UnitScalar:
    """
    s^k: pasukimo skaičius padauginamas iš k moduliu 1.

    Args:
        s: Skaliaras
        k: Bet koks sveikasis laipsnis

    Returns:
        UnitScalar (racionalus lieka racionalus, iracionalus lieka iracionalus kai k != 0)
    """
    if k == 0:
        return IDENTITY
    if isinstance(s, RationalRotation):
        return RationalRotation(s.p * k, s.q)
    if s.is_declared:
        inner = s.provenance[len(DECLARED_PREFIX):]
        return declared_irrational((s.t_approx * k) % 1.0, f"{k}*({inner})")
    return IrrationalRotation(offset=s.offset * k, sqrt2_coeff=s.sqrt2_coeff * k, provenance=s.provenance)


def conjugate(s: UnitScalar) -> UnitScalar:
    """Kompleksinis jungtinis: pasukimo skaičius 1 - t (mod 1)."""
    if isinstance(s, RationalRotation):
        return RationalRotation(-s.p, s.q)
    if s.is_declared:
        inner = s.provenance[len(DECLARED_PREFIX):]
        return declared_irrational((1.0 - s.t_approx) % 1.0, f"conj({inner})")
    return IrrationalRotation(offset=-s.offset, sqrt2_coeff=-s.sqrt2_coeff, provenance=s.provenance)


def is_root_of_unity(s: UnitScalar) -> bool:
    return isinstance(s, RationalRotation)


# Tikslios reikšmės ketvirčio posūkiams
_QUARTER_TURNS = {0: complex(1.0, 0.0), 1: complex(0.0, 1.0), 2: complex(-1.0, 0.0), 3: complex(0.0, -1.0)}


def to_complex(s: UnitScalar) -> complex:
    """
    Konvertuoja į kompleksinį skaičių (cos 2πt, sin 2πt).

    Args:
        s: Skaliaras

    Returns:
        complex, kurio modulis 1 (1e-12 tikslumu)
    """
    if isinstance(s, RationalRotation) and (4 * s.p) % s.q == 0:
        return _QUARTER_TURNS[(4 * s.p) // s.q]
    angle = 2.0 * math.pi * float(rotation_number(s))
    return complex(math.cos(angle), math.sin(angle))


def nearest_dyadic(s: UnitScalar, n: int) -> tuple[int, float]:
    """
    Artimiausia 2^n-oji vieneto šaknis e^{2πik/2^n}.

    Lygiu atstumu esant dviem kandidatams, parenkamas mažesnis k.

    Args:
        s: Skaliaras
        n: Lygis (n >= 1)

    Returns:
        tuple: (k intervale [0, 2^n), stygos atstumas)
    """
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise ContractViolation(f"nearest_dyadic: lygis turi būti >= 1, gauta {n!r}")
    size = 2 ** n
    if isinstance(s, RationalRotation):
        x = Fraction(s.p * size, s.q)
        lower = math.floor(x)
        rest = x - lower
        if rest < Fraction(1, 2):
            k, diff = lower, rest
        elif rest > Fraction(1, 2):
            k, diff = lower + 1, 1 - rest
        else:
            k, diff = min(lower % size, (lower + 1) % size), rest
        diff = float(diff)
    else:
        x = s.t_approx * size
        lower = math.floor(x)
        rest = x - lower
        if rest <= 0.5:
            k, diff = lower, rest
        else:
            k, diff = lower + 1, 1.0 - rest
    chord = 2.0 * math.sin(math.pi * diff / size)
    return k % size, chord


def chord_distance(a: UnitScalar, b: UnitScalar) -> float:
    return abs(to_complex(a) - to_complex(b))


def nearest_root_of_unity(z: complex, max_order: int) -> tuple[int, int, float]:
    """
    Skaitinio taško artimiausia vieneto šaknis, kurios eilė <= max_order.

    Args:
        z: Kompleksinis skaičius
        max_order: Didžiausias leistinas vardiklis

    Returns:
        tuple: (p, q, atstumas |z - e^{2πip/q}|)
    """
    t = (math.atan2(z.imag, z.real) / (2.0 * math.pi)) % 1.0
    best = Fraction(t).limit_denominator(max_order) % 1
    root = to_complex(RationalRotation(best.numerator, best.denominator))
    return best.numerator, best.denominator, abs(z - root)


def to_dict(s: UnitScalar) -> dict:
    if isinstance(s, RationalRotation):
        return {"kind": "rational", "p": s.p, "q": s.q}
    return {"kind": "irrational", "t_formula": s.t_formula, "t_approx": s.t_approx}


def from_dict(data: dict) -> UnitScalar:
    """
    Nuskaito UnitScalar iš JSON žodyno.

    Raises:
        SchemaError: jei žodynas neatitinka schemos
    """
    if not isinstance(data, dict):
        raise SchemaError(f"UnitScalar turi būti objektas, gauta {data!r}")
    kind = data.get("kind")
    if kind == "rational":
        if set(data) != {"kind", "p", "q"}:
            raise SchemaError(f"Racionalaus pasukimo laukai: kind, p, q; gauta {sorted(data)}")
        p, q = data["p"], data["q"]
        if isinstance(p, bool) or not isinstance(p, int) or isinstance(q, bool) or not isinstance(q, int) or q < 1:
            raise SchemaError(f"Neteisingas racionalus pasukimas: {data}")
        return RationalRotation(p, q)
    if kind == "irrational":
        if not set(data) <= {"kind", "t_formula", "t_approx"} or "t_formula" not in data:
            raise SchemaError(f"Iracionalaus pasukimo laukai: kind, t_formula, t_approx; gauta {sorted(data)}")
        formula = str(data["t_formula"])
        match = _SQRT2_FORMULA.match(formula)
        if match:
            offset = Fraction(int(match.group(1)), int(match.group(2) or 1))
            coeff = int(match.group(3))
            if coeff == 0:
                raise SchemaError("√2 koeficientas negali būti 0")
            return sqrt2_offset(offset, coeff)
        if formula.startswith(DECLARED_PREFIX):
            t_approx = data.get("t_approx")
            if isinstance(t_approx, bool) or not isinstance(t_approx, (int, float)) or not 0 <= t_approx < 1:
                raise SchemaError(f"Deklaruotam pasukimui reikalingas t_approx intervale [0, 1): {data}")
            return declared_irrational(float(t_approx), formula)
        raise SchemaError(f"Nepalaikoma iracionalumo formulė: '{formula}'")
    raise SchemaError(f"Nežinomas UnitScalar tipas: {kind!r}")


def describe(s: UnitScalar) -> str:
    """Trumpas aprašas ataskaitoms: racionaliems "p/q", iracionaliems formulė."""
    return str(s)
