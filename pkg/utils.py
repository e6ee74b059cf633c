"""
Bendros utility funkcijos, naudojamos visame projekte.
"""
import math
import logging
from fractions import Fraction
from functools import reduce
from typing import Iterable, Union, Optional

from errors import SchemaError

# Begalinis kardinalumas (orbitos, indeksų skaičiai)
INFINITE = math.inf

Card = Union[int, float]


def lcm_all(values: Iterable[int]) -> int:
    """
    Mažiausias bendras kartotinis. Tuščiam sąrašui grąžina 1.

    Args:
        values: Teigiami sveikieji skaičiai

    Returns:
        int: lcm (neribotas tikslumas)
    """
    return reduce(math.lcm, values, 1)


def is_finite_card(card: Optional[Card]) -> bool:
    return card is not None and card != INFINITE


def card_minus(card: Card, amount: int = 1) -> Card:
    """Atima iš kardinalumo; begalybė lieka begalybe."""
    if card == INFINITE:
        return INFINITE
    return max(0, int(card) - amount)


def card_plus(card: Card, amount: int = 1) -> Card:
    if card == INFINITE:
        return INFINITE
    return int(card) + amount


def format_card(card: Optional[Card]) -> Union[int, str, None]:
    """
    Kardinalumą paverčia JSON tinkama reikšme: begalybė tampa "inf".

    Args:
        card: int, INFINITE arba None

    Returns:
        int, "inf" arba None
    """
    if card is None:
        return None
    if card == INFINITE:
        return "inf"
    return int(card)


def parse_card(value) -> Card:
    if value == "inf":
        return INFINITE
    if isinstance(value, bool) or not isinstance(value, int):
        raise SchemaError(f"Neteisingas kardinalumas: {value!r}")
    return value


def parse_fraction(value: Union[str, int, Fraction, None], field: str = "value") -> Fraction:
    """
    Saugiai konvertuoja reikšmę į Fraction (tikslioji aritmetika).

    Priimami int, Fraction ir eilutės formatu "p/q" arba "-3". Float nepriimamas,
    nes jo reikšmė nėra tiksli.

    Args:
        value: Konvertuojama reikšmė
        field: Lauko pavadinimas klaidos pranešimui

    Returns:
        Fraction

    Raises:
        SchemaError: jei reikšmė netinkama
    """
    if isinstance(value, bool) or value is None or isinstance(value, float):
        raise SchemaError(f"Laukas '{field}': reikalinga tiksli racionali reikšmė, gauta {value!r}")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    try:
        text = str(value).strip().replace(' ', '')
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise SchemaError(f"Laukas '{field}': nepavyko perskaityti '{value}' kaip trupmenos")


def validate_positive_integer(value, max_value: Optional[int] = None) -> tuple[bool, str]:
    """
    Validuoja ar reikšmė yra teigiamas sveikasis skaičius ir neviršija maksimumo.

    Args:
        value: Validuojama reikšmė
        max_value: Maksimali leistina reikšmė

    Returns:
        tuple: (ar_validus, klaidos_pranešimas)
    """
    if isinstance(value, bool) or not isinstance(value, int):
        return False, "Reikšmė turi būti sveikasis skaičius"

    if value < 1:
        return False, "Reikšmė turi būti teigiama"

    if max_value is not None and value > max_value:
        return False, f"Reikšmė negali viršyti {max_value}"

    return True, ""


def require_positive_integer(value, name: str, max_value: Optional[int] = None) -> int:
    is_valid, msg = validate_positive_integer(value, max_value)
    if not is_valid:
        raise SchemaError(f"{name}: {msg}")
    return value


def fraction_to_json(value: Fraction) -> Union[int, str]:
    """Sveikuosius rašo kaip int, kitus kaip "p/q" eilutę."""
    if value.denominator == 1:
        return value.numerator
    return f"{value.numerator}/{value.denominator}"


def log_function_call(func_name: str, **kwargs) -> None:
    """
    Užregistruoja funkcijos kvietimą su parametrais.

    Args:
        func_name: Funkcijos pavadinimas
        **kwargs: Funkcijos parametrai
    """
    params = ", ".join([f"{k}={v}" for k, v in kwargs.items()])
    logging.info("Kviečiama funkcija: %s(%s)", func_name, params)
