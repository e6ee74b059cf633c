"""
Unitarių diagonalių operatorių aproksimacija baigtinės eilės operatoriais.

Kiekviena α_j pakeičiama artimiausia 2^n-ąja vieneto šaknimi β_{j,n}; gautas
T_n tenkina T_n^{2^n} = I ir sup_j |β_{j,n} - α_j| <= 2π/2^n.
"""
import logging
import math
import os
from dataclasses import dataclass
from typing import List, Optional, Tuple

import spectrum_gen as sg
import unit_scalar as us
from errors import ContractViolation, ImpossibleRequest, UnsupportedFamily
from spectrum_gen import (Conjugate, Constant, DyadicRoots, ExplicitThenConstant, HarmonicRoots, PeriodicPattern,
                          SpectrumSpec)
from unit_scalar import IDENTITY, RationalRotation, UnitScalar

APPROXIMATION_DEFAULTS = {
    'level': int(os.getenv('PERIODIC_LEVEL', '8')),
    'probe': int(os.getenv('PERIODIC_PROBE', '64')),
    'n_max': int(os.getenv('PERIODIC_N_MAX', '10')),
}

PERMUTATION_REFUSAL = (
    "Permutacijų operatorių aproksimuoti baigtinės eilės permutacijomis neįmanoma: "
    "skirtingoms permutacijoms ‖T_σ - T_τ‖ >= √2."
)


@dataclass(frozen=True)
class ApproximationResult:
    level: int
    snapped_spec: SpectrumSpec
    error_bound: float
    tight_bound: float
    observed_error: float
    exponent: int
    probe: int
    probe_limited: bool

    def to_dict(self) -> dict:
        return {
            "n": self.level,
            "bound": self.error_bound,
            "tight_bound": self.tight_bound,
            "observed": self.observed_error,
            "exponent": self.exponent,
            "probe": self.probe,
            "probe_limited": self.probe_limited,
            "snapped": sg.spec_to_dict(self.snapped_spec),
        }


@dataclass(frozen=True)
class ConvergenceRow:
    n: int
    observed_error: float
    bound: float
    tight_bound: float

    def to_dict(self) -> dict:
        return {"n": self.n, "observed": self.observed_error, "bound": self.bound, "tight_bound": self.tight_bound}


def error_bound(n: int) -> float:
    return 2.0 * math.pi / 2 ** n


def tight_bound(n: int) -> float:
    """Didžiausias stygos atstumas iki artimiausios 2^n-osios šaknies."""
    return 2.0 * math.sin(math.pi / 2 ** (n + 1))


def snap_value(s: UnitScalar, n: int) -> RationalRotation:
    k, _ = us.nearest_dyadic(s, n)
    return RationalRotation(k, 2 ** n)


def _snap_cutoff(base, n: int) -> Optional[int]:
    """Indeksas, nuo kurio visos reikšmės sulimpa į 1 (lygiu atstumu renkamas k = 0)."""
    if isinstance(base, Conjugate):
        return _snap_cutoff(base.base, n)
    if isinstance(base, HarmonicRoots):
        return 2 ** (n + 1)
    if isinstance(base, DyadicRoots):
        return n + 2
    return None


def snapped_family(base, n: int, probe: int) -> Tuple[object, bool]:
    """
    Bazinės šeimos suapvalinimas iki E_n.

    Returns:
        tuple: (nauja šeima, ar rezultatas ribotas zondu)
    """
    if isinstance(base, Conjugate) and isinstance(base.base, (Constant, ExplicitThenConstant, PeriodicPattern)):
        base = sg.conjugate_family(base.base)
    if isinstance(base, Constant):
        return Constant(snap_value(base.value, n)), False
    if isinstance(base, ExplicitThenConstant):
        return ExplicitThenConstant(tuple(snap_value(s, n) for s in base.prefix), snap_value(base.tail, n)), False
    if isinstance(base, PeriodicPattern):
        return PeriodicPattern(tuple(snap_value(s, n) for s in base.pattern)), False

    cutoff = _snap_cutoff(base, n)
    if cutoff is not None:
        prefix = tuple(snap_value(base.value_at(j), n) for j in range(1, cutoff))
        return ExplicitThenConstant(prefix, IDENTITY), False

    prefix = tuple(snap_value(base.value_at(j), n) for j in range(1, probe + 1))
    return ExplicitThenConstant(prefix, IDENTITY), True


def approximate(spec: SpectrumSpec, n: int, probe: int, allow_probe_limited: bool = True) -> ApproximationResult:
    """
    Sukonstruoja T_n: kiekviena α_j suapvalinama iki artimiausios 2^n-osios šaknies.

    Args:
        spec: Spektro specifikacija
        n: Lygis (n >= 1)
        probe: Kiek pirmųjų indeksų tikrinama stebimai paklaidai
        allow_probe_limited: Ar leisti zondu ribotą rezultatą šeimoms be uždaros formos

    Returns:
        ApproximationResult

    Raises:
        UnsupportedFamily: jei uždaros formos nėra ir zondu ribotas rezultatas uždraustas
    """
    if n < 1 or probe < 1:
        raise ContractViolation(f"approximate: n ir probe turi būti >= 1 (n={n}, probe={probe})")

    family, probe_limited = snapped_family(spec.base, n, probe)
    if probe_limited and not allow_probe_limited:
        raise UnsupportedFamily(f"Šeima {spec.base.family} neturi uždaros formos suapvalinimo")

    snapped = SpectrumSpec(family, tuple((j, snap_value(s, n)) for j, s in spec.overrides))
    observed = max(us.nearest_dyadic(s, n)[1] for s in sg.prefix_values(spec, probe))
    if probe_limited:
        logging.info("Suapvalinimas šeimai %s ribotas zondu (probe=%d)", spec.base.family, probe)

    return ApproximationResult(
        level=n,
        snapped_spec=snapped,
        error_bound=error_bound(n),
        tight_bound=tight_bound(n),
        observed_error=observed,
        exponent=2 ** n,
        probe=probe,
        probe_limited=probe_limited,
    )


def convergence_table(spec: SpectrumSpec, n_max: int, probe: int) -> List[ConvergenceRow]:
    """Stebima paklaida ir rėžiai lygiams n = 1..n_max."""
    if n_max < 1:
        raise ContractViolation(f"convergence_table: n_max turi būti >= 1, gauta {n_max}")
    values = sg.prefix_values(spec, probe)
    rows = []
    for n in range(1, n_max + 1):
        observed = max(us.nearest_dyadic(s, n)[1] for s in values)
        rows.append(ConvergenceRow(n, observed, error_bound(n), tight_bound(n)))
    return rows


def refuse_permutation_approximation() -> None:
    raise ImpossibleRequest(PERMUTATION_REFUSAL)
