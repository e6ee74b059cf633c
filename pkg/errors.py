"""
Periodinių taškų bibliotekos klaidų hierarchija.

Kiekviena klaida turi `exit_code`, kurį CLI naudoja kaip proceso grąžinimo kodą.
"""


class PeriodicPointsError(ValueError):
    """Bazinė visų bibliotekos klaidų klasė."""
    exit_code = 1


class OrderUndefined(PeriodicPointsError):
    """Iracionalaus pasukimo eilė neapibrėžta."""


class NotPeriodic(PeriodicPointsError):
    """Vektorius neturi jokio periodo."""


class ContractViolation(PeriodicPointsError):
    """Pažeista funkcijos išankstinė sąlyga."""


class NotNormal(PeriodicPointsError):
    """Matrica nėra normali (TT* != T*T)."""


class UnsupportedFamily(PeriodicPointsError):
    exit_code = 3


class UnsupportedSelector(PeriodicPointsError):
    exit_code = 3


class OrbitClosureUnavailable(PeriodicPointsError):
    """Pradinė atkarpa kerta begalinę orbitą, uždaros orbitomis dimensijos nėra."""
    exit_code = 3


class ImpossibleRequest(PeriodicPointsError):
    exit_code = 4


class SchemaError(PeriodicPointsError):
    """Spec failas neatitinka schemos."""
    exit_code = 2
