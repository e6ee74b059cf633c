"""
Spec failų (JSON) skaitymas ir rašymas.

Failo struktūra:
    {
      "operator": {"kind": "diagonal" | "permutation", "spec": {...}},
      "vectors": [ExactVector | GroupedVector, ...],     # neprivaloma
      "oracle": {"d": 128, "max_m": 16384, "tol": 1e-9}  # neprivaloma
    }
"""
import json
import logging
from dataclasses import dataclass, field
from typing import Dict, List, Union

import permutation as pm
import spectrum_gen as sg
from diagonal_analysis import ExactVector
from errors import SchemaError
from permutation import GroupedVector, PermutationSpec
from spectrum_gen import SpectrumSpec
from utils import require_positive_integer

DIAGONAL = "diagonal"
PERMUTATION = "permutation"

_TOP_LEVEL_FIELDS = {"operator", "vectors", "oracle"}
_ORACLE_FIELDS = {"d", "max_m", "tol", "seed"}

Vector = Union[ExactVector, GroupedVector]


@dataclass(frozen=True)
class SpecFile:
    kind: str
    spec: Union[SpectrumSpec, PermutationSpec]
    vectors: tuple = ()
    oracle: Dict[str, Union[int, float]] = field(default_factory=dict, compare=False)

    @property
    def is_diagonal(self) -> bool:
        return self.kind == DIAGONAL


def parse_vector(data: dict) -> Vector:
    """'support' raktas reiškia ExactVector, 'groups' - GroupedVector."""
    if isinstance(data, dict) and "support" in data:
        return ExactVector.from_dict(data)
    if isinstance(data, dict) and "groups" in data:
        return GroupedVector.from_dict(data)
    raise SchemaError(f"Vektorius turi turėti 'support' arba 'groups' lauką, gauta {data!r}")


def vector_to_dict(x: Vector) -> dict:
    return x.to_dict()


def parse_operator(data: dict) -> tuple:
    if not isinstance(data, dict) or set(data) != {"kind", "spec"}:
        raise SchemaError("operator laukas turi turėti tik 'kind' ir 'spec'")
    kind = data["kind"]
    if kind == DIAGONAL:
        return kind, sg.spec_from_dict(data["spec"])
    if kind == PERMUTATION:
        return kind, pm.spec_from_dict(data["spec"])
    raise SchemaError(f"Nežinomas operatoriaus tipas: {kind!r}")


def _parse_oracle(data: dict) -> Dict[str, Union[int, float]]:
    if not isinstance(data, dict):
        raise SchemaError("oracle laukas turi būti objektas")
    unknown = set(data) - _ORACLE_FIELDS
    if unknown:
        raise SchemaError(f"oracle: nežinomi laukai {sorted(unknown)}")
    config = {}
    for name in ("d", "max_m"):
        if name in data:
            config[name] = require_positive_integer(data[name], f"oracle.{name}")
    if "seed" in data:
        seed = data["seed"]
        if isinstance(seed, bool) or not isinstance(seed, int) or seed < 0:
            raise SchemaError(f"oracle.seed turi būti neneigiamas sveikasis skaičius, gauta {seed!r}")
        config["seed"] = seed
    if "tol" in data:
        tol = data["tol"]
        if isinstance(tol, bool) or not isinstance(tol, (int, float)) or tol <= 0:
            raise SchemaError(f"oracle.tol turi būti teigiamas skaičius, gauta {tol!r}")
        config["tol"] = float(tol)
    return config


def parse_spec_file(data: dict) -> SpecFile:
    """
    Validuoja ir nuskaito SpecFile žodyną.

    Raises:
        SchemaError: jei struktūra neteisinga arba yra nežinomų laukų
    """
    if not isinstance(data, dict):
        raise SchemaError("Spec failas turi būti JSON objektas")
    unknown = set(data) - _TOP_LEVEL_FIELDS
    if unknown:
        raise SchemaError(f"Spec failas: nežinomi laukai {sorted(unknown)}")
    if "operator" not in data:
        raise SchemaError("Spec failas: trūksta 'operator' lauko")

    kind, spec = parse_operator(data["operator"])
    raw_vectors = data.get("vectors", [])
    if not isinstance(raw_vectors, list):
        raise SchemaError("vectors turi būti sąrašas")
    vectors = tuple(parse_vector(v) for v in raw_vectors)
    if kind == DIAGONAL and any(isinstance(v, GroupedVector) for v in vectors):
        raise SchemaError("Grupiniai vektoriai galimi tik permutacijų operatoriams")
    oracle = _parse_oracle(data.get("oracle", {}))
    return SpecFile(kind, spec, vectors, oracle)


def spec_file_to_dict(spec_file: SpecFile) -> dict:
    to_dict = sg.spec_to_dict if spec_file.is_diagonal else pm.spec_to_dict
    data = {"operator": {"kind": spec_file.kind, "spec": to_dict(spec_file.spec)}}
    if spec_file.vectors:
        data["vectors"] = [vector_to_dict(v) for v in spec_file.vectors]
    if spec_file.oracle:
        data["oracle"] = dict(spec_file.oracle)
    return data


def load_spec_file(path: str) -> SpecFile:
    """
    Nuskaito spec failą iš disko.

    Args:
        path: Kelias iki JSON failo

    Returns:
        SpecFile

    Raises:
        SchemaError: jei failo nėra, JSON sugadintas ar neatitinka schemos
    """
    try:
        with open(path, 'r', encoding='utf-8') as f:
            data = json.load(f)
    except FileNotFoundError:
        raise SchemaError(f"Spec failas nerastas: {path}")
    except json.JSONDecodeError as e:
        raise SchemaError(f"Neteisingas JSON faile {path}: {e}")
    spec_file = parse_spec_file(data)
    logging.info("Nuskaitytas spec failas %s (%s, %d vektoriai)", path, spec_file.kind, len(spec_file.vectors))
    return spec_file


def save_spec_file(spec_file: SpecFile, path: str) -> None:
    with open(path, 'w', encoding='utf-8') as f:
        json.dump(spec_file_to_dict(spec_file), f, ensure_ascii=False, indent=2, sort_keys=True)
        f.write('\n')


def parse_vector_argument(text: str) -> Vector:
    """CLI --vector reikšmė: JSON objektas arba sutrumpinimas "2,3" (e_2 + e_3)."""
    text = text.strip()
    if text.startswith('{'):
        try:
            return parse_vector(json.loads(text))
        except json.JSONDecodeError as e:
            raise SchemaError(f"Neteisingas --vector JSON: {e}")
    try:
        indices: List[int] = [int(part) for part in text.split(',') if part.strip()]
    except ValueError:
        raise SchemaError(f"Neteisingas --vector sąrašas: '{text}'")
    if not indices or any(n < 1 for n in indices):
        raise SchemaError(f"--vector indeksai turi būti >= 1: '{text}'")
    return ExactVector.basis(*indices)
