"""Bit-exact JSON file formats.

Structure files (``.mspace.json``) hold a universe, operation tables with
``null`` for undefined entries, and components; vector files hold generator
matrices over GF(p); metric files hold rational grids as [numerator,
denominator] pairs.  Rendering is canonical, so parse/render round-trips are
byte-identical.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Optional

from .core import Component, MultiSpace, OpTable
from .errors import ContractError, InputError
from .foundations import FiniteUniverse
from .multimetric import MappingTable, MetricTable
from .multivector import AmbientSpace, MultiVectorSpace

FORMAT_VERSION = "1"

STRUCTURE_EXTENSION = ".mspace.json"
METRIC_EXTENSION = ".metric.json"


def space_to_dict(ms: MultiSpace, construction: Optional[dict] = None) -> dict:
    names = ms.universe.elements
    out = {
        "format_version": FORMAT_VERSION,
        "kind": "multispace",
        "universe": list(names),
        "operations": [
            {
                "name": t.name,
                "domain": [names[i] for i in t.domain],
                "table": [
                    [None if v is None else names[v] for v in row] for row in t.entries
                ],
            }
            for t in ms.ops
        ],
        "components": [
            {
                "name": c.name,
                "carrier": [names[i] for i in c.carrier],
                "ops": list(c.op_names),
                "double": c.double,
            }
            for c in ms.components
        ],
    }
    if construction is not None:
        out["construction"] = construction
    return out


def space_from_dict(data: dict) -> tuple[MultiSpace, Optional[dict]]:
    try:
        universe = FiniteUniverse.of(data["universe"])
        ops = []
        for spec in data["operations"]:
            domain = [universe.index(n) for n in spec["domain"]]
            table = [
                [None if v is None else universe.index(v) for v in row]
                for row in spec["table"]
            ]
            ops.append(OpTable(spec["name"], universe, domain, table))
        components = []
        for spec in data["components"]:
            components.append(
                Component(
                    spec["name"],
                    tuple(sorted(universe.index(n) for n in spec["carrier"])),
                    tuple(spec["ops"]),
                    bool(spec.get("double", False)),
                )
            )
        return MultiSpace(universe, components, ops), data.get("construction")
    except (KeyError, TypeError, ContractError) as exc:
        raise InputError(f"malformed structure file: {exc}") from exc


def vector_space_to_dict(mvs: MultiVectorSpace) -> dict:
    return {
        "format_version": FORMAT_VERSION,
        "kind": "multivector",
        "field_order": mvs.ambient.p,
        "ambient_dimension": mvs.ambient.n,
        "components": [
            {"name": c.name, "generators": [list(g) for g in c.generators]}
            for c in mvs.components
        ],
    }


def vector_space_from_dict(data: dict) -> MultiVectorSpace:
    try:
        ambient = AmbientSpace(int(data["field_order"]), int(data["ambient_dimension"]))
        gens = [[tuple(v) for v in spec["generators"]] for spec in data["components"]]
        names = [spec["name"] for spec in data["components"]]
        return MultiVectorSpace.from_generators(ambient, gens, names)
    except (KeyError, TypeError, ValueError, ContractError) as exc:
        raise InputError(f"malformed vector file: {exc}") from exc


def _frac_pair(x: Fraction) -> list[int]:
    return [x.numerator, x.denominator]


def metric_components_to_dict(components) -> dict:
    return {
        "format_version": FORMAT_VERSION,
        "kind": "multimetric",
        "components": [
            {
                "points": list(t.points),
                "d": [[_frac_pair(v) for v in row] for row in t.d],
            }
            for t in components
        ],
    }


def metric_components_from_dict(data: dict) -> list[MetricTable]:
    try:
        out = []
        for spec in data["components"]:
            rows = [[Fraction(int(v[0]), int(v[1])) for v in row] for row in spec["d"]]
            out.append(MetricTable.from_rows(spec["points"], rows))
        return out
    except (KeyError, TypeError, ValueError, IndexError) as exc:
        raise InputError(f"malformed metric file: {exc}") from exc


def mapping_to_dict(table: MappingTable) -> dict:
    return {
        "format_version": FORMAT_VERSION,
        "kind": "mapping",
        "map": dict(sorted(table.mapping.items())),
    }


def mapping_from_dict(data: dict) -> MappingTable:
    try:
        return MappingTable(dict(data["map"]))
    except (KeyError, TypeError) as exc:
        raise InputError(f"malformed mapping file: {exc}") from exc


def render(data: dict) -> str:
    return json.dumps(data, indent=2) + "\n"


def parse_text(text: str) -> dict:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"JSON parse error at line {exc.lineno}, column {exc.colno}: {exc.msg}")
    if not isinstance(data, dict):
        raise InputError("top level of a file must be a JSON object")
    version = data.get("format_version")
    if version != FORMAT_VERSION:
        raise InputError(f"unsupported format_version {version!r}")
    if "kind" not in data:
        raise InputError("file is missing its kind field")
    return data


def load_path(path):
    with open(path, "r", encoding="utf-8") as handle:
        return parse_text(handle.read())


def save_path(path, data: dict) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        handle.write(render(data))
