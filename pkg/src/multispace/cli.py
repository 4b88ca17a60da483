"""Command-line front end: ``check``, ``construct`` and ``analyze``.

Exit codes: 0 = the checked property holds / analysis succeeded, 1 = the
property fails or a prerequisite verifier rejects the input (witness in the
report), 2 = malformed input.  ``--json`` emits the machine-readable report,
which carries every number the text report mentions.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import constructions, io, multigroup, multiring, multimetric, multivector
from .core import MultiSpace, automorphisms
from .errors import ContractError, MultiSpaceError
from .multimetric import MultiMetricSpace, SequenceSpec

EXIT_HOLDS = 0
EXIT_FAILS = 1
EXIT_INPUT = 2


def _emit(report: dict, as_json: bool) -> None:
    if as_json:
        print(json.dumps(report, indent=2, default=str))
        return
    for line in _textify(report):
        print(line)


def _textify(report: dict, prefix: str = "") -> list[str]:
    lines = []
    for key, value in report.items():
        if isinstance(value, dict):
            lines.append(f"{prefix}{key}:")
            lines.extend(_textify(value, prefix + "  "))
        elif isinstance(value, (list, tuple)):
            lines.append(f"{prefix}{key}: {json.dumps(value, default=str)}")
        else:
            lines.append(f"{prefix}{key}: {value}")
    return lines


def _parse_params(tokens: list[str]) -> dict[str, str]:
    params = {}
    for token in tokens:
        if "=" not in token:
            raise MultiSpaceError(f"parameters look like key=value; got {token!r}")
        key, value = token.split("=", 1)
        params[key] = value
    return params


def _load_kind(path: str, expected: str) -> dict:
    data = io.load_path(path)
    if data["kind"] != expected:
        raise MultiSpaceError(f"{path} holds a {data['kind']!r} file; expected {expected!r}")
    return data


def _names(ms: MultiSpace, indices) -> list[str]:
    return [ms.universe.name(i) for i in sorted(indices)]


# -- check -----------------------------------------------------------------

def cmd_check(args) -> int:
    data = io.load_path(args.path)
    kind = data["kind"]
    level = args.level
    if level == "auto":
        level = {"multispace": "multispace", "multivector": "multivector", "multimetric": "multimetric"}.get(kind)
        if level is None:
            raise MultiSpaceError(f"cannot check files of kind {kind!r}")

    if level in ("multispace", "multigroup", "multiring"):
        if kind != "multispace":
            raise MultiSpaceError(f"level {level} needs a multispace file, not {kind!r}")
        ms, _ = io.space_from_dict(data)
        if level == "multispace":
            report = {
                "level": "multispace",
                "verdict": True,
                "elements": len(ms.universe),
                "components": len(ms.components),
                "operations": len(ms.ops),
                "completed": ms.is_completed(),
            }
            _emit(report, args.json)
            return EXIT_HOLDS
        if level == "multigroup":
            result = multigroup.is_multigroup(ms)
            report = {
                "level": "multigroup",
                "verdict": result.verdict,
                "completed": result.complete,
                "group_checks": [
                    {"component": c, "op": o, "ok": ok, "witness": _witness(ms, w)}
                    for c, o, ok, w in result.group_checks
                ],
                "distribution": [
                    {"pair": list(d.pair), "orientation": d.orientation} for d in result.distribution
                ],
                "witness": _witness(ms, result.witness),
            }
            _emit(report, args.json)
            return EXIT_HOLDS if result.verdict else EXIT_FAILS
        result = multiring.is_multiring(ms)
        report = {
            "level": "multiring",
            "verdict": result.verdict,
            "completed": result.complete,
            "multifield": result.multifield,
            "ring_checks": [
                {"component": c, "witness": _witness(ms, w)} for c, w in result.ring_checks
            ],
            "zero_divisors": [
                {"component": c, "pairs": [[ms.universe.name(a), ms.universe.name(b)] for a, b in pairs]}
                for c, pairs in result.zero_divisors
            ],
            "witness": _witness(ms, result.witness),
        }
        _emit(report, args.json)
        return EXIT_HOLDS if result.verdict else EXIT_FAILS

    if level == "multivector":
        mvs = io.vector_space_from_dict(_load_kind(args.path, "multivector"))
        dims = [multivector.rank(mvs.ambient, c.vectors) for c in mvs.components]
        report = {
            "level": "multivector",
            "verdict": True,
            "field_order": mvs.ambient.p,
            "ambient_dimension": mvs.ambient.n,
            "component_dims": dims,
        }
        _emit(report, args.json)
        return EXIT_HOLDS

    if level == "multimetric":
        tables = io.metric_components_from_dict(_load_kind(args.path, "multimetric"))
        verdicts = [multimetric.validate_metric(t) for t in tables]
        report = {
            "level": "multimetric",
            "verdict": all(v.valid for v in verdicts),
            "components": [
                {"points": len(t.points), "valid": v.valid, "axiom": v.axiom, "witness": v.witness}
                for t, v in zip(tables, verdicts)
            ],
        }
        _emit(report, args.json)
        return EXIT_HOLDS if report["verdict"] else EXIT_FAILS

    raise MultiSpaceError(f"unknown check level {level!r}")


def _witness(ms: MultiSpace, w):
    if w is None:
        return None
    out = {}
    for key, value in w.items():
        if key in ("pair", "triple") and isinstance(value, tuple):
            out[key] = [ms.universe.name(v) if isinstance(v, int) else v for v in value]
        elif key in ("element", "result", "g", "h", "conjugate") and isinstance(value, int):
            out[key] = ms.universe.name(value)
        else:
            out[key] = value
    return out


# -- construct ---------------------------------------------------------------

def cmd_construct(args) -> int:
    params = _parse_params(args.params)
    seed = int(params.get("seed", args.seed))
    kind = args.kind
    if kind == "latin":
        n = int(params["n"])
        k = int(params["k"])
        squares = constructions.gen_latin_squares(n, k, seed)
        symbols = [str(i + 1) for i in range(n)]
        ms = constructions.latin_multispace(symbols, squares)
        recipe = {"kind": "latin", "n": n, "k": k, "seed": seed}
    elif kind == "cyclic_union":
        orders = [int(x) for x in params["orders"].split(",")]
        ms = constructions.disjoint_cyclic_union(orders)
        recipe = {"kind": "cyclic_union", "orders": orders}
    elif kind == "fan":
        base = params["base"]
        if not base.startswith("Z"):
            raise MultiSpaceError("fan base must look like Z<order> (a cyclic group)")
        order = int(base[1:])
        count = int(params["n"])
        policy = params.get("policy", "absorb")
        _, table = constructions.cyclic_group_table(order)
        ms = constructions.fan_extension(table, [f"h{i + 1}" for i in range(count)], policy)
        recipe = {"kind": "fan", "base": base, "n": count, "policy": policy}
    elif kind == "partition_cyclic":
        modulus = int(params["modulus"])
        blocks = [block.split(",") for block in params["blocks"].split("|")]
        core = params["core"].split(",")
        _, ambient = constructions.cyclic_group_table(modulus, name="o")
        ms = constructions.partition_cyclic(ambient, blocks, core)
        recipe = {
            "kind": "partition_cyclic",
            "modulus": modulus,
            "blocks": params["blocks"],
            "core": params["core"],
        }
    else:
        raise MultiSpaceError(f"unknown construction kind {kind!r}")

    data = io.space_to_dict(ms, recipe)
    io.save_path(args.out, data)
    reparsed, _ = io.space_from_dict(io.load_path(args.out))
    report = {
        "written": args.out,
        "kind": kind,
        "elements": len(reparsed.universe),
        "components": len(reparsed.components),
        "operations": len(reparsed.ops),
        "completed": reparsed.is_completed(),
        "round_trip": io.render(io.space_to_dict(reparsed, recipe)) == io.render(data),
    }
    _emit(report, args.json)
    return EXIT_HOLDS


# -- analyze -----------------------------------------------------------------

def _subset_from_args(ms: MultiSpace, args) -> multigroup.SubsetView:
    if not args.sub:
        raise MultiSpaceError("this analysis needs --sub with a comma list of element names")
    names = args.sub.split(",")
    op_names = tuple(args.sub_ops.split(",")) if args.sub_ops else None
    return multigroup.SubsetView.of_names(ms, names, op_names)


def cmd_analyze(args) -> int:
    sub = args.subcommand
    if sub in ("cosets", "series", "ideal-chain", "decompose", "automorphisms"):
        ms, _ = io.space_from_dict(_load_kind(args.path, "multispace"))
        if sub == "cosets":
            view = _subset_from_args(ms, args)
            cosets = multigroup.coset_partition(view)
            report = {
                "analysis": "cosets",
                "subset": _names(ms, view.elements),
                "cosets": [_names(ms, c) for c in cosets],
                "count": len(cosets),
            }
            _emit(report, args.json)
            return EXIT_HOLDS
        if sub == "series":
            orientation = args.orientation.split(",") if args.orientation else [t.name for t in ms.ops]
            result = multigroup.maximal_normal_series(ms, orientation)
            report = _series_report("series", ms, orientation, result)
            _emit(report, args.json)
            return EXIT_HOLDS if result.invariant else EXIT_FAILS
        if sub == "ideal-chain":
            orientation = (
                args.orientation.split(",") if args.orientation else [c.name for c in ms.components]
            )
            result = multiring.multiideal_chain(ms, orientation)
            report = _series_report("ideal-chain", ms, orientation, result)
            _emit(report, args.json)
            return EXIT_HOLDS if result.invariant else EXIT_FAILS
        if sub == "decompose":
            result = multiring.decompose_artin(ms)
            report = {
                "analysis": "decompose",
                "valid": result.all_valid,
                "components": [
                    {
                        "component": c.component,
                        "idempotents": _names(ms, c.family),
                        "pieces": [_names(ms, p) for p in c.pieces],
                        "intersections_trivial": c.intersections_trivial,
                        "reconstruction_exact": c.reconstruction_exact,
                        "unique_sums": c.unique_sums,
                        "pieces_are_ideals": c.pieces_are_ideals,
                        "two_sided_symmetric": c.two_sided_symmetric,
                    }
                    for c in result.components
                ],
            }
            _emit(report, args.json)
            return EXIT_HOLDS if result.all_valid else EXIT_FAILS
        maps = automorphisms(ms, permute_ops=not args.no_permute_ops)
        union = ms.element_union()
        report = {
            "analysis": "automorphisms",
            "count": len(maps),
            "elements": _names(ms, union),
            "maps": [[ms.universe.name(union[i]) for i in sigma] for sigma in maps],
        }
        _emit(report, args.json)
        return EXIT_HOLDS

    if sub == "dim":
        mvs = io.vector_space_from_dict(_load_kind(args.path, "multivector"))
        result = multivector.dim_formula(mvs)
        report = {
            "analysis": "dim",
            "formula_value": result.formula_value,
            "greedy_value": result.greedy_value,
            "agree": result.agree,
            "intersections": [
                {"components": list(combo), "dim": d} for combo, d in result.intersection_dims
            ],
        }
        _emit(report, args.json)
        return EXIT_HOLDS

    if sub in ("fixed-point", "sequence"):
        tables = io.metric_components_from_dict(_load_kind(args.path, "multimetric"))
        space = MultiMetricSpace(tables)
        if sub == "fixed-point":
            if not args.map:
                raise MultiSpaceError("fixed-point needs --map with a mapping file")
            mapping = io.mapping_from_dict(_load_kind(args.map, "mapping"))
            contraction = multimetric.is_contraction(space, mapping)
            result = multimetric.fixed_points(space, mapping)
            report = {
                "analysis": "fixed-point",
                "contraction": contraction.verdict,
                "alpha": str(contraction.alpha) if contraction.alpha is not None else None,
                "fixed_points": list(result.points),
                "count": result.count,
                "bound_ok": result.bound_ok,
                "orbits_ok": result.orbits_ok,
            }
            _emit(report, args.json)
            ok = result.bound_ok is not False and result.orbits_ok is not False
            return EXIT_HOLDS if ok else EXIT_FAILS
        spec = SequenceSpec(
            tuple(args.prefix.split(",")) if args.prefix else (),
            args.tail_kind,
            tuple(args.tail.split(",")),
        )
        result = multimetric.analyze_sequence(space, spec)
        report = {
            "analysis": "sequence",
            "convergent": result.convergent,
            "limit": result.limit,
            "cauchy": result.cauchy,
            "tail_component": result.tail_component,
        }
        _emit(report, args.json)
        return EXIT_HOLDS

    raise MultiSpaceError(f"unknown analysis {sub!r}")


def _series_report(name: str, ms: MultiSpace, orientation, result) -> dict:
    return {
        "analysis": name,
        "orientation": list(orientation),
        "chain_count": result.chain_count,
        "lengths": list(result.lengths),
        "length_invariant": result.invariant,
        "length": result.length,
        "chains": [
            {
                "levels": [_names(ms, level) for level in chain.levels],
                "step_ops": list(chain.step_ops),
            }
            for chain in result.chains[:50]
        ],
    }


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="multispace", description="verify, construct and analyze finite multi-spaces"
    )
    parser.add_argument("--json", action="store_true", help="emit machine-readable reports")
    parser.add_argument("--seed", type=int, default=0, help="seed for randomized constructions")
    shared = argparse.ArgumentParser(add_help=False)
    shared.add_argument("--json", action="store_true", default=argparse.SUPPRESS)
    shared.add_argument("--seed", type=int, default=argparse.SUPPRESS)
    commands = parser.add_subparsers(dest="command", required=True)

    check = commands.add_parser("check", help="run a structure verifier on a file", parents=[shared])
    check.add_argument("path")
    check.add_argument(
        "--level",
        default="auto",
        choices=["auto", "multispace", "multigroup", "multiring", "multivector", "multimetric"],
    )

    construct = commands.add_parser("construct", help="build a structure file", parents=[shared])
    construct.add_argument(
        "kind", choices=["latin", "fan", "cyclic_union", "partition_cyclic"]
    )
    construct.add_argument("params", nargs="*", help="key=value parameters")
    construct.add_argument("--out", required=True)

    analyze = commands.add_parser("analyze", help="run an analysis on a file", parents=[shared])
    analyze.add_argument(
        "subcommand",
        choices=[
            "cosets",
            "series",
            "ideal-chain",
            "decompose",
            "dim",
            "automorphisms",
            "fixed-point",
            "sequence",
        ],
    )
    analyze.add_argument("path")
    analyze.add_argument("--sub", help="comma list of element names")
    analyze.add_argument("--sub-ops", help="comma list of operation names for --sub")
    analyze.add_argument("--orientation", help="comma list ordering the operations")
    analyze.add_argument("--map", help="mapping file for fixed-point")
    analyze.add_argument("--prefix", help="comma list of sequence prefix points")
    analyze.add_argument("--tail-kind", default="constant", choices=["constant", "periodic"])
    analyze.add_argument("--tail", help="comma list of tail points")
    analyze.add_argument(
        "--no-permute-ops",
        action="store_true",
        help="require automorphisms to preserve each operation name",
    )
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handler = {"check": cmd_check, "construct": cmd_construct, "analyze": cmd_analyze}[args.command]
    try:
        return handler(args)
    except ContractError as exc:
        print(f"prerequisite failed: {exc}", file=sys.stderr)
        return EXIT_FAILS
    except (MultiSpaceError, OSError, ValueError, KeyError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
