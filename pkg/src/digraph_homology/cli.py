"""Command-line interface.

Commands: `homology` (path or cubical, absolute or relative, optionally
reduced), `build` (cone / suspend / boxprod pipelines), `hurewicz`
(classes of a grid map), `compare` (the cubical-to-path comparison
matrix), and `verify` (certificates, long-exact-sequence exactness, and
the built-in verification suite).

Exit codes: 0 success, 1 failed verification, 2 parse error, 3 bound
exceeded, 4 invalid subdigraph, 5 invalid grid map.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

from .chains import verify_exactness
from .cubes import (
    BoundExceededError,
    build_cubical_pair,
    comparison_L,
    cubical_homology,
)
from .digraphs import (
    Digraph,
    DigraphError,
    NotASubdigraphError,
    box_product,
    cone,
    digraph_from_json,
    digraph_to_json,
    suspension,
)
from .grids import (
    GridError,
    certificate_from_json,
    glmy_hurewicz,
    grid_map_from_json,
    grid_map_violation,
    hurewicz_chain,
    hurewicz_class,
    verify_homotopy_certificate,
)
from .intlinalg import AbelianGroup
from .paths import build_omega_pair, path_homology

EXIT_VERIFY_FAILED = 1
EXIT_PARSE = 2
EXIT_BOUND = 3
EXIT_SUBDIGRAPH = 4
EXIT_GRIDMAP = 5


@dataclass
class CommandConfig:
    json_output: bool = False
    maxdim: int = 3
    seed: int = 0


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


def _load_json(path: str):
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise CliError(f"cannot read {path}: {exc}", EXIT_PARSE)


def _load_digraph(path: str) -> Digraph:
    try:
        return digraph_from_json(_load_json(path))
    except DigraphError as exc:
        raise CliError(f"bad digraph in {path}: {exc}", EXIT_PARSE)


def _load_subdigraph(data: dict, base_dir: Path) -> Digraph:
    from .digraphs import build_digraph

    try:
        if isinstance(data, str):
            return _load_digraph(str(base_dir / data))
        return build_digraph(
            [str(v) for v in data["vertices"]],
            [(str(a), str(b)) for a, b in data["arrows"]],
        )
    except (KeyError, TypeError, DigraphError) as exc:
        raise CliError(f"bad subdigraph: {exc}", EXIT_PARSE)


def _group_report(name: str, group: AbelianGroup, cfg: CommandConfig) -> str:
    if cfg.json_output:
        return json.dumps(group.to_json())
    return f"{name} = {group}"


def cmd_homology(args, cfg: CommandConfig) -> int:
    g = _load_digraph(args.input)
    rel: Optional[Digraph] = None
    if args.relative:
        rel = _load_subdigraph(_load_json(args.relative), Path(args.relative).parent)
        from .digraphs import is_subdigraph

        if not is_subdigraph(rel, g):
            raise CliError("the relative file is not a subdigraph of the input", EXIT_SUBDIGRAPH)
    if args.dim + 1 > cfg.maxdim:
        raise CliError(
            f"degree {args.dim} needs chains up to {args.dim + 1}; raise --maxdim",
            EXIT_BOUND,
        )
    try:
        if args.theory == "path":
            group = path_homology(g, args.dim, relative_to=rel, reduced=args.reduced)
        else:
            group = cubical_homology(g, args.dim, relative_to=rel, dim_bound=cfg.maxdim)
    except BoundExceededError as exc:
        raise CliError(str(exc), EXIT_BOUND)
    except NotASubdigraphError as exc:
        raise CliError(str(exc), EXIT_SUBDIGRAPH)
    print(_group_report(f"H_{args.dim}", group, cfg))
    return 0


def cmd_build(args, cfg: CommandConfig) -> int:
    try:
        if args.op == "cone":
            g = _load_digraph(args.inputs[0])
            out = g
            for _ in range(args.times):
                out = cone(out, _fresh_label(out, "+a"))
        elif args.op == "suspend":
            g = _load_digraph(args.inputs[0])
            out = g
            for _ in range(args.times):
                out = suspension(out, _fresh_label(out, "+a"), _fresh_label(out, "+b"))
        elif args.op == "boxprod":
            if len(args.inputs) < 2:
                raise CliError("boxprod needs two inputs", EXIT_PARSE)
            from .digraphs import relabel_to_strings

            out = _load_digraph(args.inputs[0])
            for path in args.inputs[1:]:
                out = relabel_to_strings(box_product(out, _load_digraph(path)))
        else:  # pragma: no cover - argparse restricts choices
            raise CliError(f"unknown build op {args.op}", EXIT_PARSE)
    except DigraphError as exc:
        raise CliError(str(exc), EXIT_PARSE)
    payload = json.dumps(digraph_to_json(_stringly(out)), indent=2)
    if args.output:
        Path(args.output).write_text(payload + "\n")
    else:
        print(payload)
    return 0


def _stringly(g: Digraph) -> Digraph:
    from .digraphs import relabel_to_strings

    return relabel_to_strings(g)


def _fresh_label(g: Digraph, stem: str) -> str:
    label = stem
    k = 0
    while g.has_vertex(label):
        k += 1
        label = f"{stem}{k}"
    return label


def cmd_hurewicz(args, cfg: CommandConfig) -> int:
    data = _load_json(args.gridmap)
    try:
        target = None
        if isinstance(data.get("target"), str):
            target = _load_digraph(str(Path(args.gridmap).parent / data["target"]))
        f = grid_map_from_json(data, target)
    except (GridError, DigraphError, KeyError, TypeError) as exc:
        raise CliError(f"bad grid map: {exc}", EXIT_GRIDMAP)
    violation = grid_map_violation(f)
    if violation is not None:
        raise CliError(f"invalid grid map: {violation}", EXIT_GRIDMAP)
    if args.relative and f.mode != "triple":
        raise CliError("--relative requires a triple-mode grid map", EXIT_GRIDMAP)
    try:
        cubical = hurewicz_class(f, dim_bound=max(cfg.maxdim, f.dims + 1))
        glmy = glmy_hurewicz(f)
    except BoundExceededError as exc:
        raise CliError(str(exc), EXIT_BOUND)
    if cfg.json_output:
        out = {
            "cubical": {"group": cubical.group.to_json(), "coords": list(cubical.coords)},
            "path": {"group": glmy.group.to_json(), "coords": list(glmy.coords)},
        }
        if args.show_chain:
            out["chain"] = hurewicz_chain(f).to_json()
        print(json.dumps(out))
    else:
        if args.show_chain:
            print("chain:", json.dumps(hurewicz_chain(f).to_json()))
        print(f"cubical class: {list(cubical.coords)} in {cubical.group}")
        print(f"path class:    {list(glmy.coords)} in {glmy.group}")
    return 0


def cmd_compare(args, cfg: CommandConfig) -> int:
    g = _load_digraph(args.input)
    if args.dim + 1 > cfg.maxdim:
        raise CliError(f"degree {args.dim} exceeds --maxdim {cfg.maxdim}", EXIT_BOUND)
    try:
        lmap = comparison_L(g, args.dim, dim_bound=cfg.maxdim)
    except BoundExceededError as exc:
        raise CliError(str(exc), EXIT_BOUND)
    if cfg.json_output:
        print(
            json.dumps(
                {
                    "matrix": [list(r) for r in lmap.matrix.data],
                    "source": lmap.source.to_json(),
                    "target": lmap.target.to_json(),
                }
            )
        )
    else:
        print(f"cubical H_{args.dim} = {lmap.source}")
        print(f"path    H_{args.dim} = {lmap.target}")
        print("matrix (rows = path generators):")
        for row in lmap.matrix.data:
            print("  ", list(row))
    return 0


def cmd_verify(args, cfg: CommandConfig) -> int:
    if args.what == "certificate":
        if len(args.inputs) != 3:
            raise CliError("verify certificate needs F.json G.json CERT.json", EXIT_PARSE)
        f_data, g_data, cert_data = (
            _load_json(args.inputs[0]),
            _load_json(args.inputs[1]),
            _load_json(args.inputs[2]),
        )
        try:
            f = grid_map_from_json(f_data)
            g = grid_map_from_json(g_data)
            cert = certificate_from_json(cert_data, f.target)
        except (GridError, DigraphError, KeyError, TypeError) as exc:
            raise CliError(f"bad input: {exc}", EXIT_GRIDMAP)
        ok = verify_homotopy_certificate(f, g, cert)
        print("PASS" if ok else "FAIL")
        return 0 if ok else EXIT_VERIFY_FAILED

    if args.what == "exactness":
        if len(args.inputs) != 1:
            raise CliError("verify exactness needs one PAIR.json input", EXIT_PARSE)
        data = _load_json(args.inputs[0])
        base_dir = Path(args.inputs[0]).parent
        try:
            ambient = (
                _load_digraph(str(base_dir / data["ambient"]))
                if isinstance(data["ambient"], str)
                else digraph_from_json(data["ambient"])
            )
            sub = _load_subdigraph(data["sub"], base_dir)
        except (KeyError, DigraphError) as exc:
            raise CliError(f"bad pair file: {exc}", EXIT_PARSE)
        from .digraphs import is_subdigraph

        if not is_subdigraph(sub, ambient):
            raise CliError("'sub' is not a subdigraph of 'ambient'", EXIT_SUBDIGRAPH)
        maxdim = args.maxdim if args.maxdim is not None else cfg.maxdim
        if args.theory == "path":
            pair = build_omega_pair(ambient, sub, maxdim + 1)
            maps = pair.pair.les_maps(maxdim)
        else:
            pair = build_cubical_pair(ambient, sub, min(maxdim + 1, cfg.maxdim))
            maps = pair.pair.les_maps(min(maxdim, cfg.maxdim - 1))
        ok = verify_exactness(maps)
        print("PASS" if ok else "FAIL")
        return 0 if ok else EXIT_VERIFY_FAILED

    if args.what == "paper-suite":
        from .acceptance import run_all

        results = run_all(seed=cfg.seed)
        width = max(len(r.name) for r in results)
        failures = 0
        for r in results:
            mark = "✓" if r.passed else "✗"
            print(f"{mark} {r.name:<{width}}  [{r.seconds:6.2f}s]  {r.detail}")
            if not r.passed:
                failures += 1
        print(f"{len(results) - failures}/{len(results)} criteria passed")
        return 0 if failures == 0 else EXIT_VERIFY_FAILED

    raise CliError(f"unknown verification {args.what!r}", EXIT_PARSE)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="digraph-homology",
        description="Path and cubical homology of finite digraphs over the integers.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument(
        "--maxdim",
        type=int,
        default=3,
        help="degree bound for chain generation (default 3; higher values can be slow)",
    )
    common.add_argument("--seed", type=int, default=0, help="seed for randomized suites")

    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("homology", parents=[common], help="compute a homology group")
    p.add_argument("input", help="digraph JSON file")
    p.add_argument("--theory", choices=["path", "cubical"], default="path")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--relative", help="subdigraph JSON file for relative homology")
    p.add_argument("--reduced", action="store_true", help="augmented (reduced) homology")
    p.set_defaults(func=cmd_homology)

    p = sub.add_parser("build", parents=[common], help="construct digraphs")
    p.add_argument("op", choices=["cone", "suspend", "boxprod"])
    p.add_argument("inputs", nargs="+", help="digraph JSON file(s)")
    p.add_argument("--times", type=int, default=1, help="iterate the construction")
    p.add_argument("--output", "-o", help="output file (default: stdout)")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("hurewicz", parents=[common], help="homology classes of a grid map")
    p.add_argument("gridmap", help="grid-map JSON file")
    p.add_argument("--relative", action="store_true", help="require a triple-mode map")
    p.add_argument("--show-chain", action="store_true", help="print the cube decomposition")
    p.set_defaults(func=cmd_hurewicz)

    p = sub.add_parser("compare", parents=[common], help="cubical-to-path comparison matrix")
    p.add_argument("input", help="digraph JSON file")
    p.add_argument("--dim", type=int, required=True)
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("verify", parents=[common], help="verification commands")
    p.add_argument("what", choices=["certificate", "exactness", "paper-suite"])
    p.add_argument("inputs", nargs="*", help="input files (see README)")
    p.add_argument("--theory", choices=["path", "cubical"], default="path")
    p.set_defaults(func=cmd_verify)

    return parser


def main(argv: Optional[list] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    cfg = CommandConfig(json_output=args.json, maxdim=args.maxdim, seed=args.seed)
    try:
        return args.func(args, cfg)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
