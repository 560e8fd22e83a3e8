"""Command-line interface.

Exit codes: 0 success (certified where applicable), 2 invalid input,
3 uncertified result, 4 enumeration guard exceeded.  The environment
variable ``CATZERO_LOG`` (off, info, trace) controls iteration logging.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from dataclasses import dataclass

from .complex import all_cubes, max_cube_dimension
from .errors import CatzeroError, TooLarge
from .geodesic import (
    DEFAULT_TOL,
    brute_force_geodesic,
    count_valid_sequences,
    geodesic,
    normal_cube_path,
)
from .halfspace import pip_to_halfspace, reroot
from .interval import embed_interval, interval_endpoints
from .jsonio import (
    dump_file,
    dumps,
    halfspace_to_json,
    load_file,
    path_to_json,
    pip_from_json,
    pip_to_json,
    point_from_json,
)
from .pip import (
    Pip,
    chain_decomposition,
    downset,
    enumerate_consistent_ideals,
    maximal_elements,
)
from .recsys import pip_to_reconfigurable, state_complex


@dataclass
class RunConfig:
    tolerance: float = DEFAULT_TOL
    max_outer: int | None = None
    seed: int = 0
    json_path: str | None = None
    quiet: bool = False

    def __post_init__(self) -> None:
        if not 0.0 < self.tolerance < 1e-2:
            raise ValueError("tolerance must lie in (0, 1e-2)")


def _load_pip(path: str) -> Pip:
    return pip_from_json(load_file(path))


def _load_point(path: str):
    return point_from_json(load_file(path))


def _emit(payload: dict, config: RunConfig, summary_lines: list[str]) -> None:
    if config.json_path:
        dump_file(payload, config.json_path)
    elif config.quiet:
        sys.stdout.write(dumps(payload))
    if not config.quiet:
        for line in summary_lines:
            print(line)


def _maximal_antichains_in_lattice_order(pip: Pip) -> list[list[str]]:
    out = []
    for ideal in enumerate_consistent_ideals(pip):
        maxes = maximal_elements(ideal).members
        if maxes and downset(pip, maxes).members == ideal.members:
            from .pip import is_maximal_antichain

            if is_maximal_antichain(pip, maxes):
                out.append((len(ideal.members), tuple(sorted(ideal.members)), sorted(maxes)))
    out.sort()
    return [antichain for _, _, antichain in out]


def cmd_validate(args: argparse.Namespace, config: RunConfig) -> int:
    pip = _load_pip(args.pip)
    ideals = enumerate_consistent_ideals(pip)
    cubes = all_cubes(pip)
    antichains = _maximal_antichains_in_lattice_order(pip)
    payload = {
        "valid": True,
        "elements": len(pip.elements),
        "consistent_ideals": len(ideals),
        "cubes": len(cubes),
        "max_cube_dimension": max_cube_dimension(pip),
        "maximal_antichains": antichains,
    }
    _emit(
        payload,
        config,
        [
            f"valid PIP with {payload['elements']} elements",
            f"consistent ideals (vertices): {payload['consistent_ideals']}",
            f"cubes: {payload['cubes']}, max dimension {payload['max_cube_dimension']}",
            "maximal antichains: " + ", ".join("{" + ",".join(a) + "}" for a in antichains),
        ],
    )
    return 0


def cmd_geodesic(args: argparse.Namespace, config: RunConfig) -> int:
    pip = _load_pip(args.pip)
    x = _load_point(args.src)
    y = _load_point(args.dst)
    path = geodesic(pip, x, y, tol=config.tolerance, max_outer=config.max_outer)
    payload = path_to_json(path)
    _emit(
        payload,
        config,
        [
            f"length: {path.length:.12g}",
            f"certified: {path.certified} ({path.status})",
            f"zero-tension residual: {path.zero_tension_residual:.3g}",
            f"iterations: {path.iterations}",
        ],
    )
    return 0 if path.certified else 3


def cmd_distance(args: argparse.Namespace, config: RunConfig) -> int:
    pip = _load_pip(args.pip)
    x = _load_point(args.src)
    y = _load_point(args.dst)
    path = geodesic(pip, x, y, tol=config.tolerance, max_outer=config.max_outer)
    _emit({"length": path.length}, config, [f"{path.length:.12g}"])
    return 0 if path.certified else 3


def cmd_oracle(args: argparse.Namespace, config: RunConfig) -> int:
    pip = _load_pip(args.pip)
    x = _load_point(args.src)
    y = _load_point(args.dst)
    main = geodesic(pip, x, y, tol=config.tolerance, max_outer=config.max_outer)
    reference = brute_force_geodesic(
        pip, x, y, tol=config.tolerance, guard=args.guard
    )
    sequences = (
        count_valid_sequences(main.frame.q, main.frame.x_local, main.frame.y_local)
        if main.frame is not None
        else 1
    )
    deviation = abs(main.length - reference.length)
    payload = {
        "main_length": main.length,
        "oracle_length": reference.length,
        "deviation": deviation,
        "sequences_enumerated": sequences,
    }
    _emit(
        payload,
        config,
        [
            f"main:   {main.length:.12g}",
            f"oracle: {reference.length:.12g}",
            f"deviation: {deviation:.3g} over {sequences} sequences",
        ],
    )
    return 0


def cmd_embed_interval(args: argparse.Namespace, config: RunConfig) -> int:
    pip = _load_pip(args.pip)
    x = _load_point(args.src)
    y = _load_point(args.dst)
    frame = interval_endpoints(pip, x, y)
    mapping = embed_interval(frame.q)
    chains = chain_decomposition(frame.q)
    payload = {
        "dimension": len(chains),
        "chains": chains,
        "vertices": [
            {"ideal": sorted(members), "point": list(coords)}
            for members, coords in sorted(
                mapping.items(), key=lambda kv: (len(kv[0]), sorted(kv[0]))
            )
        ],
    }
    _emit(
        payload,
        config,
        [f"interval embeds in Z^{payload['dimension']} with {len(mapping)} vertices"],
    )
    return 0


def cmd_normal_path(args: argparse.Namespace, config: RunConfig) -> int:
    pip = _load_pip(args.pip)
    if pip.has_inconsistency():
        raise CatzeroError("normal cube paths require a poset without inconsistent pairs")
    ideals = normal_cube_path(pip)
    payload = {"ideals": [sorted(i.members) for i in ideals]}
    _emit(payload, config, [" -> ".join("{" + ",".join(sorted(i.members)) + "}" for i in ideals)])
    return 0


def cmd_state_complex(args: argparse.Namespace, config: RunConfig) -> int:
    pip = _load_pip(args.pip)
    system = pip_to_reconfigurable(pip)
    complex_ = state_complex(system)
    payload = {
        "graph": {
            "vertices": list(system.vertices),
            "edges": sorted(list(e) for e in system.edges),
        },
        "moves": [
            {
                "name": m.name,
                "support": sorted(m.support),
                "trace": sorted(m.trace),
                "context": {v: l for v, l in sorted(m.context)},
            }
            for m in system.moves
        ],
        "states": len(complex_.states),
        "cubes_by_dimension": {
            str(d): c for d, c in sorted(complex_.count_by_dimension().items())
        },
    }
    _emit(
        payload,
        config,
        [
            f"states: {payload['states']}",
            "cubes by dimension: "
            + ", ".join(f"{d}: {c}" for d, c in payload["cubes_by_dimension"].items()),
        ],
    )
    return 0


def cmd_halfspace(args: argparse.Namespace, config: RunConfig) -> int:
    pip = _load_pip(args.pip)
    payload = halfspace_to_json(pip_to_halfspace(pip))
    _emit(payload, config, [f"{len(payload['hyperplanes'])} hyperplanes, {len(payload['relations'])} relations"])
    return 0


def cmd_reroot(args: argparse.Namespace, config: RunConfig) -> int:
    pip = _load_pip(args.pip)
    vertex = load_file(args.vertex)
    if not isinstance(vertex, list):
        raise CatzeroError("vertex file must contain a JSON array of element names")
    rerooted = reroot(pip, frozenset(vertex))
    payload = {
        "pip": pip_to_json(rerooted.pip),
        "flipped": sorted(rerooted.transport.flipped),
    }
    _emit(payload, config, [f"rerooted at {{{','.join(sorted(vertex))}}}"])
    return 0


_COMMANDS = {
    "validate": (cmd_validate, ("pip",)),
    "geodesic": (cmd_geodesic, ("pip", "src", "dst")),
    "distance": (cmd_distance, ("pip", "src", "dst")),
    "oracle": (cmd_oracle, ("pip", "src", "dst", "guard")),
    "embed-interval": (cmd_embed_interval, ("pip", "src", "dst")),
    "normal-path": (cmd_normal_path, ("pip",)),
    "state-complex": (cmd_state_complex, ("pip",)),
    "halfspace": (cmd_halfspace, ("pip",)),
    "reroot": (cmd_reroot, ("pip", "vertex")),
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="catzero",
        description="Geodesics in CAT(0) cubical complexes given as posets with inconsistent pairs",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, wants) in _COMMANDS.items():
        p = sub.add_parser(name)
        if "pip" in wants:
            p.add_argument("--pip", required=True, help="PIP JSON file")
        if "src" in wants:
            p.add_argument("--from", dest="src", required=True, help="start point JSON file")
            p.add_argument("--to", dest="dst", required=True, help="end point JSON file")
        if "vertex" in wants:
            p.add_argument("--vertex", required=True, help="JSON array of elements")
        if "guard" in wants:
            p.add_argument("--guard", type=int, default=100_000)
        p.add_argument("--tol", type=float, default=DEFAULT_TOL)
        p.add_argument("--max-iter", type=int, default=None)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--json", dest="json_path", default=None, help="write JSON payload here")
        p.add_argument("--quiet", action="store_true")
    return parser


def _configure_logging() -> None:
    level = os.environ.get("CATZERO_LOG", "off").lower()
    if level == "info":
        logging.basicConfig(level=logging.INFO, format="%(name)s: %(message)s")
    elif level == "trace":
        logging.basicConfig(level=logging.DEBUG, format="%(name)s: %(message)s")
    else:
        logging.disable(logging.CRITICAL)


def main(argv: list[str] | None = None) -> int:
    _configure_logging()
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = RunConfig(
            tolerance=args.tol,
            max_outer=args.max_iter,
            seed=args.seed,
            json_path=args.json_path,
            quiet=args.quiet,
        )
        handler, _ = _COMMANDS[args.command]
        return handler(args, config)
    except TooLarge as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4
    except (CatzeroError, ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
