"""Command-line interface: ``thurston <command> [options]``."""

from __future__ import annotations

import argparse
import json
import logging
import re
import sys
from pathlib import Path

import numpy as np

from . import checks, figures, geometries
from .core import Box, GeometryError, GeometryId, OrbitList, check_point, dv_nearest
from .mesh import export

_NUMBER_LIST = re.compile(r"^-[\d.]")


def parse_point(text: str) -> np.ndarray:
    """Comma-separated inhomogeneous triple; the leading homogeneous 1 is implied."""
    try:
        values = [float(v) for v in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a point: {text!r}") from None
    if len(values) != 3:
        raise argparse.ArgumentTypeError(f"a point needs three comma-separated numbers, got {text!r}")
    return np.array(values)


def parse_bounds(text: str) -> Box:
    try:
        return Box.parse(text)
    except (GeometryError, ValueError) as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _positive(text: str) -> float:
    value = float(text)
    if not value > 0:
        raise argparse.ArgumentTypeError("must be positive")
    return value


def _seed(text: str) -> int:
    value = int(text)
    if not 0 <= value < 2**64:
        raise argparse.ArgumentTypeError("seed must fit in an unsigned 64-bit integer")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="thurston", description="Translation curves, distances and "
                                     "surfaces in Nil, Sol, SL2R, S2xR and H2xR.")
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True)
    geoms = [g.value for g in GeometryId]

    def common(p, geometries_allowed=geoms):
        p.add_argument("--geometry", required=True, choices=geometries_allowed)
        p.add_argument("--seed", type=_seed, default=0)

    p = sub.add_parser("distance", help="translation distance of two points")
    common(p)
    p.add_argument("--from", dest="src", type=parse_point, required=True)
    p.add_argument("--to", dest="dst", type=parse_point, required=True)

    p = sub.add_parser("inverse", help="translation curve parameters from the origin to a point (JSON)")
    common(p)
    p.add_argument("--point", type=parse_point, required=True)

    def meshing(p):
        p.add_argument("--res", type=int, default=128)
        p.add_argument("--bounds", type=parse_bounds, default=None)
        p.add_argument("--format", choices=("obj", "ply"), default="obj")
        p.add_argument("--out", type=Path, required=True)

    p = sub.add_parser("apollonius", help="mesh the Apollonius surface of the origin and P2")
    common(p, [g.value for g in geometries.APOLLONIUS_GEOMETRIES])
    p.add_argument("--p2", type=parse_point, required=True)
    p.add_argument("--sigma", type=_positive, default=1.0)
    meshing(p)

    p = sub.add_parser("triangle", help="mesh the triangular surface of the origin, P2 and P3")
    common(p)
    p.add_argument("--p2", type=parse_point, required=True)
    p.add_argument("--p3", type=parse_point, required=True)
    meshing(p)

    p = sub.add_parser("dvcell", help="Dirichlet-Voronoi membership against a listed orbit")
    common(p)
    p.add_argument("--kernel", type=parse_point, required=True)
    p.add_argument("--orbit-file", type=Path, required=True, help="JSON list of [x, y, z] images")
    p.add_argument("--query", type=parse_point, required=True)

    p = sub.add_parser("check", help="run the property suites")
    p.add_argument("--suite", choices=("curves", "inverse", "apollonius", "triangles", "all"), default="all")
    p.add_argument("--seed", type=_seed, default=0)
    p.add_argument("--res", type=int, default=128)
    return parser


def _fix_negative_values(argv: list[str]) -> list[str]:
    """Join ``--p2 -1,1,1`` into ``--p2=-1,1,1`` so argparse does not read an option."""
    out: list[str] = []
    i = 0
    while i < len(argv):
        arg = argv[i]
        if arg.startswith("--") and "=" not in arg and i + 1 < len(argv) and _NUMBER_LIST.match(argv[i + 1]):
            out.append(f"{arg}={argv[i + 1]}")
            i += 2
            continue
        out.append(arg)
        i += 1
    return out


def _fmt(x: float) -> str:
    return f"{float(x):.12g}"


def cmd_distance(args) -> int:
    g = GeometryId.parse(args.geometry)
    p, q = check_point(g, args.src), check_point(g, args.dst)
    print(_fmt(geometries.distance(g, p, q)))
    return 0


def cmd_inverse(args) -> int:
    g = GeometryId.parse(args.geometry)
    params = geometries.inverse(g, check_point(g, args.point))
    out = {"geometry": g.value, **geometries.params_to_dict(params)}
    if g is GeometryId.SLR:
        out["class"] = out.pop("kind")
    print(json.dumps(out, indent=2))
    return 0


def _write_mesh(mesh, args) -> int:
    export(mesh, args.format, args.out)
    for w in mesh.warnings:
        print(f"warning: {w}", file=sys.stderr)
    print(f"wrote {args.out} ({len(mesh.vertices)} vertices, {len(mesh.faces)} faces)")
    print(f"max vertex residual {mesh.max_residual:.3e}")
    return 0


def cmd_apollonius(args) -> int:
    g = GeometryId.parse(args.geometry)
    check_point(g, args.p2)
    mesh = figures.apollonius_mesh(g, args.p2, args.sigma, res=args.res, bounds=args.bounds)
    return _write_mesh(mesh, args)


def cmd_triangle(args) -> int:
    g = GeometryId.parse(args.geometry)
    mesh = figures.triangle_mesh(g, check_point(g, args.p2), check_point(g, args.p3),
                                 res=args.res, bounds=args.bounds)
    return _write_mesh(mesh, args)


def load_orbit(path: Path, kernel) -> tuple[OrbitList, int]:
    """The orbit and the number of images listed in the file."""
    with open(path, encoding="utf-8") as fh:
        data = json.load(fh)
    if not isinstance(data, list) or not data:
        raise GeometryError(f"{path}: orbit file must be a nonempty JSON list of points")
    try:
        images = [np.asarray(p, dtype=float).reshape(3) for p in data]
    except (TypeError, ValueError):
        raise GeometryError(f"{path}: every orbit entry must be a list of three numbers") from None
    return OrbitList(kernel, tuple(images)), len(images)


def cmd_dvcell(args) -> int:
    g = GeometryId.parse(args.geometry)
    orbit, listed = load_orbit(args.orbit_file, check_point(g, args.kernel))
    inside, nearest = dv_nearest(args.query, orbit, g)
    # index into the file's list; null when the (unlisted) kernel itself is nearest
    nearest -= len(orbit.images) - listed
    print(json.dumps({"inside": inside, "nearest_image": nearest if nearest >= 0 else None}))
    return 0


def cmd_check(args) -> int:
    results = checks.run(args.suite, seed=args.seed, res=args.res)
    failed = [r for r in results if not r.passed]
    print(f"{len(results) - len(failed)}/{len(results)} checks passed")
    return 1 if failed else 0


COMMANDS = {
    "distance": cmd_distance,
    "inverse": cmd_inverse,
    "apollonius": cmd_apollonius,
    "triangle": cmd_triangle,
    "dvcell": cmd_dvcell,
    "check": cmd_check,
}


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    args = build_parser().parse_args(_fix_negative_values(argv))
    logging.basicConfig(level=logging.INFO if args.verbose else logging.ERROR, format="%(levelname)s %(message)s")
    np.seterr(all="ignore")
    try:
        return COMMANDS[args.command](args)
    except (GeometryError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
