"""Command-line entry point ``convgeom``.

Exit codes: 0 success or valid, 1 verified invalid, 2 bad input,
3 inconclusive at the requested tolerance.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Callable

from . import bodies as B
from . import ellipsoid as E
from . import planar as P
from .core import (
    ConvexGeometry,
    GroundSet,
    SetFamily,
    check_anti_exchange,
    check_axioms,
    closure_operator,
    dumps,
    geometry_from_json,
    geometry_from_orderings,
    geometry_to_json,
    orderings_from_json,
    orderings_to_json,
)
from .dimension import copoints, crosspolytope_geometry, generating_orderings, geometry_from_points, points_from_json, poset_width
from .errors import (
    ConvexGeometryError,
    DimensionCap,
    InfiniteContactSuspected,
    NoRegularDirection,
    NonConvexTrace,
    OracleViolation,
    SchemaError,
    ShapeContainmentFailed,
    ToleranceInconclusive,
)

EXIT_OK, EXIT_INVALID, EXIT_INPUT, EXIT_INCONCLUSIVE = 0, 1, 2, 3

SCHEMAS = """\
JSON formats
  orderings:   {"elements": ["a", ...], "orders": [[0, 1, ...], ...]}
               each order lists element indices from smallest to largest
  geometry:    {"elements": ["a", ...], "convex_sets": [[], [0], [0, 1], ...]}
  points:      {"dim": d, "points": [{"label": "p", "coords": ["1/2", 0, ...]}, ...]}
  bodies:      {"bodies": [{"label": "A", "kind": "circle", "center": [x, y], "r": r},
                           {"label": "B", "kind": "polygon", "vertices": [[x, y], ...]},
                           {"label": "C", "kind": "ellipse", "center": [x, y], "a": a, "b": b, "theta": t},
                           {"label": "D", "kind": "sampled", "points": [[x, y], ...]}],
               "subset": ["A", "B"]}            (subset only for convex-position)
  planar rep:  {"frame": {"mode", "m", "epsilon", "directions"}, "orderings_used",
                "elements": [{"label", "rho1", "rho2", "F1", "F2"}], "shape", "alpha", "bodies"}
  ellipsoid:   {"dim": d, "s": s, "elements": [{"label", "semiaxes"}], "orderings_used": [[...], ...]}
  verify-iso:  {"geometry": <geometry>, "representation": <planar rep or ellipsoid>}
Rationals may be written as integers, decimals or "p/q" strings.
Exit codes: 0 ok, 1 verified invalid, 2 input error, 3 inconclusive.
"""


@dataclass
class Outcome:
    data: dict | str
    code: int = EXIT_OK


def _read(path: str | None):
    text = sys.stdin.read() if path in (None, "-") else Path(path).read_text()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"input is not JSON: {exc}") from exc


def _geometry_or_orderings(data: dict):
    """Accept either an orderings or a geometry document."""
    if "orders" in data:
        orderings = orderings_from_json(data)
        return geometry_from_orderings(orderings), orderings
    geometry = geometry_from_json(data)
    return geometry, generating_orderings(geometry)


def _labels(ground: GroundSet, mask: int) -> list[str]:
    return list(ground.labels(mask))


def cmd_gen(args) -> Outcome:
    return Outcome(geometry_to_json(geometry_from_orderings(orderings_from_json(_read(args.input)))))


def cmd_check(args) -> Outcome:
    data = _read(args.input)
    try:
        ground = GroundSet(tuple(str(e) for e in data["elements"]))
        sets = [[int(i) for i in s] for s in data["convex_sets"]]
        masks = []
        for s in sets:
            if any(not 0 <= i < len(ground) for i in s):
                raise SchemaError(f"convex set {s} indexes outside the ground set")
            masks.append(sum(1 << i for i in set(s)))
        family = SetFamily(ground, tuple(masks))
    except (KeyError, TypeError, ValueError) as exc:
        raise SchemaError(f"bad geometry JSON: {exc}") from exc
    axioms = check_axioms(family)
    out = {"axioms": {"valid": axioms.valid, "failed": axioms.axiom, "witness": list(axioms.witness)}}
    if not axioms.valid:
        out["anti_exchange"] = None
        return Outcome(out, EXIT_INVALID)
    geometry = ConvexGeometry(family)
    ae = check_anti_exchange(closure_operator(geometry), ground)
    out["anti_exchange"] = {"valid": ae.valid, "failed": ae.property, "witness": list(ae.witness)}
    return Outcome(out, EXIT_OK if ae.valid else EXIT_INVALID)


def cmd_cdim(args) -> Outcome:
    geometry, _ = _geometry_or_orderings(_read(args.input))
    poset = copoints(geometry)
    width = poset_width(poset.sets)
    if args.value_only:
        return Outcome(f"{width.width}\n")
    g = geometry.ground
    return Outcome({
        "cdim": width.width,
        "copoints": [{"set": _labels(g, c.set), "attached": g.elements[c.attached]} for c in poset.copoints],
        "antichain": [_labels(g, a) for a in width.antichain],
        "generating_orderings": orderings_to_json(generating_orderings(geometry))["orders"],
    })


def cmd_crosspolytope(args) -> Outcome:
    if args.n > 3 and not args.allow_slow and args.n <= 4:
        raise DimensionCap("n = 4 takes a while; pass --allow-slow")
    return Outcome(geometry_to_json(crosspolytope_geometry(args.n)))


def cmd_points(args) -> Outcome:
    return Outcome(geometry_to_json(geometry_from_points(points_from_json(_read(args.input)))))


def cmd_represent_planar(args) -> Outcome:
    _, orderings = _geometry_or_orderings(_read(args.input))
    rep = P.represent_planar(orderings, m=args.m, epsilon=args.epsilon, shape=args.shape, exact=args.exact)
    if args.svg_out:
        from .svg import render_svg

        Path(args.svg_out).write_text(render_svg(rep))
    return Outcome(P.representation_to_json(rep))


def cmd_represent_ellipsoid(args) -> Outcome:
    _, orderings = _geometry_or_orderings(_read(args.input))
    rep = E.represent_ellipsoids(orderings, args.s if args.s is not None else "3/2", args.dim)
    return Outcome(E.representation_to_json(rep))


def cmd_derive(args) -> Outcome:
    family = B.family_from_json(_read(args.input))
    geometry = B.geometry_from_bodies(family)
    pairs = []
    for i in range(family.n):
        for j in range(i + 1, family.n):
            dirs = B.common_supporting_directions(family.bodies[i], family.bodies[j])
            pairs.append({"pair": [family.labels[i], family.labels[j]], "count": len(dirs)})
    out = {"geometry": geometry_to_json(geometry), "crossings": pairs}
    if family.n >= 2:
        sweep = B.sweep_orderings(family)
        report = B.cdim_upper_bound_check(family)
        status = "OK" if report.holds else "VIOLATED"
        out.update({
            "k": report.k,
            "bound": max(report.bound, 1),
            "cdim": report.cdim,
            "sweep_orderings": sweep.orderings.m,
            "sweep_matches": geometry_from_orderings(sweep.orderings) == geometry,
            "verdict": f"k={report.k}, bound {max(report.bound, 1)}, cdim {report.cdim} <= {max(report.bound, 1)}: {status}",
        })
        bad = not report.holds or not out["sweep_matches"]
        return Outcome(out, EXIT_INVALID if bad else EXIT_OK)
    return Outcome(out)


def cmd_verify_iso(args) -> Outcome:
    data = _read(args.input)
    if args.representation:
        geometry_doc, rep_doc = data, _read(args.representation)
    else:
        try:
            geometry_doc, rep_doc = data["geometry"], data["representation"]
        except (KeyError, TypeError) as exc:
            raise SchemaError("expected keys 'geometry' and 'representation'") from exc
    geometry = geometry_from_json(geometry_doc)
    if isinstance(rep_doc, dict) and "frame" in rep_doc:
        try:
            rep = P.representation_from_json(rep_doc)
        except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
            raise SchemaError(f"bad planar representation JSON: {exc}") from exc
        if tuple(rep.orderings.ground.elements) != tuple(geometry.ground.elements):
            return Outcome({"kind": "planar", "isomorphic": False, "reason": "labels differ"}, EXIT_INVALID)
        report = P.verify_isomorphism_planar(geometry, rep)
        out = {"kind": "planar", "isomorphic": report.ok}
        if not report.ok:
            out["witness"] = _labels(geometry.ground, report.witness)
        return Outcome(out, EXIT_OK if report.ok else EXIT_INVALID)
    rep = E.representation_from_json(rep_doc)
    report = E.verify_isomorphism_ellipsoid(geometry, rep, samples=args.samples, seed=args.seed, tol=args.tolerance)
    out = {
        "kind": "ellipsoid",
        "isomorphic": report.ok,
        "reason": report.reason,
        "convex_checked": report.convex_checked,
        "nonconvex_checked": report.nonconvex_checked,
        "identity_error": report.identity_error,
        "worst_margin": None if report.worst_direction is None else report.worst_margin,
    }
    return Outcome(out, EXIT_OK if report.ok else EXIT_INVALID)


def cmd_convex_position(args) -> Outcome:
    data = _read(args.input)
    family = B.family_from_json(data)
    names = args.subset.split(",") if args.subset else data.get("subset", list(family.labels))
    try:
        subset = [family.labels.index(str(x)) for x in names]
    except ValueError as exc:
        raise SchemaError(f"unknown body label: {exc}") from exc
    verdict = B.convex_position(family, subset)
    return Outcome({"subset": [family.labels[i] for i in sorted(set(subset))], "convex_position": verdict},
                   EXIT_OK if verdict else EXIT_INVALID)


COMMANDS: dict[str, tuple[Callable, str]] = {
    "gen": (cmd_gen, "orderings JSON -> geometry JSON"),
    "check": (cmd_check, "axioms and anti-exchange report for a set family"),
    "cdim": (cmd_cdim, "copoints, convex dimension and a witness antichain"),
    "crosspolytope": (cmd_crosspolytope, "geometry of the origin and +/-e_i in dimension n"),
    "points": (cmd_points, "point configuration JSON -> geometry JSON"),
    "represent-planar": (cmd_represent_planar, "planar bodies representing a geometry"),
    "represent-ellipsoid": (cmd_represent_ellipsoid, "axis-aligned ellipsoids representing a geometry"),
    "derive": (cmd_derive, "bodies JSON -> geometry, crossing counts and the k*C(n,2) check"),
    "verify-iso": (cmd_verify_iso, "check a representation against a geometry"),
    "convex-position": (cmd_convex_position, "is a subfamily of bodies in convex position"),
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", "-i", help="input JSON file (default stdin)")
    common.add_argument("--output", "-o", help="output file (default stdout)")
    common.add_argument("--samples", type=int, default=E.DEFAULT_SAMPLES, help="sampled oracle directions")
    common.add_argument("--seed", type=int, default=42)
    common.add_argument("--tolerance", type=float, default=E.DEFAULT_TOL)

    parser = argparse.ArgumentParser(
        prog="convgeom",
        description="Finite convex geometries: analysis, representation and verification.",
        epilog=SCHEMAS,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    sub = parser.add_subparsers(dest="command", required=True)
    parsers = {}
    for name, (_, help_text) in COMMANDS.items():
        parsers[name] = sub.add_parser(name, parents=[common], help=help_text, description=help_text,
                                       epilog=SCHEMAS, formatter_class=argparse.RawDescriptionHelpFormatter)
    parsers["cdim"].add_argument("--value-only", action="store_true", help="print only the dimension")
    parsers["crosspolytope"].add_argument("-n", type=int, required=True)
    parsers["crosspolytope"].add_argument("--allow-slow", action="store_true", help="permit n = 4")
    rp = parsers["represent-planar"]
    rp.add_argument("--m", type=int, help="number of directions (default max(#orders, 3))")
    rp.add_argument("--epsilon", type=float)
    rp.add_argument("--shape", choices=P.SHAPES, default="inner")
    rp.add_argument("--exact", action=argparse.BooleanOptionalAction, default=True,
                    help="rational frame and exact predicates (default on)")
    rp.add_argument("--svg-out", help="also write an SVG drawing here")
    re_ = parsers["represent-ellipsoid"]
    re_.add_argument("--s", help="scale s > 1, e.g. 1.5 or 3/2 (default 3/2)")
    re_.add_argument("--dim", type=int, help="dimension (default max(#orders, n))")
    parsers["verify-iso"].add_argument("--representation", help="representation file; --input then holds the geometry")
    parsers["convex-position"].add_argument("--subset", help="comma-separated body labels")
    return parser


def _exit_code(exc: Exception) -> int:
    if isinstance(exc, OracleViolation):
        return EXIT_INVALID
    if isinstance(exc, (ToleranceInconclusive, InfiniteContactSuspected, NoRegularDirection,
                        ShapeContainmentFailed, NonConvexTrace)):
        return EXIT_INCONCLUSIVE
    return EXIT_INPUT


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handler = COMMANDS[args.command][0]
    try:
        outcome = handler(args)
    except (ConvexGeometryError, ValueError, OSError) as exc:
        code = _exit_code(exc)
        msg = f"convgeom {args.command}: {type(exc).__name__}: {exc}"
        if code == EXIT_INCONCLUSIVE:
            msg += "\nhint: refine the input, change --tolerance or use exact (rational) bodies"
        margin = getattr(exc, "margin", None)
        if margin is not None:
            msg += f"\nmargin {margin:.3e} at direction {getattr(exc, 'direction', None)}"
        print(msg, file=sys.stderr)
        return code
    text = outcome.data if isinstance(outcome.data, str) else dumps(outcome.data)
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)
    return outcome.code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
