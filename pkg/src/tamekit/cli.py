"""Command-line interface.

Maps are given inline as '(f, g)' or '(f, g, h)', as a JSON document
'{"vars": ..., "coords": ..., "grading": ...}', or as '@path' naming a
file that holds either form.  A document's embedded grading is used
when no --grading flag is given.  Every command accepts --json.

Exit codes:
    0   success (including "true" answers and inconclusive certificates)
    1   not an automorphism (including a false verify)
    2   not graded for the given weights
    3   not liftable
    4   certified wild
    5   automorphism status undecided
    64  usage, parse, or input-shape problems
"""

import argparse
import json
import sys

from .errors import (
    CertifiedWildMap,
    LiftFailure,
    NotAnAutomorphism,
    NotGraded,
    NotLiftable,
    ParseError,
    TamekitError,
    WildAdmittingUndecided,
    WrongShape,
)
from .grading import Grading, ResidueGrading
from .jung import (
    decompose_plane,
    decompose_plane_graded,
    invert_plane,
    is_plane_automorphism,
)
from .maps import classify_map, compose_chain, verify_inverse_pair
from .named import example_names, get_example
from .newton import newton_area, newton_polygon, polygon_area
from .parsing import MapDocument, parse_map, parse_polynomial, parse_weights
from .space import (
    WildnessCertificate,
    classify_grading,
    decompose_graded,
    invert_graded,
    lift_plane_map,
    restrict_to_plane,
    wild_witness,
    wildness_certificate,
)


def _load_map(text):
    """A map argument plus its JSON document, when it came as one."""
    if text.startswith("@"):
        with open(text[1:], encoding="utf-8") as handle:
            text = handle.read()
    stripped = text.strip()
    if stripped.startswith("{"):
        doc = MapDocument.from_json(stripped)
        return doc.to_map(), doc
    return parse_map(stripped), None


def _weights_for(args, doc):
    """--grading wins; the document grading is the fallback."""
    if getattr(args, "grading", None):
        return parse_weights(args.grading)
    if doc is not None and doc.weights is not None:
        return doc.weights
    return None


def _plane_grading(weights):
    """A two-variable grading from CLI weights.

    Two weights give an exact plane grading; three weights (a, b, -c)
    give the residue grading modulo c that three-variable gradedness
    restricts to on the slice z = 1.
    """
    if len(weights) == 2:
        return Grading(weights)
    if len(weights) == 3:
        if weights[2] >= 0:
            raise WrongShape(
                f"plane residue weights look like (a, b, -c), got {weights}"
            )
        return ResidueGrading((weights[0], weights[1]), -weights[2])
    raise ParseError(f"expected 2 or 3 weights, got {len(weights)}")


def _emit(args, lines, payload):
    if args.json:
        print(json.dumps(payload, indent=2))
        return
    if isinstance(lines, str):
        lines = [lines]
    for line in lines:
        print(line)


def _bool(flag):
    return "true" if flag else "false"


def _certificate_payload(cert):
    payload = {
        "certified": cert.certified,
        "weights": list(cert.weights),
        "q_hat": cert.q_hat,
        "threshold": cert.threshold,
    }
    if cert.certified:
        payload["violating_exponents"] = list(cert.violating_exponents)
        payload["violating_degree"] = cert.violating_degree
    return payload


def _certificate_lines(cert):
    if not cert.certified:
        return [
            "inconclusive: every low-degree monomial test passed "
            f"(threshold {cert.threshold})"
        ]
    i, j = cert.violating_exponents
    return [
        "certified wild",
        f"violating monomial: u^{i}*v^{j} at total degree "
        f"{cert.violating_degree}, below the tame threshold {cert.threshold}",
    ]


# ---------------------------------------------------------------------------
# commands

def _cmd_verify(args):
    m, doc = _load_map(args.map)
    if args.inverse is not None:
        other, _ = _load_map(args.inverse)
        ok = verify_inverse_pair(m, other)
        _emit(args, f"inverse pair: {_bool(ok)}", {"inverse_pair": ok})
        return 0 if ok else 1
    if m.arity == 2:
        ok = is_plane_automorphism(m)
        _emit(args, f"automorphism: {_bool(ok)}", {"automorphism": ok})
        return 0 if ok else 1
    weights = _weights_for(args, doc) or (0, 0, 0)
    try:
        result = decompose_graded(m, weights)
    except NotAnAutomorphism as exc:
        _emit(
            args,
            f"automorphism: false ({exc})",
            {"automorphism": False, "reason": str(exc)},
        )
        return 1
    if isinstance(result, WildnessCertificate):
        _emit(
            args,
            "automorphism: true (certified wild)",
            {"automorphism": True, "wild": True},
        )
    else:
        _emit(
            args,
            f"automorphism: true (tame, {len(result.factors)} factors)",
            {"automorphism": True, "wild": False, "factors": len(result.factors)},
        )
    return 0


def _cmd_compose(args):
    maps = [_load_map(text)[0] for text in args.maps]
    result = compose_chain(maps)
    _emit(args, result.render(), {"map": result.render()})
    return 0


def _cmd_invert(args):
    m, doc = _load_map(args.map)
    if m.arity == 2:
        inverse = invert_plane(m)
    else:
        inverse = invert_graded(m, _weights_for(args, doc) or (0, 0, 0))
    _emit(args, inverse.render(), {"map": inverse.render()})
    return 0


def _cmd_decompose(args):
    m, doc = _load_map(args.map)
    weights = _weights_for(args, doc)
    steps = [] if args.trace_svg else None
    trace = None if steps is None else (lambda cur, area: steps.append((cur, area)))
    if m.arity == 2:
        if weights is None:
            chain = decompose_plane(m, trace=trace)
        else:
            chain = decompose_plane_graded(m, _plane_grading(weights), trace=trace)
    else:
        if args.trace_svg:
            raise WrongShape("--trace-svg needs a two-variable map")
        result = decompose_graded(m, weights or (0, 0, 0))
        if isinstance(result, WildnessCertificate):
            _emit(
                args,
                _certificate_lines(result),
                {"certificate": _certificate_payload(result)},
            )
            return 4
        chain = result
    if args.trace_svg:
        _write_trace_svg(args.trace_svg, steps)
    rendered = [f.render() for f in chain.factors]
    if not rendered:
        lines = ["identity (no factors)"]
    elif len(chain.notes) == len(chain.factors) and any(chain.notes):
        width = max(len(r) for r in rendered)
        lines = [
            f"{r:<{width}}  # {note}" if note else r
            for r, note in zip(rendered, chain.notes)
        ]
    else:
        lines = rendered
    payload = {
        "factors": rendered,
        "classes": [classify_map(f).name.lower() for f in chain.factors],
        "notes": list(chain.notes),
    }
    _emit(args, lines, payload)
    return 0


def _cmd_classify(args):
    cls = classify_grading((args.a, args.b, args.c))
    lines = [
        f"weights: {cls.weights}",
        f"normalized: {cls.normalized.weights}",
        f"verdict: {cls.verdict.value}",
        f"reason: {cls.reason.value}",
    ]
    payload = {
        "weights": list(cls.weights),
        "normalized": list(cls.normalized.weights),
        "verdict": cls.verdict.value,
        "reason": cls.reason.value,
    }
    if cls.zero_shape is not None:
        lines.append(f"zero shape: {cls.zero_shape.value}")
        payload["zero_shape"] = cls.zero_shape.value
    if cls.q_hat is not None:
        lines.append(f"q-hat: {cls.q_hat}  l-hat: {cls.l_hat}")
        payload["q_hat"] = cls.q_hat
        payload["l_hat"] = cls.l_hat
    if cls.witness_q is not None:
        lines.append(
            f"witness exponents: a = {cls.witness_q}*b + {cls.witness_p}*c"
        )
        payload["witness_q"] = cls.witness_q
        payload["witness_p"] = cls.witness_p
    _emit(args, lines, payload)
    return 0


def _cmd_witness(args):
    wit = wild_witness((args.a, args.b, args.c))
    checked = None
    if args.check:
        checked = wit.verify()
    lines = [f"map:     {wit.map.render()}", f"inverse: {wit.inverse.render()}"]
    payload = {"map": wit.map.render(), "inverse": wit.inverse.render()}
    if wit.certificate is not None:
        lines.extend(_certificate_lines(wit.certificate))
        payload["certificate"] = _certificate_payload(wit.certificate)
    else:
        lines.append("certified by construction (inverse pair checked literally)")
        payload["certificate"] = None
    if checked is not None:
        lines.append(f"verified: {_bool(checked)}")
        payload["verified"] = checked
    _emit(args, lines, payload)
    return 0 if checked in (None, True) else 1


def _cmd_lift(args):
    m, doc = _load_map(args.map)
    weights = _weights_for(args, doc)
    if weights is None:
        raise ParseError("lift needs --grading a,b,-c")
    report = lift_plane_map(m, weights)
    if report.liftable:
        _emit(
            args,
            report.lifted.render(),
            {"liftable": True, "map": report.lifted.render()},
        )
        return 0
    ob = report.obstruction
    _emit(
        args,
        f"not liftable: {ob.kind.value} at exponents {ob.exponents} "
        f"in coordinate {ob.coordinate}",
        {
            "liftable": False,
            "obstruction": {
                "kind": ob.kind.value,
                "coordinate": ob.coordinate,
                "exponents": list(ob.exponents),
            },
        },
    )
    return 3


def _cmd_restrict(args):
    m, _ = _load_map(args.map)
    plane = restrict_to_plane(m)
    _emit(args, plane.render(), {"map": plane.render()})
    return 0


def _cmd_certify_wild(args):
    m, doc = _load_map(args.map)
    weights = _weights_for(args, doc)
    if weights is None:
        raise ParseError("certify-wild needs --grading a,b,c")
    cert = wildness_certificate(m, weights)
    _emit(args, _certificate_lines(cert), {"certificate": _certificate_payload(cert)})
    return 4 if cert.certified else 0


def _cmd_polygon(args):
    poly = parse_polynomial(args.polynomial, arity=2)
    hull = newton_polygon(poly)
    area = polygon_area(hull)
    lines = [
        "vertices: " + " ".join(f"({i},{j})" for i, j in hull),
        f"area: {area}",
    ]
    payload = {"vertices": [list(p) for p in hull], "area": str(area)}
    if args.svg:
        _write_polygon_svg(args.svg, poly)
        lines.append(f"wrote {args.svg}")
    _emit(args, lines, payload)
    return 0


def _cmd_example(args):
    if args.name is None:
        _emit(args, list(example_names()), {"examples": list(example_names())})
        return 0
    ex = get_example(args.name)
    lines = [
        f"map:     {ex.map.render()}",
        f"inverse: {ex.inverse.render()}",
        f"notes:   {ex.notes}",
    ]
    payload = {
        "name": ex.name,
        "map": ex.map.render(),
        "inverse": ex.inverse.render(),
        "notes": ex.notes,
    }
    _emit(args, lines, payload)
    return 0


# ---------------------------------------------------------------------------
# SVG output
#
# Hand-rolled SVG 1.1: a panel per polygon showing the lattice grid, the
# convex hull, and the support points.  Output depends only on the input
# polynomials, so files are reproducible byte for byte.

_SVG_GRID = "#d8d8d8"
_SVG_HULL = "#e8912d"
_SVG_DOT = "#1f6feb"


def _panel(f, label, left, top):
    support = sorted(f.terms)
    hull = newton_polygon(f)
    extent = max([1] + [max(e) for e in support] + [max(p) for p in hull])
    cell = max(6, min(24, 360 // extent))
    pad = 14
    side = extent * cell + 2 * pad

    def px(i):
        return left + pad + i * cell

    def py(j):
        return top + pad + (extent - j) * cell

    parts = [
        f'<rect x="{left}" y="{top}" width="{side}" height="{side}" '
        'fill="#ffffff" stroke="#999999"/>'
    ]
    for k in range(extent + 1):
        parts.append(
            f'<line x1="{px(0)}" y1="{py(k)}" x2="{px(extent)}" y2="{py(k)}" '
            f'stroke="{_SVG_GRID}" stroke-width="1"/>'
        )
        parts.append(
            f'<line x1="{px(k)}" y1="{py(0)}" x2="{px(k)}" y2="{py(extent)}" '
            f'stroke="{_SVG_GRID}" stroke-width="1"/>'
        )
    points = " ".join(f"{px(i)},{py(j)}" for i, j in hull)
    if len(hull) >= 3:
        parts.append(
            f'<polygon points="{points}" fill="{_SVG_HULL}" fill-opacity="0.25" '
            f'stroke="{_SVG_HULL}" stroke-width="2"/>'
        )
    elif len(hull) == 2:
        parts.append(
            f'<polyline points="{points}" fill="none" '
            f'stroke="{_SVG_HULL}" stroke-width="2"/>'
        )
    for i, j in support:
        parts.append(f'<circle cx="{px(i)}" cy="{py(j)}" r="3" fill="{_SVG_DOT}"/>')
    parts.append(
        f'<text x="{left}" y="{top + side + 14}" font-family="monospace" '
        f'font-size="12" fill="#333333">{label}</text>'
    )
    return parts, side, side + 20


def _write_svg(path, panel_inputs):
    gap = 12
    fragments = []
    left = gap
    height = 0
    for f, label in panel_inputs:
        parts, width, used_height = _panel(f, label, left, gap)
        fragments.extend(parts)
        left += width + gap
        height = max(height, used_height)
    total_w, total_h = left, height + 2 * gap
    body = "\n".join(fragments)
    document = (
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{total_w}" height="{total_h}" '
        f'viewBox="0 0 {total_w} {total_h}">\n'
        f'<rect width="{total_w}" height="{total_h}" fill="#ffffff"/>\n'
        f"{body}\n</svg>\n"
    )
    with open(path, "w", encoding="utf-8") as handle:
        handle.write(document)


def _write_polygon_svg(path, poly):
    _write_svg(path, [(poly, f"area {newton_area(poly)}")])


def _write_trace_svg(path, steps):
    panel_inputs = [
        (cur.coords[0], f"step {k}: area {area}")
        for k, (cur, area) in enumerate(steps)
    ]
    _write_svg(path, panel_inputs)


# ---------------------------------------------------------------------------
# parser and dispatch

def _add_map_argument(sub, name="map"):
    sub.add_argument(name, help="inline '(f, g[, h])', JSON '{...}', or '@file'")


def _add_common(sub, grading=False):
    if grading:
        sub.add_argument(
            "--grading", metavar="W", help="comma-separated weights, e.g. 7,2,-3"
        )
    sub.add_argument("--json", action="store_true", help="machine-readable output")


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="tamekit",
        description="Exact tools for graded polynomial automorphisms.",
        epilog="Exit codes:" + __doc__.split("Exit codes:")[1],
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    commands = parser.add_subparsers(dest="command", required=True)

    sub = commands.add_parser("verify", help="inverse-pair or automorphism check")
    _add_map_argument(sub)
    sub.add_argument("inverse", nargs="?", help="candidate inverse map")
    _add_common(sub, grading=True)
    sub.set_defaults(handler=_cmd_verify)

    sub = commands.add_parser("compose", help="compose maps, applied right to left")
    sub.add_argument("maps", nargs="+", help="maps, leftmost applied last")
    _add_common(sub)
    sub.set_defaults(handler=_cmd_compose)

    sub = commands.add_parser("invert", help="exact inverse via factorization")
    _add_map_argument(sub)
    _add_common(sub, grading=True)
    sub.set_defaults(handler=_cmd_invert)

    sub = commands.add_parser(
        "decompose", help="factor into elementary and linear maps"
    )
    _add_map_argument(sub)
    sub.add_argument(
        "--trace-svg",
        metavar="PATH",
        help="write the plane descent trace as SVG (two-variable maps)",
    )
    _add_common(sub, grading=True)
    sub.set_defaults(handler=_cmd_decompose)

    sub = commands.add_parser("classify", help="does a grading admit wild maps?")
    sub.add_argument("a", type=int)
    sub.add_argument("b", type=int)
    sub.add_argument("c", type=int)
    _add_common(sub)
    sub.set_defaults(handler=_cmd_classify)

    sub = commands.add_parser("witness", help="build a graded-wild automorphism")
    sub.add_argument("a", type=int)
    sub.add_argument("b", type=int)
    sub.add_argument("c", type=int)
    sub.add_argument(
        "--check", action="store_true", help="run the full verification"
    )
    _add_common(sub)
    sub.set_defaults(handler=_cmd_witness)

    sub = commands.add_parser("lift", help="lift a plane map to three variables")
    _add_map_argument(sub)
    _add_common(sub, grading=True)
    sub.set_defaults(handler=_cmd_lift)

    sub = commands.add_parser("restrict", help="restrict to the slice z = 1")
    _add_map_argument(sub)
    _add_common(sub)
    sub.set_defaults(handler=_cmd_restrict)

    sub = commands.add_parser(
        "certify-wild", help="low-degree monomial test for wildness"
    )
    _add_map_argument(sub)
    _add_common(sub, grading=True)
    sub.set_defaults(handler=_cmd_certify_wild)

    sub = commands.add_parser("polygon", help="Newton polygon of a plane polynomial")
    sub.add_argument("polynomial", help="inline polynomial in two variables")
    sub.add_argument("--svg", metavar="PATH", help="write the polygon as SVG")
    _add_common(sub)
    sub.set_defaults(handler=_cmd_polygon)

    sub = commands.add_parser("example", help="named example maps")
    sub.add_argument("name", nargs="?", help="example name; omit to list")
    _add_common(sub)
    sub.set_defaults(handler=_cmd_example)

    return parser


_EXIT_CODES = (
    (NotAnAutomorphism, 1),
    (NotGraded, 2),
    ((NotLiftable, LiftFailure), 3),
    (CertifiedWildMap, 4),
    (WildAdmittingUndecided, 5),
)


def main(argv=None):
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if not exc.code else 64
    try:
        return args.handler(args)
    except TamekitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        for classes, code in _EXIT_CODES:
            if isinstance(exc, classes):
                return code
        return 64
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 64


if __name__ == "__main__":
    sys.exit(main())
