"""Command-line front end: surface loading, divisor parsing, JSON/SVG output.

All numeric output is exact: rationals are serialized as "p/q" strings
(plain integers when q = 1), never as decimals.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from typing import Optional, Sequence

from . import basis as basis_mod
from . import body as body_mod
from . import decompose as decompose_mod
from . import zariski as zariski_mod
from .catalog import CATALOG, catalog_model
from .errors import DomainError, InputError, OkounkovError
from .lattice import DivClass, SurfaceModel, intersect

CATALOG_DIR_ENV = "OKOUNKOV_CATALOG_DIR"


# ---------------------------------------------------------------- formatting


def fmt_rat(x: int | Fraction) -> str:
    f = Fraction(x)
    if f.denominator == 1:
        return str(f.numerator)
    return f"{f.numerator}/{f.denominator}"


def parse_rat(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"not a rational number: {text!r}") from exc


def format_divisor(s: SurfaceModel, d: DivClass) -> str:
    parts: list[str] = []
    for label, c in zip(s.labels, d.coords):
        if c == 0:
            continue
        mag = abs(c)
        coef = "" if mag == 1 else fmt_rat(mag)
        term = f"{coef}{label}"
        if not parts:
            parts.append(term if c > 0 else f"-{term}")
        else:
            parts.append(f"+ {term}" if c > 0 else f"- {term}")
    return " ".join(parts) if parts else "0"


def divisor_json(s: SurfaceModel, d: DivClass) -> dict:
    return {
        "expr": format_divisor(s, d),
        "coords": [fmt_rat(c) for c in d.coords],
    }


_TERM_RE = re.compile(r"([+-]?)(\d+(?:/\d+)?)?([A-Za-z]\w*)")


def parse_divisor(s: SurfaceModel, text: str) -> DivClass:
    """Parse "7H - 2E1 - E2" or a raw vector "[7,-2,-1]" against the labels."""
    text = text.strip()
    if not text:
        raise InputError("empty divisor expression")
    if text.startswith("["):
        if not text.endswith("]"):
            raise InputError("unterminated divisor vector")
        entries = [e for e in text[1:-1].split(",") if e.strip()]
        if len(entries) != s.rank:
            raise InputError(
                f"divisor vector has {len(entries)} entries, surface rank is {s.rank}"
            )
        return DivClass.of([parse_rat(e) for e in entries])
    compact = text.replace(" ", "")
    if compact == "0":
        return DivClass((0,) * s.rank)
    coeffs = {label: Fraction(0) for label in s.labels}
    pos = 0
    for m in _TERM_RE.finditer(compact):
        if m.start() != pos:
            raise InputError(f"cannot parse divisor near {compact[pos:]!r}")
        sign, coef, label = m.groups()
        if label not in coeffs:
            raise InputError(f"unknown label {label!r} (surface has {list(s.labels)})")
        value = Fraction(coef) if coef else Fraction(1)
        if sign == "-":
            value = -value
        coeffs[label] += value
        pos = m.end()
    if pos != len(compact):
        raise InputError(f"cannot parse divisor near {compact[pos:]!r}")
    return DivClass.of([coeffs[label] for label in s.labels])


# ---------------------------------------------------------------- surfaces


def surface_to_json(s: SurfaceModel) -> dict:
    return {
        "rank": s.rank,
        "labels": list(s.labels),
        "intersection_matrix": [list(row) for row in s.form.rows],
        "eff_generators": [list(g.nums) for g in s.eff_generators],
        "flag_curve": list(s.flag_curve.nums),
        "negative_curves": [list(n.nums) for n in s.negative_curves],
    }


def surface_from_json(doc: dict) -> SurfaceModel:
    if not isinstance(doc, dict):
        raise InputError("surface file must contain a JSON object")

    def need(key, kind, desc):
        if key not in doc:
            raise InputError(f"surface file missing field {key!r}")
        value = doc[key]
        if not isinstance(value, kind):
            raise InputError(f"surface field {key!r} must be {desc}")
        return value

    rank = need("rank", int, "an integer")
    labels = need("labels", list, "a list of strings")
    if len(labels) != rank or not all(isinstance(l, str) for l in labels):
        raise InputError(f"surface field 'labels' must be {rank} strings")
    matrix = need("intersection_matrix", list, "a matrix of integers")
    for i, row in enumerate(matrix):
        if not isinstance(row, list) or len(row) != rank or not all(
            isinstance(x, int) for x in row
        ):
            raise InputError(f"intersection_matrix row {i} must be {rank} integers")
    gens = need("eff_generators", list, "a list of integer vectors")
    for i, g in enumerate(gens):
        if not isinstance(g, list) or len(g) != rank or not all(
            isinstance(x, int) for x in g
        ):
            raise InputError(f"eff_generators entry {i} must be {rank} integers")
    flag = need("flag_curve", list, "an integer vector")
    if len(flag) != rank or not all(isinstance(x, int) for x in flag):
        raise InputError(f"surface field 'flag_curve' must be {rank} integers")
    negatives = doc.get("negative_curves")
    if negatives is not None:
        for i, n in enumerate(negatives):
            if not isinstance(n, list) or len(n) != rank or not all(
                isinstance(x, int) for x in n
            ):
                raise InputError(f"negative_curves entry {i} must be {rank} integers")
    return SurfaceModel.create(labels, matrix, gens, flag, negatives)


def load_surface(spec: str) -> SurfaceModel:
    """Resolve a surface argument: catalog name, file path, or a file in
    $OKOUNKOV_CATALOG_DIR."""
    if spec in CATALOG:
        return catalog_model(spec)
    candidates = [spec]
    env_dir = os.environ.get(CATALOG_DIR_ENV)
    if env_dir:
        candidates.append(os.path.join(env_dir, spec))
        candidates.append(os.path.join(env_dir, spec + ".json"))
    for path in candidates:
        if os.path.isfile(path):
            try:
                with open(path, "r", encoding="utf-8") as fh:
                    doc = json.load(fh)
            except json.JSONDecodeError as exc:
                raise InputError(f"{path}: invalid JSON at line {exc.lineno}") from exc
            return surface_from_json(doc)
    raise InputError(
        f"unknown surface {spec!r}: not a catalog name "
        f"({', '.join(sorted(CATALOG))}) and no such file"
    )


# ---------------------------------------------------------------- rendering


def polygon_json(p: body_mod.BodyPolygon) -> list[list[str]]:
    return [[fmt_rat(x), fmt_rat(y)] for x, y in p.vertices]


_SVG_PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b")


def _svg_coord(x: Fraction) -> str:
    scaled = round(x * 1000)
    return f"{scaled // 1000}.{abs(scaled) % 1000:03d}"


def render_svg(
    s: SurfaceModel,
    d: DivClass,
    polygon: body_mod.BodyPolygon,
    components: Optional[list[tuple[Fraction, basis_mod.BasisElement]]] = None,
) -> str:
    width, height, margin = 640, 480, 60
    xs = [x for x, _ in polygon.vertices] + [Fraction(1)]
    ys = [y for _, y in polygon.vertices] + [Fraction(1)]
    xmax, ymax = max(xs), max(ys)
    sx = Fraction(width - 2 * margin) / xmax
    sy = Fraction(height - 2 * margin) / ymax
    s_common = min(sx, sy)

    def pt(x: Fraction, y: Fraction) -> str:
        return f"{_svg_coord(margin + x * s_common)},{_svg_coord(height - margin - y * s_common)}"

    lines = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
        f'<line x1="{margin}" y1="{height - margin}" x2="{width - margin}" '
        f'y2="{height - margin}" stroke="black"/>',
        f'<line x1="{margin}" y1="{height - margin}" x2="{margin}" y2="{margin}" '
        f'stroke="black"/>',
        f'<text x="{margin}" y="30" font-family="monospace" font-size="14">'
        f"body of {format_divisor(s, d)}</text>",
    ]
    points = " ".join(pt(x, y) for x, y in polygon.vertices)
    if polygon.is_point():
        lines.append(
            f'<circle cx="{pt(*polygon.vertices[0]).split(",")[0]}" '
            f'cy="{pt(*polygon.vertices[0]).split(",")[1]}" r="3" fill="black"/>'
        )
    elif polygon.is_segment():
        lines.append(
            f'<polyline points="{points}" fill="none" stroke="black" stroke-width="2"/>'
        )
    else:
        lines.append(
            f'<polygon points="{points}" fill="#dce9f5" stroke="black" stroke-width="2"/>'
        )
    if components:
        for k, (weight, element) in enumerate(components):
            spec = body_mod.SimplexSpec(element.height, element.length)
            piece = body_mod.scale(body_mod.simplex_body(spec), weight)
            color = _SVG_PALETTE[k % len(_SVG_PALETTE)]
            cpts = " ".join(pt(x, y) for x, y in piece.vertices)
            shape = "polygon" if len(piece.vertices) > 2 else "polyline"
            lines.append(
                f'<{shape} points="{cpts}" fill="none" stroke="{color}" '
                f'stroke-width="1.5" stroke-dasharray="6,3"/>'
            )
            lines.append(
                f'<text x="{width - margin - 180}" y="{margin + 18 * k}" '
                f'font-family="monospace" font-size="12" fill="{color}">'
                f"{fmt_rat(weight)} x body({format_divisor(s, element.divisor)})</text>"
            )
    for x, y in polygon.vertices:
        cx, cy = pt(x, y).split(",")
        lines.append(f'<circle cx="{cx}" cy="{cy}" r="3" fill="black"/>')
        lines.append(
            f'<text x="{_svg_coord(Fraction(cx) + 6)}" y="{_svg_coord(Fraction(cy) - 6)}" '
            f'font-family="monospace" font-size="12">({fmt_rat(x)}, {fmt_rat(y)})</text>'
        )
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------- commands


def _element_json(s: SurfaceModel, element: basis_mod.BasisElement) -> dict:
    return {
        **divisor_json(s, element.divisor),
        "height": fmt_rat(element.height),
        "length": fmt_rat(element.length),
        "kind": "boundary_ray" if element.is_boundary_ray() else "chamber",
    }


def _cmd_zariski(args) -> dict:
    s = load_surface(args.surface)
    d = parse_divisor(s, args.divisor)
    pair = zariski_mod.zariski_decompose(s, d)
    return {
        "input": divisor_json(s, d),
        "positive": divisor_json(s, pair.positive),
        "negative": [
            {
                "curve": divisor_json(s, s.negative_curves[i]),
                "coefficient": fmt_rat(c),
            }
            for i, c in pair.negative_coeffs
        ],
    }


def _cmd_chambers(args) -> dict:
    s = load_surface(args.surface)
    supports = zariski_mod.enumerate_chamber_supports(s)
    out = []
    for supp in supports:
        element = basis_mod.basis_element_for_support(s, supp)
        out.append(
            {
                "support": [
                    format_divisor(s, s.negative_curves[i]) for i in supp.indices
                ],
                "element": _element_json(s, element) if element else None,
            }
        )
    return {"count": len(supports), "chambers": out}


def _cmd_basis(args) -> dict:
    s = load_surface(args.surface)
    mb = basis_mod.minkowski_basis(s)
    return {
        "count": len(mb.elements),
        "elements": [_element_json(s, e) for e in mb.elements],
    }


def _decompose_payload(s: SurfaceModel, d: DivClass, check: bool) -> dict:
    dec = decompose_mod.decompose(s, d)
    payload = {
        "input": divisor_json(s, d),
        "terms": [
            {"weight": fmt_rat(w), "element": _element_json(s, e)}
            for w, e in dec.terms
        ],
    }
    if check:
        summed = body_mod.body_from_decomposition(dec)
        direct = body_mod.body_direct(s, d)
        payload["check"] = {
            "bodies_equal": summed == direct,
            "body_from_terms": polygon_json(summed),
            "body_direct": polygon_json(direct),
        }
    return payload


def _decompose_worker(surface_doc: str, divisor: str, check: bool) -> dict:
    s = surface_from_json(json.loads(surface_doc))
    return _decompose_payload(s, parse_divisor(s, divisor), check)


def _cmd_decompose(args) -> dict | list:
    s = load_surface(args.surface)
    if len(args.divisor) == 1:
        return _decompose_payload(s, parse_divisor(s, args.divisor[0]), args.check)
    if args.jobs > 1:
        doc = json.dumps(surface_to_json(s))
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            return list(
                pool.map(
                    _decompose_worker,
                    [doc] * len(args.divisor),
                    args.divisor,
                    [args.check] * len(args.divisor),
                )
            )
    return [
        _decompose_payload(s, parse_divisor(s, text), args.check)
        for text in args.divisor
    ]


def _cmd_body(args) -> dict:
    s = load_surface(args.surface)
    d = parse_divisor(s, args.divisor)
    polygon = body_mod.body_direct(s, d)
    payload = {
        "input": divisor_json(s, d),
        "vertices": polygon_json(polygon),
        "area": fmt_rat(body_mod.area(polygon)),
        "width": fmt_rat(max(x for x, _ in polygon.vertices)),
    }
    components = None
    if args.decomposed or args.svg:
        pair = zariski_mod.zariski_decompose(s, d)
        if not pair.positive.is_zero():
            dec = decompose_mod.decompose(s, pair.positive)
            components = list(dec.terms)
            if args.decomposed:
                payload["terms"] = [
                    {"weight": fmt_rat(w), "element": _element_json(s, e)}
                    for w, e in components
                ]
    if args.svg:
        svg = render_svg(s, d, polygon, components if args.decomposed else None)
        with open(args.svg, "w", encoding="utf-8") as fh:
            fh.write(svg)
        payload["svg"] = args.svg
    return payload


_WEIGHTED_TERM_RE = re.compile(r"^\s*(\d+(?:/\d+)?)\s*\*\s*(.+)$")


def _cmd_verify(args) -> dict:
    s = load_surface(args.surface)
    d = parse_divisor(s, args.divisor)
    terms: list[tuple[Fraction, DivClass]] = []
    for text in args.term:
        m = _WEIGHTED_TERM_RE.match(text)
        if m:
            weight = parse_rat(m.group(1))
            cls = parse_divisor(s, m.group(2).strip().strip("()"))
        else:
            weight, cls = Fraction(1), parse_divisor(s, text)
        if weight <= 0:
            raise InputError("term weights must be positive")
        terms.append((weight, cls))
    total = DivClass((0,) * s.rank)
    for w, cls in terms:
        total = total + w * cls
    sums_match = total == d
    expected = body_mod.body_direct(s, d)
    summed = body_mod.simplex_body(body_mod.SimplexSpec(Fraction(0), Fraction(0)))
    for w, cls in terms:
        piece = body_mod.scale(body_mod.body_direct(s, cls), w)
        summed = body_mod.minkowski_sum(summed, piece)
    is_decomposition = sums_match and summed == expected
    verdict = (
        "a Minkowski decomposition"
        if is_decomposition
        else "not a Minkowski decomposition"
    )
    return {
        "input": divisor_json(s, d),
        "terms": [
            {"weight": fmt_rat(w), **divisor_json(s, cls)} for w, cls in terms
        ],
        "sum_matches_divisor": sums_match,
        "is_minkowski_decomposition": is_decomposition,
        "verdict": verdict,
        "body_of_divisor": polygon_json(expected),
        "minkowski_sum_of_terms": polygon_json(summed),
    }


def _cmd_catalog(args) -> dict:
    if args.name not in CATALOG:
        raise InputError(
            f"unknown catalog surface {args.name!r}; "
            f"available: {', '.join(sorted(CATALOG))}"
        )
    return surface_to_json(catalog_model(args.name))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="okounkov",
        description=(
            "Exact Zariski decompositions, Minkowski bases, and Okounkov-body "
            "polygons on surfaces with rational polyhedral effective cone."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("zariski", help="Zariski decomposition of a divisor")
    p.add_argument("surface")
    p.add_argument("divisor")
    p.set_defaults(func=_cmd_zariski)

    p = sub.add_parser("chambers", help="Zariski chamber supports and elements")
    p.add_argument("surface")
    p.set_defaults(func=_cmd_chambers)

    p = sub.add_parser("basis", help="the full Minkowski basis")
    p.add_argument("surface")
    p.set_defaults(func=_cmd_basis)

    p = sub.add_parser("decompose", help="Minkowski decomposition of nef divisors")
    p.add_argument("surface")
    p.add_argument("divisor", nargs="+")
    p.add_argument("--check", action="store_true", help="compare against the direct sweep")
    p.add_argument("--jobs", type=int, default=1, help="parallel workers in batch mode")
    p.set_defaults(func=_cmd_decompose)

    p = sub.add_parser("body", help="Okounkov-body polygon of a divisor")
    p.add_argument("surface")
    p.add_argument("divisor")
    p.add_argument("--svg", metavar="FILE", help="write an SVG rendering")
    p.add_argument(
        "--decomposed",
        action="store_true",
        help="include component simplices (and overlay them in the SVG)",
    )
    p.set_defaults(func=_cmd_body)

    p = sub.add_parser(
        "verify", help="check whether weighted terms give a Minkowski decomposition"
    )
    p.add_argument("surface")
    p.add_argument("divisor")
    p.add_argument("term", nargs="+", help='divisor expressions, optionally "w*(expr)"')
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("catalog", help="emit a built-in surface as JSON")
    p.add_argument("name")
    p.set_defaults(func=_cmd_catalog)

    return parser


def run(argv: Sequence[str]) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        result = args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OkounkovError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    json.dump(result, sys.stdout, indent=2)
    print()
    return 0


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
