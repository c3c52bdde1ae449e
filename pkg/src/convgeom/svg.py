"""SVG drawing of a planar representation."""

from __future__ import annotations

import xml.etree.ElementTree as ET

from .bodies import Polygon, SampledBoundary
from .planar import Representation

SVG_NS = "http://www.w3.org/2000/svg"
SCALE = 150.0
PALETTE = ("#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f")


def _xy(p) -> tuple[float, float]:
    # flip y so the picture is in the usual orientation
    return SCALE * float(p[0]), -SCALE * float(p[1])


def _points_attr(points) -> str:
    return " ".join("{:.4f},{:.4f}".format(*_xy(p)) for p in points)


def render_svg(rep: Representation) -> str:
    """One ``<g class="element">`` per element holding P1, P2 and K(x).

    P1 is filled, P2 outlined and K(x) drawn as a thick stroke. The
    direction rays form a separate frame group. Output depends only on the
    representation.
    """
    eps = float(rep.frame.epsilon)
    reach = SCALE * (1 + eps) * 1.15
    size = 2 * reach
    root = ET.Element(
        "svg",
        {
            "xmlns": SVG_NS,
            "version": "1.1",
            "width": f"{size:.0f}",
            "height": f"{size:.0f}",
            "viewBox": f"{-reach:.4f} {-reach:.4f} {size:.4f} {size:.4f}",
        },
    )
    frame = ET.SubElement(root, "g", {"class": "frame", "stroke": "#999999", "stroke-width": "0.5"})
    for i, v in enumerate(rep.frame.directions):
        x, y = _xy((float(v[0]) * (1 + eps) * 1.08, float(v[1]) * (1 + eps) * 1.08))
        ET.SubElement(frame, "line", {"x1": "0", "y1": "0", "x2": f"{x:.4f}", "y2": f"{y:.4f}"})
        t = ET.SubElement(frame, "text", {"x": f"{x:.4f}", "y": f"{y:.4f}", "font-size": "9", "stroke": "none"})
        t.text = f"v{i + 1}"

    labels = rep.orderings.ground.elements
    for pair, body in zip(rep.pairs, rep.bodies.bodies):
        color = PALETTE[pair.element % len(PALETTE)]
        g = ET.SubElement(root, "g", {"class": "element", "id": f"element-{pair.element}"})
        ET.SubElement(g, "polygon", {"class": "P1", "points": _points_attr(pair.f1), "fill": color,
                                     "fill-opacity": "0.25", "stroke": "none"})
        ET.SubElement(g, "polygon", {"class": "P2", "points": _points_attr(pair.f2), "fill": "none",
                                     "stroke": color, "stroke-width": "0.6", "stroke-dasharray": "2,2"})
        if isinstance(body, SampledBoundary):
            pts = body.points
        elif isinstance(body, Polygon):
            pts = body.vertices
        else:  # pragma: no cover - representations only hold the two kinds
            raise TypeError(f"cannot draw {type(body).__name__}")
        ET.SubElement(g, "polygon", {"class": "K", "points": _points_attr(pts), "fill": "none",
                                     "stroke": color, "stroke-width": "1.4"})
        lx, ly = _xy(pair.f2[0])
        t = ET.SubElement(g, "text", {"x": f"{lx + 3:.4f}", "y": f"{ly:.4f}", "font-size": "10", "fill": color})
        t.text = labels[pair.element]
    ET.indent(root)
    return ET.tostring(root, encoding="unicode") + "\n"
