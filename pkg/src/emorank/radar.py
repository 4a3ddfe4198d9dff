"""Radar-graph SVG of a sentence's aggregate emotion vector."""

from __future__ import annotations

import math
import xml.etree.ElementTree as ET
from typing import Sequence

from .ranking import SentenceResult

SVG_NS = "http://www.w3.org/2000/svg"
WIDTH = 560
HEIGHT = 600
CENTER = (WIDTH / 2, 330.0)
RADIUS = 180.0
RINGS = 4


def _xy(angle: float, radius: float) -> tuple[float, float]:
    return CENTER[0] + radius * math.cos(angle), CENTER[1] + radius * math.sin(angle)


def axis_angles(n: int) -> list[float]:
    """Axis angles in SVG coordinates: first axis at 12 o'clock, then clockwise."""
    return [-math.pi / 2 + 2 * math.pi * i / n for i in range(n)]


def vertex_points(values: Sequence[float]) -> list[tuple[float, float]]:
    """Polygon vertices; the largest component reaches the full radius."""
    peak = max(values)
    return [_xy(a, RADIUS * v / peak) for a, v in zip(axis_angles(len(values)), values)]


def _fmt(v: float) -> str:
    return f"{v:.9f}"


def render_radar(labels: Sequence[str], values: Sequence[float], title: str, terms: Sequence[str] = ()) -> str:
    n = len(labels)
    if n != len(values):
        raise ValueError("labels and values differ in length")
    svg = ET.Element(
        "svg", {"xmlns": SVG_NS, "version": "1.1", "width": str(WIDTH), "height": str(HEIGHT),
                "viewBox": f"0 0 {WIDTH} {HEIGHT}"}
    )
    ET.SubElement(svg, "title").text = title
    ET.SubElement(svg, "rect", {"width": str(WIDTH), "height": str(HEIGHT), "fill": "white"})
    ET.SubElement(
        svg, "text", {"x": str(WIDTH / 2), "y": "28", "text-anchor": "middle", "font-family": "sans-serif",
                      "font-size": "16", "font-weight": "bold", "class": "title"}
    ).text = title
    legend = ET.SubElement(svg, "g", {"class": "legend", "font-family": "sans-serif", "font-size": "12"})
    x = 20.0
    for term in terms:
        ET.SubElement(legend, "rect", {"x": _fmt(x), "y": "46", "width": "10", "height": "10", "fill": "#4a7ab5"})
        ET.SubElement(legend, "text", {"x": _fmt(x + 14), "y": "55"}).text = term
        x += 14 + 7.5 * len(term) + 16

    grid = ET.SubElement(svg, "g", {"class": "grid", "stroke": "#bbbbbb", "fill": "none"})
    angles = axis_angles(n)
    for ring in range(1, RINGS + 1):
        pts = " ".join(f"{_fmt(px)},{_fmt(py)}" for px, py in (_xy(a, RADIUS * ring / RINGS) for a in angles))
        ET.SubElement(grid, "polygon", {"points": pts, "class": "ring"})
    axes = ET.SubElement(svg, "g", {"class": "axes", "font-family": "sans-serif", "font-size": "13"})
    for label, angle in zip(labels, angles):
        ex, ey = _xy(angle, RADIUS)
        ET.SubElement(axes, "line", {"x1": _fmt(CENTER[0]), "y1": _fmt(CENTER[1]), "x2": _fmt(ex), "y2": _fmt(ey),
                                     "stroke": "#888888"})
        lx, ly = _xy(angle, RADIUS + 22)
        anchor = "middle" if abs(math.cos(angle)) < 0.3 else ("start" if math.cos(angle) > 0 else "end")
        ET.SubElement(axes, "text", {"x": _fmt(lx), "y": _fmt(ly + 4), "text-anchor": anchor}).text = label

    if any(v > 0 for v in values):
        pts = " ".join(f"{_fmt(px)},{_fmt(py)}" for px, py in vertex_points(values))
        ET.SubElement(svg, "polygon", {"points": pts, "class": "emotions", "fill": "#4a7ab5",
                                       "fill-opacity": "0.35", "stroke": "#1f4e8c", "stroke-width": "2"})
    else:
        ET.SubElement(
            svg, "text", {"x": _fmt(CENTER[0]), "y": str(HEIGHT - 12), "text-anchor": "middle",
                          "font-family": "sans-serif", "font-size": "13", "class": "notice"}
        ).text = "no emotional evidence for this sentence"
    return '<?xml version="1.0" encoding="UTF-8"?>\n' + ET.tostring(svg, encoding="unicode") + "\n"


def emit_radar(result: SentenceResult, aggregate: str = "avg") -> str:
    return render_radar(
        result.model.labels, result.vector(aggregate).values, result.tokens.source, result.tokens.tokens
    )
