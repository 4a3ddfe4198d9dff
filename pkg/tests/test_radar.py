import math
import xml.etree.ElementTree as ET

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import HEADLINES_FIXTURE
from emorank.freqsource import FixtureProvider
from emorank.radar import CENTER, emit_radar, render_radar
from emorank.ranking import process_sentence

NS = {"svg": "http://www.w3.org/2000/svg"}


def polygon(svg_text):
    root = ET.fromstring(svg_text.split("\n", 1)[1])
    found = root.findall("svg:polygon[@class='emotions']", NS)
    assert len(found) <= 1
    if not found:
        return root, None
    pts = [tuple(map(float, p.split(","))) for p in found[0].get("points").split()]
    return root, pts


def radii(points):
    return [math.hypot(x - CENTER[0], y - CENTER[1]) for x, y in points]


@pytest.mark.parametrize("n", [3, 6, 8])
def test_uniform_is_regular(n):
    labels = [f"e{i}" for i in range(n)]
    _, pts = polygon(render_radar(labels, [1 / n] * n, "uniform"))
    assert len(pts) == n
    r = radii(pts)
    assert max(r) - min(r) <= 1e-9 * max(r)
    sides = [math.dist(pts[i], pts[(i + 1) % n]) for i in range(n)]
    assert max(sides) - min(sides) <= 1e-9 * max(sides)


def test_one_hot_single_spike():
    _, pts = polygon(render_radar(list("abcdef"), [0, 0, 1, 0, 0, 0], "spike"))
    r = radii(pts)
    assert r[2] > 0
    assert all(v == pytest.approx(0, abs=1e-9) for i, v in enumerate(r) if i != 2)


def test_degenerate_has_notice():
    root, pts = polygon(render_radar(list("abcdef"), [0] * 6, "nothing"))
    assert pts is None
    assert root.find("svg:text[@class='notice']", NS) is not None


def test_title_and_legend_escaped():
    root, _ = polygon(render_radar(["x", "y", "z"], [0.2, 0.3, 0.5], "a < b & c", ["fear&loathing"]))
    assert root.find("svg:title", NS).text == "a < b & c"


def test_sentence_peak_on_top_emotion(ekman):
    result = process_sentence("247", "Gunmen kill 11 in Iraq TV raid", FixtureProvider.from_file(HEADLINES_FIXTURE), "pmi", ekman)
    _, pts = polygon(emit_radar(result, "avg"))
    r = radii(pts)
    top = result.ranking_avg[0]
    assert r.index(max(r)) == ekman.labels.index(top)


@given(st.lists(st.floats(0, 1), min_size=3, max_size=10).filter(lambda v: sum(v) > 0))
def test_vertex_count_and_bounds(values):
    labels = [f"e{i}" for i in range(len(values))]
    _, pts = polygon(render_radar(labels, values, "t"))
    assert len(pts) == len(values)
    assert max(radii(pts)) == pytest.approx(180.0, rel=1e-9)
