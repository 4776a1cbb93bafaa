import random
from fractions import Fraction

import pytest

from dtregge.geometry import CornerFan, half_edge_lengths
from dtregge.triangulation import build_triangulation


@pytest.fixture(autouse=True)
def isolated_cache(tmp_path, monkeypatch):
    monkeypatch.setenv("DTREGGE_CACHE_DIR", str(tmp_path / "cache"))


@pytest.fixture
def theta_sphere():
    """Two triangles glued along their full boundary: genus 0, q = (2,2,2)."""
    return build_triangulation(
        3,
        [(1, 2, 3), (2, 1, 3)],
        [((0, 0), (1, 0)), ((0, 1), (1, 2)), ((0, 2), (1, 1))],
    )


@pytest.fixture
def one_vertex_torus():
    """Two triangles forming the square torus: genus 1, q = (6,)."""
    return build_triangulation(
        1,
        [(1, 1, 1), (1, 1, 1)],
        [((0, 0), (1, 0)), ((0, 1), (1, 1)), ((0, 2), (1, 2))],
    )


def random_fan(rng: random.Random) -> CornerFan:
    """A random nondegenerate corner fan with rational squared lengths."""
    while True:
        q = rng.randint(2, 6)
        spokes = [Fraction(rng.randint(20, 60), 10) for _ in range(q)]
        links = []
        for a in range(q):
            low = abs(spokes[a] - spokes[(a + 1) % q])
            high = spokes[a] + spokes[(a + 1) % q]
            links.append(low + Fraction(rng.randint(1, 9), 10) * (high - low))
        try:
            fan = CornerFan.from_lengths(spokes, links)
            half_edge_lengths(fan)
            return fan
        except ValueError:
            continue
