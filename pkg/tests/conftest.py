import math

import numpy as np
import pytest
from scipy.spatial import ConvexHull

from turanosc import Disk, DomainError, Ellipse, Polygon
from turanosc.geometry import regular_polygon


def random_convex_polygon(rng: np.random.Generator, n_points: int = 10,
                          scale: float = 1.0) -> Polygon:
    """Convex hull of random points; retries until strictly convex."""
    for _ in range(100):
        pts = rng.uniform(-scale, scale, size=(n_points, 2))
        hull = ConvexHull(pts)
        verts = pts[hull.vertices]  # counterclockwise
        if len(verts) < 3:
            continue
        try:
            return Polygon(verts)
        except DomainError:
            continue
    raise RuntimeError("could not generate a strictly convex polygon")


def unit_square() -> Polygon:
    return Polygon([[0, 0], [1, 0], [1, 1], [0, 1]])


def equilateral_triangle() -> Polygon:
    return Polygon([[0, 0], [1, 0], [0.5, math.sqrt(3) / 2]])


@pytest.fixture
def square():
    return unit_square()


@pytest.fixture
def triangle():
    return equilateral_triangle()


@pytest.fixture
def hexagon():
    return regular_polygon(6, 1.0)


@pytest.fixture
def pentagon():
    return regular_polygon(5, 1.0)


@pytest.fixture
def unit_disk():
    return Disk((0, 0), 1.0)


@pytest.fixture
def half_ellipse_axes():
    return Ellipse((0, 0), 1.0, 0.5)


def catalogue():
    """A spread of domains for property suites."""
    return [
        unit_square(),
        equilateral_triangle(),
        regular_polygon(5, 1.0),
        regular_polygon(6, 1.0),
        Disk((0, 0), 1.0),
        Disk((0.5, -0.25), 0.75),
        Ellipse((0, 0), 1.0, 0.5),
        Ellipse((0.3, 0.1), 1.2, 0.9, rotation=0.7),
    ]


def sample_zeros_inside(domain, n: int, rng: np.random.Generator) -> np.ndarray:
    zc, d = domain.centroid(), domain.diameter()
    out = []
    while len(out) < n:
        z = complex(rng.uniform(zc.real - d, zc.real + d),
                    rng.uniform(zc.imag - d, zc.imag + d))
        if domain.contains(z):
            out.append(z)
    return np.array(out, dtype=complex)
