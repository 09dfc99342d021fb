import math

import numpy as np
import pytest
from scipy.special import ellipe

from turanosc import Disk, DomainError, Ellipse, Polygon, domain_from_dict
from turanosc.geometry import regular_polygon

from conftest import random_convex_polygon, sample_zeros_inside

TWO_PI = 2.0 * math.pi


# ---------------------------------------------------------------------------
# construction and parametrization
# ---------------------------------------------------------------------------


def test_invalid_polygons():
    with pytest.raises(DomainError, match="counterclockwise"):
        Polygon([[0, 0], [0, 1], [1, 1], [1, 0]])  # clockwise
    with pytest.raises(DomainError):
        Polygon([[0, 0], [1, 0]])
    with pytest.raises(DomainError, match="convex"):
        Polygon([[0, 0], [1, 0], [2, 0], [1, 1]])  # collinear triple
    with pytest.raises(DomainError):
        Polygon([[0, 0], [2, 0], [2, 2], [1, 0.5], [0, 2]])  # reflex
    with pytest.raises(DomainError):
        Disk((0, 0), 0.0)
    with pytest.raises(DomainError):
        Ellipse((0, 0), 0.5, 1.0)  # b > a


def test_disk_parametrization(unit_disk):
    assert unit_disk.perimeter() == pytest.approx(TWO_PI, abs=1e-15)
    p = unit_disk.point_at(np.array([0.0, math.pi / 2, math.pi]))
    assert np.allclose(p, [[1, 0], [0, 1], [-1, 0]], atol=1e-15)


def test_square_parametrization(square):
    assert square.perimeter() == 4.0
    bp = square.parametrize()
    # alpha jumps by pi/2 at each vertex
    for t in (1.0, 2.0, 3.0):
        assert bp.alpha_plus(t) - bp.alpha_minus(t) == pytest.approx(math.pi / 2)
    assert bp.alpha_plus(0.5) == bp.alpha_minus(0.5)  # smooth on the edge


def test_ellipse_perimeter_oracle():
    # independent: complete elliptic integral of the second kind
    for a, b in [(1.0, 0.5), (2.0, 1.5), (1.0, 1.0)]:
        dom = Ellipse((0, 0), a, b)
        exact = 4.0 * a * ellipe(1.0 - (b / a) ** 2)
        assert dom.perimeter() == pytest.approx(exact, abs=1e-10)


def test_parametrization_is_lipschitz():
    rng = np.random.default_rng(11)
    for dom in (Ellipse((0, 0), 1.0, 0.5, 0.3), regular_polygon(5, 1.0),
                Disk((1, 1), 2.0)):
        L = dom.perimeter()
        ts = rng.uniform(0, L, size=200)
        ss = rng.uniform(0, L, size=200)
        pa = dom.point_at(ts)
        pb = dom.point_at(ss)
        chord = np.hypot(*(pa - pb).T)
        arc = np.abs(ts - ss)
        arc = np.minimum(arc, L - arc)
        assert np.all(chord <= arc + 1e-9)


def test_tangent_lifting_gains_full_turn():
    for dom in (Ellipse((0, 0), 1.0, 0.5, 0.4), regular_polygon(7, 1.0),
                Disk((0, 0), 1.0)):
        bp = dom.parametrize()
        L = dom.perimeter()
        for t in (0.1, 0.7 * L):
            assert bp.alpha_plus(t + L) - bp.alpha_plus(t) == pytest.approx(TWO_PI, abs=1e-9)
        ts = np.linspace(0.01, L * 0.999, 57)
        vals = [bp.alpha_minus(t) for t in ts]
        assert np.all(np.diff(vals) >= -1e-12)


# ---------------------------------------------------------------------------
# diameter and width
# ---------------------------------------------------------------------------


def test_diameter_values(square, unit_disk, hexagon):
    assert unit_disk.diameter() == 2.0
    assert square.diameter() == pytest.approx(math.sqrt(2), abs=1e-15)
    # brute force over vertex pairs
    v = hexagon.vertices
    brute = max(np.hypot(*(v[i] - v[j])) for i in range(6) for j in range(6))
    assert hexagon.diameter() == pytest.approx(brute, abs=1e-15)
    assert hexagon.diameter() == pytest.approx(2.0, abs=1e-12)


def test_width_values(square, unit_disk, triangle):
    assert unit_disk.width() == 2.0
    assert square.width() == pytest.approx(1.0, abs=1e-15)
    assert triangle.width() == pytest.approx(math.sqrt(3) / 2, abs=1e-12)


def test_width_direction_grid_oracle():
    rng = np.random.default_rng(3)
    for _ in range(10):
        poly = random_convex_polygon(rng)
        v = poly.vertices
        angles = np.linspace(0, math.pi, 2000, endpoint=False)
        dirs = np.column_stack((np.cos(angles), np.sin(angles)))
        proj = v @ dirs.T
        widths = proj.max(axis=0) - proj.min(axis=0)
        grid_min = widths.min()
        w = poly.width()
        assert w <= grid_min + 1e-12
        # support width is d-Lipschitz in the direction angle
        assert w >= grid_min - poly.diameter() * (math.pi / 2000)


# ---------------------------------------------------------------------------
# depth
# ---------------------------------------------------------------------------


def test_local_depth_examples(square, unit_disk):
    assert unit_disk.local_depth(1.2345) == 2.0
    assert square.local_depth(0.5) == pytest.approx(1.0, abs=1e-15)  # edge mid
    assert square.local_depth(0.0) == pytest.approx(math.sqrt(2), abs=1e-9)  # corner


def test_global_depth_values(square, triangle, hexagon, unit_disk):
    assert square.global_depth() == pytest.approx(1.0, abs=1e-12)
    assert triangle.global_depth() <= 1e-12
    assert unit_disk.global_depth() == 2.0
    # regular hexagon side h: edge-interior normal chords span the distance
    # between opposite edges, sqrt(3) h
    assert hexagon.global_depth() == pytest.approx(math.sqrt(3), abs=1e-9)


def test_local_depth_bounded_below_by_global():
    rng = np.random.default_rng(4)
    from conftest import catalogue
    for dom in catalogue():
        h = dom.global_depth()
        ts = rng.uniform(0, dom.perimeter(), size=40)
        local = dom.local_depth_batch(ts)
        assert np.all(local >= h - 1e-9)


def test_ellipse_depth_analytic(half_ellipse_axes):
    # minimize 2 (cos^2 + 4 sin^2)^{3/2} / (cos^2 + 16 sin^2) analytically:
    # with s = sin^2, the stationary point is s = 10.5/22.5
    s = 10.5 / 22.5
    expect = 2.0 * (1 + 3 * s) ** 1.5 / (1 + 15 * s)
    assert half_ellipse_axes.global_depth() == pytest.approx(expect, abs=1e-9)
    # sampled local depths agree with the chord formula
    ts = np.linspace(0, half_ellipse_axes.perimeter(), 50, endpoint=False)
    local = half_ellipse_axes.local_depth_batch(ts)
    assert np.all(local >= expect - 1e-9)


def test_polygon_depth_sampling_oracle():
    rng = np.random.default_rng(5)
    for _ in range(10):
        poly = random_convex_polygon(rng)
        h = poly.global_depth()
        ts = np.linspace(0, poly.perimeter(), 400, endpoint=False)
        sampled = poly.local_depth_batch(ts)
        assert np.min(sampled) >= h - 1e-9
        # the infimum is approached along the edges
        assert np.min(sampled) <= h + 0.2 * poly.diameter()


# ---------------------------------------------------------------------------
# supplementary angles
# ---------------------------------------------------------------------------


def test_supplementary_angles(square, triangle, unit_disk, half_ellipse_axes):
    assert unit_disk.supplementary_angle(0.77) == 0.0
    assert square.supplementary_angle(1.0) == pytest.approx(math.pi / 2)
    assert square.supplementary_angle(0.37) == 0.0
    assert triangle.supplementary_angle(1.0) == pytest.approx(2 * math.pi / 3)
    assert half_ellipse_axes.largest_supplementary_angle() == 0.0
    assert square.largest_supplementary_angle() == pytest.approx(math.pi / 2)
    assert triangle.largest_supplementary_angle() == pytest.approx(2 * math.pi / 3)


# ---------------------------------------------------------------------------
# modulus of continuity (chordwise)
# ---------------------------------------------------------------------------


def test_hexagon_modulus_at_side_length(hexagon):
    lo, hi = hexagon.modulus_of_continuity(1.0)
    assert lo == pytest.approx(math.pi / 3, abs=1e-9)
    assert hi == pytest.approx(2 * math.pi / 3, abs=1e-9)


def test_disk_modulus_central_angle_identity(unit_disk):
    # chord t = 2R sin(theta/2) corresponds to normal separation theta
    for theta in np.linspace(0.1, math.pi - 0.1, 25):
        t = 2.0 * math.sin(theta / 2.0)
        lo, hi = unit_disk.modulus_of_continuity(t)
        assert lo == pytest.approx(theta, abs=1e-12)
        assert hi == pytest.approx(theta, abs=1e-12)


def test_disk_modulus_pair_grid_oracle():
    disk = Disk((0, 0), 1.5)
    m = 1500
    ang = np.linspace(0, TWO_PI, m, endpoint=False)
    pts = 1.5 * np.exp(1j * ang)
    for t in (0.4, 1.1, 2.0):
        chords = np.abs(pts[:, None] - pts[None, :])
        seps = np.abs(ang[:, None] - ang[None, :])
        seps = np.minimum(seps, TWO_PI - seps)
        oracle = np.max(seps[chords <= t])
        _, hi = disk.modulus_of_continuity(t)
        assert hi >= oracle - 1e-9
        assert hi <= oracle + 2 * TWO_PI / m + 1e-9


def test_modulus_saturates_at_width():
    from conftest import catalogue
    for dom in catalogue():
        w = dom.width()
        assert dom.modulus_of_continuity(w)[1] == pytest.approx(math.pi)
        assert dom.modulus_of_continuity(w * 1.5)[1] == pytest.approx(math.pi)


def test_modulus_monotone():
    from conftest import catalogue
    for dom in catalogue():
        ts = np.linspace(0, dom.width() * 1.05, 40)
        his = [dom.modulus_of_continuity(float(t))[1] for t in ts]
        assert np.all(np.diff(his) >= -1e-9)
        los = [dom.modulus_of_continuity(float(t))[0] for t in ts]
        for lo, hi in zip(los, his):
            assert lo <= hi + 1e-12


def test_polygon_modulus_pair_grid_oracle():
    rng = np.random.default_rng(17)
    for _ in range(5):
        poly = random_convex_polygon(rng, n_points=8)
        # edge samples carry the edge normal; vertices carry their whole cone
        samples = []
        k = len(poly.vertices)
        for i in range(k):
            a = poly.vertices[i]
            b = poly.vertices[(i + 1) % k]
            n = poly._normals[i]
            ang = math.atan2(n[1], n[0])
            for lam in np.linspace(0.001, 0.999, 40):
                samples.append(((1 - lam) * a + lam * b, ang))
            start, wid = poly._vertex_cone(i)
            for cone_ang in np.linspace(start, start + wid, 25):
                samples.append((a, cone_ang))
        pts = np.array([s[0] for s in samples])
        angs = np.array([s[1] for s in samples])
        chords = np.hypot(pts[:, None, 0] - pts[None, :, 0],
                          pts[:, None, 1] - pts[None, :, 1])
        seps = np.abs(angs[:, None] - angs[None, :]) % TWO_PI
        seps = np.minimum(seps, TWO_PI - seps)
        d = poly.diameter()
        for t in (0.2 * d, 0.5 * d, 0.9 * d):
            oracle = float(np.max(seps[chords <= t]))
            lo, hi = poly.modulus_of_continuity(t)
            # oracle pairs are a subset of admissible pairs
            assert hi >= oracle - 1e-9
            # cone sampling resolves separations to its angular step
            cone_step = math.pi / 24
            assert oracle >= lo - cone_step - 1e-9


# ---------------------------------------------------------------------------
# modulus of continuity (arc length)
# ---------------------------------------------------------------------------


def test_arclength_modulus_disk():
    disk = Disk((0, 0), 2.0)
    for s in (0.5, 2.0, 6.0):
        assert disk.modulus_of_continuity_arclength(s) == pytest.approx(s / 2.0)


def test_arclength_modulus_square(square):
    assert square.modulus_of_continuity_arclength(0.5) == pytest.approx(math.pi / 2)
    assert square.modulus_of_continuity_arclength(1.5) == pytest.approx(math.pi)
    L = square.perimeter()
    assert square.modulus_of_continuity_arclength(L) == pytest.approx(TWO_PI)
    # periodic extension rule
    got = square.modulus_of_continuity_arclength(L + 0.5)
    assert got == pytest.approx(math.pi / 2 + TWO_PI)
    with pytest.raises(DomainError):
        square.modulus_of_continuity_arclength(-0.1)


# ---------------------------------------------------------------------------
# mu and the depth relation
# ---------------------------------------------------------------------------


def test_mu_values(square, triangle, hexagon, unit_disk):
    assert hexagon.mu() == pytest.approx(1.0, abs=1e-12)
    assert square.mu() == pytest.approx(1.0, abs=1e-12)
    assert triangle.mu() == 0.0
    assert unit_disk.mu() == pytest.approx(math.sqrt(2), abs=1e-12)


def test_depth_at_least_mu_on_random_polygons():
    rng = np.random.default_rng(100)
    for _ in range(100):
        poly = random_convex_polygon(rng, n_points=int(rng.integers(5, 14)))
        assert poly.global_depth() >= poly.mu() - 1e-9


def test_depth_at_least_mu_smooth(unit_disk, half_ellipse_axes):
    for dom in (unit_disk, half_ellipse_axes, Ellipse((0, 0), 2.0, 1.7, 0.3)):
        assert dom.global_depth() >= dom.mu() - 1e-6


# ---------------------------------------------------------------------------
# classification
# ---------------------------------------------------------------------------


def test_classification(square, triangle, unit_disk, half_ellipse_axes, pentagon):
    assert square.depth_classification() == "III"
    assert triangle.depth_classification() == "II"
    assert unit_disk.depth_classification() == "I"
    assert half_ellipse_axes.depth_classification() == "I"
    assert pentagon.depth_classification() == "I"


def test_classification_depth_consistency():
    rng = np.random.default_rng(6)
    for _ in range(40):
        poly = random_convex_polygon(rng, n_points=int(rng.integers(4, 12)))
        cls = poly.depth_classification()
        h = poly.global_depth()
        if cls in ("I", "III"):
            assert h > 0
        else:
            assert h < 1e-9
        # no acute angles means positive depth
        if poly.largest_supplementary_angle() <= math.pi / 2 + 1e-12:
            assert cls in ("I", "III") and h > 0


# ---------------------------------------------------------------------------
# circularity
# ---------------------------------------------------------------------------


def test_circularity(square, unit_disk, half_ellipse_axes):
    assert unit_disk.circularity_radius() == 1.0
    assert half_ellipse_axes.circularity_radius() == pytest.approx(2.0)
    assert square.circularity_radius() is None


def test_ellipse_circularity_covers_domain(half_ellipse_axes):
    # each boundary point admits a disk of radius a^2/b through it containing K
    dom = half_ellipse_axes
    R = dom.circularity_radius()
    rng = np.random.default_rng(8)
    for t in rng.uniform(0, dom.perimeter(), size=12):
        z = complex(*dom.point_at(float(t)))
        lo, _ = dom.tangent_angle(float(t))
        nu = complex(math.cos(lo - math.pi / 2), math.sin(lo - math.pi / 2))
        center = z - R * nu
        samples = dom.point_complex(np.linspace(0, dom.perimeter(), 500))
        assert np.all(np.abs(samples - center) <= R + 1e-7)


# ---------------------------------------------------------------------------
# summary invariants and ingestion
# ---------------------------------------------------------------------------


def test_summary_invariants():
    rng = np.random.default_rng(7)
    from conftest import catalogue
    doms = catalogue() + [random_convex_polygon(rng) for _ in range(20)]
    for dom in doms:
        s = dom.summarize()
        assert 0 < s.width <= s.diameter + 1e-12
        assert 2 * s.diameter <= s.perimeter <= TWO_PI * s.diameter + 1e-9
        assert s.depth >= s.mu - 1e-9
        assert (s.classification in ("I", "III")) == (s.depth > 1e-9)


def test_summary_examples(square, triangle, hexagon, unit_disk):
    s = unit_disk.summarize()
    assert (s.diameter, s.width, s.classification) == (2.0, 2.0, "I")
    assert s.perimeter == pytest.approx(TWO_PI)
    assert s.depth == 2.0 and s.circularity_radius == 1.0
    assert s.largest_supplementary_angle == 0.0
    s = hexagon.summarize()
    assert s.diameter == pytest.approx(2.0)
    assert s.width == pytest.approx(math.sqrt(3))
    assert s.largest_supplementary_angle == pytest.approx(math.pi / 3)
    assert s.mu == pytest.approx(1.0)
    assert s.classification == "I"
    s = triangle.summarize()
    assert s.depth <= 1e-12 and s.classification == "II"


def test_ingestion_round_trip(square, unit_disk, half_ellipse_axes):
    for dom in (square, unit_disk, half_ellipse_axes):
        clone = domain_from_dict(dom.spec_dict())
        assert clone.summarize() == dom.summarize()
    with pytest.raises(DomainError):
        domain_from_dict({"type": "pentagon?"})
    with pytest.raises(DomainError):
        domain_from_dict({"type": "disk", "center": [0, 0]})


# ---------------------------------------------------------------------------
# membership and projection
# ---------------------------------------------------------------------------


def test_projection_properties():
    rng = np.random.default_rng(9)
    from conftest import catalogue
    for dom in catalogue():
        zc = dom.centroid()
        d = dom.diameter()
        for _ in range(30):
            z = complex(rng.uniform(zc.real - 2 * d, zc.real + 2 * d),
                        rng.uniform(zc.imag - 2 * d, zc.imag + 2 * d))
            pz = dom.project(z)
            assert dom.contains(pz, 1e-9)
            if dom.contains(z):
                assert pz == z
            else:
                # projection beats any boundary sample
                samples = dom.point_complex(np.linspace(0, dom.perimeter(), 800))
                assert abs(z - pz) <= np.min(np.abs(samples - z)) + 1e-6


def test_membership_tolerance(unit_disk):
    assert unit_disk.contains(1.0 + 0j, 0.0)
    assert not unit_disk.contains(1.0 + 1e-9 + 0j, 0.0)
    assert unit_disk.contains(1.0 + 1e-9 + 0j, 1e-8)


def test_interior_sampling_is_inside():
    rng = np.random.default_rng(10)
    from conftest import catalogue
    for dom in catalogue():
        zs = sample_zeros_inside(dom, 10, rng)
        assert all(dom.contains(complex(z)) for z in zs)
