"""Convex planar domains: polygons, disks, and ellipses.

Every domain carries a counterclockwise arc-length boundary
parametrization and the geometric quantities that drive the bound
certificates: diameter, minimal width, perimeter, local and global
depth, supplementary (turning) angles, the modulus of continuity of
the outer normal directions (with respect to chord length and to arc
length), and a four-way depth classification.

Conventions: angles in radians, lengths in the units of the input
coordinates.  Instances are immutable after construction and all
operations are pure, so they can be shared freely between threads.
"""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass
from typing import Optional

import numpy as np

TWO_PI = 2.0 * math.pi
HALF_PI = 0.5 * math.pi

_ANGLE_TOL = 1e-9  # comparisons of supplementary angles against pi/2


class DomainError(ValueError):
    """A domain description violates a constructor invariant."""


def _circle_distance(a: float, b: float) -> float:
    """Distance of a - b from 2*pi*Z (metric on the circle of directions)."""
    d = math.fmod(abs(a - b), TWO_PI)
    return min(d, TWO_PI - d)


def _arc_contains(start: float, width: float, angle: float) -> bool:
    """Whether ``angle`` lies on the circle arc [start, start + width]."""
    rel = (angle - start) % TWO_PI
    return rel <= width + 1e-15


def _cone_max_separation(a: tuple[float, float], b: tuple[float, float]) -> float:
    """Largest circle distance between directions of two closed cones.

    Cones are (start, width) pairs with width in [0, pi).  The maximum of
    the circle metric over two arcs is attained at arc endpoints unless
    one arc meets the antipode of the other, in which case it equals pi.
    """
    (sa, wa), (sb, wb) = a, b
    for x in (sa, sa + wa):
        if _arc_contains(sb, wb, x + math.pi):
            return math.pi
    for x in (sb, sb + wb):
        if _arc_contains(sa, wa, x + math.pi):
            return math.pi
    return max(
        _circle_distance(x, y)
        for x in (sa, sa + wa)
        for y in (sb, sb + wb)
    )


def _golden_max(fun, lo: float, hi: float, iters: int = 80):
    """Golden-section maximization of a scalar function on [lo, hi]."""
    invphi = (math.sqrt(5.0) - 1.0) / 2.0
    a, b = lo, hi
    c = b - invphi * (b - a)
    d = a + invphi * (b - a)
    fc, fd = fun(c), fun(d)
    for _ in range(iters):
        if b - a < 1e-14 * max(1.0, abs(b) + abs(a)):
            break
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - invphi * (b - a)
            fc = fun(c)
        else:
            a, c, fc = c, d, fd
            d = a + invphi * (b - a)
            fd = fun(d)
    if fc >= fd:
        return c, fc
    return d, fd


@dataclass(frozen=True)
class GeometrySummary:
    """All scalar geometry of a domain in one record."""

    diameter: float
    width: float
    perimeter: float
    depth: float
    largest_supplementary_angle: float
    mu: float
    classification: str  # "I" | "II" | "III" | "IV"
    circularity_radius: Optional[float]

    def as_dict(self) -> dict:
        return asdict(self)


class BoundaryParametrization:
    """Arc-length boundary curve of a convex domain.

    ``point(t)`` is 1-Lipschitz and counterclockwise; ``alpha_minus`` and
    ``alpha_plus`` are the left/right tangent angles in a continuous
    lifting, gaining exactly 2*pi per period.
    """

    def __init__(self, domain: "ConvexDomain"):
        self.domain = domain
        self.length = domain.perimeter()

    def point(self, t):
        return self.domain.point_at(t)

    def alpha_minus(self, t: float) -> float:
        return self.domain.tangent_angle(t)[0]

    def alpha_plus(self, t: float) -> float:
        return self.domain.tangent_angle(t)[1]


class ConvexDomain:
    """Compact convex planar domain with nonempty interior."""

    kind = "convex"

    # ---- boundary parametrization ------------------------------------

    def perimeter(self) -> float:
        raise NotImplementedError

    def point_at(self, t):
        """Boundary point gamma(t) as an (..., 2) array, t arc length mod L."""
        raise NotImplementedError

    def point_complex(self, t):
        p = self.point_at(t)
        return p[..., 0] + 1j * p[..., 1]

    def tangent_angle(self, t: float) -> tuple[float, float]:
        """Lifted left/right tangent angles (alpha-, alpha+) at parameter t."""
        raise NotImplementedError

    def arc_breaks(self) -> np.ndarray:
        """Parameters of non-smooth boundary points plus the period ends."""
        return np.array([0.0, self.perimeter()])

    def parametrize(self) -> BoundaryParametrization:
        return BoundaryParametrization(self)

    # ---- scalar geometry ----------------------------------------------

    def diameter(self) -> float:
        raise NotImplementedError

    def diameter_endpoints(self) -> tuple[complex, complex]:
        raise NotImplementedError

    def width(self) -> float:
        raise NotImplementedError

    def local_depth(self, t: float) -> float:
        raise NotImplementedError

    def local_depth_batch(self, ts: np.ndarray) -> np.ndarray:
        return np.array([self.local_depth(float(t)) for t in np.atleast_1d(ts)])

    def global_depth(self) -> float:
        raise NotImplementedError

    def supplementary_angle(self, t: float) -> float:
        lo, hi = self.tangent_angle(t)
        return hi - lo

    def largest_supplementary_angle(self) -> float:
        raise NotImplementedError

    def modulus_of_continuity(self, t: float) -> tuple[float, float]:
        """Multivalued chordwise modulus of the normal directions.

        Returns (omega-, omega+): the suprema of the angular distance of
        normals over boundary pairs at chord distance < t and <= t.  Both
        saturate at pi once t reaches the width.
        """
        raise NotImplementedError

    def modulus_of_continuity_arclength(self, s: float) -> float:
        if s < 0:
            raise DomainError("arc-length argument must be nonnegative")
        L = self.perimeter()
        if s >= L:
            wraps = math.floor(s / L)
            return self._omega_arc(s - wraps * L) + wraps * TWO_PI
        return self._omega_arc(s)

    def _omega_arc(self, s: float) -> float:
        raise NotImplementedError

    def mu(self) -> float:
        """Largest chord distance at which the multivalued modulus still meets pi/2."""
        raise NotImplementedError

    def circularity_radius(self) -> Optional[float]:
        raise NotImplementedError

    def _max_jump_has_straight_sides(self) -> bool:
        return False

    def depth_classification(self) -> str:
        om = self.largest_supplementary_angle()
        if om < HALF_PI - _ANGLE_TOL:
            return "I"
        if om > HALF_PI + _ANGLE_TOL:
            return "II"
        return "III" if self._max_jump_has_straight_sides() else "IV"

    # ---- membership / projection ---------------------------------------

    def contains(self, z: complex, tol: float = 0.0) -> bool:
        raise NotImplementedError

    def project(self, z: complex) -> complex:
        """Nearest point of the domain (clamp: interior points map to themselves)."""
        raise NotImplementedError

    def boundary_distance(self, z: complex) -> float:
        """Euclidean distance from z to the boundary curve."""
        raise NotImplementedError

    def centroid(self) -> complex:
        raise NotImplementedError

    def scaled(self, factor: float, about: Optional[complex] = None) -> "ConvexDomain":
        raise NotImplementedError

    def summarize(self) -> GeometrySummary:
        return GeometrySummary(
            diameter=self.diameter(),
            width=self.width(),
            perimeter=self.perimeter(),
            depth=self.global_depth(),
            largest_supplementary_angle=self.largest_supplementary_angle(),
            mu=self.mu(),
            classification=self.depth_classification(),
            circularity_radius=self.circularity_radius(),
        )

    def spec_dict(self) -> dict:
        raise NotImplementedError


# ---------------------------------------------------------------------------
# Polygon
# ---------------------------------------------------------------------------


class Polygon(ConvexDomain):
    """Strictly convex polygon, vertices in counterclockwise order."""

    kind = "polygon"

    def __init__(self, vertices):
        v = np.array(vertices, dtype=float)
        if v.ndim != 2 or v.shape[1] != 2:
            raise DomainError("vertices must be an N x 2 array of points")
        if len(v) < 3:
            raise DomainError("a polygon needs at least 3 vertices")
        if not np.all(np.isfinite(v)):
            raise DomainError("vertices must be finite")
        e = np.roll(v, -1, axis=0) - v
        lengths = np.hypot(e[:, 0], e[:, 1])
        scale = float(np.max(np.abs(v))) + 1.0
        if np.any(lengths <= 1e-12 * scale):
            raise DomainError("repeated or coincident vertices")
        cross = e[:, 0] * np.roll(e[:, 1], -1) - e[:, 1] * np.roll(e[:, 0], -1)
        if np.all(cross < 0):
            raise DomainError("vertices not counterclockwise")
        if np.any(cross <= 1e-12 * scale * scale):
            k = int(np.argmin(cross))
            raise DomainError(
                f"vertices not strictly convex (collinear or reflex near vertex {k + 1})"
            )
        self.vertices = v
        self._edges = e
        self._edge_len = lengths
        self._cum = np.concatenate(([0.0], np.cumsum(lengths)))
        self._L = float(self._cum[-1])
        self._edge_dir = e / lengths[:, None]
        # outward normals (unit): tangent rotated by -pi/2
        self._normals = np.column_stack((self._edge_dir[:, 1], -self._edge_dir[:, 0]))
        ang = np.arctan2(e[:, 1], e[:, 0])
        prev = np.roll(self._edge_dir, 1, axis=0)
        crossp = prev[:, 0] * self._edge_dir[:, 1] - prev[:, 1] * self._edge_dir[:, 0]
        dotp = np.einsum("ij,ij->i", prev, self._edge_dir)
        self._turns = np.arctan2(crossp, dotp)  # jump at vertex i, in (0, pi)
        theta = np.empty(len(v))
        theta[0] = ang[0]
        for i in range(1, len(v)):
            theta[i] = theta[i - 1] + self._turns[i]
        self._theta = theta  # lifted tangent angle on edge i
        # half-plane form: n_i . x <= b_i
        self._hp_b = np.einsum("ij,ij->i", self._normals, v)
        for arr in (self.vertices, self._edges, self._edge_len, self._cum,
                    self._edge_dir, self._normals, self._theta, self._turns,
                    self._hp_b):
            arr.setflags(write=False)
        self._pair_cache = None

    # ---- parametrization ----

    def perimeter(self) -> float:
        return self._L

    def arc_breaks(self) -> np.ndarray:
        return self._cum.copy()

    def _edge_index(self, t):
        tm = np.mod(t, self._L)
        idx = np.searchsorted(self._cum, tm, side="right") - 1
        return np.clip(idx, 0, len(self.vertices) - 1), tm

    def point_at(self, t):
        t = np.asarray(t, dtype=float)
        idx, tm = self._edge_index(t)
        off = tm - self._cum[idx]
        return self.vertices[idx] + off[..., None] * self._edge_dir[idx]

    def _vertex_at(self, t: float) -> Optional[int]:
        tm = math.fmod(float(t), self._L)
        if tm < 0:
            tm += self._L
        tol = 1e-9 * max(1.0, self._L)
        for i, s in enumerate(self._cum[:-1]):
            if abs(tm - s) <= tol:
                return i
        if abs(tm - self._L) <= tol:
            return 0
        return None

    def tangent_angle(self, t: float) -> tuple[float, float]:
        tm = math.fmod(float(t), self._L)
        wraps = math.floor(float(t) / self._L)
        if tm < 0:
            tm += self._L
        base = wraps * TWO_PI
        i = self._vertex_at(tm)
        if i is not None:
            hi = self._theta[i]
            lo = hi - self._turns[i]
            return lo + base, hi + base
        idx, _ = self._edge_index(tm)
        a = self._theta[int(idx)]
        return a + base, a + base

    def _max_jump_has_straight_sides(self) -> bool:
        return True  # polygon boundaries are straight on both sides of a vertex

    # ---- scalar geometry ----

    def diameter(self) -> float:
        d2 = self._pairwise_sq()
        return math.sqrt(float(np.max(d2)))

    def diameter_endpoints(self) -> tuple[complex, complex]:
        d2 = self._pairwise_sq()
        i, j = np.unravel_index(int(np.argmax(d2)), d2.shape)
        va, vb = self.vertices[i], self.vertices[j]
        return complex(va[0], va[1]), complex(vb[0], vb[1])

    def _pairwise_sq(self) -> np.ndarray:
        diff = self.vertices[:, None, :] - self.vertices[None, :, :]
        return np.einsum("ijk,ijk->ij", diff, diff)

    def width(self) -> float:
        # rotating calipers: width is attained with an edge on one support line
        proj = self.vertices @ self._normals.T  # (vertex, edge)
        spread = self._hp_b[None, :] - proj
        return float(np.min(np.max(spread, axis=0)))

    def chord_length(self, point, direction) -> float:
        """Length of K cut by the ray point + s*direction, s >= 0 (half-plane clip)."""
        p = np.asarray(point, dtype=float)
        u = np.asarray(direction, dtype=float)
        u = u / np.hypot(u[0], u[1])
        num = self._hp_b - self._normals @ p
        den = self._normals @ u
        s_hi = np.inf
        for ni in range(len(den)):
            if den[ni] > 1e-14:
                s_hi = min(s_hi, num[ni] / den[ni])
            elif den[ni] >= -1e-14 and num[ni] < -1e-12:
                return 0.0  # ray starts outside a parallel half-plane
        return max(0.0, float(s_hi))

    def _chords_from_point(self, p: np.ndarray, dirs: np.ndarray) -> np.ndarray:
        """Vectorized chord lengths from one point along many unit directions."""
        num = self._hp_b - self._normals @ p           # (edges,)
        den = dirs @ self._normals.T                   # (m, edges)
        with np.errstate(divide="ignore", invalid="ignore"):
            ratio = np.where(den > 1e-14, num[None, :] / den, np.inf)
        s = np.min(ratio, axis=1)
        bad = np.any((np.abs(den) <= 1e-14) & (num[None, :] < -1e-12), axis=1)
        s = np.where(bad, 0.0, s)
        return np.maximum(s, 0.0)

    def local_depth(self, t: float) -> float:
        i = self._vertex_at(t)
        if i is None:
            idx, tm = self._edge_index(float(t))
            p = self.point_at(float(t))
            return self.chord_length(p, -self._normals[int(idx)])
        return self._vertex_depth(int(i))

    def local_depth_batch(self, ts: np.ndarray) -> np.ndarray:
        ts = np.atleast_1d(np.asarray(ts, dtype=float))
        out = np.empty(len(ts))
        idx, tm = self._edge_index(ts)
        pts = self.point_at(ts)
        for j in range(len(ts)):
            vi = self._vertex_at(float(ts[j]))
            if vi is None:
                out[j] = self.chord_length(pts[j], -self._normals[int(idx[j])])
            else:
                out[j] = self._vertex_depth(int(vi))
        return out

    def _vertex_cone(self, i: int) -> tuple[float, float]:
        """Outer-normal cone (start angle, width) at vertex i."""
        hi = self._theta[i] - HALF_PI
        return hi - self._turns[i], self._turns[i]

    def _vertex_depth(self, i: int, grid_step: float = 1e-4) -> float:
        """Max chord over the outer-normal cone at vertex i.

        Exact candidates (the two adjacent edge normals and the directions
        pointing at every other vertex) are augmented by a fine angular grid
        with golden-section refinement; tolerance 1e-9 absolute.
        """
        v = self.vertices[i]
        start, wid = self._vertex_cone(i)
        angles = [start, start + wid]
        for j in range(len(self.vertices)):
            if j == i:
                continue
            w = self.vertices[j] - v
            cand = math.atan2(w[1], w[0]) + math.pi  # outer normal opposite to chord
            if _arc_contains(start, wid, cand):
                rel = (cand - start) % TWO_PI
                angles.append(start + rel)
        n_grid = max(2, int(math.ceil(wid / grid_step)))
        grid = np.linspace(start, start + wid, min(n_grid, 40000))
        all_ang = np.unique(np.concatenate((np.asarray(angles), grid)))
        dirs = -np.column_stack((np.cos(all_ang), np.sin(all_ang)))
        chords = self._chords_from_point(v, dirs)
        k = int(np.argmax(chords))
        best = float(chords[k])
        lo = all_ang[max(0, k - 1)]
        hi = all_ang[min(len(all_ang) - 1, k + 1)]

        def f(a):
            return self.chord_length(v, (-math.cos(a), -math.sin(a)))

        _, refined = _golden_max(f, lo, hi)
        return max(best, refined)

    def global_depth(self) -> float:
        # chord length along a fixed normal is concave along the edge, so the
        # boundary infimum is attained in the limit at edge endpoints
        best = np.inf
        for i in range(len(self.vertices)):
            n = self._normals[i]
            for v in (self.vertices[i], self.vertices[(i + 1) % len(self.vertices)]):
                best = min(best, self.chord_length(v, -n))
        return float(best)

    def largest_supplementary_angle(self) -> float:
        return float(np.max(self._turns))

    # ---- modulus of continuity (exact, via element pairs) ----

    def _element_pairs(self):
        """All (min distance, max normal separation) pairs of boundary elements.

        Elements are the closed edges (single normal direction) and the
        vertices (normal cones).  The chordwise modulus is a step function of
        these finitely many pairs.
        """
        if self._pair_cache is not None:
            return self._pair_cache
        k = len(self.vertices)
        verts = self.vertices
        edge_cones = [((self._theta[i] - HALF_PI) % TWO_PI, 0.0) for i in range(k)]
        vert_cones = []
        for i in range(k):
            s, w = self._vertex_cone(i)
            vert_cones.append((s % TWO_PI, w))
        pairs = []
        for i in range(k):  # same-vertex pair carries the whole cone
            pairs.append((0.0, vert_cones[i][1]))
        for i in range(k):
            for j in range(i + 1, k):
                d = _segment_distance(verts[i], verts[(i + 1) % k],
                                      verts[j], verts[(j + 1) % k])
                pairs.append((d, _cone_max_separation(edge_cones[i], edge_cones[j])))
        for vi in range(k):
            for j in range(k):
                d = _point_segment_distance(verts[vi], verts[j], verts[(j + 1) % k])
                pairs.append((d, _cone_max_separation(vert_cones[vi], edge_cones[j])))
            for vj in range(vi + 1, k):
                d = float(np.hypot(*(verts[vi] - verts[vj])))
                pairs.append((d, _cone_max_separation(vert_cones[vi], vert_cones[vj])))
        dist = np.array([p[0] for p in pairs])
        sep = np.minimum(np.array([p[1] for p in pairs]), math.pi)
        order = np.argsort(dist)
        self._pair_cache = (dist[order], sep[order])
        return self._pair_cache

    def modulus_of_continuity(self, t: float) -> tuple[float, float]:
        if t < 0:
            raise DomainError("chord distance must be nonnegative")
        dist, sep = self._element_pairs()
        below = sep[dist < t - 1e-15]
        at = sep[dist <= t + 1e-15]
        lo = float(np.max(below)) if len(below) else 0.0
        hi = float(np.max(at)) if len(at) else 0.0
        if t >= self.width() - 1e-15:
            hi = math.pi
        return min(lo, math.pi), min(hi, math.pi)

    def mu(self) -> float:
        dist, sep = self._element_pairs()
        over = dist[sep > HALF_PI + 1e-12]
        return float(np.min(over)) if len(over) else 0.0

    def _omega_arc(self, s: float) -> float:
        # max total turning over a closed arc window of length s
        sv = self._cum[:-1]
        jumps = self._turns
        k = len(sv)
        ext_s = np.concatenate((sv, sv + self._L))
        ext_j = np.concatenate((jumps, jumps))
        best = 0.0
        for i in range(k):
            j = np.searchsorted(ext_s, sv[i] + s + 1e-15, side="right") - 1
            j = min(j, i + k - 1)
            best = max(best, float(np.sum(ext_j[i:j + 1])))
        return min(best, TWO_PI)

    def circularity_radius(self) -> Optional[float]:
        return None  # flat edges: points of the edge line leave every tangent disk

    # ---- membership / projection ----

    def contains(self, z: complex, tol: float = 0.0) -> bool:
        p = np.array([z.real, z.imag])
        slack = self._normals @ p - self._hp_b
        if np.all(slack <= tol + 1e-15):
            return True
        return self.boundary_distance(z) <= tol + 1e-15

    def boundary_distance(self, z: complex) -> float:
        p = np.array([z.real, z.imag])
        best = np.inf
        for i in range(len(self.vertices)):
            best = min(best, _point_segment_distance(
                p, self.vertices[i], self.vertices[(i + 1) % len(self.vertices)]))
        return float(best)

    def project(self, z: complex) -> complex:
        p = np.array([z.real, z.imag])
        if np.all(self._normals @ p - self._hp_b <= 0.0):
            return z
        best, best_pt = np.inf, p
        for i in range(len(self.vertices)):  # ties go to the lower-index edge
            q = _project_segment(p, self.vertices[i],
                                 self.vertices[(i + 1) % len(self.vertices)])
            d = float(np.hypot(*(p - q)))
            if d < best - 1e-15:
                best, best_pt = d, q
        return complex(best_pt[0], best_pt[1])

    def centroid(self) -> complex:
        v = self.vertices
        w = np.roll(v, -1, axis=0)
        cr = v[:, 0] * w[:, 1] - w[:, 0] * v[:, 1]
        area = np.sum(cr) / 2.0
        cx = np.sum((v[:, 0] + w[:, 0]) * cr) / (6.0 * area)
        cy = np.sum((v[:, 1] + w[:, 1]) * cr) / (6.0 * area)
        return complex(cx, cy)

    def scaled(self, factor: float, about: Optional[complex] = None) -> "Polygon":
        c = self.centroid() if about is None else about
        cc = np.array([c.real, c.imag])
        return Polygon(cc + factor * (self.vertices - cc))

    def spec_dict(self) -> dict:
        return {"type": "polygon", "vertices": self.vertices.tolist()}


def _point_segment_distance(p, a, b) -> float:
    return float(np.hypot(*(p - _project_segment(p, a, b))))


def _project_segment(p, a, b):
    ab = b - a
    tt = float(np.dot(p - a, ab) / np.dot(ab, ab))
    tt = min(1.0, max(0.0, tt))
    return a + tt * ab


def _segment_distance(a, b, c, d) -> float:
    # convex-polygon edges never cross, so endpoint projections suffice
    return min(
        _point_segment_distance(a, c, d),
        _point_segment_distance(b, c, d),
        _point_segment_distance(c, a, b),
        _point_segment_distance(d, a, b),
    )


# ---------------------------------------------------------------------------
# Disk
# ---------------------------------------------------------------------------


class Disk(ConvexDomain):
    kind = "disk"

    def __init__(self, center, radius):
        try:
            self.center = complex(center[0], center[1])
        except TypeError:
            self.center = complex(center)
        self.radius = float(radius)
        if not (self.radius > 0 and math.isfinite(self.radius)):
            raise DomainError("disk radius must be positive and finite")
        if not (math.isfinite(self.center.real) and math.isfinite(self.center.imag)):
            raise DomainError("disk center must be finite")

    def perimeter(self) -> float:
        return TWO_PI * self.radius

    def arc_breaks(self) -> np.ndarray:
        return np.linspace(0.0, self.perimeter(), 9)  # panel seeds only

    def point_at(self, t):
        t = np.asarray(t, dtype=float)
        ang = t / self.radius
        x = self.center.real + self.radius * np.cos(ang)
        y = self.center.imag + self.radius * np.sin(ang)
        return np.stack((x, y), axis=-1)

    def tangent_angle(self, t: float) -> tuple[float, float]:
        a = float(t) / self.radius + HALF_PI
        return a, a

    def diameter(self) -> float:
        return 2.0 * self.radius

    def diameter_endpoints(self) -> tuple[complex, complex]:
        return self.center - self.radius, self.center + self.radius

    def width(self) -> float:
        return 2.0 * self.radius

    def local_depth(self, t: float) -> float:
        return 2.0 * self.radius

    def local_depth_batch(self, ts: np.ndarray) -> np.ndarray:
        return np.full(np.atleast_1d(ts).shape, 2.0 * self.radius)

    def global_depth(self) -> float:
        return 2.0 * self.radius

    def largest_supplementary_angle(self) -> float:
        return 0.0

    def modulus_of_continuity(self, t: float) -> tuple[float, float]:
        if t < 0:
            raise DomainError("chord distance must be nonnegative")
        if t >= 2.0 * self.radius:
            return math.pi, math.pi
        w = 2.0 * math.asin(t / (2.0 * self.radius))
        return w, w

    def _omega_arc(self, s: float) -> float:
        return s / self.radius

    def mu(self) -> float:
        return self.radius * math.sqrt(2.0)  # chord of a quarter turn

    def circularity_radius(self) -> Optional[float]:
        return self.radius

    def contains(self, z: complex, tol: float = 0.0) -> bool:
        return abs(z - self.center) <= self.radius + tol + 1e-15

    def boundary_distance(self, z: complex) -> float:
        return abs(abs(z - self.center) - self.radius)

    def project(self, z: complex) -> complex:
        d = abs(z - self.center)
        if d <= self.radius:
            return z
        return self.center + (z - self.center) * (self.radius / d)

    def centroid(self) -> complex:
        return self.center

    def scaled(self, factor: float, about: Optional[complex] = None) -> "Disk":
        c = self.center if about is None else about
        nc = c + factor * (self.center - c)
        return Disk((nc.real, nc.imag), self.radius * factor)

    def spec_dict(self) -> dict:
        return {"type": "disk", "center": [self.center.real, self.center.imag],
                "radius": self.radius}


# ---------------------------------------------------------------------------
# Ellipse
# ---------------------------------------------------------------------------


class Ellipse(ConvexDomain):
    """Ellipse with semi-axes 0 < b <= a, rotated about its center."""

    kind = "ellipse"

    _TABLE = 4096  # angular samples for the arc-length table and searches

    def __init__(self, center, a, b, rotation=0.0):
        try:
            self.center = complex(center[0], center[1])
        except TypeError:
            self.center = complex(center)
        self.a = float(a)
        self.b = float(b)
        self.rotation = float(rotation)
        if not (0 < self.b <= self.a) or not math.isfinite(self.a):
            raise DomainError("ellipse needs 0 < b <= a")
        if not (math.isfinite(self.center.real) and math.isfinite(self.center.imag)):
            raise DomainError("ellipse center must be finite")
        self._cos = math.cos(self.rotation)
        self._sin = math.sin(self.rotation)
        # cumulative arc length over a uniform angle grid (Gauss-8 per cell)
        m = self._TABLE
        theta = np.linspace(0.0, TWO_PI, m + 1)
        gx, gw = np.polynomial.legendre.leggauss(8)
        t0, t1 = theta[:-1], theta[1:]
        mid = 0.5 * (t0 + t1)[:, None] + 0.5 * (t1 - t0)[:, None] * gx[None, :]
        sp = self._speed(mid)
        seg = (0.5 * (t1 - t0))[:, None] * sp * gw[None, :]
        cum = np.concatenate(([0.0], np.cumsum(np.sum(seg, axis=1))))
        self._theta_tab = theta
        self._s_tab = cum
        self._L = float(cum[-1])
        self._omega_cache: dict[int, tuple[np.ndarray, np.ndarray, np.ndarray]] = {}

    def _speed(self, theta):
        return np.sqrt((self.a * np.sin(theta)) ** 2 + (self.b * np.cos(theta)) ** 2)

    def _theta_of(self, t):
        """Invert the arc-length table; two Newton corrections."""
        t = np.mod(np.asarray(t, dtype=float), self._L)
        th = np.interp(t, self._s_tab, self._theta_tab)
        for _ in range(2):
            s = np.interp(th, self._theta_tab, self._s_tab)
            th = th - (s - t) / np.maximum(self._speed(th), 1e-300)
        return th

    def _frame_point(self, theta):
        return self.a * np.cos(theta), self.b * np.sin(theta)

    def _to_world(self, x, y):
        wx = self.center.real + self._cos * x - self._sin * y
        wy = self.center.imag + self._sin * x + self._cos * y
        return wx, wy

    def perimeter(self) -> float:
        return self._L

    def arc_breaks(self) -> np.ndarray:
        return np.linspace(0.0, self._L, 17)  # panel seeds only

    def point_at(self, t):
        th = self._theta_of(t)
        x, y = self._frame_point(th)
        wx, wy = self._to_world(x, y)
        return np.stack((np.asarray(wx), np.asarray(wy)), axis=-1)

    def _normal_angle_lifted(self, theta):
        """Lifted outer-normal direction angle as a function of the angle."""
        theta = np.asarray(theta, dtype=float)
        wraps = np.floor(theta / TWO_PI)
        tm = theta - wraps * TWO_PI
        base = np.arctan2(self.a * np.sin(tm), self.b * np.cos(tm))
        base = np.where(tm > math.pi + 1e-15, base + TWO_PI, base)
        return base + wraps * TWO_PI + self.rotation

    def tangent_angle(self, t: float) -> tuple[float, float]:
        tm = math.fmod(float(t), self._L)
        wraps = math.floor(float(t) / self._L)
        if tm < 0:
            tm += self._L
        th = float(self._theta_of(tm))
        a = float(self._normal_angle_lifted(th)) + HALF_PI + wraps * TWO_PI
        return a, a

    def diameter(self) -> float:
        return 2.0 * self.a

    def diameter_endpoints(self) -> tuple[complex, complex]:
        ax = complex(self._cos, self._sin) * self.a
        return self.center - ax, self.center + ax

    def width(self) -> float:
        return 2.0 * self.b

    def _normal_chord(self, theta):
        """Exact chord length along the inward normal at angle parameter theta.

        With P = (a cos t, b sin t) on the implicit form g = x^2/a^2 + y^2/b^2 - 1
        and u the unit inward normal, g(P + s u) is a quadratic in s with one
        root at 0; the other root is the chord length.
        """
        theta = np.asarray(theta, dtype=float)
        c2 = np.cos(theta) ** 2
        s2 = np.sin(theta) ** 2
        m2 = c2 / self.a**2 + s2 / self.b**2
        q = c2 / self.a**4 + s2 / self.b**4
        return 2.0 * m2**1.5 / q

    def local_depth(self, t: float) -> float:
        th = float(self._theta_of(t))
        return float(self._normal_chord(th))

    def local_depth_batch(self, ts: np.ndarray) -> np.ndarray:
        th = self._theta_of(np.atleast_1d(ts))
        return np.asarray(self._normal_chord(th))

    def global_depth(self) -> float:
        theta = np.linspace(0.0, TWO_PI, self._TABLE, endpoint=False)
        vals = self._normal_chord(theta)
        k = int(np.argmin(vals))
        lo = theta[(k - 1) % len(theta)]
        hi = lo + 2 * TWO_PI / self._TABLE
        for _ in range(3):  # local refinement rounds
            grid = np.linspace(lo, hi, 64)
            v = self._normal_chord(grid)
            j = int(np.argmin(v))
            lo = grid[max(0, j - 1)]
            hi = grid[min(len(grid) - 1, j + 1)]
        tt, neg = _golden_max(lambda x: -float(self._normal_chord(x)), lo, hi)
        return min(float(np.min(vals)), -neg)

    def largest_supplementary_angle(self) -> float:
        return 0.0

    def _omega_table(self):
        m = self._TABLE
        if m not in self._omega_cache:
            theta = np.linspace(0.0, TWO_PI, 2 * m, endpoint=False)
            x, y = self._frame_point(theta)
            nu = self._normal_angle_lifted(theta)
            self._omega_cache[m] = (theta, np.column_stack((x, y)), nu)
        return self._omega_cache[m]

    def modulus_of_continuity(self, t: float) -> tuple[float, float]:
        if t < 0:
            raise DomainError("chord distance must be nonnegative")
        if t >= self.width() - 1e-12:
            return math.pi, math.pi
        _, pts, nu = self._omega_table()
        n = len(pts)
        ptsx = np.concatenate((pts, pts))
        nux = np.concatenate((nu, nu + TWO_PI))
        best = 0.0
        j = 0
        for i in range(n):
            j = max(j, i)
            while j + 1 < i + n:
                d = math.hypot(ptsx[j + 1, 0] - pts[i, 0], ptsx[j + 1, 1] - pts[i, 1])
                if d <= t and nux[j + 1] - nu[i] <= math.pi + 1e-12:
                    j += 1
                else:
                    break
            if j > i:
                best = max(best, nux[j] - nu[i])
        w = min(best, math.pi)
        return w, w

    def _omega_arc(self, s: float) -> float:
        grid = np.linspace(0.0, self._L, 2048, endpoint=False)
        a0 = self._normal_angle_batch(grid)
        a1 = self._normal_angle_batch(grid + s)
        return float(np.max(a1 - a0))

    def _normal_angle_batch(self, ts):
        ts = np.asarray(ts, dtype=float)
        wraps = np.floor(ts / self._L)
        tm = ts - wraps * self._L
        th = self._theta_of(tm)
        return self._normal_angle_lifted(th) + wraps * TWO_PI

    def mu(self) -> float:
        lo, hi = 0.0, self.width()
        for _ in range(60):
            mid = 0.5 * (lo + hi)
            if self.modulus_of_continuity(mid)[1] >= HALF_PI:
                hi = mid
            else:
                lo = mid
        return 0.5 * (lo + hi)

    def circularity_radius(self) -> Optional[float]:
        return self.a**2 / self.b  # reciprocal of the minimal curvature b/a^2

    def contains(self, z: complex, tol: float = 0.0) -> bool:
        x, y = self._to_frame(z)
        if (x / self.a) ** 2 + (y / self.b) ** 2 <= 1.0 + 1e-15:
            return True
        return abs(z - self.project(z)) <= tol + 1e-15

    def _to_frame(self, z: complex) -> tuple[float, float]:
        dx = z.real - self.center.real
        dy = z.imag - self.center.imag
        return (self._cos * dx + self._sin * dy, -self._sin * dx + self._cos * dy)

    def project(self, z: complex) -> complex:
        x, y = self._to_frame(z)
        if (x / self.a) ** 2 + (y / self.b) ** 2 <= 1.0:
            return z
        px, py = _ellipse_closest_point(self.a, self.b, x, y)
        wx, wy = self._to_world(px, py)
        return complex(wx, wy)

    def boundary_distance(self, z: complex) -> float:
        x, y = self._to_frame(z)
        px, py = _ellipse_closest_point(self.a, self.b, x, y)
        return math.hypot(x - px, y - py)

    def centroid(self) -> complex:
        return self.center

    def scaled(self, factor: float, about: Optional[complex] = None) -> "Ellipse":
        c = self.center if about is None else about
        nc = c + factor * (self.center - c)
        return Ellipse((nc.real, nc.imag), self.a * factor, self.b * factor,
                       self.rotation)

    def spec_dict(self) -> dict:
        return {"type": "ellipse", "center": [self.center.real, self.center.imag],
                "a": self.a, "b": self.b, "rotation": self.rotation}


def _ellipse_closest_point(a: float, b: float, x: float, y: float) -> tuple[float, float]:
    """Nearest boundary point of an axis-aligned ellipse (robust bisection).

    Works in the first quadrant via symmetry; solves for the Lagrange
    multiplier of the projection, which is monotone, so plain bisection is
    globally convergent and deterministic.
    """
    sx = 1.0 if x >= 0 else -1.0
    sy = 1.0 if y >= 0 else -1.0
    x, y = abs(x), abs(y)
    if x < 1e-300 and y < 1e-300:
        return 0.0, sy * b
    # multiplier s solves (a x/(s+a^2))^2 + (b y/(s+b^2))^2 = 1
    lo = -(b * b) + b * y  # g(lo) >= 1
    hi = math.hypot(a * x, b * y)  # g grows small for large s
    def g(s):
        return (a * x / (s + a * a)) ** 2 + (b * y / (s + b * b)) ** 2
    while g(hi) > 1.0:
        hi = 2.0 * hi + 1.0
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if g(mid) > 1.0:
            lo = mid
        else:
            hi = mid
        if hi - lo <= 1e-15 * max(1.0, abs(hi)):
            break
    s = 0.5 * (lo + hi)
    px = a * a * x / (s + a * a)
    py = b * b * y / (s + b * b)
    # clamp to the boundary
    norm = math.hypot(px / a, py / b)
    if norm > 0:
        px, py = px / norm, py / norm
    return sx * px, sy * py


# ---------------------------------------------------------------------------
# construction helpers and ingestion
# ---------------------------------------------------------------------------


def regular_polygon(k: int, side: float = 1.0, center=(0.0, 0.0),
                    rotation: float = 0.0) -> Polygon:
    """Regular k-gon with the given side length, counterclockwise."""
    if k < 3:
        raise DomainError("regular polygon needs k >= 3")
    circum = side / (2.0 * math.sin(math.pi / k))
    ang = rotation + TWO_PI * np.arange(k) / k
    cx, cy = center
    return Polygon(np.column_stack((cx + circum * np.cos(ang),
                                    cy + circum * np.sin(ang))))


def domain_from_dict(spec: dict) -> ConvexDomain:
    """Build a domain from the shared JSON description.

    ``{"type": "polygon", "vertices": [[x, y], ...]}``,
    ``{"type": "disk", "center": [x, y], "radius": r}`` or
    ``{"type": "ellipse", "center": [x, y], "a": a, "b": b, "rotation": t}``.
    """
    if not isinstance(spec, dict):
        raise DomainError("domain description must be a JSON object")
    kind = spec.get("type")
    try:
        if kind == "polygon":
            return Polygon(spec["vertices"])
        if kind == "disk":
            return Disk(spec["center"], spec["radius"])
        if kind == "ellipse":
            return Ellipse(spec["center"], spec["a"], spec["b"],
                           spec.get("rotation", 0.0))
    except KeyError as exc:
        raise DomainError(f"missing field {exc.args[0]!r} for type {kind!r}") from exc
    raise DomainError(f"unknown domain type {kind!r}")


def load_domain(path) -> ConvexDomain:
    with open(path, "r", encoding="utf-8") as fh:
        try:
            spec = json.load(fh)
        except json.JSONDecodeError as exc:
            raise DomainError(f"invalid JSON in {path}: {exc}") from exc
    return domain_from_dict(spec)
