"""Certified oscillation bounds as evaluable formulas with applicability.

Each certificate records its numeric value, the norm it applies to
(boundary L^q versus sup only), why it does or does not apply to the
domain at hand, and a short literature attribution.  Sup-norm-only
certificates are never aggregated into finite-q comparisons.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .geometry import ConvexDomain, Disk, Ellipse
from .norms import QuadratureConfig, h_set
from .polynomials import MonicPolynomial


@dataclass(frozen=True)
class BoundCertificate:
    name: str
    kind: str                  # "lower" | "upper"
    norm: str                  # "lq" (any boundary L^q incl. sup) | "sup"
    applicable: bool
    reason: str
    value: Optional[float]
    citation: str

    def as_dict(self) -> dict:
        return {"name": self.name, "kind": self.kind, "norm": self.norm,
                "applicable": self.applicable, "reason": self.reason,
                "value": self.value, "citation": self.citation}


# ---------------------------------------------------------------------------
# closed-form certificate values
# ---------------------------------------------------------------------------


def turan_disk(n: int) -> float:
    """n/2 on the unit disk."""
    _check_degree(n)
    return n / 2.0


def turan_interval(n: int) -> float:
    """sqrt(n)/6 on the unit interval (sup norm reference constant)."""
    _check_degree(n)
    return math.sqrt(n) / 6.0


def circular_bound(radius: float, n: int) -> float:
    """n/(2R) whenever every boundary point has a circumscribed R-disk."""
    _check_degree(n)
    if radius <= 0:
        raise ValueError("radius must be positive")
    return n / (2.0 * radius)


def erod_ellipse(b: float, n: int) -> float:
    """(b/2) n for the ellipse with semi-axes 1 and b (sup norm)."""
    _check_degree(n)
    if not 0 < b < 1:
        raise ValueError("need 0 < b < 1 with the major semi-axis normalized to 1")
    return 0.5 * b * n


def levenberg_poletsky(d: float, n: int) -> float:
    """sqrt(n)/(20 d) for any compact convex set (sup norm)."""
    _check_degree(n)
    _check_positive(d, "diameter")
    return math.sqrt(n) / (20.0 * d)


def halasz_revesz(w: float, d: float, n: int) -> float:
    """0.0003 (w/d^2) n for any bounded convex domain (sup norm)."""
    _check_degree(n)
    _check_positive(w, "width")
    _check_positive(d, "diameter")
    return 0.0003 * w / d**2 * n


def malik_govil(radius: float, n: int) -> float:
    """Exact factor for unit-disk zeros with the norm on a concentric R-disk."""
    _check_degree(n)
    if radius < 0:
        raise ValueError("radius must be nonnegative")
    if radius <= 1.0:
        return n / (1.0 + radius)
    return n / (1.0 + radius**n)


def malik_lq_sup(q: float, n: int) -> float:
    """Sup-derivative versus L^q-norm constant on the unit circle."""
    _check_degree(n)
    if q <= 0:
        raise ValueError("q must be positive")
    factor = math.gamma(q / 2.0 + 1.0) / (2.0 * math.sqrt(math.pi)
                                          * math.gamma(q / 2.0 + 0.5))
    return factor ** (1.0 / q) * n / 2.0


def gabriel_lower(d: float) -> float:
    """Degree-free floor 1/(45.3 d) for boundary L^q norms."""
    _check_positive(d, "diameter")
    return 1.0 / (45.3 * d)


def posdepth_bound(depth: float, d: float, n: int) -> float:
    """(h^4 / (3000 d^5)) n; vacuous (zero) for zero-depth domains."""
    _check_degree(n)
    _check_positive(d, "diameter")
    if depth < 0:
        raise ValueError("depth must be nonnegative")
    return depth**4 / (3000.0 * d**5) * n


def posdepth_bound_sharp(depth: float, d: float, n: int, q: float) -> float:
    """Tighter 1500 * 2^(1/q) variant; informational only, never asserted."""
    _check_degree(n)
    _check_positive(d, "diameter")
    return depth**4 / (1500.0 * 2.0 ** (1.0 / q) * d**5) * n


def _check_degree(n: int) -> None:
    if n < 1:
        raise ValueError("degree must be at least 1")


def _check_positive(x: float, name: str) -> None:
    if not x > 0:
        raise ValueError(f"{name} must be positive")


# ---------------------------------------------------------------------------
# the convex profile behind the depth constants
# ---------------------------------------------------------------------------


def depth_profile(t):
    """(1/t) log((1-3t)/(1-6t)) - 4 log(4 pi) t + 16 t log t on (0, 1/8]."""
    t = np.asarray(t, dtype=float)
    ratio = np.log1p(-3.0 * t) - np.log1p(-6.0 * t)
    return ratio / t - 4.0 * math.log(4.0 * math.pi) * t + 16.0 * t * np.log(t)


def depth_profile_derivative(t):
    t = np.asarray(t, dtype=float)
    ratio = np.log1p(-3.0 * t) - np.log1p(-6.0 * t)
    inner = -3.0 / (1.0 - 3.0 * t) + 6.0 / (1.0 - 6.0 * t)
    return (-ratio / t**2 + inner / t
            - 4.0 * math.log(4.0 * math.pi) + 16.0 + 16.0 * np.log(t))


_PROFILE_TAU = 0.078628


@dataclass(frozen=True)
class DepthProfileReport:
    grid_min: float
    argmin: float
    supporting_line_bound: float
    value_at_tau: float
    derivative_at_tau: float
    convex: bool
    passed: bool

    def as_dict(self) -> dict:
        return {"grid_min": self.grid_min, "argmin": self.argmin,
                "supporting_line_bound": self.supporting_line_bound,
                "value_at_tau": self.value_at_tau,
                "derivative_at_tau": self.derivative_at_tau,
                "convex": self.convex, "passed": self.passed}


def depth_profile_check(grid_size: int = 100_000) -> DepthProfileReport:
    """Grid minimum and a supporting-line floor of the profile on (0, 1/8].

    Both must exceed 0.7 for the depth constants to be valid; the profile
    is convex, so the tangent at tau = 0.078628 is a global floor.
    """
    if grid_size < 1000:
        raise ValueError("grid must have at least 1000 points")
    half = grid_size // 2
    grid = np.unique(np.concatenate((
        np.geomspace(1e-9, 0.125, half),
        np.linspace(1e-6, 0.125, grid_size - half),
        [_PROFILE_TAU, 0.125],
    )))
    vals = depth_profile(grid)
    k = int(np.argmin(vals))
    f_tau = float(depth_profile(_PROFILE_TAU))
    fp_tau = float(depth_profile_derivative(_PROFILE_TAU))
    line_floor = f_tau + fp_tau * (0.125 - _PROFILE_TAU)
    # discrete convexity via second divided differences on the sorted grid
    x0, x1, x2 = grid[:-2], grid[1:-1], grid[2:]
    dd = ((vals[2:] - vals[1:-1]) / (x2 - x1)
          - (vals[1:-1] - vals[:-2]) / (x1 - x0))
    convex = bool(np.all(dd >= -1e-9))
    grid_min = float(vals[k])
    return DepthProfileReport(
        grid_min=grid_min, argmin=float(grid[k]),
        supporting_line_bound=line_floor, value_at_tau=f_tau,
        derivative_at_tau=fp_tau, convex=convex,
        passed=grid_min > 0.7 and line_floor > 0.7 and convex)


# ---------------------------------------------------------------------------
# pointwise check on the threshold set
# ---------------------------------------------------------------------------


@dataclass
class PointwiseDepthReport:
    passed: bool
    worst_margin: float          # min over samples of |p'| - bound * |p|
    worst_parameter: Optional[float]
    samples: int

    def as_dict(self) -> dict:
        return {"passed": self.passed, "worst_margin": self.worst_margin,
                "worst_parameter": self.worst_parameter, "samples": self.samples}


def localdepth_pointwise_check(domain: ConvexDomain, p: MonicPolynomial,
                               q: float,
                               cfg: QuadratureConfig = QuadratureConfig(),
                               n_samples: int = 512) -> PointwiseDepthReport:
    """|p'| >= (h^4/(1500 d^5)) n |p| at sampled threshold-set points.

    h is the local depth at the sampled boundary point.  Failures report
    the exact parameter for reproduction.
    """
    intervals = h_set(domain, p, q)
    if not intervals:
        return PointwiseDepthReport(True, math.inf, None, 0)
    lengths = np.array([b - a for a, b in intervals])
    total = float(np.sum(lengths))
    counts = np.maximum(1, np.round(n_samples * lengths / total)).astype(int)
    ts = np.concatenate([
        a + (np.arange(c) + 0.5) / c * (b - a)
        for (a, b), c in zip(intervals, counts)
    ])
    L = domain.perimeter()
    ts = np.mod(ts, L)
    d = domain.diameter()
    n = p.degree
    z = domain.point_complex(ts)
    lhs = np.abs(p.eval_derivative(z))
    depth = domain.local_depth_batch(ts)
    rhs = depth**4 / (1500.0 * d**5) * n * np.abs(p(z))
    margins = lhs - rhs
    k = int(np.argmin(margins))
    worst = float(margins[k])
    return PointwiseDepthReport(
        passed=bool(np.all(margins >= -1e-9 * np.maximum(lhs, rhs))),
        worst_margin=worst, worst_parameter=float(ts[k]), samples=len(ts))


# ---------------------------------------------------------------------------
# upper construction and aggregation
# ---------------------------------------------------------------------------


UPPER_CONVEX_FACTOR = 4.0 * math.pi + 2.0


def upper_construction(domain: ConvexDomain, n: int
                       ) -> tuple[MonicPolynomial, float]:
    """The n-fold zero at a diameter endpoint and its upper certificate.

    For convex domains the boundary is one closed curve of length at most
    2 pi d, so the certificate simplifies to (4 pi + 2) n / d; the measured
    oscillation of the returned polynomial never exceeds it, and at q = inf
    it equals n/d exactly.
    """
    _check_degree(n)
    z0, _ = domain.diameter_endpoints()
    p = MonicPolynomial([z0] * n)
    return p, UPPER_CONVEX_FACTOR * n / domain.diameter()


def upper_general_factor(d: float, L: float, ell: float, n: int) -> float:
    """(2/d) (L + min(d, ell)) / min(d, ell) * n for a boundary component of length ell."""
    lam = min(d, ell)
    return 2.0 / d * (L + lam) / lam * n


def best_lower_bound(domain: ConvexDomain, n: int, q: float
                     ) -> tuple[list[BoundCertificate], Optional[BoundCertificate]]:
    """All applicable lower certificates for the requested norm, plus the best.

    Finite q aggregates only certificates valid for boundary L^q norms;
    q = inf additionally admits the sup-norm-only ones.
    """
    _check_degree(n)
    d = domain.diameter()
    w = domain.width()
    h = domain.global_depth()
    certs: list[BoundCertificate] = []

    r = domain.circularity_radius()
    if r is not None:
        certs.append(BoundCertificate(
            "circular", "lower", "lq", True,
            f"circumscribing disks of radius {r:.6g} exist at every boundary point",
            circular_bound(r, n), "Erod 1939; Levenberg-Poletsky 2002"))
    else:
        certs.append(BoundCertificate(
            "circular", "lower", "lq", False,
            "flat boundary pieces admit no circumscribing tangent disk",
            None, "Erod 1939; Levenberg-Poletsky 2002"))

    if h > 1e-12:
        certs.append(BoundCertificate(
            "positive_depth", "lower", "lq", True,
            f"positive depth {h:.6g}",
            posdepth_bound(h, d, n), "depth-based bound, constant 3000"))
    else:
        certs.append(BoundCertificate(
            "positive_depth", "lower", "lq", False, "zero depth",
            None, "depth-based bound, constant 3000"))

    certs.append(BoundCertificate(
        "gabriel_floor", "lower", "lq", True, "any convex domain",
        gabriel_lower(d), "Gabriel 1932 inner-curve comparison"))

    if math.isinf(q):
        certs.append(BoundCertificate(
            "width_over_diameter", "lower", "sup", True, "any convex domain",
            halasz_revesz(w, d, n), "Halasz-Revesz 2006"))
        certs.append(BoundCertificate(
            "sqrt_degree", "lower", "sup", True, "any compact convex set",
            levenberg_poletsky(d, n), "Levenberg-Poletsky 2002"))
        if isinstance(domain, Ellipse) and abs(domain.a - 1.0) <= 1e-12 \
                and domain.b < 1.0:
            certs.append(BoundCertificate(
                "ellipse_minor_axis", "lower", "sup", True,
                f"ellipse with unit major semi-axis and b={domain.b:.6g}",
                erod_ellipse(domain.b, n), "Erod 1939"))
        if isinstance(domain, Disk) and abs(domain.radius - 1.0) <= 1e-12:
            certs.append(BoundCertificate(
                "unit_disk", "lower", "sup", True, "unit disk",
                turan_disk(n), "Turan 1939"))

    applicable = [c for c in certs if c.applicable and c.value is not None]
    best = max(applicable, key=lambda c: c.value) if applicable else None
    return certs, best
