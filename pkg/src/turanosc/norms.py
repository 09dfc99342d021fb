"""Boundary L^q and sup norms, oscillation ratios, and threshold-set machinery.

Integrals are adaptive Gauss-Legendre panel quadratures in the arc-length
parameter.  Corners of polygons are always panel boundaries, so every
panel sees a smooth integrand; the error estimate per panel is the
difference between the single-panel rule and its two-half refinement.
Panel sums run in a fixed order, so results are reproducible bit for bit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .geometry import ConvexDomain
from .polynomials import MonicPolynomial

GABRIEL_CONSTANT = math.pi * (math.e + 1.0) + math.e  # ~14.4


@dataclass(frozen=True)
class QuadratureConfig:
    nodes_per_panel: int = 32
    initial_panels_per_arc: int = 4
    rel_tol: float = 1e-9
    max_depth: int = 12

    def __post_init__(self):
        if self.rel_tol <= 0:
            raise ValueError("tolerance must be positive")
        if self.max_depth < 1:
            raise ValueError("refinement depth must be at least 1")


@dataclass
class BoundaryMeasureReport:
    """Norms and oscillation ratio of one polynomial on one boundary."""

    q: float  # math.inf for the sup-norm ratio
    lq_norm_p: float
    lq_norm_dp: float
    sup_norm_p: float
    oscillation: float
    error_p: float
    error_dp: float
    h_intervals: list[tuple[float, float]] = field(default_factory=list)
    tolerance_flag: bool = False  # refinement depth exhausted somewhere

    def as_dict(self) -> dict:
        return {
            "q": "inf" if math.isinf(self.q) else self.q,
            "lq_norm_p": self.lq_norm_p,
            "lq_norm_dp": self.lq_norm_dp,
            "sup_norm_p": self.sup_norm_p,
            "oscillation": self.oscillation,
            "error_p": self.error_p,
            "error_dp": self.error_dp,
            "h_intervals": [list(iv) for iv in self.h_intervals],
            "tolerance_flag": self.tolerance_flag,
        }


_GAUSS_CACHE: dict[int, tuple[np.ndarray, np.ndarray]] = {}


def _gauss(n: int) -> tuple[np.ndarray, np.ndarray]:
    if n not in _GAUSS_CACHE:
        _GAUSS_CACHE[n] = np.polynomial.legendre.leggauss(n)
    return _GAUSS_CACHE[n]


def _panel_batch(g: Callable, a: np.ndarray, b: np.ndarray, n: int) -> np.ndarray:
    """Gauss rule applied to a whole batch of panels in one integrand call."""
    x, w = _gauss(n)
    mid = 0.5 * (a + b)
    half = 0.5 * (b - a)
    nodes = mid[:, None] + half[:, None] * x[None, :]
    vals = np.asarray(g(nodes.ravel()), dtype=float).reshape(nodes.shape)
    return half * (vals @ w)


def adaptive_batch(g: Callable, a, b, tol, n: int, max_depth: int
                   ) -> tuple[float, float, bool]:
    """Level-synchronous adaptive quadrature over a list of seed panels.

    Each level compares every active panel against its two-half refinement
    and keeps splitting the rejects; all panels of a level are evaluated in
    one vectorized call.  Panel sums use numpy's pairwise reduction in a
    fixed order, so results are identical run to run.
    """
    a = np.atleast_1d(np.asarray(a, dtype=float))
    b = np.atleast_1d(np.asarray(b, dtype=float))
    tol = np.broadcast_to(np.asarray(tol, dtype=float), a.shape).copy()
    total = 0.0
    err_total = 0.0
    flag = False
    for depth in range(max_depth + 1):
        if len(a) == 0:
            break
        m = 0.5 * (a + b)
        whole = _panel_batch(g, a, b, n)
        left = _panel_batch(g, a, m, n)
        right = _panel_batch(g, m, b, n)
        refined = left + right
        err = np.abs(whole - refined)
        if depth == max_depth:
            total += float(np.sum(refined))
            err_total += float(np.sum(err))
            flag = flag or bool(np.any(err > tol))
            break
        accept = err <= tol
        total += float(np.sum(refined[accept]))
        err_total += float(np.sum(err[accept]))
        keep = ~accept
        a = np.concatenate((a[keep], m[keep]))
        b = np.concatenate((m[keep], b[keep]))
        tol = np.concatenate((0.5 * tol[keep], 0.5 * tol[keep]))
    return total, err_total, flag


def _arc_panels(domain: ConvexDomain, cfg: QuadratureConfig,
                window: Optional[tuple[float, float]] = None) -> list[tuple[float, float]]:
    """Initial panels: smooth-arc pieces split ``initial_panels_per_arc`` ways.

    ``window`` restricts to a parameter interval (mod L allowed via end >
    start up to one full period); corner parameters inside the window stay
    panel boundaries.
    """
    L = domain.perimeter()
    breaks = np.asarray(domain.arc_breaks(), dtype=float)
    if window is None:
        lo, hi = 0.0, L
    else:
        lo, hi = window
    cuts = [lo]
    for k in (0.0, 1.0, 2.0):
        for brk in breaks + k * L:
            if lo + 1e-13 < brk < hi - 1e-13:
                cuts.append(float(brk))
    cuts.append(hi)
    cuts = sorted(set(cuts))
    panels = []
    for a, b in zip(cuts[:-1], cuts[1:]):
        if b - a <= 1e-13:
            continue
        m = cfg.initial_panels_per_arc
        sub = np.linspace(a, b, m + 1)
        panels.extend(zip(sub[:-1], sub[1:]))
    return panels


def integrate_boundary(domain: ConvexDomain, g: Callable, cfg: QuadratureConfig,
                       window: Optional[tuple[float, float]] = None
                       ) -> tuple[float, float, bool]:
    """Adaptive integral of g(t) dt over the boundary parameter (or a window).

    Returns (value, error estimate, depth-exhausted flag).
    """
    panels = _arc_panels(domain, cfg, window)
    a = np.array([p[0] for p in panels])
    b = np.array([p[1] for p in panels])
    coarse = float(np.sum(_panel_batch(g, a, b, cfg.nodes_per_panel)))
    total_len = float(np.sum(b - a))
    tol_abs = cfg.rel_tol * max(abs(coarse), 1e-300)
    shares = tol_abs * (b - a) / total_len
    return adaptive_batch(g, a, b, shares, cfg.nodes_per_panel, cfg.max_depth)


def boundary_lq_norm(domain: ConvexDomain, f: Callable, q: float,
                     cfg: QuadratureConfig = QuadratureConfig()
                     ) -> tuple[float, float, bool]:
    """(integral of |f(gamma(t))|^q dt)^(1/q) with an error estimate.

    ``f`` maps complex boundary points to complex values; q must be finite
    and >= 1.
    """
    if not (q >= 1.0) or math.isinf(q):
        raise ValueError("q must lie in [1, inf)")

    def g(t):
        return np.abs(f(domain.point_complex(np.asarray(t)))) ** q

    integral, err, flag = integrate_boundary(domain, g, cfg)
    norm = integral ** (1.0 / q)
    # first-order propagation of the integral error to the norm
    norm_err = err * norm / (q * integral) if integral > 0 else err
    return norm, norm_err, flag


_SUP_SAMPLES = 8192  # enough that the bracket holds the true max for n <= 64


def boundary_sup_norm(domain: ConvexDomain, p, samples: int = _SUP_SAMPLES
                      ) -> tuple[float, float]:
    """Sup of |p| over the boundary: dense scan plus golden-section refinement.

    Returns (value, argmax parameter).  Corner parameters are always in the
    sample set, so polygon maxima at vertices are hit exactly.
    """
    L = domain.perimeter()
    ts = np.unique(np.concatenate((
        np.linspace(0.0, L, samples, endpoint=False),
        np.mod(np.asarray(domain.arc_breaks(), dtype=float), L),
    )))
    vals = np.abs(p(domain.point_complex(ts)))
    k = int(np.argmax(vals))
    best_t, best_v = float(ts[k]), float(vals[k])
    lo = float(ts[k - 1]) if k > 0 else float(ts[-1]) - L
    hi = float(ts[k + 1]) if k + 1 < len(ts) else float(ts[0]) + L

    invphi = (math.sqrt(5.0) - 1.0) / 2.0
    a, b = lo, hi
    c = b - invphi * (b - a)
    d = a + invphi * (b - a)

    def f(t):
        return float(np.abs(p(domain.point_complex(np.array([t % L]))))[0])

    fc, fd = f(c), f(d)
    for _ in range(80):
        if b - a <= 1e-13 * max(1.0, L):
            break
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - invphi * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + invphi * (b - a)
            fd = f(d)
    t_ref, v_ref = (c, fc) if fc >= fd else (d, fd)
    if v_ref > best_v:
        best_t, best_v = t_ref % L, v_ref
    return best_v, best_t


def h_threshold(q: float, n: int, sup_norm: float) -> float:
    """Threshold c * n^(-2/q) * sup with c = (8 pi (q+1))^(-1/q)."""
    c = (8.0 * math.pi * (q + 1.0)) ** (-1.0 / q)
    return c * n ** (-2.0 / q) * sup_norm


def h_set(domain: ConvexDomain, p: MonicPolynomial, q: float,
          samples: int = _SUP_SAMPLES) -> list[tuple[float, float]]:
    """Parameter intervals where |p| exceeds the h-threshold (strictly).

    Endpoints are bisected to 1e-10 in the parameter.  A wrapped interval
    is returned as (a, b + L) with b < a, so lengths are always end - start.
    """
    if not (q >= 1.0) or math.isinf(q):
        raise ValueError("q must lie in [1, inf)")
    L = domain.perimeter()
    sup, _ = boundary_sup_norm(domain, p)
    thr = h_threshold(q, p.degree, sup)

    ts = np.unique(np.concatenate((
        np.linspace(0.0, L, samples, endpoint=False),
        np.mod(np.asarray(domain.arc_breaks(), dtype=float), L),
    )))
    vals = np.abs(p(domain.point_complex(ts)))
    above = vals > thr
    if np.all(above):
        return [(0.0, L)]
    if not np.any(above):
        return []

    def g(t):
        return float(np.abs(p(domain.point_complex(np.array([t % L]))))[0]) - thr

    def bisect(lo, hi):
        # g(lo), g(hi) have opposite signs
        while hi - lo > 1e-10:
            mid = 0.5 * (lo + hi)
            if (g(mid) > 0.0) == (g(lo) > 0.0):
                lo = mid
            else:
                hi = mid
        return 0.5 * (lo + hi)

    m = len(ts)
    edges = []
    for i in range(m):
        j = (i + 1) % m
        if above[i] != above[j]:
            lo = float(ts[i])
            hi = float(ts[j]) if j != 0 else float(ts[0]) + L
            edges.append((bisect(lo, hi), bool(above[i])))
    edges.sort()
    intervals = []
    # edges alternate rise/fall; pair each rise with the following fall
    rises = [e[0] for e in edges if not e[1]]   # above goes False -> True after t
    falls = [e[0] for e in edges if e[1]]       # True -> False after t
    for r in rises:
        later = [f for f in falls if f > r]
        end = later[0] if later else falls[0] + L
        intervals.append((r, end))
    intervals.sort()
    return intervals


def integrate_h_mass(domain: ConvexDomain, p: MonicPolynomial, q: float,
                     intervals, cfg: QuadratureConfig) -> float:
    def g(t):
        return np.abs(p(domain.point_complex(np.asarray(t)))) ** q

    total = 0.0
    for a, b in intervals:
        v, _, _ = integrate_boundary(domain, g, cfg, window=(a, b))
        total += v
    return total


def oscillation_ratio(domain: ConvexDomain, p: MonicPolynomial, q: float,
                      cfg: QuadratureConfig = QuadratureConfig(),
                      with_h_set: bool = True) -> BoundaryMeasureReport:
    """Full report: ||p||_q, ||p'||_q, ||p||_inf and M_q = ||p'||_q / ||p||_q.

    q = inf routes both norms through the sup-norm sampler.
    """
    sup_p, _ = boundary_sup_norm(domain, p)
    if math.isinf(q):
        sup_dp, _ = boundary_sup_norm(domain, p.eval_derivative)
        return BoundaryMeasureReport(
            q=math.inf, lq_norm_p=sup_p, lq_norm_dp=sup_dp, sup_norm_p=sup_p,
            oscillation=sup_dp / sup_p, error_p=0.0, error_dp=0.0)
    np_, ep, fp = boundary_lq_norm(domain, p, q, cfg)
    nd, ed, fd = boundary_lq_norm(domain, p.eval_derivative, q, cfg)
    intervals = h_set(domain, p, q) if with_h_set else []
    return BoundaryMeasureReport(
        q=q, lq_norm_p=np_, lq_norm_dp=nd, sup_norm_p=sup_p,
        oscillation=nd / np_, error_p=ep, error_dp=ed,
        h_intervals=intervals, tolerance_flag=fp or fd)


# ---------------------------------------------------------------------------
# Named checks
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    margin: float
    detail: str = ""

    def as_dict(self) -> dict:
        return {"name": self.name, "passed": self.passed,
                "margin": self.margin, "detail": self.detail}


def nikolskii_check(domain: ConvexDomain, p: MonicPolynomial, q: float,
                    cfg: QuadratureConfig = QuadratureConfig()) -> CheckResult:
    """||p||_q >= (d/(2(q+1)))^(1/q) * ||p||_inf * n^(-2/q)."""
    lhs, err, _ = boundary_lq_norm(domain, p, q, cfg)
    sup, _ = boundary_sup_norm(domain, p)
    d = domain.diameter()
    rhs = (d / (2.0 * (q + 1.0))) ** (1.0 / q) * sup * p.degree ** (-2.0 / q)
    margin = lhs - rhs
    return CheckResult("nikolskii", margin >= -1e-8 * max(lhs, rhs),
                       margin, f"lhs={lhs:.6g} rhs={rhs:.6g}")


def h_mass_check(domain: ConvexDomain, p: MonicPolynomial, q: float,
                 cfg: QuadratureConfig = QuadratureConfig()) -> CheckResult:
    """The threshold set carries at least half of ||p||_q^q."""
    norm, _, _ = boundary_lq_norm(domain, p, q, cfg)
    total = norm ** q
    intervals = h_set(domain, p, q)
    mass = integrate_h_mass(domain, p, q, intervals, cfg)
    ratio = mass / total if total > 0 else 0.0
    return CheckResult("h_mass", ratio >= 0.5 - 1e-8, ratio - 0.5,
                       f"mass_ratio={ratio:.6g} intervals={len(intervals)}")


def markov_sup_check(domain: ConvexDomain, p: MonicPolynomial) -> CheckResult:
    """Max-norm Markov sanity: ||p'||_inf <= (4/d) n^2 ||p||_inf."""
    sup_p, _ = boundary_sup_norm(domain, p)
    sup_dp, _ = boundary_sup_norm(domain, p.eval_derivative)
    bound = 4.0 / domain.diameter() * p.degree**2 * sup_p
    margin = bound - sup_dp
    return CheckResult("markov_sup", margin >= -1e-8 * bound, margin,
                       f"sup_dp={sup_dp:.6g} bound={bound:.6g}")


def _segment_integral(seg, g, cfg: QuadratureConfig) -> float:
    a, b = seg
    length = abs(b - a)

    def h(t):
        t = np.asarray(t)
        pts = a + (t / length) * (b - a)
        return g(pts)

    seeds = np.linspace(0.0, length, cfg.initial_panels_per_arc + 1)
    lo, hi = seeds[:-1], seeds[1:]
    coarse = float(np.sum(_panel_batch(h, lo, hi, cfg.nodes_per_panel)))
    tol = cfg.rel_tol * max(abs(coarse), 1e-300) / len(lo)
    v, _, _ = adaptive_batch(h, lo, hi, tol, cfg.nodes_per_panel, cfg.max_depth)
    return v


def gabriel_check(outer: ConvexDomain, inner, p: MonicPolynomial, lam: float,
                  cfg: QuadratureConfig = QuadratureConfig()) -> CheckResult:
    """Integral of |p|^lam over an inner convex curve vs the outer boundary.

    ``inner`` is a ConvexDomain or a segment pair (z0, z1); a segment is a
    degenerate closed curve and is traversed twice.  Containment of the
    inner curve in the outer domain is a precondition.
    """
    if lam < 0:
        raise ValueError("exponent must be nonnegative")

    def g(z):
        return np.abs(p(np.asarray(z))) ** lam

    if isinstance(inner, ConvexDomain):
        probe = inner.point_complex(np.linspace(0.0, inner.perimeter(), 257))
        if not all(outer.contains(complex(z), 1e-9) for z in probe):
            raise ValueError("inner curve is not contained in the outer domain")
        ic, _, _ = integrate_boundary(inner, lambda t: g(inner.point_complex(np.asarray(t))), cfg)
    else:
        z0, z1 = complex(inner[0]), complex(inner[1])
        for z in (z0, z1, 0.5 * (z0 + z1)):
            if not outer.contains(z, 1e-9):
                raise ValueError("inner segment is not contained in the outer domain")
        ic = 2.0 * _segment_integral((z0, z1), g, cfg)
    og, _, _ = integrate_boundary(outer, lambda t: g(outer.point_complex(np.asarray(t))), cfg)
    ratio = ic / og if og > 0 else math.inf
    return CheckResult("gabriel", ratio <= GABRIEL_CONSTANT + 1e-8,
                       GABRIEL_CONSTANT - ratio, f"ratio={ratio:.6g}")


def gabriel_lower_check(domain: ConvexDomain, p: MonicPolynomial, q: float,
                        cfg: QuadratureConfig = QuadratureConfig()) -> CheckResult:
    """||p'||_q > ||p||_q / (45.3 d) for polynomials with a zero in the domain."""
    np_, _, _ = boundary_lq_norm(domain, p, q, cfg)
    nd, _, _ = boundary_lq_norm(domain, p.eval_derivative, q, cfg)
    floor = np_ / (45.3 * domain.diameter())
    margin = nd - floor
    return CheckResult("gabriel_lower", margin > -1e-8 * max(nd, floor), margin,
                       f"dp_norm={nd:.6g} floor={floor:.6g}")
