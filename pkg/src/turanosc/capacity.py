"""Chebyshev constants, transfinite diameter, and Fekete-point estimates.

Closed forms are provided where classical formulas exist (segments,
disks, regular polygons); everything else is estimated numerically from
seeded, deterministic multi-start searches over boundary coordinates.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Union

import numpy as np
from scipy.optimize import minimize

from .geometry import ConvexDomain, Disk, Polygon, _golden_max


@dataclass(frozen=True)
class Segment:
    """A straight segment in the plane, endpoints distinct."""

    start: complex
    end: complex

    def __post_init__(self):
        if self.start == self.end:
            raise ValueError("segment endpoints must be distinct")

    @property
    def length(self) -> float:
        return abs(self.end - self.start)


@dataclass(frozen=True)
class RealIntervalUnion:
    """Disjoint closed real intervals, sorted by left endpoint."""

    intervals: tuple[tuple[float, float], ...]

    def __post_init__(self):
        ivs = tuple(sorted((float(a), float(b)) for a, b in self.intervals))
        if not ivs:
            raise ValueError("need at least one interval")
        for a, b in ivs:
            if not b > a:
                raise ValueError("intervals must be nondegenerate")
        for (_, b0), (a1, _) in zip(ivs[:-1], ivs[1:]):
            if a1 <= b0:
                raise ValueError("intervals must be disjoint")
        object.__setattr__(self, "intervals", ivs)

    @property
    def total_length(self) -> float:
        return sum(b - a for a, b in self.intervals)


CompactSet = Union[Segment, RealIntervalUnion, ConvexDomain]


def _mix_seed(master: int, index: int) -> int:
    """splitmix64-style mixing so parallel and serial restart orders agree."""
    x = (master + (index + 1) * 0x9E3779B97F4A7C15) % (1 << 64)
    x ^= x >> 30
    x = (x * 0xBF58476D1CE4E5B9) % (1 << 64)
    x ^= x >> 27
    x = (x * 0x94D049BB133111EB) % (1 << 64)
    return x ^ (x >> 31)


def segment_chebyshev_lower(segment_length: float, k: int) -> float:
    """Floor 2 (len/4)^k for the minimax monic norm on a segment."""
    if segment_length <= 0:
        raise ValueError("segment length must be positive")
    if k < 1:
        raise ValueError("degree must be at least 1")
    return 2.0 * (segment_length / 4.0) ** k


def regular_kgon_transfinite_diameter(k: int, side: float = 1.0) -> float:
    """Gamma-function closed form for the regular k-gon of the given side."""
    if k < 3:
        raise ValueError("need k >= 3")
    return (math.gamma(1.0 / k)
            / (math.sqrt(math.pi) * 2.0 ** (1.0 + 2.0 / k)
               * math.gamma(0.5 + 1.0 / k))) * side


def _regular_polygon_side(domain: Polygon) -> Optional[float]:
    lens = domain._edge_len
    turns = domain._turns
    if np.ptp(lens) <= 1e-9 * lens[0] and np.ptp(turns) <= 1e-9:
        return float(lens[0])
    return None


def transfinite_diameter_exact(obj: CompactSet) -> Optional[float]:
    """Closed-form transfinite diameter where a classical formula applies."""
    if isinstance(obj, Segment):
        return obj.length / 4.0
    if isinstance(obj, RealIntervalUnion):
        if len(obj.intervals) == 1:
            a, b = obj.intervals[0]
            return (b - a) / 4.0
        return None
    if isinstance(obj, Disk):
        return obj.radius
    if isinstance(obj, Polygon):
        side = _regular_polygon_side(obj)
        if side is not None:
            return regular_kgon_transfinite_diameter(len(obj.vertices), side)
    return None


# ---------------------------------------------------------------------------
# coordinates on a compact set
# ---------------------------------------------------------------------------


class _Coords:
    """Map a scalar coordinate to points of the set (boundary for domains)."""

    def __init__(self, obj: CompactSet):
        self.obj = obj
        if isinstance(obj, Segment):
            self.total = obj.length
            self.closed = False
        elif isinstance(obj, RealIntervalUnion):
            self.total = obj.total_length
            self.closed = False
            self._starts = np.concatenate(
                ([0.0], np.cumsum([b - a for a, b in obj.intervals])))
        elif isinstance(obj, ConvexDomain):
            self.total = obj.perimeter()
            self.closed = True
        else:
            raise TypeError(f"unsupported set {type(obj).__name__}")

    def points(self, u: np.ndarray) -> np.ndarray:
        u = np.asarray(u, dtype=float)
        obj = self.obj
        if isinstance(obj, Segment):
            frac = np.clip(u / self.total, 0.0, 1.0)
            return obj.start + frac * (obj.end - obj.start)
        if isinstance(obj, RealIntervalUnion):
            uu = np.clip(u, 0.0, self.total)
            idx = np.clip(np.searchsorted(self._starts, uu, side="right") - 1,
                          0, len(obj.intervals) - 1)
            out = np.empty(u.shape, dtype=complex)
            for i, (a, b) in enumerate(obj.intervals):
                mask = idx == i
                out[mask] = a + np.minimum(uu[mask] - self._starts[i], b - a)
            return out
        return obj.point_complex(np.mod(u, self.total))

    def clamp(self, u: float) -> float:
        if self.closed:
            return u % self.total
        return min(self.total, max(0.0, u))


# ---------------------------------------------------------------------------
# Fekete points
# ---------------------------------------------------------------------------


@dataclass
class FeketeResult:
    value: float                     # geometric mean of pairwise distances
    points: np.ndarray
    m: int
    restarts: int
    log_product: float
    per_restart: list[float] = field(default_factory=list)


def _pair_log_sum(points: np.ndarray) -> float:
    d = np.abs(points[:, None] - points[None, :])
    iu = np.triu_indices(len(points), 1)
    vals = d[iu]
    if np.any(vals == 0.0):
        return -math.inf
    return float(np.sum(np.log(vals)))


def transfinite_diameter_fekete(obj: CompactSet, m: int, seed: int = 0,
                                restarts: int = 16, coarse: int = 96,
                                max_sweeps: int = 60,
                                rel_stop: float = 1e-10) -> FeketeResult:
    """Seeded multi-start search for the m-point diameter.

    Maximizes the geometric mean of pairwise distances over m points on
    the set (the boundary suffices for domains), by coordinate-wise
    coarse-grid plus golden-section sweeps.  The result is the classical
    m-point diameter: nonincreasing in m, converging to the transfinite
    diameter from above.  Deterministic for a fixed seed; restarts derive
    independent sub-seeds and ties go to the lowest restart index.
    """
    if m < 2:
        raise ValueError("need at least two points")
    coords = _Coords(obj)
    pair_count = m * (m - 1) / 2.0
    best_logv = -math.inf
    best_u = None
    per_restart = []

    for r in range(restarts):
        rng = np.random.default_rng(_mix_seed(seed, r))
        if r == 0 and coords.closed:
            u = coords.total * (np.arange(m) + rng.random()) / m  # spread start
        else:
            u = np.sort(rng.random(m)) * coords.total
        logv = _pair_log_sum(coords.points(u))
        for _ in range(max_sweeps):
            prev = logv
            for i in range(m):
                u[i] = _best_coordinate(coords, u, i, coarse)
            logv = _pair_log_sum(coords.points(u))
            if logv - prev <= abs(prev) * rel_stop + 1e-14:
                break
        per_restart.append(math.exp(logv / pair_count))
        if logv > best_logv + 1e-15:
            best_logv = logv
            best_u = u.copy()

    pts = coords.points(best_u)
    return FeketeResult(value=math.exp(best_logv / pair_count), points=pts,
                        m=m, restarts=restarts, log_product=best_logv,
                        per_restart=per_restart)


def _best_coordinate(coords: _Coords, u: np.ndarray, i: int, coarse: int) -> float:
    others = coords.points(np.delete(u, i))

    def score(uu: float) -> float:
        d = np.abs(coords.points(np.array([uu]))[0] - others)
        if np.any(d == 0.0):
            return -math.inf
        return float(np.sum(np.log(d)))

    if coords.closed:
        grid = np.linspace(0.0, coords.total, coarse, endpoint=False)
    else:
        grid = np.linspace(0.0, coords.total, coarse)
    pts = coords.points(grid)
    d = np.abs(pts[:, None] - others[None, :])
    with np.errstate(divide="ignore"):
        scores = np.sum(np.log(d), axis=1)
    scores = np.where(np.isfinite(scores), scores, -np.inf)
    k = int(np.argmax(scores))
    step = coords.total / coarse
    lo = grid[k] - step
    hi = grid[k] + step
    if not coords.closed:
        lo, hi = max(0.0, lo), min(coords.total, hi)
    cand, val = _golden_max(score, lo, hi)
    cand = coords.clamp(cand)
    if score(u[i]) >= val:
        return u[i]
    return cand


# ---------------------------------------------------------------------------
# numerical Chebyshev minimax
# ---------------------------------------------------------------------------


@dataclass
class MinimaxResult:
    value: float
    nodes: np.ndarray          # the optimal zero placements
    warning: bool              # restarts disagreed or iteration cap was hit
    sampled_bias: float        # refined max minus the sampled max (>= 0)


def chebyshev_min_norm(obj: CompactSet, k: int, seed: int = 0,
                       restarts: int = 6, samples: int = 4096) -> MinimaxResult:
    """min over w in C^k of max over the set of |prod (z - w_j)|.

    The inner max uses dense sampling (the sampled max never exceeds the
    true max; the final value is re-refined by golden section and the bias
    is reported).  Nelder-Mead over the 2k real coordinates, multi-start.
    """
    if not 1 <= k <= 6:
        raise ValueError("degree must be between 1 and 6")
    coords = _Coords(obj)
    grid = np.linspace(0.0, coords.total, samples, endpoint=not coords.closed)
    zs = coords.points(grid)

    def sampled_max(w: np.ndarray) -> float:
        vals = np.ones(len(zs))
        for wj in w:
            vals = vals * np.abs(zs - wj)
        return float(np.max(vals))

    def objective(x: np.ndarray) -> float:
        return sampled_max(x[0::2] + 1j * x[1::2])

    centroid = complex(np.mean(zs))
    radius = float(np.max(np.abs(zs - centroid)))
    starts = []
    # Chebyshev-style nodes along the longest axis of the set
    zmax = zs[int(np.argmax(np.abs(zs - centroid)))]
    axis = (zmax - centroid) if abs(zmax - centroid) > 0 else 1.0
    cheb = centroid + axis * np.cos((2 * np.arange(k) + 1) * math.pi / (2 * k))
    starts.append(cheb)
    starts.append(np.full(k, centroid, dtype=complex))
    ring = centroid + 0.5 * radius * np.exp(2j * math.pi * np.arange(k) / k)
    starts.append(ring)
    for r in range(max(0, restarts - len(starts))):
        rng = np.random.default_rng(_mix_seed(seed, r))
        idx = rng.integers(0, len(zs), size=k)
        starts.append(zs[idx] * 0.8 + 0.2 * centroid)

    best = None
    warned = False
    for w0 in starts[:max(restarts, 3)]:
        x0 = np.empty(2 * k)
        x0[0::2] = np.real(w0)
        x0[1::2] = np.imag(w0)
        res = minimize(objective, x0, method="Nelder-Mead",
                       options={"maxiter": 2000 * k, "fatol": 1e-13,
                                "xatol": 1e-11, "maxfev": 4000 * k})
        warned = warned or not res.success
        if best is None or res.fun < best.fun:
            best = res

    w = best.x[0::2] + 1j * best.x[1::2]

    def along(t: float) -> float:
        z = coords.points(np.array([coords.clamp(t)]))[0]
        vals = 1.0
        for wj in w:
            vals *= abs(z - wj)
        return vals

    sampled = sampled_max(w)
    k0 = int(np.argmax(np.abs(np.prod(zs[:, None] - w[None, :], axis=1))))
    step = coords.total / samples
    _, refined = _golden_max(along, grid[k0] - step, grid[k0] + step)
    value = max(sampled, refined)
    return MinimaxResult(value=value, nodes=w, warning=warned,
                         sampled_bias=value - sampled)


# ---------------------------------------------------------------------------
# total-length vs transfinite-diameter comparison on the real line
# ---------------------------------------------------------------------------


@dataclass
class LengthCapacityReport:
    total_length: float
    fekete_value: float
    bound: float               # 4 * fekete_value
    holds: bool
    margin_fraction: float     # (bound - length) / bound
    low_margin: bool           # margin under 5 percent: rerun with larger m

    def as_dict(self) -> dict:
        return {"total_length": self.total_length,
                "fekete_value": self.fekete_value, "bound": self.bound,
                "holds": self.holds, "margin_fraction": self.margin_fraction,
                "low_margin": self.low_margin}


def polya_check(intervals: RealIntervalUnion, m: int = 32, seed: int = 0,
                restarts: int = 8) -> LengthCapacityReport:
    """Check total length <= 4 * (m-point diameter) for real interval unions.

    The m-point diameter over-estimates the transfinite diameter, so the
    inequality must hold; a margin under 5 percent flags that a larger m
    is needed for a meaningful comparison.
    """
    fek = transfinite_diameter_fekete(intervals, m, seed=seed, restarts=restarts)
    length = intervals.total_length
    bound = 4.0 * fek.value
    margin = (bound - length) / bound if bound > 0 else -math.inf
    return LengthCapacityReport(
        total_length=length, fekete_value=fek.value, bound=bound,
        holds=length <= bound + 1e-9, margin_fraction=margin,
        low_margin=margin < 0.05)
