"""Derivative-free minimization of the oscillation ratio over zero sets.

Multi-start Nelder-Mead over the 2n real zero coordinates; every proposal
is clamped to the domain by nearest-point projection before evaluation.
The objective is piecewise smooth (zeros crossing the boundary, sup-norm
branches), which is why a simplex search is used instead of gradients.
Runs are deterministic for a fixed master seed: restart r uses the
splitmix-style sub-seed mix(seed, r) and the reduction takes the best
value with the lowest restart index on ties.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np
from scipy.optimize import minimize

from .bounds import best_lower_bound, localdepth_pointwise_check
from .capacity import _mix_seed
from .geometry import ConvexDomain
from .norms import (QuadratureConfig, boundary_lq_norm, boundary_sup_norm,
                    gabriel_check, gabriel_lower_check, h_mass_check,
                    markov_sup_check, nikolskii_check, oscillation_ratio)
from .polynomials import MonicPolynomial


@dataclass(frozen=True)
class SearchConfig:
    restarts: int = 32
    max_iterations: int = 2000
    seed: int = 0
    tolerance: float = 1e-6
    quadrature: QuadratureConfig = field(default_factory=QuadratureConfig)

    def __post_init__(self):
        if self.restarts < 1:
            raise ValueError("need at least one restart")
        if self.tolerance <= 0:
            raise ValueError("tolerance must be positive")


@dataclass
class RestartTrace:
    seed: int
    value: float
    iterations: int

    def as_dict(self) -> dict:
        return {"seed": self.seed, "value": self.value,
                "iterations": self.iterations}


@dataclass
class SearchResult:
    best_zeros: np.ndarray
    best_value: float
    q: float
    degree: int
    trace: list[RestartTrace]
    lower_bound: Optional[float]
    lower_bound_name: Optional[str]
    lower_bound_margin: Optional[float]
    bound_violated: bool

    def as_dict(self) -> dict:
        return {
            "best_zeros": [[z.real, z.imag] for z in self.best_zeros],
            "best_value": self.best_value,
            "q": "inf" if math.isinf(self.q) else self.q,
            "degree": self.degree,
            "trace": [t.as_dict() for t in self.trace],
            "lower_bound": self.lower_bound,
            "lower_bound_name": self.lower_bound_name,
            "lower_bound_margin": self.lower_bound_margin,
            "bound_violated": self.bound_violated,
        }


def sample_interior_points(domain: ConvexDomain, n: int,
                           rng: np.random.Generator,
                           margin: float = 0.0) -> np.ndarray:
    """Rejection-sample n points of the domain (uniform over its box)."""
    pts = []
    zc, d = domain.centroid(), domain.diameter()
    lo_x, hi_x = zc.real - d, zc.real + d
    lo_y, hi_y = zc.imag - d, zc.imag + d
    while len(pts) < n:
        x = rng.uniform(lo_x, hi_x)
        y = rng.uniform(lo_y, hi_y)
        z = complex(x, y)
        if domain.contains(z, 0.0) and (margin <= 0.0
                                        or domain.boundary_distance(z) >= margin):
            pts.append(z)
    return np.array(pts, dtype=complex)


def _project_zeros(domain: ConvexDomain, x: np.ndarray) -> np.ndarray:
    zs = x[0::2] + 1j * x[1::2]
    return np.array([z if domain.contains(z, 0.0) else domain.project(z)
                     for z in zs], dtype=complex)


def minimize_oscillation(domain: ConvexDomain, n: int, q: float,
                         cfg: SearchConfig = SearchConfig()) -> SearchResult:
    """Empirical upper estimate of the least oscillation ratio at degree n."""
    if n < 1:
        raise ValueError("degree must be at least 1")
    if not (q >= 1.0):
        raise ValueError("q must lie in [1, inf]")

    if math.isinf(q):
        def objective(x: np.ndarray) -> float:
            p = MonicPolynomial(_project_zeros(domain, x))
            sup_p, _ = boundary_sup_norm(domain, p)
            sup_dp, _ = boundary_sup_norm(domain, p.eval_derivative)
            return sup_dp / sup_p
    else:
        def objective(x: np.ndarray) -> float:
            p = MonicPolynomial(_project_zeros(domain, x))
            np_, _, _ = boundary_lq_norm(domain, p, q, cfg.quadrature)
            nd, _, _ = boundary_lq_norm(domain, p.eval_derivative, q,
                                        cfg.quadrature)
            return nd / np_

    best_val = math.inf
    best_x = None
    trace: list[RestartTrace] = []
    for r in range(cfg.restarts):
        sub = _mix_seed(cfg.seed, r)
        rng = np.random.default_rng(sub)
        z0 = sample_interior_points(domain, n, rng)
        x0 = np.empty(2 * n)
        x0[0::2] = np.real(z0)
        x0[1::2] = np.imag(z0)
        res = minimize(objective, x0, method="Nelder-Mead",
                       options={"maxiter": cfg.max_iterations,
                                "maxfev": 4 * cfg.max_iterations,
                                "fatol": cfg.tolerance,
                                "xatol": cfg.tolerance * 0.1})
        trace.append(RestartTrace(seed=sub, value=float(res.fun),
                                  iterations=int(res.nit)))
        if res.fun < best_val:
            best_val = float(res.fun)
            best_x = res.x.copy()

    zeros = _project_zeros(domain, best_x)
    certs, best_cert = best_lower_bound(domain, n, q)
    bound = best_cert.value if best_cert else None
    margin = best_val - bound if bound is not None else None
    return SearchResult(
        best_zeros=zeros, best_value=best_val, q=q, degree=n, trace=trace,
        lower_bound=bound,
        lower_bound_name=best_cert.name if best_cert else None,
        lower_bound_margin=margin,
        bound_violated=bool(margin is not None and margin < -1e-8))


def gradient_consistency(domain: ConvexDomain, p: MonicPolynomial, q: float,
                         cfg: Optional[QuadratureConfig] = None) -> float:
    """Max deviation of two-step central differences of the objective.

    Guards the smoothness assumption behind the simplex search: for every
    zero coordinate the finite-difference slope at steps 1e-5 and 1e-6
    must agree (the returned max |g1/g2 - 1| should stay within 0.2).
    Components below 1e-4 of the gradient scale are skipped: they are
    exact symmetry zeros drowned in quadrature noise.  Requires all zeros
    at distance > 1e-3 from the boundary.
    """
    if cfg is None:
        cfg = QuadratureConfig(rel_tol=1e-13)
    for z in p.zeros:
        if domain.boundary_distance(complex(z)) <= 1e-3 \
                or not domain.contains(complex(z)):
            raise ValueError("zeros must lie strictly inside the domain")

    def value(zs: np.ndarray) -> float:
        pp = MonicPolynomial(zs)
        if math.isinf(q):
            sup_p, _ = boundary_sup_norm(domain, pp)
            sup_dp, _ = boundary_sup_norm(domain, pp.eval_derivative)
            return sup_dp / sup_p
        np_, _, _ = boundary_lq_norm(domain, pp, q, cfg)
        nd, _, _ = boundary_lq_norm(domain, pp.eval_derivative, q, cfg)
        return nd / np_

    base = p.zeros.copy()
    grads = []
    for h in (1e-5, 1e-6):
        g = []
        for i in range(len(base)):
            for delta in (h, 1j * h):
                zp = base.copy()
                zm = base.copy()
                zp[i] = zp[i] + delta
                zm[i] = zm[i] - delta
                g.append((value(zp) - value(zm)) / (2.0 * h))
        grads.append(np.array(g))
    g1, g2 = grads
    scale = float(np.max(np.abs(g2))) + 1e-300
    dev = 0.0
    for a, b in zip(g1, g2):
        if abs(b) > 1e-4 * scale:
            dev = max(dev, abs(a / b - 1.0))
    return dev


@dataclass
class SuiteLine:
    check: str
    degree: int
    q: float
    passed: bool
    margin: float
    detail: str = ""

    def as_dict(self) -> dict:
        return {"check": self.check, "degree": self.degree,
                "q": "inf" if math.isinf(self.q) else self.q,
                "passed": self.passed, "margin": self.margin,
                "detail": self.detail}


@dataclass
class SuiteReport:
    domain: dict
    lines: list[SuiteLine]
    all_passed: bool

    def as_dict(self) -> dict:
        return {"domain": self.domain,
                "lines": [ln.as_dict() for ln in self.lines],
                "all_passed": self.all_passed}


def verify_suite(domain: ConvexDomain, n_list, q_list,
                 cfg: SearchConfig = SearchConfig()) -> SuiteReport:
    """Search each (n, q) cell and run every inequality check on the result.

    Violations are collected in the report rather than raised.
    """
    lines: list[SuiteLine] = []
    inner = domain.scaled(0.5)
    for n in n_list:
        for q in q_list:
            res = minimize_oscillation(domain, n, q, cfg)
            margin = res.lower_bound_margin if res.lower_bound_margin is not None \
                else math.inf
            lines.append(SuiteLine(
                "search_above_certified_floor", n, q, not res.bound_violated,
                margin,
                f"best={res.best_value:.6g} floor={res.lower_bound}"
                f" ({res.lower_bound_name})"))
            p = MonicPolynomial(res.best_zeros)
            qq = 2.0 if math.isinf(q) else q
            for chk in (nikolskii_check(domain, p, qq, cfg.quadrature),
                        h_mass_check(domain, p, qq, cfg.quadrature),
                        gabriel_check(domain, inner, p, min(qq, 3.0),
                                      cfg.quadrature),
                        gabriel_lower_check(domain, p, qq, cfg.quadrature),
                        markov_sup_check(domain, p)):
                lines.append(SuiteLine(chk.name, n, q, chk.passed, chk.margin,
                                       chk.detail))
            pw = localdepth_pointwise_check(domain, p, qq, cfg.quadrature)
            lines.append(SuiteLine("localdepth_pointwise", n, q, pw.passed,
                                   pw.worst_margin,
                                   f"samples={pw.samples}"))
    return SuiteReport(domain=domain.spec_dict(), lines=lines,
                       all_passed=all(ln.passed for ln in lines))
