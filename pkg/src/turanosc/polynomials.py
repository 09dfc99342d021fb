"""Monic polynomials represented by their zero sets.

There is deliberately no coefficient form anywhere: evaluation works on
the zero product, which is stable for the degrees and magnitudes this
package targets (n <= 64, |z - z_j| <= 1e3).  Multiplicities are
repeated entries and are never deduplicated.
"""

from __future__ import annotations

import json
import math

import numpy as np

from .geometry import ConvexDomain

TWO_PI = 2.0 * math.pi

_POLE_GUARD = 1e-12


class PoleError(ZeroDivisionError):
    """Logarithmic derivative requested within the pole guard of a zero."""


class MonicPolynomial:
    """p(z) = prod_j (z - z_j) for a fixed ordered zero list."""

    def __init__(self, zeros):
        z = np.atleast_1d(np.asarray(zeros, dtype=complex))
        if z.ndim != 1 or len(z) < 1:
            raise ValueError("need at least one zero")
        if not np.all(np.isfinite(z)):
            raise ValueError("zeros must be finite")
        self.zeros = z
        self.zeros.setflags(write=False)

    @property
    def degree(self) -> int:
        return len(self.zeros)

    def __call__(self, z):
        return self.eval(z)

    def eval(self, z):
        z = np.asarray(z, dtype=complex)
        d = z[..., None] - self.zeros
        return np.prod(d, axis=-1)

    def eval_derivative(self, z):
        """p'(z) = sum_i prod_{j != i} (z - z_j), stable at and near zeros."""
        z = np.asarray(z, dtype=complex)
        d = z[..., None] - self.zeros
        n = self.degree
        if n == 1:
            return np.ones(z.shape, dtype=complex)
        pref = np.ones_like(d)
        suf = np.ones_like(d)
        pref[..., 1:] = np.cumprod(d[..., :-1], axis=-1)
        suf[..., :-1] = np.cumprod(d[..., :0:-1], axis=-1)[..., ::-1]
        return np.sum(pref * suf, axis=-1)

    def log_derivative(self, z):
        """p'/p(z) = sum_j 1/(z - z_j); errors out within 1e-12 of a zero."""
        z = np.asarray(z, dtype=complex)
        d = z[..., None] - self.zeros
        if np.any(np.abs(d) < _POLE_GUARD):
            raise PoleError("evaluation point within 1e-12 of a zero")
        return np.sum(1.0 / d, axis=-1)

    def zeros_in_domain(self, domain: ConvexDomain, tol: float = 0.0) -> bool:
        if tol < 0:
            raise ValueError("tolerance must be nonnegative")
        return all(domain.contains(complex(z), tol) for z in self.zeros)

    def offending_zeros(self, domain: ConvexDomain, tol: float = 0.0) -> list[complex]:
        return [complex(z) for z in self.zeros if not domain.contains(complex(z), tol)]

    def sector_count(self, apex: complex, lo: float, hi: float) -> int:
        """Zeros with arg(z - apex) in [lo, hi] mod 2*pi.

        A zero equal to the apex has no argument and is counted in every
        sector.
        """
        if lo > hi:
            raise ValueError("need lo <= hi")
        rel = self.zeros - apex
        at_apex = np.abs(rel) == 0.0
        width = hi - lo
        if width >= TWO_PI:
            return self.degree
        ang = (np.angle(rel[~at_apex]) - lo) % TWO_PI
        inside = (ang <= width + 1e-15) | (ang >= TWO_PI - 1e-15)
        return int(np.count_nonzero(at_apex)) + int(np.count_nonzero(inside))

    def scaled(self, factor: complex) -> "MonicPolynomial":
        return MonicPolynomial(self.zeros * factor)

    def spec_dict(self) -> dict:
        return {"zeros": [[z.real, z.imag] for z in self.zeros]}


def zeros_from_dict(spec: dict) -> MonicPolynomial:
    """Read ``{"zeros": [[re, im], ...]}``."""
    if not isinstance(spec, dict) or "zeros" not in spec:
        raise ValueError('zero set description needs a "zeros" field')
    pairs = spec["zeros"]
    try:
        zs = [complex(p[0], p[1]) for p in pairs]
    except (TypeError, IndexError) as exc:
        raise ValueError("zeros must be [re, im] pairs") from exc
    return MonicPolynomial(zs)


def load_zeros(path) -> MonicPolynomial:
    with open(path, "r", encoding="utf-8") as fh:
        spec = json.load(fh)
    return zeros_from_dict(spec)
