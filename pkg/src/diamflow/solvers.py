"""Largest push that keeps the diameter at 2, found by bisection.

The antipodal pairs (k, k + n/2) of a push configuration are exactly 2 apart
by construction, so the feasibility predicate skips them and requires every
other pair to stay within distance 2.
"""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from typing import Callable

import numpy as np

from . import kernels
from .constructions import push_construction, regular_ngon, single_diameter_move
from .errors import SolverError
from .flow import field_values
from .geometry import Configuration
from .profiles import LINEAR, Profile

C_UPPER = 8.0
EPS_UPPER = 1.0
C_TOL = 1e-10
EPS_TOL = 1e-12


@dataclass(frozen=True)
class Bisection:
    lo: float
    hi: float
    iterations: int


def bisect(pred: Callable[[float], bool], lo: float, hi: float, tol: float) -> Bisection:
    """Shrink [lo, hi] with pred(lo) true and pred(hi) false until hi - lo <= tol."""
    if tol <= 0.0:
        raise ValueError("tol must be positive")
    if not pred(lo):
        raise SolverError(f"predicate is false at the lower bracket {lo!r}")
    if pred(hi):
        raise SolverError(f"predicate is still true at the upper bracket {hi!r}")
    it = 0
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        if pred(mid):
            lo = mid
        else:
            hi = mid
        it += 1
    return Bisection(lo, hi, it)


def push_feasible(n: int, c: float, profile: Profile = LINEAR) -> bool:
    cfg = push_construction(n, c, profile)
    return not kernels.any_pair_exceeds(cfg._re, cfg._im, 4.0, True)


def pair_angle(a: complex, b: complex) -> float:
    """Angle in [0, pi] between the directions of a and b."""
    return abs(math.atan2((a * b.conjugate()).imag, (a * b.conjugate()).real))


def binding_pair(config: Configuration) -> tuple[int, int, float]:
    """Non-antipodal pair of largest distance: ``(i, j, distance)``."""
    d2, i, j = kernels.max_pair_dist2(config._re, config._im, True)
    return i, j, math.sqrt(d2)


@dataclass(frozen=True)
class BindingReport:
    c_max: float
    c_upper: float
    binding_pair: tuple[int, int]
    binding_angle: float
    binding_distance: float
    iterations: int
    n: int
    profile: str

    def to_dict(self) -> dict:
        d = asdict(self)
        d["binding_pair"] = list(self.binding_pair)
        return d


def c_max(n: int, profile: Profile = LINEAR, tol: float = C_TOL,
          upper: float = C_UPPER) -> BindingReport:
    if n < 4 or n % 2:
        raise ValueError(f"n must be an even integer >= 4, got {n!r}")
    if not push_feasible(n, tol, profile):
        raise SolverError(f"no feasible push for n={n}, profile={profile.label}")
    res = bisect(lambda c: push_feasible(n, c, profile), tol, upper, tol)
    cfg = push_construction(n, res.lo, profile)
    i, j, dist = binding_pair(cfg)
    angle = pair_angle(complex(cfg.points[i]), complex(cfg.points[j]))
    return BindingReport(res.lo, res.hi, (i, j), angle, dist, res.iterations, n, profile.label)


def t_max(n: int, profile: Profile = LINEAR, tol: float = C_TOL) -> float:
    """Flow time that reaches c_max: ``c_max / n``."""
    return c_max(n, profile, tol).c_max / n


def t_max_estimate(n: int, profile: Profile = LINEAR) -> float:
    """First-order flow-time estimate from the regular n-gon.

    Solving |z_i - z_j| |1 + rho_ij t| = 2 to first order gives
    t_ij = -ln(|z_i - z_j|/2) / Re rho_ij; the minimum over pairs moving
    apart (Re rho > 0, antipodes skipped) estimates the binding time.
    """
    z = regular_ngon(n).points
    v = field_values(z, profile)
    h = n // 2
    best = math.inf
    for i in range(n - 1):
        dz = z[i] - z[i + 1:]
        rho = (v[i] - v[i + 1:]) / dz
        dist = np.abs(dz)
        ok = rho.real > 0
        if i + h < n:
            ok[h - 1] = False
        if np.any(ok):
            t = -np.log(dist[ok] / 2.0) / rho.real[ok]
            best = min(best, float(t.min()))
    return best


def _move_feasible(n: int, eps: float) -> bool:
    z = single_diameter_move(n, eps).points
    h = n // 2
    others = np.delete(z, [0, h])
    return bool(np.all(np.abs(z[0] - others) <= 2.0) and np.all(np.abs(z[h] - others) <= 2.0))


def eps_max(n: int, tol: float = EPS_TOL, upper: float = EPS_UPPER) -> float:
    """Largest shift of the pair (1, -1) keeping its distances to the rest <= 2."""
    if n < 4 or n % 2:
        raise ValueError(f"n must be an even integer >= 4, got {n!r}")
    return bisect(lambda e: _move_feasible(n, e), 0.0, upper, tol).lo
