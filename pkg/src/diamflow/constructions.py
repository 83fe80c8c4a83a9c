"""Generators for the configuration families.

* regular n-gons, scaled so the diameter is exactly 2;
* the push family: the diameter at angle theta_k = 2 pi k / n is translated
  rigidly along itself by delta_k = (c/n) p(theta_k);
* the single-diameter move, which translates only the pair (1, -1).
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .geometry import Configuration
from .profiles import LINEAR, Profile


def _half_circle(n: int) -> tuple[np.ndarray, np.ndarray]:
    k = np.arange(n // 2)
    theta = 2.0 * math.pi * k / n
    return theta, np.exp(1j * theta)


def _check_even(n: int) -> None:
    if not isinstance(n, (int, np.integer)) or n < 4 or n % 2:
        raise ValueError(f"n must be an even integer >= 4, got {n!r}")


def regular_ngon(n: int) -> Configuration:
    """Regular n-gon of diameter 2.

    Even n gives the n-th roots of unity, with ``z[k + n/2] == -z[k]``
    bit-for-bit. Odd n is scaled by 1/cos(pi/(2n)) so the longest diagonal
    is 2.
    """
    if not isinstance(n, (int, np.integer)) or n < 2:
        raise ValueError(f"n must be an integer >= 2, got {n!r}")
    n = int(n)
    if n % 2 == 0:
        _, e = _half_circle(n)
        pts = np.concatenate([e, -e])
    else:
        pts = np.exp(2j * math.pi * np.arange(n) / n) / math.cos(math.pi / (2 * n))
    return Configuration(pts, f"ngon-{n}")


@dataclass(frozen=True)
class ConstructionSpec:
    n: int
    c: float
    profile: Profile = field(default=LINEAR)

    def __post_init__(self):
        _check_even(self.n)
        if not math.isfinite(self.c):
            raise ValueError(f"push strength must be finite, got {self.c!r}")

    def build(self) -> Configuration:
        return push_construction(self.n, self.c, self.profile)


def push_offsets(n: int, c: float, profile: Profile = LINEAR) -> np.ndarray:
    """delta_k = (c/n) p(2 pi k/n) for k = 0 .. n/2 - 1."""
    _check_even(n)
    theta, _ = _half_circle(n)
    return (c / n) * np.asarray(profile(theta), dtype=float)


def push_construction(n: int, c: float, profile: Profile = LINEAR) -> Configuration:
    """z_k = (1 + delta_k) e^{i theta_k},  z_{k+n/2} = -(1 - delta_k) e^{i theta_k}.

    Each antipodal pair keeps its separation of exactly 2; with ``c == 0``
    the result equals :func:`regular_ngon` bit-for-bit.
    """
    _check_even(n)
    if not math.isfinite(c):
        raise ValueError(f"push strength must be finite, got {c!r}")
    _, e = _half_circle(n)
    delta = push_offsets(n, c, profile)
    pts = np.concatenate([(1.0 + delta) * e, -((1.0 - delta) * e)])
    return Configuration(pts, f"push-{profile.label}-n{n}-c{c:.12g}")


def single_diameter_move(n: int, eps: float) -> Configuration:
    """Regular even n-gon with the pair (1, -1) shifted by ``+eps`` along the real axis."""
    _check_even(n)
    if not (eps >= 0.0 and math.isfinite(eps)):
        raise ValueError(f"eps must be finite and >= 0, got {eps!r}")
    pts = np.array(regular_ngon(n).points)
    pts[0] += eps
    pts[n // 2] += eps
    return Configuration(pts, f"move-n{n}-eps{eps:.12g}")
