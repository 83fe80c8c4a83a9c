"""Push profiles p(theta) on [0, pi].

A profile says how far the diameter at angle theta is pushed, relative to the
push at theta = 0. The same function drives the configurations, the vector
field and the critical integral.
"""
from __future__ import annotations

import math
import os
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import ProfileError

#: Profiles whose Lipschitz constant exceeds this are refused by the quadrature.
DEFAULT_LIPSCHITZ_LIMIT = 1e6


@dataclass(frozen=True, eq=False)
class Profile:
    """``kind`` is ``"linear"`` (1 - 2 theta/pi), ``"cosine"`` or ``"table"``.

    Table profiles interpolate ``(thetas, values)`` piecewise linearly and must
    cover the whole of [0, pi].
    """

    kind: str
    thetas: Optional[np.ndarray] = None
    values: Optional[np.ndarray] = None
    name: str = ""

    def __post_init__(self):
        if self.kind not in ("linear", "cosine", "table"):
            raise ProfileError(f"unknown profile kind {self.kind!r}")
        if self.kind != "table":
            return
        if self.thetas is None or self.values is None:
            raise ProfileError("table profile needs thetas and values")
        th = np.array(self.thetas, dtype=float).reshape(-1)
        pv = np.array(self.values, dtype=float).reshape(-1)
        if th.shape != pv.shape or th.size < 2:
            raise ProfileError("table profile needs >= 2 (theta, p) samples of equal length")
        if not (np.all(np.isfinite(th)) and np.all(np.isfinite(pv))):
            raise ProfileError("table profile contains non-finite samples")
        if np.any(np.diff(th) <= 0.0):
            # repeated theta means a jump: not Lipschitz
            raise ProfileError("table thetas must be strictly increasing")
        if th[0] > 0.0 or th[-1] < math.pi:
            raise ProfileError(
                f"table must cover [0, pi], got [{th[0]:.6g}, {th[-1]:.6g}]"
            )
        th.setflags(write=False)
        pv.setflags(write=False)
        object.__setattr__(self, "thetas", th)
        object.__setattr__(self, "values", pv)

    @property
    def label(self) -> str:
        return self.name or self.kind

    def __call__(self, theta):
        theta = np.asarray(theta, dtype=float)
        if self.kind == "linear":
            out = 1.0 - 2.0 * theta / math.pi
        elif self.kind == "cosine":
            out = np.cos(theta)
        else:
            out = np.interp(theta, self.thetas, self.values)
        return out if out.ndim else float(out)

    def derivative(self, theta):
        """dp/dtheta; at table kinks, the mean of the two one-sided slopes."""
        theta = np.asarray(theta, dtype=float)
        if self.kind == "linear":
            out = np.full(theta.shape, -2.0 / math.pi)
        elif self.kind == "cosine":
            out = -np.sin(theta)
        else:
            slopes = np.diff(self.values) / np.diff(self.thetas)
            last = slopes.size - 1
            right = np.clip(np.searchsorted(self.thetas, theta, side="right") - 1, 0, last)
            left = np.clip(np.searchsorted(self.thetas, theta, side="left") - 1, 0, last)
            out = 0.5 * (slopes[left] + slopes[right])
        return out if out.ndim else float(out)

    def lipschitz_constant(self) -> float:
        if self.kind == "linear":
            return 2.0 / math.pi
        if self.kind == "cosine":
            return 1.0
        return float(np.max(np.abs(np.diff(self.values) / np.diff(self.thetas))))

    def is_antisymmetric(self, atol: float = 1e-12) -> bool:
        """Whether p(pi - theta) = -p(theta), i.e. the field obeys v(-z) = v(z)."""
        if self.kind != "table":
            return True
        th = np.union1d(self.thetas[(self.thetas >= 0) & (self.thetas <= math.pi)],
                        math.pi - self.thetas[(self.thetas >= 0) & (self.thetas <= math.pi)])
        return bool(np.allclose(self(math.pi - th), -self(th), rtol=0.0, atol=atol))

    # -- constructors --------------------------------------------------------

    @classmethod
    def linear(cls) -> "Profile":
        return cls("linear")

    @classmethod
    def cosine(cls) -> "Profile":
        return cls("cosine")

    @classmethod
    def from_table(cls, thetas, values, name: str = "table") -> "Profile":
        return cls("table", np.asarray(thetas, float), np.asarray(values, float), name)

    @classmethod
    def zero(cls) -> "Profile":
        return cls.from_table([0.0, math.pi], [0.0, 0.0], name="zero")

    @classmethod
    def load(cls, path) -> "Profile":
        """Read a two-column ``theta p`` text file (``#`` comments allowed)."""
        try:
            data = np.loadtxt(path, comments="#", ndmin=2)
        except ValueError as exc:
            raise ProfileError(f"cannot parse profile table {path}: {exc}") from exc
        if data.shape[1] != 2:
            raise ProfileError(f"profile table {path} must have two columns")
        return cls.from_table(data[:, 0], data[:, 1], name=f"table:{os.fspath(path)}")

    @classmethod
    def parse(cls, text: str) -> "Profile":
        """``linear``, ``cosine`` or ``table:PATH``."""
        if text in ("linear", "cosine"):
            return cls(text)
        if text.startswith("table:"):
            return cls.load(text[len("table:"):])
        raise ProfileError(f"unknown profile {text!r}; use linear, cosine or table:PATH")


LINEAR = Profile.linear()
COSINE = Profile.cosine()
