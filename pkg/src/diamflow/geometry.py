"""Planar point configurations, their diameter and log(Delta).

Points are stored as complex numbers. ``Delta`` is the product of
|z_i - z_j| over ordered pairs i != j, i.e. the absolute discriminant of the
monic polynomial with these roots. It is only ever handled in the log domain.
"""
from __future__ import annotations

import io
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, TextIO, Union

import numpy as np

from . import kernels
from .errors import DegenerateConfigurationError

PathOrStream = Union[str, os.PathLike, TextIO]


@dataclass(frozen=True, eq=False)
class Configuration:
    """An ordered set of ``n >= 2`` finite planar points.

    Order is significant: constructions place the antipode of point ``k`` at
    index ``k + n/2``.
    """

    points: np.ndarray
    label: str = ""
    _re: np.ndarray = field(init=False, repr=False, compare=False)
    _im: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        pts = np.array(self.points, dtype=np.complex128).reshape(-1)
        if pts.shape[0] < 2:
            raise ValueError(f"need at least 2 points, got {pts.shape[0]}")
        if not np.all(np.isfinite(pts)):
            raise ValueError("configuration contains non-finite coordinates")
        pts.setflags(write=False)
        re = np.ascontiguousarray(pts.real)
        im = np.ascontiguousarray(pts.imag)
        re.setflags(write=False)
        im.setflags(write=False)
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "_re", re)
        object.__setattr__(self, "_im", im)

    @property
    def n(self) -> int:
        return self.points.shape[0]

    def __len__(self) -> int:
        return self.n

    def __eq__(self, other):
        if not isinstance(other, Configuration):
            return NotImplemented
        return self.label == other.label and np.array_equal(self.points, other.points)

    @classmethod
    def from_xy(cls, xy: Iterable[tuple[float, float]], label: str = "") -> "Configuration":
        arr = np.asarray(list(xy), dtype=float).reshape(-1, 2)
        return cls(arr[:, 0] + 1j * arr[:, 1], label)

    def transformed(self, scale: complex = 1.0, shift: complex = 0.0) -> "Configuration":
        """The configuration ``scale * z + shift`` (a similarity map)."""
        return Configuration(scale * self.points + shift, self.label)


def diameter(config: Configuration) -> float:
    """Largest pairwise Euclidean distance (exact O(n^2) scan)."""
    d2, _, _ = kernels.max_pair_dist2(config._re, config._im, False)
    return math.sqrt(d2)


def log_discriminant(config: Configuration, workers: int | None = None) -> float:
    """``log Delta = 2 * sum_{i<j} ln|z_i - z_j|`` with compensated summation.

    The default serial mode is deterministic. ``workers > 1`` opts into
    splitting rows across threads; chunk totals are combined with
    :func:`math.fsum` and can differ from the serial value by rounding only.
    """
    n = config.n
    if workers is None or workers <= 1 or n < 256:
        total = kernels.pair_log_sum(config._re, config._im, 0, n)
    else:
        bounds = _balanced_row_chunks(n, 4 * workers)
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(
                lambda b: kernels.pair_log_sum(config._re, config._im, b[0], b[1]),
                bounds,
            ))
        total = -math.inf if any(p == -math.inf for p in parts) else math.fsum(parts)
    if total == -math.inf:
        raise DegenerateConfigurationError(
            f"configuration {config.label!r} has coincident points"
        )
    return 2.0 * total


def _balanced_row_chunks(n: int, pieces: int) -> list[tuple[int, int]]:
    # row i carries n-1-i pairs; cut so each chunk holds ~equal pair counts
    total = n * (n - 1) / 2
    cuts = [0]
    acc = 0.0
    target = total / pieces
    for i in range(n):
        acc += n - 1 - i
        if acc >= target * len(cuts) and len(cuts) < pieces:
            cuts.append(i + 1)
    cuts.append(n)
    return [(a, b) for a, b in zip(cuts[:-1], cuts[1:]) if b > a]


def log_ratio(config: Configuration, workers: int | None = None) -> float:
    """``log Delta - n ln n``; zero for the regular even n-gon."""
    n = config.n
    return log_discriminant(config, workers) - n * math.log(n)


def rescale_to_diameter(config: Configuration, target: float = 2.0) -> Configuration:
    d = diameter(config)
    if d <= 0.0:
        raise DegenerateConfigurationError("cannot rescale a zero-diameter configuration")
    return Configuration(config.points * (target / d), config.label)


# -- text file format -------------------------------------------------------

def read_configuration(source: PathOrStream, label: str | None = None) -> Configuration:
    """Parse ``re im`` lines; ``#`` starts a comment, blank lines are skipped."""
    if hasattr(source, "read"):
        text = source.read()
        name = getattr(source, "name", "")
    else:
        with open(source, encoding="utf-8") as fh:
            text = fh.read()
        name = os.fspath(source)
    pts = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ValueError(f"{name}:{lineno}: expected 're im', got {raw!r}")
        pts.append(complex(float(parts[0]), float(parts[1])))
    return Configuration(np.array(pts), label if label is not None else os.path.basename(str(name)))


def format_configuration(config: Configuration) -> str:
    buf = io.StringIO()
    buf.write(f"# {config.label or 'configuration'} n={config.n}\n")
    for z in config.points:
        buf.write(f"{z.real:.17g} {z.imag:.17g}\n")
    return buf.getvalue()


def write_configuration(config: Configuration, dest: PathOrStream) -> None:
    text = format_configuration(config)
    if hasattr(dest, "write"):
        dest.write(text)
    else:
        with open(dest, "w", encoding="utf-8") as fh:
            fh.write(text)
