"""The radial vector field v(z) = p(|arg z|) z/|z|, its flow, and the differentials rho_ij.

For a push profile the flow from the regular n-gon for time c/n reproduces
the push construction, and

    log Delta(t) - log Delta(0) = sum_{i != j} log|1 + rho_ij t|,

whose Taylor coefficients are the power sums of rho.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import DegenerateConfigurationError, TaylorDomainError
from .geometry import Configuration
from .profiles import LINEAR, Profile


def field_values(points, profile: Profile = LINEAR) -> np.ndarray:
    """Vectorised v(z) for an array of nonzero complex points."""
    z = np.asarray(points, dtype=np.complex128)
    r = np.abs(z)
    if np.any(r == 0.0):
        raise ValueError("the vector field is undefined at z = 0")
    # |arg z| is pi on the whole negative real axis, so the branch choice
    # (-pi vs pi) cannot change the value
    ang = np.abs(np.angle(z))
    return np.asarray(profile(ang), dtype=float) * (z / r)


def vector_field_at(z: complex, profile: Profile = LINEAR) -> complex:
    return complex(field_values(np.array([z]), profile)[0])


def flow_map(config: Configuration, t: float, profile: Profile = LINEAR) -> Configuration:
    """Exact time-t flow ``z + t v(z)``.

    Trajectories are radial, so arg z and hence v stay constant while
    1 + t p > 0.
    """
    z = config.points
    return Configuration(z + t * field_values(z, profile), f"{config.label}+flow(t={t:.12g})")


def flow_origin(config: Configuration, t: float, profile: Profile = LINEAR) -> Configuration:
    """Inverse of :func:`flow_map`: the points that reach ``config`` after time t.

    The log expansion of a flowed configuration is taken around this origin,
    so its power sums are those of ``rho_matrix(flow_origin(...))``.
    """
    z = config.points
    return Configuration(z - t * field_values(z, profile), f"{config.label}-flow(t={t:.12g})")


def flow_euler(config: Configuration, t: float, profile: Profile = LINEAR,
               steps: int = 200) -> Configuration:
    """Explicit Euler integration of z' = v(z); a diagnostic for :func:`flow_map`."""
    z = np.array(config.points)
    h = t / steps
    for _ in range(steps):
        z = z + h * field_values(z, profile)
    return Configuration(z, f"{config.label}+euler(t={t:.12g})")


@dataclass(frozen=True, eq=False)
class RhoMatrix:
    """Lazily evaluated rho_ij = (v_i - v_j)/(z_i - z_j).

    Power sums run through the pair kernels without materialising the n x n
    matrix; :meth:`dense` builds it (NaN on the diagonal) for small n.
    """

    z: np.ndarray
    v: np.ndarray

    @property
    def n(self) -> int:
        return self.z.shape[0]

    def __getitem__(self, ij) -> complex:
        i, j = ij
        if i == j:
            raise IndexError("rho_ii is undefined")
        return complex((self.v[i] - self.v[j]) / (self.z[i] - self.z[j]))

    def dense(self) -> np.ndarray:
        dz = self.z[:, None] - self.z[None, :]
        dv = self.v[:, None] - self.v[None, :]
        np.fill_diagonal(dz, 1.0)
        out = dv / dz
        np.fill_diagonal(out, np.nan)
        return out

    def summary(self, max_power: int = 4, t: float = 0.0):
        """``(power_sums, max|rho|, envelope)``; see :func:`remainder_power_sum`."""
        sums, max_abs, env = kernels.rho_sums(
            np.ascontiguousarray(self.z.real), np.ascontiguousarray(self.z.imag),
            np.ascontiguousarray(self.v.real), np.ascontiguousarray(self.v.imag),
            max_power, t,
        )
        if not math.isfinite(max_abs):
            raise DegenerateConfigurationError("coincident points: rho is undefined")
        return [complex(s) for s in sums], max_abs, env


def rho_matrix(config: Configuration, profile: Profile = LINEAR) -> RhoMatrix:
    z = config.points
    if np.unique(z).size != z.size:
        raise DegenerateConfigurationError(
            f"configuration {config.label!r} has coincident points"
        )
    return RhoMatrix(z, field_values(z, profile))


def power_sums(rho: RhoMatrix, max_power: int) -> list[complex]:
    """``[S_1, ..., S_max_power]`` with S_m = sum over i != j of rho_ij^m."""
    if max_power < 1:
        raise ValueError("max_power must be >= 1")
    sums, _, _ = rho.summary(max_power)
    return sums


def remainder_power_sum(config: Configuration, profile: Profile, t: float) -> float:
    """sum |rho_ij|^4 / (1 - |rho_ij| t)^4.

    Each term increases with t, so the value at t bounds |sum rho_ij(s)^4|
    for every intermediate time s in [0, t], where rho_ij(s) = rho_ij/(1 + rho_ij s).
    """
    rho = rho_matrix(config, profile)
    _, max_abs, env = rho.summary(1, t)
    if not math.isfinite(env):
        raise TaylorDomainError(
            f"|rho t| reaches {max_abs * t:.6g} >= 1; the log expansion diverges"
        )
    return env
