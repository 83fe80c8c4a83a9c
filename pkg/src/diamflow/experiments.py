"""Sweeps over n, 1/n extrapolation and the consistency audits."""
from __future__ import annotations

import csv
import io
import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Sequence, Union

import numpy as np

from .constructions import push_construction, regular_ngon, single_diameter_move
from .errors import SolverError
from .flow import rho_matrix
from .geometry import Configuration, diameter, log_discriminant, log_ratio
from .profiles import LINEAR, Profile
from .solvers import binding_pair, c_max, eps_max, pair_angle

CSV_COLUMNS = ("n", "profile", "c", "log_ratio", "max_rho", "s2_over_n2",
               "binding_angle", "runtime_ms")

#: log C for I = -0.481436
LOG_C_REFERENCE = 0.481436 * math.pi ** 2 / 128.0


@dataclass
class SweepRecord:
    n: int
    profile: str
    c: float
    log_ratio: float
    max_rho: float
    s2_over_n2: float
    binding_angle: float
    runtime_ms: int = 0
    # not persisted: power sums of rho at t = 0 and the remainder envelope at t = c/n
    power_sums: list = field(default_factory=list, repr=False)
    envelope: float = math.nan

    @property
    def t(self) -> float:
        return self.c / self.n

    def csv_row(self) -> list[str]:
        return [str(self.n), self.profile, _fmt(self.c), _fmt(self.log_ratio),
                _fmt(self.max_rho), _fmt(self.s2_over_n2), _fmt(self.binding_angle),
                str(self.runtime_ms)]


class SweepAborted(RuntimeError):
    """A solver failed mid-sweep; ``records`` holds the rows finished before it."""

    def __init__(self, message: str, records: list[SweepRecord]):
        super().__init__(message)
        self.records = records


def _fmt(x: float) -> str:
    return f"{x:.17g}"


def sweep_point(n: int, profile: Profile = LINEAR, c: Union[str, float] = "max",
                timing: bool = False) -> SweepRecord:
    """Everything the sweep records for one n."""
    start = time.perf_counter()
    if c == "max":
        report = c_max(n, profile)
        c_used = report.c_max
        angle = report.binding_angle
        cfg = push_construction(n, c_used, profile)
    else:
        c_used = float(c)
        cfg = push_construction(n, c_used, profile)
        i, j, _ = binding_pair(cfg)
        angle = pair_angle(complex(cfg.points[i]), complex(cfg.points[j]))
    lr = log_ratio(cfg)
    base = rho_matrix(regular_ngon(n), profile)
    sums, _, env = base.summary(4, c_used / n)
    _, max_rho, _ = rho_matrix(cfg, profile).summary(1)
    elapsed = int(round((time.perf_counter() - start) * 1000)) if timing else 0
    return SweepRecord(n, profile.label, c_used, lr, max_rho, sums[1].real / n ** 2,
                       angle, elapsed, sums, env)


def run_sweep(n_list: Sequence[int], profile: Profile = LINEAR,
              c: Union[str, float] = "max", timing: bool = False,
              workers: int = 1) -> list[SweepRecord]:
    """One record per n, in input order.

    With ``workers > 1`` the n values run concurrently; the records (and so
    the CSV) are identical to the serial run.
    """
    ns = [int(n) for n in n_list]
    if any(n % 2 or n < 4 for n in ns):
        raise ValueError("sweeps need even n >= 4")
    if ns != sorted(ns):
        raise ValueError("n list must be sorted ascending")
    records: list[SweepRecord] = []
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            futures = [pool.submit(sweep_point, n, profile, c, timing) for n in ns]
            for n, fut in zip(ns, futures):
                try:
                    records.append(fut.result())
                except SolverError as exc:
                    raise SweepAborted(f"n={n}: {exc}", records) from exc
        return records
    for n in ns:
        try:
            records.append(sweep_point(n, profile, c, timing))
        except SolverError as exc:
            raise SweepAborted(f"n={n}: {exc}", records) from exc
    return records


def format_csv(records: Iterable[SweepRecord], partial: str | None = None) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for r in records:
        w.writerow(r.csv_row())
    if partial:
        buf.write(f"# PARTIAL: {partial}\n")
    return buf.getvalue()


def write_csv(records: Iterable[SweepRecord], path, partial: str | None = None) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(format_csv(records, partial))


def read_csv(path) -> list[SweepRecord]:
    with open(path, encoding="utf-8", newline="") as fh:
        lines = [ln for ln in fh if not ln.startswith("#")]
    reader = csv.DictReader(lines)
    if tuple(reader.fieldnames or ()) != CSV_COLUMNS:
        raise ValueError(f"{path}: expected columns {','.join(CSV_COLUMNS)}")
    return [
        SweepRecord(int(row["n"]), row["profile"], float(row["c"]), float(row["log_ratio"]),
                    float(row["max_rho"]), float(row["s2_over_n2"]),
                    float(row["binding_angle"]), int(row["runtime_ms"]))
        for row in reader
    ]


# -- extrapolation ----------------------------------------------------------

@dataclass(frozen=True)
class ExtrapolationResult:
    intercept: float
    slope: float
    residual: float


def fit_inverse_n(ns: Sequence[float], values: Sequence[float]) -> ExtrapolationResult:
    """Least squares ``value ~ intercept + slope / n``; residual is the 2-norm."""
    ns = np.asarray(ns, dtype=float)
    y = np.asarray(values, dtype=float)
    if ns.size < 3:
        raise ValueError("need at least 3 points to extrapolate")
    if np.unique(ns).size != ns.size:
        raise ValueError("n values must be distinct")
    A = np.column_stack([np.ones_like(ns), 1.0 / ns])
    coef, *_ = np.linalg.lstsq(A, y, rcond=None)
    resid = float(np.linalg.norm(A @ coef - y))
    return ExtrapolationResult(float(coef[0]), float(coef[1]), resid)


def extrapolate(records: Sequence[SweepRecord]) -> ExtrapolationResult:
    return fit_inverse_n([r.n for r in records], [r.log_ratio for r in records])


# -- audits -----------------------------------------------------------------

def pommerenke_check(item: Union[SweepRecord, Configuration]) -> bool:
    """log Delta <= 4(n-1) ln 2 + n ln n, i.e. Delta <= 2^{4(n-1)} n^n."""
    if isinstance(item, SweepRecord):
        n, lr = item.n, item.log_ratio
    else:
        n = item.n
        if diameter(item) > 2.0 * (1.0 + 1e-12):
            raise ValueError("the bound applies to configurations of diameter <= 2")
        lr = log_discriminant(item) - n * math.log(n)
    return lr <= 4.0 * (n - 1) * math.log(2.0)


@dataclass(frozen=True)
class TaylorAudit:
    gap: float
    bound: float
    second_order: float

    @property
    def passed(self) -> bool:
        return self.gap <= self.bound


def taylor_audit(record: SweepRecord, profile: Profile | None = None,
                 slack: float = 1e-8) -> TaylorAudit:
    """Check |log_ratio + S_2 t^2 / 2| <= envelope(t) t^4 / 4 + slack at t = c/n.

    S_2 and the envelope come from rho at t = 0. Records read back from CSV
    lack the envelope, so it is recomputed (``profile`` is then required).
    """
    t = record.t
    env = record.envelope
    if not math.isfinite(env):
        if profile is None:
            raise ValueError("record has no envelope; pass the profile to recompute it")
        _, _, env = rho_matrix(regular_ngon(record.n), profile).summary(1, t)
    s2 = record.s2_over_n2 * record.n ** 2
    second = -0.5 * s2 * t * t
    return TaylorAudit(abs(record.log_ratio - second), 0.25 * env * t ** 4 + slack, second)


# -- single-diameter move ---------------------------------------------------

@dataclass(frozen=True)
class MoveScan:
    n: int
    eps_max: float
    eps: np.ndarray
    log_ratio: np.ndarray

    @property
    def best_eps(self) -> float:
        return float(self.eps[int(np.argmax(self.log_ratio))])

    @property
    def best_gain(self) -> float:
        return float(np.max(self.log_ratio))


def single_move_scan(n: int, samples: int = 16) -> MoveScan:
    """log_ratio of the single-diameter move on an even grid of (0, eps_max]."""
    em = eps_max(n)
    eps = em * np.arange(1, samples + 1) / samples
    lr = np.array([log_ratio(single_diameter_move(n, e)) for e in eps])
    return MoveScan(n, em, eps, lr)
