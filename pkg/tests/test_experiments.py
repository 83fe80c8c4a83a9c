import math

import pytest

from diamflow import (COSINE, LINEAR, Configuration, Profile, SweepRecord, extrapolate,
                      log_ratio, pommerenke_check, push_construction, read_configuration,
                      regular_ngon, run_sweep, taylor_audit, write_configuration)
from diamflow.experiments import (CSV_COLUMNS, SweepAborted, fit_inverse_n, format_csv,
                                  read_csv, single_move_scan, sweep_point, write_csv)


def _rec(n, lr):
    return SweepRecord(n, "synthetic", 0.0, lr, 0.0, 0.0, 0.0)


def test_sweep_n4_brute_force():
    (rec,) = run_sweep([4], LINEAR)
    c = 4 * (math.sqrt(3) - 1)
    assert rec.c == pytest.approx(c, abs=2e-10)
    pts = [1 + c / 4, 1j, -(1 - c / 4), -1j]
    prod = math.prod(abs(pts[i] - pts[j]) for i in range(4) for j in range(4) if i != j)
    assert rec.log_ratio == pytest.approx(math.log(prod) - 4 * math.log(4), abs=1e-8)
    assert rec.log_ratio > 0


def test_extrapolate_synthetic():
    ns = [64, 128, 256, 512]
    fit = extrapolate([_rec(n, 0.03712 + 1.0 / n) for n in ns])
    assert fit.intercept == pytest.approx(0.03712, abs=1e-14)
    assert fit.slope == pytest.approx(1.0, abs=1e-11)
    assert 0 <= fit.residual <= 1e-14
    flat = extrapolate([_rec(n, 0.5) for n in ns])
    assert flat.slope == pytest.approx(0.0, abs=1e-12)
    assert flat.intercept == pytest.approx(0.5, abs=1e-15)
    with pytest.raises(ValueError):
        extrapolate([_rec(8, 0.1), _rec(16, 0.2)])
    with pytest.raises(ValueError):
        fit_inverse_n([8, 8, 16], [1, 1, 1])


def test_pommerenke():
    for n in (4, 64, 101):
        assert pommerenke_check(regular_ngon(n))
    assert pommerenke_check(_rec(100, 0.0))
    assert not pommerenke_check(_rec(100, 5 * 100))
    with pytest.raises(ValueError):
        pommerenke_check(Configuration([3, -3]))


def test_sweep_records_and_audit():
    recs = run_sweep([16, 32, 64], LINEAR)
    assert [r.n for r in recs] == [16, 32, 64]
    for r in recs:
        assert r.profile == "linear"
        assert r.log_ratio > 0
        assert r.max_rho <= 2.58
        assert r.runtime_ms == 0
        assert abs(r.power_sums[0]) <= 1e-9 * r.n ** 2
        assert pommerenke_check(r)
        audit = taylor_audit(r)
        assert audit.passed, audit


def test_sweep_fixed_c():
    (rec,) = run_sweep([32], COSINE, c=0.5)
    assert rec.c == 0.5
    assert rec.profile == "cosine"
    assert rec.log_ratio == log_ratio(push_construction(32, 0.5, COSINE))


def test_sweep_validation():
    with pytest.raises(ValueError):
        run_sweep([8, 7], LINEAR)
    with pytest.raises(ValueError):
        run_sweep([16, 8], LINEAR)


def test_sweep_deterministic_csv(tmp_path):
    a = format_csv(run_sweep([8, 16, 64], LINEAR))
    b = format_csv(run_sweep([8, 16, 64], LINEAR))
    c = format_csv(run_sweep([8, 16, 64], LINEAR, workers=3))
    assert a == b == c
    assert a.splitlines()[0] == ",".join(CSV_COLUMNS)


def test_csv_roundtrip_and_recomputed_audit(tmp_path):
    recs = run_sweep([16, 64], LINEAR)
    path = tmp_path / "s.csv"
    write_csv(recs, path)
    back = read_csv(path)
    for r, b in zip(recs, back):
        assert (b.n, b.c, b.log_ratio, b.s2_over_n2) == (r.n, r.c, r.log_ratio, r.s2_over_n2)
        with pytest.raises(ValueError):
            taylor_audit(b)
        assert taylor_audit(b, LINEAR).bound == pytest.approx(taylor_audit(r).bound, rel=1e-12)
    bad = tmp_path / "bad.csv"
    bad.write_text("n,c\n1,2\n")
    with pytest.raises(ValueError):
        read_csv(bad)


def test_record_reproducible_from_configuration_file(tmp_path):
    (rec,) = run_sweep([256], LINEAR)
    path = tmp_path / "cfg.txt"
    write_csv([rec], tmp_path / "s.csv")
    (back,) = read_csv(tmp_path / "s.csv")
    write_configuration(push_construction(back.n, back.c, LINEAR), path)
    assert abs(log_ratio(read_configuration(path)) - back.log_ratio) <= 1e-10


def test_sweep_abort_keeps_partial_rows(tmp_path):
    # a constant push of this size is feasible at n = 8 but not at n = 4096
    blunt = Profile.from_table([0, math.pi], [1e9, 1e9])
    with pytest.raises(SweepAborted) as info:
        run_sweep([8, 4096], blunt)
    assert [r.n for r in info.value.records] == [8]
    text = format_csv(info.value.records, partial=str(info.value))
    assert text.rstrip().splitlines()[-1].startswith("# PARTIAL")
    path = tmp_path / "p.csv"
    path.write_text(text)
    assert [r.n for r in read_csv(path)] == [8]


def test_timing_column():
    rec = sweep_point(64, LINEAR, timing=True)
    assert rec.runtime_ms >= 0


def test_single_move_scan():
    scan = single_move_scan(100, samples=8)
    assert scan.eps[-1] == scan.eps_max
    assert scan.best_gain > 0
    assert 0 < scan.best_eps <= scan.eps_max
