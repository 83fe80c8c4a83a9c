import math

import mpmath
import numpy as np
import pytest

from diamflow import COSINE, LINEAR, Profile, ProfileError, integral_I, integrand, limit_constant
from diamflow.quadrature import diagonal_limit, extrapolated_integral, midpoint_sum

I_PAPER = -0.481436


def mp_integrand_linear(x, y, dps=80, offset="0"):
    """Direct formula in high precision (no simplifications) at (x, y + offset)."""
    with mpmath.workdps(dps):
        x, y = mpmath.mpf(x), mpmath.mpf(y) + mpmath.mpf(offset)
        f = lambda u: (1 - u / mpmath.pi) * mpmath.exp(1j * u / 2)
        ex, ey = mpmath.exp(1j * x), mpmath.exp(1j * y)
        return complex((f(x) - f(y)) ** 2 * (ex + ey) / (ex - ey) ** 2)


def gauss_legendre_oracle(m):
    """Independent tensor Gauss-Legendre estimate of I for the linear profile."""
    nodes, weights = np.polynomial.legendre.leggauss(m)
    x = (nodes + 1) * math.pi
    w = weights * math.pi
    X, Y = np.meshgrid(x, x, indexing="ij")
    f = lambda u: (1 - u / math.pi) * np.exp(0.5j * u)
    diag = X == Y
    with np.errstate(invalid="ignore", divide="ignore"):
        g = (f(X) - f(Y)) ** 2 * (np.exp(1j * X) + np.exp(1j * Y)) / (np.exp(1j * X) - np.exp(1j * Y)) ** 2
    g[diag] = -2 * (-1 / math.pi + 0.5j * (1 - X[diag] / math.pi)) ** 2
    return complex(np.sum(w[:, None] * w[None, :] * g))


def test_diagonal_value_at_origin():
    expect = complex(0.5 - 2 / math.pi ** 2, 2 / math.pi)
    assert integrand(0.0, 0.0) == pytest.approx(expect, abs=1e-15)
    assert mp_integrand_linear(0, 0, offset="1e-30") == pytest.approx(expect, abs=1e-15)


@pytest.mark.parametrize("x", [0.0, 0.7, 2.0, math.pi, 5.5, 2 * math.pi])
def test_diagonal_limit_matches_high_precision(x):
    oracle = mp_integrand_linear(x, x, offset="1e-40")
    assert complex(diagonal_limit(x)) == pytest.approx(oracle, abs=1e-13)
    closed = -2 * (-1 / math.pi + 0.5j * (1 - x / math.pi)) ** 2
    assert complex(diagonal_limit(x)) == pytest.approx(closed, abs=1e-14)


@pytest.mark.parametrize("x", [0.0, 1.0, 3.0, 6.2])
def test_branches_agree_near_diagonal(x):
    y = x + 1e-4
    direct = integrand(x, y)
    assert abs(direct - diagonal_limit(0.5 * (x + y))) <= 1e-8
    assert direct == pytest.approx(mp_integrand_linear(x, y), abs=1e-11)
    # inside the threshold the limit branch is used
    assert integrand(x, x + 1e-9) == pytest.approx(diagonal_limit(x + 5e-10), abs=1e-15)


def test_integrand_examples(rng):
    assert abs(integrand(0.0, math.pi)) <= 1e-15
    x, y = rng.uniform(0, 2 * math.pi, (2, 50))
    np.testing.assert_allclose(integrand(x, y), integrand(y, x), atol=1e-13)
    for a, b in zip(x[:10], y[:10]):
        assert integrand(a, b) == pytest.approx(mp_integrand_linear(a, b), abs=1e-12)


def test_cosine_integrand_closed_form(rng):
    # f(u) = (1 + e^{iu})/2 makes the integrand (e^{ix} + e^{iy})/4
    x, y = rng.uniform(0, 2 * math.pi, (2, 100))
    np.testing.assert_allclose(integrand(x, y, COSINE), (np.exp(1j * x) + np.exp(1j * y)) / 4,
                               atol=1e-13)


def test_integral_linear():
    res = integral_I(LINEAR, 512)
    assert res.grid_size == 512
    assert abs(res.value.real - I_PAPER) <= 5e-4
    assert abs(res.value.imag) <= 1e-8
    oracle = gauss_legendre_oracle(400)
    assert oracle.real == pytest.approx(I_PAPER, abs=1e-6)
    assert abs(res.value.real - oracle.real) <= 2 * res.refinement_gap


def test_extrapolated_integral_close_to_oracle():
    oracle = gauss_legendre_oracle(400).real
    assert extrapolated_integral(LINEAR, 256).real == pytest.approx(oracle, abs=5e-6)


def test_integral_cosine_and_zero():
    assert integral_I(COSINE, 64).value.real >= -1e-3
    assert abs(integral_I(COSINE, 64).value) <= 1e-12
    assert integral_I(Profile.zero(), 16).value == 0


def test_table_profile_matches_linear():
    th = np.linspace(0, math.pi, 5)
    table = Profile.from_table(th, LINEAR(th))
    assert midpoint_sum(table, 64) == pytest.approx(midpoint_sum(LINEAR, 64), abs=1e-12)


def test_grid_convergence_and_realness():
    gaps = [integral_I(LINEAR, m).refinement_gap for m in (64, 128, 256, 512)]
    assert all(b < a for a, b in zip(gaps, gaps[1:]))
    for prof in (LINEAR, COSINE):
        res = integral_I(prof, 128)
        assert abs(res.value.imag) <= 10 * res.refinement_gap + 1e-15


def test_refuses_steep_profiles():
    steep = Profile.from_table([0, 1e-8, math.pi], [1, 0, 0])
    with pytest.raises(ProfileError, match="Lipschitz"):
        integral_I(steep, 16)
    with pytest.raises(ValueError):
        integral_I(LINEAR, 4)


def test_limit_constant():
    assert limit_constant(I_PAPER) == pytest.approx(1.03782, abs=1e-5)
    assert limit_constant(0.0) == 1.0
    assert limit_constant(-I_PAPER) == pytest.approx(1 / limit_constant(I_PAPER), rel=1e-15)
    with pytest.raises(ValueError):
        limit_constant(math.nan)
