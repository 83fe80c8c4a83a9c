import math

import numpy as np
import pytest

from diamflow import COSINE, LINEAR, Profile, ProfileError


def test_builtin_kinds():
    assert LINEAR(0.0) == 1.0
    assert COSINE(0.0) == 1.0
    assert LINEAR(math.pi / 2) == 0.0
    assert LINEAR(math.pi) == -1.0
    assert LINEAR.derivative(1.0) == pytest.approx(-2 / math.pi)
    assert COSINE.derivative(math.pi / 2) == pytest.approx(-1.0)


@pytest.mark.parametrize("profile", [LINEAR, COSINE])
def test_builtin_profiles_antisymmetric_about_quarter_turn(profile):
    th = np.linspace(0, math.pi, 101)
    np.testing.assert_allclose(profile(math.pi - th), -profile(th), atol=1e-15)
    assert profile.is_antisymmetric()


def test_table_interpolation_and_kink_derivative():
    p = Profile.from_table([0, 1, math.pi], [1, 0, 2])
    assert p(0.5) == pytest.approx(0.5)
    assert p.derivative(0.5) == pytest.approx(-1.0)
    right = 2 / (math.pi - 1)
    assert p.derivative(1.0) == pytest.approx(0.5 * (-1.0 + right))
    assert p.derivative(2.0) == pytest.approx(right)
    assert p.lipschitz_constant() == pytest.approx(1.0)


def test_table_matching_linear():
    th = np.linspace(0, math.pi, 7)
    p = Profile.from_table(th, LINEAR(th))
    x = np.linspace(0, math.pi, 50)
    np.testing.assert_allclose(p(x), LINEAR(x), atol=1e-15)
    assert p.is_antisymmetric()


@pytest.mark.parametrize("thetas, values, msg", [
    ([0, 1, 1, math.pi], [0, 0, 1, 1], "strictly increasing"),
    ([0.1, math.pi], [1, 1], "cover"),
    ([0, 3.0], [1, 1], "cover"),
    ([0, math.pi], [1, math.inf], "non-finite"),
    ([0], [1], ">= 2"),
])
def test_table_validation(thetas, values, msg):
    with pytest.raises(ProfileError, match=msg):
        Profile.from_table(thetas, values)


def test_parse_and_load(tmp_path):
    assert Profile.parse("linear").kind == "linear"
    assert Profile.parse("cosine").kind == "cosine"
    path = tmp_path / "p.txt"
    path.write_text("# theta p\n0 1\n1.5707963267948966 0\n3.141592653589793 -1\n")
    p = Profile.parse(f"table:{path}")
    assert p.kind == "table"
    assert p(math.pi / 4) == pytest.approx(0.5)
    with pytest.raises(ProfileError):
        Profile.parse("quadratic")
    bad = tmp_path / "bad.txt"
    bad.write_text("0 1 2\n3.2 0 0\n")
    with pytest.raises(ProfileError):
        Profile.load(bad)


def test_zero_profile():
    z = Profile.zero()
    assert z(1.234) == 0.0
    assert z.lipschitz_constant() == 0.0
