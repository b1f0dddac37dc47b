import dataclasses
import math

import numpy as np
import pytest

from oracles import sample_params
from qwalk import (
    LimitDensity,
    LimitMass,
    WalkParams,
    delta_mass,
    limit_cdf,
    limit_mass_total,
    limit_masses,
    theorem1_limit,
    theorem2_density,
)

ROOT2 = math.sqrt(2.0)


def konno_density(params, xs):
    """Bare usual-walk limit density, written out independently."""
    c, s = params.c, params.s
    w = (abs(params.alpha) ** 2 - abs(params.beta) ** 2
         + 2.0 * (params.alpha * params.beta.conjugate()).real * s / c)
    return (abs(s) / (np.pi * (1.0 - xs ** 2) * np.sqrt(c ** 2 - xs ** 2))
            * (1.0 - w * xs))


def test_point_mass_showcase_values(example_params):
    assert abs(theorem1_limit(example_params, 1, "odd") - (13 - 9 * ROOT2) / 2) < 1e-12
    assert abs(theorem1_limit(example_params, -1, "odd") - (13 - 9 * ROOT2) / 2) < 1e-12
    assert abs(theorem1_limit(example_params, 0, "even") - (3 - 2 * ROOT2) / 2) < 1e-12
    assert abs(theorem1_limit(example_params, 2, "even") - (139 - 98 * ROOT2) / 4) < 1e-12
    assert abs(theorem1_limit(example_params, -2, "even") - (139 - 98 * ROOT2) / 4) < 1e-12


def test_wrong_parity_mass_is_zero(example_params):
    for x in (-4, -2, 0, 2, 4):
        assert theorem1_limit(example_params, x, "odd") == 0.0
    for x in (-3, -1, 1, 3):
        assert theorem1_limit(example_params, x, "even") == 0.0
    with pytest.raises(ValueError):
        theorem1_limit(example_params, 0, "half")


def test_matching_angles_leave_no_point_mass():
    for theta in (0.4, math.pi / 4, 2.2):
        p = WalkParams(theta=theta, theta1=theta, tau=0, alpha=0.6, beta=0.8j)
        for x in range(-6, 7):
            assert theorem1_limit(p, x, "odd") == 0.0
            assert theorem1_limit(p, x, "even") == 0.0
        assert delta_mass(p) == 0.0


def test_mass_sum_matches_delta_for_random_params():
    for params in sample_params(seed=41, n=100):
        expected = delta_mass(params)
        assert abs(limit_mass_total(params, "odd") - expected) < 1e-10
        assert abs(limit_mass_total(params, "even") - expected) < 1e-10


def test_delta_showcase_values(example_params):
    expected = 1.0 / (2.0 + ROOT2)
    assert abs(delta_mass(example_params) - expected) < 1e-15
    assert abs(limit_mass_total(example_params, "odd") - expected) < 1e-12
    assert abs(limit_mass_total(example_params, "even") - expected) < 1e-12
    perp = dataclasses.replace(example_params, theta1=math.pi / 2)
    assert abs(delta_mass(perp) - 0.5 / (1.0 + 1.0 / ROOT2)) < 1e-15


def test_point_masses_decay_geometrically():
    for params in sample_params(seed=42, n=10):
        ratio = ((1.0 - abs(params.s)) ** 2 / params.c ** 2) ** 2
        for parity, start in (("odd", 3), ("even", 4)):
            for sign in (1, -1):
                xs = [sign * (start + 2 * i) for i in range(6)]
                values = [theorem1_limit(params, x, parity) for x in xs]
                for a, b in zip(values, values[1:]):
                    assert b <= a + 1e-300
                    if a > 1e-250:
                        assert abs(b - ratio * a) <= 1e-12 * a


def test_limit_mass_validation():
    LimitMass(position=2, parity="even", value=0.1)
    LimitMass(position=1, parity="even", value=0.0)
    with pytest.raises(ValueError):
        LimitMass(position=1, parity="even", value=0.1)
    with pytest.raises(ValueError):
        LimitMass(position=2, parity="even", value=-0.1)
    with pytest.raises(ValueError):
        LimitMass(position=2, parity="sideways", value=0.1)


def test_limit_masses_table(example_params):
    table = limit_masses(example_params, "even", 6)
    assert [lm.position for lm in table] == list(range(-6, 7))
    for lm in table:
        assert lm.value == theorem1_limit(example_params, lm.position, "even")
    with pytest.raises(ValueError):
        limit_masses(example_params, "even", -1)


def test_density_showcase_at_origin(hadamard_params):
    assert abs(theorem2_density(hadamard_params, 0.0) - 1.0 / math.pi) < 1e-15


def test_density_vanishes_outside_support(example_params):
    dens = LimitDensity.from_params(example_params)
    lo, hi = dens.support
    assert hi == abs(example_params.c) and lo == -hi
    assert dens.density(0.9) == 0.0
    assert dens.density(-3.0) == 0.0
    values = dens.density(np.array([-0.9, 0.0, 0.9]))
    assert values[0] == 0.0 and values[2] == 0.0 and values[1] > 0.0


def test_density_rejects_exact_endpoints(example_params):
    dens = LimitDensity.from_params(example_params)
    with pytest.raises(ValueError):
        dens.density(abs(example_params.c))
    with pytest.raises(ValueError):
        dens.density(np.array([0.0, -abs(example_params.c)]))


def test_total_mass_is_one():
    for params in sample_params(seed=43, n=25):
        dens = LimitDensity.from_params(params)
        assert abs(dens.delta + dens.ac_mass() - 1.0) < 1e-12


def test_matching_angles_reduce_to_bare_density():
    rng = np.random.default_rng(44)
    for params in sample_params(seed=45, n=10):
        p = dataclasses.replace(params, theta1=params.theta)
        dens = LimitDensity.from_params(p)
        assert dens.delta == 0.0
        cabs = abs(p.c)
        xs = rng.uniform(-cabs * 0.999, cabs * 0.999, size=1000)
        assert float(np.max(np.abs(dens.density(xs) - konno_density(p, xs)))) < 1e-13


def test_density_nonnegative_on_fine_grid():
    for params in sample_params(seed=46, n=25):
        dens = LimitDensity.from_params(params)
        cabs = abs(params.c)
        xs = np.linspace(-cabs, cabs, 10_002)[1:-1]
        assert float(np.min(dens.density(xs))) >= -1e-15


def test_density_coefficients():
    for params in sample_params(seed=47, n=10):
        dens = LimitDensity.from_params(params)
        g = params.c1 * params.s - params.s1 * params.c
        assert dens.a0 == params.c ** 2
        assert dens.a2 == g * g
        assert abs(dens.a1 - (2.0 * params.s1 * params.c * g - params.c1 ** 2)) < 1e-15
        assert dens.delta == delta_mass(params)


def test_cdf_support_bounds(example_params):
    dens = LimitDensity.from_params(example_params)
    assert dens.cdf(-1.0) == 0.0
    assert abs(dens.cdf(1.0) - 1.0) < 1e-8
    assert abs(dens.cdf(abs(example_params.c)) - 1.0) < 1e-8


def test_cdf_jump_at_origin_is_delta():
    for params in sample_params(seed=48, n=8):
        dens = LimitDensity.from_params(params)
        jump = dens.cdf(0.0) - dens.cdf(-1e-14)
        assert abs(jump - dens.delta) < 1e-10


def test_cdf_splits_evenly_for_symmetric_weight(example_params):
    dens = LimitDensity.from_params(example_params)
    assert abs(dens.cdf(-1e-14) - (1.0 - dens.delta) / 2.0) < 1e-10
    assert abs(dens.cdf(0.0) - (1.0 + dens.delta) / 2.0) < 1e-10


def test_cdf_monotone_and_vectorized():
    for params in sample_params(seed=49, n=6):
        dens = LimitDensity.from_params(params)
        xs = np.linspace(-1.0, 1.0, 201)
        values = dens.cdf(xs)
        assert values.shape == xs.shape
        assert float(np.min(np.diff(values))) > -1e-12
        assert np.all(values >= -1e-12) and np.all(values <= 1.0 + 1e-12)
        # scalar and array paths may differ in summation order only
        assert abs(values[50] - dens.cdf(float(xs[50]))) < 1e-14


def test_moments(example_params):
    dens = LimitDensity.from_params(example_params)
    assert abs(dens.moment(0) - 1.0) < 1e-10
    assert abs(dens.moment(1)) < 1e-14
    assert abs(dens.moment(2) - 0.17677669529663695) < 1e-12
    with pytest.raises(ValueError):
        dens.moment(-1)


def test_module_level_wrappers(example_params):
    dens = LimitDensity.from_params(example_params)
    assert theorem2_density(example_params, 0.3) == dens.density(0.3)
    assert limit_cdf(example_params, 0.3) == dens.cdf(0.3)
