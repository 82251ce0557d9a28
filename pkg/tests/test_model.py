import math

import numpy as np
import pytest
from hypothesis import given, strategies as st
from scipy.integrate import quad

from leipnik.model import (
    ComplexField,
    DensityProfile,
    EntropyRecord,
    MomentumGrid,
    PacketSpec,
    SpaceGrid,
    make_adaptive_grid,
)
from leipnik.quantum import position_density

finite = st.floats(min_value=-5, max_value=5, allow_nan=False)
positive = st.floats(min_value=0.2, max_value=5)


@pytest.mark.parametrize("field,value", [("mass", 0.0), ("hbar", -1.0), ("sigma", 0.0), ("force", math.inf), ("p0", math.nan)])
def test_packet_spec_rejects_bad_values(field, value):
    with pytest.raises(ValueError):
        PacketSpec(**{field: value})


def test_packet_spec_is_immutable(unit_spec):
    with pytest.raises(AttributeError):
        unit_spec.mass = 2.0


@pytest.mark.parametrize("n", [8, 15, 100, 3000])
def test_grid_requires_power_of_two(n):
    with pytest.raises(ValueError):
        SpaceGrid(n=n, center=0.0, half_width=1.0)


def test_grid_points_put_center_on_a_node():
    g = SpaceGrid(n=64, center=3.0, half_width=2.0)
    assert g.spacing == pytest.approx(1 / 16)
    assert g.points[32] == pytest.approx(3.0, abs=1e-15)
    assert g.points[0] == pytest.approx(1.0)


@given(n_exp=st.integers(4, 14), half=st.floats(0.1, 100), hbar=st.floats(0.01, 10))
def test_grid_reciprocity(n_exp, half, hbar):
    g = SpaceGrid(n=2**n_exp, center=0.0, half_width=half)
    p = MomentumGrid.reciprocal_to(g, hbar)
    assert p.spacing * g.spacing * g.n == pytest.approx(2 * math.pi * hbar, rel=1e-13)


def test_fields_are_read_only():
    g = SpaceGrid(n=16, center=0.0, half_width=1.0)
    f = ComplexField(g, np.ones(16))
    with pytest.raises(ValueError):
        f.values[0] = 2.0


def test_field_shape_and_finiteness_checked():
    g = SpaceGrid(n=16, center=0.0, half_width=1.0)
    with pytest.raises(ValueError):
        ComplexField(g, np.ones(15))
    with pytest.raises(ValueError):
        ComplexField(g, np.full(16, np.nan))
    with pytest.raises(ValueError):
        DensityProfile(g, -np.ones(16))


@given(seed=st.integers(0, 2**32 - 1))
def test_density_of_normalized_field_integrates_to_one(seed):
    rng = np.random.default_rng(seed)
    g = SpaceGrid(n=64, center=rng.normal(), half_width=rng.uniform(0.5, 5))
    raw = ComplexField(g, rng.normal(size=64) + 1j * rng.normal(size=64))
    field = raw.normalized()
    assert abs(field.norm() - 1.0) < 1e-12
    assert abs(field.density().total() - 1.0) < 1e-9


def test_entropy_record_gap():
    r = EntropyRecord(t=0, tau=0, s_x=1, s_p=1, s_joint_closed=0.5, s_joint_numeric=0.5, bound=0.3)
    assert r.bound_gap == pytest.approx(0.2)


def test_adaptive_grid_at_rest(unit_spec):
    g = make_adaptive_grid(unit_spec, 0.0, pad=8)
    assert g.center == 0.0
    assert g.half_width == 8.0
    assert g.n == 4096


def test_adaptive_grid_follows_force():
    spec = PacketSpec(force=1.0)
    g = make_adaptive_grid(spec, 2.0, pad=8)
    # independent evaluation: x_c = f t^2 / 2m, sigma_t = sigma sqrt(1 + (hbar t / m sigma^2)^2)
    assert g.center == pytest.approx(0.5 * 1.0 * 2.0**2 / 1.0)
    assert g.half_width == pytest.approx(8 * math.sqrt(5))
    assert g.half_width == pytest.approx(17.8885438)


def test_adaptive_grid_follows_momentum():
    g = make_adaptive_grid(PacketSpec(mass=2.0, p0=4.0), 1.0, pad=8)
    assert g.center == 2.0


@pytest.mark.parametrize("t,pad", [(math.nan, 8), (math.inf, 8), (0.0, 3.9)])
def test_adaptive_grid_rejects(t, pad, unit_spec):
    with pytest.raises(ValueError):
        make_adaptive_grid(unit_spec, t, pad=pad)


@pytest.mark.parametrize("t", [0.0, 0.7, 3.0])
def test_adaptive_grid_truncates_negligible_mass(t):
    spec = PacketSpec(force=1.3, p0=-0.4, x0=0.5, sigma=0.8)
    g = make_adaptive_grid(spec, t, pad=8)
    lo, hi = g.start, g.start + 2 * g.half_width
    outside = quad(lambda x: position_density(spec, x, t), -np.inf, lo)[0] + \
        quad(lambda x: position_density(spec, x, t), hi, np.inf)[0]
    assert outside < 1e-12
