"""Acceptance criteria, one test per criterion.

Run ``pytest tests/test_acceptance.py``; a PASS/FAIL line per criterion is
printed in the "acceptance criteria" section of the terminal summary.
"""

import math

import numpy as np
from scipy.integrate import quad, solve_ivp

from leipnik.classical import classical_action, compose_kernels, kernel
from leipnik.entropy import (
    JointDensity,
    differential_entropy,
    joint_entropy_closed,
    joint_entropy_from_product,
    joint_entropy_numeric,
    marginal_densities,
)
from leipnik.model import PacketSpec
from leipnik.quantum import (
    align_global_phase,
    fourier_transform,
    momentum_density,
    propagate_with_kernel,
    psi_closed,
    relative_l2,
    sample_closed,
    schrodinger_residual,
)

BOUND = 1 - math.log(2)
FINE_N = 16384


def test_c1_bound_saturation(criterion):
    spec = PacketSpec()
    closed = abs(joint_entropy_closed(spec, 0.0) - BOUND)
    numeric = abs(joint_entropy_numeric(spec, 0.0, n=FINE_N) - BOUND)
    ok_closed = criterion("1a bound saturation, closed form at t=0", closed, 1e-12, closed <= 1e-12)
    ok_numeric = criterion("1b bound saturation, numeric at t=0 (n=16384)", numeric, 1e-6, numeric <= 1e-6)
    assert ok_closed and ok_numeric


def test_c2_entropy_growth(criterion):
    spec = PacketSpec(force=1.0)
    t = np.linspace(0.0, 10.0, 1000)
    s = joint_entropy_closed(spec, t)
    min_step = float(np.min(np.diff(s)))
    ok_mono = criterion("2a strictly increasing on 1000 samples of [0, 10]", min_step, 0.0, min_step > 0)
    t3 = math.sqrt(3.0)
    closed = abs(joint_entropy_closed(spec, t3) - 1.0)
    numeric = abs(joint_entropy_numeric(spec, t3, n=FINE_N) - 1.0)
    ok_c = criterion("2b S_j(tau=sqrt 3) = 1, closed form", closed, 1e-9, closed <= 1e-9)
    ok_n = criterion("2c S_j(tau=sqrt 3) = 1, numeric", numeric, 1e-6, numeric <= 1e-6)
    assert ok_mono and ok_c and ok_n


def test_c3_force_independence(criterion):
    worst = 0.0
    for tau in (0.0, 1.0, 2.0, 5.0):
        a = joint_entropy_numeric(PacketSpec(force=5.0), tau)
        b = joint_entropy_numeric(PacketSpec(force=0.0), tau)
        worst = max(worst, abs(a - b))
    assert criterion("3  |S_j(f=5) - S_j(f=0)|, numeric, tau in {0,1,2,5}", worst, 1e-6, worst <= 1e-6)


def test_c4_evolution_route_equivalence(criterion):
    worst = 0.0
    for f in (0.0, 1.0, 5.0):
        spec = PacketSpec(force=f)
        T = spec.mass * spec.sigma**2 / spec.hbar
        out = propagate_with_kernel(spec, sample_closed(spec, 0.0), T)
        ref = psi_closed(spec, out.grid.points, T)
        worst = max(worst, relative_l2(align_global_phase(out.values, ref), ref))
    assert criterion("4  kernel route vs closed form, rel L2, f in {0,1,5}", worst, 1e-6, worst <= 1e-6)


def test_c5_momentum_consistency(criterion):
    linf, peak_off = 0.0, 0.0
    for p0, f, t in [(0.0, 1.0, 0.0), (1.0, 1.0, 1.0), (1.0, 2.0, 2.0), (-0.5, 5.0, 0.7)]:
        spec = PacketSpec(p0=p0, force=f)
        phi = fourier_transform(sample_closed(spec, t), spec, p_center=0.0)
        p = phi.grid.points
        rho = np.abs(phi.values) ** 2
        std_p = spec.hbar / (math.sqrt(2) * spec.sigma)
        win = np.abs(p - (p0 + f * t)) <= 8 * std_p
        linf = max(linf, float(np.max(np.abs(rho[win] - momentum_density(spec, p[win], t)))))
        peak = p[int(np.argmax(rho))]
        peak_off = max(peak_off, abs(peak - (p0 + f * t)) / phi.grid.spacing)
    ok_l = criterion("5a transform vs momentum density, L-inf on 8-sigma window", linf, 1e-8, linf <= 1e-8)
    ok_p = criterion("5b momentum peak offset from p0+f t, in grid spacings", peak_off, 1.0, peak_off <= 1.0)
    assert ok_l and ok_p


def test_c6_schrodinger_residual(criterion):
    spec = PacketSpec(force=1.0, p0=0.5)
    worst = max(schrodinger_residual(spec, t) for t in (0.5, 1.0, 2.0))
    assert criterion("6  Schrodinger residual, rel L2, t in {0.5,1,2}", worst, 1e-5, worst <= 1e-5)


def test_c7_kernel_semigroup(criterion):
    spec = PacketSpec(force=1.0)
    spots = [(0.0, 0.0, 0.5, 0.5), (1.0, -0.5, 0.3, 0.7), (-1.2, 0.8, 1.0, 1.0),
             (2.0, 1.5, 0.25, 1.5), (0.3, -2.0, 2.0, 0.4)]
    worst = max(abs(compose_kernels(spec, xe, xs, t1, t2) - kernel(spec, xe, xs, t1 + t2))
                for xe, xs, t1, t2 in spots)
    assert criterion("7  composed kernels vs direct kernel, 5 spot points", worst, 1e-4, worst <= 1e-4)


def _ode_action(m, f, a, b, T):
    """Shoot m x'' = f to hit x(T) = b, then integrate the Lagrangian."""
    def shoot(v0):
        return solve_ivp(lambda s, y: [y[1], f / m], (0, T), [a, v0], method="DOP853",
                         rtol=1e-13, atol=1e-14, dense_output=True)

    # endpoint is affine in v0, so one secant step is exact
    e0, e1 = shoot(0.0).y[0, -1], shoot(1.0).y[0, -1]
    sol = shoot((b - e0) / (e1 - e0)).sol

    def lagrangian(s):
        x, v = sol(s)
        return 0.5 * m * v * v + f * x

    return quad(lagrangian, 0, T, epsabs=1e-13, epsrel=1e-13, limit=200)[0]


def test_c8_action_oracle(criterion):
    rng = np.random.default_rng(20261016)
    worst = 0.0
    for _ in range(100):
        m, T = rng.uniform(0.5, 2.0), rng.uniform(0.3, 2.0)
        f, a, b = rng.uniform(-2, 2), rng.uniform(-1, 1), rng.uniform(-1, 1)
        spec = PacketSpec(mass=m, force=f)
        worst = max(worst, abs(classical_action(spec, a, b, T) - _ode_action(m, f, a, b, T)))
    spot = abs(classical_action(PacketSpec(force=1.0), 0.0, 0.0, 1.0) + 1 / 24)
    ok_q = criterion("8a action vs Lagrangian quadrature, 100 draws", worst, 1e-9, worst <= 1e-9)
    ok_s = criterion("8b S(0,0,T=1,m=1,f=1) = -1/24", spot, 1e-15, spot <= 1e-15)
    assert ok_q and ok_s


def test_c9_product_additivity(criterion):
    worst = 0.0
    for f, tau in [(0.0, 0.0), (1.0, 1.0), (5.0, 2.0)]:
        spec = PacketSpec(force=f)
        rho_x, rho_p = marginal_densities(spec, tau, n=512)
        marginal = differential_entropy(rho_x) + differential_entropy(rho_p) - math.log(2 * math.pi * spec.hbar)
        product = joint_entropy_from_product(JointDensity.from_marginals(rho_x, rho_p))
        worst = max(worst, abs(product - marginal))
    assert criterion("9  product-density vs marginal route, 512x512", worst, 1e-8, worst <= 1e-8)
