import numpy as np
import pytest

from qrdyn import params
from qrdyn.maps import RationalMap, per3_map
from qrdyn.orbits import (
    Connectivity,
    Converged,
    FateConfig,
    Unresolved,
    attracting_cycles,
    connectivity_heuristic,
    cycle_multiplier,
    cycles_match,
    iterate,
    orbit_fate,
)
from qrdyn.sphere import INFINITY, Mobius, chordal_distance, finite

RABBIT_A = 0.33764 + 0.56228j
ZSQ = RationalMap([0, 0, 1], [1])


def test_iterate_critical_cycle():
    f = per3_map(0.5 + 0.1j)
    assert chordal_distance(iterate(f, finite(0), 3), finite(0)) < 1e-12


def test_iterate_zero_steps():
    f = per3_map(RABBIT_A)
    z = finite(0.25 + 0.1j)
    assert iterate(f, z, 0).value == z.value


def test_iterate_squaring():
    assert iterate(ZSQ, finite(2), 3).value == pytest.approx(256)


def test_iterate_negative_rejected():
    with pytest.raises(ValueError):
        iterate(ZSQ, finite(1), -1)


def test_orbit_fate_critical_cycle():
    for a in (RABBIT_A, 2.32472, -0.8 + 0.4j):
        fate = orbit_fate(per3_map(a), finite(0))
        assert isinstance(fate, Converged)
        assert fate.cycle.period == 3
        pts = fate.cycle.points
        assert chordal_distance(pts[0], finite(0)) < 1e-9
        assert pts[1].is_infinity
        assert chordal_distance(pts[2], finite(1)) < 1e-9


def test_orbit_fate_center_fixed_point(centers):
    a2 = centers[1]
    fate = orbit_fate(per3_map(a2), finite(a2))
    assert isinstance(fate, Converged)
    assert fate.cycle.period == 1
    assert chordal_distance(fate.cycle.points[0], finite(a2)) < 1e-8


def test_orbit_fate_square_map():
    fate = orbit_fate(ZSQ, finite(0.5))
    assert isinstance(fate, Converged)
    assert fate.cycle.period == 1
    assert chordal_distance(fate.cycle.points[0], finite(0)) < 1e-12


def test_unresolved_is_a_value():
    # parabolic: z + z^2 at the fixed point 0 converges too slowly
    f = RationalMap([0, 1, 1], [1])
    fate = orbit_fate(f, finite(0.01 + 0.002j), FateConfig(budget=500))
    assert isinstance(fate, Unresolved)
    assert fate.steps == 500


def test_superattracting_multiplier():
    fate = orbit_fate(per3_map(RABBIT_A), finite(0))
    assert abs(fate.cycle.multiplier) < 1e-12
    assert abs(cycle_multiplier(per3_map(RABBIT_A), fate.cycle)) < 1e-12


def test_parabolic_fixed_point_multiplier(special):
    from qrdyn.periodic import fixed_points

    fx = per3_map(special.cut_x)
    target = np.exp(2j * np.pi / 3)
    assert min(abs(p.multiplier - target) for p in fixed_points(fx)) < 1e-3


def test_connectivity_examples(centers):
    assert connectivity_heuristic(per3_map(centers[0])) is Connectivity.CONNECTED
    assert connectivity_heuristic(per3_map(1.0)) is Connectivity.CONNECTED
    z2p3 = RationalMap([3, 0, 1], [1])
    assert connectivity_heuristic(z2p3) is Connectivity.TOTALLY_DISCONNECTED


def test_connectivity_requires_quadratic():
    cubic = RationalMap([0, 0, 0, 1], [1])
    with pytest.raises(ValueError):
        connectivity_heuristic(cubic)


def test_determinism():
    f = per3_map(0.9 + 0.77j)
    z = finite(-0.3 + 0.2j)
    f1 = orbit_fate(f, z)
    f2 = orbit_fate(f, z)
    assert f1 == f2


def test_phase_consistency():
    f = per3_map(0.7 + 0.2j)
    for z0 in (0.31 + 0.11j, -0.4 + 0.9j, 2.1 - 0.3j):
        z = finite(z0)
        fa = orbit_fate(f, z)
        fb = orbit_fate(f, f(z))
        if isinstance(fa, Converged) and isinstance(fb, Converged):
            assert cycles_match(fa.cycle, fb.cycle)
            assert fb.phase == (fa.phase + 1) % fa.cycle.period


def test_conjugation_preserves_fate_period(rng):
    f = per3_map(0.6 + 0.3j)
    m = Mobius(1.1 + 0.2j, 0.3, -0.1j, 0.9)
    from qrdyn.maps import mobius_conjugate

    g = mobius_conjugate(f, m)
    for _ in range(5):
        z = finite(complex(rng.uniform(-1.5, 1.5), rng.uniform(-1.5, 1.5)))
        fa = orbit_fate(f, z)
        fb = orbit_fate(g, m(z))
        if isinstance(fa, Converged):
            assert isinstance(fb, Converged)
            assert fb.cycle.period == fa.cycle.period


def test_attracting_cycles_center(centers):
    a2 = centers[1]
    cycles = attracting_cycles(per3_map(a2))
    assert sorted(c.period for c in cycles) == [1, 3]


def test_cycle_canonical_rotation():
    fate = orbit_fate(per3_map(RABBIT_A), finite(1))
    pts = fate.cycle.points
    assert chordal_distance(pts[0], finite(0)) < 1e-9
    assert fate.phase == 2  # the seed 1 is the cycle point of index 2
