import cmath
import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from qrdyn.sphere import (
    IDENTITY,
    INFINITY,
    DegenerateMobiusError,
    Mobius,
    SpherePoint,
    chordal_distance,
    chordal_distance_chart,
    finite,
    test_grid,
)

finite_complex = st.builds(
    complex,
    st.floats(-50, 50, allow_nan=False),
    st.floats(-50, 50, allow_nan=False),
)
sphere_points = st.one_of(st.just(INFINITY), finite_complex.map(finite))


def test_antipodal_normalization():
    assert chordal_distance(finite(0), INFINITY) == pytest.approx(2.0)


def test_identity_case():
    for p in (finite(0.3 + 4j), INFINITY, finite(0)):
        assert chordal_distance(p, p) == 0.0


def test_plus_minus_one():
    # 2*|1-(-1)| / sqrt(2*2) = 2
    assert chordal_distance(finite(1), finite(-1)) == pytest.approx(2.0)


def test_infinity_is_not_a_float():
    with pytest.raises(ValueError):
        SpherePoint(complex(math.inf, 0))
    with pytest.raises(ValueError):
        SpherePoint(complex(0, math.nan))


@given(sphere_points, sphere_points)
def test_symmetry_and_bound(p, q):
    d = chordal_distance(p, q)
    assert d == pytest.approx(chordal_distance(q, p), abs=1e-15)
    assert 0.0 <= d <= 2.0 + 1e-12


@given(sphere_points, sphere_points, sphere_points)
def test_triangle_inequality(p, q, r):
    assert chordal_distance(p, r) <= (
        chordal_distance(p, q) + chordal_distance(q, r) + 1e-12
    )


@given(finite_complex, finite_complex)
def test_chart_distance_matches(p, q):
    sp, sq = finite(p), finite(q)
    wp, ip_ = sp.chart()
    wq, iq = sq.chart()
    assert chordal_distance_chart(wp, ip_, wq, iq) == pytest.approx(
        chordal_distance(sp, sq), abs=1e-12
    )


def test_mobius_identity_apply():
    p = finite(3 + 4j)
    assert IDENTITY(p).value == 3 + 4j


def test_mobius_inversion_at_infinity():
    inv = Mobius(0, 1, 1, 0)  # z -> 1/z
    assert inv(INFINITY).value == 0
    assert inv(finite(0)).is_infinity


def test_tau_sends_center_to_infinity():
    # tau(z) = 1/(z - a) + 1/a as a Moebius: z / (a z - a^2)
    a = 2.3247179572447454
    tau = Mobius(1, 0, a, -(a**2))
    assert tau(finite(a)).is_infinity
    assert tau(finite(0)).value == pytest.approx(0.0, abs=1e-15)


def test_degenerate_rejected():
    with pytest.raises(DegenerateMobiusError):
        Mobius(1, 2, 2, 4)


def test_compose_inverse_round_trip():
    m = Mobius(2 + 1j, 0.5, -1j, 1.5)
    minv = m.inverse()
    for p in test_grid(100):
        q = minv(m(p))
        assert chordal_distance(q, p) < 1e-10


def test_identity_grid_contract():
    m = Mobius(1.3 - 0.2j, 0.7j, 0.11, 2 - 1j)
    comp = m.compose(m.inverse())
    for p in test_grid(60):
        assert chordal_distance(comp(p), p) < 1e-12


def test_compose_is_application_order():
    m1 = Mobius(1, 1, 0, 1)  # z + 1
    m2 = Mobius(2, 0, 0, 1)  # 2z
    p = finite(3)
    assert (m1 @ m2)(p).value == pytest.approx(7)  # m1(m2(3)) = 6 + 1
