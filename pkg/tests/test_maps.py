import numpy as np
import pytest

from qrdyn import params
from qrdyn.maps import (
    MapConstructionError,
    RationalMap,
    critical_points,
    mobius_conjugate,
    per3_free_critical_value,
    per3_map,
    polynomial_conjugacy,
    preset,
)
from qrdyn.sphere import IDENTITY, INFINITY, chordal_distance, finite

RABBIT_A = 0.33764 + 0.56228j


def test_per3_a1_degenerate_second_root():
    f = per3_map(1.0)
    # a/(2-a) = 1, so the numerator is (z-1)^2
    assert np.allclose(f.num, [1, -2, 1])
    assert f(finite(1)).value == 0


def test_per3_critical_cycle_values():
    for a in (RABBIT_A, 2.32472, 0.5 - 1.2j, 3.0 + 0.1j):
        f = per3_map(a)
        assert f(finite(0)).is_infinity
        assert f(INFINITY).value == pytest.approx(1.0)
        assert chordal_distance(f(finite(1)), finite(0)) < 1e-12


def test_per3_center_fixes_critical_point(centers):
    a1 = centers[0]
    f = per3_map(a1)
    assert chordal_distance(f(finite(a1)), finite(a1)) < 1e-10
    # quoted five-digit parameter satisfies it loosely
    f5 = per3_map(2.32472)
    assert chordal_distance(f5(finite(2.32472)), finite(2.32472)) < 1e-4


def test_per3_rejects_excluded_parameters():
    with pytest.raises(MapConstructionError):
        per3_map(0)
    with pytest.raises(MapConstructionError):
        per3_map(2)
    with pytest.raises(MapConstructionError):
        per3_map(2 + 1e-14j)


def test_per3_degree_two():
    for a in (RABBIT_A, -0.7, 1 + 2j):
        assert per3_map(a).degree == 2


def test_critical_points_per3():
    for a in (RABBIT_A, 2.32472, -1.1 + 0.3j):
        pts = critical_points(per3_map(a))
        assert len(pts) == 2
        ds = sorted(chordal_distance(p, finite(v)) for p, v in
                    zip(sorted(pts, key=lambda q: abs(q.value)), [0, a]))
        assert max(ds) < 1e-8


def test_critical_points_square():
    pts = critical_points(RationalMap([0, 0, 1], [1]))
    assert len(pts) == 2
    assert any(p.is_infinity for p in pts)
    assert any(not p.is_infinity and abs(p.value) < 1e-12 for p in pts)


def test_critical_points_devaney_quartic():
    f = preset("devaney-quartic").map
    pts = [p for p in critical_points(f) if not p.is_infinity]
    nontrivial = [p.value for p in pts if abs(p.value) > 1e-8]
    assert len(nontrivial) == 4
    for z in nontrivial:
        assert z**4 == pytest.approx(-1 / 16, abs=1e-10)


def test_critical_values_closed_form():
    for a in (RABBIT_A, 0.9 - 0.4j, 2.6 + 0.2j):
        f = per3_map(a)
        crits = critical_points(f)
        values = [f(c) for c in crits]
        assert any(v.is_infinity for v in values)
        v2 = per3_free_critical_value(a)
        assert any(
            not v.is_infinity and abs(v.value - v2) < 1e-10 for v in values
        )


def test_evaluate_pole_and_derivative():
    f = per3_map(RABBIT_A)
    assert f(finite(0)).is_infinity
    zsq = RationalMap([0, 0, 1], [1])
    assert zsq.derivative_at(finite(1)) == pytest.approx(2)


def test_superattracting_fixed_derivative(centers):
    a1 = centers[0]
    f = per3_map(a1)
    assert abs(f.chart_derivative(finite(a1))) < 1e-6


def test_presets_coefficients():
    mt = preset("milnor-tan").map
    a, b = -0.138115091, -0.303108805
    assert np.allclose(mt.num, [a, b, a])
    assert np.allclose(mt.den, [0, 1])

    dv = preset("devaney-quartic").map
    assert np.allclose(dv.num, [-1 / 16, 0, 0, 0, 1])
    assert np.allclose(dv.den, [0, 0, 1])

    st_ = preset("steinmetz").map
    # normalized to a monic denominator 1 - z -> sign flip
    val = st_(finite(0.5))
    expected = 1 + (4 / 27) * 0.5**3 / (1 - 0.5)
    assert val.value == pytest.approx(expected)


def test_preset_unknown_name():
    with pytest.raises(MapConstructionError) as ei:
        preset("nonesuch")
    assert "milnor-tan" in str(ei.value)


def test_preset_per3_requires_parameter():
    with pytest.raises(MapConstructionError):
        preset("per3")


def test_conjugate_by_identity():
    zsq = RationalMap([0, 0, 1], [1])
    g = mobius_conjugate(zsq, IDENTITY)
    assert np.allclose(g.num, [0, 0, 1])
    assert np.allclose(g.den, [1])


@pytest.mark.parametrize("which", [0, 1, 2])
def test_conjugate_per3_to_polynomial(centers, which):
    ai = centers[which]
    g = mobius_conjugate(per3_map(ai), polynomial_conjugacy(ai))
    c = params.conjugate_polynomial_constant(ai)
    assert g.den.size == 1
    num = np.zeros(3, dtype=complex)
    num[: g.num.size] = g.num
    assert abs(num[0] - c) < 1e-6
    assert abs(num[1]) < 1e-6
    assert abs(num[2] - 1) < 1e-6


def test_conjugation_pointwise_contract(centers):
    ai = centers[1]
    f = per3_map(ai)
    m = polynomial_conjugacy(ai)
    g = mobius_conjugate(f, m)
    from qrdyn.sphere import test_grid

    for p in test_grid(100):
        lhs = g(m(p))
        rhs = m(f(p))
        assert chordal_distance(lhs, rhs) < 1e-9


def test_common_root_rejected():
    with pytest.raises(MapConstructionError):
        RationalMap([0, 1], [0, 1, 1])  # z / (z(z+1))
