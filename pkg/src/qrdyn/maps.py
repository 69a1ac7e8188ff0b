"""Rational maps as coefficient data, the cubic-cycle family, and presets.

Maps are stored as ascending coefficient lists (numerator, denominator) with
a monic denominator, so conjugation and degree checks stay algebraic.  The
family

    f_a(z) = (z - 1)(z - a/(2-a)) / z^2,   a not in {0, 2},

carries the superattracting cycle 0 -> infinity -> 1 -> 0 for every
admissible a; its critical points are 0 and a, and the free critical value
is -(1-a)^2 / (a(2-a)).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import poly
from .sphere import INFINITY, Mobius, SpherePoint, chordal_distance, finite

COPRIME_TOL = 1e-10
DEGENERACY_TOL = 1e-14


class MapConstructionError(ValueError):
    pass


def _heval(c: tuple[complex, ...], w: complex) -> complex:
    """Horner on a small coefficient tuple; plain complex arithmetic is an
    order of magnitude faster than numpy for the scalar orbit paths."""
    acc = c[-1]
    for k in range(len(c) - 2, -1, -1):
        acc = acc * w + c[k]
    return acc


class RationalMap:
    """P(z)/Q(z) with ascending coefficient arrays and monic Q."""

    def __init__(self, numerator, denominator, *, name: str | None = None):
        num = poly.trim(numerator, rel_tol=DEGENERACY_TOL)
        den = poly.trim(denominator, rel_tol=DEGENERACY_TOL)
        if not np.any(np.abs(num) > 0) or not np.any(np.abs(den) > 0):
            raise MapConstructionError("zero numerator or denominator")
        lead = den[-1]
        num = num / lead
        den = den / lead
        self.num = num
        self.den = den
        self.name = name
        self.degree = max(num.size, den.size) - 1
        if self.degree < 1:
            raise MapConstructionError("degree must be at least 1")
        self._check_coprime()
        d = self.degree + 1
        # reversed-padded coefficients: f(1/w) = num_rev(w)/den_rev(w)
        self.num_rev = poly.padded(num, d)[::-1].copy()
        self.den_rev = poly.padded(den, d)[::-1].copy()
        self.dnum = poly.derivative(num)
        self.dden = poly.derivative(den)
        self.dnum_rev = poly.derivative(self.num_rev)
        self.dden_rev = poly.derivative(self.den_rev)
        # tuple mirrors for scalar evaluation
        self._t = {
            "num": tuple(num),
            "den": tuple(den),
            "num_rev": tuple(self.num_rev),
            "den_rev": tuple(self.den_rev),
            "dnum": tuple(self.dnum),
            "dden": tuple(self.dden),
            "dnum_rev": tuple(self.dnum_rev),
            "dden_rev": tuple(self.dden_rev),
        }

    def _check_coprime(self):
        # common roots would make the coefficient form lie about the degree
        if self.num.size <= 1 or self.den.size <= 1:
            return
        rn = poly.roots(self.num)
        rd = poly.roots(self.den)
        for r in rn:
            if np.min(np.abs(rd - r)) < COPRIME_TOL * max(1.0, abs(r)):
                raise MapConstructionError(
                    f"numerator and denominator share a root near {r}"
                )

    def __repr__(self):
        label = f" {self.name!r}" if self.name else ""
        return f"RationalMap{label}(num={list(self.num)}, den={list(self.den)})"

    # -- evaluation ---------------------------------------------------------

    def eval_chart(self, w: complex, inverted: bool) -> tuple[complex, bool]:
        """One application in chart coordinates; returns the image in its
        comfortable chart (|value| <= 1 unless the input started otherwise)."""
        if inverted:
            n = _heval(self._t["num_rev"], w)
            d = _heval(self._t["den_rev"], w)
        else:
            n = _heval(self._t["num"], w)
            d = _heval(self._t["den"], w)
        if d == 0:
            return 0j, True
        v = n / d
        if not (math.isfinite(v.real) and math.isfinite(v.imag)):
            return 0j, True
        if abs(v) > 1.0:
            return 1.0 / v, True
        return v, False

    def __call__(self, p: SpherePoint) -> SpherePoint:
        w, inv = p.chart()
        w2, inv2 = self.eval_chart(w, inv)
        if inv2:
            return INFINITY if w2 == 0 else SpherePoint(1.0 / w2)
        return SpherePoint(w2)

    def derivative_at(self, p: SpherePoint) -> complex | None:
        """The classical derivative f'(p); None at a pole (infinite slope).

        At infinity the value is computed in the w = 1/z chart: d/dw f(1/w)
        at 0 when f(infinity) is finite, or d/dw (1/f(1/w)) at 0 when
        infinity is fixed (then it equals the fixed-point multiplier).
        """
        if p.is_infinity:
            return self.chart_derivative(p)
        z = p.value
        qv = _heval(self._t["den"], z)
        if qv == 0:
            return None
        pv = _heval(self._t["num"], z)
        dp = _heval(self._t["dnum"], z)
        dq = _heval(self._t["dden"], z)
        return (dp * qv - pv * dq) / (qv * qv)

    def chart_derivative(self, p: SpherePoint) -> complex:
        """Local derivative of f between comfortable charts at p and f(p).

        The product of these factors along a cycle is the cycle multiplier,
        regardless of whether the cycle passes through infinity.
        """
        w, inv = p.chart()
        return self.chart_derivative_chart(w, inv)

    def chart_derivative_chart(self, w: complex, inv: bool) -> complex:
        img_w, img_inv = self.eval_chart(w, inv)
        if inv:
            a, da = self._t["num_rev"], self._t["dnum_rev"]
            b, db = self._t["den_rev"], self._t["dden_rev"]
        else:
            a, da = self._t["num"], self._t["dnum"]
            b, db = self._t["den"], self._t["dden"]
        if img_inv:
            a, da, b, db = b, db, a, da
        av = _heval(a, w)
        bv = _heval(b, w)
        dav = _heval(da, w)
        dbv = _heval(db, w)
        if bv == 0:
            # derivative blows up only off the comfortable-chart pairing;
            # callers never hit this for points matched to their charts
            return complex("inf")
        return (dav * bv - av * dbv) / (bv * bv)

    # -- structure ----------------------------------------------------------

    def wronskian(self) -> np.ndarray:
        return poly.trim(
            poly.add(
                poly.mul(self.dnum, self.den),
                poly.scale(poly.mul(self.num, self.dden), -1.0),
            ),
            rel_tol=1e-13,
        )

    def conjugate_map(self) -> "RationalMap":
        """The map with conjugated coefficients: z -> conj(f(conj(z)))."""
        return RationalMap(np.conj(self.num), np.conj(self.den))


def evaluate(f: RationalMap, p: SpherePoint) -> SpherePoint:
    return f(p)


def multiplier_along_orbit(f: RationalMap, w0: complex, inv0: bool, n: int) -> complex:
    """Derivative of f^n at the chart point (w0, inv0), as the product of
    per-step chart factors.

    When the n-th image lands in the other chart than the start (possible
    for cycle points with |z| = 1 up to rounding), the chain is closed with
    the chart-transition derivative, so a cycle multiplier comes out
    independent of chart jitter."""
    lam = 1.0 + 0j
    w, iv = complex(w0), bool(inv0)
    for _ in range(n):
        lam *= f.chart_derivative_chart(w, iv)
        w, iv = f.eval_chart(w, iv)
    if iv != inv0:
        if w == 0:
            return lam  # open orbit ended on a chart origin; nothing to close
        lam *= -1.0 / (w * w)
    return lam


def derivative(f: RationalMap, p: SpherePoint) -> complex | None:
    return f.derivative_at(p)


def critical_points(f: RationalMap) -> list[SpherePoint]:
    """All critical points, without multiplicity; infinity included when the
    Wronskian degree drops below 2 deg(f) - 2."""
    w = f.wronskian()
    pts: list[SpherePoint] = []
    if w.size > 1:
        for r in poly.roots(w):
            pts.append(finite(r))
    full = 2 * f.degree - 2
    if poly.degree(w) < full:
        pts.append(INFINITY)
    # merge numerically coincident roots
    out: list[SpherePoint] = []
    for p in pts:
        if all(chordal_distance(p, q) > 1e-9 for q in out):
            out.append(p)
    return out


def critical_values(f: RationalMap) -> list[SpherePoint]:
    return [f(c) for c in critical_points(f)]


# -- the cubic-cycle family -------------------------------------------------


def per3_b(a: complex) -> complex:
    """Second numerator root b = a/(2-a)."""
    return a / (2.0 - a)


def validate_per3_parameter(a: complex, tol: float = 1e-12) -> complex:
    a = complex(a)
    if abs(a) < tol:
        raise MapConstructionError("parameter a = 0 is excluded (degree drops to 1)")
    if abs(a - 2.0) < tol:
        raise MapConstructionError("parameter a = 2 is excluded (map undefined)")
    return a


def per3_map(a: complex) -> RationalMap:
    """f_a(z) = (z-1)(z - a/(2-a)) / z^2 on the admissible set a not in {0,2}."""
    a = validate_per3_parameter(a)
    b = per3_b(a)
    num = [b, -(1.0 + b), 1.0]
    den = [0.0, 0.0, 1.0]
    return RationalMap(num, den, name=f"per3(a={a})")


def per3_free_critical_value(a: complex) -> complex:
    a = validate_per3_parameter(a)
    return -((1.0 - a) ** 2) / (a * (2.0 - a))


# -- Moebius conjugation ----------------------------------------------------


def mobius_conjugate(f: RationalMap, m: Mobius) -> RationalMap:
    """Coefficients of m o f o m^{-1}.

    Checked elsewhere against pointwise application; raises
    MapConstructionError when the algebra degenerates (all leading
    coefficients below 1e-14 of scale).
    """
    inv = m.inverse()
    # f(m^{-1}(z)) as a ratio of polynomials in z
    u = np.array([inv.b, inv.a], dtype=complex)
    v = np.array([inv.d, inv.c], dtype=complex)
    d = max(poly.degree(f.num), poly.degree(f.den))
    fn = poly.padded(f.num, d + 1)
    fd = poly.padded(f.den, d + 1)
    an = poly.compose_rational(fn, u, v)
    ad = poly.compose_rational(fd, u, v)
    num = poly.add(poly.scale(an, m.a), poly.scale(ad, m.b))
    den = poly.add(poly.scale(an, m.c), poly.scale(ad, m.d))
    scale = max(float(np.max(np.abs(num))), float(np.max(np.abs(den))))
    if scale <= 0 or not np.isfinite(scale):
        raise MapConstructionError("conjugation produced a degenerate map")
    num = poly.trim(num / scale, rel_tol=DEGENERACY_TOL)
    den = poly.trim(den / scale, rel_tol=DEGENERACY_TOL)
    return RationalMap(num, den)


def polynomial_conjugacy(ai: complex) -> Mobius:
    """The Moebius map (sigma o tau) sending f_{a_i} to a quadratic polynomial:
    tau(z) = 1/(z - a_i) + 1/a_i followed by sigma(z) = -a_i^3 (a_i - 2) z."""
    ai = complex(ai)
    s = -(ai**3) * (ai - 2.0)
    tau = Mobius(1.0, 0.0, ai, -(ai**2))
    sigma = Mobius(s, 0.0, 0.0, 1.0)
    return sigma @ tau


# -- figure presets ---------------------------------------------------------


@dataclass(frozen=True)
class MapPreset:
    name: str
    map: RationalMap
    description: str
    default_window: tuple[complex, float, float]  # center, width, height


def _build_presets() -> dict[str, MapPreset]:
    presets = {}
    a, b = -0.138115091, -0.303108805
    presets["milnor-tan"] = MapPreset(
        "milnor-tan",
        RationalMap([a, b, a], [0.0, 1.0], name="milnor-tan"),
        f"{a}*(z + 1/z) + {b}, a quadratic rational map with Sierpinski-curve Julia set",
        (0j, 4.0, 4.0),
    )
    presets["devaney-quartic"] = MapPreset(
        "devaney-quartic",
        RationalMap([-1.0 / 16.0, 0.0, 0.0, 0.0, 1.0], [0.0, 0.0, 1.0],
                    name="devaney-quartic"),
        "z^2 - 1/(16 z^2)",
        (0j, 3.0, 3.0),
    )
    presets["steinmetz"] = MapPreset(
        "steinmetz",
        RationalMap([1.0, -1.0, 0.0, 4.0 / 27.0], [1.0, -1.0], name="steinmetz"),
        "1 + (4/27) z^3 / (1 - z)",
        (1.0 + 0j, 6.0, 6.0),
    )
    return presets


_PRESETS = _build_presets()

PRESET_NAMES = ("milnor-tan", "devaney-quartic", "steinmetz", "per3")


def preset(name: str, a: complex | None = None) -> MapPreset:
    """Named map presets; 'per3' requires the family parameter a."""
    if name == "per3":
        if a is None:
            raise MapConstructionError("preset 'per3' needs a parameter a")
        return MapPreset(
            "per3", per3_map(a), f"(z-1)(z-a/(2-a))/z^2 at a={a}", (0j, 4.0, 4.0)
        )
    try:
        return _PRESETS[name]
    except KeyError:
        raise MapConstructionError(
            f"unknown preset {name!r}; valid names: {', '.join(PRESET_NAMES)}"
        ) from None
