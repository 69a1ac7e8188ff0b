"""Periodic points of small period by algebraic root extraction.

Period-n points come from the roots of numerator(f^n(z) - z), built by
coefficient composition; roots of lower period are removed by classifying
each root's exact period under iteration.  The point at infinity is tested
separately in the 1/z chart, which coefficient equations cannot see.

Near a parabolic coalescence several roots collapse onto one location;
clusters within COALESCE_RADIUS are reported once with a coalescence flag
and a multiplicity count instead of being split into meaningless copies.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import poly
from .maps import RationalMap
from .sphere import INFINITY, SpherePoint, chordal_distance, finite, from_chart

MAX_PERIOD = 6
RESIDUAL_TOL = 1e-9
MERGE_RADIUS = 1e-7
COALESCE_RADIUS = 1e-5

ATTRACTING_EDGE = 1.0 - 1e-9
REPELLING_EDGE = 1.0 + 1e-9
SUPER_EDGE = 1e-8


class PeriodicPointError(RuntimeError):
    def __init__(self, message, residuals=None):
        super().__init__(message)
        self.residuals = residuals


def stability_class(multiplier: complex) -> str:
    m = abs(multiplier)
    if m < SUPER_EDGE:
        return "superattracting"
    if m < ATTRACTING_EDGE:
        return "attracting"
    if m > REPELLING_EDGE:
        return "repelling"
    return "indifferent"


@dataclass(frozen=True)
class PeriodicPoint:
    location: SpherePoint
    exact_period: int
    multiplier: complex
    stability: str
    multiplicity: int = 1
    coalesced: bool = False


# -- Newton polish on f^n(z) = z ---------------------------------------------


def newton_polish_periodic(
    f: RationalMap,
    w0: complex,
    inv0: bool,
    n: int,
    *,
    max_iter: int = 60,
    step_tol: float = 1e-14,
) -> tuple[complex, bool] | None:
    """Polish a period-n point in its comfortable chart.

    Newton on g(w) = (f^n in chart) - w, with the derivative accumulated as
    the product of per-step chart factors.  Returns None when the iteration
    stalls (e.g. multiplier ~ 1, the parabolic case) rather than guessing.
    """
    w = complex(w0)
    for _ in range(max_iter):
        wv, iv = w, inv0
        lam = 1.0 + 0j
        for _ in range(n):
            lam *= f.chart_derivative_chart(wv, iv)
            wv, iv = f.eval_chart(wv, iv)
        if iv != inv0:
            # express the image in the anchor's chart
            if wv == 0:
                return None
            lam *= -1.0 / (wv * wv)
            wv = 1.0 / wv
        g = wv - w
        dg = lam - 1.0
        if abs(dg) < 1e-12:
            return None
        delta = g / dg
        w = w - delta
        if abs(delta) < step_tol * (1.0 + abs(w)):
            return w, inv0
    return w, inv0


# -- coefficient composition --------------------------------------------------


def iterate_coefficients(f: RationalMap, n: int) -> tuple[np.ndarray, np.ndarray]:
    """(numerator, denominator) coefficient arrays of f^n, rescaled each step
    to keep magnitudes near one."""
    pn, qn = f.num.copy(), f.den.copy()
    d = f.degree + 1
    fn = poly.padded(f.num, d)
    fd = poly.padded(f.den, d)
    for _ in range(n - 1):
        new_p = poly.compose_rational(fn, pn, qn)
        new_q = poly.compose_rational(fd, pn, qn)
        s = max(float(np.max(np.abs(new_p))), float(np.max(np.abs(new_q))))
        pn = poly.trim(new_p / s, rel_tol=1e-300)
        qn = poly.trim(new_q / s, rel_tol=1e-300)
    return pn, qn


def periodicity_polynomial(f: RationalMap, n: int) -> np.ndarray:
    """numerator(f^n(z) - z) = P_n(z) - z Q_n(z), ascending coefficients."""
    pn, qn = iterate_coefficients(f, n)
    zq = np.concatenate([[0j], qn])
    phi = poly.add(pn, poly.scale(zq, -1.0))
    return poly.trim(phi, rel_tol=1e-12)


# -- classification helpers ---------------------------------------------------


def _orbit_points(f: RationalMap, p: SpherePoint, n: int) -> list[SpherePoint]:
    pts = [p]
    w, iv = p.chart()
    for _ in range(n):
        w, iv = f.eval_chart(w, iv)
        pts.append(from_chart(w, iv))
    return pts


def _exact_period(f: RationalMap, p: SpherePoint, n: int, tol: float = 1e-7) -> int:
    orbit = _orbit_points(f, p, n)
    for d in range(1, n + 1):
        if n % d == 0 and chordal_distance(orbit[d], p) < tol:
            return d
    return 0  # not periodic within tolerance at any divisor


def _multiplier_along(f: RationalMap, p: SpherePoint, n: int) -> complex:
    from .maps import multiplier_along_orbit

    w, iv = p.chart()
    return multiplier_along_orbit(f, w, iv, n)


def _residual(f: RationalMap, p: SpherePoint, n: int) -> float:
    orbit = _orbit_points(f, p, n)
    return chordal_distance(orbit[n], p)


def _cluster(points: list[complex], radius: float) -> list[tuple[complex, int]]:
    """Greedy clustering; returns (centroid, count) per cluster."""
    clusters: list[list[complex]] = []
    for z in points:
        for c in clusters:
            if abs(z - c[0]) < radius:
                c.append(z)
                break
        else:
            clusters.append([z])
    return [(sum(c) / len(c), len(c)) for c in clusters]


def _polish_finite(f: RationalMap, z: complex, n: int) -> SpherePoint:
    p = finite(z)
    w, iv = p.chart()
    out = newton_polish_periodic(f, w, iv, n)
    if out is None:
        return p
    return from_chart(*out)


# -- public operations --------------------------------------------------------


def periodic_points(f: RationalMap, n: int) -> list[PeriodicPoint]:
    """All points of exact period n (1 <= n <= MAX_PERIOD), with multipliers,
    polished to residual < 1e-9 (or flagged as coalesced clusters)."""
    if not 1 <= n <= MAX_PERIOD:
        raise PeriodicPointError(
            f"period {n} out of range 1..{MAX_PERIOD} "
            "(the degree of the periodicity polynomial doubles per step)"
        )
    phi = periodicity_polynomial(f, n)
    raw = list(poly.roots(phi)) if phi.size > 1 else []
    out: list[PeriodicPoint] = []
    bad: list[float] = []

    for z, count in _cluster(raw, COALESCE_RADIUS):
        loc = _polish_finite(f, z, n)
        ep = _exact_period(f, loc, n)
        if ep != n:
            continue  # lower-period (or spurious) root: deflated away
        res = _residual(f, loc, n)
        if res > RESIDUAL_TOL:
            bad.append(res)
            continue
        lam = _multiplier_along(f, loc, n)
        out.append(
            PeriodicPoint(
                location=loc,
                exact_period=n,
                multiplier=lam,
                stability=stability_class(lam),
                multiplicity=count,
                coalesced=count > 1,
            )
        )

    # the point at infinity never appears among coefficient roots
    inf_period = _exact_period(f, INFINITY, n, tol=1e-9)
    if inf_period == n:
        lam = _multiplier_along(f, INFINITY, n)
        out.append(
            PeriodicPoint(
                location=INFINITY,
                exact_period=n,
                multiplier=lam,
                stability=stability_class(lam),
            )
        )

    if bad:
        raise PeriodicPointError(
            f"{len(bad)} period-{n} roots failed the 1e-9 residual bound",
            residuals=bad,
        )
    return _merge_duplicates(out)


def _merge_duplicates(pts: list[PeriodicPoint]) -> list[PeriodicPoint]:
    kept: list[PeriodicPoint] = []
    for p in pts:
        if all(
            chordal_distance(p.location, q.location) > MERGE_RADIUS for q in kept
        ):
            kept.append(p)
    return kept


def fixed_points(f: RationalMap) -> list[PeriodicPoint]:
    """All fixed points with multipliers.  For a quadratic rational map not
    fixing infinity this is three points counted with multiplicity."""
    phi = periodicity_polynomial(f, 1)
    raw = list(poly.roots(phi)) if phi.size > 1 else []
    out: list[PeriodicPoint] = []
    bad: list[float] = []
    for z, count in _cluster(raw, COALESCE_RADIUS):
        loc = _polish_finite(f, z, 1)
        res = _residual(f, loc, 1)
        if res > RESIDUAL_TOL:
            bad.append(res)
            continue
        lam = _multiplier_along(f, loc, 1)
        out.append(
            PeriodicPoint(loc, 1, lam, stability_class(lam), count, count > 1)
        )
    if chordal_distance(f(INFINITY), INFINITY) < 1e-9:
        lam = _multiplier_along(f, INFINITY, 1)
        missing = (f.degree + 1) - sum(p.multiplicity for p in out)
        out.append(
            PeriodicPoint(
                INFINITY, 1, lam, stability_class(lam), max(1, missing), missing > 1
            )
        )
    if bad:
        raise PeriodicPointError(
            f"{len(bad)} fixed-point roots failed the 1e-9 residual bound",
            residuals=bad,
        )
    return _merge_duplicates(out)


def cycles_of_period(f: RationalMap, n: int) -> list[list[PeriodicPoint]]:
    """Points of exact period n grouped into orbits under f."""
    pts = periodic_points(f, n)
    remaining = list(pts)
    groups: list[list[PeriodicPoint]] = []
    while remaining:
        seed = remaining.pop(0)
        orbit = _orbit_points(f, seed.location, n - 1) if n > 1 else [seed.location]
        group = [seed]
        for q in orbit[1:]:
            match = None
            for other in remaining:
                if chordal_distance(other.location, q) < 1e-6:
                    match = other
                    break
            if match is not None:
                remaining.remove(match)
                group.append(match)
        groups.append(group)
    return groups
