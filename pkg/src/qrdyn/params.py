"""Exact-target numerics for the special parameters of the family
f_a(z) = (z-1)(z-a/(2-a))/z^2.

Three kinds of distinguished parameter values:

  * polynomial centers: the roots of a^3 - 3a^2 + 2a - 1 = 0, where the free
    critical point a is a superattracting fixed point and f_a is conformally
    conjugate to a quadratic polynomial z^2 + c with c = -a^2(a-2) (the
    airplane for the real root, the rabbit and co-rabbit for the conjugate
    pair);

  * parabolic parameters: the five values of a where some fixed point has
    multiplier e^{+-2 pi i/3}, located by a multi-start two-variable Newton
    on (f_a(z) - z, f_a'(z) - lambda) over a seed grid;

  * the cut points 0, x, xbar where the boundaries of the two bitransitive
    regions meet; {x, xbar} is the parabolic pair whose parabolic fixed
    point sits on the common boundary of all three critical-cycle basins,
    told apart from the other pair by a contact probe near the parabolic
    point (see identify_cut_pair).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import poly
from .maps import validate_per3_parameter

RESIDUAL_TOL = 1e-10

CENTER_CUBIC = np.array([-1.0, 2.0, -3.0, 1.0], dtype=complex)  # a^3-3a^2+2a-1


def _newton_polish_poly(coeffs, z, steps: int = 4):
    d = poly.derivative(coeffs)
    for _ in range(steps):
        fz = poly.horner(coeffs, z)
        dz = poly.horner(d, z)
        z = z - np.where(np.abs(dz) > 1e-300, fz / np.where(dz == 0, 1, dz), 0)
    return z


def polynomial_centers() -> tuple[complex, complex, complex]:
    """Roots of the center cubic, ordered real first, then positive
    imaginary, then negative imaginary."""
    r = _newton_polish_poly(CENTER_CUBIC, poly.roots(CENTER_CUBIC))
    real = [z for z in r if abs(z.imag) < 1e-9]
    plus = [z for z in r if z.imag >= 1e-9]
    minus = [z for z in r if z.imag <= -1e-9]
    a1 = complex(real[0].real, 0.0)
    return a1, complex(plus[0]), complex(minus[0])


def conjugate_polynomial_constant(ai: complex) -> complex:
    """c with f_{a_i} conformally conjugate to z^2 + c: c = -a_i^2 (a_i - 2)."""
    ai = complex(ai)
    return -(ai**2) * (ai - 2.0)


@dataclass(frozen=True)
class ParabolicParameter:
    a: complex
    multiplier: complex
    fixed_point: complex
    admissible: bool  # False for the degenerate root a = 0 (excluded domain)


def _fixed_point_seeds(a: complex) -> np.ndarray:
    """Fixed points of f_a: roots of z^3 - z^2 + (1+b) z - b with b = a/(2-a)."""
    b = a / (2.0 - a)
    return np.roots([1.0, -1.0, (1.0 + b), -b]).astype(complex)


def parabolic_parameters(
    multiplier: complex,
    *,
    seed_step: float = 0.25,
    dedup_tol: float = 1e-6,
    max_iter: int = 80,
) -> list[ParabolicParameter]:
    """All parameters a where f_a has a fixed point of the given multiplier.

    Multi-start Newton in the two unknowns (z, a) on the cleared-denominator
    system

        G(z,a) = z^2 - (1+b) z + b - z^3 = 0        (f_a(z) = z)
        H(z,a) = (1+b) z - 2b - lambda z^3 = 0      (f_a'(z) = lambda)

    with b = a/(2-a), seeded on the grid Re(a) in [-1,3], Im(a) in [-2,2] at
    seed_step, z at each fixed point of the seed map.  The degenerate root
    a = 0 is returned flagged as outside the admissible domain.
    """
    lam = complex(multiplier)
    if abs(abs(lam) - 1.0) > 1e-12:
        raise ValueError("parabolic search expects a unimodular multiplier")

    seeds_z = []
    seeds_a = []
    for re in np.arange(-1.0, 3.0 + seed_step / 2, seed_step):
        for im in np.arange(-2.0, 2.0 + seed_step / 2, seed_step):
            a = complex(re, im)
            if abs(a - 2.0) < 1e-9:
                continue
            for z in _fixed_point_seeds(a):
                seeds_z.append(z)
                seeds_a.append(a)
    z = np.array(seeds_z, dtype=complex)
    a = np.array(seeds_a, dtype=complex)

    for _ in range(max_iter):
        with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
            b = a / (2.0 - a)
            db = 2.0 / (2.0 - a) ** 2
            G = z * z - (1.0 + b) * z + b - z**3
            H = (1.0 + b) * z - 2.0 * b - lam * z**3
            Gz = 2.0 * z - (1.0 + b) - 3.0 * z * z
            Ga = (1.0 - z) * db
            Hz = (1.0 + b) - 3.0 * lam * z * z
            Ha = (z - 2.0) * db
            det = Gz * Ha - Ga * Hz
            det = np.where(np.abs(det) < 1e-300, 1e-300, det)
            dz = (Ha * G - Ga * H) / det
            da = (Gz * H - Hz * G) / det
        bad = ~(np.isfinite(dz) & np.isfinite(da))
        dz = np.where(bad, 0, dz)
        da = np.where(bad, 0, da)
        z = z - dz
        a = a - da

    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        b = a / (2.0 - a)
        G = z * z - (1.0 + b) * z + b - z**3
        H = (1.0 + b) * z - 2.0 * b - lam * z**3
    ok = (
        np.isfinite(G)
        & np.isfinite(H)
        & (np.abs(G) < RESIDUAL_TOL)
        & (np.abs(H) < RESIDUAL_TOL)
        & (np.abs(a - 2.0) > 1e-6)
    )
    found: list[ParabolicParameter] = []
    for zi, ai in zip(z[ok], a[ok]):
        if any(abs(ai - p.a) < dedup_tol for p in found):
            continue
        admissible = abs(ai) > 1e-9 and abs(ai - 2.0) > 1e-9
        found.append(ParabolicParameter(complex(ai), lam, complex(zi), admissible))
    if not found:
        raise RuntimeError(
            f"parabolic Newton found no roots for multiplier {lam} "
            f"(best residual {np.abs(G).min():.3e})"
        )
    found.sort(key=lambda p: (abs(p.a) > 1e-9, p.a.real, p.a.imag))
    return found


def parabolic_cubic_roots(multiplier: complex) -> list[tuple[complex, complex]]:
    """Independent route to the same parameters, used as a cross-check: the
    two-equation system eliminates to (1+L) z^3 - (3+L) z^2 + 2z - 1 = 0 in
    the fixed point z alone; then b = (z^3 - z^2 + z)/(1 - z) and
    a = 2b/(1+b).  Returns (a, z) pairs."""
    lam = complex(multiplier)
    zs = poly.roots(np.array([-1.0, 2.0, -(3.0 + lam), (1.0 + lam)], dtype=complex))
    out = []
    for z in zs:
        b = (z**3 - z**2 + z) / (1.0 - z)
        a = 2.0 * b / (1.0 + b)
        out.append((complex(a), complex(z)))
    return out


@dataclass(frozen=True)
class SpecialParameters:
    """All distinguished parameter values of the family, fully populated."""

    airplane_a: complex
    rabbit_a: complex
    corabbit_a: complex
    cut_x: complex
    cut_xbar: complex
    bif_delta2: complex
    bif_delta3: complex
    zero: complex = 0j

    def cut_points(self) -> tuple[complex, complex, complex]:
        return (self.zero, self.cut_x, self.cut_xbar)

    def as_dict(self) -> dict[str, complex]:
        return {
            "airplane_a": self.airplane_a,
            "rabbit_a": self.rabbit_a,
            "corabbit_a": self.corabbit_a,
            "cut_x": self.cut_x,
            "cut_xbar": self.cut_xbar,
            "bif_delta2": self.bif_delta2,
            "bif_delta3": self.bif_delta3,
            "zero": self.zero,
        }


@lru_cache(maxsize=1)
def special_parameters() -> SpecialParameters:
    """Assemble the full record; the {x, xbar} assignment among the parabolic
    pairs comes from the basin-contact probe in the classification module
    (paper values pinned in the regression tests)."""
    from . import classify  # local import: classify depends on this module

    a1, a2, a3 = polynomial_centers()
    plus = [p for p in parabolic_parameters(np.exp(2j * np.pi / 3)) if p.admissible]
    if len(plus) != 2:
        raise RuntimeError(f"expected two admissible parabolic parameters, got {plus}")
    cut = classify.identify_cut_parameter(plus)
    others = [p for p in plus if abs(p.a - cut.a) > 1e-9]
    delta = others[0]
    x = cut.a
    d2 = delta.a
    # conjugation symmetry pins the lower-half-plane copies
    sp = SpecialParameters(
        airplane_a=a1,
        rabbit_a=a2,
        corabbit_a=a3,
        cut_x=x,
        cut_xbar=x.conjugate(),
        bif_delta2=d2,
        bif_delta3=d2.conjugate(),
    )
    _validate_special(sp)
    return sp


def _validate_special(sp: SpecialParameters):
    for name in ("airplane_a", "rabbit_a", "corabbit_a"):
        a = getattr(sp, name)
        r = abs(complex(poly.horner(CENTER_CUBIC, a)))
        if r > RESIDUAL_TOL:
            raise RuntimeError(f"{name} fails the center cubic by {r:.2e}")
    for name in ("cut_x", "cut_xbar", "bif_delta2", "bif_delta3"):
        a = getattr(sp, name)
        validate_per3_parameter(a)
        lam = np.exp(2j * np.pi / 3) if a.imag > 0 else np.exp(-2j * np.pi / 3)
        best = min(
            abs(a - cand) for cand, _ in parabolic_cubic_roots(lam)
        )
        if best > 1e-8:
            raise RuntimeError(f"{name} fails its parabolic system by {best:.2e}")
    if abs(sp.rabbit_a - sp.corabbit_a.conjugate()) > 1e-12:
        raise RuntimeError("rabbit/co-rabbit are not conjugates")
    if abs(sp.cut_x - sp.cut_xbar.conjugate()) > 1e-12:
        raise RuntimeError("cut points are not conjugates")
