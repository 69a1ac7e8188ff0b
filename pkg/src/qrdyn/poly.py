"""Polynomial helpers on ascending complex coefficient arrays.

Root extraction uses Aberth-Ehrlich simultaneous iteration (all roots at
once, cubically convergent for simple roots) with a Newton polish pass.
"""

from __future__ import annotations

import numpy as np


class RootFindingError(RuntimeError):
    """Raised when simultaneous iteration fails its residual target."""

    def __init__(self, message, residuals=None):
        super().__init__(message)
        self.residuals = residuals


def trim(coeffs, rel_tol: float = 0.0) -> np.ndarray:
    """Drop trailing (high-degree) coefficients that are zero, or negligible
    relative to the largest coefficient when rel_tol > 0."""
    c = np.atleast_1d(np.asarray(coeffs, dtype=complex))
    scale = float(np.max(np.abs(c))) if c.size else 0.0
    cut = rel_tol * scale
    n = c.size
    while n > 1 and abs(c[n - 1]) <= cut:
        n -= 1
    return c[:n].copy()


def degree(coeffs) -> int:
    return trim(coeffs).size - 1


def padded(coeffs, length: int) -> np.ndarray:
    c = np.asarray(coeffs, dtype=complex)
    if c.size >= length:
        return c[:length].copy()
    out = np.zeros(length, dtype=complex)
    out[: c.size] = c
    return out


def add(p, q) -> np.ndarray:
    n = max(len(p), len(q))
    return padded(p, n) + padded(q, n)


def mul(p, q) -> np.ndarray:
    return np.convolve(np.asarray(p, dtype=complex), np.asarray(q, dtype=complex))


def scale(p, s: complex) -> np.ndarray:
    return np.asarray(p, dtype=complex) * complex(s)


def derivative(p) -> np.ndarray:
    c = np.asarray(p, dtype=complex)
    if c.size <= 1:
        return np.zeros(1, dtype=complex)
    return c[1:] * np.arange(1, c.size)


def horner(coeffs, z):
    """Evaluate at a scalar or ndarray of points."""
    c = np.asarray(coeffs, dtype=complex)
    acc = np.zeros_like(np.asarray(z, dtype=complex)) + c[-1]
    for k in range(c.size - 2, -1, -1):
        acc = acc * z + c[k]
    return acc


def compose_rational(outer, u, v) -> np.ndarray:
    """Coefficients of v(z)^deg(outer) * outer(u(z)/v(z)).

    Substituting a rational expression u/v into a polynomial and clearing
    denominators; the workhorse behind conjugation and map iteration.
    """
    c = trim(outer)
    d = c.size - 1
    u = np.asarray(u, dtype=complex)
    v = np.asarray(v, dtype=complex)
    # powers of u and v up to degree d
    u_pows = [np.ones(1, dtype=complex)]
    v_pows = [np.ones(1, dtype=complex)]
    for _ in range(d):
        u_pows.append(mul(u_pows[-1], u))
        v_pows.append(mul(v_pows[-1], v))
    out = np.zeros(1, dtype=complex)
    for k in range(d + 1):
        out = add(out, scale(mul(u_pows[k], v_pows[d - k]), c[k]))
    return out


def roots(coeffs, *, max_iter: int = 500, tol: float = 1e-12) -> np.ndarray:
    """All roots of a polynomial by Aberth-Ehrlich iteration.

    Residual target is relative: |p(z)| < tol * sum_k |a_k| |z|^k at every
    root.  Raises RootFindingError (carrying the residual vector) if the
    budget is exhausted first.
    """
    c = trim(np.asarray(coeffs, dtype=complex))
    # strip exact zero roots at the origin up front
    nz = 0
    while nz < c.size - 1 and c[nz] == 0:
        nz += 1
    zero_roots = np.zeros(nz, dtype=complex)
    c = c[nz:]
    n = c.size - 1
    if n == 0:
        return zero_roots
    if n == 1:
        return np.concatenate([zero_roots, [-c[0] / c[1]]])

    cn = c / c[-1]
    radius = 1.0 + float(np.max(np.abs(cn[:-1])))
    k = np.arange(n)
    z = radius * np.exp(2j * np.pi * (k + 0.25) / n + 0.4j)

    dc = derivative(c)
    absc = np.abs(c)
    done = False
    for _ in range(max_iter):
        pz = horner(c, z)
        scale_z = horner(absc, np.abs(z)).real + 1e-300
        resid = np.abs(pz) / scale_z
        if np.all(resid < tol):
            done = True
            break
        dpz = horner(dc, z)
        with np.errstate(divide="ignore", invalid="ignore"):
            w = np.where(dpz != 0, pz / np.where(dpz == 0, 1, dpz), 0.1 + 0.1j)
            diff = z[:, None] - z[None, :]
            np.fill_diagonal(diff, 1.0)
            inv = 1.0 / diff
            np.fill_diagonal(inv, 0.0)
            s = inv.sum(axis=1)
            corr = w / (1.0 - w * s)
        corr = np.where(np.isfinite(corr), corr, 0.5 * w)
        z = z - corr
    if not done:
        pz = horner(c, z)
        scale_z = horner(absc, np.abs(z)).real + 1e-300
        resid = np.abs(pz) / scale_z
        if not np.all(resid < 1e3 * tol):
            raise RootFindingError(
                f"simultaneous iteration stalled (max residual {resid.max():.3e})",
                residuals=resid,
            )
    # Newton polish, keeping the pre-polish value when polish degrades it
    for _ in range(3):
        pz = horner(c, z)
        dpz = horner(dc, z)
        step = np.where(np.abs(dpz) > 1e-300, pz / np.where(dpz == 0, 1, dpz), 0)
        z2 = z - step
        better = np.abs(horner(c, z2)) <= np.abs(pz)
        z = np.where(better, z2, z)
    return np.concatenate([zero_roots, z])
