"""Exact combinatorics of the angle-doubling map t -> 2t on R/Z.

Angles are exact rationals (stdlib Fraction), so every cyclic-order
comparison is decided exactly; no floats enter this module.  An angle p/q in
lowest terms is periodic under doubling iff q is odd, with period equal to
the multiplicative order of 2 mod q; even denominators give a pre-period.

Two orbits are "mixed" when four of their angles interleave around the
circle (eta_a < tau_b < eta_c < tau_d cyclically).  The production test
counts label-alternation blocks around the circle (>= 4 blocks iff mixed);
the quadruple brute force is kept as the reference oracle and the two are
checked against each other in the test suite.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

Angle = Fraction


class EndpointError(ValueError):
    """Raised for quadrant queries at the fixed/prefixed endpoints."""


class NotDistinctError(ValueError):
    pass


class TooSmallError(ValueError):
    pass


def angle(num: int, den: int) -> Angle:
    """The reduced angle num/den moved into [0, 1)."""
    if den <= 0:
        raise ValueError("denominator must be positive")
    return Fraction(num, den) % 1


def double(theta: Angle) -> Angle:
    return (2 * theta) % 1


@dataclass(frozen=True)
class DoublingOrbit:
    angles: tuple[Angle, ...]
    periodic: bool
    period: int  # 0 when the seed is not on a cycle

    def __len__(self):
        return len(self.angles)


def orbit(theta: Angle) -> DoublingOrbit:
    """The forward orbit until the first repeat: the full cycle for odd
    denominators, otherwise the pre-period followed by the cycle."""
    theta = theta % 1
    seen: dict[Angle, int] = {}
    seq: list[Angle] = []
    t = theta
    while t not in seen:
        seen[t] = len(seq)
        seq.append(t)
        t = double(t)
    periodic = t == theta
    return DoublingOrbit(tuple(seq), periodic, len(seq) - seen[t] if periodic else 0)


def cycle_period(theta: Angle) -> int:
    """Multiplicative order of 2 modulo the (odd) denominator."""
    q = theta.denominator
    if q % 2 == 0:
        raise ValueError("even denominator: the angle is not on a cycle")
    if q == 1:
        return 1
    k, r = 1, 2 % q
    while r != 1:
        r = (2 * r) % q
        k += 1
    return k


_ENDPOINTS = (Fraction(0), Fraction(1, 4), Fraction(1, 2), Fraction(3, 4))


def quadrant(theta: Angle) -> int:
    """1..4 for (0,1/4), (1/4,1/2), (1/2,3/4), (3/4,1): the quadrant index
    equals one plus the first two binary digits of the angle."""
    theta = theta % 1
    if theta in _ENDPOINTS:
        raise EndpointError(f"{theta} is an endpoint of the quadrant partition")
    return int(4 * theta) + 1


def cyclically_ordered(a: Angle, b: Angle, c: Angle, d: Angle) -> bool:
    """True when b, c, d are met in this order walking the circle from a."""
    rb = (b - a) % 1
    rc = (c - a) % 1
    rd = (d - a) % 1
    return 0 < rb < rc < rd


def _check_pair(eta: DoublingOrbit, tau: DoublingOrbit):
    se, st = set(eta.angles), set(tau.angles)
    if len(se) < 2 or len(st) < 2:
        raise TooSmallError("mixing needs at least two distinct angles per orbit")
    if se & st:
        raise NotDistinctError("orbits share an angle")


def is_mixed_bruteforce(eta: DoublingOrbit, tau: DoublingOrbit) -> bool:
    """Reference: search all index quadruples for eta_a < tau_b < eta_c < tau_d
    in the cyclic order."""
    _check_pair(eta, tau)
    for ea, ec in combinations(set(eta.angles), 2):
        for tb, td in combinations(set(tau.angles), 2):
            if (
                cyclically_ordered(ea, tb, ec, td)
                or cyclically_ordered(ea, td, ec, tb)
            ):
                return True
    return False


def is_mixed(eta: DoublingOrbit, tau: DoublingOrbit) -> bool:
    """Interleaving scan: sort all angles, walk the circle once and count
    maximal same-orbit blocks; four or more blocks is exactly the mixed
    condition."""
    _check_pair(eta, tau)
    labeled = sorted(
        [(a, 0) for a in set(eta.angles)] + [(a, 1) for a in set(tau.angles)]
    )
    labels = [lab for _, lab in labeled]
    blocks = 1
    for i in range(1, len(labels)):
        if labels[i] != labels[i - 1]:
            blocks += 1
    if labels[0] == labels[-1] and blocks > 1:
        blocks -= 1  # circular wrap joins the first and last block
    return blocks >= 4


def periodic_cycles(period: int) -> list[DoublingOrbit]:
    """All doubling cycles of exact period `period`, each listed once from
    its smallest angle."""
    q = 2**period - 1
    seen: set[Angle] = set()
    cycles: list[DoublingOrbit] = []
    for j in range(1, q):
        t = Fraction(j, q)
        if t in seen:
            continue
        o = orbit(t)
        seen.update(o.angles)
        if o.period == period:
            start = min(o.angles)
            k = o.angles.index(start)
            cycles.append(
                DoublingOrbit(o.angles[k:] + o.angles[:k], True, period)
            )
    return cycles


def mixed_check(max_period: int, min_period: int = 3) -> tuple[bool, int]:
    """Exhaustively test that every pair of distinct cycles with periods in
    [min_period, max_period] is mixed; returns (all_mixed, pairs_tested)."""
    pool: list[DoublingOrbit] = []
    for k in range(min_period, max_period + 1):
        pool.extend(periodic_cycles(k))
    tested = 0
    for o1, o2 in combinations(pool, 2):
        tested += 1
        if not is_mixed(o1, o2):
            return False, tested
    return True, tested


def count_cycles(period: int) -> int:
    """Number of exact-period cycles, by Moebius inversion on 2^d - 1."""
    total = 0
    for d in range(1, period + 1):
        if period % d == 0:
            total += _moebius(period // d) * (2**d - 1)
    return total // period


def _moebius(n: int) -> int:
    if n == 1:
        return 1
    m, k = n, 0
    p = 2
    while p * p <= m:
        if m % p == 0:
            m //= p
            if m % p == 0:
                return 0
            k += 1
        p += 1
    if m > 1:
        k += 1
    return (-1) ** k


def truncated_orbit(theta: Angle, max_steps: int = 64) -> DoublingOrbit:
    """Evidence-grade truncation for angles with even denominator: the first
    max_steps doubling images (or until the first repeat)."""
    theta = theta % 1
    seen = set()
    seq = []
    t = theta
    for _ in range(max_steps):
        if t in seen:
            break
        seen.add(t)
        seq.append(t)
        t = double(t)
    return DoublingOrbit(tuple(seq), False, 0)
