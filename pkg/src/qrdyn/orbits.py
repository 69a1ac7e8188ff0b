"""Iteration on the sphere and attracting-cycle detection.

Detection scheme (shared by the scalar analyzer and the batched kernel that
backs the renderers and basin rasters):

  * iterate in comfortable charts: the state is (w, inverted) with z = 1/w
    when inverted, so the superattracting pass through infinity costs
    nothing and no float ever overflows;
  * after every step, compare the current point against a sliding window of
    the previous W points in the chordal metric; a return within
    capture_radius at lag p opens a period-p candidate;
  * a candidate is confirmed by three successive lag-p returns with strictly
    contracting distances, the last one below closure_target (exact returns,
    distance below exact_radius, confirm immediately);
  * the confirmed period is reduced to the minimal period by re-testing all
    divisors against the window, and the raw cycle is the last p points.

Parabolic behaviour (multiplier on the unit circle) either exhausts the
budget or produces a candidate whose polished points collapse onto one
another; both roads end in Unresolved, by design.  Parabolic parameters are
found algebraically in the parameter-algebra module instead.

Everything here is a pure function of its inputs: identical inputs give
identical outputs regardless of batch shape or thread count, because every
per-pixel operation is elementwise.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from . import periodic
from .maps import RationalMap, critical_points
from .sphere import SpherePoint, chordal_distance, chordal_distance_chart, from_chart


@dataclass(frozen=True)
class FateConfig:
    """Numerical knobs for cycle detection.

    The defaults resolve every analysis case in this package in milliseconds;
    renders use a lighter budget/window (see render module).
    """

    budget: int = 10_000
    capture_radius: float = 1e-6
    window: int = 64
    cycle_separation: float = 1e-4
    period_refine_max: int = 12
    exact_radius: float = 1e-12
    closure_target: float = 1e-9
    match_tol: float = 1e-3
    # window-scan schedule: lags 1..scan_lags are checked every step; the
    # full window every full_scan_stride steps.  (0, 1) checks everything
    # every step; renders use a thinned schedule, which can delay detection
    # of long periods by at most full_scan_stride-1 steps but never changes
    # which cycle is found.
    scan_lags: int = 0
    full_scan_stride: int = 1


DEFAULT_FATE = FateConfig()


@dataclass(frozen=True)
class Cycle:
    """An attracting (or detected) cycle: points in orbit order, with the
    rotation canonicalized so points[0] has the smallest sort key."""

    points: tuple[SpherePoint, ...]
    multiplier: complex

    @property
    def period(self) -> int:
        return len(self.points)

    def stability(self) -> str:
        return periodic.stability_class(self.multiplier)


@dataclass(frozen=True)
class Converged:
    cycle: Cycle
    phase: int
    steps: int

    @property
    def converged(self) -> bool:
        return True


@dataclass(frozen=True)
class Unresolved:
    steps: int

    @property
    def converged(self) -> bool:
        return False


OrbitFate = Converged | Unresolved


class Connectivity(Enum):
    CONNECTED = "connected"
    TOTALLY_DISCONNECTED = "totally-disconnected"
    UNKNOWN = "unknown"


# -- scalar iteration ---------------------------------------------------------


def iterate(f: RationalMap, z: SpherePoint, n: int) -> SpherePoint:
    """f^n(z) by repeated chart-switching evaluation; n >= 0."""
    if n < 0:
        raise ValueError("iteration count must be non-negative")
    w, inv = z.chart()
    for _ in range(n):
        w, inv = f.eval_chart(w, inv)
    return from_chart(w, inv)


def _point_key(p: SpherePoint) -> tuple:
    if p.is_infinity:
        return (math.inf, 0.0, 0.0)
    return (abs(p.value), p.value.real, p.value.imag)


def canonical_rotation(points: list[SpherePoint]) -> list[SpherePoint]:
    s = min(range(len(points)), key=lambda i: _point_key(points[i]))
    return points[s:] + points[:s]


def cycle_multiplier_points(f: RationalMap, points: list[SpherePoint]) -> complex:
    from .maps import multiplier_along_orbit

    w0, inv0 = points[0].chart()
    return multiplier_along_orbit(f, w0, inv0, len(points))


def cycle_multiplier(f: RationalMap, c: Cycle) -> complex:
    """Product of local chart derivatives along the cycle (at a cycle through
    infinity the factor there is taken in the 1/z chart)."""
    return cycle_multiplier_points(f, list(c.points))


def build_cycle(f: RationalMap, points: list[SpherePoint]) -> Cycle:
    pts = canonical_rotation(points)
    return Cycle(tuple(pts), cycle_multiplier_points(f, pts))


def cycles_match(c1: Cycle, c2: Cycle, tol: float = 1e-3) -> bool:
    if c1.period != c2.period:
        return False
    p = c1.period
    for r in range(p):
        if all(
            chordal_distance(c1.points[j], c2.points[(j + r) % p]) < tol
            for j in range(p)
        ):
            return True
    return False


# -- batched fate kernel ------------------------------------------------------


def _abs2(x: np.ndarray) -> np.ndarray:
    return x.real * x.real + x.imag * x.imag


class _CoeffStep:
    """One application of a fixed rational map on chart-state arrays."""

    def __init__(self, f: RationalMap):
        self.num = f.num
        self.den = f.den
        self.num_rev = f.num_rev
        self.den_rev = f.den_rev

    def take(self, keep):
        return self

    @staticmethod
    def _horner(c, w):
        acc = np.full(w.shape, c[-1], dtype=complex)
        for k in range(len(c) - 2, -1, -1):
            acc *= w
            acc += c[k]
        return acc

    def __call__(self, w, inv):
        n = np.empty_like(w)
        d = np.empty_like(w)
        up = ~inv
        if up.any():
            wu = w[up]
            n[up] = self._horner(self.num, wu)
            d[up] = self._horner(self.den, wu)
        if inv.any():
            wi = w[inv]
            n[inv] = self._horner(self.num_rev, wi)
            d[inv] = self._horner(self.den_rev, wi)
        return _normalize(n, d)


class _Per3Step:
    """Per-pixel family step for the parameter plane: the map depends on the
    pixel through b = a/(2-a)."""

    def __init__(self, b: np.ndarray):
        self.b = np.asarray(b, dtype=complex)

    def take(self, keep):
        return _Per3Step(self.b[keep])

    def __call__(self, w, inv):
        b = self.b
        n = np.where(inv, (1.0 - w) * (1.0 - b * w), (w - (1.0 + b)) * w + b)
        d = np.where(inv, 1.0 + 0j, w * w)
        return _normalize(n, d)


def _normalize(n, d):
    """Ratio n/d as a chart state: poles and overflow re-chart through 1/z."""
    pole = d == 0
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        v = n / np.where(pole, 1.0, d)
    bad = pole | ~np.isfinite(v)
    absv = np.abs(np.where(bad, 0.0, v))
    flip = absv > 1.0
    new_inv = bad | flip
    with np.errstate(divide="ignore", invalid="ignore"):
        recip = np.where(flip, 1.0 / np.where(v == 0, 1.0, v), v)
    new_w = np.where(bad, 0.0, recip)
    return new_w, new_inv


def _chord2(w1, inv1, n1, w2, inv2, n2):
    """Squared chordal distance between chart states (broadcasting)."""
    same = inv1 == inv2
    num2 = np.where(same, _abs2(w1 - w2), _abs2(w1 * w2 - 1.0))
    return 4.0 * num2 / (n1 * n2)


class BatchFates:
    """Result arrays of fate_batch, indexed like the input points."""

    def __init__(self, n):
        self.converged = np.zeros(n, dtype=bool)
        self.period = np.zeros(n, dtype=np.int32)
        self.steps = np.zeros(n, dtype=np.int32)
        self.lock_start = np.full(n, -1, dtype=np.int32)
        self.phase = np.full(n, -1, dtype=np.int32)
        self.attractor = np.full(n, -1, dtype=np.int16)
        self.cycles: dict[int, list[tuple[complex, bool]]] = {}


def prepare_attractor(points: list[SpherePoint]):
    """Chart arrays for vectorized matching against a known cycle (points in
    canonical orbit order)."""
    w = np.empty(len(points), dtype=complex)
    inv = np.empty(len(points), dtype=bool)
    for i, p in enumerate(points):
        w[i], inv[i] = p.chart()
    return w, inv, 1.0 + _abs2(w)


def _divisors(p: int) -> list[int]:
    return [d for d in range(1, p) if p % d == 0]


def fate_batch(
    step,
    w0: np.ndarray,
    inv0: np.ndarray,
    cfg: FateConfig = DEFAULT_FATE,
    *,
    attractors: list | None = None,
    collect_cycles: bool = False,
) -> BatchFates:
    """Run cycle detection for a batch of starting chart-states.

    step: a _CoeffStep or _Per3Step (or any callable with .take).
    attractors: optional list of prepared attractors; converged points are
    matched against them (phase is expressed in the attractor's indexing).
    """
    n_total = w0.size
    out = BatchFates(n_total)
    if n_total == 0:
        return out
    W = cfg.window
    r2 = cfg.capture_radius**2
    e2 = cfg.exact_radius**2
    c2 = cfg.closure_target**2
    quarter_r2 = 0.25 * r2

    idx = np.arange(n_total)
    w = np.array(w0, dtype=complex)
    inv = np.array(inv0, dtype=bool)
    nrm = 1.0 + _abs2(w)

    ring_w = np.zeros((W, w.size), dtype=complex)
    ring_inv = np.zeros((W, w.size), dtype=bool)
    ring_nrm = np.ones((W, w.size))
    ring_thr = np.zeros((W, w.size))  # quarter_r2 * ring_nrm, cached at write
    ring_w[0] = w
    ring_inv[0] = inv
    ring_nrm[0] = nrm
    ring_thr[0] = quarter_r2 * nrm

    cand_p = np.zeros(w.size, dtype=np.int32)
    cand_lag0 = np.zeros(w.size, dtype=np.int32)
    cand_trigger = np.zeros(w.size, dtype=np.int32)
    cand_w = np.zeros(w.size, dtype=complex)
    cand_inv = np.zeros(w.size, dtype=bool)
    cand_nrm = np.ones(w.size)
    cand_d2 = np.zeros(w.size)
    cand_conf = np.zeros(w.size, dtype=np.int8)
    cand_next = np.zeros(w.size, dtype=np.int32)

    slot_ids = np.arange(W)
    big = np.int32(W + 1)

    def finish(sel, t):
        """Minimal-period reduction, cycle extraction and attractor matching
        for pixels that just converged (sel indexes the compacted arrays)."""
        orig = cand_p[sel].copy()
        periods = orig.copy()
        for p in np.unique(orig):
            in_grp = orig == p
            grp = sel[in_grp]
            newp = np.full(grp.size, p, dtype=np.int32)
            undecided = np.ones(grp.size, dtype=bool)
            for d in _divisors(int(p)):
                if not undecided.any():
                    break
                g = grp[undecided]
                s = (t - d) % W
                d2 = _chord2(
                    w[g], inv[g], nrm[g], ring_w[s, g], ring_inv[s, g], ring_nrm[s, g]
                )
                sub = np.flatnonzero(undecided)[d2 < r2]
                newp[sub] = d
                undecided[sub] = False
            periods[in_grp] = newp
        gsel = idx[sel]
        out.converged[gsel] = True
        out.period[gsel] = periods
        out.steps[gsel] = t
        out.lock_start[gsel] = np.maximum(0, cand_trigger[sel] - cand_lag0[sel])
        if collect_cycles:
            for i, p in zip(sel, periods):
                raw = []
                for j in range(int(p) - 1):
                    s = (t - int(p) + 1 + j) % W
                    raw.append((complex(ring_w[s, i]), bool(ring_inv[s, i])))
                raw.append((complex(w[i]), bool(inv[i])))
                out.cycles[int(idx[i])] = raw
        if attractors is not None:
            t2 = cfg.match_tol**2
            for p in np.unique(periods):
                p = int(p)
                grp = sel[periods == p]
                rows_w = np.empty((p, grp.size), dtype=complex)
                rows_inv = np.empty((p, grp.size), dtype=bool)
                rows_nrm = np.empty((p, grp.size))
                for j in range(p - 1):
                    s = (t - p + 1 + j) % W
                    rows_w[j] = ring_w[s, grp]
                    rows_inv[j] = ring_inv[s, grp]
                    rows_nrm[j] = ring_nrm[s, grp]
                rows_w[p - 1] = w[grp]
                rows_inv[p - 1] = inv[grp]
                rows_nrm[p - 1] = nrm[grp]
                unmatched = np.ones(grp.size, dtype=bool)
                for ai, (aw, ainv, anrm) in enumerate(attractors):
                    if aw.size != p or not unmatched.any():
                        continue
                    for rot in range(p):
                        ok = unmatched.copy()
                        for j in range(p):
                            if not ok.any():
                                break
                            k = (j + rot) % p
                            d2 = _chord2(
                                rows_w[j], rows_inv[j], rows_nrm[j],
                                aw[k], ainv[k], anrm[k],
                            )
                            ok &= d2 < t2
                        hit = np.flatnonzero(ok)
                        if hit.size:
                            g = idx[grp[hit]]
                            out.attractor[g] = ai
                            idx_now = (p - 1 + rot) % p
                            out.phase[g] = (idx_now - t) % p
                            unmatched[hit] = False
                        if not unmatched.any():
                            break

    dead = np.zeros(w.size, dtype=bool)
    t = 0
    while t < cfg.budget and w.size and not dead.all():
        t += 1
        w, inv = step(w, inv)
        nrm = 1.0 + _abs2(w)

        conv = np.zeros(w.size, dtype=bool)

        # anchored confirmation for open candidates
        due = (cand_p > 0) & (cand_next == t)
        if due.any():
            di = np.flatnonzero(due)
            d2 = _chord2(
                w[di], inv[di], nrm[di], cand_w[di], cand_inv[di], cand_nrm[di]
            )
            exact = d2 < e2
            contracting = d2 < cand_d2[di]
            ok = contracting & ~exact
            oi = di[ok]
            cand_conf[oi] += 1
            cand_w[oi] = w[oi]
            cand_inv[oi] = inv[oi]
            cand_nrm[oi] = nrm[oi]
            cand_d2[oi] = d2[ok]
            cand_next[oi] = t + cand_p[oi]
            confirmed = np.zeros(len(di), dtype=bool)
            confirmed[ok] = (cand_conf[oi] >= 3) & (d2[ok] < c2)
            conv[di[exact | confirmed]] = True
            reset = ~exact & ~contracting
            cand_p[di[reset]] = 0

        # window scan for pixels without a candidate
        free = (cand_p == 0) & ~conv
        if free.any():
            if cfg.scan_lags and t % cfg.full_scan_stride != 0:
                lag_count = min(cfg.scan_lags, t, W)
            else:
                lag_count = min(t, W)
            lags_used = np.arange(1, lag_count + 1)
            slots = (t - lags_used) % W
            rw = ring_w[slots]
            rinv = ring_inv[slots]
            rnrm = ring_nrm[slots]
            rthr = ring_thr[slots]
            diff = rw - w[None, :]
            num2 = diff.real**2 + diff.imag**2
            mixed = rinv != inv[None, :]
            if mixed.any():
                wb = np.broadcast_to(w[None, :], rw.shape)[mixed]
                pm = rw[mixed] * wb - 1.0
                num2[mixed] = pm.real**2 + pm.imag**2
            hits = num2 < rthr * nrm[None, :]
            hits &= free[None, :]
            if hits.any():
                lagm = np.where(hits, lags_used[:, None], big)
                best = lagm.min(axis=0)
                trig = np.flatnonzero(best <= W)
                lags = best[trig]
                d2b = (
                    4.0
                    * num2[lags - 1, trig]
                    / (rnrm[lags - 1, trig] * nrm[trig])
                )
                cand_p[trig] = lags
                cand_lag0[trig] = lags
                cand_trigger[trig] = t
                cand_w[trig] = w[trig]
                cand_inv[trig] = inv[trig]
                cand_nrm[trig] = nrm[trig]
                cand_d2[trig] = d2b
                cand_conf[trig] = 0
                cand_next[trig] = t + lags
                conv[trig[d2b < e2]] = True

        done = np.flatnonzero(conv)
        if done.size:
            finish(done, t)
            dead[conv] = True
            cand_p[conv] = -1  # parked: excluded from scans until compaction

        ring_slot = t % W
        ring_w[ring_slot] = w
        ring_inv[ring_slot] = inv
        ring_nrm[ring_slot] = nrm
        ring_thr[ring_slot] = quarter_r2 * nrm

        ndead = int(dead.sum())
        if ndead and (ndead == w.size or ndead > max(32, w.size // 8)):
            keep = ~dead
            idx = idx[keep]
            w = w[keep]
            inv = inv[keep]
            nrm = nrm[keep]
            ring_w = ring_w[:, keep]
            ring_inv = ring_inv[:, keep]
            ring_nrm = ring_nrm[:, keep]
            ring_thr = ring_thr[:, keep]
            cand_p = cand_p[keep]
            cand_lag0 = cand_lag0[keep]
            cand_trigger = cand_trigger[keep]
            cand_w = cand_w[keep]
            cand_inv = cand_inv[keep]
            cand_nrm = cand_nrm[keep]
            cand_d2 = cand_d2[keep]
            cand_conf = cand_conf[keep]
            cand_next = cand_next[keep]
            dead = dead[keep]
            step = step.take(keep)

    for gi in idx[~out.converged[idx]]:
        out.steps[gi] = cfg.budget
    return out


# -- the scalar analyzer ------------------------------------------------------


def orbit_fate(
    f: RationalMap, z: SpherePoint, cfg: FateConfig = DEFAULT_FATE
) -> OrbitFate:
    """Asymptotic fate of one orbit; Unresolved is a value, not an error."""
    if cfg.budget < 1:
        raise ValueError("budget must be at least 1")
    w0, inv0 = z.chart()
    res = fate_batch(
        _CoeffStep(f),
        np.array([w0], dtype=complex),
        np.array([inv0], dtype=bool),
        cfg,
        collect_cycles=True,
    )
    if not res.converged[0]:
        return Unresolved(steps=int(res.steps[0]))
    raw_chart = res.cycles[0]
    t = int(res.steps[0])
    p = int(res.period[0])
    raw_pts = [from_chart(_snap_origin(wv), iv) for wv, iv in raw_chart]

    pts = raw_pts
    if p <= cfg.period_refine_max:
        refined = _refine_cycle(f, raw_chart, p)
        if refined is not None:
            pts = refined
    if not _valid_cycle(f, pts, cfg):
        if pts is raw_pts or not _valid_cycle(f, raw_pts, cfg):
            return Unresolved(steps=t)
        pts = raw_pts

    cyc = build_cycle(f, pts)
    current = raw_pts[-1]
    idx_now = min(
        range(p), key=lambda j: chordal_distance(current, cyc.points[j])
    )
    phase = (idx_now - t) % p
    return Converged(cycle=cyc, phase=phase, steps=t)


def _snap_origin(w: complex, eps: float = 1e-13) -> complex:
    """Collapse chart values indistinguishable from the chart origin, so a
    cycle through 0 or infinity materializes those points exactly."""
    return 0j if abs(w) < eps else w


def _refine_cycle(f, raw_chart, p):
    anchor = min(range(p), key=lambda j: abs(raw_chart[j][0]))
    w0, inv0 = raw_chart[anchor]
    polished = periodic.newton_polish_periodic(f, w0, inv0, p)
    if polished is None:
        return None
    w1, inv1 = polished
    wv, iv = _snap_origin(w1), inv1
    pts = [from_chart(wv, iv)]
    for _ in range(p - 1):
        wv, iv = f.eval_chart(wv, iv)
        wv = _snap_origin(wv)
        pts.append(from_chart(wv, iv))
    # undo the rotation introduced by anchoring
    shift = (-anchor) % p
    return pts[shift:] + pts[:shift]


def _valid_cycle(f, pts, cfg):
    p = len(pts)
    for i in range(p):
        for j in range(i + 1, p):
            if chordal_distance(pts[i], pts[j]) < cfg.cycle_separation:
                return False
    for i in range(p):
        if chordal_distance(f(pts[i]), pts[(i + 1) % p]) > 1e-8:
            return False
    return True


def attracting_cycles(f: RationalMap, cfg: FateConfig = DEFAULT_FATE) -> list[Cycle]:
    """Distinct cycles attracting a critical orbit, in deterministic order."""
    found: list[Cycle] = []
    for c in critical_points(f):
        fate = orbit_fate(f, c, cfg)
        if isinstance(fate, Converged):
            if not any(cycles_match(fate.cycle, other) for other in found):
                found.append(fate.cycle)
    found.sort(key=lambda cy: (cy.period, _point_key(cy.points[0])))
    return found


def connectivity_heuristic(
    f: RationalMap, cfg: FateConfig = DEFAULT_FATE
) -> Connectivity:
    """Orbit-based reading of the connected/totally-disconnected dichotomy
    for quadratic rational maps: totally disconnected exactly when both
    critical orbits fall into one common attracting fixed point.  Parabolic
    landings are not decided here (Unknown)."""
    if f.degree != 2:
        raise ValueError("the connectivity dichotomy applies to quadratic maps")
    fates = [orbit_fate(f, c, cfg) for c in critical_points(f)]
    if any(isinstance(x, Unresolved) for x in fates):
        return Connectivity.UNKNOWN
    cycles = [x.cycle for x in fates]
    if all(c.period == 1 for c in cycles) and cycles_match(cycles[0], cycles[1]):
        return Connectivity.TOTALLY_DISCONNECTED
    return Connectivity.CONNECTED
