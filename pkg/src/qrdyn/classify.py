"""Hyperbolic type, parameter-plane region and the Sierpinski verdict.

The verdict engine applies four rules, in order, to a parameter a of the
family f_a = (z-1)(z-a/(2-a))/z^2:

  C(a)  a in a bitransitive region (a inside U_1(a) or U_infinity(a)):
        not a Sierpinski curve;
  C(b)  a in the rabbit or co-rabbit piece (triple boundary contact at a
        repelling fixed point): not a Sierpinski curve;
  C(c)  a in the airplane piece with capture dynamics: Sierpinski curve;
  C(d)  a in the airplane piece with disjoint dynamics, second cycle of
        period m >= 3 coprime to 3, and no low-period point in contact with
        the second immediate basin: Sierpinski curve.

Everything below Theorem-strength is decided by two sampling instruments:

  * the contact test: circles of shrinking chordal radius around a periodic
    point, classifying the basin phase every sample converges into; phases
    present at every radius constitute contact evidence;
  * basin membership: a flood fill over a phase-labeled raster, refined by
    resolution doubling until the answer is stable.

Both are controlled numerical heuristics, not certifications; their failure
modes surface honestly as NearBoundary / Inconclusive / Indeterminate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np
from scipy import ndimage

from . import params, periodic
from .cformat import format_complex
from .maps import RationalMap, critical_points, per3_map, validate_per3_parameter
from .orbits import (
    Converged,
    Cycle,
    DEFAULT_FATE,
    FateConfig,
    Unresolved,
    _CoeffStep,
    cycles_match,
    fate_batch,
    orbit_fate,
    prepare_attractor,
)
from .sphere import INFINITY, SpherePoint, chordal_distance, finite


class HyperbolicType(Enum):
    ADJACENT = "adjacent"
    BITRANSITIVE = "bitransitive"
    CAPTURE = "capture"
    DISJOINT = "disjoint"
    UNRESOLVED = "unresolved"


class Region(Enum):
    B1 = "B1"
    B_INFINITY = "B-infinity"
    OMEGA1 = "Omega1"
    OMEGA2 = "Omega2"
    OMEGA3 = "Omega3"
    NEAR_BOUNDARY = "near-boundary"


class Verdict(Enum):
    SIERPINSKI = "Sierpinski"
    NOT_SIERPINSKI = "NotSierpinski"
    INCONCLUSIVE = "Inconclusive"


class IndeterminateBasinError(RuntimeError):
    """Basin membership unstable after maximal raster refinement."""


class RasterizationError(ValueError):
    """Points not representable in a common chart window."""


@dataclass(frozen=True)
class ContactConfig:
    radii: tuple[float, ...] = (1e-2, 1e-3, 1e-4, 1e-5)
    samples: int = 64
    budget: int = 20_000


DEFAULT_CONTACT = ContactConfig()


@dataclass(frozen=True)
class BasinConfig:
    budget: int = 3_000
    base_resolution: int = 100
    max_refinements: int = 4
    padding: float = 0.6


DEFAULT_BASIN = BasinConfig()


@dataclass(frozen=True)
class ContactEvidence:
    """Which basin phases of a reference cycle appear arbitrarily close to a
    point: phases_seen is the intersection over all tested radii.

    Honest only when a second attractor dilutes the sampling: when the whole
    Fatou set is one basin (capture and bitransitive parameters), deep
    preimage components of every phase accumulate on the entire Julia set
    and the sample phases saturate; use BoundaryEvidence there instead."""

    point: SpherePoint
    phases_seen: frozenset[int]
    radii_tested: tuple[float, ...]
    samples_per_radius: int
    low_confidence: bool
    phases_by_radius: tuple[frozenset[int], ...] = ()
    unresolved_by_radius: tuple[int, ...] = ()

    @property
    def full_contact(self) -> bool:
        return self.phases_seen == frozenset({0, 1, 2})


@dataclass(frozen=True)
class BoundaryEvidence:
    """Raster instrument for 'p lies on the boundary of the immediate
    component U_0': flood-fill U_0 on a phase raster (bridges through other
    phases eroded away) and ask whether it comes within a couple of pixels
    of p, stably across consecutive resolution doublings.

    Since the fixed point p and the critical cycle are f-invariant and f
    maps U_0 onto the next immediate component, contact with U_0 is contact
    with all three immediate components."""

    point: SpherePoint
    contact: bool
    resolutions: tuple[int, ...]
    distances_px: tuple[float, ...]
    stable: bool

    @property
    def full_contact(self) -> bool:
        return self.contact

    @property
    def low_confidence(self) -> bool:
        return not self.stable


@dataclass(frozen=True)
class ClassificationReport:
    a: complex
    hyperbolic_type: HyperbolicType
    region: Region
    second_cycle: Cycle | None
    verdict: Verdict
    reason: str
    evidence: tuple[ContactEvidence, ...] = ()

    def to_text(self) -> str:
        lines = [
            f"a: {format_complex(self.a)}",
            f"type: {self.hyperbolic_type.value}",
            f"region: {self.region.value}",
            f"verdict: {self.verdict.value}",
            f"reason: {self.reason}",
        ]
        if self.second_cycle is not None:
            pts = ", ".join(
                "infinity" if p.is_infinity else format_complex(p.value)
                for p in self.second_cycle.points
            )
            lines.append(f"second-cycle-period: {self.second_cycle.period}")
            lines.append(f"second-cycle: {pts}")
            lines.append(
                f"second-cycle-multiplier: {format_complex(self.second_cycle.multiplier)}"
            )
        for ev in self.evidence:
            loc = "infinity" if ev.point.is_infinity else format_complex(ev.point.value)
            if isinstance(ev, ContactEvidence):
                phases = ",".join(str(p) for p in sorted(ev.phases_seen)) or "-"
                lines.append(
                    f"contact: point={loc} phases={phases}"
                    f" low-confidence={'yes' if ev.low_confidence else 'no'}"
                )
            else:
                lines.append(
                    f"boundary: point={loc} contact={'yes' if ev.contact else 'no'}"
                    f" stable={'yes' if ev.stable else 'no'}"
                )
        return "\n".join(lines)

    def to_record(self) -> dict:
        rec = {
            "a": [self.a.real, self.a.imag],
            "type": self.hyperbolic_type.value,
            "region": self.region.value,
            "verdict": self.verdict.value,
            "reason": self.reason,
            "second_cycle": None,
            "evidence": [
                {
                    "point": None
                    if ev.point.is_infinity
                    else [ev.point.value.real, ev.point.value.imag],
                    "kind": "contact" if isinstance(ev, ContactEvidence) else "boundary",
                    "phases": sorted(ev.phases_seen)
                    if isinstance(ev, ContactEvidence)
                    else None,
                    "contact": None
                    if isinstance(ev, ContactEvidence)
                    else ev.contact,
                    "low_confidence": ev.low_confidence,
                }
                for ev in self.evidence
            ],
        }
        if self.second_cycle is not None:
            rec["second_cycle"] = {
                "period": self.second_cycle.period,
                "points": [
                    None if p.is_infinity else [p.value.real, p.value.imag]
                    for p in self.second_cycle.points
                ],
                "multiplier": [
                    self.second_cycle.multiplier.real,
                    self.second_cycle.multiplier.imag,
                ],
            }
        return rec


# -- contact test --------------------------------------------------------------


def chordal_circle(p: SpherePoint, radius: float, samples: int):
    """Chart states of a uniform circle at (first-order) chordal radius."""
    if p.is_infinity:
        rho = radius / 2.0
        w = rho * np.exp(2j * np.pi * np.arange(samples) / samples)
        return w, np.ones(samples, dtype=bool)
    z = p.value
    rho = radius * (1.0 + abs(z) ** 2) / 2.0
    pts = z + rho * np.exp(2j * np.pi * np.arange(samples) / samples)
    inv = np.abs(pts) > 1.0
    with np.errstate(divide="ignore"):
        w = np.where(inv, 1.0 / np.where(pts == 0, 1.0, pts), pts)
    return w, inv


def critical_cycle(f: RationalMap, cfg: FateConfig = DEFAULT_FATE) -> Cycle:
    """The superattracting cycle through the first critical point that
    converges; for the f_a family this is always {0, infinity, 1}."""
    for c in critical_points(f):
        fate = orbit_fate(f, c, cfg)
        if isinstance(fate, Converged):
            return fate.cycle
    raise RuntimeError("no critical orbit converged; cannot fix a reference cycle")


def triple_contact_test(
    f: RationalMap,
    p: SpherePoint,
    cycle: Cycle | None = None,
    cfg: ContactConfig = DEFAULT_CONTACT,
) -> ContactEvidence:
    """Sample shrinking chordal circles around p and record which phases of
    the reference cycle the samples converge into.  phases_seen is the
    intersection over radii; evidence is low-confidence when any sample at
    the smallest radius stays unresolved."""
    if cycle is None:
        cycle = critical_cycle(f)
    attr = [prepare_attractor(list(cycle.points))]
    fate_cfg = FateConfig(budget=cfg.budget, scan_lags=8, full_scan_stride=4)
    phases_by_radius: list[frozenset[int]] = []
    unresolved: list[int] = []
    for r in cfg.radii:
        w, inv = chordal_circle(p, r, cfg.samples)
        res = fate_batch(_CoeffStep(f), w, inv, fate_cfg, attractors=attr)
        matched = res.attractor == 0
        phases_by_radius.append(frozenset(int(q) for q in res.phase[matched]))
        unresolved.append(int((~res.converged).sum()))
    seen = frozenset.intersection(*phases_by_radius)
    return ContactEvidence(
        point=p,
        phases_seen=seen,
        radii_tested=tuple(cfg.radii),
        samples_per_radius=cfg.samples,
        low_confidence=unresolved[-1] > 0,
        phases_by_radius=tuple(phases_by_radius),
        unresolved_by_radius=tuple(unresolved),
    )


def u0_boundary_contacts(
    f: RationalMap,
    points: list[SpherePoint],
    cycle: Cycle,
    *,
    base_resolution: int = 128,
    max_refinements: int = 3,
    budget: int = 2_500,
    padding: float = 0.7,
) -> list[BoundaryEvidence]:
    """BoundaryEvidence for several query points against one shared raster
    of the plane around them and the cycle point 0."""
    finite_pts = [p for p in points if not p.is_infinity and abs(p.value) < 6.0]
    skipped = [p for p in points if p not in finite_pts]
    if not finite_pts:
        return [
            BoundaryEvidence(p, False, (), (), stable=False) for p in skipped
        ]
    xs = [0.0] + [p.value.real for p in finite_pts]
    ys = [0.0] + [p.value.imag for p in finite_pts]
    lo_re, hi_re = min(xs) - padding, max(xs) + padding
    lo_im, hi_im = min(ys) - padding, max(ys) + padding
    attr = [prepare_attractor(list(cycle.points))]
    raster_cfg = FateConfig(budget=budget, window=24, scan_lags=8, full_scan_stride=4)

    cross = ndimage.generate_binary_structure(2, 1)
    history: list[list[float]] = []
    resolutions: list[int] = []
    res = base_resolution
    answers_prev: list[bool] | None = None
    for _ in range(max_refinements + 1):
        xs_g = np.linspace(lo_re, hi_re, res)
        ys_g = np.linspace(lo_im, hi_im, res)
        gw = (xs_g[None, :] + 1j * ys_g[:, None]).ravel()
        ginv = np.full(gw.size, False)
        r = fate_batch(_CoeffStep(f), gw, ginv, raster_cfg, attractors=attr)
        labels = np.where(r.attractor == 0, r.phase, -1).reshape(res, res)
        mask0 = labels == 0
        other = (labels == 1) | (labels == 2)
        eroded = mask0 & ~ndimage.binary_dilation(other, structure=cross)

        def pixel_of(c: complex):
            ix = int(np.clip(round((c.real - lo_re) / (hi_re - lo_re) * (res - 1)), 0, res - 1))
            iy = int(np.clip(round((c.imag - lo_im) / (hi_im - lo_im) * (res - 1)), 0, res - 1))
            return iy, ix

        p0 = pixel_of(0j)
        eroded[p0] = True
        comp, _ = ndimage.label(eroded, structure=cross)
        u0 = comp == comp[p0]
        # reclaim this component's eroded skin (without re-flooding, so a
        # pinch pixel cannot absorb the component on the far side)
        for _ in range(2):
            u0 = mask0 & ndimage.binary_dilation(u0, structure=cross)
        coords = np.argwhere(u0)
        dists = []
        for p in finite_pts:
            iy, ix = pixel_of(p.value)
            d = float(np.min(np.abs(coords[:, 0] - iy) + np.abs(coords[:, 1] - ix)))
            dists.append(d)
        history.append(dists)
        resolutions.append(res)
        answers = [d <= 2.5 for d in dists]
        if answers_prev is not None and answers == answers_prev:
            out = [
                BoundaryEvidence(
                    p,
                    answers[i],
                    tuple(resolutions),
                    tuple(h[i] for h in history),
                    stable=True,
                )
                for i, p in enumerate(finite_pts)
            ]
            return out + [
                BoundaryEvidence(p, False, (), (), stable=False) for p in skipped
            ]
        answers_prev = answers
        res *= 2
    return [
        BoundaryEvidence(
            p,
            answers_prev[i],
            tuple(resolutions),
            tuple(h[i] for h in history),
            stable=False,
        )
        for i, p in enumerate(finite_pts)
    ] + [BoundaryEvidence(p, False, (), (), stable=False) for p in skipped]


# -- basin membership -----------------------------------------------------------


def _phase_index(cycle: Cycle, p: SpherePoint, tol: float = 1e-6) -> int | None:
    for j, q in enumerate(cycle.points):
        if chordal_distance(p, q) < tol:
            return j
    return None


def immediate_basin_membership(
    f: RationalMap,
    z: SpherePoint,
    cycle_point: SpherePoint,
    cycle: Cycle | None = None,
    cfg: BasinConfig = DEFAULT_BASIN,
    fate_cfg: FateConfig = DEFAULT_FATE,
) -> bool:
    """Is z in the same connected Fatou component as cycle_point?

    Decided by flood fill on a phase-labeled raster (in the 1/z chart when
    cycle_point is at infinity), refined by doubling the resolution until
    two consecutive answers agree.  Raises IndeterminateBasinError when the
    answer never stabilizes.
    """
    if cycle is None:
        cycle = critical_cycle(f)
    k = _phase_index(cycle, cycle_point)
    if k is None:
        raise ValueError("cycle_point does not belong to the reference cycle")
    if chordal_distance(z, cycle_point) < 1e-9:
        return True

    fate_z = orbit_fate(f, z, fate_cfg)
    if not (
        isinstance(fate_z, Converged)
        and cycles_match(fate_z.cycle, cycle)
        and _aligned_phase(fate_z, cycle) == k
    ):
        return False

    invert = cycle_point.is_infinity or (
        not z.is_infinity and abs(z.value) > 4.0 and not cycle_point.is_infinity
        and abs(cycle_point.value) > 4.0
    )
    try:
        za = _chart_coord(z, invert)
        ca = _chart_coord(cycle_point, invert)
    except RasterizationError:
        # retry in the other chart before giving up
        invert = not invert
        za = _chart_coord(z, invert)
        ca = _chart_coord(cycle_point, invert)

    pad = max(cfg.padding, 0.75 * abs(za - ca))
    lo_re = min(za.real, ca.real) - pad
    hi_re = max(za.real, ca.real) + pad
    lo_im = min(za.imag, ca.imag) - pad
    hi_im = max(za.imag, ca.imag) + pad

    attr = [prepare_attractor(list(cycle.points))]
    raster_cfg = FateConfig(
        budget=cfg.budget, window=24, scan_lags=8, full_scan_stride=4
    )
    prev: bool | None = None
    res_x = cfg.base_resolution
    for _ in range(cfg.max_refinements + 1):
        answer = _flood_answer(
            f, attr, k, za, ca, lo_re, hi_re, lo_im, hi_im, res_x, raster_cfg, invert
        )
        if prev is not None and answer == prev:
            return answer
        prev = answer
        res_x *= 2
    raise IndeterminateBasinError(
        f"membership unstable after {cfg.max_refinements} refinements "
        f"(z={z}, cycle_point={cycle_point})"
    )


def _aligned_phase(fate: Converged, reference: Cycle) -> int:
    """fate.phase expressed in the reference cycle's indexing."""
    j = min(
        range(reference.period),
        key=lambda i: chordal_distance(fate.cycle.points[0], reference.points[i]),
    )
    return (fate.phase + j) % reference.period


def _chart_coord(p: SpherePoint, invert: bool) -> complex:
    if p.is_infinity:
        if invert:
            return 0j
        raise RasterizationError("infinity is not representable in the plane chart")
    if not invert:
        return p.value
    if p.value == 0:
        raise RasterizationError("0 is not representable in the 1/z chart")
    return 1.0 / p.value


def _flood_answer(
    f, attr, k, za, ca, lo_re, hi_re, lo_im, hi_im, res_x, raster_cfg, invert
):
    res_y = res_x
    xs = np.linspace(lo_re, hi_re, res_x)
    ys = np.linspace(lo_im, hi_im, res_y)
    gw = (xs[None, :] + 1j * ys[:, None]).ravel()
    ginv = np.full(gw.size, invert, dtype=bool)
    res = fate_batch(_CoeffStep(f), gw, ginv, raster_cfg, attractors=attr)
    labels = np.where(res.attractor == 0, res.phase, -1).reshape(res_y, res_x)

    def pixel_of(c: complex) -> tuple[int, int]:
        ix = int(np.clip(round((c.real - lo_re) / (hi_re - lo_re) * (res_x - 1)), 0, res_x - 1))
        iy = int(np.clip(round((c.imag - lo_im) / (hi_im - lo_im) * (res_y - 1)), 0, res_y - 1))
        return iy, ix

    pz = pixel_of(za)
    pc = pixel_of(ca)
    mask = labels == k
    if not mask[pc]:
        # the cycle point's own pixel straddles the boundary: repair it
        mask[pc] = True
    if not mask[pz]:
        return False
    comp, _ = ndimage.label(mask)
    return bool(comp[pz] == comp[pc] and comp[pz] != 0)


# -- hyperbolic type -------------------------------------------------------------


def hyperbolic_type(
    f: RationalMap,
    fate_cfg: FateConfig = DEFAULT_FATE,
    basin_cfg: BasinConfig = DEFAULT_BASIN,
) -> HyperbolicType:
    """Rees type from the two critical orbit fates: distinct attractors mean
    Disjoint; one attractor splits into Adjacent / Bitransitive / Capture by
    immediate-basin membership of the critical points."""
    if f.degree != 2:
        raise ValueError("hyperbolic type classification expects a quadratic map")
    crits = critical_points(f)
    fates = [orbit_fate(f, c, fate_cfg) for c in crits]
    if any(isinstance(x, Unresolved) for x in fates):
        return HyperbolicType.UNRESOLVED
    c0, c1 = crits
    f0, f1 = fates
    if not cycles_match(f0.cycle, f1.cycle):
        return HyperbolicType.DISJOINT
    cycle = f0.cycle
    try:
        in0, ph0 = _immediate_of_critical(f, c0, f0, cycle, basin_cfg, fate_cfg)
        in1, ph1 = _immediate_of_critical(f, c1, f1, cycle, basin_cfg, fate_cfg)
    except IndeterminateBasinError:
        return HyperbolicType.UNRESOLVED
    if in0 and in1:
        return HyperbolicType.ADJACENT if ph0 == ph1 else HyperbolicType.BITRANSITIVE
    if in0 != in1:
        return HyperbolicType.CAPTURE
    return HyperbolicType.UNRESOLVED  # cannot happen for true hyperbolic data


def _immediate_of_critical(f, c, fate, cycle, basin_cfg, fate_cfg):
    phase = _aligned_phase(fate, cycle)
    target = cycle.points[phase]
    if chordal_distance(c, target) < 1e-9:
        return True, phase  # the critical point lies on the cycle
    member = immediate_basin_membership(
        f, c, target, cycle, basin_cfg, fate_cfg
    )
    return member, phase


# -- region of the parameter plane ------------------------------------------------


def per3_region(
    a: complex,
    contact_cfg: ContactConfig = DEFAULT_CONTACT,
    fate_cfg: FateConfig = DEFAULT_FATE,
    basin_cfg: BasinConfig = DEFAULT_BASIN,
) -> Region:
    region, _, _ = region_with_evidence(a, contact_cfg, fate_cfg, basin_cfg)
    return region


def region_with_evidence(
    a: complex,
    contact_cfg: ContactConfig = DEFAULT_CONTACT,
    fate_cfg: FateConfig = DEFAULT_FATE,
    basin_cfg: BasinConfig = DEFAULT_BASIN,
) -> tuple[Region, tuple[ContactEvidence, ...], str]:
    a = validate_per3_parameter(a)
    sp = params.special_parameters()
    for cut in sp.cut_points():
        if abs(a - cut) < 1e-6:
            return Region.NEAR_BOUNDARY, (), f"within 1e-6 of cut point {format_complex(cut)}"

    f = per3_map(a)
    cycle = critical_cycle(f, fate_cfg)
    fate_a = orbit_fate(f, finite(a), fate_cfg)

    critical_in_3cycle_basin = isinstance(fate_a, Converged) and cycles_match(
        fate_a.cycle, cycle
    )
    if critical_in_3cycle_basin:
        phase = _aligned_phase(fate_a, cycle)
        target = cycle.points[phase]
        try:
            if phase in (1, 2) and immediate_basin_membership(
                f, finite(a), target, cycle, basin_cfg, fate_cfg
            ):
                return (Region.B1 if phase == 2 else Region.B_INFINITY), (), ""
            if phase == 0 and immediate_basin_membership(
                f, finite(a), target, cycle, basin_cfg, fate_cfg
            ):
                # an adjacent-type anomaly; not a bitransitive region
                return Region.OMEGA1, (), "free critical point found inside U_0"
        except IndeterminateBasinError as e:
            return Region.NEAR_BOUNDARY, (), f"membership indeterminate: {e}"

    repelling = [
        p.location for p in periodic.fixed_points(f) if p.stability == "repelling"
    ]

    if critical_in_3cycle_basin:
        # capture dynamics: the 3-cycle basin is the whole Fatou set, so
        # phase sampling saturates; ask the immediate-component raster
        # whether some fixed point sits on the boundary of U_0 instead
        evidence = tuple(u0_boundary_contacts(f, repelling, cycle))
        note = "capture dynamics: immediate-boundary raster instrument"
    else:
        evidence = tuple(
            triple_contact_test(f, p, cycle, contact_cfg) for p in repelling
        )
        note = ""

    triple = [ev for ev in evidence if ev.full_contact]
    if triple:
        if a.imag > 1e-9:
            return Region.OMEGA2, evidence, note
        if a.imag < -1e-9:
            return Region.OMEGA3, evidence, note
        return Region.NEAR_BOUNDARY, evidence, "triple contact on the real axis"
    if any(ev.low_confidence for ev in evidence):
        return (
            Region.NEAR_BOUNDARY,
            evidence,
            "low-confidence contact evidence",
        )
    return Region.OMEGA1, evidence, note


# -- the verdict engine -----------------------------------------------------------


REASON_CA = "C(a): parameter in a bitransitive region (B1 or B-infinity)"
REASON_CB = "C(b): parameter in the rabbit or co-rabbit piece (Omega2/Omega3); a fixed point lies on the common boundary of all three critical-basin components"
REASON_CC = "C(c): capture parameter in the airplane piece (Omega1); no boundary contacts exist"
REASON_CD_OK = "C(d): disjoint parameter in Omega1, second period m coprime to 3, and no low-period point contacts the second immediate basin"
REASON_CD_CONTACT = "C(d) fails: a low-period point contacts the second immediate basin"
REASON_FIXED_ATTRACTOR = "disjoint parameter with an attracting fixed point or 2-cycle: some Fatou component is not a Jordan domain bounded away from the others (m < 3)"


def sierpinski_verdict(
    a: complex,
    contact_cfg: ContactConfig = DEFAULT_CONTACT,
    fate_cfg: FateConfig = DEFAULT_FATE,
    basin_cfg: BasinConfig = DEFAULT_BASIN,
) -> ClassificationReport:
    """Full classification of one parameter, with the Sierpinski verdict and
    the rule that produced it."""
    a = validate_per3_parameter(a)
    region, evidence, note = region_with_evidence(a, contact_cfg, fate_cfg, basin_cfg)
    htype = hyperbolic_type(per3_map(a), fate_cfg, basin_cfg)

    f = per3_map(a)
    cycle = critical_cycle(f, fate_cfg)
    fate_a = orbit_fate(f, finite(a), fate_cfg)
    second = None
    if isinstance(fate_a, Converged) and not cycles_match(fate_a.cycle, cycle):
        second = fate_a.cycle

    def report(verdict, reason, extra_evidence=()):
        return ClassificationReport(
            a=a,
            hyperbolic_type=htype,
            region=region,
            second_cycle=second,
            verdict=verdict,
            reason=reason,
            evidence=tuple(evidence) + tuple(extra_evidence),
        )

    if region is Region.NEAR_BOUNDARY:
        return report(Verdict.INCONCLUSIVE, f"near-boundary parameter: {note}")
    if region in (Region.B1, Region.B_INFINITY):
        return report(Verdict.NOT_SIERPINSKI, REASON_CA)
    if region in (Region.OMEGA2, Region.OMEGA3):
        return report(Verdict.NOT_SIERPINSKI, REASON_CB)

    # region Omega1
    if htype is HyperbolicType.CAPTURE:
        return report(Verdict.SIERPINSKI, REASON_CC)
    if htype is HyperbolicType.UNRESOLVED:
        return report(Verdict.INCONCLUSIVE, "critical orbit fate unresolved")
    if htype in (HyperbolicType.BITRANSITIVE, HyperbolicType.ADJACENT):
        return report(
            Verdict.INCONCLUSIVE,
            f"anomalous type {htype.value} inside Omega1; classification suspect",
        )

    # disjoint in Omega1
    if second is None:
        return report(Verdict.INCONCLUSIVE, "no second cycle found for disjoint type")
    m = second.period
    if m in (1, 2):
        return report(Verdict.NOT_SIERPINSKI, REASON_FIXED_ATTRACTOR)
    if m % 3 == 0:
        return report(
            Verdict.INCONCLUSIVE,
            f"second period m={m} divisible by 3: the coprimality hypothesis of C(d) fails",
        )
    if m > periodic.MAX_PERIOD:
        return report(
            Verdict.INCONCLUSIVE,
            f"second period m={m} above the periodic-point cap {periodic.MAX_PERIOD}",
        )

    extra = []
    contact_found = False
    low_conf = False
    for j in [d for d in range(1, m) if m % d == 0]:
        for p in periodic.periodic_points(f, j):
            ev = triple_contact_test(f, p.location, second, contact_cfg)
            extra.append(ev)
            if ev.phases_seen:
                contact_found = True
            if ev.low_confidence:
                low_conf = True
    if contact_found:
        return report(Verdict.NOT_SIERPINSKI, REASON_CD_CONTACT, extra)
    if low_conf:
        return report(
            Verdict.INCONCLUSIVE,
            "C(d) boundary tests low-confidence",
            extra,
        )
    return report(Verdict.SIERPINSKI, REASON_CD_OK, extra)


# -- cut-point identification and capture scan -------------------------------------


def identify_cut_parameter(
    candidates: list,
    probe_radius: float = 0.05,
    probe_samples: int = 16,
    fate_cfg: FateConfig | None = None,
) -> object:
    """Which admissible parabolic parameter is a cut point (on the boundary
    of both bitransitive regions)?

    Probes a parameter circle around each candidate: neighbors of the cut
    point include bitransitive parameters (the free critical point sits in
    U_1 or U_infinity), neighbors of a 1/3-bifurcation point do not.
    """
    if fate_cfg is None:
        fate_cfg = FateConfig(budget=100_000)
    hits = []
    for cand in candidates:
        n = 0
        for k in range(probe_samples):
            a = cand.a + probe_radius * np.exp(2j * np.pi * k / probe_samples)
            if _is_bitransitive_parameter(a, fate_cfg):
                n += 1
        hits.append(n)
    ranked = sorted(zip(hits, range(len(candidates))), reverse=True)
    if ranked[0][0] == 0 or (len(ranked) > 1 and ranked[1][0] > 0):
        raise RuntimeError(
            f"cut-point probe inconclusive: bitransitive neighbor counts {hits}"
        )
    return candidates[ranked[0][1]]


_PROBE_BASIN = BasinConfig(budget=2_000, base_resolution=64)


def _is_bitransitive_parameter(a: complex, fate_cfg: FateConfig) -> bool:
    try:
        a = validate_per3_parameter(a)
    except Exception:
        return False
    f = per3_map(a)
    cycle = critical_cycle(f, fate_cfg)
    fate_a = orbit_fate(f, finite(a), fate_cfg)
    if not (isinstance(fate_a, Converged) and cycles_match(fate_a.cycle, cycle)):
        return False
    phase = _aligned_phase(fate_a, cycle)
    if phase == 0:
        return False
    try:
        return immediate_basin_membership(
            f, finite(a), cycle.points[phase], cycle, _PROBE_BASIN, fate_cfg
        )
    except (IndeterminateBasinError, RasterizationError):
        return False


def find_capture_parameter(
    window=None,
    nx: int = 400,
    ny: int = 400,
    budget: int = 2_000,
    max_candidates: int = 40,
) -> complex:
    """Scan the parameter plane and return a confirmed capture parameter in
    the airplane piece (Omega1): critical orbit locked to the 3-cycle with a
    late but bounded entry, candidates confirmed by the classifiers.

    Candidate confirmation runs with a reduced contact budget (the caller is
    expected to re-verify the returned parameter at full settings)."""
    from .render import DEFAULT_PARAM_WINDOW, parameter_fate_grid

    if window is None:
        window = DEFAULT_PARAM_WINDOW
    grid = parameter_fate_grid(window, nx, ny, budget)
    sp = params.special_parameters()
    locked = grid.attractor == 0
    # entry well past immediate locking but far from component-boundary
    # slowdowns, where classification gets expensive and unreliable
    late = locked & (grid.lock_start >= 6) & (grid.lock_start <= 60)
    cand_idx = np.flatnonzero(late.ravel())
    a_flat = grid.a.ravel()
    # deterministic order: candidates nearest the airplane center first
    dist = np.round(np.abs(a_flat[cand_idx] - sp.airplane_a), 9)
    order = np.lexsort((cand_idx, dist))
    scan_contact = ContactConfig(budget=5_000)
    tried = 0
    for i in cand_idx[order]:
        a = complex(a_flat[i])
        tried += 1
        if tried > max_candidates:
            break
        if hyperbolic_type(per3_map(a)) is not HyperbolicType.CAPTURE:
            continue
        region, _, _ = region_with_evidence(a, scan_contact)
        if region is Region.OMEGA1:
            return a
    raise RuntimeError("no capture parameter confirmed in the scanned window")
