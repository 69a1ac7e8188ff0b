"""Deterministic rasterization of dynamical planes and the parameter plane.

Output contract is the binary portable pixmap: "P6\\n<w> <h>\\n255\\n"
followed by 3*w*h bytes, row-major, top row first.  Rows are processed in
fixed-size blocks that are independent work units; worker threads only
schedule blocks, so the bytes are identical for 1 and N workers.

Palette anchors (all RGB, Julia-set ink is pure black):

  parameter plane --
    locked to the critical 3-cycle, by entry band b = min(lock/8, 7):
      band 0 (immediate lock: bitransitive shading) .. band 7 (deep capture)
      gold (255,208,64) darkening to ember (112,32,28);
    locked to another attractor, by period:
      1 blue (56,96,208), 2 green (64,160,96), 3 olive (150,150,58),
      4 violet (144,96,200), 5 teal (80,170,180), 6 mauve (176,120,150),
      7+ slate (110,110,128);
    unresolved: ink.

  dynamical plane --
    hue family by attractor index, rotated by phase within the family,
    dimmed by convergence-speed band; unmatched cycles are slate gray;
    unresolved: ink.
"""

from __future__ import annotations

import colorsys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from .maps import RationalMap, per3_b, validate_per3_parameter
from .orbits import (
    FateConfig,
    _CoeffStep,
    _Per3Step,
    attracting_cycles,
    fate_batch,
    prepare_attractor,
)
from .sphere import INFINITY, finite

ROW_BLOCK = 64

INK = (0, 0, 0)

THREE_CYCLE_BANDS = (
    (255, 208, 64),
    (244, 180, 48),
    (230, 150, 40),
    (212, 120, 36),
    (190, 92, 34),
    (166, 68, 32),
    (140, 48, 30),
    (112, 32, 28),
)

PERIOD_COLORS = {
    1: (56, 96, 208),
    2: (64, 160, 96),
    3: (150, 150, 58),
    4: (144, 96, 200),
    5: (80, 170, 180),
    6: (176, 120, 150),
}
PERIOD_OTHER = (110, 110, 128)

DYNAMICAL_BASE_HUES = (0.58, 0.08, 0.33, 0.83, 0.16)
UNMATCHED_GRAY = (110, 110, 128)

PALETTES = ("classic",)


@dataclass(frozen=True)
class Window:
    center: complex
    width: float
    height: float

    def __post_init__(self):
        if not (self.width > 0 and self.height > 0):
            raise ValueError("window dimensions must be positive")

    def grid(self, nx: int, ny: int) -> np.ndarray:
        """Pixel-center coordinates, top row first."""
        re = self.center.real + ((np.arange(nx) + 0.5) / nx - 0.5) * self.width
        im = self.center.imag + (0.5 - (np.arange(ny) + 0.5) / ny) * self.height
        return re[None, :] + 1j * im[:, None]


DEFAULT_PARAM_WINDOW = Window(1.25 + 0j, 4.5, 4.0)


@dataclass(frozen=True)
class RenderConfig:
    window: Window
    pixels_x: int
    pixels_y: int
    budget: int = 2_000
    chart: str = "plane"  # "plane" | "inverse"
    palette: str = "classic"
    detection_window: int = 24
    workers: int = 1

    def __post_init__(self):
        if self.pixels_x * self.pixels_y > 10**8:
            raise ValueError("image too large (pixel count capped at 1e8)")
        if self.pixels_x < 1 or self.pixels_y < 1:
            raise ValueError("image must be at least 1x1")
        if self.chart not in ("plane", "inverse"):
            raise ValueError("chart must be 'plane' or 'inverse'")
        if self.palette not in PALETTES:
            raise ValueError(f"unknown palette {self.palette!r}")


class ImageBuffer:
    """Row-major 8-bit RGB pixels."""

    def __init__(self, pixels: np.ndarray):
        if pixels.ndim != 3 or pixels.shape[2] != 3 or pixels.dtype != np.uint8:
            raise ValueError("pixels must be (h, w, 3) uint8")
        self.pixels = pixels

    @property
    def width(self) -> int:
        return self.pixels.shape[1]

    @property
    def height(self) -> int:
        return self.pixels.shape[0]

    def to_ppm_bytes(self) -> bytes:
        header = f"P6\n{self.width} {self.height}\n255\n".encode("ascii")
        return header + self.pixels.tobytes()

    def write_ppm(self, path) -> None:
        with open(path, "wb") as fh:
            fh.write(self.to_ppm_bytes())


def read_ppm(path) -> ImageBuffer:
    with open(path, "rb") as fh:
        data = fh.read()
    if not data.startswith(b"P6"):
        raise ValueError("not a binary portable pixmap")
    fields: list[bytes] = []
    pos = 2
    while len(fields) < 3:
        while pos < len(data) and data[pos : pos + 1].isspace():
            pos += 1
        if data[pos : pos + 1] == b"#":
            while data[pos : pos + 1] not in (b"\n", b""):
                pos += 1
            continue
        start = pos
        while pos < len(data) and not data[pos : pos + 1].isspace():
            pos += 1
        fields.append(data[start:pos])
    pos += 1  # single whitespace after maxval
    w, h, maxval = (int(x) for x in fields)
    if maxval != 255:
        raise ValueError("only 8-bit pixmaps supported")
    arr = np.frombuffer(data[pos : pos + 3 * w * h], dtype=np.uint8)
    return ImageBuffer(arr.reshape(h, w, 3).copy())


# -- fate grids ---------------------------------------------------------------


@dataclass
class FateGrid:
    a: np.ndarray | None  # parameter grids only
    converged: np.ndarray
    period: np.ndarray
    lock_start: np.ndarray
    phase: np.ndarray
    attractor: np.ndarray
    steps: np.ndarray
    window: Window


def _run_blocks(ny, workers, run_block, payloads):
    """Run per-block work functions; blocks are fixed-size row strips, so
    worker count affects scheduling only, never the bytes produced."""
    blocks = [(r0, min(r0 + ROW_BLOCK, ny)) for r0 in range(0, ny, ROW_BLOCK)]
    if workers <= 1:
        return [run_block((blk, payloads)) for blk in blocks]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(run_block, [(blk, payloads) for blk in blocks]))


def parameter_fate_grid(
    window: Window = DEFAULT_PARAM_WINDOW,
    nx: int = 800,
    ny: int = 800,
    budget: int = 2_000,
    detection_window: int = 24,
    workers: int = 1,
) -> FateGrid:
    """Fate of the free critical orbit z0 = a under f_a, per pixel a."""
    a = window.grid(nx, ny)
    out = FateGrid(
        a=a,
        converged=np.zeros((ny, nx), dtype=bool),
        period=np.zeros((ny, nx), dtype=np.int32),
        lock_start=np.full((ny, nx), -1, dtype=np.int32),
        phase=np.full((ny, nx), -1, dtype=np.int32),
        attractor=np.full((ny, nx), -1, dtype=np.int16),
        steps=np.zeros((ny, nx), dtype=np.int32),
        window=window,
    )
    cfg = FateConfig(
        budget=budget, window=detection_window, scan_lags=8, full_scan_stride=4
    )
    results = _run_blocks(ny, workers, _parameter_block, (a, cfg))
    for r0, r1, fields in results:
        for name, arr in fields.items():
            getattr(out, name)[r0:r1] = arr
    return out


def _parameter_block(job):
    (r0, r1), (a, cfg) = job
    nx = a.shape[1]
    ablk = a[r0:r1].ravel()
    ok = (np.abs(ablk) > 1e-9) & (np.abs(ablk - 2.0) > 1e-9)
    av = ablk[ok]
    inv = np.abs(av) > 1.0
    with np.errstate(divide="ignore"):
        w = np.where(inv, 1.0 / np.where(av == 0, 1.0, av), av)
    attr = [prepare_attractor([finite(0), INFINITY, finite(1)])]
    res = fate_batch(_Per3Step(per3_b(av)), w, inv, cfg, attractors=attr)
    shape = (r1 - r0, nx)
    fields = {}
    for name, field_, fill in (
        ("converged", res.converged, False),
        ("period", res.period, 0),
        ("lock_start", res.lock_start, -1),
        ("phase", res.phase, -1),
        ("attractor", res.attractor, -1),
        ("steps", res.steps, 0),
    ):
        full = np.full(ablk.size, fill, dtype=field_.dtype)
        full[ok] = field_
        fields[name] = full.reshape(shape)
    return r0, r1, fields


def dynamical_fate_grid(
    f: RationalMap,
    cfg: RenderConfig,
    attractor_points: list | None = None,
) -> FateGrid:
    """Per-pixel fate of the orbit of the pixel's point under f."""
    nx, ny = cfg.pixels_x, cfg.pixels_y
    grid = cfg.window.grid(nx, ny)
    out = FateGrid(
        a=None,
        converged=np.zeros((ny, nx), dtype=bool),
        period=np.zeros((ny, nx), dtype=np.int32),
        lock_start=np.full((ny, nx), -1, dtype=np.int32),
        phase=np.full((ny, nx), -1, dtype=np.int32),
        attractor=np.full((ny, nx), -1, dtype=np.int16),
        steps=np.zeros((ny, nx), dtype=np.int32),
        window=cfg.window,
    )
    if attractor_points is None:
        cycles = attracting_cycles(f)
        attractor_points = [list(c.points) for c in cycles]
    fate_cfg = FateConfig(
        budget=cfg.budget,
        window=cfg.detection_window,
        scan_lags=8,
        full_scan_stride=4,
    )
    payloads = (f, grid, cfg.chart, attractor_points, fate_cfg)
    results = _run_blocks(ny, cfg.workers, _dynamical_block, payloads)
    for r0, r1, fields in results:
        for name, arr in fields.items():
            getattr(out, name)[r0:r1] = arr
    return out


def _dynamical_block(job):
    (r0, r1), (f, grid, chart, attractor_points, fate_cfg) = job
    nx = grid.shape[1]
    pts = grid[r0:r1].ravel()
    if chart == "plane":
        inv = np.abs(pts) > 1.0
        with np.errstate(divide="ignore"):
            w = np.where(inv, 1.0 / np.where(pts == 0, 1.0, pts), pts)
    else:
        # window coordinates are w = 1/z; w = 0 is the point at infinity
        w = pts.copy()
        inv = np.ones(pts.size, dtype=bool)
    attrs = [prepare_attractor(p) for p in attractor_points]
    res = fate_batch(_CoeffStep(f), w, inv, fate_cfg, attractors=attrs)
    shape = (r1 - r0, nx)
    return r0, r1, {
        "converged": res.converged.reshape(shape),
        "period": res.period.reshape(shape),
        "lock_start": res.lock_start.reshape(shape),
        "phase": res.phase.reshape(shape),
        "attractor": res.attractor.reshape(shape),
        "steps": res.steps.reshape(shape),
    }


# -- coloring -----------------------------------------------------------------


def entry_band(lock_start: int) -> int:
    return min(max(int(lock_start), 0) // 8, 7)


def speed_band(steps: int, budget: int) -> int:
    return min(8 * max(int(steps), 0) // max(budget, 1), 7)


def dynamical_color(attractor: int, phase: int, period: int, band: int) -> tuple:
    """Anchored HSV ramp: base hue per attractor family, rotated by phase,
    dimmed with the speed band."""
    h = DYNAMICAL_BASE_HUES[attractor % len(DYNAMICAL_BASE_HUES)]
    h = (h + 0.10 * phase / max(period, 1)) % 1.0
    v = 1.0 - 0.08 * band
    r, g, b = colorsys.hsv_to_rgb(h, 0.82, v)
    return int(round(255 * r)), int(round(255 * g)), int(round(255 * b))


def colorize_parameter(grid: FateGrid) -> ImageBuffer:
    ny, nx = grid.converged.shape
    img = np.zeros((ny, nx, 3), dtype=np.uint8)  # ink background
    locked = grid.attractor == 0
    bands = np.minimum(np.maximum(grid.lock_start, 0) // 8, 7)
    lut = np.array(THREE_CYCLE_BANDS, dtype=np.uint8)
    img[locked] = lut[bands[locked]]
    other = grid.converged & ~locked
    pc = np.array(
        [INK]
        + [PERIOD_COLORS.get(p, PERIOD_OTHER) for p in range(1, 7)]
        + [PERIOD_OTHER],
        dtype=np.uint8,
    )
    pidx = np.clip(grid.period, 0, 7)
    img[other] = pc[pidx[other]]
    return ImageBuffer(img)


def colorize_dynamical(grid: FateGrid, budget: int) -> ImageBuffer:
    ny, nx = grid.converged.shape
    img = np.zeros((ny, nx, 3), dtype=np.uint8)
    conv = grid.converged
    matched = conv & (grid.attractor >= 0)
    # few distinct color keys per image: build them via a small table
    keys = np.stack(
        [
            grid.attractor.astype(np.int32),
            grid.phase.astype(np.int32),
            grid.period.astype(np.int32),
            np.minimum(8 * np.maximum(grid.steps, 0) // max(budget, 1), 7).astype(
                np.int32
            ),
        ],
        axis=-1,
    )
    flat = keys[matched]
    if flat.size:
        uniq, inverse = np.unique(flat, axis=0, return_inverse=True)
        table = np.array(
            [dynamical_color(ai, ph, pe, bd) for ai, ph, pe, bd in uniq],
            dtype=np.uint8,
        )
        img[matched] = table[inverse]
    img[conv & (grid.attractor < 0)] = UNMATCHED_GRAY
    return ImageBuffer(img)


# -- top-level renders ----------------------------------------------------------


def render_parameter(
    window: Window = DEFAULT_PARAM_WINDOW,
    nx: int = 800,
    ny: int = 800,
    budget: int = 2_000,
    workers: int = 1,
    detection_window: int = 24,
) -> ImageBuffer:
    """The parameter plane of the family, Figure-5 window by default."""
    grid = parameter_fate_grid(window, nx, ny, budget, detection_window, workers)
    return colorize_parameter(grid)


def render_dynamical(f: RationalMap, cfg: RenderConfig) -> ImageBuffer:
    """Dynamical plane of f: basins colored by attractor, phase and speed;
    unresolved pixels are Julia-set ink."""
    grid = dynamical_fate_grid(f, cfg)
    return colorize_dynamical(grid, cfg.budget)
