"""Report rendering: matplotlib figures saved next to the delimited output.

Every report-style CLI command can emit a figure (--figure PATH): the
special-parameter table gets a parameter-plane chart with the distinguished
values marked, a classification gets the dynamical plane around its map
with contact evidence overlaid, doubling orbits get a circle diagram, and
periodic points get a stability scatter.
"""

from __future__ import annotations

import math

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .cformat import format_complex
from .maps import RationalMap
from .render import (
    DEFAULT_PARAM_WINDOW,
    RenderConfig,
    Window,
    colorize_dynamical,
    colorize_parameter,
    dynamical_fate_grid,
    parameter_fate_grid,
)


def _extent(window: Window):
    return (
        window.center.real - window.width / 2,
        window.center.real + window.width / 2,
        window.center.imag - window.height / 2,
        window.center.imag + window.height / 2,
    )


def save_image_png(buffer, path) -> None:
    """PNG companion of a rendered image buffer."""
    plt.imsave(path, buffer.pixels)


def save_special_params_figure(
    sp, path, *, raster: int = 0, budget: int = 800, workers: int = 1
) -> None:
    """Distinguished parameters on the parameter plane; raster > 0 draws a
    fate raster underneath (raster x raster pixels)."""
    fig, ax = plt.subplots(figsize=(7.2, 6.4))
    window = DEFAULT_PARAM_WINDOW
    if raster:
        grid = parameter_fate_grid(window, raster, raster, budget, workers=workers)
        img = colorize_parameter(grid)
        ax.imshow(img.pixels, extent=_extent(window), origin="upper")
    markers = [
        ("airplane_a", sp.airplane_a, "o", "tab:red"),
        ("rabbit_a", sp.rabbit_a, "o", "tab:orange"),
        ("corabbit_a", sp.corabbit_a, "o", "tab:brown"),
        ("cut_x", sp.cut_x, "X", "tab:blue"),
        ("cut_xbar", sp.cut_xbar, "X", "tab:cyan"),
        ("bif_delta2", sp.bif_delta2, "^", "tab:green"),
        ("bif_delta3", sp.bif_delta3, "^", "tab:olive"),
        ("zero", sp.zero, "X", "k"),
    ]
    for name, z, marker, color in markers:
        ax.plot(z.real, z.imag, marker, color=color, markersize=9, mew=1.5,
                mec="white" if raster else color, label=name)
        ax.annotate(
            name,
            (z.real, z.imag),
            textcoords="offset points",
            xytext=(7, 5),
            fontsize=8,
            color="white" if raster else "black",
        )
    ax.set_xlim(_extent(window)[:2])
    ax.set_ylim(_extent(window)[2:])
    ax.set_xlabel("Re a")
    ax.set_ylabel("Im a")
    ax.set_title("distinguished parameters of (z-1)(z-a/(2-a))/z^2")
    ax.grid(alpha=0.25, linewidth=0.5)
    fig.tight_layout()
    fig.savefig(path, dpi=130)
    plt.close(fig)


def save_classification_figure(
    report, path, *, raster: int = 320, budget: int = 800
) -> None:
    """Dynamical plane of f_a with the contact-evidence points marked."""
    from .maps import per3_map

    f = per3_map(report.a)
    pts = [ev.point for ev in report.evidence if not ev.point.is_infinity]
    span = 3.2
    cfg = RenderConfig(
        window=Window(0.5 + 0j, span, span),
        pixels_x=raster,
        pixels_y=raster,
        budget=budget,
    )
    grid = dynamical_fate_grid(f, cfg)
    img = colorize_dynamical(grid, cfg.budget)
    fig, ax = plt.subplots(figsize=(6.8, 6.4))
    ax.imshow(img.pixels, extent=_extent(cfg.window), origin="upper")
    for ev in report.evidence:
        if ev.point.is_infinity:
            continue
        z = ev.point.value
        full = ev.phases_seen == frozenset({0, 1, 2})
        ax.plot(
            z.real,
            z.imag,
            "X" if full else "o",
            color="white",
            mec="black",
            markersize=9 if full else 6,
        )
        ax.annotate(
            "{" + ",".join(str(p) for p in sorted(ev.phases_seen)) + "}",
            (z.real, z.imag),
            textcoords="offset points",
            xytext=(6, 6),
            fontsize=8,
            color="white",
        )
    ax.set_title(
        f"a = {format_complex(report.a)}: {report.verdict.value}"
        f" ({report.hyperbolic_type.value}, {report.region.value})"
    )
    ax.set_xlabel("Re z")
    ax.set_ylabel("Im z")
    fig.tight_layout()
    fig.savefig(path, dpi=130)
    plt.close(fig)


def save_doubling_figure(orbits_list, path) -> None:
    """Orbits under angle doubling drawn on the unit circle."""
    fig, ax = plt.subplots(figsize=(5.6, 5.6))
    theta = np.linspace(0, 2 * math.pi, 256)
    ax.plot(np.cos(theta), np.sin(theta), color="0.8", linewidth=1)
    colors = ("tab:blue", "tab:red", "tab:green", "tab:purple")
    for k, orb in enumerate(orbits_list):
        angles = [float(a) for a in orb.angles]
        xs = [math.cos(2 * math.pi * a) for a in angles]
        ys = [math.sin(2 * math.pi * a) for a in angles]
        c = colors[k % len(colors)]
        ax.plot(xs + xs[:1], ys + ys[:1], "-o", color=c, markersize=5,
                linewidth=0.8, alpha=0.85)
        for a, xx, yy in zip(orb.angles, xs, ys):
            ax.annotate(str(a), (xx, yy), textcoords="offset points",
                        xytext=(6, 4), fontsize=8, color=c)
    ax.set_aspect("equal")
    ax.set_xlim(-1.25, 1.25)
    ax.set_ylim(-1.25, 1.25)
    ax.set_title("orbits under angle doubling")
    ax.axis("off")
    fig.tight_layout()
    fig.savefig(path, dpi=130)
    plt.close(fig)


def save_periodic_points_figure(f: RationalMap, points, path, *, label="") -> None:
    """Periodic points colored by stability class."""
    fig, ax = plt.subplots(figsize=(6.4, 6.0))
    style = {
        "superattracting": ("*", "tab:red"),
        "attracting": ("o", "tab:orange"),
        "repelling": ("s", "tab:blue"),
        "indifferent": ("D", "tab:green"),
    }
    seen = set()
    for p in points:
        if p.location.is_infinity:
            continue
        z = p.location.value
        marker, color = style[p.stability]
        lbl = p.stability if p.stability not in seen else None
        seen.add(p.stability)
        ax.plot(z.real, z.imag, marker, color=color, markersize=8, label=lbl)
        ax.annotate(
            f"n={p.exact_period}",
            (z.real, z.imag),
            textcoords="offset points",
            xytext=(6, 5),
            fontsize=8,
        )
    if any(p.location.is_infinity for p in points):
        ax.annotate("(a point at infinity is not drawn)", (0.02, 0.02),
                    xycoords="axes fraction", fontsize=8, color="0.4")
    ax.axhline(0, color="0.85", linewidth=0.6)
    ax.axvline(0, color="0.85", linewidth=0.6)
    ax.set_aspect("equal")
    ax.set_xlabel("Re z")
    ax.set_ylabel("Im z")
    ax.set_title(label or "periodic points")
    if seen:
        ax.legend(loc="upper right", fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=130)
    plt.close(fig)
