"""Curve data for the three characteristic-quantity figures, CSV and SVG output."""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .criteria import a_characteristic, q_characteristic
from .experiment import write_csv
from .report import format_number
from .states import AntisymCatPure, DephasedCat

FIGURES = ("fig1", "fig2", "fig3")


@dataclass(frozen=True)
class FigureData:
    name: str
    z: np.ndarray
    curves: dict  # column name -> values
    ylabel: str

    def header(self) -> list[str]:
        return ["z"] + list(self.curves)

    def rows(self) -> list[list[str]]:
        cols = [self.z] + list(self.curves.values())
        return [[format_number(float(c[i])) for c in cols] for i in range(self.z.size)]


def q_grid() -> np.ndarray:
    return np.round(np.arange(201) * 0.02, 12)


def a_grid() -> np.ndarray:
    return np.round(np.arange(1, 161) * 0.01, 12)


def _evaluate(fn, zs, threads: int) -> np.ndarray:
    with ThreadPoolExecutor(max_workers=max(1, threads)) as pool:
        return np.array(list(pool.map(fn, zs)))


def q_figure(n: int, c: float = 0.5, a_values=(1, 2, 3, 4, 5), zs=None, threads: int = 1, name: str = "") -> FigureData:
    zs = q_grid() if zs is None else np.asarray(zs, dtype=float)
    template = DephasedCat(n, 0.0, c)
    curves = {f"Q_{a}": _evaluate(q_characteristic(template, float(a)), zs, threads) for a in a_values}
    return FigureData(name or f"Q_n{n}", zs, curves, "Q_a(z)")


def a_figure(ns=(2, 4, 6, 8), zs=None, threads: int = 1) -> FigureData:
    zs = a_grid() if zs is None else np.asarray(zs, dtype=float)
    curves = {f"A_n{n}": _evaluate(a_characteristic(AntisymCatPure(n, 1.0)), zs, threads) for n in ns}
    return FigureData("fig3", zs, curves, "A(z)")


def figure_data(which: str, threads: int = 1) -> FigureData:
    if which == "fig1":
        return q_figure(4, threads=threads, name="fig1")
    if which == "fig2":
        return q_figure(10, threads=threads, name="fig2")
    if which == "fig3":
        return a_figure(threads=threads)
    raise ValueError(f"unknown figure {which!r}; choose from {FIGURES}")


_COLORS = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b")


def svg_plot(data: FigureData, width: int = 640, height: int = 420) -> str:
    """Linear-axis line plot of the positive parts of each curve."""
    pad = 50
    z0, z1 = float(data.z.min()), float(data.z.max())
    positive = [v[v > 0] for v in data.curves.values()]
    y1 = max((float(p.max()) for p in positive if p.size), default=1.0) * 1.05

    def sx(z):
        return pad + (z - z0) / (z1 - z0) * (width - 2 * pad)

    def sy(y):
        return height - pad - y / y1 * (height - 2 * pad)

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}">',
        '<rect width="100%" height="100%" fill="white"/>',
        f'<line x1="{pad}" y1="{height - pad}" x2="{width - pad}" y2="{height - pad}" stroke="black"/>',
        f'<line x1="{pad}" y1="{pad}" x2="{pad}" y2="{height - pad}" stroke="black"/>',
        f'<text x="{width / 2}" y="{height - 12}" text-anchor="middle">z</text>',
        f'<text x="14" y="{height / 2}" transform="rotate(-90 14 {height / 2})" text-anchor="middle">{data.ylabel}</text>',
    ]
    for k in range(5):
        zt, yt = z0 + k * (z1 - z0) / 4, k * y1 / 4
        parts.append(f'<text x="{sx(zt):.1f}" y="{height - pad + 16}" font-size="11" text-anchor="middle">{zt:.2g}</text>')
        parts.append(f'<text x="{pad - 6}" y="{sy(yt) + 4:.1f}" font-size="11" text-anchor="end">{yt:.2g}</text>')
    for k, (label, values) in enumerate(data.curves.items()):
        color = _COLORS[k % len(_COLORS)]
        run = []
        for z, y in list(zip(data.z, values)) + [(None, 0.0)]:
            if z is not None and y > 0:
                run.append(f"{sx(z):.2f},{sy(y):.2f}")
                continue
            if len(run) > 1:
                parts.append(f'<polyline fill="none" stroke="{color}" stroke-width="1.5" points="{" ".join(run)}"/>')
            run = []
        parts.append(f'<text x="{width - pad + 4}" y="{pad + 14 * k}" font-size="11" fill="{color}">{label}</text>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def run_figure(which: str, out: str | None = None, svg: bool = False, threads: int = 1) -> list[Path]:
    """Write ``<out>.csv`` (and ``<out>.svg``); ``out`` defaults to the figure name."""
    data = figure_data(which, threads)
    prefix = out or which
    paths = [write_csv(f"{prefix}.csv", data.header(), data.rows())]
    if svg:
        path = Path(f"{prefix}.svg")
        path.write_text(svg_plot(data))
        paths.append(path)
    return paths
