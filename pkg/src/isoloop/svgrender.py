"""Minimal deterministic SVG rendering of configurations and carried loops.

Pure string output, no timestamps or randomness: identical inputs produce
byte-identical files.
"""

from __future__ import annotations

import os


def _bounds(points_list):
    xs = [x for pts in points_list for x, _ in pts]
    ys = [y for pts in points_list for _, y in pts]
    return min(xs), min(ys), max(xs), max(ys)


def render_frame(config, polyline=None, bounds=None, size=480) -> str:
    """One SVG frame: punctures as dots, optional polyline as a closed path."""
    pts = config.as_floats()
    if bounds is None:
        pools = [pts]
        if polyline is not None:
            pools.append([tuple(v) for v in polyline.vertices])
        x0, y0, x1, y1 = _bounds(pools)
    else:
        x0, y0, x1, y1 = bounds
    span = max(x1 - x0, y1 - y0, 1e-9)
    pad = 0.08 * span
    x0, y0, span = x0 - pad, y0 - pad, span + 2 * pad
    scale = size / span

    def sx(x):
        return (x - x0) * scale

    def sy(y):
        # SVG y grows downward; flip so the plane reads normally.
        return size - (y - y0) * scale

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {size} {size}"'
        f' width="{size}" height="{size}">',
        f'<rect width="{size}" height="{size}" fill="white"/>',
    ]
    if polyline is not None:
        coords = " L ".join(
            f"{sx(x):.2f} {sy(y):.2f}" for x, y in polyline.vertices
        )
        parts.append(
            f'<path d="M {coords} Z" fill="none" stroke="#1f6fb2" stroke-width="1.2"/>'
        )
    r = max(2.0, 0.006 * size)
    for i, (x, y) in enumerate(pts):
        parts.append(
            f'<circle cx="{sx(x):.2f}" cy="{sy(y):.2f}" r="{r:.1f}" fill="#c0392b"/>'
        )
        parts.append(
            f'<text x="{sx(x) + r + 2:.2f}" y="{sy(y) - r:.2f}"'
            f' font-size="11" font-family="monospace">{i + 1}</text>'
        )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def save_frames(frames, directory) -> list[str]:
    """Write numbered frame files; returns the paths written."""
    os.makedirs(directory, exist_ok=True)
    paths = []
    for i, svg in enumerate(frames):
        path = os.path.join(directory, f"frame_{i:05d}.svg")
        with open(path, "w") as fh:
            fh.write(svg)
        paths.append(path)
    return paths
