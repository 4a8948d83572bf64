"""Brute-force oracle: carry an explicit polyline loop through a trajectory.

Independent of the algebra: each trajectory step is realized as an explicit
plane homeomorphism (one radial bump per puncture, moving everything within
half the minimum separation of a puncture by a tapered copy of that
puncture's displacement; supports are disjoint and the taper is shallow
enough to be injective).  The carried polyline's class is then read off
geometrically, by walking it and recording signed crossings with the
vertical downward ray below each puncture: left-to-right emits the
puncture's generator, right-to-left its inverse.  Agreement of this reading
with the algebraic transport is the package's strongest self-check.

Everything here runs in double precision: the oracle validates discrete
words, not geometry-sensitive quantities, and near-degenerate ray readings
are retried under tiny deterministic nudges of the ray abscissae.
"""

from __future__ import annotations

import math
from fractions import Fraction

import numpy as np

from . import kernels
from .configspace import (
    Config,
    Trajectory,
    cos_sin_turns,
    make_trajectory,
    validate_config,
)
from .errors import (
    ChartError,
    DegenerateCrossing,
    ProximityViolation,
    StepTooLarge,
)
from .loopalgebra import LoopClass, canonical_class

# Runtime guard against numerically degenerate carries.  The entry clearance
# requirement is min_sep/8, but the carry map compresses the loop wall ahead
# of a moving puncture exponentially in the dragged path length, so tightly
# wound carries legitimately reach clearances many decades below min_sep.
# Doubles resolve relative offsets down to ~1e-15, and the adaptive
# refinement below is scale-invariant, so the re-check only rejects outright
# degeneracy.
_RECHECK_FACTOR = 1e-9
_REFINE_FLOOR_FACTOR = 1e-10

# The bump map is curved near a moving puncture; a chord only tracks it to
# within ~(segment length)/4 per step, so segments must stay shorter than a
# fraction of their clearance to the puncture or the carried polyline can be
# cut through by it.
_REFINE_FACTOR = 0.4


def _split_with_counts(verts, counts):
    total = int(counts.sum())
    seg = np.roll(verts, -1, axis=0) - verts
    reps = np.repeat(np.arange(len(verts)), counts)
    starts = np.concatenate(([0], np.cumsum(counts)[:-1]))
    frac = (np.arange(total) - starts[reps]) / counts[reps]
    return verts[reps] + seg[reps] * frac[:, None]


def _refine_near_movers(verts, movers, floor_len):
    """Split edges until none is longer than _REFINE_FACTOR x its clearance
    to the nearest moving puncture (never below floor_len)."""
    if len(movers) == 0:
        return verts
    for _ in range(48):
        clear = np.hypot(
            verts[:, None, 0] - movers[None, :, 0],
            verts[:, None, 1] - movers[None, :, 1],
        ).min(axis=1)
        target = np.maximum(
            floor_len, _REFINE_FACTOR * np.minimum(clear, np.roll(clear, -1))
        )
        seg = np.roll(verts, -1, axis=0) - verts
        lens = np.hypot(seg[:, 0], seg[:, 1])
        counts = np.maximum(1, np.ceil(lens / target).astype(np.int64))
        if (counts == 1).all():
            break
        verts = _split_with_counts(verts, counts)
    return np.ascontiguousarray(verts)


class PolylineLoop:
    """A closed polyline (the closing edge is implied).

    ``spacing`` is the density bound the vertices satisfy; construction
    resamples to it and drops consecutive duplicates.
    """

    def __init__(self, vertices, spacing: float):
        verts = np.asarray(vertices, dtype=np.float64)
        if verts.ndim != 2 or verts.shape[1] != 2:
            raise ValueError("vertices must be an (V, 2) array")
        keep = np.any(verts != np.roll(verts, 1, axis=0), axis=1)
        verts = verts[keep]
        if len(verts) < 3:
            raise ValueError("a polyline loop needs at least 3 distinct vertices")
        if spacing <= 0:
            raise ValueError("spacing must be positive")
        self.vertices = kernels.resample_closed(np.ascontiguousarray(verts), spacing)
        self.spacing = float(spacing)

    @classmethod
    def _raw(cls, vertices, spacing):
        # Internal: wrap vertices already satisfying the density bound.
        loop = cls.__new__(cls)
        loop.vertices = vertices
        loop.spacing = float(spacing)
        return loop

    def __len__(self):
        return len(self.vertices)

    def clearance(self, config: Config) -> float:
        """Distance from the nearest vertex to the nearest puncture."""
        pts = np.asarray(config.as_floats())
        d = np.hypot(
            self.vertices[:, None, 0] - pts[None, :, 0],
            self.vertices[:, None, 1] - pts[None, :, 1],
        )
        return float(d.min())

    def length(self) -> float:
        seg = np.roll(self.vertices, -1, axis=0) - self.vertices
        return float(np.hypot(seg[:, 0], seg[:, 1]).sum())


def diameter(p: PolylineLoop) -> float:
    """Largest vertex-to-vertex distance (via the convex hull)."""
    hull = _convex_hull(p.vertices)
    best = 0.0
    for i in range(len(hull)):
        for j in range(i + 1, len(hull)):
            d = math.hypot(hull[i][0] - hull[j][0], hull[i][1] - hull[j][1])
            if d > best:
                best = d
    return best


def _convex_hull(verts) -> list[tuple[float, float]]:
    pts = sorted({(float(x), float(y)) for x, y in verts})
    if len(pts) <= 2:
        return pts

    def half(points):
        out = []
        for pt in points:
            while len(out) >= 2:
                ox, oy = out[-2]
                ax, ay = out[-1]
                if (ax - ox) * (pt[1] - oy) - (ay - oy) * (pt[0] - ox) <= 0:
                    out.pop()
                else:
                    break
            out.append(pt)
        return out

    lower = half(pts)
    upper = half(reversed(pts))
    return lower[:-1] + upper[:-1]


def round_polyline(config: Config, j: int, k: int, spacing: float | None = None) -> PolylineLoop:
    """An ellipse enclosing exactly the punctures in x-order slots j..k."""
    if not (1 <= j <= k <= config.n):
        raise ValueError(f"need 1 <= j <= k <= n, got j={j} k={k}")
    pts = sorted(config.as_floats())
    inside = pts[j - 1 : k]
    outside = pts[: j - 1] + pts[k:]
    min_x = min(x for x, _ in inside)
    max_x = max(x for x, _ in inside)
    min_y = min(y for _, y in inside)
    max_y = max(y for _, y in inside)
    cx = 0.5 * (min_x + max_x)
    cy = 0.5 * (min_y + max_y)
    # Margin: safely inside the gap to the nearest excluded puncture.
    hull_clear = config.min_sep
    for x, y in outside:
        dx = max(min_x - x, x - max_x, 0.0)
        dy = max(min_y - y, y - max_y, 0.0)
        hull_clear = min(hull_clear, math.hypot(dx, dy))
    margin = 0.45 * hull_clear
    a = 0.5 * (max_x - min_x) + margin
    b = 0.5 * (max_y - min_y) + margin
    spacing = spacing if spacing is not None else config.min_sep / 8.0
    count = max(16, int(math.ceil(2.0 * math.pi * max(a, b) / spacing)) + 1)
    angles = np.linspace(0.0, 2.0 * math.pi, count, endpoint=False)
    verts = np.stack([cx + a * np.cos(angles), cy + b * np.sin(angles)], axis=1)
    return PolylineLoop(verts, spacing)


def polyline_from_word(word, config: Config, spacing: float | None = None) -> PolylineLoop:
    """A polyline representative of an arbitrary word: one dip per letter.

    The loop runs along a high horizontal line and, for each letter, dips
    below the corresponding puncture, crossing its ray once in the letter's
    direction.  Dips at the same puncture are offset laterally so the
    polyline has no coincident segments.
    """
    pts = sorted(config.as_floats())
    word = list(word)
    for letter in word:
        if letter == 0 or abs(letter) > config.n:
            raise ValueError(f"letter {letter} out of range for n={config.n}")
    sep = config.min_sep
    spacing = spacing if spacing is not None else sep / 8.0
    top = max(y for _, y in pts) + sep
    if not word:
        x0 = pts[0][0]
        return PolylineLoop(
            [(x0, top), (x0 + sep, top + sep), (x0 - sep, top + sep)], spacing
        )
    half_w = sep / 4.0
    depth = sep / 4.0
    seen: dict[int, int] = {}
    verts: list[tuple[float, float]] = []
    for letter in word:
        slot = abs(letter)
        px, py = pts[slot - 1]
        bump = seen.get(slot, 0)
        seen[slot] = bump + 1
        off = bump * min(spacing, half_w) / 7.0
        lo_x, hi_x = px - half_w - off, px + half_w + off
        y_dip = py - depth - off
        if letter > 0:
            dip = [(lo_x, top), (lo_x, y_dip), (hi_x, y_dip), (hi_x, top)]
        else:
            dip = [(hi_x, top), (hi_x, y_dip), (lo_x, y_dip), (lo_x, top)]
        verts.extend(dip)
    return PolylineLoop(verts, spacing)


def word_from_polyline(p: PolylineLoop, config: Config) -> LoopClass:
    """Read the loop class of a polyline via signed downward-ray crossings."""
    if not config.has_distinct_x():
        raise ChartError("repeated x-coordinates: the ray chart is undefined")
    pts = sorted(config.as_floats())
    ray_x = np.array([x for x, _ in pts])
    ray_y = np.array([y for _, y in pts])
    for shift in (0.0, 1e-9, -1e-9, 3e-9, -3e-9, 9e-9, -9e-9):
        letters, degenerate = kernels.ray_word(p.vertices, ray_x + shift, ray_y)
        if not degenerate:
            return canonical_class(config.n, letters)
    raise DegenerateCrossing(
        "ray readings stayed degenerate after perturbation retries"
    )


def carry_steps(p: PolylineLoop, traj: Trajectory):
    """Generator form of :func:`carry`: yields (step_index, polyline) per step."""
    before = traj.initial()
    entry_floor = before.min_sep / 8.0
    if p.clearance(before) < entry_floor:
        raise ProximityViolation(
            f"initial polyline clearance {p.clearance(before):.3g} is below"
            f" min_sep/8 = {entry_floor:.3g}"
        )
    verts = p.vertices.copy()
    for k in range(traj.steps):
        before = traj.samples[k][1]
        after = traj.samples[k + 1][1]
        sep = before.min_sep
        centers = np.asarray(before.as_floats())
        targets = np.asarray(after.as_floats())
        disps = targets - centers
        disp_norms = np.hypot(disps[:, 0], disps[:, 1])
        max_disp = float(disp_norms.max())
        if max_disp > sep / 4.0:
            raise StepTooLarge(
                f"step {k} moves a puncture by {max_disp:.3g} > min_sep/4 ="
                f" {sep / 4.0:.3g}; subdivide the trajectory",
                step=k,
            )
        movers = centers[disp_norms > 0.0]
        verts = _refine_near_movers(verts, movers, sep * _REFINE_FLOOR_FACTOR)
        kernels.bump_displace(verts, centers, disps, sep / 2.0)
        verts = kernels.resample_closed(verts, sep / 8.0)
        q = PolylineLoop._raw(verts, sep / 8.0)
        if q.clearance(after) < sep * _RECHECK_FACTOR:
            raise ProximityViolation(
                f"carried polyline degenerated onto a puncture at step {k}",
                step=k,
            )
        yield k, q
        verts = q.vertices


def carry(p: PolylineLoop, traj: Trajectory) -> PolylineLoop:
    """Push a polyline through every step of the trajectory."""
    result = p
    for _, result in carry_steps(p, traj):
        pass
    return result


def carry_factor(traj: Trajectory) -> int:
    """Smallest uniform subdivision factor making every step carriable."""
    worst = 1
    for k in range(traj.steps):
        sep = traj.samples[k][1].min_sep
        disp = math.sqrt(max(traj.step_displacements(k)))
        if disp > 0:
            worst = max(worst, math.ceil(disp / (sep / 4.0)))
    return worst


def twist_trajectory(n: int, letters, steps_per_twist: int = 8) -> Trajectory:
    """A trajectory realizing a braid word by local half-twists on a grid.

    Punctures start at (1, 0), ..., (n, 0); letter +-i rotates the current
    occupants of slots i, i+1 about their midpoint by a half turn (ccw for
    +, cw for -).  Endpoints land back on the grid exactly, so slots are
    stable positions and the extracted word equals ``letters``.
    """
    if n < 2:
        raise ValueError("need n >= 2")
    letters = list(letters)
    for s in letters:
        if s == 0 or abs(s) >= n:
            raise ValueError(f"slot letter {s} out of range for n={n}")
    current: list[tuple[Fraction, Fraction]] = [
        (Fraction(i), Fraction(0)) for i in range(1, n + 1)
    ]
    samples = [(Fraction(0), validate_config(current))]
    total = len(letters) * steps_per_twist
    tick = 0
    for s in letters:
        i = abs(s)
        mid_x = Fraction(2 * i + 1, 2)
        movers = [
            idx
            for idx, (x, _) in enumerate(current)
            if x == i or x == i + 1
        ]
        if len(movers) != 2:
            raise RuntimeError(f"grid slots {i},{i + 1} are not both occupied")
        start = {idx: current[idx] for idx in movers}
        for j in range(1, steps_per_twist + 1):
            turns = Fraction(j, 2 * steps_per_twist)
            if s < 0:
                turns = -turns
            c, sn = cos_sin_turns(turns)
            for idx in movers:
                dx = start[idx][0] - mid_x
                dy = start[idx][1]
                current[idx] = (mid_x + c * dx - sn * dy, sn * dx + c * dy)
            tick += 1
            samples.append((Fraction(tick, total), validate_config(list(current))))
    return make_trajectory(
        samples,
        meta={"generator": "twists", "n": n, "letters": letters},
    )
