"""Planar point configurations and sampled isotopies of them.

All coordinates are stored as exact rationals (``fractions.Fraction``).
Floats are dyadic rationals, so converting them is lossless; every order
predicate downstream (x-order charts, crossing times, certificates) is then
exact and the whole pipeline is deterministic.  Angles are measured in
turns: at quarter turns the cosine/sine are exact rationals, which makes
closed orbits close *exactly*.

A Trajectory samples an isotopy of a labeled configuration: sample k is the
position of every labeled point at time t_k, with t_0 = 0 the identity
position.  Point labels are positional: the point with label L sits at index
L-1 of every sample.
"""

from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Mapping, Sequence

from .errors import (
    DuplicatePoint,
    InvariantViolation,
    OrbitCollision,
    ParseError,
    SchemaError,
)

Point = tuple[Fraction, Fraction]

# Points closer than this (squared) count as coincident; floats carry their
# own noise, exact inputs are unaffected at any realistic scale.
_COINCIDENT_SQ = Fraction(1, 10**18)


def as_fraction(value) -> Fraction:
    """Exact conversion: ints, Fractions, floats and 'p/q'/decimal strings."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"not a rational: {value!r}") from exc
    raise ParseError(f"unsupported coordinate type: {type(value).__name__}")


def as_point(pair) -> Point:
    x, y = pair
    return (as_fraction(x), as_fraction(y))


def _dist_sq(a: Point, b: Point) -> Fraction:
    dx = a[0] - b[0]
    dy = a[1] - b[1]
    return dx * dx + dy * dy


@dataclass(frozen=True)
class Config:
    """A labeled finite set of distinct planar points.

    ``points[i]`` is the point labeled i+1.  Construct through
    :func:`validate_config`, which checks distinctness.
    """

    points: tuple[Point, ...]

    @property
    def n(self) -> int:
        return len(self.points)

    @property
    def labels(self) -> range:
        return range(1, len(self.points) + 1)

    @cached_property
    def min_sep_sq(self) -> Fraction:
        pts = self.points
        return min(
            _dist_sq(pts[i], pts[j])
            for i in range(len(pts))
            for j in range(i + 1, len(pts))
        )

    @property
    def min_sep(self) -> float:
        """Minimum pairwise distance (as a float; the square is exact)."""
        return math.sqrt(self.min_sep_sq)

    def xs_sorted(self) -> tuple[Fraction, ...]:
        return tuple(sorted(x for x, _ in self.points))

    def has_distinct_x(self) -> bool:
        xs = [x for x, _ in self.points]
        return len(set(xs)) == len(xs)

    def as_floats(self):
        return [(float(x), float(y)) for x, y in self.points]

    def translated(self, offset: Point) -> "Config":
        dx, dy = offset
        return Config(tuple((x + dx, y + dy) for x, y in self.points))


def validate_config(points: Iterable) -> Config:
    """Build a Config, assigning labels in input order.

    Raises DuplicatePoint when two points coincide (within 1e-9 for
    float-born coordinates; exact inputs compare exactly).
    """
    pts = tuple(as_point(p) for p in points)
    if not pts:
        raise ValueError("a configuration needs at least one point")
    if len(pts) > 1:
        for i in range(len(pts)):
            for j in range(i + 1, len(pts)):
                if _dist_sq(pts[i], pts[j]) < _COINCIDENT_SQ:
                    raise DuplicatePoint(
                        f"points {i + 1} and {j + 1} coincide: {pts[i]}"
                    )
    return Config(pts)


def cos_sin_turns(t: Fraction) -> tuple[Fraction, Fraction]:
    """(cos, sin) of the angle ``t`` turns; exact at quarter turns."""
    t = t - (t // 1)  # reduce mod 1
    quarter = {
        Fraction(0): (Fraction(1), Fraction(0)),
        Fraction(1, 4): (Fraction(0), Fraction(1)),
        Fraction(1, 2): (Fraction(-1), Fraction(0)),
        Fraction(3, 4): (Fraction(0), Fraction(-1)),
    }
    if t in quarter:
        return quarter[t]
    theta = 2.0 * math.pi * float(t)
    return (Fraction(math.cos(theta)), Fraction(math.sin(theta)))


@dataclass(frozen=True)
class Trajectory:
    """Strictly increasing time samples of an isotopy of a Config."""

    samples: tuple[tuple[Fraction, Config], ...]
    meta: Mapping[str, object] = field(default_factory=dict)

    @property
    def n(self) -> int:
        return self.samples[0][1].n

    @property
    def times(self) -> tuple[Fraction, ...]:
        return tuple(t for t, _ in self.samples)

    @property
    def configs(self) -> tuple[Config, ...]:
        return tuple(c for _, c in self.samples)

    @property
    def steps(self) -> int:
        return len(self.samples) - 1

    def initial(self) -> Config:
        return self.samples[0][1]

    def final(self) -> Config:
        return self.samples[-1][1]

    def step_displacements(self, k: int) -> tuple[Fraction, ...]:
        """Squared displacement of each labeled point across step k."""
        a = self.samples[k][1].points
        b = self.samples[k + 1][1].points
        return tuple(_dist_sq(p, q) for p, q in zip(a, b))

    def is_closed(self) -> bool:
        return self.initial().points == self.final().points


def make_trajectory(samples, meta=None) -> Trajectory:
    """Validate and freeze a sample sequence into a Trajectory."""
    samples = tuple((as_fraction(t), c) for t, c in samples)
    if not samples:
        raise InvariantViolation("a trajectory needs at least one sample")
    if samples[0][0] != 0:
        raise InvariantViolation(
            f"the first sample must be at t=0 (the identity position), got t={samples[0][0]}"
        )
    n = samples[0][1].n
    prev = None
    for t, config in samples:
        if config.n != n:
            raise InvariantViolation(
                f"sample at t={t} has {config.n} points, expected {n}"
            )
        if prev is not None and t <= prev:
            raise InvariantViolation(f"sample times must strictly increase at t={t}")
        prev = t
    return Trajectory(samples, dict(meta or {}))


@dataclass(frozen=True)
class StepMargin:
    """Sampling-coarseness measure of one step.

    ratio = (largest single-point displacement) / (min_sep / 2) where
    min_sep is the smaller of the two endpoint configurations' minimum
    separations.  Below 1 the step certifiably cannot hide a crossing; the
    built-in orbit generators routinely exceed 1 and remain extractable,
    so the ratio is a diagnostic, not a gate.
    """

    step: int
    min_sep_before: float
    min_sep_after: float
    max_displacement: float
    ratio: float


@dataclass(frozen=True)
class MarginReport:
    steps: tuple[StepMargin, ...]

    @property
    def valid(self) -> bool:
        return all(s.ratio < 1.0 for s in self.steps)

    @property
    def max_ratio(self) -> float:
        return max((s.ratio for s in self.steps), default=0.0)

    def summary(self) -> str:
        if not self.steps:
            return "margin: no steps"
        worst = max(self.steps, key=lambda s: s.ratio)
        flag = "ok" if self.valid else "coarse"
        return (
            f"margin: max ratio {worst.ratio:.3g} at step {worst.step} "
            f"({len(self.steps)} steps, {flag})"
        )


def validity_report(traj: Trajectory) -> MarginReport:
    """Per-step displacement-vs-separation margins for a trajectory."""
    out = []
    for k in range(traj.steps):
        before = traj.samples[k][1]
        after = traj.samples[k + 1][1]
        sep_b = before.min_sep if before.n > 1 else math.inf
        sep_a = after.min_sep if after.n > 1 else math.inf
        disp = math.sqrt(max(traj.step_displacements(k)))
        sep = min(sep_b, sep_a)
        ratio = 0.0 if disp == 0.0 else (math.inf if sep == 0.0 else disp / (sep / 2.0))
        out.append(StepMargin(k, sep_b, sep_a, disp, ratio))
    return MarginReport(tuple(out))


def gen_cascade(n: int, steps_per_orbit: int = 16) -> Trajectory:
    """The built-in unbounded-stretch family on F_n = {1/n, ..., 1/2, 1}.

    Chronologically for k = n, n-1, ..., 2, during the time window
    [1/k, 1/(k-1)] the point that started at 1/k makes one full
    counterclockwise circle around the point at 1/(k-1), radius
    1/k(k-1) (its distance to the center), while every other point holds
    still; points also hold still on [0, 1/n].  Each orbit closes exactly,
    so the final sample equals the initial one (a pure braid).
    """
    if n < 2:
        raise ValueError("need n >= 2")
    if steps_per_orbit < 8:
        raise ValueError("need steps_per_orbit >= 8 for unambiguous extraction")
    home = [(Fraction(1, j), Fraction(0)) for j in range(n, 0, -1)]
    base = validate_config(home)

    # Guard for modified geometry: every orbit circle must keep all bystander
    # points strictly outside (exact test on squared distances).  The built-in
    # family always passes: the circle around 1/(k-1) through 1/k stays clear
    # of 1/(k-2) by 2/(k-2)(k-1)k.
    for k in range(n, 1, -1):
        center = home[n - k + 1]
        radius = Fraction(1, k * (k - 1))
        for idx, p in enumerate(home):
            if idx in (n - k, n - k + 1):
                continue
            if _dist_sq(p, center) <= radius * radius:
                raise OrbitCollision(
                    f"orbit around {center} with radius {radius} reaches point {p}"
                )

    samples: list[tuple[Fraction, Config]] = [(Fraction(0), base)]
    current = list(home)
    if n >= 2:
        samples.append((Fraction(1, n), base))
    for k in range(n, 1, -1):
        mover = n - k  # index of the point that started at 1/k
        center = home[mover + 1]
        radius = Fraction(1, k * (k - 1))
        t_lo = Fraction(1, k)
        t_hi = Fraction(1, k - 1)
        for j in range(1, steps_per_orbit + 1):
            turns = Fraction(1, 2) + Fraction(j, steps_per_orbit)
            c, s = cos_sin_turns(turns)
            current[mover] = (center[0] + radius * c, center[1] + radius * s)
            t = t_lo + Fraction(j, steps_per_orbit) * (t_hi - t_lo)
            samples.append((t, validate_config(list(current))))
    return make_trajectory(
        samples,
        meta={"generator": "cascade", "n": n, "steps_per_orbit": steps_per_orbit},
    )


def gen_translation(config: Config, offset, steps: int = 8) -> Trajectory:
    """Uniformly sampled rigid translation of every point by ``offset``."""
    if steps < 1:
        raise ValueError("need steps >= 1")
    off = as_point(offset)
    samples = []
    for j in range(steps + 1):
        t = Fraction(j, steps)
        samples.append((t, config.translated((off[0] * t, off[1] * t))))
    return make_trajectory(
        samples,
        meta={
            "generator": "translation",
            "offset": [str(off[0]), str(off[1])],
            "steps": steps,
        },
    )


def gen_rotation(config: Config, center, turns, steps: int = 16) -> Trajectory:
    """Uniformly sampled rigid rotation about ``center`` by ``turns`` turns.

    ``turns`` may be any rational; whole turns close exactly.
    """
    if steps < 1:
        raise ValueError("need steps >= 1")
    ctr = as_point(center)
    total = as_fraction(turns)
    samples = []
    for j in range(steps + 1):
        a = total * Fraction(j, steps)
        c, s = cos_sin_turns(a)
        pts = []
        for x, y in config.points:
            dx = x - ctr[0]
            dy = y - ctr[1]
            pts.append((ctr[0] + c * dx - s * dy, ctr[1] + s * dx + c * dy))
        samples.append((Fraction(j, steps), validate_config(pts)))
    return make_trajectory(
        samples,
        meta={
            "generator": "rotation",
            "center": [str(ctr[0]), str(ctr[1])],
            "turns": str(total),
            "steps": steps,
        },
    )


def gen_rigid(kind: str, params: Mapping, config: Config, steps: int) -> Trajectory:
    """Dispatch to :func:`gen_translation` / :func:`gen_rotation`."""
    if kind == "translation":
        return gen_translation(config, params["offset"], steps)
    if kind == "rotation":
        return gen_rotation(config, params["center"], params["turns"], steps)
    raise ValueError(f"unknown rigid motion kind: {kind!r}")


def centroid(config: Config) -> Point:
    n = config.n
    sx = sum(x for x, _ in config.points)
    sy = sum(y for _, y in config.points)
    return (Fraction(sx, n), Fraction(sy, n))


def _directed_hausdorff_sq(a: Config, b: Config) -> Fraction:
    worst = Fraction(0)
    for p in a.points:
        best = min(_dist_sq(p, q) for q in b.points)
        if best > worst:
            worst = best
    return worst


def hausdorff_distance(a: Config, b: Config) -> float:
    """Symmetric Hausdorff distance between the two point sets."""
    return math.sqrt(hausdorff_distance_sq(a, b))


def hausdorff_distance_sq(a: Config, b: Config) -> Fraction:
    """Exact squared Hausdorff distance (useful for exact comparisons)."""
    return max(_directed_hausdorff_sq(a, b), _directed_hausdorff_sq(b, a))


# ---------------------------------------------------------------------------
# Serialization.  JSON is canonical: {"n", "labels", "samples", "meta"} with
# every rational as a "p/q" string.  CSV is a flat projection with columns
# t,label,x,y (meta is not representable there).


def _frac_str(v: Fraction) -> str:
    return str(v)


def trajectory_to_json_dict(traj: Trajectory) -> dict:
    return {
        "n": traj.n,
        "labels": list(traj.samples[0][1].labels),
        "samples": [
            {
                "t": _frac_str(t),
                "points": [[_frac_str(x), _frac_str(y)] for x, y in c.points],
            }
            for t, c in traj.samples
        ],
        "meta": dict(traj.meta),
    }


def trajectory_from_json_dict(data) -> Trajectory:
    if not isinstance(data, dict):
        raise SchemaError("trajectory JSON must be an object")
    for key in ("n", "labels", "samples"):
        if key not in data:
            raise SchemaError(f"missing key {key!r}")
    n = data["n"]
    if not isinstance(n, int) or n < 1:
        raise SchemaError("'n' must be a positive integer")
    if data["labels"] != list(range(1, n + 1)):
        raise SchemaError("'labels' must be [1..n] in order")
    if not isinstance(data["samples"], list) or not data["samples"]:
        raise SchemaError("'samples' must be a nonempty list")
    samples = []
    for entry in data["samples"]:
        if not isinstance(entry, dict) or "t" not in entry or "points" not in entry:
            raise SchemaError("each sample needs 't' and 'points'")
        pts = entry["points"]
        if not isinstance(pts, list) or len(pts) != n:
            raise InvariantViolation(
                f"sample at t={entry['t']} has {len(pts) if isinstance(pts, list) else '?'}"
                f" points, expected {n}"
            )
        try:
            config = validate_config(pts)
        except DuplicatePoint as exc:
            raise InvariantViolation(f"sample at t={entry['t']}: {exc}") from exc
        samples.append((as_fraction(entry["t"]), config))
    return make_trajectory(samples, meta=data.get("meta") or {})


def save_trajectory(traj: Trajectory, path, fmt: str | None = None) -> None:
    path = str(path)
    fmt = fmt or ("csv" if path.endswith(".csv") else "json")
    if fmt == "json":
        with open(path, "w") as fh:
            json.dump(trajectory_to_json_dict(traj), fh, indent=1, sort_keys=True)
            fh.write("\n")
    elif fmt == "csv":
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["t", "label", "x", "y"])
            for t, config in traj.samples:
                for label, (x, y) in zip(config.labels, config.points):
                    writer.writerow([_frac_str(t), label, _frac_str(x), _frac_str(y)])
    else:
        raise ValueError(f"unknown format {fmt!r}")


def load_trajectory(path, fmt: str | None = None) -> Trajectory:
    path = str(path)
    fmt = fmt or ("csv" if path.endswith(".csv") else "json")
    if fmt == "json":
        try:
            with open(path) as fh:
                data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ParseError(f"{path}: {exc}") from exc
        return trajectory_from_json_dict(data)
    if fmt == "csv":
        by_time: dict[Fraction, dict[int, Point]] = {}
        try:
            with open(path, newline="") as fh:
                reader = csv.reader(fh)
                header = next(reader, None)
                if header != ["t", "label", "x", "y"]:
                    raise SchemaError(f"{path}: expected header t,label,x,y")
                for row in reader:
                    if len(row) != 4:
                        raise SchemaError(f"{path}: malformed row {row!r}")
                    t = as_fraction(row[0])
                    by_time.setdefault(t, {})[int(row[1])] = as_point((row[2], row[3]))
        except (ValueError, ParseError) as exc:
            raise ParseError(f"{path}: {exc}") from exc
        samples = []
        counts = {len(pts) for pts in by_time.values()}
        if len(counts) != 1:
            raise InvariantViolation(f"{path}: point count changes between samples")
        n = counts.pop()
        for t in sorted(by_time):
            pts = by_time[t]
            if sorted(pts) != list(range(1, n + 1)):
                raise InvariantViolation(f"{path}: labels at t={t} are not 1..{n}")
            try:
                config = validate_config([pts[label] for label in range(1, n + 1)])
            except DuplicatePoint as exc:
                raise InvariantViolation(f"sample at t={t}: {exc}") from exc
            samples.append((t, config))
        return make_trajectory(samples)
    raise ValueError(f"unknown format {fmt!r}")
