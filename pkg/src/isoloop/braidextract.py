"""Braid words from sampled trajectories, by x-order exchange detection.

At every sample the points are sorted by x-coordinate (ties broken by y,
smaller first).  Between consecutive samples each point is assumed to move
along a straight segment; a pair whose x-order flips crosses at a unique
interpolation time, computed exactly in rational arithmetic.  Crossings are
emitted in time order as Artin generators on x-order slots:

    sign +1  when the point coming from the left slot passes *below* the
             point it overtakes (a counterclockwise exchange), so one full
             counterclockwise orbit of an adjacent pair reads sigma_i^2;
    sign -1  when it passes above.

Several pairs may cross at the same instant.  When the simultaneous pairs
tile contiguous slot blocks that each reverse completely with a coherent
sign (the generic degenerate case: a rigid rotation of collinear points
passing the vertical), each block is emitted as the staircase reduced word
of the block reversal -- any reduced word of a permutation lifts to the same
positive (or negative) braid, so the choice is canonical.  Anything less
structured raises AmbiguousStep.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .configspace import (
    Config,
    MarginReport,
    Trajectory,
    make_trajectory,
    validity_report,
)
from .errors import AmbiguousStep, ChartError, Collision, InvariantViolation


@dataclass(frozen=True)
class BraidWord:
    """A word in Artin generators: letter +i is sigma_i, -i its inverse."""

    n: int
    letters: tuple[int, ...]

    def __post_init__(self):
        for s in self.letters:
            if s == 0 or abs(s) > self.n - 1:
                raise ValueError(f"slot letter {s} out of range for n={self.n}")

    def __len__(self):
        return len(self.letters)

    def inverse(self) -> "BraidWord":
        return BraidWord(self.n, tuple(-s for s in reversed(self.letters)))

    def permutation(self) -> tuple[int, ...]:
        """Slot occupancy after the word: entry i = where slot i+1 ends up from."""
        perm = list(range(self.n))
        for s in self.letters:
            i = abs(s) - 1
            perm[i], perm[i + 1] = perm[i + 1], perm[i]
        return tuple(perm)

    def is_pure(self) -> bool:
        return self.permutation() == tuple(range(self.n))

    def format(self) -> str:
        return " ".join(str(s) for s in self.letters)

    @classmethod
    def parse(cls, n: int, text: str) -> "BraidWord":
        return cls(n, tuple(int(tok) for tok in text.split()))


@dataclass(frozen=True)
class CrossingEvent:
    """One adjacent exchange: at step ``step``, local time ``t_local`` in [0,1]."""

    step: int
    t_local: Fraction
    slot: int
    sign: int


@dataclass(frozen=True)
class Extraction:
    word: BraidWord
    margins: MarginReport
    events: tuple[CrossingEvent, ...]
    step_letter_counts: tuple[int, ...]


def _chart_order(config: Config) -> list[int]:
    """Point indices sorted by (x, y)."""
    pts = config.points
    return sorted(range(len(pts)), key=lambda i: (pts[i][0], pts[i][1]))


def _step_events(before: Config, after: Config, step: int) -> list[CrossingEvent]:
    pts_a = before.points
    pts_b = after.points
    order_a = _chart_order(before)
    order_b = _chart_order(after)
    if order_a == order_b:
        return []
    n = len(pts_a)
    pos_a = [0] * n
    for slot, idx in enumerate(order_a):
        pos_a[idx] = slot
    pos_b = [0] * n
    for slot, idx in enumerate(order_b):
        pos_b[idx] = slot

    # Inverted pairs and their exact crossing data under linear interpolation.
    groups: dict[Fraction, list[tuple[int, int, int]]] = {}
    for p in range(n):
        for q in range(p + 1, n):
            if (pos_a[p] < pos_a[q]) == (pos_b[p] < pos_b[q]):
                continue
            ga = pts_a[p][0] - pts_a[q][0]
            gb = pts_b[p][0] - pts_b[q][0]
            if ga == 0 and gb == 0:
                raise AmbiguousStep(
                    f"step {step}: points {p + 1},{q + 1} swap by y-tiebreak with"
                    " identical x-motion",
                    step=step,
                )
            if ga == 0:
                t = Fraction(0)
            elif gb == 0:
                t = Fraction(1)
            else:
                t = ga / (ga - gb)
            yp = pts_a[p][1] + t * (pts_b[p][1] - pts_a[p][1])
            yq = pts_a[q][1] + t * (pts_b[q][1] - pts_a[q][1])
            if yp == yq:
                raise Collision(
                    f"step {step}: points {p + 1},{q + 1} collide under"
                    " in-step interpolation; resample the motion more finely",
                    step=step,
                )
            left, y_left, y_right = (p, yp, yq) if pos_a[p] < pos_a[q] else (q, yq, yp)
            sign = 1 if y_left < y_right else -1
            groups.setdefault(t, []).append((p, q, sign))

    events: list[CrossingEvent] = []
    order = list(order_a)
    for t in sorted(groups):
        pairs = groups[t]
        pos = {idx: slot for slot, idx in enumerate(order)}
        # Union the simultaneous pairs into concurrency classes.
        parent: dict[int, int] = {}

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        for p, q, _ in pairs:
            parent.setdefault(p, p)
            parent.setdefault(q, q)
            ra, rb = find(p), find(q)
            if ra != rb:
                parent[ra] = rb
        classes: dict[int, list[int]] = {}
        for member in parent:
            classes.setdefault(find(member), []).append(member)
        pair_info = {(min(p, q), max(p, q)): sign for p, q, sign in pairs}

        blocks = sorted(classes.values(), key=lambda ms: min(pos[m] for m in ms))
        for members in blocks:
            slots = sorted(pos[m] for m in members)
            m = len(members)
            if slots != list(range(slots[0], slots[0] + m)):
                raise AmbiguousStep(
                    f"step {step}: simultaneous crossings at t={t} do not fill"
                    " a contiguous slot block",
                    step=step,
                )
            expected_pairs = m * (m - 1) // 2
            got = [
                pair_info.get((min(a, b), max(a, b)))
                for i, a in enumerate(members)
                for b in members[i + 1 :]
            ]
            if len([s for s in got if s is not None]) != expected_pairs:
                raise AmbiguousStep(
                    f"step {step}: a slot block at t={t} does not fully reverse",
                    step=step,
                )
            signs = set(got)
            if len(signs) != 1:
                raise AmbiguousStep(
                    f"step {step}: simultaneous block at t={t} has mixed"
                    " crossing signs",
                    step=step,
                )
            sign = signs.pop()
            base = slots[0]
            # Staircase reduced word of the block reversal; see module docstring.
            for run in range(m - 1, 0, -1):
                for j in range(run):
                    slot = base + j
                    order[slot], order[slot + 1] = order[slot + 1], order[slot]
                    events.append(CrossingEvent(step, t, slot + 1, sign))

    if order != order_b:
        raise AmbiguousStep(
            f"step {step}: x-order change is not resolved by the detected"
            " crossings",
            step=step,
        )
    return events


def extract_detailed(traj: Trajectory) -> Extraction:
    """Full extraction: braid word, margins, events, per-step letter counts."""
    if not traj.initial().has_distinct_x():
        raise ChartError("the initial configuration must have distinct x-coordinates")
    events: list[CrossingEvent] = []
    counts = []
    for k in range(traj.steps):
        step_events = _step_events(traj.samples[k][1], traj.samples[k + 1][1], k)
        events.extend(step_events)
        counts.append(len(step_events))
    word = BraidWord(traj.n, tuple(e.sign * e.slot for e in events))
    return Extraction(word, validity_report(traj), tuple(events), tuple(counts))


def extract_word(traj: Trajectory) -> tuple[BraidWord, MarginReport]:
    """Braid word of a trajectory plus its sampling-margin report."""
    detail = extract_detailed(traj)
    return detail.word, detail.margins


def subdivide(traj: Trajectory, factor: int) -> Trajectory:
    """Insert factor-1 linearly interpolated samples into every step."""
    if factor < 2:
        raise ValueError("need factor >= 2")
    samples: list[tuple[Fraction, Config]] = []
    for k in range(traj.steps):
        t0, c0 = traj.samples[k]
        t1, c1 = traj.samples[k + 1]
        samples.append((t0, c0))
        for j in range(1, factor):
            lam = Fraction(j, factor)
            pts = tuple(
                (ax + lam * (bx - ax), ay + lam * (by - ay))
                for (ax, ay), (bx, by) in zip(c0.points, c1.points)
            )
            if len(set(pts)) != len(pts):
                raise Collision(
                    f"interpolation inside step {k} makes points coincide", step=k
                )
            samples.append((t0 + lam * (t1 - t0), Config(pts)))
    samples.append(traj.samples[-1])
    meta = dict(traj.meta)
    meta["subdivided"] = meta.get("subdivided", 1) * factor
    try:
        return make_trajectory(samples, meta=meta)
    except InvariantViolation as exc:  # pragma: no cover - defensive
        raise Collision(str(exc)) from exc
