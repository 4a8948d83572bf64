"""Free homotopy classes of loops in the plane punctured at n points.

Conventions, fixed once and used everywhere:

* Punctures are indexed 1..n by increasing x-coordinate ("slots").
* Generator x_j is a counterclockwise loop around the j-th puncture.  Words
  are sequences of nonzero signed integers (+j for x_j, -j for its inverse).
* A free homotopy class is a conjugacy class of the rank-n free group.  It is
  stored cyclically reduced, rotated to the lexicographically least rotation
  under the letter order x_1 < x_1^-1 < x_2 < x_2^-1 < ...; two words name the
  same class iff they are conjugate iff their canonical forms are equal.
* The braid generator for slot i (counterclockwise exchange of punctures
  i, i+1, the left one passing below) acts by

      x_i -> x_i x_{i+1} x_i^-1,    x_{i+1} -> x_i,

  and its inverse by x_i -> x_{i+1}, x_{i+1} -> x_{i+1}^-1 x_i x_{i+1}.

Certificates bound from below the diameter of every representative of a
class: with a vertical downward cut ray at each puncture, a cyclically
reduced word has no bigons with the cut system, so a generator surviving
reduction marks a ray the loop must cross; the loop therefore meets the
vertical line of every crossed puncture and its image spans their x-extent.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction

from . import kernels
from .errors import ChartError, NotCoarsenable

DEFAULT_WORD_CAP = 1_000_000


def word_cap(cap=None):
    """Resolve the representative length cap (arg > env ISOLOOP_WORD_CAP > default)."""
    if cap is not None:
        return int(cap)
    env = os.environ.get("ISOLOOP_WORD_CAP")
    if env:
        return int(env)
    return DEFAULT_WORD_CAP


@dataclass(frozen=True)
class LoopClass:
    """A conjugacy class in the rank-n free group, canonically represented."""

    n: int
    word: tuple[int, ...]

    def __post_init__(self):
        for letter in self.word:
            if letter == 0 or abs(letter) > self.n:
                raise ValueError(f"letter {letter} out of range for n={self.n}")

    @property
    def is_trivial(self):
        return not self.word

    def winding(self):
        """Exponent sum of each generator, as a length-n tuple."""
        counts = [0] * self.n
        for letter in self.word:
            counts[abs(letter) - 1] += 1 if letter > 0 else -1
        return tuple(counts)

    def crossed(self):
        """Indices (1-based) of generators occurring in the reduced word."""
        return frozenset(abs(letter) for letter in self.word)

    def format(self):
        return " ".join(str(letter) for letter in self.word)

    def __str__(self):
        return f"[{self.format() or 'e'}] (n={self.n})"


def canonical_class(n, letters):
    """Reduce a raw word to its canonical conjugacy-class representative."""
    letters = list(letters)
    for letter in letters:
        if letter == 0 or abs(letter) > n:
            raise ValueError(f"letter {letter} out of range for n={n}")
    return LoopClass(n, tuple(kernels.cyclic_canonical(letters)))


def parse_class(n, text):
    """Parse a whitespace-separated signed-integer word, e.g. "1 2 -1"."""
    return canonical_class(n, [int(tok) for tok in text.split()])


def round_loop(j, k, n):
    """Class of x_j x_{j+1} ... x_k: a ccw round curve enclosing punctures j..k."""
    if not (1 <= j <= k <= n):
        raise ValueError(f"need 1 <= j <= k <= n, got j={j} k={k} n={n}")
    return canonical_class(n, list(range(j, k + 1)))


def apply_to_letters(letters, braid_letters, n, cap=None):
    """Based (non-conjugacy) braid action on a raw word; returns a reduced tuple.

    This is the underlying free-group automorphism; ``apply_word`` is the
    quotient action on conjugacy classes.
    """
    for s in braid_letters:
        if s == 0 or abs(s) >= n:
            raise ValueError(f"slot {s} out of range for n={n}")
    return tuple(kernels.apply_braid(list(letters), list(braid_letters), word_cap(cap)))


def apply_generator(c, slot, sign, cap=None):
    """Act on a class by one braid generator (sign +1 ccw, -1 cw)."""
    if not (1 <= slot <= c.n - 1):
        raise ValueError(f"slot {slot} out of range for n={c.n}")
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    image = kernels.apply_braid(list(c.word), [sign * slot], word_cap(cap))
    return LoopClass(c.n, tuple(kernels.cyclic_canonical(image)))


def apply_word(c, braid, cap=None):
    """Act on a class by a braid word, first letter first."""
    if braid.n != c.n:
        raise ValueError(f"braid on {braid.n} strands cannot act on n={c.n}")
    image = kernels.apply_braid(list(c.word), list(braid.letters), word_cap(cap))
    return LoopClass(c.n, tuple(kernels.cyclic_canonical(image)))


@dataclass(frozen=True)
class Certificate:
    """Certified lower bound for the diameter of every representative.

    ``winding`` and ``crossed`` are homotopy invariants of the class;
    ``diam_lb`` is the x-extent of the crossed punctures in the chart whose
    sorted x-coordinates are ``xs``.
    """

    winding: tuple[int, ...]
    crossed: frozenset[int]
    diam_lb: Fraction
    xs: tuple[Fraction, ...]

    def to_json_dict(self):
        return {
            "winding": list(self.winding),
            "crossed": sorted(self.crossed),
            "diam_lb": str(float(self.diam_lb)),
            "diam_lb_exact": str(self.diam_lb),
        }


def certify(c, config):
    """Certificate of ``c`` over ``config`` (punctures taken in x-order)."""
    if config.n != c.n:
        raise ChartError(f"class has n={c.n} but config has {config.n} points")
    xs = sorted(x for x, _ in config.points)
    if len(set(xs)) != len(xs):
        raise ChartError("x-coordinates are not pairwise distinct")
    crossed = c.crossed()
    if len(crossed) <= 1:
        diam = Fraction(0)
    else:
        touched = [xs[j - 1] for j in crossed]
        diam = max(touched) - min(touched)
    return Certificate(
        winding=c.winding(), crossed=crossed, diam_lb=diam, xs=tuple(xs)
    )


@dataclass(frozen=True)
class Clustering:
    """Partition of slots 1..n into consecutive blocks (x-order intervals).

    ``gaps`` (optional) are the x-distances between the hulls of adjacent
    blocks in some chart; they must be positive when present.
    """

    blocks: tuple[tuple[int, int], ...]
    gaps: tuple[Fraction, ...] | None = None

    def __post_init__(self):
        expect = 1
        for lo, hi in self.blocks:
            if lo != expect or hi < lo:
                raise ValueError(f"blocks must tile 1..n consecutively; got {self.blocks}")
            expect = hi + 1
        if self.gaps is not None:
            if len(self.gaps) != len(self.blocks) - 1:
                raise ValueError("need one gap per adjacent block pair")
            if any(g <= 0 for g in self.gaps):
                raise ValueError("block gaps must be positive")

    @property
    def n(self):
        return self.blocks[-1][1]

    @property
    def k(self):
        return len(self.blocks)

    @classmethod
    def from_config(cls, config, boundaries):
        """Blocks split after each slot in ``boundaries``; gaps from the chart."""
        xs = sorted(x for x, _ in config.points)
        cuts = sorted(boundaries)
        blocks = []
        lo = 1
        for b in cuts:
            blocks.append((lo, b))
            lo = b + 1
        blocks.append((lo, config.n))
        gaps = tuple(xs[hi] - xs[hi - 1] for (_, hi) in blocks[:-1])
        return cls(tuple(blocks), gaps)


def coarsen(c, clustering):
    """Collapse each block of punctures to a single one, if the class allows.

    The block generators z_B = x_j ... x_k freely generate a subgroup H; a
    class survives the collapse iff some conjugate lies in H (geometrically:
    some representative avoids disks filled around each cluster).  Membership
    is decided on the folded graph of H, a wedge of cycles spelling the z_B:
    a cyclically reduced word lies in a conjugate of H iff it traces a closed
    path in that graph from some start vertex, and the trace decomposes into
    whole-cycle excursions that spell the coarse word.

    Raises NotCoarsenable otherwise (e.g. the class separates punctures
    inside one block).
    """
    if clustering.n != c.n:
        raise ValueError(f"clustering covers 1..{clustering.n} but class has n={c.n}")
    if c.is_trivial:
        return LoopClass(clustering.k, ())

    # Folded graph of H: a wedge of cycles, one per block, glued at vertex 0;
    # the cycle for block (lo, hi) spells x_lo ... x_hi.  Each (vertex, letter)
    # has at most one outgoing and one incoming edge, so traces are unique.
    out_edge = {}  # (vertex, positive letter) -> target vertex
    in_edge = {}  # (vertex, positive letter) -> source vertex
    first_of_block = {}  # lo -> block index
    last_of_block = {}  # hi -> block index
    next_vertex = 1
    for b, (lo, hi) in enumerate(clustering.blocks):
        first_of_block[lo] = b
        last_of_block[hi] = b
        prev = 0
        for letter in range(lo, hi + 1):
            if letter == hi:
                tgt = 0
            else:
                tgt = next_vertex
                next_vertex += 1
            out_edge[(prev, letter)] = tgt
            in_edge[(tgt, letter)] = prev
            prev = tgt

    word = c.word

    def trace(start):
        path = [start]
        v = start
        for letter in word:
            if letter > 0:
                v = out_edge.get((v, letter))
            else:
                v = in_edge.get((v, -letter))
            if v is None:
                return None
            path.append(v)
        return path if v == start else None

    for start in range(next_vertex):
        path = trace(start)
        if path is None:
            continue
        # A cyclically reduced trace never backtracks, so it runs around whole
        # cycles and must pass the wedge point; rebase the cyclic word there
        # and read one coarse letter per wedge-to-wedge excursion.
        pivot = path.index(0)
        word_rot = word[pivot:] + word[:pivot]
        coarse = []
        idx = 0
        while idx < len(word_rot):
            letter = word_rot[idx]
            if letter > 0:
                b = first_of_block[letter]
                coarse.append(b + 1)
            else:
                b = last_of_block[-letter]
                coarse.append(-(b + 1))
            lo, hi = clustering.blocks[b]
            idx += hi - lo + 1
        return canonical_class(clustering.k, coarse)
    raise NotCoarsenable(
        f"class {c.format() or 'e'} has no representative avoiding the cluster disks"
    )
