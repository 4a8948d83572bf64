"""Fallback implementations of the hot kernels.

Same contracts as the compiled ``_speedups`` module; selected by
``isoloop.kernels`` when the extension is unavailable (or when
``ISOLOOP_PURE_PYTHON`` is set).

Word kernels operate on sequences of nonzero signed integers: letter ``+j``
is the j-th free generator, ``-j`` its inverse.  Geometry kernels operate on
float64 NumPy arrays; a polyline is a closed (V, 2) vertex array with the
closing edge implied.
"""

from __future__ import annotations

import numpy as np

from .errors import WordOverflow


def free_reduce(word):
    """Freely reduce a word (cancel adjacent inverse pairs). Returns a list."""
    out = []
    for letter in word:
        if out and out[-1] == -letter:
            out.pop()
        else:
            out.append(letter)
    return out


def _letter_key(letter):
    # Total order x_1 < x_1^-1 < x_2 < x_2^-1 < ...
    return (abs(letter) - 1) * 2 + (1 if letter < 0 else 0)


def _least_rotation_index(keys):
    """Booth's algorithm: index of the lexicographically least rotation."""
    n = len(keys)
    doubled = keys + keys
    f = [-1] * (2 * n)
    k = 0
    for j in range(1, 2 * n):
        sj = doubled[j]
        i = f[j - k - 1]
        while i != -1 and sj != doubled[k + i + 1]:
            if sj < doubled[k + i + 1]:
                k = j - i - 1
            i = f[i]
        if sj != doubled[k + i + 1]:
            if sj < doubled[k]:
                k = j
            f[j - k] = -1
        else:
            f[j - k] = i + 1
    return k


def cyclic_canonical(word):
    """Cyclically reduce, then rotate to the least rotation. Returns a list."""
    w = free_reduce(word)
    while len(w) >= 2 and w[0] == -w[-1]:
        w = w[1:-1]
    if not w:
        return []
    i = _least_rotation_index([_letter_key(letter) for letter in w])
    return w[i:] + w[:i]


def apply_braid(word, braid, cap):
    """Fold braid generators (signed slots) over a word, left to right.

    Slot letter ``+i`` substitutes x_i -> x_i x_{i+1} x_i^-1, x_{i+1} -> x_i;
    ``-i`` substitutes the inverse automorphism.  The running representative
    is kept freely reduced; raises WordOverflow when it exceeds ``cap``.
    Returns a list.
    """
    cur = list(word)
    for s in braid:
        i = abs(s)
        lo, hi = i, i + 1
        if s > 0:
            images = {lo: (lo, hi, -lo), -lo: (lo, -hi, -lo), hi: (lo,), -hi: (-lo,)}
        else:
            images = {lo: (hi,), -lo: (-hi,), hi: (-hi, lo, hi), -hi: (-hi, -lo, hi)}
        out = []
        for letter in cur:
            for m in images.get(letter, (letter,)):
                if out and out[-1] == -m:
                    out.pop()
                else:
                    out.append(m)
        if len(out) > cap:
            raise WordOverflow(
                f"representative grew to {len(out)} letters (cap {cap})"
            )
        cur = out
    return cur


def bump_displace(verts, centers, disps, radius):
    """Move vertices by radially tapered copies of the puncture displacements.

    A vertex at distance r < radius from puncture p moves by
    (1 - r/radius) * disp[p].  Supports are assumed disjoint (radius is half
    the minimum puncture separation); each vertex is claimed by the first
    containing support, in puncture order.  Modifies ``verts`` in place.
    """
    if len(verts) == 0:
        return
    free = np.ones(len(verts), dtype=bool)
    for c, d in zip(centers, disps):
        delta = verts - c
        r = np.hypot(delta[:, 0], delta[:, 1])
        mask = free & (r < radius)
        if mask.any():
            free &= ~mask
            factor = 1.0 - r[mask] / radius
            verts[mask] += factor[:, None] * d


def resample_closed(verts, max_spacing):
    """Split every edge of a closed polyline into pieces <= max_spacing.

    Original vertices are preserved exactly; returns a new (V', 2) array.
    """
    nxt = np.roll(verts, -1, axis=0)
    seg = nxt - verts
    lens = np.hypot(seg[:, 0], seg[:, 1])
    counts = np.maximum(1, np.ceil(lens / max_spacing).astype(np.int64))
    total = int(counts.sum())
    reps = np.repeat(np.arange(len(verts)), counts)
    starts = np.concatenate(([0], np.cumsum(counts)[:-1]))
    frac = (np.arange(total) - starts[reps]) / counts[reps]
    return verts[reps] + seg[reps] * frac[:, None]


def ray_word(verts, ray_x, ray_y):
    """Read ray-crossing letters of a closed polyline.

    Ray j is the vertical downward ray from (ray_x[j], ray_y[j]).  A segment
    crossing it left-to-right emits +(j+1), right-to-left -(j+1).  Returns
    (letters, degenerate); ``degenerate`` is True when a vertex lies on a
    ray's vertical line or a crossing passes too close to the ray endpoint,
    in which case ``letters`` is None and the caller should retry with
    nudged ray abscissae.
    """
    ax = verts[:, 0]
    ay = verts[:, 1]
    bx = np.roll(ax, -1)
    by = np.roll(ay, -1)
    events = []
    for j in range(len(ray_x)):
        X = ray_x[j]
        Y = ray_y[j]
        da = ax - X
        db = bx - X
        if np.any(da == 0.0):
            return None, True
        crossing = (da * db) < 0.0
        idx = np.nonzero(crossing)[0]
        if idx.size == 0:
            continue
        t = da[idx] / (da[idx] - db[idx])
        y = ay[idx] + t * (by[idx] - ay[idx])
        if np.any(np.abs(y - Y) < 1e-12):
            return None, True
        below = y < Y
        sign = np.where(db[idx] > da[idx], 1, -1)
        for e, tt, keep, sg in zip(idx, t, below, sign):
            if keep:
                events.append((int(e), float(tt), int(sg) * (j + 1)))
    events.sort()
    return [letter for _, _, letter in events], False
