# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels; contracts mirror ``isoloop._purepy`` exactly."""

from libc.math cimport ceil, sqrt, fabs
from libc.stdlib cimport free, malloc

import numpy as np

from .errors import WordOverflow


def free_reduce(long long[:] word):
    """Freely reduce a word; returns an int64 array."""
    cdef Py_ssize_t m = word.shape[0]
    cdef long long[::1] out = np.empty(m, dtype=np.int64)
    cdef Py_ssize_t top = 0
    cdef Py_ssize_t i
    cdef long long letter
    for i in range(m):
        letter = word[i]
        if top > 0 and out[top - 1] == -letter:
            top -= 1
        else:
            out[top] = letter
            top += 1
    return np.asarray(out[:top]).copy()


cdef Py_ssize_t _least_rotation(long long* keys, Py_ssize_t n) nogil:
    # Booth's algorithm on the doubled key sequence.
    cdef Py_ssize_t* f = <Py_ssize_t*> malloc(2 * n * sizeof(Py_ssize_t))
    cdef Py_ssize_t k = 0
    cdef Py_ssize_t j, i
    cdef long long sj
    for j in range(2 * n):
        f[j] = -1
    for j in range(1, 2 * n):
        sj = keys[j % n]
        i = f[j - k - 1]
        while i != -1 and sj != keys[(k + i + 1) % n]:
            if sj < keys[(k + i + 1) % n]:
                k = j - i - 1
            i = f[i]
        if sj != keys[(k + i + 1) % n]:
            if sj < keys[k % n]:
                k = j
            f[j - k] = -1
        else:
            f[j - k] = i + 1
    free(f)
    return k


def cyclic_canonical(long long[:] word):
    """Cyclically reduce then rotate to the least rotation; int64 array."""
    reduced = free_reduce(word)
    cdef long long[:] w = reduced
    cdef Py_ssize_t lo = 0
    cdef Py_ssize_t hi = w.shape[0]
    while hi - lo >= 2 and w[lo] == -w[hi - 1]:
        lo += 1
        hi -= 1
    cdef Py_ssize_t n = hi - lo
    if n == 0:
        return np.empty(0, dtype=np.int64)
    cdef long long* keys = <long long*> malloc(n * sizeof(long long))
    cdef Py_ssize_t i
    cdef long long letter
    for i in range(n):
        letter = w[lo + i]
        if letter > 0:
            keys[i] = (letter - 1) * 2
        else:
            keys[i] = (-letter - 1) * 2 + 1
    cdef Py_ssize_t start = _least_rotation(keys, n)
    free(keys)
    cdef long long[::1] out = np.empty(n, dtype=np.int64)
    for i in range(n):
        out[i] = w[lo + (start + i) % n]
    return np.asarray(out)


def apply_braid(long long[:] word, long long[:] braid, long long cap):
    """Fold braid generators over a word with on-line free reduction."""
    cdef Py_ssize_t cur_len = word.shape[0]
    cdef Py_ssize_t cap_now = cur_len + 16
    cdef long long* cur = <long long*> malloc(cap_now * sizeof(long long))
    cdef long long* nxt
    cdef Py_ssize_t i, b, top, nxt_cap
    cdef long long s, lo, hi, letter
    cdef long long img[3]
    cdef int img_len, t
    cdef long long[::1] out_view
    for i in range(cur_len):
        cur[i] = word[i]
    try:
        for b in range(braid.shape[0]):
            s = braid[b]
            lo = s if s > 0 else -s
            hi = lo + 1
            # Worst case each letter maps to three.
            nxt_cap = 3 * cur_len + 16
            nxt = <long long*> malloc(nxt_cap * sizeof(long long))
            top = 0
            for i in range(cur_len):
                letter = cur[i]
                if s > 0:
                    if letter == lo:
                        img[0] = lo; img[1] = hi; img[2] = -lo; img_len = 3
                    elif letter == -lo:
                        img[0] = lo; img[1] = -hi; img[2] = -lo; img_len = 3
                    elif letter == hi:
                        img[0] = lo; img_len = 1
                    elif letter == -hi:
                        img[0] = -lo; img_len = 1
                    else:
                        img[0] = letter; img_len = 1
                else:
                    if letter == lo:
                        img[0] = hi; img_len = 1
                    elif letter == -lo:
                        img[0] = -hi; img_len = 1
                    elif letter == hi:
                        img[0] = -hi; img[1] = lo; img[2] = hi; img_len = 3
                    elif letter == -hi:
                        img[0] = -hi; img[1] = -lo; img[2] = hi; img_len = 3
                    else:
                        img[0] = letter; img_len = 1
                for t in range(img_len):
                    if top > 0 and nxt[top - 1] == -img[t]:
                        top -= 1
                    else:
                        nxt[top] = img[t]
                        top += 1
            free(cur)
            cur = nxt
            cur_len = top
            if cur_len > cap:
                raise WordOverflow(
                    f"representative grew to {cur_len} letters (cap {cap})"
                )
        out = np.empty(cur_len, dtype=np.int64)
        out_view = out
        for i in range(cur_len):
            out_view[i] = cur[i]
        return out
    finally:
        free(cur)


def bump_displace(double[:, ::1] verts, double[:, ::1] centers,
                  double[:, ::1] disps, double radius):
    """Tapered per-puncture displacement of vertices, in place."""
    cdef Py_ssize_t nv = verts.shape[0]
    cdef Py_ssize_t np_ = centers.shape[0]
    cdef Py_ssize_t i, p
    cdef double dx, dy, r, factor
    with nogil:
        for i in range(nv):
            for p in range(np_):
                dx = verts[i, 0] - centers[p, 0]
                dy = verts[i, 1] - centers[p, 1]
                r = sqrt(dx * dx + dy * dy)
                if r < radius:
                    factor = 1.0 - r / radius
                    verts[i, 0] += factor * disps[p, 0]
                    verts[i, 1] += factor * disps[p, 1]
                    break  # bump supports are disjoint; first hit claims
    return None


def resample_closed(double[:, ::1] verts, double max_spacing):
    """Split every edge into pieces <= max_spacing; original points kept."""
    cdef Py_ssize_t nv = verts.shape[0]
    cdef Py_ssize_t i, c, j, total
    cdef double ax, ay, bx, by, seg_len
    total = 0
    for i in range(nv):
        ax = verts[i, 0]; ay = verts[i, 1]
        bx = verts[(i + 1) % nv, 0]; by = verts[(i + 1) % nv, 1]
        seg_len = sqrt((bx - ax) * (bx - ax) + (by - ay) * (by - ay))
        c = <Py_ssize_t> ceil(seg_len / max_spacing)
        if c < 1:
            c = 1
        total += c
    out = np.empty((total, 2), dtype=np.float64)
    cdef double[:, ::1] o = out
    cdef Py_ssize_t pos = 0
    cdef double frac
    for i in range(nv):
        ax = verts[i, 0]; ay = verts[i, 1]
        bx = verts[(i + 1) % nv, 0]; by = verts[(i + 1) % nv, 1]
        seg_len = sqrt((bx - ax) * (bx - ax) + (by - ay) * (by - ay))
        c = <Py_ssize_t> ceil(seg_len / max_spacing)
        if c < 1:
            c = 1
        for j in range(c):
            frac = (<double> j) / (<double> c)
            o[pos, 0] = ax + (bx - ax) * frac
            o[pos, 1] = ay + (by - ay) * frac
            pos += 1
    return out


def ray_word(double[:, ::1] verts, double[::1] ray_x, double[::1] ray_y):
    """Signed downward-ray crossings; (letters or None, degenerate flag)."""
    cdef Py_ssize_t nv = verts.shape[0]
    cdef Py_ssize_t nr = ray_x.shape[0]
    cdef Py_ssize_t i, j
    cdef double X, Y, da, db, t, y
    events = []
    for j in range(nr):
        X = ray_x[j]
        Y = ray_y[j]
        for i in range(nv):
            if verts[i, 0] == X:
                return None, True
        for i in range(nv):
            da = verts[i, 0] - X
            db = verts[(i + 1) % nv, 0] - X
            if da * db < 0.0:
                t = da / (da - db)
                y = verts[i, 1] + t * (verts[(i + 1) % nv, 1] - verts[i, 1])
                if fabs(y - Y) < 1e-12:
                    return None, True
                if y < Y:
                    if db > da:
                        events.append((i, t, j + 1))
                    else:
                        events.append((i, t, -(j + 1)))
    events.sort()
    return [e[2] for e in events], False
