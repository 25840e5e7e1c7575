"""Zero-level contour extraction from a 2-D scalar field (marching squares)."""

from __future__ import annotations

import numpy as np


def _interp(p0, p1, v0, v1):
    """Point where the field crosses zero on the edge p0-p1."""
    t = v0 / (v0 - v1)
    return (p0[0] + t * (p1[0] - p0[0]), p0[1] + t * (p1[1] - p0[1]))


def _key(p):
    """Merge endpoints that differ only by rounding noise."""
    return (round(p[0], 12), round(p[1], 12))


def _cell_segments(xs, ys, values, i, j):
    """Zero-crossing segments of one grid cell, corner order is
    (i,j), (i+1,j), (i+1,j+1), (i,j+1) in (row=x-axis, col=y-axis) indexing."""
    corners = ((xs[i], ys[j]), (xs[i + 1], ys[j]),
               (xs[i + 1], ys[j + 1]), (xs[i], ys[j + 1]))
    vals = (values[i, j], values[i + 1, j], values[i + 1, j + 1], values[i, j + 1])
    # Exact zeros count as positive so every node has a deterministic side.
    inside = [v > 0.0 or v == 0.0 for v in vals]
    crossings = []
    for e in range(4):
        e2 = (e + 1) % 4
        if inside[e] != inside[e2]:
            crossings.append((e, _interp(corners[e], corners[e2], vals[e], vals[e2])))
    if len(crossings) == 2:
        segments = [(crossings[0][1], crossings[1][1])]
    elif len(crossings) == 4:
        # Saddle cell: split by the sign of the center average.
        center_in = (vals[0] + vals[1] + vals[2] + vals[3]) / 4.0 >= 0.0
        # Pair crossings so each segment separates the corner matching the
        # center from its neighbours.
        if center_in == inside[0]:
            segments = [(crossings[0][1], crossings[1][1]),
                        (crossings[2][1], crossings[3][1])]
        else:
            segments = [(crossings[3][1], crossings[0][1]),
                        (crossings[1][1], crossings[2][1])]
    else:
        segments = []
    # A contour through a grid node yields zero-length pieces; drop them.
    return [(p, q) for p, q in segments if _key(p) != _key(q)]


def _chain(segments):
    """Join segments sharing endpoints into polylines, deterministically."""
    adjacency = {}
    for si, (p, q) in enumerate(segments):
        adjacency.setdefault(_key(p), []).append((si, 0))
        adjacency.setdefault(_key(q), []).append((si, 1))

    used = [False] * len(segments)
    polylines = []
    for start in range(len(segments)):
        if used[start]:
            continue
        used[start] = True
        p, q = segments[start]
        line = [p, q]
        # Extend forward from q, then backward from p.
        for endpoint, append in ((q, True), (p, False)):
            current = endpoint
            while True:
                options = [(si, side) for si, side in adjacency.get(_key(current), [])
                           if not used[si]]
                if not options:
                    break
                si, side = options[0]
                used[si] = True
                nxt = segments[si][1 - side]
                if append:
                    line.append(nxt)
                else:
                    line.insert(0, nxt)
                current = nxt
        polylines.append(np.asarray(line))
    return polylines


def zero_contours(xs: np.ndarray, ys: np.ndarray, values: np.ndarray) -> list:
    """Polylines where a field sampled at xs x ys crosses zero.

    ``values[i, j]`` is the field at ``(xs[i], ys[j])``.  Crossing points are
    linearly interpolated along cell edges, so a field linear in each cell is
    located exactly.  Returns a list of (k, 2) float arrays.
    """
    values = np.asarray(values, dtype=np.float64)
    if values.shape != (len(xs), len(ys)):
        raise ValueError(f"field shape {values.shape} does not match axes "
                         f"({len(xs)}, {len(ys)})")
    segments = []
    for i in range(len(xs) - 1):
        for j in range(len(ys) - 1):
            segments.extend(_cell_segments(xs, ys, values, i, j))
    return _chain(segments)
