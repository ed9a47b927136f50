"""Slow, independent reference implementations used as test oracles.

Everything here works in exact arithmetic (Python ints / Fractions) on
inputs that are exactly representable, so agreement can be asserted with
``==``.
"""

import itertools
import math
from fractions import Fraction


def half(n):
    return -(-n // 2)


def g_radius_scan(xs, v):
    """Smallest candidate radius r in {|x_i - v|} whose closed ball holds
    at least ceil(n/2) points, found by scanning every candidate."""
    xs = [Fraction(x) for x in xs]
    v = Fraction(v)
    k = half(len(xs))
    best = None
    for r in {abs(x - v) for x in xs}:
        if sum(abs(x - v) <= r for x in xs) >= k and (best is None or r < best):
            best = r
    return best


def slope_counts(xs, v):
    """(d_minus, d_plus, boundary mass) from the defining proportions."""
    xs = [Fraction(x) for x in xs]
    v = Fraction(v)
    n = len(xs)
    g = g_radius_scan(xs, v)
    lo, hi = v - g, v + g
    p = lambda pred: Fraction(sum(1 for x in xs if pred(x)), n)
    d_minus = p(lambda x: x > hi) - p(lambda x: x <= lo)
    d_plus = p(lambda x: x >= lo) - p(lambda x: x < hi)
    mass = p(lambda x: x == lo) + p(lambda x: x == hi)
    return d_minus, d_plus, mass


def g_sorted_distances(rows, v):
    d = sorted(math.dist(r, v) for r in rows)
    return d[half(len(rows)) - 1]


def _critical_directions(offsets):
    dirs = set()
    for a, b in offsets:
        if (a, b) != (0, 0):
            dirs.add((-b, a))
            dirs.add((b, -a))
    return list(dirs)


def tukey_bruteforce(points, v, n_angles=3600):
    """Closed-halfplane depth by direct counting over candidate normals.

    Candidates are ``n_angles`` equally spaced directions (as integer
    vectors) plus u + w for every pair of boundary normals u, w; the latter
    puts a probe strictly inside every open arc between consecutive critical
    normals, so the minimum is exact for integer inputs.  Counting uses
    exact integer dot products.
    """
    off = [(px - v[0], py - v[1]) for px, py in points]
    crit = _critical_directions(off)
    scale = 10 ** 6
    probes = [(round(scale * math.cos(2 * math.pi * i / n_angles)),
               round(scale * math.sin(2 * math.pi * i / n_angles)))
              for i in range(n_angles)]
    for u, w in itertools.combinations(crit, 2):
        s = (u[0] + w[0], u[1] + w[1])
        if s != (0, 0):
            probes.append(s)
    best = len(points)
    for ux, uy in probes:
        c = sum(1 for a, b in off if ux * a + uy * b >= 0)
        best = min(best, c)
    return Fraction(best, len(points))


def _orient(p, q, r):
    return (q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0])


def _on_segment(p, q, r):
    return (_orient(p, q, r) == 0
            and min(p[0], q[0]) <= r[0] <= max(p[0], q[0])
            and min(p[1], q[1]) <= r[1] <= max(p[1], q[1]))


def in_closed_triangle(a, b, c, v):
    """Orientation-test containment; degenerate triangles are segments."""
    o1, o2, o3 = _orient(a, b, v), _orient(b, c, v), _orient(c, a, v)
    if _orient(a, b, c) == 0:
        return _on_segment(a, b, v) or _on_segment(b, c, v) or _on_segment(a, c, v)
    return (o1 >= 0 and o2 >= 0 and o3 >= 0) or (o1 <= 0 and o2 <= 0 and o3 <= 0)


def simplicial_enumeration(points, v):
    pts = [tuple(Fraction(c) for c in p) for p in points]
    v = tuple(Fraction(c) for c in v)
    tri = list(itertools.combinations(pts, 3))
    inside = sum(1 for a, b, c in tri if in_closed_triangle(a, b, c, v))
    return Fraction(inside, len(tri))


def rotation(theta):
    c, s = math.cos(theta), math.sin(theta)
    return [[c, -s], [s, c]]


def rigid_motion(points, theta, shift):
    """Rotate then translate rows of an (n, 2) array with elementwise
    arithmetic, so equal input rows map to bit-identical output rows."""
    import numpy as np
    p = np.atleast_2d(np.asarray(points, dtype=float))
    c, s = math.cos(theta), math.sin(theta)
    return np.column_stack([c * p[:, 0] - s * p[:, 1] + shift[0],
                            s * p[:, 0] + c * p[:, 1] + shift[1]])
