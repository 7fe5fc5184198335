"""Affine geometry over F_q: collinearity, Segre segment classes, arcs, caps.

Points of AG(2,q) are (x, y) tuples of canonical codes with dense index
x*q + y; points of AG(N,q) are N-tuples with dense index sum(c_i * q^i).
"""

from __future__ import annotations

import enum

from .errors import DuplicatePoints, MixedDimensions, NotCollinear

# switch to vectorized slope bucketing above this size (prime fields only)
_NUMPY_ARC_THRESHOLD = 600


class SegmentPosition(enum.Enum):
    EXTERNAL = "External"
    INTERNAL = "Internal"


def point2_index(F, P) -> int:
    return P[0] * F.q + P[1]

def point2_from_index(F, idx: int):
    return (idx // F.q, idx % F.q)

def pointN_index(F, P) -> int:
    idx = 0
    for c in reversed(P):
        idx = idx * F.q + c
    return idx

def pointN_from_index(F, idx: int, N: int):
    out = []
    for _ in range(N):
        idx, c = divmod(idx, F.q)
        out.append(c)
    return tuple(out)


def collinear3(F, P1, P2, P3) -> bool:
    """Whether three pairwise distinct points of AG(2,q) lie on one line."""
    if P1 == P2 or P1 == P3 or P2 == P3:
        raise DuplicatePoints("collinear3 needs pairwise distinct points")
    if F.h == 1:
        p = F.q
        (x1, y1), (x2, y2), (x3, y3) = P1, P2, P3
        return ((x2 - x1) * (y3 - y1) - (y2 - y1) * (x3 - x1)) % p == 0
    dx1, dy1 = F.sub(P2[0], P1[0]), F.sub(P2[1], P1[1])
    dx2, dy2 = F.sub(P3[0], P1[0]), F.sub(P3[1], P1[1])
    return F.sub(F.mul(dx1, dy2), F.mul(dy1, dx2)) == 0


def segment_position(F, P, P1, P2) -> SegmentPosition:
    """Segre's classification of P relative to the segment P1P2.

    The affine frame of the common line is the X coordinate when P1 and P2
    have distinct abscissas, the Y coordinate otherwise; by frame invariance
    the result does not depend on that choice.
    """
    if P == P1 or P == P2 or P1 == P2:
        raise DuplicatePoints("segment_position needs pairwise distinct points")
    if not collinear3(F, P, P1, P2):
        raise NotCollinear(f"{P} is not on the line {P1},{P2}")
    if P1[0] != P2[0]:
        prod = F.mul(F.sub(P[0], P1[0]), F.sub(P[0], P2[0]))
    else:
        prod = F.mul(F.sub(P[1], P1[1]), F.sub(P[1], P2[1]))
    return SegmentPosition.EXTERNAL if F.chi(prod) == 1 else SegmentPosition.INTERNAL


def line_third_points(F, P1, P2):
    """The q-2 points of the line through P1, P2 other than P1, P2.

    Yields P1 + s*(P2-P1) for the parameter s running over field codes in
    canonical order, skipping s = 0 and s = 1.
    """
    if P1 == P2:
        raise DuplicatePoints("line needs two distinct points")
    (x1, y1), (x2, y2) = P1, P2
    if F.h == 1:
        p = F.q
        dx, dy = (x2 - x1) % p, (y2 - y1) % p
        for s in range(2, p):
            yield ((x1 + s * dx) % p, (y1 + s * dy) % p)
    else:
        dx, dy = F.sub(x2, x1), F.sub(y2, y1)
        for s in F.elements():
            if s == 0 or s == 1:
                continue
            yield (F.add(x1, F.mul(s, dx)), F.add(y1, F.mul(s, dy)))


def _slope_key(F, P, Q):
    dx = F.sub(Q[0], P[0])
    if dx == 0:
        return F.q  # vertical
    return F.mul(F.sub(Q[1], P[1]), F.inv(dx))


def is_arc(F, points):
    """Arc test with a collinear-triple witness.

    Buckets the points after each anchor by the slope through the anchor in
    F_q plus infinity; a repeated slope yields a collinear triple.  Sets with
    fewer than 3 points are arcs.  Returns (True, None) or (False, triple).
    """
    pts = sorted(set(points))
    n = len(pts)
    if n < 3:
        return True, None
    if F.h == 1 and n >= _NUMPY_ARC_THRESHOLD:
        return _is_arc_numpy(F, pts)
    for i in range(n - 2):
        anchor = pts[i]
        buckets = {}
        for j in range(i + 1, n):
            key = _slope_key(F, anchor, pts[j])
            k = buckets.get(key)
            if k is not None:
                return False, (anchor, pts[k], pts[j])
            buckets[key] = j
    return True, None


def _is_arc_numpy(F, pts):
    import numpy as np

    q = F.q
    inv = F.inverse_table()
    xs = np.array([p[0] for p in pts], dtype=np.int64)
    ys = np.array([p[1] for p in pts], dtype=np.int64)
    n = len(pts)
    for i in range(n - 2):
        dx = (xs[i + 1 :] - xs[i]) % q
        dy = (ys[i + 1 :] - ys[i]) % q
        slopes = np.where(dx == 0, q, dy * inv[dx] % q)
        order = np.argsort(slopes, kind="stable")
        srt = slopes[order]
        dup = np.nonzero(srt[1:] == srt[:-1])[0]
        if dup.size:
            k = dup[0]
            a = i + 1 + order[k]
            b = i + 1 + order[k + 1]
            return False, (pts[i], pts[min(a, b)], pts[max(a, b)])
    return True, None


def _direction_key(F, P, Q):
    d = [F.sub(b, a) for a, b in zip(P, Q)]
    for c in d:
        if c:
            lead_inv = F.inv(c)
            return tuple(F.mul(lead_inv, x) for x in d)
    raise DuplicatePoints("zero direction")


def is_cap(F, points):
    """Cap test in AG(N,q) with a collinear-triple witness.

    Collinearity of P1, P2, P3 means P3 - P1 is parallel to P2 - P1, detected
    by bucketing normalized direction vectors per anchor.
    """
    pts = sorted(set(points))
    n = len(pts)
    if n == 0:
        return True, None
    N = len(pts[0])
    if any(len(p) != N for p in pts):
        raise MixedDimensions("points of different dimensions")
    if n < 3:
        return True, None
    for i in range(n - 2):
        anchor = pts[i]
        buckets = {}
        for j in range(i + 1, n):
            key = _direction_key(F, anchor, pts[j])
            k = buckets.get(key)
            if k is not None:
                return False, (anchor, pts[k], pts[j])
            buckets[key] = j
    return True, None


def points_to_json(points) -> list:
    return [list(p) for p in points]


def points_from_json(data) -> list:
    return [tuple(p) for p in data]
