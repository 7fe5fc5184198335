"""The auxiliary curve family tying coset secants to polynomial zeros.

For a point P = (a, b) off the cubic and a coset K_t of index m, the curve

    f(X, Y) = a(t^3 X^2m Y^m + t^3 X^m Y^2m - 3t^2 X^m Y^m + 1)
              - b t^2 X^m Y^m - t^4 X^2m Y^2m + 3 t^2 X^m Y^m - t X^m - t Y^m

has a zero with x, y nonzero and x^m != y^m exactly when some secant of K_t
passes through P.  Because f depends on X, Y only through u = t X^m and
z = t Y^m, every operation here works on the coset-value pair (u, z), where f
collapses to the collinearity determinant and, for fixed u, is a quadratic in
z.  The square class of (a - u)(a - z) then decides whether P sits externally
or internally to the witnessed secant.

The quartic shadow g_P (the m = 1 instance) is counted in O(q) by the
per-abscissa discriminant method; its affine point count obeys a Hasse-Weil
window because its genus is at most 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .cubic import on_cubic, point_of_param, require_cubic_field
from .errors import (
    BadCosetPair,
    BadDivisibility,
    BadGcd,
    InvalidCoset,
    NotFoundError,
    OnCubicPoint,
    PreconditionNotMet,
    ZeroInput,
    ZeroParam,
)
from .field import power_classes
from .plane import SegmentPosition


@dataclass(frozen=True)
class CurveParams:
    """Parameters (a, b, t, m) of the curve attached to P = (a, b).

    Construction validates t != 0 and gcd(m, 6) = 1.  The coset-structure
    requirements (m | q-1, t not an m-th power) and the off-cubic requirement
    a*b != (a-1)^3 are enforced by the operations that actually rely on them;
    the polynomial identities hold without them.
    """

    field: object
    a: int
    b: int
    t: int
    m: int

    def __post_init__(self):
        require_cubic_field(self.field)
        if self.t == 0:
            raise ZeroInput("t must be a unit")
        if self.m < 1 or math.gcd(self.m, 6) != 1:
            raise BadGcd(f"curve family needs gcd(m, 6) = 1, got m={self.m}")

    def require_coset(self):
        F = self.field
        if (F.q - 1) % self.m != 0:
            raise BadDivisibility(f"m={self.m} does not divide q-1={F.q - 1}")
        if F.is_mth_power(self.t, self.m):
            raise InvalidCoset(f"t={self.t} is an m-th power")

    def require_off_cubic(self):
        if on_cubic(self.field, (self.a, self.b)):
            raise OnCubicPoint(f"P=({self.a},{self.b}) lies on the cubic")


def collinear_det(F, a: int, b: int, v1: int, v2: int) -> int:
    """a(v1^2 v2 + v1 v2^2 - 3 v1 v2 + 1) - b v1 v2 - v1 v2 (v1 v2 - 3) - (v1 + v2).

    Vanishes exactly when P = (a, b) is collinear with the distinct cubic
    points of parameters v1 != v2.
    """
    if F.h == 1:
        p = F.q
        s = v1 * v2 % p
        return (a * (s * (v1 + v2) - 3 * s + 1) - b * s - s * (s - 3) - v1 - v2) % p
    s = F.mul(v1, v2)
    term = F.mul(a, F.add(F.sub(F.mul(s, F.add(v1, v2)), F.mul(3 % F.p, s)), 1))
    term = F.sub(term, F.mul(b, s))
    term = F.sub(term, F.mul(s, F.sub(s, 3 % F.p)))
    return F.sub(term, F.add(v1, v2))


def eval_f(cp: CurveParams, x: int, y: int) -> int:
    """Exact evaluation of f through the substitution u = t x^m, z = t y^m."""
    F = cp.field
    u = F.mul(cp.t, F.pow(x, cp.m))
    z = F.mul(cp.t, F.pow(y, cp.m))
    return collinear_det(F, cp.a, cp.b, u, z)


@dataclass(frozen=True)
class FactorReport:
    holds: bool
    checked: int
    exhaustive: bool
    mismatch: tuple | None


def special_factor_check(cp: CurveParams, exhaustive_limit: int = 1 << 16) -> FactorReport:
    """Check f = -(a^2 + t^2 X^m Y^m - a t Y^m)(a^2 + t^2 X^m Y^m - a t X^m)
    in the reducible case a^3 = -1, b = 1 - (a-1)^3.

    Exhaustive over F_q^2 up to the size limit, strided sampling beyond it.
    """
    F = cp.field
    a, t, m = cp.a, cp.t, cp.m
    if F.pow(a, 3) != F.neg(1):
        raise PreconditionNotMet(f"a={a} does not satisfy a^3 = -1")
    am1 = F.sub(a, 1)
    expected_b = F.sub(1, F.mul(F.mul(am1, am1), am1))
    if cp.b != expected_b:
        raise PreconditionNotMet(f"b={cp.b} differs from 1 - (a-1)^3 = {expected_b}")
    a2 = F.mul(a, a)
    exhaustive = F.q * F.q <= exhaustive_limit
    stride = 1 if exhaustive else max(1, F.q // 256)
    checked = 0
    for x in range(0, F.q, stride):
        u = F.mul(cp.t, F.pow(x, m))
        au = F.mul(a, u)
        for y in range(0, F.q, stride):
            z = F.mul(cp.t, F.pow(y, m))
            uz = F.mul(u, z)
            rhs = F.neg(F.mul(F.sub(F.add(a2, uz), F.mul(a, z)), F.sub(F.add(a2, uz), au)))
            checked += 1
            if collinear_det(F, cp.a, cp.b, u, z) != rhs:
                return FactorReport(False, checked, exhaustive, (x, y))
    return FactorReport(True, checked, exhaustive, None)


def count_curve_points(cp: CurveParams) -> int:
    """Exact affine count of f = 0 over F_q^2.

    f depends on x, y only through x^m, y^m, so the sweep runs over the value
    classes of the power map (multiplicity gcd(m, q-1) on units, 1 at zero),
    and for each fixed u-class f is a quadratic in the z-class: the whole
    count needs O(q/m) discriminant evaluations.
    """
    F = cp.field
    a, b = cp.a, cp.b
    values, d, _ = power_classes(F, cp.m)
    z_mult = {F.mul(cp.t, 0): 1}
    for v in values:
        z_mult[F.mul(cp.t, v)] = d
    total_z = F.q  # sum of all z multiplicities (q values of y)
    count = 0
    for alpha, ma in [(0, 1)] + [(v, d) for v in values]:
        u = F.mul(cp.t, alpha)
        C2, C1, C0 = _fz_coeffs(F, a, b, u)
        if C2 == 0 and C1 == 0:
            # identically zero slice (only at u = a when P lies on the cubic)
            if C0 == 0:
                count += ma * total_z
            continue
        for z in _quadratic_roots(F, C2, C1, C0):
            mb = z_mult.get(z)
            if mb:
                count += ma * mb
    return count


def count_quartic_points(F, a: int, b: int, t: int) -> int:
    """Exact affine count of the quartic shadow g_P = 0 in O(q).

    g_P is degree 2 in Y with coefficients c2 = t^3 X (a - t X),
    c1 = a t^3 X^2 - (3a + b - 3) t^2 X - t, c0 = a - t X; roots per abscissa
    are counted through the quadratic discriminant and the quadratic
    character, with exact linear fallbacks on the two degenerate lines.
    """
    require_cubic_field(F)
    if t == 0:
        raise ZeroInput("t must be a unit")
    am1 = F.sub(a, 1)
    if F.mul(a, b) == F.mul(F.mul(am1, am1), am1):
        raise OnCubicPoint(f"({a},{b}) lies on the cubic; the quartic degenerates")
    if F.h == 1:
        return _count_quartic_numpy(F, a, b, t)
    return _count_quartic_generic(F, a, b, t)


def _count_quartic_numpy(F, a, b, t):
    import numpy as np

    q = F.q
    x = np.arange(q, dtype=np.int64)
    t2 = t * t % q
    t3 = t2 * t % q
    tx = t * x % q
    c2 = t3 * x % q * ((a - tx) % q) % q
    c1 = ((a * t3 % q) * x % q * x + (-(3 * a + b - 3) * t2 % q) * x + (q - t)) % q
    c0 = (a - tx) % q
    D = (c1 * c1 - 4 * c2 % q * c0) % q
    sq = F.square_table()
    quad = np.where(D == 0, 1, np.where(sq[D], 2, 0))
    lin = np.where(c1 != 0, 1, np.where(c0 == 0, q, 0))
    return int(np.where(c2 != 0, quad, lin).sum())


def _count_quartic_generic(F, a, b, t):
    q = F.q
    t2 = F.mul(t, t)
    t3 = F.mul(t2, t)
    lin_coef = F.mul(F.sub(F.add(F.mul(3 % F.p, a), b), 3 % F.p), t2)
    total = 0
    for x in F.elements():
        tx = F.mul(t, x)
        c2 = F.mul(F.mul(t3, x), F.sub(a, tx))
        c1 = F.sub(F.sub(F.mul(F.mul(a, t3), F.mul(x, x)), F.mul(lin_coef, x)), t)
        c0 = F.sub(a, tx)
        if c2 != 0:
            D = F.sub(F.mul(c1, c1), F.mul(4 % F.p, F.mul(c2, c0)))
            total += 1 + F.chi(D) if D else 1
        elif c1 != 0:
            total += 1
        elif c0 == 0:
            total += q
    return total


# -- witness searches --------------------------------------------------------------


def _quadratic_roots(F, A: int, B: int, C: int):
    """Roots of A z^2 + B z + C over F, ascending by code."""
    if A == 0:
        if B == 0:
            if C == 0:
                raise ZeroInput("identically zero polynomial")
            return []
        return [F.neg(F.div(C, B))]
    D = F.sub(F.mul(B, B), F.mul(4 % F.p, F.mul(A, C)))
    if D == 0:
        return [F.neg(F.div(B, F.mul(2 % F.p, A)))]
    c = F.chi(D)
    if c == -1:
        return []
    s = F.sqrt_table()[D]
    inv2a = F.inv(F.mul(2 % F.p, A))
    r1 = F.mul(F.sub(s, B), inv2a)
    r2 = F.mul(F.sub(F.neg(s), B), inv2a)
    return sorted((r1, r2))


def _fz_coeffs(F, a, b, u):
    """Coefficients of f as a quadratic in z for fixed u."""
    C2 = F.mul(u, F.sub(a, u))
    C1 = F.sub(F.sub(F.mul(a, F.mul(u, u)), F.mul(F.sub(F.add(F.mul(3 % F.p, a), b), 3 % F.p), u)), 1)
    C0 = F.sub(a, u)
    return C2, C1, C0


def _scan_secant_values(cp: CurveParams):
    """Yield (x, u, z, y) for every zero of f with u != z, both in t*K.

    x runs over units in code order; each coset value u = t x^m is processed
    once, and z ranges over the quadratic roots of f(u, .) lying in t*K.
    y is the smallest-code unit with t y^m = z.
    """
    F = cp.field
    a, b, t, m = cp.a, cp.b, cp.t, cp.m
    _, _, reps = power_classes(F, m)
    coset = {F.mul(t, k): reps[k] for k in reps}
    seen = set()
    for x in F.units():
        u = F.mul(t, F.pow(x, m))
        if u in seen:
            continue
        seen.add(u)
        C2, C1, C0 = _fz_coeffs(F, a, b, u)
        for z in _quadratic_roots(F, C2, C1, C0):
            if z != u and z in coset:
                yield (x, u, z, coset[z])


@dataclass(frozen=True)
class SecantWitness:
    """A secant of K_t through P, certified by a zero of f."""

    P: tuple
    t: int
    m: int
    x: int
    y: int
    position: SegmentPosition | None
    secant: tuple

    def to_json(self) -> dict:
        return {
            "P": list(self.P),
            "t": self.t,
            "m": self.m,
            "x": self.x,
            "y": self.y,
            "class": self.position.value if self.position else None,
            "secant": [list(p) for p in self.secant],
        }


def collinear_witnesses(cp: CurveParams, limit: int | None = None):
    """All (x, y) with f(x, y) = 0, x y != 0 and x^m != y^m, up to limit.

    An empty list is an exhaustion proof: every coset value u was scanned.
    """
    cp.require_coset()
    cp.require_off_cubic()
    F = cp.field
    out = []
    for x, u, z, y in _scan_secant_values(cp):
        secant = (point_of_param(F, u), point_of_param(F, z))
        out.append(SecantWitness((cp.a, cp.b), cp.t, cp.m, x, y, None, secant))
        if limit is not None and len(out) >= limit:
            break
    return out


def _want_sign(want) -> int:
    if isinstance(want, SegmentPosition):
        return 1 if want is SegmentPosition.EXTERNAL else -1
    w = str(want).lower()
    if w == "external":
        return 1
    if w == "internal":
        return -1
    raise ValueError(f"unknown position {want!r}")


def bicover_witness(cp: CurveParams, want) -> SecantWitness:
    """Secant of K_t through P with P in the requested segment class.

    The class of P on the witnessed secant is chi((a - t x^m)(a - t y^m)):
    +1 external, -1 internal.  Raises NotFoundError carrying the scanned
    domain size when no such secant exists.
    """
    cp.require_coset()
    cp.require_off_cubic()
    F = cp.field
    sign = _want_sign(want)
    scanned = 0
    for x, u, z, y in _scan_secant_values(cp):
        scanned += 1
        if F.chi(F.mul(F.sub(cp.a, u), F.sub(cp.a, z))) == sign:
            pos = SegmentPosition.EXTERNAL if sign == 1 else SegmentPosition.INTERNAL
            secant = (point_of_param(F, u), point_of_param(F, z))
            return SecantWitness((cp.a, cp.b), cp.t, cp.m, x, y, pos, secant)
    raise NotFoundError(
        f"no {_want_sign(want) == 1 and 'external' or 'internal'} secant witness for "
        f"P=({cp.a},{cp.b}), t={cp.t}, m={cp.m}",
        domain=(F.q - 1) // math.gcd(cp.m, F.q - 1),
    )


@dataclass(frozen=True)
class EtaWitness:
    """A secant joining K_t to its partner coset through an on-cubic point."""

    P0: tuple
    t: int
    t2: int
    m: int
    x: int
    position: SegmentPosition
    secant: tuple

    def to_json(self) -> dict:
        return {
            "P": list(self.P0),
            "t": self.t,
            "t2": self.t2,
            "m": self.m,
            "x": self.x,
            "class": self.position.value,
            "secant": [list(p) for p in self.secant],
        }


def eta_witness(F, u0: int, t: int, t2: int, m: int, want) -> EtaWitness:
    """Bicovering witness for the on-cubic point P0 = (u0, (u0-1)^3/u0).

    For x a unit, the cubic point of parameter t x^m in K_t and its group-law
    partner of parameter 1/(u0 t x^m) are collinear with P0; the partner lies
    in K_{t2} exactly when u0*t*t2 is an m-th power.  The segment class of P0
    is chi((u0 - t x^m)(u0 - 1/(u0 t x^m))).
    """
    require_cubic_field(F)
    if u0 == 0:
        raise ZeroParam("u0 must be a unit")
    if t == 0 or t2 == 0:
        raise ZeroInput("coset labels must be units")
    if m < 1 or math.gcd(m, 6) != 1:
        raise BadGcd(f"need gcd(m, 6) = 1, got m={m}")
    if (F.q - 1) % m != 0:
        raise BadDivisibility(f"m={m} does not divide q-1={F.q - 1}")
    if not F.is_mth_power(F.mul(F.mul(u0, t), t2), m):
        raise BadCosetPair(
            f"partner of K_{t} through u0={u0} lands in a different coset than t2={t2}"
        )
    if F.is_mth_power(F.div(u0, t), m) or F.is_mth_power(F.div(u0, t2), m):
        raise PreconditionNotMet(f"P0 with u0={u0} lies in K_t or K_t2")
    sign = _want_sign(want)
    P0 = point_of_param(F, u0)
    seen = set()
    scanned = 0
    for x in F.units():
        v1 = F.mul(t, F.pow(x, m))
        if v1 in seen:
            continue
        seen.add(v1)
        scanned += 1
        vq = F.inv(F.mul(u0, v1))
        if vq == v1:
            continue  # tangent, not a secant
        eta = F.mul(F.sub(u0, v1), F.sub(u0, vq))
        if F.chi(eta) == sign:
            pos = SegmentPosition.EXTERNAL if sign == 1 else SegmentPosition.INTERNAL
            return EtaWitness(P0, t, t2, m, x, pos, (point_of_param(F, v1), point_of_param(F, vq)))
    raise NotFoundError(
        f"no {sign == 1 and 'external' or 'internal'} coset-pair witness through u0={u0}",
        domain=scanned,
    )
