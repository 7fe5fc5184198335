"""The nodal cubic XY = (X-1)^3 over F_q, p > 3.

Its nonsingular rational points form a group isomorphic to the multiplicative
group of the field via v -> (v, (v-1)^3 / v), with neutral element (1, 0); the
node sits at infinity, so the affine points are exactly the group.  Three
group points are collinear iff the product of their parameters is 1.

Cosets of the index-m subgroup are arcs whenever 3 does not divide m, and
unions of cosets over a 3-independent residue set stay arcs.  Cosets are
labeled by a deterministic primitive root g (smallest code): residue i names
the coset g^i * K.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field

from .errors import (
    BadDivisibility,
    BadGcd,
    BadIndex,
    InvalidCoset,
    NotOnCubic,
    NotThreeIndependent,
    UnsupportedCharacteristic,
    ZeroParam,
)
from .field import field_from_json, field_to_json
from .plane import point2_index


def require_cubic_field(F):
    if F.p <= 3:
        raise UnsupportedCharacteristic(f"nodal cubic machinery needs p > 3, got p={F.p}")
    return F


def on_cubic(F, P) -> bool:
    """Membership test x*y = (x-1)^3 with x != 0."""
    x, y = P
    if x == 0:
        return False
    lhs = F.mul(x, y)
    xm1 = F.sub(x, 1)
    return lhs == F.mul(F.mul(xm1, xm1), xm1)


def point_of_param(F, v: int):
    """The group point (v, (v-1)^3 / v); v = 1 gives the neutral element (1, 0)."""
    if v == 0:
        raise ZeroParam("parameter must be a unit")
    xm1 = F.sub(v, 1)
    return (v, F.div(F.mul(F.mul(xm1, xm1), xm1), v))


def param_of_point(F, P) -> int:
    """Inverse of point_of_param: the x coordinate, after a membership check."""
    if P[0] == 0:
        raise NotOnCubic(f"{P}: no curve point has x = 0")
    if not on_cubic(F, P):
        raise NotOnCubic(f"{P} does not satisfy xy = (x-1)^3")
    return P[0]


def group_mul(F, v1: int, v2: int) -> int:
    if v1 == 0 or v2 == 0:
        raise ZeroParam("parameters must be units")
    return F.mul(v1, v2)


def group_inv(F, v: int) -> int:
    if v == 0:
        raise ZeroParam("parameters must be units")
    return F.inv(v)


class NodalCubic:
    """Convenience wrapper caching the full point list."""

    def __init__(self, F):
        self.field = require_cubic_field(F)

    def contains(self, P) -> bool:
        return on_cubic(self.field, P)

    def points(self):
        return [point_of_param(self.field, v) for v in self.field.units()]


# -- cosets ---------------------------------------------------------------------


def subgroup_values(F, m: int):
    """The index-m subgroup K = {w^m} of the units, sorted (cached)."""
    if m < 1 or (F.q - 1) % m != 0:
        raise BadDivisibility(f"m={m} does not divide q-1={F.q - 1}")
    key = ("subgroup", m)
    cached = F._caches.get(key)
    if cached is None:
        g = F.primitive_root()
        step = F.pow(g, m)
        vals = set()
        v = 1
        for _ in range((F.q - 1) // m):
            vals.add(v)
            v = F.mul(v, step)
        cached = sorted(vals)
        F._caches[key] = cached
    return cached


def coset_values(F, m: int, t: int):
    """The coset t*K sorted by code."""
    return sorted(F.mul(t, k) for k in subgroup_values(F, m))


def coset_residue(F, m: int, t: int) -> int:
    """The residue i in [0, m) with t in g^i * K, g the fixed primitive root."""
    if t == 0:
        raise ZeroParam("t must be a unit")
    g = F.primitive_root()
    for i in range(m):
        if F.is_mth_power(F.div(t, F.pow(g, i)), m):
            return i
    raise InvalidCoset("unreachable: cosets partition the units")


@dataclass(frozen=True)
class CosetSpec:
    """A coset K_t of the index-m subgroup, t not an m-th power."""

    field: object
    m: int
    t: int
    g: int = dc_field(init=False)

    def __post_init__(self):
        F = require_cubic_field(self.field)
        if self.m < 1 or (F.q - 1) % self.m != 0:
            raise BadDivisibility(f"m={self.m} does not divide q-1={F.q - 1}")
        if self.t == 0:
            raise InvalidCoset("t must be a unit")
        if F.is_mth_power(self.t, self.m):
            raise InvalidCoset(f"t={self.t} is an m-th power, so K_t would be K itself")
        object.__setattr__(self, "g", F.primitive_root())

    @property
    def residue(self) -> int:
        return coset_residue(self.field, self.m, self.t)


def coset_points(spec: CosetSpec):
    """The (q-1)/m points of K_t, sorted by code (= by dense index)."""
    F = spec.field
    return [point_of_param(F, v) for v in coset_values(F, spec.m, spec.t)]


@dataclass(frozen=True)
class ArcSet:
    """A point set on the cubic with its coset provenance."""

    field: object
    m: int
    M: tuple
    g: int
    points: tuple

    def to_json(self) -> dict:
        d = field_to_json(self.field)
        return {
            "q": self.field.q,
            "p": d["p"],
            "h": d["h"],
            "modulus": d["modulus"],
            "m": self.m,
            "M": list(self.M),
            "g": self.g,
            "points": [list(p) for p in self.points],
        }

    @staticmethod
    def from_json(d: dict) -> "ArcSet":
        F = field_from_json(d)
        return ArcSet(
            field=F,
            m=d["m"],
            M=tuple(d["M"]),
            g=d["g"],
            points=tuple(tuple(p) for p in d["points"]),
        )


def single_coset_arc(F, m: int, t: int) -> ArcSet:
    """ArcSet for one coset, canonicalized to its residue label."""
    spec = CosetSpec(F, m, t)
    pts = coset_points(spec)
    return ArcSet(field=F, m=m, M=(spec.residue,), g=spec.g, points=tuple(pts))


def union_arc(F, m: int, M, strict: bool = False) -> ArcSet:
    """Union of the cosets g^i * K over residues i in M, as points on the cubic.

    The size is exactly len(M) * (q-1)/m.  With strict=True the residue set is
    required to verify as a maximal 3-independent subset of Z_m, which is what
    the bicovering claims downstream rely on.
    """
    require_cubic_field(F)
    if m < 1 or (F.q - 1) % m != 0:
        raise BadDivisibility(f"m={m} does not divide q-1={F.q - 1}")
    if math.gcd(m, 3) != 1:
        raise BadGcd(f"coset arcs need gcd(m, 3) = 1, got m={m}")
    residues = sorted(set(int(i) for i in M))
    if any(i < 0 or i >= m for i in residues):
        raise BadIndex(f"residues must lie in [0, {m})")
    if strict:
        from . import indep

        rep = indep.verify(m, residues)
        if not (rep.flags["three_independent"] and rep.flags["maximal"]):
            raise NotThreeIndependent(f"M={residues} is not maximal 3-independent mod {m}")
    g = F.primitive_root()
    params = set()
    sub = subgroup_values(F, m)
    for i in residues:
        ti = F.pow(g, i)
        params.update(F.mul(ti, k) for k in sub)
    pts = [point_of_param(F, v) for v in sorted(params)]
    return ArcSet(field=F, m=m, M=tuple(residues), g=g, points=tuple(pts))


# -- arithmetic gates -------------------------------------------------------------


def exact_rule_holds(q: int, m: int) -> bool:
    """q + 1 - (12m^2-8m+2) sqrt(q) >= 8m^2+8m+1, in pure integer arithmetic."""
    L = q + 1 - (8 * m * m + 8 * m + 1)
    if L < 0:
        return False
    c = 12 * m * m - 8 * m + 2
    return L * L >= c * c * q


def quartic_rule_holds(q: int, m: int) -> bool:
    """m <= q^(1/4) / 3.5, i.e. 2^4 q >= 7^4 m^4, in pure integer arithmetic."""
    return 16 * q >= 2401 * m**4


@dataclass(frozen=True)
class GateReport:
    q: int
    m: int
    rule: str
    passed: bool
    exact_ok: bool
    quartic_ok: bool
    exact_lhs: int
    exact_rhs: int
    quartic_lhs: int
    quartic_rhs: int

    def to_json(self) -> dict:
        return {
            "q": self.q,
            "m": self.m,
            "rule": self.rule,
            "passed": self.passed,
            "exact": {"ok": self.exact_ok, "lhs": self.exact_lhs, "rhs": self.exact_rhs},
            "quartic": {
                "ok": self.quartic_ok,
                "lhs": self.quartic_lhs,
                "rhs": self.quartic_rhs,
            },
        }


def check_hypotheses(q: int, m: int, rule: str = "exact") -> GateReport:
    """Arithmetic gate deciding whether (q, m) admits the bicovering guarantee.

    The exact rule evaluates the squared comparison L^2 >= (12m^2-8m+2)^2 q
    with L = q+1-(8m^2+8m+1); the quartic rule is the sufficient condition
    16q >= 2401 m^4.  Exact integers only: floating error near thresholds
    like q = 93790 would flip verdicts.
    """
    if rule not in ("exact", "quartic"):
        raise ValueError(f"unknown rule {rule!r}")
    if m <= 1 or math.gcd(m, 6) != 1:
        raise BadGcd(f"gate needs m > 1 with gcd(m, 6) = 1, got m={m}")
    if (q - 1) % m != 0:
        raise BadDivisibility(f"m={m} does not divide q-1={q - 1}")
    L = q + 1 - (8 * m * m + 8 * m + 1)
    c = 12 * m * m - 8 * m + 2
    exact_ok = exact_rule_holds(q, m)
    quartic_ok = quartic_rule_holds(q, m)
    return GateReport(
        q=q,
        m=m,
        rule=rule,
        passed=exact_ok if rule == "exact" else quartic_ok,
        exact_ok=exact_ok,
        quartic_ok=quartic_ok,
        exact_lhs=L * L if L >= 0 else -1,
        exact_rhs=c * c * q,
        quartic_lhs=16 * q,
        quartic_rhs=2401 * m**4,
    )


def arc_points_sorted_by_index(F, points):
    return sorted(points, key=lambda P: point2_index(F, P))
