from itertools import combinations

import pytest

from capforge.cubic import (
    ArcSet,
    CosetSpec,
    NodalCubic,
    check_hypotheses,
    coset_points,
    coset_residue,
    exact_rule_holds,
    group_inv,
    group_mul,
    on_cubic,
    param_of_point,
    point_of_param,
    quartic_rule_holds,
    single_coset_arc,
    subgroup_values,
    union_arc,
)
from capforge.errors import (
    BadDivisibility,
    BadGcd,
    BadIndex,
    InvalidCoset,
    NotOnCubic,
    NotThreeIndependent,
    UnsupportedCharacteristic,
    ZeroParam,
)
from capforge.field import build_field
from capforge.plane import collinear3, is_arc


def test_characteristic_gate():
    with pytest.raises(UnsupportedCharacteristic):
        NodalCubic(build_field(3, 2))
    NodalCubic(build_field(5))  # p = 5 is allowed


def test_param_point_round_trip():
    F7 = build_field(7)
    assert point_of_param(F7, 1) == (1, 0)
    assert point_of_param(F7, 2) == (2, 4)
    assert point_of_param(F7, 6) == (6, 1)
    assert param_of_point(F7, (2, 4)) == 2
    with pytest.raises(NotOnCubic):
        param_of_point(F7, (0, 3))
    with pytest.raises(NotOnCubic):
        param_of_point(F7, (2, 5))
    with pytest.raises(ZeroParam):
        point_of_param(F7, 0)
    for v in F7.units():
        P = point_of_param(F7, v)
        assert on_cubic(F7, P)
        assert param_of_point(F7, P) == v
    assert len(NodalCubic(F7).points()) == 6


def test_group_ops():
    F7 = build_field(7)
    assert group_mul(F7, 2, 4) == 1
    assert group_inv(F7, 2) == 4
    for v in F7.units():
        assert group_mul(F7, v, 1) == v
    with pytest.raises(ZeroParam):
        group_mul(F7, 0, 3)


@pytest.mark.parametrize("p,h", [(7, 1), (11, 1), (13, 1), (5, 2)])
def test_collinearity_law_exhaustive(p, h):
    F = build_field(p, h)
    pts = {v: point_of_param(F, v) for v in F.units()}
    for v1, v2, v3 in combinations(sorted(pts), 3):
        geometric = collinear3(F, pts[v1], pts[v2], pts[v3])
        algebraic = F.mul(F.mul(v1, v2), v3) == 1
        assert geometric == algebraic


def test_coset_spec_and_points():
    F31 = build_field(31)
    spec = CosetSpec(F31, 5, 2)
    pts = coset_points(spec)
    assert len(pts) == 6
    assert all(on_cubic(F31, P) for P in pts)
    assert pts == sorted(pts)
    assert is_arc(F31, pts)[0]
    with pytest.raises(InvalidCoset):
        CosetSpec(F31, 5, 1)  # 1 is an m-th power
    with pytest.raises(BadDivisibility):
        CosetSpec(F31, 4, 2)
    # m = q-1: singleton coset
    g = F31.primitive_root()
    tiny = CosetSpec(F31, 30, g)
    assert len(coset_points(tiny)) == 1


def test_coset_residue_labeling():
    F31 = build_field(31)
    g = F31.primitive_root()
    for i in range(5):
        t = F31.pow(g, i)
        if i == 0:
            continue  # t in K has no valid CosetSpec
        assert coset_residue(F31, 5, t) == i
    arc = single_coset_arc(F31, 5, 2)
    i = arc.M[0]
    # same point set as the coset labeled by g^i
    relabeled = coset_points(CosetSpec(F31, 5, F31.pow(g, i)))
    assert sorted(arc.points) == sorted(relabeled)


def test_coset_arcs_zirilli_small():
    # subset of the acceptance sweep: one field, all valid (m, t)
    from capforge.ntheory import divisors

    F = build_field(13)
    for m in divisors(12):
        if m % 3 == 0 or m == 1:
            continue
        for t in F.units():
            if F.is_mth_power(t, m):
                continue
            pts = coset_points(CosetSpec(F, m, t))
            assert len(pts) == 12 // m
            assert is_arc(F, pts)[0]


def test_union_arc():
    F31 = build_field(31)
    arc = union_arc(F31, 5, [2, 3])
    assert len(arc.points) == 12
    assert is_arc(F31, arc.points)[0]
    assert arc.M == (2, 3)
    assert union_arc(F31, 5, []).points == ()
    with pytest.raises(BadGcd):
        union_arc(F31, 6, [1])
    with pytest.raises(BadIndex):
        union_arc(F31, 5, [7])
    with pytest.raises(NotThreeIndependent):
        union_arc(F31, 5, [1, 2], strict=True)
    strict = union_arc(F31, 5, [2, 3], strict=True)
    assert len(strict.points) == 12


def test_union_arc_size_law():
    F = build_field(41)
    for m, M in [(5, [2, 3]), (5, [1, 4]), (10, [7]), (8, [3, 5])]:
        if (F.q - 1) % m or m % 3 == 0:
            continue
        arc = union_arc(F, m, M)
        assert len(arc.points) == len(set(M)) * (F.q - 1) // m


def test_arcset_json_round_trip():
    F31 = build_field(31)
    arc = union_arc(F31, 5, [2, 3])
    d = arc.to_json()
    assert d["q"] == 31 and d["m"] == 5 and d["M"] == [2, 3]
    back = ArcSet.from_json(d)
    assert back.points == arc.points
    assert back.field == F31
    # points sorted by dense index
    idx = [p[0] * 31 + p[1] for p in arc.points]
    assert idx == sorted(idx)


def test_gate_thresholds():
    # oracle: rational arithmetic, threshold = floor((3.5 m)^4) + 1
    from fractions import Fraction

    for m, expected in [(5, 93790), (7, 360301)]:
        thr = Fraction(7 * m, 2) ** 4
        oracle = int(thr) + 1
        assert oracle == expected
        assert quartic_rule_holds(expected, m)
        assert not quartic_rule_holds(expected - 1, m)
    rep = check_hypotheses(31, 5, "quartic")
    assert not rep.quartic_ok and not rep.exact_ok and not rep.passed
    rep = check_hypotheses(93811, 5, "exact")
    assert rep.exact_ok and rep.quartic_ok and rep.passed
    with pytest.raises(BadGcd):
        check_hypotheses(31, 6, "exact")
    with pytest.raises(BadGcd):
        check_hypotheses(31, 1, "exact")
    with pytest.raises(BadDivisibility):
        check_hypotheses(31, 7, "exact")


def test_exact_rule_matches_float_oracle():
    import math

    for m in (5, 7, 11, 13):
        for q in range(m * m, 10**6, 9871):
            lhs = q + 1 - (12 * m * m - 8 * m + 2) * math.sqrt(q)
            if abs(lhs - (8 * m * m + 8 * m + 1)) < 1:
                continue  # stay off the float knife edge; criterion 9 probes it exactly
            assert exact_rule_holds(q, m) == (lhs >= 8 * m * m + 8 * m + 1)


def test_subgroup_values_against_bruteforce():
    F = build_field(31)
    for m in (2, 3, 5, 6, 10, 15):
        assert subgroup_values(F, m) == sorted({pow(w, m, 31) for w in range(1, 31)})
