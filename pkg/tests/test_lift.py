import random

import pytest

from capforge.cli import greedy_complete_arc
from capforge.errors import BadDimension, NotACap
from capforge.field import build_field
from capforge.lift import (
    ParityCheckMatrix,
    cap_from_json,
    check_distance_ge4,
    export_parity_check,
    lift_arc,
)
from capforge.plane import is_arc, is_cap
from capforge.verify import verify_bicovering_full, verify_complete_cap


def random_arc(F, rng, max_size):
    """Greedy random arc truncated to a random size >= 3."""
    arc = greedy_complete_arc(F, rng=rng)
    size = rng.randrange(3, max(4, min(len(arc), max_size) + 1))
    return arc[:size]


def test_size_law_and_dimension_gate():
    F7 = build_field(7)
    arc = [(0, 1), (1, 2), (3, 5)]
    cap = lift_arc(F7, arc, 4)
    assert len(cap.points) == 3 * 7
    assert cap.qprime == 7
    assert is_cap(F7, cap.points)[0]
    for bad_n in (2, 3, 6, 10):
        with pytest.raises(BadDimension):
            lift_arc(F7, arc, bad_n)


def test_lift_n8_round_trip():
    F7 = build_field(7)
    arc = [(0, 1), (1, 2), (3, 5)]
    cap = lift_arc(F7, arc, 8)
    assert len(cap.points) == 343 * 3
    ext = cap.extension
    for P in cap.points:
        alpha = ext.from_coords(P[:3])
        assert ext.to_coords(ext.mul(alpha, alpha)) == P[3:6]
        assert P[6:] in set(arc)


def test_random_arcs_always_lift_to_caps():
    rng = random.Random(20)
    for q, h in [(7, 1), (11, 1), (9, 2), (13, 1)]:
        p = 3 if q == 9 else q
        F = build_field(p, h)
        for _ in range(5):
            arc = random_arc(F, rng, 2 * q)
            assert is_arc(F, arc)[0]
            cap = lift_arc(F, arc, 4)
            ok, wit = is_cap(F, cap.points)
            assert ok, (q, arc, wit)


def test_non_bicovering_arc_lifts_to_incomplete_cap():
    # the contrapositive of the completeness claim, end to end
    for q in (7, 11, 13):
        F = build_field(q)
        arc = greedy_complete_arc(F, rng=random.Random(3))
        rep = verify_bicovering_full(F, arc)
        assert not rep.verdict  # no bicovering arcs exist at these q
        cap = lift_arc(F, arc, 4)
        crep = verify_complete_cap(F, cap.points)
        assert not crep.verdict
        assert crep.counts["uncovered"] > 0


def test_export_parity_check():
    F7 = build_field(7)
    arc = [(0, 1), (1, 2), (3, 5)]
    cap = lift_arc(F7, arc, 4)
    H = export_parity_check(F7, cap.points)
    assert H.nrows == 5
    assert H.code_params == (21, 16, 4)
    assert [tuple(p) for p in H.decode_points()] == sorted(set(cap.points))
    assert all(col[0] == 1 for col in H.columns)
    rows = H.rows()
    assert len(rows) == 5 and all(len(r) == 21 for r in rows)
    csv = H.to_csv()
    assert csv.count("\n") == 5
    with pytest.raises(NotACap):
        export_parity_check(F7, [(0, 0, 0, 0), (1, 1, 0, 0), (2, 2, 0, 0)])


def test_empty_cap_exports_zero_columns():
    F7 = build_field(7)
    H = export_parity_check(F7, [])
    assert H.k == 0 and H.columns == ()


def test_distance_cross_oracle_with_is_cap():
    rng = random.Random(4)
    F = build_field(7)
    for _ in range(50):
        pts = list({(rng.randrange(7), rng.randrange(7), rng.randrange(7), rng.randrange(7))
                    for _ in range(rng.randrange(3, 8))})
        cap_ok, _ = is_cap(F, pts)
        H = ParityCheckMatrix(field=F, nrows=5, columns=tuple((1,) + p for p in sorted(pts)))
        dist_ok, wit = check_distance_ge4(H)
        assert dist_ok == cap_ok
        if not dist_ok:
            assert wit is not None


def test_distance_witness_on_duplicate_column():
    F = build_field(7)
    cols = ((1, 0, 1, 2, 3), (1, 1, 1, 0, 0), (1, 0, 1, 2, 3))
    H = ParityCheckMatrix(field=F, nrows=5, columns=cols)
    ok, wit = check_distance_ge4(H)
    assert not ok and wit == (0, 2)


def test_cap_json_round_trip():
    F7 = build_field(7)
    arc = [(0, 1), (1, 2), (3, 5)]
    cap = lift_arc(F7, arc, 4)
    d = cap.to_json()
    assert d["N"] == 4 and d["qprime"] == 7
    back = cap_from_json(d)
    assert back.points == cap.points
    assert back.arc_points == cap.arc_points
    # dense-index ordering of serialized points
    from capforge.plane import pointN_index

    idx = [pointN_index(F7, tuple(p)) for p in d["points"]]
    assert idx == sorted(idx)
