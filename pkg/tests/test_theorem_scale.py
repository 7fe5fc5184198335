"""Positive-direction checks of the coset-union construction beyond toy q.

q = 241 is the smallest prime congruent 1 mod 5 at which the union of the two
cosets labeled {2, 3} (index m = 5) verifies as bicovering by exhaustive
full-plane coverage; the sufficient arithmetic gate only kicks in near 10^5,
so this is evidence the construction works well before the bound.
"""

import json

from capforge.cubic import check_hypotheses, union_arc
from capforge.field import build_field
from capforge.plane import is_arc
from capforge.verify import verify_bicovering_full, verify_bicovering_sampled


def test_union_arc_bicovers_at_q241_exhaustively():
    F = build_field(241)
    arc = union_arc(F, 5, [2, 3], strict=True)
    assert len(arc.points) == 2 * 240 // 5 == 96
    assert is_arc(F, arc.points)[0]
    rep = verify_bicovering_full(F, arc.points)
    assert rep.verdict, rep.counts
    assert rep.counts["both_covered"] == 241 * 241 - 96
    # the gate is sufficient, not necessary: it fails here although the
    # construction already bicovers
    gate = check_hypotheses(241, 5, "exact")
    assert not gate.exact_ok and not gate.quartic_ok


def test_sampled_mode_agrees_at_q241():
    F = build_field(241)
    arc = union_arc(F, 5, [2, 3])
    full = verify_bicovering_full(F, arc.points)
    samp = verify_bicovering_sampled(F, arc.points, 2000, 17)
    assert full.verdict and samp.verdict
    assert samp.counts["both_covered"] == 2000
    d = samp.to_json()
    json.dumps(d)  # serializable
    assert d["seed"] == 17 and d["sample_size"] == 2000


def test_smaller_q_still_fail():
    # uncovered counts decay toward the q = 241 threshold
    prev = None
    for q in (41, 131, 181):
        F = build_field(q)
        arc = union_arc(F, 5, [2, 3])
        rep = verify_bicovering_full(F, arc.points)
        assert not rep.verdict
        unc = rep.counts["points"] - rep.counts["both_covered"]
        if prev is not None:
            assert unc < prev
        prev = unc
