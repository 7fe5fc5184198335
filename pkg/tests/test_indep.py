from itertools import combinations

import pytest

from capforge import indep
from capforge.errors import NotFoundError


def violates_a(m, members):
    return any((x + y + z) % m == 0 for x in members for y in members for z in members)


def violates_b(m, members):
    mem = set(members)
    for y in range(m):
        if y in mem:
            continue
        if not any((x1 + x2 + y) % m == 0 for x1 in members for x2 in members):
            return True
    return False


def test_verify_z5_examples():
    rep = indep.verify(5, [2, 3])
    assert rep.flags["three_independent"] and rep.flags["maximal"]
    # {2,3} is not good: y = 1 needs 2+2
    assert not rep.flags["good"] and rep.witnesses["good"] == 1

    rep = indep.verify(5, [1, 2])
    assert not rep.flags["three_independent"] or not rep.flags["maximal"]
    # witnesses actually violate the clauses they claim to violate
    if rep.witnesses["three_independent"] is not None:
        assert sum(rep.witnesses["three_independent"]) % 5 == 0
    if rep.witnesses["maximal"] is not None:
        y = rep.witnesses["maximal"]
        assert not any((x1 + x2 + y) % 5 == 0 for x1 in rep.members for x2 in rep.members)

    rep = indep.verify(7, range(7))
    assert not rep.flags["three_independent"]
    assert rep.witnesses["three_independent"] == (0, 0, 0)


def test_verify_matches_bruteforce_definition():
    for m in (5, 7, 11, 13):
        for size in (1, 2, 3):
            for members in combinations(range(m), size):
                rep = indep.verify(m, members)
                assert rep.flags["three_independent"] == (not violates_a(m, members))
                assert rep.flags["maximal"] == (not violates_b(m, members))


def test_zero_member_fails_independence():
    rep = indep.verify(9, [0, 2])
    assert not rep.flags["three_independent"]
    assert rep.witnesses["three_independent"] == (0, 0, 0)


def test_exhaustive_search_minimum_z5():
    rep = indep.search(5, strategy="exhaustive")
    assert len(rep.members) == 2 and rep.ok
    # all minimum solutions lie in one orbit under unit multiplication
    sols = []
    for pair in combinations(range(5), 2):
        r = indep.verify(5, pair)
        if r.ok:
            sols.append(pair)
    assert sols
    orbit = {tuple(sorted(u * x % 5 for x in (2, 3))) for u in range(1, 5)}
    assert set(sols) <= orbit
    assert rep.members in orbit


def test_search_not_found():
    with pytest.raises(NotFoundError):
        indep.search(1)
    with pytest.raises(NotFoundError) as ei:
        indep.search(13, budget=1, strategy="exhaustive")
    assert ei.value.domain == 13


def test_randomized_deterministic():
    a = indep.search(35, strategy="randomized", seed=9)
    b = indep.search(35, strategy="randomized", seed=9)
    assert a.members == b.members and a.ok


def test_product_candidates_5_7():
    cands = list(indep.product_candidates(5, 7))
    assert cands
    for c in cands:
        assert c.ok
        assert len(c.members) <= 12
        # re-verification is the ground truth
        again = indep.verify(35, c.members)
        assert again.ok
    assert list(indep.product_candidates(1, 35)) == []
    assert list(indep.product_candidates(4, 6)) == []  # not coprime


def test_product_candidates_other_pairs():
    for m1, m2 in [(5, 11), (7, 11)]:
        got = next(iter(indep.product_candidates(m1, m2)), None)
        assert got is not None and got.ok and len(got.members) <= m1 + m2


def test_json():
    rep = indep.verify(5, [2, 3])
    d = rep.to_json()
    assert d == {"m": 5, "members": [2, 3], "flags": rep.flags}
