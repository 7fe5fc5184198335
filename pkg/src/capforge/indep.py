"""Maximal 3-independent subsets of Z_m.

A subset M is 3-independent when no triple of its elements (repetition
allowed) sums to zero, and maximal when every outside residue y admits
x1, x2 in M with x1 + x2 + y = 0; it is good when that pair can always be
chosen with x1 != x2.  verify() is the ground truth here; every construction
below is only a candidate generator feeding it.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from itertools import combinations

from .errors import NotFoundError


@dataclass(frozen=True)
class IndepSet:
    m: int
    members: tuple
    flags: dict
    witnesses: dict

    @property
    def ok(self) -> bool:
        return self.flags["three_independent"] and self.flags["maximal"]

    def to_json(self) -> dict:
        return {"m": self.m, "members": list(self.members), "flags": dict(self.flags)}

    @staticmethod
    def from_json(d: dict) -> "IndepSet":
        rep = verify(d["m"], d["members"])
        return rep


def verify(m: int, members) -> IndepSet:
    """Check the definition clauses exhaustively and return flags + witnesses.

    Triples with repeated elements count in the independence clause; residue 0
    is allowed as a member (and immediately fails independence).
    """
    mem = tuple(sorted(set(x % m for x in members)))
    mem_set = set(mem)

    indep_witness = None
    for i, x1 in enumerate(mem):
        for j in range(i, len(mem)):
            x2 = mem[j]
            for k in range(j, len(mem)):
                x3 = mem[k]
                if (x1 + x2 + x3) % m == 0:
                    indep_witness = (x1, x2, x3)
                    break
            if indep_witness:
                break
        if indep_witness:
            break

    all_sums = set()
    distinct_sums = set()
    for i, x1 in enumerate(mem):
        for x2 in mem[i:]:
            s = (x1 + x2) % m
            all_sums.add(s)
            if x1 != x2:
                distinct_sums.add(s)

    maximal_witness = None
    good_witness = None
    for y in range(m):
        if y in mem_set:
            continue
        target = (-y) % m
        if target not in all_sums:
            if maximal_witness is None:
                maximal_witness = y
        elif target not in distinct_sums:
            if good_witness is None:
                good_witness = y

    maximal = maximal_witness is None
    flags = {
        "three_independent": indep_witness is None,
        "maximal": maximal,
        "good": maximal and good_witness is None,
    }
    witnesses = {
        "three_independent": indep_witness,
        "maximal": maximal_witness,
        "good": good_witness,
    }
    return IndepSet(m=m, members=mem, flags=flags, witnesses=witnesses)


def _greedy_once(m: int, order) -> list:
    """Add residues in the given order while 3-independence survives."""
    chosen = []
    for x in order:
        ok = True
        ext = chosen + [x]
        n = len(ext)
        for i in range(n):
            a = ext[i]
            if (a + 2 * x) % m == 0 or (2 * a + x) % m == 0:
                ok = False
                break
            for j in range(i, n):
                if (a + ext[j] + x) % m == 0:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            chosen.append(x)
    return chosen


def search(m: int, budget: int | None = None, strategy: str = "exhaustive", seed: int = 0,
           attempts: int = 200) -> IndepSet:
    """Find a verified maximal 3-independent subset of Z_m.

    exhaustive enumerates subsets by size then lexicographic rank, so the
    result is a minimum-size example; greedy is a single deterministic pass;
    randomized retries seeded shuffles.  budget bounds the subset size.
    Raises NotFoundError when the budget is exhausted.
    """
    if m <= 1:
        raise NotFoundError(f"no maximal 3-independent subset exists in Z_{m}", domain=0)
    cap = min(budget, m) if budget else m
    if strategy == "exhaustive":
        scanned = 0
        for size in range(1, cap + 1):
            for combo in combinations(range(m), size):
                scanned += 1
                rep = verify(m, combo)
                if rep.ok:
                    return rep
        raise NotFoundError(f"no set of size <= {cap} in Z_{m}", domain=scanned)
    if strategy == "greedy":
        rep = verify(m, _greedy_once(m, range(m)))
        if rep.ok and len(rep.members) <= cap:
            return rep
        raise NotFoundError(f"greedy pass failed in Z_{m}", domain=1)
    if strategy == "randomized":
        rng = random.Random(seed)
        order = list(range(m))
        for trial in range(attempts):
            rng.shuffle(order)
            rep = verify(m, _greedy_once(m, order))
            if rep.ok and len(rep.members) <= cap:
                return rep
        raise NotFoundError(f"randomized search failed in Z_{m}", domain=attempts)
    raise ValueError(f"unknown strategy {strategy!r}")


def crt_map(m1: int, m2: int):
    """Isomorphism Z_{m1} x Z_{m2} -> Z_{m1 m2} for coprime moduli."""
    m = m1 * m2
    inv1 = pow(m2, -1, m1) * m2 % m
    inv2 = pow(m1, -1, m2) * m1 % m

    def phi(x: int, y: int) -> int:
        return (x * inv1 + y * inv2) % m

    return phi


def product_candidates(m1: int, m2: int):
    """Structured candidates in Z_{m1 m2} of size <= m1 + m2, verify-filtered.

    Yields sets of the shape (A x {b}) union ({a} x B) mapped through the CRT,
    with A = Z_{m1} minus {-2a} and B = Z_{m2} minus {-2b}; only candidates
    whose verification confirms maximal 3-independence are emitted.  The
    stream may be empty for degenerate inputs.
    """
    if m1 < 3 or m2 < 3 or math.gcd(m1, m2) != 1:
        return
    phi = crt_map(m1, m2)
    seen = set()
    for a in range(1, m1):
        for b in range(1, m2):
            A = [x for x in range(m1) if x != (-2 * a) % m1]
            B = [y for y in range(m2) if y != (-2 * b) % m2]
            members = {phi(x, b) for x in A} | {phi(a, y) for y in B}
            key = tuple(sorted(members))
            if key in seen:
                continue
            seen.add(key)
            rep = verify(m1 * m2, members)
            if rep.ok and len(rep.members) <= m1 + m2:
                yield rep
