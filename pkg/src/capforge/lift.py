"""Lifting plane arcs to caps in AG(N,q), N divisible by 4, and the code export.

A plane arc A lifts to the cap {(alpha, alpha^2, u, v)} where alpha runs over
the extension field of order q' = q^((N-2)/2) written in coordinates over F_q
and (u, v) runs over A.  The lift is always a cap; it is complete exactly when
A is bicovering, which module verify checks independently.

A cap of size k in dimension N is equivalent to a parity-check matrix of a
linear [k, k-N-1, 4] code: columns are the homogenized points (1 : x1 : ... :
xN) and minimum distance >= 4 is the statement that no 3 columns are linearly
dependent.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass

from .errors import BadDimension, NotACap
from .field import build_extension, field_to_json
from .plane import is_cap, pointN_index


@dataclass(frozen=True)
class LiftedCap:
    field: object
    N: int
    extension: object
    arc_points: tuple
    points: tuple

    @property
    def qprime(self) -> int:
        return self.extension.q

    def to_json(self) -> dict:
        d = field_to_json(self.field)
        return {
            "q": self.field.q,
            "p": d["p"],
            "h": d["h"],
            "modulus": d["modulus"],
            "N": self.N,
            "qprime": self.qprime,
            "arc": [list(p) for p in self.arc_points],
            "points": [list(p) for p in self.points],
        }


def lift_arc(F, points, N: int) -> LiftedCap:
    """The cap C_A = {(alpha, alpha^2, u, v)} in AG(N,q) over the arc A.

    Size is exactly |A| * q^((N-2)/2).  alpha and alpha^2 are written in the
    deterministic basis of the degree-(N-2)/2 extension, so the construction
    is reproducible; completeness is basis-independent.
    """
    if N < 4 or N % 4 != 0:
        raise BadDimension(f"lifting needs N >= 4 with N divisible by 4, got N={N}")
    e = (N - 2) // 2
    ext = build_extension(F, e)
    arc = tuple(sorted(set(points)))
    lifted = []
    for alpha in range(ext.q):
        ca = ext.to_coords(alpha)
        c2 = ext.to_coords(ext.mul(alpha, alpha))
        head = ca + c2
        for uv in arc:
            lifted.append(head + uv)
    lifted.sort(key=lambda P: pointN_index(F, P))
    return LiftedCap(field=F, N=N, extension=ext, arc_points=arc, points=tuple(lifted))


@dataclass(frozen=True)
class ParityCheckMatrix:
    """Columns (1, x1, ..., xN) over F_q; rows = N+1, one column per cap point."""

    field: object
    nrows: int
    columns: tuple

    @property
    def k(self) -> int:
        return len(self.columns)

    @property
    def code_params(self):
        # [k, k - N - 1, 4]
        return (self.k, self.k - self.nrows, 4)

    def rows(self):
        return [[col[r] for col in self.columns] for r in range(self.nrows)]

    def decode_points(self):
        return [col[1:] for col in self.columns]

    def to_json(self) -> dict:
        k, dim, dist = self.code_params
        return {
            "field": field_to_json(self.field),
            "rows": self.nrows,
            "cols": self.k,
            "code": [k, dim, dist],
            "columns": [list(c) for c in self.columns],
            "source_hash": self.source_hash(),
        }

    def to_csv(self) -> str:
        return "\n".join(",".join(str(v) for v in row) for row in self.rows()) + "\n"

    def source_hash(self) -> str:
        blob = json.dumps([list(c[1:]) for c in self.columns]).encode()
        return hashlib.sha256(blob).hexdigest()


def export_parity_check(F, points) -> ParityCheckMatrix:
    """Parity-check matrix of the code equivalent to the cap."""
    pts = sorted(set(points))
    if pts:
        ok, witness = is_cap(F, pts)
        if not ok:
            raise NotACap(f"input is not a cap, collinear triple {witness}", witness=witness)
    nrows = (len(pts[0]) + 1) if pts else 0
    columns = tuple((1,) + tuple(p) for p in pts)
    return ParityCheckMatrix(field=F, nrows=nrows, columns=columns)


def _rank3(F, c1, c2, c3) -> int:
    """Rank of the matrix with columns c1, c2, c3 via Gaussian elimination."""
    rows = [[a, b, c] for a, b, c in zip(c1, c2, c3)]
    rank = 0
    ncols = 3
    for col in range(ncols):
        pivot = None
        for r in range(rank, len(rows)):
            if rows[r][col] != 0:
                pivot = r
                break
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        inv = F.inv(rows[rank][col])
        rows[rank] = [F.mul(inv, v) for v in rows[rank]]
        for r in range(len(rows)):
            if r != rank and rows[r][col] != 0:
                f = rows[r][col]
                rows[r] = [F.sub(v, F.mul(f, w)) for v, w in zip(rows[r], rows[rank])]
        rank += 1
        if rank == ncols:
            break
    return rank


def check_distance_ge4(H: ParityCheckMatrix):
    """Minimum distance >= 4 test: no 3 columns linearly dependent.

    Exhaustive over column pairs (proportionality) then triples (rank), with
    early exit; the witness is the offending index tuple.
    """
    F = H.field
    cols = H.columns
    n = len(cols)
    # proportional pair = distance <= 2
    seen = {}
    for i, c in enumerate(cols):
        lead = next((v for v in c if v != 0), None)
        if lead is None:
            return False, (i,)  # zero column
        inv = F.inv(lead)
        key = tuple(F.mul(inv, v) for v in c)
        if key in seen:
            return False, (seen[key], i)
        seen[key] = i
    for i in range(n - 2):
        for j in range(i + 1, n - 1):
            for k in range(j + 1, n):
                if _rank3(F, cols[i], cols[j], cols[k]) < 3:
                    return False, (i, j, k)
    return True, None


def cap_from_json(d: dict) -> LiftedCap:
    from .field import field_from_json

    F = field_from_json(d)
    ext = build_extension(F, (d["N"] - 2) // 2)
    return LiftedCap(
        field=F,
        N=d["N"],
        extension=ext,
        arc_points=tuple(tuple(p) for p in d["arc"]),
        points=tuple(tuple(p) for p in d["points"]),
    )
