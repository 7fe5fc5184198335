"""Explicit finite field arithmetic for F_q, q = p^h odd.

Elements are passed around as canonical integer codes: the element whose
little-endian coefficient vector over F_p is (c_0, ..., c_{h-1}) has code
sum(c_i * p**i), an integer in [0, q).  Encoding and decoding are mutually
inverse bijections, so every other module can serialize points and index
dense coverage bitmaps directly by code.

Field objects are immutable after construction and all operations are pure,
so they are safe to share across threads.  q is capped at 2^63; Python
integers make the intermediate products exact regardless.
"""

from __future__ import annotations

import math

from . import ntheory
from .errors import (
    CompositeCharacteristic,
    DivisionByZero,
    EvenCharacteristic,
    NonDivisorM,
    NoSuchElement,
    ReducibleModulus,
    ZeroInput,
    ZeroToNegativePower,
)

Q_CAP = 1 << 63

# exp/log tables are built for extension fields up to this order; beyond it
# every operation falls back to coefficient arithmetic.
_TABLE_LIMIT = 1 << 20


class _FieldBase:
    """Shared operations; subclasses provide add/sub/neg/mul/inv/pow."""

    # -- derived operations ------------------------------------------------

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def chi(self, a: int) -> int:
        """Quadratic character: +1 for a nonzero square, -1 for a non-square, 0 for 0."""
        if a == 0:
            return 0
        return 1 if self.pow(a, (self.q - 1) // 2) == 1 else -1

    def is_mth_power(self, a: int, m: int) -> bool:
        """True iff a lies in the index-m subgroup of the multiplicative group."""
        if a == 0:
            raise ZeroInput("is_mth_power is defined on nonzero elements")
        if m < 1 or (self.q - 1) % m != 0:
            raise NonDivisorM(f"m={m} does not divide q-1={self.q - 1}")
        return self.pow(a, (self.q - 1) // m) == 1

    def find_non_mth_power(self, m: int) -> int:
        """Element with smallest code that is not an m-th power."""
        if m == 1:
            raise NoSuchElement("every element is a 1st power")
        if m < 1 or (self.q - 1) % m != 0:
            raise NonDivisorM(f"m={m} does not divide q-1={self.q - 1}")
        for a in range(1, self.q):
            if not self.is_mth_power(a, m):
                return a
        raise NoSuchElement(f"no non-{m}th-power found")  # unreachable for m > 1

    def elements(self) -> range:
        return range(self.q)

    def units(self) -> range:
        return range(1, self.q)

    def primitive_root(self) -> int:
        """Smallest code generating the multiplicative group (cached)."""
        cached = self._caches.get("primroot")
        if cached is not None:
            return cached
        order = self.q - 1
        prime_divs = [p for p, _ in ntheory.factorize(order)]
        for g in range(2, self.q):
            if all(self.pow(g, order // r) != 1 for r in prime_divs):
                self._caches["primroot"] = g
                return g
        raise NoSuchElement("no primitive root found")  # unreachable

    # -- caches shared by the heavier modules --------------------------------

    def square_table(self):
        """numpy bool array: entry a is True iff a is a nonzero square."""
        tab = self._caches.get("squares")
        if tab is None:
            import numpy as np

            tab = np.zeros(self.q, dtype=bool)
            if self.h == 1:
                w = np.arange(1, self.q, dtype=np.int64)
                tab[(w * w) % self.q] = True
            else:
                for a in self.units():
                    tab[self.mul(a, a)] = True
            self._caches["squares"] = tab
        return tab

    def sqrt_table(self) -> dict:
        """Map from each nonzero square to its root of smallest code (cached)."""
        tab = self._caches.get("sqrts")
        if tab is None:
            tab = {}
            for a in self.units():
                tab.setdefault(self.mul(a, a), a)
            self._caches["sqrts"] = tab
        return tab

    def inverse_table(self):
        """numpy int64 array of inverses (prime fields only; entry 0 unused)."""
        if self.h != 1:
            raise ValueError("inverse_table is a prime-field fast path")
        tab = self._caches.get("invs")
        if tab is None:
            import numpy as np

            p = self.q
            tab = np.zeros(p, dtype=np.int64)
            if p > 1:
                tab[1] = 1
            for i in range(2, p):
                tab[i] = (p - (p // i) * tab[p % i]) % p
            self._caches["invs"] = tab
        return tab

    def __eq__(self, other):
        return (
            isinstance(other, _FieldBase)
            and self.p == other.p
            and self.h == other.h
            and self.modulus == other.modulus
        )

    def __hash__(self):
        return hash((self.p, self.h, self.modulus))


class PrimeField(_FieldBase):
    """F_p for an odd prime p; codes coincide with residues mod p."""

    __slots__ = ("p", "h", "q", "modulus", "_caches")

    def __init__(self, p: int):
        if p == 2:
            raise EvenCharacteristic("characteristic 2 is not supported")
        if not ntheory.is_prime(p):
            raise CompositeCharacteristic(f"{p} is not prime")
        if p > Q_CAP:
            raise ValueError(f"field order above cap 2^63: {p}")
        self.p = p
        self.h = 1
        self.q = p
        self.modulus = ()
        self._caches = {}

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def neg(self, a):
        return -a % self.p

    def mul(self, a, b):
        return a * b % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise DivisionByZero("inverse of zero")
        return pow(a, -1, self.p)

    def pow(self, a, n):
        if n < 0:
            if a % self.p == 0:
                raise ZeroToNegativePower("0 cannot be raised to a negative power")
            return pow(self.inv(a), -n, self.p)
        return pow(a, n, self.p)

    def encode(self, coeffs) -> int:
        if len(coeffs) != 1:
            raise ValueError("prime field elements have one coefficient")
        return coeffs[0] % self.p

    def decode(self, a: int):
        return (a % self.p,)

    def __repr__(self):
        return f"F({self.p})"


class ExtensionField(_FieldBase):
    """F_{q0^e}: polynomials over a base field modulo a monic irreducible.

    Element codes are base-q0 integers whose digits are the little-endian
    coefficients (themselves base-field codes).  The coordinate maps
    to_coords/from_coords realize the basis {1, beta, ..., beta^(e-1)} where
    beta is the residue of the adjoined root; embed(a) = a embeds the base
    field as the constant polynomials.
    """

    __slots__ = ("base", "e", "p", "h", "q", "modulus", "_redc", "_exp", "_log", "_caches")

    def __init__(self, base: _FieldBase, e: int, modulus=None):
        if e < 1:
            raise ValueError("extension degree must be >= 1")
        self.base = base
        self.e = e
        self.p = base.p
        self.h = base.h * e
        self.q = base.q**e
        if self.q > Q_CAP:
            raise ValueError(f"field order above cap 2^63: {self.q}")
        if modulus is None:
            modulus = _smallest_irreducible(base, e)
        else:
            modulus = tuple(c % base.q for c in modulus)
            if len(modulus) != e + 1 or modulus[-1] != 1:
                raise ReducibleModulus(f"modulus must be monic of degree {e}")
            if not _is_irreducible(base, modulus):
                raise ReducibleModulus(f"modulus {list(modulus)} is reducible")
        self.modulus = modulus
        # reduction row: beta^e = -(m_0 + m_1 beta + ... + m_{e-1} beta^{e-1})
        self._redc = tuple(base.neg(c) for c in modulus[:e])
        self._exp = None
        self._log = None
        self._caches = {}
        if e > 1 and self.q <= _TABLE_LIMIT:
            self._build_tables()

    # -- coordinates ---------------------------------------------------------

    def decode(self, a: int):
        q0 = self.base.q
        out = []
        for _ in range(self.e):
            a, r = divmod(a, q0)
            out.append(r)
        return tuple(out)

    def encode(self, coeffs) -> int:
        if len(coeffs) != self.e:
            raise ValueError(f"expected {self.e} coordinates")
        a = 0
        for c in reversed(coeffs):
            a = a * self.base.q + c % self.base.q
        return a

    to_coords = decode
    from_coords = encode

    def embed(self, a: int) -> int:
        return a % self.base.q

    # -- arithmetic ------------------------------------------------------------

    def add(self, a, b):
        q0 = self.base
        return self.encode([q0.add(x, y) for x, y in zip(self.decode(a), self.decode(b))])

    def sub(self, a, b):
        q0 = self.base
        return self.encode([q0.sub(x, y) for x, y in zip(self.decode(a), self.decode(b))])

    def neg(self, a):
        return self.encode([self.base.neg(x) for x in self.decode(a)])

    def mul(self, a, b):
        if self._exp is not None:
            if a == 0 or b == 0:
                return 0
            n = self.q - 1
            return self._exp[(self._log[a] + self._log[b]) % n]
        return self._mul_poly(a, b)

    def _mul_poly(self, a, b):
        q0 = self.base
        e = self.e
        A = self.decode(a)
        B = self.decode(b)
        prod = [0] * (2 * e - 1)
        for i, ai in enumerate(A):
            if ai:
                for j, bj in enumerate(B):
                    if bj:
                        prod[i + j] = q0.add(prod[i + j], q0.mul(ai, bj))
        for k in range(2 * e - 2, e - 1, -1):
            c = prod[k]
            if c:
                prod[k] = 0
                for j, r in enumerate(self._redc):
                    if r:
                        prod[k - e + j] = q0.add(prod[k - e + j], q0.mul(c, r))
        return self.encode(prod[:e])

    def inv(self, a):
        if a == 0:
            raise DivisionByZero("inverse of zero")
        if self._exp is not None:
            n = self.q - 1
            return self._exp[(n - self._log[a]) % n]
        return self.pow(a, self.q - 2)

    def pow(self, a, n):
        if self._exp is not None:
            if a == 0:
                if n < 0:
                    raise ZeroToNegativePower("0 cannot be raised to a negative power")
                return 0 if n else 1
            return self._exp[(self._log[a] * n) % (self.q - 1)]
        if n < 0:
            return self.pow(self.inv(a), -n)
        result = 1
        base = a
        while n:
            if n & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            n >>= 1
        return result

    def chi(self, a):
        if a == 0:
            return 0
        if self._log is not None:
            return 1 if self._log[a] % 2 == 0 else -1
        return super().chi(a)

    def primitive_root(self):
        if self._exp is not None:
            return self._exp[1]
        return super().primitive_root()

    def _build_tables(self):
        order = self.q - 1
        prime_divs = [p for p, _ in ntheory.factorize(order)]
        gen = None
        for g in range(2, self.q):
            ok = True
            for r in prime_divs:
                x = 1
                b, n = g, order // r
                while n:
                    if n & 1:
                        x = self._mul_poly(x, b)
                    b = self._mul_poly(b, b)
                    n >>= 1
                if x == 1:
                    ok = False
                    break
            if ok:
                gen = g
                break
        exp = [1] * order
        for i in range(1, order):
            exp[i] = self._mul_poly(exp[i - 1], gen)
        log = [0] * self.q
        for i, v in enumerate(exp):
            log[v] = i
        self._exp = exp
        self._log = log
        self._caches["primroot"] = gen

    def __repr__(self):
        return f"F({self.p}^{self.h})"


# -- polynomial helpers over an arbitrary base field --------------------------


def _ptrim(A):
    while A and A[-1] == 0:
        A.pop()
    return A


def _pmulmod(F, A, B, M):
    prod = [0] * (len(A) + len(B) - 1) if A and B else []
    for i, ai in enumerate(A):
        if ai:
            for j, bj in enumerate(B):
                if bj:
                    prod[i + j] = F.add(prod[i + j], F.mul(ai, bj))
    return _pdivmod(F, prod, M)


def _pdivmod(F, A, M):
    # remainder of A modulo monic M
    A = list(A)
    dm = len(M) - 1
    while len(A) > dm:
        c = A[-1]
        if c:
            off = len(A) - 1 - dm
            for j in range(dm):
                A[off + j] = F.sub(A[off + j], F.mul(c, M[j]))
        A.pop()
    return _ptrim(A)


def _ppowmod(F, A, n, M):
    result = [1]
    base = _pdivmod(F, list(A), M)
    while n:
        if n & 1:
            result = _pmulmod(F, result, base, M)
        base = _pmulmod(F, base, base, M)
        n >>= 1
    return result


def _pgcd(F, A, B):
    A, B = _ptrim(list(A)), _ptrim(list(B))
    while B:
        lead_inv = F.inv(B[-1])
        Bm = [F.mul(c, lead_inv) for c in B]
        A, B = B, _pdivmod(F, A, Bm)
    return A


def _is_irreducible(F, M) -> bool:
    """Irreducibility of monic M over the field F via the Frobenius criterion."""
    e = len(M) - 1
    if e == 1:
        return True
    x = [0, 1]
    # x^(q^e) == x mod M
    frob = _ppowmod(F, x, F.q**e, M)
    if _ptrim(list(frob)) != [0, 1]:
        return False
    for r, _ in ntheory.factorize(e):
        xq = _ppowmod(F, x, F.q ** (e // r), M)
        diff = list(xq) + [0] * (2 - len(xq))
        diff[1] = F.sub(diff[1], 1)
        if len(_pgcd(F, list(M), diff)) > 1:
            return False
    return True


def _smallest_irreducible(F, e: int):
    """Monic irreducible of degree e over F with the smallest canonical code."""
    q0 = F.q
    for i in range(q0**e):
        coeffs = []
        n = i
        for _ in range(e):
            n, r = divmod(n, q0)
            coeffs.append(r)
        cand = tuple(coeffs) + (1,)
        if _is_irreducible(F, cand):
            return cand
    raise ReducibleModulus(f"no irreducible of degree {e} found")  # unreachable


# -- public constructors -------------------------------------------------------


def build_field(p: int, h: int = 1, modulus=None):
    """F_{p^h} for an odd prime p, deterministic for fixed inputs.

    When h > 1 and no modulus is given, the lexicographically smallest monic
    irreducible of degree h over F_p is selected, so runs are reproducible
    across machines.
    """
    if h < 1:
        raise ValueError("extension degree h must be >= 1")
    base = PrimeField(p)
    if h == 1:
        if modulus:
            raise ReducibleModulus("prime fields take no modulus")
        return base
    return ExtensionField(base, h, modulus)


def build_extension(F, e: int) -> ExtensionField:
    """F_{q^e} over F with the deterministic basis {1, beta, ..., beta^(e-1)}.

    For e = 1 the coordinate maps are the identity on single-entry vectors.
    """
    return ExtensionField(F, e)


def field_to_json(F) -> dict:
    if F.h > 1 and not isinstance(F.base, PrimeField):
        raise ValueError("only fields over a prime base serialize to the field schema")
    return {"p": F.p, "h": F.h, "modulus": list(F.modulus)}


def field_from_json(d: dict):
    return build_field(d["p"], d["h"], d.get("modulus") or None)


# -- m-th power classes ---------------------------------------------------------


def power_classes(F, m: int):
    """The image of x -> x^m on units: (sorted values, multiplicity, representatives).

    representatives[v] is the unit of smallest code with x^m = v.  The
    multiplicity gcd(m, q-1) is the fiber size over each value.
    """
    key = ("powcls", m)
    cached = F._caches.get(key)
    if cached is not None:
        return cached
    d = math.gcd(m, F.q - 1)
    reps = {}
    for x in F.units():
        v = F.pow(x, m)
        if v not in reps:
            reps[v] = x
            if len(reps) * d == F.q - 1:
                break
    values = sorted(reps)
    out = (values, d, reps)
    F._caches[key] = out
    return out
