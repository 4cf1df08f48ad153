"""Exact arithmetic in small finite fields F_q, q = p^k.

Elements are integer codes in [0, q): the base-p digits of a code are the
coefficients of the representing polynomial, constant term first.  All
operations go through lookup tables built at construction time, so a
FieldSpec doubles as the single source of truth for one concrete field.
"""

from __future__ import annotations

import itertools

from .errors import SizeGuardError

# Largest q for which arithmetic tables are built.  Everything in this
# package is desk scale; bigger fields would blow the q*q tables anyway.
TABLE_LIMIT = 512


def is_prime(m: int) -> bool:
    if m < 2:
        return False
    f = 2
    while f * f <= m:
        if m % f == 0:
            return False
        f += 1
    return True


def _poly_mul(a, b, p):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return out


def _poly_rem(poly, modulus, p):
    """Remainder of poly modulo a monic modulus, coefficients low-degree first."""
    work = [c % p for c in poly]
    deg = len(modulus) - 1
    for i in range(len(work) - 1, deg - 1, -1):
        c = work[i]
        if c:
            for j in range(deg + 1):
                work[i - deg + j] = (work[i - deg + j] - c * modulus[j]) % p
    return tuple(work[:deg])


def _is_irreducible(modulus, p) -> bool:
    """Trial division by every monic polynomial of degree <= deg/2."""
    k = len(modulus) - 1
    if k == 1:
        return True
    for d in range(1, k // 2 + 1):
        for tail in itertools.product(range(p), repeat=d):
            divisor = tail + (1,)
            if not any(_poly_rem(modulus, divisor, p)):
                return False
    return True


def find_modulus(p: int, k: int) -> tuple[int, ...]:
    """Lexicographically smallest monic irreducible polynomial of degree k over F_p.

    Coefficient tuples are low-degree first and compared in that order, so the
    choice is deterministic and recorded verbatim in certificates.
    """
    if not is_prime(p):
        raise ValueError(f"p = {p} is not prime")
    if k < 1:
        raise ValueError("degree must be at least 1")
    for tail in itertools.product(range(p), repeat=k):
        candidate = tail + (1,)
        if _is_irreducible(candidate, p):
            return candidate
    raise AssertionError("irreducible polynomials exist in every degree")


class FieldSpec:
    """A concrete presentation of F_q with lookup tables for all arithmetic."""

    def __init__(self, p: int, k: int, modulus: tuple[int, ...] | None = None):
        if not is_prime(p):
            raise ValueError(f"p = {p} is not prime")
        if k < 1:
            raise ValueError("extension degree must be at least 1")
        q = p**k
        if q > TABLE_LIMIT:
            raise SizeGuardError(f"field size {q} exceeds table limit {TABLE_LIMIT}")
        if modulus is None:
            modulus = find_modulus(p, k)
        modulus = tuple(int(c) % p for c in modulus[:-1]) + (int(modulus[-1]),)
        if len(modulus) != k + 1 or modulus[-1] != 1:
            raise ValueError("modulus must be monic of degree k")
        if not _is_irreducible(modulus, p):
            raise ValueError(f"modulus {modulus} is reducible over F_{p}")
        self.p = p
        self.k = k
        self.q = q
        self.modulus = modulus
        self._build_tables()
        self._np_cache: dict[str, object] = {}

    def _build_tables(self) -> None:
        p, k, q = self.p, self.k, self.q
        digits = [self.decode(c) for c in range(q)]
        add = [0] * (q * q)
        mul = [0] * (q * q)
        for a in range(q):
            da = digits[a]
            for b in range(a, q):
                db = digits[b]
                s = self.encode(tuple((x + y) % p for x, y in zip(da, db)))
                m = self.encode(_poly_rem(_poly_mul(da, db, p), self.modulus, p))
                add[a * q + b] = add[b * q + a] = s
                mul[a * q + b] = mul[b * q + a] = m
        neg = [0] * q
        inv = [0] * q
        for a in range(q):
            neg[a] = self.encode(tuple((-x) % p for x in digits[a]))
        for a in range(1, q):
            for b in range(1, q):
                if mul[a * q + b] == 1:
                    inv[a] = b
                    break
        self._add = add
        self._mul = mul
        self._neg = neg
        self._inv = inv
        self._trace = [self._compute_trace(a) for a in range(q)]

    def _compute_trace(self, a: int) -> int:
        acc = a
        cur = a
        for _ in range(self.k - 1):
            cur = self.pow(cur, self.p)
            acc = self._add[acc * self.q + cur]
        assert acc < self.p, "trace must land in the prime subfield"
        return acc

    def decode(self, code: int) -> tuple[int, ...]:
        out = []
        for _ in range(self.k):
            code, r = divmod(code, self.p)
            out.append(r)
        return tuple(out)

    def encode(self, digits) -> int:
        code = 0
        for c in reversed(digits):
            code = code * self.p + c
        return code

    def elements(self) -> range:
        return range(self.q)

    def add(self, a: int, b: int) -> int:
        return self._add[a * self.q + b]

    def sub(self, a: int, b: int) -> int:
        return self._add[a * self.q + self._neg[b]]

    def neg(self, a: int) -> int:
        return self._neg[a]

    def mul(self, a: int, b: int) -> int:
        return self._mul[a * self.q + b]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        return self._inv[a]

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            a = self.inv(a)
            e = -e
        out = 1
        while e:
            if e & 1:
                out = self._mul[out * self.q + a]
            a = self._mul[a * self.q + a]
            e >>= 1
        return out

    def trace(self, a: int) -> int:
        """Trace to the prime subfield, returned as an integer in [0, p)."""
        return self._trace[a]

    def np_table(self, name: str):
        """Lazy numpy views of the arithmetic tables (used by the oracle)."""
        cached = self._np_cache.get(name)
        if cached is None:
            import numpy as np

            q = self.q
            if name == "mul":
                cached = np.array(self._mul, dtype=np.int32).reshape(q, q)
            elif name == "sub":
                neg = self._neg
                flat = [self._add[a * q + neg[b]] for a in range(q) for b in range(q)]
                cached = np.array(flat, dtype=np.int32).reshape(q, q)
            else:
                raise KeyError(name)
            self._np_cache[name] = cached
        return cached

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, FieldSpec)
            and self.p == other.p
            and self.k == other.k
            and self.modulus == other.modulus
        )

    def __hash__(self) -> int:
        return hash((self.p, self.k, self.modulus))

    def __repr__(self) -> str:
        return f"FieldSpec(p={self.p}, k={self.k}, modulus={self.modulus})"


def field(p: int, k: int = 1) -> FieldSpec:
    """F_{p^k} with the canonical (lexicographically smallest) modulus."""
    return FieldSpec(p, k)
