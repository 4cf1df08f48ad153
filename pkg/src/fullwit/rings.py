"""Exact coefficient rings for certificates.

Three rings appear: cyclotomic integers with p-power denominators (the ring
the construction naturally lives in), their rational subring, and small
prime-power fields of characteristic different from p used as verification
targets.  Values are immutable and kept in a unique normal form, so plain
equality is ring equality.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import NoRootOfUnityError, RingMismatchError
from .gf import FieldSpec, is_prime


@dataclass(frozen=True)
class CyclotomicValue:
    """(sum_j num[j] * zeta^j) / p^den_exp in the power basis 1, zeta, ..., zeta^(p-2).

    Normal form: den_exp == 0, or at least one coordinate not divisible by p.
    The power basis is an integral basis, so the normal form is unique.
    """

    num: tuple[int, ...]
    den_exp: int


@dataclass(frozen=True)
class RationalValue:
    """num / p^den_exp with den_exp == 0 or p not dividing num."""

    num: int
    den_exp: int


# A ring value is one of the dataclasses above, or an int code for prime fields.
RingValue = CyclotomicValue | RationalValue | int


class Ring:
    """Common surface of the three coefficient rings."""

    kind: str
    p: int

    def _key(self):
        raise NotImplementedError

    def __eq__(self, other) -> bool:
        return isinstance(other, Ring) and self._key() == other._key()

    def __hash__(self) -> int:
        return hash(self._key())

    def __repr__(self) -> str:
        return f"<ring {self.selector()}>"

    def selector(self) -> str:
        raise NotImplementedError

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def eq(self, a, b) -> bool:
        self.validate(a)
        self.validate(b)
        return a == b

    def inv_int(self, m: int):
        """Inverse of the integer m, when m is a unit of the ring."""
        raise NotImplementedError

    # Subclasses provide: zero, one, from_int, add, neg, mul, is_zero,
    # validate, p_power, supports_zeta, zeta.


def _p_part(m: int, p: int) -> tuple[int, int]:
    e = 0
    while m and m % p == 0:
        m //= p
        e += 1
    return m, e


class CyclotomicRing(Ring):
    """Z[1/p, zeta] with zeta a primitive p-th root of unity."""

    kind = "cyclotomic"

    def __init__(self, p: int):
        if not is_prime(p):
            raise ValueError(f"p = {p} is not prime")
        self.p = p
        self.dim = p - 1

    def _key(self):
        return ("cyclotomic", self.p)

    def selector(self) -> str:
        return "cyclotomic"

    def validate(self, v) -> None:
        if not isinstance(v, CyclotomicValue) or len(v.num) != self.dim:
            raise RingMismatchError(f"{v!r} is not a value of {self.selector()} (p={self.p})")

    def normalize(self, num, den_exp: int) -> CyclotomicValue:
        num = [int(c) for c in num]
        while den_exp > 0 and all(c % self.p == 0 for c in num):
            num = [c // self.p for c in num]
            den_exp -= 1
        if all(c == 0 for c in num):
            den_exp = 0
        return CyclotomicValue(tuple(num), den_exp)

    def zero(self) -> CyclotomicValue:
        return CyclotomicValue((0,) * self.dim, 0)

    def one(self) -> CyclotomicValue:
        return self.from_int(1)

    def from_int(self, m: int) -> CyclotomicValue:
        return CyclotomicValue((int(m),) + (0,) * (self.dim - 1), 0)

    def is_zero(self, v) -> bool:
        self.validate(v)
        return all(c == 0 for c in v.num)

    def add(self, a, b) -> CyclotomicValue:
        self.validate(a)
        self.validate(b)
        d = max(a.den_exp, b.den_exp)
        sa = self.p ** (d - a.den_exp)
        sb = self.p ** (d - b.den_exp)
        return self.normalize([x * sa + y * sb for x, y in zip(a.num, b.num)], d)

    def neg(self, a) -> CyclotomicValue:
        self.validate(a)
        return CyclotomicValue(tuple(-c for c in a.num), a.den_exp)

    def mul(self, a, b) -> CyclotomicValue:
        self.validate(a)
        self.validate(b)
        p = self.p
        conv = [0] * (2 * self.dim - 1)
        for i, x in enumerate(a.num):
            if x:
                for j, y in enumerate(b.num):
                    conv[i + j] += x * y
        # zeta^p = 1 folds exponents mod p; zeta^(p-1) = -(1 + ... + zeta^(p-2)).
        folded = [0] * p
        for t, c in enumerate(conv):
            folded[t % p] += c
        top = folded[p - 1]
        return self.normalize([folded[j] - top for j in range(self.dim)], a.den_exp + b.den_exp)

    def p_power(self, e: int) -> CyclotomicValue:
        if e >= 0:
            return self.from_int(self.p**e)
        return self.normalize((1,) + (0,) * (self.dim - 1), -e)

    def inv_int(self, m: int) -> CyclotomicValue:
        rest, e = _p_part(abs(m), self.p)
        if m == 0 or rest != 1:
            raise ValueError(f"{m} is not invertible in Z[1/{self.p}, zeta]")
        value = self.p_power(-e)
        return value if m > 0 else self.neg(value)

    @property
    def supports_zeta(self) -> bool:
        return True

    def zeta(self, j: int = 1) -> CyclotomicValue:
        j %= self.p
        if j == self.p - 1:
            return CyclotomicValue((-1,) * self.dim, 0)
        num = [0] * self.dim
        num[j] = 1
        return CyclotomicValue(tuple(num), 0)


class RationalRing(Ring):
    """Z[1/p], the rational subring of the cyclotomic ring."""

    kind = "rational"

    def __init__(self, p: int):
        if not is_prime(p):
            raise ValueError(f"p = {p} is not prime")
        self.p = p

    def _key(self):
        return ("rational", self.p)

    def selector(self) -> str:
        return "rational"

    def validate(self, v) -> None:
        if not isinstance(v, RationalValue):
            raise RingMismatchError(f"{v!r} is not a value of {self.selector()} (p={self.p})")

    def normalize(self, num: int, den_exp: int) -> RationalValue:
        num = int(num)
        if num == 0:
            return RationalValue(0, 0)
        while den_exp > 0 and num % self.p == 0:
            num //= self.p
            den_exp -= 1
        return RationalValue(num, den_exp)

    def zero(self) -> RationalValue:
        return RationalValue(0, 0)

    def one(self) -> RationalValue:
        return RationalValue(1, 0)

    def from_int(self, m: int) -> RationalValue:
        return RationalValue(int(m), 0)

    def is_zero(self, v) -> bool:
        self.validate(v)
        return v.num == 0

    def add(self, a, b) -> RationalValue:
        self.validate(a)
        self.validate(b)
        d = max(a.den_exp, b.den_exp)
        return self.normalize(
            a.num * self.p ** (d - a.den_exp) + b.num * self.p ** (d - b.den_exp), d
        )

    def neg(self, a) -> RationalValue:
        self.validate(a)
        return RationalValue(-a.num, a.den_exp)

    def mul(self, a, b) -> RationalValue:
        self.validate(a)
        self.validate(b)
        return self.normalize(a.num * b.num, a.den_exp + b.den_exp)

    def p_power(self, e: int) -> RationalValue:
        if e >= 0:
            return RationalValue(self.p**e, 0)
        return RationalValue(1, -e)

    def inv_int(self, m: int) -> RationalValue:
        rest, e = _p_part(abs(m), self.p)
        if m == 0 or rest != 1:
            raise ValueError(f"{m} is not invertible in Z[1/{self.p}]")
        return RationalValue(1 if m > 0 else -1, e)

    @property
    def supports_zeta(self) -> bool:
        # zeta_2 = -1 is rational; no other root of unity lives here.
        return self.p == 2

    def zeta(self, j: int = 1) -> RationalValue:
        if self.p != 2:
            raise NoRootOfUnityError(f"Z[1/{self.p}] has no primitive {self.p}-th root of unity")
        return RationalValue(-1 if j % 2 else 1, 0)


class PrimeFieldRing(Ring):
    """F_{l^d} with l != p, as a verification target; values are field codes."""

    kind = "fp"

    def __init__(self, defining_p: int, field: FieldSpec):
        if not is_prime(defining_p):
            raise ValueError(f"p = {defining_p} is not prime")
        if field.p == defining_p:
            raise ValueError(f"p = {defining_p} is not invertible in characteristic {field.p}")
        self.p = defining_p
        self.field = field
        self._zeta: int | None = None

    def _key(self):
        return ("fp", self.p, self.field.p, self.field.k, self.field.modulus)

    def selector(self) -> str:
        f = self.field
        return f"fp:{f.p}" if f.k == 1 else f"fp:{f.p}:{f.k}"

    def validate(self, v) -> None:
        if not isinstance(v, int) or isinstance(v, bool) or not 0 <= v < self.field.q:
            raise RingMismatchError(f"{v!r} is not a code of {self.selector()}")

    def zero(self) -> int:
        return 0

    def one(self) -> int:
        return 1

    def from_int(self, m: int) -> int:
        return int(m) % self.field.p

    def is_zero(self, v) -> bool:
        self.validate(v)
        return v == 0

    def add(self, a, b) -> int:
        self.validate(a)
        self.validate(b)
        return self.field.add(a, b)

    def neg(self, a) -> int:
        self.validate(a)
        return self.field.neg(a)

    def mul(self, a, b) -> int:
        self.validate(a)
        self.validate(b)
        return self.field.mul(a, b)

    def p_power(self, e: int) -> int:
        return self.field.pow(self.from_int(self.p), e)

    def inv_int(self, m: int) -> int:
        code = self.from_int(m)
        if code == 0:
            raise ValueError(f"{m} is not invertible in characteristic {self.field.p}")
        return self.field.inv(code)

    @property
    def supports_zeta(self) -> bool:
        return (self.field.q - 1) % self.p == 0

    def zeta(self, j: int = 1) -> int:
        """zeta maps to the order-p element with the smallest code."""
        if self._zeta is None:
            if not self.supports_zeta:
                raise NoRootOfUnityError(
                    f"{self.selector()} has no element of multiplicative order {self.p}"
                )
            for x in range(2, self.field.q):
                if self.field.pow(x, self.p) == 1:
                    self._zeta = x
                    break
            else:  # pragma: no cover - unreachable once supports_zeta holds
                raise NoRootOfUnityError(self.selector())
        return self.field.pow(self._zeta, j % self.p)


def project_rational(v: CyclotomicValue) -> RationalValue:
    """Coefficient of the basis vector 1, renormalized.

    The power basis is a free basis over Z[1/p], so applying this to every
    coefficient of a valid identity yields a valid identity over Z[1/p].
    """
    p = len(v.num) + 1
    return RationalRing(p).normalize(v.num[0], v.den_exp)


def basis_component(v: CyclotomicValue, j: int) -> RationalValue:
    """Coefficient of the basis vector zeta^j as a rational value."""
    p = len(v.num) + 1
    return RationalRing(p).normalize(v.num[j], v.den_exp)


def convert(v: RingValue, target: Ring) -> RingValue:
    """Apply the canonical ring morphism into `target`.

    Rational values embed everywhere p is invertible; cyclotomic values embed
    wherever a primitive p-th root of unity exists (the length-1 case p = 2 is
    already rational).  Prime-field codes only stay in their own ring.
    """
    if isinstance(v, CyclotomicValue):
        p = len(v.num) + 1
        if target.p != p:
            raise RingMismatchError(f"value has p={p}, target has p={target.p}")
        if isinstance(target, CyclotomicRing):
            target.validate(v)
            return v
        if isinstance(target, RationalRing):
            if p != 2:
                raise NoRootOfUnityError("cyclotomic values with p > 2 have no rational image")
            return target.normalize(v.num[0], v.den_exp)
        acc = target.zero()
        for j, c in enumerate(v.num):
            if c:
                acc = target.add(acc, target.mul(target.from_int(c), target.zeta(j)))
        return target.mul(acc, target.p_power(-v.den_exp))
    if isinstance(v, RationalValue):
        if isinstance(target, RationalRing):
            target.validate(v)
            return v
        if isinstance(target, CyclotomicRing):
            return target.normalize((v.num,) + (0,) * (target.dim - 1), v.den_exp)
        return target.mul(target.from_int(v.num), target.p_power(-v.den_exp))
    if isinstance(target, PrimeFieldRing):
        target.validate(v)
        return v
    raise RingMismatchError(f"cannot convert {v!r} into {target.selector()}")
