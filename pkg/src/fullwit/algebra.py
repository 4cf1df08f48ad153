"""Sparse exact arithmetic in the group algebra R[G] for matrices over F_q.

Elements are finitely supported maps from canonical matrix keys to ring
values.  Multiplication is plain convolution over the supports, which is all
the construction needs: every element in play (subgroup averages, character
idempotents, certificate partial sums) has small support.
"""

from __future__ import annotations

from .errors import ContextMismatchError, NotASubgroupError
from .gf import FieldSpec
from .groups import char_exponent, translation, translation_vector
from .matrices import Matrix, decode_key, encode_key, identity, mat_det, mat_inv, mat_mul
from .rings import Ring


class AlgebraContext:
    """Ambient data for group-algebra elements: matrix size, entry field, coefficient ring."""

    def __init__(self, spec: FieldSpec, n: int, ring: Ring):
        self.spec = spec
        self.n = n
        self.ring = ring

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, AlgebraContext)
            and self.spec == other.spec
            and self.n == other.n
            and self.ring == other.ring
        )

    def __hash__(self) -> int:
        return hash((self.spec, self.n, self.ring))

    def __repr__(self) -> str:
        return f"AlgebraContext(q={self.spec.q}, n={self.n}, ring={self.ring.selector()})"

    def encode(self, m: Matrix) -> int:
        return encode_key(self.spec, m)

    def decode(self, key: int) -> Matrix:
        return decode_key(self.spec, self.n, key)

    def zero(self) -> AlgebraElement:
        return AlgebraElement(self, {})

    def one(self) -> AlgebraElement:
        return self.delta(identity(self.n))

    def delta(self, m: Matrix) -> AlgebraElement:
        return self.from_pairs([(m, self.ring.one())])

    def from_pairs(self, pairs) -> AlgebraElement:
        """Element from (matrix, value) pairs; checks invertibility, merges duplicates."""
        ring = self.ring
        terms: dict[int, object] = {}
        for m, v in pairs:
            ring.validate(v)
            if mat_det(self.spec, m) == 0:
                raise ValueError(f"support matrix {m} is singular")
            key = self.encode(m)
            prev = terms.get(key)
            terms[key] = v if prev is None else ring.add(prev, v)
        return AlgebraElement(self, {k: v for k, v in terms.items() if not ring.is_zero(v)})


class AlgebraElement:
    """Immutable sparse element of R[G]; do not mutate `terms` after creation."""

    __slots__ = ("ctx", "terms")

    def __init__(self, ctx: AlgebraContext, terms: dict):
        self.ctx = ctx
        self.terms = terms

    def _check(self, other: AlgebraElement) -> None:
        if not isinstance(other, AlgebraElement) or self.ctx != other.ctx:
            raise ContextMismatchError("operands live over different algebra contexts")

    @property
    def support_size(self) -> int:
        return len(self.terms)

    def coeff(self, m: Matrix):
        return self.terms.get(self.ctx.encode(m), self.ctx.ring.zero())

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, AlgebraElement)
            and self.ctx == other.ctx
            and self.terms == other.terms
        )

    def __hash__(self):
        raise TypeError("AlgebraElement is not hashable")

    def __add__(self, other: AlgebraElement) -> AlgebraElement:
        self._check(other)
        ring = self.ctx.ring
        out = dict(self.terms)
        for k, v in other.terms.items():
            prev = out.get(k)
            s = v if prev is None else ring.add(prev, v)
            if ring.is_zero(s):
                out.pop(k, None)
            else:
                out[k] = s
        return AlgebraElement(self.ctx, out)

    def __neg__(self) -> AlgebraElement:
        ring = self.ctx.ring
        return AlgebraElement(self.ctx, {k: ring.neg(v) for k, v in self.terms.items()})

    def __sub__(self, other: AlgebraElement) -> AlgebraElement:
        return self + (-other)

    def __mul__(self, other: AlgebraElement) -> AlgebraElement:
        """Convolution: (x*y)(g) = sum over factorizations g = a.b of x(a) y(b)."""
        self._check(other)
        ctx = self.ctx
        ring = ctx.ring
        spec = ctx.spec
        rhs = [(ctx.decode(k), v) for k, v in other.terms.items()]
        acc: dict[int, object] = {}
        for k1, v1 in self.terms.items():
            a = ctx.decode(k1)
            for b, v2 in rhs:
                key = encode_key(spec, mat_mul(spec, a, b))
                c = ring.mul(v1, v2)
                prev = acc.get(key)
                acc[key] = c if prev is None else ring.add(prev, c)
        return AlgebraElement(ctx, {k: v for k, v in acc.items() if not ring.is_zero(v)})

    def scale(self, value) -> AlgebraElement:
        ring = self.ctx.ring
        ring.validate(value)
        out = {}
        for k, v in self.terms.items():
            c = ring.mul(value, v)
            if not ring.is_zero(c):
                out[k] = c
        return AlgebraElement(self.ctx, out)

    def conjugate(self, g: Matrix) -> AlgebraElement:
        """Support map m -> g m g^(-1); coefficients unchanged."""
        ctx = self.ctx
        spec = ctx.spec
        g_inv = mat_inv(spec, g)
        out = {}
        for k, v in self.terms.items():
            m = ctx.decode(k)
            out[encode_key(spec, mat_mul(spec, mat_mul(spec, g, m), g_inv))] = v
        return AlgebraElement(ctx, out)

    def __repr__(self) -> str:
        return f"AlgebraElement(support={self.support_size})"


def subgroup_average(ctx: AlgebraContext, mats) -> AlgebraElement:
    """(1/|S|) sum of delta_s over a subgroup S; the classic averaging idempotent.

    S is checked to be multiplicatively closed, which for a finite set of
    invertible matrices already forces identity and inverses.
    """
    mats = list(mats)
    spec = ctx.spec
    keys = {encode_key(spec, m) for m in mats}
    if len(keys) != len(mats) or not mats:
        raise NotASubgroupError("input has duplicates or is empty")
    if not _closed_under_products(spec, mats, keys):
        raise NotASubgroupError("set is not closed under multiplication")
    try:
        inv_size = ctx.ring.inv_int(len(mats))
    except ValueError as exc:
        raise NotASubgroupError(str(exc)) from exc
    return ctx.from_pairs([(m, inv_size) for m in mats])


def _closed_under_products(spec: FieldSpec, mats, keys) -> bool:
    n = len(mats[0])
    q = spec.q
    if spec.k == 1 and len(mats) > 64 and q ** (n * n) < 2**62:
        import numpy as np

        arr = np.array(mats, dtype=np.int64)
        place = q ** np.arange(n * n - 1, -1, -1, dtype=np.int64)
        chunk = max(1, (1 << 20) // (len(mats) * n * n))
        for start in range(0, len(mats), chunk):
            block = arr[start : start + chunk]
            prod = np.matmul(block[:, None, :, :], arr[None, :, :, :]) % q
            prod_keys = prod.reshape(-1, n * n) @ place
            if not set(prod_keys.tolist()) <= keys:
                return False
        return True
    return all(encode_key(spec, mat_mul(spec, a, b)) in keys for a in mats for b in mats)


def character_idempotent(ctx: AlgebraContext, label) -> AlgebraElement:
    """Primitive idempotent of R[V_n] for the additive character with this label."""
    spec = ctx.spec
    n = ctx.n
    ring = ctx.ring
    if len(label) != n - 1:
        raise ValueError(f"label length {len(label)} does not match n = {n}")
    inv_size = ring.p_power(-spec.k * (n - 1))
    pairs = []
    for v in _translation_group(spec, n):
        w = translation_vector(v)
        value = ring.mul(ring.zeta(-char_exponent(spec, label, w)), inv_size)
        pairs.append((v, value))
    return ctx.from_pairs(pairs)


def _translation_group(spec: FieldSpec, n: int):
    import itertools

    return [translation(n, w) for w in itertools.product(range(spec.q), repeat=n - 1)]
