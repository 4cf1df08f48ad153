"""Independent brute-force fullness checker.

The two-sided ideal generated by an algebra element is closed as a row space
over a small coefficient field: starting from the element's coordinate
vector, the span is saturated under left and right multiplication by the
group's generators (multiplication by a group element only permutes
coordinates).  Fullness of an idempotent is then literal membership of the
identity vector in the stable span.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

import numpy as np

from .algebra import AlgebraContext, AlgebraElement, subgroup_average
from .errors import ContextMismatchError
from .gf import FieldSpec
from .groups import (
    derived_unipotent,
    enumerate_group,
    transvections,
    unitriangular,
)
from .matrices import Matrix, encode_key, identity, mat_mul
from .rings import PrimeFieldRing


class _Echelon:
    """Incrementally maintained reduced row-echelon basis over F_{l^d}."""

    def __init__(self, field: FieldSpec, length: int):
        self.field = field
        self.length = length
        self.rows: list[np.ndarray] = []
        self.pivots: list[int] = []
        if field.k == 1:
            self._mul_table = None
            self._sub_table = None
        else:
            self._mul_table = field.np_table("mul")
            self._sub_table = field.np_table("sub")

    def _sub_scaled(self, vec: np.ndarray, c: int, row: np.ndarray) -> np.ndarray:
        if self._mul_table is None:
            return (vec - c * row) % self.field.p
        return self._sub_table[vec, self._mul_table[c, row]]

    def _scale(self, vec: np.ndarray, c: int) -> np.ndarray:
        if self._mul_table is None:
            return (vec * c) % self.field.p
        return self._mul_table[c, vec]

    def reduce(self, vec: np.ndarray) -> np.ndarray:
        for pivot, row in zip(self.pivots, self.rows):
            c = int(vec[pivot])
            if c:
                vec = self._sub_scaled(vec, c, row)
        return vec

    def insert(self, vec: np.ndarray) -> bool:
        """Reduce vec against the basis; grow the basis if a new pivot appears."""
        vec = self.reduce(vec)
        support = np.nonzero(vec)[0]
        if len(support) == 0:
            return False
        pivot = int(support[0])
        vec = self._scale(vec, self.field.inv(int(vec[pivot])))
        for i, row in enumerate(self.rows):
            c = int(row[pivot])
            if c:
                self.rows[i] = self._sub_scaled(row, c, vec)
        self.rows.append(vec)
        self.pivots.append(pivot)
        return True

    def contains(self, vec: np.ndarray) -> bool:
        return not np.any(self.reduce(vec))

    @property
    def dimension(self) -> int:
        return len(self.rows)


class EnumeratedGroup:
    """A fully enumerated matrix group with its generator set and key index."""

    def __init__(self, kind: str, spec: FieldSpec, n: int, cap: int | None = None):
        if kind not in ("sl", "gl"):
            raise ValueError(f"oracle groups are 'sl' or 'gl', got {kind!r}")
        self.kind = kind
        self.spec = spec
        self.n = n
        self.elements = enumerate_group(kind, spec, n, cap)
        self.index = {encode_key(spec, m): i for i, m in enumerate(self.elements)}
        gens = list(transvections(spec, n))
        if kind == "gl" and spec.q > 2:
            gamma = _primitive_element(spec)
            gens.append(
                tuple(
                    tuple(gamma if i == j == 0 else (1 if i == j else 0) for j in range(n))
                    for i in range(n)
                )
            )
        self.generators = tuple(gens)

    @property
    def order(self) -> int:
        return len(self.elements)

    def describe(self) -> str:
        return f"{self.kind.upper()}{self.n}(F_{self.spec.q})"

    def vector(self, x: AlgebraElement) -> np.ndarray:
        vec = np.zeros(self.order, dtype=np.int32)
        for key, value in x.terms.items():
            pos = self.index.get(key)
            if pos is None:
                raise ValueError("element support is not contained in the group")
            vec[pos] = value
        return vec

    def action_scatter(self, g: Matrix, side: str) -> np.ndarray:
        """Position map of multiplication by g: out[scatter[j]] = in[j]."""
        spec = self.spec
        if side == "left":
            images = (mat_mul(spec, g, m) for m in self.elements)
        else:
            images = (mat_mul(spec, m, g) for m in self.elements)
        return np.array([self.index[encode_key(spec, m)] for m in images], dtype=np.intp)


def _primitive_element(spec: FieldSpec) -> int:
    target = spec.q - 1
    for x in range(2, spec.q):
        order = 1
        acc = x
        while acc != 1:
            acc = spec.mul(acc, x)
            order += 1
        if order == target:
            return x
    raise AssertionError("multiplicative group of a finite field is cyclic")


@dataclass
class IdealSpan:
    """Stable span of a two-sided ideal, as a reduced row-echelon basis."""

    group: EnumeratedGroup
    echelon: _Echelon

    @property
    def dimension(self) -> int:
        return self.echelon.dimension

    def contains(self, x: AlgebraElement) -> bool:
        return self.echelon.contains(self.group.vector(x))

    def contains_identity(self) -> bool:
        vec = np.zeros(self.group.order, dtype=np.int32)
        vec[self.group.index[encode_key(self.group.spec, identity(self.group.n))]] = 1
        return self.echelon.contains(vec)


def _check_element(group: EnumeratedGroup, x: AlgebraElement) -> None:
    ring = x.ctx.ring
    if not isinstance(ring, PrimeFieldRing):
        raise ContextMismatchError("the oracle works over prime-power coefficient fields only")
    if x.ctx.spec != group.spec or x.ctx.n != group.n:
        raise ContextMismatchError("element context does not match the group")


def two_sided_ideal(group: EnumeratedGroup, x: AlgebraElement) -> IdealSpan:
    """Close span{x} under left/right multiplication by the group generators.

    Multiplying by a fixed group element permutes the coordinate basis, so
    each closure step is one permutation plus one reduction.  The result
    equals span{g.x.h over all g, h} because the generators generate.
    """
    _check_element(group, x)
    field = x.ctx.ring.field
    echelon = _Echelon(field, group.order)
    scatters = []
    for g in group.generators:
        scatters.append(group.action_scatter(g, "left"))
        scatters.append(group.action_scatter(g, "right"))
    worklist: list[np.ndarray] = []
    start = group.vector(x)
    if echelon.insert(start.copy()):
        worklist.append(start)
    while worklist:
        row = worklist.pop()
        for scatter in scatters:
            moved = np.empty_like(row)
            moved[scatter] = row
            snapshot = moved.copy()
            if echelon.insert(moved):
                worklist.append(snapshot)
    return IdealSpan(group, echelon)


def is_full(group: EnumeratedGroup, x: AlgebraElement) -> bool:
    """Whether the two-sided ideal generated by x contains the identity."""
    return two_sided_ideal(group, x).contains_identity()


def corner_dimension(group: EnumeratedGroup, e: AlgebraElement) -> int:
    """Rank of {e.delta_g.e : g in G}, the dimension of the corner algebra eRGe."""
    _check_element(group, e)
    if e * e != e:
        raise ValueError("corner dimensions are defined for idempotents")
    ctx = e.ctx
    echelon = _Echelon(ctx.ring.field, group.order)
    for m in group.elements:
        product = e * ctx.delta(m) * e
        echelon.insert(group.vector(product))
    return echelon.dimension


@dataclass
class OracleResult:
    group: str
    order: int
    field: str
    idempotent: str
    full: bool
    ideal_dim: int
    corner_dim: int
    elapsed: float


def run_oracle(
    kind: str,
    spec: FieldSpec,
    n: int,
    ring: PrimeFieldRing,
    idempotent: str = "e",
    cap: int | None = None,
) -> OracleResult:
    """Build the group and idempotent, then report fullness and dimensions."""
    start = time.perf_counter()
    group = EnumeratedGroup(kind, spec, n, cap)
    ctx = AlgebraContext(spec, n, ring)
    if idempotent == "e":
        mats = derived_unipotent(spec, n, cap)
    elif idempotent == "u-avg":
        mats = unitriangular(spec, n, cap)
    else:
        raise ValueError(f"unknown idempotent tag {idempotent!r}")
    x = subgroup_average(ctx, mats)
    span = two_sided_ideal(group, x)
    full = span.contains_identity()
    corner = corner_dimension(group, x)
    return OracleResult(
        group=group.describe(),
        order=group.order,
        field=ring.selector(),
        idempotent=idempotent,
        full=full,
        ideal_dim=span.dimension,
        corner_dim=corner,
        elapsed=time.perf_counter() - start,
    )
