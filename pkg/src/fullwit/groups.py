"""Subgroups of SL_n(F_q) used by the certificate construction.

Provides ordered enumerations of the unitriangular group, its derived
subgroup (zero first superdiagonal), the last-column translation groups, the
block stabilizer SL_{n-1} x translations, and SL_n/GL_n themselves; plus the
additive characters of the translation group and the deterministic solver
that transports the reference character to any nonzero label.

Enumerations are guarded by a cap (default 25000, overridable through the
FULLWIT_CAP environment variable) and returned as tuples sorted by canonical
matrix key.
"""

from __future__ import annotations

import functools
import itertools
import os
from collections import deque

from .errors import SizeGuardError
from .gf import FieldSpec
from .matrices import (
    Matrix,
    embed_block,
    encode_key,
    identity,
    mat_det,
    mat_inv,
    mat_mul,
    row_times_mat,
)

DEFAULT_CAP = 25000

Label = tuple[int, ...]


def default_cap() -> int:
    raw = os.environ.get("FULLWIT_CAP")
    if raw is None:
        return DEFAULT_CAP
    try:
        cap = int(raw)
    except ValueError as exc:
        raise SizeGuardError(f"FULLWIT_CAP={raw!r} is not an integer") from exc
    if cap < 1:
        raise SizeGuardError(f"FULLWIT_CAP={cap} must be positive")
    return cap


def _guard(size: int, cap: int | None, what: str) -> None:
    limit = default_cap() if cap is None else cap
    if size > limit:
        raise SizeGuardError(f"{what} has {size} elements, above the cap {limit}")


def sl_order(q: int, n: int) -> int:
    order = q ** (n * (n - 1) // 2)
    for i in range(2, n + 1):
        order *= q**i - 1
    return order


def gl_order(q: int, n: int) -> int:
    return sl_order(q, n) * (q - 1)


def affine_order(q: int, n: int) -> int:
    return sl_order(q, n - 1) * q ** (n - 1) if n >= 2 else 1


def _pattern_group(spec: FieldSpec, n: int, positions, cap, what: str):
    """All I + (free entries at `positions`), sorted by key."""
    _guard(spec.q ** len(positions), cap, what)
    mats = []
    for values in itertools.product(range(spec.q), repeat=len(positions)):
        rows = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
        for (i, j), c in zip(positions, values):
            rows[i][j] = c
        mats.append(tuple(tuple(r) for r in rows))
    mats.sort(key=lambda m: encode_key(spec, m))
    return tuple(mats)


def unitriangular(spec: FieldSpec, n: int, cap: int | None = None) -> tuple[Matrix, ...]:
    positions = [(i, j) for i in range(n) for j in range(i + 1, n)]
    return _pattern_group(spec, n, positions, cap, f"U_{n}(F_{spec.q})")


def derived_unipotent(spec: FieldSpec, n: int, cap: int | None = None) -> tuple[Matrix, ...]:
    """Unitriangular matrices with zero first superdiagonal."""
    positions = [(i, j) for i in range(n) for j in range(i + 2, n)]
    return _pattern_group(spec, n, positions, cap, f"D(U_{n})(F_{spec.q})")


def translations(spec: FieldSpec, n: int, primed: bool = False) -> tuple[Matrix, ...]:
    """Identity plus a free last column; primed forces the lowest free entry to 0."""
    if n < 2:
        raise ValueError("translation groups need n >= 2")
    top = n - 2 if primed else n - 1
    positions = [(i, n - 1) for i in range(top)]
    name = f"V_{n}'" if primed else f"V_{n}"
    return _pattern_group(spec, n, positions, None, name)


def translation(n: int, w: Label) -> Matrix:
    """The translation matrix with last column (w, 1)."""
    rows = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    for i, c in enumerate(w):
        rows[i][n - 1] = c
    return tuple(tuple(r) for r in rows)


def translation_vector(m: Matrix) -> Label:
    return tuple(row[-1] for row in m[:-1])


def transvections(spec: FieldSpec, n: int) -> tuple[Matrix, ...]:
    gens = []
    for i in range(n):
        for j in range(n):
            if i != j:
                for c in range(1, spec.q):
                    rows = [[1 if a == b else 0 for b in range(n)] for a in range(n)]
                    rows[i][j] = c
                    gens.append(tuple(tuple(r) for r in rows))
    return tuple(gens)


@functools.lru_cache(maxsize=None)
def _closure(spec: FieldSpec, n: int, gens: tuple[Matrix, ...]) -> tuple[Matrix, ...]:
    start = identity(n)
    seen = {encode_key(spec, start): start}
    queue = deque([start])
    while queue:
        cur = queue.popleft()
        for g in gens:
            nxt = mat_mul(spec, cur, g)
            key = encode_key(spec, nxt)
            if key not in seen:
                seen[key] = nxt
                queue.append(nxt)
    return tuple(seen[k] for k in sorted(seen))


def special_linear(spec: FieldSpec, n: int, cap: int | None = None) -> tuple[Matrix, ...]:
    """BFS closure of the elementary transvections, checked against the order formula."""
    expected = sl_order(spec.q, n)
    _guard(expected, cap, f"SL_{n}(F_{spec.q})")
    mats = _closure(spec, n, transvections(spec, n))
    if len(mats) != expected:
        raise AssertionError(
            f"SL_{n}(F_{spec.q}) closure found {len(mats)} elements, expected {expected}"
        )
    return mats


@functools.lru_cache(maxsize=None)
def _general_linear_cached(spec: FieldSpec, n: int) -> tuple[Matrix, ...]:
    sl = special_linear(spec, n)
    out: dict[int, Matrix] = {}
    for scale in range(1, spec.q):
        diag = tuple(
            tuple(scale if i == j == 0 else (1 if i == j else 0) for j in range(n))
            for i in range(n)
        )
        for m in sl:
            prod = mat_mul(spec, diag, m)
            out[encode_key(spec, prod)] = prod
    if len(out) != gl_order(spec.q, n):
        raise AssertionError("GL coset enumeration does not match the order formula")
    return tuple(out[k] for k in sorted(out))


def general_linear(spec: FieldSpec, n: int, cap: int | None = None) -> tuple[Matrix, ...]:
    _guard(gl_order(spec.q, n), cap, f"GL_{n}(F_{spec.q})")
    return _general_linear_cached(spec, n)


@functools.lru_cache(maxsize=None)
def _affine_cached(spec: FieldSpec, n: int) -> tuple[Matrix, ...]:
    mats = []
    for m in special_linear(spec, n - 1):
        for w in itertools.product(range(spec.q), repeat=n - 1):
            rows = [tuple(m[i]) + (w[i],) for i in range(n - 1)]
            rows.append((0,) * (n - 1) + (1,))
            mats.append(tuple(rows))
    mats.sort(key=lambda a: encode_key(spec, a))
    return tuple(mats)


def affine_subgroup(spec: FieldSpec, n: int, cap: int | None = None) -> tuple[Matrix, ...]:
    """The SL_{n-1} block extended by the last-column translations."""
    if n < 2:
        return (identity(n),)
    _guard(affine_order(spec.q, n), cap, f"P_{n}(F_{spec.q})")
    return _affine_cached(spec, n)


def enumerate_group(kind: str, spec: FieldSpec, n: int, cap: int | None = None):
    if kind == "sl":
        return special_linear(spec, n, cap)
    if kind == "gl":
        return general_linear(spec, n, cap)
    if kind == "p":
        return affine_subgroup(spec, n, cap)
    raise ValueError(f"unknown group kind {kind!r}")


def group_order(kind: str, q: int, n: int) -> int:
    if kind == "sl":
        return sl_order(q, n)
    if kind == "gl":
        return gl_order(q, n)
    if kind == "p":
        return affine_order(q, n)
    raise ValueError(f"unknown group kind {kind!r}")


# --- characters of the translation group ------------------------------------


def all_labels(spec: FieldSpec, n: int) -> tuple[Label, ...]:
    """Labels of Hom(V_n, mu_p) in lexicographic order (first coordinate major)."""
    return tuple(itertools.product(range(spec.q), repeat=n - 1))


def char_exponent(spec: FieldSpec, label: Label, w: Label) -> int:
    """Exponent of zeta in the character value at translation w: Tr(label . w)."""
    s = 0
    for a, x in zip(label, w):
        s = spec.add(s, spec.mul(a, x))
    return spec.trace(s)


def restricts_trivially(label: Label) -> bool:
    """Whether the character is trivial on the primed translation subgroup."""
    return all(c == 0 for c in label[:-1])


def complete_row_to_sl(spec: FieldSpec, row: Label) -> Matrix:
    """Deterministic element of SL_m whose last row is the given nonzero row.

    Fills the other rows with standard basis vectors avoiding the pivot
    column, then rescales the first filler row to fix the determinant.
    """
    m = len(row)
    if m < 2:
        raise ValueError("row completion needs dimension at least 2")
    pivot = next((j for j, c in enumerate(row) if c), None)
    if pivot is None:
        raise ValueError("cannot complete the zero vector to an invertible matrix")
    filler_cols = [c for c in range(m) if c != pivot]
    rows = [tuple(1 if j == c else 0 for j in range(m)) for c in filler_cols]
    rows.append(tuple(row))
    det = mat_det(spec, tuple(rows))
    if det != 1:
        s = spec.inv(det)
        rows[0] = tuple(spec.mul(s, x) for x in rows[0])
    result = tuple(rows)
    if mat_det(spec, result) != 1:
        raise AssertionError("row completion failed to reach determinant 1")
    return result


def transport_label(spec: FieldSpec, label: Label, m: Matrix) -> Label:
    """Label of the conjugate character: a |-> a . m^(-1)."""
    if len(label) != len(m):
        raise ValueError("label length does not match the acting matrix")
    return row_times_mat(spec, label, mat_inv(spec, m))


def transport_block(spec: FieldSpec, n: int, chi0: int, label: Label):
    """Embedded block element m with transport(chi0 reference, m) = label.

    Returns (m, m_inverse) as n-by-n matrices.  The reference character has
    label (0, ..., 0, chi0); the solver completes the rescaled target label
    to an SL_{n-1} row and inverts.
    """
    t_inv = spec.inv(chi0)
    scaled = tuple(spec.mul(t_inv, a) for a in label)
    w = complete_row_to_sl(spec, scaled)
    m_core = mat_inv(spec, w)
    return embed_block(m_core, n), embed_block(w, n)
