"""Dense n-by-n matrices over F_q as nested tuples of entry codes.

Matrices are plain hashable tuples; every operation takes the FieldSpec
explicitly.  The canonical integer key of a matrix is its row-major base-q
digit string (first entry most significant), which gives a total order used
for sorting, hashing and serialization.
"""

from __future__ import annotations

from .errors import SingularMatrixError
from .gf import FieldSpec

Matrix = tuple[tuple[int, ...], ...]


def identity(n: int) -> Matrix:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def mat_mul(spec: FieldSpec, a: Matrix, b: Matrix) -> Matrix:
    cols = tuple(zip(*b))
    if spec.k == 1:
        p = spec.p
        return tuple(
            tuple(sum(x * y for x, y in zip(row, col)) % p for col in cols) for row in a
        )
    mul = spec._mul
    add = spec._add
    q = spec.q
    out = []
    for row in a:
        out_row = []
        for col in cols:
            s = 0
            for x, y in zip(row, col):
                s = add[s * q + mul[x * q + y]]
            out_row.append(s)
        out.append(tuple(out_row))
    return tuple(out)


def row_times_mat(spec: FieldSpec, row: tuple[int, ...], m: Matrix) -> tuple[int, ...]:
    if spec.k == 1:
        p = spec.p
        return tuple(sum(x * y for x, y in zip(row, col)) % p for col in zip(*m))
    mul = spec._mul
    add = spec._add
    q = spec.q
    out = []
    for col in zip(*m):
        s = 0
        for x, y in zip(row, col):
            s = add[s * q + mul[x * q + y]]
        out.append(s)
    return tuple(out)


def mat_det(spec: FieldSpec, a: Matrix) -> int:
    n = len(a)
    work = [list(row) for row in a]
    det = 1
    for col in range(n):
        pivot = None
        for r in range(col, n):
            if work[r][col]:
                pivot = r
                break
        if pivot is None:
            return 0
        if pivot != col:
            work[col], work[pivot] = work[pivot], work[col]
            det = spec.neg(det)
        pv = work[col][col]
        det = spec.mul(det, pv)
        pv_inv = spec.inv(pv)
        for r in range(col + 1, n):
            c = work[r][col]
            if c:
                factor = spec.mul(c, pv_inv)
                row_r = work[r]
                row_c = work[col]
                for j in range(col, n):
                    row_r[j] = spec.sub(row_r[j], spec.mul(factor, row_c[j]))
    return det


def mat_inv(spec: FieldSpec, a: Matrix) -> Matrix:
    n = len(a)
    work = [list(row) + [1 if i == j else 0 for j in range(n)] for i, row in enumerate(a)]
    for col in range(n):
        pivot = None
        for r in range(col, n):
            if work[r][col]:
                pivot = r
                break
        if pivot is None:
            raise SingularMatrixError("matrix is not invertible")
        work[col], work[pivot] = work[pivot], work[col]
        pv_inv = spec.inv(work[col][col])
        work[col] = [spec.mul(pv_inv, x) for x in work[col]]
        for r in range(n):
            if r != col and work[r][col]:
                c = work[r][col]
                work[r] = [spec.sub(x, spec.mul(c, y)) for x, y in zip(work[r], work[col])]
    return tuple(tuple(row[n:]) for row in work)


def encode_key(spec: FieldSpec, a: Matrix) -> int:
    q = spec.q
    key = 0
    for row in a:
        for c in row:
            key = key * q + c
    return key


def decode_key(spec: FieldSpec, n: int, key: int) -> Matrix:
    q = spec.q
    flat = []
    for _ in range(n * n):
        key, c = divmod(key, q)
        flat.append(c)
    flat.reverse()
    return tuple(tuple(flat[i * n : (i + 1) * n]) for i in range(n))


def embed_block(a: Matrix, n: int) -> Matrix:
    """Place a as the top-left block of an n-by-n identity."""
    m = len(a)
    if m > n:
        raise ValueError(f"cannot embed a {m}x{m} matrix into size {n}")
    out = []
    for i in range(n):
        if i < m:
            out.append(tuple(a[i]) + (0,) * (n - m))
        else:
            out.append(tuple(1 if j == i else 0 for j in range(n)))
    return tuple(out)
