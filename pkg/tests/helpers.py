"""Shared brute-force oracles used by several test modules."""

import functools
from collections import deque

from fullwit.gf import FieldSpec
from fullwit.matrices import Matrix, encode_key, mat_inv, mat_mul


@functools.lru_cache(maxsize=None)
def commutator_closure(spec: FieldSpec, mats: tuple) -> frozenset[int]:
    """Keys of the subgroup generated by all commutators u v u^-1 v^-1.

    Pairs are taken with i < j; the reversed commutators are their inverses,
    so the generated subgroup is unchanged.
    """
    mats = list(mats)
    invs = [mat_inv(spec, m) for m in mats]
    gens: dict[int, Matrix] = {}
    for i in range(len(mats)):
        u = mats[i]
        ui = invs[i]
        for j in range(i + 1, len(mats)):
            uv = mat_mul(spec, u, mats[j])
            c = mat_mul(spec, uv, mat_mul(spec, ui, invs[j]))
            gens[encode_key(spec, c)] = c
    generators = list(gens.values())
    n = len(mats[0])
    start = tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))
    seen = {encode_key(spec, start)}
    queue = deque([start])
    while queue:
        cur = queue.popleft()
        for g in generators:
            nxt = mat_mul(spec, cur, g)
            key = encode_key(spec, nxt)
            if key not in seen:
                seen.add(key)
                queue.append(nxt)
    return frozenset(seen)


def group_keys(spec: FieldSpec, mats) -> frozenset[int]:
    return frozenset(encode_key(spec, m) for m in mats)
