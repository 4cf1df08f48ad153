"""Fullness certificates for the derived-unipotent averaging idempotent.

A certificate is a finite list of terms (r, g, h) asserting that
sum_i r_i . g . e_n . h equals the identity of the group algebra, where e_n
averages the derived subgroup of the unitriangular group.  Certificates are
built level by level: the base levels are trivial, and each lift multiplies
the previous identity through the character idempotents of the translation
group, transporting the reference character across every nonzero label.

The verifier is independent of the builder: it re-enumerates the averaged
subgroup and evaluates the claimed sum by exact convolution.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass, replace

from .algebra import AlgebraContext, AlgebraElement, subgroup_average
from .errors import NoRootOfUnityError, RingMismatchError, SizeGuardError
from .gf import FieldSpec
from .groups import char_exponent, derived_unipotent, translation, transport_block
from .matrices import decode_key, embed_block, encode_key, identity, mat_det, mat_mul
from .rings import (
    CyclotomicRing,
    CyclotomicValue,
    PrimeFieldRing,
    RationalRing,
    Ring,
    convert,
    project_rational,
)

FAST_PATH_THRESHOLD = 200_000

# A term is (coefficient, key of g, key of h); keys are canonical matrix keys.
Term = tuple


def _coeff_sort_key(c):
    if isinstance(c, CyclotomicValue):
        return (c.den_exp,) + c.num
    return (c.den_exp, c.num)


def _term_sort_key(t: Term):
    c, gk, hk = t
    return (gk, hk) + _coeff_sort_key(c)


@dataclass
class Certificate:
    """A sorted term list witnessing fullness at one (n, q) instance."""

    n: int
    spec: FieldSpec
    coeff_kind: str  # "cyclotomic" | "rational"
    compressed: bool
    terms: list[Term]
    level_terms: dict[int, int]  # pre-compression term counts per level
    chi0: int = 1

    def coefficient_ring(self) -> Ring:
        if self.coeff_kind == "cyclotomic":
            return CyclotomicRing(self.spec.p)
        return RationalRing(self.spec.p)

    @property
    def term_count(self) -> int:
        return len(self.terms)


@dataclass
class VerifyReport:
    ok: bool
    residual_support: int
    n: int
    q: int
    ring: str
    group: str
    terms: int
    elapsed: float


def base_certificate(spec: FieldSpec, n: int, chi0: int = 1) -> Certificate:
    """Levels 1 and 2, where the averaged subgroup is trivial and 1 = 1.e_n.1."""
    if n not in (1, 2):
        raise ValueError("base certificates exist only for n in {1, 2}; use lift_level above")
    _check_chi0(spec, chi0)
    ring = CyclotomicRing(spec.p)
    key = encode_key(spec, identity(n))
    return Certificate(
        n=n,
        spec=spec,
        coeff_kind="cyclotomic",
        compressed=False,
        terms=[(ring.one(), key, key)],
        level_terms={n: 1},
        chi0=chi0,
    )


def _check_chi0(spec: FieldSpec, chi0: int) -> None:
    if not 1 <= chi0 < spec.q:
        raise ValueError(f"chi0 must be a nonzero field code, got {chi0}")


def lift_level(cert: Certificate) -> Certificate:
    """One induction step: a level-(n-1) certificate becomes a level-n one.

    For the trivial character the previous terms are averaged over all
    translations; every nonzero label is reached by transporting the
    reference character with a block element of the SL_{n-1} part.  The
    output is uncompressed and has exactly q^(2(n-1)) times as many terms.
    """
    if cert.coeff_kind != "cyclotomic":
        raise ValueError("only cyclotomic certificates can be lifted")
    n_in = cert.n
    if n_in < 2:
        raise ValueError("lift the level-2 base certificate first")
    n = n_in + 1
    spec = cert.spec
    q = spec.q
    ring = CyclotomicRing(spec.p)
    chi0 = cert.chi0

    coeffs = [t[0] for t in cert.terms]
    g_mats = [embed_block(decode_key(spec, n_in, t[1]), n) for t in cert.terms]
    h_mats = [embed_block(decode_key(spec, n_in, t[2]), n) for t in cert.terms]
    h_keys = [encode_key(spec, h) for h in h_mats]

    vectors = list(itertools.product(range(q), repeat=n - 1))
    chi0_label = (0,) * (n - 2) + (chi0,)
    inv_v = ring.p_power(-spec.k * (n - 1))

    # t(w).g_i products are shared between the trivial-character block and
    # every transported block.
    vg: list[list] = []
    for w in vectors:
        tw = translation(n, w)
        vg.append([mat_mul(spec, tw, g) for g in g_mats])

    out: list[Term] = []
    trivial = [ring.mul(r, inv_v) for r in coeffs]
    for row in vg:
        for i, gm in enumerate(row):
            out.append((trivial[i], encode_key(spec, gm), h_keys[i]))

    # Coefficients r_i . chi0(w)^(-1) / |V| reused across all labels.
    transported = []
    for w in vectors:
        scale = ring.mul(ring.zeta(-char_exponent(spec, chi0_label, w)), inv_v)
        transported.append([ring.mul(r, scale) for r in coeffs])

    for label in itertools.product(range(q), repeat=n - 1):
        if not any(label):
            continue
        m, m_inv = transport_block(spec, n, chi0, label)
        h_keys_m = [encode_key(spec, mat_mul(spec, h, m_inv)) for h in h_mats]
        for w_idx, row in enumerate(vg):
            coeff_row = transported[w_idx]
            for i, gm in enumerate(row):
                out.append(
                    (coeff_row[i], encode_key(spec, mat_mul(spec, m, gm)), h_keys_m[i])
                )

    expected = q ** (2 * (n - 1)) * len(cert.terms)
    if len(out) != expected:
        raise AssertionError(f"lift produced {len(out)} terms, expected {expected}")
    out.sort(key=_term_sort_key)
    return Certificate(
        n=n,
        spec=spec,
        coeff_kind="cyclotomic",
        compressed=False,
        terms=out,
        level_terms={**cert.level_terms, n: len(out)},
        chi0=chi0,
    )


def compress(cert: Certificate) -> Certificate:
    """Merge coefficients of identical (g, h) pairs and drop zeros."""
    ring = cert.coefficient_ring()
    merged: dict[tuple[int, int], object] = {}
    for c, gk, hk in cert.terms:
        prev = merged.get((gk, hk))
        merged[(gk, hk)] = c if prev is None else ring.add(prev, c)
    terms = [(c, gk, hk) for (gk, hk), c in merged.items() if not ring.is_zero(c)]
    terms.sort(key=_term_sort_key)
    return replace(cert, terms=terms, compressed=True)


_compress = compress


# Hard ceiling on the uncompressed term count a build may produce; beyond
# this the lists no longer fit in desk-scale memory anyway.
BUILD_TERM_LIMIT = 5_000_000


def build(spec: FieldSpec, n: int, *, chi0: int = 1, compress: bool = True) -> Certificate:
    """Full pipeline: base certificate lifted to level n, optionally compressed.

    Lifting always runs on the uncompressed term lists so that the recorded
    per-level counts follow the exact recurrence T(n) = q^(2(n-1)) T(n-1).
    """
    if n < 1:
        raise ValueError("n must be positive")
    if n >= 3:
        predicted = spec.q ** ((n - 1) * n - 2)
        if predicted > BUILD_TERM_LIMIT:
            raise SizeGuardError(
                f"level {n} over F_{spec.q} needs {predicted} uncompressed terms, "
                f"above the limit {BUILD_TERM_LIMIT}"
            )
    cert = base_certificate(spec, min(n, 2), chi0)
    for _ in range(3, n + 1):
        cert = lift_level(cert)
    return _compress(cert) if compress else cert


def rationalize(cert: Certificate, *, check: bool = False) -> Certificate:
    """Project every coefficient onto the basis vector 1.

    The power basis of the cyclotomic ring is free over Z[1/p], so the
    projected term list is itself an identity over Z[1/p] and hence verifies
    over every coefficient ring in which p is invertible.
    """
    if cert.coeff_kind != "cyclotomic":
        raise ValueError("rationalize expects cyclotomic coefficients")
    if check:
        report = verify(cert, CyclotomicRing(cert.spec.p))
        if not report.ok:
            raise ValueError("certificate does not verify over the cyclotomic ring")
    ring = RationalRing(cert.spec.p)
    terms = []
    for c, gk, hk in cert.terms:
        projected = project_rational(c)
        if not ring.is_zero(projected):
            terms.append((projected, gk, hk))
    return replace(cert, coeff_kind="rational", terms=terms)


def _check_ring(cert: Certificate, ring: Ring) -> None:
    if ring.p != cert.spec.p:
        raise RingMismatchError(
            f"certificate has p = {cert.spec.p}, ring has p = {ring.p}"
        )
    if cert.coeff_kind == "cyclotomic" and not ring.supports_zeta:
        raise NoRootOfUnityError(
            f"{ring.selector()} has no primitive {cert.spec.p}-th root of unity; "
            "rationalize the certificate first"
        )


def _check_membership(cert: Certificate, group: str) -> None:
    if group not in ("sl", "gl"):
        raise ValueError(f"unknown ambient group {group!r}")
    spec = cert.spec
    seen: set[int] = set()
    for _, gk, hk in cert.terms:
        for key in (gk, hk):
            if key in seen:
                continue
            seen.add(key)
            det = mat_det(spec, decode_key(spec, cert.n, key))
            if det == 0 or (group == "sl" and det != 1):
                raise ValueError(f"term matrix with key {key} is not in the ambient group")


def evaluate(cert: Certificate, ring: Ring) -> AlgebraElement:
    """The exact value of sum_i r_i . g_i . e_n . h_i over the given ring."""
    _check_ring(cert, ring)
    spec = cert.spec
    n = cert.n
    ctx = AlgebraContext(spec, n, ring)
    du = derived_unipotent(spec, n)
    if spec.k == 1 and len(cert.terms) * len(du) > FAST_PATH_THRESHOLD:
        return _evaluate_batched(cert, ring, ctx, du)
    e = subgroup_average(ctx, du)
    e_items = [(ctx.decode(k), v) for k, v in e.terms.items()]
    acc: dict[int, object] = {}
    for c, gk, hk in cert.terms:
        cv = convert(c, ring)
        g = ctx.decode(gk)
        h = ctx.decode(hk)
        for u, uv in e_items:
            key = encode_key(spec, mat_mul(spec, mat_mul(spec, g, u), h))
            contrib = ring.mul(cv, uv)
            prev = acc.get(key)
            acc[key] = contrib if prev is None else ring.add(prev, contrib)
    return AlgebraElement(ctx, {k: v for k, v in acc.items() if not ring.is_zero(v)})


def _evaluate_batched(cert, ring, ctx, du) -> AlgebraElement:
    """Vectorized evaluation for prime q: batch the matrix products, keep the
    coefficient arithmetic exact by accumulating numerators over a common
    denominator (exact rings) or field codes (prime-field targets)."""
    import numpy as np

    spec = cert.spec
    n = cert.n
    q = spec.q
    if q ** (n * n) >= 2**62:  # pragma: no cover - beyond any enumerable size
        raise AssertionError("matrix keys exceed int64; batched path unavailable")
    e_exp = spec.k * ((n - 1) * (n - 2) // 2)  # |D(U_n)| = p^e_exp
    terms = cert.terms
    p = spec.p

    exact = not isinstance(ring, PrimeFieldRing)
    if exact:
        # Numerator vectors over the common denominator p^common.
        common = max(c.den_exp for c, _, _ in terms) + e_exp
        width = ring.dim if isinstance(ring, CyclotomicRing) else 1
        contribs = []
        for c, _, _ in terms:
            scale = p ** (common - c.den_exp - e_exp)
            num = c.num if isinstance(c, CyclotomicValue) else (c.num,)
            vec = tuple(x * scale for x in num)
            contribs.append(vec + (0,) * (width - len(vec)))

        def finish(vec):
            if isinstance(ring, CyclotomicRing):
                return ring.normalize(vec, common)
            return ring.normalize(vec[0], common)

    else:
        unit = ring.p_power(-e_exp)
        contribs = [ring.mul(convert(c, ring), unit) for c, _, _ in terms]
        add_code = ring.field.add

    E = np.array(du, dtype=np.int64)
    place = q ** np.arange(n * n - 1, -1, -1, dtype=np.int64)
    acc: dict[int, list] = {}

    chunk = 1024
    for start in range(0, len(terms), chunk):
        block = terms[start : start + chunk]
        G = np.array([decode_key(spec, n, t[1]) for t in block], dtype=np.int64)
        H = np.array([decode_key(spec, n, t[2]) for t in block], dtype=np.int64)
        prod = np.matmul(G[:, None, :, :], E[None, :, :, :]) % q
        prod = np.matmul(prod, H[:, None, :, :]) % q
        keys = (prod.reshape(len(block), len(du), n * n) @ place).tolist()
        for idx, row in enumerate(keys):
            contrib = contribs[start + idx]
            if exact:
                for key in row:
                    slot = acc.get(key)
                    if slot is None:
                        acc[key] = list(contrib)
                    else:
                        for j, x in enumerate(contrib):
                            slot[j] += x
            else:
                for key in row:
                    slot = acc.get(key)
                    if slot is None:
                        acc[key] = [contrib]
                    else:
                        slot[0] = add_code(slot[0], contrib)

    out = {}
    for key, vec in acc.items():
        value = finish(tuple(vec)) if exact else vec[0]
        if not ring.is_zero(value):
            out[key] = value
    return AlgebraElement(ctx, out)


def verify(cert: Certificate, ring: Ring, group: str = "sl") -> VerifyReport:
    """Evaluate the certificate sum and compare it with the identity.

    The averaged subgroup is rebuilt from scratch; nothing in the certificate
    beyond the term list is trusted.
    """
    start = time.perf_counter()
    _check_membership(cert, group)
    total = evaluate(cert, ring)
    residual = total - total.ctx.one()
    elapsed = time.perf_counter() - start
    return VerifyReport(
        ok=residual.is_zero(),
        residual_support=residual.support_size,
        n=cert.n,
        q=cert.spec.q,
        ring=ring.selector(),
        group=group,
        terms=len(cert.terms),
        elapsed=elapsed,
    )
