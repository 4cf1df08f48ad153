import random

import pytest

from fullwit.algebra import AlgebraContext, character_idempotent, subgroup_average
from fullwit.errors import ContextMismatchError, NoRootOfUnityError, NotASubgroupError
from fullwit.gf import field
from fullwit.groups import (
    affine_subgroup,
    all_labels,
    derived_unipotent,
    restricts_trivially,
    special_linear,
    translations,
    transport_label,
    unitriangular,
)
from fullwit.matrices import embed_block, identity
from fullwit.rings import CyclotomicRing, RationalRing

F2 = field(2)
F3 = field(3)


def _ctx(spec, n):
    return AlgebraContext(spec, n, CyclotomicRing(spec.p))


def test_delta_convolution():
    ctx = _ctx(F2, 3)
    g = ((1, 1, 0), (0, 1, 0), (0, 0, 1))
    h = ((1, 0, 1), (0, 1, 1), (0, 0, 1))
    x = ctx.delta(g) + ctx.delta(h).scale(ctx.ring.p_power(-1))
    assert x * ctx.one() == x
    assert ctx.one() * x == x
    gh = ctx.delta(g) * ctx.delta(h)
    assert gh.support_size == 1
    assert list(gh.terms.values()) == [ctx.ring.one()]


def test_averaging_idempotent_small():
    ctx = _ctx(F2, 3)
    e = subgroup_average(ctx, derived_unipotent(F2, 3))
    assert e.support_size == 2
    assert set(e.terms.values()) == {ctx.ring.p_power(-1)}
    assert e * e == e


def test_trivial_averages():
    for n in (1, 2):
        ctx = _ctx(F3, n)
        assert subgroup_average(ctx, [identity(n)]) == ctx.one()


def test_translation_average():
    ctx = _ctx(F3, 3)
    f = subgroup_average(ctx, translations(F3, 3, primed=True))
    assert f.support_size == 3
    assert set(f.terms.values()) == {ctx.ring.p_power(-1)}
    assert f * f == f


def test_not_a_subgroup():
    ctx = _ctx(F3, 2)
    shear = ((1, 1), (0, 1))
    with pytest.raises(NotASubgroupError):
        subgroup_average(ctx, [identity(2), shear])  # missing shear^2
    with pytest.raises(NotASubgroupError):
        subgroup_average(ctx, [])


def test_not_a_subgroup_large_set():
    # exercises the batched closure check: drop one non-identity element
    ctx = _ctx(F3, 5)
    mats = [m for m in derived_unipotent(F3, 5) if m != derived_unipotent(F3, 5)[-1]]
    assert len(mats) == 728
    with pytest.raises(NotASubgroupError):
        subgroup_average(ctx, mats)


def test_singular_support_rejected():
    ctx = _ctx(F3, 2)
    with pytest.raises(ValueError):
        ctx.delta(((1, 2), (2, 1)))


def test_character_idempotent_trivial_label():
    ctx = _ctx(F2, 3)
    assert character_idempotent(ctx, (0, 0)) == subgroup_average(ctx, translations(F2, 3))


def test_character_idempotents_orthogonal_and_complete():
    for spec in (F2, F3):
        ctx = _ctx(spec, 3)
        labels = all_labels(spec, 3)
        bs = {a: character_idempotent(ctx, a) for a in labels}
        total = ctx.zero()
        for a in labels:
            total = total + bs[a]
            for b in labels:
                product = bs[a] * bs[b]
                assert product == (bs[a] if a == b else ctx.zero())
        assert total == ctx.one()


def test_character_idempotent_needs_root_of_unity():
    ctx = AlgebraContext(F3, 3, RationalRing(3))
    with pytest.raises(NoRootOfUnityError):
        character_idempotent(ctx, (0, 1))


def test_conjugation_by_identity():
    ctx = _ctx(F3, 3)
    b = character_idempotent(ctx, (1, 2))
    assert b.conjugate(identity(3)) == b


@pytest.mark.parametrize("spec", [F2, F3])
def test_conjugation_transports_characters(spec):
    """Conjugating the reference idempotent matches the label transport map,
    which pins down the character convention independently of either choice."""
    ctx = _ctx(spec, 3)
    chi0 = (0, 1)
    b0 = character_idempotent(ctx, chi0)
    for m_core in special_linear(spec, 2):
        m = embed_block(m_core, 3)
        assert b0.conjugate(m) == character_idempotent(
            ctx, transport_label(spec, chi0, m_core)
        )


@pytest.mark.parametrize("spec", [F2, F3])
def test_embedded_stabilizer_centralizes_translation_average(spec):
    ctx = _ctx(spec, 3)
    f = subgroup_average(ctx, translations(spec, 3, primed=True))
    for g_small in affine_subgroup(spec, 2):
        assert f.conjugate(embed_block(g_small, 3)) == f


@pytest.mark.parametrize("spec,n", [(F2, 3), (F3, 3), (F2, 4), (F3, 4), (F2, 5), (F3, 5)])
def test_average_factorization(spec, n):
    ctx = _ctx(spec, n)
    e_n = subgroup_average(ctx, derived_unipotent(spec, n))
    e_prev = subgroup_average(ctx, [embed_block(m, n) for m in derived_unipotent(spec, n - 1)])
    f_n = subgroup_average(ctx, translations(spec, n, primed=True))
    assert e_n == e_prev * f_n


@pytest.mark.parametrize("spec,n", [(F2, 2), (F3, 2), (F2, 3), (F3, 3), (F2, 4), (F3, 4)])
def test_translation_average_splits_into_characters(spec, n):
    ctx = _ctx(spec, n)
    f_n = subgroup_average(ctx, translations(spec, n, primed=True))
    total = ctx.zero()
    trivial_count = 0
    for label in all_labels(spec, n):
        if restricts_trivially(label):
            trivial_count += 1
            total = total + character_idempotent(ctx, label)
    assert trivial_count == (spec.q if n >= 3 else spec.q ** (n - 1))
    assert total == f_n
    # absorption of the compatible idempotents
    b_triv = character_idempotent(ctx, (0,) * (n - 1))
    b_ref = character_idempotent(ctx, (0,) * (n - 2) + (1,))
    assert b_triv * f_n == b_triv
    assert b_ref * f_n == b_ref


def test_convolution_axioms_on_random_elements():
    rng = random.Random(23)
    ctx = _ctx(F3, 3)
    pool = unitriangular(F3, 3)

    def rand_elem():
        pairs = []
        for _ in range(rng.randint(1, 4)):
            m = pool[rng.randrange(len(pool))]
            value = ctx.ring.normalize([rng.randint(-4, 4), rng.randint(-4, 4)], rng.randint(0, 2))
            pairs.append((m, value))
        return ctx.from_pairs(pairs)

    for _ in range(25):
        x, y, z = rand_elem(), rand_elem(), rand_elem()
        assert (x * y) * z == x * (y * z)
        assert x * (y + z) == x * y + x * z
        assert (y + z) * x == y * x + z * x
        assert x - x == ctx.zero()


def test_context_mismatch():
    a = _ctx(F2, 3).one()
    b = _ctx(F3, 3).one()
    with pytest.raises(ContextMismatchError):
        a * b
    with pytest.raises(ContextMismatchError):
        a + b
    c = AlgebraContext(F2, 3, RationalRing(2)).one()
    with pytest.raises(ContextMismatchError):
        a + c


def test_coeff_lookup_and_zero_cleanup():
    ctx = _ctx(F2, 3)
    g = ((1, 1, 0), (0, 1, 0), (0, 0, 1))
    x = ctx.delta(g)
    assert x.coeff(g) == ctx.ring.one()
    assert x.coeff(identity(3)) == ctx.ring.zero()
    assert (x - x).support_size == 0
    assert ctx.from_pairs([(g, ctx.ring.one()), (g, ctx.ring.from_int(-1))]).is_zero()
