"""Field and ring layer: table arithmetic, Frobenius, trace, hyperplanes,
subfield embeddings, and GR(4,t) structure."""

import random

import pytest

from diffsets import (
    FieldElement,
    FiniteField,
    NonPrimitiveModulus,
    ParameterError,
    field_embed,
    field_make,
    galois_ring_make,
    hyperplanes,
    ideal_iso,
    ring_projection,
)


def naive_gf_mul(p, modulus, a, b):
    """Schoolbook polynomial product mod (modulus, p) on integer codes."""
    m = len(modulus) - 1
    da = [(a // p**i) % p for i in range(m)]
    db = [(b // p**i) % p for i in range(m)]
    prod = [0] * (2 * m)
    for i, ca in enumerate(da):
        for j, cb in enumerate(db):
            prod[i + j] = (prod[i + j] + ca * cb) % p
    for d in range(2 * m - 1, m - 1, -1):
        c = prod[d]
        prod[d] = 0
        for j in range(m + 1):
            prod[d - m + j] = (prod[d - m + j] - c * modulus[j]) % p
    return sum(c * p**i for i, c in enumerate(prod[:m]))


@pytest.mark.parametrize("p,m", [(2, 3), (3, 2), (2, 4), (5, 2)])
def test_mul_matches_schoolbook(p, m):
    F = field_make(p, m)
    rng = random.Random(0xF1E1D)
    for _ in range(300):
        a, b = rng.randrange(F.q), rng.randrange(F.q)
        assert F.mul(a, b) == naive_gf_mul(p, F.modulus, a, b)


def test_exp_log_roundtrip():
    F = field_make(2, 3)
    for a in range(1, F.q):
        assert int(F.exp[F.log[a]]) == a
    assert F.mul(int(F.primitive), int(F.primitive) and 1 or 1) or True
    # multiplicative order of the primitive element is q - 1
    seen = {int(F.exp[i]) for i in range(F.q - 1)}
    assert seen == set(range(1, F.q))


@pytest.mark.parametrize("p,m", [(2, 3), (3, 2), (3, 3)])
def test_frobenius_is_field_automorphism(p, m):
    F = field_make(p, m)
    rng = random.Random(0xF20B)
    for _ in range(200):
        a, b = rng.randrange(F.q), rng.randrange(F.q)
        assert F.frob(F.add(a, b), 1) == F.add(F.frob(a, 1), F.frob(b, 1))
        assert F.frob(F.mul(a, b), 1) == F.mul(F.frob(a, 1), F.frob(b, 1))
        assert F.frob(a, 1) == F.pow(a, p)
        assert F.frob(a, m) == a


@pytest.mark.parametrize("p,m", [(2, 3), (3, 2)])
def test_trace_matches_power_sum_and_is_balanced(p, m):
    F = field_make(p, m)
    counts = {}
    for a in range(F.q):
        t = a
        for k in range(1, m):
            t = F.add(t, F.pow(a, p**k))
        assert F.trace(a) == t
        assert t < p  # trace lands in the prime field
        counts[t] = counts.get(t, 0) + 1
    assert counts == {c: F.q // p for c in range(p)}


def test_relative_trace_onto_subfield():
    F = field_make(2, 4)
    for a in range(F.q):
        t = F.trace(a, sub_degree=2)
        assert F.in_subfield(t, 2)
        assert t == F.add(a, F.frob(a, 2))


def test_lex_smallest_primitive_modulus():
    # GF(8): x^3 + x^2 + 1 is the lex-first primitive cubic when coefficient
    # vectors are compared low degree first: (1,0,1) sorts before (1,1,0).
    assert field_make(2, 3).modulus == (1, 0, 1, 1)
    # GF(9): x^2 + 1 is irreducible but NOT primitive (x has order 4).
    with pytest.raises(NonPrimitiveModulus):
        field_make(3, 2, modulus_override=(1, 0, 1))


def test_modulus_override_spence_cubic():
    # theta^3 = theta + 2 over GF(3), i.e. x^3 + 2x + 1 with -2 = 1 constant.
    F = field_make(3, 3, modulus_override=(1, 2, 0, 1))
    assert F.pow(3, 3) == F.add(3, 2)  # x^3 = x + 2


def test_hyperplanes_dim1():
    F = field_make(2, 3)
    planes = hyperplanes(F, 1)
    assert len(planes) == (F.q - 1) // (F.p - 1) == 7
    for pl in planes:
        mem = set(pl.members)
        assert len(mem) == F.q // F.p and 0 in mem
        # additively closed
        assert all(F.add(a, b) in mem for a in mem for b in mem)
    assert len({pl.members for pl in planes}) == 7


def test_hyperplanes_dim2_form_a_spread():
    F = field_make(2, 2)
    planes = hyperplanes(F, 2)
    assert len(planes) == F.q + 1
    # pairwise intersections are exactly the origin -> lines partition points
    cover = set()
    for pl in planes:
        mem = set(pl.members)
        assert len(mem) == F.q
        assert not (cover & (mem - {(0, 0)}))
        cover |= mem - {(0, 0)}
    assert len(cover) == F.q * F.q - 1


def test_field_embed_is_a_ring_embedding():
    F1, F2 = field_make(2, 2), field_make(2, 4)
    emb = field_embed(F1, F2)
    assert int(emb[0]) == 0 and int(emb[1]) == 1
    for a in range(F1.q):
        assert F2.in_subfield(int(emb[a]), F1.m)
        for b in range(F1.q):
            assert int(emb[F1.add(a, b)]) == F2.add(int(emb[a]), int(emb[b]))
            assert int(emb[F1.mul(a, b)]) == F2.mul(int(emb[a]), int(emb[b]))


def test_galois_ring_t3_modulus_and_units():
    ring = galois_ring_make(3)
    assert repr(ring) == "GR(4,3; x^3+2x^2+x+3)"
    # the Teichmuller element h has multiplicative order 2^t - 1
    h = int(ring.h)
    for i in range(1, 2**3 - 1):
        assert ring.pow(h, i) != 1
    assert ring.pow(h, 2**3 - 1) == 1
    assert [ring.pow(h, i) for i in range(2**3 - 1)] == [int(x) for x in ring.hpow]


def test_galois_ring_ideal_and_projection():
    ring = galois_ring_make(2)
    F = ring.residue_field
    # projection is a ring homomorphism onto the residue field
    for a in range(ring.q):
        for b in range(ring.q):
            pa, pb = int(ring.proj_table[a]), int(ring.proj_table[b])
            assert int(ring.proj_table[ring.add(a, b)]) == F.add(pa, pb)
            assert int(ring.proj_table[ring.mul(a, b)]) == F.mul(pa, pb)
    # iso_table identifies the ideal 2R with the residue field additively
    for a in range(F.q):
        for b in range(F.q):
            assert int(ring.iso_table[F.add(a, b)]) == ring.add(
                int(ring.iso_table[a]), int(ring.iso_table[b]))
    # element-wrapper helpers agree with the tables
    two_h0 = ring.element(int(ring.iso_table[1]))
    assert int(ring_projection(two_h0)) == 0  # 2R is the kernel of reduction
    assert int(ideal_iso(FieldElement(F, 1))) == int(ring.iso_table[1])


def test_bad_parameters():
    with pytest.raises(ParameterError):
        field_make(4, 2)  # p must be prime
    with pytest.raises(ParameterError):
        hyperplanes(field_make(2, 2), 3)
