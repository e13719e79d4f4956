import pytest

from missgen import classify, digraph as D, inverse_relation as IR
from missgen.errors import StructuralViolation, UnsupportedPrimeClass
from missgen.inverse_relation import SCharacter
from missgen.modmath import element_order, prime_context
from oracles import brute_classes, brute_NI, naive_order
from conftest import p3_primes


def _build(p):
    ctx = prime_context(p)
    part = D.build_partition(ctx)
    dg = D.build_digraph(part)
    return ctx, part, dg, IR.build_ni_partition(ctx, part)


def test_ni_partition_p31():
    ctx, part, _, nip = _build(31)
    idx = nip.f_map[part.block_of[3]]
    assert nip.ni_blocks[idx] == (18, 19)
    assert nip.f_inverse(idx) == part.block_of[21]


def test_ni_partition_p43():
    _, _, _, nip = _build(43)
    assert len(nip.ni_blocks) == 6 == (3 - 1) * (7 - 1) // 2
    assert {len(b) for b in nip.ni_blocks} == {2}


def test_ni_blocks_match_brute_force():
    for p in p3_primes(200):
        _, part, _, nip = _build(p)
        _, _, NG = brute_classes(p)
        for b, block in enumerate(part.blocks):
            expected = brute_NI(block[-1], p)
            assert set(nip.ni_blocks[nip.f_map[b]]) == expected
        assert sorted(nip.f_map) == list(range(len(part.blocks)))


def test_ni_partition_rejects_outside_class():
    ctx = prime_context(89)
    with pytest.raises(UnsupportedPrimeClass):
        IR.build_ni_partition(ctx, None)


def test_order_counts_p31():
    ctx, _, _, nip = _build(31)
    for block in nip.ni_blocks:
        assert IR.count_generators_by_order(block, ctx) == [(1, 2)]
    assert element_order(18, ctx) == element_order(19, ctx) == 15 == naive_order(18, 31)


def test_order_counts_p409():
    ctx, _, _, nip = _build(409)
    block = (3, 20, 136, 184, 225, 273, 389, 406)
    assert block in nip.ni_blocks
    assert IR.count_generators_by_order(block, ctx) == [(1, 4), (2, 2), (3, 2)]


def test_order_counts_sum_to_block_size():
    for p in p3_primes(1000):
        ctx, _, _, nip = _build(p)
        for block in nip.ni_blocks:
            assert sum(c for _, c in IR.count_generators_by_order(block, ctx)) == len(block)


def test_order_counts_reject_foreign_block(ctx31):
    with pytest.raises(StructuralViolation):
        IR.count_generators_by_order((3, 18), ctx31)  # 3 has full order


def test_inverse_location_p61_same_block():
    ctx, part, _, nip = _build(61)
    _, G, _ = brute_classes(61)
    assert len(G) == 16
    for g in G:
        loc = IR.inverse_location(g, ctx, part, nip)
        assert loc.kind == "block" and 61 - g in loc.members and g in loc.members


def test_inverse_location_p31():
    ctx, part, _, nip = _build(31)
    R, _, _ = brute_classes(31)
    loc = IR.inverse_location(3, ctx, part, nip)
    assert loc.kind == "ni" and loc.members == (10, 28)
    assert {10, 28} <= R
    assert IR.inverse_location(21, ctx, part, nip) == loc


def test_negated_blocks_are_ni_blocks():
    for p in p3_primes(1000):
        if p % 4 != 3:
            continue
        _, part, _, nip = _build(p)
        negated = {tuple(sorted(p - x for x in b)) for b in part.blocks}
        assert negated == set(nip.ni_blocks)


@pytest.mark.parametrize(
    "p, character",
    [(103, SCharacter.REFLEXIVE), (127, SCharacter.SYMMETRIC), (131, SCharacter.SYMMETRIC),
     (139, SCharacter.SYMMETRIC), (283, SCharacter.SYMMETRIC), (907, SCharacter.SYMMETRIC)],
)
def test_relation_S_anchors(p, character):
    ctx, _, dg, nip = _build(p)
    rel = IR.relation_S(ctx, dg, nip)
    assert rel.character is character
    assert IR.s_character_predicate(ctx, D.triplet_from_digraph(dg).n) is character
    assert rel.labels == tuple(range(1, len(dg.cycles) + 1))


def test_relation_S_is_a_function_on_labels():
    ctx, _, dg, nip = _build(907)
    rel = IR.relation_S(ctx, dg, nip)
    assert sorted(i for i, _ in rel.pairs) == list(rel.labels)


def test_relation_S_rejects_1_mod_4():
    ctx, _, dg, nip = _build(61)
    with pytest.raises(UnsupportedPrimeClass):
        IR.relation_S(ctx, dg, nip)
    with pytest.raises(UnsupportedPrimeClass):
        IR.s_character_predicate(ctx, 2)


def test_relation_character_from_pairs():
    assert IR.RelationS((1, 2), frozenset({(1, 1), (2, 2)})).character is SCharacter.REFLEXIVE
    assert IR.RelationS((1, 2), frozenset({(1, 2), (2, 1)})).character is SCharacter.SYMMETRIC
    with pytest.raises(StructuralViolation):
        IR.RelationS((1, 2, 3), frozenset({(1, 2), (2, 3), (3, 1)})).character


def test_predicate_examples():
    assert pow(2, 8, 51) == 1
    assert IR.s_character_predicate(prime_context(103), 8) is SCharacter.REFLEXIVE
    assert pow(2, 6, 65) == 64
    assert IR.s_character_predicate(prime_context(131), 6) is SCharacter.SYMMETRIC
    assert IR.s_character_predicate(prime_context(127), 3) is SCharacter.SYMMETRIC


def test_predicate_flags_neither_case():
    # p=103, q1q2=51: 2^2 = 4 is neither 1 nor -1 and n is even
    with pytest.raises(StructuralViolation):
        IR.s_character_predicate(prime_context(103), 2)
