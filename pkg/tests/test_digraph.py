from math import gcd

import pytest

from missgen import classify, digraph as D
from missgen.errors import StructuralViolation, UnsupportedPrimeClass
from missgen.modmath import prime_context
from oracles import brute_A, brute_triplet, functional_cycles
from conftest import p3_primes


def _dg(p):
    return D.build_digraph(D.build_partition(prime_context(p)))


def test_partition_p31(ctx31):
    part = D.build_partition(ctx31)
    assert part.blocks == ((3, 21), (11, 17), (12, 13), (22, 24))
    assert part.e == 2
    assert part.block_of[21] == 0 and part.block_of[24] == 3


def test_partition_p43(ctx43):
    part = D.build_partition(ctx43)
    assert len(part.blocks) == 6 and {len(b) for b in part.blocks} == {2}


def test_partition_rejects_outside_class():
    with pytest.raises(UnsupportedPrimeClass):
        D.build_partition(prime_context(89))


def test_digraph_p31_single_cycle():
    dg = _dg(31)
    blocks = dg.partition.blocks
    walk = [blocks[v] for v in dg.cycles[0]]
    assert walk == [(3, 21), (11, 17), (12, 13), (22, 24)]
    assert len(dg.cycles) == 1
    assert dg.cycle_of(3) == 0


def test_digraph_p43_two_three_cycles():
    dg = _dg(43)
    assert [len(c) for c in dg.cycles] == [3, 3]
    first = [dg.partition.blocks[v] for v in dg.cycles[0]]
    assert first[0] == (3, 29)


def test_digraph_p67():
    dg = _dg(67)
    assert [len(c) for c in dg.cycles] == [10]


def test_edges_follow_missing_sets():
    for p in p3_primes(300):
        ctx = prime_context(p)
        dg = _dg(p)
        blocks = dg.partition.blocks
        for u, v in enumerate(dg.edges):
            assert classify.set_M(blocks[u][0], ctx) == set(blocks[v])
        assert sorted(dg.edges) == list(range(len(blocks)))


@pytest.mark.parametrize("p, expected", [(31, (1, 4, 2)), (521, (4, 6, 8)), (401, (0, 0, 0)), (67, (1, 10, 2))])
def test_triplet_examples(p, expected):
    assert D.triplet(prime_context(p)) == expected


def test_triplet_matches_brute_force():
    for p in p3_primes(260):
        assert tuple(D.triplet(prime_context(p))) == brute_triplet(p), p
    for p in (13, 17, 89):
        assert brute_triplet(p) == (0, 0, 0) == D.triplet(prime_context(p))


def test_cycle_lengths_match_stepping():
    for p in p3_primes(700):
        dg = _dg(p)
        lengths = functional_cycles(dict(enumerate(dg.edges)))
        assert sorted(lengths) == sorted(len(c) for c in dg.cycles)


def test_arithmetic_route_agrees():
    for p in p3_primes(2000):
        ctx = prime_context(p)
        assert D.triplet_arithmetic(ctx) == D.triplet(ctx), p


def test_check_triplet():
    ctx = prime_context(31)
    D.check_triplet(ctx, D.Triplet(1, 4, 2))
    for bad in ((1, 4, 3), (1, 8, 1), (4, 1, 2)):
        with pytest.raises(StructuralViolation):
            D.check_triplet(ctx, D.Triplet(*bad))
    D.check_triplet(prime_context(89), D.NO_TRIPLET)
    with pytest.raises(StructuralViolation):
        D.check_triplet(prime_context(89), D.Triplet(1, 1, 1))


def test_least_pm1_power():
    assert D.least_pm1_power(7, 15) == 4  # 7 -> 4 -> 13 -> 1
    assert D.least_pm1_power(14, 15) == 1
    with pytest.raises(StructuralViolation):
        D.least_pm1_power(3, 15)


@pytest.mark.parametrize("p, x1, x2, B1, B2", [(31, 7, 8, {7}, {23}), (43, 5, 16, {5}, {37})])
def test_b_sets_examples(p, x1, x2, B1, B2):
    bs = D.b_sets(prime_context(p))
    assert (bs.x1, bs.x2, set(bs.B1), set(bs.B2)) == (x1, x2, B1, B2)


def test_b_sets_cover_A():
    for p in p3_primes(2000):
        bs = D.b_sets(prime_context(p))
        assert not bs.B1 & bs.B2
        assert sorted(bs.B1 | bs.B2) == brute_A(p - 1)


def test_b_sets_generate_missing_sets():
    for p in p3_primes(400):
        ctx = prime_context(p)
        bs = D.b_sets(ctx)
        for g in classify.classify_all(ctx).generators:
            assert {pow(g, x, p) for x in bs.B1 | bs.B2} == classify.set_M(g, ctx)


def test_translation_property():
    for p in p3_primes(300):
        ctx = prime_context(p)
        g = classify.classify_all(ctx).generators[0]
        exps = classify.exponent_set_A(p - 1).members
        for j in range(1, p - 1):
            if gcd(j, p - 1) != 1:
                continue
            image = D.translate(exps, j, p - 1)
            assert {pow(g, x, p) for x in image} == classify.set_M(pow(g, j, p), ctx)


def test_cycle_length_check_examples():
    r31 = D.cycle_length_check(prime_context(31), 4)
    assert r31.residue == 1 and r31.least_power == 4
    r43 = D.cycle_length_check(prime_context(43), 3)
    assert r43.residue == 4 and 4 * 5 % 21 == 20
    r131 = D.cycle_length_check(prime_context(131), 6)
    assert r131.residue == 64 == 65 - 1
    with pytest.raises(StructuralViolation):
        D.cycle_length_check(prime_context(31), 2)


def test_four_power_invariant_p131():
    ctx = prime_context(131)
    n = D.triplet(ctx).n
    assert n == 6 and pow(4, n, ctx.q1q2) == 1 and pow(2, n, ctx.q1q2) == ctx.q1q2 - 1


def test_to_dot_structure():
    dot = D.to_dot(_dg(31))
    assert dot.startswith("digraph missing_generators_31 {")
    assert dot.endswith("}\n")
    assert dot.count("->") == 4
    assert dot.count("subgraph cluster_") == 1
    assert 'v0 [label="3,21"]' in dot


def test_to_dot_parses():
    pydot = pytest.importorskip("pydot")
    (graph,) = pydot.graph_from_dot_data(D.to_dot(_dg(43)))
    clusters = graph.get_subgraphs()
    assert len(clusters) == 2
    nodes = [n for sg in clusters for n in sg.get_nodes()]
    assert len(nodes) == 6
    assert len(graph.get_edges()) == 6
