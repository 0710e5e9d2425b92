import pytest

from charblock import blocks as bl
from charblock import fpg
from charblock.classalg import structure_constants
from charblock.permgrp import GroupTooLarge, Perm, enumerate_group

from _support import computed, group


def test_convolution_basics():
    G = group("s3")
    alg = fpg.GroupAlgebra(G, 2)
    g, h = G.elements[1], G.elements[4]
    assert alg.delta(g) * alg.delta(h) == alg.delta(g * h)
    a = alg.delta(g) + alg.delta(h)
    assert alg.one() * a == a == a * alg.one()


def test_class_sums_follow_structure_constants():
    G, T, cc = computed("a4")
    sc = structure_constants(G, cc)
    p = 3
    alg = fpg.GroupAlgebra(G, p)
    sums = [alg.class_sum(cc.classes[k]) for k in range(len(cc))]
    for K in range(len(cc)):
        for L in range(len(cc)):
            expected = alg.from_class_coeffs(cc, [sc.a[K][L][M] % p for M in range(len(cc))])
            assert sums[K] * sums[L] == expected


def _oracle(name, p):
    G, T, cc = computed(name)
    bp = bl.block_partition(T, p)
    bl.block_local_data(bp, T, cc, G, p)
    return G, cc, bp, fpg.verify_block_idempotents(G, cc, bp, p)


def test_s3_idempotents_by_hand():
    G, cc, bp, rep = _oracle("s3", 2)
    assert rep["ok"]
    alg = fpg.GroupAlgebra(G, 2, bp.star.factor)
    three = cc.classes[cc.names.index("3a")]
    e1 = alg.one() + alg.class_sum(three)
    e2 = alg.class_sum(three)
    assert alg.from_class_coeffs(cc, bp[0].a) == e1
    assert alg.from_class_coeffs(cc, bp[1].a) == e2
    assert e1 * e1 == e1 and e2 * e2 == e2 and (e1 * e2).is_zero()


def test_single_block_idempotent_is_one():
    G, cc, bp, rep = _oracle("a4", 2)
    assert len(bp) == 1 and rep["ok"]
    alg = fpg.GroupAlgebra(G, 2, bp.star.factor)
    assert alg.from_class_coeffs(cc, bp[0].a) == alg.one()


def test_coprime_characteristic():
    G, cc, bp, rep = _oracle("s4", 5)
    assert len(bp) == 5 and rep["ok"]


@pytest.mark.parametrize("name,p", [("s3", 3), ("a5", 3), ("sl2_3", 3), ("psl2_7", 7)])
def test_oracle_golden(name, p):
    assert _oracle(name, p)[3]["failures"] == []


def test_center_radical():
    G, T, cc = computed("s3")
    r3 = fpg.center_radical(G, cc, 3, 1)
    assert r3["dim_radical"] > 0 and r3["matches_blocks"] and r3["group_sum_in_radical"]
    r2 = fpg.center_radical(G, cc, 2, 2)
    assert r2["dim_center"] == 3 and r2["dim_radical"] == 1 and r2["matches_blocks"]
    r5 = fpg.center_radical(G, cc, 5, 3)
    assert r5["dim_radical"] == 0 and r5["nilpotency_index"] == 0


def test_radical_nilpotency_index_s4():
    G, T, cc = computed("s4")
    r = fpg.center_radical(G, cc, 2, 1)
    assert r["dim_radical"] == 4 and r["nilpotency_index"] == 3 and r["center_ok"]


def test_oracle_size_limit():
    G = enumerate_group([Perm.from_cycles("(1,2)", 7), Perm.from_cycles("(1,2,3,4,5,6,7)", 7)])
    with pytest.raises(GroupTooLarge):
        fpg.GroupAlgebra(G, 2)


def test_rank_helpers():
    assert fpg.rank_mod_p([[1, 2], [2, 4]], 5) == 1
    assert fpg.rank_mod_p([[1, 2], [2, 4]], 3) == 1
    assert fpg.rank_mod_p([[1, 1], [1, 2]], 7) == 2
    ns = fpg.nullspace_mod_p([[1, 1, 0]], 2)
    assert len(ns) == 2
