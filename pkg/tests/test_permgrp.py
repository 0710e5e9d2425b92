import random

import pytest

from charblock.permgrp import (GroupTooLarge, Perm, conjugacy_data, enumerate_group, format_group_file,
                               is_normal, p_parts, p_regular_classes, p_section_partition,
                               parse_group_text, closure, sylow_p, centralizer)

from _support import GOLDEN, computed, group


def cyc(text, n):
    return Perm.from_cycles(text, n)


def test_enumerate_small_groups():
    assert enumerate_group([cyc("(1,2)", 3), cyc("(1,2,3)", 3)]).order == 6
    assert enumerate_group([cyc("(1,2)(3,4)", 4), cyc("(1,2,3)", 4)]).order == 12
    assert enumerate_group([Perm.identity(5)]).order == 1


def test_perm_arithmetic():
    g = cyc("(1,2,3)", 4)
    assert g.order() == 3
    assert g * g.inverse() == Perm.identity(4)
    assert g ** 3 == Perm.identity(4)
    assert str(g) == "(1,2,3)"
    with pytest.raises(ValueError):
        Perm.from_cycles("(1,5)", 4)


def test_enumeration_cap(monkeypatch):
    monkeypatch.setenv("CHARBLOCK_MAX_ORDER", "10")
    with pytest.raises(GroupTooLarge):
        enumerate_group([cyc("(1,2)", 4), cyc("(1,2,3,4)", 4)])


def test_s3_classes():
    cc = conjugacy_data(group("s3"))
    assert cc.sizes == [1, 3, 2]
    assert cc.centralizer_orders == [6, 2, 3]
    assert cc.names == ["1a", "2a", "3a"]


def test_a4_classes_and_trivial():
    assert conjugacy_data(group("a4")).sizes == [1, 3, 4, 4]
    assert len(conjugacy_data(enumerate_group([Perm.identity(2)]))) == 1


@pytest.mark.parametrize("name", GOLDEN)
def test_class_invariants(name):
    G = group(name)
    cc = conjugacy_data(G)
    assert sum(cc.sizes) == G.order
    assert all(s * c == G.order for s, c in zip(cc.sizes, cc.centralizer_orders))
    inv = cc.inverse_map
    assert all(inv[inv[k]] == k for k in range(len(cc)))
    rng = random.Random(1)
    for _ in range(20):
        x, g = rng.choice(G.elements), rng.choice(G.elements)
        assert cc.class_of[x] == cc.class_of[g.inverse() * x * g]
    for n, m in cc.power_maps.items():
        for k, rep in enumerate(cc.reps):
            assert m[k] == cc.class_of[rep ** n]


def test_p_parts():
    g = cyc("(1,2,3,4,5,6)", 6)
    assert p_parts(g, 6, 2) == (g ** 3, g ** 4)
    h = cyc("(1,2,3)", 3)
    assert p_parts(h, 3, 2) == (Perm.identity(3), h)
    e = Perm.identity(3)
    assert p_parts(e, 1, 5) == (e, e)


def test_p_regular_classes():
    cc = conjugacy_data(group("s3"))
    assert sorted(p_regular_classes(cc, 2)) == [0, 2]
    assert sorted(p_regular_classes(cc, 3)) == [0, 1]
    assert sorted(p_regular_classes(cc, 5)) == [0, 1, 2]


def test_sylow():
    G = group("s3")
    P = closure(sylow_p(G.elements, 3, 3), 3)
    assert sorted(P) == sorted(closure([cyc("(1,2,3)", 3)], 3))
    assert len(closure(sylow_p(G.elements, 5, 3) or [G.identity], 3)) == 1
    A5 = group("a5")
    x = cyc("(1,2)(3,4)", 5)
    C = centralizer(A5, [x])
    assert len(C) == 4
    assert len(closure(sylow_p(C, 2, 5), 5)) == 4


@pytest.mark.parametrize("name,p", [("s4", 2), ("s4", 3), ("a5", 2), ("a5", 5), ("psl2_7", 7)])
def test_sylow_order(name, p):
    G = group(name)
    P = closure(sylow_p(G.elements, p, G.degree), G.degree)
    n = G.order
    while n % p == 0:
        n //= p
    assert len(P) == G.order // n


def test_p_sections():
    cc = conjugacy_data(group("s3"))
    norm = lambda part: sorted(sorted(s) for s in part)
    assert norm(p_section_partition(cc, 3)) == [[0, 1], [2]]
    assert norm(p_section_partition(cc, 2)) == [[0, 2], [1]]


def test_normality():
    G = group("a4")
    assert is_normal(G, group("v4_in_a4").elements)
    assert not is_normal(G, group("c3_in_a4").elements)


def test_group_file_roundtrip():
    G = group("sl2_3")
    H = parse_group_text(format_group_file(G), "copy")
    assert sorted(H.elements) == sorted(G.elements)


def test_group_file_errors():
    with pytest.raises(ValueError, match="degree"):
        parse_group_text("(1,2)\n")
    with pytest.raises(ValueError, match="line 2"):
        parse_group_text("degree 3\n(1,2,4)\n")


def test_golden_group_orders():
    orders = {name: computed(name)[0].order for name in GOLDEN}
    assert orders == {"s3": 6, "a4": 12, "s4": 24, "sl2_3": 24, "a5": 60, "psl2_7": 168}
