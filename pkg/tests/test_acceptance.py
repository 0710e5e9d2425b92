"""The eight acceptance criteria, one test each.

Each test records PASS/FAIL in RESULTS; conftest prints them after the run.
Running this file directly prints the same lines and exits nonzero on failure.
"""

import random
import sys
import time

from charblock import blocks as bl
from charblock import charops, chartab, fpg
from charblock.charops import ClassFunction, FusionMap, induce, inner, restrict
from charblock.finfield import StarMap
from charblock.permgrp import closure, Perm, subgroup_from_elements

from _support import BRAUER_PRIMES, EMBEDDINGS, GOLDEN, brauer, computed, embedded, golden, group

RESULTS = {}

# Reference decomposition and Cartan matrices for the bundled Brauer tables.  Rows follow
# the row order of the bundled table of G, columns the order of its IBr_p(G).
REFERENCE_DC = {
    ("s3", 2): ([[1, 0], [1, 0], [0, 1]], [[2, 0], [0, 1]]),
    ("s3", 3): ([[1, 0], [0, 1], [1, 1]], [[2, 1], [1, 2]]),
    ("a4", 2): ([[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 1]],
                [[2, 1, 1], [1, 2, 1], [1, 1, 2]]),
    ("a4", 3): ([[1, 0], [1, 0], [1, 0], [0, 1]], [[3, 0], [0, 1]]),
    ("s4", 2): ([[1, 0], [1, 0], [0, 1], [1, 1], [1, 1]], [[4, 2], [2, 3]]),
    ("s4", 3): ([[1, 0, 0, 0], [0, 1, 0, 0], [1, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]],
                [[2, 1, 0, 0], [1, 2, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]),
    ("sl2_3", 2): ([[1, 0, 0], [0, 1, 0], [0, 0, 1], [0, 1, 1], [1, 0, 1], [1, 1, 0], [1, 1, 1]],
                   [[4, 2, 2], [2, 4, 2], [2, 2, 4]]),
    ("sl2_3", 3): ([[1, 0, 0], [1, 0, 0], [1, 0, 0], [0, 1, 0], [0, 1, 0], [0, 1, 0], [0, 0, 1]],
                   [[3, 0, 0], [0, 3, 0], [0, 0, 1]]),
    ("a5", 2): ([[1, 0, 0, 0], [1, 1, 0, 0], [1, 0, 1, 0], [0, 0, 0, 1], [1, 1, 1, 0]],
                [[4, 2, 2, 0], [2, 2, 1, 0], [2, 1, 2, 0], [0, 0, 0, 1]]),
    ("a5", 3): ([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1], [1, 0, 0, 1]],
                [[2, 0, 0, 1], [0, 1, 0, 0], [0, 0, 1, 0], [1, 0, 0, 2]]),
    ("a5", 5): ([[1, 0, 0], [0, 1, 0], [0, 1, 0], [1, 1, 0], [0, 0, 1]],
                [[2, 1, 0], [1, 3, 0], [0, 0, 1]]),
    ("psl2_7", 2): ([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 1, 1, 0], [1, 1, 1, 0], [0, 0, 0, 1]],
                    [[2, 1, 1, 0], [1, 3, 2, 0], [1, 2, 3, 0], [0, 0, 0, 1]]),
    ("psl2_7", 3): ([[1, 0, 0, 0, 0], [0, 1, 0, 0, 0], [0, 0, 1, 0, 0], [0, 0, 0, 1, 0],
                     [0, 0, 0, 0, 1], [1, 0, 0, 0, 1]],
                    [[2, 0, 0, 0, 1], [0, 1, 0, 0, 0], [0, 0, 1, 0, 0], [0, 0, 0, 1, 0],
                     [1, 0, 0, 0, 2]]),
    ("psl2_7", 7): ([[1, 0, 0, 0], [0, 1, 0, 0], [0, 1, 0, 0], [1, 0, 1, 0], [0, 0, 0, 1], [0, 1, 1, 0]],
                    [[2, 0, 1, 0], [0, 3, 1, 0], [1, 1, 2, 0], [0, 0, 0, 1]]),
}


def _record(n, title, check):
    try:
        check()
    except Exception:
        RESULTS[n] = (False, title)
        raise
    RESULTS[n] = (True, title)


def _same_up_to_columns(D1, C1, D2, C2):
    """Is there a column permutation s with D1[:, s] = D2 and C1[s, s] = C2?"""
    from itertools import permutations

    n = len(D1[0])
    if n != len(D2[0]) or len(D1) != len(D2):
        return False
    for s in permutations(range(n)):
        if all(D1[i][s[j]] == D2[i][j] for i in range(len(D1)) for j in range(n)) and \
                all(C1[s[a]][s[b]] == C2[a][b] for a in range(n) for b in range(n)):
            return True
    return False


# -- 1 ---------------------------------------------------------------------------


def check_golden_tables():
    for name in GOLDEN:
        G = group(name)
        t0 = time.perf_counter()
        T, _ = chartab.table_from_group(G, name=name)
        elapsed = time.perf_counter() - t0
        assert elapsed < 60, f"{name}: {elapsed:.1f} s"
        match = chartab.tables_equivalent(T, golden(name))
        assert match is not None, f"{name}: computed table differs from the reference table"


def test_criterion_1_golden_tables():
    _record(1, "chartab reproduces the six reference tables", check_golden_tables)


# -- 2 ---------------------------------------------------------------------------


def check_burnside_orthogonality():
    for name in GOLDEN:
        _, T, _ = computed(name)
        assert sum(d * d for d in T.degrees) == T.order
        rep = chartab.verify_orthogonality(T)
        assert rep.ok, (name, rep.failures)


def test_criterion_2_burnside_and_orthogonality():
    _record(2, "sum of squared degrees and both orthogonality relations", check_burnside_orthogonality)


# -- 3 ---------------------------------------------------------------------------


def _blocks(name, p):
    T = golden(name)
    bp = bl.block_partition(T, p)
    bl.defects_and_heights(bp, T, p)
    return bp


def check_blocks():
    bp = _blocks("s3", 2)
    assert sorted(b.irr for b in bp) == [[0, 1], [2]]
    assert [[int(str(x)) for x in b.lam] for b in bp] == [[1, 1, 0], [1, 0, 1]]
    assert [b.defect for b in bp] == [1, 0]
    assert _blocks("s3", 3).irr_sets() == [[0, 1, 2]]

    bp = _blocks("a5", 2)
    assert {tuple(b.irr): b.defect for b in bp} == {(0, 1, 2, 4): 2, (3,): 0}
    assert sorted(_blocks("a5", 3).irr_sets()) == [[0, 3, 4], [1], [2]]
    assert sorted(_blocks("a5", 5).irr_sets()) == [[0, 1, 2, 3], [4]]


def test_criterion_3_blocks():
    _record(3, "block partitions of S3 and A5", check_blocks)


# -- 4 ---------------------------------------------------------------------------


def check_decomposition():
    for (name, p), (D_ref, C_ref) in sorted(REFERENCE_DC.items()):
        T = golden(name)
        BT = brauer(name, p)
        data = bl.decomposition_and_cartan(T, BT, bl.block_partition(T, p))
        assert _same_up_to_columns(data.D, data.C, D_ref, C_ref), (name, p)
        assert data.det_C == data.det_expected, (name, p, data.det_C, data.det_expected)


def test_criterion_4_decomposition_and_cartan():
    _record(4, "reference D and C recovered, det C equals the product of p-parts", check_decomposition)


# -- 5 ---------------------------------------------------------------------------


def check_oracle():
    for name, primes in BRAUER_PRIMES.items():
        G, T, cc = computed(name)
        for p in primes:
            bp = bl.block_partition(T, p)
            bl.block_local_data(bp, T, cc, G, p)
            rep = fpg.verify_block_idempotents(G, cc, bp, p)
            assert rep["ok"], (name, p, rep["failures"])
            assert all(r["primitive"] for r in rep["blocks"])


def test_criterion_5_group_algebra_oracle():
    _record(5, "block idempotents verified inside F_q G", check_oracle)


# -- 6 ---------------------------------------------------------------------------


def _induced(gname, hname, p):
    G, T, cc, H, HT, Hcc = embedded(gname, hname)
    star = bl.default_star(T, p)
    bp = bl.block_partition(T, p, star)
    hp = bl.block_partition(HT, p, star)
    fusion = FusionMap.from_subgroup(cc, Hcc, T, HT)
    principal = next(b.index for b in hp if b.is_principal)
    return bp, bl.induced_block(T, bp, HT, hp, fusion, principal, p)


def check_induced_blocks():
    _, r = _induced("s3", "a3_in_s3", 2)
    assert not r.defined
    bp, r = _induced("a5", "a4_in_a5", 2)
    assert r.defined and bp[r.block].is_principal
    assert [int(str(x)) for x in r.values] == [1, 1, 0, 0, 0]


def test_criterion_6_induced_blocks():
    _record(6, "S3/A3 undefined, A5/A4 gives the principal block", check_induced_blocks)


# -- 7 ---------------------------------------------------------------------------


def _random_character(T, rng):
    vals = None
    for row in T.irr:
        c = rng.randrange(3)
        if c:
            f = ClassFunction(T, row) * c
            vals = f if vals is None else vals + f
    return vals if vals is not None else ClassFunction(T, T.irr[rng.randrange(len(T.irr))])


def _frobenius_reciprocity():
    rng = random.Random(0)
    for gname, hname in EMBEDDINGS:
        _, T, cc, _, HT, Hcc = embedded(gname, hname)
        fusion = FusionMap.from_subgroup(cc, Hcc, T, HT)
        for _ in range(100):
            phi = _random_character(HT, rng)
            psi = _random_character(T, rng)
            assert inner(induce(phi, fusion), psi) == inner(phi, restrict(psi, fusion)), (gname, hname)


def _transitivity():
    # V4 < A4 < S4, all realised inside S4
    G, T, cc = computed("s4")
    A = subgroup_from_elements(G, group("a4_in_s4").elements, name="A4")
    V = subgroup_from_elements(G, group("v4_in_a4").elements, name="V4")
    AT, Acc = chartab.table_from_group(A)
    VT, Vcc = chartab.table_from_group(V)
    v_to_a = FusionMap.from_subgroup(Acc, Vcc, AT, VT)
    a_to_g = FusionMap.from_subgroup(cc, Acc, T, AT)
    v_to_g = FusionMap.from_subgroup(cc, Vcc, T, VT)
    for row in VT.irr:
        phi = ClassFunction(VT, row)
        assert induce(induce(phi, v_to_a), a_to_g) == induce(phi, v_to_g)


def _mackey():
    G, T, cc, H, HT, Hcc = embedded("s4", "s3_in_s4")
    others = [group("s3_in_s4").elements, group("a4_in_s4").elements, group("v4_in_a4").elements]
    for row in HT.irr:
        phi = {g: row[Hcc.class_of[g]] for g in H.elements}
        for K in others:
            assert charops.mackey_check(G, H.elements, K, phi)


def _commutator_counts():
    for name in ("s3", "a4", "s4"):
        G, T, cc = computed(name)
        tally = [0] * len(cc)
        for x in G.elements:
            xi = x.inverse()
            for y in G.elements:
                tally[cc.class_of[xi * y.inverse() * x * y]] += 1
        brute = [t // s for t, s in zip(tally, cc.sizes)]
        assert chartab.commutator_counts(T) == brute, name


def _block_orthogonality():
    for name in GOLDEN:
        T = golden(name)
        for p in (2, 3, 5, 7):
            weak, full = bl.block_orthogonality(T, bl.block_partition(T, p), p)
            assert weak and full, (name, p)


def _star_invariance():
    for name in GOLDEN:
        T = golden(name)
        for p in (2, 3, 5, 7):
            if T.order % p:
                continue
            parts = {tuple(map(tuple, sorted(bl.block_partition(T, p, s).irr_sets())))
                     for s in StarMap.all_choices(p, T.exponent)}
            assert len(parts) == 1, (name, p)


def _defect_zero_vanishing():
    for name in GOLDEN:
        T = golden(name)
        for p in (2, 3, 5, 7):
            if T.order % p:
                continue
            bp = bl.block_partition(T, p)
            bl.defects_and_heights(bp, T, p)
            singular = [k for k, o in enumerate(T.rep_orders) if o % p == 0]
            for b in bp:
                if b.defect == 0:
                    assert all(T.irr[i][k] == 0 for i in b.irr for k in singular), (name, p)


def _second_main_theorem():
    G, T, cc = computed("a5")
    x = cc.reps[T.class_names.index("2a")]
    hd = bl.higher_decomposition(T, G, cc, x, 2)
    assert hd.verified
    chi4 = T.degrees.index(4)
    assert all(v == 0 for v in hd.matrix[chi4])


def check_properties():
    _frobenius_reciprocity()
    _transitivity()
    _mackey()
    _commutator_counts()
    _block_orthogonality()
    _star_invariance()
    _defect_zero_vanishing()
    _second_main_theorem()


def test_criterion_7_property_suites():
    _record(7, "reciprocity, transitivity, Mackey, kappa, block orthogonality, star choice, "
               "defect zero, d^x", check_properties)


# -- 8 ---------------------------------------------------------------------------


def check_robinson():
    G, T, cc = computed("s3")
    A3 = closure([Perm.from_cycles("(1,2,3)", 3)], 3)
    assert bl.robinson_block_count(G, cc, 3, A3)["count"] == 1

    G, T, cc = computed("a4")
    V4 = group("v4_in_a4").elements
    count = bl.robinson_block_count(G, cc, 2, V4)["count"]
    bp = bl.block_partition(T, 2)
    bl.block_local_data(bp, T, cc, G, 2)
    with_v4 = [b for b in bp if b.defect_group_order == 4]
    assert count == len(with_v4) == 1


def test_criterion_8_robinson():
    _record(8, "Robinson count for S3 (p=3, D=A3) and A4 (p=2, D=V4)", check_robinson)


CHECKS = [
    (1, "golden tables", check_golden_tables),
    (2, "Burnside and orthogonality", check_burnside_orthogonality),
    (3, "blocks", check_blocks),
    (4, "decomposition and Cartan", check_decomposition),
    (5, "oracle agreement", check_oracle),
    (6, "induced blocks", check_induced_blocks),
    (7, "property suites", check_properties),
    (8, "Robinson", check_robinson),
]


if __name__ == "__main__":
    failed = 0
    for n, title, fn in CHECKS:
        try:
            fn()
            print(f"criterion {n}: PASS  {title}")
        except Exception as exc:  # report and keep going
            failed += 1
            print(f"criterion {n}: FAIL  {title}: {exc!r}")
    sys.exit(1 if failed else 0)
