import pytest

from charblock.classalg import TableInconsistent, structure_constants, structure_constants_from_table

from _support import GOLDEN, computed, golden


def test_s3_involution_square():
    G, T, cc = computed("s3")
    sc = structure_constants(G, cc)
    # 2a^2 = 3*1a + 3*3a
    assert sc.a[1][1] == [3, 0, 3]


def test_a4_involutions():
    G, T, cc = computed("a4")
    sc = structure_constants(G, cc)
    assert sc.a[1][1][0] == 3


@pytest.mark.parametrize("name", GOLDEN)
def test_identity_class_is_neutral(name):
    G, T, cc = computed(name)
    sc = structure_constants(G, cc)
    n = len(cc)
    assert all(sc.a[K][0][M] == (K == M) for K in range(n) for M in range(n))
    sc.check()


@pytest.mark.parametrize("name", GOLDEN)
def test_table_formula_matches_enumeration(name):
    G, T, cc = computed(name)
    assert structure_constants_from_table(T) == structure_constants(G, cc)


@pytest.mark.parametrize("name", GOLDEN)
def test_central_character_eigen_relation(name):
    G, T, cc = computed(name)
    sc = structure_constants(G, cc)
    n = len(cc)
    for row in T.irr:
        w = [row[k] * T.class_sizes[k] / row[0] for k in range(n)]
        for K in range(n):
            for L in range(n):
                rhs = sum((w[M] * sc.a[K][L][M] for M in range(n)), 0 * w[0])
                assert w[K] * w[L] == rhs


def test_inconsistent_table_detected():
    T = golden("s3")
    T.irr[2] = [T.irr[2][0], T.irr[2][1], T.irr[2][2] * 2]
    with pytest.raises(TableInconsistent):
        structure_constants_from_table(T)
