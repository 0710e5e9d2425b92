import math
from fractions import Fraction

import pytest

from charblock.cyclo import Cyclo, CycloSyntaxError, E, cyclotomic_poly, format_cyclo, parse_cyclo


def test_cyclotomic_polynomials():
    assert list(cyclotomic_poly(1)) == [-1, 1]
    assert list(cyclotomic_poly(6)) == [1, -1, 1]
    assert list(cyclotomic_poly(12)) == [1, 0, -1, 0, 1]
    # Phi_105 is the first with a coefficient of absolute value 2
    assert min(cyclotomic_poly(105)) == -2


def test_golden_ratio_values():
    a = E(5) + E(5, 4)
    assert math.isclose(a.to_complex().real, 0.6180339887, rel_tol=1e-9)
    alpha_star = -E(5) - E(5, 4)
    assert math.isclose(alpha_star.to_complex().real, (1 - math.sqrt(5)) / 2, rel_tol=1e-12)
    # alpha satisfies x^2 = x + 1
    alpha = -E(5, 2) - E(5, 3)
    assert alpha * alpha == alpha + 1


def test_basic_identities():
    z = E(3)
    assert z.conjugate() == E(3, 2)
    assert z * E(3, 2) == 1
    assert z + z.conjugate() == -1
    assert E(4) * E(4) == -1
    assert (E(7) / E(7, 3)) == E(7, -2)
    assert E(6) == -E(3, 2)


def test_reduction_to_minimal_conductor():
    x = E(12, 4) + E(12, 8)
    assert x == -1 and x.is_rational()
    assert E(20, 4).reduced().n == 5
    assert (E(8) + E(8, 7)) * (E(8) + E(8, 7)) == 2


def test_galois():
    alpha_star = -E(5) - E(5, 4)
    assert alpha_star.galois(2) == -E(5, 2) - E(5, 3)
    assert Cyclo.rational(Fraction(3, 7)).galois(4) == Fraction(3, 7)
    assert E(9, 2).galois(-1) == E(9, 2).conjugate()


def test_galois_composition_exhaustive():
    for n in range(1, 25):
        x = sum((E(n, i) * (i + 1) for i in range(n)), Cyclo.rational(0))
        units = [k for k in range(1, n + 1) if math.gcd(k, n) == 1]
        for k1 in units:
            for k2 in units:
                assert x.galois(k1).galois(k2) == x.galois(k1 * k2 % n or n)


def test_algebraic_integers():
    assert (E(5) + E(5, 4)).is_algebraic_integer()
    assert not Cyclo.rational(Fraction(1, 2)).is_algebraic_integer()
    assert E(3).is_algebraic_integer()
    assert not ((E(3) - 1) / 3).is_algebraic_integer()


def test_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        E(5) / (E(5) - E(5))


@pytest.mark.parametrize("text", ["1", "-1/2", "E(3)", "-E(5)-E(5)^4", "2*E(7)^3+E(7)^5", "1/2*E(8)-3"])
def test_format_parse_roundtrip(text):
    v = parse_cyclo(text)
    assert parse_cyclo(format_cyclo(v)) == v


def test_parse_values():
    assert parse_cyclo("-E(5)-E(5)^4") == -E(5) - E(5, 4)
    assert parse_cyclo("3/4") == Fraction(3, 4)
    assert parse_cyclo("E(4)^2") == -1


@pytest.mark.parametrize("bad", ["", "E(", "E(0)", "1/0", "2**E(3)", "E(3)^", "x"])
def test_parse_errors(bad):
    with pytest.raises(CycloSyntaxError):
        parse_cyclo(bad)


def test_galois_uses_minimal_conductor():
    x = Cyclo.from_exponents(15, {3: 1})  # E(5) written in Q(E(15))
    assert x.galois(3) == E(5, 3)
    with pytest.raises(ValueError):
        E(15).galois(3)
