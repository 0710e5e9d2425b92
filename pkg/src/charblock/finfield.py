"""Finite fields F_p[x]/(f) and the reduction map from cyclotomic integers.

Polynomials over F_p are lists of ints, lowest degree first.
"""

import random
from fractions import Fraction
from functools import lru_cache

from ._nt import multiplicative_order, p_prime_part, require_prime
from .cyclo import Cyclo, as_cyclo, cyclotomic_poly

__all__ = ["GF", "FqElem", "StarMap", "cyclotomic_factors_mod_p", "NonIntegralError"]


class NonIntegralError(ValueError):
    """Raised when a value has a denominator divisible by the characteristic."""


# -- polynomial arithmetic over F_p -------------------------------------------


def ptrim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def padd(a, b, p):
    n = max(len(a), len(b))
    return ptrim([((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)) % p for i in range(n)])


def psub(a, b, p):
    return padd(a, [-x for x in b], p)


def pmul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return ptrim([x % p for x in out])


def pdivmod(a, b, p):
    a = ptrim([x % p for x in a])
    b = ptrim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    inv = pow(b[-1], -1, p)
    q = [0] * max(len(a) - len(b) + 1, 0)
    while len(a) >= len(b):
        t = a[-1] * inv % p
        k = len(a) - len(b)
        q[k] = t
        for j, y in enumerate(b):
            a[k + j] = (a[k + j] - t * y) % p
        a = ptrim(a)
    return ptrim(q), a


def pmod(a, b, p):
    return pdivmod(a, b, p)[1]


def pmonic(a, p):
    a = ptrim(a)
    if not a:
        return a
    inv = pow(a[-1], -1, p)
    return [x * inv % p for x in a]


def pgcd(a, b, p):
    a, b = ptrim(a), ptrim(b)
    while b:
        a, b = b, pmod(a, b, p)
    return pmonic(a, p)


def ppowmod(base, e, mod, p):
    result = [1]
    base = pmod(base, mod, p)
    while e:
        if e & 1:
            result = pmod(pmul(result, base, p), mod, p)
        base = pmod(pmul(base, base, p), mod, p)
        e >>= 1
    return result


def _equal_degree_split(f, d, p, rng):
    """Split a squarefree product of degree-d irreducibles (Cantor-Zassenhaus)."""
    n = len(f) - 1
    if n == d:
        return [f]
    while True:
        a = ptrim([rng.randrange(p) for _ in range(n)])
        if len(a) < 2:
            continue
        if p == 2:
            # absolute trace to F_2: a + a^2 + ... + a^(2^(d-1))
            t, acc = a, a
            for _ in range(d - 1):
                t = pmod(pmul(t, t, p), f, p)
                acc = padd(acc, t, p)
            g = pgcd(acc, f, p)
        else:
            h = ppowmod(a, (p**d - 1) // 2, f, p)
            g = pgcd(psub(h, [1], p), f, p)
        if 0 < len(g) - 1 < n:
            q, _ = pdivmod(f, g, p)
            return _equal_degree_split(g, d, p, rng) + _equal_degree_split(pmonic(q, p), d, p, rng)


@lru_cache(maxsize=None)
def cyclotomic_factors_mod_p(m, p):
    """Monic irreducible factors of Phi_m over F_p (gcd(m, p) = 1), sorted.

    Factors are ordered lexicographically by their coefficient tuples,
    lowest degree first; the first one is the canonical choice.
    """
    require_prime(p)
    if m % p == 0:
        raise ValueError(f"{m} is divisible by the characteristic {p}")
    f = [c % p for c in cyclotomic_poly(m)]
    d = multiplicative_order(p % m, m) if m > 1 else 1
    facs = _equal_degree_split(f, d, p, random.Random(0))
    return tuple(sorted(tuple(x) for x in facs))


# -- field elements -------------------------------------------------------------


class GF:
    """The field F_p[x]/(modulus) with ``modulus`` monic irreducible."""

    def __init__(self, p, modulus):
        require_prime(p)
        self.p = p
        self.modulus = tuple(x % p for x in modulus)
        self.d = len(self.modulus) - 1
        if self.d < 1 or self.modulus[-1] != 1:
            raise ValueError("modulus must be monic of positive degree")
        self.order = p**self.d

    def __eq__(self, other):
        return isinstance(other, GF) and (self.p, self.modulus) == (other.p, other.modulus)

    def __hash__(self):
        return hash((self.p, self.modulus))

    def __repr__(self):
        return f"GF({self.p}, {list(self.modulus)})"

    def __call__(self, x):
        if isinstance(x, FqElem):
            if x.field != self:
                raise ValueError("element of a different field")
            return x
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise NonIntegralError(f"{x} has a denominator divisible by {self.p}")
            return self.scalar(x.numerator * pow(x.denominator, -1, self.p))
        if isinstance(x, int):
            return self.scalar(x)
        if isinstance(x, (list, tuple)):
            return self.from_poly(list(x))
        raise TypeError(f"cannot coerce {x!r} into {self}")

    def scalar(self, k):
        return FqElem(self, (k % self.p,) + (0,) * (self.d - 1))

    def from_poly(self, poly):
        r = pmod(poly, self.modulus, self.p)
        return FqElem(self, tuple(r) + (0,) * (self.d - len(r)))

    @property
    def zero(self):
        return self.scalar(0)

    @property
    def one(self):
        return self.scalar(1)

    @property
    def gen(self):
        """Class of x, a root of the modulus."""
        return self.from_poly([0, 1])

    def elements(self):
        from itertools import product

        for cs in product(range(self.p), repeat=self.d):
            yield FqElem(self, cs)


class FqElem:
    __slots__ = ("field", "c")

    def __init__(self, field, coeffs):
        self.field = field
        self.c = tuple(coeffs)

    def _coerce(self, other):
        if isinstance(other, FqElem):
            if other.field is not self.field and other.field != self.field:
                raise ValueError("mixing elements of different fields")
            return other
        if isinstance(other, (int, Fraction)):
            return self.field(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = self.field.p
        return FqElem(self.field, tuple((a + b) % p for a, b in zip(self.c, other.c)))

    __radd__ = __add__

    def __neg__(self):
        p = self.field.p
        return FqElem(self.field, tuple(-a % p for a in self.c))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        f = self.field
        if f.d == 1:
            return FqElem(f, (self.c[0] * other.c[0] % f.p,))
        return f.from_poly(pmul(list(self.c), list(other.c), f.p))

    __rmul__ = __mul__

    def __pow__(self, k):
        f = self.field
        if k < 0:
            return self.inverse() ** (-k)
        result, base = f.one, self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def inverse(self):
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in finite field")
        return self ** (self.field.order - 2)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def is_zero(self):
        return not any(self.c)

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            try:
                other = self.field(other)
            except NonIntegralError:
                return False
        if not isinstance(other, FqElem):
            return NotImplemented
        return self.c == other.c and self.field == other.field

    def __hash__(self):
        return hash(self.c) if self.field.d > 1 else hash(self.c[0])

    def __repr__(self):
        if self.field.d == 1:
            return str(self.c[0])
        terms = []
        for i, x in enumerate(self.c):
            if x:
                mono = "" if i == 0 else ("t" if i == 1 else f"t^{i}")
                terms.append(str(x) if not mono else (mono if x == 1 else f"{x}*{mono}"))
        return "+".join(terms) if terms else "0"

    def to_json(self):
        return self.c[0] if self.field.d == 1 else list(self.c)


# -- the reduction map -----------------------------------------------------------


class StarMap:
    """Reduction of p-local cyclotomic integers into F_p[x]/(factor).

    ``factor`` is a monic irreducible factor of Phi_{m'} mod p, where ``m'``
    is the p'-part of a conductor bound; its root stands for exp(2 pi i / m').
    """

    def __init__(self, p, mprime, factor=None):
        require_prime(p)
        if mprime % p == 0:
            raise ValueError("m' must be coprime to p")
        self.p = p
        self.mprime = mprime
        choices = cyclotomic_factors_mod_p(mprime, p)
        if factor is None:
            factor = choices[0]
        factor = tuple(x % p for x in factor)
        if factor not in choices:
            raise ValueError(f"{list(factor)} is not an irreducible factor of Phi_{mprime} mod {p}")
        self.factor = factor
        self.field = GF(p, factor)
        self.root = self.field.gen
        self._powers = {}

    @classmethod
    def canonical(cls, p, bound):
        return cls(p, p_prime_part(bound, p))

    @classmethod
    def all_choices(cls, p, bound):
        mp = p_prime_part(bound, p)
        return [cls(p, mp, f) for f in cyclotomic_factors_mod_p(mp, p)]

    def __repr__(self):
        return f"StarMap(p={self.p}, m'={self.mprime}, factor={list(self.factor)})"

    def __eq__(self, other):
        return isinstance(other, StarMap) and (self.p, self.mprime, self.factor) == (
            other.p, other.mprime, other.factor)

    def __hash__(self):
        return hash((self.p, self.mprime, self.factor))

    def _zeta_powers(self, n):
        """Images of z_n^i, i < n."""
        if n in self._powers:
            return self._powers[n]
        pk = n // p_prime_part(n, self.p)
        nprime = n // pk
        if self.mprime % nprime:
            raise ValueError(f"conductor {n} exceeds the capacity of {self}")
        # z_n = z_{p^k}^a * z_{n'}^b with b = (p^k)^-1 mod n'; p-power roots map to 1
        b = pow(pk, -1, nprime) if nprime > 1 else 0
        w = self.root ** ((self.mprime // nprime) * b)
        pw = [self.field.one]
        for _ in range(n - 1):
            pw.append(pw[-1] * w)
        self._powers[n] = pw
        return pw

    def __call__(self, a):
        a = as_cyclo(a)
        if a is NotImplemented:
            raise TypeError("star map expects a cyclotomic number")
        nprime = p_prime_part(a.n, self.p)
        if self.mprime % nprime:
            a = a.reduced()
        for x in a.c:
            if x.denominator % self.p == 0:
                raise NonIntegralError(f"{a} is not integral at {self.p}")
        pw = self._zeta_powers(a.n)
        out = self.field.zero
        for i, x in enumerate(a.c):
            if x:
                out = out + pw[i] * self.field(x)
        return out

    reduce = __call__

    def descriptor(self):
        return {"conductor": self.mprime, "factor": list(self.factor)}
