"""Small integer helpers shared across modules."""

from functools import lru_cache
from math import gcd, lcm


def is_prime(n):
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


@lru_cache(maxsize=None)
def factorint(n):
    """Prime factorisation of ``n`` as a tuple of (prime, exponent) pairs."""
    out = []
    f = 2
    while f * f <= n:
        e = 0
        while n % f == 0:
            n //= f
            e += 1
        if e:
            out.append((f, e))
        f += 1 if f == 2 else 2
    if n > 1:
        out.append((n, 1))
    return tuple(out)


def prime_factors(n):
    return [p for p, _ in factorint(n)]


@lru_cache(maxsize=None)
def totient(n):
    r = n
    for p, _ in factorint(n):
        r = r // p * (p - 1)
    return r


def divisors(n):
    ds = [1]
    for p, e in factorint(n):
        ds = [d * p**k for d in ds for k in range(e + 1)]
    return sorted(ds)


def valuation(n, p):
    """Exponent of the prime ``p`` in the nonzero integer ``n``."""
    n = abs(n)
    if n == 0:
        raise ValueError("valuation of zero")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def p_part(n, p):
    return p ** valuation(n, p)


def p_prime_part(n, p):
    return n // p_part(n, p)


def multiplicative_order(a, n):
    if n == 1:
        return 1
    if gcd(a, n) != 1:
        raise ValueError(f"{a} is not a unit mod {n}")
    k, x = 1, a % n
    while x != 1:
        x = x * a % n
        k += 1
    return k


def primitive_root(p):
    """Least generator of the multiplicative group of F_p."""
    if p == 2:
        return 1
    qs = prime_factors(p - 1)
    for g in range(2, p):
        if all(pow(g, (p - 1) // q, p) != 1 for q in qs):
            return g
    raise ValueError(f"no primitive root mod {p}")


def require_prime(p):
    if not isinstance(p, int) or not is_prime(p):
        raise ValueError(f"{p!r} is not a prime")


__all__ = [
    "gcd", "lcm", "is_prime", "factorint", "prime_factors", "totient",
    "divisors", "valuation", "p_part", "p_prime_part",
    "multiplicative_order", "primitive_root", "require_prime",
]
