"""Exact arithmetic in cyclotomic fields.

A :class:`Cyclo` is stored as a conductor ``n`` together with rational
coordinates in the power basis ``1, z, ..., z^(phi(n)-1)`` of
``Q[x]/(Phi_n)``, where ``z = exp(2 pi i / n)``.  Values of different
conductors are lifted to the lcm before combining.  ``reduced()`` returns the
representation with the smallest possible conductor; hashing goes through it,
so equal values hash equally regardless of how they were built.

The textual format used in table files is::

    expr := term (('+'|'-') term)*
    term := rat | rat '*' atom | atom
    atom := 'E(' n ')' ['^' k]
    rat  := int ['/' int]
"""

import cmath
import re
from fractions import Fraction
from functools import lru_cache
from math import gcd, lcm

from ._nt import prime_factors, totient

__all__ = ["Cyclo", "cyclotomic_poly", "E", "as_cyclo", "parse_cyclo", "format_cyclo"]


@lru_cache(maxsize=None)
def cyclotomic_poly(n):
    """Integer coefficients (low degree first) of the n-th cyclotomic polynomial."""
    num = [-1] + [0] * (n - 1) + [1]  # x^n - 1
    for d in range(1, n):
        if n % d == 0:
            num = _exact_div(num, cyclotomic_poly(d))
    return tuple(num)


def _exact_div(a, b):
    a = list(a)
    q = [0] * (len(a) - len(b) + 1)
    for i in range(len(q) - 1, -1, -1):
        t = a[i + len(b) - 1] // b[-1]
        q[i] = t
        for j, bj in enumerate(b):
            a[i + j] -= t * bj
    assert not any(a), "inexact polynomial division"
    return q


@lru_cache(maxsize=None)
def _power_table(n):
    """Power-basis coordinates (ints) of z_n^e for e = 0..n-1."""
    phi = totient(n)
    cp = cyclotomic_poly(n)
    v = [1] + [0] * (phi - 1)
    table = []
    for _ in range(n):
        table.append(tuple(v))
        top = v[-1]
        v = [0] + v[:-1]
        if top:
            v = [x - top * c for x, c in zip(v, cp)]
    return tuple(table)


def _reduce_poly(raw, n):
    """Reduce a coefficient list of arbitrary length modulo Phi_n."""
    phi = totient(n)
    if len(raw) <= phi:
        return list(raw) + [0] * (phi - len(raw))
    cp = cyclotomic_poly(n)
    raw = list(raw)
    for e in range(len(raw) - 1, phi - 1, -1):
        t = raw[e]
        if t:
            base = e - phi
            for j in range(phi + 1):
                raw[base + j] -= t * cp[j]
    return raw[:phi]


def _from_exponents(n, terms):
    """Coordinates of sum(coeff * z_n^e) for an iterable of (e, coeff)."""
    table = _power_table(n)
    out = [Fraction(0)] * totient(n)
    for e, c in terms:
        if c:
            for i, t in enumerate(table[e % n]):
                if t:
                    out[i] += c * t
    return out


class Cyclo:
    __slots__ = ("n", "c", "_red")

    def __init__(self, n, coeffs):
        self.n = n
        self.c = tuple(coeffs)
        self._red = None

    # -- constructors -------------------------------------------------------

    @classmethod
    def _make(cls, n, coeffs):
        if n > 1 and not any(coeffs[1:]):
            return cls(1, (coeffs[0],))
        return cls(n, coeffs)

    @classmethod
    def rational(cls, q):
        return cls(1, (Fraction(q),))

    @classmethod
    def zeta(cls, n, k=1):
        if n <= 0:
            raise ValueError("conductor must be positive")
        return cls._make(n, _from_exponents(n, [(k, 1)]))

    @classmethod
    def from_exponents(cls, n, terms):
        """Build ``sum(c * E(n)^e)`` from a mapping or iterable of (e, c)."""
        items = terms.items() if isinstance(terms, dict) else terms
        return cls._make(n, _from_exponents(n, [(e, Fraction(c)) for e, c in items]))

    # -- basic predicates ---------------------------------------------------

    def is_rational(self):
        return self.n == 1 or not any(self.c[1:])

    def to_fraction(self):
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.c[0]

    def is_zero(self):
        return not any(self.c)

    def is_algebraic_integer(self):
        # powers of z_n form an integral basis of Z[z_n]
        return all(x.denominator == 1 for x in self.c)

    def is_real(self):
        return self == self.conjugate()

    # -- lifting ------------------------------------------------------------

    def _lift(self, n):
        if n == self.n:
            return list(self.c)
        step = n // self.n
        return _from_exponents(n, [(i * step, x) for i, x in enumerate(self.c) if x])

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other):
        other = as_cyclo(other)
        if other is NotImplemented:
            return NotImplemented
        if self.n == 1 and other.n == 1:
            return Cyclo(1, (self.c[0] + other.c[0],))
        n = lcm(self.n, other.n)
        a, b = self._lift(n), other._lift(n)
        return Cyclo._make(n, [x + y for x, y in zip(a, b)])

    __radd__ = __add__

    def __neg__(self):
        return Cyclo(self.n, [-x for x in self.c])

    def __sub__(self, other):
        other = as_cyclo(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return as_cyclo(other) - self

    def __mul__(self, other):
        other = as_cyclo(other)
        if other is NotImplemented:
            return NotImplemented
        if other.n == 1:
            s = other.c[0]
            return Cyclo._make(self.n, [x * s for x in self.c]) if s else Cyclo(1, (Fraction(0),))
        if self.n == 1:
            return other * self
        n = lcm(self.n, other.n)
        a, b = self._lift(n), other._lift(n)
        raw = [Fraction(0)] * (2 * len(a) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        raw[i + j] += x * y
        return Cyclo._make(n, _reduce_poly(raw, n))

    __rmul__ = __mul__

    def inverse(self):
        if self.is_zero():
            raise ZeroDivisionError("division by zero in cyclotomic field")
        if self.n == 1:
            return Cyclo(1, (1 / self.c[0],))
        from .linalg import solve

        n = self.n
        phi = len(self.c)
        cols = []
        v = list(self.c)
        cp = cyclotomic_poly(n)
        for _ in range(phi):
            cols.append(v)
            top = v[-1]
            v = [Fraction(0)] + v[:-1]
            if top:
                v = [x - top * c for x, c in zip(v, cp)]
        mat = [[cols[j][i] for j in range(phi)] for i in range(phi)]
        e0 = [Fraction(1)] + [Fraction(0)] * (phi - 1)
        return Cyclo._make(n, solve(mat, e0))

    def __truediv__(self, other):
        other = as_cyclo(other)
        if other is NotImplemented:
            return NotImplemented
        if other.n == 1:
            if not other.c[0]:
                raise ZeroDivisionError("division by zero in cyclotomic field")
            s = 1 / other.c[0]
            return Cyclo._make(self.n, [x * s for x in self.c])
        return self * other.inverse()

    def __rtruediv__(self, other):
        return as_cyclo(other) / self

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** (-k)
        result = Cyclo.rational(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # -- Galois action ------------------------------------------------------

    def galois(self, k):
        """Image under the automorphism z -> z^k (``k`` coprime to the conductor)."""
        n = self.n
        if gcd(k, n) != 1:
            r = self.reduced()
            if r.n != n:
                return r.galois(k)
            raise ValueError(f"galois exponent {k} not coprime to conductor {n}")
        if n == 1:
            return self
        return Cyclo._make(n, _from_exponents(n, [(i * k, x) for i, x in enumerate(self.c) if x]))

    def conjugate(self):
        return self.galois(-1)

    # -- minimal conductor --------------------------------------------------

    def reduced(self):
        if self._red is not None:
            return self._red
        n, c = self.n, list(self.c)
        if n > 1 and not any(c[1:]):
            n, c = 1, c[:1]
        changed = n > 1
        while changed:
            changed = False
            for q in prime_factors(n):
                d = n // q
                if _fixed_by_subgroup(n, c, d):
                    c = _descend(n, c, d)
                    n = d
                    changed = n > 1
                    break
        red = Cyclo(n, c)
        red._red = red
        self._red = red
        return red

    @property
    def conductor(self):
        return self.reduced().n

    # -- comparison ---------------------------------------------------------

    def __eq__(self, other):
        other = as_cyclo(other)
        if other is NotImplemented:
            return NotImplemented
        if self.n == other.n:
            return self.c == other.c
        if self.n == 1 and other.n != 1:
            return other.is_rational() and other.c[0] == self.c[0]
        if other.n == 1:
            return self.is_rational() and self.c[0] == other.c[0]
        n = lcm(self.n, other.n)
        return self._lift(n) == other._lift(n)

    def __hash__(self):
        r = self.reduced()
        if r.n == 1:
            return hash(r.c[0])
        return hash((r.n, r.c))

    def __bool__(self):
        return not self.is_zero()

    # -- numerics -----------------------------------------------------------

    def to_complex(self):
        n = self.n
        return sum(
            (float(x) * cmath.exp(2j * cmath.pi * i / n) for i, x in enumerate(self.c) if x),
            0j,
        )

    def embedding_key(self):
        z = self.to_complex()
        return (round(z.real, 9), round(z.imag, 9))

    def __repr__(self):
        return f"Cyclo({format_cyclo(self)!r})"

    def __str__(self):
        return format_cyclo(self)


def E(n, k=1):
    """The root of unity exp(2 pi i k / n)."""
    return Cyclo.zeta(n, k)


def as_cyclo(x):
    if isinstance(x, Cyclo):
        return x
    if isinstance(x, (int, Fraction)):
        return Cyclo(1, (Fraction(x),))
    return NotImplemented


def _fixed_by_subgroup(n, c, d):
    """True if the value lies in Q(z_d), tested via Gal(Q(z_n)/Q(z_d))."""
    val = Cyclo(n, c)
    for k in range(1 + d, n + 1, d):
        if gcd(k, n) == 1 and k % n != 1:
            if val.galois(k).c != val.c:
                return False
    return True


@lru_cache(maxsize=None)
def _descent_data(n, d):
    """Pivot rows and inverse block for rewriting Q(z_d) elements stored in Q(z_n)."""
    from .linalg import rref

    phi_d = totient(d)
    step = n // d
    table = _power_table(n)
    cols = [table[(i * step) % n] for i in range(phi_d)]
    rows = [[Fraction(cols[j][i]) for j in range(phi_d)] for i in range(totient(n))]
    _, piv = rref([list(r) for r in zip(*rows)])  # pivots over rows of M
    sub = [rows[i] for i in piv]
    from .linalg import solve

    ident = [[Fraction(int(i == j)) for j in range(phi_d)] for i in range(phi_d)]
    inv = solve(sub, ident)
    return tuple(piv), inv


def _descend(n, c, d):
    piv, inv = _descent_data(n, d)
    rhs = [c[i] for i in piv]
    return [sum((inv[i][j] * rhs[j] for j in range(len(rhs))), Fraction(0)) for i in range(len(inv))]


# -- text format ---------------------------------------------------------------


def _fmt_rat(q):
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _display_terms(val):
    """(exponent, coeff) list used for printing; exponent None means constant."""
    r = val.reduced()
    n = r.n
    if n == 1:
        return 1, [(0, r.c[0])]
    coeffs = list(r.c)
    from ._nt import is_prime

    if is_prime(n):
        # 1 + z + ... + z^(n-1) = 0: shift all n coordinates by the mode
        full = coeffs + [Fraction(0)]
        counts = {}
        for x in full:
            counts[x] = counts.get(x, 0) + 1
        best = max(counts.values())
        if counts.get(Fraction(0), 0) < best:
            t = min(x for x, k in counts.items() if k == best)
            full = [x - t for x in full]
        return n, list(enumerate(full))
    return n, list(enumerate(coeffs))


def format_cyclo(val):
    n, terms = _display_terms(as_cyclo(val))
    parts = []
    for e, x in terms:
        if not x:
            continue
        if e == 0:
            body = _fmt_rat(abs(x))
        else:
            atom = f"E({n})" if e == 1 else f"E({n})^{e}"
            body = atom if abs(x) == 1 else f"{_fmt_rat(abs(x))}*{atom}"
        sign = "-" if x < 0 else "+"
        parts.append((sign, body))
    if not parts:
        return "0"
    out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, body in parts[1:]:
        out += sign + body
    return out


_TOKEN = re.compile(r"(?:(?P<rat>\d+(?:/\d+)?)|(?P<atom>E\(\s*(?P<n>\d+)\s*\)(?:\^(?P<k>-?\d+))?)|(?P<op>[-+*]))")


class CycloSyntaxError(ValueError):
    def __init__(self, text, pos, msg):
        super().__init__(f"{msg} at position {pos} in {text!r}")
        self.text = text
        self.pos = pos


def _tokenize(text):
    s = text
    pos = 0
    out = []
    while pos < len(s):
        if s[pos].isspace():
            pos += 1
            continue
        m = _TOKEN.match(s, pos)
        if not m:
            raise CycloSyntaxError(text, pos, "unexpected character")
        if m.group("rat"):
            num, _, den = m.group("rat").partition("/")
            if den and int(den) == 0:
                raise CycloSyntaxError(text, m.start("rat"), "zero denominator")
            out.append(("rat", Fraction(int(num), int(den) if den else 1), m.start("rat")))
        elif m.group("atom"):
            n = int(m.group("n"))
            if n == 0:
                raise CycloSyntaxError(text, m.start("atom"), "E(0) is undefined")
            k = int(m.group("k")) if m.group("k") is not None else 1
            out.append(("atom", (n, k), m.start("atom")))
        else:
            out.append((m.group("op"), None, m.start("op")))
        pos = m.end()
    return out


def parse_cyclo(text):
    """Parse the textual cyclotomic format into a :class:`Cyclo`."""
    toks = _tokenize(text)
    if not toks:
        raise CycloSyntaxError(text, 0, "empty value")
    terms = {}
    i = 0
    sign = 1
    if toks[0][0] in "+-":
        sign = -1 if toks[0][0] == "-" else 1
        i = 1
    while True:
        if i >= len(toks):
            raise CycloSyntaxError(text, len(text), "expected a term")
        kind, val, at = toks[i]
        coeff, atom = Fraction(1), None
        if kind == "rat":
            coeff = val
            i += 1
            if i < len(toks) and toks[i][0] == "*":
                if i + 1 >= len(toks) or toks[i + 1][0] != "atom":
                    raise CycloSyntaxError(text, toks[i][2], "expected E(n) after '*'")
                atom = toks[i + 1][1]
                i += 2
        elif kind == "atom":
            atom = val
            i += 1
        else:
            raise CycloSyntaxError(text, at, f"unexpected {kind!r}")
        n, k = atom if atom else (1, 0)
        terms.setdefault(n, []).append((k, sign * coeff))
        if i == len(toks):
            break
        kind, _, at = toks[i]
        if kind not in "+-" or kind == "*":
            raise CycloSyntaxError(text, at, "expected '+' or '-'")
        sign = -1 if kind == "-" else 1
        i += 1
    out = Cyclo.rational(0)
    for n, ts in sorted(terms.items()):
        out = out + Cyclo.from_exponents(n, ts)
    return out
