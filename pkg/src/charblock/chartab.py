"""Ordinary character tables.

``compute_table`` is the Burnside-Dixon method: the class matrices are
simultaneously diagonalised over a prime field F_l with l = 1 mod exp(G), the
common eigenvectors are the central characters mod l, and character values are
lifted back to Q(zeta_exp) through eigenvalue multiplicities of each class
representative.
"""

import itertools
import random
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from math import isqrt

from . import linalg
from ._nt import gcd, is_prime, lcm, prime_factors, primitive_root
from .cyclo import Cyclo
from .finfield import _equal_degree_split, pgcd, pmonic, ppowmod, psub

__all__ = [
    "CharacterTable", "compute_table", "CentralCharTable", "central_characters",
    "verify_orthogonality", "OrthogonalityReport", "table_determinant",
    "structure_report", "commutator_counts", "galois_conjugate_table",
    "tables_equivalent", "SplittingFailure", "TableInvalid", "table_from_group",
]


class SplittingFailure(RuntimeError):
    pass


class TableInvalid(ValueError):
    pass


@dataclass
class CharacterTable:
    name: str
    order: int
    class_names: list
    class_sizes: list
    centralizers: list
    rep_orders: list
    irr: list
    power_maps: dict = field(default_factory=dict)

    def __post_init__(self):
        self.irr = [[_cy(v) for v in row] for row in self.irr]
        self._inverse_map = None

    @property
    def nclasses(self):
        return len(self.class_names)

    @property
    def degrees(self):
        return [int(row[0].to_fraction()) for row in self.irr]

    @property
    def exponent(self):
        return lcm(1, *self.rep_orders)

    def class_index(self, name):
        return self.class_names.index(name)

    @property
    def inverse_map(self):
        if self._inverse_map is None:
            cols = [tuple(row[k] for row in self.irr) for k in range(self.nclasses)]
            lookup = {c: k for k, c in enumerate(cols)}
            out = []
            for c in cols:
                target = tuple(v.conjugate() for v in c)
                if target not in lookup:
                    raise TableInvalid("complex conjugate of a column is not a column")
                out.append(lookup[target])
            self._inverse_map = out
        return self._inverse_map

    def galois_class(self, k, n):
        """Class of x_K^n for n coprime to |x_K|, read off the table columns."""
        col = tuple(row[k].galois(n % self.exponent or 1) if gcd(n, self.exponent) == 1
                    else _galois_mod(row[k], n, self.rep_orders[k]) for row in self.irr)
        for j in range(self.nclasses):
            if self.rep_orders[j] == self.rep_orders[k] and all(
                    row[j] == v for row, v in zip(self.irr, col)):
                return j
        raise TableInvalid(f"no column for power {n} of class {self.class_names[k]}")

    def power_class(self, k, n):
        """Class of x_K^n, using stored prime power maps and Galois for coprime parts."""
        o = self.rep_orders[k]
        n %= o
        if n == 0:
            return 0
        cur = k
        for q in prime_factors(o):
            while n % q == 0:
                if q not in self.power_maps:
                    raise TableInvalid(f"power map for {q} not available")
                cur = self.power_maps[q][cur]
                n //= q
        if n % self.rep_orders[cur] in (0, 1):
            return cur
        return self.galois_class(cur, n)

    def copy(self, irr=None, name=None):
        return CharacterTable(
            name=name or self.name, order=self.order,
            class_names=list(self.class_names), class_sizes=list(self.class_sizes),
            centralizers=list(self.centralizers), rep_orders=list(self.rep_orders),
            irr=[list(r) for r in (irr if irr is not None else self.irr)],
            power_maps={p: list(m) for p, m in self.power_maps.items()},
        )


def _galois_mod(v, n, order):
    # n coprime to the element order but not to exp(G): shift by a multiple of the order
    exp_bound = v.n * order
    m = n
    while gcd(m, exp_bound) != 1:
        m += order
    return v.galois(m)


def _cy(v):
    return v if isinstance(v, Cyclo) else Cyclo.rational(v)


# -- Dixon --------------------------------------------------------------------------


def _dixon_primes(exp, order, count=6):
    ell = exp + 1
    found = 0
    while found < count:
        if is_prime(ell) and ell * ell > 4 * order:
            found += 1
            yield ell
        ell += exp


def _det_mod(m, p):
    m = [list(r) for r in m]
    n = len(m)
    d = 1
    for c in range(n):
        pr = next((i for i in range(c, n) if m[i][c] % p), None)
        if pr is None:
            return 0
        if pr != c:
            m[c], m[pr] = m[pr], m[c]
            d = -d
        d = d * m[c][c] % p
        inv = pow(m[c][c], -1, p)
        for i in range(c + 1, n):
            f = m[i][c] * inv % p
            if f:
                m[i] = [(x - f * y) % p for x, y in zip(m[i], m[c])]
    return d % p


def _charpoly_roots(R, ell, rng):
    """Distinct roots in F_l of det(R - cI), via interpolation and root splitting."""
    r = len(R)
    xs = list(range(r + 1))
    ys = [_det_mod([[(R[i][j] - (c if i == j else 0)) % ell for j in range(r)] for i in range(r)], ell)
          for c in xs]
    poly = [0]
    for i, xi in enumerate(xs):
        basis, denom = [1], 1
        for j, xj in enumerate(xs):
            if j != i:
                basis = [(a - xj * b) % ell for a, b in zip([0] + basis, basis + [0])]
                denom = denom * (xi - xj) % ell
        coef = ys[i] * pow(denom, -1, ell) % ell
        poly = [(a + coef * b) % ell for a, b in itertools.zip_longest(poly, basis, fillvalue=0)]
    poly = pmonic(poly, ell)
    xl = ppowmod([0, 1], ell, poly, ell)
    g = pgcd(psub(xl, [0, 1], ell), poly, ell)
    if len(g) <= 1:
        return []
    return sorted((-f[0]) % ell for f in _equal_degree_split(g, 1, ell, rng))


def _split_common_eigenspaces(mats, k, ell, rng):
    spaces = [linalg.rref_mod([[int(i == j) for j in range(k)] for i in range(k)], ell)]
    for A in mats:
        if all(len(piv) == 1 for _, piv in spaces):
            break
        new = []
        for basis, piv in spaces:
            r = len(piv)
            if r == 1:
                new.append((basis, piv))
                continue
            images = [[sum(A[L][M] * b[M] for M in range(k)) % ell for L in range(k)] for b in basis]
            R = [[images[j][piv[i]] for j in range(r)] for i in range(r)]
            roots = _charpoly_roots(R, ell, rng)
            total = 0
            for c in roots:
                Rc = [[(R[i][j] - (c if i == j else 0)) % ell for j in range(r)] for i in range(r)]
                vecs = []
                for x in linalg.nullspace_mod(Rc, ell, r):
                    vecs.append([sum(x[j] * basis[j][M] for j in range(r)) % ell for M in range(k)])
                total += len(vecs)
                new.append(linalg.rref_mod(vecs, ell))
            if total != r:
                raise SplittingFailure(f"class matrix not diagonalisable over F_{ell}")
        spaces = new
    if not all(len(piv) == 1 for _, piv in spaces):
        raise SplittingFailure(f"common eigenspaces do not split over F_{ell}")
    return [basis[0] for basis, _ in spaces]


def _dixon(cc, sc, ell, seed):
    k = len(cc)
    order = cc.group.order
    sizes = cc.sizes
    rng = random.Random(seed)
    mats = [[[sc.a[K][L][M] % ell for M in range(k)] for L in range(k)] for K in range(1, k)]
    vecs = _split_common_eigenspaces(mats, k, ell, rng)
    exp = lcm(1, *cc.rep_orders)
    z = pow(primitive_root(ell), (ell - 1) // exp, ell)
    inv = cc.inverse_map
    powers = []
    for K in range(k):
        o = cc.rep_orders[K]
        powers.append([cc.power_class(K, i) for i in range(o)])
    rows = []
    for v in vecs:
        if v[0] % ell == 0:
            raise SplittingFailure("eigenvector vanishes on the identity class")
        s = pow(v[0], -1, ell)
        omega = [x * s % ell for x in v]
        tot = sum(omega[K] * omega[inv[K]] * pow(sizes[K], -1, ell) for K in range(k)) % ell
        if tot == 0:
            raise SplittingFailure("degenerate central character")
        d2 = order * pow(tot, -1, ell) % ell
        deg = next((d for d in range(1, isqrt(order) + 1) if d * d % ell == d2), None)
        if deg is None:
            raise SplittingFailure("no admissible degree")
        chi_mod = [omega[K] * deg * pow(sizes[K], -1, ell) % ell for K in range(k)]
        row = []
        for K in range(k):
            o = cc.rep_orders[K]
            zo = pow(z, exp // o, ell)
            oinv = pow(o, -1, ell)
            mult = {}
            for j in range(o):
                zj = pow(zo, (-j) % o, ell)
                m = sum(chi_mod[powers[K][i]] * pow(zj, i, ell) for i in range(o)) * oinv % ell
                if m > deg:
                    raise SplittingFailure("eigenvalue multiplicity out of range")
                if m:
                    mult[j] = m
            if sum(mult.values()) != deg:
                raise SplittingFailure("eigenvalue multiplicities do not sum to the degree")
            row.append(Cyclo.from_exponents(o, mult))
        rows.append(row)
    return rows


def _row_key(row):
    return (int(row[0].to_fraction()),) + tuple((-a, -b) for a, b in (v.embedding_key() for v in row))


def compute_table(cc, sc, name=None, seed=0):
    """Irreducible characters of the group underlying ``cc`` as exact values."""
    G = cc.group
    exp = lcm(1, *cc.rep_orders)
    last = None
    for ell in _dixon_primes(exp, G.order):
        try:
            rows = _dixon(cc, sc, ell, seed)
            break
        except SplittingFailure as exc:
            last = exc
    else:
        raise SplittingFailure(f"eigenspace splitting failed for all primes tried: {last}")
    rows.sort(key=_row_key)
    T = CharacterTable(
        name=name or G.name,
        order=G.order,
        class_names=list(cc.names),
        class_sizes=list(cc.sizes),
        centralizers=list(cc.centralizer_orders),
        rep_orders=list(cc.rep_orders),
        irr=rows,
        power_maps={p: list(cc.power_maps[p]) for p in prime_factors(G.order)},
    )
    if sum(d * d for d in T.degrees) != G.order:
        raise SplittingFailure("degree sum check failed")
    return T


def table_from_group(G, name=None, seed=0):
    from .classalg import structure_constants
    from .permgrp import conjugacy_data

    cc = conjugacy_data(G)
    return compute_table(cc, structure_constants(G, cc), name=name, seed=seed), cc


# -- central characters -------------------------------------------------------------


@dataclass
class CentralCharTable:
    values: list

    def __getitem__(self, i):
        return self.values[i]


def central_characters(T):
    out = []
    for row in T.irr:
        d = row[0]
        vals = [row[K] * T.class_sizes[K] / d for K in range(T.nclasses)]
        for K, v in enumerate(vals):
            if not v.is_algebraic_integer():
                raise TableInvalid(f"central character value {v} at {T.class_names[K]} is not integral")
        out.append(vals)
    return CentralCharTable(out)


# -- verification ---------------------------------------------------------------------


@dataclass
class OrthogonalityReport:
    ok: bool
    failures: list
    centralizer_diagonal: list

    def __bool__(self):
        return self.ok


def verify_orthogonality(T):
    n = T.nclasses
    failures = []
    if len(T.irr) != n or any(len(r) != n for r in T.irr):
        return OrthogonalityReport(False, [f"table is not square ({len(T.irr)} rows, {n} classes)"], [])
    conj = [[v.conjugate() for v in row] for row in T.irr]
    for i in range(len(T.irr)):
        for j in range(i, len(T.irr)):
            s = Cyclo.rational(0)
            for K in range(n):
                s = s + T.irr[i][K] * conj[j][K] * T.class_sizes[K]
            s = s / T.order
            if s != (1 if i == j else 0):
                failures.append(f"first orthogonality: rows {i + 1},{j + 1} give {s}")
    diag = []
    for K in range(n):
        for L in range(K, n):
            s = Cyclo.rational(0)
            for i in range(len(T.irr)):
                s = s + T.irr[i][K] * conj[i][L]
            if K == L:
                diag.append(s)
                if s != T.centralizers[K]:
                    failures.append(f"second orthogonality: column {T.class_names[K]} gives {s}, "
                                    f"expected {T.centralizers[K]}")
            elif s != 0:
                failures.append(f"second orthogonality: columns {T.class_names[K]},{T.class_names[L]} give {s}")
    return OrthogonalityReport(not failures, failures, diag)


def table_determinant(T):
    """(det, check) where check is (-1)^l det^2 == prod |C_G(x_K)|."""
    d = linalg.det(T.irr)
    conj_rows = [tuple(v.conjugate() for v in r) for r in T.irr]
    rows = [tuple(r) for r in T.irr]
    l = sum(1 for i, r in enumerate(rows) if conj_rows[i] != r) // 2
    prod = 1
    for c in T.centralizers:
        prod *= c
    return d, (-1) ** l * d * d == prod


def commutator_counts(T):
    """Number of pairs (x, y) with [x, y] = x_K, for each class K."""
    out = []
    for K in range(T.nclasses):
        s = Cyclo.rational(0)
        for row in T.irr:
            s = s + row[K] * Fraction(T.order) / row[0]
        if not s.is_rational() or s.to_fraction().denominator != 1 or s.to_fraction() < 0:
            raise TableInvalid(f"commutator count at {T.class_names[K]} is {s}")
        out.append(int(s.to_fraction()))
    return out


def galois_conjugate_table(T, k):
    """Permutation of Irr induced by z -> z^k.

    k only has to be coprime to the conductor of the values, so e.g. k = 2
    acts on the table of A5 whose values lie in Q(E(5)).
    """
    n = lcm(1, *(v.conductor for row in T.irr for v in row))
    if gcd(k, n) != 1:
        raise ValueError(f"{k} is not coprime to the conductor {n} of the table values")
    rows = {tuple(r): i for i, r in enumerate(T.irr)}
    perm = []
    for i, r in enumerate(T.irr):
        img = tuple(v.galois(k) for v in r)
        if img not in rows:
            raise TableInvalid(f"Galois image of row {i + 1} is not in the table")
        perm.append(rows[img])
    return perm


def _order_of(T, ks):
    return sum(T.class_sizes[k] for k in ks)


def structure_report(T):
    n = T.nclasses
    allc = frozenset(range(n))
    kernels = [frozenset(K for K in range(n) if row[K] == row[0]) for row in T.irr]
    centres = [frozenset(K for K in range(n) if row[K] * row[K].conjugate() == row[0] * row[0])
               for row in T.irr]
    normals = {allc}
    frontier = set(kernels)
    normals |= frontier
    while frontier:
        new = set()
        for a in frontier:
            for b in list(normals):
                c = a & b
                if c not in normals:
                    new.add(c)
        normals |= new
        frontier = new
    normals = sorted(normals, key=lambda s: (_order_of(T, s), sorted(s)))
    linear = [i for i, d in enumerate(T.degrees) if d == 1]
    derived = allc
    for i in linear:
        derived &= kernels[i]
    centre = allc
    for z in centres:
        centre &= z

    # solvable: a chain of normal subgroups from 1 to G with prime-power steps
    orders = {s: _order_of(T, s) for s in normals}
    reach = {frozenset([0])} if frozenset([0]) in orders else set()
    stack = list(reach)
    while stack:
        s = stack.pop()
        for t in normals:
            if s < t and _is_prime_power(orders[t] // orders[s]) and t not in reach:
                reach.add(t)
                stack.append(t)
    solvable = allc in reach or T.order == 1

    # nilpotent: upper central series computed from the table
    cur = centre
    while True:
        above = [i for i in range(len(T.irr)) if cur <= kernels[i]]
        nxt = allc
        for i in above:
            nxt &= centres[i]
        if nxt == cur:
            break
        cur = nxt
    nilpotent = cur == allc

    names = T.class_names
    return {
        "kernels": [sorted(k) for k in kernels],
        "centres": [sorted(z) for z in centres],
        "normal_subgroups": [{"classes": sorted(s), "names": [names[k] for k in sorted(s)],
                              "order": orders[s]} for s in normals],
        "derived_subgroup": sorted(derived),
        "derived_order": _order_of(T, derived),
        "centre": sorted(centre),
        "centre_order": _order_of(T, centre),
        "linear_characters": len(linear),
        "abelianisation_order": T.order // _order_of(T, derived),
        "solvable": solvable,
        "nilpotent": nilpotent,
    }


def _is_prime_power(n):
    return n > 1 and len(prime_factors(n)) == 1


# -- comparison ----------------------------------------------------------------------


def tables_equivalent(A, B):
    """Match B to A up to class relabelling, row order and a global Galois twist.

    Returns ``(column_map, k)`` with B's column ``column_map[j]`` matching A's
    column ``j`` after applying z -> z^k to B, or ``None``.
    """
    if A.order != B.order or A.nclasses != B.nclasses:
        return None
    sig = lambda T, j: (T.rep_orders[j], T.class_sizes[j], T.centralizers[j])
    groups = {}
    for j in range(A.nclasses):
        groups.setdefault(sig(A, j), []).append(j)
    bgroups = {}
    for j in range(B.nclasses):
        bgroups.setdefault(sig(B, j), []).append(j)
    if {s: len(v) for s, v in groups.items()} != {s: len(v) for s, v in bgroups.items()}:
        return None
    keys = sorted(groups)
    exp = lcm(A.exponent, B.exponent)
    target = Counter(tuple(r) for r in A.irr)
    for choice in itertools.product(*(itertools.permutations(bgroups[s]) for s in keys)):
        colmap = [None] * A.nclasses
        for s, perm in zip(keys, choice):
            for a_j, b_j in zip(groups[s], perm):
                colmap[a_j] = b_j
        for k in range(1, exp + 1):
            if gcd(k, exp) != 1:
                continue
            rows = Counter(tuple(B.irr[i][colmap[j]].galois(k) for j in range(A.nclasses))
                           for i in range(len(B.irr)))
            if rows == target:
                return colmap, k
    return None
