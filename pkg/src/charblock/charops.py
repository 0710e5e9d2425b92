"""Class functions on a character table: inner products, induction, restriction
and the constructions built on them (permutation characters, inertia groups,
Frobenius kernels)."""

from dataclasses import dataclass
from fractions import Fraction

from .chartab import TableInvalid, table_from_group
from .cyclo import Cyclo, as_cyclo
from .permgrp import conjugacy_data, is_normal, subgroup_from_elements

__all__ = [
    "ClassFunction", "FusionMap", "Decomposition", "TableMismatch", "FusionError",
    "NotFrobenius", "inner", "decompose", "induce", "restrict", "pointwise", "product",
    "conjugate", "contragredient", "trivial", "regular", "irreducible", "permutation_character",
    "inertia_group", "frobenius_kernel", "induce_elementwise", "mackey_check",
]


class TableMismatch(ValueError):
    pass


class FusionError(ValueError):
    pass


class NotFrobenius(ValueError):
    pass


class ClassFunction:
    __slots__ = ("table", "values")

    def __init__(self, table, values):
        values = [as_cyclo(v) for v in values]
        if len(values) != table.nclasses:
            raise ValueError(f"expected {table.nclasses} values, got {len(values)}")
        self.table = table
        self.values = values

    def __len__(self):
        return len(self.values)

    def __getitem__(self, k):
        return self.values[k]

    def __iter__(self):
        return iter(self.values)

    def _check(self, other):
        if not isinstance(other, ClassFunction):
            return False
        if other.table is not self.table:
            raise TableMismatch("class functions live on different tables")
        return True

    def __add__(self, other):
        if not self._check(other):
            return NotImplemented
        return ClassFunction(self.table, [a + b for a, b in zip(self.values, other.values)])

    def __sub__(self, other):
        if not self._check(other):
            return NotImplemented
        return ClassFunction(self.table, [a - b for a, b in zip(self.values, other.values)])

    def __neg__(self):
        return ClassFunction(self.table, [-a for a in self.values])

    def __mul__(self, other):
        if isinstance(other, ClassFunction):
            self._check(other)
            return ClassFunction(self.table, [a * b for a, b in zip(self.values, other.values)])
        return ClassFunction(self.table, [a * other for a in self.values])

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, ClassFunction):
            return NotImplemented
        return other.table is self.table and self.values == other.values

    def __hash__(self):
        return hash(tuple(self.values))

    @property
    def degree(self):
        return self.values[0]

    def __repr__(self):
        return "ClassFunction(" + ", ".join(str(v) for v in self.values) + ")"


def trivial(T):
    return ClassFunction(T, [1] * T.nclasses)


def regular(T):
    return ClassFunction(T, [T.order] + [0] * (T.nclasses - 1))


def irreducible(T, i):
    return ClassFunction(T, T.irr[i])


def inner(phi, psi):
    """(phi, psi)_G = 1/|G| sum phi(g) conj(psi(g))."""
    phi._check(psi)
    T = phi.table
    s = Cyclo.rational(0)
    for k in range(T.nclasses):
        s = s + phi[k] * psi[k].conjugate() * T.class_sizes[k]
    return s / T.order


@dataclass
class Decomposition:
    coefficients: list
    is_generalized: bool
    is_character: bool

    def __iter__(self):
        return iter(self.coefficients)


def decompose(phi):
    T = phi.table
    coeffs = [inner(phi, ClassFunction(T, row)) for row in T.irr]
    gen = all(c.is_rational() and c.to_fraction().denominator == 1 for c in coeffs)
    char = gen and all(c.to_fraction() >= 0 for c in coeffs) and any(not c.is_zero() for c in coeffs)
    return Decomposition(coeffs, gen, char)


def pointwise(phi, psi):
    return phi * psi


product = pointwise


def conjugate(phi):
    return ClassFunction(phi.table, [v.conjugate() for v in phi.values])


def contragredient(phi):
    """chi*(g) = chi(g^-1), read through the inverse map of the table."""
    inv = phi.table.inverse_map
    return ClassFunction(phi.table, [phi[inv[k]] for k in range(len(phi))])


# -- fusion, induction, restriction ----------------------------------------------


class FusionMap:
    """Class map from a subgroup table into a group table."""

    def __init__(self, sub_table, table, mapping, subgroup=None):
        self.sub_table = sub_table
        self.table = table
        self.map = list(mapping)
        self.subgroup = subgroup
        if len(self.map) != sub_table.nclasses:
            raise FusionError("fusion map has the wrong length")
        if sub_table.order == 0 or table.order % sub_table.order:
            raise FusionError("subgroup order does not divide the group order")
        for l, k in enumerate(self.map):
            if not 0 <= k < table.nclasses:
                raise FusionError(f"class index {k} out of range")
            if sub_table.rep_orders[l] != table.rep_orders[k]:
                raise FusionError(f"element orders differ at {sub_table.class_names[l]}")
            if table.centralizers[k] % sub_table.centralizers[l]:
                raise FusionError(f"|C_H| does not divide |C_G| at {sub_table.class_names[l]}")
        if self.map[0] != 0:
            raise FusionError("identity class must fuse to the identity class")

    @classmethod
    def from_subgroup(cls, Gcc, Hcc, T, HT):
        """Class of each H-representative computed inside G."""
        mapping = [Gcc.class_of[r] for r in Hcc.reps]
        return cls(HT, T, mapping, subgroup=Hcc.group)

    def preimage(self, k):
        return [l for l, m in enumerate(self.map) if m == k]


def induce(phi, fusion):
    """phi^G(g) = |C_G(g)| sum over H-classes fusing into g^G of phi(x)/|C_H(x)|."""
    if phi.table is not fusion.sub_table:
        raise TableMismatch("class function is not on the subgroup table")
    T, H = fusion.table, fusion.sub_table
    vals = [Cyclo.rational(0) for _ in range(T.nclasses)]
    for l, k in enumerate(fusion.map):
        vals[k] = vals[k] + phi[l] * Fraction(T.centralizers[k], H.centralizers[l])
    return ClassFunction(T, vals)


def restrict(psi, fusion):
    if psi.table is not fusion.table:
        raise TableMismatch("class function is not on the group table")
    return ClassFunction(fusion.sub_table, [psi[k] for k in fusion.map])


# -- element-level induction (Mackey) -------------------------------------------------


def induce_elementwise(phi, H_elements, G_elements):
    """phi^G as a dict on G; phi is a dict on H."""
    order_h = len(H_elements)
    Hs = set(H_elements)
    out = {}
    for g in G_elements:
        s = Cyclo.rational(0)
        for x in G_elements:
            y = x * g * x.inverse()
            if y in Hs:
                s = s + phi[y]
        out[g] = s / order_h
    return out


def mackey_check(G, H_elements, K_elements, phi):
    """((phi^G)_K) equals the sum over H\\G/K of the induced conjugate restrictions."""
    Hs, Ks = set(H_elements), set(K_elements)
    lhs = induce_elementwise(phi, H_elements, G.elements)
    seen = set()
    rhs = {k: Cyclo.rational(0) for k in K_elements}
    for t in G.elements:
        if t in seen:
            continue
        dc = {h * t * k for h in H_elements for k in K_elements}
        seen |= dc
        tinv = t.inverse()
        inter = [y for y in K_elements if t * y * tinv in Hs]
        phit = {y: phi[t * y * tinv] for y in inter}
        part = induce_elementwise(phit, inter, K_elements)
        for k in K_elements:
            rhs[k] = rhs[k] + part[k]
    return all(lhs[k] == rhs[k] for k in Ks)


# -- permutation characters ------------------------------------------------------------


def permutation_character(G, cc, T):
    """Fixed-point character of G on its points, with orbit statistics."""
    fixed = [sum(1 for i, j in enumerate(r) if i == j) for r in cc.reps]
    chi = ClassFunction(T, fixed)
    one = trivial(T)
    orbits = inner(chi, one).to_fraction()
    rank = inner(chi, chi).to_fraction()
    transitive = orbits == 1
    stats = {
        "orbits": int(orbits),
        "transitive": transitive,
        "rank": int(rank) if transitive else None,
        "two_transitive": transitive and rank == 2,
    }
    checks = {}
    if transitive:
        n = G.degree
        checks["degree_divides_order"] = G.order % n == 0
        stab = [g for g in G.elements if g[0] == 0]
        ok = True
        for k in range(T.nclasses):
            count = sum(1 for g in stab if cc.class_of[g] == k)
            expected = Fraction(fixed[k] * G.order, n * T.centralizers[k])
            ok = ok and count == expected
        checks["class_meets_stabilizer"] = ok
        if stats["two_transitive"]:
            theta = chi - one
            checks["theta_irreducible"] = inner(theta, theta) == 1
    stats["checks"] = checks
    return chi, stats


# -- inertia groups -----------------------------------------------------------------


def _conjugate_function(theta, x, Hcc):
    """theta^x(h) = theta(x h x^-1)."""
    xinv = x.inverse()
    return [theta[Hcc.class_of[x * r * xinv]] for r in Hcc.reps]


def inertia_group(theta, G, Hcc, T=None, Gcc=None):
    """Stabilizer of theta under conjugation, with the Clifford restriction check."""
    H = Hcc.group
    if not is_normal(G, H.elements):
        raise ValueError("H is not normal in G")
    base = list(theta.values)
    inert = [x for x in G.elements if _conjugate_function(base, x, Hcc) == base]
    t = G.order // len(inert)
    orbit = []
    for x in G.elements:
        f = _conjugate_function(base, x, Hcc)
        if f not in orbit:
            orbit.append(f)
    out = {"order": len(inert), "index": t, "orbit_length": len(orbit),
           "elements": inert}
    if T is not None and Gcc is not None:
        fusion = FusionMap.from_subgroup(Gcc, Hcc, T, theta.table)
        orbit_sum = ClassFunction(theta.table, [sum(vals, Cyclo.rational(0)) for vals in zip(*orbit)])
        clifford = len(orbit) == t
        over = []
        for i, row in enumerate(T.irr):
            res = restrict(ClassFunction(T, row), fusion)
            e = inner(res, theta)
            if e.is_zero():
                continue
            over.append((i, int(e.to_fraction())))
            clifford = clifford and res == orbit_sum * e
        out["characters_over"] = over
        out["clifford_ok"] = clifford
    return out


# -- Frobenius kernel -----------------------------------------------------------------


def frobenius_kernel(G, H_elements, T=None, Gcc=None, seed=0):
    """Kernel of a Frobenius group from the characters chi_theta = d 1_G - (d 1_H - theta)^G."""
    Hs = set(H_elements)
    order_h = len(Hs)
    if order_h <= 1 or order_h == G.order:
        raise NotFrobenius("H must be a proper nontrivial subgroup")
    seen = set()
    for x in G.elements:
        if x in seen or x in Hs:
            continue
        coset = {h * x for h in H_elements}
        seen |= coset
        xinv = x.inverse()
        conj = {xinv * h * x for h in H_elements}
        if len(conj & Hs) != 1:
            raise NotFrobenius("H meets one of its conjugates nontrivially")
    if Gcc is None:
        Gcc = conjugacy_data(G)
    if T is None:
        from .classalg import structure_constants
        from .chartab import compute_table

        T = compute_table(Gcc, structure_constants(G, Gcc), seed=seed)
    H = subgroup_from_elements(G, H_elements, name="H")
    HT, Hcc = table_from_group(H, seed=seed)
    fusion = FusionMap.from_subgroup(Gcc, Hcc, T, HT)
    kernel = set(range(T.nclasses))
    chars = []
    for i, row in enumerate(HT.irr):
        if i == 0:
            continue
        theta = ClassFunction(HT, row)
        d = theta.degree
        psi = trivial(HT) * d - theta
        chi = trivial(T) * d - induce(psi, fusion)
        dec = decompose(chi)
        if not (dec.is_character and inner(chi, chi) == 1):
            raise TableInvalid(f"chi_theta for theta_{i + 1} is not irreducible")
        chars.append(chi)
        kernel &= {k for k in range(T.nclasses) if chi[k] == chi[0]}
    kernel = sorted(kernel)
    order = sum(T.class_sizes[k] for k in kernel)
    if order != G.order // order_h:
        raise NotFrobenius(f"kernel order {order} differs from |G:H| = {G.order // order_h}")
    # K and the conjugates of H cover G, meeting only in 1
    kset = {g for k in kernel for g in Gcc.classes[k]}
    covered = set()
    for x in G.elements:
        covered |= {x.inverse() * h * x for h in H_elements}
    partition = (kset & covered) == {G.identity} and (kset | covered) == set(G.elements)
    return {
        "classes": kernel,
        "names": [T.class_names[k] for k in kernel],
        "order": order,
        "partition_ok": partition,
        "characters": chars,
    }
