"""Brute-force group algebra F_q G, used as an independent oracle.

Elements are dense numpy arrays of shape (|G|, d): row g holds the
coefficient of g as a vector over F_p in the basis 1, t, ..., t^(d-1) of
F_q = F_p[t]/(f).
"""

import numpy as np

from .permgrp import GroupTooLarge

__all__ = ["GroupAlgebra", "AlgebraElement", "convolve", "verify_block_idempotents",
           "center_radical", "rank_mod_p", "ORACLE_MAX_ORDER"]

ORACLE_MAX_ORDER = 2000


def rank_mod_p(rows, p):
    """Rank over F_p of an integer matrix (numpy elimination)."""
    m = np.array(rows, dtype=np.int64) % p
    if m.size == 0:
        return 0
    m = m.reshape(len(rows), -1)
    r = 0
    nrows, ncols = m.shape
    for c in range(ncols):
        piv = np.nonzero(m[r:, c])[0]
        if piv.size == 0:
            continue
        i = r + piv[0]
        if i != r:
            m[[r, i]] = m[[i, r]]
        m[r] = m[r] * pow(int(m[r, c]), -1, p) % p
        col = m[:, c].copy()
        col[r] = 0
        nz = np.nonzero(col)[0]
        if nz.size:
            m[nz] = (m[nz] - np.outer(col[nz], m[r])) % p
        r += 1
        if r == nrows:
            break
    return r


def nullspace_mod_p(mat, p):
    """Basis of {x : mat @ x = 0} over F_p, as a list of int arrays."""
    m = np.array(mat, dtype=np.int64) % p
    nrows, ncols = m.shape
    piv_cols = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        piv = np.nonzero(m[r:, c])[0]
        if piv.size == 0:
            continue
        i = r + piv[0]
        if i != r:
            m[[r, i]] = m[[i, r]]
        m[r] = m[r] * pow(int(m[r, c]), -1, p) % p
        col = m[:, c].copy()
        col[r] = 0
        nz = np.nonzero(col)[0]
        if nz.size:
            m[nz] = (m[nz] - np.outer(col[nz], m[r])) % p
        piv_cols.append(c)
        r += 1
    out = []
    for f in (c for c in range(ncols) if c not in piv_cols):
        v = np.zeros(ncols, dtype=np.int64)
        v[f] = 1
        for i, pc in enumerate(piv_cols):
            v[pc] = -m[i, f] % p
        out.append(v)
    return out


class GroupAlgebra:
    def __init__(self, G, p, modulus=(0, 1)):
        if G.order > ORACLE_MAX_ORDER:
            raise GroupTooLarge(f"oracle limited to |G| <= {ORACLE_MAX_ORDER}")
        self.G = G
        self.p = p
        self.modulus = tuple(int(x) % p for x in modulus)
        self.d = len(self.modulus) - 1
        self.elements = list(G.elements)
        self.index = {g: i for i, g in enumerate(self.elements)}
        n = len(self.elements)
        self.n = n
        self.mul = np.array([[self.index[x * y] for y in self.elements] for x in self.elements],
                            dtype=np.int64)
        self.identity = self.index[G.identity]
        self._basis_mats = self._multiplication_matrices()

    def _multiplication_matrices(self):
        """M_i with M_i @ b = t^i * b in F_q."""
        p, d, f = self.p, self.d, self.modulus
        mats = []
        for i in range(d):
            M = np.zeros((d, d), dtype=np.int64)
            for j in range(d):
                # t^i * t^j reduced modulo f
                poly = [0] * (i + j) + [1]
                for k in range(len(poly) - 1, d - 1, -1):
                    c = poly[k]
                    if c:
                        poly[k] = 0
                        for s in range(d):
                            poly[k - d + s] = (poly[k - d + s] - c * f[s]) % p
                for k in range(d):
                    M[k, j] = poly[k] if k < len(poly) else 0
            mats.append(M)
        return mats

    def scalar_matrix(self, a):
        M = np.zeros((self.d, self.d), dtype=np.int64)
        for i, c in enumerate(a):
            if c:
                M = M + int(c) * self._basis_mats[i]
        return M % self.p

    # constructors
    def zero(self):
        return AlgebraElement(self, np.zeros((self.n, self.d), dtype=np.int64))

    def one(self):
        return self.delta(self.G.identity)

    def delta(self, g, coeff=1):
        e = self.zero()
        e.v[self.index[g], 0] = coeff % self.p
        return e

    def from_coeffs(self, pairs):
        """Element sum c*g for (g, c) pairs; c is an int or a coefficient vector."""
        e = self.zero()
        for g, c in pairs:
            e.v[self.index[g]] = (e.v[self.index[g]] + _vec(c, self.d)) % self.p
        return e

    def class_sum(self, members, coeff=1):
        e = self.zero()
        c = _vec(coeff, self.d)
        for g in members:
            e.v[self.index[g]] = c % self.p
        return e

    def from_class_coeffs(self, cc, coeffs):
        e = self.zero()
        for k, c in enumerate(coeffs):
            c = _vec(c, self.d) % self.p
            if c.any():
                for g in cc.classes[k]:
                    e.v[self.index[g]] = c
        return e


def _vec(c, d):
    if hasattr(c, "c"):
        c = c.c
    if isinstance(c, (int, np.integer)):
        v = np.zeros(d, dtype=np.int64)
        v[0] = c
        return v
    v = np.zeros(d, dtype=np.int64)
    v[:len(c)] = [int(x) for x in c]
    return v


class AlgebraElement:
    __slots__ = ("alg", "v")

    def __init__(self, alg, v):
        self.alg = alg
        self.v = v

    def __add__(self, other):
        return AlgebraElement(self.alg, (self.v + other.v) % self.alg.p)

    def __sub__(self, other):
        return AlgebraElement(self.alg, (self.v - other.v) % self.alg.p)

    def __mul__(self, other):
        return convolve(self, other)

    def scale(self, c):
        M = self.alg.scalar_matrix(_vec(c, self.alg.d))
        return AlgebraElement(self.alg, (self.v @ M.T) % self.alg.p)

    def __eq__(self, other):
        return isinstance(other, AlgebraElement) and np.array_equal(self.v % self.alg.p, other.v % self.alg.p)

    def is_zero(self):
        return not self.v.any()

    def coeff(self, g):
        return self.v[self.alg.index[g]]

    def flat(self):
        return self.v.reshape(-1)

    def __pow__(self, k):
        result = self.alg.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result


def convolve(a, b):
    """c_g = sum over xy = g of a_x b_y."""
    alg = a.alg
    p = alg.p
    c = np.zeros_like(a.v)
    for x in np.nonzero(a.v.any(axis=1))[0]:
        M = alg.scalar_matrix(a.v[x])
        row = alg.mul[x]
        c[row] = (c[row] + b.v @ M.T) % p
    return AlgebraElement(alg, c)


def _fq_rank(alg, elements):
    """Dimension over F_q of the span of the given elements."""
    if not elements:
        return 0
    rows = []
    for e in elements:
        for i in range(alg.d):
            t = [0] * alg.d
            t[i] = 1
            rows.append(e.scale(t).flat())
    return rank_mod_p(rows, alg.p) // alg.d


def verify_block_idempotents(G, cc, partition, p, star=None):
    """Check e_B = sum a_B(K) K^ against the defining identities inside F_q G."""
    star = star or partition.star
    alg = GroupAlgebra(G, p, star.factor)
    failures = []
    idems = []
    for b in partition:
        if b.a is None:
            raise ValueError("block_local_data must be run first")
        idems.append(alg.from_class_coeffs(cc, b.a))
    one = alg.one()
    per_block = []
    for b, e in zip(partition, idems):
        res = {"block": b.index}
        res["idempotent"] = e * e == e
        res["nonzero"] = not e.is_zero()
        res["central"] = all(e * alg.delta(g) == alg.delta(g) * e for g in G.generators)
        # locality of e_B Z(FG): lambda_B-kernel has codimension 1 and is nilpotent
        sums = [alg.class_sum(cc.classes[k]) for k in range(len(cc))]
        eZ = [e * s for s in sums]
        J = [eZ[k] - e.scale(b.lam[k]) for k in range(len(cc))]
        dim_eZ = _fq_rank(alg, eZ)
        dim_J = _fq_rank(alg, J)
        res["codim_one"] = dim_eZ - dim_J == 1
        res["nilpotent"] = all(_is_nilpotent(u, dim_eZ) for u in J)
        res["primitive"] = res["codim_one"] and res["nilpotent"]
        for key in ("idempotent", "nonzero", "central", "codim_one", "nilpotent"):
            if not res[key]:
                failures.append(f"block {b.index + 1}: {key} fails")
        per_block.append(res)
    for i in range(len(idems)):
        for j in range(i + 1, len(idems)):
            if not (idems[i] * idems[j]).is_zero():
                failures.append(f"blocks {i + 1},{j + 1}: e_B e_B' != 0")
    total = alg.zero()
    for e in idems:
        total = total + e
    if total != one:
        failures.append("sum of block idempotents is not 1")
    return {"ok": not failures, "failures": failures, "blocks": per_block}


def _is_nilpotent(u, bound):
    x = u
    for _ in range(max(bound, 1) + 1):
        if x.is_zero():
            return True
        x = x * u
    return x.is_zero()


def center_radical(G, cc, p, nblocks=None):
    """J(Z(F_p G)) as the nilpotent part of Frobenius z -> z^p on class-sum coordinates.

    Returns dimension, nilpotency index and consistency checks.  Since the
    center is commutative of characteristic p, Frobenius is F_p-linear and
    its iterated kernels exhaust the nilpotent elements.
    """
    alg = GroupAlgebra(G, p)
    k = len(cc)
    sums = [alg.class_sum(cc.classes[K]) for K in range(k)]
    reps = [alg.index[r] for r in cc.reps]

    def coords(e):
        return e.v[reps, 0] % p

    # Z(FG) = commutant of the generators; must have dimension |K(G)|
    n = alg.n
    rows = []
    for g in G.generators:
        gi = alg.index[g]
        # (a*g - g*a)_h = a_{h g^-1} - a_{g^-1 h}
        right = np.zeros((n, n), dtype=np.int64)
        left = np.zeros((n, n), dtype=np.int64)
        right[alg.mul[:, gi], np.arange(n)] = 1
        left[alg.mul[gi, :], np.arange(n)] = 1
        rows.append((right - left) % p)
    comm = np.vstack(rows) if rows else np.zeros((1, n), dtype=np.int64)
    dim_center = n - rank_mod_p(comm, p)

    frob = np.array([coords(s ** p) for s in sums], dtype=np.int64).T
    power = np.eye(k, dtype=np.int64)
    kernel = []
    for _ in range(k + 1):
        power = (frob @ power) % p
        kernel = nullspace_mod_p(power, p)
        if rank_mod_p(power @ frob % p, p) == rank_mod_p(power, p):
            break
    basis = []
    for vec in kernel:
        e = alg.zero()
        for K, c in enumerate(vec):
            if c:
                e = e + sums[K].scale(int(c))
        basis.append(e)
    dim = len(basis)
    # nilpotency index: least i with J^i = 0
    index = 0
    if basis:
        cur = basis
        index = 1
        while cur:
            prods = [x for x in (u * v for u in cur for v in basis) if not x.is_zero()]
            index += 1
            if not prods or index > k + 1:
                break
            cur = _independent(prods, rank_mod_p([x.flat() for x in prods], p), p)
    out = {"dim_center": dim_center, "dim_radical": dim, "nilpotency_index": index,
           "center_ok": dim_center == k}
    if nblocks is not None:
        out["matches_blocks"] = dim == k - nblocks
    if G.order % p == 0:
        total = alg.class_sum(G.elements)
        out["group_sum_in_radical"] = _is_nilpotent(total, k)
    return out


def _independent(elems, r, p):
    chosen = []
    rows = []
    for e in elems:
        trial = rows + [e.flat()]
        if rank_mod_p(trial, p) > len(rows):
            rows = trial
            chosen.append(e)
            if len(chosen) == r:
                break
    return chosen
