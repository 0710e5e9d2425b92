"""p-blocks of a character table.

Blocks are classes of irreducible characters with equal reduced central
characters lambda = omega* (reduction through a StarMap).  Brauer tables are
taken as input; the decomposition matrix is solved from them exactly.
"""

from dataclasses import dataclass, field
from fractions import Fraction

from . import linalg
from ._nt import p_part, require_prime, valuation
from .charops import ClassFunction, FusionMap, decompose, inner, restrict
from .chartab import central_characters, table_from_group
from .classalg import structure_constants_from_table
from .cyclo import Cyclo
from .finfield import StarMap
from .permgrp import centralizer, closure, is_normal, normalizer, subgroup_from_elements, sylow_p

__all__ = [
    "BrauerTable", "DecompData", "Block", "BlockPartition", "BlockError", "IncompatibleBrauerTable",
    "default_star", "lambda_table", "block_partition", "defects_and_heights", "block_local_data",
    "defect_zero_report", "decomposition_and_cartan", "brauer_graph", "principal_indecomposables",
    "brauer_homomorphism", "brauer_hom_multiplicative", "induced_block", "InducedBlock",
    "robinson_block_count", "higher_decomposition", "HigherDecomposition", "brauer_tree", "BrauerTree",
    "defect_zero_generalized_char", "block_orthogonality", "ibr_count", "lifted_brauer_check",
    "p_regular_indices", "auto_brauer_table", "p_section_map", "attach_brauer",
]


class BlockError(RuntimeError):
    pass


class IncompatibleBrauerTable(ValueError):
    pass


def _cy(v):
    return v if isinstance(v, Cyclo) else Cyclo.rational(v)


@dataclass
class BrauerTable:
    name: str
    prime: int
    class_names: list
    irr: list
    star: dict = field(default_factory=dict)

    def __post_init__(self):
        self.irr = [[_cy(v) for v in row] for row in self.irr]

    @property
    def degrees(self):
        return [int(row[0].to_fraction()) for row in self.irr]

    @property
    def nclasses(self):
        return len(self.class_names)


@dataclass
class DecompData:
    D: list
    C: list
    theta: list
    ibr_names: list
    det_C: int
    det_expected: int

    @property
    def det_ok(self):
        return self.det_C == self.det_expected


@dataclass
class Block:
    index: int
    irr: list
    lam: list
    ibr: list = None
    defect: int = None
    heights: dict = None
    a: list = None
    defect_classes: list = None
    defect_group: list = None
    defect_group_order: int = None

    @property
    def is_principal(self):
        return 0 in self.irr


@dataclass
class BlockPartition:
    p: int
    star: StarMap
    blocks: list
    block_of: list

    def __len__(self):
        return len(self.blocks)

    def __iter__(self):
        return iter(self.blocks)

    def __getitem__(self, i):
        return self.blocks[i]

    def irr_sets(self):
        return [list(b.irr) for b in self.blocks]


def default_star(T, p):
    return StarMap.canonical(p, T.exponent)


def p_regular_indices(T, p):
    return [k for k, o in enumerate(T.rep_orders) if o % p]


# -- lambda and the partition ---------------------------------------------------------


def _check_multiplicative(row, sc, star_p):
    n = len(row)
    for K in range(n):
        for L in range(K, n):
            s = row[0] * 0
            for M in range(n):
                c = sc.a[K][L][M] % star_p
                if c:
                    s = s + row[M] * c
            if s != row[K] * row[L]:
                return False
    return True


def lambda_table(T, p, star=None, check=True):
    """lambda_chi(K^) = omega_chi(K^)* for every chi and K."""
    require_prime(p)
    star = star or default_star(T, p)
    omega = central_characters(T)
    lam = [[star(v) for v in row] for row in omega.values]
    if check:
        sc = structure_constants_from_table(T)
        for i, row in enumerate(lam):
            if not _check_multiplicative(row, sc, p):
                raise BlockError(f"lambda of row {i + 1} is not multiplicative")
    return lam


def block_partition(T, p, star=None, check=True):
    star = star or default_star(T, p)
    lam = lambda_table(T, p, star, check=check)
    groups = {}
    order = []
    for i, row in enumerate(lam):
        key = tuple(row)
        if key not in groups:
            groups[key] = []
            order.append(key)
        groups[key].append(i)
    blocks = [Block(index=j, irr=groups[key], lam=list(key)) for j, key in enumerate(order)]
    block_of = [None] * len(T.irr)
    for b in blocks:
        for i in b.irr:
            block_of[i] = b.index
    return BlockPartition(p, star, blocks, block_of)


def defects_and_heights(partition, T, p):
    a = valuation(T.order, p)
    degs = T.degrees
    out = []
    for b in partition:
        vals = {i: valuation(degs[i], p) for i in b.irr}
        mn = min(vals.values())
        b.defect = a - mn
        b.heights = {i: v - mn for i, v in vals.items()}
        out.append((b.defect, dict(b.heights)))
    return out


def ibr_count(T, p, irr_rows):
    """|IBr(B)| as the rank of the block characters on p-regular classes."""
    reg = p_regular_indices(T, p)
    rows = [[T.irr[i][k] for k in reg] for i in irr_rows]
    return linalg.rank(rows) if rows else 0


# -- idempotent coefficients, defect classes and groups ----------------------------------


def block_local_data(partition, T, cc, G, p, star=None):
    """Fill in a_B(K), defect classes and a defect group for every block."""
    star = star or partition.star
    if partition[0].defect is None:
        defects_and_heights(partition, T, p)
    n = T.nclasses
    regular = set(p_regular_indices(T, p))
    for b in partition:
        coeffs = []
        for K in range(n):
            s = Cyclo.rational(0)
            for i in b.irr:
                s = s + T.irr[i][0] * T.irr[i][K].conjugate()
            coeffs.append(star(s / T.order))
        b.a = coeffs
        for K in range(n):
            if K not in regular and coeffs[K]:
                raise BlockError(f"a_B({T.class_names[K]}) is nonzero on a p-singular class")
        dcl = [K for K in range(n) if coeffs[K] and b.lam[K]]
        if not dcl:
            raise BlockError(f"block {b.index + 1} has no defect class")
        b.defect_classes = dcl
        for K in dcl:
            cp = p_part(T.centralizers[K], p)
            if cp != p ** b.defect:
                raise BlockError(
                    f"block {b.index + 1}: defect class {T.class_names[K]} has Sylow order {cp}, "
                    f"degree formula gives {p ** b.defect}")
        K = dcl[0]
        cent = centralizer(G, [cc.reps[K]])
        gens = sylow_p(cent, p, G.degree)
        order = len(closure(gens, G.degree)) if gens else 1
        if order != p ** b.defect:
            raise BlockError(f"block {b.index + 1}: defect group order {order} != p^{b.defect}")
        b.defect_group = gens
        b.defect_group_order = order
    return partition


def defect_zero_report(partition, T, p):
    """The six equivalent characterisations of defect zero, evaluated per block."""
    a = valuation(T.order, p)
    pa = p ** a
    degs = T.degrees
    singular = [k for k, o in enumerate(T.rep_orders) if o % p == 0]
    p_elements = [k for k in singular if p_part(T.rep_orders[k], p) == T.rep_orders[k]]
    if partition[0].defect is None:
        defects_and_heights(partition, T, p)
    out = []
    for b in partition:
        conds = {
            "irr_equals_ibr": len(b.irr) == ibr_count(T, p, b.irr),
            "vanish_p_singular": all(T.irr[i][k] == 0 for i in b.irr for k in singular),
            "vanish_p_elements": all(T.irr[i][k] == 0 for i in b.irr for k in p_elements),
            "defect_zero": b.defect == 0,
            "full_p_part": any(p_part(degs[i], p) == pa for i in b.irr),
            "single_character": len(b.irr) == 1,
        }
        agree = len(set(conds.values())) == 1
        out.append({"block": b.index, "conditions": conds, "consistent": agree})
    return out


# -- decomposition matrices ---------------------------------------------------------------


def decomposition_and_cartan(T, BT, partition=None):
    p = BT.prime
    reg = p_regular_indices(T, p)
    names = [T.class_names[k] for k in reg]
    if list(BT.class_names) != names:
        raise IncompatibleBrauerTable(f"Brauer classes {BT.class_names} do not match p-regular classes {names}")
    if len(BT.irr) != len(reg):
        raise IncompatibleBrauerTable("Brauer table is not square")
    xhat = [[T.irr[i][k] for k in reg] for i in range(len(T.irr))]
    phi_t = linalg.transpose(BT.irr)
    try:
        dt = linalg.solve(phi_t, linalg.transpose(xhat))
    except ZeroDivisionError:
        raise IncompatibleBrauerTable("Brauer table is singular") from None
    D = []
    for i, row in enumerate(linalg.transpose(dt)):
        out = []
        for j, v in enumerate(row):
            v = _cy(v)
            if not v.is_rational() or v.to_fraction().denominator != 1 or v.to_fraction() < 0:
                raise IncompatibleBrauerTable(f"decomposition number ({i + 1},{j + 1}) = {v}")
            out.append(int(v.to_fraction()))
        D.append(out)
    nb = len(BT.irr)
    for j in range(nb):
        if not any(D[i][j] for i in range(len(D))):
            raise IncompatibleBrauerTable(f"column {j + 1} of D is zero")
    for i, row in enumerate(D):
        if not any(row):
            raise IncompatibleBrauerTable(f"row {i + 1} of D is zero")
    C = [[sum(D[i][a] * D[i][b] for i in range(len(D))) for b in range(nb)] for a in range(nb)]
    detC = linalg.det([[Fraction(x) for x in r] for r in C])
    expected = 1
    for k in reg:
        expected *= p_part(T.centralizers[k], p)
    theta = [[sum((T.irr[i][k] * D[i][j] for i in range(len(D))), Cyclo.rational(0))
              for k in range(T.nclasses)] for j in range(nb)]
    data = DecompData(D, C, theta, [f"phi{j + 1}" for j in range(nb)], int(detC), expected)
    if partition is not None:
        attach_brauer(partition, data)
    return data


def attach_brauer(partition, data):
    """ibr(B) = Brauer characters with a nonzero decomposition number in B."""
    D = data.D
    owner = {}
    for b in partition:
        b.ibr = [j for j in range(len(D[0])) if any(D[i][j] for i in b.irr)]
        for j in b.ibr:
            if j in owner:
                raise BlockError(f"Brauer character {j + 1} meets two blocks")
            owner[j] = b.index
        if not b.ibr:
            raise BlockError(f"block {b.index + 1} has no Brauer character")
        if len(b.ibr) > len(b.irr):
            raise BlockError(f"block {b.index + 1} has more Brauer than ordinary characters")
    comps = brauer_graph(D)["components"]
    if sorted(map(sorted, comps)) != sorted(sorted(b.irr) for b in partition):
        raise BlockError("Brauer graph components differ from the lambda partition")
    return partition


def brauer_graph(D):
    n = len(D)
    edges = set()
    for j in range(len(D[0]) if D else 0):
        col = [i for i in range(n) if D[i][j]]
        for a in col:
            for b in col:
                if a < b:
                    edges.add((a, b))
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in edges:
        parent[find(a)] = find(b)
    comps = {}
    for i in range(n):
        comps.setdefault(find(i), []).append(i)
    return {"vertices": list(range(n)), "edges": sorted(edges),
            "components": sorted(comps.values(), key=lambda c: c[0])}


def principal_indecomposables(data, T, BT):
    p = BT.prime
    reg = p_regular_indices(T, p)
    pa = p_part(T.order, p)
    failures = []
    for j, th in enumerate(data.theta):
        for k in range(T.nclasses):
            if k not in reg and th[k] != 0:
                failures.append(f"theta_{j + 1} nonzero at p-singular class {T.class_names[k]}")
        deg = th[0].to_fraction()
        if deg % pa:
            failures.append(f"|G|_p does not divide theta_{j + 1}(1) = {deg}")
        for i, phi in enumerate(BT.irr):
            s = Cyclo.rational(0)
            for col, k in enumerate(reg):
                s = s + phi[col] * th[k].conjugate() * T.class_sizes[k]
            s = s / T.order
            if s != (1 if i == j else 0):
                failures.append(f"(phi_{i + 1}, theta_{j + 1}) = {s}")
    return {"theta": data.theta, "ok": not failures, "failures": failures}


def lifted_brauer_check(T, BT):
    """|G|_p phi extended by zero has integer inner products with Irr(G)."""
    p = BT.prime
    reg = p_regular_indices(T, p)
    pa = p_part(T.order, p)
    for phi in BT.irr:
        vals = [Cyclo.rational(0)] * T.nclasses
        for col, k in enumerate(reg):
            vals[k] = phi[col] * pa
        dec = decompose(ClassFunction(T, vals))
        if not dec.is_generalized:
            return False
    return True


# -- orthogonality inside blocks ------------------------------------------------------------


def p_section_map(T, p):
    """Class index of the p-part of each class representative, read from power maps."""
    out = []
    for k, o in enumerate(T.rep_orders):
        pa = p_part(o, p)
        m = o // pa
        v = pow(m, -1, pa) if pa > 1 else 0
        out.append(T.power_class(k, v * m) if pa > 1 else 0)
    return out


def block_orthogonality(T, partition, p):
    """Weak and full block orthogonality; returns (weak_ok, full_ok)."""
    section = p_section_map(T, p)
    reg = set(p_regular_indices(T, p))
    n = T.nclasses
    weak = full = True
    for b in partition:
        for x in range(n):
            for y in range(n):
                s = Cyclo.rational(0)
                for i in b.irr:
                    s = s + T.irr[i][x] * T.irr[i][y].conjugate()
                if x in reg and y not in reg and s != 0:
                    weak = False
                if section[x] != section[y] and s != 0:
                    full = False
    return weak, full


# -- Brauer homomorphism ----------------------------------------------------------------


def brauer_homomorphism(G, cc, P_gens, x, p):
    """beta_P(x) for x = {class index: coefficient}, as coefficients on N_G(P)-classes mod p.

    Returns (N, Ncc, image) with image a list indexed by the classes of N.
    """
    from .permgrp import conjugacy_data

    require_prime(p)
    P = closure(P_gens, G.degree) if P_gens else [G.identity]
    if len(P) != p_part(len(P), p):
        raise ValueError("P is not a p-group")
    cent = set(centralizer(G, P_gens))
    N = subgroup_from_elements(G, normalizer(G, P), name="N")
    Ncc = conjugacy_data(N)
    image = [0] * len(Ncc)
    items = x.items() if isinstance(x, dict) else enumerate(x)
    for K, coef in items:
        if not coef:
            continue
        for L, rep in enumerate(Ncc.reps):
            if cc.class_of[rep] == K and rep in cent:
                image[L] = image[L] + coef
    image = [v % p if isinstance(v, int) else v for v in image]
    return N, Ncc, image


def brauer_hom_multiplicative(G, cc, sc, P_gens, p):
    """beta_P(K^ L^) = beta_P(K^) beta_P(L^) for all class pairs."""
    from .classalg import structure_constants

    n = len(cc)
    images = []
    N = Ncc = None
    for K in range(n):
        N, Ncc, im = brauer_homomorphism(G, cc, P_gens, {K: 1}, p)
        images.append(im)
    nsc = structure_constants(N, Ncc)
    m = len(Ncc)
    for K in range(n):
        for L in range(n):
            lhs = [0] * m
            for M in range(n):
                c = sc.a[K][L][M] % p
                if c:
                    lhs = [(u + c * v) % p for u, v in zip(lhs, images[M])]
            rhs = [0] * m
            for A in range(m):
                if images[K][A]:
                    for B in range(m):
                        if images[L][B]:
                            f = images[K][A] * images[L][B]
                            rhs = [(u + f * nsc.a[A][B][C]) % p for C, u in enumerate(rhs)]
            if lhs != rhs:
                return False
    return True


# -- induced blocks ------------------------------------------------------------------


@dataclass
class InducedBlock:
    defined: bool
    values: list
    block: int = None
    reason: str = ""


def induced_block(T, partition, HT, hpartition, fusion, b, p):
    """b^G for block index ``b`` of H, or undefined.

    Both partitions must use the same StarMap; lambda_b^G(K^) is the sum of
    lambda_b over the H-classes fusing into K.
    """
    if hpartition.star != partition.star:
        raise ValueError("block partitions of H and G must share one star map")
    field = partition.star.field
    lam_b = hpartition[b].lam
    vals = [field.zero for _ in range(T.nclasses)]
    for l, k in enumerate(fusion.map):
        vals[k] = vals[k] + lam_b[l]
    sc = structure_constants_from_table(T)
    if not _check_multiplicative(vals, sc, p):
        return InducedBlock(False, vals, reason="not multiplicative")
    for B in partition:
        if list(B.lam) == vals:
            return InducedBlock(True, vals, B.index)
    return InducedBlock(False, vals, reason="matches no central character of G")


# -- Robinson's block count -----------------------------------------------------------


def robinson_block_count(G, cc, p, D_elements):
    """Number of p-blocks with defect group D (normal p-subgroup), as rank A(D)*."""
    require_prime(p)
    Dset = set(D_elements)
    nd = len(Dset)
    if nd != p_part(nd, p):
        raise ValueError("D is not a p-group")
    if not is_normal(G, Dset):
        raise ValueError("D is not normal in G")
    a = valuation(G.order, p)
    d = valuation(nd, p)
    classes = []
    for K in range(len(cc)):
        if cc.rep_orders[K] % p == 0:
            continue
        x = cc.reps[K]
        if p_part(cc.centralizer_orders[K], p) == nd and all(x * y == y * x for y in Dset):
            classes.append(K)
    P = set(closure(sylow_p(G.elements, p, G.degree), G.degree)) if a else {G.identity}
    counts = []
    seen = set()
    for g in G.elements:
        if g in seen:
            continue
        coset = {h * g for h in P}
        seen |= coset
        c = [0] * len(cc)
        for y in coset:
            c[cc.class_of[y]] += 1
        counts.append(c)
    A = [[sum(c[K] * c[L] for c in counts) for L in classes] for K in classes]
    scale = p ** (a - d)
    for row in A:
        for v in row:
            if v % scale:
                raise BlockError("A(D) entry not divisible by p^(a-d)")
    A = [[v // scale for v in row] for row in A]
    rank = linalg.rank_mod(A, p) if A else 0
    return {"count": rank, "matrix": A, "classes": classes}


# -- higher decomposition numbers ----------------------------------------------------------


def auto_brauer_table(HT, p, Hcc=None):
    """IBr for a table whose Sylow p-subgroup is normal: Irr(H/O_p(H)) on p-regular classes."""
    n = HT.nclasses
    pa = p_part(HT.order, p)
    # O_p(H) is Sylow iff the p-elements form a normal subgroup of order |H|_p
    pel = [k for k in range(n) if p_part(HT.rep_orders[k], p) == HT.rep_orders[k]]
    if sum(HT.class_sizes[k] for k in pel) != pa:
        return None
    reg = p_regular_indices(HT, p)
    rows = [[row[k] for k in reg] for row in HT.irr
            if all(row[k] == row[0] for k in pel)]
    if len(rows) != len(reg):
        return None
    return BrauerTable(HT.name, p, [HT.class_names[k] for k in reg], rows)


@dataclass
class HigherDecomposition:
    matrix: list
    sub_table: object
    brauer: object
    verified: bool


def higher_decomposition(T, G, cc, x, p, brauer=None, seed=0):
    """d^x_{chi,phi} = sum_tau (chi_H, tau) d_{tau phi} tau(x)/tau(1), H = C_G(x)."""
    o = x.order()
    if o != p_part(o, p):
        raise ValueError("x is not a p-element")
    H = subgroup_from_elements(G, centralizer(G, [x]), name="C(x)")
    HT, Hcc = table_from_group(H, seed=seed)
    if brauer is None:
        brauer = auto_brauer_table(HT, p)
        if brauer is None:
            raise ValueError("the centralizer has no normal Sylow subgroup; supply its Brauer table")
    dH = decomposition_and_cartan(HT, brauer).D
    fusion = FusionMap.from_subgroup(cc, Hcc, T, HT)
    xc = Hcc.class_of[x]
    nb = len(brauer.irr)
    mat = []
    for row in T.irr:
        res = restrict(ClassFunction(T, row), fusion)
        coeffs = [inner(res, ClassFunction(HT, tau)) for tau in HT.irr]
        out = []
        for j in range(nb):
            s = Cyclo.rational(0)
            for t, tau in enumerate(HT.irr):
                if dH[t][j] and not coeffs[t].is_zero():
                    s = s + coeffs[t] * dH[t][j] * tau[xc] / tau[0]
            out.append(s)
        mat.append(out)
    # chi(xy) = sum_phi d^x phi(y) for p-regular y in H
    reg = p_regular_indices(HT, p)
    ok = True
    for i, row in enumerate(T.irr):
        for col, k in enumerate(reg):
            lhs = row[cc.class_of[x * Hcc.reps[k]]]
            rhs = sum((mat[i][j] * brauer.irr[j][col] for j in range(nb)), Cyclo.rational(0))
            ok = ok and lhs == rhs
    return HigherDecomposition(mat, HT, brauer, ok)


# -- Brauer trees -------------------------------------------------------------------------


@dataclass
class BrauerTree:
    ok: bool
    vertices: list
    edges: list
    exceptional: int = None
    multiplicity: int = 1
    reasons: list = field(default_factory=list)


def brauer_tree(D, irr, ibr, p, defect):
    """Check Dade's numerical conditions on a block and build its tree."""
    if defect == 0:
        return BrauerTree(True, [[i] for i in irr], [])
    e = len(ibr)
    pd = p ** defect
    reasons = []
    if (p - 1) % e:
        reasons.append(f"e={e} does not divide p-1={p - 1}")
    if (pd - 1) % e or len(irr) != (pd - 1) // e + e:
        reasons.append(f"|irr(B)|={len(irr)} differs from (p^d-1)/e+e")
    rows = {i: tuple(D[i][j] for j in ibr) for i in irr}
    if any(v not in (0, 1) for r in rows.values() for v in r):
        reasons.append("decomposition numbers are not all 0 or 1")
    if reasons:
        return BrauerTree(False, [], [], reasons=reasons)
    t = (pd - 1) // e
    groups = {}
    for i in irr:
        groups.setdefault(rows[i], []).append(i)
    vertices = sorted(groups.values(), key=lambda g: g[0])
    exceptional = None
    if t > 1:
        exc = [k for k, g in enumerate(vertices) if len(g) == t]
        if len(exc) != 1 or any(len(g) != 1 for k, g in enumerate(vertices) if k != exc[0]):
            return BrauerTree(False, vertices, [], reasons=["no unique exceptional family"])
        exceptional = exc[0]
    elif any(len(g) > 1 for g in vertices):
        return BrauerTree(False, vertices, [], reasons=["repeated decomposition rows"])
    edges = []
    for col, j in enumerate(ibr):
        ends = [k for k, g in enumerate(vertices) if rows[g[0]][col] == 1]
        if len(ends) != 2:
            reasons.append(f"column phi{j + 1} has {len(ends)} ones among vertices")
        else:
            edges.append((ends[0], ends[1], j))
    if not reasons:
        # e+1 vertices and e edges: a tree iff connected
        parent = list(range(len(vertices)))

        def find(u):
            while parent[u] != u:
                u = parent[u]
            return u

        for u, v, _ in edges:
            parent[find(u)] = find(v)
        if len({find(u) for u in range(len(vertices))}) != 1 or len(vertices) != e + 1:
            reasons.append("incidence graph is not a tree")
    return BrauerTree(not reasons, vertices, edges, exceptional, t if exceptional is not None else 1, reasons)


# -- defect-zero generalized characters ------------------------------------------------------


def defect_zero_generalized_char(T, i, p):
    """chi-dot = p^d chi on p-regular classes, 0 elsewhere, d the p-defect of chi."""
    d = valuation(T.order, p) - valuation(T.degrees[i], p)
    reg = set(p_regular_indices(T, p))
    vals = [T.irr[i][k] * p ** d if k in reg else Cyclo.rational(0) for k in range(T.nclasses)]
    chi_dot = ClassFunction(T, vals)
    dec = decompose(chi_dot)
    report = {"defect": d, "generalized": dec.is_generalized}
    if d == 0:
        report["vanishes_p_singular"] = all(T.irr[i][k] == 0 for k in range(T.nclasses) if k not in reg)
    return chi_dot, report
