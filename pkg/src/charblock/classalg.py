"""Class-algebra structure constants.

``a[K][L][M]`` is the coefficient of the class sum of M in the product of the
class sums of K and L, i.e. the number of pairs (x, y) in K x L with xy = z
for a fixed z in M.
"""

from fractions import Fraction

from .cyclo import Cyclo

__all__ = ["StructureConstants", "structure_constants", "structure_constants_from_table",
           "TableInconsistent"]


class TableInconsistent(ValueError):
    pass


class StructureConstants:
    def __init__(self, tensor, sizes):
        self.a = tensor
        self.sizes = list(sizes)

    def __len__(self):
        return len(self.a)

    def __getitem__(self, idx):
        return self.a[idx]

    def __eq__(self, other):
        if isinstance(other, StructureConstants):
            return self.a == other.a
        return NotImplemented

    def class_matrix(self, k):
        """Matrix (L, M) -> a[k][L][M]: right multiplication by the k-th class sum."""
        return self.a[k]

    def check(self):
        """Neutral identity class and the counting identity sum_M a_KLM |M| = |K||L|."""
        n = len(self.a)
        for k in range(n):
            for m in range(n):
                if self.a[k][0][m] != (1 if k == m else 0):
                    return False
            for l in range(n):
                if sum(self.a[k][l][m] * self.sizes[m] for m in range(n)) != self.sizes[k] * self.sizes[l]:
                    return False
        return True


def structure_constants(G, cc):
    """Count x in K with x^-1 z in L for the fixed representative z of each class M."""
    n = len(cc)
    a = [[[0] * n for _ in range(n)] for _ in range(n)]
    class_of = cc.class_of
    inv_of = {}
    for x in G.elements:
        inv_of[x] = x.inverse()
    for m, z in enumerate(cc.reps):
        for x in G.elements:
            k = class_of[x]
            y = inv_of[x] * z
            a[k][class_of[y]][m] += 1
    return StructureConstants(a, cc.sizes)


def structure_constants_from_table(T):
    """Structure constants from character values; must come out as nonnegative integers."""
    n = len(T.class_names)
    order = T.order
    degs = T.degrees
    conj = [[v.conjugate() for v in row] for row in T.irr]
    a = [[[0] * n for _ in range(n)] for _ in range(n)]
    for k in range(n):
        for l in range(k, n):
            for m in range(n):
                s = Cyclo.rational(0)
                for i, row in enumerate(T.irr):
                    s = s + row[k] * row[l] * conj[i][m] / degs[i]
                s = s * Fraction(T.class_sizes[k] * T.class_sizes[l], order)
                if not s.is_rational():
                    raise TableInconsistent(f"structure constant ({k},{l},{m}) is irrational: {s}")
                q = s.to_fraction()
                if q.denominator != 1 or q < 0:
                    raise TableInconsistent(f"structure constant ({k},{l},{m}) = {q} is not a nonnegative integer")
                a[k][l][m] = a[l][k][m] = int(q)
    return StructureConstants(a, T.class_sizes)
