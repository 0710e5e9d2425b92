"""Exact Gaussian elimination.

The generic routines work over any field whose elements support ``+ - * /``
and compare equal to ``0`` when zero (``Fraction``, :class:`Cyclo`,
:class:`FqElem`).  The ``*_mod`` variants work on plain ``int`` matrices
modulo a prime and are the hot path of the character-table computation.
"""

from fractions import Fraction


def _is_zero(x):
    return x == 0


def _div(a, b):
    # keep int / int exact
    if isinstance(a, int) and isinstance(b, int):
        return Fraction(a, b)
    return a / b


def rref(rows):
    """Reduced row echelon form.  Returns ``(matrix, pivot_columns)``."""
    m = [list(r) for r in rows]
    if not m:
        return m, []
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pr = None
        for i in range(r, len(m)):
            if not _is_zero(m[i][c]):
                pr = i
                break
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        inv = _div(1, m[r][c])
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and not _is_zero(m[i][c]):
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m, pivots


def rank(rows):
    return len(rref(rows)[1])


def nullspace(rows, ncols=None, zero=0, one=1):
    """Basis of ``{v : rows @ v = 0}``."""
    if not rows:
        n = ncols or 0
        return [[one if i == j else zero for i in range(n)] for j in range(n)]
    m, piv = rref(rows)
    n = len(m[0])
    free = [c for c in range(n) if c not in piv]
    basis = []
    for f in free:
        v = [zero] * n
        v[f] = one
        for i, pc in enumerate(piv):
            v[pc] = -m[i][f]
        basis.append(v)
    return basis


def solve(a, b):
    """Solve ``a @ x = b`` for square nonsingular ``a``; ``b`` may be a matrix."""
    n = len(a)
    vector = not isinstance(b[0], (list, tuple))
    bb = [[x] for x in b] if vector else [list(r) for r in b]
    aug = [list(a[i]) + bb[i] for i in range(n)]
    m, piv = rref(aug)
    if piv[:n] != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    x = [row[n:] for row in m[:n]]
    return [r[0] for r in x] if vector else x


def det(a):
    n = len(a)
    m = [list(r) for r in a]
    d = 1
    for c in range(n):
        pr = next((i for i in range(c, n) if not _is_zero(m[i][c])), None)
        if pr is None:
            return 0 * m[0][0] if n else 1
        if pr != c:
            m[c], m[pr] = m[pr], m[c]
            d = -d
        piv = m[c][c]
        d = d * piv
        for i in range(c + 1, n):
            if not _is_zero(m[i][c]):
                f = _div(m[i][c], piv)
                m[i] = [x - f * y for x, y in zip(m[i], m[c])]
    return d


def matmul(a, b):
    bt = list(zip(*b))
    return [[sum((x * y for x, y in zip(r, col)), 0) for col in bt] for r in a]


def transpose(a):
    return [list(r) for r in zip(*a)]


# -- modular integer matrices -------------------------------------------------


def rref_mod(rows, p):
    m = [[x % p for x in r] for r in rows]
    if not m:
        return m, []
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, len(m)) if m[i][c]), None)
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        inv = pow(m[r][c], -1, p)
        m[r] = [x * inv % p for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [(x - f * y) % p for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m, pivots


def rank_mod(rows, p):
    return len(rref_mod(rows, p)[1])


def nullspace_mod(rows, p, ncols=None):
    if not rows:
        n = ncols or 0
        return [[int(i == j) for i in range(n)] for j in range(n)]
    m, piv = rref_mod(rows, p)
    n = len(m[0])
    free = [c for c in range(n) if c not in piv]
    out = []
    for f in free:
        v = [0] * n
        v[f] = 1
        for i, pc in enumerate(piv):
            v[pc] = -m[i][f] % p
        out.append(v)
    return out
