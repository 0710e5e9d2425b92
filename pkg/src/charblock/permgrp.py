"""Permutation groups by full enumeration.

Permutations act on the right: ``(g * h)[i] == h[g[i]]`` and ``x ** g`` style
conjugation is written ``conj(x, g) == g^-1 x g``.  Points are 0-based
internally; the text format for generators is 1-based cycle notation.
"""

import os
import re
from dataclasses import dataclass, field

from ._nt import divisors, lcm, p_part, require_prime, valuation

__all__ = [
    "Perm", "PermGroup", "ConjClassData", "GroupTooLarge",
    "enumerate_group", "conjugacy_data", "p_parts", "p_regular_classes",
    "sylow_p", "p_section_partition", "closure", "centralizer", "normalizer",
    "max_order", "parse_cycles", "read_group_file", "format_group_file",
    "parse_group_text", "subgroup", "subgroup_from_elements", "is_normal", "conj",
]

DEFAULT_MAX_ORDER = 20000


class GroupTooLarge(ValueError):
    pass


def max_order():
    env = os.environ.get("CHARBLOCK_MAX_ORDER")
    return int(env) if env else DEFAULT_MAX_ORDER


class Perm(tuple):
    """A permutation of ``range(degree)`` stored as its image tuple."""

    __slots__ = ()

    def __new__(cls, images):
        return super().__new__(cls, images)

    @classmethod
    def identity(cls, degree):
        return cls(range(degree))

    @classmethod
    def from_cycles(cls, cycles, degree):
        """``cycles`` is a list of 0-based cycles or a 1-based cycle string."""
        if isinstance(cycles, str):
            cycles = parse_cycles(cycles)
        img = list(range(degree))
        seen = set()
        for cyc in cycles:
            for i, a in enumerate(cyc):
                if not 0 <= a < degree:
                    raise ValueError(f"point {a + 1} outside 1..{degree}")
                if a in seen:
                    raise ValueError(f"point {a + 1} repeated in cycles")
                seen.add(a)
                img[a] = cyc[(i + 1) % len(cyc)]
        return cls(img)

    @property
    def degree(self):
        return len(self)

    def __mul__(self, other):
        return Perm(map(other.__getitem__, self))

    def inverse(self):
        inv = [0] * len(self)
        for i, j in enumerate(self):
            inv[j] = i
        return Perm(inv)

    def cycles(self):
        seen = [False] * len(self)
        out = []
        for i in range(len(self)):
            if not seen[i]:
                cyc = [i]
                seen[i] = True
                j = self[i]
                while j != i:
                    cyc.append(j)
                    seen[j] = True
                    j = self[j]
                out.append(cyc)
        return out

    def order(self):
        return lcm(1, *(len(c) for c in self.cycles()))

    def __pow__(self, n):
        img = [0] * len(self)
        for cyc in self.cycles():
            k = len(cyc)
            s = n % k
            for i, a in enumerate(cyc):
                img[a] = cyc[(i + s) % k]
        return Perm(img)

    def is_identity(self):
        return all(i == j for i, j in enumerate(self))

    def __str__(self):
        cs = [c for c in self.cycles() if len(c) > 1]
        if not cs:
            return "()"
        return "".join("(" + ",".join(str(a + 1) for a in c) + ")" for c in cs)

    def __repr__(self):
        return f"Perm({str(self)!r}, degree={len(self)})"


def conj(x, g):
    """g^-1 x g."""
    return g.inverse() * x * g


_CYCLE = re.compile(r"\(([^()]*)\)")


def parse_cycles(text):
    """1-based disjoint cycle notation -> list of 0-based cycles."""
    s = text.strip()
    if s in ("", "()"):
        return []
    pos = 0
    cycles = []
    for m in _CYCLE.finditer(s):
        if s[pos:m.start()].strip():
            raise ValueError(f"cannot parse cycle notation {text!r}")
        body = m.group(1).strip()
        if body:
            cycles.append([int(t) - 1 for t in body.replace(",", " ").split()])
        pos = m.end()
    if s[pos:].strip():
        raise ValueError(f"cannot parse cycle notation {text!r}")
    return cycles


@dataclass
class PermGroup:
    generators: list
    degree: int
    elements: list
    order: int
    name: str = "G"
    index: dict = field(default=None, repr=False)

    def __post_init__(self):
        if self.index is None:
            self.index = {g: i for i, g in enumerate(self.elements)}

    @property
    def identity(self):
        return Perm.identity(self.degree)

    def __contains__(self, g):
        return g in self.index

    def exponent(self):
        return lcm(1, *(g.order() for g in self.elements))

    def is_abelian(self):
        gs = self.generators
        return all(a * b == b * a for a in gs for b in gs)


def closure(generators, degree=None, cap=None):
    """Element list of the group generated by ``generators`` (BFS order)."""
    gens = [Perm(g) for g in generators]
    if degree is None:
        if not gens:
            raise ValueError("need generators or a degree")
        degree = len(gens[0])
    for g in gens:
        if len(g) != degree:
            raise ValueError(f"generator {g} has degree {len(g)}, expected {degree}")
    cap = max_order() if cap is None else cap
    e = Perm.identity(degree)
    elements = [e]
    seen = {e}
    i = 0
    while i < len(elements):
        x = elements[i]
        for s in gens:
            y = x * s
            if y not in seen:
                seen.add(y)
                elements.append(y)
                if len(elements) > cap:
                    raise GroupTooLarge(f"group too large (order exceeds cap {cap})")
        i += 1
    return elements


def enumerate_group(generators, name="G", degree=None, cap=None):
    gens = [Perm(g) for g in generators]
    if not gens and degree is None:
        raise ValueError("empty generator list")
    elements = closure(gens, degree, cap)
    return PermGroup(gens, len(elements[0]), elements, len(elements), name)


def subgroup(G, generators, name="H"):
    gens = [Perm(g) for g in generators]
    for g in gens:
        if g not in G.index:
            raise ValueError(f"{g} is not an element of {G.name}")
    return enumerate_group(gens or [G.identity], name=name, degree=G.degree)


def subgroup_from_elements(G, elements, name="H"):
    """Wrap a known closed subset as a PermGroup with a small generating set."""
    elements = sorted(elements)
    gens = []
    span = {G.identity}
    for g in elements:
        if g not in span:
            gens.append(g)
            span = set(closure(gens, G.degree))
    if len(span) != len(elements):
        raise ValueError("element set is not closed under multiplication")
    return enumerate_group(gens or [G.identity], name=name, degree=G.degree)


def centralizer(G, xs):
    xs = list(xs)
    return [g for g in G.elements if all(g * x == x * g for x in xs)]


def normalizer(G, H_elements):
    hs = set(H_elements)
    gens = subgroup_from_elements(G, hs).generators if len(hs) > 1 else []
    out = []
    for g in G.elements:
        gi = g.inverse()
        if all(gi * h * g in hs for h in gens):
            out.append(g)
    return out


# -- conjugacy classes ------------------------------------------------------------


def _class_label(k):
    s = ""
    k += 1
    while k:
        k, r = divmod(k - 1, 26)
        s = chr(ord("a") + r) + s
    return s


@dataclass
class ConjClassData:
    group: PermGroup
    reps: list
    sizes: list
    centralizer_orders: list
    rep_orders: list
    names: list
    class_of: dict = field(repr=False)
    classes: list = field(repr=False)
    power_maps: dict = field(default_factory=dict, repr=False)
    inverse_map: list = field(default_factory=list)

    def __len__(self):
        return len(self.reps)

    def power_class(self, k, n):
        """Class of x_K^n."""
        return self.class_of[self.reps[k] ** n]

    def members(self, k):
        return self.classes[k]


def conjugacy_data(G):
    """Classes as conjugation orbits, ordered by (element order, size, least element)."""
    gens = G.generators
    gens = [g for g in gens if not g.is_identity()] or [G.identity]
    ginv = [g.inverse() for g in gens]
    unassigned = set(G.elements)
    orbits = []
    for x in sorted(G.elements):
        if x not in unassigned:
            continue
        orb = [x]
        seen = {x}
        i = 0
        while i < len(orb):
            y = orb[i]
            for s, si in zip(gens, ginv):
                z = si * y * s
                if z not in seen:
                    seen.add(z)
                    orb.append(z)
            i += 1
        unassigned -= seen
        orbits.append(sorted(orb))
    orbits.sort(key=lambda o: (o[0].order(), len(o), o[0]))
    reps = [o[0] for o in orbits]
    class_of = {}
    for k, o in enumerate(orbits):
        for y in o:
            class_of[y] = k
    orders = [r.order() for r in reps]
    names = []
    count = {}
    for o in orders:
        c = count.get(o, 0)
        names.append(f"{o}{_class_label(c)}")
        count[o] = c + 1
    sizes = [len(o) for o in orbits]
    cd = ConjClassData(
        group=G,
        reps=reps,
        sizes=sizes,
        centralizer_orders=[G.order // s for s in sizes],
        rep_orders=orders,
        names=names,
        class_of=class_of,
        classes=orbits,
    )
    exp = lcm(1, *orders)
    cd.power_maps = {n: [class_of[r ** n] for r in reps] for n in divisors(exp)}
    cd.inverse_map = [class_of[r.inverse()] for r in reps]
    return cd


# -- p-local helpers ----------------------------------------------------------------


def p_parts(g, order, p):
    """(g_p, g_p') with g = g_p g_p', both powers of g."""
    require_prime(p)
    pa = p_part(order, p)
    m = order // pa
    # u*pa + v*m = 1
    v = pow(m, -1, pa) if pa > 1 else 0
    u = (1 - v * m) // pa
    return g ** (v * m), g ** (u * pa)


def p_regular_classes(cc, p):
    require_prime(p)
    return [k for k, o in enumerate(cc.rep_orders) if o % p]


def sylow_p(elements, p, degree=None):
    """Generators of one Sylow p-subgroup of the group formed by ``elements``.

    Greedy: repeatedly adjoin the least p-element that normalises the current
    p-subgroup P and has its p-th power in P.  Such an element exists while P
    is not Sylow, so no backtracking is ever needed.
    """
    require_prime(p)
    elements = sorted(elements)
    if not elements:
        raise ValueError("empty subgroup")
    n = len(elements)
    target = p_part(n, p)
    deg = degree or len(elements[0])
    P = {Perm.identity(deg)}
    gens = []
    candidates = [x for x in elements if x.order() > 1 and x.order() == p_part(x.order(), p)]
    while len(P) < target:
        for x in candidates:
            if x in P:
                continue
            if x ** p not in P:
                continue
            xi = x.inverse()
            if all(xi * h * x in P for h in gens):
                gens.append(x)
                P = set(closure(gens, deg))
                break
        else:
            raise RuntimeError("Sylow search failed; element set is not a group")
    return gens


def p_section_partition(cc, p):
    """Group class indices by the class of the p-part of their representative."""
    require_prime(p)
    sections = {}
    for k, r in enumerate(cc.reps):
        gp, _ = p_parts(r, cc.rep_orders[k], p)
        sections.setdefault(cc.class_of[gp], []).append(k)
    return [sections[key] for key in sorted(sections)]


# -- group files -----------------------------------------------------------------


def read_group_file(path, name=None):
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    return parse_group_text(text, name=name or os.path.splitext(os.path.basename(path))[0])


def parse_group_text(text, name="G"):
    degree = None
    gens = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if degree is None:
            parts = line.split()
            if len(parts) != 2 or parts[0] != "degree" or not parts[1].isdigit():
                raise ValueError(f"line {lineno}: expected 'degree N'")
            degree = int(parts[1])
            continue
        try:
            gens.append(Perm.from_cycles(line, degree))
        except ValueError as exc:
            raise ValueError(f"line {lineno}: {exc}") from None
    if degree is None:
        raise ValueError("missing 'degree N' header")
    if not gens:
        gens = [Perm.identity(degree)]
    return enumerate_group(gens, name=name, degree=degree)


def format_group_file(G):
    lines = [f"degree {G.degree}"]
    lines += [str(g) for g in G.generators]
    return "\n".join(lines) + "\n"


def is_normal(G, H_elements):
    hs = set(H_elements)
    return all(g.inverse() * h * g in hs for g in G.generators for h in hs)


def element_order_is_p_power(x, p):
    o = x.order()
    return o == p_part(o, p)


def is_p_group_elements(elements, p):
    n = len(elements)
    return n == p ** valuation(n, p) if n > 1 else True

