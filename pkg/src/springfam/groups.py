"""Small permutation groups with exact character tables.

Catalog: trivial, S2..S5, C2..C6, (Z/2)^k for k <= 4, D8, S2xS2, S2xS3.
Symmetric-group and D8 tables are written out by hand and verified by
orthogonality when the table is built; cyclic and product tables are
generated.  Centralizers of class representatives are identified with
catalog groups by an explicit isomorphism, through which they inherit
character tables.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import lcm
from operator import mul
from typing import Sequence

from .cyclotomic import ONE, ZERO, Cyclotomic

Perm = tuple[int, ...]


def compose(p: Perm, q: Perm) -> Perm:
    """p after q."""
    return tuple(p[i] for i in q)


def inverse(p: Perm) -> Perm:
    out = [0] * len(p)
    for i, x in enumerate(p):
        out[x] = i
    return tuple(out)


def conjugate(h: Perm, x: Perm) -> Perm:
    """h x h^-1."""
    return compose(compose(h, x), inverse(h))


def cycle_type(p: Perm) -> tuple[int, ...]:
    seen = [False] * len(p)
    out = []
    for i in range(len(p)):
        if not seen[i]:
            n = 0
            j = i
            while not seen[j]:
                seen[j] = True
                j = p[j]
                n += 1
            out.append(n)
    return tuple(sorted(out, reverse=True))


def element_order(p: Perm) -> int:
    from math import lcm

    return lcm(*cycle_type(p))


def closure(gens: Sequence[Perm], degree: int) -> list[Perm]:
    e = tuple(range(degree))
    seen = {e}
    queue = deque([e])
    while queue:
        x = queue.popleft()
        for g in gens:
            y = compose(g, x)
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return sorted(seen)


def cycle(points: Sequence[int], degree: int) -> Perm:
    p = list(range(degree))
    for k, x in enumerate(points):
        p[x] = points[(k + 1) % len(points)]
    return tuple(p)


@dataclass(frozen=True)
class Irrep:
    label: str
    values: tuple[Cyclotomic, ...]  # per class

    @property
    def degree(self) -> int:
        return int(self.values[0].to_fraction())


@dataclass
class GroupTable:
    name: str
    degree: int
    elements: list[Perm]
    classes: list[tuple[Perm, ...]]
    irreps: list[Irrep]
    class_of: dict[Perm, int] = field(repr=False, default_factory=dict)

    def __post_init__(self) -> None:
        if not self.class_of:
            self.class_of = {g: k for k, c in enumerate(self.classes) for g in c}

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def identity(self) -> Perm:
        return tuple(range(self.degree))

    @property
    def reps(self) -> list[Perm]:
        return [c[0] for c in self.classes]

    def centralizer(self, x: Perm) -> list[Perm]:
        return [g for g in self.elements if compose(g, x) == compose(x, g)]

    def value(self, j: int, g: Perm) -> Cyclotomic:
        return self.irreps[j].values[self.class_of[g]]

    def is_abelian(self) -> bool:
        return len(self.classes) == self.order


def conjugacy_classes(elements: Sequence[Perm]) -> list[tuple[Perm, ...]]:
    """Classes sorted by their smallest element; each class lists its elements in increasing order."""
    left = set(elements)
    out = []
    for x in sorted(elements):
        if x in left:
            c = {conjugate(h, x) for h in elements}
            left -= c
            out.append(tuple(sorted(c)))
    return out


# -- hand-written tables ------------------------------------------------------

# values indexed by cycle type
_SYMMETRIC_TABLES: dict[int, list[tuple[str, dict[tuple[int, ...], int]]]] = {
    1: [("1", {(1,): 1})],
    2: [("1", {(1, 1): 1, (2,): 1}), ("ε", {(1, 1): 1, (2,): -1})],
    3: [
        ("1", {(1, 1, 1): 1, (2, 1): 1, (3,): 1}),
        ("r", {(1, 1, 1): 2, (2, 1): 0, (3,): -1}),
        ("ε", {(1, 1, 1): 1, (2, 1): -1, (3,): 1}),
    ],
    4: [
        ("1", {(1, 1, 1, 1): 1, (2, 1, 1): 1, (2, 2): 1, (3, 1): 1, (4,): 1}),
        ("λ¹", {(1, 1, 1, 1): 3, (2, 1, 1): 1, (2, 2): -1, (3, 1): 0, (4,): -1}),
        ("λ²", {(1, 1, 1, 1): 3, (2, 1, 1): -1, (2, 2): -1, (3, 1): 0, (4,): 1}),
        ("σ", {(1, 1, 1, 1): 2, (2, 1, 1): 0, (2, 2): 2, (3, 1): -1, (4,): 0}),
        ("λ³", {(1, 1, 1, 1): 1, (2, 1, 1): -1, (2, 2): 1, (3, 1): 1, (4,): -1}),
    ],
    5: [
        # cycle types: 1^5, 2 1^3, 2^2 1, 3 1^2, 3 2, 4 1, 5
        ("1", {(1,) * 5: 1, (2, 1, 1, 1): 1, (2, 2, 1): 1, (3, 1, 1): 1, (3, 2): 1, (4, 1): 1, (5,): 1}),
        ("ν", {(1,) * 5: 5, (2, 1, 1, 1): 1, (2, 2, 1): 1, (3, 1, 1): -1, (3, 2): 1, (4, 1): -1, (5,): 0}),
        ("λ¹", {(1,) * 5: 4, (2, 1, 1, 1): 2, (2, 2, 1): 0, (3, 1, 1): 1, (3, 2): -1, (4, 1): 0, (5,): -1}),
        ("ν′", {(1,) * 5: 5, (2, 1, 1, 1): -1, (2, 2, 1): 1, (3, 1, 1): -1, (3, 2): -1, (4, 1): 1, (5,): 0}),
        ("λ²", {(1,) * 5: 6, (2, 1, 1, 1): 0, (2, 2, 1): -2, (3, 1, 1): 0, (3, 2): 0, (4, 1): 0, (5,): 1}),
        ("λ³", {(1,) * 5: 4, (2, 1, 1, 1): -2, (2, 2, 1): 0, (3, 1, 1): 1, (3, 2): 1, (4, 1): 0, (5,): -1}),
        ("λ⁴", {(1,) * 5: 1, (2, 1, 1, 1): -1, (2, 2, 1): 1, (3, 1, 1): 1, (3, 2): -1, (4, 1): -1, (5,): 1}),
    ],
}


def symmetric_group(n: int) -> GroupTable:
    elements = sorted(itertools.permutations(range(n)))
    classes = conjugacy_classes(elements)
    irreps = [
        Irrep(label, tuple(Cyclotomic.rational(vals[cycle_type(c[0])]) for c in classes))
        for label, vals in _SYMMETRIC_TABLES[n]
    ]
    return GroupTable(f"S{n}" if n > 1 else "trivial", n, elements, classes, irreps)


def dihedral8() -> GroupTable:
    r = cycle((0, 1, 2, 3), 4)
    s = (0, 3, 2, 1)  # reflection fixing the vertices 0 and 2
    elements = closure([r, s], 4)
    classes = conjugacy_classes(elements)

    def kind(g: Perm) -> str:
        ct = cycle_type(g)
        if ct == (1, 1, 1, 1):
            return "e"
        if ct == (4,):
            return "r"
        fixed = sum(1 for i in range(4) if g[i] == i)
        if fixed == 2:
            return "s_vertex"
        # double transposition: the half turn (0 2)(1 3) or an edge reflection
        return "r2" if g == compose(r, r) else "s_edge"

    table = {
        "1": {"e": 1, "r2": 1, "r": 1, "s_vertex": 1, "s_edge": 1},
        "χ_r": {"e": 1, "r2": 1, "r": 1, "s_vertex": -1, "s_edge": -1},
        "χ_v": {"e": 1, "r2": 1, "r": -1, "s_vertex": 1, "s_edge": -1},
        "χ_e": {"e": 1, "r2": 1, "r": -1, "s_vertex": -1, "s_edge": 1},
        "ρ": {"e": 2, "r2": -2, "r": 0, "s_vertex": 0, "s_edge": 0},
    }
    irreps = [Irrep(k, tuple(Cyclotomic.rational(v[kind(c[0])]) for c in classes)) for k, v in table.items()]
    return GroupTable("D8", 4, elements, classes, irreps)


# -- generated tables ---------------------------------------------------------


def cyclic_group(n: int) -> GroupTable:
    g = cycle(tuple(range(n)), n)
    powers = [tuple(range(n))]
    for _ in range(n - 1):
        powers.append(compose(g, powers[-1]))
    exponent = {p: k for k, p in enumerate(powers)}
    elements = sorted(powers)
    classes = [(x,) for x in elements]
    irreps = [
        Irrep("1" if j == 0 else f"ζ{n}^{j}", tuple(Cyclotomic.zeta(j * exponent[c[0]], n) for c in classes))
        for j in range(n)
    ]
    return GroupTable(f"C{n}", n, elements, classes, irreps)


def direct_product(name: str, factors: Sequence[GroupTable]) -> GroupTable:
    """Factors act on consecutive blocks of points."""
    offsets = list(itertools.accumulate([0] + [f.degree for f in factors]))
    degree = offsets[-1]

    def embed(parts: Sequence[Perm]) -> Perm:
        out: list[int] = []
        for off, p in zip(offsets, parts):
            out.extend(x + off for x in p)
        return tuple(out)

    def split(g: Perm) -> list[Perm]:
        return [tuple(x - off for x in g[off : off + f.degree]) for off, f in zip(offsets, factors)]

    elements = sorted(embed(parts) for parts in itertools.product(*(f.elements for f in factors)))
    classes = conjugacy_classes(elements)
    irreps = []
    for combo in itertools.product(*(range(len(f.irreps)) for f in factors)):
        label = "⊗".join(f.irreps[j].label for f, j in zip(factors, combo))
        vals = []
        for c in classes:
            v = ONE
            for f, j, part in zip(factors, combo, split(c[0])):
                v = v * f.value(j, part)
            vals.append(v)
        irreps.append(Irrep(label, tuple(vals)))
    return GroupTable(name, degree, elements, classes, irreps)


def elementary_abelian(k: int) -> GroupTable:
    if k == 0:
        return symmetric_group(1)
    name = "Z2" if k == 1 else f"(Z/2)^{k}"
    return direct_product(name, [symmetric_group(2)] * k)


CATALOG_NAMES = (
    "trivial", "S2", "S3", "S4", "S5", "C2", "C3", "C4", "C5", "C6",
    "Z2", "(Z/2)^2", "(Z/2)^3", "(Z/2)^4", "D8", "S2xS2", "S2xS3",
)

_ALIASES = {"1": "trivial", "S1": "trivial", "C1": "trivial", "Z/2": "Z2", "(Z/2)": "Z2", "(Z/2)^1": "Z2",
            "Z2^2": "(Z/2)^2", "Z2^3": "(Z/2)^3", "Z2^4": "(Z/2)^4", "S2×S2": "S2xS2", "S2×S3": "S2xS3"}


def canonical_name(name: str) -> str:
    name = _ALIASES.get(name, name)
    if name not in CATALOG_NAMES:
        raise KeyError(f"unsupported group {name!r}; choose from {', '.join(CATALOG_NAMES)}")
    return name


@lru_cache(maxsize=None)
def _build(name: str) -> GroupTable:
    if name == "trivial":
        return symmetric_group(1)
    if name.startswith("S") and name[1:].isdigit():
        return symmetric_group(int(name[1:]))
    if name.startswith("C"):
        return cyclic_group(int(name[1:]))
    if name == "Z2":
        return elementary_abelian(1)
    if name.startswith("(Z/2)^"):
        return elementary_abelian(int(name.split("^")[1]))
    if name == "D8":
        return dihedral8()
    if name == "S2xS2":
        return direct_product("S2xS2", [symmetric_group(2)] * 2)
    if name == "S2xS3":
        return direct_product("S2xS3", [symmetric_group(2), symmetric_group(3)])
    raise KeyError(name)


def group_table(name: str) -> GroupTable:
    return _verified(canonical_name(name))


@lru_cache(maxsize=None)
def _verified(name: str) -> GroupTable:
    t = _build(name)
    problems = orthogonality_defects(t)
    if problems:
        raise AssertionError(f"character table of {t.name} fails orthogonality: {problems[:3]}")
    return t


# -- checks -------------------------------------------------------------------


def orthogonality_defects(t: GroupTable) -> list[str]:
    out = []
    sizes = [len(c) for c in t.classes]
    if sum(sizes) != t.order:
        out.append("class equation")
    if len(t.irreps) != len(t.classes):
        out.append(f"{len(t.irreps)} irreps for {len(t.classes)} classes")
    for i, a in enumerate(t.irreps):
        for j, b in enumerate(t.irreps):
            s = ZERO
            for k, n in enumerate(sizes):
                s = s + a.values[k] * b.values[k].conj() * n
            if s != (t.order if i == j else 0):
                out.append(f"rows {a.label},{b.label}")
    for k in range(len(t.classes)):
        cent = t.order // sizes[k]
        if t.order % sizes[k]:
            out.append(f"class {k} size does not divide the order")
        for l in range(len(t.classes)):
            s = ZERO
            for a in t.irreps:
                s = s + a.values[k] * a.values[l].conj()
            if s != (cent if k == l else 0):
                out.append(f"columns {k},{l}")
    return out


# -- isomorphisms onto catalog groups -----------------------------------------


def elementary_abelian_coordinates(G: GroupTable) -> tuple[dict[Perm, tuple[int, ...]], list[tuple[int, ...]]]:
    """Coordinates of elements and characters of (Z/2)^k against a greedily chosen basis.

    A character chi gets chi_i = 1 exactly when it is -1 on the i-th basis element.
    """
    basis: list[Perm] = []
    span = {G.identity}
    for g in G.elements:
        if g not in span:
            basis.append(g)
            span |= {compose(g, x) for x in span}
    if len(span) != G.order or any(element_order(g) > 2 for g in G.elements):
        raise ValueError(f"{G.name} is not elementary abelian of exponent 2")
    coords = {}
    for bits in itertools.product((0, 1), repeat=len(basis)):
        x = G.identity
        for b, g in zip(bits, basis):
            if b:
                x = compose(x, g)
        coords[x] = bits
    chars = [tuple(0 if G.value(j, g) == 1 else 1 for g in basis) for j in range(len(G.irreps))]
    return coords, chars


def _generators(elements: Sequence[Perm], degree: int) -> list[Perm]:
    gens: list[Perm] = []
    span = {tuple(range(degree))}
    for g in sorted(elements, key=lambda x: (-element_order(x), x)):
        if g not in span:
            gens.append(g)
            span = set(closure(gens, degree))
            if len(span) == len(elements):
                break
    return gens


def find_isomorphism(src: GroupTable, target: Sequence[Perm], degree: int) -> dict[Perm, Perm] | None:
    """An isomorphism from the catalog group ``src`` onto the permutation group ``target``."""
    if len(target) != src.order:
        return None
    tset = set(target)
    if sorted(element_order(x) for x in src.elements) != sorted(element_order(x) for x in target):
        return None
    gens = _generators(src.elements, src.degree)
    candidates = [[y for y in target if element_order(y) == element_order(g)] for g in gens]
    e_src, e_tgt = src.identity, tuple(range(degree))
    for images in itertools.product(*candidates):
        phi = {e_src: e_tgt}
        queue = deque([e_src])
        ok = True
        while queue and ok:
            x = queue.popleft()
            for g, img in zip(gens, images):
                y = compose(g, x)
                fy = compose(img, phi[x])
                if y in phi:
                    if phi[y] != fy:
                        ok = False
                        break
                else:
                    phi[y] = fy
                    queue.append(y)
        if ok and len(phi) == src.order and set(phi.values()) == tset:
            return phi
    return None


RESOLUTION_ORDER = (
    "trivial", "C2", "C3", "C4", "C5", "C6", "(Z/2)^2", "(Z/2)^3", "(Z/2)^4",
    "S3", "D8", "S4", "S5", "S2xS3",
)


@dataclass
class Centralizer:
    """Z(x) with a character table transported from a catalog group."""

    rep: Perm
    elements: list[Perm]
    catalog: str
    classes: list[tuple[Perm, ...]]
    class_of: dict[Perm, int]
    irreps: list[Irrep]

    @property
    def order(self) -> int:
        return len(self.elements)

    def value(self, j: int, g: Perm) -> Cyclotomic:
        return self.irreps[j].values[self.class_of[g]]


def centralizer_table(G: GroupTable, x: Perm) -> Centralizer:
    Z = G.centralizer(x)
    if len(Z) == G.order:
        return Centralizer(x, list(G.elements), G.name, list(G.classes), dict(G.class_of), list(G.irreps))
    for name in RESOLUTION_ORDER:
        src = group_table(name)
        phi = find_isomorphism(src, Z, G.degree)
        if phi is None:
            continue
        classes = conjugacy_classes(Z)
        class_of = {g: k for k, c in enumerate(classes) for g in c}
        inv = {v: k for k, v in phi.items()}
        irreps = [Irrep(ir.label, tuple(src.value(j, inv[c[0]]) for c in classes)) for j, ir in enumerate(src.irreps)]
        return Centralizer(x, Z, name, classes, class_of, irreps)
    raise LookupError(f"centralizer of {x} in {G.name} (order {len(Z)}) matches no catalog group")


def transported(cz: Centralizer, h: Perm) -> Centralizer:
    """The centralizer of h x h^-1 with characters sigma(h^-1 . h)."""
    x2 = conjugate(h, cz.rep)
    hinv = inverse(h)
    els = sorted(conjugate(h, g) for g in cz.elements)
    classes = conjugacy_classes(els)
    class_of = {g: k for k, c in enumerate(classes) for g in c}
    irreps = [
        Irrep(ir.label, tuple(cz.value(j, conjugate(hinv, c[0])) for c in classes)) for j, ir in enumerate(cz.irreps)
    ]
    return Centralizer(x2, els, cz.catalog, classes, class_of, irreps)


# -- M(G) and the Fourier pairing ---------------------------------------------

# complex conjugation falls on the character of Z(y); False moves it to Z(x)
CONJUGATE_SECOND = True


@dataclass(frozen=True)
class MPair:
    class_index: int
    irrep_index: int


@dataclass
class FourierData:
    group: GroupTable
    centralizers: list[Centralizer]
    pairs: list[MPair]

    def label(self, p: MPair) -> str:
        cz = self.centralizers[p.class_index]
        return f"({p.class_index},{cz.irreps[p.irrep_index].label})"


@lru_cache(maxsize=None)
def fourier_data(name: str) -> FourierData:
    G = group_table(name)
    cents = [centralizer_table(G, x) for x in G.reps]
    pairs = [MPair(k, j) for k, cz in enumerate(cents) for j in range(len(cz.irreps))]
    return FourierData(G, cents, pairs)


def m_set(name: str) -> list[MPair]:
    return list(fourier_data(name).pairs)


def pairing_from_reps(G: GroupTable, zx: Centralizer, zy: Centralizer,
                      conjugate_second: bool = CONJUGATE_SECOND) -> list[list[Cyclotomic]]:
    """Block of the Fourier matrix for representatives x, y: rows sigma of Z(x), columns tau of Z(y).

    {(x,s),(y,t)} = 1/(|Z(x)||Z(y)|) sum over g with x commuting with g y g^-1 of
    s(g y g^-1) conj(t(g^-1 x g)).
    """
    x, y = zx.rep, zy.rep
    counts: dict[tuple[int, int], int] = {}
    for g in G.elements:
        gyg = conjugate(g, y)
        if compose(x, gyg) != compose(gyg, x):
            continue
        gxg = conjugate(inverse(g), x)
        key = (zx.class_of[gyg], zy.class_of[gxg])
        counts[key] = counts.get(key, 0) + 1
    scale = Fraction(1, zx.order * zy.order)
    block = []
    for s in zx.irreps:
        row = []
        for t in zy.irreps:
            acc = ZERO
            for (kx, ky), n in counts.items():
                if conjugate_second:
                    acc = acc + s.values[kx] * t.values[ky].conj() * n
                else:
                    acc = acc + s.values[kx].conj() * t.values[ky] * n
            row.append(acc * scale)
        block.append(row)
    return block


@lru_cache(maxsize=None)
def fourier_matrix(name: str) -> tuple[tuple[Cyclotomic, ...], ...]:
    fd = fourier_data(name)
    index = {p: n for n, p in enumerate(fd.pairs)}
    size = len(fd.pairs)
    S = [[ZERO] * size for _ in range(size)]
    for kx, zx in enumerate(fd.centralizers):
        for ky, zy in enumerate(fd.centralizers):
            block = pairing_from_reps(fd.group, zx, zy)
            for jx in range(len(zx.irreps)):
                for jy in range(len(zy.irreps)):
                    S[index[MPair(kx, jx)]][index[MPair(ky, jy)]] = block[jx][jy]
    return tuple(tuple(r) for r in S)


def fourier_pairing(p: MPair, q: MPair, name: str) -> Cyclotomic:
    fd = fourier_data(name)
    return fourier_matrix(name)[fd.pairs.index(p)][fd.pairs.index(q)]


def _integer_form(A: Sequence[Sequence[Cyclotomic]]) -> tuple[list[list[int]], int] | None:
    # rational matrix as (integer matrix, common denominator), else None
    if not all(v.is_rational for row in A for v in row):
        return None
    fr = [[v.to_fraction() for v in row] for row in A]
    d = lcm(*(f.denominator for row in fr for f in row)) if fr else 1
    return [[int(f * d) for f in row] for row in fr], d


def matmul(A: Sequence[Sequence[Cyclotomic]], B: Sequence[Sequence[Cyclotomic]]) -> list[list[Cyclotomic]]:
    ia, ib = _integer_form(A), _integer_form(B)
    if ia and ib:
        (a, da), (b, db) = ia, ib
        cols = list(zip(*b))
        d = da * db
        return [[Cyclotomic.rational(Fraction(sum(map(mul, row, c)), d)) for c in cols] for row in a]
    n, m, k = len(A), len(B[0]) if B else 0, len(B)
    out = []
    for i in range(n):
        row = []
        for j in range(m):
            acc = ZERO
            for l in range(k):
                a = A[i][l]
                if a:
                    b = B[l][j]
                    if b:
                        acc = acc + a * b
            row.append(acc)
        out.append(row)
    return out


@dataclass(frozen=True)
class FourierReport:
    name: str
    size: int
    unitary: bool
    hermitian: bool
    square_is_permutation: bool
    real_symmetric: bool
    square_is_identity: bool


REAL_SUBCATALOG = ("S2", "S3", "S4", "S5", "Z2", "(Z/2)^2", "(Z/2)^3", "(Z/2)^4", "D8", "trivial")


def fourier_matrix_checks(name: str) -> FourierReport:
    name = canonical_name(name)
    S = fourier_matrix(name)
    n = len(S)
    Sh = [[S[j][i].conj() for j in range(n)] for i in range(n)]
    U = matmul(S, Sh)
    unitary = all(U[i][j] == (1 if i == j else 0) for i in range(n) for j in range(n))
    hermitian = all(S[i][j] == S[j][i].conj() for i in range(n) for j in range(n))
    S2 = matmul(S, S)
    perm = all(
        sum(1 for j in range(n) if S2[i][j]) == 1 and any(S2[i][j] == 1 for j in range(n)) for i in range(n)
    ) and all(sum(1 for i in range(n) if S2[i][j]) == 1 for j in range(n))
    real_sym = all(S[i][j] == S[i][j].conj() and S[i][j] == S[j][i] for i in range(n) for j in range(n))
    ident = all(S2[i][j] == (1 if i == j else 0) for i in range(n) for j in range(n))
    return FourierReport(name, n, unitary, hermitian, perm, real_sym, ident)
