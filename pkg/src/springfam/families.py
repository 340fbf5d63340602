"""The family set X_F, its identification with M(Abar) and the pairing checks.

X_F is Pbar(J) (flavor C) or Pbar_ev(J) (flavor BD) with J the once-occurring
values of a.  It splits as L_group + L_char where L_char is the span of the
swap sets {a_{i_s}, a_{i_{s+1}}}.  The map tau sends the interval block of s
to that swap set; composing with tau identifies L_char with the characters of
Abar and, through the symplectic form, L_group with Abar itself.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .checks import Check
from .classical import ComponentData, component_data, irr_star
from .f2 import (
    Ambient,
    F2Class,
    F2Subspace,
    GroundSet,
    ambient_space,
    canonical_mask,
    express,
    popcount,
    quotient_pairing,
)
from .sequences import DEFAULT_LIMIT, Flavor, InterlacingSequence
from .symbols import Frak, FrakSets, SymbolPair, minus, swap_side

AbarElement = tuple[int, ...]


@dataclass(frozen=True)
class FamilySet:
    seq: InterlacingSequence
    ambient: F2Subspace  # X_F
    frak: FrakSets
    members: dict[SymbolPair, int]  # frak T' -> address in X_F
    group_side: int
    checks: tuple[Check, ...]

    @property
    def ground(self) -> GroundSet:
        return self.ambient.ground

    @property
    def L_group(self) -> F2Subspace:
        return self.frak.L[self.group_side]

    @property
    def L_char(self) -> F2Subspace:
        return self.frak.L[1 - self.group_side]

    def elements(self) -> list[int]:
        return sorted(self.ambient.masks(), key=lambda m: canonical_mask(self.ground, m))

    def form(self, x: int, y: int) -> int:
        return quotient_pairing(F2Class(self.ground, x), F2Class(self.ground, y))


def family_set(a: InterlacingSequence, limit: int | None = DEFAULT_LIMIT) -> FamilySet:
    fr = Frak(a, limit)
    fsets = fr.enumerate()
    ground = fsets.ground
    amb = Ambient.PBAR if a.flavor is Flavor.C else Ambient.PBAR_EV
    xf = ambient_space(amb, ground)
    members = {p: m for p, m in fsets.prime_addresses.items()}
    base = SymbolPair(fr.A0, fr.B0, ordered=False)
    r = a.bar_rank
    checks = [
        Check.of("family members embed injectively", len(set(members.values())) == len(members)),
        Check.of("family members lie in X_F", all(xf.contains(m) for m in members.values()),
                 sorted(repr(p) for p, m in members.items() if not xf.contains(m))),
        Check.of("base member sits at the zero class", members.get(base) == 0),
        Check.of("|X_F| = 4^rank", len(xf) == 4**r, {"X_F": len(xf), "expected": 4**r}),
    ]
    if a.flavor is Flavor.BD and len(ground) % 2 == 0 and len(ground):
        # Pbar(J) and Pbar_ev(J) differ here; X_F is taken to be the even part
        checks.append(Check.reported("X_F is Pbar_ev(J), not Pbar(J)",
                                     {"Pbar": 2 ** (len(ground) - 1), "Pbar_ev": len(xf)}))
    checks.extend(fsets.checks)
    return FamilySet(a, xf, fsets, members, 1 - swap_side(a), tuple(checks))


@dataclass(frozen=True)
class MPairAbelian:
    g: AbarElement
    chi: AbarElement  # coordinates against the basis dual to g's


def m_set_abelian(dim: int) -> list[MPairAbelian]:
    els = [tuple((c >> k) & 1 for k in range(dim)) for c in range(1 << dim)]
    return [MPairAbelian(g, chi) for g in els for chi in els]


def dot(u: AbarElement, v: AbarElement) -> int:
    return sum(x & y for x, y in zip(u, v)) & 1


def m_pairing_abelian(p: MPairAbelian, q: MPairAbelian) -> Fraction:
    """|Abar|^-1 (-1)^(chi(g') + chi'(g))."""
    sign = dot(p.chi, q.g) ^ dot(q.chi, p.g)
    return Fraction(-1 if sign else 1, 1 << len(p.g))


@dataclass(frozen=True)
class Identification:
    family: FamilySet
    comp: ComponentData
    tau: tuple[int, ...]  # tau of each Abar basis block, as class masks on J
    table: dict[int, MPairAbelian]  # X_F element -> (g, chi)
    checks: tuple[Check, ...]

    def __call__(self, x: int) -> MPairAbelian:
        return self.table[canonical_mask(self.family.ground, x)]


def _swap_set_mask(a: InterlacingSequence, ground: GroundSet, s: int) -> int:
    idx = a.singleton_indices
    return canonical_mask(ground, ground.mask_of((a.entries[idx[s]], a.entries[idx[s + 1]])))


def canonical_identification(fs: FamilySet, comp: ComponentData | None = None) -> Identification:
    a = fs.seq
    comp = comp or component_data(a)
    ground = fs.ground
    full_J = ground.full_mask
    # tau on every combination of interval blocks: check it is well defined and injective
    blocks = [b.s for b in comp.structure.blocks]
    iv_ground = comp.ground
    tau_of: dict[int, int] = {}
    tau_ok = True
    for c in range(1 << len(blocks)):
        src = 0
        dst = 0
        for k, s in enumerate(blocks):
            if (c >> k) & 1:
                src ^= comp.ground.mask_of(
                    comp.structure.intervals.index(I) for I in comp.structure.block(s).intervals
                )
                dst ^= _swap_set_mask(a, ground, s)
        if comp.quotient:
            src = canonical_mask(iv_ground, src)
        dst = canonical_mask(ground, dst)
        if tau_of.setdefault(src, dst) != dst:
            tau_ok = False
    tau_injective = len(set(tau_of.values())) == len(tau_of)
    tau = tuple(tau_of[b] for b in comp.basis)
    L_char_from_tau = {canonical_mask(ground, m) for m in F2Subspace(Ambient.PBAR, ground, tau).masks()}
    L_char = {canonical_mask(ground, m) for m in fs.L_char.masks()}
    L_group = fs.L_group

    gens = list(L_group.basis) + list(fs.L_char.basis) + [full_J]
    table: dict[int, MPairAbelian] = {}
    decompose_ok = True
    for x in fs.ambient.masks():
        x = canonical_mask(ground, x)
        coef = express(x, gens)
        if coef is None:
            decompose_ok = False
            continue
        xg = 0
        for k, b in enumerate(L_group.basis):
            if coef[k]:
                xg ^= b
        xc = canonical_mask(ground, x ^ xg)
        g = tuple(quotient_pairing(F2Class(ground, xg), F2Class(ground, t)) for t in tau)
        chi = express(xc, list(tau) + [full_J])
        if chi is None:
            decompose_ok = False
            continue
        table[x] = MPairAbelian(g, tuple(chi[: len(tau)]))
    image = set(table.values())
    n = comp.abar_order
    checks = (
        Check.of("tau is well defined on the block span", tau_ok),
        Check.of("tau is injective", tau_injective),
        Check.of("tau maps the block span onto the swap-side Lagrangian", L_char_from_tau == L_char),
        Check.of("X_F decomposes along the Lagrangian pair", decompose_ok),
        Check.of("X_F -> M(Abar) is bijective", len(image) == len(table) == n * n == len(fs.ambient),
                 {"X_F": len(fs.ambient), "image": len(image), "M": n * n}),
        Check.of("zero class maps to (1, trivial)", table.get(0) == MPairAbelian((0,) * len(tau), (0,) * len(tau))),
    )
    return Identification(fs, comp, tau, table, checks)


@dataclass(frozen=True)
class PairingReport:
    pairs_checked: int
    checks: tuple[Check, ...]


def verify_theorem_04(a: InterlacingSequence, ident: Identification | None = None) -> PairingReport:
    """{img x, img y} = |Abar|^-1 (-1)^(x,y) for all x, y in X_F."""
    ident = ident or canonical_identification(family_set(a))
    fs = ident.family
    n = ident.comp.abar_order
    els = fs.elements()
    # even lifts once, then the form is a popcount
    lifts = [F2Class(fs.ground, x).even_lift().mask for x in els]
    imgs = [ident(x) for x in els]
    witness = None
    count = 0
    for i, x in enumerate(els):
        for j, y in enumerate(els):
            count += 1
            form = popcount(lifts[i] & lifts[j]) & 1
            want = Fraction(-1 if form else 1, n)
            got = m_pairing_abelian(imgs[i], imgs[j])
            if got != want and witness is None:
                witness = {"x": list(fs.ground.labels_of(x)), "y": list(fs.ground.labels_of(y)),
                           "pairing": str(got), "form": str(want)}
    checks = ident.checks + (Check.of("pairing on X_F coincides with the M(Abar) pairing", witness is None, witness),)
    return PairingReport(count, checks)


@dataclass(frozen=True)
class CorollaryReport:
    rows: tuple[tuple[SymbolPair, int, MPairAbelian, AbarElement], ...]
    checks: tuple[Check, ...]


def verify_corollary_05(a: InterlacingSequence, ident: Identification | None = None) -> CorollaryReport:
    """T_1 members land in the slice (1, *) with their own Abar character, and nothing else does."""
    ident = ident or canonical_identification(family_set(a))
    fs = ident.family
    star = irr_star(a)
    rows = []
    bad = []
    hit = set()
    for mod in star.members:
        q = minus(mod.symbol, a.flavor)
        x = fs.members.get(q)
        if x is None:
            bad.append({"symbol": repr(mod.symbol), "reason": "minus image is not a family member"})
            continue
        img = ident(x)
        hit.add(q)
        rows.append((mod.symbol, x, img, mod.abar_character))
        if any(img.g) or img.chi != mod.abar_character:
            bad.append({"symbol": repr(mod.symbol), "image": [list(img.g), list(img.chi)],
                        "character": list(mod.abar_character or ())})
    slice_members = {p for p, x in fs.members.items() if not any(ident(x).g)}
    extra = sorted(repr(p) for p in slice_members - hit)
    checks = star.checks + (
        Check.of("T_1 members map to (1, their Abar character)", not bad, bad),
        Check.of("every family member in the (1, *) slice comes from T_1", not extra, extra),
    )
    return CorollaryReport(tuple(rows), checks)
