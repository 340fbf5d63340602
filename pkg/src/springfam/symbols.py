"""Symbols attached to an interlacing sequence.

Two parallel worlds:

* the shifted side: pairs (A, B) of consecutive-free sets partitioning the
  hat/ring multiset (the set T and its subsets T', T_1), parametrized by
  subsets alpha of the interval set;
* the unshifted side: unordered pairs partitioning the multiset [a] (the
  frak set and its subsets), parametrized by classes of subsets of the
  once-occurring values.

The minus transform carries the first world to the second.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping

from .checks import Check, VerificationError
from .f2 import (
    Ambient,
    F2Subspace,
    GroundSet,
    ambient_space,
    canonical_mask,
    is_lagrangian_pair,
    reduce_basis,
)
from .sequences import DEFAULT_LIMIT, EnumerationTooLarge, Flavor, InterlacingSequence, shifted_entries, swap

Interval = tuple[int, ...]
Alpha = frozenset  # frozenset of Interval


def _runs(values: Iterable[int]) -> list[Interval]:
    runs: list[list[int]] = []
    for v in sorted(values):
        if runs and runs[-1][-1] == v - 1:
            runs[-1].append(v)
        else:
            runs.append([v])
    return [tuple(r) for r in runs]


def _has_consecutive(xs: Iterable[int]) -> bool:
    s = sorted(xs)
    return any(s[k + 1] == s[k] + 1 for k in range(len(s) - 1))


# -- symbol pairs -------------------------------------------------------------


@dataclass(frozen=True)
class SymbolPair:
    """A pair of finite integer sets; unordered pairs keep the smaller sorted tuple first."""

    A: frozenset[int]
    B: frozenset[int]
    ordered: bool = True

    def __post_init__(self) -> None:
        A, B = frozenset(self.A), frozenset(self.B)
        if not self.ordered and tuple(sorted(B)) < tuple(sorted(A)):
            A, B = B, A
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "B", B)

    @property
    def consecutive_free(self) -> tuple[bool, bool]:
        return (not _has_consecutive(self.A), not _has_consecutive(self.B))

    @property
    def multiset(self) -> Counter:
        return Counter(self.A) + Counter(self.B)

    @property
    def sizes(self) -> tuple[int, int]:
        return (len(self.A), len(self.B))

    def unordered(self) -> SymbolPair:
        return SymbolPair(self.A, self.B, ordered=False)

    def to_json(self) -> list[list[int]]:
        return [sorted(self.A), sorted(self.B)]

    def __repr__(self) -> str:
        a = "{" + ",".join(map(str, sorted(self.A))) + "}"
        b = "{" + ",".join(map(str, sorted(self.B))) + "}"
        return f"({a},{b})"


def minus(p: SymbolPair, flavor: Flavor | str) -> SymbolPair:
    """Subtract 0,1,2,... from A and 1,2,... (C) resp. 0,1,... (BD) from B."""
    flavor = Flavor(flavor)
    b_offset = 1 if flavor is Flavor.C else 0
    A = [x - k for k, x in enumerate(sorted(p.A))]
    B = [y - k - b_offset for k, y in enumerate(sorted(p.B))]
    if len(set(A)) != len(A) or len(set(B)) != len(B):
        raise ValueError(f"minus of {p} repeats an element; the input has consecutive entries")
    if any(x < 0 for x in A + B):
        raise ValueError(f"minus of {p} leaves the nonnegative integers")
    return SymbolPair(frozenset(A), frozenset(B), ordered=False)


def minus_multiset(p: SymbolPair, flavor: Flavor) -> Counter:
    b_offset = 1 if flavor is Flavor.C else 0
    return Counter(x - k for k, x in enumerate(sorted(p.A))) + Counter(
        y - k - b_offset for k, y in enumerate(sorted(p.B))
    )


# -- interval structure -------------------------------------------------------


@dataclass(frozen=True)
class Block:
    s: int
    values: tuple[int, ...]  # I_s
    pieces: tuple[Interval, ...]  # I_s^1, ..., I_s^t as maximal runs
    intervals: tuple[Interval, ...]  # intervals of the sequence contained in I_s
    union_of_intervals: bool

    @property
    def parity_ok(self) -> bool:
        if len(self.pieces) <= 1:
            return True
        sizes = [len(p) for p in self.pieces]
        return sizes[0] % 2 == 1 and sizes[-1] % 2 == 1 and all(x % 2 == 0 for x in sizes[1:-1])


@dataclass(frozen=True)
class IntervalStructure:
    flavor: Flavor
    shifted: tuple[int, ...]
    J: tuple[int, ...]
    runs: tuple[Interval, ...]
    intervals: tuple[Interval, ...]
    H: tuple[int, ...]
    blocks: tuple[Block, ...]
    unassigned: tuple[Interval, ...]

    def block(self, s: int) -> Block:
        for b in self.blocks:
            if b.s == s:
                return b
        raise KeyError(s)

    def checks(self) -> list[Check]:
        out = [
            Check.of(
                "interval blocks are unions of intervals",
                all(b.union_of_intervals for b in self.blocks),
                [b.s for b in self.blocks if not b.union_of_intervals],
            ),
            Check.of(
                "interval blocks have odd/even/odd sub-interval sizes",
                all(b.parity_ok for b in self.blocks),
                [[b.s, [len(p) for p in b.pieces]] for b in self.blocks if not b.parity_ok],
            ),
        ]
        seen = [I for b in self.blocks for I in b.intervals]
        out.append(Check.of("interval blocks are disjoint", len(seen) == len(set(seen)), seen))
        if self.unassigned:
            out.append(
                Check.reported("intervals partitioned by the blocks", [list(I) for I in self.unassigned])
            )
        else:
            out.append(Check.of("intervals partitioned by the blocks", True))
        return out


def interval_structure(a: InterlacingSequence) -> IntervalStructure:
    h = shifted_entries(a.entries, a.flavor)
    counts = Counter(h)
    J = tuple(sorted(v for v, c in counts.items() if c == 1))
    runs = tuple(_runs(J))
    if a.flavor is Flavor.C:
        intervals = tuple(r for r in runs if r[0] != 0)
        H = tuple(v for r in runs if r[0] == 0 for v in r)
    else:
        intervals, H = runs, ()
    idx = a.singleton_indices
    Jset = set(J)
    blocks = []
    for s in a.admissible:
        vals = tuple(sorted({h[i] for i in range(idx[s], idx[s + 1] + 1)}))
        pieces = tuple(_runs(vals))
        inside = tuple(I for I in intervals if set(I) <= set(vals))
        union = set(vals) <= Jset and all(p in intervals for p in pieces)
        blocks.append(Block(s, vals, pieces, inside, union))
    assigned = {I for b in blocks for I in b.intervals}
    unassigned = tuple(I for I in intervals if I not in assigned)
    return IntervalStructure(a.flavor, h, J, runs, intervals, H, tuple(blocks), unassigned)


# -- the shifted side ---------------------------------------------------------


@dataclass(frozen=True)
class TSets:
    T: frozenset[SymbolPair]
    T_prime: frozenset[SymbolPair]
    T1: frozenset[SymbolPair]
    checks: tuple[Check, ...]


@dataclass
class Symbols:
    """Symbol data for one sequence; build with :func:`symbols_of`."""

    seq: InterlacingSequence
    structure: IntervalStructure
    limit: int | None = DEFAULT_LIMIT
    _alpha_table: dict = field(default_factory=dict, repr=False)

    @property
    def flavor(self) -> Flavor:
        return self.seq.flavor

    @property
    def ordered(self) -> bool:
        return self.flavor is Flavor.C

    @cached_property
    def A0(self) -> frozenset[int]:
        return frozenset(self.structure.shifted[0::2])

    @cached_property
    def B0(self) -> frozenset[int]:
        return frozenset(self.structure.shifted[1::2])

    @property
    def base(self) -> SymbolPair:
        return SymbolPair(self.A0, self.B0, self.ordered)

    def symbol(self, alpha: Iterable[Interval]) -> SymbolPair:
        """(A_alpha, B_alpha)."""
        alpha = frozenset(tuple(I) for I in alpha)
        bad = alpha - set(self.structure.intervals)
        if bad:
            raise ValueError(f"{sorted(bad)} are not intervals of {self.structure.shifted}")
        A0, B0 = self.A0, self.B0
        common = A0 & B0
        H = set(self.structure.H)
        A, B = set(common), set(common)
        for I in self.structure.intervals:
            Iset = set(I)
            if I in alpha:
                A |= Iset & B0
                B |= Iset & A0
            else:
                A |= Iset & A0
                B |= Iset & B0
        A |= H & A0
        B |= H & B0
        return SymbolPair(frozenset(A), frozenset(B), self.ordered)

    def all_alphas(self) -> list[Alpha]:
        ivs = self.structure.intervals
        return [
            frozenset(c) for r in range(len(ivs) + 1) for c in itertools.combinations(ivs, r)
        ]

    def alpha_of(self, p: SymbolPair) -> Alpha:
        """Preimage of p; for BD the representative not containing the first interval."""
        if not self._alpha_table:
            first = self.structure.intervals[0] if self.structure.intervals else None
            for alpha in self.all_alphas():
                if self.ordered or first not in alpha:
                    self._alpha_table[self.symbol(alpha)] = alpha
        key = p if p.ordered == self.ordered else SymbolPair(p.A, p.B, self.ordered)
        try:
            return self._alpha_table[key]
        except KeyError:
            raise ValueError(f"{p} is not of the form (A_alpha, B_alpha)") from None

    def alpha_X(self, X: Iterable[int]) -> Alpha:
        return frozenset(I for s in X for I in self.structure.block(s).intervals)

    def admissible_subsets(self) -> list[frozenset[int]]:
        adm = self.seq.admissible
        return [frozenset(c) for r in range(len(adm) + 1) for c in itertools.combinations(adm, r)]

    # exhaustive enumeration, independent of the alpha parametrization
    def enumerate_T(self) -> TSets:
        h = self.structure.shifted
        counts = Counter(h)
        doubled = {v for v, c in counts.items() if c == 2}
        singles = sorted(v for v, c in counts.items() if c == 1)
        if self.limit is not None and 2 ** len(singles) > self.limit:
            raise EnumerationTooLarge(f"2^{len(singles)} placements exceed the limit {self.limit}")
        T = set()
        for bits in range(2 ** len(singles)):
            A = set(doubled) | {v for k, v in enumerate(singles) if not (bits >> k) & 1}
            B = set(doubled) | {v for k, v in enumerate(singles) if (bits >> k) & 1}
            if _has_consecutive(A) or _has_consecutive(B):
                continue
            if self.flavor is Flavor.C and 0 in B:
                continue
            T.add(SymbolPair(frozenset(A), frozenset(B), self.ordered))
        base = self.base
        want_sizes = base.sizes if self.ordered else tuple(sorted(base.sizes))
        T_prime = {p for p in T if (p.sizes if self.ordered else tuple(sorted(p.sizes))) == want_sizes}
        base_minus = minus_multiset(base, self.flavor)
        T1 = {p for p in T_prime if minus_multiset(p, self.flavor) == base_minus}

        images = [self.symbol(alpha) for alpha in self.all_alphas()]
        n_int = len(self.structure.intervals)
        expected_fibre = 1 if self.ordered or not n_int else 2
        checks = [
            Check.of("base pair lies in T", base in T, repr(base)),
            Check.of("alpha parametrizes T", set(images) == T, sorted(map(repr, T ^ set(images)))),
            Check.of(
                "alpha parametrization fibre size",
                all(v == expected_fibre for v in Counter(images).values()) and len(images) == 2**n_int,
                {repr(k): v for k, v in Counter(images).items() if v != expected_fibre},
            ),
        ]
        swap_images = {self.symbol(self.alpha_X(X)) for X in self.admissible_subsets()}
        checks.append(
            Check.of(
                "|T_1| = 2^rank",
                len(T1) == 2**self.seq.bar_rank,
                {"T1": len(T1), "expected": 2**self.seq.bar_rank},
            )
        )
        checks.append(
            Check.of(
                "T_1 consists of the pairs (A_alpha_X, B_alpha_X)",
                swap_images == T1,
                sorted(map(repr, swap_images ^ T1)),
            )
        )
        return TSets(frozenset(T), frozenset(T_prime), frozenset(T1), tuple(checks))


def symbols_of(a: InterlacingSequence, limit: int | None = DEFAULT_LIMIT) -> Symbols:
    return Symbols(a, interval_structure(a), limit)


def symbol_from_alpha(a: InterlacingSequence, alpha: Iterable[Interval]) -> SymbolPair:
    return symbols_of(a).symbol(alpha)


def enumerate_T(a: InterlacingSequence, limit: int | None = DEFAULT_LIMIT) -> TSets:
    return symbols_of(a, limit).enumerate_T()


# -- the unshifted side -------------------------------------------------------


def lagrangian_generators(a: InterlacingSequence) -> tuple[list[frozenset[int]], list[frozenset[int]]]:
    """Two-element generator sets {a_{i_s}, a_{i_{s+1}}}: s even for index 0, s odd for index 1.

    The swap indices of the sequence select index 1 in flavor C and index 0
    in flavor BD.
    """
    idx = a.singleton_indices
    vals = [a.entries[i] for i in idx]
    pairs = [frozenset((vals[s], vals[s + 1])) for s in range(len(idx) - 1)]
    return pairs[0::2], pairs[1::2]


def swap_side(a: InterlacingSequence) -> int:
    """Which generator list (0 or 1) is spanned by the swap sets a_X."""
    return 1 if a.flavor is Flavor.C else 0


@dataclass(frozen=True)
class FrakSets:
    ground: GroundSet
    pairs: Mapping[int, SymbolPair]  # canonical class mask -> pair
    T: frozenset[SymbolPair]
    T_prime: frozenset[SymbolPair]
    L: tuple[F2Subspace, F2Subspace]
    T_L: tuple[frozenset[SymbolPair], frozenset[SymbolPair]]
    checks: tuple[Check, ...]

    def address(self, p: SymbolPair) -> int:
        p = p.unordered()
        for m, q in self.pairs.items():
            if q == p:
                return m
        raise KeyError(f"{p} is not in the frak set")

    @property
    def prime_addresses(self) -> dict[SymbolPair, int]:
        return {q: m for m, q in self.pairs.items() if q in self.T_prime}


class Frak:
    """Unordered pairs (frakA, frakB) partitioning [a]."""

    def __init__(self, a: InterlacingSequence, limit: int | None = DEFAULT_LIMIT) -> None:
        self.seq = a
        self.limit = limit
        self.ground = GroundSet(a.singleton_values)
        self.A0 = frozenset(a.entries[0::2])
        self.B0 = frozenset(a.entries[1::2])

    def pair(self, frak_a: Iterable[int]) -> SymbolPair:
        fa = set(frak_a)
        J = set(self.ground.elements)
        if not fa <= J:
            raise ValueError(f"{sorted(fa - J)} are not once-occurring values")
        common = self.A0 & self.B0
        A = ((J - fa) & self.A0) | (fa & self.B0) | common
        B = ((J - fa) & self.B0) | (fa & self.A0) | common
        return SymbolPair(frozenset(A), frozenset(B), ordered=False)

    def pair_of_mask(self, mask: int) -> SymbolPair:
        return self.pair(self.ground.labels_of(mask))

    def frak_X(self, X: Iterable[int]) -> frozenset[int]:
        idx = self.seq.singleton_indices
        return frozenset(v for s in X for v in (self.seq.entries[idx[s]], self.seq.entries[idx[s + 1]]))

    def subspaces(self) -> tuple[F2Subspace, F2Subspace]:
        """The two generator spans, as subspaces of Pbar(J) (Pbar_ev(J) for BD)."""
        amb = Ambient.PBAR if self.seq.flavor is Flavor.C else Ambient.PBAR_EV
        out = []
        for gens in lagrangian_generators(self.seq):
            masks = [canonical_mask(self.ground, self.ground.mask_of(g)) for g in gens]
            out.append(F2Subspace(amb, self.ground, tuple(reduce_basis(masks))))
        return out[0], out[1]

    def enumerate(self) -> FrakSets:
        n = len(self.ground)
        if self.limit is not None and 2**n > self.limit:
            raise EnumerationTooLarge(f"2^{n} subsets exceed the limit {self.limit}")
        full = self.ground.full_mask
        pairs: dict[int, SymbolPair] = {}
        complement_ok = True
        for m in range(2**n):
            c = canonical_mask(self.ground, m)
            p = self.pair_of_mask(m)
            if c in pairs and pairs[c] != p:
                complement_ok = False
            pairs.setdefault(c, p)
            if self.pair_of_mask(m ^ full) != p:
                complement_ok = False
        # exhaustive enumeration of unordered pairs partitioning [a]
        counts = self.seq.multiset
        doubled = {v for v, c in counts.items() if c == 2}
        singles = sorted(v for v, c in counts.items() if c == 1)
        T = set()
        for bits in range(2 ** len(singles)):
            A = doubled | {v for k, v in enumerate(singles) if not (bits >> k) & 1}
            B = doubled | {v for k, v in enumerate(singles) if (bits >> k) & 1}
            T.add(SymbolPair(frozenset(A), frozenset(B), ordered=False))
        base = SymbolPair(self.A0, self.B0, ordered=False)
        T_prime = {p for p in T if sorted(p.sizes) == sorted(base.sizes)}
        L0, L1 = self.subspaces()
        T_L = tuple(frozenset(pairs[canonical_mask(self.ground, m)] for m in L.masks()) for L in (L0, L1))
        r = self.seq.bar_rank
        report = is_lagrangian_pair(L0, L1, ambient_space(L0.ambient, self.ground))
        checks = (
            Check.of("frak pair invariant under complement", complement_ok),
            Check.of(
                "classes of subsets of J parametrize the frak set bijectively",
                set(pairs.values()) == T and len(set(pairs.values())) == len(pairs),
                {"classes": len(pairs), "pairs": len(T)},
            ),
            Check.of(
                "|T_0| = |T_1| = 2^rank",
                len(T_L[0]) == len(T_L[1]) == 2**r,
                {"T0": len(T_L[0]), "T1": len(T_L[1]), "expected": 2**r},
            ),
            Check.of("T_0 and T_1 lie in T'", T_L[0] <= T_prime and T_L[1] <= T_prime),
            Check.of("opposed Lagrangian subspaces", report.ok, report.__dict__),
        )
        return FrakSets(self.ground, pairs, frozenset(T), frozenset(T_prime), (L0, L1), T_L, checks)


def enumerate_frak(a: InterlacingSequence, limit: int | None = DEFAULT_LIMIT) -> FrakSets:
    return Frak(a, limit).enumerate()


# -- the minus bijection ------------------------------------------------------


@dataclass(frozen=True)
class MinusBijection:
    mapping: Mapping[SymbolPair, SymbolPair]
    by_X: Mapping[frozenset[int], tuple[SymbolPair, SymbolPair]]
    target_side: int
    checks: tuple[Check, ...]


def minus_bijection(a: InterlacingSequence, limit: int | None = DEFAULT_LIMIT) -> MinusBijection:
    """T_1 -> frak side under minus, with the alpha_X <-> frak a_X agreement per X."""
    sym = symbols_of(a, limit)
    tsets = sym.enumerate_T()
    frak = Frak(a, limit)
    fsets = frak.enumerate()
    side = swap_side(a)
    target = fsets.T_L[side]
    mapping = {p: minus(p, a.flavor) for p in sorted(tsets.T1, key=repr)}
    by_X = {}
    bad_X = []
    for X in sym.admissible_subsets():
        p = sym.symbol(sym.alpha_X(X))
        q = frak.pair(frak.frak_X(X))
        by_X[X] = (p, q)
        aX = swap(a, X)
        agrees = p in tsets.T1 and minus(p, a.flavor) == q
        matches_swap = q == SymbolPair(frozenset(aX[0::2]), frozenset(aX[1::2]), ordered=False)
        if not (agrees and matches_swap):
            bad_X.append(sorted(X))
    images = list(mapping.values())
    checks = (
        Check.of("minus is injective on T_1", len(set(images)) == len(images)),
        Check.of("minus maps T_1 onto the swap-side frak subset", set(images) == target,
                 sorted(map(repr, set(images) ^ target))),
        Check.of("minus of (A_alpha_X, B_alpha_X) is (frakA_X, frakB_X)", not bad_X, bad_X),
    )
    return MinusBijection(mapping, by_X, side, tsets.checks + checks)


def t1_bijection(a: InterlacingSequence, limit: int | None = DEFAULT_LIMIT) -> dict[SymbolPair, SymbolPair]:
    """The map T_1 -> frak subset; raises VerificationError naming the failing claim."""
    mb = minus_bijection(a, limit)
    for c in mb.checks:
        if c.failed:
            raise VerificationError(c)
    return dict(mb.mapping)
