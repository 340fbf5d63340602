"""Unipotent classes of Sp_2n and SO_n: Jordan types, their sequences, A(u) and its quotient.

A class is given by its Jordan type.  The symbol recipe turns the partition
into two rows (A, B); interleaving them gives the shifted sequence, and
undoing the shift gives the interlacing sequence a.  The class is special
exactly when this a satisfies the interlacing conditions.

Intervals of the shifted sequence are matched in increasing order with the
set Delta of part sizes that carry the component group, and A(u) becomes a
space of subsets of intervals.
"""

from __future__ import annotations

import itertools
import warnings
from collections import Counter
from dataclasses import dataclass
from enum import Enum
from typing import Iterator

from .checks import Check
from .f2 import Ambient, F2Subspace, GroundSet, ambient_space, canonical_mask, express, popcount, rank, reduce_basis
from .sequences import (
    Flavor,
    InterlacingSequence,
    SequenceError,
    is_interlacing,
    shifted_entries,
    validate_sequence,
)
from .symbols import Frak, Interval, IntervalStructure, SymbolPair, Symbols, symbols_of


class Kind(str, Enum):
    SYMPLECTIC = "sp"
    ORTHOGONAL = "so"
    GENERAL_LINEAR = "gl"

    @property
    def flavor(self) -> Flavor:
        if self is Kind.GENERAL_LINEAR:
            raise ValueError("general linear classes carry no sequence")
        return Flavor.C if self is Kind.SYMPLECTIC else Flavor.BD


class JordanTypeError(ValueError):
    pass


@dataclass(frozen=True)
class JordanType:
    kind: Kind
    parts: tuple[int, ...]  # weakly decreasing

    @classmethod
    def of(cls, parts, kind: Kind | str) -> JordanType:
        kind = Kind(kind)
        parts = tuple(sorted((int(p) for p in parts), reverse=True))
        if not parts or any(p <= 0 for p in parts):
            raise JordanTypeError(f"parts must be positive and nonempty: {parts}")
        jt = cls(kind, parts)
        m = jt.multiplicities
        if kind is Kind.SYMPLECTIC:
            bad = sorted(e for e, i in m.items() if e % 2 == 1 and i % 2 == 1)
            if bad:
                raise JordanTypeError(f"symplectic type needs odd parts with even multiplicity; see {bad}")
        elif kind is Kind.ORTHOGONAL:
            bad = sorted(e for e, i in m.items() if e % 2 == 0 and i % 2 == 1)
            if bad:
                raise JordanTypeError(f"orthogonal type needs even parts with even multiplicity; see {bad}")
            if jt.total < 7:
                warnings.warn(f"SO_{jt.total} is below the usual range n >= 7", stacklevel=2)
        return jt

    @property
    def multiplicities(self) -> dict[int, int]:
        return dict(Counter(self.parts))

    @property
    def total(self) -> int:
        return sum(self.parts)

    @property
    def rank(self) -> int:
        """Lie rank of the ambient group."""
        if self.kind is Kind.GENERAL_LINEAR:
            return self.total - 1
        return self.total // 2

    @property
    def delta(self) -> tuple[int, ...]:
        if self.kind is Kind.GENERAL_LINEAR:
            return ()
        parity = 0 if self.kind is Kind.SYMPLECTIC else 1
        return tuple(sorted(e for e in self.multiplicities if e % 2 == parity))

    @property
    def group_name(self) -> str:
        if self.kind is Kind.SYMPLECTIC:
            return f"Sp{self.total}"
        if self.kind is Kind.ORTHOGONAL:
            return f"SO{self.total}"
        return f"GL{self.total}"


def jordan_type(parts, kind: Kind | str) -> JordanType:
    return JordanType.of(parts, kind)


def partitions(n: int, largest: int | None = None) -> Iterator[tuple[int, ...]]:
    if largest is None:
        largest = n
    if n == 0:
        yield ()
        return
    for p in range(min(n, largest), 0, -1):
        for rest in partitions(n - p, p):
            yield (p,) + rest


def jordan_types(kind: Kind | str, n: int) -> Iterator[JordanType]:
    """All Jordan types of Sp_2n (n = half the dimension) or SO_n."""
    kind = Kind(kind)
    total = 2 * n if kind is Kind.SYMPLECTIC else n
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        for p in partitions(total):
            try:
                yield JordanType.of(p, kind)
            except JordanTypeError:
                continue


# -- partition -> sequence ----------------------------------------------------


def default_N(jt: JordanType) -> int:
    """Smallest admissible N: even for Sp, and N = #parts - 1 for SO."""
    P = len(jt.parts)
    if jt.kind is Kind.SYMPLECTIC:
        return P - 1 if P % 2 else P
    return P - 1


def _check_N(jt: JordanType, N: int) -> None:
    P = len(jt.parts)
    if N < P - 1:
        raise ValueError(f"N={N} cannot host {P} parts")
    if jt.kind is Kind.SYMPLECTIC and N % 2:
        raise ValueError(f"symplectic classes need N even, got {N}")
    if jt.kind is Kind.ORTHOGONAL and (N - P + 1) % 2:
        raise ValueError(f"orthogonal classes need N = #parts - 1 mod 2, got N={N}")


def symbol_rows(jt: JordanType, N: int) -> tuple[list[int], list[int]]:
    """The two rows of the class symbol: pad to N+1 parts, add 0..N, split by parity, halve."""
    _check_N(jt, N)
    lam = sorted(jt.parts)
    lam = [0] * (N + 1 - len(lam)) + lam
    c = [x + i for i, x in enumerate(lam)]
    # the row of length N/2 + 1 (Sp) resp. the row from odd entries (SO) comes first
    big_parity = 0 if jt.kind is Kind.SYMPLECTIC else 1
    big = [x // 2 for x in c if x % 2 == big_parity]
    small = [x // 2 for x in c if x % 2 != big_parity]
    return big, small


def sequence_from_rows(big: list[int], small: list[int], kind: Kind, N: int) -> tuple[int, ...] | None:
    """Interleave the rows as the two parity chains; None if that is impossible."""
    a = tuple(sorted(big + small))
    evens, odds = sorted(a[0::2]), sorted(a[1::2])
    if kind is Kind.SYMPLECTIC or N % 2 == 0:
        fits = evens == sorted(big) and odds == sorted(small)
    else:
        fits = sorted([evens, odds]) == sorted([sorted(big), sorted(small)])
    if not fits or not is_interlacing(a):
        return None
    return a


@dataclass(frozen=True)
class NotSpecial:
    jt: JordanType
    N: int
    rows: tuple[tuple[int, ...], tuple[int, ...]]

    special = False


@dataclass(frozen=True)
class DeltaMatch:
    intervals: tuple[Interval, ...]
    delta: tuple[int, ...]
    sizes: tuple[int, ...]
    multiplicities: tuple[int, ...]

    @property
    def ok(self) -> bool:
        return self.sizes == self.multiplicities

    @property
    def witness(self) -> dict | None:
        if self.ok:
            return None
        if len(self.sizes) != len(self.multiplicities):
            return {"intervals": len(self.sizes), "delta": len(self.multiplicities)}
        k = next(h for h in range(len(self.sizes)) if self.sizes[h] != self.multiplicities[h])
        return {"interval": list(self.intervals[k]), "part": self.delta[k], "size": self.sizes[k],
                "multiplicity": self.multiplicities[k]}

    @property
    def bijection(self) -> dict[Interval, int]:
        if not self.ok:
            raise ValueError(f"intervals do not match Delta: {self.witness}")
        return dict(zip(self.intervals, self.delta))


def interval_delta_match(a: InterlacingSequence | IntervalStructure, jt: JordanType) -> DeltaMatch:
    st = a if isinstance(a, IntervalStructure) else symbols_of(a).structure
    m = jt.multiplicities
    return DeltaMatch(
        st.intervals,
        jt.delta,
        tuple(len(I) for I in st.intervals),
        tuple(m[e] for e in jt.delta),
    )


@dataclass(frozen=True)
class ClassSequence:
    jt: JordanType
    N: int
    seq: InterlacingSequence
    rows: tuple[tuple[int, ...], tuple[int, ...]]
    match: DeltaMatch
    checks: tuple[Check, ...]

    special = True


def _stability_profile(seq: InterlacingSequence) -> tuple:
    sym = symbols_of(seq)
    ts = sym.enumerate_T()
    fr = Frak(seq).enumerate()
    return (
        len(seq.singleton_indices),
        tuple(len(I) for I in sym.structure.intervals),
        len(ts.T1),
        len(fr.T_prime),
    )


def sequence_of_class(
    jt: JordanType, N: int | None = None, check_stability: bool = True
) -> ClassSequence | NotSpecial:
    if jt.kind is Kind.GENERAL_LINEAR:
        raise ValueError("general linear classes carry no sequence; see trivial_structures")
    if N is None:
        N = default_N(jt)
    big, small = symbol_rows(jt, N)
    rows = (tuple(big), tuple(small))
    a = sequence_from_rows(big, small, jt.kind, N)
    if a is None:
        return NotSpecial(jt, N, rows)
    seq = validate_sequence(a, jt.kind.flavor, allow_empty=jt.kind is Kind.ORTHOGONAL)
    sym = symbols_of(seq)
    h = shifted_entries(a, seq.flavor)
    match = interval_delta_match(sym.structure, jt)
    # the symbol rows reappear as the two parity chains of the shifted sequence
    row_a = {x + k for k, x in enumerate(sorted(big))}
    row_b = {x + k + (1 if jt.kind is Kind.SYMPLECTIC else 0) for k, x in enumerate(sorted(small))}
    chains = [set(h[0::2]), set(h[1::2])]
    checks = [
        Check.of("shifted sequence has the symbol rows as its chains",
                 chains == [row_a, row_b] or (jt.kind is Kind.ORTHOGONAL and chains == [row_b, row_a]),
                 {"shifted": list(h)}),
        Check.of("interval sizes match multiplicities on Delta", match.ok, match.witness),
    ]
    if check_stability:
        here = _stability_profile(seq)
        bigger = sequence_of_class(jt, N + 2, check_stability=False)
        there = _stability_profile(bigger.seq) if isinstance(bigger, ClassSequence) else None
        checks.append(Check.of("sequence data stable under N -> N+2", here == there,
                               {"N": list(here), "N+2": None if there is None else list(there)}))
    return ClassSequence(jt, N, seq, rows, match, tuple(checks))


def special_classes(kind: Kind | str, n: int) -> Iterator[ClassSequence]:
    for jt in jordan_types(kind, n):
        cs = sequence_of_class(jt)
        if isinstance(cs, ClassSequence):
            yield cs


def class_of_partition(parts, kind: Kind | str, N: int | None = None) -> ClassSequence | NotSpecial:
    return sequence_of_class(jordan_type(parts, kind), N)


# -- constraint-search fallback -------------------------------------------------


def pin_search(jt: JordanType, N: int | None = None, bound: int | None = None) -> list[tuple[int, ...]]:
    """Interlacing sequences of length N+1 with the class's entry sum whose
    intervals match Delta.  Does not consult the symbol rows."""
    if N is None:
        N = default_N(jt)
    _check_N(jt, N)
    if bound is None:
        bound = max(jt.parts) + N
    flavor = jt.kind.flavor
    out = []
    for a in _interlacing_with_sum(N + 1, bound, entry_sum(jt, N)):
        try:
            seq = validate_sequence(a, flavor, allow_empty=jt.kind is Kind.ORTHOGONAL)
        except SequenceError:
            continue
        if interval_delta_match(seq, jt).ok:
            out.append(a)
    return out


def entry_sum(jt: JordanType, N: int) -> int:
    """Sum of the entries of a: (|lambda| + N(N+1)/2 - #odd)/2 with #odd the size of the odd-parity row."""
    if jt.kind is Kind.SYMPLECTIC:
        n_odd = N // 2
    else:
        n_odd = (N + 1) // 2 if N % 2 else N // 2 + 1
    return (jt.total + N * (N + 1) // 2 - n_odd) // 2


def _interlacing_with_sum(length: int, bound: int, target: int) -> Iterator[tuple[int, ...]]:
    def rec(prefix: list[int], remaining: int) -> Iterator[tuple[int, ...]]:
        k = len(prefix)
        if k == length:
            if remaining == 0:
                yield tuple(prefix)
            return
        lo = prefix[-1] if prefix else 0
        if k >= 2:
            lo = max(lo, prefix[-2] + 1)
        for v in range(lo, bound + 1):
            if v * (length - k) > remaining:
                break
            prefix.append(v)
            yield from rec(prefix, remaining - v)
            prefix.pop()

    yield from rec([], target)


# -- component groups ---------------------------------------------------------


@dataclass(frozen=True)
class ComponentData:
    """A(u), the map pi, its kernel K(u) and the quotient Abar(u).

    Intervals are labelled 0..f-1 in increasing order.  ``basis`` lists the
    chosen basis of the subspace spanned by the interval blocks (a subset
    of the block masks, in increasing s), and elements of Abar are bit
    tuples of values on that basis.
    """

    flavor: Flavor
    structure: IntervalStructure
    ground: GroundSet
    A: F2Subspace
    basis: tuple[int, ...]
    basis_blocks: tuple[int, ...]  # the s of each basis element
    pi_rows: tuple[tuple[int, ...], ...]  # pi on the basis of A
    kernel: F2Subspace
    coset_reps: dict  # Abar element -> smallest preimage mask
    checks: tuple[Check, ...]

    @property
    def abar_dim(self) -> int:
        return len(self.basis)

    @property
    def abar_order(self) -> int:
        return 1 << len(self.basis)

    @property
    def quotient(self) -> bool:
        return self.flavor is Flavor.BD

    def pi(self, mask: int) -> tuple[int, ...]:
        return tuple(popcount(mask & b) & 1 for b in self.basis)

    def abar_elements(self) -> list[tuple[int, ...]]:
        return [tuple((c >> k) & 1 for k in range(self.abar_dim)) for c in range(self.abar_order)]

    def alpha_mask(self, alpha) -> int:
        return self.ground.mask_of(self.structure.intervals.index(I) for I in alpha)

    def character_coordinates(self, alpha_mask: int) -> tuple[int, ...] | None:
        """Coordinates of a character of A(u) pulled back from Abar, or None."""
        gens = list(self.basis) + ([self.ground.full_mask] if self.quotient else [])
        c = express(alpha_mask, gens)
        return None if c is None else c[: self.abar_dim]


def _block_mask(st: IntervalStructure, ground: GroundSet, s: int) -> int:
    return ground.mask_of(st.intervals.index(I) for I in st.block(s).intervals)


def component_data(seq: InterlacingSequence, kind: Kind | None = None) -> ComponentData:
    st = symbols_of(seq).structure
    flavor = seq.flavor
    f = len(st.intervals)
    ground = GroundSet(tuple(range(f)))
    A = ambient_space(Ambient.P if flavor is Flavor.C else Ambient.P_EV, ground)
    # basis of the block span: greedy in increasing s, modulo the full set in the BD case
    basis: list[int] = []
    basis_blocks: list[int] = []
    extra = [ground.full_mask] if flavor is Flavor.BD and f else []
    for b in st.blocks:
        m = _block_mask(st, ground, b.s)
        if flavor is Flavor.BD:
            m = canonical_mask(ground, m)
        if rank(basis + extra + [m]) > rank(basis + extra):
            basis.append(m)
            basis_blocks.append(b.s)
    pi_rows = tuple(tuple(popcount(x & b) & 1 for b in basis) for x in A.basis)
    # kernel by linear algebra: combinations of A's basis with zero pi-image
    kernel_gens = []
    for c in range(1 << A.dim):
        img = [0] * len(basis)
        m = 0
        for k in range(A.dim):
            if (c >> k) & 1:
                m ^= A.basis[k]
                img = [u ^ v for u, v in zip(img, pi_rows[k])]
        if not any(img):
            kernel_gens.append(m)
    kernel = F2Subspace(A.ambient, ground, tuple(reduce_basis(kernel_gens)))
    coset_reps: dict = {}
    for m in sorted(A.masks()):
        coset_reps.setdefault(tuple(popcount(m & b) & 1 for b in basis), m)
    expected = 1 << seq.bar_rank
    # defining description of K(u): subsets meeting every block generator evenly
    blocks_all = [_block_mask(st, ground, b.s) for b in st.blocks]
    K_direct = {m for m in A.masks() if all(popcount(m & g) % 2 == 0 for g in blocks_all)}
    checks = (
        Check.of("pi is surjective", len(coset_reps) == 1 << len(basis),
                 {"image": len(coset_reps), "target": 1 << len(basis)}),
        Check.of("|Abar| = 2^rank", (1 << len(basis)) == expected,
                 {"Abar": 1 << len(basis), "expected": expected}),
        Check.of("kernel of pi is the even-meeting subspace", set(kernel.masks()) == K_direct),
        Check.of("|A| = |K| |Abar|", len(A) == len(kernel) * (1 << len(basis))),
    )
    return ComponentData(flavor, st, ground, A, tuple(basis), tuple(basis_blocks), pi_rows, kernel,
                         coset_reps, checks)


pi_map = component_data


# -- Springer modules ---------------------------------------------------------


@dataclass(frozen=True)
class SpringerModule:
    symbol: SymbolPair
    alpha: frozenset
    character: int  # mask over intervals (class representative for BD)
    abar_character: tuple[int, ...] | None


def springer_module(p: SymbolPair, seq: InterlacingSequence, comp: ComponentData | None = None,
                    sym: Symbols | None = None) -> SpringerModule:
    sym = sym or symbols_of(seq)
    comp = comp or component_data(seq)
    T_prime = sym.enumerate_T().T_prime
    key = p if p.ordered == sym.ordered else SymbolPair(p.A, p.B, sym.ordered)
    if key not in T_prime:
        raise ValueError(f"{p} is not in T'")
    alpha = sym.alpha_of(key)
    mask = comp.alpha_mask(alpha)
    if comp.quotient:
        mask = canonical_mask(comp.ground, mask)
    return SpringerModule(key, alpha, mask, comp.character_coordinates(mask))


@dataclass(frozen=True)
class IrrStar:
    members: tuple[SpringerModule, ...]
    checks: tuple[Check, ...]


def irr_star(seq: InterlacingSequence) -> IrrStar:
    """T_1 paired with characters of Abar, plus the T' membership tests."""
    sym = symbols_of(seq)
    comp = component_data(seq)
    ts = sym.enumerate_T()
    mods = {p: springer_module(p, seq, comp, sym) for p in sorted(ts.T_prime, key=repr)}
    t1 = tuple(mods[p] for p in sorted(ts.T1, key=repr))
    chars_all = [m.character for m in mods.values()]
    chars_t1 = [m.abar_character for m in t1]
    factoring = {p for p, m in mods.items() if m.abar_character is not None}
    checks = (
        Check.of("Springer modules of T' are distinct characters", len(set(chars_all)) == len(chars_all)),
        Check.of("T_1 is exactly the part of T' factoring through Abar", factoring == set(ts.T1),
                 sorted(map(repr, factoring ^ set(ts.T1)))),
        Check.of("T_1 characters of Abar are distinct", len(set(chars_t1)) == len(chars_t1)),
        Check.of("|T_1| = |Irr Abar|", len(t1) == comp.abar_order, {"T1": len(t1), "Abar": comp.abar_order}),
    )
    return IrrStar(t1, checks)


# -- type A ---------------------------------------------------------------------


@dataclass(frozen=True)
class TrivialStructures:
    jt: JordanType
    A_order: int = 1
    abar_order: int = 1
    family_size: int = 1

    @property
    def checks(self) -> tuple[Check, ...]:
        return (Check.of("general linear classes have A(u) = Abar(u) = 1", True),)


def trivial_structures(jt: JordanType) -> TrivialStructures:
    if jt.kind is not Kind.GENERAL_LINEAR:
        raise ValueError("trivial structures are for general linear classes")
    return TrivialStructures(jt)


# convenience for enumerations used by the verifiers
def all_subsets(items) -> Iterator[frozenset]:
    items = list(items)
    for r in range(len(items) + 1):
        for c in itertools.combinations(items, r):
            yield frozenset(c)
