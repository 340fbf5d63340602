"""Interlacing integer sequences and the swap family a^X.

A sequence a_0 <= a_1 <= ... <= a_N whose even-position and odd-position
entries are both strictly increasing.  Flavor C (N even) is shifted by
ceil(i/2) (the "hat" sequence), flavor BD (any N) by floor(i/2) (the
"ring" sequence).
"""

from __future__ import annotations

import itertools
import random
from collections import Counter
from dataclasses import dataclass, field
from enum import Enum
from math import comb
from typing import Iterable, Iterator, Sequence

from .checks import Check


class Flavor(str, Enum):
    C = "C"
    BD = "BD"


class SequenceError(ValueError):
    pass


class EnumerationTooLarge(RuntimeError):
    pass


DEFAULT_LIMIT = 10**6


@dataclass(frozen=True)
class InterlacingSequence:
    entries: tuple[int, ...]
    flavor: Flavor
    singleton_indices: tuple[int, ...] = field(init=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "entries", tuple(self.entries))
        counts = Counter(self.entries)
        object.__setattr__(
            self, "singleton_indices", tuple(i for i, x in enumerate(self.entries) if counts[x] == 1)
        )

    @property
    def N(self) -> int:
        return len(self.entries) - 1

    @property
    def multiset(self) -> Counter:
        return Counter(self.entries)

    @property
    def singleton_values(self) -> tuple[int, ...]:
        """The set J of once-occurring values, in increasing order."""
        return tuple(self.entries[i] for i in self.singleton_indices)

    @property
    def gaps(self) -> tuple[int, ...]:
        """m_s with i_{s+1} = i_s + 2 m_s + 1."""
        idx = self.singleton_indices
        return tuple((idx[s + 1] - idx[s] - 1) // 2 for s in range(len(idx) - 1))

    @property
    def admissible(self) -> tuple[int, ...]:
        raise NotImplementedError

    @property
    def bar_rank(self) -> int:
        """log2 of the expected size of the T_1 / Abar side."""
        raise NotImplementedError

    def shift(self, i: int) -> int:
        raise NotImplementedError

    def __iter__(self) -> Iterator[int]:
        return iter(self.entries)

    def __len__(self) -> int:
        return len(self.entries)


class SequenceC(InterlacingSequence):
    @property
    def M(self) -> int:
        return (len(self.singleton_indices) - 1) // 2

    @property
    def admissible(self) -> tuple[int, ...]:
        return tuple(range(1, 2 * self.M, 2))

    @property
    def bar_rank(self) -> int:
        return self.M

    def shift(self, i: int) -> int:
        return (i + 1) // 2


class SequenceBD(InterlacingSequence):
    @property
    def mu(self) -> int:
        return len(self.singleton_indices) - 1

    @property
    def admissible(self) -> tuple[int, ...]:
        return tuple(range(0, self.mu, 2))

    @property
    def bar_rank(self) -> int:
        return max(self.mu, 0) // 2

    def shift(self, i: int) -> int:
        return i // 2


def is_interlacing(entries: Sequence[int]) -> bool:
    """Both parity chains strictly increasing."""
    return all(entries[i] < entries[i + 2] for i in range(len(entries) - 2))


def validate_sequence(
    entries: Iterable[int], flavor: Flavor | str, allow_empty: bool = False
) -> SequenceC | SequenceBD:
    """Check the interlacing conditions and return a typed sequence.

    ``allow_empty`` admits BD sequences with no once-occurring value; these
    only arise for orthogonal classes without odd parts and carry trivial
    structure.
    """
    flavor = Flavor(flavor)
    a = tuple(int(x) for x in entries)
    if not a:
        raise SequenceError("sequence must have at least one entry")
    if any(x < 0 for x in a):
        raise SequenceError(f"entries must be nonnegative: {a}")
    for i in range(len(a) - 1):
        if a[i] > a[i + 1]:
            raise SequenceError(f"not weakly increasing at position {i}: {a}")
    if not is_interlacing(a):
        bad = next(i for i in range(len(a) - 2) if a[i] >= a[i + 2])
        raise SequenceError(f"parity chain not strictly increasing at positions {bad},{bad + 2}: {a}")
    if flavor is Flavor.C:
        if (len(a) - 1) % 2:
            raise SequenceError(f"flavor C needs N even, got N={len(a) - 1}")
        seq: SequenceC | SequenceBD = SequenceC(a, flavor)
    else:
        seq = SequenceBD(a, flavor)
        if not seq.singleton_indices and not allow_empty:
            raise SequenceError(f"flavor BD needs a once-occurring value: {a}")
    idx = seq.singleton_indices
    # consequences of the interlacing conditions; a failure here is a bug
    assert all(i % 2 == s % 2 for s, i in enumerate(idx)), (a, idx)
    assert len(idx) % 2 == len(a) % 2, (a, idx)
    return seq


@dataclass(frozen=True)
class ShiftedSequence:
    entries: tuple[int, ...]
    origin: InterlacingSequence

    @property
    def multiset(self) -> Counter:
        return Counter(self.entries)

    @property
    def even_part(self) -> frozenset[int]:
        return frozenset(self.entries[0::2])

    @property
    def odd_part(self) -> frozenset[int]:
        return frozenset(self.entries[1::2])


def shifted_entries(entries: Sequence[int], flavor: Flavor) -> tuple[int, ...]:
    if flavor is Flavor.C:
        return tuple(x + (i + 1) // 2 for i, x in enumerate(entries))
    return tuple(x + i // 2 for i, x in enumerate(entries))


def hat(a: SequenceC) -> ShiftedSequence:
    if a.flavor is not Flavor.C:
        raise SequenceError("hat is defined for flavor C")
    return ShiftedSequence(shifted_entries(a.entries, Flavor.C), a)


def ring(a: SequenceBD) -> ShiftedSequence:
    if a.flavor is not Flavor.BD:
        raise SequenceError("ring is defined for flavor BD")
    return ShiftedSequence(shifted_entries(a.entries, Flavor.BD), a)


def shifted(a: InterlacingSequence) -> ShiftedSequence:
    return hat(a) if a.flavor is Flavor.C else ring(a)


def swap(a: InterlacingSequence, X: Iterable[int]) -> tuple[int, ...]:
    """a^X: transpose adjacent pairs across [i_s, i_{s+1}] for each s in X."""
    X = set(X)
    bad = X - set(a.admissible)
    if bad:
        raise SequenceError(f"inadmissible swap indices {sorted(bad)}; admissible are {a.admissible}")
    b = list(a.entries)
    idx = a.singleton_indices
    for s in X:
        for j in range(idx[s], idx[s + 1], 2):
            b[j], b[j + 1] = a.entries[j + 1], a.entries[j]
    return tuple(b)


def swap_family(a: InterlacingSequence) -> dict[frozenset[int], tuple[int, ...]]:
    adm = a.admissible
    return {
        frozenset(X): swap(a, X)
        for r in range(len(adm) + 1)
        for X in itertools.combinations(adm, r)
    }


def enumerate_E(a: InterlacingSequence, limit: int | None = DEFAULT_LIMIT) -> Iterator[tuple[int, ...]]:
    """All b with [b] = [a] whose parity chains are strictly increasing.

    A value occurring twice must sit once on each chain; the once-occurring
    values are split between the chains, and each chain's order is forced.
    """
    counts = a.multiset
    doubled = sorted(v for v, c in counts.items() if c == 2)
    singles = sorted(v for v, c in counts.items() if c == 1)
    n_even = len(a.entries) // 2 + len(a.entries) % 2
    k = n_even - len(doubled)
    if k < 0 or k > len(singles):
        return
    if limit is not None and comb(len(singles), k) > limit:
        raise EnumerationTooLarge(f"{comb(len(singles), k)} candidates exceed the limit {limit}")
    for chosen in itertools.combinations(singles, k):
        evens = sorted(doubled + list(chosen))
        odds = sorted(doubled + [v for v in singles if v not in chosen])
        b = [0] * len(a.entries)
        b[0::2] = evens
        b[1::2] = odds
        yield tuple(b)


def enumerate_matching(a: InterlacingSequence, limit: int | None = DEFAULT_LIMIT) -> set[tuple[int, ...]]:
    """Brute-force set of b in E with the same shifted multiset as a."""
    target = Counter(shifted_entries(a.entries, a.flavor))
    return {b for b in enumerate_E(a, limit) if Counter(shifted_entries(b, a.flavor)) == target}


def matching_checks(a: InterlacingSequence, limit: int | None = DEFAULT_LIMIT) -> tuple[Check, ...]:
    """The brute-force filter against the swap family, as set equality and as a count."""
    found = enumerate_matching(a, limit)
    family = set(swap_family(a).values())
    expected = 2**a.bar_rank
    seq = list(a.entries)
    return (
        Check.of("b in E with matching shifted multiset is a swap a^X", found == family,
                 {"a": seq, "extra": sorted(map(list, found - family)), "missing": sorted(map(list, family - found))}),
        Check.of("number of such b is 2^rank", len(found) == expected,
                 {"a": seq, "found": len(found), "expected": expected}),
    )


def random_sequence(rng: random.Random, flavor: Flavor | str, max_N: int, max_entry: int) -> SequenceC | SequenceBD:
    """Uniform-ish valid sequence: a sorted sample with every multiplicity at most 2 is interlacing."""
    flavor = Flavor(flavor)
    pool = [v for v in range(max_entry + 1) for _ in range(2)]
    Ns = [N for N in range(max_N + 1) if N + 1 <= len(pool) and (flavor is Flavor.BD or N % 2 == 0)]
    while True:
        N = rng.choice(Ns)
        a = sorted(rng.sample(pool, N + 1))
        if flavor is Flavor.C or any(a.count(x) == 1 for x in a):
            return validate_sequence(a, flavor)


def all_sequences(flavor: Flavor | str, max_N: int, max_entry: int) -> Iterator[SequenceC | SequenceBD]:
    """Every valid sequence with N <= max_N and entries <= max_entry."""
    flavor = Flavor(flavor)
    values = range(max_entry + 1)
    for N in range(max_N + 1):
        if flavor is Flavor.C and N % 2:
            continue
        for counts in itertools.product((0, 1, 2), repeat=len(values)):
            if sum(counts) != N + 1:
                continue
            a = [v for v, c in zip(values, counts) for _ in range(c)]
            if flavor is Flavor.BD and 1 not in counts:
                continue
            yield validate_sequence(a, flavor)
