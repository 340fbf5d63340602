"""Linear algebra over F2 on subsets of a finite labelled ground set.

Subsets are stored as int bitmasks indexed by position in the ground set,
so labels can be arbitrary nonnegative integers (sequence values, interval
indices, ...).  The quotient by the line {empty, full} is handled by a
canonical representative: of L and its complement, the one that does not
contain the smallest ground element.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Iterator, Sequence


class Ambient(str, Enum):
    P = "P"  # all subsets
    P_EV = "P_ev"  # even subsets
    PBAR = "Pbar"  # subsets modulo {empty, full}
    PBAR_EV = "Pbar_ev"  # image of the even subsets in Pbar

    @property
    def is_quotient(self) -> bool:
        return self in (Ambient.PBAR, Ambient.PBAR_EV)


def popcount(x: int) -> int:
    return bin(x).count("1")


@dataclass(frozen=True)
class GroundSet:
    elements: tuple[int, ...]
    _index: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self) -> None:
        els = tuple(self.elements)
        object.__setattr__(self, "elements", els)
        if any(e < 0 for e in els):
            raise ValueError(f"ground labels must be nonnegative: {els}")
        if any(els[i] >= els[i + 1] for i in range(len(els) - 1)):
            raise ValueError(f"ground labels must be strictly increasing: {els}")
        object.__setattr__(self, "_index", {e: i for i, e in enumerate(els)})

    def __len__(self) -> int:
        return len(self.elements)

    @property
    def full_mask(self) -> int:
        return (1 << len(self.elements)) - 1

    def mask_of(self, labels: Iterable[int]) -> int:
        m = 0
        for x in labels:
            try:
                m |= 1 << self._index[x]
            except KeyError:
                raise ValueError(f"{x} is not in the ground set {self.elements}") from None
        return m

    def labels_of(self, mask: int) -> tuple[int, ...]:
        return tuple(e for i, e in enumerate(self.elements) if (mask >> i) & 1)


@dataclass(frozen=True)
class F2Vector:
    ground: GroundSet
    mask: int

    def __post_init__(self) -> None:
        if self.mask & ~self.ground.full_mask:
            raise ValueError("vector has bits outside its ground set")

    @classmethod
    def of(cls, ground: GroundSet, labels: Iterable[int]) -> F2Vector:
        return cls(ground, ground.mask_of(labels))

    @property
    def members(self) -> tuple[int, ...]:
        return self.ground.labels_of(self.mask)

    def __len__(self) -> int:
        return popcount(self.mask)

    def __add__(self, other: F2Vector) -> F2Vector:
        _same_ground(self.ground, other.ground)
        return F2Vector(self.ground, self.mask ^ other.mask)

    def complement(self) -> F2Vector:
        return F2Vector(self.ground, self.mask ^ self.ground.full_mask)

    def to_class(self) -> F2Class:
        return F2Class(self.ground, self.mask)


def canonical_mask(ground: GroundSet, mask: int) -> int:
    # on the empty ground set {empty, full} is the zero space and the quotient is {0}
    return mask ^ ground.full_mask if mask & 1 else mask


@dataclass(frozen=True)
class F2Class:
    """An element of P(X)/{empty, X}; ``mask`` is always the canonical representative."""

    ground: GroundSet
    mask: int

    def __post_init__(self) -> None:
        if self.mask & ~self.ground.full_mask:
            raise ValueError("class has bits outside its ground set")
        object.__setattr__(self, "mask", canonical_mask(self.ground, self.mask))

    @classmethod
    def of(cls, ground: GroundSet, labels: Iterable[int]) -> F2Class:
        return cls(ground, ground.mask_of(labels))

    @property
    def representative(self) -> F2Vector:
        return F2Vector(self.ground, self.mask)

    @property
    def members(self) -> tuple[int, ...]:
        return self.ground.labels_of(self.mask)

    def __add__(self, other: F2Class) -> F2Class:
        _same_ground(self.ground, other.ground)
        return F2Class(self.ground, self.mask ^ other.mask)

    def has_even_lift(self) -> bool:
        return popcount(self.mask) % 2 == 0 or len(self.ground) % 2 == 1

    def even_lift(self) -> F2Vector:
        if popcount(self.mask) % 2 == 0:
            return F2Vector(self.ground, self.mask)
        if len(self.ground) % 2 == 1:
            return F2Vector(self.ground, self.mask ^ self.ground.full_mask)
        raise ValueError(f"class {self.members} has no even lift (|X| even)")


def _same_ground(g1: GroundSet, g2: GroundSet) -> None:
    if g1 != g2:
        raise ValueError(f"ground set mismatch: {g1.elements} vs {g2.elements}")


def pairing(u: F2Vector, v: F2Vector) -> int:
    """|u & v| mod 2."""
    _same_ground(u.ground, v.ground)
    return popcount(u.mask & v.mask) & 1


def quotient_pairing(x: F2Class, y: F2Class) -> int:
    """The symplectic form on Pbar_ev, computed on even lifts."""
    _same_ground(x.ground, y.ground)
    return pairing(x.even_lift(), y.even_lift())


def mask_form(ambient: Ambient, ground: GroundSet, u: int, v: int) -> int:
    """Bilinear form of the ambient space evaluated on two stored masks."""
    if ambient.is_quotient:
        return quotient_pairing(F2Class(ground, u), F2Class(ground, v))
    return popcount(u & v) & 1


# -- raw bitmask elimination -------------------------------------------------


def reduce_basis(rows: Iterable[int]) -> list[int]:
    """Fully reduced echelon basis (distinct leading bits, sorted descending)."""
    basis: list[int] = []
    for r in rows:
        for b in basis:
            r = min(r, r ^ b)
        if r:
            basis = [min(b, b ^ r) for b in basis]
            basis.append(r)
            basis.sort(reverse=True)
    return basis


def rank(rows: Iterable[int]) -> int:
    return len(reduce_basis(rows))


def express(vec: int, gens: Sequence[int]) -> tuple[int, ...] | None:
    """Coefficients c with XOR of c_k * gens[k] == vec, or None if vec is not in the span.

    ``gens`` need not be independent; some solution is returned.
    """
    # pivot table: leading bit -> (row, combination of gens as a bitmask)
    table: dict[int, tuple[int, int]] = {}
    for k, g in enumerate(gens):
        row, comb = g, 1 << k
        while row:
            lead = row.bit_length() - 1
            if lead not in table:
                table[lead] = (row, comb)
                break
            prow, pcomb = table[lead]
            row ^= prow
            comb ^= pcomb
    comb = 0
    while vec:
        lead = vec.bit_length() - 1
        if lead not in table:
            return None
        prow, pcomb = table[lead]
        vec ^= prow
        comb ^= pcomb
    return tuple((comb >> k) & 1 for k in range(len(gens)))


def matrix_rank(rows: Sequence[Sequence[int]]) -> int:
    return rank(sum(bit << j for j, bit in enumerate(row)) for row in rows)


# -- subspaces ---------------------------------------------------------------


@dataclass(frozen=True)
class F2Subspace:
    ambient: Ambient
    ground: GroundSet
    basis: tuple[int, ...]

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __len__(self) -> int:
        return 1 << len(self.basis)

    def _normalize(self, mask: int) -> int:
        if self.ambient.is_quotient:
            return canonical_mask(self.ground, mask)
        return mask

    def contains(self, item: F2Vector | F2Class | int) -> bool:
        mask = item if isinstance(item, int) else item.mask
        mask = self._normalize(mask)
        for b in self.basis:
            mask = min(mask, mask ^ b)
        return mask == 0

    def coordinates(self, item: F2Vector | F2Class | int) -> tuple[int, ...]:
        mask = item if isinstance(item, int) else item.mask
        coords = express(self._normalize(mask), self.basis)
        if coords is None:
            raise ValueError("element is not in the subspace")
        return coords

    def masks(self) -> Iterator[int]:
        for c in range(1 << len(self.basis)):
            m = 0
            for k, b in enumerate(self.basis):
                if (c >> k) & 1:
                    m ^= b
            yield m

    def elements(self) -> Iterator[F2Vector | F2Class]:
        wrap = F2Class if self.ambient.is_quotient else F2Vector
        for m in self.masks():
            yield wrap(self.ground, m)

    def intersection_dim(self, other: F2Subspace) -> int:
        return self.dim + other.dim - rank(list(self.basis) + list(other.basis))


def _ambient_ok(ambient: Ambient, ground: GroundSet, mask: int) -> bool:
    if ambient is Ambient.P_EV:
        return popcount(mask) % 2 == 0
    if ambient is Ambient.PBAR_EV:
        return F2Class(ground, mask).has_even_lift()
    return True


def span(
    generators: Sequence[F2Vector | F2Class],
    ambient: Ambient | None = None,
    ground: GroundSet | None = None,
) -> F2Subspace:
    """Subspace spanned by ``generators`` inside ``ambient``.

    The ambient defaults to P for vectors and Pbar for classes; an empty
    generator list needs an explicit ``ground``.
    """
    kinds = {type(g) for g in generators}
    if len(kinds) > 1:
        raise ValueError("cannot mix vectors and classes in one span")
    grounds = {g.ground for g in generators}
    if ground is not None:
        grounds.add(ground)
    if len(grounds) > 1:
        raise ValueError("generators live on different ground sets")
    if not grounds:
        raise ValueError("span of nothing needs an explicit ground set")
    (gset,) = grounds
    if ambient is None:
        ambient = Ambient.PBAR if kinds == {F2Class} else Ambient.P
    if kinds == {F2Class} and not ambient.is_quotient:
        raise ValueError("classes span a quotient ambient")
    if kinds == {F2Vector} and ambient.is_quotient:
        generators = [g.to_class() for g in generators]
    masks = []
    for g in generators:
        if not _ambient_ok(ambient, gset, g.mask):
            raise ValueError(f"generator {g.members} is not in {ambient.value}")
        masks.append(g.mask)
    return F2Subspace(ambient, gset, tuple(reduce_basis(masks)))


def ambient_space(ambient: Ambient, ground: GroundSet) -> F2Subspace:
    n = len(ground)
    if ambient is Ambient.P:
        gens = [1 << i for i in range(n)]
    elif ambient is Ambient.P_EV:
        gens = [1 | (1 << i) for i in range(1, n)]
    elif ambient is Ambient.PBAR:
        gens = [1 << i for i in range(1, n)]
    else:
        gens = [canonical_mask(ground, 1 | (1 << i)) for i in range(1, n)]
        if n % 2 == 1:
            gens += [1 << i for i in range(1, n)]
    return F2Subspace(ambient, ground, tuple(reduce_basis(gens)))


def gram_matrix(space: F2Subspace) -> list[list[int]]:
    return [[mask_form(space.ambient, space.ground, u, v) for v in space.basis] for u in space.basis]


# -- Lagrangian pairs --------------------------------------------------------


@dataclass(frozen=True)
class LagrangianReport:
    ambient_dim: int
    dim0: int
    dim1: int
    isotropic0: bool
    isotropic1: bool
    trivial_intersection: bool
    duality_invertible: bool

    @property
    def ok(self) -> bool:
        return (
            self.isotropic0
            and self.isotropic1
            and 2 * self.dim0 == self.ambient_dim
            and 2 * self.dim1 == self.ambient_dim
            and self.trivial_intersection
            and self.duality_invertible
        )


def _check_compatible(*spaces: F2Subspace) -> None:
    for s in spaces[1:]:
        _same_ground(spaces[0].ground, s.ground)
        if s.ambient.is_quotient != spaces[0].ambient.is_quotient:
            raise ValueError("subspaces of different ambients")


def _pairing_matrix(L0: F2Subspace, L1: F2Subspace) -> list[list[int]]:
    amb = L0.ambient
    return [[mask_form(amb, L0.ground, x, b) for b in L1.basis] for x in L0.basis]


def is_lagrangian_pair(L0: F2Subspace, L1: F2Subspace, ambient: F2Subspace) -> LagrangianReport:
    _check_compatible(ambient, L0, L1)
    if ambient.dim % 2:
        raise ValueError(f"ambient of odd dimension {ambient.dim} carries no symplectic form")
    for L in (L0, L1):
        if not all(ambient.contains(b) for b in L.basis):
            raise ValueError("subspace is not contained in the ambient space")

    def isotropic(L: F2Subspace) -> bool:
        return all(mask_form(ambient.ambient, L.ground, u, v) == 0 for u in L.basis for v in L.basis)

    pm = _pairing_matrix(L0, L1)
    invertible = L0.dim == L1.dim and matrix_rank(pm) == L0.dim
    return LagrangianReport(
        ambient_dim=ambient.dim,
        dim0=L0.dim,
        dim1=L1.dim,
        isotropic0=isotropic(L0),
        isotropic1=isotropic(L1),
        trivial_intersection=L0.intersection_dim(L1) == 0,
        duality_invertible=invertible,
    )


def dual_identification(L0: F2Subspace, L1: F2Subspace) -> tuple[tuple[int, ...], ...]:
    """Matrix (x_i, b_j) identifying L0 with the dual of L1; raises if degenerate."""
    _check_compatible(L0, L1)
    pm = _pairing_matrix(L0, L1)
    if L0.dim != L1.dim or matrix_rank(pm) != L0.dim:
        raise ValueError("the pairing L0 x L1 -> F2 is degenerate")
    return tuple(tuple(row) for row in pm)
