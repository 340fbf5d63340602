import itertools
from fractions import Fraction

import pytest

from springfam.cyclotomic import Cyclotomic
from springfam.families import MPairAbelian, m_pairing_abelian
from springfam.groups import (
    CATALOG_NAMES,
    REAL_SUBCATALOG,
    MPair,
    canonical_name,
    centralizer_table,
    compose,
    cycle,
    cycle_type,
    elementary_abelian_coordinates,
    fourier_data,
    fourier_matrix,
    fourier_matrix_checks,
    fourier_pairing,
    group_table,
    orthogonality_defects,
    pairing_from_reps,
    transported,
)

PARTITION_OF_LABEL = {
    "S2": {"1": (2,), "ε": (1, 1)},
    "S3": {"1": (3,), "r": (2, 1), "ε": (1, 1, 1)},
    "S4": {"1": (4,), "λ¹": (3, 1), "λ²": (2, 1, 1), "σ": (2, 2), "λ³": (1, 1, 1, 1)},
    "S5": {"1": (5,), "ν": (3, 2), "λ¹": (4, 1), "ν′": (2, 2, 1), "λ²": (3, 1, 1), "λ³": (2, 1, 1, 1),
           "λ⁴": (1, 1, 1, 1, 1)},
}


def mn_character(shape, rho):
    """Murnaghan-Nakayama rule on beta-sets: strip rim hooks of the lengths in rho."""
    if not rho:
        return 1
    k, rest = rho[0], rho[1:]
    beta = {p + len(shape) - 1 - i for i, p in enumerate(shape)}
    total = 0
    for b in beta:
        if b - k >= 0 and b - k not in beta:
            sign = (-1) ** sum(1 for c in beta if b - k < c < b)
            nb = sorted((beta - {b}) | {b - k}, reverse=True)
            new = tuple(x for x in (v - (len(nb) - 1 - i) for i, v in enumerate(nb)) if x)
            total += sign * mn_character(new, rest)
    return total


def commuting_pair_orbits(G):
    # |M(G)| = number of G-orbits on commuting pairs = #commuting triples / |G|
    cent = {x: set(G.centralizer(x)) for x in G.elements}
    triples = sum(len(cent[x] & cent[y]) for x in G.elements for y in cent[x])
    assert triples % G.order == 0
    return triples // G.order


@pytest.mark.parametrize("name", sorted(PARTITION_OF_LABEL))
def test_symmetric_tables_match_murnaghan_nakayama(name):
    G = group_table(name)
    for ir in G.irreps:
        shape = PARTITION_OF_LABEL[name][ir.label]
        for k, c in enumerate(G.classes):
            assert ir.values[k] == mn_character(shape, cycle_type(c[0])), (ir.label, cycle_type(c[0]))


def test_mn_oracle_sanity():
    assert mn_character((2, 1), (1, 1, 1)) == 2
    assert mn_character((3, 2), (5,)) == 0
    assert mn_character((3, 1, 1), (5,)) == 1
    assert mn_character((2, 2, 1), (5,)) == 0


@pytest.mark.parametrize("name", CATALOG_NAMES)
def test_catalog_tables_are_orthogonal(name):
    assert orthogonality_defects(group_table(name)) == []


@pytest.mark.parametrize("name,size", [("trivial", 1), ("S2", 4), ("S3", 8), ("S4", 21), ("S5", 39), ("C3", 9),
                                       ("D8", 22), ("(Z/2)^2", 16)])
def test_m_set_size_matches_commuting_pairs(name, size):
    assert len(fourier_data(name).pairs) == size == commuting_pair_orbits(group_table(name))


def test_aliases_and_unknown_groups():
    assert canonical_name("Z/2") == "Z2"
    assert canonical_name("S2×S3") == "S2xS3"
    with pytest.raises(KeyError):
        canonical_name("Q8")


def test_centralizer_resolution_in_s5():
    G = group_table("S5")
    assert centralizer_table(G, cycle([0, 1, 2, 3], 5)).catalog == "C4"
    assert centralizer_table(G, cycle([0, 1], 5)).catalog == "S2xS3"
    assert centralizer_table(G, compose(cycle([0, 1], 5), cycle([2, 3], 5))).catalog == "D8"
    assert [cz.catalog for cz in fourier_data("S4").centralizers] == ["S4", "(Z/2)^2", "C3", "D8", "C4"]


@pytest.mark.parametrize("name", ["S3", "S4", "D8"])
def test_pairing_is_independent_of_representatives(name):
    fd = fourier_data(name)
    G = fd.group
    for zx, zy in itertools.product(fd.centralizers, repeat=2):
        base = pairing_from_reps(G, zx, zy)
        for h in G.elements[:: max(1, G.order // 6)]:
            assert pairing_from_reps(G, transported(zx, h), zy) == base
            assert pairing_from_reps(G, zx, transported(zy, h)) == base


@pytest.mark.parametrize("name", ["S3", "S4", "S5", "D8", "C4"])
def test_row_of_the_unit(name):
    fd = fourier_data(name)
    unit = MPair(0, 0)
    for p in fd.pairs:
        cz = fd.centralizers[p.class_index]
        want = Fraction(cz.irreps[p.irrep_index].degree, cz.order)
        assert fourier_pairing(unit, p, name) == want


@pytest.mark.parametrize("k", range(1, 5))
def test_elementary_abelian_matches_abelian_pairing(k):
    name = "Z2" if k == 1 else f"(Z/2)^{k}"
    fd = fourier_data(name)
    coords, chis = elementary_abelian_coordinates(fd.group)
    S = fourier_matrix(name)

    def ab(p):
        return MPairAbelian(coords[fd.centralizers[p.class_index].rep], chis[p.irrep_index])

    for i, p in enumerate(fd.pairs):
        for j, q in enumerate(fd.pairs):
            assert S[i][j] == m_pairing_abelian(ab(p), ab(q))


@pytest.mark.parametrize("name", CATALOG_NAMES)
def test_fourier_matrix_properties(name):
    rep = fourier_matrix_checks(name)
    assert rep.unitary and rep.hermitian and rep.square_is_permutation
    if name in REAL_SUBCATALOG:
        assert rep.real_symmetric and rep.square_is_identity


def test_cyclic_fourier_matrix_is_not_real():
    assert not fourier_matrix_checks("C3").real_symmetric


def test_s3_matrix_entries():
    S = fourier_matrix("S3")
    assert S[0][:3] == (Fraction(1, 6), Fraction(1, 3), Fraction(1, 6))
    assert all(isinstance(v, Cyclotomic) for row in S for v in row)


def test_coordinates_need_exponent_two():
    with pytest.raises(ValueError):
        elementary_abelian_coordinates(group_table("C4"))
