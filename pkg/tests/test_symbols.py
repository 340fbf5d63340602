import itertools
import random
from collections import Counter

import pytest
from hypothesis import given, settings, strategies as st

from springfam.checks import VerificationError, all_passed
from springfam.sequences import Flavor, random_sequence, shifted_entries, swap, validate_sequence
from springfam.symbols import (
    Frak,
    SymbolPair,
    enumerate_T,
    interval_structure,
    minus,
    minus_bijection,
    symbols_of,
    t1_bijection,
)


@st.composite
def sequences(draw, flavor, max_N=8, max_entry=8):
    rng = random.Random(draw(st.integers(0, 2**32 - 1)))
    return random_sequence(rng, flavor, max_N, max_entry)


def naive_T(h, flavor):
    """Split the multiset h into two consecutive-free sets in every possible way."""
    out = set()
    values = sorted(h)
    for choice in itertools.product((0, 1), repeat=len(values)):
        A = [v for v, c in zip(values, choice) if c == 0]
        B = [v for v, c in zip(values, choice) if c == 1]
        if len(set(A)) != len(A) or len(set(B)) != len(B):
            continue
        if any(x + 1 in A for x in A) or any(x + 1 in B for x in B):
            continue
        if flavor is Flavor.C and 0 in B:
            continue
        out.add(SymbolPair(frozenset(A), frozenset(B), ordered=flavor is Flavor.C))
    return out


def test_symbol_pair_unordered_canonical_form():
    p = SymbolPair(frozenset({3}), frozenset({0, 2}), ordered=False)
    assert p.to_json() == [[0, 2], [3]]
    assert p == SymbolPair(frozenset({0, 2}), frozenset({3}), ordered=False)
    assert repr(p) == "({0,2},{3})"


def test_minus_on_sp4():
    assert minus(SymbolPair(frozenset({0, 2}), frozenset({3})), "C").to_json() == [[0, 1], [2]]
    assert minus(SymbolPair(frozenset({0, 3}), frozenset({2})), "C").to_json() == [[0, 2], [1]]


def test_minus_rejects_consecutive():
    with pytest.raises(ValueError):
        minus(SymbolPair(frozenset({0, 1}), frozenset()), "BD")


def test_sp4_interval_structure():
    st_ = interval_structure(validate_sequence([0, 1, 2], "C"))
    assert st_.shifted == (0, 2, 3)
    assert st_.intervals == ((2, 3),)
    assert st_.H == (0,)
    assert st_.block(1).intervals == ((2, 3),)
    assert not st_.unassigned


def test_regular_symplectic_class_leaves_an_unassigned_interval():
    # Sp4 regular class (4): a = (2), M = 0
    st_ = interval_structure(validate_sequence([2], "C"))
    assert st_.intervals == ((2,),)
    assert st_.unassigned == ((2,),)
    statuses = {c.anchor: c.status.value for c in st_.checks()}
    assert statuses["intervals partitioned by the blocks"] == "reported"


def test_sp4_T_sets():
    ts = enumerate_T(validate_sequence([0, 1, 2], "C"))
    assert {p.to_json().__repr__() for p in ts.T1} == {"[[0, 2], [3]]", "[[0, 3], [2]]"}
    assert all_passed(ts.checks)


@given(sequences(Flavor.C))
@settings(max_examples=150)
def test_T_matches_naive_split_C(a):
    ts = enumerate_T(a)
    assert ts.T == naive_T(shifted_entries(a.entries, a.flavor), a.flavor)


@given(sequences(Flavor.BD, 9))
@settings(max_examples=150)
def test_T_matches_naive_split_BD(a):
    ts = enumerate_T(a)
    assert ts.T == naive_T(shifted_entries(a.entries, a.flavor), a.flavor)


@given(sequences(Flavor.C))
def test_T1_is_swap_image_C(a):
    ts = enumerate_T(a)
    assert len(ts.T1) == 2**a.M
    assert all_passed(ts.checks)


@given(sequences(Flavor.BD, 9))
def test_T1_is_swap_image_BD(a):
    ts = enumerate_T(a)
    assert len(ts.T1) == 2 ** (a.mu // 2)
    assert all_passed(ts.checks)


@given(sequences(Flavor.C))
def test_minus_of_T1_partitions_a(a):
    for p in enumerate_T(a).T1:
        assert minus(p, a.flavor).multiset == Counter(a.entries)


@given(st.sampled_from([Flavor.C, Flavor.BD]).flatmap(lambda f: sequences(f, 8)))
@settings(max_examples=150)
def test_minus_bijection_and_frak_checks(a):
    mb = minus_bijection(a)
    assert all_passed(mb.checks), [c for c in mb.checks if c.failed]
    fs = Frak(a).enumerate()
    assert all_passed(fs.checks), [c for c in fs.checks if c.failed]
    assert len(fs.T_L[0]) == len(fs.T_L[1]) == 2**a.bar_rank


def test_frak_pair_of_swap_is_swap_chains():
    a = validate_sequence([0, 1, 1, 2, 3], "C")
    fr = Frak(a)
    for X in symbols_of(a).admissible_subsets():
        b = swap(a, X)
        assert fr.pair(fr.frak_X(X)) == SymbolPair(frozenset(b[0::2]), frozenset(b[1::2]), ordered=False)


def test_frak_complement_invariance():
    a = validate_sequence([0, 1, 2, 3, 4], "C")
    fr = Frak(a)
    full = fr.ground.full_mask
    for m in range(full + 1):
        assert fr.pair_of_mask(m) == fr.pair_of_mask(m ^ full)


def test_t1_bijection_returns_a_map():
    mapping = t1_bijection(validate_sequence([0, 1, 2], "C"))
    assert {repr(k): repr(v) for k, v in mapping.items()} == {
        "({0,2},{3})": "({0,1},{2})",
        "({0,3},{2})": "({0,2},{1})",
    }


def test_alpha_of_inverts_symbol():
    a = validate_sequence([0, 1, 2, 3, 4], "BD")
    sym = symbols_of(a)
    for alpha in sym.all_alphas():
        p = sym.symbol(alpha)
        assert sym.symbol(sym.alpha_of(p)) == p
    with pytest.raises(ValueError):
        sym.alpha_of(SymbolPair(frozenset({100}), frozenset()))


def test_verification_error_names_the_claim():
    from springfam.checks import Check

    err = VerificationError(Check.of("some claim", False, {"x": 1}))
    assert "some claim" in str(err)
