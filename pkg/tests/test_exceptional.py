import pytest
from hypothesis import given, strategies as st

from springfam.checks import all_passed
from springfam.exceptional import (
    GROUP_TYPES,
    ExceptionalRecord,
    Member,
    attach_irreps,
    consistency,
    factoring_irreps,
    lookup,
    parse,
    parse_line,
    records,
    serialize,
    serialize_record,
    table_text,
    type_a_record,
)
from springfam.groups import fourier_data


def labels(r):
    return [str(m) for m in r.members]


def test_record_counts():
    counts = {t: len(records(t)) for t in GROUP_TYPES}
    assert counts == {"E8": 45, "E7": 35, "E6": 17, "F4": 11, "G2": 3}
    assert len(records()) == 111


@pytest.mark.parametrize("gtype,cls,members,A,Abar", [
    ("E8", "E_8", ["1_0"], "1", "1"),
    ("E8", "D_8(a_3)", ["2240_10", "[175_12]", "840_13"], "S3", "S2"),
    ("E8", "2A_4", ["4480_16", "4536_18", "5670_18", "1400_20", "1680_22", "70_32"], "S5", "S5"),
    ("E8", "D_4(a_1)A_2", ["2240_28", "840_31"], "S2", "S2"),
    ("E8", "∅", ["1_120"], "1", "1"),
    ("E7", "(A_5A_1)'", ["405_8", "189_10"], "S2", "S2"),
    ("E7", "A_3A_2", ["378_14", "[84_15]"], "S2", "1"),
    ("E6", "D_4(a_1)", ["80_7", "90_8", "20_10"], "S3", "S3"),
    ("E6", "A_2A_1", ["64_13"], "1", "1"),
    ("F4", "F_4(a_3)", ["12_1", "9_3", "6_2", "1_3"], "S4", "S4"),
    ("F4", "A_2", ["8_4", "[1_2]"], "S2", "1"),
    ("F4", "A_1Ã_1", ["9_4"], "1", "1"),
    ("G2", "G_2(a_1)", ["reflection", "long-nontrivial-1dim"], "S3", "S3"),
    ("G2", "∅", ["sign"], "1", "1"),
])
def test_spot_records(gtype, cls, members, A, Abar):
    r = lookup(gtype, cls)
    assert labels(r) == members
    assert (r.a_group, r.abar_group) == (A, Abar)


def test_b_values():
    assert [m.b for m in lookup("E8", "2A_4").members] == [16, 18, 18, 20, 22, 32]
    assert [m.b for m in lookup("F4", "F_4(a_3)").members] == [4, 6, 6, 12]
    assert [m.b for m in lookup("G2", "G_2(a_1)").members] == [1, 3]


def test_lookup_aliases_and_errors():
    assert lookup("e8", "empty") == lookup("E8", "∅") == lookup("E8", "0")
    with pytest.raises(KeyError):
        lookup("E8", "Z_9")
    with pytest.raises(KeyError):
        records("H4")


@pytest.mark.parametrize("gtype", GROUP_TYPES)
def test_consistency(gtype):
    rep = consistency(gtype)
    assert rep.records_scanned == len(records(gtype))
    assert all_passed(rep.checks), [c for c in rep.checks if c.failed]


def test_text_round_trip():
    body = "".join(ln + "\n" for ln in table_text().splitlines() if ln and not ln.startswith("#"))
    assert serialize(parse(table_text())) == body


member_labels = st.text(st.sampled_from("0123456789_ÃAa'-xyz"), min_size=1, max_size=8)


@given(st.lists(st.builds(Member, member_labels, st.integers(0, 200), st.booleans()), min_size=1, max_size=6),
       st.sampled_from(["1", "S2", "S3", "S4", "S5"]), st.sampled_from(["1", "S2", "S3"]))
def test_record_round_trip(members, a, abar):
    r = ExceptionalRecord("E7", "X_1(a_2)''", tuple(members), a, abar)
    assert parse_line(serialize_record(r)) == r


def test_malformed_lines_are_rejected():
    with pytest.raises(ValueError):
        parse_line("E8|E_8|1_0(0,1)|1")
    with pytest.raises(ValueError):
        parse_line("E8|E_8|1_0(0,1)x|1|1")


def test_attach_irreps():
    r = lookup("E8", "D_8(a_3)")
    assert [(m.label, lab) for m, lab in attach_irreps(r)] == [("2240_10", "1"), ("840_13", "ε")]
    r = lookup("E8", "2A_4")
    assert [lab for _, lab in attach_irreps(r)] == ["1", "ν", "λ¹", "ν′", "λ²", "λ³"]
    assert [lab for _, lab in attach_irreps(lookup("G2", "G_2(a_1)"))] == ["1", "r"]
    assert [lab for _, lab in attach_irreps(lookup("F4", "F_4(a_3)"))] == ["1", "λ¹", "λ²", "σ"]


def test_attach_irreps_rejects_overflow():
    r = ExceptionalRecord("E8", "X", tuple(Member(str(k), k, True) for k in range(3)), "S2", "S2")
    with pytest.raises(ValueError):
        attach_irreps(r)


def test_factoring_irreps():
    assert factoring_irreps("S3", "S2") == {"1", "ε"}
    assert factoring_irreps("S4", "S2") == {"1", "λ³"}
    assert factoring_irreps("S4", "S4") == {"1", "λ¹", "λ²", "σ", "λ³"}
    assert factoring_irreps("S2", "1") == {"1"}
    assert factoring_irreps("S5", "S3") is None


@pytest.mark.parametrize("tag,size", [("1", 1), ("S2", 4), ("S3", 8), ("S4", 21), ("S5", 39)])
def test_family_sizes(tag, size):
    assert len(fourier_data("trivial" if tag == "1" else tag).pairs) == size


@pytest.mark.parametrize("n,partition,b", [(3, (3,), 0), (3, (2, 1), 1), (3, (1, 1, 1), 3), (5, (2, 2, 1), 4)])
def test_type_a(n, partition, b):
    r = type_a_record(n, partition)
    assert r.a_group == r.abar_group == "1"
    assert len(r.members) == 1 and r.members[0].b == b


def test_type_a_rejects_bad_partition():
    with pytest.raises(ValueError):
        type_a_record(4, (2, 1))
