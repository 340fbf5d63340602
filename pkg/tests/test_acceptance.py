"""End-to-end acceptance criteria, one test per criterion.

Each test records a single PASS/FAIL line, printed together at the end of the run
(and directly when this file is executed as a script).
"""

import json
import time
from contextlib import redirect_stdout
from fractions import Fraction
from io import StringIO
from pathlib import Path

import pytest

from springfam.checks import Status
from springfam.classical import class_of_partition, component_data
from springfam.cli import main
from springfam.exceptional import GROUP_TYPES, consistency, lookup
from springfam.families import MPairAbelian, family_set, m_pairing_abelian
from springfam.groups import (
    CATALOG_NAMES,
    elementary_abelian_coordinates,
    fourier_data,
    fourier_matrix,
    fourier_matrix_checks,
    group_table,
    orthogonality_defects,
)
from springfam.sequences import enumerate_matching, validate_sequence
from springfam.verify import run_scope

try:
    from conftest import ACCEPTANCE_LINES
except ImportError:  # run as a script
    ACCEPTANCE_LINES = {}

FIXTURE = Path(__file__).parent / "fixtures" / "sp4_2_2.json"
MAX_RANK = 6  # Sp_2n for n <= 6, SO_n for n <= 13
SAMPLES = 500
SEED = 0


def record(number: int, title: str, ok: bool, detail: str = "") -> None:
    line = f"{'PASS' if ok else 'FAIL'} criterion {number:2d}: {title}" + (f" ({detail})" if detail else "")
    ACCEPTANCE_LINES[number] = line
    print(line)


def scope_outcome(scope: str, samples: int) -> tuple[bool, str, float]:
    rep = run_scope(scope, MAX_RANK, samples=samples, seed=SEED)
    detail = f"{rep.cases} cases, {rep.failures} failed checks, {rep.seconds:.1f}s"
    if rep.first_failure:
        detail += f", first: {rep.first_failure['case']}: {rep.first_failure['anchor']} {rep.first_failure.get('witness')}"
    return rep.ok, detail, rep.seconds


def test_criterion_01_symplectic_matching_set():
    ok, detail, secs = scope_outcome("lemma12", SAMPLES)
    ok = ok and secs <= 60
    record(1, "symplectic matching set is the swap family of size 2^M", ok, detail)
    assert ok, detail


def test_criterion_02_orthogonal_matching_set():
    # set equality holds throughout; the count 2^floor(mu/2) does not for odd mu
    ok, detail, secs = scope_outcome("lemma22", SAMPLES)
    ok = ok and secs <= 60
    record(2, "orthogonal matching set is the swap family of size 2^floor(mu/2)", ok, detail)
    assert ok, detail


def test_criterion_03_T1_and_minus_bijection():
    ok, detail, _ = scope_outcome("bijections", SAMPLES)
    record(3, "|T_1| and the minus bijection T_1 -> frak T_1", ok, detail)
    assert ok, detail


def test_criterion_04_lagrangian_pair():
    ok, detail, _ = scope_outcome("lagrangian", SAMPLES)
    record(4, "opposed Lagrangians with invertible dual identification", ok, detail)
    assert ok, detail


def test_criterion_05_pairing_on_family():
    ok, detail, secs = scope_outcome("theorem04", 0)
    ok = ok and secs <= 120
    record(5, "X_F -> M(Abar) bijective and pairings coincide", ok, detail)
    assert ok, detail


def test_criterion_06_unit_slice():
    ok, detail, _ = scope_outcome("corollary05", 0)
    record(6, "T_1 is exactly the (1, *) slice", ok, detail)
    assert ok, detail


def test_criterion_07_sp4_worked_fixture():
    problems = []
    buf = StringIO()
    with redirect_stdout(buf):
        code = main(["class", "--group", "sp", "--partition", "2,2"])
    out = buf.getvalue()
    if code != 0:
        problems.append(f"exit {code}")
    if out != FIXTURE.read_text(encoding="utf-8"):
        problems.append("output differs from the checked-in fixture")
    res = json.loads(out)["results"]
    expect = {
        "a": [0, 1, 2],
        "shifted": [0, 2, 3],
        "matching_set": [[0, 1, 2], [0, 2, 1]],
    }
    for key, want in expect.items():
        if res[key] != want:
            problems.append(f"{key}={res[key]}")
    if res["T"]["T1"] != [[[0, 2], [3]], [[0, 3], [2]]]:
        problems.append(f"T1={res['T']['T1']}")
    if len(res["frak"]["T_prime"]) != 3:
        problems.append("frak T' size")
    if len(res["X_F"]["elements"]) != 4 or res["Abar"]["structure"] != "Z/2":
        problems.append("X_F or Abar")

    # [{0,1}] = [{2}] and [{1,2}] on J = {0,1,2}
    a = validate_sequence([0, 1, 2], "C")
    if enumerate_matching(a) != {(0, 1, 2), (0, 2, 1)}:
        problems.append("matching set recomputed")
    row = next(p for p in res["pairing"] if p["x"] == [2] and p["y"] == [1, 2])
    g_sigma = MPairAbelian((1,), (0,))
    one_eps = MPairAbelian((0,), (1,))
    if row["m_pairing"] != "-1/2" or m_pairing_abelian(g_sigma, one_eps) != Fraction(-1, 2):
        problems.append(f"pairing row {row}")
    ident = {tuple(r["x"]): (r["g"], r["chi"]) for r in res["identification"]}
    if ident[(2,)] != ([1], [0]) or ident[(1, 2)] != ([0], [1]):
        problems.append(f"identification {ident}")
    ok = not problems
    record(7, "Sp4 (2,2) worked example, byte-exact fixture", ok, "; ".join(problems))
    assert ok, problems


def test_criterion_08_fourier_properties():
    t0 = time.perf_counter()
    problems = []
    real = {"S2", "S3", "S4", "S5", "Z2", "(Z/2)^2", "(Z/2)^3", "D8"}
    for name in ["S2", "S3", "S4", "S5", "Z2", "(Z/2)^2", "(Z/2)^3", "D8"]:
        r = fourier_matrix_checks(name)
        if not (r.unitary and r.hermitian and r.square_is_permutation):
            problems.append(f"{name}: {r}")
        if name in real and not (r.real_symmetric and r.square_is_identity):
            problems.append(f"{name}: not a real symmetric involution")
    sizes = {n: len(fourier_data(n).pairs) for n in ("S3", "S4", "S5")}
    if sizes != {"S3": 8, "S4": 21, "S5": 39}:
        problems.append(f"|M| {sizes}")
    for name in ("Z2", "(Z/2)^2", "(Z/2)^3"):
        fd = fourier_data(name)
        coords, chars = elementary_abelian_coordinates(fd.group)
        imgs = [MPairAbelian(coords[fd.centralizers[p.class_index].rep], chars[p.irrep_index]) for p in fd.pairs]
        S = fourier_matrix(name)
        bad = sum(1 for i, p in enumerate(imgs) for j, q in enumerate(imgs) if S[i][j] != m_pairing_abelian(p, q))
        if bad:
            problems.append(f"{name}: {bad} entries differ from the abelian pairing")
    secs = time.perf_counter() - t0
    if secs > 30:
        problems.append(f"{secs:.1f}s")
    ok = not problems
    record(8, "Fourier matrices unitary, hermitian, S^2 permutation; |M| sizes; abelian case", ok,
           "; ".join(problems) or f"{secs:.1f}s")
    assert ok, problems


def test_criterion_09_orthogonality():
    bad = {name: orthogonality_defects(group_table(name)) for name in CATALOG_NAMES}
    bad = {k: v for k, v in bad.items() if v}
    record(9, "character tables orthogonal", not bad, str(bad) if bad else f"{len(CATALOG_NAMES)} tables")
    assert not bad


def test_criterion_10_exceptional_tables():
    problems = []
    scanned = {}
    for t in GROUP_TYPES:
        rep = consistency(t)
        scanned[t] = rep.records_scanned
        problems += [c.anchor for c in rep.checks if c.failed]
    r = lookup("E8", "2A_4")
    if (r.a_group, r.abar_group) != ("S5", "S5") or len(r.in_family) != 6 or str(r.members[-1]) != "70_32":
        problems.append("E8 2A_4")
    r = lookup("E8", "D_8(a_3)")
    if (r.a_group, r.abar_group) != ("S3", "S2") or [str(m) for m in r.members] != ["2240_10", "[175_12]", "840_13"]:
        problems.append("E8 D_8(a_3)")
    if lookup("E7", "A_3A_2").abar_group != "1":
        problems.append("E7 A_3A_2")
    r = lookup("F4", "F_4(a_3)")
    if (r.a_group, r.abar_group) != ("S4", "S4"):
        problems.append("F4 F_4(a_3)")
    r = lookup("G2", "G_2(a_1)")
    if (r.a_group, r.abar_group) != ("S3", "S3"):
        problems.append("G2 G_2(a_1)")
    ok = not problems
    record(10, "exceptional records consistent, spot records verbatim", ok,
           "; ".join(problems) or f"records scanned {scanned}")
    assert ok, problems


def test_criterion_11_ambiguities_are_reported():
    problems = []
    # regular symplectic class (4): the interval {2} lies in no block
    comp = component_data(class_of_partition([4], "sp").seq)
    rep = [c for c in comp.structure.checks() if c.status is Status.REPORTED]
    if not rep or "2" not in json.dumps(rep[0].witness):
        problems.append(f"Sp4 (4): {rep}")
    if any(c.failed for c in comp.structure.checks()):
        problems.append("Sp4 (4) fails instead of reporting")
    buf = StringIO()
    with redirect_stdout(buf):
        code = main(["class", "--group", "sp", "--partition", "4"])
    report = json.loads(buf.getvalue())
    if code != 0 or report["results"]["unassigned_intervals"] != [[2]]:
        problems.append(f"cli exit {code}")
    # orthogonal with |J| even: X_F taken as the even part
    fs = family_set(class_of_partition([3, 1], "so").seq)
    if not any(c.status is Status.REPORTED for c in fs.checks):
        problems.append("SO4 (3,1) does not report the Pbar/Pbar_ev choice")
    ok = not problems
    record(11, "documented ambiguities surface as 'reported'", ok, "; ".join(problems))
    assert ok, problems


if __name__ == "__main__":
    import sys

    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
