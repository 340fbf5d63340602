"""Batch verification over class corpora and seeded random sequences."""

from __future__ import annotations

import random
import time
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator

from .checks import Check, Status
from .classical import ClassSequence, ComponentData, Kind, component_data, special_classes
from .f2 import dual_identification
from .families import FamilySet, canonical_identification, family_set, verify_corollary_05, verify_theorem_04
from .sequences import Flavor, InterlacingSequence, matching_checks, random_sequence
from .symbols import Frak, minus_bijection

SCOPES = ("lemma12", "lemma22", "bijections", "lagrangian", "theorem04", "corollary05")

# random corpus bounds: (max N, max entry)
RANDOM_BOUNDS = {Flavor.C: (8, 8), Flavor.BD: (9, 8)}


@dataclass(frozen=True)
class Case:
    name: str
    seq: InterlacingSequence
    cls: ClassSequence | None = None


def class_cases(flavor: Flavor | None, max_rank: int) -> Iterator[Case]:
    """Special classes of Sp_2n (n <= max_rank) and SO_n (n <= 2 max_rank + 1)."""
    if flavor in (None, Flavor.C):
        for n in range(1, max_rank + 1):
            for cs in special_classes(Kind.SYMPLECTIC, n):
                yield Case(f"{cs.jt.group_name} {list(cs.jt.parts)}", cs.seq, cs)
    if flavor in (None, Flavor.BD):
        for n in range(1, 2 * max_rank + 2):
            for cs in special_classes(Kind.ORTHOGONAL, n):
                yield Case(f"{cs.jt.group_name} {list(cs.jt.parts)}", cs.seq, cs)


def random_cases(flavor: Flavor | None, samples: int, seed: int) -> Iterator[Case]:
    flavors = [flavor] if flavor else [Flavor.C, Flavor.BD]
    for f in flavors:
        rng = random.Random(f"{seed}:{f.value}")
        max_N, max_entry = RANDOM_BOUNDS[f]
        for k in range(samples):
            a = random_sequence(rng, f, max_N, max_entry)
            yield Case(f"random {f.value} #{k} {list(a.entries)}", a)


def lagrangian_checks(a: InterlacingSequence) -> tuple[Check, ...]:
    fsets = Frak(a).enumerate()
    L0, L1 = fsets.L
    try:
        dual_identification(L0, L1)
        invertible, why = True, None
    except ValueError as e:
        invertible, why = False, str(e)
    return fsets.checks + (Check.of("dual identification of the Lagrangian pair is invertible", invertible, why),)


def class_pipeline_checks(case: Case) -> tuple[tuple[Check, ...], ComponentData, FamilySet]:
    a = case.seq
    out: list[Check] = []
    if case.cls is not None:
        out += case.cls.checks
    comp = component_data(a)
    out += comp.structure.checks()
    out += comp.checks
    fs = family_set(a)
    out += fs.checks
    return tuple(out), comp, fs


def theorem04_checks(case: Case) -> tuple[Check, ...]:
    pipeline, comp, fs = class_pipeline_checks(case)
    return pipeline + verify_theorem_04(case.seq, canonical_identification(fs, comp)).checks


def corollary05_checks(case: Case) -> tuple[Check, ...]:
    fs = family_set(case.seq)
    return verify_corollary_05(case.seq, canonical_identification(fs)).checks


SCOPE_CHECKS: dict[str, tuple[Flavor | None, Callable[[Case], Iterable[Check]]]] = {
    "lemma12": (Flavor.C, lambda c: matching_checks(c.seq)),
    "lemma22": (Flavor.BD, lambda c: matching_checks(c.seq)),
    "bijections": (None, lambda c: minus_bijection(c.seq).checks),
    "lagrangian": (None, lambda c: lagrangian_checks(c.seq)),
    "theorem04": (None, theorem04_checks),
    "corollary05": (None, corollary05_checks),
}


@dataclass
class BatchReport:
    scope: str
    cases: int = 0
    tally: dict[str, dict[str, int]] = field(default_factory=lambda: defaultdict(lambda: {s.value: 0 for s in Status}))
    first_failure: dict | None = None
    seconds: float = 0.0

    @property
    def failures(self) -> int:
        return sum(t[Status.FAIL.value] for t in self.tally.values())

    @property
    def ok(self) -> bool:
        return self.failures == 0

    def add(self, case: Case, checks: Iterable[Check]) -> None:
        self.cases += 1
        for c in checks:
            self.tally[c.anchor][c.status.value] += 1
            if c.failed and self.first_failure is None:
                self.first_failure = {"case": case.name, **c.to_json()}

    def to_json(self) -> dict:
        return {
            "scope": self.scope,
            "cases": self.cases,
            "status": Status.PASS.value if self.ok else Status.FAIL.value,
            "checks": [{"anchor": k, **v} for k, v in sorted(self.tally.items())],
            "first_failure": self.first_failure,
        }


def run_scope(scope: str, max_rank: int, samples: int = 0, seed: int = 0,
              include_classes: bool = True) -> BatchReport:
    if scope not in SCOPE_CHECKS:
        raise KeyError(f"unknown scope {scope!r}; choose from {', '.join(SCOPES)} or all")
    flavor, fn = SCOPE_CHECKS[scope]
    report = BatchReport(scope)
    t0 = time.perf_counter()
    cases: list[Iterable[Case]] = []
    if include_classes:
        cases.append(class_cases(flavor, max_rank))
    if samples:
        cases.append(random_cases(flavor, samples, seed))
    for group in cases:
        for case in group:
            report.add(case, fn(case))
    report.seconds = time.perf_counter() - t0
    return report
