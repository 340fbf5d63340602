"""Springer data of special unipotent classes in exceptional groups, as tables.

Each record lists Irr_C W in the conventional order, marks members outside
Irr*_C W, and tags A(u) and Abar(u).  In-family members are matched, in order,
with the irreducible representations of A(u) = S_n listed in ``ORDERINGS``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from importlib import resources
from math import factorial

from .checks import Check
from .groups import GroupTable, group_table

GROUP_TYPES = ("E8", "E7", "E6", "F4", "G2")

# irreducible characters of S_n in listing order (labels as in the catalog tables)
ORDERINGS: dict[str, tuple[str, ...]] = {
    "1": ("1",),
    "S2": ("1", "ε"),
    "S3": ("1", "r", "ε"),
    "S4": ("1", "λ¹", "λ²", "σ"),
    "S5": ("1", "ν", "λ¹", "ν′", "λ²", "λ³"),
}
G2_ORDERINGS = {**ORDERINGS, "S3": ("1", "r")}

CLASS_ALIASES = {"empty": "∅", "0": "∅", "1": "∅"}


@dataclass(frozen=True)
class Member:
    label: str
    b: int
    in_family: bool

    def __str__(self) -> str:
        return self.label if self.in_family else f"[{self.label}]"


@dataclass(frozen=True)
class ExceptionalRecord:
    group_type: str
    class_name: str
    members: tuple[Member, ...]
    a_group: str
    abar_group: str

    @property
    def in_family(self) -> tuple[Member, ...]:
        return tuple(m for m in self.members if m.in_family)

    def ordering(self) -> tuple[str, ...]:
        table = G2_ORDERINGS if self.group_type == "G2" else ORDERINGS
        return table[self.a_group]

    def to_json(self) -> dict:
        return {
            "type": self.group_type,
            "class": self.class_name,
            "members": [{"label": m.label, "b": m.b, "in_family": m.in_family} for m in self.members],
            "A": self.a_group,
            "Abar": self.abar_group,
        }


_MEMBER = re.compile(r"([^,()]+)\((\d+),([01])\)")


def parse_line(line: str) -> ExceptionalRecord:
    fields = line.rstrip("\n").split("|")
    if len(fields) != 5:
        raise ValueError(f"expected 5 fields: {line!r}")
    gtype, cname, members, a, abar = fields
    parsed = []
    pos = 0
    for m in _MEMBER.finditer(members):
        if m.start() != pos:
            raise ValueError(f"bad member list: {members!r}")
        parsed.append(Member(m.group(1), int(m.group(2)), m.group(3) == "1"))
        pos = m.end() + 1
    if pos - 1 != len(members):
        raise ValueError(f"bad member list: {members!r}")
    return ExceptionalRecord(gtype, cname, tuple(parsed), a, abar)


def serialize_record(r: ExceptionalRecord) -> str:
    members = ",".join(f"{m.label}({m.b},{int(m.in_family)})" for m in r.members)
    return "|".join((r.group_type, r.class_name, members, r.a_group, r.abar_group))


def parse(text: str) -> list[ExceptionalRecord]:
    return [parse_line(ln) for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]


def serialize(records: list[ExceptionalRecord]) -> str:
    return "".join(serialize_record(r) + "\n" for r in records)


def table_text() -> str:
    return resources.files("springfam").joinpath("data/exceptional_tables.txt").read_text(encoding="utf-8")


_RECORDS: list[ExceptionalRecord] | None = None


def records(group_type: str | None = None) -> list[ExceptionalRecord]:
    global _RECORDS
    if _RECORDS is None:
        _RECORDS = parse(table_text())
    if group_type is None:
        return list(_RECORDS)
    group_type = group_type.upper()
    if group_type not in GROUP_TYPES:
        raise KeyError(f"unknown group type {group_type!r}")
    return [r for r in _RECORDS if r.group_type == group_type]


def lookup(group_type: str, class_name: str) -> ExceptionalRecord:
    class_name = CLASS_ALIASES.get(class_name, class_name)
    for r in records(group_type):
        if r.class_name == class_name:
            return r
    raise KeyError(f"no special class {class_name!r} in {group_type}")


def attach_irreps(r: ExceptionalRecord) -> list[tuple[Member, str]]:
    """In-family members paired with irreps of Abar, through their position in the A ordering."""
    order = r.ordering()
    if len(r.members) > len(order):
        raise ValueError(f"{r.class_name}: {len(r.members)} members but only {len(order)} listed irreps of {r.a_group}")
    return [(m, label) for m, label in zip(r.members, order) if m.in_family]


# -- type A -------------------------------------------------------------------


def type_a_record(n: int, partition: tuple[int, ...]) -> ExceptionalRecord:
    """GL_n: every class is special, A = Abar = 1 and the single member is the Specht module of the partition."""
    parts = tuple(sorted((p for p in partition if p), reverse=True))
    if sum(parts) != n:
        raise ValueError(f"{partition} is not a partition of {n}")
    label = "(" + ",".join(map(str, parts)) + ")"
    b = sum(i * p for i, p in enumerate(parts))
    return ExceptionalRecord(f"A_{n - 1}", label, (Member(label, b, True),), "1", "1")


# -- consistency --------------------------------------------------------------


def _order(tag: str) -> int:
    return 1 if tag == "1" else factorial(int(tag[1:]))


def _catalog(tag: str) -> GroupTable:
    return group_table("trivial" if tag == "1" else tag)


def factoring_irreps(a_tag: str, abar_tag: str) -> set[str] | None:
    """Labels of irreps of A trivial on the kernel of A -> Abar (None when no normal subgroup of that index exists)."""
    A = _catalog(a_tag)
    index = _order(abar_tag)
    if A.order % index:
        return None
    sizes = [len(c) for c in A.classes]
    for combo in range(1 << len(A.classes)):
        members = [k for k in range(len(A.classes)) if (combo >> k) & 1]
        if 0 not in members or sum(sizes[k] for k in members) * index != A.order:
            continue
        labels = {ir.label for ir in A.irreps if all(ir.values[k] == ir.values[0] for k in members)}
        # a union of classes is a normal subgroup iff it is the common kernel of the irreps trivial on it
        kernel = [k for k in range(len(A.classes)) if all(A.irreps[j].values[k] == A.irreps[j].values[0]
                                                          for j in range(len(A.irreps)) if A.irreps[j].label in labels)]
        if kernel == members:
            return labels
    return None


def record_checks(r: ExceptionalRecord) -> tuple[Check, ...]:
    tags = set(ORDERINGS)
    name = f"{r.group_type} {r.class_name}"
    bs = [m.b for m in r.members]
    first_unbracketed = next((i for i, m in enumerate(r.members) if m.in_family), None)
    out = [
        Check.of(f"{name}: A and Abar are among 1, S2..S5", r.a_group in tags and r.abar_group in tags,
                 {"A": r.a_group, "Abar": r.abar_group}),
    ]
    if r.a_group not in tags or r.abar_group not in tags:
        return tuple(out)
    order = r.ordering()
    abar_irreps = len(_catalog(r.abar_group).irreps)
    factoring = factoring_irreps(r.a_group, r.abar_group)
    pattern = {label for m, label in zip(r.members, order) if m.in_family}
    listed = set(order[: len(r.members)])
    out += [
        Check.of(f"{name}: first member has the least b", bool(bs) and bs[0] == min(bs), bs),
        Check.of(f"{name}: no bracketed member before the first unbracketed one", first_unbracketed == 0),
        Check.of(f"{name}: |Abar| divides |A|", _order(r.a_group) % _order(r.abar_group) == 0),
        Check.of(f"{name}: member count fits the A ordering", len(r.members) <= len(order),
                 {"members": len(r.members), "ordering": len(order)}),
        Check.of(f"{name}: in-family count at most #Irr(Abar)", len(r.in_family) <= abar_irreps,
                 {"in_family": len(r.in_family), "Irr(Abar)": abar_irreps}),
        Check.of(f"{name}: unbracketed members are exactly the listed irreps factoring through Abar",
                 factoring is not None and pattern == factoring & listed,
                 {"unbracketed": sorted(pattern), "factoring": sorted(factoring or ())}),
    ]
    return tuple(out)


@dataclass(frozen=True)
class ConsistencyReport:
    group_type: str
    records_scanned: int
    checks: tuple[Check, ...]


def consistency(group_type: str) -> ConsistencyReport:
    rs = records(group_type)
    checks = tuple(c for r in rs for c in record_checks(r))
    return ConsistencyReport(group_type.upper(), len(rs), checks)
