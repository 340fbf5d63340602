"""Command line front end: JSON (or text) reports on stdout.

Exit status: 0 when every verification passes (or is reported), 1 when one
fails, 2 on malformed input.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Any, Sequence

from .checks import Check, Status
from .classical import (
    ClassSequence,
    JordanTypeError,
    Kind,
    NotSpecial,
    component_data,
    jordan_type,
    pin_search,
    sequence_of_class,
    trivial_structures,
)
from .cyclotomic import Cyclotomic
from .exceptional import (
    GROUP_TYPES,
    attach_irreps,
    lookup,
    record_checks,
    records,
    type_a_record,
)
from .families import canonical_identification, family_set, m_pairing_abelian, verify_corollary_05, verify_theorem_04
from .groups import CATALOG_NAMES, canonical_name, fourier_data, fourier_matrix, fourier_matrix_checks
from .sequences import (
    EnumerationTooLarge,
    Flavor,
    SequenceError,
    enumerate_matching,
    matching_checks,
    validate_sequence,
)
from .symbols import minus_bijection, symbols_of
from .verify import SCOPES, lagrangian_checks, run_scope

SCHEMA_VERSION = "1.0"
PAIRING_TABLE_LIMIT = 16  # X_F sizes up to this get the full pairing table


class UsageError(Exception):
    pass


def _ints(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip() != ""]
    except ValueError:
        raise UsageError(f"expected comma-separated integers, got {text!r}") from None


def _labels(fs_ground, mask: int) -> list[int]:
    return list(fs_ground.labels_of(mask))


def _frac(q: Fraction) -> str:
    return str(q)


# -- class --------------------------------------------------------------------


def _sequence_results(a) -> tuple[dict, list[Check]]:
    flavor = a.flavor
    sym = symbols_of(a)
    st = sym.structure
    comp = component_data(a)
    fs = family_set(a)
    ident = canonical_identification(fs, comp)
    th = verify_theorem_04(a, ident)
    co = verify_corollary_05(a, ident)
    tsets = sym.enumerate_T()
    mb = minus_bijection(a)
    ground = fs.ground
    elements = fs.elements()
    res: dict[str, Any] = {
        "flavor": flavor.value,
        "a": list(a.entries),
        "shifted": list(st.shifted),
        "N": a.N,
        "J": list(a.singleton_values),
        "J_shifted": list(st.J),
        "matching_set": sorted(map(list, enumerate_matching(a))),
        "intervals": [list(I) for I in st.intervals],
        "H": list(st.H),
        "blocks": [{"s": b.s, "values": list(b.values), "intervals": [list(I) for I in b.intervals]} for b in st.blocks],
        "unassigned_intervals": [list(I) for I in st.unassigned],
        "T": {"size": len(tsets.T), "T_prime_size": len(tsets.T_prime), "T1": sorted(p.to_json() for p in tsets.T1)},
        "frak": {
            "size": len(fs.frak.T),
            "T_prime": sorted(p.to_json() for p in fs.frak.T_prime),
            "T_group_side": sorted(p.to_json() for p in fs.frak.T_L[fs.group_side]),
            "T_swap_side": sorted(p.to_json() for p in fs.frak.T_L[1 - fs.group_side]),
        },
        "minus_map": sorted([p.to_json(), q.to_json()] for p, q in mb.mapping.items()),
        "A": {
            "intervals": len(comp.ground),
            "order": len(comp.A),
            "basis": [_labels(comp.ground, m) for m in comp.A.basis],
        },
        "K": {"order": len(comp.kernel), "basis": [_labels(comp.ground, m) for m in comp.kernel.basis]},
        "Abar": {
            "order": comp.abar_order,
            "structure": "1" if comp.abar_dim == 0 else ("Z/2" if comp.abar_dim == 1 else f"(Z/2)^{comp.abar_dim}"),
            "basis": [_labels(comp.ground, m) for m in comp.basis],
            "basis_blocks": list(comp.basis_blocks),
        },
        "X_F": {
            "ambient": fs.ambient.ambient.value,
            "size": len(fs.ambient),
            "elements": [_labels(ground, x) for x in elements],
            "L_group": [_labels(ground, m) for m in fs.L_group.basis],
            "L_char": [_labels(ground, m) for m in fs.L_char.basis],
        },
        "family_members": sorted(
            ({"pair": p.to_json(), "address": _labels(ground, x)} for p, x in fs.members.items()),
            key=lambda d: (d["address"], d["pair"]),
        ),
        "identification": [
            {"x": _labels(ground, x), "g": list(ident(x).g), "chi": list(ident(x).chi)} for x in elements
        ],
        "T1_characters": [
            {"symbol": sym_.to_json(), "address": _labels(ground, x), "g": list(img.g), "chi": list(img.chi),
             "character": list(chi)}
            for sym_, x, img, chi in co.rows
        ],
    }
    if len(elements) <= PAIRING_TABLE_LIMIT:
        res["pairing"] = [
            {"x": _labels(ground, x), "y": _labels(ground, y),
             "form": fs.form(x, y), "m_pairing": _frac(m_pairing_abelian(ident(x), ident(y)))}
            for x in elements for y in elements
        ]
    if flavor is Flavor.C:
        res["M"] = a.M
    else:
        res["mu"] = a.mu
    checks = list(matching_checks(a)) + list(mb.checks) + list(lagrangian_checks(a))
    checks += st.checks() + list(comp.checks) + list(fs.checks) + list(th.checks) + list(co.checks)
    checks = _dedupe(checks)
    return res, checks


def _dedupe(checks: Sequence[Check]) -> list[Check]:
    seen = set()
    out = []
    for c in checks:
        key = (c.anchor, c.status, json.dumps(c.witness, sort_keys=True, default=str))
        if key not in seen:
            seen.add(key)
            out.append(c)
    return out


def cmd_class(args: argparse.Namespace) -> dict:
    if args.sequence is not None:
        if args.partition is not None:
            raise UsageError("give either --partition or --sequence, not both")
        if args.flavor is None:
            raise UsageError("--sequence needs --flavor C or BD")
        try:
            a = validate_sequence(_ints(args.sequence), args.flavor, allow_empty=True)
        except SequenceError as e:
            raise UsageError(str(e)) from None
        inputs = {"sequence": list(a.entries), "flavor": a.flavor.value}
        res, checks = _sequence_results(a)
        return _report("class", inputs, res, checks)
    if args.partition is None or args.group is None:
        raise UsageError("class needs --group with --partition, or --sequence with --flavor")
    try:
        jt = jordan_type(_ints(args.partition), args.group)
    except (JordanTypeError, ValueError) as e:
        raise UsageError(str(e)) from None
    inputs = {"group": jt.kind.value, "partition": list(jt.parts)}
    if args.n_override is not None:
        inputs["N"] = args.n_override
    head = {"group_name": jt.group_name, "partition": list(jt.parts), "delta": list(jt.delta)}
    if jt.kind is Kind.GENERAL_LINEAR:
        ts = trivial_structures(jt)
        rec = type_a_record(jt.total, jt.parts)
        head.update(special=True, A_order=ts.A_order, Abar_order=ts.abar_order, family_size=ts.family_size,
                    springer=rec.to_json()["members"])
        return _report("class", inputs, head, list(ts.checks))
    try:
        cs = sequence_of_class(jt, args.n_override)
    except ValueError as e:
        raise UsageError(str(e)) from None
    if isinstance(cs, NotSpecial):
        head.update(special=False, N=cs.N, symbol_rows=[list(r) for r in cs.rows],
                    pin_search=[list(s) for s in pin_search(jt, cs.N)])
        return _report("class", inputs, head, [])
    assert isinstance(cs, ClassSequence)
    res, checks = _sequence_results(cs.seq)
    head.update(special=True, symbol_rows=[list(r) for r in cs.rows])
    head.update(res)
    return _report("class", inputs, head, list(cs.checks) + checks)


# -- verify -------------------------------------------------------------------


def cmd_verify(args: argparse.Namespace) -> dict:
    scopes = SCOPES if args.scope == "all" else (args.scope,)
    results = []
    checks = []
    for s in scopes:
        rep = run_scope(s, args.max_rank, args.samples, args.seed)
        results.append(rep.to_json())
        for entry in rep.to_json()["checks"]:
            anchor = entry["anchor"]
            if entry[Status.FAIL.value]:
                witness = {"cases_failed": entry[Status.FAIL.value], "first_failure": rep.first_failure}
                checks.append(Check(f"{s}: {anchor}", Status.FAIL, witness))
            elif entry[Status.REPORTED.value]:
                checks.append(Check(f"{s}: {anchor}", Status.REPORTED, {"cases_reported": entry[Status.REPORTED.value]}))
            else:
                checks.append(Check(f"{s}: {anchor}", Status.PASS, {"cases": entry[Status.PASS.value]}))
    inputs = {"scope": args.scope, "max_rank": args.max_rank, "samples": args.samples, "seed": args.seed}
    return _report("verify", inputs, {"scopes": results}, checks)


# -- fourier ------------------------------------------------------------------


def _cyc(x: Cyclotomic) -> Any:
    return x.to_json()


def cmd_fourier(args: argparse.Namespace) -> dict:
    try:
        name = canonical_name(args.group)
    except KeyError as e:
        raise UsageError(e.args[0]) from None
    fd = fourier_data(name)
    S = fourier_matrix(name)
    rep = fourier_matrix_checks(name)
    res = {
        "group": name,
        "order": fd.group.order,
        "size": len(fd.pairs),
        "cyclotomic_basis": "coefficients on zeta_60^k, k = 0..15; rational entries as a single string",
        "classes": [
            {"index": k, "representative": list(cz.rep), "centralizer_order": cz.order, "centralizer": cz.catalog,
             "irreps": [ir.label for ir in cz.irreps]}
            for k, cz in enumerate(fd.centralizers)
        ],
        "pairs": [fd.label(p) for p in fd.pairs],
        "matrix": [[_cyc(x) for x in row] for row in S],
    }
    checks = [
        Check.of("Fourier matrix is unitary", rep.unitary),
        Check.of("Fourier matrix is hermitian", rep.hermitian),
        Check.of("S^2 is a permutation matrix", rep.square_is_permutation),
    ]
    real = rep.real_symmetric and rep.square_is_identity
    if name in REAL_EXPECTED:
        checks.append(Check.of("S is real symmetric with S^2 = I", real))
    res["real_symmetric"] = rep.real_symmetric
    res["square_is_identity"] = rep.square_is_identity
    return _report("fourier", {"group": name}, res, checks)


REAL_EXPECTED = ("trivial", "S2", "S3", "S4", "S5", "Z2", "(Z/2)^2", "(Z/2)^3", "(Z/2)^4", "D8")


# -- exceptional --------------------------------------------------------------


def cmd_exceptional(args: argparse.Namespace) -> dict:
    gtype = args.type.upper()
    if gtype not in GROUP_TYPES:
        raise UsageError(f"unknown type {args.type!r}; choose from {', '.join(GROUP_TYPES)}")
    if args.cls is not None:
        try:
            recs = [lookup(gtype, args.cls)]
        except KeyError as e:
            raise UsageError(e.args[0]) from None
    else:
        recs = records(gtype)
    out = []
    checks: list[Check] = []
    for r in recs:
        d = r.to_json()
        d["irreps"] = [{"member": m.label, "irrep": label} for m, label in attach_irreps(r)]
        d["M_Abar_size"] = len(fourier_data("trivial" if r.abar_group == "1" else r.abar_group).pairs)
        out.append(d)
        checks.extend(record_checks(r))
    inputs = {"type": gtype, "class": args.cls}
    return _report("exceptional", inputs, {"records_scanned": len(recs), "records": out}, checks)


# -- plumbing -----------------------------------------------------------------


def _report(command: str, inputs: dict, results: dict, checks: Sequence[Check]) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "inputs": inputs,
        "results": results,
        "verifications": [c.to_json() for c in checks],
    }


def exit_code(report: dict) -> int:
    return 1 if any(v["status"] == Status.FAIL.value for v in report["verifications"]) else 0


def render_json(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def _text(value: Any, indent: int = 0) -> list[str]:
    pad = "  " * indent
    if isinstance(value, dict):
        lines = []
        for k in sorted(value):
            v = value[k]
            if isinstance(v, (dict, list)) and v and not _flat(v):
                lines.append(f"{pad}{k}:")
                lines.extend(_text(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {_inline(v)}")
        return lines
    if isinstance(value, list):
        lines = []
        for v in value:
            if isinstance(v, (dict, list)) and not _flat(v):
                lines.append(f"{pad}-")
                lines.extend(_text(v, indent + 1))
            else:
                lines.append(f"{pad}- {_inline(v)}")
        return lines
    return [f"{pad}{_inline(value)}"]


def _flat(v: Any) -> bool:
    if isinstance(v, dict):
        return False
    if isinstance(v, list):
        return all(not isinstance(x, (dict, list)) or (isinstance(x, list) and _flat(x)) for x in v)
    return True


def _inline(v: Any) -> str:
    return json.dumps(v, ensure_ascii=False, sort_keys=True)


def render_text(report: dict) -> str:
    lines = [f"{report['command']} (schema {report['schema_version']})"]
    lines += ["inputs:"] + _text(report["inputs"], 1)
    lines += ["results:"] + _text(report["results"], 1)
    lines.append("verifications:")
    for v in report["verifications"]:
        line = f"  {v['status'].upper():8} {v['anchor']}"
        if v["status"] != Status.PASS.value and v.get("witness") is not None:
            line += f"  {_inline(v['witness'])}"
        lines.append(line)
    return "\n".join(lines) + "\n"


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # exit 2 on usage errors, like argparse
        self.print_usage(sys.stderr)
        self.exit(2, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="springfam", description="Springer correspondence and family combinatorics for special classes.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def fmt(sp: argparse.ArgumentParser) -> None:
        sp.add_argument("--format", choices=("json", "text"), default="json")

    c = sub.add_parser("class", help="full report for one class or raw sequence")
    c.add_argument("--group", choices=[k.value for k in Kind])
    c.add_argument("--partition", help="Jordan block sizes, e.g. 2,2")
    c.add_argument("--sequence", help="raw sequence a_0,...,a_N")
    c.add_argument("--flavor", choices=[f.value for f in Flavor])
    c.add_argument("--n-override", type=int, help="length parameter N of the sequence")
    fmt(c)

    v = sub.add_parser("verify", help="batch verification")
    v.add_argument("scope", choices=SCOPES + ("all",))
    v.add_argument("--max-rank", type=int, default=4)
    v.add_argument("--samples", type=int, default=0, help="seeded random sequences per flavor")
    v.add_argument("--seed", type=int, default=0)
    fmt(v)

    f = sub.add_parser("fourier", help="Fourier matrix of a catalog group")
    f.add_argument("--group", required=True, help=", ".join(CATALOG_NAMES))
    fmt(f)

    e = sub.add_parser("exceptional", help="exceptional-type tables")
    e.add_argument("--type", required=True)
    e.add_argument("--class", dest="cls")
    fmt(e)
    return p


COMMANDS = {"class": cmd_class, "verify": cmd_verify, "fourier": cmd_fourier, "exceptional": cmd_exceptional}


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        report = COMMANDS[args.command](args)
    except (UsageError, EnumerationTooLarge) as e:
        print(f"springfam: error: {e}", file=sys.stderr)
        return 2
    out = render_text(report) if args.format == "text" else render_json(report)
    sys.stdout.write(out)
    code = exit_code(report)
    if code and args.command == "verify":
        first = next(v for v in report["verifications"] if v["status"] == Status.FAIL.value)
        print(f"springfam: verification failed: {first['anchor']}: {_inline(first['witness'])}", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
