"""Command line interface and the on-disk document format.

Documents are canonical JSON: sorted keys, two-space indentation, and one
trailing newline, so a parsed document re-serializes byte-identically.
Exit codes: 0 all checks passed, 1 a check failed, 2 unusable input
(parse, schema, or precondition errors), 3 a size guard was exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

import numpy as np

from .errors import (
    NotCentralTriad,
    ParamOutOfRange,
    PreconditionError,
    PropertyMismatch,
    SearchSpaceExceeded,
    TriadKitError,
    UnknownFamily,
    ValidationError,
)
from .algebra import (
    ModuleAction,
    Quantale,
    classify_quantale,
    make_module,
    validate_couple,
    validate_quantale,
)
from .suplat import Guards, SupLattice, validate_sup_lattice
from .triad import (
    Triad,
    TriadInvolution,
    girard_triad_structure,
    triad_predicates,
    validate_involutive_triad,
    validate_triad,
)
from .solve import (
    Solution,
    build_q0,
    build_q1,
    central_maps,
    check_prop_str,
    factorization_to_solution,
    factorization_violations,
    girard_consequences,
    girard_verify,
    involutive_solutions,
    phi_map,
    solution_to_factorization,
    validate_solution,
)
from .examples import ExampleSpec, generate

KINDS = ("lattice", "quantale", "module", "triad", "solution", "involution")

LABEL_KEYS = {
    "lattice": ("elements",),
    "quantale": ("elements",),
    "module": ("quantale", "carrier"),
    "triad": ("t", "l", "r"),
    "solution": ("q", "t", "l", "r"),
    "involution": ("t", "l", "r"),
}


class DocumentError(TriadKitError):
    pass


class DocumentSyntaxError(DocumentError):
    def __init__(self, line: int, col: int, reason: str):
        self.line, self.col = line, col
        super().__init__(f"syntax error at line {line}, column {col}: {reason}")


class DocumentSchemaError(DocumentError):
    def __init__(self, path: str, reason: str):
        self.path, self.reason = path, reason
        super().__init__(f"schema error at {path}: {reason}")


class DocumentIndexError(DocumentError):
    def __init__(self, path: str, reason: str):
        self.path, self.reason = path, reason
        super().__init__(f"index out of range at {path}: {reason}")


@dataclass
class StructureDocument:
    version: int
    kind: str
    payload: dict
    labels: Optional[dict] = None

    def as_dict(self) -> dict:
        out = {"version": self.version, "kind": self.kind, "payload": self.payload}
        if self.labels is not None:
            out["labels"] = self.labels
        return out


def serialize_document(doc: StructureDocument) -> str:
    return json.dumps(doc.as_dict(), sort_keys=True, indent=2) + "\n"


def _expect(cond: bool, path: str, reason: str):
    if not cond:
        raise DocumentSchemaError(path, reason)


def _int_matrix(value, path: str, rows: int, cols: int, bound: int) -> list:
    _expect(isinstance(value, list) and len(value) == rows, path, f"expected {rows} rows")
    for i, row in enumerate(value):
        _expect(isinstance(row, list) and len(row) == cols, f"{path}[{i}]", f"expected {cols} entries")
        for j, x in enumerate(row):
            _expect(isinstance(x, int) and not isinstance(x, bool), f"{path}[{i}][{j}]", "expected an integer")
            if not 0 <= x < bound:
                raise DocumentIndexError(f"{path}[{i}][{j}]", f"{x} not in 0..{bound - 1}")
    return value


def _int_vector(value, path: str, length: int, bound: int) -> list:
    _expect(isinstance(value, list) and len(value) == length, path, f"expected {length} entries")
    for j, x in enumerate(value):
        _expect(isinstance(x, int) and not isinstance(x, bool), f"{path}[{j}]", "expected an integer")
        if not 0 <= x < bound:
            raise DocumentIndexError(f"{path}[{j}]", f"{x} not in 0..{bound - 1}")
    return value


def _check_lattice_payload(payload, path: str) -> int:
    _expect(isinstance(payload, dict), path, "expected an object")
    _expect("leq" in payload, path, "missing field 'leq'")
    leq = payload["leq"]
    _expect(isinstance(leq, list) and leq, f"{path}.leq", "expected a nonempty matrix")
    n = len(leq)
    _int_matrix(leq, f"{path}.leq", n, n, 2)
    return n


def _check_quantale_payload(payload, path: str) -> int:
    n = _check_lattice_payload(payload, path)
    _expect("mult" in payload, path, "missing field 'mult'")
    _int_matrix(payload["mult"], f"{path}.mult", n, n, n)
    unit = payload.get("unit")
    if unit is not None:
        _expect(isinstance(unit, int) and not isinstance(unit, bool), f"{path}.unit", "expected an integer or null")
        if not 0 <= unit < n:
            raise DocumentIndexError(f"{path}.unit", f"{unit} not in 0..{n - 1}")
    star = payload.get("involution")
    if star is not None:
        _int_vector(star, f"{path}.involution", n, n)
    return n


def _check_involution_payload(payload, path: str, nt: int, nl: int, nr: int):
    _expect(isinstance(payload, dict), path, "expected an object")
    for key in ("star_t", "star_lr", "star_rl"):
        _expect(key in payload, path, f"missing field {key!r}")
    _int_vector(payload["star_t"], f"{path}.star_t", nt, nt)
    _int_vector(payload["star_lr"], f"{path}.star_lr", nl, nr)
    _int_vector(payload["star_rl"], f"{path}.star_rl", nr, nl)


def _check_triad_payload(payload, path: str) -> tuple[int, int, int]:
    _expect(isinstance(payload, dict), path, "expected an object")
    for key in ("t", "l", "r", "pairing"):
        _expect(key in payload, path, f"missing field {key!r}")
    nt = _check_quantale_payload(payload["t"], f"{path}.t")
    nl = _check_lattice_payload(payload["l"], f"{path}.l")
    _expect("action" in payload["l"], f"{path}.l", "missing field 'action'")
    _int_matrix(payload["l"]["action"], f"{path}.l.action", nt, nl, nl)
    nr = _check_lattice_payload(payload["r"], f"{path}.r")
    _expect("action" in payload["r"], f"{path}.r", "missing field 'action'")
    _int_matrix(payload["r"]["action"], f"{path}.r.action", nr, nt, nr)
    _int_matrix(payload["pairing"], f"{path}.pairing", nl, nr, nt)
    if payload.get("involution") is not None:
        _check_involution_payload(payload["involution"], f"{path}.involution", nt, nl, nr)
    return nt, nl, nr


def _check_labels(labels, kind: str, sizes: dict):
    path = "labels"
    _expect(isinstance(labels, dict), path, "expected an object")
    for key, value in labels.items():
        _expect(key in LABEL_KEYS[kind], f"{path}.{key}", f"unknown label key for kind {kind!r}")
        _expect(isinstance(value, list), f"{path}.{key}", "expected a list of names")
        for i, name in enumerate(value):
            _expect(isinstance(name, str), f"{path}.{key}[{i}]", "expected a string")
        if key in sizes:
            _expect(len(value) == sizes[key], f"{path}.{key}", f"expected {sizes[key]} names")


def parse_document(text: str) -> StructureDocument:
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentSyntaxError(exc.lineno, exc.colno, exc.msg) from exc
    _expect(isinstance(raw, dict), "$", "expected a JSON object")
    _expect(raw.get("version") == 1, "version", "expected version 1")
    kind = raw.get("kind")
    _expect(kind in KINDS, "kind", f"expected one of {', '.join(KINDS)}")
    _expect("payload" in raw, "$", "missing field 'payload'")
    extra = set(raw) - {"version", "kind", "payload", "labels"}
    _expect(not extra, "$", f"unknown fields: {sorted(extra)}")
    payload = raw["payload"]
    sizes: dict = {}
    if kind == "lattice":
        n = _check_lattice_payload(payload, "payload")
        sizes = {"elements": n}
    elif kind == "quantale":
        n = _check_quantale_payload(payload, "payload")
        sizes = {"elements": n}
    elif kind == "module":
        _expect(isinstance(payload, dict), "payload", "expected an object")
        for key in ("quantale", "carrier", "side", "action"):
            _expect(key in payload, "payload", f"missing field {key!r}")
        nq = _check_quantale_payload(payload["quantale"], "payload.quantale")
        nm = _check_lattice_payload(payload["carrier"], "payload.carrier")
        side = payload["side"]
        _expect(side in ("left", "right"), "payload.side", "expected 'left' or 'right'")
        shape = (nq, nm) if side == "left" else (nm, nq)
        _int_matrix(payload["action"], "payload.action", shape[0], shape[1], nm)
        sizes = {"quantale": nq, "carrier": nm}
    elif kind == "triad":
        nt, nl, nr = _check_triad_payload(payload, "payload")
        sizes = {"t": nt, "l": nl, "r": nr}
    elif kind == "solution":
        _expect(isinstance(payload, dict), "payload", "expected an object")
        for key in ("triad", "q", "qr", "lq", "rl"):
            _expect(key in payload, "payload", f"missing field {key!r}")
        nt, nl, nr = _check_triad_payload(payload["triad"], "payload.triad")
        nq = _check_quantale_payload(payload["q"], "payload.q")
        _int_matrix(payload["qr"], "payload.qr", nq, nr, nr)
        _int_matrix(payload["lq"], "payload.lq", nl, nq, nl)
        _int_matrix(payload["rl"], "payload.rl", nr, nl, nq)
        sizes = {"q": nq, "t": nt, "l": nl, "r": nr}
    elif kind == "involution":
        _expect(isinstance(payload, dict), "payload", "expected an object")
        for key in ("star_t", "star_lr", "star_rl"):
            _expect(key in payload, "payload", f"missing field {key!r}")
        nt = len(payload["star_t"]) if isinstance(payload["star_t"], list) else 0
        nl = len(payload["star_lr"]) if isinstance(payload["star_lr"], list) else 0
        nr = len(payload["star_rl"]) if isinstance(payload["star_rl"], list) else 0
        _expect(nt > 0 and nl > 0 and nr > 0, "payload", "star tables must be nonempty lists")
        _check_involution_payload(payload, "payload", nt, nl, nr)
        sizes = {"t": nt, "l": nl, "r": nr}
    labels = raw.get("labels")
    if labels is not None:
        _check_labels(labels, kind, sizes)
    return StructureDocument(1, kind, payload, labels)


# ---------------------------------------------------------------------------
# document <-> structure conversion


def lattice_from_payload(payload: dict) -> SupLattice:
    return validate_sup_lattice(np.array(payload["leq"], dtype=bool))


def quantale_from_payload(payload: dict) -> Quantale:
    lat = lattice_from_payload(payload)
    return validate_quantale(lat, payload["mult"], payload.get("unit"), payload.get("involution"))


def module_from_payload(payload: dict) -> ModuleAction:
    q = quantale_from_payload(payload["quantale"])
    carrier = lattice_from_payload(payload["carrier"])
    return make_module(q, carrier, payload["side"], payload["action"])


def triad_from_payload(payload: dict) -> Triad:
    t = quantale_from_payload(payload["t"])
    lat_l = lattice_from_payload(payload["l"])
    lat_r = lattice_from_payload(payload["r"])
    left = make_module(t, lat_l, "left", payload["l"]["action"])
    right = make_module(t, lat_r, "right", payload["r"]["action"])
    return validate_triad(t, left, right, payload["pairing"])


def involution_from_payload(payload: dict) -> TriadInvolution:
    return TriadInvolution(
        star_t=np.array(payload["star_t"], dtype=np.int64),
        star_lr=np.array(payload["star_lr"], dtype=np.int64),
        star_rl=np.array(payload["star_rl"], dtype=np.int64),
    )


def solution_from_payload(payload: dict) -> Solution:
    triad = triad_from_payload(payload["triad"])
    q = quantale_from_payload(payload["q"])
    return Solution(
        triad,
        q,
        np.array(payload["qr"], dtype=np.int64),
        np.array(payload["lq"], dtype=np.int64),
        np.array(payload["rl"], dtype=np.int64),
    )


def _matrix(arr) -> list:
    return [[int(x) for x in row] for row in np.asarray(arr)]


def lattice_payload(lat: SupLattice) -> dict:
    return {"leq": _matrix(lat.leq.astype(np.int64))}


def quantale_payload(q: Quantale) -> dict:
    out = lattice_payload(q.carrier)
    out["mult"] = _matrix(q.mult)
    out["unit"] = None if q.unit is None else int(q.unit)
    out["involution"] = None if q.involution is None else [int(x) for x in q.involution]
    return out


def triad_payload(triad: Triad, involution: Optional[TriadInvolution] = None) -> dict:
    out = {
        "t": quantale_payload(triad.t),
        "l": {**lattice_payload(triad.l_carrier), "action": _matrix(triad.left.action)},
        "r": {**lattice_payload(triad.r_carrier), "action": _matrix(triad.right.action)},
        "pairing": _matrix(triad.pairing),
        "involution": None,
    }
    if involution is not None:
        out["involution"] = {
            "star_t": [int(x) for x in involution.star_t],
            "star_lr": [int(x) for x in involution.star_lr],
            "star_rl": [int(x) for x in involution.star_rl],
        }
    return out


def solution_payload(sol: Solution, triad_doc: dict) -> dict:
    return {
        "triad": triad_doc,
        "q": quantale_payload(sol.quantale),
        "qr": _matrix(sol.qr),
        "lq": _matrix(sol.lq),
        "rl": _matrix(sol.rl),
    }


# ---------------------------------------------------------------------------
# reports


@dataclass
class CheckResult:
    name: str
    passed: bool
    witnesses: list = field(default_factory=list)
    duration_ms: float = 0.0


@dataclass
class Report:
    results: list = field(default_factory=list)
    structures: list = field(default_factory=list)

    def run(self, name: str, fn):
        """Run fn() -> (passed, witnesses) as a named, timed check."""
        start = time.perf_counter()
        passed, witnesses = fn()
        ms = (time.perf_counter() - start) * 1000.0
        self.results.append(CheckResult(name, bool(passed), list(witnesses), ms))
        return passed

    def add_violations(self, name: str, violations, duration_ms: float = 0.0):
        self.results.append(
            CheckResult(name, not violations, [v.as_dict() for v in violations], duration_ms)
        )

    @property
    def all_passed(self) -> bool:
        return all(r.passed for r in self.results)

    def render_text(self) -> str:
        lines = []
        for r in self.results:
            status = "PASS" if r.passed else "FAIL"
            lines.append(f"[{status}] {r.name} ({r.duration_ms:.1f} ms)")
            for w in r.witnesses:
                lines.append(f"    witness: {w}")
        return "\n".join(lines)

    def render_machine(self) -> str:
        out = {
            "verdicts": [
                {
                    "check": r.name,
                    "passed": r.passed,
                    "witnesses": r.witnesses,
                    "duration_ms": round(r.duration_ms, 3),
                }
                for r in self.results
            ],
            "structures": [s.as_dict() for s in self.structures],
        }
        return json.dumps(out, sort_keys=True, indent=2) + "\n"


# ---------------------------------------------------------------------------
# commands


def _load(path: str) -> StructureDocument:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise DocumentError(f"cannot read {path}: {exc}") from exc
    return parse_document(text)


def _guards(args) -> Guards:
    if args.max_space is None:
        return Guards()
    n = int(args.max_space)
    return Guards(max_candidates=n, max_tensor_pairs=max(1, n.bit_length() - 1))


def _load_triad(path: str):
    doc = _load(path)
    if doc.kind != "triad":
        raise DocumentError(f"{path}: expected a triad document, found kind {doc.kind!r}")
    triad = triad_from_payload(doc.payload)
    inv = None
    if doc.payload.get("involution") is not None:
        inv = involution_from_payload(doc.payload["involution"])
    return doc, triad, inv


def cmd_validate(args, report: Report) -> int:
    doc = _load(args.file)
    builders = {
        "lattice": lambda: lattice_from_payload(doc.payload),
        "quantale": lambda: quantale_from_payload(doc.payload),
        "module": lambda: module_from_payload(doc.payload),
        "triad": lambda: triad_from_payload(doc.payload),
        "involution": lambda: involution_from_payload(doc.payload),
    }
    start = time.perf_counter()
    try:
        if doc.kind == "solution":
            sol = solution_from_payload(doc.payload)
            bad = validate_solution(sol.triad, sol)
            report.add_violations("validate/solution", bad, (time.perf_counter() - start) * 1000)
        else:
            builders[doc.kind]()
            report.add_violations(f"validate/{doc.kind}", [], (time.perf_counter() - start) * 1000)
        if doc.kind == "triad" and doc.payload.get("involution") is not None:
            triad = triad_from_payload(doc.payload)
            inv = involution_from_payload(doc.payload["involution"])
            report.add_violations("validate/involution", validate_involutive_triad(triad, inv))
    except ValidationError as exc:
        report.add_violations(
            f"validate/{doc.kind}", exc.violations, (time.perf_counter() - start) * 1000
        )
    return 0 if report.all_passed else 1


def cmd_solve(args, report: Report) -> int:
    doc, triad, inv = _load_triad(args.file)
    guards = _guards(args)
    emitted = []
    if args.which in ("q0", "both"):
        start = time.perf_counter()
        q0 = build_q0(triad, guards)
        report.results.append(
            CheckResult("solve/q0", True, [{"size": q0.size}], (time.perf_counter() - start) * 1000)
        )
        emitted.append(("q0", q0.solution))
    if args.which in ("q1", "both"):
        start = time.perf_counter()
        q1 = build_q1(triad, guards)
        report.results.append(
            CheckResult("solve/q1", True, [{"size": q1.size}], (time.perf_counter() - start) * 1000)
        )
        emitted.append(("q1", q1.solution))
    for tag, sol in emitted:
        sdoc = StructureDocument(1, "solution", solution_payload(sol, doc.payload))
        report.structures.append(sdoc)
        if args.emit:
            target = Path(args.emit)
            if args.which == "both":
                target = target.with_name(f"{target.stem}.{tag}{target.suffix or '.json'}")
            target.write_text(serialize_document(sdoc), encoding="utf-8")
    return 0


def _strong_witness(triad: Triad) -> list:
    lat_l, lat_r = triad.l_carrier, triad.r_carrier
    pair, tl, rt = triad.pairing, triad.left.action, triad.right.action
    for l in range(lat_l.size):
        if not lat_l.le(l, int(tl[pair[l, lat_r.top], lat_l.top])):
            return [{"l": l}]
    for r in range(lat_r.size):
        if not lat_r.le(r, int(rt[lat_r.top, pair[lat_l.top, r]])):
            return [{"r": r}]
    return []


def cmd_check(args, report: Report) -> int:
    doc, triad, inv = _load_triad(args.file)
    props = [p.strip() for p in args.props.split(",") if p.strip()]
    known = {"strong", "unital", "strict", "central", "girard", "involutive"}
    unknown = set(props) - known
    if unknown:
        raise DocumentError(f"unknown properties: {sorted(unknown)}")
    preds = triad_predicates(triad)
    for prop in props:
        if prop in ("strong", "unital", "strict"):
            passed = getattr(preds, prop)
            witnesses = [] if passed else _strong_witness(triad)
            report.results.append(CheckResult(f"check/{prop}", passed, witnesses))
        elif prop == "central":
            if preds.central:
                report.results.append(CheckResult("check/central", True))
            else:
                center = set(classify_quantale(triad.t).center)
                witness = next(
                    {"l": l, "r": r, "value": int(triad.pairing[l, r])}
                    for l in range(triad.l_carrier.size)
                    for r in range(triad.r_carrier.size)
                    if int(triad.pairing[l, r]) not in center
                )
                report.results.append(CheckResult("check/central", False, [witness]))
        elif prop == "girard":
            witnesses = girard_triad_structure(triad)
            report.results.append(
                CheckResult(
                    "check/girard", bool(witnesses), [{"d_t": w.d_t} for w in witnesses]
                )
            )
        elif prop == "involutive":
            if inv is None:
                raise DocumentError(
                    "check involutive requires an involution embedded in the triad document"
                )
            bad = validate_involutive_triad(triad, inv)
            report.add_violations("check/involutive", bad)
    return 0 if report.all_passed else 1


def cmd_verify(args, report: Report) -> int:
    doc, triad, inv = _load_triad(args.file)
    guards = _guards(args)
    sc = phi_map(build_q0(triad, guards), build_q1(triad, guards))
    try:
        if args.theorem == "sol":
            couple_report = validate_couple(sc.couple)
            report.results.append(
                CheckResult(
                    "verify/sol/couple-unital",
                    couple_report.ok and couple_report.unital,
                    [v.as_dict() for v in couple_report.violations],
                )
            )
            for tag, sol in (("q0", sc.q0.solution), ("q1", sc.q1.solution)):
                f = solution_to_factorization(sc, sol)
                back = factorization_to_solution(sc, f)
                same = (
                    np.array_equal(back.qr, sol.qr)
                    and np.array_equal(back.lq, sol.lq)
                    and np.array_equal(back.rl, sol.rl)
                )
                report.results.append(CheckResult(f"verify/sol/round-trip-{tag}", same))
        elif args.theorem == "str":
            out = check_prop_str(sc)
            report.results.append(
                CheckResult(
                    "verify/str/phi-strong-iff-strong",
                    True,
                    [{"phi_strong": out.phi_strong, "triad_strong": out.triad_strong}],
                )
            )
            if out.sided is not None:
                report.results.append(CheckResult("verify/str/sided-identifications", True))
        elif args.theorem == "gir":
            witnesses = girard_triad_structure(triad)
            if not witnesses:
                report.results.append(CheckResult("verify/gir/triad-girard", False))
            for w in witnesses:
                out = girard_verify(sc, w)
                report.results.append(
                    CheckResult(f"verify/gir/d_t={w.d_t}", True, [{"d_q": out.d_q}])
                )
        elif args.theorem == "involutive":
            if inv is None:
                raise DocumentError(
                    "verify involutive requires an involution embedded in the triad document"
                )
            involutive_solutions(sc, inv)
            report.results.append(CheckResult("verify/involutive", True))
        elif args.theorem == "central":
            central_maps(sc)
            report.results.append(CheckResult("verify/central", True))
        elif args.theorem == "girard-consequences":
            out = girard_consequences(sc)
            report.results.append(
                CheckResult(
                    "verify/girard-consequences",
                    True,
                    [{"t_distributive": out.t_distributive}],
                )
            )
    except PropertyMismatch as exc:
        report.results.append(
            CheckResult(f"verify/{args.theorem}", False, [{"mismatch": str(exc)}])
        )
    except ValidationError as exc:
        report.add_violations(f"verify/{args.theorem}", exc.violations)
    return 0 if report.all_passed else 1


def cmd_factorize(args, report: Report) -> int:
    tdoc, triad, _ = _load_triad(args.triad_file)
    sdoc = _load(args.solution_file)
    if sdoc.kind != "solution":
        raise DocumentError(f"{args.solution_file}: expected a solution document")
    if sdoc.payload["triad"] != tdoc.payload:
        raise DocumentError("the solution document was built over a different triad")
    sol = solution_from_payload(sdoc.payload)
    sol = Solution(triad, sol.quantale, sol.qr, sol.lq, sol.rl)
    start = time.perf_counter()
    bad = validate_solution(triad, sol)
    report.add_violations("factorize/solution-laws", bad, (time.perf_counter() - start) * 1000)
    if bad:
        return 1
    guards = _guards(args)
    sc = phi_map(build_q0(triad, guards), build_q1(triad, guards))
    f = solution_to_factorization(sc, sol)
    report.add_violations("factorize/coupling-laws", factorization_violations(sc, f))
    back = factorization_to_solution(sc, f)
    same = (
        np.array_equal(back.qr, sol.qr)
        and np.array_equal(back.lq, sol.lq)
        and np.array_equal(back.rl, sol.rl)
    )
    report.results.append(CheckResult("factorize/round-trip", same))
    return 0 if report.all_passed else 1


def _spec_from_args(args) -> ExampleSpec:
    params: dict = {}
    if args.size is not None:
        params["size"] = args.size
    if args.size2 is not None:
        params["size2"] = args.size2
    if args.shape is not None:
        params["shape"] = args.shape
    if args.name is not None:
        params["name"] = args.name
    if args.quantale is not None:
        params["quantale"] = args.quantale
    return ExampleSpec(args.family, params)


def cmd_generate(args, report: Report) -> int:
    g = generate(_spec_from_args(args), _guards(args))
    doc = StructureDocument(1, "triad", triad_payload(g.triad, g.involution))
    report.structures.append(doc)
    report.results.append(
        CheckResult(
            "generate",
            True,
            [
                {
                    "family": args.family,
                    "sizes": {
                        "l": g.triad.l_carrier.size,
                        "t": g.triad.t.size,
                        "r": g.triad.r_carrier.size,
                    },
                }
            ],
        )
    )
    if args.emit:
        Path(args.emit).write_text(serialize_document(doc), encoding="utf-8")
    return 0


def _add_global_flags(parser, suppress: bool):
    # the same flags exist on the main parser and every subcommand; the
    # subcommand copies use SUPPRESS so they never clobber a top-level value
    def dflt(value):
        return argparse.SUPPRESS if suppress else value

    parser.add_argument("--max-space", type=int, metavar="N", default=dflt(None),
                        help="bound enumerative searches by N candidates (tensor pair bound log2 N)")
    parser.add_argument("--format", choices=("text", "machine"), default=dflt("text"))
    parser.add_argument("--seed", type=int, default=dflt(0),
                        help="reserved; generators are deterministic")
    parser.add_argument("--quiet", action="store_true", default=dflt(False),
                        help="suppress the report on success")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="triadkit",
        description="Validate, construct, and verify finite quantale triads and their solutions.",
    )
    _add_global_flags(parser, suppress=False)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="validate a structure document")
    p.add_argument("file")
    p.set_defaults(fn=cmd_validate)
    _add_global_flags(p, suppress=True)

    p = sub.add_parser("solve", help="build the extremal solutions of a triad")
    p.add_argument("file")
    p.add_argument("--which", choices=("q0", "q1", "both"), default="both")
    p.add_argument("--emit", metavar="OUT", default=None)
    p.set_defaults(fn=cmd_solve)
    _add_global_flags(p, suppress=True)

    p = sub.add_parser("check", help="decide triad properties")
    p.add_argument("file")
    p.add_argument("--props", default="strong,unital,strict,central")
    p.set_defaults(fn=cmd_check)
    _add_global_flags(p, suppress=True)

    p = sub.add_parser("verify", help="machine-check a theorem on a triad")
    p.add_argument("file")
    p.add_argument(
        "--theorem",
        required=True,
        choices=("sol", "str", "gir", "involutive", "central", "girard-consequences"),
    )
    p.set_defaults(fn=cmd_verify)
    _add_global_flags(p, suppress=True)

    p = sub.add_parser("factorize", help="factorize a solution through the extremal ends")
    p.add_argument("triad_file")
    p.add_argument("solution_file")
    p.set_defaults(fn=cmd_factorize)
    _add_global_flags(p, suppress=True)

    p = sub.add_parser("generate", help="generate a triad from the example families")
    p.add_argument("family")
    p.add_argument("--size", type=int, default=None)
    p.add_argument("--size2", type=int, default=None)
    p.add_argument("--shape", default=None)
    p.add_argument("--name", default=None)
    p.add_argument("--quantale", default=None)
    p.add_argument("--emit", metavar="OUT", default=None)
    p.set_defaults(fn=cmd_generate)
    _add_global_flags(p, suppress=True)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    report = Report()
    try:
        code = args.fn(args, report)
    except (DocumentError, PreconditionError, NotCentralTriad, UnknownFamily, ParamOutOfRange) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except SearchSpaceExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except ValidationError as exc:
        report.add_violations("input-validation", exc.violations)
        code = 1
    except PropertyMismatch as exc:
        report.results.append(CheckResult("property", False, [{"mismatch": str(exc)}]))
        code = 1
    if args.format == "machine":
        sys.stdout.write(report.render_machine())
    elif not args.quiet or code != 0:
        text = report.render_text()
        if text:
            print(text)
        for sdoc in report.structures:
            if not getattr(args, "emit", None):
                sys.stdout.write(serialize_document(sdoc))
    return code


if __name__ == "__main__":
    sys.exit(main())
