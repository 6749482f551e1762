"""Command-line front end: ``ccczagreb {family,ccc,report,verify,scan,props}``.

Exit codes: 0 when every verdict holds and every prediction matches, 2 when
some verdict is violated or a structure/index mismatch occurred, 1 on usage
or validation errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import itertools
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

from .ccc import GraphError, ccc_graph, export_dot, parse_decomposition, parse_graph_expr
from .families import (
    FAMILIES,
    FAMILY_PARAMS,
    FamilySpec,
    InvalidParams,
    build_aux,
    build_family,
    family_presentation,
    parse_aux,
    parse_family,
)
from .group import (
    CapExceeded,
    FiniteGroup,
    GroupError,
    center,
    commuting_probability,
    conjugacy_data,
    distinct_centralizer_count,
    frobenius_decomposition,
    quotient_by_center,
    recognize_structure,
)
from .predictions import (
    QUOTIENT_KINDS,
    DivisibilityError,
    QuotientCase,
    VerificationRecord,
    predicted_decomposition,
    predictions_for,
    quotient_prediction,
    verify_group,
)
from .presentation import LimitExceeded, PresentationError, coset_enumerate, default_coset_limit, parse_presentation
from .zagreb import Verdict, ZagrebReport, decomposition_report, zagreb_report

CSV_COLUMNS = (
    "family", "params", "num_vertices", "num_edges", "m1", "m2", "lhs", "rhs", "verdict",
    "closed_m1", "closed_m2", "case_label", "structure_match", "equality_as_predicted", "discrepancy_notes",
)
SCHEMA_VERSION = 1


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


# --- rows ----------------------------------------------------------------------------


@dataclass
class Row:
    family: str
    params: str
    report: ZagrebReport
    closed_m1: int | None = None
    closed_m2: int | None = None
    case_label: str = ""
    structure_match: bool | None = None
    equality_as_predicted: bool | None = None
    notes: tuple[str, ...] = ()
    extra: dict = field(default_factory=dict)

    @property
    def failed(self) -> bool:
        if self.report.verdict is Verdict.VIOLATED or self.structure_match is False:
            return True
        r = self.report
        return (self.closed_m1 is not None and self.closed_m1 != r.m1) or (
            self.closed_m2 is not None and self.closed_m2 != r.m2
        )

    def cells(self) -> dict[str, str]:
        r = self.report
        fmt = lambda v: "" if v is None else str(v).lower() if isinstance(v, bool) else str(v)
        return {
            "family": self.family,
            "params": self.params,
            "num_vertices": str(r.num_vertices),
            "num_edges": str(r.num_edges),
            "m1": str(r.m1),
            "m2": str(r.m2),
            "lhs": str(r.lhs),
            "rhs": str(r.rhs),
            "verdict": r.verdict.value,
            "closed_m1": fmt(self.closed_m1),
            "closed_m2": fmt(self.closed_m2),
            "case_label": self.case_label,
            "structure_match": fmt(self.structure_match),
            "equality_as_predicted": fmt(self.equality_as_predicted),
            "discrepancy_notes": "; ".join(self.notes),
        }

    def as_dict(self) -> dict:
        d = {"family": self.family, "params": self.params, "report": self.report.as_dict()}
        d.update(
            closed_m1=self.closed_m1, closed_m2=self.closed_m2, case_label=self.case_label,
            structure_match=self.structure_match, equality_as_predicted=self.equality_as_predicted,
            discrepancy_notes=list(self.notes),
        )
        d.update(self.extra)
        return d


def row_from_record(rec: VerificationRecord) -> Row:
    return Row(
        rec.family or rec.group_name, rec.params, rec.report, rec.predicted.closed_m1, rec.predicted.closed_m2,
        rec.predicted.case_label, rec.structure_match, rec.equality_as_predicted, rec.discrepancy_notes,
        {"group": rec.group_name,
         "brute_decomposition": None if rec.brute_decomposition is None else str(rec.brute_decomposition),
         "predicted_decomposition": str(rec.predicted.decomposition),
         "m1_match": rec.m1_match, "m2_match": rec.m2_match},
    )


def format_rows(rows: list[Row], fmt: str) -> str:
    if not rows:
        raise UsageError("nothing to report")
    if fmt == "json":
        doc = {"schema_version": SCHEMA_VERSION, "records": [r.as_dict() for r in rows]}
        return json.dumps(doc, indent=2, sort_keys=True) + "\n"
    cells = [r.cells() for r in rows]
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=CSV_COLUMNS, lineterminator="\n")
        w.writeheader()
        w.writerows(cells)
        return buf.getvalue()
    widths = {c: max(len(c), *(len(x[c]) for x in cells)) for c in CSV_COLUMNS}
    lines = ["  ".join(c.ljust(widths[c]) for c in CSV_COLUMNS).rstrip()]
    lines += ["  ".join(x[c].ljust(widths[c]) for c in CSV_COLUMNS).rstrip() for x in cells]
    return "\n".join(lines) + "\n"


def _emit(text: str, output: str | None) -> None:
    if output:
        Path(output).write_text(text)
    else:
        sys.stdout.write(text)


# --- group selection ------------------------------------------------------------------


def _add_group_args(p: argparse.ArgumentParser, required: bool = True) -> None:
    g = p.add_mutually_exclusive_group(required=required)
    g.add_argument("--family", help="family selector, e.g. dihedral:12, unm:2,6, gpmn:3,1,2")
    g.add_argument("--aux", help="auxiliary group, e.g. heisenberg:3, frobenius:7,3, product:a4;2")
    g.add_argument("--presentation", help='finite presentation, e.g. "a,b | a^4, b^2, (ab)^2"')
    g.add_argument("--group-json", help="group document produced by `family --dump`")
    p.add_argument("--engine", choices=("normal", "coset"), default="normal",
                   help="for --family: normal-form constructor or coset enumeration")


def _coset_limit(args) -> int:
    lim = args.coset_limit if args.coset_limit is not None else default_coset_limit()
    if lim < 1:
        raise UsageError("--coset-limit must be >= 1")
    return lim


def _load_group(args) -> tuple[FiniteGroup, FamilySpec | None]:
    lim = _coset_limit(args)
    if getattr(args, "family", None):
        spec = parse_family(args.family)
        if args.engine == "coset":
            return coset_enumerate(family_presentation(spec), lim, name=str(spec)), spec
        return build_family(spec, lim), spec
    if getattr(args, "aux", None):
        return build_aux(parse_aux(args.aux), lim), None
    if getattr(args, "presentation", None):
        return coset_enumerate(parse_presentation(args.presentation), lim), None
    if getattr(args, "group_json", None):
        return FiniteGroup.from_json(Path(args.group_json).read_text()), None
    raise UsageError("no group given")


def _group_label(args) -> tuple[str, str]:
    for key in ("family", "aux"):
        v = getattr(args, key, None)
        if v:
            name, _, params = v.partition(":")
            return name, params
    if getattr(args, "presentation", None):
        return "presentation", args.presentation
    return "group-json", getattr(args, "group_json", "") or ""


# --- subcommands ------------------------------------------------------------------------


def cmd_family(args) -> int:
    G, _ = _load_group(args)
    data = conjugacy_data(G)
    Z = center(G)
    quotient = recognize_structure(quotient_by_center(G)) if len(Z) < G.order else None
    doc = {
        "name": G.name,
        "order": G.order,
        "center_order": len(Z),
        "num_classes": len(data.classes),
        "class_sizes": sorted(data.class_sizes),
        "generators": [G.element_label(g) for g in G.generators],
        "structure": str(recognize_structure(G)),
        "central_quotient": None if quotient is None else str(quotient),
    }
    if args.dump:
        Path(args.dump).write_text(G.to_json())
    if args.format == "json":
        _emit(json.dumps(doc, indent=2, sort_keys=True) + "\n", args.output)
    else:
        width = max(map(len, doc))
        _emit("".join(f"{k.ljust(width)}  {v}\n" for k, v in doc.items()), args.output)
    return 0


def cmd_ccc(args) -> int:
    G, _ = _load_group(args)
    g = ccc_graph(G)
    _emit(g.to_json() + "\n" if args.format == "json" else export_dot(g, G.name), args.output)
    return 0


def cmd_report(args) -> int:
    if args.graph:
        rep, fam, params = zagreb_report(parse_graph_expr(args.graph)), "graph", args.graph
    elif args.decomposition:
        d = parse_decomposition(args.decomposition)
        rep, fam, params = decomposition_report(d), "decomposition", str(d)
    else:
        G, _ = _load_group(args)
        rep = zagreb_report(ccc_graph(G))
        fam, params = _group_label(args)
    row = Row(fam, params, rep)
    _emit(format_rows([row], args.format), args.output)
    return 2 if row.failed else 0


def _parse_case(text: str, x: int) -> QuotientCase:
    kind, _, rest = text.partition(":")
    nums, sub = [], None
    for tok in filter(None, (t.strip() for t in rest.split(","))):
        if tok.lstrip("-").isdigit():
            nums.append(int(tok))
        else:
            sub = tok
    return QuotientCase(kind.strip().lower(), tuple(nums), x, sub)


def cmd_verify(args) -> int:
    G, spec = _load_group(args)
    fam, params = _group_label(args)
    if args.quotient:
        preds = quotient_prediction(_parse_case(args.quotient, len(center(G))))
    elif spec is not None:
        preds = [predicted_decomposition(spec)]
    else:
        preds = predictions_for(G)
        if not preds:
            raise UsageError(f"{G.name}: no central-quotient theorem applies; pass --quotient to force one")
    rec = verify_group(G, preds, fam, params)
    row = row_from_record(rec)
    _emit(format_rows([row], args.format), args.output)
    return 2 if row.failed else 0


def parse_range(text: str) -> list[int]:
    """``3..40`` (inclusive), ``5``, or ``2,3,5``; pieces may be mixed."""
    out: list[int] = []
    for piece in text.split(","):
        piece = piece.strip()
        try:
            if ".." in piece:
                lo, hi = (int(t) for t in piece.split(".."))
                if hi < lo:
                    raise UsageError(f"empty range {piece!r}")
                out.extend(range(lo, hi + 1))
            elif piece:
                out.append(int(piece))
        except ValueError:
            raise UsageError(f"bad range {piece!r}; expected e.g. 3..40 or 2,3,5") from None
    if not out:
        raise UsageError(f"empty range {text!r}")
    return out


def _family_task(task: tuple[str, tuple[int, ...], int]) -> Row | str:
    family, ps, lim = task
    try:
        spec = FamilySpec(family, ps)
    except InvalidParams as exc:
        return str(exc)
    G = build_family(spec, lim)
    rec = verify_group(G, [predicted_decomposition(spec)], family, ",".join(map(str, ps)))
    return row_from_record(rec)


def _quotient_task(case: QuotientCase) -> list[Row] | str:
    try:
        preds = quotient_prediction(case)
    except (DivisibilityError, InvalidParams) as exc:
        return str(exc)
    rows = []
    params = ",".join(map(str, case.params)) + (f",{case.subcase}" if case.subcase else "") + f";x={case.x}"
    for p in preds:
        rep = decomposition_report(p.decomposition)
        rows.append(Row(case.kind, params, rep, p.closed_m1, p.closed_m2, p.case_label, None,
                        rep.verdict.is_equality == p.expected_equality, tuple(p.printed_discrepancies())))
    return rows


def _run_parallel(fn, tasks, jobs: int):
    if jobs <= 1 or len(tasks) <= 1:
        return [fn(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, tasks, chunksize=max(1, len(tasks) // (4 * jobs))))


def cmd_scan(args) -> int:
    if args.jobs < 1:
        raise UsageError("--jobs must be >= 1")
    lim = _coset_limit(args)
    ranges = {k: parse_range(getattr(args, k)) for k in ("m", "n", "p", "q", "x", "k", "shape", "variant")
              if getattr(args, k) is not None}
    skipped: list[str] = []
    rows: list[Row] = []
    if args.family:
        fam = args.family.lower()
        if fam not in FAMILIES:
            raise UsageError(f"unknown family {fam!r}; expected one of {', '.join(FAMILIES)}")
        names = FAMILY_PARAMS[fam]
        missing = [n for n in names if n not in ranges]
        if missing:
            raise UsageError(f"scan --family {fam} needs " + " ".join(f"--{n}" for n in missing))
        tasks = [(fam, ps, lim) for ps in itertools.product(*(ranges[n] for n in names))]
        for out in _run_parallel(_family_task, tasks, args.jobs):
            skipped.append(out) if isinstance(out, str) else rows.append(out)
    else:
        kind = args.quotient.lower()
        if kind not in QUOTIENT_KINDS:
            raise UsageError(f"unknown quotient kind {kind!r}; expected one of {', '.join(QUOTIENT_KINDS)}")
        names = {
            "dihedral": ("m",), "elem-abelian": ("p",), "frobenius-pq": ("p", "q"), "frobenius-p2q": ("p", "q"),
            "p3-abelian": ("p", "variant"), "p3-nonabelian": ("p", "shape", "k"),
        }[kind]
        required = names[:1] + (("q",) if kind.startswith("frobenius") else ())
        missing = [n for n in required + ("x",) if n not in ranges]
        if missing:
            raise UsageError(f"scan --quotient {kind} needs " + " ".join(f"--{n}" for n in missing))
        used = [n for n in names if n in ranges]
        tasks = [
            QuotientCase(kind, ps, x, args.subcase)
            for ps in itertools.product(*(ranges[n] for n in used))
            for x in ranges["x"]
        ]
        for out in _run_parallel(_quotient_task, tasks, args.jobs):
            skipped.append(out) if isinstance(out, str) else rows.extend(out)
    if skipped:
        print(f"skipped {len(skipped)} parameter tuple(s) outside the legal set", file=sys.stderr)
    if not rows:
        raise UsageError("no legal parameter tuples in the requested ranges")
    _emit(format_rows(rows, args.format), args.output)
    failures = [r for r in rows if r.failed]
    if failures:
        print(f"{len(failures)} of {len(rows)} record(s) violated or mismatched", file=sys.stderr)
    return 2 if failures else 0


def cmd_props(args) -> int:
    G, _ = _load_group(args)
    Z = center(G)
    pr = commuting_probability(G)
    try:
        fd = frobenius_decomposition(G)
        frob = "no" if fd is None else f"yes: kernel order {fd[0]}, complement order {fd[1]}"
    except CapExceeded as exc:
        frob = f"unknown ({exc})"
    rep = zagreb_report(ccc_graph(G))
    doc = {
        "name": G.name,
        "order": G.order,
        "num_classes": len(conjugacy_data(G).classes),
        "commuting_probability": str(pr),
        "distinct_centralizers": distinct_centralizer_count(G),
        "center_order": len(Z),
        "central_quotient": str(recognize_structure(quotient_by_center(G))) if len(Z) < G.order else None,
        "frobenius": frob,
        "ccc_verdict": rep.verdict.value,
    }
    if args.format == "json":
        text = json.dumps(doc, indent=2, sort_keys=True) + "\n"
    else:
        width = max(map(len, doc))
        text = "".join(f"{k.ljust(width)}  {v}\n" for k, v in doc.items())
    _emit(text, args.output)
    return 2 if rep.verdict is Verdict.VIOLATED else 0


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="ccczagreb", description="CCC graphs of finite groups and the Zagreb-index inequality.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--coset-limit", type=int, default=None,
                        help="coset table cap (default from CCCZ_COSET_LIMIT or 1000000)")
    common.add_argument("--output", "-o", help="write to this file instead of stdout")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("family", parents=[common], help="build a group and describe it")
    _add_group_args(p)
    p.add_argument("--format", choices=("table", "json"), default="table")
    p.add_argument("--dump", help="also write the group as JSON to this path")
    p.set_defaults(func=cmd_family)

    p = sub.add_parser("ccc", parents=[common], help="emit the CCC graph")
    _add_group_args(p)
    p.add_argument("--format", choices=("dot", "json"), default="dot")
    p.set_defaults(func=cmd_ccc)

    p = sub.add_parser("report", parents=[common], help="Zagreb report for a group, graph, or decomposition")
    _add_group_args(p, required=False)
    p.add_argument("--graph", help="graph expression, e.g. star:5+K:3")
    p.add_argument("--decomposition", help="clique union, e.g. 2K4+K1")
    p.add_argument("--format", choices=("table", "csv", "json"), default="table")
    p.set_defaults(func=cmd_report)

    p = sub.add_parser("verify", parents=[common], help="check one group against its predicted structure")
    _add_group_args(p)
    p.add_argument("--quotient", help="force a central-quotient case, e.g. elem-abelian:3 or frobenius-p2q:2,3,a4")
    p.add_argument("--format", choices=("table", "csv", "json"), default="table")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("scan", parents=[common], help="sweep a family or quotient case over parameter ranges")
    sel = p.add_mutually_exclusive_group(required=True)
    sel.add_argument("--family", help=f"one of {', '.join(FAMILIES)}")
    sel.add_argument("--quotient", help=f"one of {', '.join(QUOTIENT_KINDS)}")
    for name in ("m", "n", "p", "q", "x", "k", "shape", "variant"):
        p.add_argument(f"--{name}", help="range such as 3..40 or 2,3,5")
    p.add_argument("--subcase", choices=("a4", "p<q", "p>q"), help="frobenius-p2q subcase")
    p.add_argument("--jobs", "-j", type=int, default=1, help="worker processes")
    p.add_argument("--format", choices=("table", "csv", "json"), default="table")
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("props", parents=[common], help="commuting probability, centralizers, Frobenius check")
    _add_group_args(p)
    p.add_argument("--format", choices=("table", "json"), default="table")
    p.set_defaults(func=cmd_props)
    return ap


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except LimitExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
    except (UsageError, GroupError, GraphError, PresentationError, DivisibilityError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
    return 1


if __name__ == "__main__":
    sys.exit(main())
