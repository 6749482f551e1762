"""End-to-end acceptance checks, one test per criterion, zero tolerance.

Run ``pytest tests/test_acceptance.py -v`` for a pass/fail line per
criterion in the terminal summary.  Criterion 6 is expected to fail: the
brute-force class graphs of G(p, m, n) with n >= 2 are not the stated shape
and reach equality (see the decisions ledger for the analysis).
"""

from __future__ import annotations

import random
import time
from fractions import Fraction

import pytest

from ccczagreb.ccc import (
    CliqueDecomposition,
    ccc_graph,
    ccc_graph_all_pairs,
    detect_clique_union,
    parse_decomposition,
    parse_graph_expr,
)
from ccczagreb.cli import main
from ccczagreb.families import FamilySpec, build_aux, build_family, family_presentation, parse_aux
from ccczagreb.group import (
    StructureTag,
    center,
    commuting_probability,
    conjugacy_data,
    distinct_centralizer_count,
    quotient_by_center,
    recognize_structure,
)
from ccczagreb.predictions import (
    QuotientCase,
    closed_form_indices,
    predicted_decomposition,
    quotient_cases_for,
    quotient_prediction,
    verify_group,
)
from ccczagreb.presentation import coset_enumerate
from ccczagreb.zagreb import Verdict, zagreb_generic, zagreb_report

from conftest import group, small_corpus


def family_sweep(family: str, params: list[tuple[int, ...]], equality_at):
    """Brute force vs prediction for each spec; returns (records, list of failure messages)."""
    records, problems = {}, []
    for ps in params:
        spec = FamilySpec(family, ps)
        G = build_family(spec)
        pred = predicted_decomposition(spec)
        rec = verify_group(G, [pred])
        records[ps] = rec
        if not rec.structure_match:
            problems.append(f"{spec}: brute {rec.brute_decomposition} vs predicted {pred.decomposition}")
        generic = zagreb_generic(ccc_graph(G))
        if not (generic == (pred.closed_m1, pred.closed_m2) == (rec.report.m1, rec.report.m2)):
            problems.append(f"{spec}: indices brute {generic} vs closed {(pred.closed_m1, pred.closed_m2)}")
        want_eq = equality_at(ps)
        if rec.verdict.is_equality != want_eq:
            problems.append(f"{spec}: verdict {rec.verdict.value}, equality expected {want_eq}")
        if not want_eq and rec.verdict is not Verdict.STRICT:
            problems.append(f"{spec}: verdict {rec.verdict.value}, expected strict")
    return records, problems


def values(rec):
    r = rec.report
    return r.m1, r.m2, r.num_vertices, r.num_edges


def test_criterion_01_dihedral_sweep():
    start = time.perf_counter()
    recs, problems = family_sweep("dihedral", [(m,) for m in range(3, 61)], lambda ps: ps[0] in (3, 4, 6))
    elapsed = time.perf_counter() - start
    assert not problems, problems
    for ps, rec in recs.items():
        assert closed_form_indices(FamilySpec("dihedral", ps)) == (rec.report.m1, rec.report.m2)
    assert values(recs[(5,)]) == (2, 1, 3, 1)
    assert values(recs[(6,)]) == (4, 2, 4, 2)
    assert elapsed < 10, f"sweep took {elapsed:.1f}s"


def test_criterion_02_dicyclic_sweep():
    recs, problems = family_sweep("dicyclic", [(m,) for m in range(2, 31)], lambda ps: ps[0] in (2, 3))
    assert not problems, problems
    assert recs[(2,)].brute_decomposition == parse_decomposition("3K1")
    assert values(recs[(2,)]) == (0, 0, 3, 0) and recs[(2,)].verdict is Verdict.VACUOUS
    assert values(recs[(3,)]) == (4, 2, 4, 2)


def test_criterion_03_semidihedral_sweep():
    recs, problems = family_sweep("semidihedral", [(m,) for m in range(2, 16)], lambda ps: ps[0] == 3)
    assert not problems, problems
    assert values(recs[(2,)]) == (12, 12, 5, 3) and recs[(2,)].verdict is Verdict.STRICT
    assert values(recs[(3,)]) == (72, 108, 8, 12) and recs[(3,)].verdict is Verdict.EQUALITY


def test_criterion_04_v8m_sweep():
    recs, problems = family_sweep("v8m", [(m,) for m in range(1, 16)], lambda ps: ps[0] in (1, 2))
    assert not problems, problems
    assert recs[(2,)].brute_decomposition == parse_decomposition("3K2")
    assert values(recs[(2,)]) == (6, 3, 6, 3)


def test_criterion_05_unm_sweep():
    params = [(n, m) for n in range(2, 5) for m in range(3, 17)]
    assert max(2 * n * m for n, m in params) <= 128
    recs, problems = family_sweep("unm", params, lambda ps: ps[1] in (3, 4, 6))
    assert not problems, problems
    rec = recs[(2, 3)]
    assert rec.brute_decomposition == parse_decomposition("2K2")
    assert rec.predicted.case_label == "unm/m-odd"


def test_criterion_06_gpmn_sweep():
    params = [(2, m, n) for m in range(1, 7) for n in range(1, 7) if m + n <= 7]
    params += [(3, m, n) for m in range(1, 4) for n in range(1, 4) if m + n <= 4]
    params += [(5, m, n) for m in range(1, 3) for n in range(1, 3) if m + n <= 3]
    d8 = detect_clique_union(ccc_graph(build_family(FamilySpec("dihedral", (4,)))))
    g211 = detect_clique_union(ccc_graph(build_family(FamilySpec("gpmn", (2, 1, 1)))))
    assert g211 == d8 == parse_decomposition("3K1")
    _, problems = family_sweep("gpmn", params, lambda ps: ps[2] == 1)
    assert not problems, problems


def test_criterion_07_heisenberg_quotients():
    for p in (2, 3, 5):
        G = build_aux(parse_aux(f"heisenberg:{p}"))
        rec = verify_group(G, quotient_prediction(QuotientCase("elem-abelian", (p,), p)))
        assert rec.structure_match
        assert rec.brute_decomposition == CliqueDecomposition.of([(p + 1, p - 1)])
        assert rec.verdict.is_equality
    rec = verify_group(build_aux(parse_aux("heisenberg:3")), quotient_prediction(QuotientCase("elem-abelian", (3,), 3)))
    printed = {pf.source: pf for pf in rec.predicted.printed}["order p^3 corollary"]
    assert printed.m1 == rec.report.m1 == 8
    assert printed.m2 == 8 and rec.report.m2 == rec.predicted.closed_m2 == 4
    assert any("order p^3 corollary" in n and "= 8" in n and "gives 4" in n for n in rec.discrepancy_notes)
    assert rec.report.lhs == rec.report.rhs == 32
    assert rec.verdict is Verdict.EQUALITY


def test_criterion_08_frobenius_groups():
    cases = [
        ("frobenius:7,3", QuotientCase("frobenius-pq", (3, 7), 1), "2K2", None),
        ("a4", QuotientCase("frobenius-p2q", (2, 3), 1, "a4"), "K2+K1", "frobenius-p2q/a4/K2x+Kx"),
        ("f20style:5,4", QuotientCase("frobenius-p2q", (2, 5), 1, "p<q"), "K3+K1", "frobenius-p2q/p<q"),
        ("gendihedral:3", QuotientCase("frobenius-p2q", (3, 2), 1, "p>q"), "K4+K1", "frobenius-p2q/p>q/shape1"),
    ]
    for sel, case, shape, label in cases:
        G = build_aux(parse_aux(sel))
        assert case in quotient_cases_for(G)
        rec = verify_group(G, quotient_prediction(case))
        assert rec.structure_match and rec.brute_decomposition == parse_decomposition(shape), sel
        assert rec.verdict.holds
        if label:
            assert rec.predicted.case_label == label
    rec = verify_group(build_aux(parse_aux("frobenius:7,3")), quotient_prediction(cases[0][1]))
    assert rec.verdict is Verdict.EQUALITY and (rec.report.lhs, rec.report.rhs) == (2 * 4, 4 * 2)


def test_criterion_09_order_16_battery():
    battery = {
        "dihedral:8": ("dihedral", (4,)),
        "dicyclic:4": ("dihedral", (4,)),
        "semidihedral:2": ("dihedral", (4,)),
        "product:dihedral:4;2": ("elem-abelian", (2,)),
        "product:dicyclic:2;2": ("elem-abelian", (2,)),
        "modular:2,4": ("elem-abelian", (2,)),
    }
    for sel, (kind, params) in battery.items():
        G = group(sel)
        assert G.order == 16
        Q = quotient_by_center(G)
        want_q = StructureTag("dihedral", (4,)) if kind == "dihedral" else StructureTag("elementary-abelian", (2, 2))
        assert recognize_structure(Q) == want_q, sel
        assert detect_clique_union(ccc_graph(G)) is not None, sel
        rec = verify_group(G, quotient_prediction(QuotientCase(kind, params, len(center(G)))))
        assert rec.structure_match, (sel, rec.discrepancy_notes)
        assert rec.verdict is not Verdict.VIOLATED


def test_criterion_10_counterexample_graph(capsys):
    rep = zagreb_report(parse_graph_expr("star:5+K:3"))
    assert (rep.m1, rep.m2, rep.num_vertices, rep.num_edges) == (42, 37, 9, 8)
    assert (rep.lhs, rep.rhs) == (333, 336) and rep.verdict is Verdict.VIOLATED
    assert main(["report", "--graph", "star:5+K:3"]) == 2
    capsys.readouterr()


def test_criterion_11_concluding_cross_checks():
    D8, D6 = group("dihedral:4"), group("dihedral:3")
    assert distinct_centralizer_count(D8) == 4
    assert recognize_structure(quotient_by_center(D8)) == StructureTag("elementary-abelian", (2, 2))
    assert distinct_centralizer_count(D6) == 5
    assert recognize_structure(quotient_by_center(D6)) == StructureTag("dihedral", (3,))
    assert commuting_probability(D8) == Fraction(5, 8)
    assert commuting_probability(D6) == Fraction(1, 2)
    for G in (D8, D6):
        assert zagreb_report(ccc_graph(G)).verdict.holds


def test_criterion_12_oracle_equivalence():
    corpus = small_corpus(100)
    assert len(corpus) > 150
    for sel in corpus:
        G = group(sel)
        assert ccc_graph(G) == ccc_graph_all_pairs(G), sel


def test_criterion_13_presentation_agreement():
    pool = (
        [FamilySpec("dihedral", (m,)) for m in range(3, 61)]
        + [FamilySpec("dicyclic", (m,)) for m in range(2, 31)]
        + [FamilySpec("semidihedral", (m,)) for m in range(2, 16)]
        + [FamilySpec("unm", (n, m)) for n in range(2, 5) for m in range(3, 17)]
        + [FamilySpec("gpmn", ps) for ps in [(2, 1, 1), (2, 1, 2), (2, 2, 1), (2, 2, 2), (3, 1, 1), (3, 1, 2),
                                              (2, 1, 3), (2, 3, 2), (5, 1, 1)]]
    )
    sample = random.Random(20240601).sample(pool, 20)
    for spec in sample:
        G = build_family(spec)
        H = coset_enumerate(family_presentation(spec))
        assert G.order == H.order == spec.order, spec
        assert sorted(conjugacy_data(G).class_sizes) == sorted(conjugacy_data(H).class_sizes), spec
        assert len(center(G)) == len(center(H)), spec
        assert detect_clique_union(ccc_graph(G)) == detect_clique_union(ccc_graph(H)), spec


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q"]))
