"""First and second Zagreb indices and the exact M2/|E| >= M1/|V| verdict."""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass
from fractions import Fraction

from .ccc import CliqueDecomposition, SimpleGraph, detect_clique_union


class DomainError(ValueError):
    pass


class Verdict(str, enum.Enum):
    STRICT = "strict"
    EQUALITY = "equality"
    VIOLATED = "violated"
    VACUOUS = "vacuous-equality"

    @property
    def holds(self) -> bool:
        return self is not Verdict.VIOLATED

    @property
    def is_equality(self) -> bool:
        return self in (Verdict.EQUALITY, Verdict.VACUOUS)


def zagreb_generic(g: SimpleGraph) -> tuple[int, int]:
    deg = g.degrees()
    m1 = sum(d * d for d in deg)
    m2 = sum(deg[u] * deg[v] for u, v in g.edges())
    return m1, m2


def zagreb_from_decomposition(d: CliqueDecomposition) -> tuple[int, int]:
    m1 = sum(l * m * (m - 1) ** 2 for l, m in d.parts)
    # m(m-1) is even, so each term is integral
    m2 = sum(l * (m * (m - 1) ** 3 // 2) for l, m in d.parts)
    return m1, m2


def conjecture_verdict(m1: int, m2: int, num_vertices: int, num_edges: int) -> Verdict:
    if num_vertices == 0 and (m1 or m2 or num_edges):
        raise DomainError("non-zero indices or edges on a graph with no vertices")
    if num_edges == 0:
        return Verdict.VACUOUS
    lhs, rhs = m2 * num_vertices, m1 * num_edges
    if lhs > rhs:
        return Verdict.STRICT
    if lhs == rhs:
        return Verdict.EQUALITY
    return Verdict.VIOLATED


@dataclass(frozen=True)
class ZagrebReport:
    m1: int
    m2: int
    num_vertices: int
    num_edges: int
    verdict: Verdict
    decomposition: CliqueDecomposition | None = None

    @property
    def lhs(self) -> int:
        return self.m2 * self.num_vertices

    @property
    def rhs(self) -> int:
        return self.m1 * self.num_edges

    @property
    def ratios(self) -> tuple[Fraction, Fraction] | None:
        if self.num_edges == 0 or self.num_vertices == 0:
            return None
        return Fraction(self.m2, self.num_edges), Fraction(self.m1, self.num_vertices)

    def as_dict(self) -> dict:
        r = self.ratios
        return {
            "m1": self.m1,
            "m2": self.m2,
            "num_vertices": self.num_vertices,
            "num_edges": self.num_edges,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "verdict": self.verdict.value,
            "ratios": None if r is None else [str(r[0]), str(r[1])],
            "decomposition": None if self.decomposition is None else str(self.decomposition),
        }

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), sort_keys=True)


def report_from_counts(m1: int, m2: int, v: int, e: int, d: CliqueDecomposition | None = None) -> ZagrebReport:
    return ZagrebReport(m1, m2, v, e, conjecture_verdict(m1, m2, v, e), d)


def zagreb_report(g: SimpleGraph) -> ZagrebReport:
    m1, m2 = zagreb_generic(g)
    d = detect_clique_union(g)
    if d is not None and zagreb_from_decomposition(d) != (m1, m2):
        raise AssertionError(f"closed form {zagreb_from_decomposition(d)} disagrees with degree sums {(m1, m2)}")
    return report_from_counts(m1, m2, g.num_vertices, g.num_edges, d)


def decomposition_report(d: CliqueDecomposition) -> ZagrebReport:
    m1, m2 = zagreb_from_decomposition(d)
    return report_from_counts(m1, m2, d.num_vertices, d.num_edges, d)
