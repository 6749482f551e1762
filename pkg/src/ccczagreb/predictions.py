"""Predicted CCC-graph structures, printed closed forms, and brute-force verification.

Each prediction is a clique decomposition; its indices follow from the
clique-union formulas and are the reference values.  The polynomials printed
in the theorem statements are carried alongside as ``PrintedForm`` values so
any disagreement with the decomposition shows up as a discrepancy note
instead of being silently reconciled.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction as F

from .ccc import CliqueDecomposition, ccc_graph, detect_clique_union
from .families import FamilySpec, InvalidParams
from .group import (
    CapExceeded,
    FiniteGroup,
    center,
    frobenius_decomposition,
    is_abelian,
    is_prime,
    prime_factors,
    quotient_by_center,
    recognize_structure,
)
from .zagreb import Verdict, ZagrebReport, zagreb_from_decomposition, zagreb_report


class DivisibilityError(ValueError):
    """A predicted clique size is not a positive integer for the given |Z(G)|."""


@dataclass(frozen=True)
class PrintedForm:
    source: str
    m1: F
    m2: F


@dataclass(frozen=True)
class PredictedStructure:
    case_label: str
    decomposition: CliqueDecomposition
    closed_m1: int
    closed_m2: int
    expected_equality: bool
    printed: tuple[PrintedForm, ...] = ()

    def printed_discrepancies(self) -> list[str]:
        notes = []
        for pf in self.printed:
            for idx, val, ref in (("M1", pf.m1, self.closed_m1), ("M2", pf.m2, self.closed_m2)):
                if val != ref:
                    notes.append(
                        f"{self.case_label}: printed {idx} ({pf.source}) = {val} "
                        f"but the decomposition {self.decomposition} gives {ref}"
                    )
        return notes


def _sizes(label: str, pieces: list[tuple[F | int, F | int]]) -> CliqueDecomposition:
    out = []
    for l, m in pieces:
        l, m = F(l), F(m)
        if l.denominator != 1 or m.denominator != 1 or m < 1 or l < 0:
            raise DivisibilityError(f"{label}: clique part {l}K_{m} is not a positive integral size")
        out.append((int(l), int(m)))
    return CliqueDecomposition.of(out)


def _structure(label, pieces, expected_equality, printed=()) -> PredictedStructure:
    d = _sizes(label, pieces)
    m1, m2 = zagreb_from_decomposition(d)
    return PredictedStructure(label, d, m1, m2, expected_equality, tuple(printed))


# --- families -----------------------------------------------------------------

EQUALITY_PARAMS = {
    "dihedral": {3, 4, 6},
    "dicyclic": {2, 3},
    "semidihedral": {3},
    "v8m": {1, 2},
    "unm": {3, 4, 6},
}


def _family_expected_equality(spec: FamilySpec) -> bool:
    f = spec.family
    if f == "gpmn":
        return spec.named["n"] == 1
    return spec.named["m"] in EQUALITY_PARAMS[f]


def _family_case(spec: FamilySpec) -> tuple[str, list[tuple]]:
    f, v = spec.family, spec.named
    if f == "dihedral":
        m = v["m"]
        if m % 2:
            return "dihedral/m-odd", [(1, F(m - 1, 2)), (1, 1)]
        if (m // 2) % 2 == 0:
            return "dihedral/m-even/half-even", [(1, F(m, 2) - 1), (2, 1)]
        return "dihedral/m-even/half-odd", [(1, F(m, 2) - 1), (1, 2)]
    if f == "dicyclic":
        m = v["m"]
        if m % 2 == 0:
            return "dicyclic/m-even", [(1, m - 1), (2, 1)]
        return "dicyclic/m-odd", [(1, m - 1), (1, 2)]
    if f == "semidihedral":
        m = v["m"]
        if m % 2 == 0:
            return "semidihedral/m-even", [(1, 2 * m - 1), (2, 1)]
        return "semidihedral/m-odd", [(1, 2 * m - 2), (1, 4)]
    if f == "v8m":
        m = v["m"]
        if m % 2 == 0:
            return "v8m/m-even", [(1, 2 * m - 2), (2, 2)]
        return "v8m/m-odd", [(1, 2 * m - 1), (2, 1)]
    if f == "unm":
        n, m = v["n"], v["m"]
        if m % 2:
            return "unm/m-odd", [(1, n), (1, F(n * (m - 1), 2))]
        if (m // 2) % 2 == 0:
            return "unm/m-even/half-even", [(2, n), (1, n * (F(m, 2) - 1))]
        return "unm/m-even/half-odd", [(1, 2 * n), (1, n * (F(m, 2) - 1))]
    p, m, n = v["p"], v["m"], v["n"]
    big = p ** (m + n - 1) - p ** (m + n - 2)
    return "gpmn", [(2, big), (p**n - p ** (n - 1), p**m - p ** (m - 1))]


def closed_form_indices(spec: FamilySpec) -> tuple[F, F]:
    """M1, M2 exactly as the theorem statement prints them (before any cross-check)."""
    f, v = spec.family, spec.named
    if f == "dihedral":
        m = v["m"]
        if m % 2:
            return F((m - 1) * (m - 3) ** 2, 8), F((m - 1) * (m - 3) ** 3, 32)
        base1, base2 = F((m - 2) * (m - 4) ** 2, 8), F((m - 2) * (m - 4) ** 3, 32)
        if (m // 2) % 2 == 0:
            return base1, base2
        return base1 + 2, base2 + 1
    if f == "dicyclic":
        m = v["m"]
        m1, m2 = F((m - 1) * (m - 2) ** 2), F((m - 1) * (m - 2) ** 3, 2)
        return (m1, m2) if m % 2 == 0 else (m1 + 2, m2 + 1)
    if f == "semidihedral":
        m = v["m"]
        if m % 2 == 0:
            return F((2 * m - 1) * (2 * m - 2) ** 2), F((2 * m - 1) * (2 * m - 2) ** 3, 2)
        return F((2 * m - 2) * (2 * m - 3) ** 2 + 36), F((m - 1) * (2 * m - 3) ** 3 + 54)
    if f == "v8m":
        m = v["m"]
        if m % 2 == 0:
            return F((2 * m - 2) * (2 * m - 3) ** 2 + 4), F((m - 1) * (2 * m - 3) ** 3 + 2)
        return F((2 * m - 1) * (2 * m - 2) ** 2), F((2 * m - 1) * (2 * m - 2) ** 3, 2) + 1
    if f == "unm":
        n, m = v["n"], v["m"]
        if m % 2:
            s = m * n - n
            return F(8 * n * (n - 1) ** 2 + s * (s - 2) ** 2, 8), F(16 * n * (n - 1) ** 3 + s * (s - 2) ** 3, 32)
        s = m * n - 2 * n
        c = n - 1 if (m // 2) % 2 == 0 else 2 * n - 1
        return F(16 * n * c**2 + s * (s - 2) ** 2, 8), F(32 * n * c**3 + s * (s - 2) ** 3, 32)
    return _gpmn_printed(v["p"], v["m"], v["n"])


def _gpmn_printed(p: int, m: int, n: int) -> tuple[F, F]:
    def P(e: int) -> F:
        return F(p) ** e

    a, b = 3 * m + 3 * n, 2 * m + 2 * n
    m1 = (
        2 * P(a - 3) - 6 * P(a - 4) + 6 * P(a - 5) - 2 * P(a - 6) - 4 * P(b - 2) + P(3 * m + n - 4)
        - 4 * P(b - 4) + P(3 * m + n) - 4 * P(3 * m + n - 1) + 6 * P(3 * m + n - 2) - 4 * P(3 * m + n - 3)
        + 8 * P(b - 3) - 2 * P(2 * m + n) + 6 * P(2 * m + n - 1) - 6 * P(2 * m + n - 2)
        + 2 * P(2 * m + n - 3) + P(m + n) - P(m + n - 2)
    )
    c = 4 * m + 4 * n
    m2 = F(1, 2) * (
        2 * P(c - 4) - 8 * P(c - 5) + 6 * P(a - 6) - 8 * P(c - 7) + 2 * P(c - 8) - P(m + n)
        - 6 * P(a - 3) + 18 * P(a - 4) - 18 * P(a - 5) + 12 * P(c - 6) + 6 * P(b - 2)
        + 6 * P(b - 4) + P(4 * m + n) - 5 * P(4 * m + n - 1) + 10 * P(4 * m + n - 2)
        - 10 * P(4 * m + n - 3) + 5 * P(4 * m + n - 4)
        + 12 * P(3 * m + n - 1) - 18 * P(3 * m + n - 2) + 12 * P(3 * m + n - 3) - 3 * P(3 * m + n - 4)
        + 3 * P(2 * m + n) - 9 * P(2 * m + n - 1)
        - 12 * P(b - 3) - 3 * P(3 * m + n) - P(4 * m + n - 5) + 9 * P(2 * m + n - 2)
        - 3 * P(2 * m + n - 3) + P(m + n - 2)
    )
    return m1, m2


def predicted_decomposition(spec: FamilySpec) -> PredictedStructure:
    label, pieces = _family_case(spec)
    m1, m2 = closed_form_indices(spec)
    return _structure(label, pieces, _family_expected_equality(spec), [PrintedForm("theorem statement", m1, m2)])


# --- central quotients ----------------------------------------------------------

QUOTIENT_KINDS = ("dihedral", "elem-abelian", "frobenius-pq", "frobenius-p2q", "p3-abelian", "p3-nonabelian")


@dataclass(frozen=True)
class QuotientCase:
    """Hypothesis G/Z(G) = (kind) with x = |Z(G)|.

    params: dihedral (m,); elem-abelian (p,); frobenius-pq (p, q) with kernel
    Z_q and complement Z_p; frobenius-p2q (p, q) with ``subcase`` one of
    'a4', 'p<q', 'p>q' (inferred when omitted); p3-abelian (p,) or
    (p, variant); p3-nonabelian (p,) or (p, shape, k).  Omitted trailing
    params mean every alternative the theorem allows.
    """

    kind: str
    params: tuple[int, ...]
    x: int
    subcase: str | None = None

    def __post_init__(self) -> None:
        if self.kind not in QUOTIENT_KINDS:
            raise InvalidParams(f"unknown quotient kind {self.kind!r}; expected one of {', '.join(QUOTIENT_KINDS)}")
        if self.x < 1:
            raise InvalidParams("x = |Z(G)| must be positive")

    def __str__(self) -> str:
        sub = f",{self.subcase}" if self.subcase else ""
        return f"{self.kind}:{','.join(map(str, self.params))}{sub};x={self.x}"


def quotient_prediction(case: QuotientCase) -> list[PredictedStructure]:
    """Every structure the matching theorem allows; candidates whose clique
    sizes are not integral for this x are dropped, and if none survive the
    hypothesis is impossible and DivisibilityError is raised."""
    builders = _quotient_builders(case)
    out, errors = [], []
    for build in builders:
        try:
            out.append(build())
        except DivisibilityError as exc:
            errors.append(str(exc))
    if not out:
        raise DivisibilityError("; ".join(errors))
    return out


def _need_prime(*ps: int) -> None:
    for p in ps:
        if not is_prime(p):
            raise InvalidParams(f"{p} is not prime")


def _quotient_builders(case: QuotientCase):
    k, ps, x = case.kind, case.params, case.x
    if k == "dihedral":
        (m,) = ps
        if m < 3:
            raise InvalidParams("dihedral quotient needs m >= 3")
        return [lambda: _dihedral_quotient(m, x)]
    if k == "elem-abelian":
        (p,) = ps
        _need_prime(p)
        return [lambda: _elem_abelian(p, x)]
    if k == "frobenius-pq":
        p, q = ps
        _need_prime(p, q)
        if (q - 1) % p:
            raise InvalidParams(f"no Frobenius group Z{q}:Z{p}: {p} does not divide {q}-1")
        return [lambda: _frobenius_pq(p, q, x)]
    if k == "frobenius-p2q":
        p, q = ps
        _need_prime(p, q)
        sub = case.subcase or ("a4" if (p, q) == (2, 3) else "p<q" if p < q else "p>q")
        if sub == "a4":
            return [lambda: _s("frobenius-p2q/a4/K2x+Kx", [(1, 2 * x), (1, x)], False, _a4_printed(x, False)),
                    lambda: _s("frobenius-p2q/a4/K2x+Kx/2", [(1, 2 * x), (1, F(x, 2))], False, _a4_printed(x, True))]
        if sub == "p<q":
            return [lambda: _s("frobenius-p2q/p<q", [(1, F(x * (q - 1), p * p)), (1, x * (p * p - 1))], False,
                               [PrintedForm("p<q case", *_p2q_less(p, q, x))])]
        if sub == "p>q":
            return [
                lambda: _s("frobenius-p2q/p>q/shape1", [(1, x * (q - 1)), (1, F(x * (p * p - 1), q))], False,
                           [PrintedForm("p>q first shape", *_p2q_greater1(p, q, x))]),
                lambda: _s("frobenius-p2q/p>q/shape2", [(1, x * (q - 1)), (p + 1, F(x * (p - 1), p * q))], False,
                           [PrintedForm("p>q second shape", *_p2q_greater2(p, q, x))]),
            ]
        raise InvalidParams(f"unknown frobenius-p2q subcase {sub!r}")
    if k == "p3-abelian":
        p = ps[0]
        _need_prime(p)
        variants = [ps[1]] if len(ps) > 1 else [1, 2]
        return [lambda v=v: _p3_abelian(p, x, v) for v in variants]
    if k == "p3-nonabelian":
        p = ps[0]
        _need_prime(p)
        if len(ps) == 3:
            combos = [(ps[1], ps[2])]
        elif len(ps) == 2:
            combos = [(ps[1], kk) for kk in (range(1, p + 1) if ps[1] in (1, 2) else [0])]
        else:
            combos = [(s, kk) for s in (1, 2) for kk in range(1, p + 1)] + [(3, 0), (4, 0), (5, 0)]
        return [lambda s=s, kk=kk: _p3_nonabelian(p, x, s, kk) for s, kk in combos]
    raise InvalidParams(f"unknown quotient kind {k!r}")


_s = _structure


def _dihedral_quotient(m: int, x: int) -> PredictedStructure:
    s = m * x - x
    if m % 2 == 0:
        printed = PrintedForm("dihedral-quotient theorem",
                              F(s * (s - 2) ** 2 + 2 * x * (x - 2) ** 2, 8), F(s * (s - 2) ** 3 + 2 * x * (x - 2) ** 3, 32))
        return _s("dihedral-quotient/m-even", [(1, F(x * (m - 1), 2)), (2, F(x, 2))], False, [printed])
    printed = PrintedForm("dihedral-quotient theorem",
                          F(s * (s - 2) ** 2 + 8 * x * (x - 1) ** 2, 8), F(s * (s - 2) ** 3 + 16 * x * (x - 1) ** 3, 32))
    # the statement claims strict inequality, but its own difference vanishes at m = 3
    return _s("dihedral-quotient/m-odd", [(1, F(x * (m - 1), 2)), (1, x)], m == 3, [printed])


def _log_exact(x: int, p: int) -> int | None:
    e = 0
    while x % p == 0:
        x //= p
        e += 1
    return e if x == 1 else None


def _elem_abelian(p: int, x: int) -> PredictedStructure:
    X = F(x)
    printed = [PrintedForm(
        "Zp x Zp theorem",
        X * (p * p - 1) / p**3 * (p * p * X**2 - 2 * p * X**2 + X**2 - 2 * p * p * X + 2 * p * X + p * p),
        X * (p * p - 1) / (2 * p**4) * (
            p**3 * X**3 - 3 * p * p * X**3 + 3 * p * X**3 - X**3 - 3 * p**3 * X**2 + 6 * p * p * X**2
            - 3 * p * X**2 + 3 * p**3 * X - 3 * p * p * X - p**3),
    )]
    e = _log_exact(x, p)
    if e is not None and e >= 1:
        n = e + 2
        printed.append(PrintedForm(f"order p^n corollary, n={n}", *_order_pn_printed(p, n)))
        if n == 3:
            printed.append(PrintedForm("order p^3 corollary", *_order_p3_printed(p)))
    return _s("elem-abelian", [(p + 1, F(x * (p - 1), p))], True, printed)


def _order_pn_printed(p: int, n: int) -> tuple[F, F]:
    def P(e: int) -> F:
        return F(p) ** e

    m1 = (P(3 * n - 5) - 2 * P(3 * n - 6) + 2 * P(3 * n - 8) - P(3 * n - 9) - 2 * P(2 * n - 3) + 2 * P(2 * n - 4)
          + 2 * P(2 * n - 5) - 2 * P(2 * n - 6) + P(n - 1) - P(n - 3))
    m2 = (P(4 * n - 7) - 3 * P(4 * n - 8) + 2 * P(4 * n - 9) + 2 * P(4 * n - 10) - 3 * P(4 * n - 11) + P(4 * n - 12)
          - 3 * P(3 * n - 5) + 6 * P(3 * n - 6) - 6 * P(3 * n - 8) + 3 * P(3 * n - 9) + 3 * P(2 * n - 3)
          - 3 * P(2 * n - 4) - 3 * P(2 * n - 5) + 3 * P(2 * n - 6) - P(n - 1) + P(n - 3))
    return m1, m2


def _order_p3_printed(p: int) -> tuple[F, F]:
    # transcribed verbatim, including the repeated p^3 term
    m1 = p**4 - 4 * p**3 + 3 * p**2 + 4 * p - 4
    m2 = p**5 - 6 * p**4 + 2 * p**3 + 9 * p**3 - 2 * p**2 - 12 * p + 8
    return F(m1), F(m2)


def _frobenius_pq(p: int, q: int, x: int) -> PredictedStructure:
    X = F(x)
    m1 = X / p**3 * (
        q**3 * X**2 - 3 * q**2 * X**2 + 3 * q * X**2 + p**6 * X**2 - 3 * p**5 * X**2 + 3 * p**4 * X**2
        - p**3 * X**2 - X**2 - 2 * p * q**2 * X + 4 * p * q * X - 2 * p**5 * X + 4 * p**4 * X - 2 * p**3 * X
        - 2 * p * X + p**2 * q + p**4 - p**3 - p**2)
    m2 = X / (2 * p**4) * (
        q**4 * X**3 - 4 * q**3 * X**3 + 6 * q**2 * X**3 - 4 * p * X**3 - p**3 * q - 4 * p**7 * X**3
        + 6 * p**6 * X**3 - 4 * p**5 * X**3 + 3 * p * X**2 + 3 * p**2 * q**2 * X - 3 * p * q**3 * X**2
        + 9 * p * q**2 * X**2 - 9 * p * q * X**2 - 3 * p**7 * X**2 + 9 * p**6 * X**2 - 9 * p**5 * X**2
        + 3 * p**4 * X**2 + p**4 * X**3 - 6 * p**2 * q * X + 3 * p**6 * X - 6 * p**5 * X + 3 * p**4 * X
        + 3 * p**2 * X + X**3 + p**8 * X**3 - p**5 + p**4 + p**3)
    # the difference carries the factor (p + q - p^2 - 1)^2, which vanishes when both cliques have equal size
    return _s("frobenius-pq", [(1, F(x * (q - 1), p)), (1, x * (p - 1))], q == p * p - p + 1,
              [PrintedForm("Frobenius pq theorem", m1, m2)])


def _a4_printed(x: int, half: bool) -> list[PrintedForm]:
    X = F(x)
    if half:
        return [PrintedForm("A4 case, K2x + Kx/2", (65 * X**3 - 68 * X**2 + 20 * X) / 8,
                            (257 * X**4 - 390 * X**3 + 204 * X**2 - 40 * X) / 32)]
    return [PrintedForm("A4 case, K2x + Kx", 9 * X**3 - 10 * X**2 + 3 * X, (17 * X**4 - 27 * X**3 + 15 * X**2 - 3 * X) / 2)]


def _p2q_less(p: int, q: int, x: int) -> tuple[F, F]:
    X = F(x)
    m1 = F(1, p**6) * (
        q**3 * X**3 - 3 * q**2 * X**3 + 3 * q * X**3 + p**12 * X**3 - 3 * p**10 * X**3 + 3 * p**8 * X**3
        - p**6 * X**3 - 2 * p**2 * q**2 * X**2 - X**3 + 4 * p**2 * q * X**2 + 4 * p**8 * X**2 - 2 * p**10 * X**2
        - 2 * p**6 * X**2 + p**4 * q * X - 2 * p**2 * X**2 + p**8 * X - p**4 * X - p**6 * X)
    m2 = F(1, 2 * p**8) * (
        q**4 * X**4 - 4 * q**3 * X**4 + 6 * q**2 * X**4 - 4 * q * X**4 + p**16 * X**4 - 4 * p**14 * X**4
        - 4 * p**10 * X**4 + 6 * p**12 * X**4 + X**4 + p**8 * X**4 - 3 * p**2 * q**3 * X**3
        + 9 * p**2 * q**2 * X**3 - 9 * p**2 * q * X**3 + 9 * p**12 * X**3 - 3 * p**14 * X**3 + 3 * p**8 * X**3
        - 9 * p**10 * X**3 + 3 * p**4 * q**2 * X**2 + 3 * p**2 * X**3 - 6 * p**4 * q * X**2 + 3 * p**12 * X**2
        - 6 * p**10 * X**2 + 3 * p**4 * X**2 + 3 * p**8 * X**2 - p**10 * X - p**6 * q * X + p**6 * X + p**8 * X)
    return m1, m2


def _p2q_greater1(p: int, q: int, x: int) -> tuple[F, F]:
    X = F(x)
    m1 = F(1, q**3) * (
        q**6 * X**3 - 3 * q**5 * X**3 + 3 * q**4 * X**3 - q**3 * X**3 + p**6 * X**3 - 3 * p**4 * X**3
        + 3 * p**2 * X**3 - 2 * q**5 * X**2 - X**3 + 4 * q**4 * X**2 - 2 * q**3 * X**2 - 2 * p**4 * q * X**2
        + 4 * p**2 * q * X**2 - 2 * q * X**2 + q**4 * X - q**3 * X + p**2 * q**2 * X - q**2 * X)
    m2 = F(1, 2 * q**4) * (
        q**8 * X**4 - 4 * q**7 * X**4 + 6 * q**6 * X**4 - 4 * q**5 * X**4 + p**8 * X**4 + q**4 * X**4
        - 4 * p**6 * X**4 + 6 * p**4 * X**4 - 4 * p**2 * X**4 + X**4 - 3 * q**7 * X**3 + 9 * q**6 * X**3
        - 9 * q**5 * X**3 + 3 * q**4 * X**3 - 3 * p**6 * q * X**3 + 9 * p**4 * q * X**3 - 9 * p**2 * q * X**3
        + 3 * q**6 * X**2 + 3 * q * X**3 - 6 * q**5 * X**2 + 3 * p**4 * q**2 * X**2 + 3 * q**4 * X**2
        - 6 * p**2 * q**2 * X**2 + 3 * q**2 * X**2 - q**5 * X + q**4 * X + q**3 * X - p**2 * q**3 * X)
    return m1, m2


def _p2q_greater2(p: int, q: int, x: int) -> tuple[F, F]:
    X = F(x)
    m1 = F(1, p**3 * q**3) * (
        p**3 * q**6 * X**3 - 3 * p**3 * q**5 * X**3 + 3 * p**3 * q**4 * X**3 - p**3 * q**3 * X**3 + p**4 * X**3
        - 2 * p**3 * X**3 + 2 * p * X**3 - 2 * p**3 * q**5 * X**2 - X**3 + 4 * p**3 * q**4 * X**2
        - 2 * p**4 * q * X**2 - 2 * p**3 * q**3 * X**2 + 2 * p**2 * q * X**2 + 2 * p**3 * q * X**2
        + p**3 * q**4 * X - 2 * p * q * X**2 + p**4 * q**2 * X - p**3 * q**3 * X - p**2 * q**2 * X)
    m2 = F(1, 2 * p**4 * q**4) * (
        p**4 * q**8 * X**4 - 4 * p**4 * q**7 * X**4 + 6 * p**4 * q**6 * X**4 - 4 * p**4 * q**5 * X**4
        + p**4 * q**4 * X**4 + p**5 * X**4 - 3 * p**4 * X**4 + 2 * p**2 * X**4 + 2 * p**3 * X**4 - 3 * p * X**4
        + X**4 - 3 * p**4 * q**7 * X**3 + 9 * p**4 * q**6 * X**3 - 9 * p**4 * q**5 * X**3 + 3 * p**4 * q**4 * X**3
        - 3 * p**5 * q * X**3 + 6 * p**4 * q * X**3 - 6 * p**2 * q * X**3 + 3 * p**4 * q**6 * X**2
        + 3 * p * q * X**3 - 6 * p**4 * q**5 * X**2 + 3 * p**5 * q**2 * X**2 + 3 * p**4 * q**4 * X**2
        - 3 * p**3 * q**2 * X**2 - 3 * p**4 * q**2 * X**2 + 3 * p**2 * q**2 * X**2 - p**4 * q**5 * X
        + p**4 * q**4 * X + p**3 * q**3 * X - p**5 * q**3 * X)
    return m1, m2


def _p3_abelian(p: int, x: int, variant: int) -> PredictedStructure:
    X = F(x)
    big, small = F(x * (p * p - 1), p), F(x * (p - 1), p * p)
    if variant == 1:
        m1 = X * (p - 1) / p**4 * (
            p**6 * X**2 - 2 * p**4 * X**2 + 2 * p**2 * X**2 - 2 * p**5 * X + 2 * p**4 + p**5 * X**2
            - 2 * p**3 * X**2 - p * X**2 - 2 * p**4 * X + 4 * p**2 * X + p**3 + X**2)
        m2 = X * (p - 1) / (2 * p**6) * (
            p**9 * X**3 + p**8 * X**3 - 3 * p**8 * X**2 - 3 * p**7 * X**3 - 3 * p**7 * X**2 - 3 * p**6 * X**3
            + 6 * p**6 * X**2 + 3 * p**7 * X + 3 * p**6 * X + 3 * p**5 * X**3 + 6 * p**5 * X**2 + 3 * p**4 * X**3
            - 6 * p**4 * X**2 - 6 * p**4 * X + 3 * p**3 * X**2 - 4 * p**2 * X**3 - p**5 - 2 * p**6 - X**3
            - 3 * p**2 * X**2 + 3 * p * X**3)
        return _s("p3-abelian/Km+p^2Kn", [(1, big), (p * p, small)], False, [PrintedForm("p^3 abelian quotient", m1, m2)])
    if variant == 2:
        return _s("p3-abelian/(p^2+p+1)Kn", [(p * p + p + 1, small)], True,
                  [PrintedForm("p^3 abelian quotient", *_uniform_printed(p, x))])
    raise InvalidParams(f"p3-abelian variant must be 1 or 2, got {variant}")


def _uniform_printed(p: int, x: int) -> tuple[F, F]:
    X = F(x)
    m1 = X * (p**3 - 1) / p**6 * (p * p * X**2 - 2 * p * X**2 + X**2 - 2 * p**3 * X + 2 * p * p * X + p**4)
    m2 = X * (p**3 - 1) / (2 * p**8) * (
        p**3 * X**3 - 3 * p**2 * X**3 + 3 * p * X**3 - X**3 - 3 * p**4 * X**2 + 6 * p**3 * X**2
        - 3 * p**2 * X**2 + 3 * p**5 * X - 3 * p**4 * X - p**6)
    return m1, m2


def _p3_nonabelian(p: int, x: int, shape: int, k: int) -> PredictedStructure:
    X = F(x)
    m, n1, n2 = F(x * (p * p - 1), p), F(x * (p - 1), p * p), F(x * (p - 1), p)
    if shape in (1, 2) and not 1 <= k <= p:
        raise InvalidParams(f"shape {shape} needs 1 <= k <= p, got k={k}")
    if shape == 1:
        m1 = X * (p - 1) / p**6 * (
            p**8 * X**2 + p**7 * X**2 - 2 * p**7 * X - p**6 * X**2 - 4 * p**6 * X - 4 * p**5 * X**2
            + 2 * p**4 * X**2 + p**3 * X**2 + 2 * p**4 * X + p**5 + 4 * p**5 * X + 2 * p**6 - 2 * k * p**2 * X**2
            + k * p * X**2 - 4 * k * p**4 * X + 2 * k * p**3 * X - k * p**5 * X**2 + 2 * k * p**4 * X**2
            + 2 * k * p**5 * X)
        m2 = X * (p - 1) / (2 * p**8) * (
            p**11 * X**3 - 3 * p**9 * X**3 - 2 * p**5 * X**3 - 3 * p**10 * X**2 + 3 * p**8 * X**2
            - 6 * p**6 * X**2 + 3 * p**9 * X - 6 * p**7 * X - 2 * p**8 + p**10 * X**3 - 2 * p**8 * X**3
            + 6 * p**6 * X**3 - p**4 * X**3 - 3 * p**9 * X**2 + 12 * p**7 * X**2 - 3 * p**5 * X**2 + 6 * p**8 * X
            - 3 * p**6 * X - p**7 + 2 * k * p**4 * X**3 - 3 * k * p**3 * X**3 + 3 * k * p**2 * X**3
            - k * p * X**3 + 6 * k * p**4 * X**2 - 3 * k * p**3 * X**2 + 6 * k * p**6 * X - 3 * k * p**5 * X
            - k * p**7 * X**3 + 3 * k * p**6 * X**3 - 3 * k * p**5 * X**3 + 3 * k * p**7 * X**2
            - 6 * k * p**6 * X**2 - 3 * k * p**7 * X)
        return _s(f"p3-nonabelian/shape1/k={k}", [(1, m), (k * p, n1), (p - k, n2)], False,
                  [PrintedForm("p^3 non-abelian quotient, first shape", m1, m2)])
    if shape == 2:
        m1 = X * (p - 1) / p**6 * (
            p**6 * X**2 + p**6 + p**5 - 2 * k * p**2 * X**2 + k * p * X**2 - 4 * k * p**4 * X + 2 * k * p**3 * X
            + p**2 * X**2 - 2 * p * X**2 + X**2 - 2 * p**3 * X + 2 * p**2 * X + p**4 - p**5 * X**2 - p**4 * X**2
            - 2 * p**6 * X + p**3 * X**2 + 2 * p**4 * X - k * p**5 * X**2 + 2 * k * p**4 * X**2 + 2 * k * p**5 * X)
        m2 = X * (p - 1) / (2 * p**8) * (
            2 * k * p**4 * X**3 - 3 * k * p**3 * X**3 + 3 * k * p**2 * X**3 - k * p * X**3 + 6 * k * p**4 * X**2
            - 3 * k * p**3 * X**2 + p**3 * X**3 + 6 * k * p**6 * X - 3 * k * p**5 * X - 3 * p**2 * X**3
            + 3 * p * X**3 - X**3 - 3 * p**4 * X**2 + 6 * p**3 * X**2 - p**6 - 3 * p**2 * X**2 + 3 * p**5 * X
            - 3 * p**4 * X - 2 * p**7 * X**3 + 2 * p**5 * X**3 - 3 * p**8 * X**2 + 3 * p**7 * X**2 + p**8 * X**3
            + 3 * p**8 * X - 3 * p**5 * X**2 - p**8 - p**4 * X**3 + 3 * p**6 * X**2 - 3 * p**6 * X - p**7
            - k * p**7 * X**3 + 3 * k * p**6 * X**3 - 3 * k * p**5 * X**3 + 3 * k * p**7 * X**2
            - 6 * k * p**6 * X**2 - 3 * k * p**7 * X)
        return _s(f"p3-nonabelian/shape2/k={k}", [(k * p + 1, n1), (p + 1 - k, n2)], False,
                  [PrintedForm("p^3 non-abelian quotient, second shape", m1, m2)])
    if shape == 3:
        # transcribed verbatim; the printed bracket repeats its last three terms
        m1 = X * (p - 1) / p**3 * (
            p**5 * X**2 - p**3 * X**2 + 2 * p * X**2 - 2 * p**4 * X + 2 * p**3 + p**4 * X**2 - 4 * p**2 * X**2
            + X**2 + 2 * p * X - 4 * p**3 * X + 4 * p**2 * X + p**2)
        m2 = X * (p - 1) / (2 * p**4) * (
            p**7 * X**3 - 3 * p**5 * X**3 - 2 * p * X**3 - 3 * p**6 * X**2 + 3 * p**4 * X**2 - 6 * p**2 * X**2
            + 3 * p**5 * X - 6 * p**3 * X - 2 * p**4 + p**6 * X**3 - 2 * p**4 * X**3 + 6 * p**2 * X**3 - X**3
            - 3 * p**5 * X**2 + 12 * p**3 * X**2 - 3 * p * X**2 + 6 * p**4 * X - 3 * p**2 * X - p**3
            + 6 * p**4 * X - 3 * p**2 * X - p**3)
        return _s("p3-nonabelian/shape3", [(1, m), (p, n2)], False,
                  [PrintedForm("p^3 non-abelian quotient, third shape", m1, m2)])
    if shape == 4:
        return _s("p3-nonabelian/shape4", [(p * p + p + 1, n1)], True,
                  [PrintedForm("p^3 abelian quotient (uniform shape)", *_uniform_printed(p, x))])
    if shape == 5:
        m1 = X * (p - 1) / p**6 * (
            p**6 * X**2 - p**5 * X**2 - p**4 * X**2 + p**3 * X**2 - 2 * p**6 * X + p**6 + 2 * p**4 * X + p**5
            + p**4 + p**2 * X**2 - 2 * p * X**2 + X**2 - 2 * p**3 * X + 2 * p**2 * X)
        m2 = X * (p - 1) / (2 * p**8) * (
            p**8 * X**3 - 2 * p**7 * X**3 + 2 * p**5 * X**3 - p**4 * X**3 - 3 * p**8 * X**2 + 3 * p**7 * X**2
            + 3 * p**6 * X**2 - 3 * p**5 * X**2 + 3 * p**8 * X - 3 * p**6 * X + 3 * p**5 * X - 3 * p**4 * X
            - p**8 - p**7 - p**6 + p**3 * X**3 - 3 * p**2 * X**3 + 3 * p * X**3 - X**3 - 3 * p**4 * X**2
            + 6 * p**3 * X**2 - 3 * p**2 * X**2)
        return _s("p3-nonabelian/shape5", [(1, n1), (p + 1, n2)], False,
                  [PrintedForm("p^3 non-abelian quotient, fifth shape", m1, m2)])
    raise InvalidParams(f"p3-nonabelian shape must be 1..5, got {shape}")


def quotient_cases_for(G: FiniteGroup) -> list[QuotientCase]:
    """Every central-quotient hypothesis that G satisfies, most specific first."""
    if is_abelian(G):
        return []
    x = len(center(G))
    Q = quotient_by_center(G)
    tag = recognize_structure(Q)
    n = Q.order
    pf = prime_factors(n)
    cases = []
    if tag.kind == "dihedral":
        cases.append(QuotientCase("dihedral", tag.params, x))
    if tag.kind == "elementary-abelian" and tag.params[1] == 2:
        cases.append(QuotientCase("elem-abelian", (tag.params[0],), x))
    if len(pf) == 1 and list(pf.values()) == [3]:
        p = next(iter(pf))
        cases.append(QuotientCase("p3-abelian" if tag.kind in ("abelian", "elementary-abelian") else "p3-nonabelian", (p,), x))
    if len(pf) == 2 and sorted(pf.values()) in ([1, 1], [1, 2]) and tag.kind not in ("abelian", "cyclic"):
        try:
            fd = frobenius_decomposition(Q)
        except CapExceeded:
            fd = None
        if fd is not None:
            kernel, comp = fd
            if sorted(pf.values()) == [1, 1]:
                cases.append(QuotientCase("frobenius-pq", (comp, kernel), x))
            elif (kernel, comp) == (4, 3):
                cases.append(QuotientCase("frobenius-p2q", (2, 3), x, "a4"))
            elif is_prime(kernel):
                p = round(comp**0.5)
                cases.append(QuotientCase("frobenius-p2q", (p, kernel), x, "p<q"))
            else:
                p = round(kernel**0.5)
                cases.append(QuotientCase("frobenius-p2q", (p, comp), x, "p>q"))
    return cases


def predictions_for(G: FiniteGroup) -> list[PredictedStructure]:
    """Candidates from every applicable central-quotient theorem (legal for this x)."""
    out = []
    for case in quotient_cases_for(G):
        try:
            out += quotient_prediction(case)
        except DivisibilityError:
            continue
    return out


# --- verification ------------------------------------------------------------------


@dataclass(frozen=True)
class VerificationRecord:
    group_name: str
    brute_decomposition: CliqueDecomposition | None
    predicted: PredictedStructure
    structure_match: bool
    m1_match: bool
    m2_match: bool
    verdict: Verdict
    equality_as_predicted: bool
    report: ZagrebReport
    discrepancy_notes: tuple[str, ...] = ()
    family: str = ""
    params: str = ""
    candidates: int = 1

    @property
    def failed(self) -> bool:
        return self.verdict is Verdict.VIOLATED or not (self.structure_match and self.m1_match and self.m2_match)

    def as_dict(self) -> dict:
        return {
            "group": self.group_name,
            "family": self.family,
            "params": self.params,
            "case_label": self.predicted.case_label,
            "brute_decomposition": None if self.brute_decomposition is None else str(self.brute_decomposition),
            "predicted_decomposition": str(self.predicted.decomposition),
            "candidates": self.candidates,
            "structure_match": self.structure_match,
            "m1_match": self.m1_match,
            "m2_match": self.m2_match,
            "closed_m1": self.predicted.closed_m1,
            "closed_m2": self.predicted.closed_m2,
            "printed": [
                {"source": pf.source, "m1": str(pf.m1), "m2": str(pf.m2)} for pf in self.predicted.printed
            ],
            "expected_equality": self.predicted.expected_equality,
            "equality_as_predicted": self.equality_as_predicted,
            "report": self.report.as_dict(),
            "discrepancy_notes": list(self.discrepancy_notes),
        }

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), sort_keys=True)


def verify_group(
    G: FiniteGroup, predicted: list[PredictedStructure], family: str = "", params: str = ""
) -> VerificationRecord:
    if not predicted:
        raise ValueError("verify_group needs at least one predicted structure")
    graph = ccc_graph(G)
    rep = zagreb_report(graph)
    brute = detect_clique_union(graph)
    chosen = next((c for c in predicted if brute is not None and c.decomposition == brute), None)
    match = chosen is not None
    if chosen is None:
        chosen = predicted[0]
    notes: list[str] = []
    if not match:
        alts = " | ".join(str(c.decomposition) for c in predicted)
        notes.append(f"brute-force structure {brute if brute is not None else 'not a clique union'} matches no candidate ({alts})")
    notes += chosen.printed_discrepancies()
    m1_ok, m2_ok = rep.m1 == chosen.closed_m1, rep.m2 == chosen.closed_m2
    if not m1_ok:
        notes.append(f"brute M1 = {rep.m1}, predicted {chosen.closed_m1}")
    if not m2_ok:
        notes.append(f"brute M2 = {rep.m2}, predicted {chosen.closed_m2}")
    eq_ok = rep.verdict.is_equality == chosen.expected_equality
    if not eq_ok:
        notes.append(
            f"verdict {rep.verdict.value} but equality was {'expected' if chosen.expected_equality else 'not expected'}"
        )
    return VerificationRecord(
        G.name, brute, chosen, match, m1_ok, m2_ok, rep.verdict, eq_ok, rep, tuple(notes), family, params,
        len(predicted),
    )
