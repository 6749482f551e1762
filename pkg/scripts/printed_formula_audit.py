"""Evaluate every printed M1/M2 polynomial against the clique-union value of its shape.

Prints one line per (case, source, index) with the number of grid points
checked and how many disagree, plus the first disagreeing point.
"""

from __future__ import annotations

import argparse
from collections import defaultdict

from ccczagreb.families import FAMILIES, FAMILY_PARAMS, FamilySpec, InvalidParams
from ccczagreb.predictions import DivisibilityError, QuotientCase, predicted_decomposition, quotient_prediction

PRIMES = (2, 3, 5, 7, 11, 13)


def quotient_grid(xmax: int):
    for x in range(1, xmax + 1):
        for m in range(3, 12):
            yield QuotientCase("dihedral", (m,), x)
        for p in PRIMES:
            yield QuotientCase("elem-abelian", (p,), x)
            yield QuotientCase("p3-abelian", (p,), x)
            yield QuotientCase("p3-nonabelian", (p,), x)
            for q in PRIMES + (17, 19, 29, 31, 37, 41, 43):
                if q != p and (q - 1) % p == 0:
                    yield QuotientCase("frobenius-pq", (p, q), x)
                if q != p:
                    yield QuotientCase("frobenius-p2q", (p, q), x)


def family_grid():
    for fam in FAMILIES:
        if FAMILY_PARAMS[fam] == ("m",):
            for m in range(1, 40):
                yield fam, (m,)
        elif fam == "unm":
            for n in range(2, 6):
                for m in range(3, 20):
                    yield fam, (n, m)
        else:
            for p in (2, 3, 5):
                for m in range(1, 4):
                    for n in range(1, 4):
                        yield fam, (p, m, n)


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--xmax", type=int, default=60)
    args = ap.parse_args()
    checked = defaultdict(int)
    bad = defaultdict(int)
    first = {}

    def tally(structure, where):
        for pf in structure.printed:
            src = pf.source.split(", n=")[0]
            for idx, val, ref in (("M1", pf.m1, structure.closed_m1), ("M2", pf.m2, structure.closed_m2)):
                key = (structure.case_label.split("/k=")[0], src, idx)
                checked[key] += 1
                if val != ref:
                    bad[key] += 1
                    first.setdefault(key, f"{where}: printed {val}, clique union {ref}")

    for fam, ps in family_grid():
        try:
            tally(predicted_decomposition(FamilySpec(fam, ps)), f"{fam}:{ps}")
        except InvalidParams:
            pass
    for case in quotient_grid(args.xmax):
        try:
            for s in quotient_prediction(case):
                tally(s, str(case))
        except DivisibilityError:
            pass
    for key in sorted(checked):
        label, src, idx = key
        tail = f"   e.g. {first[key]}" if key in first else ""
        print(f"{label:40s} {src:42s} {idx}  {checked[key]:5d} checked  {bad[key]:5d} differ{tail}")


if __name__ == "__main__":
    main()
