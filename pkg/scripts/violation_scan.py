"""Search every constructible group up to an order bound for a violated CCC-graph verdict.

Covers all families, the auxiliary groups, and their direct products with
small cyclic groups.  Prints a verdict histogram, the non-clique-union
graphs found, and any violation.
"""

from __future__ import annotations

import argparse
from collections import Counter

from ccczagreb.ccc import ccc_graph
from ccczagreb.families import AuxSpec, FamilySpec, InvalidParams, build_aux, build_family
from ccczagreb.group import is_prime
from ccczagreb.zagreb import Verdict, zagreb_report


def selectors(max_order: int):
    """Yield (spec, order) for every candidate base group of order <= max_order."""
    for m in range(3, max_order // 2 + 1):
        yield FamilySpec("dihedral", (m,)), 2 * m
    for m in range(2, max_order // 4 + 1):
        yield FamilySpec("dicyclic", (m,)), 4 * m
    for m in range(1, max_order // 8 + 1):
        yield FamilySpec("v8m", (m,)), 8 * m
        if m >= 2:
            yield FamilySpec("semidihedral", (m,)), 8 * m
    for n in range(2, max_order // 6 + 1):
        for m in range(3, max_order // (2 * n) + 1):
            yield FamilySpec("unm", (n, m)), 2 * n * m
    for p in (2, 3, 5, 7):
        for m in range(1, 8):
            for n in range(1, 8):
                if p ** (m + n + 1) <= max_order:
                    yield FamilySpec("gpmn", (p, m, n)), p ** (m + n + 1)
    primes = [q for q in range(2, max_order) if is_prime(q)]
    for p in primes:
        if p ** 3 <= max_order:
            yield AuxSpec("heisenberg", (p,)), p ** 3
            yield AuxSpec("extraspecial", (p,)), p ** 3
        if 2 * p * p <= max_order and p > 2:
            yield AuxSpec("gendihedral", (p,)), 2 * p * p
        for k in range(3, 8):
            if p ** k <= max_order:
                yield AuxSpec("modular", (p, k)), p ** k
        for q in primes:
            if (q - 1) % p == 0 and q * p <= max_order:
                yield AuxSpec("frobenius", (q, p)), q * p
            if (q - 1) % (p * p) == 0 and q * p * p <= max_order:
                yield AuxSpec("f20style", (q, p * p)), q * p * p
    yield AuxSpec("a4"), 12


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-order", type=int, default=200)
    ap.add_argument("--cyclic-factors", type=int, default=3, help="also test G x Z_c for c up to this")
    args = ap.parse_args()
    hist: Counter[str] = Counter()
    nonunion, violations = [], []
    seen = 0
    for base, order in selectors(args.max_order):
        for c in range(1, args.cyclic_factors + 1):
            if order * c > args.max_order:
                break
            spec = base if c == 1 else AuxSpec("product", (c,), base)
            try:
                G = build_family(spec) if isinstance(spec, FamilySpec) else build_aux(spec)
            except InvalidParams:
                break
            rep = zagreb_report(ccc_graph(G))
            seen += 1
            hist[rep.verdict.value] += 1
            if rep.decomposition is None:
                nonunion.append(str(spec))
            if rep.verdict is Verdict.VIOLATED:
                violations.append(str(spec))
    print(f"groups checked: {seen}")
    for k, v in sorted(hist.items()):
        print(f"  {k:18s} {v}")
    print(f"not a clique union: {len(nonunion)}" + (f"  e.g. {', '.join(nonunion[:5])}" if nonunion else ""))
    print(f"violations: {violations or 'none'}")


if __name__ == "__main__":
    main()
