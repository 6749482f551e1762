"""Compare the stated G(p, m, n) clique shape with brute force and with (p+1) K_{(p-1)p^(m+n-2)}.

G/Z(G) is Zp x Zp and the commutator map is a nondegenerate alternating form on
it, so two non-central classes are adjacent exactly when their images span the
same line.  That gives p+1 cliques of equal size, hence equality for every n.
"""

from __future__ import annotations

import argparse

from ccczagreb.ccc import CliqueDecomposition, ccc_graph, detect_clique_union
from ccczagreb.families import FamilySpec, build_family
from ccczagreb.predictions import predicted_decomposition
from ccczagreb.zagreb import decomposition_report


def main() -> None:
    ap = argparse.ArgumentParser(description="G(p,m,n): stated shape vs brute force")
    ap.add_argument("--max-order", type=int, default=800)
    args = ap.parse_args()
    print(f"{'p,m,n':8s} {'order':>6s}  {'stated':22s} {'brute':14s} {'line count':14s} verdict")
    for p in (2, 3, 5, 7):
        for m in range(1, 7):
            for n in range(1, 7):
                spec = FamilySpec("gpmn", (p, m, n))
                if spec.order > args.max_order:
                    continue
                stated = predicted_decomposition(spec).decomposition
                brute = detect_clique_union(ccc_graph(build_family(spec)))
                lines = CliqueDecomposition.of([(p + 1, (p - 1) * p ** (m + n - 2))])
                verdict = decomposition_report(brute).verdict.value
                print(f"{p},{m},{n:<4d} {spec.order:6d}  {str(stated):22s} {str(brute):14s} "
                      f"{'same' if brute == lines else 'DIFFERENT':14s} {verdict}")


if __name__ == "__main__":
    main()
