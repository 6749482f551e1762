"""Normal-form constructors for the two-generator families and the auxiliary test groups."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations

import numpy as np

from .group import FiniteGroup, GroupError, cyclic_group, direct_product, is_prime, prime_factors
from .presentation import Presentation, Word, commutator, coset_enumerate, power


class InvalidParams(GroupError):
    pass


FAMILIES = ("dihedral", "dicyclic", "semidihedral", "v8m", "unm", "gpmn")
# parameter names per family, in the order they appear in FamilySpec.params
FAMILY_PARAMS = {
    "dihedral": ("m",),
    "dicyclic": ("m",),
    "semidihedral": ("m",),
    "v8m": ("m",),
    "unm": ("n", "m"),
    "gpmn": ("p", "m", "n"),
}


@dataclass(frozen=True)
class FamilySpec:
    family: str
    params: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.family not in FAMILIES:
            raise InvalidParams(f"unknown family {self.family!r}; expected one of {', '.join(FAMILIES)}")
        want = len(FAMILY_PARAMS[self.family])
        if len(self.params) != want:
            raise InvalidParams(f"{self.family} takes {want} parameter(s), got {self.params}")
        f, ps = self.family, self.params
        if f == "dihedral" and ps[0] < 3:
            raise InvalidParams("dihedral needs m >= 3")
        if f in ("dicyclic", "semidihedral") and ps[0] < 2:
            raise InvalidParams(f"{f} needs m >= 2")
        if f == "v8m" and ps[0] < 1:
            raise InvalidParams("v8m needs m >= 1")
        if f == "unm" and (ps[1] < 3 or ps[0] < 2):
            raise InvalidParams("unm needs m >= 3 and n >= 2")
        if f == "gpmn" and (not is_prime(ps[0]) or ps[1] < 1 or ps[2] < 1):
            raise InvalidParams("gpmn needs p prime and m, n >= 1")

    @property
    def named(self) -> dict[str, int]:
        return dict(zip(FAMILY_PARAMS[self.family], self.params))

    @property
    def order(self) -> int:
        f, ps = self.family, self.params
        if f == "dihedral":
            return 2 * ps[0]
        if f == "dicyclic":
            return 4 * ps[0]
        if f in ("semidihedral", "v8m"):
            return 8 * ps[0]
        if f == "unm":
            return 2 * ps[0] * ps[1]
        p, m, n = ps
        return p ** (m + n + 1)

    def __str__(self) -> str:
        return f"{self.family}:{','.join(map(str, self.params))}"


def _table_from_rule(name, elems, rule, gens, labels) -> FiniteGroup:
    index = {e: i for i, e in enumerate(elems)}
    n = len(elems)
    table = np.empty((n, n), dtype=np.int64)
    for i, x in enumerate(elems):
        for j, y in enumerate(elems):
            table[i, j] = index[rule(x, y)]
    g_ids = [index[g] for g in gens]
    return FiniteGroup.from_table(name, table, g_ids, dict(zip(g_ids, labels)))


def dihedral(m: int) -> FiniteGroup:
    # a^i b^j, b a = a^-1 b
    elems = [(i, j) for j in range(2) for i in range(m)]
    rule = lambda x, y: ((x[0] + (-1) ** x[1] * y[0]) % m, (x[1] + y[1]) % 2)
    return _table_from_rule(f"D{2 * m}", elems, rule, [(1, 0), (0, 1)], ["a", "b"])


def dicyclic(m: int) -> FiniteGroup:
    # a of order 2m, b^2 = a^m, b a = a^-1 b
    def rule(x, y):
        i = x[0] + (-1) ** x[1] * y[0]
        j = x[1] + y[1]
        if j == 2:
            i, j = i + m, 0
        return (i % (2 * m), j)

    elems = [(i, j) for j in range(2) for i in range(2 * m)]
    return _table_from_rule(f"Q{4 * m}", elems, rule, [(1, 0), (0, 1)], ["a", "b"])


def semidihedral(m: int) -> FiniteGroup:
    n = 4 * m
    s = 2 * m - 1
    rule = lambda x, y: ((x[0] + pow(s, x[1], n) * y[0]) % n, (x[1] + y[1]) % 2)
    elems = [(i, j) for j in range(2) for i in range(n)]
    return _table_from_rule(f"SD{8 * m}", elems, rule, [(1, 0), (0, 1)], ["a", "b"])


def unm(n: int, m: int) -> FiniteGroup:
    # b^i a^j with a b = b^-1 a
    rule = lambda x, y: ((x[0] + (-1) ** x[1] * y[0]) % m, (x[1] + y[1]) % (2 * n))
    elems = [(i, j) for j in range(2 * n) for i in range(m)]
    return _table_from_rule(f"U({n},{m})", elems, rule, [(0, 1), (1, 0)], ["a", "b"])


def gpmn(p: int, m: int, n: int) -> FiniteGroup:
    # a^i b^j c^k with c = [a, b] central of order p
    pm, pn = p**m, p**n
    rule = lambda x, y: ((x[0] + y[0]) % pm, (x[1] + y[1]) % pn, (x[2] + y[2] - x[1] * y[0]) % p)
    elems = [(i, j, k) for k in range(p) for j in range(pn) for i in range(pm)]
    return _table_from_rule(f"G({p},{m},{n})", elems, rule, [(1, 0, 0), (0, 1, 0)], ["a", "b"])


# --- presentations -------------------------------------------------------------

A, B = 1, 2
_a, _b = (A,), (B,)
_ai, _bi = (-A,), (-B,)


def family_presentation(spec: FamilySpec, literal_v8m: bool = False) -> Presentation:
    """The defining presentation of a family member.

    ``literal_v8m`` returns the V8m relators exactly as usually printed
    (``ba = b^-1 a^-1``); that reading collapses to a group of order 4m or
    less, so the default uses ``ab = b^-1 a^-1``, which has order 8m.
    """
    f, ps = spec.family, spec.params
    rels: list[Word]
    if f == "dihedral":
        (m,) = ps
        rels = [power(_a, m), power(_b, 2), _b + _a + _bi + _a]
    elif f == "dicyclic":
        (m,) = ps
        rels = [power(_a, 2 * m), power(_b, 2) + power(_a, -m), _b + _a + _bi + _a]
    elif f == "semidihedral":
        (m,) = ps
        rels = [power(_a, 4 * m), power(_b, 2), _b + _a + _b + power(_a, -(2 * m - 1))]
    elif f == "v8m":
        (m,) = ps
        first = _b + _a + _a + _b if literal_v8m else _a + _b + _a + _b
        rels = [power(_a, 2 * m), power(_b, 4), first, _bi + _a + _bi + _a]
    elif f == "unm":
        n, m = ps
        rels = [power(_a, 2 * n), power(_b, m), _ai + _b + _a + _b]
    else:
        p, m, n = ps
        c = commutator(_a, _b)
        rels = [power(_a, p**m), power(_b, p**n), power(c, p), commutator(_a, c), commutator(_b, c)]
    return Presentation.build(["a", "b"], rels)


def build_family(spec: FamilySpec, coset_limit: int | None = None) -> FiniteGroup:
    f, ps = spec.family, spec.params
    if f == "dihedral":
        G = dihedral(*ps)
    elif f == "dicyclic":
        G = dicyclic(*ps)
    elif f == "semidihedral":
        G = semidihedral(*ps)
    elif f == "unm":
        G = unm(*ps)
    elif f == "gpmn":
        G = gpmn(*ps)
    else:
        G = coset_enumerate(family_presentation(spec), coset_limit, name=f"V{8 * ps[0]}")
    if G.order != spec.order:
        raise AssertionError(f"{spec}: built order {G.order}, expected {spec.order}")
    return G


# --- auxiliary groups -------------------------------------------------------------

AUX_KINDS = ("heisenberg", "extraspecial", "frobenius", "f20style", "gendihedral", "a4", "modular", "product")


@dataclass(frozen=True)
class AuxSpec:
    """Auxiliary group selector.

    kind / params:
      heisenberg (p,)         3x3 unitriangular matrices mod p
      extraspecial (p,)       Z_{p^2} x| Z_p with action 1+p
      frobenius (q, p)        Z_q x| Z_p, p | q-1
      f20style (q, c)         Z_q x| Z_c with c = p^2 and c | q-1
      gendihedral (p,)        (Z_p x Z_p) x| Z_2 by inversion
      a4 ()                   alternating group on 4 points
      modular (p, k)          Z_{p^(k-1)} x| Z_p with action 1 + p^(k-2), order p^k
      product                 base x Z_c; base is another AuxSpec or FamilySpec
    """

    kind: str
    params: tuple[int, ...] = ()
    base: AuxSpec | FamilySpec | None = None

    def __str__(self) -> str:
        if self.kind == "product":
            return f"product({self.base},{self.params[0]})"
        return f"{self.kind}:{','.join(map(str, self.params))}" if self.params else self.kind


def _smallest_unit_of_order(k: int, q: int) -> int:
    for h in range(2, q):
        if pow(h, k, q) == 1 and all(pow(h, d, q) != 1 for d in range(1, k)):
            return h
    raise InvalidParams(f"no unit of multiplicative order {k} modulo {q}")


def _semidirect_cyclic(name: str, q: int, c: int, h: int) -> FiniteGroup:
    """Z_q x| Z_c with the generator of Z_c acting as multiplication by h."""
    rule = lambda x, y: ((x[0] + pow(h, x[1], q) * y[0]) % q, (x[1] + y[1]) % c)
    elems = [(i, j) for j in range(c) for i in range(q)]
    return _table_from_rule(name, elems, rule, [(1, 0), (0, 1)], ["a", "b"])


def heisenberg(p: int) -> FiniteGroup:
    rule = lambda x, y: ((x[0] + y[0]) % p, (x[1] + y[1]) % p, (x[2] + y[2] + x[0] * y[1]) % p)
    elems = [(x, y, z) for z in range(p) for y in range(p) for x in range(p)]
    return _table_from_rule(f"Heis({p})", elems, rule, [(1, 0, 0), (0, 1, 0)], ["x", "y"])


def alternating4() -> FiniteGroup:
    def sign(p):
        s = 1
        for i in range(4):
            for j in range(i + 1, 4):
                if p[i] > p[j]:
                    s = -s
        return s

    elems = [p for p in permutations(range(4)) if sign(p) == 1]
    rule = lambda x, y: tuple(x[y[i]] for i in range(4))  # x after y
    return _table_from_rule("A4", elems, rule, [(1, 2, 0, 3), (1, 0, 3, 2)], ["t", "v"])


def generalized_dihedral(p: int) -> FiniteGroup:
    rule = lambda x, y: (
        (x[0] + (-1) ** x[2] * y[0]) % p,
        (x[1] + (-1) ** x[2] * y[1]) % p,
        (x[2] + y[2]) % 2,
    )
    elems = [(i, j, k) for k in range(2) for j in range(p) for i in range(p)]
    return _table_from_rule(f"Dih(Z{p}^2)", elems, rule, [(1, 0, 0), (0, 1, 0), (0, 0, 1)], ["u", "v", "t"])


def build_aux(spec: AuxSpec, coset_limit: int | None = None) -> FiniteGroup:
    k, ps = spec.kind, spec.params
    if k == "heisenberg":
        (p,) = ps
        if not is_prime(p):
            raise InvalidParams("heisenberg needs a prime p")
        return heisenberg(p)
    if k == "extraspecial":
        (p,) = ps
        if not is_prime(p):
            raise InvalidParams("extraspecial needs a prime p")
        return _semidirect_cyclic(f"Z{p * p}:Z{p}", p * p, p, 1 + p)
    if k == "frobenius":
        q, p = ps
        if not (is_prime(p) and is_prime(q)) or (q - 1) % p:
            raise InvalidParams(f"frobenius:{q},{p} needs primes with p | q-1")
        return _semidirect_cyclic(f"Z{q}:Z{p}", q, p, _smallest_unit_of_order(p, q))
    if k == "f20style":
        q, c = ps
        pf = prime_factors(c)
        if not is_prime(q) or len(pf) != 1 or list(pf.values()) != [2] or (q - 1) % c:
            raise InvalidParams(f"f20style:{q},{c} needs q prime and c = p^2 dividing q-1")
        return _semidirect_cyclic(f"Z{q}:Z{c}", q, c, _smallest_unit_of_order(c, q))
    if k == "gendihedral":
        (p,) = ps
        if not is_prime(p) or p == 2:
            raise InvalidParams("gendihedral needs an odd prime p")
        return generalized_dihedral(p)
    if k == "a4":
        return alternating4()
    if k == "modular":
        p, e = ps
        if not is_prime(p) or e < 3 or (p == 2 and e < 4):
            raise InvalidParams("modular:p,k needs p prime and k >= 3 (k >= 4 when p = 2)")
        q = p ** (e - 1)
        return _semidirect_cyclic(f"M({p}^{e})", q, p, 1 + p ** (e - 2))
    if k == "product":
        (c,) = ps
        if spec.base is None or c < 1:
            raise InvalidParams("product needs a base group and c >= 1")
        if isinstance(spec.base, FamilySpec):
            base = build_family(spec.base, coset_limit)
        else:
            base = build_aux(spec.base, coset_limit)
        return direct_product(base, cyclic_group(c))
    raise InvalidParams(f"unknown aux kind {k!r}; expected one of {', '.join(AUX_KINDS)}")


# --- CLI-facing selector syntax ----------------------------------------------------


def _ints(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(t) for t in text.split(",") if t.strip())
    except ValueError:
        raise InvalidParams(f"expected comma-separated integers, got {text!r}") from None


def parse_family(text: str) -> FamilySpec:
    """``dihedral:12``, ``unm:2,6`` (n, m), ``gpmn:3,1,2`` (p, m, n)."""
    name, _, rest = text.partition(":")
    return FamilySpec(name.strip().lower(), _ints(rest))


def parse_aux(text: str) -> AuxSpec:
    """``frobenius:7,3``, ``a4``, ``product:dihedral:4;2`` (base;c)."""
    name, _, rest = text.partition(":")
    name = name.strip().lower()
    if name == "product":
        base_txt, _, c = rest.rpartition(";")
        if not base_txt:
            raise InvalidParams("product syntax is product:<base>;<c>")
        base_name = base_txt.partition(":")[0].strip().lower()
        base = parse_family(base_txt) if base_name in FAMILIES else parse_aux(base_txt)
        return AuxSpec("product", _ints(c), base)
    if name not in AUX_KINDS:
        raise InvalidParams(f"unknown aux kind {name!r}; expected one of {', '.join(AUX_KINDS)}")
    return AuxSpec(name, _ints(rest))
