"""Concrete finite groups as Cayley tables, plus the primitives built on them.

Elements are dense ids ``0..order-1``.  Everything downstream (conjugacy
classes, CCC-graphs, quotients) works directly on the multiplication table.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

EXHAUSTIVE_ASSOC_LIMIT = 512
SAMPLED_ASSOC_TRIPLES = 1_000_000


class GroupError(ValueError):
    """A table or parameter set does not describe a valid group."""


class CapExceeded(RuntimeError):
    """A brute-force search ran past its configured budget."""


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.ascontiguousarray(a, dtype=np.int64)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    name: str
    mul: np.ndarray
    identity: int
    inv: np.ndarray
    generators: tuple[int, ...] = ()
    generator_labels: dict[int, str] = field(default_factory=dict)

    @property
    def order(self) -> int:
        return int(self.mul.shape[0])

    def __repr__(self) -> str:
        return f"FiniteGroup({self.name!r}, order={self.order})"

    @classmethod
    def from_table(
        cls,
        name: str,
        mul: Sequence[Sequence[int]] | np.ndarray,
        generators: Iterable[int] = (),
        generator_labels: dict[int, str] | None = None,
        check: bool = True,
        rng_seed: int = 0,
    ) -> FiniteGroup:
        """Build a group from a raw table, locating identity and inverses.

        With ``check`` the table is validated: Latin square, two-sided
        identity and inverses, and associativity (exhaustive up to order 512,
        10**6 seeded random triples above that).
        """
        table = np.asarray(mul, dtype=np.int64)
        if table.ndim != 2 or table.shape[0] != table.shape[1] or table.shape[0] == 0:
            raise GroupError(f"{name}: multiplication table must be a non-empty square")
        n = table.shape[0]
        if table.min() < 0 or table.max() >= n:
            raise GroupError(f"{name}: table entries out of range 0..{n - 1}")
        ar = np.arange(n)
        ids = np.flatnonzero((table == ar[None, :]).all(axis=1))
        if len(ids) != 1:
            raise GroupError(f"{name}: no unique left identity")
        e = int(ids[0])
        rows, cols = np.nonzero(table == e)
        if len(rows) != n or not np.array_equal(rows, ar):
            raise GroupError(f"{name}: some element lacks a unique right inverse")
        inv = cols
        if check:
            _validate(name, table, e, inv, rng_seed)
        gens = tuple(int(g) for g in generators)
        for g in gens:
            if not 0 <= g < n:
                raise GroupError(f"{name}: generator id {g} out of range")
        G = cls(name, _frozen(table), e, _frozen(inv), gens, dict(generator_labels or {}))
        if check and gens and len(generated_subgroup(G, gens)) != n:
            raise GroupError(f"{name}: listed generators do not generate the group")
        return G

    def element_label(self, g: int) -> str:
        """Best-effort readable label: a short word in the generators."""
        if g == self.identity:
            return "1"
        if g in self.generator_labels:
            return self.generator_labels[g]
        return _word_labels(self).get(g, f"g{g}")

    def to_json(self) -> str:
        doc = {
            "name": self.name,
            "order": self.order,
            "mul": self.mul.reshape(-1).tolist(),
            "generators": list(self.generators),
        }
        if self.generator_labels:
            doc["generator_labels"] = {str(k): v for k, v in sorted(self.generator_labels.items())}
        return json.dumps(doc, separators=(",", ":"))

    @classmethod
    def from_json(cls, text: str) -> FiniteGroup:
        doc = json.loads(text)
        n = int(doc["order"])
        flat = doc["mul"]
        if len(flat) != n * n:
            raise GroupError(f"JSON group: expected {n * n} table entries, got {len(flat)}")
        labels = {int(k): v for k, v in doc.get("generator_labels", {}).items()}
        return cls.from_table(
            doc.get("name", "group"),
            np.asarray(flat, dtype=np.int64).reshape(n, n),
            doc.get("generators", ()),
            labels,
        )


def _validate(name: str, table: np.ndarray, e: int, inv: np.ndarray, seed: int) -> None:
    n = table.shape[0]
    ar = np.arange(n)
    if not (np.sort(table, axis=1) == ar).all() or not (np.sort(table, axis=0) == ar[:, None]).all():
        raise GroupError(f"{name}: table is not a Latin square")
    if not np.array_equal(table[:, e], ar):
        raise GroupError(f"{name}: identity is not two-sided")
    if not (table[inv, ar] == e).all():
        raise GroupError(f"{name}: inverses are not two-sided")
    if n <= EXHAUSTIVE_ASSOC_LIMIT:
        for a in range(n):
            # (a*b)*c versus a*(b*c) over all b, c
            if not np.array_equal(table[table[a]], table[a][table]):
                raise GroupError(f"{name}: associativity fails with a={a}")
    else:
        rng = np.random.default_rng(seed)
        a, b, c = rng.integers(0, n, size=(3, SAMPLED_ASSOC_TRIPLES))
        bad = np.flatnonzero(table[table[a, b], c] != table[a, table[b, c]])
        if len(bad):
            i = bad[0]
            raise GroupError(f"{name}: associativity fails at ({a[i]}, {b[i]}, {c[i]})")


def _word_labels(G: FiniteGroup) -> dict[int, str]:
    cached = G.__dict__.get("_labels")
    if cached is not None:
        return cached
    labels: dict[int, str] = {G.identity: "1"}
    gens = [g for g in G.generators if g != G.identity]
    names = {g: G.generator_labels.get(g, f"x{i}") for i, g in enumerate(gens)}
    words: dict[int, list[str]] = {G.identity: []}
    frontier = [G.identity]
    while frontier and gens:
        nxt = []
        for h in frontier:
            for g in gens:
                k = int(G.mul[h, g])
                if k not in words:
                    words[k] = words[h] + [names[g]]
                    nxt.append(k)
        frontier = nxt
    for k, w in words.items():
        if k != G.identity:
            labels[k] = _compress_word(w)
    object.__setattr__(G, "_labels", labels)
    return labels


def _compress_word(letters: list[str]) -> str:
    out = []
    i = 0
    while i < len(letters):
        j = i
        while j < len(letters) and letters[j] == letters[i]:
            j += 1
        run = j - i
        out.append(letters[i] if run == 1 else f"{letters[i]}^{run}")
        i = j
    return "".join(out)


def trivial_group() -> FiniteGroup:
    return FiniteGroup.from_table("1", [[0]])


def cyclic_group(n: int) -> FiniteGroup:
    if n < 1:
        raise GroupError(f"cyclic group order must be positive, got {n}")
    ar = np.arange(n)
    gens = (1 % n,) if n > 1 else ()
    return FiniteGroup.from_table(f"Z{n}", (ar[:, None] + ar[None, :]) % n, gens, {1: "a"} if n > 1 else {})


# --- conjugacy ---------------------------------------------------------------


@dataclass(frozen=True)
class ConjugacyClass:
    representative: int
    members: tuple[int, ...]

    @property
    def size(self) -> int:
        return len(self.members)


@dataclass(frozen=True)
class ClassData:
    classes: tuple[ConjugacyClass, ...]
    class_of: np.ndarray
    center: tuple[int, ...]

    @property
    def class_sizes(self) -> list[int]:
        return [c.size for c in self.classes]

    def noncentral(self) -> list[int]:
        """Indices of the classes of size > 1, in class order."""
        return [i for i, c in enumerate(self.classes) if c.size > 1]


def conjugation_perm(G: FiniteGroup, g: int) -> np.ndarray:
    """x -> g x g^-1 as an index array."""
    return G.mul[G.mul[g], G.inv[g]]


def conjugacy_data(G: FiniteGroup) -> ClassData:
    cached = G.__dict__.get("_class_data")
    if cached is not None:
        return cached
    n = G.order
    conjugators = G.generators if G.generators else range(n)
    src, dst = [], []
    ar = np.arange(n)
    for g in conjugators:
        src.append(ar)
        dst.append(conjugation_perm(G, g))
    src_a = np.concatenate(src) if src else ar
    dst_a = np.concatenate(dst) if dst else ar
    adj = coo_matrix((np.ones(len(src_a), dtype=np.int8), (src_a, dst_a)), shape=(n, n))
    _, labels = connected_components(adj, directed=True, connection="weak")
    # relabel components by least member
    first = {}
    for x in range(n):
        first.setdefault(int(labels[x]), len(first))
    class_of = np.array([first[int(labels[x])] for x in range(n)], dtype=np.int64)
    members: list[list[int]] = [[] for _ in first]
    for x in range(n):
        members[class_of[x]].append(x)
    classes = tuple(ConjugacyClass(m[0], tuple(m)) for m in members)
    center = tuple(m[0] for m in members if len(m) == 1)
    class_of.setflags(write=False)
    data = ClassData(classes, class_of, center)
    object.__setattr__(G, "_class_data", data)
    return data


def commute_matrix(G: FiniteGroup) -> np.ndarray:
    """Boolean matrix C with C[x, y] iff xy = yx."""
    cached = G.__dict__.get("_commute")
    if cached is None:
        cached = G.mul == G.mul.T
        cached.setflags(write=False)
        object.__setattr__(G, "_commute", cached)
    return cached


def centralizer(G: FiniteGroup, g: int) -> tuple[int, ...]:
    return tuple(int(h) for h in np.flatnonzero(G.mul[g] == G.mul[:, g]))


def center(G: FiniteGroup) -> tuple[int, ...]:
    return conjugacy_data(G).center


def is_abelian(G: FiniteGroup) -> bool:
    return len(center(G)) == G.order


def commuting_probability(G: FiniteGroup) -> Fraction:
    """k(G)/|G|, cross-checked against the commuting-pair count."""
    k = len(conjugacy_data(G).classes)
    n = G.order
    pairs = int(commute_matrix(G).sum())
    if pairs != k * n:
        raise AssertionError(f"{G.name}: {pairs} commuting pairs but k(G)*|G| = {k * n}")
    return Fraction(k, n)


def distinct_centralizer_count(G: FiniteGroup) -> int:
    rows = np.packbits(commute_matrix(G), axis=1)
    return len({r.tobytes() for r in rows})


def element_orders(G: FiniteGroup) -> np.ndarray:
    n = G.order
    ar = np.arange(n)
    orders = np.zeros(n, dtype=np.int64)
    cur = ar.copy()
    k = 0
    while (orders == 0).any():
        k += 1
        hit = (cur == G.identity) & (orders == 0)
        orders[hit] = k
        cur = G.mul[cur, ar]
        if k > n:
            raise AssertionError("element order exceeds group order")
    return orders


def generated_subgroup(G: FiniteGroup, gens: Iterable[int]) -> tuple[int, ...]:
    gens = [int(g) for g in gens]
    seen = {G.identity}
    frontier = [G.identity]
    while frontier:
        nxt = []
        for h in frontier:
            for g in gens:
                k = int(G.mul[h, g])
                if k not in seen:
                    seen.add(k)
                    nxt.append(k)
        frontier = nxt
    return tuple(sorted(seen))


def small_generating_set(G: FiniteGroup) -> tuple[int, ...]:
    """Greedy generating set: repeatedly add the element of largest order not yet covered."""
    orders = element_orders(G)
    candidates = sorted(range(G.order), key=lambda g: (-orders[g], g))
    gens: list[int] = []
    span = {G.identity}
    for g in candidates:
        if len(span) == G.order:
            break
        if g not in span:
            gens.append(g)
            span = set(generated_subgroup(G, gens))
    return tuple(gens)


def with_generators(G: FiniteGroup) -> FiniteGroup:
    """Attach a small generating set if the group has none (speeds up class computation)."""
    if G.generators:
        return G
    return FiniteGroup(G.name, G.mul, G.identity, G.inv, small_generating_set(G), {})


# --- constructions -----------------------------------------------------------


def quotient_by_center(G: FiniteGroup) -> FiniteGroup:
    Z = np.array(center(G), dtype=np.int64)
    n = G.order
    coset_of = np.full(n, -1, dtype=np.int64)
    reps = []
    for g in range(n):
        if coset_of[g] < 0:
            coset_of[G.mul[g, Z]] = len(reps)
            reps.append(g)
    reps_a = np.array(reps, dtype=np.int64)
    table = coset_of[G.mul[np.ix_(reps_a, reps_a)]]
    gens = sorted({int(coset_of[g]) for g in G.generators} - {int(coset_of[G.identity])})
    labels = {int(coset_of[g]): f"{G.element_label(g)}Z" for g in G.generators if coset_of[g] != coset_of[G.identity]}
    # a coset table of a genuine group is automatically a group; validate cheaply
    return FiniteGroup.from_table(f"{G.name}/Z", table, gens, labels, check=len(reps) <= 64)


def direct_product(G: FiniteGroup, H: FiniteGroup, name: str | None = None) -> FiniteGroup:
    m = H.order
    table = G.mul[:, None, :, None] * m + H.mul[None, :, None, :]
    table = table.reshape(G.order * m, G.order * m)
    gens = [g * m + H.identity for g in G.generators] + [G.identity * m + h for h in H.generators]
    labels = {g * m + H.identity: G.element_label(g) for g in G.generators}
    for h in H.generators:
        lab = H.element_label(h)
        labels[G.identity * m + h] = lab if lab not in labels.values() else f"{lab}'"
    return FiniteGroup.from_table(name or f"{G.name}x{H.name}", table, gens, labels, check=False)


# --- recognition -------------------------------------------------------------


@dataclass(frozen=True)
class StructureTag:
    kind: str  # trivial | cyclic | elementary-abelian | abelian | dihedral | other
    params: tuple[int, ...] = ()

    def __str__(self) -> str:
        if self.kind == "trivial":
            return "1"
        if self.kind == "cyclic":
            return f"Z{self.params[0]}"
        if self.kind == "elementary-abelian":
            p, r = self.params
            return "x".join([f"Z{p}"] * r)
        if self.kind == "abelian":
            return "x".join(f"Z{d}" for d in self.params)
        if self.kind == "dihedral":
            return f"D{2 * self.params[0]}"
        return "other"


def prime_factors(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def is_prime(n: int) -> bool:
    return n >= 2 and prime_factors(n) == {n: 1}


def abelian_invariants(G: FiniteGroup) -> list[int]:
    """Invariant factors d1 | d2 | ... of an abelian group (empty for trivial).

    For each prime p the count of elements killed by p**k equals
    p**(sum_i min(e_i, k)), which pins down the exponents e_i of the p-part.
    """
    orders = element_orders(G)
    primary: dict[int, list[int]] = {}
    for p, a in prime_factors(G.order).items():
        s_prev = 0
        at_least = []
        for k in range(1, a + 1):
            count = int(np.sum((p**k) % orders == 0))
            s_k = round(math.log(count, p))
            at_least.append(s_k - s_prev)
            s_prev = s_k
        # at_least[k-1] = number of cyclic factors of order >= p**k
        exps = []
        for k in range(len(at_least), 0, -1):
            nxt = at_least[k] if k < len(at_least) else 0
            exps += [k] * (at_least[k - 1] - nxt)
        primary[p] = sorted(exps, reverse=True)
    width = max((len(v) for v in primary.values()), default=0)
    factors = []
    for i in range(width):
        d = 1
        for p, exps in primary.items():
            if i < len(exps):
                d *= p ** exps[i]
        factors.append(d)
    return sorted(factors)


def _is_dihedral(G: FiniteGroup, orders: np.ndarray) -> int | None:
    n = G.order
    if n % 2 or n < 6:
        return None
    m = n // 2
    for c in np.flatnonzero(orders == m):
        cyc = set(generated_subgroup(G, [int(c)]))
        cinv = G.inv[c]
        for t in np.flatnonzero(orders == 2):
            if int(t) not in cyc and G.mul[G.mul[t, c], t] == cinv:
                return m
    return None


def recognize_structure(G: FiniteGroup) -> StructureTag:
    if G.order == 1:
        return StructureTag("trivial")
    if is_abelian(G):
        inv = abelian_invariants(G)
        if len(inv) == 1:
            return StructureTag("cyclic", (inv[0],))
        if len(set(inv)) == 1 and is_prime(inv[0]):
            return StructureTag("elementary-abelian", (inv[0], len(inv)))
        return StructureTag("abelian", tuple(inv))
    m = _is_dihedral(G, element_orders(G))
    if m is not None:
        return StructureTag("dihedral", (m,))
    return StructureTag("other")


# --- Frobenius ---------------------------------------------------------------


DEFAULT_SUBGROUP_BUDGET = 20_000
FROBENIUS_ORDER_CAP = 10_000


def all_subgroups(G: FiniteGroup, budget: int = DEFAULT_SUBGROUP_BUDGET) -> list[frozenset[int]]:
    """Every subgroup, by closing joins of cyclic subgroups until nothing new appears."""
    cyclic = {frozenset(generated_subgroup(G, [g])) for g in range(G.order)}
    cyclic_l = sorted(cyclic, key=lambda s: (len(s), sorted(s)))
    found = set(cyclic)
    frontier = list(cyclic)
    work = 0
    while frontier:
        nxt = []
        for H in frontier:
            for C in cyclic_l:
                if C <= H:
                    continue
                work += 1
                if work > budget:
                    raise CapExceeded(f"{G.name}: subgroup search exceeded budget {budget}")
                J = frozenset(_join(G, H, C))
                if J not in found:
                    found.add(J)
                    nxt.append(J)
        frontier = nxt
    return sorted(found, key=lambda s: (len(s), sorted(s)))


def _join(G: FiniteGroup, H: frozenset[int], C: frozenset[int]) -> tuple[int, ...]:
    seen = set(H) | set(C)
    gens = list(C)
    frontier = list(seen)
    Hl = list(H)
    while frontier:
        nxt = []
        for h in frontier:
            for g in gens + Hl:
                k = int(G.mul[h, g])
                if k not in seen:
                    seen.add(k)
                    nxt.append(k)
        frontier = nxt
    return tuple(sorted(seen))


def frobenius_decomposition(
    G: FiniteGroup, budget: int = DEFAULT_SUBGROUP_BUDGET
) -> tuple[int, int] | None:
    """(kernel order, complement order) if G is a Frobenius group, else None."""
    n = G.order
    if n > FROBENIUS_ORDER_CAP:
        raise CapExceeded(f"{G.name}: order {n} above Frobenius search cap {FROBENIUS_ORDER_CAP}")
    if n < 6 or len(center(G)) != 1:
        return None
    for H in all_subgroups(G, budget):
        h = len(H)
        if h == 1 or h == n:
            continue
        # |H| divides |K| - 1 for a Frobenius complement H with kernel K
        if (n // h - 1) % h:
            continue
        if _is_malnormal(G, H):
            return n // h, h
    return None


def _is_malnormal(G: FiniteGroup, H: frozenset[int]) -> bool:
    mask = np.zeros(G.order, dtype=bool)
    Ha = np.array(sorted(H), dtype=np.int64)
    mask[Ha] = True
    covered = mask.copy()
    for g in range(G.order):
        if covered[g]:
            continue
        covered[G.mul[g, Ha]] = True
        conj = G.mul[G.mul[g, Ha], G.inv[g]]
        if mask[conj].sum() != 1:
            return False
    return True
