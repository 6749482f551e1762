"""Finite presentations and Todd-Coxeter enumeration over the trivial subgroup.

Text syntax, one presentation per string::

    a, b | a^5, b^2, b a b^-1 a
    a, b | a^4, b^2 = a^2, [a, b]^2, (a b)^3

Left of ``|`` are generator names; right of it a comma-separated list of
relators.  A relator is a product of factors separated by whitespace (or
juxtaposed single-letter generators such as ``bab^-1``).  A factor is a
generator, ``(word)``, or a commutator ``[u, v] = u^-1 v^-1 u v``, each
optionally raised to an integer power ``^k`` / ``^-k``.  ``lhs = rhs`` is
read as the relator ``lhs rhs^-1``.
"""

from __future__ import annotations

import os
import re
from dataclasses import dataclass

import numpy as np

from .group import FiniteGroup

Word = tuple[int, ...]  # letter i+1 = generator i, -(i+1) = its inverse

DEFAULT_COSET_LIMIT = 1_000_000
COSET_LIMIT_ENV = "CCCZ_COSET_LIMIT"


class PresentationError(ValueError):
    pass


class LimitExceeded(RuntimeError):
    pass


def default_coset_limit() -> int:
    raw = os.environ.get(COSET_LIMIT_ENV)
    if raw is None:
        return DEFAULT_COSET_LIMIT
    try:
        value = int(raw)
    except ValueError:
        raise PresentationError(f"{COSET_LIMIT_ENV}={raw!r} is not an integer") from None
    if value < 1:
        raise PresentationError(f"{COSET_LIMIT_ENV} must be positive")
    return value


def free_reduce(word: Word) -> Word:
    out: list[int] = []
    for x in word:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def invert(word: Word) -> Word:
    return tuple(-x for x in reversed(word))


def power(word: Word, k: int) -> Word:
    if k < 0:
        word, k = invert(word), -k
    return free_reduce(word * k)


def commutator(u: Word, v: Word) -> Word:
    return free_reduce(invert(u) + invert(v) + u + v)


@dataclass(frozen=True)
class Presentation:
    generators: tuple[str, ...]
    relators: tuple[Word, ...]

    def __post_init__(self) -> None:
        if len(set(self.generators)) != len(self.generators):
            raise PresentationError(f"duplicate generator names in {self.generators}")
        k = len(self.generators)
        for r in self.relators:
            if any(x == 0 or abs(x) > k for x in r):
                raise PresentationError(f"relator {r} uses a symbol outside the generator list")
            if free_reduce(r) != r:
                raise PresentationError(f"relator {r} is not freely reduced")

    @classmethod
    def build(cls, generators: list[str] | tuple[str, ...], relators: list[Word]) -> Presentation:
        rels = []
        for r in relators:
            r = free_reduce(tuple(r))
            if r:
                rels.append(r)
        return cls(tuple(generators), tuple(rels))

    def format_word(self, word: Word) -> str:
        parts = []
        i = 0
        while i < len(word):
            j = i
            while j < len(word) and word[j] == word[i]:
                j += 1
            name = self.generators[abs(word[i]) - 1]
            e = (j - i) * (1 if word[i] > 0 else -1)
            parts.append(name if e == 1 else f"{name}^{e}")
            i = j
        return " ".join(parts)

    def __str__(self) -> str:
        return f"{', '.join(self.generators)} | {', '.join(self.format_word(r) for r in self.relators)}"


_TOKEN = re.compile(r"\s*(?:(?P<num>-?\d+)|(?P<ident>[A-Za-z_][A-Za-z0-9_]*)|(?P<sym>[\^\(\)\[\],=]))")


def parse_presentation(text: str) -> Presentation:
    if "|" not in text:
        raise PresentationError("presentation must contain '|' between generators and relators")
    head, _, body = text.partition("|")
    gens = [g.strip() for g in head.replace("<", "").split(",") if g.strip()]
    if not gens:
        raise PresentationError("no generators given")
    for g in gens:
        if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", g):
            raise PresentationError(f"bad generator name {g!r}")
    body = body.replace(">", "").strip()
    parser = _WordParser(body, gens)
    relators = parser.relator_list() if body else []
    return Presentation.build(gens, relators)


class _WordParser:
    def __init__(self, text: str, gens: list[str]):
        self.gens = {g: i + 1 for i, g in enumerate(gens)}
        self.tokens: list[tuple[str, str]] = []
        pos = 0
        text = text.rstrip()
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if not m or m.end() == pos:
                raise PresentationError(f"unexpected character at {text[pos:pos + 10]!r}")
            pos = m.end()
            kind = m.lastgroup
            assert kind is not None
            self.tokens.append((kind, m.group(kind)))
        self.i = 0

    def peek(self) -> tuple[str, str] | None:
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def take(self, value: str | None = None) -> tuple[str, str]:
        tok = self.peek()
        if tok is None or (value is not None and tok[1] != value):
            raise PresentationError(f"expected {value or 'token'}, got {tok[1] if tok else 'end of input'}")
        self.i += 1
        return tok

    def relator_list(self) -> list[Word]:
        rels = [self.relation()]
        while self.peek() is not None:
            self.take(",")
            rels.append(self.relation())
        return rels

    def relation(self) -> Word:
        lhs = self.word()
        if self.peek() == ("sym", "="):
            self.take("=")
            rhs = self.word()
            return free_reduce(lhs + invert(rhs))
        return lhs

    def word(self) -> Word:
        out: Word = ()
        while True:
            tok = self.peek()
            if tok is None or tok in (("sym", ","), ("sym", "="), ("sym", ")"), ("sym", "]")):
                break
            out = out + self.factor()
        return free_reduce(out)

    def factor(self) -> Word:
        kind, value = self.take()
        prefix: Word = ()
        if kind == "ident":
            letters = self._ident(value)
            prefix, base = letters[:-1], letters[-1:]
        elif value == "(":
            base = self.word()
            self.take(")")
        elif value == "[":
            u = self.word()
            self.take(",")
            v = self.word()
            self.take("]")
            base = commutator(u, v)
        elif kind == "num" and value == "1":
            base = ()
        else:
            raise PresentationError(f"unexpected token {value!r}")
        if self.peek() == ("sym", "^"):
            self.take("^")
            kind, value = self.take()
            if kind != "num":
                raise PresentationError(f"exponent must be an integer, got {value!r}")
            base = power(base, int(value))
        return prefix + base

    def _ident(self, name: str) -> Word:
        if name in self.gens:
            return (self.gens[name],)
        # juxtaposed single-letter generators, e.g. "bab"; an exponent binds to the last one
        if all(c in self.gens for c in name):
            return tuple(self.gens[c] for c in name)
        raise PresentationError(f"unknown generator {name!r}")


# --- Todd-Coxeter -------------------------------------------------------------


class _CosetTable:
    """HLT coset enumeration with coincidence processing (H = trivial subgroup)."""

    def __init__(self, ngens: int, limit: int):
        self.ncols = 2 * ngens
        self.limit = limit
        self.table: list[list[int]] = [[-1] * self.ncols]
        self.p: list[int] = [0]

    @staticmethod
    def col(x: int) -> int:
        return 2 * (x - 1) if x > 0 else 2 * (-x - 1) + 1

    @staticmethod
    def inv_col(c: int) -> int:
        return c ^ 1

    def define(self, a: int, c: int) -> None:
        if len(self.table) >= self.limit:
            raise LimitExceeded(
                f"coset table exceeded {self.limit} cosets; raise the coset limit "
                f"(--coset-limit or {COSET_LIMIT_ENV}) or check that the group is finite"
            )
        b = len(self.table)
        self.table.append([-1] * self.ncols)
        self.p.append(b)
        self.table[a][c] = b
        self.table[b][self.inv_col(c)] = a

    def rep(self, k: int) -> int:
        p = self.p
        root = k
        while p[root] != root:
            root = p[root]
        while p[k] != root:
            p[k], k = root, p[k]
        return root

    def merge(self, k: int, l: int, queue: list[int]) -> None:
        a, b = self.rep(k), self.rep(l)
        if a != b:
            lo, hi = min(a, b), max(a, b)
            self.p[hi] = lo
            queue.append(hi)

    def coincidence(self, a: int, b: int) -> None:
        queue: list[int] = []
        self.merge(a, b, queue)
        i = 0
        while i < len(queue):
            g = queue[i]
            i += 1
            row = self.table[g]
            for c in range(self.ncols):
                d = row[c]
                if d < 0:
                    continue
                ic = self.inv_col(c)
                self.table[d][ic] = -1
                mu, nu = self.rep(g), self.rep(d)
                if self.table[mu][c] >= 0:
                    self.merge(nu, self.table[mu][c], queue)
                elif self.table[nu][ic] >= 0:
                    self.merge(mu, self.table[nu][ic], queue)
                else:
                    self.table[mu][c] = nu
                    self.table[nu][ic] = mu

    def scan_and_fill(self, a: int, word: list[int]) -> None:
        t = self.table
        f, b = a, a
        i, j = 0, len(word) - 1
        while True:
            while i <= j and t[f][word[i]] >= 0:
                f = t[f][word[i]]
                i += 1
            if i > j:
                if f != a:
                    self.coincidence(f, a)
                return
            while j >= i and t[b][word[j] ^ 1] >= 0:
                b = t[b][word[j] ^ 1]
                j -= 1
            if j < i:
                self.coincidence(f, b)
                return
            if j == i:
                t[f][word[i]] = b
                t[b][word[i] ^ 1] = f
                return
            self.define(f, word[i])

    def alive(self, a: int) -> bool:
        return self.p[a] == a

    def run(self, relators: list[list[int]]) -> None:
        a = 0
        while a < len(self.table):
            for w in relators:
                if not self.alive(a):
                    break
                self.scan_and_fill(a, w)
            if self.alive(a):
                for c in range(self.ncols):
                    if self.table[a][c] < 0:
                        self.define(a, c)
            a += 1


def coset_enumerate(P: Presentation, coset_limit: int | None = None, name: str | None = None) -> FiniteGroup:
    """Enumerate cosets of the trivial subgroup and return the Cayley table."""
    limit = default_coset_limit() if coset_limit is None else coset_limit
    if limit < 1:
        raise PresentationError("coset_limit must be positive")
    k = len(P.generators)
    if k == 0:
        return FiniteGroup.from_table(name or "1", [[0]])
    ct = _CosetTable(k, limit)
    rels = [[_CosetTable.col(x) for x in r] for r in P.relators]
    ct.run(rels)

    # standardize: renumber live cosets in breadth-first order from coset 0
    order = [0]
    index = {0: 0}
    parent = [-1]
    pcol = [-1]
    i = 0
    while i < len(order):
        a = order[i]
        for c in range(ct.ncols):
            b = ct.rep(ct.table[a][c])
            if b not in index:
                index[b] = len(order)
                order.append(b)
                parent.append(i)
                pcol.append(c)
        i += 1
    n = len(order)
    T = np.array([[index[ct.rep(ct.table[a][c])] for c in range(ct.ncols)] for a in order], dtype=np.int64)

    # coset i = 0 . w_i; then g_a g_b = a . w_b, built column by column along the BFS tree
    mul = np.empty((n, n), dtype=np.int64)
    mul[:, 0] = np.arange(n)
    for b in range(1, n):
        mul[:, b] = T[mul[:, parent[b]], pcol[b]]
    gens = [int(T[0, 2 * i]) for i in range(k)]
    labels = {}
    for i, g in enumerate(gens):
        labels.setdefault(g, P.generators[i])
    G = FiniteGroup.from_table(name or str(P), mul, gens, labels)

    ar = np.arange(n)
    for r in P.relators:
        cur = ar
        for x in r:
            cur = T[cur, _CosetTable.col(x)]
        if not np.array_equal(cur, ar):
            raise AssertionError(f"relator {P.format_word(r)} does not act trivially")
    return G


def evaluate_word(G: FiniteGroup, images: list[int], word: Word) -> int:
    """Value of a word once generator i is sent to element images[i]."""
    g = G.identity
    for x in word:
        h = images[abs(x) - 1]
        g = int(G.mul[g, h if x > 0 else G.inv[h]])
    return g
