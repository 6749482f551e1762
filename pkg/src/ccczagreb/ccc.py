"""Commuting conjugacy class graphs and disjoint-union-of-cliques detection."""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from math import comb

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

from .group import FiniteGroup, commute_matrix, conjugacy_data


class GraphError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class SimpleGraph:
    labels: tuple[str, ...]
    adjacency: np.ndarray

    def __post_init__(self) -> None:
        A = np.asarray(self.adjacency, dtype=bool)
        n = len(self.labels)
        if A.shape != (n, n):
            raise GraphError(f"adjacency shape {A.shape} does not match {n} labels")
        if A.diagonal().any():
            raise GraphError("self-loops are not allowed")
        if not np.array_equal(A, A.T):
            raise GraphError("adjacency must be symmetric")
        A = A.copy()
        A.setflags(write=False)
        object.__setattr__(self, "adjacency", A)

    @classmethod
    def from_edges(cls, labels, edges) -> SimpleGraph:
        n = len(labels)
        A = np.zeros((n, n), dtype=bool)
        for u, v in edges:
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
            A[u, v] = A[v, u] = True
        return cls(tuple(labels), A)

    @property
    def num_vertices(self) -> int:
        return len(self.labels)

    @property
    def num_edges(self) -> int:
        return int(self.adjacency.sum()) // 2

    def degrees(self) -> list[int]:
        return [int(d) for d in self.adjacency.sum(axis=1)]

    def edges(self) -> list[tuple[int, int]]:
        us, vs = np.nonzero(np.triu(self.adjacency, 1))
        return [(int(u), int(v)) for u, v in zip(us, vs)]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SimpleGraph):
            return NotImplemented
        return self.labels == other.labels and np.array_equal(self.adjacency, other.adjacency)

    def to_json(self) -> str:
        return json.dumps({"labels": list(self.labels), "edges": [list(e) for e in self.edges()]})

    @classmethod
    def from_json(cls, text: str) -> SimpleGraph:
        doc = json.loads(text)
        return cls.from_edges(doc["labels"], [tuple(e) for e in doc["edges"]])


@dataclass(frozen=True)
class CliqueDecomposition:
    """Multiset of complete-graph components as (multiplicity, clique size) pairs."""

    parts: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        for l, m in self.parts:
            if l < 1 or m < 1:
                raise GraphError(f"bad clique part {l}K{m}")
        sizes = [m for _, m in self.parts]
        if len(set(sizes)) != len(sizes) or sizes != sorted(sizes, reverse=True):
            raise GraphError("parts must be merged and sorted by decreasing clique size; use CliqueDecomposition.of")

    @classmethod
    def of(cls, pieces) -> CliqueDecomposition:
        """Canonical form from any iterable of (multiplicity, size) pairs; zero multiplicities drop out."""
        acc: dict[int, int] = {}
        for l, m in pieces:
            if l < 0 or m < 1:
                raise GraphError(f"bad clique part {l}K{m}")
            if l:
                acc[m] = acc.get(m, 0) + l
        return cls(tuple((acc[m], m) for m in sorted(acc, reverse=True)))

    @property
    def num_vertices(self) -> int:
        return sum(l * m for l, m in self.parts)

    @property
    def num_edges(self) -> int:
        return sum(l * comb(m, 2) for l, m in self.parts)

    def __str__(self) -> str:
        if not self.parts:
            return "empty"
        return " + ".join(f"{l if l > 1 else ''}K{m}" for l, m in self.parts)


def ccc_graph(G: FiniteGroup) -> SimpleGraph:
    """Vertices: non-central classes.  Distinct classes X, Y are adjacent iff
    a fixed representative x of X commutes with some member of Y; conjugating
    any commuting pair (x', y') back to x' = x shows this is enough."""
    data = conjugacy_data(G)
    verts = data.noncentral()
    pos = {c: i for i, c in enumerate(verts)}
    k = len(verts)
    A = np.zeros((k, k), dtype=bool)
    for i, c in enumerate(verts):
        x = data.classes[c].representative
        cent = np.flatnonzero(G.mul[x] == G.mul[:, x])
        for d in np.unique(data.class_of[cent]):
            j = pos.get(int(d))
            if j is not None and j != i:
                A[i, j] = A[j, i] = True
    labels = tuple(G.element_label(data.classes[c].representative) for c in verts)
    return SimpleGraph(labels, A)


def ccc_graph_all_pairs(G: FiniteGroup) -> SimpleGraph:
    """Reference edge test straight from the definition: any commuting pair of members."""
    data = conjugacy_data(G)
    verts = data.noncentral()
    pos = np.full(len(data.classes), -1, dtype=np.int64)
    pos[verts] = np.arange(len(verts))
    vclass = pos[data.class_of]
    xs, ys = np.nonzero(commute_matrix(G))
    u, v = vclass[xs], vclass[ys]
    keep = (u >= 0) & (v >= 0) & (u != v)
    A = np.zeros((len(verts), len(verts)), dtype=bool)
    A[u[keep], v[keep]] = True
    labels = tuple(G.element_label(data.classes[c].representative) for c in verts)
    return SimpleGraph(labels, A | A.T)


def detect_clique_union(g: SimpleGraph) -> CliqueDecomposition | None:
    n = g.num_vertices
    if n == 0:
        return CliqueDecomposition(())
    ncomp, comp = connected_components(csr_matrix(g.adjacency), directed=False)
    sizes = np.bincount(comp, minlength=ncomp)
    deg = g.adjacency.sum(axis=1)
    # a component is complete iff every vertex in it has degree size - 1
    if not (deg == sizes[comp] - 1).all():
        return None
    return CliqueDecomposition.of((1, int(s)) for s in sizes)


def graph_from_decomposition(d: CliqueDecomposition) -> SimpleGraph:
    labels: list[str] = []
    edges: list[tuple[int, int]] = []
    for l, m in d.parts:
        for copy in range(l):
            base = len(labels)
            labels += [f"K{m}.{copy}.{i}" for i in range(m)]
            edges += [(base + i, base + j) for i in range(m) for j in range(i + 1, m)]
    return SimpleGraph.from_edges(labels, edges)


def export_dot(g: SimpleGraph, name: str = "CCC") -> str:
    safe = re.sub(r"[^A-Za-z0-9_]", "_", name) or "G"
    lines = [f"graph {safe} {{"]
    for i, lab in enumerate(g.labels):
        lines.append(f'  v{i} [label="{_dot_escape(lab)}"];')
    for u, v in g.edges():
        lines.append(f"  v{u} -- v{v};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def _dot_escape(s: str) -> str:
    return s.replace("\\", "\\\\").replace('"', '\\"')


# --- graph mini-syntax for the CLI ---------------------------------------------

_PART = re.compile(r"^\s*(?:(?P<kind>K|star|P|C|E)\s*:\s*(?P<n>\d+))\s*$", re.IGNORECASE)
_DECOMP_PART = re.compile(r"^\s*(?P<l>\d*)\s*K\s*_?\{?(?P<m>\d+)\}?\s*$")


def parse_graph_expr(text: str) -> SimpleGraph:
    """``K:n`` complete, ``star:n`` (K_{1,n}), ``P:n`` path, ``C:n`` cycle,
    ``E:n`` edgeless; ``+`` is disjoint union.  ``star:5+K:3`` is K_{1,5} + K_3."""
    labels: list[str] = []
    edges: list[tuple[int, int]] = []
    for comp, piece in enumerate(text.split("+")):
        m = _PART.match(piece)
        if not m:
            raise GraphError(f"cannot parse graph component {piece.strip()!r}")
        kind, n = m.group("kind").lower(), int(m.group("n"))
        base = len(labels)
        if kind == "k":
            size = n
            local = [(i, j) for i in range(n) for j in range(i + 1, n)]
        elif kind == "star":
            size = n + 1
            local = [(0, j) for j in range(1, n + 1)]
        elif kind == "p":
            size = n
            local = [(i, i + 1) for i in range(n - 1)]
        elif kind == "c":
            if n < 3:
                raise GraphError("cycle needs at least 3 vertices")
            size = n
            local = [(i, (i + 1) % n) for i in range(n)]
        else:
            size = n
            local = []
        if size < 1:
            raise GraphError(f"component {piece.strip()!r} has no vertices")
        labels += [f"{comp}.{i}" for i in range(size)]
        edges += [(base + u, base + v) for u, v in local]
    return SimpleGraph.from_edges(labels, edges)


def parse_decomposition(text: str) -> CliqueDecomposition:
    """``2K4+K1`` style: optional multiplicity, then K and the clique size."""
    pieces = []
    for piece in text.split("+"):
        m = _DECOMP_PART.match(piece)
        if not m:
            raise GraphError(f"not a clique-union term: {piece.strip()!r} (expected e.g. 2K4)")
        pieces.append((int(m.group("l") or 1), int(m.group("m"))))
    return CliqueDecomposition.of(pieces)
