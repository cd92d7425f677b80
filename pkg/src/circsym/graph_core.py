"""Immutable undirected graphs, twins, co-twins and the twin quotient."""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import InvariantViolationError


class Graph:
    """Simple undirected graph on vertices 0..n-1 with display labels.

    Adjacency is stored as a tuple of frozensets; the object is never mutated
    after construction.
    """

    __slots__ = ("_adj", "_labels", "_sorted", "name")

    def __init__(
        self,
        vertex_count: int,
        edges: Iterable[tuple[int, int]],
        labels: Sequence[str] | None = None,
        name: str = "G",
    ):
        adj: list[set[int]] = [set() for _ in range(vertex_count)]
        for a, b in edges:
            if not (0 <= a < vertex_count and 0 <= b < vertex_count):
                raise InvariantViolationError(f"edge ({a},{b}) out of range")
            if a == b:
                raise InvariantViolationError(f"self-loop at {a}")
            adj[a].add(b)
            adj[b].add(a)
        self._adj = tuple(frozenset(s) for s in adj)
        self._sorted = tuple(tuple(sorted(s)) for s in adj)
        if labels is None:
            labels = [str(v) for v in range(vertex_count)]
        if len(labels) != vertex_count:
            raise InvariantViolationError("one label per vertex required")
        self._labels = tuple(labels)
        self.name = name

    @property
    def vertex_count(self) -> int:
        return len(self._adj)

    @property
    def labels(self) -> tuple[str, ...]:
        return self._labels

    @property
    def adjacency(self) -> tuple[frozenset[int], ...]:
        return self._adj

    def vertices(self) -> range:
        return range(len(self._adj))

    def _check(self, v: int) -> None:
        if not 0 <= v < len(self._adj):
            raise IndexError(f"vertex {v} out of range 0..{len(self._adj) - 1}")

    def neighbors(self, v: int) -> frozenset[int]:
        self._check(v)
        return self._adj[v]

    def sorted_neighbors(self, v: int) -> tuple[int, ...]:
        self._check(v)
        return self._sorted[v]

    def closed_neighborhood(self, v: int) -> frozenset[int]:
        self._check(v)
        return self._adj[v] | {v}

    def degree(self, v: int) -> int:
        return len(self.neighbors(v))

    def has_edge(self, a: int, b: int) -> bool:
        return b in self._adj[a]

    def edges(self) -> list[tuple[int, int]]:
        return [(a, b) for a in self.vertices() for b in self._sorted[a] if a < b]

    def edge_count(self) -> int:
        return sum(len(s) for s in self._adj) // 2

    def degree_sequence(self) -> list[int]:
        return sorted((len(s) for s in self._adj), reverse=True)

    def is_automorphism(self, perm: Sequence[int]) -> bool:
        n = self.vertex_count
        if len(perm) != n or sorted(perm) != list(range(n)):
            return False
        return all(perm[b] in self._adj[perm[a]] for a, b in self.edges())

    def __eq__(self, other):
        return isinstance(other, Graph) and self._adj == other._adj

    def __hash__(self):
        return hash(self._adj)

    def __repr__(self):
        return f"Graph({self.name!r}, |V|={self.vertex_count}, |E|={self.edge_count()})"

    # -- export --------------------------------------------------------------

    def to_dot(self) -> str:
        lines = [f'graph "{self.name}" {{']
        for v in self.vertices():
            lines.append(f'  {v} [label="{self._labels[v]}"];')
        for a, b in self.edges():
            lines.append(f"  {a} -- {b};")
        lines.append("}")
        return "\n".join(lines) + "\n"

    def to_json(self) -> str:
        return json.dumps(
            {"vertices": list(self._labels), "edges": [list(e) for e in self.edges()]}
        )


def neighbors(G: Graph, v: int) -> frozenset[int]:
    return G.neighbors(v)


def closed_neighborhood(G: Graph, v: int) -> frozenset[int]:
    return G.closed_neighborhood(v)


@dataclass(frozen=True)
class TwinPartition:
    classes: tuple[tuple[int, ...], ...]
    kinds: tuple[str, ...]  # "adjacent" | "nonadjacent" | "singleton"

    def class_of(self, v: int) -> tuple[int, ...]:
        for c in self.classes:
            if v in c:
                return c
        raise IndexError(v)

    @property
    def twin_free(self) -> bool:
        return all(k == "singleton" for k in self.kinds)

    def nontrivial(self) -> tuple[tuple[int, ...], ...]:
        return tuple(c for c in self.classes if len(c) > 1)


def are_twins(G: Graph, u: int, v: int) -> str | None:
    """'adjacent', 'nonadjacent' or None."""
    if u == v:
        return None
    if G.neighbors(u) == G.neighbors(v):
        return "nonadjacent"
    if G.closed_neighborhood(u) == G.closed_neighborhood(v):
        return "adjacent"
    return None


def twin_partition(G: Graph) -> TwinPartition:
    """Twin classes ordered by least member; grouped by hashing N(v) and N[v]."""
    by_open: dict[frozenset, list[int]] = {}
    by_closed: dict[frozenset, list[int]] = {}
    for v in G.vertices():
        by_open.setdefault(G.neighbors(v), []).append(v)
        by_closed.setdefault(G.closed_neighborhood(v), []).append(v)
    seen: set[int] = set()
    classes: list[tuple[int, ...]] = []
    kinds: list[str] = []
    for v in G.vertices():
        if v in seen:
            continue
        cls, kind = by_open[G.neighbors(v)], "nonadjacent"
        if len(cls) == 1:
            cls, kind = by_closed[G.closed_neighborhood(v)], "adjacent"
        if len(cls) == 1:
            kind = "singleton"
        seen.update(cls)
        classes.append(tuple(cls))
        kinds.append(kind)
    return TwinPartition(tuple(classes), tuple(kinds))


def co_twin_pairs(G: Graph) -> list[tuple[int, int]]:
    """Pairs {u, v} with N[u] equal to the complement of N[v]."""
    everything = frozenset(G.vertices())
    return [
        (u, v)
        for u in G.vertices()
        for v in range(u + 1, G.vertex_count)
        if G.closed_neighborhood(u) == everything - G.closed_neighborhood(v)
    ]


@dataclass(frozen=True)
class TwinQuotient:
    quotient: Graph
    class_map: tuple[int, ...]
    classes: tuple[tuple[int, ...], ...]
    uniform_k: int | None


def twin_quotient(G: Graph) -> TwinQuotient:
    part = twin_partition(G)
    # twin_partition already yields classes ordered by minimum member
    classes = part.classes
    class_map = [0] * G.vertex_count
    for idx, c in enumerate(classes):
        for v in c:
            class_map[v] = idx
    edges = {
        (min(class_map[a], class_map[b]), max(class_map[a], class_map[b]))
        for a, b in G.edges()
        if class_map[a] != class_map[b]
    }
    labels = ["{" + ",".join(G.labels[v] for v in c) + "}" for c in classes]
    quotient = Graph(len(classes), sorted(edges), labels, name=f"{G.name}~")
    sizes = {len(c) for c in classes}
    # the quotient can still have twins: C_6(1,3) collapses to K_2
    return TwinQuotient(quotient, tuple(class_map), classes, sizes.pop() if len(sizes) == 1 else None)


def _connected(G: Graph) -> bool:
    if G.vertex_count == 0:
        return True
    seen, stack = {0}, [0]
    while stack:
        for w in G.neighbors(stack.pop()):
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == G.vertex_count


def identify_shape(G: Graph) -> str | None:
    """Name a few small shapes (K_n, P_n, C_n, K_{3,3}) by degree data plus connectivity."""
    n, m = G.vertex_count, G.edge_count()
    degs = G.degree_sequence()
    if n == 0:
        return None
    if m == n * (n - 1) // 2:
        return f"K_{n}"
    if not _connected(G):
        return None
    if m == n - 1 and degs[0] <= 2:
        return f"P_{n}"
    if m == n and all(d == 2 for d in degs):
        return f"C_{n}"
    if n == 6 and m == 9 and all(d == 3 for d in degs):
        # 3-regular on 6 vertices is K_{3,3} or the prism; K_{3,3} is triangle-free
        triangle = any(
            G.neighbors(a) & G.neighbors(b) for a, b in G.edges()
        )
        return None if triangle else "K_{3,3}"
    return None
