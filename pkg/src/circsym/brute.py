"""Brute-force automorphism oracle.

Backtracking over vertex images along a BFS order, pruned by one round of
(degree, neighbour-degree multiset) refinement and incremental adjacency
consistency.  To keep the number of leaves proportional to the size of a base
rather than to |Aut(G)|, the search finds one automorphism per coset of each
point stabiliser in the chain G = G_0 >= G_1 >= ... (fix the first k vertices
of the order), then expands the transversals into the full element list.
"""

from __future__ import annotations

import os
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .errors import BudgetExceededError
from .graph_core import Graph

DEFAULT_MAX_VERTICES = 60
DEFAULT_MAX_NODES = 10**8


def default_max_nodes() -> int:
    raw = os.environ.get("CIRCSYM_BUDGET_NODES")
    return int(raw) if raw else DEFAULT_MAX_NODES


@dataclass(frozen=True)
class PermGroupRaw:
    """An explicitly enumerated permutation group, rows sorted lexicographically."""

    array: np.ndarray = field(repr=False)

    @property
    def order(self) -> int:
        return int(self.array.shape[0])

    @property
    def degree(self) -> int:
        return int(self.array.shape[1])

    @cached_property
    def perms(self) -> list[tuple[int, ...]]:
        return [tuple(int(x) for x in row) for row in self.array]

    def __len__(self):
        return self.order

    def __iter__(self):
        return iter(self.perms)

    def __contains__(self, perm) -> bool:
        return tuple(perm) in self._lookup

    @cached_property
    def _lookup(self) -> frozenset:
        return frozenset(self.perms)

    def permutation_array(self) -> np.ndarray:
        return self.array


def sort_rows(arr: np.ndarray) -> np.ndarray:
    if arr.shape[0] <= 1:
        return arr
    idx = np.lexsort(arr.T[::-1])
    return arr[idx]


def _refined_classes(G: Graph) -> list[int]:
    key = [
        (G.degree(v), tuple(sorted(G.degree(w) for w in G.neighbors(v)))) for v in G.vertices()
    ]
    ids = {k: n for n, k in enumerate(sorted(set(key)))}
    return [ids[k] for k in key]


def _bfs_order(G: Graph) -> tuple[list[int], list[int]]:
    """Vertex order covering every component, and each vertex's BFS parent (-1 for roots)."""
    n = G.vertex_count
    parent = [-1] * n
    seen = [False] * n
    order: list[int] = []
    for root in range(n):
        if seen[root]:
            continue
        seen[root] = True
        queue = deque([root])
        while queue:
            x = queue.popleft()
            order.append(x)
            for w in G.sorted_neighbors(x):
                if not seen[w]:
                    seen[w] = True
                    parent[w] = x
                    queue.append(w)
    return order, parent


class _Search:
    def __init__(self, G: Graph, max_nodes: int):
        self.G = G
        self.n = G.vertex_count
        self.adj = G.adjacency
        self.sadj = [G.sorted_neighbors(v) for v in G.vertices()]
        self.cls = _refined_classes(G)
        self.order, self.parent = _bfs_order(G)
        pos = [0] * self.n
        for k, v in enumerate(self.order):
            pos[v] = k
        self.pos = pos
        # neighbours of order[k] that precede it in the order
        self.earlier = [
            [w for w in self.sadj[v] if pos[w] < pos[v]] for v in self.order
        ]
        self.max_nodes = max_nodes
        self.nodes = 0

    def _tick(self):
        self.nodes += 1
        if self.nodes > self.max_nodes:
            raise BudgetExceededError(
                f"automorphism search exceeded {self.max_nodes} nodes on {self.G.name}"
            )

    def _consistent(self, x: int, y: int, image: list[int]) -> bool:
        earlier = self.earlier[self.pos[x]]
        ny = self.adj[y]
        for w in earlier:
            if image[w] not in ny:
                return False
        # no extra edges towards already-used vertices
        used_nbrs = sum(1 for z in ny if self.used[z])
        return used_nbrs == len(earlier)

    def extend(self, start: int, image: list[int]) -> list[int] | None:
        """Complete a partial map defined on order[:start]; first success or None."""
        if start == self.n:
            return list(image)
        x = self.order[start]
        par = self.parent[x]
        if par >= 0:
            candidates: Iterable[int] = self.sadj[image[par]]
        else:
            candidates = range(self.n)
        cx = self.cls[x]
        for y in candidates:
            if self.used[y] or self.cls[y] != cx:
                continue
            self._tick()
            if not self._consistent(x, y, image):
                continue
            image[x] = y
            self.used[y] = True
            found = self.extend(start + 1, image)
            self.used[y] = False
            image[x] = -1
            if found is not None:
                return found
        return None

    def find(self, k: int, y: int) -> list[int] | None:
        """An automorphism fixing order[:k] pointwise and sending order[k] to y."""
        image = [-1] * self.n
        self.used = [False] * self.n
        for v in self.order[:k]:
            image[v] = v
            self.used[v] = True
        x = self.order[k]
        if self.cls[y] != self.cls[x] or self.used[y]:
            return None
        par = self.parent[x]
        if par >= 0 and y not in self.adj[image[par]]:
            return None
        self._tick()
        if not self._consistent(x, y, image):
            return None
        image[x] = y
        self.used[y] = True
        return self.extend(k + 1, image)


def _orbit_transversal(x: int, gens: list[np.ndarray], n: int) -> dict[int, np.ndarray]:
    """Orbit of x under <gens> with one element per orbit point (Schreier tree)."""
    ident = np.arange(n)
    trans = {x: ident}
    queue = deque([x])
    while queue:
        y = queue.popleft()
        for g in gens:
            z = int(g[y])
            if z not in trans:
                trans[z] = g[trans[y]]  # g o trans[y]
                queue.append(z)
    return trans


def brute_automorphisms(
    G: Graph,
    max_vertices: int = DEFAULT_MAX_VERTICES,
    max_nodes: int | None = None,
) -> PermGroupRaw:
    """Aut(G), exactly, as a lexicographically sorted permutation array."""
    n = G.vertex_count
    if n > max_vertices:
        raise BudgetExceededError(f"{G.name} has {n} vertices, budget is {max_vertices}")
    if max_nodes is None:
        max_nodes = default_max_nodes()
    if n == 0:
        return PermGroupRaw(np.zeros((1, 0), dtype=np.int64))
    search = _Search(G, max_nodes)
    gens: list[np.ndarray] = []
    transversals: list[list[np.ndarray]] = []
    for k in range(n - 1, -1, -1):
        x = search.order[k]
        trans = _orbit_transversal(x, gens, n)
        for y in range(n):
            if y in trans or search.cls[y] != search.cls[x]:
                continue
            perm = search.find(k, y)
            if perm is not None:
                gens.append(np.array(perm, dtype=np.int64))
                trans = _orbit_transversal(x, gens, n)
        transversals.append([trans[y] for y in sorted(trans)])

    # transversals[-1] belongs to the first base point; G_{k-1} = T_k o G_k
    elements = np.arange(n, dtype=np.int64)[None, :]
    for reps in transversals:
        T = np.stack(reps)
        elements = T[:, elements].reshape(-1, n)
    return PermGroupRaw(sort_rows(elements))


def _as_array(group) -> np.ndarray:
    if isinstance(group, np.ndarray):
        return group
    if hasattr(group, "permutation_array"):
        return group.permutation_array()
    return np.asarray([list(p) for p in group], dtype=np.int64)


def setwise_stabilizer(group, S: Iterable[int]) -> list[tuple[int, ...]]:
    """Elements g with g(S) = S."""
    arr = _as_array(group)
    S = sorted(set(S))
    if not S:
        return [tuple(int(x) for x in row) for row in arr]
    member = np.zeros(arr.shape[1], dtype=bool)
    member[S] = True
    keep = member[arr[:, S]].all(axis=1)
    return [tuple(int(x) for x in row) for row in arr[keep]]


def pointwise_stabilizer(group, S: Iterable[int]) -> list[tuple[int, ...]]:
    """Elements g with g(v) = v for every v in S."""
    arr = _as_array(group)
    S = sorted(set(S))
    keep = (arr[:, S] == np.asarray(S, dtype=arr.dtype)).all(axis=1) if S else np.ones(
        arr.shape[0], dtype=bool
    )
    return [tuple(int(x) for x in row) for row in arr[keep]]


def orbit(group, v: int) -> set[int]:
    arr = _as_array(group)
    return {int(x) for x in np.unique(arr[:, v])}


def is_group(perms: Sequence[Sequence[int]]) -> bool:
    """Closure check (identity, products, inverses); quadratic, for tests."""
    arr = np.asarray(perms, dtype=np.int64)
    n = arr.shape[1]
    rows = {tuple(r) for r in arr.tolist()}
    if tuple(range(n)) not in rows:
        return False
    for g in arr:
        if tuple(np.argsort(g).tolist()) not in rows:
            return False
        prods = g[arr]
        if any(tuple(r) not in rows for r in prods.tolist()):
            return False
    return True
