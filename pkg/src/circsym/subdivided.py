"""Subdivided circulants C_n(i/p, j) and C_n(i, j/p).

Vertex indexing is fixed: u_a -> a and v_a^r -> n + a*p + (r - 1).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import total_ordering

from .circulant import (
    CirculantSpec,
    TwinClassification,
    TwinVariant,
    require_connected,
)
from .errors import InvariantViolationError
from .graph_core import Graph


class Arc(enum.Enum):
    I = "i"
    J = "j"


class Regime(enum.Enum):
    GENERIC = "GenericArc"
    HALF_SUM_ARC = "HalfSumArc"


@total_ordering
@dataclass(frozen=True)
class SubdividedSpec:
    base: CirculantSpec
    arc: Arc
    p: int

    def __post_init__(self):
        if self.p < 1:
            raise InvariantViolationError(f"p must be >= 1, got {self.p}")
        require_connected(self.base)

    def sort_key(self) -> tuple:
        return (self.base.n, self.base.i, self.base.j, self.arc.value, self.p)

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    @property
    def n(self) -> int:
        return self.base.n

    @property
    def regime(self) -> Regime:
        if self.arc is Arc.J and self.base.half:
            return Regime.HALF_SUM_ARC
        return Regime.GENERIC

    @property
    def subdivided_generator(self) -> int:
        return self.base.i if self.arc is Arc.I else self.base.j

    @property
    def other_generator(self) -> int:
        return self.base.j if self.arc is Arc.I else self.base.i

    @property
    def vertex_count(self) -> int:
        return self.n * (1 + self.p)

    def u(self, a: int) -> int:
        return a % self.n

    def v(self, a: int, r: int) -> int:
        if not 1 <= r <= self.p:
            raise IndexError(f"superscript {r} outside 1..{self.p}")
        return self.n + (a % self.n) * self.p + (r - 1)

    def decode(self, index: int) -> tuple[str, int, int]:
        """('u', a, 0) or ('v', a, r)."""
        if index < self.n:
            return ("u", index, 0)
        k = index - self.n
        return ("v", k // self.p, k % self.p + 1)

    def label(self, index: int) -> str:
        kind, a, r = self.decode(index)
        return f"u_{a}" if kind == "u" else f"v_{a}_{r}"

    def __str__(self):
        b = self.base
        if self.arc is Arc.I:
            return f"C_{b.n}({b.i}/{self.p},{b.j})"
        return f"C_{b.n}({b.i},{b.j}/{self.p})"


def build_subdivided(spec: SubdividedSpec) -> Graph:
    n, p = spec.n, spec.p
    g, h = spec.subdivided_generator, spec.other_generator
    edges = set()
    for a in range(n):
        # path u_a, v_a^1, ..., v_a^p, u_{a+g}
        path = [spec.u(a)] + [spec.v(a, r) for r in range(1, p + 1)] + [spec.u(a + g)]
        for x, y in zip(path, path[1:]):
            edges.add((min(x, y), max(x, y)))
        x, y = spec.u(a), spec.u(a + h)
        edges.add((min(x, y), max(x, y)))
    labels = [spec.label(k) for k in range(spec.vertex_count)]
    return Graph(spec.vertex_count, sorted(edges), labels, name=str(spec))


def twin_classification_subdivided(spec: SubdividedSpec) -> TwinClassification:
    total = spec.vertex_count
    if spec.regime is Regime.GENERIC or spec.p >= 2:
        return TwinClassification(
            TwinVariant.TWIN_FREE, tuple((x,) for x in range(total)), "none"
        )
    n, j = spec.n, spec.base.j
    classes: list[tuple[int, ...]] = []
    paired = set()
    if (spec.base.n, spec.base.i, spec.base.j) == (4, 1, 2):
        for a in range(2):
            classes.append((spec.u(a), spec.u(a + 2)))
            paired.update(classes[-1])
    for a in range(j):
        classes.append((spec.v(a, 1), spec.v(a + j, 1)))
        paired.update(classes[-1])
    classes.extend((x,) for x in range(total) if x not in paired)
    classes.sort(key=min)
    return TwinClassification(TwinVariant.HALF_SUM, tuple(classes), "nonadjacent")
