"""Two-generator circulant graphs C_n(i, j)."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from math import gcd

from . import zmod
from .errors import (
    DegenerateGeneratorError,
    DisconnectedSpecError,
    InvalidModulusError,
    NormalizationRequiredError,
    WrongRegimeError,
)
from .graph_core import Graph, co_twin_pairs, twin_partition
from .zmod import SpecialCondition


@dataclass(frozen=True, order=True)
class CirculantSpec:
    n: int
    i: int
    j: int

    def __post_init__(self):
        if not (0 < self.i < self.j and 2 * self.j <= self.n):
            raise NormalizationRequiredError(
                f"CirculantSpec needs 0 < i < j <= n/2, got ({self.n},{self.i},{self.j}); "
                "use normalize()"
            )

    @property
    def g(self) -> int:
        return gcd(gcd(self.n, self.i), self.j)

    @property
    def connected(self) -> bool:
        return self.g == 1

    @property
    def half(self) -> bool:
        """True when j = n/2 (the graph is 3-regular)."""
        return 2 * self.j == self.n

    def __str__(self):
        return f"C_{self.n}({self.i},{self.j})"


def normalize(n: int, raw_i: int, raw_j: int) -> CirculantSpec:
    if n < 3:
        raise InvalidModulusError(f"n must be >= 3, got {n}")
    a, b = raw_i % n, raw_j % n
    if a == 0 or b == 0:
        raise DegenerateGeneratorError("a generator is congruent to 0")
    if (a - b) % n == 0 or (a + b) % n == 0:
        raise DegenerateGeneratorError(f"generators {raw_i} and {raw_j} agree up to sign mod {n}")
    a, b = min(a, n - a), min(b, n - b)
    return CirculantSpec(n, min(a, b), max(a, b))


@dataclass(frozen=True)
class Connectivity:
    connected: bool
    component_count: int
    component_spec: CirculantSpec | None


def connectivity(spec: CirculantSpec) -> Connectivity:
    g = spec.g
    if g == 1:
        return Connectivity(True, 1, spec)
    m = spec.n // g
    comp = None
    if m >= 3 and (spec.i // g) % m != (spec.j // g) % m:
        comp = normalize(m, spec.i // g, spec.j // g)
    return Connectivity(False, g, comp)


def build(spec: CirculantSpec) -> Graph:
    n = spec.n
    edges = {
        (min(a, (a + d) % n), max(a, (a + d) % n)) for a in range(n) for d in (spec.i, spec.j)
    }
    return Graph(n, sorted(edges), name=str(spec))


def require_connected(spec: CirculantSpec) -> None:
    if not spec.connected:
        raise DisconnectedSpecError(f"{spec} is disconnected (gcd = {spec.g})")


class TwinVariant(enum.Enum):
    COMPLETE = "CompleteGraph"
    SIX13 = "Six13"
    EIGHT13 = "Eight13"
    HALF_SUM = "HalfSum"
    COTWIN_1013 = "CoTwin1013"
    TWIN_FREE = "TwinFree"


@dataclass(frozen=True)
class TwinClassification:
    variant: TwinVariant
    classes: tuple[tuple[int, ...], ...]
    kind: str  # twin kind of the non-singleton classes, or "none"
    co_twin_pairs: tuple[tuple[int, int], ...] = ()

    @property
    def twin_free(self) -> bool:
        return self.variant in (TwinVariant.TWIN_FREE, TwinVariant.COTWIN_1013)


def twin_classification(spec: CirculantSpec) -> TwinClassification:
    require_connected(spec)
    n, i, j = spec.n, spec.i, spec.j
    singletons = tuple((a,) for a in range(n))
    if n in (4, 5):
        return TwinClassification(TwinVariant.COMPLETE, (tuple(range(n)),), "adjacent")
    if (n, i, j) == (6, 1, 3):
        return TwinClassification(TwinVariant.SIX13, ((0, 2, 4), (1, 3, 5)), "nonadjacent")
    if (n, i, j) == (8, 1, 3):
        return TwinClassification(TwinVariant.EIGHT13, ((0, 2, 4, 6), (1, 3, 5, 7)), "nonadjacent")
    if not spec.half and 2 * (i + j) == n:
        h = n // 2
        return TwinClassification(
            TwinVariant.HALF_SUM, tuple((a, a + h) for a in range(h)), "nonadjacent"
        )
    pairs = _co_twin_pairs(spec)
    if (n, i, j) == (10, 1, 3):
        return TwinClassification(TwinVariant.COTWIN_1013, singletons, "none", pairs)
    return TwinClassification(TwinVariant.TWIN_FREE, singletons, "none", pairs)


def _co_twin_pairs(spec: CirculantSpec) -> tuple[tuple[int, int], ...]:
    """Pairs {a, a+d} with N[a] the complement of N[a+d]; by symmetry only d matters."""
    n = spec.n
    closed0 = {0, spec.i, n - spec.i, spec.j, n - spec.j}
    offsets = [
        d for d in range(1, n) if {(x + d) % n for x in closed0} == set(range(n)) - closed0
    ]
    return tuple(sorted({(min(a, (a + d) % n), max(a, (a + d) % n)) for d in offsets for a in range(n)}))


def is_edge_transitive(spec: CirculantSpec) -> bool:
    require_connected(spec)
    n = spec.n
    if (n, spec.i, spec.j) in ((4, 1, 2), (6, 1, 3)):
        return True
    for k in zmod.units(n):
        s = normalize(n, k * spec.i, k * spec.j)
        if s.i != 1 or s.half:
            continue
        jj = s.j
        if (jj * jj - 1) % n == 0 or (jj * jj + 1) % n == 0:
            return True
        if n % 2 == 0 and n // 2 >= 3 and jj == n // 2 - 1:
            return True
    return False


# -- common neighbours -------------------------------------------------------

# Table rows keyed by column; each entry lists offsets (coefficients of i, j)
# relative to the anchor vertex a.
_ALWAYS = {
    "2i": [(1, 0)],
    "2j": [(0, 1)],
    "i+j": [(1, 0), (0, 1)],
    "i-j": [(1, 0), (0, -1)],
}
_ROWS = {
    SpecialCondition.FOUR_I: {"2i": [(-1, 0)]},
    SpecialCondition.FOUR_J: {"2j": [(0, -1)]},
    SpecialCondition.THREE_I_MINUS_J: {"2i": [(-1, 0), (0, -1)], "i+j": [(-1, 0)]},
    SpecialCondition.THREE_I_J: {"2i": [(-1, 0), (0, 1)], "i-j": [(-1, 0)]},
    SpecialCondition.THREE_J_MINUS_I: {"2j": [(-1, 0), (0, -1)], "i+j": [(0, -1)]},
    SpecialCondition.THREE_J_I: {"2j": [(1, 0), (0, -1)], "i-j": [(0, 1)]},
}
_COLUMN_OFFSET = {"2i": (2, 0), "2j": (0, 2), "i+j": (1, 1), "i-j": (1, -1)}


@dataclass(frozen=True)
class CommonNeighborReport:
    anchor: int  # the vertex the table row is read from
    column: str  # "2i" | "2j" | "i+j" | "i-j"
    pair_offset: int  # the column's offset, canonical mod n
    neighbors: frozenset[int] = field(default_factory=frozenset)


@lru_cache(maxsize=256)
def _neighbor_columns(spec: CirculantSpec) -> dict[int, tuple[str, int, tuple[int, ...], bool]]:
    """Difference b - a -> (column, column offset, offsets from the anchor, anchor is b)."""
    require_connected(spec)
    if not twin_classification(spec).twin_free:
        raise WrongRegimeError(f"{spec} has twins; the common-neighbour tables assume twin-free")
    n, i, j = spec.n, spec.i, spec.j

    def val(c):
        return (c[0] * i + c[1] * j) % n

    if spec.half:
        columns = {"2i": [(1, 0)], "i+j": [(1, 0), (0, 1)]}
    else:
        columns = {col: list(base) for col, base in _ALWAYS.items()}
        for flag in zmod.special_conditions(n, i, j):
            for col, extra in _ROWS[flag].items():
                columns[col].extend(extra)
    lookup: dict[int, tuple[str, int, tuple[int, ...], bool]] = {}
    for col, rel in columns.items():
        off = val(_COLUMN_OFFSET[col])
        row = tuple(val(c) for c in rel)
        # exchanging a and b covers the negated offsets
        lookup.setdefault(off, (col, off, row, False))
        lookup.setdefault((-off) % n, (col, off, row, True))
    return lookup


def common_neighbors_closed(spec: CirculantSpec, a: int, b: int) -> CommonNeighborReport | None:
    """N(a) & N(b) read off the closed-form tables; None when the pair has none."""
    lookup = _neighbor_columns(spec)
    n = spec.n
    a, b = a % n, b % n
    if a == b:
        raise ValueError("a and b must be distinct")
    hit = lookup.get((b - a) % n)
    if hit is None:
        return None
    col, off, row, swapped = hit
    anchor = b if swapped else a
    return CommonNeighborReport(anchor, col, off, frozenset((anchor + d) % n for d in row))


def scan_double_special_conditions(n_max: int) -> list[CirculantSpec]:
    """Connected twin-free specs with j < n/2 satisfying two or more special conditions."""
    if n_max < 12:
        raise ValueError(f"n_max must be >= 12, got {n_max}")
    hits = []
    for n in range(6, n_max + 1):
        for i in range(1, n):
            for j in range(i + 1, (n + 1) // 2):
                if 2 * j >= n or gcd(gcd(n, i), j) != 1 or 2 * (i + j) == n:
                    continue
                if len(zmod.special_conditions(n, i, j)) >= 2:
                    hits.append(CirculantSpec(n, i, j))
    return hits


def connected_specs(n_min: int, n_max: int) -> list[CirculantSpec]:
    """Every connected normalized spec with n_min <= n <= n_max, sorted."""
    out = []
    for n in range(max(n_min, 4), n_max + 1):
        for i in range(1, n // 2 + 1):
            for j in range(i + 1, n // 2 + 1):
                if gcd(gcd(n, i), j) == 1:
                    out.append(CirculantSpec(n, i, j))
    return out
