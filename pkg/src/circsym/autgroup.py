"""Closed-form automorphism groups and their vertex actions.

Base graphs use Affine (s, t): a -> s + t*a, or FlipAffine in the half-sum
twin family.  Subdivisions use Affine extended to the path vertices
(GenericArc) or BetaAffine, the path-flip extension, when the subdivided
generator is n/2.  The few exceptional small bases are carried as explicit
permutation lists taken from the brute oracle.
"""

from __future__ import annotations

import enum
import itertools
import json
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Sequence, Union

import numpy as np

from . import zmod
from .brute import brute_automorphisms, sort_rows
from .circulant import (
    CirculantSpec,
    TwinVariant,
    build,
    require_connected,
    twin_classification,
)
from .errors import BudgetExceededError, ContextMismatchError, InvariantViolationError
from .graph_core import Graph
from .subdivided import Arc, Regime, SubdividedSpec, build_subdivided

Spec = Union[CirculantSpec, SubdividedSpec]


# -- elements -----------------------------------------------------------------


@dataclass(frozen=True)
class Affine:
    s: int
    t: int

    def render(self) -> str:
        return f"affine({self.s},{self.t})"


@dataclass(frozen=True)
class FlipAffine:
    flips: tuple[int, ...]  # one bit per twin pair {a, a + n/2}, a < n/2
    s: int
    t: int  # +1 or -1

    def render(self) -> str:
        return f"flipaffine({''.join(map(str, self.flips))},{self.s},{self.t})"


@dataclass(frozen=True)
class BetaAffine:
    flips: tuple[int, ...]  # one bit per path pair, indexed by a < j
    s: int
    t: int  # +1 or -1

    def render(self) -> str:
        return f"betaaffine({''.join(map(str, self.flips))},{self.s},{self.t})"


@dataclass(frozen=True)
class Perm:
    images: tuple[int, ...]

    def render(self) -> str:
        return f"perm([{','.join(map(str, self.images))}])"


GroupElement = Union[Affine, FlipAffine, BetaAffine, Perm]


def vertex_count(ctx: Spec) -> int:
    return ctx.vertex_count if isinstance(ctx, SubdividedSpec) else ctx.n


def build_graph(ctx: Spec) -> Graph:
    return build_subdivided(ctx) if isinstance(ctx, SubdividedSpec) else build(ctx)


def _act_affine_sub(ctx: SubdividedSpec, s: int, t: int, v: int) -> int:
    n, p, g = ctx.n, ctx.p, ctx.subdivided_generator
    kind, a, r = ctx.decode(v)
    b = (s + t * a) % n
    if kind == "u":
        return b
    if (t * g - g) % n == 0:
        return ctx.v(b, r)
    if (t * g + g) % n == 0:
        return ctx.v(b - g, p + 1 - r)
    raise ContextMismatchError(f"t={t} does not send {g} to +-{g} mod {n}")


def act(e: GroupElement, v: int, ctx: Spec) -> int:
    """Image of vertex v under e acting on the graph described by ctx."""
    size = vertex_count(ctx)
    if not 0 <= v < size:
        raise IndexError(f"vertex {v} out of range for {ctx}")
    if isinstance(e, Perm):
        if len(e.images) != size:
            raise ContextMismatchError(f"permutation of length {len(e.images)} on {ctx}")
        return e.images[v]
    if isinstance(e, Affine):
        if isinstance(ctx, SubdividedSpec):
            if ctx.regime is not Regime.GENERIC:
                raise ContextMismatchError("Affine elements act on GenericArc subdivisions only")
            return _act_affine_sub(ctx, e.s, e.t, v)
        return (e.s + e.t * v) % ctx.n
    if isinstance(e, FlipAffine):
        if isinstance(ctx, SubdividedSpec) or 2 * len(e.flips) != ctx.n:
            raise ContextMismatchError("FlipAffine needs a base graph with n/2 flip bits")
        h = ctx.n // 2
        y = (e.s + e.t * v) % ctx.n
        return (y + h) % ctx.n if e.flips[y % h] else y
    if isinstance(e, BetaAffine):
        if not isinstance(ctx, SubdividedSpec) or ctx.regime is not Regime.HALF_SUM_ARC:
            raise ContextMismatchError("BetaAffine acts on HalfSumArc subdivisions only")
        j = ctx.base.j
        if len(e.flips) != j:
            raise ContextMismatchError(f"BetaAffine needs {j} flip bits")
        kind, a, r = ctx.decode(v)
        b = (e.s + e.t * a) % ctx.n
        if kind == "u":
            return b
        if e.flips[b % j]:
            return ctx.v(b + j, ctx.p + 1 - r)
        return ctx.v(b, r)
    raise ContextMismatchError(f"unknown element {e!r}")


def induced_permutation(e: GroupElement, ctx: Spec) -> tuple[int, ...]:
    return tuple(act(e, v, ctx) for v in range(vertex_count(ctx)))


def compose(e1: GroupElement, e2: GroupElement, ctx: Spec) -> Perm:
    """e1 after e2, as an explicit permutation."""
    p2 = induced_permutation(e2, ctx)
    p1 = induced_permutation(e1, ctx)
    return Perm(tuple(p1[x] for x in p2))


def beta(ctx: SubdividedSpec, a: int) -> BetaAffine:
    """The single path flip beta_a."""
    j = ctx.base.j
    bits = [0] * j
    bits[a % j] = 1
    return BetaAffine(tuple(bits), 0, 1)


# -- groups -------------------------------------------------------------------


class StructureTag(str, enum.Enum):
    ZNH = "ZnH"
    ZNH_PRIME = "ZnHprime"
    SYMMETRIC = "Symmetric"
    Z2XS5 = "Z2xS5"
    WREATH_LIKE = "WreathLike"
    FLIP_ZN_PM = "FlipZnPm"
    BETA_Z2J_PM = "BetaZ2jPm"


@dataclass(frozen=True)
class AutGroup:
    elements: tuple[GroupElement, ...]
    order: int
    structure_tag: StructureTag
    context: Spec

    def __post_init__(self):
        if self.order != len(self.elements):
            raise InvariantViolationError(
                f"order {self.order} but {len(self.elements)} elements for {self.context}"
            )

    @property
    def tag_label(self) -> str:
        if self.structure_tag is StructureTag.SYMMETRIC:
            return f"Symmetric({self.context.n})"
        if self.structure_tag is StructureTag.WREATH_LIKE:
            return f"WreathLike({self.context})"
        return self.structure_tag.value

    @cached_property
    def _perm_array(self) -> np.ndarray:
        fast = _vectorized_array(self)
        if fast is not None:
            return fast
        rows = [induced_permutation(e, self.context) for e in self.elements]
        return np.asarray(rows, dtype=np.int64).reshape(len(rows), vertex_count(self.context))

    def permutation_array(self) -> np.ndarray:
        """Induced permutations, one row per element, in element order."""
        return self._perm_array

    def __len__(self):
        return self.order

    def __iter__(self):
        return iter(self.elements)


def _vectorized_array(group: AutGroup) -> np.ndarray | None:
    """Same rows as induced_permutation, built with numpy for the large families."""
    ctx, elems = group.context, group.elements
    if group.structure_tag is StructureTag.ZNH:
        n = ctx.n
        s = np.fromiter((e.s for e in elems), dtype=np.int64, count=len(elems))
        t = np.fromiter((e.t for e in elems), dtype=np.int64, count=len(elems))
        return (s[:, None] + t[:, None] * np.arange(n)[None, :]) % n
    if group.structure_tag is StructureTag.FLIP_ZN_PM:
        n, h = ctx.n, ctx.n // 2
        s = np.fromiter((e.s for e in elems), dtype=np.int64, count=len(elems))
        t = np.fromiter((e.t for e in elems), dtype=np.int64, count=len(elems))
        bits = np.asarray([e.flips for e in elems], dtype=np.int64)
        y = (s[:, None] + t[:, None] * np.arange(n)[None, :]) % n
        flip = np.take_along_axis(bits, y % h, axis=1)
        return (y + h * flip) % n
    if group.structure_tag is StructureTag.BETA_Z2J_PM:
        size = vertex_count(ctx)
        j = ctx.base.j
        # affine part per (t, s), flip part per bit vector
        affine = {}
        flipped = np.arange(size)
        slot = np.full(size, -1)
        for w in range(size):
            kind, a, r = ctx.decode(w)
            if kind == "v":
                flipped[w] = ctx.v(a + j, ctx.p + 1 - r)
                slot[w] = a % j
        rows = []
        for e in elems:
            key = (e.s, e.t)
            if key not in affine:
                affine[key] = np.asarray(
                    induced_permutation(BetaAffine((0,) * j, e.s, e.t), ctx), dtype=np.int64
                )
            img = affine[key]
            bits = np.asarray(e.flips + (0,), dtype=bool)  # slot -1 reads the trailing 0
            rows.append(np.where(bits[slot[img]], flipped[img], img))
        return np.stack(rows)
    return None


def _affine_elements(n: int, ts: Sequence[int]) -> tuple[Affine, ...]:
    return tuple(Affine(s, t) for t in ts for s in range(n))


@lru_cache(maxsize=None)
def _oracle_perms(spec: CirculantSpec, expected: int) -> tuple[Perm, ...]:
    raw = brute_automorphisms(build(spec))
    if raw.order != expected:
        raise InvariantViolationError(f"oracle gives {raw.order} for {spec}, expected {expected}")
    return tuple(Perm(p) for p in raw.perms)


_EXCEPTIONAL = {
    (6, 1, 3): (72, StructureTag.WREATH_LIKE),
    (8, 1, 3): (1152, StructureTag.WREATH_LIKE),
    (10, 1, 3): (240, StructureTag.Z2XS5),
}


def _base_group(spec: CirculantSpec) -> AutGroup:
    n = spec.n
    variant = twin_classification(spec).variant
    if variant is TwinVariant.COMPLETE:
        elems = tuple(Perm(p) for p in itertools.permutations(range(n)))
        return AutGroup(elems, len(elems), StructureTag.SYMMETRIC, spec)
    key = (spec.n, spec.i, spec.j)
    if key in _EXCEPTIONAL:
        order, tag = _EXCEPTIONAL[key]
        elems = _oracle_perms(spec, order)
        return AutGroup(elems, order, tag, spec)
    if variant is TwinVariant.HALF_SUM:
        h = n // 2
        elems = tuple(
            FlipAffine((0,) + bits, s, t)
            for t in (1, -1)
            for s in range(n)
            for bits in itertools.product((0, 1), repeat=h - 1)
        )
        return AutGroup(elems, len(elems), StructureTag.FLIP_ZN_PM, spec)
    stab = zmod.symbol_stabilizer(n, spec.i, spec.j)
    elems = _affine_elements(n, stab.h)
    return AutGroup(elems, len(elems), StructureTag.ZNH, spec)


def _subdivided_group(spec: SubdividedSpec) -> AutGroup:
    n = spec.n
    if spec.regime is Regime.HALF_SUM_ARC:
        j = spec.base.j
        elems = tuple(
            BetaAffine(bits, s, t)
            for t in (1, -1)
            for s in range(n)
            for bits in itertools.product((0, 1), repeat=j)
        )
        return AutGroup(elems, len(elems), StructureTag.BETA_Z2J_PM, spec)
    stab = zmod.symbol_stabilizer(n, spec.base.i, spec.base.j)
    elems = _affine_elements(n, stab.h_prime)
    return AutGroup(elems, len(elems), StructureTag.ZNH_PRIME, spec)


def closed_form_group(spec: Spec) -> AutGroup:
    if isinstance(spec, SubdividedSpec):
        return _subdivided_group(spec)
    require_connected(spec)
    return _base_group(spec)


def group_order(spec: Spec) -> int:
    """Order from the closed-form dispatch, without enumerating elements."""
    if isinstance(spec, SubdividedSpec):
        if spec.regime is Regime.HALF_SUM_ARC:
            j = spec.base.j
            return 2**j * 4 * j
        return spec.n * len(zmod.symbol_stabilizer(spec.n, spec.base.i, spec.base.j).h_prime)
    require_connected(spec)
    n = spec.n
    variant = twin_classification(spec).variant
    if variant is TwinVariant.COMPLETE:
        return 24 if n == 4 else 120
    key = (n, spec.i, spec.j)
    if key in _EXCEPTIONAL:
        return _EXCEPTIONAL[key][0]
    if variant is TwinVariant.HALF_SUM:
        return 2 ** (n // 2) * n
    return n * len(zmod.symbol_stabilizer(n, spec.i, spec.j).h)


# -- generators and reports ---------------------------------------------------


def _closure_size(gens: list[np.ndarray], n: int, cap: int) -> int:
    seen = {tuple(range(n))}
    frontier = [np.arange(n)]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = g[x]
                key = tuple(y.tolist())
                if key not in seen:
                    seen.add(key)
                    nxt.append(y)
                    if len(seen) >= cap:
                        return len(seen)
        frontier = nxt
    return len(seen)


def generators(group: AutGroup) -> list[GroupElement]:
    """A small generating set, chosen deterministically."""
    ctx = group.context
    tag = group.structure_tag
    n = ctx.n
    if tag in (StructureTag.ZNH, StructureTag.ZNH_PRIME):
        ts = sorted({e.t for e in group.elements})
        gens: list[GroupElement] = [Affine(1, 1)]
        span = {1}
        for t in ts:
            if t in span:
                continue
            gens.append(Affine(0, t))
            # close the multiplicative span
            while True:
                new = {(a * b) % n for a in span | {t} for b in span | {t}} | span | {t}
                if new == span:
                    break
                span = new
        return gens
    if tag is StructureTag.FLIP_ZN_PM:
        h = n // 2
        e1 = tuple(1 if k == 1 else 0 for k in range(h))
        zero = (0,) * h
        return [FlipAffine(zero, 1, 1), FlipAffine(zero, 0, -1), FlipAffine(e1, 0, 1)]
    if tag is StructureTag.BETA_Z2J_PM:
        j = ctx.base.j
        zero = (0,) * j
        return [BetaAffine(zero, 1, 1), BetaAffine(zero, 0, -1), beta(ctx, 0)]
    # explicit permutation lists: greedy, in element order
    arr = group.permutation_array()
    size = arr.shape[1]
    chosen: list[int] = []
    current = 1
    for idx in range(1, arr.shape[0]):
        trial = _closure_size([arr[c] for c in chosen + [idx]], size, group.order)
        if trial > current:
            chosen.append(idx)
            current = trial
            if current == group.order:
                break
    return [group.elements[c] for c in chosen]


def group_report(group: AutGroup) -> dict:
    return {
        "structure_tag": group.tag_label,
        "order": group.order,
        "generators": [e.render() for e in generators(group)],
    }


def group_report_json(group: AutGroup) -> str:
    return json.dumps(group_report(group), indent=2)


class CheckStatus(str, enum.Enum):
    PASS = "PASS"
    FAIL = "FAIL"
    SKIPPED = "SKIPPED"


@dataclass(frozen=True)
class GroupVerification:
    spec: Spec
    status: CheckStatus
    closed_order: int
    brute_order: int | None
    detail: str = ""


def verify_group(
    spec: Spec, max_vertices: int = 60, max_nodes: int | None = None
) -> GroupVerification:
    """Closed-form group versus the brute oracle: valid, distinct and complete."""
    G = build_graph(spec)
    group = closed_form_group(spec)
    try:
        raw = brute_automorphisms(G, max_vertices=max_vertices, max_nodes=max_nodes)
    except BudgetExceededError as exc:
        return GroupVerification(spec, CheckStatus.SKIPPED, group.order, None, str(exc))
    arr = group.permutation_array()
    edges = np.asarray(G.edges(), dtype=np.int64).reshape(-1, 2)
    problems = []
    adj = np.zeros((G.vertex_count, G.vertex_count), dtype=bool)
    if len(edges):
        adj[edges[:, 0], edges[:, 1]] = True
        adj[edges[:, 1], edges[:, 0]] = True
        ok = adj[arr[:, edges[:, 0]], arr[:, edges[:, 1]]].all(axis=1)
        bijective = (np.sort(arr, axis=1) == np.arange(arr.shape[1])).all(axis=1)
        bad = np.flatnonzero(~(ok & bijective))
        if len(bad):
            problems.append(f"{group.elements[bad[0]].render()} is not an automorphism")
    distinct = np.unique(arr, axis=0).shape[0]
    if distinct != group.order:
        problems.append(f"only {distinct} distinct permutations among {group.order} elements")
    if raw.order != group.order:
        problems.append(f"closed-form order {group.order} != brute order {raw.order}")
    elif not problems and not np.array_equal(sort_rows(arr), raw.array):
        problems.append("element sets differ")
    status = CheckStatus.FAIL if problems else CheckStatus.PASS
    return GroupVerification(spec, status, group.order, raw.order, "; ".join(problems))
