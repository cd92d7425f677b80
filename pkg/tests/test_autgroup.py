from __future__ import annotations

import json

import numpy as np
import pytest

from circsym import zmod
from circsym.autgroup import (
    Affine,
    BetaAffine,
    CheckStatus,
    FlipAffine,
    Perm,
    StructureTag,
    act,
    beta,
    closed_form_group,
    compose,
    generators,
    group_order,
    group_report,
    induced_permutation,
    verify_group,
)
from circsym.brute import brute_automorphisms
from circsym.circulant import CirculantSpec, build, connected_specs
from circsym.errors import ContextMismatchError, DisconnectedSpecError
from circsym.subdivided import Arc, Regime, SubdividedSpec, build_subdivided


def sub(n, i, j, arc, p):
    return SubdividedSpec(CirculantSpec(n, i, j), arc, p)


def test_act_examples():
    assert act(Affine(2, -1), 3, CirculantSpec(7, 1, 2)) == 6
    spec = sub(9, 2, 3, Arc.I, 3)
    for a in range(9):
        for r in (1, 2, 3):
            assert act(Affine(0, -1), spec.v(a, r), spec) == spec.v(-a - 2, 4 - r)
    spec = sub(10, 3, 5, Arc.J, 3)
    assert act(beta(spec, 2), spec.v(2, 1), spec) == spec.v(7, 3)


def test_context_mismatch():
    with pytest.raises(ContextMismatchError):
        act(BetaAffine((0, 0), 0, 1), 0, CirculantSpec(4, 1, 2))
    with pytest.raises(ContextMismatchError):
        act(FlipAffine((0, 0), 0, 1), 0, CirculantSpec(7, 1, 2))
    with pytest.raises(ContextMismatchError):
        act(Affine(0, 1), 0, sub(8, 1, 4, Arc.J, 1))
    with pytest.raises(ContextMismatchError):
        act(Perm((0, 1)), 0, CirculantSpec(7, 1, 2))


@pytest.mark.parametrize(
    "spec,tag,order",
    [
        (CirculantSpec(7, 1, 2), StructureTag.ZNH, 14),
        (CirculantSpec(10, 1, 4), StructureTag.FLIP_ZN_PM, 320),
        (CirculantSpec(6, 1, 3), StructureTag.WREATH_LIKE, 72),
        (CirculantSpec(8, 1, 3), StructureTag.WREATH_LIKE, 1152),
        (CirculantSpec(10, 1, 3), StructureTag.Z2XS5, 240),
        (CirculantSpec(4, 1, 2), StructureTag.SYMMETRIC, 24),
        (CirculantSpec(5, 1, 2), StructureTag.SYMMETRIC, 120),
        (sub(8, 1, 4, Arc.J, 2), StructureTag.BETA_Z2J_PM, 256),
        (sub(12, 2, 3, Arc.I, 2), StructureTag.ZNH_PRIME, 48),
    ],
)
def test_closed_form_groups(spec, tag, order):
    g = closed_form_group(spec)
    assert g.structure_tag is tag
    assert g.order == order == group_order(spec)


def test_group_order_examples():
    assert group_order(CirculantSpec(12, 2, 3)) == 48
    assert group_order(sub(8, 1, 4, Arc.J, 2)) == 256
    assert group_order(CirculantSpec(10, 1, 3)) == 240
    with pytest.raises(DisconnectedSpecError):
        group_order(CirculantSpec(10, 2, 4))


@pytest.mark.parametrize(
    "spec,order",
    [(CirculantSpec(13, 1, 5), 52), (CirculantSpec(12, 1, 5), 768), (sub(6, 1, 3, Arc.J, 2), 96)],
)
def test_verify_group_examples(spec, order):
    rep = verify_group(spec)
    assert rep.status is CheckStatus.PASS
    assert rep.closed_order == rep.brute_order == order


def test_verify_group_skips_over_budget():
    rep = verify_group(CirculantSpec(13, 1, 5), max_vertices=5)
    assert rep.status is CheckStatus.SKIPPED and rep.brute_order is None


def test_flipaffine_canonical_and_distinct():
    g = closed_form_group(CirculantSpec(10, 1, 4))
    assert all(e.flips[0] == 0 for e in g.elements)
    assert np.unique(g.permutation_array(), axis=0).shape[0] == g.order
    # all-flips with s equals no flips with s + n/2
    allflip = induced_permutation(FlipAffine((1,) * 5, 2, -1), CirculantSpec(10, 1, 4))
    assert allflip == induced_permutation(FlipAffine((0,) * 5, 7, -1), CirculantSpec(10, 1, 4))


def test_vectorised_array_matches_elementwise():
    for spec in [CirculantSpec(12, 1, 5), CirculantSpec(13, 1, 5), sub(10, 3, 5, Arc.J, 3)]:
        g = closed_form_group(spec)
        slow = np.asarray([induced_permutation(e, spec) for e in g.elements])
        assert np.array_equal(slow, g.permutation_array())


def test_conjugation_law():
    for spec in connected_specs(5, 24):
        g = closed_form_group(spec)
        if g.structure_tag is not StructureTag.ZNH:
            continue
        n = spec.n
        for t in zmod.symbol_stabilizer(n, spec.i, spec.j).h:
            tinv = pow(t, -1, n)
            for s in range(n):
                lhs = compose(Affine(0, tinv), compose(Affine(s, 1), Affine(0, t), spec), spec)
                assert lhs == Perm(induced_permutation(Affine((s * tinv) % n, 1), spec))


def _halfsum_arc_specs():
    for base in connected_specs(4, 14):
        if base.half:
            for p in (1, 2, 3):
                yield SubdividedSpec(base, Arc.J, p)


def test_beta_relations_and_commutation():
    for spec in _halfsum_arc_specs():
        j, n = spec.base.j, spec.n
        ident = Perm(tuple(range(spec.vertex_count)))
        for a in range(n):
            ba = beta(spec, a)
            assert compose(ba, ba, spec) == ident
            assert induced_permutation(ba, spec) == induced_permutation(beta(spec, a + j), spec)
            for a2 in range(j):
                assert compose(ba, beta(spec, a2), spec) == compose(beta(spec, a2), ba, spec)
            for t in (1, -1):
                for s in range(n):
                    st = BetaAffine((0,) * j, s, t)
                    assert compose(st, ba, spec) == compose(beta(spec, s + t * a), st, spec)


def test_extension_uniqueness():
    """Automorphisms of a subdivision are determined by their action on the u vertices."""
    for base in connected_specs(4, 12):
        for arc in Arc:
            for p in (1, 2, 3):
                spec = SubdividedSpec(base, arc, p)
                if spec.regime is Regime.HALF_SUM_ARC and p == 1:
                    continue  # twins among the v vertices: u-action does not determine them
                raw = brute_automorphisms(build_subdivided(spec))
                heads = {perm[: spec.n] for perm in raw.perms}
                if spec.regime is Regime.GENERIC:
                    assert len(heads) == raw.order, spec


def test_generators_generate():
    for spec in [CirculantSpec(12, 2, 3), CirculantSpec(12, 1, 5), CirculantSpec(6, 1, 3),
                 CirculantSpec(5, 1, 2), sub(8, 1, 4, Arc.J, 2), sub(12, 2, 3, Arc.I, 1)]:
        g = closed_form_group(spec)
        gens = [np.asarray(induced_permutation(e, spec)) for e in generators(g)]
        size = g.permutation_array().shape[1]
        seen = {tuple(range(size))}
        frontier = [np.arange(size)]
        while frontier:
            nxt = []
            for x in frontier:
                for h in gens:
                    y = h[x]
                    if tuple(y) not in seen:
                        seen.add(tuple(y))
                        nxt.append(y)
            frontier = nxt
        assert len(seen) == g.order, spec


def test_group_report_rendering():
    rep = group_report(closed_form_group(CirculantSpec(7, 1, 2)))
    assert rep == {"structure_tag": "ZnH", "order": 14, "generators": ["affine(1,1)", "affine(0,6)"]}
    json.dumps(rep)
    rep = group_report(closed_form_group(sub(8, 1, 4, Arc.J, 1)))
    assert rep["generators"] == [
        "betaaffine(0000,1,1)",
        "betaaffine(0000,0,-1)",
        "betaaffine(1000,0,1)",
    ]
    assert group_report(closed_form_group(CirculantSpec(4, 1, 2)))["structure_tag"] == "Symmetric(4)"
    assert Perm((1, 0)).render() == "perm([1,0])"


def test_closed_form_matches_oracle_small():
    for spec in connected_specs(4, 16):
        assert verify_group(spec).status is CheckStatus.PASS, spec
