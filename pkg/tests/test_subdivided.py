from __future__ import annotations

from pathlib import Path

import pytest

from circsym.circulant import CirculantSpec, connected_specs
from circsym.errors import DisconnectedSpecError, InvariantViolationError
from circsym.graph_core import twin_partition
from circsym.subdivided import (
    Arc,
    Regime,
    SubdividedSpec,
    build_subdivided,
    twin_classification_subdivided,
)

GOLDEN = Path(__file__).parent / "golden"


def sub(n, i, j, arc, p):
    return SubdividedSpec(CirculantSpec(n, i, j), arc, p)


def test_examples():
    G = build_subdivided(sub(6, 1, 2, Arc.I, 2))
    assert G.vertex_count == 18
    spec = sub(8, 1, 4, Arc.J, 1)
    G = build_subdivided(spec)
    assert G.vertex_count == 16
    for a in range(8):
        assert {spec.v(a, 1), spec.v(a + 4, 1)} <= G.neighbors(spec.u(a))
    spec = sub(7, 1, 2, Arc.I, 1)
    G = build_subdivided(spec)
    for a in range(7):
        assert G.neighbors(spec.v(a, 1)) == {spec.u(a), spec.u(a + 1)}


def test_index_scheme_and_labels():
    spec = sub(6, 1, 2, Arc.I, 2)
    assert spec.v(3, 2) == 6 + 3 * 2 + 1
    assert spec.label(spec.v(3, 2)) == "v_3_2"
    assert spec.label(3) == "u_3"
    assert spec.decode(spec.v(5, 1)) == ("v", 5, 1)
    with pytest.raises(IndexError):
        spec.v(0, 3)


def test_spec_validation():
    with pytest.raises(InvariantViolationError):
        sub(7, 1, 2, Arc.I, 0)
    with pytest.raises(DisconnectedSpecError):
        sub(10, 2, 4, Arc.I, 1)


def test_regime():
    assert sub(8, 1, 4, Arc.J, 2).regime is Regime.HALF_SUM_ARC
    assert sub(8, 1, 4, Arc.I, 2).regime is Regime.GENERIC
    assert sub(8, 1, 3, Arc.J, 2).regime is Regime.GENERIC


def test_degrees_and_neighbourhoods():
    for base in connected_specs(4, 16):
        for arc in Arc:
            for p in (1, 2, 3):
                spec = SubdividedSpec(base, arc, p)
                G = build_subdivided(spec)
                n = base.n
                assert G.vertex_count == n * (1 + p)
                for a in range(n):
                    assert all(G.degree(spec.v(a, r)) == 2 for r in range(1, p + 1))
                    deg = 3 if (arc is Arc.I and base.half) else 4
                    assert G.degree(spec.u(a)) == deg, spec
                if arc is Arc.I:
                    i, j = base.i, base.j
                    want = {spec.v(0, 1), spec.v(-i, p), spec.u(-j), spec.u(j)}
                    assert G.neighbors(0) == want
                elif base.half:
                    i, j = base.i, base.j
                    want = {spec.v(0, 1), spec.v(j, p), spec.u(-i), spec.u(i)}
                    assert G.neighbors(0) == want


def test_twin_classification_examples():
    tc = twin_classification_subdivided(sub(8, 1, 4, Arc.J, 1))
    spec = sub(8, 1, 4, Arc.J, 1)
    assert [c for c in tc.classes if len(c) > 1] == [
        (spec.v(a, 1), spec.v(a + 4, 1)) for a in range(4)
    ]
    spec = sub(4, 1, 2, Arc.J, 1)
    pairs = [c for c in twin_classification_subdivided(spec).classes if len(c) > 1]
    assert (0, 2) in pairs and (1, 3) in pairs and len(pairs) == 4
    assert twin_classification_subdivided(sub(10, 3, 5, Arc.J, 2)).twin_free


def test_twin_classification_matches_direct():
    for base in connected_specs(4, 30):
        for arc in Arc:
            for p in (1, 2, 3, 4):
                spec = SubdividedSpec(base, arc, p)
                G = build_subdivided(spec)
                tc = twin_classification_subdivided(spec)
                assert twin_partition(G).classes == tc.classes, spec


def test_dot_golden():
    G = build_subdivided(sub(6, 1, 2, Arc.I, 2))
    assert G.to_dot() == (GOLDEN / "c6_1div2_2.dot").read_text()
