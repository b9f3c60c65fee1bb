import random
from collections import Counter

import pytest

from conftest import chain, fixture
from ograph.circuits import (
    SlotRef, Traversal, cells_report, closedness_necessary, coboundary, euler_cochain, trace_cells,
)
from ograph.core import build, relabel
from ograph.moves import random_walk, record


def _slots(cs):
    out = []
    for c in list(cs.cells) + list(cs.arcs):
        out += [SlotRef(t.edge, t.position) for t in c.traversals]
    return out


@pytest.mark.parametrize("p", range(1, 9))
def test_lens_cells_and_closedness(p):
    g = fixture(f"lens{p}")
    cs = trace_cells(g)
    # closed spines have Euler characteristic 1, so F = V + 1
    assert cs.F == p + 1
    assert closedness_necessary(g, cs).ok


def test_single_crossing_closed_graph_has_two_cells():
    g = build({"c": 1}, [("c.over_out", "c.under_in"), ("c.under_out", "c.over_in")])
    assert trace_cells(g).F == 2
    assert closedness_necessary(g).ok


def test_parallel_single_crossing_graph_is_not_closed():
    # with this port convention the over->over / under->under wiring has
    # Euler characteristic 2, so it cannot be a closed spine
    g = build({"c": 1}, [("c.over_out", "c.over_in"), ("c.under_out", "c.under_in")])
    cs = trace_cells(g)
    assert cs.F == 3
    assert not closedness_necessary(g, cs).checks["F=V+1"]


def test_slot_partition_on_tangle():
    g = record("PrimaryMP").lhs
    cs = trace_cells(g)
    slots = _slots(cs)
    assert len(slots) == 3 * g.E == len(set(slots))
    assert cs.arcs


def test_slot_partition(corpus_graph):
    cs = trace_cells(corpus_graph)
    slots = _slots(cs)
    assert Counter(slots) == Counter(SlotRef(e.id, p) for e in corpus_graph.edges for p in (1, 2, 3))


def _walk_graphs(n=60, seed=5):
    out = []
    for name in ("lens1", "lens2", "s3"):
        for _, _, h, _ in random_walk(fixture(name), random.Random(seed), n // 3):
            out.append(h)
    return out


def test_dot_parity_and_dot_total():
    # each crossing has two dotted corners, each passed by exactly one circuit
    for g in [fixture(n) for n in ("lens1", "lens4", "lens8", "l21")] + _walk_graphs():
        cs = trace_cells(g)
        assert all(c.n % 2 == 0 for c in cs.cells)
        assert sum(c.n for c in cs.cells) == 2 * g.V
        assert sum(euler_cochain(g, cs).values()) == g.V - cs.F


def test_cell_boundaries_are_cycles():
    # walking a boundary, each traversal ends where the next corner sits
    for g in [fixture("lens3"), fixture("l21")] + _walk_graphs(30, 2):
        eidx = {e.id: e for e in g.edges}
        for c in trace_cells(g).cells:
            seq = c.boundary
            for i, item in enumerate(seq):
                if isinstance(item, Traversal):
                    e = eidx[item.edge]
                    end = e.target if item.direction == 1 else e.source
                    assert seq[(i + 1) % len(seq)].crossing == end.crossing


def test_cell_ids_do_not_depend_on_names():
    g = fixture("lens4")
    h = relabel(g, {c: c for c in g.crossings}, {e.id: e.id for e in g.edges})
    assert cells_report(g) == cells_report(h)


def test_euler_cochain_values():
    g = fixture("s3")
    cs = trace_cells(g)
    cp = euler_cochain(g, cs)
    for c in cs.cells:
        assert cp[c.id] == c.n // 2 - 1
    assert sorted((c.n, cp[c.id]) for c in cs.cells) == [(0, -1), (2, 0)]


def test_coboundary_zero_and_linear():
    rng = random.Random(0)
    for g in [fixture(n) for n in ("lens3", "lens5", "l21")]:
        cs = trace_cells(g)
        zero = {e.id: 0 for e in g.edges}
        assert set(coboundary(g, cs, zero).values()) == {0}
        x1 = {e.id: rng.randint(-5, 5) for e in g.edges}
        x2 = {e.id: rng.randint(-5, 5) for e in g.edges}
        s = {k: x1[k] + x2[k] for k in x1}
        d1, d2, ds = coboundary(g, cs, x1), coboundary(g, cs, x2), coboundary(g, cs, s)
        assert all(ds[c] == d1[c] + d2[c] for c in ds)


@pytest.mark.parametrize("name", ["s3", "l21"])
def test_printed_weights_are_framings(name):
    g = fixture(name)
    cs = trace_cells(g)
    assert coboundary(g, cs) == euler_cochain(g, cs)


def test_disjoint_union_is_not_connected():
    a, b = chain(2), chain(3)
    b = relabel(b, {c: "b" + c for c in b.crossings}, {e.id: "b" + e.id for e in b.edges})
    from ograph.core import OGraph

    u = OGraph({**a.crossings, **b.crossings}, a.edges + b.edges)
    rep = closedness_necessary(u)
    assert not rep.checks["connected"]
    assert rep.checks["E=2V"]


def test_closedness_rejects_tangles():
    with pytest.raises(ValueError):
        closedness_necessary(record("A1").lhs)


def test_cells_report_format():
    lines = cells_report(fixture("s3")).splitlines()
    assert lines[0].startswith("cell f0 n=")
    assert all(" boundary=" in l for l in lines)
