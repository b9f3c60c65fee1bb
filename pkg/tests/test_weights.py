import random
from fractions import Fraction

import pytest

from conftest import fixture
from ograph.circuits import boundary_of_edge, follow, trace_cells
from ograph.moves import PS_NAMES, Status, ps_condition, random_walk, record
from ograph.rewrite import strands
from ograph.tables import along
from ograph.weights import (
    FramedIntegralOGraph, FramedOGraph, HalfInt, WeightError, apply_h, mod2, rotation_number_p, solve_framing,
    validate_framed,
)


def test_halfint_arithmetic():
    a, b = HalfInt.of(Fraction(1, 2)), HalfInt.of(3)
    assert (a + b).twice == 7
    assert (b - a) == Fraction(5, 2)
    assert -a == HalfInt(-1)
    assert (a + a).to_int() == 1
    assert str(a) == "1/2" and str(b) == "3"
    with pytest.raises(WeightError):
        a.to_int()
    with pytest.raises(WeightError):
        HalfInt.of(Fraction(1, 3))


@pytest.mark.parametrize("name", ["s3", "l21"])
def test_fixture_weights_are_framed(name):
    g = fixture(name)
    ok, res = validate_framed(g)
    assert ok and not any(res.values())
    FramedIntegralOGraph(g)
    FramedOGraph(mod2(g))


def test_one_weight_off():
    g = fixture("l21")
    cs = trace_cells(g)
    for e in g.edges:
        w = g.weight_map()
        w[e.id] += 1
        ok, res = validate_framed(g, w, cs=cs)
        bad = {k: v for k, v in res.items() if v}
        assert not ok
        assert 1 <= len(bad) <= 2
        assert bad == boundary_of_edge(cs, e.id)


def test_zero_weights_are_not_a_framing():
    g = fixture("lens3")
    cs = trace_cells(g)
    assert any(c.n != 2 for c in cs.cells)
    ok, _ = validate_framed(g, {e.id: 0 for e in g.edges}, cs=cs)
    assert not ok


def test_wrapper_rejects_unframed():
    g = fixture("s3")
    with pytest.raises(WeightError):
        FramedIntegralOGraph(g.with_weights({e.id: 0 for e in g.edges}))


def test_mod2():
    g = fixture("l21")
    even = g.with_weights({e.id: 2 * i for i, e in enumerate(g.edges)})
    assert set(mod2(even).weight_map().values()) == {0}
    m = mod2(g)
    assert m.weights_kind == "mod2"
    assert mod2(m.with_weights(m.weight_map(), "int")) == m
    assert validate_framed(m, coefficients="mod2")[0]
    with pytest.raises(WeightError):
        validate_framed(m, coefficients="int")


def test_solve_framing():
    for p in (1, 2):
        g = solve_framing(fixture(f"lens{p}"))
        assert g is not None and validate_framed(g)[0]
    # the combing of the longer chains does not extend to a framing
    for p in range(3, 9):
        assert solve_framing(fixture(f"lens{p}")) is None


def test_h_move_keeps_framing_and_inverts():
    g = fixture("l21")
    for c in g.crossings:
        h = apply_h(g, c)
        assert validate_framed(h)[0]
        assert apply_h(h, c, -1) == g


# -- rotation number -----------------------------------------------------------


def test_p_zero_without_vertex():
    g = fixture("l21")
    assert rotation_number_p(g, record("ps-III"), "e2", "e1") == 0


def test_p_single_dot():
    g = fixture("s3")
    assert rotation_number_p(g, record("ps-I"), "e0", "e1") == Fraction(-1, 2)


def test_p_one_edge():
    g = fixture("s3")
    assert g.weight_map()["e0"] == -2
    assert rotation_number_p(g, record("ps-III"), "e0", "e1") == -2


def test_p_rejects_coincident_strands():
    with pytest.raises(WeightError):
        rotation_number_p(fixture("s3"), record("ps-I"), "e0", "e0")


def _hand_p(g, rec, a, b):
    """Independent count along the bottom segment: dots at tetrahedron
    edges [02] and [13], weights signed by the slot direction."""
    i, j = rec.slots
    hit = follow(g, a, i, "source", {(b, j), (a, i)})
    if hit is None or hit[0] != b:
        return None
    xs = g.weight_map()
    total = Fraction(0)
    for item in hit[3]:
        if isinstance(item, tuple):
            total += xs[item[0]] if along(item[1]) else -xs[item[0]]
        elif set(item.tet_edge) in ({0, 2}, {1, 3}):
            total -= Fraction(1, 2)
    return total


def test_p_matches_hand_count():
    graphs = [fixture("s3"), fixture("l21")]
    graphs += [h for _, _, h, _ in random_walk(fixture("l21"), random.Random(4), 12)]
    checked = 0
    for g in graphs:
        for n in PS_NAMES:
            rec = record(n)
            for a in strands(g):
                for b in strands(g):
                    if a == b or ps_condition(g, rec, a, b) is not Status.HOLDS:
                        continue
                    want = _hand_p(g, rec, a, b)
                    if want is None:
                        continue
                    assert rotation_number_p(g, rec, a, b) == want
                    checked += 1
    assert checked > 50
