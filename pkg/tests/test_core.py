import itertools

import pytest

from conftest import chain, fixture, relabel_randomly
from ograph.core import (
    Edge, Endpoint, OGraph, OGraphError, ParseError, build, canonicalize, from_object, involution, isomorphic, parse,
    serialize, to_object, validate,
)


def brute_iso(g1, g2):
    """Oracle: try every crossing bijection."""
    if sorted(g1.crossings.values()) != sorted(g2.crossings.values()) or g1.E != g2.E:
        return False
    want = sorted((str(e.source), str(e.target), e.weight) for e in g2.edges)
    c2 = sorted(g2.crossings)
    for perm in itertools.permutations(c2):
        m = dict(zip(sorted(g1.crossings), perm))
        if any(g1.crossings[a] != g2.crossings[b] for a, b in m.items()):
            continue
        ep = lambda p: f"{m[p.crossing]}.{p.port}"  # noqa: E731
        got = sorted((ep(e.source), ep(e.target), e.weight) for e in g1.edges)
        if got == want and [ep(l) for l in g1.legs] == [str(l) for l in g2.legs]:
            return True
    return False


def test_lens2_is_valid():
    g = chain(2)
    assert validate(g).ok
    assert (g.V, g.E, len(g.legs)) == (2, 4, 0)


def test_single_crossing_graph():
    g = build({"c": 1}, [("c.over_out", "c.over_in"), ("c.under_out", "c.under_in")])
    assert validate(g).ok
    assert (g.V, g.E) == (1, 2)


def test_unmatched_out_port():
    g = build({"c": 1}, [("c.under_out", "c.under_in")], legs=["c.over_in"])
    rep = validate(g)
    assert not rep.ok
    assert any("unmatched out-port" in v for v in rep.violations)


def test_edge_direction_checked():
    g = OGraph({"c": 1}, [Edge("e", Endpoint("c", "over_in"), Endpoint("c", "over_out"))], [
        Endpoint("c", "under_in"), Endpoint("c", "under_out")])
    assert not validate(g).ok


def test_closed_graphs_have_twice_as_many_edges(corpus_graph):
    assert corpus_graph.E == 2 * corpus_graph.V


def test_parse_bad_port_names_token():
    with pytest.raises(ParseError) as ei:
        parse("weights none\ncrossing c +\nedge e c.ovr_in -> c.over_in\n")
    assert "ovr_in" in str(ei.value)
    assert ei.value.line == 3


@pytest.mark.parametrize("text, reason", [
    ("crossing c +\ncrossing c -\n", "duplicate crossing id"),
    ("weights none\ncrossing c +\nedge e c.over_out -> c.over_in weight 3\n", "weight present with weights none"),
    ("weights int\ncrossing c +\nedge e c.over_out -> c.over_in\n", "missing weight"),
    ("crossing c *\n", "bad sign"),
    ("vertex c\n", "unknown record"),
])
def test_parse_errors(text, reason):
    with pytest.raises(ParseError) as ei:
        parse(text)
    assert ei.value.reason == reason


def test_roundtrip(corpus_graph):
    back = parse(serialize(corpus_graph))
    assert isomorphic(back, corpus_graph) is not None
    assert isomorphic(from_object(to_object(corpus_graph)), corpus_graph) is not None


def test_canonical_text_is_relabeling_invariant(corpus_graph):
    for seed in range(3):
        assert serialize(relabel_randomly(corpus_graph, seed)) == serialize(corpus_graph)


def test_identity_mapping():
    g = fixture("lens3")
    m = isomorphic(g, g)
    assert m is not None
    assert m.crossings == {c: c for c in g.crossings}


@pytest.mark.parametrize("p,q", [(2, 3), (3, 3), (1, 2)])
def test_isomorphism_matches_brute_force(p, q):
    a, b = chain(p), relabel_randomly(chain(q), p)
    assert (isomorphic(a, b) is not None) == brute_iso(a, b)


def test_isomorphism_against_oracle_on_sign_variants():
    base = chain(3)
    for signs in itertools.product((1, -1), repeat=3):
        g = OGraph(dict(zip(["c0", "c1", "c2"], signs)), base.edges)
        for h in (base, involution(g, "reverse"), g):
            assert (isomorphic(g, h) is not None) == brute_iso(g, h)


def test_isomorphism_respects_weights():
    g = fixture("l21")
    w = g.weight_map()
    w["e0"] += 2
    assert isomorphic(g, g.with_weights(w)) is None
    assert isomorphic(g, g.with_weights(w), weights=False) is not None


def test_legs_are_ordered():
    g = build({"a": 1}, [("a.over_out", "a.under_in")], legs=["a.under_out", "a.over_in"])
    h = build({"a": 1}, [("a.over_out", "a.under_in")], legs=["a.over_in", "a.under_out"])
    assert isomorphic(g, g) is not None
    assert isomorphic(g, h) is None


def test_isomorphism_is_an_equivalence():
    gs = [fixture(n) for n in ("lens2", "lens3")] + [relabel_randomly(fixture("lens3"), 7)]
    for a in gs:
        for b in gs:
            assert (isomorphic(a, b) is None) == (isomorphic(b, a) is None)
    assert isomorphic(gs[1], gs[2]) is not None


@pytest.mark.parametrize("which", ["reflect", "reverse", "sign_change"])
def test_involutions_are_involutive(corpus_graph, which):
    twice = involution(involution(corpus_graph, which), which)
    assert isomorphic(twice, corpus_graph) is not None


def test_sign_change_of_lens_graph():
    g = involution(fixture("lens4"), "sign_change")
    assert set(g.crossings.values()) == {-1}
    assert validate(g).ok


def test_graph_without_crossing_rejected():
    assert not validate(OGraph({}, [])).ok


def test_structured_object_errors():
    with pytest.raises(ParseError):
        from_object({"crossings": [{"sign": "+"}]})
    with pytest.raises(OGraphError):
        from_object({"crossings": [{"id": "c", "sign": "+"}]})


def test_canonicalize_names():
    g = canonicalize(relabel_randomly(fixture("lens5"), 1))
    assert sorted(g.crossings) == sorted(f"c{i}" for i in range(5))
    assert sorted(e.id for e in g.edges) == sorted(f"e{i}" for i in range(10))
