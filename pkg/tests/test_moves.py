import random

import pytest

from conftest import fixture
from ograph import movetable
from ograph import moves as M
from ograph.circuits import trace_cells
from ograph.core import isomorphic
from ograph.homology import h1
from ograph.moves import Kind, Site, Status
from ograph.weights import mod2, validate_framed


def test_catalog_contents():
    cat = M.catalog()
    fam = {}
    for rec in cat.values():
        fam.setdefault(rec.family, []).append(rec.name)
    assert len(fam["mp"]) == 17
    assert sorted(fam["ps"]) == sorted(M.PS_NAMES)
    assert len(fam["local"]) == 40
    assert len(M.relations()) == 40


def test_move_table_is_current():
    assert movetable.main(["--check"]) == 0


@pytest.mark.parametrize("kind, flag", [
    ("A2", True), ("ps-I", False), (Kind("PrimaryMP", True), False), ("ps-III", True), ("ps-IV", True),
    ("ps-II", False), ("D2", False), (Kind("C3", True), True),
])
def test_is_cyclic(kind, flag):
    assert M.is_cyclic(kind) is flag


def test_kind_parse():
    assert M.Kind.parse("A1^-1[int]") == Kind("A1", True, "int")
    assert str(Kind("ps-II", False, "mod2")) == "ps-II[mod2]"
    with pytest.raises(M.MoveError):
        M.Kind.parse("Z9")


def test_primary_pattern_found_in_itself():
    lhs = M.record("PrimaryMP").lhs
    sites = M.find_sites(lhs, Kind("PrimaryMP"))
    assert [s.match for s in sites] == [{c: c for c in lhs.crossings}]


def test_primary_forward_on_pattern():
    rec = M.record("PrimaryMP")
    (site,) = M.find_sites(rec.lhs, Kind("PrimaryMP"))
    out = M.apply(rec.lhs, site)
    assert out.V == 3
    assert isomorphic(out, rec.rhs) is not None


def test_created_primary_site_is_found():
    g = fixture("lens2")
    for s in M.find_sites(g, Kind("PrimaryMP")):
        h, back = M.apply_traced(g, s)
        assert back in M.find_sites(h, back.kind)


def test_sign_requirements_on_all_plus_graph():
    g = fixture("lens4")
    for name in M.MP_NAMES:
        rec = M.record(name)
        if -1 in rec.lhs.crossings.values():
            assert M.find_sites(g, Kind(name)) == []


def test_conditions_hold_in_local_patterns():
    for name, rec in M.catalog().items():
        if rec.family != "local":
            continue
        assert M.check_condition(rec.lhs, Site(Kind(name), tuple((c, c) for c in rec.lhs.crossings))) is Status.HOLDS
        assert M.check_condition(rec.rhs, Site(Kind(name, True), tuple((c, c) for c in rec.rhs.crossings))) is Status.HOLDS


def test_ps_one_condition_on_a1_pattern():
    from ograph.derive import relation

    rel = next(r for r in M.relations() if r.target == "A1" and r.ps == "ps-I")
    assert rel == relation(rel.id)
    assert M.ps_condition(M.record("A1").lhs, M.record("ps-I"), *rel.strands) is Status.HOLDS


def test_indeterminate_on_primary_tangle():
    g = M.record("PrimaryMP").lhs
    found = [s for n in M.PS_NAMES for s in M.find_sites(g, Kind(n))
             if M.check_condition(g, s) is Status.INDETERMINATE]
    assert found


def test_failed_condition_names_it():
    g = fixture("lens2")
    bad = next(s for s in M.find_sites(g, Kind("ps-I")) if M.check_condition(g, s) is Status.FAILS)
    with pytest.raises(M.MoveError, match=r"\(PS-I\)"):
        M.apply(g, bad)


def test_zero_two_is_a_pure_sliding(corpus_graph):
    g = corpus_graph.with_weights(None)
    cs = trace_cells(g)
    base = h1(g, cs)
    for s in M.find_sites(g, Kind("ZeroTwo")):
        h, back = M.apply_traced(g, s)
        cs2 = trace_cells(h)
        assert (h.V, cs2.F) == (g.V + 2, cs.F + 2)
        assert h1(h, cs2) == base
        # the pocket it creates is a pure sliding pocket
        rec = M.record(s.extra[0])
        ps_back = Site(Kind(rec.name, True), back.crossings)
        assert M.check_condition(h, ps_back) is Status.HOLDS
        assert ps_back.match in [x.match for x in M.find_sites(h, ps_back.kind)]
        assert isomorphic(M.apply(h, back), g) is not None


def test_h_roundtrip():
    g = fixture("l21")
    for s in M.find_sites(g, Kind("H", False, "int")):
        h, back = M.apply_traced(g, s)
        assert M.apply(h, back) == g


def test_h_needs_weights():
    with pytest.raises(M.MoveError):
        M.apply(fixture("lens2"), Site(Kind("H"), strands=("c0",)))


def _roundtrip_all(g, kinds):
    n = 0
    for k in kinds:
        for s in M.sites_with_condition(g, k):
            try:
                h, back = M.apply_traced(g, s)
            except M.MoveError as exc:
                # integral inverses need weights of the forward image form
                assert k.inverse and k.layer == "int", exc
                continue
            assert M.check_condition(h, back) is Status.HOLDS
            assert isomorphic(M.apply(h, back), g) is not None
            n += 1
    return n


def test_roundtrips_plain():
    total = 0
    for name in ("lens1", "lens2", "lens3"):
        g = fixture(name)
        total += _roundtrip_all(g, M.walk_kinds(g))
        for _, _, h, _ in M.random_walk(g, random.Random(11), 6):
            total += _roundtrip_all(h, M.walk_kinds(h))
    assert total > 200


def test_roundtrips_integral():
    total = 0
    for name in ("s3", "l21"):
        g = fixture(name)
        for _, _, h, _ in M.random_walk(g, random.Random(3), 5):
            total += _roundtrip_all(h, M.walk_kinds(h))
    assert total > 100


def test_locality():
    g = fixture("lens3")
    for name in ("PrimaryMP", *M.MP_NAMES):
        for s in M.sites_with_condition(g, Kind(name)):
            h = M.apply(g, s)
            touched = set(s.match.values())
            keep = {(e.source, e.target) for e in g.edges
                    if e.source.crossing not in touched and e.target.crossing not in touched}
            assert keep <= {(e.source, e.target) for e in h.edges}


def test_random_h1_invariance():
    n = 0
    for name in ("lens1", "lens2", "lens3", "lens4", "s3", "l21"):
        g = fixture(name)
        base, fv = h1(g), trace_cells(g).F - g.V
        for _, s, h, _ in M.random_walk(g, random.Random(name), 90):
            cs = trace_cells(h)
            assert h1(h, cs) == base, s
            assert cs.F - h.V == fv, s
            assert h.E == 2 * h.V
            n += 1
    assert n >= 500


def test_random_integral_framing_and_naturality():
    n = 0
    for name in ("s3", "l21"):
        g = fixture(name)
        for before, s, h, _ in M.random_walk(g, random.Random(17), 110):
            assert validate_framed(h)[0], s
            h2 = M.apply(mod2(before), Site(s.kind.on("mod2"), s.crossings, s.strands, s.extra))
            assert isomorphic(h2, mod2(h)) is not None, s
            assert validate_framed(h2, coefficients="mod2")[0]
            n += 1
    assert n >= 200


def test_random_walk_is_deterministic():
    g = fixture("l21")
    a = [str(s) for _, s, _, _ in M.random_walk(g, random.Random(5), 30)]
    b = [str(s) for _, s, _, _ in M.random_walk(g, random.Random(5), 30)]
    assert a == b
