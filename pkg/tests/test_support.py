"""Lower-level helpers: corner tables, strands, the move table file."""

from importlib import resources

from conftest import fixture
from ograph import movetable, tables
from ograph.core import isomorphic
from ograph.moves import catalog
from ograph.rewrite import embeddings, strands
from ograph.triangulation import boundary_is_standard_sphere


def test_corner_tables_consistent():
    tables.check_tables()
    for sign in (1, -1):
        corners = tables.derive_corners(sign)
        # one corner per tetrahedron edge, two of them dotted
        assert len(corners) == len({c.tet_edge for c in corners}) == 6
        assert sum(c.dotted for c in corners) == 2
        assert {frozenset(c.tet_edge) for c in corners if c.dotted} == set(tables.DOTTED_TET_EDGES)


def test_slot_directions():
    assert tables.along(1) and tables.along(2) and not tables.along(3)


def test_strands_of_closed_graph_are_edges():
    g = fixture("lens3")
    assert sorted(strands(g)) == sorted(e.id for e in g.edges)


def test_pattern_embeds_in_itself():
    for rec in catalog().values():
        if rec.lhs is not None:
            ms = embeddings(rec.lhs, rec.lhs)
            assert {c: c for c in rec.lhs.crossings} in ms


def test_table_roundtrip():
    text = (resources.files("ograph") / "data" / "moves.txt").read_text()
    recs, rels = movetable.load_table(text)
    assert movetable.format_table(recs, rels) == text
    assert len(rels) == 40


def test_table_regenerates_identically():
    recs, rels = movetable.generate()
    loaded, _ = movetable.load_table(movetable.format_table(recs, rels))
    for name, rec in recs.items():
        assert isomorphic(loaded[name].rhs, rec.rhs) is not None


def test_lens_boundaries_are_standard():
    for p in range(1, 9):
        assert boundary_is_standard_sphere(fixture(f"lens{p}"))
