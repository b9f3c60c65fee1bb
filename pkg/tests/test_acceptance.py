"""Acceptance criteria 1-10.  Each test prints one ``criterion N: PASS|FAIL`` line."""

import io
import random
import time
from collections import Counter

import pytest

from conftest import FIXTURES, fixture, relabel_randomly
from ograph import derive as D
from ograph import moves as M
from ograph.circuits import closedness_necessary, trace_cells
from ograph.cli import run
from ograph.core import canonicalize, isomorphic, serialize
from ograph.homology import AbelianGroup, h1
from ograph.moves import Kind, Site, Status
from ograph.weights import mod2, validate_framed

LIMIT = 60.0


@pytest.fixture
def report(capsys):
    def emit(n, ok, detail, started):
        took = time.perf_counter() - started
        with capsys.disabled():
            print(f"\ncriterion {n}: {'PASS' if ok and took < LIMIT else 'FAIL'} ({detail}; {took:.1f}s)")
        assert took < LIMIT, f"criterion {n} took {took:.1f}s"
        assert ok, detail
    return emit


def _derivation_suite(local):
    bad = []
    for name in D.MP_KINDS:
        d = D.derive_mp(name, local=local)
        rep = D.replay(d)
        if not rep.ok or any(s is not Status.HOLDS for s in rep.statuses):
            bad.append(str(rep))
    return bad


def test_criterion_1_theorem1(report):
    t = time.perf_counter()
    bad = _derivation_suite(False)
    kinds = {s.kind.name for n in D.MP_KINDS for s in D.derive_mp(n).steps}
    ok = not bad and kinds <= {"PrimaryMP", *M.PS_NAMES}
    report(1, ok, f"{16 - len(bad)}/16 derivations replay, step kinds {sorted(kinds)}", t)


def test_criterion_2_relations(report):
    t = time.perf_counter()
    reps = [D.verify_relation(r, local=loc) for loc in (False, True) for r in M.relations()]
    good = sum(r.ok for r in reps)
    prim = D.verify_primary()
    report(2, good == len(reps) == 80 and prim.ok, f"{good}/{len(reps)} relation replays, D2=PrimaryMP {prim.ok}", t)


def test_criterion_3_local18(report):
    t = time.perf_counter()
    cat, tree = D.local18()
    bad = _derivation_suite(True)
    names = {s.kind.name for n in D.MP_KINDS for s in D.derive_mp(n, local=True).steps}
    allowed = {D.local_name(r) for r in cat} | {"PrimaryMP"}
    ok = len(cat) == 18 and not bad and names <= allowed
    report(3, ok, f"{16 - len(bad)}/16 derivations with the {len(cat)}-move local catalog", t)


def test_criterion_4_symmetry(report):
    t = time.perf_counter()
    rows = D.verify_symmetry_tables()
    good = sum(r[3] for r in rows)
    mp = sum(1 for r in rows if r[3] and not r[1].startswith("ps-"))
    ps = good - mp
    ok = good == len(rows) == 40 and D.table_is_involutive()
    report(4, ok, f"MP entries {mp}/32, ps entries {ps}/8 over both rows", t)


def test_criterion_5_cyclic(report):
    t = time.perf_counter()
    wrong = []
    for name in D.MP_KINDS:
        au = D.audit_cyclic(D.derive_mp(name))
        cyclic = name in {"A2", "A4", "B2", "B4", "C3", "D3"}
        if au["uses_cyclic"] != cyclic:
            wrong.append(name)
    report(5, not wrong, f"mismatches {wrong}", t)


def test_criterion_6_homology(report):
    t = time.perf_counter()
    lens = all(h1(fixture(f"lens{p}")) == AbelianGroup(0, (p,) if p > 1 else ()) for p in range(1, 9))
    s3 = h1(fixture("s3")).trivial
    moves = fails = 0
    for name in ("lens1", "lens2", "lens3", "lens5", "s3", "l21"):
        g = fixture(name)
        base = h1(g)
        for _, _, h, _ in M.random_walk(g, random.Random(f"h1-{name}"), 90):
            moves += 1
            fails += h1(h) != base
    report(6, lens and s3 and moves >= 500 and fails == 0,
           f"lens p=1..8 {lens}, S3 trivial {s3}, {moves} random moves, {fails} failures", t)


def test_criterion_7_conservation(report):
    t = time.perf_counter()
    violations = 0
    traced = 0
    for name in FIXTURES:
        g = fixture(name)
        cs = trace_cells(g)
        violations += not (cs.F == g.V + 1 and g.E == 2 * g.V and closedness_necessary(g, cs).ok)
    patterns = [r.lhs for r in M.catalog().values() if r.lhs is not None] + [r.rhs for r in M.catalog().values()]
    for g in patterns:
        cs = trace_cells(g)
        traced += 1
        violations += any(c.n % 2 for c in cs.cells)
    moves = 0
    for name in ("lens1", "lens2", "lens4", "s3", "l21"):
        g = fixture(name)
        for before, _, h, _ in M.random_walk(g, random.Random(f"fv-{name}"), 60):
            c0, c1 = trace_cells(before), trace_cells(h)
            moves += 1
            traced += 1
            violations += c0.F - before.V != c1.F - h.V
            violations += h.E != 2 * h.V
            violations += any(c.n % 2 for c in c1.cells)
    report(7, violations == 0, f"{len(FIXTURES)} fixtures, {traced} traced graphs, {moves} moves, {violations} violations", t)


def test_criterion_8_framing(report):
    t = time.perf_counter()
    printed = validate_framed(fixture("s3"))[0] and validate_framed(fixture("l21"))[0]
    kinds = Counter()
    violations = 0
    for name in ("s3", "l21"):
        g = fixture(name)
        for before, s, h, _ in M.random_walk(g, random.Random(f"fr-{name}"), 120):
            kinds[s.kind.name if s.kind.name in ("H", "ZeroTwo", "PrimaryMP") else s.kind.name[:2]] += 1
            violations += not validate_framed(h)[0]
            h2 = M.apply(mod2(before), Site(s.kind.on("mod2"), s.crossings, s.strands, s.extra))
            violations += isomorphic(h2, mod2(h)) is None
            violations += not validate_framed(h2, coefficients="mod2")[0]
    moves = sum(kinds.values())
    families = {"H", "ZeroTwo", "ps"} <= set(kinds) and any(k[0] in "ABCD" or k == "PrimaryMP" for k in kinds)
    report(8, printed and moves >= 200 and families and violations == 0,
           f"printed weights framed {printed}, {moves} integral moves {dict(sorted(kinds.items()))}, {violations} violations", t)


def _weighted(g, rng):
    return g.with_weights({e.id: rng.randint(-3, 3) for e in g.edges}, "int")


def _hosts():
    """(graph, kind) pairs covering every kind in both directions."""
    rng = random.Random(9)
    out = []
    for name, rec in M.catalog().items():
        if rec.family == "ps":
            continue
        for inv, pat in ((False, rec.lhs), (True, rec.rhs)):
            out.append((pat, Kind(name, inv)))
            if rec.family == "mp":
                out.append((_weighted(pat, rng), Kind(name, inv, "int")))
        if rec.family == "local":
            # the plain slide sits inside every local pattern
            out.append((rec.lhs, Kind(rec.base)))
            out.append((rec.rhs, Kind(rec.base, True)))
    for name in ("lens1", "lens2", "lens3", "s3", "l21"):
        g = fixture(name)
        graphs = [g] + [h for _, _, h, _ in M.random_walk(g, random.Random(name), 8)]
        for h in graphs:
            out += [(h, k) for k in M.walk_kinds(h)]
    return out


def test_criterion_9_roundtrip(report):
    t = time.perf_counter()
    tested = Counter()
    failures = []
    zero_two = 0
    for g, kind in _hosts():
        for s in M.sites_with_condition(g, kind)[:6]:
            try:
                h, back = M.apply_traced(g, s)
            except M.MoveError:
                # an integral inverse is only defined on weights of the forward image form
                assert kind.inverse and kind.layer == "int"
                continue
            key = str(Kind(kind.name, kind.inverse))
            tested[key] += 1
            if M.check_condition(h, back) is not Status.HOLDS or isomorphic(M.apply(h, back), g) is None:
                failures.append(str(s))
            if kind.name == "ZeroTwo" and not kind.inverse:
                zero_two += 1
                rec = M.record(s.extra[0])
                if M.ps_inverse_condition(h, rec, back.match) is not Status.HOLDS:
                    failures.append(f"ZeroTwo pocket {s}")
    every = {str(Kind(n, inv)) for n in M.known_names() for inv in (False, True)}
    missing = sorted(every - set(tested))
    ok = not failures and not missing and zero_two > 0
    report(9, ok, f"{sum(tested.values())} sites over {len(tested)} kinds, missing {missing}, "
                  f"{len(failures)} failures, {zero_two} ZeroTwo pockets", t)


def _cli(argv):
    out = io.StringIO()
    run(argv, out, io.StringIO())
    return out.getvalue()


def test_criterion_10_determinism(report, tmp_path):
    t = time.perf_counter()
    mismatches = []
    for name in FIXTURES:
        g = fixture(name)
        for seed in range(2):
            if serialize(relabel_randomly(g, seed)) != serialize(g):
                mismatches.append(f"serialize {name}")
        p = tmp_path / f"{name}.og"
        p.write_text(serialize(relabel_randomly(g, 5), canonical=False))
        from importlib import resources

        orig = str(resources.files("ograph") / "data" / f"{name}.og")
        for cmd in (["info"], ["cells"], ["euler-cochain"], ["move", "list"]):
            a, b, c = _cli(cmd + [orig]), _cli(cmd + [orig]), _cli(cmd + [str(p)])
            if not a == b == c:
                mismatches.append(f"{' '.join(cmd)} {name}")
        if canonicalize(canonicalize(g)) != canonicalize(g):
            mismatches.append(f"canonicalize {name}")
    for suite in ("theorem1", "local18", "symmetry", "cyclic", "relations"):
        if _cli(["verify", suite]) != _cli(["verify", suite]):
            mismatches.append(f"verify {suite}")
    report(10, not mismatches, f"mismatches {mismatches}", t)
