"""Command-line frontend (``ograph``).

Exit codes: 0 success, 1 domain failure (invalid graph, failed condition,
failed verification), 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import random
import sys
from pathlib import Path

from . import derive as D
from . import moves as M
from . import weights as W
from .circuits import TraceError, cells_report, closedness_necessary, euler_cochain, trace_cells
from .core import OGraph, OGraphError, ParseError, canonicalize, from_object, id_key, involution, isomorphic, parse, serialize, to_object
from .homology import HomologyError, h1

log = logging.getLogger("ograph")


class Failure(Exception):
    """A domain failure: exit code 1."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise _Usage(f"{self.prog}: error: {message}")


class _Usage(Exception):
    pass


# ---------------------------------------------------------------------------
# helpers


def load(path: str) -> OGraph:
    """Read a ``.og`` or ``.json`` graph and relabel it canonically, so every
    report depends only on the isomorphism class of the input."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise _Usage(f"cannot read {path}: {exc.strerror}") from None
    if path.endswith(".json"):
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(exc.lineno, exc.msg, "bad JSON") from None
        return canonicalize(from_object(obj))
    return canonicalize(parse(text))


class Out:
    def __init__(self, fmt: str, stream=None):
        self.fmt = fmt
        self.stream = stream or sys.stdout

    def emit(self, text: str, obj) -> None:
        if self.fmt == "json":
            self.stream.write(json.dumps(obj, indent=2, sort_keys=True) + "\n")
        else:
            self.stream.write(text if text.endswith("\n") or not text else text + "\n")


def _graph_out(out: Out, g: OGraph) -> None:
    out.emit(serialize(g), to_object(g))


# ---------------------------------------------------------------------------
# graph reports


def cmd_validate(a, out: Out) -> int:
    g = load(a.file)
    checks = {}
    if not g.legs:
        checks = closedness_necessary(g).checks
    lines = ["valid"] + [f"{k}: {'pass' if v else 'fail'}" for k, v in checks.items()]
    out.emit("\n".join(lines), {"valid": True, "closedness": checks})
    return 0 if all(checks.values()) else 1


def cmd_info(a, out: Out) -> int:
    g = load(a.file)
    cs = trace_cells(g)
    obj = {"V": g.V, "E": g.E, "F": cs.F, "legs": len(g.legs), "weights": g.weights_kind}
    text = f"V={g.V} E={g.E} F={cs.F}"
    if g.legs:
        text += f" legs={len(g.legs)}"
    elif len(g.components()) == 1:
        grp = h1(g, cs)
        obj["H1"] = str(grp)
        text += f" H1={grp}"
    out.emit(text, obj)
    return 0


def cmd_cells(a, out: Out) -> int:
    g = load(a.file)
    cs = trace_cells(g)
    obj = {
        "cells": [{"id": c.id, "n": c.n, "boundary": [str(t) for t in c.traversals]} for c in cs.cells],
        "arcs": [
            {"id": x.id, "n": x.n, "start": list(x.start), "end": list(x.end), "boundary": [str(t) for t in x.traversals]}
            for x in cs.arcs
        ],
    }
    out.emit(cells_report(g, cs), obj)
    return 0


def cmd_euler(a, out: Out) -> int:
    g = load(a.file)
    cs = trace_cells(g)
    cp = euler_cochain(g, cs)
    lines = [f"{c.id} n={c.n} c={cp[c.id]}" for c in cs.cells]
    out.emit("\n".join(lines), {c.id: cp[c.id] for c in cs.cells})
    return 0


def cmd_framed(a, out: Out) -> int:
    g = load(a.file)
    if g.weights_kind == "none":
        raise Failure("graph carries no weights")
    ok, res = W.validate_framed(g, coefficients=g.weights_kind)
    bad = {k: v for k, v in res.items() if v}
    lines = ["framed" if ok else "not framed"] + [f"{k} residual={v}" for k, v in sorted(bad.items(), key=lambda t: id_key(t[0]))]
    out.emit("\n".join(lines), {"framed": ok, "residual": res})
    return 0 if ok else 1


def cmd_homology(a, out: Out) -> int:
    g = load(a.file)
    grp = h1(g)
    out.emit(str(grp), {"H1": str(grp), "rank": grp.rank, "torsion": list(grp.torsion)})
    return 0


def cmd_involute(a, out: Out) -> int:
    g = load(a.file)
    for w in a.which:
        g = involution(g, w)
    _graph_out(out, g)
    return 0


def cmd_mod2(a, out: Out) -> int:
    _graph_out(out, W.mod2(load(a.file)))
    return 0


def to_dot(g: OGraph) -> str:
    lines = ["digraph ograph {"]
    for c in sorted(g.crossings, key=id_key):
        lines.append(f'  "{c}" [label="{c} {"+" if g.crossings[c] > 0 else "-"}"];')
    for e in sorted(g.edges, key=lambda e: id_key(e.id)):
        label = e.id if e.weight is None else f"{e.id} ({e.weight})"
        lines.append(
            f'  "{e.source.crossing}" -> "{e.target.crossing}" '
            f'[label="{label}", taillabel="{e.source.port}", headlabel="{e.target.port}"];'
        )
    for i, l in enumerate(g.legs):
        lines.append(f'  "leg{i}" [shape=point];')
        a, b = (f'"{l.crossing}"', f'"leg{i}"') if l.port.endswith("_out") else (f'"leg{i}"', f'"{l.crossing}"')
        lines.append(f"  {a} -> {b} [style=dashed];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def cmd_export_dot(a, out: Out) -> int:
    g = load(a.file)
    Path(a.output).write_text(to_dot(g), encoding="utf-8")
    out.emit(f"wrote {a.output}", {"written": a.output})
    return 0


# ---------------------------------------------------------------------------
# moves


def _kind(text: str, g: OGraph) -> M.Kind:
    try:
        k = M.Kind.parse(text)
    except M.MoveError as exc:
        raise _Usage(str(exc)) from None
    if k.layer == "plain" and g.weights_kind != "none" and "[" not in text:
        k = k.on(g.weights_kind)
    return k


def cmd_move_list(a, out: Out) -> int:
    g = load(a.file)
    if a.kind:
        kinds = [_kind(a.kind, g)]
    else:
        kinds = M.walk_kinds(g)
    rows = []
    for k in kinds:
        for s in M.find_sites(g, k):
            rows.append((str(s), str(M.check_condition(g, s))))
    out.emit("\n".join(f"{s} {st}" for s, st in rows), [{"site": s, "condition": st} for s, st in rows])
    return 0


def cmd_move_apply(a, out: Out) -> int:
    g = load(a.file)
    k = _kind(a.kind, g)
    want = a.site.split("@", 1)[-1]
    sites = [s for s in M.find_sites(g, k) if str(s).split("@", 1)[1] == want]
    if not sites:
        raise Failure(f"no {k} site {want!r}")
    site = sites[0]
    st = M.check_condition(g, site)
    if st is not M.Status.HOLDS:
        raise Failure(f"condition {M._condition_label(site)} {st} at {site}")
    try:
        h = M.apply(g, site)
    except (M.MoveError, W.WeightError) as exc:
        raise Failure(str(exc)) from None
    if a.output:
        Path(a.output).write_text(serialize(h), encoding="utf-8")
        out.emit(f"wrote {a.output}", {"written": a.output})
    else:
        _graph_out(out, h)
    return 0


# ---------------------------------------------------------------------------
# verification suites


def _derivations(local: bool):
    rows = []
    for name in D.MP_KINDS:
        try:
            d = D.derive_mp(name, local=local)
        except (D.DeriveError, M.MoveError) as exc:
            rows.append((name, None, D.Report(name, False, 0, str(exc))))
            continue
        rows.append((name, d, D.replay(d)))
    return rows


def _derivation_report(out: Out, rows, title: str) -> int:
    ok = sum(r.ok for _, _, r in rows)
    lines = [f"{r} : {d}" if d is not None else str(r) for _, d, r in rows]
    lines.append(f"{title}: {ok}/{len(rows)} derivations OK")
    obj = {
        "derivations": [
            {"kind": n, "ok": r.ok, "steps": d.kinds() if d else [], "reason": r.reason, "failed_step": r.step}
            for n, d, r in rows
        ],
        "ok": ok,
        "total": len(rows),
    }
    out.emit("\n".join(lines), obj)
    return 0 if ok == len(rows) else 1


def verify_theorem1(a, out: Out) -> int:
    return _derivation_report(out, _derivations(False), "theorem1")


def verify_local18(a, out: Out) -> int:
    cat, tree = D.local18()
    head = ["local catalog: " + " ".join(D.local_name(r) for r in cat)]
    rows = _derivations(True)
    buf = _Buffer()
    code = _derivation_report(Out(out.fmt, buf), rows, "local18")
    if out.fmt == "json":
        obj = json.loads(buf.text)
        obj["catalog"] = [D.local_name(r) for r in cat]
        out.emit("", obj)
    else:
        out.emit("\n".join(head) + "\n" + buf.text, None)
    return code


class _Buffer:
    def __init__(self):
        self.text = ""

    def write(self, s):
        self.text += s


def verify_relations(a, out: Out) -> int:
    reps = [D.verify_relation(r, local=False) for r in M.relations()]
    reps += [D.verify_relation(r, local=True) for r in M.relations()]
    prim = D.verify_primary()
    n = len(M.relations())
    lines = [f"{r} (ps)" for r in reps[:n]] + [f"{r} (local)" for r in reps[n:]] + [str(prim)]
    ok = all(r.ok for r in reps) and prim.ok
    obj = {"relations": [{"id": r.id, "ok": r.ok, "local": i >= n, "reason": r.reason} for i, r in enumerate(reps)],
           "primary": prim.ok}
    out.emit("\n".join(lines), obj)
    return 0 if ok else 1


def verify_symmetry(a, out: Out) -> int:
    rows = D.verify_symmetry_tables()
    lines = [f"{w}({k}) = {img} {'OK' if ok else 'FAIL ' + why}" for w, k, img, ok, why in rows]
    good = sum(r[3] for r in rows)
    lines.append(f"symmetry: {good}/{len(rows)} entries OK")
    obj = {"entries": [{"row": w, "kind": k, "image": img, "ok": ok, "reason": why} for w, k, img, ok, why in rows]}
    out.emit("\n".join(lines), obj)
    return 0 if good == len(rows) else 1


def verify_cyclic(a, out: Out) -> int:
    lines, obj, bad = [], [], 0
    for name in D.MP_KINDS:
        d = D.derive_mp(name)
        au = D.audit_cyclic(d)
        expect = M.is_cyclic(name)
        ok = au["uses_cyclic"] == expect
        bad += not ok
        lines.append(
            f"{name} cyclic={'yes' if expect else 'no'} uses_cyclic={'yes' if au['uses_cyclic'] else 'no'} "
            f"steps={au['cyclic_steps']} {'OK' if ok else 'FAIL'}"
        )
        obj.append({"kind": name, "cyclic": expect, **au, "ok": ok})
    lines.append(f"cyclic: {len(D.MP_KINDS) - bad}/{len(D.MP_KINDS)} audits OK")
    out.emit("\n".join(lines), obj)
    return 0 if not bad else 1


def verify_random(a, out: Out) -> int:
    """Random move walks from the given graphs (default: bundled fixtures),
    checking H1, F - V, framing and round trips after every move."""
    files = a.start or [str(p) for p in fixture_paths()]
    rng = random.Random(a.seed)
    counts = {"moves": 0, "violations": 0}
    lines = []
    for f in files:
        g = load(f)
        base, fv = h1(g), trace_cells(g).F - g.V
        for before, site, after, back in M.random_walk(g, rng, a.steps):
            counts["moves"] += 1
            problems = []
            cs = trace_cells(after)
            if cs.F - after.V != fv:
                problems.append("F-V changed")
            if h1(after, cs) != base:
                problems.append("H1 changed")
            if after.weights_kind != "none" and not W.validate_framed(after, coefficients=after.weights_kind, cs=cs)[0]:
                problems.append("framing broken")
            if isomorphic(M.apply(after, back), before) is None:
                problems.append("inverse does not restore")
            if problems:
                counts["violations"] += 1
                lines.append(f"{Path(f).name}: {site}: {', '.join(problems)}")
    lines.append(f"random: seed={a.seed} moves={counts['moves']} violations={counts['violations']}")
    out.emit("\n".join(lines), {"seed": a.seed, **counts})
    return 0 if not counts["violations"] else 1


def fixture_paths():
    from importlib import resources

    base = resources.files("ograph") / "data"
    return sorted((Path(str(p)) for p in base.iterdir() if p.name.endswith(".og")), key=lambda p: p.name)


VERIFY = {
    "theorem1": verify_theorem1,
    "local18": verify_local18,
    "symmetry": verify_symmetry,
    "cyclic": verify_cyclic,
    "relations": verify_relations,
    "random": verify_random,
}


# ---------------------------------------------------------------------------
# argument parsing


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default=argparse.SUPPRESS)
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS)

    p = _Parser(prog="ograph", parents=[common], description="Normal o-graphs: validation, moves and derivations.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def file_cmd(name, fn, help_):
        sp = sub.add_parser(name, parents=[common], help=help_)
        sp.add_argument("file")
        sp.set_defaults(fn=fn)
        return sp

    file_cmd("validate", cmd_validate, "check well-formedness and closedness")
    file_cmd("info", cmd_info, "crossing, edge and cell counts, H1")
    file_cmd("cells", cmd_cells, "the 2-cells traced by the circuits")
    file_cmd("euler-cochain", cmd_euler, "the Euler cochain n/2 - 1 per cell")
    file_cmd("framed-check", cmd_framed, "check dx = c_P for the stored weights")
    file_cmd("homology", cmd_homology, "integral first homology")
    file_cmd("mod2", cmd_mod2, "reduce integer weights mod 2")
    inv = file_cmd("involute", cmd_involute, "apply reflect / reverse / sign_change (in order)")
    inv.add_argument("--which", action="append", required=True, choices=("reflect", "reverse", "sign_change"))
    dot = file_cmd("export-dot", cmd_export_dot, "write a DOT drawing")
    dot.add_argument("-o", "--output", required=True)

    mv = sub.add_parser("move", parents=[common], help="list or apply moves")
    msub = mv.add_subparsers(dest="action", required=True, parser_class=_Parser)
    ml = msub.add_parser("list", parents=[common])
    ml.add_argument("file")
    ml.add_argument("--kind")
    ml.set_defaults(fn=cmd_move_list)
    ma = msub.add_parser("apply", parents=[common])
    ma.add_argument("file")
    ma.add_argument("--kind", required=True)
    ma.add_argument("--site", required=True, help="as printed by 'move list'")
    ma.add_argument("-o", "--output")
    ma.set_defaults(fn=cmd_move_apply)

    vf = sub.add_parser("verify", parents=[common], help="run a verification suite")
    vf.add_argument("suite", choices=sorted(VERIFY))
    vf.add_argument("--start", action="append", default=[], metavar="FILE", help="start graph for 'random' (repeatable)")
    vf.add_argument("--steps", type=int, default=100)
    vf.set_defaults(fn=lambda a, out: VERIFY[a.suite](a, out))
    return p


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    level = os.environ.get("OGRAPH_LOG", "WARNING").upper()
    logging.basicConfig(level=getattr(logging, level, logging.WARNING), stream=stderr, format="%(levelname)s %(message)s")
    try:
        a = build_parser().parse_args(argv)
    except _Usage as exc:
        stderr.write(f"{exc}\n")
        return 2
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    a.format = getattr(a, "format", "text")
    a.seed = getattr(a, "seed", 0)
    log.debug("command %s", a.command)
    try:
        return a.fn(a, Out(a.format, stdout))
    except _Usage as exc:
        stderr.write(f"ograph: {exc}\n")
        return 2
    except ParseError as exc:
        stderr.write(f"ograph: parse error: {exc}\n")
        return 2
    except Failure as exc:
        stderr.write(f"ograph: {exc}\n")
        return 1
    except (OGraphError, TraceError, HomologyError, W.WeightError, M.MoveError, D.DeriveError) as exc:
        stderr.write(f"ograph: {exc}\n")
        return 1


def main(argv=None) -> None:
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
