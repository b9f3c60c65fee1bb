"""The declarative move table: format, loader and generator.

``data/moves.txt`` holds every pattern/replacement pair of the catalog.  The
file is generated from explicit tetrahedron geometry (``triangulation``) and
committed; ``python3 -m ograph.movetable`` regenerates it and the test suite
checks the committed copy against a fresh regeneration.

Weight rules are affine expressions over bound symbols with rational
coefficients, e.g. ``k - p - 1/2``.  They are derived by requiring that every
circuit arc through the move keeps its rotation number and that every 2-cell
created inside the replacement has rotation ``-1``.
"""

from __future__ import annotations

import re
import sys
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product

from .circuits import trace_cells
from .core import Edge, Endpoint, OGraph, id_key, parse, serialize
from .tables import along

# paper label -> bipyramid branching code (see triangulation.bipyramid_moves)
MP_CODES = {
    "A1": "10", "A2": "11>", "A3": "01", "A4": "11<",
    "B1": "23", "B2": "22<", "B3": "32", "B4": "22>",
    "C1": "20", "C2": "21", "C3": "30", "C4": "31",
    "D1": "02", "D2": "12", "D3": "03", "D4": "13",
}  # fmt: skip
PS_SLOTS = {"ps-I": (3, 2), "ps-II": (3, 1), "ps-III": (1, 2), "ps-IV": (3, 3)}
CYCLIC_NAMES = {"A2", "A4", "B2", "B4", "C3", "D3", "ps-III", "ps-IV"}


class TableError(ValueError):
    pass


# ---------------------------------------------------------------------------
# affine expressions


class Lin(dict):
    """Affine form ``{symbol: coefficient}``; the constant term has key ``1``."""

    def __add__(self, other):
        out = Lin(self)
        for k, v in other.items():
            out[k] = out.get(k, 0) + v
            if not out[k]:
                del out[k]
        return out

    def scale(self, c):
        return Lin({k: v * c for k, v in self.items() if v * c})

    def __sub__(self, other):
        return self + other.scale(-1)

    @classmethod
    def const(cls, c):
        return cls({1: Fraction(c)} if c else {})

    @classmethod
    def sym(cls, s, c=1):
        return cls({s: Fraction(c)})

    def eval(self, env: dict) -> Fraction:
        return sum((Fraction(v) * (1 if k == 1 else Fraction(env[k])) for k, v in self.items()), Fraction(0))

    def __str__(self) -> str:
        if not self:
            return "0"
        parts = []
        for k in sorted(self, key=lambda s: (s == 1, str(s))):
            v = self[k]
            mag = abs(v)
            if k == 1:
                body = str(mag)
            elif mag == 1:
                body = k
            else:
                body = f"{mag}*{k}"
            parts.append(("-" if v < 0 else "+") + body)
        s = " ".join(p[0] + " " + p[1:] for p in parts)
        return s[2:] if s.startswith("+ ") else "-" + s[2:]

    @classmethod
    def parse(cls, text: str) -> "Lin":
        out = cls()
        t = text.replace(" ", "")
        if not t:
            raise TableError("empty expression")
        for sgn, body in re.findall(r"([+-]?)([^+-]+)", t):
            c = Fraction(-1 if sgn == "-" else 1)
            if "*" in body:
                num, sym = body.split("*", 1)
                c *= Fraction(num)
            elif re.fullmatch(r"[0-9/]+", body):
                out = out + cls.const(c * Fraction(body))
                continue
            else:
                sym = body
            if not re.fullmatch(r"[a-z][a-z0-9]*", sym):
                raise TableError(f"bad symbol {sym!r} in {text!r}")
            out = out + cls.sym(sym, c)
        return out


def _eliminate(rows, ncols):
    """Row-reduce ``[(coeffs, Lin)]`` in place; returns pivot columns."""
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(rows)) if rows[i][0][c]), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        coeffs, rhs = rows[r]
        inv = 1 / coeffs[c]
        rows[r] = ([x * inv for x in coeffs], rhs.scale(inv))
        for i in range(len(rows)):
            if i != r and rows[i][0][c]:
                f = rows[i][0][c]
                rows[i] = ([a - f * b for a, b in zip(rows[i][0], rows[r][0])], rows[i][1] - rows[r][1].scale(f))
        pivots.append(c)
        r += 1
    return pivots


def _reduce(lin: Lin, basis: list[Lin]) -> Lin:
    for b in basis:
        s = next(k for k in sorted(b, key=str) if k != 1)
        if lin.get(s):
            lin = lin - b.scale(lin[s] / b[s])
    return lin


def _basis(constraints: list[Lin]) -> list[Lin]:
    out: list[Lin] = []
    for c in constraints:
        c = _reduce(c, out)
        if any(k != 1 for k in c):
            out.append(c)
        elif c:
            raise TableError(f"inconsistent source constraint {c}")
    return out


def solve(equations, unknowns, constraints=()):
    """Solve ``sum coeff*unknown = Lin`` for the unknowns (free ones set to 0).

    Residual equations must vanish modulo ``constraints`` (identities among
    the bound symbols that hold on every framed source configuration).
    """
    idx = {u: i for i, u in enumerate(unknowns)}
    rows = []
    for coeffs, rhs in equations:
        v = [Fraction(0)] * len(unknowns)
        for u, c in coeffs.items():
            v[idx[u]] += c
        rows.append((v, rhs))
    pivots = _eliminate(rows, len(unknowns))
    basis = _basis(list(constraints))
    for coeffs, rhs in rows[len(pivots):]:
        if _reduce(rhs, basis):
            raise TableError(f"inconsistent weight equations: residual {_reduce(rhs, basis)}")
    out = {u: Lin() for u in unknowns}
    for r, c in enumerate(pivots):
        out[unknowns[c]] = _reduce(rows[r][1], basis)
    return out


# ---------------------------------------------------------------------------
# rotation bookkeeping on tangles


def _dir(pos: int) -> int:
    return 1 if along(pos) else -1


def _arc_rotation(arc, xsym) -> tuple[dict, Lin]:
    """Internal part of an arc's rotation: (unknown coefficients, symbolic part)."""
    coeffs: dict = {}
    for t in arc.traversals:
        coeffs[xsym(t.edge)] = coeffs.get(xsym(t.edge), 0) + t.direction
    return coeffs, Lin.const(Fraction(-arc.n, 2))


def _arcs_by_ends(g: OGraph):
    cs = trace_cells(g)
    return {frozenset({a.start, a.end}): a for a in cs.arcs}, cs.cells


def _to_lin(coeffs: dict) -> Lin:
    return Lin({k: Fraction(v) for k, v in coeffs.items() if v})


def mp_rule(src: OGraph, dst: OGraph, pin=()):
    """Weights for ``dst`` (internal edges and leg increments) in terms of the
    internal edge weights of ``src``.  ``pin`` adds gauge equations
    ``(unknown, Lin)``."""
    sym = {e.id: f"x{i}" for i, e in enumerate(sorted(src.edges, key=lambda e: id_key(e.id)))}
    sarcs, scells = _arcs_by_ends(src)
    darcs, dcells = _arcs_by_ends(dst)
    if set(sarcs) != set(darcs):
        raise TableError("arcs of the two sides connect different leg slots")
    unknowns = [f"e:{e.id}" for e in sorted(dst.edges, key=lambda e: id_key(e.id))]
    unknowns += [f"leg:{i}" for i in range(len(dst.legs))]
    eqs = []
    for ends, da in sorted(darcs.items(), key=lambda kv: sorted(kv[0])):
        dc, dk = _arc_rotation(da, lambda e: f"e:{e}")
        sc, sk = _arc_rotation(sarcs[ends], lambda e: sym[e])
        for leg, pos in ends:
            dc[f"leg:{leg}"] = dc.get(f"leg:{leg}", 0) + _dir(pos)
        # dst internal + leg deltas + dst dots == src internal + src dots
        eqs.append((dc, _to_lin(sc) + sk - dk))
    for c in dcells:
        coeffs, k = _arc_rotation(c, lambda e: f"e:{e}")
        eqs.append((coeffs, Lin.const(-1) - k))
    constraints = []
    for c in scells:
        coeffs, k = _arc_rotation(c, lambda e: sym[e])
        constraints.append(_to_lin(coeffs) + k + Lin.const(1))
    eqs += [({u: 1}, lin) for u, lin in pin]
    sol = solve(eqs, unknowns, constraints)
    return sym, sol


def ps_rule(pocket: OGraph, slots: tuple[int, int], end: str):
    """Forward and inverse weight rules of a pure sliding move.

    Forward: ``e1`` has weight ``k``, ``e2`` weight ``l``; ``p`` is the
    rotation along the bottom segment (see ``weights.rotation_number_p``).
    The four pieces get the absolute weights ``piece0..3`` and the pocket
    edges ``p0, p1``.  Inverse: ``e1 = ...``, ``e2 = ...`` from the pocket.
    """
    i, j = slots
    arcs, cells = _arcs_by_ends(pocket)
    bottom2 = 2 if end == "source" else 3
    top2 = 5 - bottom2
    ext = {
        frozenset({(0, i), (bottom2, j)}): Lin.const(-1) - Lin.sym("p"),
        frozenset({(1, i), (top2, j)}): Lin.sym("p") + Lin.sym("k", _dir(i)) + Lin.sym("l", _dir(j)),
    }
    for q in (1, 2, 3):
        if q != i:
            ext[frozenset({(0, q), (1, q)})] = Lin.sym("k", _dir(q))
        if q != j:
            ext[frozenset({(2, q), (3, q)})] = Lin.sym("l", _dir(q))
    if set(arcs) != set(ext):
        raise TableError(f"pocket {slots} arcs do not reconnect as a pure sliding: {sorted(map(sorted, arcs))}")
    unknowns = [f"e:{e.id}" for e in sorted(pocket.edges, key=lambda e: id_key(e.id))] + [f"leg:{n}" for n in range(4)]
    eqs = []
    for ends, a in sorted(arcs.items(), key=lambda kv: sorted(kv[0])):
        coeffs, k = _arc_rotation(a, lambda e: f"e:{e}")
        for leg, pos in ends:
            coeffs[f"leg:{leg}"] = coeffs.get(f"leg:{leg}", 0) + _dir(pos)
        eqs.append((coeffs, ext[ends] - k))
    for c in cells:
        coeffs, k = _arc_rotation(c, lambda e: f"e:{e}")
        eqs.append((coeffs, Lin.const(-1) - k))
    # gauge (H-moves at the two new crossings): first pocket edge 0, bottom piece of e1 keeps k
    fix = [({"e:p0": 1}, Lin()), ({"leg:0": 1}, Lin.sym("k"))]
    base = solve(eqs + fix, unknowns)
    forward = {u: base[u] for u in unknowns}
    # inverse: e1, e2 from one straight arc each
    sym = {f"e:{e.id}": f"x{n}" for n, e in enumerate(sorted(pocket.edges, key=lambda e: id_key(e.id)))}
    sym.update({f"leg:{n}": f"w{n}" for n in range(4)})
    inverse = {}
    for name, legs_, slot_skip in (("e1", (0, 1), i), ("e2", (2, 3), j)):
        vals = []
        for q in (1, 2, 3):
            if q == slot_skip:
                continue
            a = arcs[frozenset({(legs_[0], q), (legs_[1], q)})]
            coeffs, k = _arc_rotation(a, lambda e: sym[f"e:{e}"])
            lin = _to_lin(coeffs) + k + Lin.sym(f"w{legs_[0]}", _dir(q)) + Lin.sym(f"w{legs_[1]}", _dir(q))
            vals.append(lin.scale(_dir(q)))
        inverse[name] = vals
    return forward, inverse, sym


# ---------------------------------------------------------------------------
# records


@dataclass(frozen=True)
class Rule:
    bind: tuple[tuple[str, str], ...]  # symbol -> edge id (or leg index as "@n")
    set: tuple[tuple[str, str], ...]  # target -> expression

    def lin(self, target: str) -> Lin:
        return Lin.parse(dict(self.set)[target])


def _h_gauge(dst: OGraph, c: str) -> dict[str, int]:
    """Effect of an H-move at ``c`` on the unknowns of ``mp_rule``."""
    out = {}
    for e in dst.edges:
        d = (e.target.crossing == c) - (e.source.crossing == c)
        if d:
            out[f"e:{e.id}"] = d
    for n, ep in enumerate(dst.legs):
        if ep.crossing == c:
            out[f"leg:{n}"] = -1 if ep.port.endswith("_out") else 1
    return out


def _mp_rules(lhs: OGraph, rhs: OGraph) -> tuple[Rule, Rule]:
    """Forward rule and its exact inverse on the forward's image.

    The gauge (H-moves at the replacement crossings, multiples of ``k``) is
    chosen so some replacement edge carries ``k`` and as few legs as possible
    change; ties go to the smallest coefficients.
    """
    (lid,) = [e.id for e in lhs.edges]
    _, sol = mp_rule(lhs, rhs)
    cs = sorted(rhs.crossings, key=id_key)
    gauges = [_h_gauge(rhs, c) for c in cs]
    best = None
    for a in product(range(-2, 3), repeat=len(cs)):
        cand = {u: sol[u] + Lin.sym("x0", sum(ai * g.get(u, 0) for ai, g in zip(a, gauges))) for u in sol}
        coef = {u: v.get("x0", 0) for u, v in cand.items()}
        carriers = [u for u in cand if u.startswith("e:") and abs(coef[u]) == 1 and len(cand[u]) == 1]
        if not carriers:
            continue
        legs = sum(1 for u in cand if u.startswith("leg:") and cand[u])
        key = (legs, sum(abs(c) for c in coef.values()), sum(1 for v in cand.values() if v), tuple(-x for x in a))
        if best is None or key < best[0]:
            best = (key, cand, carriers[0])
    if best is None:
        raise TableError("no gauge lets a replacement edge carry the pattern weight")
    _, sol, carrier = best
    sgn = sol[carrier]["x0"]

    def ren(lin, s):
        return Lin({(s if k == "x0" else k): v for k, v in lin.items()})

    fw = Rule(
        (("k", lid),),
        tuple((u.replace("e:", "").replace("leg:", "@"), str(ren(v, "k"))) for u, v in sol.items()),
    )
    # k = sgn * (carrier weight)
    back = [(lid, str(Lin.sym("k", sgn)))]
    for u, v in sol.items():
        if u.startswith("leg:"):
            # undo the increment, with x0 = sgn * k
            sub = Lin({("k" if t == "x0" else t): (c * sgn if t == "x0" else c) for t, c in v.items()})
            back.append((u.replace("leg:", "@"), str(sub.scale(-1))))
    bw = Rule((("k", carrier[2:]),), tuple(back))
    return fw, bw


def _relegs(g: OGraph, order) -> OGraph:
    return OGraph(g.crossings, g.edges, [g.legs[k] for k in order], g.weights_kind)


def _rename(g: OGraph, cmap) -> OGraph:
    def m(ep):
        return Endpoint(cmap[ep.crossing], ep.port)

    return OGraph(
        {cmap[c]: s for c, s in g.crossings.items()},
        [Edge(e.id, m(e.source), m(e.target), e.weight) for e in g.edges],
        [m(ep) for ep in g.legs],
        g.weights_kind,
    )


def primary_presentation(lhs: OGraph, rhs: OGraph) -> tuple[OGraph, OGraph, tuple[int, ...]]:
    """The primary MP move: D2 redrawn with incoming strands first and its own names."""
    ins = [k for k, ep in enumerate(lhs.legs) if not ep.port.endswith("_out")]
    outs = [k for k, ep in enumerate(lhs.legs) if ep.port.endswith("_out")]
    key = lambda k: (lhs.legs[k].crossing, lhs.legs[k].port)  # noqa: E731
    order = tuple(sorted(ins, key=key) + sorted(outs, key=key))
    lmap = {"L0": "a", "L1": "b"}
    rmap = {"R0": "u", "R1": "v", "R2": "w"}
    return _relegs(_rename(lhs, lmap), order), _relegs(_rename(rhs, rmap), order), order


def generate():
    """Build every record from geometry.  Returns (records, relations)."""
    from .moves import MoveRecord
    from .triangulation import bipyramid_moves, pocket

    geo = {code: (l, r) for code, l, r in bipyramid_moves()}
    recs = {}
    d2l, d2r = geo[MP_CODES["D2"]]
    pl, pr, _ = primary_presentation(d2l, d2r)
    fw, bw = _mp_rules(pl, pr)
    recs["PrimaryMP"] = MoveRecord("PrimaryMP", "mp", pl, pr, False, weights=(("forward", fw), ("inverse", bw)))
    for name, code in MP_CODES.items():
        lhs, rhs = geo[code]
        fw, bw = _mp_rules(lhs, rhs)
        recs[name] = MoveRecord(
            name, "mp", lhs, rhs, name in CYCLIC_NAMES, weights=(("forward", fw), ("inverse", bw)), note=f"branching {code}"
        )
    for name, (i, j) in PS_SLOTS.items():
        t, end = pocket(i, j)
        fwd, inv, sym = ps_rule(t, (i, j), end)
        fr = Rule(
            (("k", "e1"), ("l", "e2"), ("p", "p")),
            tuple((u.replace("e:", "").replace("leg:", "@"), str(v)) for u, v in fwd.items()),
        )
        ivs = []
        for target, vals in inv.items():
            for n, v in enumerate(vals):
                ivs.append((target if n == 0 else f"{target}'", str(v)))
        ir = Rule(tuple((s, u.replace("e:", "").replace("leg:", "@")) for u, s in sym.items()), tuple(ivs))
        recs[name] = MoveRecord(
            name, "ps", None, t, name in CYCLIC_NAMES, slots=(i, j), end=end, weights=(("forward", fr), ("inverse", ir))
        )
    rels = find_relations(recs)
    for n, r in enumerate(rels, 1):
        x = recs[r.target]
        base = recs[r.ps]
        name = f"Local-{n}"
        from .moves import apply_ps

        rhs, _ = apply_ps(x.lhs, base, *r.strands)
        recs[name] = MoveRecord(
            name, "local", x.lhs, rhs, base.cyclic, strands=r.strands, base=r.ps, note=f"{r.target} <- {r.source}^-1"
        )
    return recs, rels


# ---------------------------------------------------------------------------
# relations X = Y^-1 o ps


@dataclass(frozen=True)
class Relation:
    id: str
    target: str  # X
    source: str  # Y; X = Y^-1 o ps
    ps: str
    strands: tuple[str, str]
    embed: tuple[tuple[str, str], ...]  # Y replacement crossing -> crossing of ps(X lhs)
    local: str = ""

    def __str__(self) -> str:
        return f"{self.target} <- {self.source}^-1 o {self.ps}"


def find_relations(recs) -> list[Relation]:
    """All relations ``X = Y^-1 o ps`` between the 16 MP moves whose pure
    sliding is applied to the left side of X and decided there."""
    from .core import isomorphic
    from .moves import Status, apply_ps, ps_condition
    from .rewrite import embeddings, replace, strands

    out = []
    names = list(MP_CODES)
    for xn in names:
        x = recs[xn]
        refs = sorted(strands(x.lhs), key=lambda r: (r[0] == "@", id_key(r.lstrip("@"))))
        for pn in PS_SLOTS:
            rec = recs[pn]
            for s1 in refs:
                for s2 in refs:
                    if s1 == s2:
                        continue
                    if ps_condition(x.lhs, rec, s1, s2) is not Status.HOLDS:
                        continue
                    g1, _ = apply_ps(x.lhs, rec, s1, s2)
                    for yn in names:
                        y = recs[yn]
                        for m in embeddings(g1, y.rhs):
                            g2, _ = replace(g1, y.rhs, y.lhs, m)
                            if isomorphic(g2, x.rhs) is not None:
                                out.append(Relation("", xn, yn, pn, (s1, s2), tuple(sorted(m.items()))))
    return [Relation(f"R{n:02d}", r.target, r.source, r.ps, r.strands, r.embed) for n, r in enumerate(out, 1)]


# ---------------------------------------------------------------------------
# text format


def _block(name: str, g: OGraph, indent: str = "  ") -> list[str]:
    body = serialize(g, canonical=False).splitlines()
    return [f"{indent}{name} {{"] + [f"{indent}  {ln}" for ln in body if ln and not ln.startswith("weights")] + [f"{indent}}}"]


def format_table(recs, rels) -> str:
    lines = [
        "# Move catalog.  Generated by `python3 -m ograph.movetable`; do not edit by hand.",
        "# pattern/replacement use the .og edge syntax; leg n of the replacement is",
        "# glued where leg glue[n] of the pattern was.  Weight expressions are affine",
        "# over the bound symbols with rational coefficients.",
        "",
    ]
    for name, r in recs.items():
        lines.append(f"move {name}")
        lines.append(f"  family {r.family}")
        lines.append(f"  cyclic {'yes' if r.cyclic else 'no'}")
        if r.note:
            lines.append(f"  note {r.note}")
        if r.slots:
            lines.append(f"  slots {r.slots[0]} {r.slots[1]}")
            lines.append(f"  end {r.end}")
        if r.base:
            lines.append(f"  base {r.base}")
            lines.append(f"  strands {r.strands[0]} {r.strands[1]}")
        if r.lhs is not None:
            lines += _block("pattern", r.lhs)
        lines += _block("replacement", r.rhs)
        lines.append("  glue " + " ".join(str(k) for k in range(len(r.rhs.legs))))
        for direction, rule in r.weights or ():
            lines.append(f"  weights {direction} {{")
            for s, e in rule.bind:
                lines.append(f"    bind {s} {e}")
            for t, ex in rule.set:
                lines.append(f"    set {t} = {ex}")
            lines.append("  }")
        lines.append("end")
        lines.append("")
    for rel in rels:
        emb = " ".join(f"{a}={b}" for a, b in rel.embed)
        lines.append(f"relation {rel.id} {rel.target} {rel.source} {rel.ps} {rel.strands[0]} {rel.strands[1]} {emb}")
    return "\n".join(lines) + "\n"


def load_table(text: str):
    from .moves import MoveRecord

    recs: dict = {}
    rels: list = []
    lines = text.splitlines()
    n = 0

    def err(msg):
        raise TableError(f"line {n + 1}: {msg}")

    while n < len(lines):
        ln = lines[n].split("#", 1)[0].strip()
        if not ln:
            n += 1
            continue
        toks = ln.split()
        if toks[0] == "relation":
            rid, x, y, ps, s1, s2, *emb = toks[1:]
            rels.append(Relation(rid, x, y, ps, (s1, s2), tuple(tuple(e.split("=")) for e in emb)))
            n += 1
            continue
        if toks[0] != "move":
            err(f"unexpected {toks[0]!r}")
        name = toks[1]
        f: dict = {"weights": []}
        n += 1
        while True:
            if n >= len(lines):
                err("unterminated move")
            ln = lines[n].split("#", 1)[0].strip()
            n += 1
            if not ln:
                continue
            toks = ln.split()
            key = toks[0]
            if key == "end" and len(toks) == 1:
                break
            if key in ("pattern", "replacement"):
                body = []
                while lines[n].strip() != "}":
                    body.append(lines[n])
                    n += 1
                n += 1
                f[key] = parse("\n".join(body))
            elif key == "weights":
                direction = toks[1]
                bind, sets = [], []
                while lines[n].strip() != "}":
                    t = lines[n].split()
                    if t[0] == "bind":
                        bind.append((t[1], t[2]))
                    elif t[0] == "set":
                        sets.append((t[1], " ".join(t[3:])))
                        Lin.parse(" ".join(t[3:]))
                    else:
                        err(f"bad weight line {lines[n]!r}")
                    n += 1
                n += 1
                f["weights"].append((direction, Rule(tuple(bind), tuple(sets))))
            elif key in ("family", "cyclic", "note", "end", "base"):
                f[key] = " ".join(toks[1:])
            elif key in ("slots", "strands", "glue"):
                f[key] = tuple(toks[1:])
            else:
                err(f"unknown field {key!r}")
        rhs = f["replacement"]
        glue = tuple(int(x) for x in f.get("glue", range(len(rhs.legs))))
        if sorted(glue) != list(range(len(rhs.legs))):
            err("glue is not a permutation")
        inv = [glue.index(k) for k in range(len(glue))]
        rhs = _relegs(rhs, inv)
        recs[name] = MoveRecord(
            name,
            f["family"],
            f.get("pattern"),
            rhs,
            f["cyclic"] == "yes",
            slots=tuple(int(x) for x in f["slots"]) if "slots" in f else None,
            end=f.get("end"),
            weights=tuple(f["weights"]) or None,
            strands=f.get("strands"),
            base=f.get("base"),
            note=f.get("note", ""),
        )
    return recs, rels


def main(argv=None) -> int:
    from importlib import resources

    recs, rels = generate()
    text = format_table(recs, rels)
    if argv and argv[0] == "--check":
        cur = resources.files("ograph").joinpath("data/moves.txt").read_text(encoding="utf-8")
        return 0 if cur == text else 1
    path = resources.files("ograph").joinpath("data/moves.txt")
    with open(str(path), "w", encoding="utf-8") as fh:
        fh.write(text)
    print(f"wrote {len(recs)} moves and {len(rels)} relations")
    return 0


if __name__ == "__main__":
    sys.exit(main(sys.argv[1:]))
