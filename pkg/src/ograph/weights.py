"""Integral, framed and spin layers.

An integral o-graph carries an integer weight ``x(e)`` per edge; it is
framed when ``dx = c_P`` on every 2-cell.  Equivalently the rotation
``sum(+-x) - n/2`` around every cell boundary is ``-1``.  Framed (and spin)
o-graphs keep only ``x`` mod 2.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import total_ordering

from .circuits import CellStructure, coboundary, euler_cochain, follow, trace_cells
from .core import Endpoint, OGraph
from .tables import along


class WeightError(ValueError):
    pass


@total_ordering
@dataclass(frozen=True)
class HalfInt:
    """An element of (1/2)Z, stored as twice its value."""

    twice: int

    @classmethod
    def of(cls, v) -> "HalfInt":
        if isinstance(v, HalfInt):
            return v
        f = Fraction(v)
        if (2 * f).denominator != 1:
            raise WeightError(f"{v} is not a half-integer")
        return cls(int(2 * f))

    def __add__(self, other):
        return HalfInt(self.twice + HalfInt.of(other).twice)

    __radd__ = __add__

    def __sub__(self, other):
        return HalfInt(self.twice - HalfInt.of(other).twice)

    def __neg__(self):
        return HalfInt(-self.twice)

    def __lt__(self, other):
        return self.twice < HalfInt.of(other).twice

    def __eq__(self, other):
        try:
            return self.twice == HalfInt.of(other).twice
        except (TypeError, ValueError):
            return NotImplemented

    def __hash__(self):
        return hash(("HalfInt", self.twice))

    @property
    def is_integer(self) -> bool:
        return self.twice % 2 == 0

    def to_int(self) -> int:
        if self.twice % 2:
            raise WeightError(f"{self} is not an integer")
        return self.twice // 2

    def fraction(self) -> Fraction:
        return Fraction(self.twice, 2)

    def __str__(self) -> str:
        return str(self.twice // 2) if self.twice % 2 == 0 else f"{self.twice}/2"


# ---------------------------------------------------------------------------
# validation


def _cochain(g: OGraph, x) -> dict[str, int]:
    if x is None:
        if g.weights_kind == "none":
            raise WeightError("graph carries no weights")
        return g.weight_map()
    return dict(x)


def validate_framed(g: OGraph, x=None, coefficients: str = "int", cs: CellStructure | None = None):
    """``(ok, residual)`` with ``residual = dx - c_P`` per cell (mod 2 for ``mod2``)."""
    if coefficients not in ("int", "mod2"):
        raise WeightError(f"unknown coefficients {coefficients!r}")
    if x is None and g.weights_kind not in ("none", coefficients):
        raise WeightError(f"weights are {g.weights_kind}, not {coefficients}")
    if g.legs:
        raise WeightError("framing is defined for closed graphs")
    xs = _cochain(g, x)
    cs = cs or trace_cells(g)
    mod = 2 if coefficients == "mod2" else None
    dx = coboundary(g, cs, xs, mod)
    cp = euler_cochain(g, cs)
    res = {}
    for cid in dx:
        r = dx[cid] - cp[cid]
        res[cid] = r % 2 if mod else r
    return all(v == 0 for v in res.values()), res


def mod2(g: OGraph) -> OGraph:
    if g.weights_kind != "int":
        raise WeightError("mod2 needs integer weights")
    return g.with_weights({e.id: e.weight % 2 for e in g.edges}, "mod2")


def solve_framing(g: OGraph, cs: CellStructure | None = None) -> OGraph | None:
    """Some integer weights with ``dx = c_P`` (free coordinates zero), or None."""
    from .homology import smith_normal_form

    if g.legs:
        raise WeightError("framing is defined for closed graphs")
    cs = cs or trace_cells(g)
    eids = [e.id for e in g.edges]
    col = {e: n for n, e in enumerate(eids)}
    D = [[0] * len(eids) for _ in cs.cells]
    for r, c in enumerate(cs.cells):
        for t in c.traversals:
            D[r][col[t.edge]] += t.direction
    cp = euler_cochain(g, cs)
    rhs = [cp[c.id] for c in cs.cells]
    S, U, V = smith_normal_form(D)
    b = [sum(u * v for u, v in zip(row, rhs)) for row in U]
    y = [0] * len(eids)
    for i, bi in enumerate(b):
        d = S[i][i] if i < len(eids) else 0
        if d == 0:
            if bi:
                return None
        elif bi % d:
            return None
        else:
            y[i] = bi // d
    x = {e: sum(V[n][m] * y[m] for m in range(len(eids))) for n, e in enumerate(eids)}
    return g.with_weights(x, "int")


@dataclass(frozen=True)
class FramedIntegralOGraph:
    graph: OGraph
    cells: CellStructure = field(default=None, compare=False)

    def __post_init__(self):
        if self.graph.weights_kind != "int":
            raise WeightError("framed integral o-graphs carry integer weights")
        cs = self.cells or trace_cells(self.graph)
        object.__setattr__(self, "cells", cs)
        ok, res = validate_framed(self.graph, cs=cs)
        if not ok:
            raise WeightError(f"dx != c_P on {sorted(k for k, v in res.items() if v)}")


@dataclass(frozen=True)
class FramedOGraph:
    graph: OGraph
    cells: CellStructure = field(default=None, compare=False)

    def __post_init__(self):
        if self.graph.weights_kind != "mod2":
            raise WeightError("framed o-graphs carry mod-2 weights")
        cs = self.cells or trace_cells(self.graph)
        object.__setattr__(self, "cells", cs)
        ok, res = validate_framed(self.graph, coefficients="mod2", cs=cs)
        if not ok:
            raise WeightError(f"dx != c_P mod 2 on {sorted(k for k, v in res.items() if v)}")


SpinOGraph = FramedOGraph


# ---------------------------------------------------------------------------
# the rotation number p


def _dir(pos: int) -> int:
    return 1 if along(pos) else -1


def _segment_rotation(g: OGraph, path, xs) -> HalfInt:
    total = HalfInt(0)
    for item in path:
        if isinstance(item, tuple):
            ref, pos = item
            total = total + _dir(pos) * xs[ref]
        elif item.dotted:
            total = total - Fraction(1, 2)
    return total


def rotation_number_p(g: OGraph, rec, s1: str, s2: str, x=None) -> HalfInt:
    """Rotation of the second framing vector along the 2-cell between the
    bottom ends of ``e1`` and ``e2`` (dots at both end corners included).

    The bottom of ``e1`` is its source end; the bottom of ``e2`` is the end
    the circuit reaches from there (``rec.end``).  If the bottom segment
    leaves a tangle, the top segment is used: the whole boundary rotates by
    ``-1``, so ``p = -1 - q - (+-k) - (+-l)``.
    """
    if s1 == s2:
        raise WeightError("the two sliding strands coincide; p is not defined for this site")
    xs = _cochain(g, x)
    i, j = rec.slots
    for side in ("source", "target"):
        hit = follow(g, s1, i, side, {(s2, j), (s1, i)})
        if hit is None:
            continue
        ref, pos, end, path = hit
        if ref == s1:
            raise WeightError("condition fails: the circuit returns to e1 first")
        want = rec.end if side == "source" else ("target" if rec.end == "source" else "source")
        if end != want:
            raise WeightError("condition fails: the circuit reaches e2 from the wrong end")
        q = _segment_rotation(g, path, xs)
        if side == "source":
            return q
        k, l = _strand_weight(xs, s1), _strand_weight(xs, s2)
        return -q - 1 - _dir(i) * k - _dir(j) * l
    raise WeightError("p is indeterminate: both segments leave the tangle")


def _strand_weight(xs, ref: str) -> int:
    if ref.startswith("@"):
        raise WeightError("a sliding strand is a leg; its weight lies outside the tangle")
    return xs[ref]


# ---------------------------------------------------------------------------
# weight rules used by moves.apply


def _env_value(v):
    return v.fraction() if isinstance(v, HalfInt) else Fraction(v)


def _eval(rule, target: str, env: dict) -> int:
    val = rule.lin(target).eval({k: _env_value(v) for k, v in env.items()})
    if val.denominator != 1:
        raise WeightError(f"weight {target} = {val} is not an integer")
    return int(val)


def _rule(rec, direction: str):
    rules = dict(rec.weights or ())
    if direction not in rules:
        raise WeightError(f"{rec.name} has no {direction} weight rule")
    return rules[direction]


def apply_h(g: OGraph, c: str, sign: int = 1) -> OGraph:
    """H-move: add ``sign`` to edges entering ``c`` and subtract it from edges leaving ``c``."""
    if g.weights_kind == "none":
        raise WeightError("H-move needs weights")
    if c not in g.crossings:
        raise WeightError(f"no crossing {c!r}")
    w = g.weight_map()
    for e in g.edges:
        d = (e.target.crossing == c) - (e.source.crossing == c)
        w[e.id] += sign * d
    if g.weights_kind == "mod2":
        w = {k: v % 2 for k, v in w.items()}
    return g.with_weights(w, g.weights_kind)


def pattern_weights(g: OGraph, rec, site, inverse: bool = False):
    """``(rhs_weights, leg_delta)`` for a pattern move (MP kinds)."""
    rule = _rule(rec, "inverse" if inverse else "forward")
    src = rec.rhs if inverse else rec.lhs
    m = site.match
    env = {}
    for sym, eid in rule.bind:
        e = src.edge(eid)
        he = g.edge_at(Endpoint(m[e.source.crossing], e.source.port))
        env[sym] = he.weight
    rw, ld = {}, {}
    for target, _ in rule.set:
        v = _eval(rule, target, env)
        if target.startswith("@"):
            ld[int(target[1:])] = v
        else:
            rw[target] = v
    return rw, ld


def ps_weights(g: OGraph, rec, s1: str, s2: str) -> dict:
    """Absolute weights of the pocket edges and the four pieces for ips."""
    rule = _rule(rec, "forward")
    xs = g.weight_map()
    k, l = _strand_weight(xs, s1), _strand_weight(xs, s2)
    p = rotation_number_p(g, rec, s1, s2)
    env = {"k": k, "l": l, "p": p}
    out: dict = {}
    for target, _ in rule.set:
        v = _eval(rule, target, env)
        out[("leg", int(target[1:])) if target.startswith("@") else target] = v
    return out


def ps_inverse_weights(g: OGraph, rec, match: dict[str, str], host_strands: dict[str, str]) -> dict[int, int]:
    """Weights of the two merged strands when a pocket collapses.

    ``host_strands`` maps the pocket symbols (``p0``, ``p1``, ``@0``..``@3``)
    to host edge ids.  Every straight circuit arc must give the same value,
    which holds when the small cell inside the pocket is framed.
    """
    rule = _rule(rec, "inverse")
    xs = g.weight_map()
    env = {}
    for sym, ref in rule.bind:
        hid = host_strands[ref]
        if hid.startswith("@"):
            raise WeightError("pocket piece is a leg; its weight lies outside the tangle")
        env[sym] = xs[hid]
    out = {}
    for n, name in enumerate(("e1", "e2")):
        vals = {_eval(rule, t, env) for t, _ in rule.set if t.rstrip("'") == name}
        if g.weights_kind == "mod2":
            vals = {v % 2 for v in vals}
        if len(vals) != 1:
            raise WeightError(f"pocket weights are not framed: {name} has values {sorted(vals)}")
        out[n] = vals.pop()
    return out
