"""Abstract normal o-graphs and o-tangles.

An o-graph is a 4-valent graph whose vertices are signed crossings.  Each
crossing has the four ports ``over_in``, ``over_out``, ``under_in`` and
``under_out``; every edge runs from an out-port to an in-port.  Ports that
are not used by an edge are dangling legs, kept in an ordered list so the
same type doubles as an o-tangle.  Virtual crossings and planar layout are
not represented at all.
"""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Mapping as TMapping

from .tables import IN_PORTS, OUT_PORTS, PORTS, is_out

WEIGHT_KINDS = ("none", "int", "mod2")
INT_MIN, INT_MAX = -(2**63), 2**63 - 1

_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


class OGraphError(ValueError):
    pass


class ParseError(OGraphError):
    def __init__(self, line: int, token: str, reason: str):
        super().__init__(f"line {line}: {reason}: {token!r}")
        self.line = line
        self.token = token
        self.reason = reason


def id_key(s: str):
    """Natural sort key so that ``c2`` sorts before ``c10``."""
    return tuple(int(t) if t.isdigit() else t for t in re.split(r"(\d+)", s))


@dataclass(frozen=True, order=True)
class Endpoint:
    crossing: str
    port: str

    def __str__(self) -> str:
        return f"{self.crossing}.{self.port}"


@dataclass(frozen=True)
class Edge:
    id: str
    source: Endpoint
    target: Endpoint
    weight: int | None = None


@dataclass(frozen=True)
class OGraph:
    """Immutable o-graph / o-tangle.

    ``crossings`` maps crossing id to sign (+1 or -1).  ``legs`` is the
    ordered tuple of dangling endpoints.
    """

    crossings: TMapping[str, int]
    edges: tuple[Edge, ...]
    legs: tuple[Endpoint, ...] = ()
    weights_kind: str = "none"
    _at: dict = field(default=None, init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "crossings", dict(self.crossings))
        object.__setattr__(self, "edges", tuple(self.edges))
        object.__setattr__(self, "legs", tuple(self.legs))
        at = {}
        for e in self.edges:
            at.setdefault(e.source, e)
            at.setdefault(e.target, e)
        object.__setattr__(self, "_at", at)

    def __hash__(self):
        return hash((tuple(sorted(self.crossings.items())), self.edges, self.legs, self.weights_kind))

    # -- lookups -------------------------------------------------------
    def sign(self, cid: str) -> int:
        return self.crossings[cid]

    def edge(self, eid: str) -> Edge:
        for e in self.edges:
            if e.id == eid:
                return e
        raise KeyError(eid)

    def edge_at(self, ep: Endpoint) -> Edge | None:
        """The edge attached at ``ep`` or None if ``ep`` is a leg."""
        return self._at.get(ep)

    def leg_index(self, ep: Endpoint) -> int | None:
        try:
            return self.legs.index(ep)
        except ValueError:
            return None

    def other_end(self, ep: Endpoint) -> Endpoint | None:
        e = self.edge_at(ep)
        if e is None:
            return None
        return e.target if e.source == ep else e.source

    @property
    def is_closed(self) -> bool:
        return not self.legs

    @property
    def V(self) -> int:
        return len(self.crossings)

    @property
    def E(self) -> int:
        return len(self.edges)

    def weight_map(self) -> dict[str, int]:
        return {e.id: (e.weight or 0) for e in self.edges}

    def with_weights(self, weights: TMapping[str, int] | None, kind: str | None = None) -> "OGraph":
        """Return a copy with new edge weights (``None`` strips them)."""
        if weights is None:
            return OGraph(self.crossings, [Edge(e.id, e.source, e.target) for e in self.edges], self.legs, "none")
        kind = kind or (self.weights_kind if self.weights_kind != "none" else "int")
        mod = kind == "mod2"
        edges = [Edge(e.id, e.source, e.target, (weights[e.id] % 2) if mod else weights[e.id]) for e in self.edges]
        return OGraph(self.crossings, edges, self.legs, kind)

    def components(self) -> list[list[str]]:
        """Crossing ids grouped by connected component (sorted, deterministic)."""
        adj: dict[str, set[str]] = {c: set() for c in self.crossings}
        for e in self.edges:
            adj[e.source.crossing].add(e.target.crossing)
            adj[e.target.crossing].add(e.source.crossing)
        seen: set[str] = set()
        comps = []
        for c in sorted(self.crossings, key=id_key):
            if c in seen:
                continue
            comp, todo = [], [c]
            seen.add(c)
            while todo:
                x = todo.pop()
                comp.append(x)
                for y in adj[x]:
                    if y not in seen:
                        seen.add(y)
                        todo.append(y)
            comps.append(sorted(comp, key=id_key))
        return comps


# ---------------------------------------------------------------------------
# validation


@dataclass
class ValidationReport:
    violations: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.ok

    def __str__(self) -> str:
        return "valid" if self.ok else "\n".join(self.violations)


def validate(g: OGraph) -> ValidationReport:
    rep = ValidationReport()
    v = rep.violations
    if g.weights_kind not in WEIGHT_KINDS:
        v.append(f"unknown weights kind {g.weights_kind!r}")
    for c, s in g.crossings.items():
        if s not in (1, -1):
            v.append(f"crossing {c}: bad sign {s!r}")
    if not g.crossings:
        v.append("graph has no crossing")
    used: dict[Endpoint, str] = {}
    eids = set()

    def claim(ep: Endpoint, who: str):
        if ep.crossing not in g.crossings:
            v.append(f"{who}: unknown crossing {ep.crossing!r}")
            return
        if ep.port not in PORTS:
            v.append(f"{who}: unknown port {ep.port!r}")
            return
        if ep in used:
            v.append(f"{who}: endpoint {ep} already used by {used[ep]}")
            return
        used[ep] = who

    for e in g.edges:
        if e.id in eids:
            v.append(f"duplicate edge id {e.id}")
        eids.add(e.id)
        if e.source.port in PORTS and not is_out(e.source.port):
            v.append(f"edge {e.id}: source {e.source} is not an out-port")
        if e.target.port in PORTS and is_out(e.target.port):
            v.append(f"edge {e.id}: target {e.target} is not an in-port")
        claim(e.source, f"edge {e.id}")
        claim(e.target, f"edge {e.id}")
        if g.weights_kind == "none" and e.weight is not None:
            v.append(f"edge {e.id}: weight present with weights none")
        if g.weights_kind != "none":
            if e.weight is None:
                v.append(f"edge {e.id}: missing weight")
            elif g.weights_kind == "mod2" and e.weight not in (0, 1):
                v.append(f"edge {e.id}: mod2 weight {e.weight} not in {{0,1}}")
            elif not INT_MIN <= e.weight <= INT_MAX:
                v.append(f"edge {e.id}: weight overflow")
    for i, ep in enumerate(g.legs):
        claim(ep, f"leg {i}")
    for c in sorted(g.crossings, key=id_key):
        for p in PORTS:
            if Endpoint(c, p) not in used:
                kind = "out" if is_out(p) else "in"
                v.append(f"crossing {c}: unmatched {kind}-port {p}")
    return rep


def check(g: OGraph) -> OGraph:
    rep = validate(g)
    if not rep:
        raise OGraphError(str(rep))
    return g


# ---------------------------------------------------------------------------
# isomorphism and canonical form


@dataclass(frozen=True)
class Mapping:
    crossings: dict[str, str]
    edges: dict[str, str]


def _extend(g1: OGraph, g2: OGraph, start1: str, start2: str, cmap: dict, used: set, weights: bool) -> dict | None:
    """Propagate a crossing correspondence through a component."""
    local = {start1: start2}
    if start2 in used or g1.sign(start1) != g2.sign(start2):
        return None
    todo = deque([start1])
    taken = {start2}
    while todo:
        a = todo.popleft()
        b = local[a]
        for p in PORTS:
            ea, eb = g1.edge_at(Endpoint(a, p)), g2.edge_at(Endpoint(b, p))
            if (ea is None) != (eb is None):
                return None
            if ea is None:
                if g1.leg_index(Endpoint(a, p)) != g2.leg_index(Endpoint(b, p)):
                    return None
                continue
            if weights and ea.weight != eb.weight:
                return None
            oa = ea.target if ea.source.crossing == a and ea.source.port == p else ea.source
            ob = eb.target if eb.source.crossing == b and eb.source.port == p else eb.source
            if oa.port != ob.port:
                return None
            if oa.crossing in local:
                if local[oa.crossing] != ob.crossing:
                    return None
            else:
                if ob.crossing in taken or ob.crossing in used:
                    return None
                if g1.sign(oa.crossing) != g2.sign(ob.crossing):
                    return None
                local[oa.crossing] = ob.crossing
                taken.add(ob.crossing)
                todo.append(oa.crossing)
    return local


def isomorphic(g1: OGraph, g2: OGraph, weights: bool = True) -> Mapping | None:
    """Leg-preserving isomorphism, or None.

    Crossings of ``g1`` are visited in id order and each new component is
    sent to the least admissible crossing of ``g2``; this yields the
    lexicographically least mapping.
    """
    if (g1.V, g1.E, len(g1.legs)) != (g2.V, g2.E, len(g2.legs)):
        return None
    if weights and g1.weights_kind != g2.weights_kind:
        return None
    cmap: dict[str, str] = {}
    used: set[str] = set()
    targets = sorted(g2.crossings, key=id_key)
    for c in sorted(g1.crossings, key=id_key):
        if c in cmap:
            continue
        for t in targets:
            if t in used:
                continue
            local = _extend(g1, g2, c, t, cmap, used, weights)
            if local is not None:
                cmap.update(local)
                used.update(local.values())
                break
        else:
            return None
    emap = {}
    for e in g1.edges:
        f = g2.edge_at(Endpoint(cmap[e.source.crossing], e.source.port))
        emap[e.id] = f.id
    return Mapping(cmap, emap)


def anchored_isomorphism(g1: OGraph, g2: OGraph, seeds: TMapping[str, str] | None = None, weights: bool = True):
    """Crossing map ``g1 -> g2`` forced by ``seeds`` and by the legs (leg ``n``
    to leg ``n``), propagated along edges; None if it is not an isomorphism.

    Unlike ``isomorphic`` this never searches: every component must contain a
    seed or a leg.
    """
    if (g1.V, g1.E, len(g1.legs)) != (g2.V, g2.E, len(g2.legs)):
        return None
    cmap = dict(seeds or {})
    for a, b in zip(g1.legs, g2.legs):
        if a.port != b.port or cmap.setdefault(a.crossing, b.crossing) != b.crossing:
            return None
    out: dict[str, str] = {}
    used: set[str] = set()
    for a in sorted(cmap, key=id_key):
        if a in out:
            if out[a] != cmap[a]:
                return None
            continue
        local = _extend(g1, g2, a, cmap[a], out, used, weights)
        if local is None or any(out.get(k, v) != v for k, v in local.items()):
            return None
        out.update(local)
        used.update(local.values())
    if len(out) != g1.V or any(out[a] != b for a, b in cmap.items()):
        return None
    return out


def _component_code(g: OGraph, start: str):
    label = {start: 0}
    order = [start]
    todo = deque([start])
    code = []
    while todo:
        a = todo.popleft()
        row = [g.sign(a)]
        for p in PORTS:
            ep = Endpoint(a, p)
            e = g.edge_at(ep)
            if e is None:
                row.append((1, g.leg_index(ep), 0, 0))
                continue
            o = e.target if e.source == ep else e.source
            if o.crossing not in label:
                label[o.crossing] = len(label)
                order.append(o.crossing)
                todo.append(o.crossing)
            row.append((0, label[o.crossing], PORTS.index(o.port), e.weight or 0))
        code.append(tuple(row))
    return tuple(code), order


def canonical_order(g: OGraph) -> list[str]:
    """Crossing ids of ``g`` in canonical order."""
    comps = []
    for comp in g.components():
        best = min(_component_code(g, s) for s in comp)
        comps.append(best)
    comps.sort(key=lambda t: t[0])
    return [c for _, order in comps for c in order]


def relabel(g: OGraph, cmap: TMapping[str, str], emap: TMapping[str, str] | None = None) -> OGraph:
    def m(ep: Endpoint) -> Endpoint:
        return Endpoint(cmap[ep.crossing], ep.port)

    edges = [Edge(emap[e.id] if emap else e.id, m(e.source), m(e.target), e.weight) for e in g.edges]
    return OGraph({cmap[c]: s for c, s in g.crossings.items()}, edges, [m(l) for l in g.legs], g.weights_kind)


def canonicalize(g: OGraph) -> OGraph:
    """Relabel crossings ``c0..`` and edges ``e0..`` in canonical order."""
    order = canonical_order(g)
    cmap = {c: f"c{i}" for i, c in enumerate(order)}
    pos = {c: i for i, c in enumerate(order)}
    edges = sorted(g.edges, key=lambda e: (pos[e.source.crossing], PORTS.index(e.source.port)))
    emap = {e.id: f"e{i}" for i, e in enumerate(edges)}
    h = relabel(g, cmap, emap)
    return OGraph(h.crossings, sorted(h.edges, key=lambda e: id_key(e.id)), h.legs, h.weights_kind)


# ---------------------------------------------------------------------------
# involutions


def involution(g: OGraph, which: str) -> OGraph:
    """``reflect``, ``reverse``, ``sign_change`` or a composite like ``reflect+reverse``."""
    out = g
    for w in which.split("+"):
        out = _involute(out, w)
    return out


_SWAP_IO = {"over_in": "over_out", "over_out": "over_in", "under_in": "under_out", "under_out": "under_in"}
_SWAP_OU = {"over_in": "under_in", "under_in": "over_in", "over_out": "under_out", "under_out": "over_out"}


def _involute(g: OGraph, which: str) -> OGraph:
    if which == "reflect":
        return OGraph({c: -s for c, s in g.crossings.items()}, g.edges, g.legs, g.weights_kind)
    if which == "reverse":
        def m(ep):
            return Endpoint(ep.crossing, _SWAP_IO[ep.port])

        edges = [Edge(e.id, m(e.target), m(e.source), e.weight) for e in g.edges]
        return OGraph(g.crossings, edges, [m(l) for l in g.legs], g.weights_kind)
    if which == "sign_change":
        def m(ep):
            return Endpoint(ep.crossing, _SWAP_OU[ep.port])

        edges = [Edge(e.id, m(e.source), m(e.target), e.weight) for e in g.edges]
        return OGraph({c: -s for c, s in g.crossings.items()}, edges, [m(l) for l in g.legs], g.weights_kind)
    raise ValueError(f"unknown involution {which!r}")


# ---------------------------------------------------------------------------
# text format


def serialize(g: OGraph, canonical: bool = True) -> str:
    if canonical:
        g = canonicalize(g)
    lines = [f"weights {g.weights_kind}"]
    for c in sorted(g.crossings, key=id_key):
        lines.append(f"crossing {c} {'+' if g.crossings[c] > 0 else '-'}")
    for e in sorted(g.edges, key=lambda e: id_key(e.id)):
        s = f"edge {e.id} {e.source} -> {e.target}"
        if g.weights_kind != "none":
            s += f" weight {e.weight}"
        lines.append(s)
    for i, l in enumerate(g.legs):
        lines.append(f"leg {i} {l}")
    return "\n".join(lines) + "\n"


def _endpoint(tok: str, lineno: int) -> Endpoint:
    if "." not in tok:
        raise ParseError(lineno, tok, "malformed endpoint")
    c, p = tok.rsplit(".", 1)
    if not _IDENT.match(c):
        raise ParseError(lineno, c, "bad crossing id")
    if p not in PORTS:
        raise ParseError(lineno, p, "unknown port name")
    return Endpoint(c, p)


def parse(text: str) -> OGraph:
    """Parse the ``.og`` text format.  Blank lines and ``#`` comments are ignored."""
    kind = None
    crossings: dict[str, int] = {}
    edges: list[Edge] = []
    legs: dict[int, Endpoint] = {}
    eids: set[str] = set()
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        toks = line.split()
        head = toks[0]
        if head == "weights":
            if len(toks) != 2 or toks[1] not in WEIGHT_KINDS:
                raise ParseError(lineno, " ".join(toks[1:]), "bad weights header")
            if kind is not None:
                raise ParseError(lineno, line, "duplicate weights header")
            kind = toks[1]
        elif head == "crossing":
            if len(toks) != 3:
                raise ParseError(lineno, line, "expected 'crossing <id> <+|->'")
            cid, s = toks[1], toks[2]
            if not _IDENT.match(cid):
                raise ParseError(lineno, cid, "bad crossing id")
            if cid in crossings:
                raise ParseError(lineno, cid, "duplicate crossing id")
            if s not in ("+", "-"):
                raise ParseError(lineno, s, "bad sign")
            crossings[cid] = 1 if s == "+" else -1
        elif head == "edge":
            if len(toks) not in (5, 7) or toks[3] != "->":
                raise ParseError(lineno, line, "expected 'edge <id> <c>.<port> -> <c>.<port> [weight <int>]'")
            eid = toks[1]
            if not _IDENT.match(eid):
                raise ParseError(lineno, eid, "bad edge id")
            if eid in eids:
                raise ParseError(lineno, eid, "duplicate edge id")
            eids.add(eid)
            w = None
            if len(toks) == 7:
                if toks[5] != "weight":
                    raise ParseError(lineno, toks[5], "expected 'weight'")
                if (kind or "none") == "none":
                    raise ParseError(lineno, toks[6], "weight present with weights none")
                try:
                    w = int(toks[6])
                except ValueError:
                    raise ParseError(lineno, toks[6], "bad weight") from None
            elif kind not in (None, "none"):
                raise ParseError(lineno, eid, "missing weight")
            edges.append(Edge(eid, _endpoint(toks[2], lineno), _endpoint(toks[4], lineno), w))
        elif head == "leg":
            if len(toks) != 3:
                raise ParseError(lineno, line, "expected 'leg <n> <c>.<port>'")
            try:
                n = int(toks[1])
            except ValueError:
                raise ParseError(lineno, toks[1], "bad leg index") from None
            if n in legs:
                raise ParseError(lineno, toks[1], "duplicate leg index")
            legs[n] = _endpoint(toks[2], lineno)
        else:
            raise ParseError(lineno, head, "unknown record")
    if sorted(legs) != list(range(len(legs))):
        raise ParseError(0, str(sorted(legs)), "leg indices must be 0..n-1")
    g = OGraph(crossings, edges, [legs[i] for i in range(len(legs))], kind or "none")
    rep = validate(g)
    if not rep:
        raise OGraphError(str(rep))
    return g


def to_object(g: OGraph, canonical: bool = True) -> dict:
    """The structured-object mirror of ``serialize`` (JSON-ready)."""
    if canonical:
        g = canonicalize(g)
    out = {
        "weights": g.weights_kind,
        "crossings": [{"id": c, "sign": "+" if g.crossings[c] > 0 else "-"} for c in sorted(g.crossings, key=id_key)],
        "edges": [],
        "legs": [str(l) for l in g.legs],
    }
    for e in sorted(g.edges, key=lambda e: id_key(e.id)):
        d = {"id": e.id, "source": str(e.source), "target": str(e.target)}
        if g.weights_kind != "none":
            d["weight"] = e.weight
        out["edges"].append(d)
    return out


def from_object(obj: dict) -> OGraph:
    """Inverse of ``to_object``; goes through the text parser so errors match."""
    try:
        lines = [f"weights {obj.get('weights', 'none')}"]
        lines += [f"crossing {c['id']} {c['sign']}" for c in obj.get("crossings", [])]
        for e in obj.get("edges", []):
            s = f"edge {e['id']} {e['source']} -> {e['target']}"
            if "weight" in e:
                s += f" weight {e['weight']}"
            lines.append(s)
        lines += [f"leg {i} {l}" for i, l in enumerate(obj.get("legs", []))]
    except (KeyError, TypeError, AttributeError) as exc:
        raise ParseError(0, str(exc), "malformed structured object") from None
    return parse("\n".join(lines) + "\n")


def build(signs: TMapping[str, int], edges: Iterable[tuple], legs: Iterable[str] = (), kind: str = "none") -> OGraph:
    """Convenience constructor: edges as ``("c0.over_out", "c1.over_in"[, w])``."""
    es = []
    for i, t in enumerate(edges):
        s, d = (Endpoint(*x.split(".")) for x in t[:2])
        es.append(Edge(f"e{i}", s, d, t[2] if len(t) > 2 else None))
    return OGraph(signs, es, [Endpoint(*l.split(".")) for l in legs], kind)


__all__ = [
    "Endpoint", "Edge", "OGraph", "Mapping", "ValidationReport", "OGraphError", "ParseError",
    "validate", "check", "isomorphic", "canonicalize", "canonical_order", "relabel", "involution",
    "serialize", "parse", "to_object", "from_object", "build", "id_key", "PORTS", "IN_PORTS", "OUT_PORTS",
]
