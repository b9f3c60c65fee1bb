"""Low-level graph surgery shared by all moves.

Edges and legs are handled uniformly as *strands*: a strand has a source
side and a target side, each either a crossing endpoint or a leg index.
A strand ref is the edge id, or ``@n`` for leg ``n``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import Edge, Endpoint, OGraph, id_key


@dataclass(frozen=True)
class Strand:
    ref: str
    source: Endpoint | int  # int = leg index
    target: Endpoint | int
    weight: int | None = None


def leg_ref(i: int) -> str:
    return f"@{i}"


def strands(g: OGraph) -> dict[str, Strand]:
    out = {e.id: Strand(e.id, e.source, e.target, e.weight) for e in g.edges}
    for i, ep in enumerate(g.legs):
        if ep.port.endswith("_out"):
            out[leg_ref(i)] = Strand(leg_ref(i), ep, i)
        else:
            out[leg_ref(i)] = Strand(leg_ref(i), i, ep)
    return out


def strand_at(g: OGraph, ep: Endpoint) -> str:
    e = g.edge_at(ep)
    if e is not None:
        return e.id
    return leg_ref(g.leg_index(ep))


def fresh(prefix: str, used, n: int = 1) -> list[str]:
    out = []
    k = 0
    used = set(used)
    while len(out) < n:
        name = f"{prefix}{k}"
        if name not in used:
            out.append(name)
            used.add(name)
        k += 1
    return out


class Surgery:
    """Mutable working copy of a graph used while rewriting."""

    def __init__(self, g: OGraph):
        self.kind = g.weights_kind
        self.signs = dict(g.crossings)
        self.nlegs = len(g.legs)
        self.strands: dict[str, Strand] = strands(g)
        self.used_edge_ids = {e.id for e in g.edges}

    def new_crossings(self, signs: dict[str, int], prefix: str = "v") -> dict[str, str]:
        names = fresh(prefix, self.signs, len(signs))
        m = {}
        for (old, s), new in zip(sorted(signs.items(), key=lambda kv: id_key(kv[0])), names):
            self.signs[new] = s
            m[old] = new
        return m

    def new_edge_id(self) -> str:
        (eid,) = fresh("e", self.used_edge_ids)
        self.used_edge_ids.add(eid)
        return eid

    def remove_crossings(self, cids) -> None:
        for c in cids:
            del self.signs[c]

    def connect(self, src, dst, weight=None, ref=None) -> str:
        """Add a strand.  ``src``/``dst`` are endpoints or leg indices."""
        if isinstance(src, int) and isinstance(dst, int):
            raise ValueError("a strand between two legs has no crossing")
        if isinstance(src, int) or isinstance(dst, int):
            leg = src if isinstance(src, int) else dst
            ref = leg_ref(leg)
        elif ref is None or ref.startswith("@"):
            ref = self.new_edge_id()
        else:
            self.used_edge_ids.add(ref)
        self.strands[ref] = Strand(ref, src, dst, weight)
        return ref

    def pop(self, ref: str) -> Strand:
        return self.strands.pop(ref)

    def build(self) -> OGraph:
        edges, legs = [], [None] * self.nlegs
        for s in self.strands.values():
            if isinstance(s.source, int):
                legs[s.source] = s.target
            elif isinstance(s.target, int):
                legs[s.target] = s.source
            else:
                w = s.weight if self.kind != "none" else None
                if self.kind == "mod2" and w is not None:
                    w %= 2
                edges.append(Edge(s.ref, s.source, s.target, w))
        edges.sort(key=lambda e: id_key(e.id))
        return OGraph(self.signs, edges, legs, self.kind)


# ---------------------------------------------------------------------------
# pattern matching


def embeddings(host: OGraph, pattern: OGraph) -> list[dict[str, str]]:
    """All maps of pattern crossings into ``host`` that respect signs and
    internal edges.  Pattern legs may land on any host port."""
    pcs = sorted(pattern.crossings, key=id_key)
    if not pcs:
        return []
    anchor = pcs[0]
    out = []
    for h in sorted(host.crossings, key=id_key):
        m = _grow(host, pattern, anchor, h)
        if m is not None and len(m) == len(pcs):
            out.append(m)
    return out


def _grow(host: OGraph, pattern: OGraph, p0: str, h0: str):
    if host.sign(h0) != pattern.sign(p0):
        return None
    m = {p0: h0}
    todo = [p0]
    while todo:
        p = todo.pop()
        for e in pattern.edges:
            for mine, other in ((e.source, e.target), (e.target, e.source)):
                if mine.crossing != p:
                    continue
                he = host.edge_at(Endpoint(m[p], mine.port))
                if he is None:
                    return None
                hother = he.target if he.source == Endpoint(m[p], mine.port) else he.source
                if hother.port != other.port:
                    return None
                if other.crossing in m:
                    if m[other.crossing] != hother.crossing:
                        return None
                else:
                    if hother.crossing in m.values() or host.sign(hother.crossing) != pattern.sign(other.crossing):
                        return None
                    m[other.crossing] = hother.crossing
                    todo.append(other.crossing)
    return m


def replace(
    g: OGraph,
    lhs: OGraph,
    rhs: OGraph,
    match: dict[str, str],
    rhs_weights: dict[str, int] | None = None,
    leg_delta: dict[int, int] | None = None,
    prefix: str = "v",
) -> tuple[OGraph, dict[str, str]]:
    """Replace the image of ``lhs`` by ``rhs``; leg ``k`` of ``lhs`` is glued
    like leg ``k`` of ``rhs``.  Returns the new graph and the name map of
    the inserted crossings."""
    leg_delta = leg_delta or {}
    image = set(match.values())
    hlegs = [Endpoint(match[ep.crossing], ep.port) for ep in lhs.legs]
    pos = {ep: k for k, ep in enumerate(hlegs)}
    sg = Surgery(g)
    outer = []
    for k, hep in enumerate(hlegs):
        ref = strand_at(g, hep)
        s = sg.strands[ref]
        far = s.target if s.source == hep else s.source
        if isinstance(far, Endpoint) and far.crossing in image:
            outer.append(("pleg", pos[far], ref, s.weight))
        elif isinstance(far, int):
            outer.append(("hleg", far, ref, s.weight))
        else:
            outer.append(("ext", far, ref, s.weight))
    for ref in [r for r, s in sg.strands.items() if _touches(s, image)]:
        sg.pop(ref)
    sg.remove_crossings(image)
    names = sg.new_crossings(rhs.crossings, prefix)

    def m(ep: Endpoint) -> Endpoint:
        return Endpoint(names[ep.crossing], ep.port)

    for e in rhs.edges:
        w = (rhs_weights or {}).get(e.id, 0) if g.weights_kind != "none" else None
        sg.connect(m(e.source), m(e.target), w)
    done = set()
    for k, (kind, far, ref, w) in enumerate(outer):
        if k in done:
            continue
        r = m(rhs.legs[k])
        is_out = r.port.endswith("_out")
        if w is not None:
            w = w + leg_delta.get(k, 0)
        if kind == "pleg":
            j = far
            done.add(j)
            rj = m(rhs.legs[j])
            if w is not None:
                w += leg_delta.get(j, 0)
            if is_out:
                sg.connect(r, rj, w, ref)
            else:
                sg.connect(rj, r, w, ref)
        elif kind == "hleg":
            sg.connect(r, far) if is_out else sg.connect(far, r)
        else:
            sg.connect(r, far, w, ref) if is_out else sg.connect(far, r, w, ref)
        done.add(k)
    return sg.build(), names


def _touches(s: Strand, image: set) -> bool:
    return any(isinstance(x, Endpoint) and x.crossing in image for x in (s.source, s.target))


def leg_directions(g: OGraph) -> tuple[bool, ...]:
    return tuple(ep.port.endswith("_out") for ep in g.legs)
