"""Dual ideal triangulations.

Each crossing is an ordered tetrahedron and each edge a face gluing, so an
o-graph can be turned back into an ideal triangulation and vice versa.
This module is deliberately independent of the circuit tables: it is used
as an oracle for cell counts, dot counts and closedness, and to generate
the branched 2-3 move patterns from explicit geometry.
"""

from __future__ import annotations

from itertools import combinations

from .core import Edge, Endpoint, OGraph, id_key
from .tables import DOTTED_TET_EDGES, FACE_PORT, PORT_FACE


class _DSU:
    def __init__(self):
        self.p = {}

    def find(self, x):
        self.p.setdefault(x, x)
        while self.p[x] != x:
            self.p[x] = self.p[self.p[x]]
            x = self.p[x]
        return x

    def union(self, a, b):
        a, b = self.find(a), self.find(b)
        if a != b:
            self.p[max(a, b)] = min(a, b)

    def classes(self, items):
        out: dict = {}
        for x in items:
            out.setdefault(self.find(x), []).append(x)
        return list(out.values())


def _parity(perm: list[int]) -> int:
    s = 1
    perm = list(perm)
    for i in range(len(perm)):
        while perm[i] != i:
            j = perm[i]
            perm[i], perm[j] = perm[j], perm[i]
            s = -s
    return s


def from_tetrahedra(tets, order, boundary=(), names=None) -> OGraph:
    """Dual o-graph of a set of tetrahedra.

    ``tets`` are positively oriented vertex tuples, ``order`` ranks the
    vertices (the branching), ``boundary`` lists the unglued faces in leg
    order.  Interior faces must be shared by exactly two tetrahedra.
    """
    crossings = {}
    faces: dict[frozenset, list] = {}
    for t, vs in enumerate(tets):
        name = names[t] if names else f"t{t}"
        w = sorted(vs, key=lambda v: order[v])
        sign = _parity([w.index(v) for v in vs])
        crossings[name] = sign
        for k in range(4):
            f = frozenset(w[:k] + w[k + 1:])
            faces.setdefault(f, []).append(Endpoint(name, FACE_PORT[sign][k]))
    edges, legs = [], []
    bset = {frozenset(b) for b in boundary}
    for f, eps in sorted(faces.items(), key=lambda kv: sorted(map(str, kv[0]))):
        if f in bset:
            if len(eps) != 1:
                raise ValueError(f"boundary face {sorted(f)} is not free")
            continue
        if len(eps) != 2:
            raise ValueError(f"face {sorted(f)} used {len(eps)} times")
        a, b = eps
        if a.port.endswith("_out") == b.port.endswith("_out"):
            raise ValueError(f"face {sorted(f)} glued with incompatible orientations")
        if not a.port.endswith("_out"):
            a, b = b, a
        edges.append(Edge(f"e{len(edges)}", a, b))
    for bf in boundary:
        (ep,) = faces[frozenset(bf)]
        legs.append(ep)
    return OGraph(crossings, edges, legs)


class Gluing:
    """Ideal triangulation reconstructed from an o-graph."""

    def __init__(self, g: OGraph):
        self.g = g
        self.vert = _DSU()
        self.edge = _DSU()
        self.end = _DSU()  # (crossing, i, j): end at vertex i of tetrahedron edge {i, j}
        for c in g.crossings:
            for i in range(4):
                self.vert.find((c, i))
            for i, j in combinations(range(4), 2):
                self.edge.find((c, i, j))
                self.end.find((c, i, j))
                self.end.find((c, j, i))
        for e in g.edges:
            fs = PORT_FACE[g.sign(e.source.crossing)][e.source.port]
            ft = PORT_FACE[g.sign(e.target.crossing)][e.target.port]
            vs = [v for v in range(4) if v != fs]
            vt = [v for v in range(4) if v != ft]
            a, b = e.source.crossing, e.target.crossing
            for x, y in zip(vs, vt):
                self.vert.union((a, x), (b, y))
            for (x1, x2), (y1, y2) in zip(combinations(vs, 2), combinations(vt, 2)):
                self.edge.union((a, x1, x2), (b, y1, y2))
                self.end.union((a, x1, x2), (b, y1, y2))
                self.end.union((a, x2, x1), (b, y2, y1))

    def vertex_classes(self):
        return self.vert.classes([(c, i) for c in sorted(self.g.crossings, key=id_key) for i in range(4)])

    def edge_classes(self):
        items = [(c, i, j) for c in sorted(self.g.crossings, key=id_key) for i, j in combinations(range(4), 2)]
        return self.edge.classes(items)

    def dot_counts(self) -> list[int]:
        """Dotted corners per edge class, sorted."""
        return sorted(
            sum(1 for (_, i, j) in cl if frozenset({i, j}) in DOTTED_TET_EDGES) for cl in self.edge_classes()
        )

    def link_is_standard(self) -> bool:
        """Tail ends and head ends each span a connected subgraph of the vertex link."""
        ends = [(c, i, j) for c in self.g.crossings for i in range(4) for j in range(4) if i != j]
        adj: dict = {}
        for c in self.g.crossings:
            for i in range(4):
                corner = [self.end.find((c, i, j)) for j in range(4) if j != i]
                for a, b in combinations(corner, 2):
                    adj.setdefault(a, set()).add(b)
                    adj.setdefault(b, set()).add(a)
        tails = {self.end.find((c, i, j)) for (c, i, j) in ends if i < j}
        heads = {self.end.find((c, i, j)) for (c, i, j) in ends if i > j}
        if tails & heads:
            return False
        return _connected(tails, adj) and _connected(heads, adj)


def _connected(nodes: set, adj: dict) -> bool:
    if not nodes:
        return False
    start = next(iter(nodes))
    seen = {start}
    todo = [start]
    while todo:
        x = todo.pop()
        for y in adj.get(x, ()):
            if y in nodes and y not in seen:
                seen.add(y)
                todo.append(y)
    return seen == nodes


def boundary_is_standard_sphere(g: OGraph) -> bool:
    """One ideal vertex whose link is a sphere split by a single tangency circle."""
    gl = Gluing(g)
    if len(gl.vertex_classes()) != 1:
        return False
    if len(gl.edge_classes()) != g.V + 1:
        return False
    return gl.link_is_standard()


# ---------------------------------------------------------------------------
# branched 2-3 moves from explicit geometry

_POS = {"a": (2, 0, 0), "b": (-1, 2, 0), "c": (-1, -2, 0), "n": (0, 0, 1), "s": (0, 0, -1)}
BIPYRAMID_FACES = ("abn", "bcn", "can", "abs", "bcs", "cas")


def _orient(vs) -> int:
    p = [_POS[v] for v in vs]
    m = [[p[k][d] - p[0][d] for d in range(3)] for k in (1, 2, 3)]
    det = (
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    )
    return (det > 0) - (det < 0)


def _positive(vs: str) -> tuple:
    vs = tuple(vs)
    return vs if _orient(vs) > 0 else (vs[1], vs[0]) + vs[2:]


def bipyramid_moves():
    """All branchings of the 2-3 move on the bipyramid ``abc | n, s``.

    ``a < b < c`` is fixed (the other cyclic sense is the same move after a
    half-turn swapping ``n`` and ``s``).  ``n`` and ``s`` each sit in one of
    four gaps; when they share a gap both relative orders are listed.
    Yields ``(code, lhs, rhs)`` with legs in ``BIPYRAMID_FACES`` order.
    """
    out = []
    for gn in range(4):
        for gs in range(4):
            base = {"a": 0, "b": 2, "c": 4, "n": 2 * gn - 1, "s": 2 * gs - 1}
            opts = [("", base)]
            if gn == gs:
                opts = [("<", dict(base, n=base["n"] - 0.5)), (">", dict(base, s=base["s"] - 0.5))]
            for tag, order in opts:
                lhs = from_tetrahedra([_positive("abcn"), _positive("abcs")], order, BIPYRAMID_FACES, ["L0", "L1"])
                rhs = from_tetrahedra(
                    [_positive("nsbc"), _positive("nsca"), _positive("nsab")], order, BIPYRAMID_FACES, ["R0", "R1", "R2"]
                )
                out.append((f"{gn}{gs}{tag}", lhs, rhs))
    return out


# ---------------------------------------------------------------------------
# the 0-2 pocket

# where the third vertex of a face sits relative to the shared edge u < w,
# by the slot that edge occupies in the face
_THIRD = {1: 3, 2: -1, 3: 1}


def pocket(i: int, j: int, swap: bool = False):
    """The two tetrahedra inserted by a 0-2 move along faces ``F1``, ``F2``.

    ``F1`` is the face of edge ``e1`` and ``F2`` that of ``e2``; the shared
    tetrahedron edge ``E = uw`` sits in slot ``i`` of ``F1`` and slot ``j``
    of ``F2``.  When ``i == j`` the two free vertices tie and ``swap``
    selects their order.  Returns ``(tangle, end)``: the tangle has legs
    ``[e1 source side, e1 target side, e2 source side, e2 target side]``,
    and ``end`` names the end of ``e2`` ("source" or "target") lying on the
    same side as the source end of ``e1``.
    """
    order = {"u": 0, "w": 2, "x1": _THIRD[i], "x2": _THIRD[j]}
    if i == j:
        order["x2"] += -0.5 if swap else 0.5
    w = sorted(order, key=order.get)
    k1, k2 = w.index("x2"), w.index("x1")
    sa = -((-1) ** k1)  # F1 is an in-face of the tetrahedron next to e1's source
    sb = -sa
    legs = [None] * 4
    legs[0] = Endpoint("TA", FACE_PORT[sa][k1])
    legs[1] = Endpoint("TB", FACE_PORT[sb][k1])
    a_out = sa * (-1) ** k2 == 1
    if a_out:
        legs[3] = Endpoint("TA", FACE_PORT[sa][k2])
        legs[2] = Endpoint("TB", FACE_PORT[sb][k2])
    else:
        legs[2] = Endpoint("TA", FACE_PORT[sa][k2])
        legs[3] = Endpoint("TB", FACE_PORT[sb][k2])
    edges = []
    for v in ("u", "w"):
        k = w.index(v)
        pa, pb = Endpoint("TA", FACE_PORT[sa][k]), Endpoint("TB", FACE_PORT[sb][k])
        src, dst = (pa, pb) if pa.port.endswith("_out") else (pb, pa)
        edges.append(Edge(f"p{len(edges)}", src, dst))
    return OGraph({"TA": sa, "TB": sb}, edges, legs), ("target" if a_out else "source")
