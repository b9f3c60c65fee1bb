"""Circuit tracing: the 2-cells of the branched polyhedron encoded by an o-graph.

Every edge carries three parallel strands (slots 1, 2, 3).  At a crossing
the strands are joined pairwise by the corner table of ``tables``.  The
closed circuits obtained this way bound the 2-cells; on a tangle some
strands run from leg to leg and are reported as arcs instead.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .core import Endpoint, OGraph, id_key
from .tables import ENTER, LEAVE, along, arrives, check_tables

check_tables()


class TraceError(RuntimeError):
    pass


@dataclass(frozen=True, order=True)
class SlotRef:
    edge: str
    position: int


@dataclass(frozen=True)
class Traversal:
    """A slot traversed along (+1) or against (-1) the edge orientation."""

    edge: str
    position: int
    direction: int

    def key(self):
        return (id_key(self.edge), self.position, -self.direction)

    def __str__(self) -> str:
        return f"{self.edge}:{self.position}:{'+' if self.direction > 0 else '-'}"


@dataclass(frozen=True)
class CornerPassage:
    crossing: str
    entry: tuple[str, int]
    exit: tuple[str, int]
    dotted: bool
    tet_edge: tuple[int, int]


@dataclass(frozen=True)
class Cell:
    id: str
    boundary: tuple  # alternating Traversal / CornerPassage, starting with a Traversal

    @property
    def traversals(self) -> list[Traversal]:
        return [t for t in self.boundary if isinstance(t, Traversal)]

    @property
    def corners(self) -> list[CornerPassage]:
        return [t for t in self.boundary if isinstance(t, CornerPassage)]

    @property
    def n(self) -> int:
        return sum(1 for c in self.corners if c.dotted)


@dataclass(frozen=True)
class Arc:
    """A circuit strand of a tangle running between two legs."""

    id: str
    start: tuple[int, int]  # (leg index, slot position)
    end: tuple[int, int]
    boundary: tuple

    @property
    def traversals(self) -> list[Traversal]:
        return [t for t in self.boundary if isinstance(t, Traversal)]

    @property
    def n(self) -> int:
        return sum(1 for c in self.boundary if isinstance(c, CornerPassage) and c.dotted)


@dataclass
class CellStructure:
    cells: list[Cell]
    arcs: list[Arc] = field(default_factory=list)
    slot_owner: dict[SlotRef, str] = field(default_factory=dict)

    def cell(self, cid: str) -> Cell:
        for c in self.cells:
            if c.id == cid:
                return c
        raise KeyError(cid)

    @property
    def F(self) -> int:
        return len(self.cells)


def _leave(g: OGraph, cp: CornerPassage) -> tuple[Traversal | None, int | None]:
    """Step out of a corner: the traversal that follows, or the leg index reached."""
    port, pos = cp.exit
    ep = Endpoint(cp.crossing, port)
    e = g.edge_at(ep)
    if e is None:
        return None, g.leg_index(ep)
    # leaving the crossing: along the edge if we sit at its source
    direction = 1 if e.source == ep else -1
    if (direction == 1) != along(pos):
        raise TraceError(f"crossing {cp.crossing}: strand leaves through {port}/{pos} in the wrong direction")
    return Traversal(e.id, pos, direction), None


def _enter(g: OGraph, ep: Endpoint, pos: int) -> CornerPassage:
    sign = g.sign(ep.crossing)
    c = ENTER.get((sign, ep.port, pos))
    if c is None:
        raise TraceError(f"crossing {ep.crossing}: no corner entered at {ep.port}/{pos}")
    return CornerPassage(ep.crossing, (c.port_in, c.pos_in), (c.port_out, c.pos_out), c.dotted, c.tet_edge)


def _rotate(seq: list) -> tuple:
    idx = min((i for i, x in enumerate(seq) if isinstance(x, Traversal)), key=lambda i: seq[i].key())
    return tuple(seq[idx:] + seq[:idx])


def trace_cells(g: OGraph) -> CellStructure:
    """Partition all ``3E`` slots into closed circuits (cells) and leg-to-leg arcs."""
    eidx = {e.id: e for e in g.edges}
    owner: dict[SlotRef, str] = {}
    raw_arcs = []
    # arcs first: start at every leg slot whose strand moves into the crossing
    for i, leg in enumerate(g.legs):
        for pos in (1, 2, 3):
            if along(pos) == leg.port.endswith("_out"):
                continue
            seq: list = []
            cp = _enter(g, leg, pos)
            seen = set()
            while True:
                seq.append(cp)
                t, leg_hit = _leave(g, cp)
                if t is None:
                    raw_arcs.append(((i, pos), (leg_hit, cp.exit[1]), tuple(seq)))
                    break
                s = SlotRef(t.edge, t.position)
                if s in seen or s in owner:
                    raise TraceError(f"crossing {cp.crossing}: strand enters an owned slot")
                seen.add(s)
                owner[s] = "?"
                seq.append(t)
                e = eidx[t.edge]
                cp = _enter(g, e.target if t.direction == 1 else e.source, t.position)
    arcs = []
    for k, (start, end, seq) in enumerate(sorted(raw_arcs)):
        aid = f"a{k}"
        for t in seq:
            if isinstance(t, Traversal):
                owner[SlotRef(t.edge, t.position)] = aid
        arcs.append(Arc(aid, start, end, seq))

    raw_cells = []
    for e in sorted(g.edges, key=lambda e: id_key(e.id)):
        for pos in (1, 2, 3):
            if SlotRef(e.id, pos) in owner:
                continue
            t0 = Traversal(e.id, pos, 1 if along(pos) else -1)
            seq = []
            t = t0
            while True:
                s = SlotRef(t.edge, t.position)
                if s in owner:
                    raise TraceError(f"slot {t} reached twice while tracing")
                owner[s] = "?"
                seq.append(t)
                ed = eidx[t.edge]
                cp = _enter(g, ed.target if t.direction == 1 else ed.source, t.position)
                seq.append(cp)
                t, leg_hit = _leave(g, cp)
                if t is None:
                    raise TraceError(f"closed circuit reached leg {leg_hit}")
                if t == t0:
                    break
            raw_cells.append(_rotate(seq))
    raw_cells.sort(key=lambda b: b[0].key())
    cells = []
    for k, b in enumerate(raw_cells):
        cid = f"f{k}"
        for t in b:
            if isinstance(t, Traversal):
                owner[SlotRef(t.edge, t.position)] = cid
        cells.append(Cell(cid, b))
    return CellStructure(cells, arcs, owner)


def follow(g: OGraph, ref: str, pos: int, side: str, stop) -> tuple[str, int, str, list] | None:
    """Walk a circuit strand starting on slot ``pos`` of strand ``ref``,
    leaving through its ``side`` end ("source" or "target").

    Stops at the first slot in ``stop`` (a set of ``(ref, pos)``) and returns
    ``(ref, pos, end, path)`` where ``end`` is the end of that strand the walk
    arrived through and ``path`` lists the corners passed, interleaved with
    the ``(ref, pos)`` slots walked in between.  Returns None if the walk
    leaves through a leg.
    """
    from .rewrite import strand_at, strands

    st = strands(g)
    path = []
    for _ in range(3 * len(st) + 3):
        s = st[ref]
        ep = s.source if side == "source" else s.target
        if isinstance(ep, int):
            return None
        sign = g.sign(ep.crossing)
        if arrives(ep.port, pos):
            c = ENTER[(sign, ep.port, pos)]
            port2, pos2 = c.port_out, c.pos_out
        else:
            c = LEAVE[(sign, ep.port, pos)]
            port2, pos2 = c.port_in, c.pos_in
        ep2 = Endpoint(ep.crossing, port2)
        path.append(CornerPassage(ep.crossing, (c.port_in, c.pos_in), (c.port_out, c.pos_out), c.dotted, c.tet_edge))
        ref = strand_at(g, ep2)
        pos = pos2
        s2 = st[ref]
        end = "source" if s2.source == ep2 else "target"
        if (ref, pos) in stop:
            return ref, pos, end, path
        path.append((ref, pos))
        side = "target" if end == "source" else "source"
    raise TraceError("circuit walk did not terminate")


# ---------------------------------------------------------------------------
# cochains


def euler_cochain(g: OGraph, cs: CellStructure) -> dict[str, int]:
    """Value ``n/2 - 1`` on each cell, ``n`` the number of dotted corners."""
    out = {}
    for c in cs.cells:
        if c.n % 2:
            raise TraceError(f"cell {c.id} has an odd number of dots ({c.n})")
        out[c.id] = c.n // 2 - 1
    return out


def coboundary(g: OGraph, cs: CellStructure, x: dict[str, int] | None = None, mod: int | None = None) -> dict[str, int]:
    """``(dx)(cell) = sum of +-x(e)`` over the boundary traversals of the cell."""
    if x is None:
        x = g.weight_map()
    out = {}
    for c in cs.cells:
        v = sum(t.direction * x[t.edge] for t in c.traversals)
        out[c.id] = v % mod if mod else v
    return out


def boundary_of_edge(cs: CellStructure, eid: str) -> dict[str, int]:
    """Coboundary of the unit cochain on one edge."""
    out: dict[str, int] = {}
    for c in cs.cells:
        v = sum(t.direction for t in c.traversals if t.edge == eid)
        if v:
            out[c.id] = v
    return out


def cells_report(g: OGraph, cs: CellStructure | None = None) -> str:
    cs = cs or trace_cells(g)
    lines = []
    for c in cs.cells:
        lines.append(f"cell {c.id} n={c.n} boundary={','.join(str(t) for t in c.traversals)}")
    for a in cs.arcs:
        lines.append(
            f"arc {a.id} n={a.n} from=leg{a.start[0]}:{a.start[1]} to=leg{a.end[0]}:{a.end[1]} "
            f"boundary={','.join(str(t) for t in a.traversals)}"
        )
    return "\n".join(lines) + ("\n" if lines else "")


# ---------------------------------------------------------------------------
# closedness


@dataclass
class ClosednessReport:
    checks: dict[str, bool]

    @property
    def ok(self) -> bool:
        return all(self.checks.values())

    def __str__(self) -> str:
        return "\n".join(f"{k}: {'pass' if v else 'fail'}" for k, v in self.checks.items())


def closedness_necessary(g: OGraph, cs: CellStructure | None = None, full: bool = True) -> ClosednessReport:
    """Connectivity, ``E = 2V``, ``F = V + 1``; with ``full`` also the boundary-stratification check."""
    if g.legs:
        raise ValueError("closedness is only defined for graphs without legs")
    cs = cs or trace_cells(g)
    checks = {
        "connected": len(g.components()) == 1,
        "E=2V": g.E == 2 * g.V,
        "F=V+1": cs.F == g.V + 1,
    }
    if full:
        from .triangulation import boundary_is_standard_sphere

        checks["standard boundary"] = checks["F=V+1"] and boundary_is_standard_sphere(g)
    return ClosednessReport(checks)


def euler_char(g: OGraph, cs: CellStructure) -> int:
    return g.V - g.E + cs.F
