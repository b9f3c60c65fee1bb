"""Crossing-local constants shared by every module.

A crossing of a normal o-graph is the dual of an ordered (branched)
tetrahedron with vertices 0 < 1 < 2 < 3.  Each port is dual to one face;
face ``k`` is the face opposite vertex ``k``.  The sign of the crossing is
the sign of the tetrahedron's ordering relative to the ambient orientation.

The three strand slots running along an edge are dual to the three edges
of the face triangle ``u0 < u1 < u2``: slot 1 is ``[u0 u1]``, slot 2 is
``[u1 u2]`` and slot 3 is ``[u0 u2]`` (the 2-cell that starts the
branching).  Circuits traverse slots 1 and 2 along the edge orientation
and slot 3 against it.

The connection table ``CORNERS`` lists, per sign, the six corners of a
crossing (one per tetrahedron edge).  A corner is entered through one
slot-endpoint and left through another; corners at the tetrahedron edges
``[02]`` and ``[13]`` carry a solid dot.
"""

from __future__ import annotations

from itertools import combinations
from typing import NamedTuple

PORTS = ("over_in", "over_out", "under_in", "under_out")
IN_PORTS = ("over_in", "under_in")
OUT_PORTS = ("over_out", "under_out")

PORT_FACE = {
    +1: {"over_in": 1, "over_out": 0, "under_in": 3, "under_out": 2},
    -1: {"over_in": 0, "over_out": 1, "under_in": 2, "under_out": 3},
}
FACE_PORT = {s: {f: p for p, f in table.items()} for s, table in PORT_FACE.items()}

DOTTED_TET_EDGES = frozenset({frozenset({0, 2}), frozenset({1, 3})})


class Corner(NamedTuple):
    """One corner of a crossing: arrive via ``(port_in, pos_in)``, leave via ``(port_out, pos_out)``."""

    tet_edge: tuple[int, int]
    port_in: str
    pos_in: int
    port_out: str
    pos_out: int
    dotted: bool


# Transcribed connection/dot tables.  ``check_tables`` re-derives them.
CORNERS: dict[int, tuple[Corner, ...]] = {
    +1: (
        Corner((0, 1), "under_in", 1, "under_out", 1, False),
        Corner((0, 2), "over_in", 1, "under_in", 3, True),
        Corner((0, 3), "under_out", 3, "over_in", 3, False),
        Corner((1, 2), "under_in", 2, "over_out", 1, False),
        Corner((1, 3), "over_out", 3, "under_out", 2, True),
        Corner((2, 3), "over_in", 2, "over_out", 2, False),
    ),
    -1: (
        Corner((0, 1), "under_in", 1, "under_out", 1, False),
        Corner((0, 2), "under_out", 3, "over_out", 1, True),
        Corner((0, 3), "over_out", 3, "under_in", 3, False),
        Corner((1, 2), "over_in", 1, "under_out", 2, False),
        Corner((1, 3), "under_in", 2, "over_in", 3, True),
        Corner((2, 3), "over_in", 2, "over_out", 2, False),
    ),
}


def is_out(port: str) -> bool:
    return port.endswith("_out")


def face_vertices(face: int) -> tuple[int, int, int]:
    return tuple(v for v in range(4) if v != face)  # type: ignore[return-value]


def slot_of(face: int, tet_edge: frozenset[int] | set[int]) -> int:
    """Slot position (1, 2 or 3) occupied by a tetrahedron edge inside a face."""
    u0, u1, u2 = face_vertices(face)
    pair = frozenset(tet_edge)
    if pair == {u0, u1}:
        return 1
    if pair == {u1, u2}:
        return 2
    if pair == {u0, u2}:
        return 3
    raise ValueError(f"edge {sorted(pair)} not in face {face}")


def tet_edge_of(face: int, pos: int) -> frozenset[int]:
    u0, u1, u2 = face_vertices(face)
    return frozenset([(u0, u1), (u1, u2), (u0, u2)][pos - 1])


def along(pos: int) -> bool:
    """Slots 1 and 2 run with the edge orientation, slot 3 against it."""
    return pos != 3


def arrives(port: str, pos: int) -> bool:
    """True if a circuit on slot ``pos`` of the edge at ``port`` moves toward the crossing."""
    return along(pos) != is_out(port)


def derive_corners(sign: int) -> tuple[Corner, ...]:
    """Rebuild the corner table of one sign from the tetrahedron model."""
    out = []
    for i, j in combinations(range(4), 2):
        k, l = (f for f in range(4) if f not in (i, j))
        ends = []
        for face in (k, l):
            port = FACE_PORT[sign][face]
            ends.append((port, slot_of(face, {i, j})))
        a, b = ends
        if not arrives(*a):
            a, b = b, a
        if not arrives(*a) or arrives(*b):
            raise AssertionError(f"corner [{i}{j}] of sign {sign} is not a passage")
        out.append(Corner((i, j), a[0], a[1], b[0], b[1], frozenset({i, j}) in DOTTED_TET_EDGES))
    return tuple(out)


def check_tables() -> None:
    """Self-check: the literal tables agree with the tetrahedron model."""
    for sign in (+1, -1):
        outs = {p for p, f in PORT_FACE[sign].items() if sign * (-1) ** f == 1}
        if outs != set(OUT_PORTS):
            raise AssertionError(f"port/face table inconsistent for sign {sign}")
        if derive_corners(sign) != CORNERS[sign]:
            raise AssertionError(f"corner table for sign {sign} disagrees with the face model")
        seen_in = {(c.port_in, c.pos_in) for c in CORNERS[sign]}
        seen_out = {(c.port_out, c.pos_out) for c in CORNERS[sign]}
        if len(seen_in) != 6 or len(seen_out) != 6 or seen_in & seen_out:
            raise AssertionError(f"corner table for sign {sign} is not a perfect matching")


# (sign, port, pos) -> corner that is entered there; (sign, port, pos) -> corner left there
ENTER = {
    (s, c.port_in, c.pos_in): c for s, corners in CORNERS.items() for c in corners
}
LEAVE = {
    (s, c.port_out, c.pos_out): c for s, corners in CORNERS.items() for c in corners
}
