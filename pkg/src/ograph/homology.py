"""Integer first homology of the spine via Smith normal form."""

from __future__ import annotations

from dataclasses import dataclass

from .circuits import CellStructure, trace_cells
from .core import OGraph, id_key

Matrix = list[list[int]]

INT_LIMIT = 2**62


class HomologyError(ValueError):
    pass


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(a: Matrix, b: Matrix) -> Matrix:
    if not a:
        return []
    inner = len(b)
    cols = len(b[0]) if b else 0
    return [[sum(a[i][k] * b[k][j] for k in range(inner)) for j in range(cols)] for i in range(len(a))]


def _guard(x: int) -> int:
    if abs(x) > INT_LIMIT:
        raise OverflowError("integer overflow in Smith normal form")
    return x


def smith_normal_form(m: Matrix) -> tuple[Matrix, Matrix, Matrix]:
    """Return ``(S, U, V)`` with ``U m V = S`` diagonal, ``S[i][i] | S[i+1][i+1]``.

    Pivoting picks the entry of least absolute value in the remaining block.
    """
    rows = len(m)
    cols = len(m[0]) if rows else 0
    S = [list(r) for r in m]
    U = identity(rows)
    V = identity(cols)

    def swap_rows(i, j):
        S[i], S[j] = S[j], S[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for r in S:
            r[i], r[j] = r[j], r[i]
        for r in V:
            r[i], r[j] = r[j], r[i]

    def add_row(src, dst, k):  # row dst += k * row src
        S[dst] = [_guard(a + k * b) for a, b in zip(S[dst], S[src])]
        U[dst] = [_guard(a + k * b) for a, b in zip(U[dst], U[src])]

    def add_col(src, dst, k):
        for r in S:
            r[dst] = _guard(r[dst] + k * r[src])
        for r in V:
            r[dst] = _guard(r[dst] + k * r[src])

    t = 0
    while t < min(rows, cols):
        nz = [(abs(S[i][j]), i, j) for i in range(t, rows) for j in range(t, cols) if S[i][j]]
        if not nz:
            break
        _, pi, pj = min(nz)
        swap_rows(t, pi)
        swap_cols(t, pj)
        while True:
            done = True
            for i in range(t + 1, rows):
                if S[i][t]:
                    q = S[i][t] // S[t][t]
                    add_row(t, i, -q)
                    if S[i][t]:
                        swap_rows(t, i)
                        done = False
            for j in range(t + 1, cols):
                if S[t][j]:
                    q = S[t][j] // S[t][t]
                    add_col(t, j, -q)
                    if S[t][j]:
                        swap_cols(t, j)
                        done = False
            if not done:
                continue
            # divisibility: pivot must divide the rest of the block
            bad = next(
                ((i, j) for i in range(t + 1, rows) for j in range(t + 1, cols) if S[i][j] % S[t][t]),
                None,
            )
            if bad is None:
                break
            add_row(bad[0], t, 1)
        if S[t][t] < 0:
            S[t] = [-x for x in S[t]]
            U[t] = [-x for x in U[t]]
        t += 1
    return S, U, V


def diagonal(S: Matrix) -> list[int]:
    return [S[i][i] for i in range(min(len(S), len(S[0]) if S else 0))]


@dataclass(frozen=True)
class AbelianGroup:
    rank: int
    torsion: tuple[int, ...]

    def __str__(self) -> str:
        parts = []
        if self.rank:
            parts.append("Z" if self.rank == 1 else f"Z^{self.rank}")
        parts += [f"Z/{d}" for d in self.torsion]
        return " + ".join(parts) if parts else "0"

    @property
    def trivial(self) -> bool:
        return not self.rank and not self.torsion


def cokernel(m: Matrix, n_rows: int) -> AbelianGroup:
    """Cokernel of the map ``Z^cols -> Z^rows`` given by ``m``."""
    if not m or not m[0]:
        return AbelianGroup(n_rows, ())
    S, _, _ = smith_normal_form(m)
    d = [x for x in diagonal(S) if x]
    return AbelianGroup(n_rows - len(d), tuple(x for x in d if x > 1))


def rank(m: Matrix) -> int:
    if not m or not m[0]:
        return 0
    S, _, _ = smith_normal_form(m)
    return sum(1 for x in diagonal(S) if x)


def chain_complex(g: OGraph, cs: CellStructure) -> tuple[Matrix, Matrix, list[str], list[str], list[str]]:
    """Boundary matrices ``d1`` (V x E) and ``d2`` (E x F)."""
    verts = sorted(g.crossings, key=id_key)
    edges = sorted((e.id for e in g.edges), key=id_key)
    vi = {v: i for i, v in enumerate(verts)}
    ei = {e: i for i, e in enumerate(edges)}
    d1 = [[0] * len(edges) for _ in verts]
    for e in g.edges:
        d1[vi[e.target.crossing]][ei[e.id]] += 1
        d1[vi[e.source.crossing]][ei[e.id]] -= 1
    d2 = [[0] * len(cs.cells) for _ in edges]
    for j, c in enumerate(cs.cells):
        for t in c.traversals:
            d2[ei[t.edge]][j] += t.direction
    return d1, d2, verts, edges, [c.id for c in cs.cells]


def h1(g: OGraph, cs: CellStructure | None = None) -> AbelianGroup:
    """``ker d1 / im d2``.  The torsion of ``coker d2`` is the torsion of H1
    because ``ker d1`` is a direct summand of the edge group."""
    if g.legs:
        raise HomologyError("h1 needs a closed graph")
    if len(g.components()) != 1:
        raise HomologyError("h1 needs a connected graph")
    cs = cs or trace_cells(g)
    d1, d2, verts, edges, _ = chain_complex(g, cs)
    for row in matmul(d1, d2):
        if any(row):
            raise HomologyError("d1 d2 != 0; cell boundaries are not cycles")
    r1 = rank(d1)
    S, _, _ = smith_normal_form(d2)
    d = [x for x in diagonal(S) if x]
    return AbelianGroup(len(edges) - r1 - len(d), tuple(x for x in d if x > 1))


def det(m: Matrix) -> int:
    """Cofactor expansion; only for small matrices in tests."""
    n = len(m)
    if n == 0:
        return 1
    if n == 1:
        return m[0][0]
    return sum((-1) ** j * m[0][j] * det([r[:j] + r[j + 1:] for r in m[1:]]) for j in range(n) if m[0][j])
