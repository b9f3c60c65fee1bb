"""Mechanical verification of the MP-move relations and derivations.

A relation ``X = Y^-1 o ps`` says: on the left side of ``X`` apply the pure
sliding ``ps`` at two strands, then undo ``Y`` on the copy of its right side
that appears; the result is the right side of ``X``.  Relations are read from
the move table.  Starting from ``D2`` (the primary MP move) every MP move is
then derived recursively:

    derive(X)     = ps, then derive_inverse(Y)
    derive_inverse(Y) = derive(Z), then ps^-1      (for Y = Z^-1 o ps)

Steps are concrete: each carries a site in the evolving graph, so a
derivation replays deterministically from its left tangle.
"""

from __future__ import annotations

import itertools
import logging
from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache

from .core import OGraph, anchored_isomorphism, id_key, involution, isomorphic
from .movetable import Relation, _relegs
from .moves import Kind, MoveError, Site, Status, apply_traced, check_condition, is_cyclic, record, relations
from .rewrite import replace

log = logging.getLogger(__name__)

MP_KINDS = tuple(f"{t}{i}" for t in "ABCD" for i in range(1, 5))
NON_CYCLIC_PS = ("ps-I", "ps-II")
# renaming used by the PrimaryMP record (see movetable.primary_presentation)
PRIMARY_NAMES = {"L0": "a", "L1": "b", "R0": "u", "R1": "v", "R2": "w"}

# Symmetries of MP moves and pure sliding moves.  Values are forward images:
# if G2 comes from G1 by the key move, the involuted G2 comes from the
# involuted G1 by the value move.
SYMMETRY_TABLES = {
    "reflect+reverse": {
        "A1": "A3", "A2": "A4", "A3": "A1", "A4": "A2",
        "B1": "B3", "B2": "B4", "B3": "B1", "B4": "B2",
        "C1": "D1", "C2": "D2", "C3": "D3", "C4": "D4",
        "D1": "C1", "D2": "C2", "D3": "C3", "D4": "C4",
        "ps-I": "ps-I", "ps-II": "ps-II", "ps-III": "ps-III", "ps-IV": "ps-IV",
    },
    "sign_change": {
        "A1": "B1", "A2": "B2", "A3": "B3", "A4": "B4",
        "B1": "A1", "B2": "A2", "B3": "A3", "B4": "A4",
        "C1": "D4", "C2": "D2", "C3": "D3", "C4": "D1",
        "D1": "C4", "D2": "C2", "D3": "C3", "D4": "C1",
        "ps-I": "ps-II", "ps-II": "ps-I", "ps-III": "ps-III", "ps-IV": "ps-IV",
    },
}  # fmt: skip
# entries printed in gray: images already implied by another entry of the row
GRAY = {
    "reflect+reverse": {"A3", "A4", "B3", "B4", "D1", "D2", "D3", "D4"},
    "sign_change": {"B1", "B2", "B3", "B4", "D1", "D2", "D3", "D4", "ps-II"},
}


class DeriveError(RuntimeError):
    pass


@dataclass(frozen=True)
class Step:
    kind: Kind
    site: Site

    def __str__(self) -> str:
        return str(self.site)


@dataclass
class Derivation:
    target: Kind
    steps: list[Step]
    lhs: OGraph
    rhs: OGraph

    def kinds(self) -> list[str]:
        return [str(s.kind) for s in self.steps]

    def __str__(self) -> str:
        return f"{self.target} = " + " ; ".join(self.kinds())


@dataclass
class Report:
    id: str
    ok: bool
    step: int | None = None
    reason: str = ""
    statuses: list[Status] = field(default_factory=list)

    def __str__(self) -> str:
        if self.ok:
            return f"relation {self.id} OK"
        return f"relation {self.id} FAIL(step={self.step}, {self.reason})"


# ---------------------------------------------------------------------------
# replay


def replay(d: Derivation) -> Report:
    """Re-run the steps from the left tangle with every condition checked;
    the end result must be the right tangle (legs fixed)."""
    g = d.lhs
    statuses = []
    for n, step in enumerate(d.steps, 1):
        st = check_condition(g, step.site)
        statuses.append(st)
        if st is not Status.HOLDS:
            return Report(str(d.target), False, n, f"condition {st}", statuses)
        try:
            g, _ = apply_traced(g, step.site)
        except MoveError as exc:
            return Report(str(d.target), False, n, str(exc), statuses)
    if isomorphic(g, d.rhs) is None:
        return Report(str(d.target), False, len(d.steps), "final tangle differs", statuses)
    return Report(str(d.target), True, statuses=statuses)


# ---------------------------------------------------------------------------
# relations


@dataclass(frozen=True)
class Context:
    """Intermediate tangles of one relation ``X = Y^-1 o ps`` on ``X.lhs``."""

    rel: Relation
    g1: OGraph  # X.lhs after the pure sliding
    pocket: dict  # pocket crossing -> crossing of g1
    g2: OGraph  # g1 after Y^-1
    undo: dict  # Y.lhs crossing -> crossing of g2
    to_rhs: dict  # crossing of g2 -> crossing of X.rhs


@lru_cache(maxsize=None)
def context(rid: str) -> Context:
    from .moves import apply_ps

    rel = relation(rid)
    x, y = record(rel.target), record(rel.source)
    g1, pocket = apply_ps(x.lhs, record(rel.ps), *rel.strands)
    g2, undo = replace(g1, y.rhs, y.lhs, dict(rel.embed))
    to_rhs = anchored_isomorphism(g2, x.rhs)
    if to_rhs is None:
        raise DeriveError(f"relation {rid}: result is not the right side of {rel.target}")
    return Context(rel, g1, pocket, g2, undo, to_rhs)


def relation(rid: str) -> Relation:
    for r in relations():
        if r.id == rid:
            return r
    raise DeriveError(f"unknown relation {rid!r}")


def local_name(rel: Relation) -> str:
    return f"Local-{int(rel.id[1:])}"


def relation_derivation(rel: Relation, local: bool = False) -> Derivation:
    """The two steps of a relation on the left tangle of its target."""
    x, y = record(rel.target), record(rel.source)
    ident = {c: c for c in x.lhs.crossings}
    if local:
        first = Site(Kind(local_name(rel)), tuple(sorted(ident.items())))
    else:
        first = Site(Kind(rel.ps), strands=rel.strands)
    g1, back = apply_traced(x.lhs, first, check=False)
    ctx = context(rel.id)
    to_host = _g1_to_host(ctx, ident, back, local)
    second = Site(Kind(rel.source, True), tuple(sorted((c, to_host[q]) for c, q in rel.embed)))
    return Derivation(Kind(rel.target), [Step(first.kind, first), Step(second.kind, second)], x.lhs, x.rhs)


def _g1_to_host(ctx: Context, m: dict, back: Site, local: bool) -> dict:
    """Crossings of ``ctx.g1`` -> host crossings after the first step."""
    if local:
        return dict(back.match)
    out = {c: m[c] for c in record(ctx.rel.target).lhs.crossings}
    bm = back.match
    out.update({ctx.pocket[p]: bm[p] for p in ctx.pocket})
    return out


def verify_relation(rel: Relation | str, local: bool = True) -> Report:
    """Replay ``X = Y^-1 o ps``; with ``local`` the slide is the local move."""
    if isinstance(rel, str):
        rel = relation(rel)
    try:
        d = relation_derivation(rel, local)
    except (MoveError, DeriveError) as exc:
        return Report(rel.id, False, 1, str(exc))
    rep = replay(d)
    rep.id = rel.id
    return rep


def verify_primary() -> Report:
    """D2 and the primary MP move agree up to one renumbering of the legs."""
    d2, pm = record("D2"), record("PrimaryMP")
    perm = pair_permutation(d2.lhs, d2.rhs, pm.lhs, pm.rhs)
    if perm is None:
        return Report("D2=PrimaryMP", False, 0, "no common leg renumbering")
    return Report("D2=PrimaryMP", True)


def pair_permutation(l1: OGraph, r1: OGraph, l2: OGraph, r2: OGraph):
    """A leg permutation taking the pair ``(l1, r1)`` to ``(l2, r2)``."""
    n = len(l1.legs)
    if n != len(l2.legs):
        return None
    for perm in itertools.permutations(range(n)):
        if any(l1.legs[perm[k]].port != l2.legs[k].port for k in range(n)):
            continue
        if isomorphic(_relegs(l1, perm), l2) is not None and isomorphic(_relegs(r1, perm), r2) is not None:
            return perm
    return None


# ---------------------------------------------------------------------------
# derivation trees


def _delta(name: str) -> int:
    rec = record(name)
    return sum(rec.rhs.crossings.values()) - sum(rec.lhs.crossings.values())


def spanning_tree(rels, root: str = "D2", prefer=NON_CYCLIC_PS) -> dict[str, Relation]:
    """Breadth-first choice of one relation per move, reaching every move
    from ``root``.  Relations whose slide is in ``prefer`` are exhausted
    first, so moves reachable through them never depend on the others."""
    tree: dict[str, Relation] = {}
    done = {root}
    for allowed in (lambda r: r.ps in prefer, lambda r: True):
        queue = deque(sorted(done, key=MP_KINDS.index))
        while queue:
            y = queue.popleft()
            for r in rels:
                if r.source == y and r.target not in done and allowed(r):
                    tree[r.target] = r
                    done.add(r.target)
                    queue.append(r.target)
    return tree


def _reaches_all(rels, root: str = "D2") -> bool:
    return len(spanning_tree(rels, root)) == len(MP_KINDS) - 1


def relation_image(rel: Relation, which: str, rels=None) -> Relation | None:
    t = SYMMETRY_TABLES[which]
    key = (t[rel.target], t[rel.source], t[rel.ps])
    for r in rels or relations():
        if (r.target, r.source, r.ps) == key:
            return r
    return None


@lru_cache(maxsize=None)
def local18() -> tuple[tuple[Relation, ...], dict]:
    """The 18-move local catalog: nine relations raising the sign balance
    and their mirror images, the lexicographically first such choice from
    which every move is reachable from D2.  Returns (catalog, tree)."""
    rels = relations()
    left = [r for r in rels if _delta(r.target) == 1]
    for combo in itertools.combinations(left, 9):
        images = [relation_image(r, "reflect+reverse", rels) for r in combo]
        if any(i is None for i in images):
            continue
        chosen = sorted(set(combo) | set(images), key=lambda r: r.id)
        if len(chosen) == 18 and _reaches_all(chosen):
            return tuple(chosen), spanning_tree(chosen)
    raise DeriveError("no 18-move local catalog reaches every MP move")


# ---------------------------------------------------------------------------
# derivations


class Deriver:
    """Builds concrete derivations from a relation tree."""

    def __init__(self, tree: dict[str, Relation], local: bool = False):
        self.tree = tree
        self.local = local

    def derive(self, name: str, inverse: bool = False) -> Derivation:
        rec = record(name)
        src, dst = (rec.rhs, rec.lhs) if inverse else (rec.lhs, rec.rhs)
        steps: list[Step] = []
        ident = {c: c for c in src.crossings}
        out = (self._inverse if inverse else self._forward)(name, src, ident, steps)
        if isomorphic(out, dst) is None:
            raise DeriveError(f"derivation of {name} does not end at its right side")
        return Derivation(Kind(name, inverse), steps, src, dst)

    def _step(self, g: OGraph, site: Site, steps: list) -> tuple[OGraph, Site]:
        h, back = apply_traced(g, site, check=False)
        steps.append(Step(site.kind, site))
        log.debug("step %d: %s", len(steps), site)
        return h, back

    def _forward(self, name: str, g: OGraph, m: dict, steps: list) -> OGraph:
        """Derive ``name`` on ``g`` where its left side sits at ``m``."""
        if name == "D2":
            site = Site(Kind("PrimaryMP"), tuple(sorted((PRIMARY_NAMES[c], h) for c, h in m.items())))
            return self._step(g, site, steps)[0]
        rel = self.tree[name]
        if self.local:
            site = Site(Kind(local_name(rel)), tuple(sorted(m.items())))
        else:
            from .moves import _image_strand

            x = record(name)
            site = Site(Kind(rel.ps), strands=tuple(_image_strand(g, x.lhs, m, s) for s in rel.strands))
        g1, back = self._step(g, site, steps)
        to_host = _g1_to_host(context(rel.id), m, back, self.local)
        my = {c: to_host[q] for c, q in rel.embed}
        return self._inverse(rel.source, g1, my, steps)

    def _inverse(self, name: str, g: OGraph, m: dict, steps: list) -> OGraph:
        """Derive ``name^-1`` on ``g`` where its right side sits at ``m``."""
        if name == "D2":
            site = Site(Kind("PrimaryMP", True), tuple(sorted((PRIMARY_NAMES[c], h) for c, h in m.items())))
            return self._step(g, site, steps)[0]
        rel = self.tree[name]
        ctx = context(rel.id)
        z = record(rel.source)
        # name.rhs is ctx.g2; Z.lhs sits in it at ctx.undo
        mz = {c: m[ctx.to_rhs[q]] for c, q in ctx.undo.items()}
        g1 = self._forward(rel.source, g, mz, steps)
        zr = track(g, z.lhs, z.rhs, mz, g1)
        # crossings of ctx.g1 -> g1: Z.rhs part via zr, the rest untouched
        to_host = {q: zr[c] for c, q in rel.embed}
        for q in ctx.g1.crossings:
            if q not in to_host:
                to_host[q] = m[ctx.to_rhs[q]]
        if self.local:
            site = Site(Kind(local_name(rel), True), tuple(sorted(to_host.items())))
        else:
            site = Site(Kind(rel.ps, True), tuple(sorted((p, to_host[q]) for p, q in ctx.pocket.items())))
        return self._step(g1, site, steps)[0]


def track(before: OGraph, lhs: OGraph, rhs: OGraph, m: dict, after: OGraph) -> dict:
    """Where the right side of a move applied at ``m`` ended up in ``after``,
    assuming ``after`` equals the direct application with everything outside
    the site untouched."""
    expected, names = replace(before, lhs, rhs, m)
    image = set(m.values())
    seeds = {c: c for c in before.crossings if c not in image}
    cmap = anchored_isomorphism(expected, after, seeds, weights=False)
    if cmap is None:
        raise DeriveError("sub-derivation does not agree with the move it derives")
    return {r: cmap[names[r]] for r in rhs.crossings}


@lru_cache(maxsize=None)
def theorem1_tree() -> dict[str, Relation]:
    return spanning_tree(relations())


def derive_mp(name: str, inverse: bool = False, local: bool = False) -> Derivation:
    """A derivation of an MP move from PrimaryMP and pure slidings.

    With ``local`` the slides are moves of the 18-move local catalog and only
    its 15-arrow spanning tree is used."""
    if name not in MP_KINDS:
        raise DeriveError(f"{name} is not one of A1..D4")
    tree = local18()[1] if local else theorem1_tree()
    return Deriver(tree, local).derive(name, inverse)


def audit_cyclic(d: Derivation) -> dict:
    steps = [n for n, s in enumerate(d.steps, 1) if is_cyclic(s.kind)]
    return {"uses_cyclic": bool(steps), "cyclic_steps": steps}


# ---------------------------------------------------------------------------
# symmetry tables


def verify_symmetry_entry(which: str, name: str) -> tuple[bool, str]:
    image = SYMMETRY_TABLES[which][name]
    if name.startswith("ps-"):
        return _verify_ps_symmetry(which, name, image)
    a, b = record(name), record(image)
    perm = pair_permutation(involution(a.lhs, which), involution(a.rhs, which), b.lhs, b.rhs)
    return perm is not None, "" if perm is not None else f"{which}({name}) is not {image}"


def _verify_ps_symmetry(which: str, name: str, image: str) -> tuple[bool, str]:
    """On every local pattern of ``name``, the involuted slide must be exactly
    the ``image`` slide (condition included) and no other."""
    from .moves import PS_NAMES, apply_ps, catalog, ps_condition

    checked = 0
    for rec in catalog().values():
        if rec.family != "local" or rec.base != name:
            continue
        lhs, rhs = involution(rec.lhs, which), involution(rec.rhs, which)
        fits = set()
        for other in PS_NAMES:
            orec = record(other)
            for s1, s2 in (rec.strands, rec.strands[::-1]):
                if ps_condition(lhs, orec, s1, s2) is not Status.HOLDS:
                    continue
                if isomorphic(apply_ps(lhs, orec, s1, s2)[0], rhs) is not None:
                    fits.add(other)
        if fits != {image}:
            return False, f"{which}({rec.name}) fits {sorted(fits)}, expected {image}"
        checked += 1
    if not checked:
        return False, f"no local pattern for {name}"
    return True, ""


def verify_symmetry_tables() -> list[tuple[str, str, str, bool, str]]:
    """``(row, kind, image, ok, reason)`` for all 40 entries (MP and ps, both rows)."""
    out = []
    for which, table in SYMMETRY_TABLES.items():
        for name, image in table.items():
            ok, why = verify_symmetry_entry(which, name)
            out.append((which, name, image, ok, why))
    return out


def table_is_involutive() -> bool:
    return all(t[t[k]] == k for t in SYMMETRY_TABLES.values() for k in t)


__all__ = [
    "Derivation", "DeriveError", "Report", "Step", "audit_cyclic", "context", "derive_mp", "local18",
    "relation_derivation", "replay", "spanning_tree", "verify_primary", "verify_relation",
    "verify_symmetry_tables", "id_key",
]
