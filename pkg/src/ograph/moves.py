"""The move catalog: matching, conditions and rewriting.

Kinds
-----
``PrimaryMP``, ``A1`` .. ``D4``
    branched 2-3 moves, stored as pattern/replacement tangle pairs.
``ps-I`` .. ``ps-IV``
    pure sliding moves.  The left side is a pair of strands (edges or legs)
    ``e1, e2``; the right side is a two-crossing pocket.  The condition is
    checked on the circuits.
``local-N``
    pure sliding moves with enough surrounding crossings to decide the
    condition inside the pattern.
``ZeroTwo``
    a pure sliding move whose two strands meet at a corner of one crossing,
    so the condition is visible at that crossing.
``H``
    weight-only move around one crossing (integer / mod-2 layers).

Every kind has an inverse; ``Kind("A1", inverse=True)`` is written ``A1^-1``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources

from .circuits import follow
from .core import Endpoint, OGraph, id_key, isomorphic, validate
from .rewrite import Surgery, embeddings, leg_ref, replace, strand_at, strands
from .tables import CORNERS

MP_NAMES = tuple(f"{t}{i}" for t in "ABCD" for i in range(1, 5))
PS_NAMES = ("ps-I", "ps-II", "ps-III", "ps-IV")
CYCLIC = frozenset({"A2", "A4", "B2", "B4", "C3", "D3", "ps-III", "ps-IV"})
LAYERS = ("plain", "int", "mod2")


class MoveError(ValueError):
    pass


class Status(enum.Enum):
    HOLDS = "holds"
    FAILS = "fails"
    INDETERMINATE = "indeterminate"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class Kind:
    name: str
    inverse: bool = False
    layer: str = "plain"

    def __str__(self) -> str:
        s = self.name + ("^-1" if self.inverse else "")
        return s if self.layer == "plain" else f"{s}[{self.layer}]"

    @property
    def inv(self) -> "Kind":
        return Kind(self.name, not self.inverse, self.layer)

    def on(self, layer: str) -> "Kind":
        return Kind(self.name, self.inverse, layer)

    @classmethod
    def parse(cls, text: str) -> "Kind":
        layer = "plain"
        if text.endswith("]") and "[" in text:
            text, layer = text[:-1].split("[", 1)
        inv = text.endswith("^-1")
        name = text[:-3] if inv else text
        if layer not in LAYERS:
            raise MoveError(f"unknown layer {layer!r}")
        if name not in known_names():
            raise MoveError(f"unknown move kind {name!r}")
        return cls(name, inv, layer)


@dataclass(frozen=True)
class MoveRecord:
    name: str
    family: str  # "mp", "ps" or "local"
    lhs: OGraph | None
    rhs: OGraph
    cyclic: bool
    slots: tuple[int, int] | None = None
    end: str | None = None
    swap: bool = False
    weights: tuple | None = None  # ((direction, movetable.Rule), ...)
    strands: tuple[str, str] | None = None  # local ps: the two sliding strands of lhs
    base: str | None = None  # local ps: the plain ps kind it specializes
    note: str = ""


@dataclass(frozen=True)
class Site:
    kind: Kind
    crossings: tuple[tuple[str, str], ...] = ()  # pattern crossing -> host crossing
    strands: tuple[str, ...] = ()  # ps: (e1, e2); H: (crossing,)
    extra: tuple = ()

    @property
    def match(self) -> dict[str, str]:
        return dict(self.crossings)

    def __str__(self) -> str:
        if self.strands:
            return f"{self.kind}@{','.join(self.strands)}"
        return f"{self.kind}@{','.join(h for _, h in self.crossings)}"


# ---------------------------------------------------------------------------
# catalog


@lru_cache(maxsize=None)
def catalog() -> dict[str, MoveRecord]:
    return _table()[0]


@lru_cache(maxsize=None)
def _table():
    from .movetable import load_table

    text = resources.files("ograph").joinpath("data/moves.txt").read_text(encoding="utf-8")
    return load_table(text)


def relations():
    return _table()[1]


def known_names() -> tuple[str, ...]:
    return tuple(catalog()) + ("ZeroTwo", "H")


def record(name: str) -> MoveRecord:
    try:
        return catalog()[name]
    except KeyError:
        raise MoveError(f"unknown move kind {name!r}") from None


def is_cyclic(kind: Kind | str) -> bool:
    name = kind.name if isinstance(kind, Kind) else Kind.parse(kind).name
    if name == "ZeroTwo":
        return False
    if name == "H":
        return False
    return record(name).cyclic


def is_ps(name: str) -> bool:
    return name in PS_NAMES


# ---------------------------------------------------------------------------
# pure sliding


def ps_condition(g: OGraph, rec: MoveRecord, s1: str, s2: str) -> Status:
    """Trace the circuit on slot ``i`` of ``e1`` until it reaches slot ``j`` of ``e2``.

    Holds when it arrives through the end of ``e2`` that lies on the same
    side of the sliding region as the end of ``e1`` it left from.
    """
    i, j = rec.slots
    if s1 == s2:
        return Status.FAILS
    other = {"source": "target", "target": "source"}
    for side, want in (("source", rec.end), ("target", other[rec.end])):
        hit = follow(g, s1, i, side, {(s2, j), (s1, i)})
        if hit is None:
            continue
        ref, pos, end, _ = hit
        if (ref, pos) == (s1, i):
            return Status.FAILS
        return Status.HOLDS if end == want else Status.FAILS
    return Status.INDETERMINATE


def ps_inverse_condition(g: OGraph, rec: MoveRecord, match: dict[str, str]) -> Status:
    """Collapsing a pocket merges the two cells that run along ``e1`` on either
    side of it; they must be distinct."""
    i = rec.slots[0]
    a, b = (strand_at(g, Endpoint(match[ep.crossing], ep.port)) for ep in rec.rhs.legs[:2])
    if a == b:
        return Status.FAILS
    # either cell may be the one that closes up inside a tangle
    stop = {(a, i), (b, i)}
    for start, other in ((a, b), (b, a)):
        for side in ("source", "target"):
            hit = follow(g, start, i, side, stop)
            if hit is not None:
                return Status.FAILS if hit[0] == other else Status.HOLDS
    return Status.INDETERMINATE


def ps_sites(g: OGraph, rec: MoveRecord) -> list[Site]:
    refs = sorted(strands(g), key=_ref_key)
    return [Site(Kind(rec.name), strands=(a, b)) for a in refs for b in refs if a != b]


def _ref_key(r: str):
    return (1, int(r[1:])) if r.startswith("@") else (0, id_key(r))


def apply_ps(g: OGraph, rec: MoveRecord, s1: str, s2: str, weights: dict | None = None) -> tuple[OGraph, dict]:
    """Insert the pocket of ``rec`` along strands ``s1``, ``s2``.

    ``weights`` maps pocket edge ids and ``("leg", k)`` (piece ``k``) to
    absolute weights; a piece without an entry keeps its strand's weight.
    Piece 0 keeps the id of ``e1`` and piece 2 the id of ``e2``.
    """
    if s1 == s2:
        raise MoveError("pure sliding needs two distinct strands")
    sg = Surgery(g)
    a, b = sg.pop(s1), sg.pop(s2)
    names = sg.new_crossings(rec.rhs.crossings)
    w = weights or {}
    layer = g.weights_kind != "none"

    def m(ep):
        return Endpoint(names[ep.crossing], ep.port)

    for e in rec.rhs.edges:
        sg.connect(m(e.source), m(e.target), w.get(e.id, 0) if layer else None)
    legs = [m(ep) for ep in rec.rhs.legs]
    pieces = [(a.source, legs[0], a), (legs[1], a.target, a), (b.source, legs[2], b), (legs[3], b.target, b)]
    for k, (src, dst, s) in enumerate(pieces):
        wk = w.get(("leg", k), s.weight) if layer else None
        ref = s.ref if k % 2 == 0 else None
        sg.connect(src, dst, wk, ref)
    return sg.build(), names


def pocket_strands(g: OGraph, rec: MoveRecord, match: dict[str, str]) -> dict[str, str]:
    """Host strand of every pocket edge (by pocket id) and leg (``@n``)."""
    out = {}
    for e in rec.rhs.edges:
        out[e.id] = g.edge_at(Endpoint(match[e.source.crossing], e.source.port)).id
    for n, ep in enumerate(rec.rhs.legs):
        out[f"@{n}"] = strand_at(g, Endpoint(match[ep.crossing], ep.port))
    return out


def _pocket_joins(g: OGraph, rec: MoveRecord, match: dict[str, str]):
    """The two strand pairs a pocket collapse joins; MoveError if the
    collapse would leave a loop or strand without crossings."""
    hl = [Endpoint(match[ep.crossing], ep.port) for ep in rec.rhs.legs]
    image = set(match.values())
    st = strands(g)
    out = []
    for k0, k1 in ((0, 1), (2, 3)):
        s0, s1 = st[strand_at(g, hl[k0])], st[strand_at(g, hl[k1])]
        for far in (s0.source, s1.target):
            if isinstance(far, Endpoint) and far.crossing in image:
                raise MoveError("pocket strands close up on themselves")
        if isinstance(s0.source, int) and isinstance(s1.target, int):
            raise MoveError("collapse would leave a strand without crossings")
        out.append((s0, s1))
    return out


def collapsible(g: OGraph, rec: MoveRecord, match: dict[str, str]) -> bool:
    try:
        _pocket_joins(g, rec, match)
    except MoveError:
        return False
    return True


def apply_ps_inverse(g: OGraph, rec: MoveRecord, match: dict[str, str], weights: dict | None = None, refs: bool = False):
    """Collapse a pocket.  ``weights`` gives the merged strands' weights as
    ``{0: e1, 1: e2}``.  With ``refs`` also return the refs of ``e1, e2``."""
    image = set(match.values())
    sg = Surgery(g)
    w = weights or {}
    layer = g.weights_kind != "none"
    joins = []
    for n, (s0, s1) in enumerate(_pocket_joins(g, rec, match)):
        src, dst = s0.source, s1.target
        wk = w.get(n, 0) if layer else None
        ref = s0.ref if not s0.ref.startswith("@") else s1.ref
        joins.append((src, dst, wk, ref))
    for ref in [r for r, s in sg.strands.items() if _touches(s, image)]:
        sg.pop(ref)
    sg.remove_crossings(image)
    out = tuple(sg.connect(src, dst, wk, ref) for src, dst, wk, ref in joins)
    return (sg.build(), out) if refs else sg.build()


def _touches(s, image) -> bool:
    return any(isinstance(x, Endpoint) and x.crossing in image for x in (s.source, s.target))


@lru_cache(maxsize=None)
def _local_pocket(name: str) -> tuple[tuple[str, str], ...]:
    """Pocket crossing -> crossing of the local replacement."""
    rec = record(name)
    _, names = apply_ps(rec.lhs, record(rec.base), *rec.strands)
    return tuple(sorted(names.items()))


# ---------------------------------------------------------------------------
# ZeroTwo: pure sliding across one corner

# tetrahedron edge of the corner -> pure sliding kind; the strand on the
# first listed slot plays e1
CORNER_KIND = {(1, 3): "ps-I", (0, 2): "ps-II", (1, 2): "ps-III", (0, 3): "ps-IV"}


def zero_two_sites(g: OGraph) -> list[Site]:
    out = []
    for c in sorted(g.crossings, key=id_key):
        for corner in CORNERS[g.sign(c)]:
            name = CORNER_KIND.get(corner.tet_edge)
            if name is None:
                continue
            rec = record(name)
            a = strand_at(g, Endpoint(c, corner.port_in))
            b = strand_at(g, Endpoint(c, corner.port_out))
            if a == b:
                continue
            ends = {corner.pos_in: a, corner.pos_out: b}
            i, j = rec.slots
            pairs = [(a, b), (b, a)] if i == j else [(ends[i], ends[j])]
            for s1, s2 in pairs:
                if ps_condition(g, rec, s1, s2) is Status.HOLDS:
                    out.append(Site(Kind("ZeroTwo"), strands=(s1, s2), extra=(name, c)))
                    break
    return out


def zero_two_inverse_sites(g: OGraph) -> list[Site]:
    """Pockets whose collapse leaves the two strands meeting at a corner
    that offers the same pure sliding again."""
    out = []
    for name in PS_NAMES:
        rec = record(name)
        for site in find_sites(g, Kind(name, True)):
            if ps_inverse_condition(g, rec, site.match) is not Status.HOLDS:
                continue
            try:
                h = apply_ps_inverse(g.with_weights(None), rec, site.match)
            except MoveError:
                continue
            pieces = pocket_strands(g, rec, site.match)
            e1 = pieces["@0"] if not pieces["@0"].startswith("@") else pieces["@1"]
            e2 = pieces["@2"] if not pieces["@2"].startswith("@") else pieces["@3"]
            if any(z.strands == (e1, e2) and z.extra[0] == name for z in zero_two_sites(h)):
                out.append(Site(Kind("ZeroTwo", True), site.crossings, extra=(name,)))
    return out


# ---------------------------------------------------------------------------
# generic API


def find_sites(g: OGraph, kind: Kind) -> list[Site]:
    """All embeddings of the left side of ``kind`` (conditions not checked)."""
    name = kind.name
    if name == "H":
        return [Site(kind, strands=(c,)) for c in sorted(g.crossings, key=id_key)]
    if name == "ZeroTwo":
        sites = zero_two_inverse_sites(g) if kind.inverse else zero_two_sites(g)
        return [Site(kind, s.crossings, s.strands, s.extra) for s in sites]
    rec = record(name)
    if rec.family == "ps" and not kind.inverse:
        return [Site(kind, strands=s.strands) for s in ps_sites(g, rec)]
    pattern = rec.rhs if kind.inverse else rec.lhs
    seen = set()
    out = []
    for m in embeddings(g, pattern):
        key = frozenset(m.values())
        if key in seen:
            continue
        seen.add(key)
        if kind.inverse and rec.family == "ps" and not collapsible(g, rec, m):
            continue
        if kind.inverse and rec.family == "local":
            pm = {c: m[r] for c, r in _local_pocket(name)}
            if not collapsible(g, record(rec.base), pm):
                continue
        out.append(Site(kind, tuple(sorted(m.items()))))
    return out


def check_condition(g: OGraph, site: Site) -> Status:
    name = site.kind.name
    if name == "H":
        return Status.HOLDS
    if name == "ZeroTwo":
        rec = record(site.extra[0])
        if site.kind.inverse:
            return ps_inverse_condition(g, rec, site.match)
        return ps_condition(g, rec, *site.strands)
    rec = record(name)
    if rec.family == "ps":
        if site.kind.inverse:
            return ps_inverse_condition(g, rec, site.match)
        return ps_condition(g, rec, *site.strands)
    if rec.family == "local":
        # decided inside the pattern: the circuit never leaves it
        base = record(rec.base)
        if site.kind.inverse:
            m = {c: site.match[r] for c, r in _local_pocket(name)}
            return ps_inverse_condition(g, base, m)
        s1, s2 = (_image_strand(g, rec.lhs, site.match, r) for r in rec.strands)
        return ps_condition(g, base, s1, s2)
    return Status.HOLDS


def _image_strand(g: OGraph, pattern: OGraph, m: dict[str, str], ref: str) -> str:
    """Host strand corresponding to a pattern edge or leg."""
    if ref.startswith("@"):
        ep = pattern.legs[int(ref[1:])]
    else:
        ep = pattern.edge(ref).source
    return strand_at(g, Endpoint(m[ep.crossing], ep.port))


def apply(g: OGraph, site: Site, check: bool = True) -> OGraph:
    """Apply a located move.  Conditions are enforced unless ``check`` is False."""
    return apply_traced(g, site, check)[0]


def apply_traced(g: OGraph, site: Site, check: bool = True) -> tuple[OGraph, Site]:
    """Like ``apply`` but also return the site of the inverse move in the result."""
    from . import weights as W

    kind = site.kind
    layer = kind.layer
    if kind.name == "H":
        if layer == "plain":
            raise MoveError("H needs the integer or mod-2 layer")
        if g.weights_kind != layer:
            raise MoveError(f"{kind} does not match weights {g.weights_kind}")
        return W.apply_h(g, site.strands[0], -1 if kind.inverse else 1), Site(kind.inv, strands=site.strands)
    if layer == "plain":
        g = g.with_weights(None)
    elif g.weights_kind != layer:
        raise MoveError(f"{kind} does not match weights {g.weights_kind}")
    if check:
        st = check_condition(g, site)
        if st is not Status.HOLDS:
            raise MoveError(f"condition {_condition_label(site)} {st} at {site}")
    name = kind.name
    if name == "ZeroTwo":
        h, back = apply_traced(g, Site(Kind(site.extra[0], kind.inverse, layer), site.crossings, site.strands), False)
        return h, Site(kind.inv, back.crossings, back.strands, site.extra[:1])
    rec = record(name)
    if rec.family == "local":
        base = Kind(rec.base, kind.inverse, layer)
        pocket = _local_pocket(name)
        m = site.match
        if kind.inverse:
            h, _ = apply_traced(g, Site(base, tuple(sorted((c, m[r]) for c, r in pocket))), False)
            keep = {r for _, r in pocket}
            back = {c: hc for c, hc in m.items() if c not in keep}
        else:
            s1, s2 = (_image_strand(g, rec.lhs, m, r) for r in rec.strands)
            h, bsite = apply_traced(g, Site(base, strands=(s1, s2)), False)
            back = dict(m)
            back.update({r: bsite.match[c] for c, r in pocket})
        return h, Site(kind.inv, tuple(sorted(back.items())))
    h, back = _apply_record(g, rec, site, layer)
    if layer != "plain" and kind.inverse:
        # an integral inverse only applies where the weights have the form the
        # forward move produces; otherwise H-moves are needed first
        again, _ = _apply_record(h, rec, back, layer)
        if isomorphic(again, g) is None:
            raise MoveError(f"weights at {site} do not fit the integral {rec.name} pattern")
    return h, back


def _apply_record(g: OGraph, rec: MoveRecord, site: Site, layer: str) -> tuple[OGraph, Site]:
    from . import weights as W

    kind = site.kind
    try:
        if rec.family == "ps":
            if kind.inverse:
                wts = None
                if layer != "plain":
                    wts = W.ps_inverse_weights(g, rec, site.match, pocket_strands(g, rec, site.match))
                h, refs = apply_ps_inverse(g, rec, site.match, wts, refs=True)
                return _finish(h, layer), Site(kind.inv, strands=refs)
            wts = W.ps_weights(g, rec, *site.strands) if layer != "plain" else None
            h, names = apply_ps(g, rec, *site.strands, weights=wts)
            return _finish(h, layer), Site(kind.inv, tuple(sorted(names.items())))
        src, dst = (rec.rhs, rec.lhs) if kind.inverse else (rec.lhs, rec.rhs)
        rw, ld = (None, None)
        if layer != "plain":
            rw, ld = W.pattern_weights(g, rec, site, inverse=kind.inverse)
        h, names = replace(g, src, dst, site.match, rw, ld)
        return _finish(h, layer), Site(kind.inv, tuple(sorted(names.items())))
    except W.WeightError as exc:
        raise MoveError(f"{kind} at {site}: {exc}") from None


def _finish(g: OGraph, layer: str) -> OGraph:
    rep = validate(g)
    if not rep:
        raise MoveError(f"move produced an invalid graph: {rep}")
    return g


def _condition_label(site: Site) -> str:
    name = site.kind.name
    if name == "ZeroTwo":
        name = site.extra[0]
    rec = catalog().get(name)
    if rec is not None and rec.family == "local":
        name = rec.base
    return "(" + name.replace("ps-", "PS-") + ")" + ("^-1" if site.kind.inverse else "")


def sites_with_condition(g: OGraph, kind: Kind) -> list[Site]:
    return [s for s in find_sites(g, kind) if check_condition(g, s) is Status.HOLDS]


def walk_kinds(g: OGraph) -> list[Kind]:
    """Move kinds a random walk draws from, on the layer of ``g``."""
    layer = "plain" if g.weights_kind == "none" else g.weights_kind
    names = ["PrimaryMP", *MP_NAMES, *PS_NAMES, "ZeroTwo"] + (["H"] if layer != "plain" else [])
    return [Kind(n, inv, layer) for n in names for inv in (False, True)]


def random_walk(g: OGraph, rng, steps: int, max_crossings: int = 8, kinds=None):
    """Yield ``(before, site, after, back)`` for ``steps`` random applicable moves.

    The walk restarts from ``g`` whenever it grows past ``max_crossings``.
    Sites whose condition does not hold, and integral inverses whose weights
    are not of the forward image form, are skipped.
    """
    start = g
    kinds = list(kinds or walk_kinds(g))
    done = attempts = 0
    while done < steps:
        attempts += 1
        if attempts > 50 * steps + 100:
            raise MoveError(f"random walk stalled after {done} moves")
        if g.V > max_crossings:
            g = start
        kind = rng.choice(kinds)
        sites = sites_with_condition(g, kind)
        if not sites:
            continue
        site = rng.choice(sites)
        try:
            h, back = apply_traced(g, site)
        except MoveError:
            continue
        yield g, site, h, back
        done += 1
        g = h


def leg_map(rec: MoveRecord) -> tuple[int, ...]:
    return tuple(range(len(rec.rhs.legs)))


__all__ = [
    "Kind", "Site", "Status", "MoveRecord", "MoveError", "catalog", "record", "find_sites",
    "check_condition", "apply", "apply_traced", "is_cyclic", "sites_with_condition", "MP_NAMES", "PS_NAMES", "leg_ref",
    "random_walk", "walk_kinds",
]
