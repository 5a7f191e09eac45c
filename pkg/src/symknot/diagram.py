"""Planar diagrams of knots and links as PD codes, plus diagram surgery.

A crossing is a 4-tuple ``X[a,b,c,d]``: the first entry is the incoming
under-strand edge and the remaining entries list the other edge-ends
counterclockwise around the crossing.  Every edge label appears exactly
twice in the diagram.  Crossing-free circle components (which arise from
smoothings) are tracked by a separate ``loops`` count and serialize as the
term ``O``.

Orientation is derived data: it is propagated from the under-strand slots
and never stored by the caller.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Sequence

__all__ = [
    "PdError",
    "PdSyntaxError",
    "ArcCountError",
    "OrientationError",
    "DiagramStructureError",
    "BudgetError",
    "PlanarDiagram",
    "TangleSite",
    "TwistParameter",
    "INFINITY",
    "parse_pd",
    "mirror",
    "reflect",
    "connected_sum",
    "resolve_crossing",
    "twist_insert",
    "fusion_resolution",
    "symmetric_union",
    "SymmetricUnion",
]


class PdError(ValueError):
    """Base class for diagram errors; ``code`` is a stable machine-readable tag."""

    code = "PD_ERROR"


class PdSyntaxError(PdError):
    code = "SYNTAX"


class ArcCountError(PdError):
    code = "ARC_COUNT"


class OrientationError(PdError):
    code = "ORIENTATION"


class DiagramStructureError(PdError):
    code = "STRUCTURE"


class BudgetError(RuntimeError):
    """A computation was refused because it would exceed its crossing budget."""

    code = "BUDGET"

    def __init__(self, message: str, *, needed: int | None = None, budget: int | None = None):
        super().__init__(message)
        self.needed = needed
        self.budget = budget


_TOKEN = re.compile(r"X\[(\d+),(\d+),(\d+),(\d+)\]$|O$")

IN = 1
OUT = -1


class PlanarDiagram:
    """An immutable PD-code diagram with ``loops`` extra crossing-free circles."""

    def __init__(
        self,
        crossings: Iterable[Sequence[int]] = (),
        loops: int = 0,
        name: str | None = None,
    ):
        xs = []
        for x in crossings:
            t = tuple(int(v) for v in x)
            if len(t) != 4:
                raise PdSyntaxError("each crossing needs exactly 4 edge labels")
            if any(v < 1 for v in t):
                raise PdSyntaxError("edge labels are 1-based positive integers")
            xs.append(t)
        if loops < 0:
            raise DiagramStructureError("negative loop count")
        self.crossings: tuple[tuple[int, int, int, int], ...] = tuple(xs)
        self.loops = int(loops)
        self.name = name
        self._validate_arcs()
        self._cache: dict[str, object] = {}

    # -- basic structure ---------------------------------------------------

    def _validate_arcs(self) -> None:
        seen: dict[int, int] = {}
        for x in self.crossings:
            for a in x:
                seen[a] = seen.get(a, 0) + 1
        bad = {a: k for a, k in seen.items() if k != 2}
        if bad:
            raise ArcCountError(f"edge labels must appear exactly twice, got {bad}")

    @property
    def n_crossings(self) -> int:
        return len(self.crossings)

    @property
    def arcs(self) -> tuple[int, ...]:
        return tuple(sorted({a for x in self.crossings for a in x}))

    @property
    def n_arcs(self) -> int:
        return len(self.arcs)

    def appearances(self) -> dict[int, list[tuple[int, int]]]:
        """arc -> list of (crossing index, slot) where it appears."""
        apps: dict[int, list[tuple[int, int]]] = {}
        for ci, x in enumerate(self.crossings):
            for slot, a in enumerate(x):
                apps.setdefault(a, []).append((ci, slot))
        return apps

    # -- orientation -------------------------------------------------------

    def orientation(self) -> dict[tuple[int, int], int]:
        """Map (crossing, slot) -> IN or OUT, derived by propagation.

        Under-strand slots are forced (slot 0 flows in, slot 2 out); the two
        appearances of an edge take opposite values, as do the two over-strand
        slots of one crossing.  Components never passing under anything get a
        deterministic fallback direction.
        """
        if "orient" in self._cache:
            return self._cache["orient"]  # type: ignore[return-value]
        apps = self.appearances()
        status: dict[tuple[int, int], int] = {}
        for ci in range(len(self.crossings)):
            status[(ci, 0)] = IN
            status[(ci, 2)] = OUT

        def consequences(pos: tuple[int, int]) -> list[tuple[tuple[int, int], int]]:
            ci, slot = pos
            val = status[pos]
            arc = self.crossings[ci][slot]
            a, b = apps[arc]
            other = b if pos == a else a
            out = [(other, -val)]
            if slot in (1, 3):
                out.append(((ci, 4 - slot), -val))
            return out

        queue = [(ci, s) for ci in range(len(self.crossings)) for s in (0, 2)]
        while True:
            while queue:
                pos = queue.pop()
                for other, want in consequences(pos):
                    have = status.get(other)
                    if have is None:
                        status[other] = want
                        queue.append(other)
                    elif have != want:
                        raise OrientationError(
                            f"orientation cannot close at crossing {other[0]} slot {other[1]}"
                        )
            unassigned = [
                (ci, s)
                for ci in range(len(self.crossings))
                for s in (1, 3)
                if (ci, s) not in status
            ]
            if not unassigned:
                break
            pos = min(unassigned)
            status[pos] = IN
            queue.append(pos)
        self._cache["orient"] = status
        return status

    def over_in_slot(self, ci: int) -> int:
        """The over-strand's incoming slot (1 or 3) at crossing ``ci``."""
        return 1 if self.orientation()[(ci, 1)] == IN else 3

    def signs(self) -> tuple[int, ...]:
        """Crossing signs: positive when the over-strand enters at slot 3."""
        if "signs" not in self._cache:
            self._cache["signs"] = tuple(
                1 if self.over_in_slot(ci) == 3 else -1 for ci in range(len(self.crossings))
            )
        return self._cache["signs"]  # type: ignore[return-value]

    @property
    def n_plus(self) -> int:
        return sum(1 for s in self.signs() if s > 0)

    @property
    def n_minus(self) -> int:
        return sum(1 for s in self.signs() if s < 0)

    def writhe(self) -> int:
        return sum(self.signs())

    def arc_head(self, arc: int) -> tuple[int, int]:
        """The (crossing, slot) appearance into which ``arc`` flows."""
        status = self.orientation()
        for pos in self.appearances()[arc]:
            if status[pos] == IN:
                return pos
        raise OrientationError(f"edge {arc} has no head")

    def arc_tail(self, arc: int) -> tuple[int, int]:
        status = self.orientation()
        for pos in self.appearances()[arc]:
            if status[pos] == OUT:
                return pos
        raise OrientationError(f"edge {arc} has no tail")

    # -- components and faces ----------------------------------------------

    def n_components(self) -> int:
        """Number of link components, counting crossing-free loops."""
        parent: dict[int, int] = {a: a for a in self.arcs}

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for (a, b, c, d) in self.crossings:
            parent[find(a)] = find(c)
            parent[find(b)] = find(d)
        return len({find(a) for a in self.arcs}) + self.loops

    def is_connected(self) -> bool:
        """Connectivity of the underlying 4-valent projection."""
        if not self.crossings:
            return self.loops == 1
        if self.loops:
            return False
        parent = list(range(len(self.crossings)))

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for positions in self.appearances().values():
            (c1, _), (c2, _) = positions
            parent[find(c1)] = find(c2)
        return len({find(i) for i in range(len(self.crossings))}) == 1

    def faces(self) -> list[tuple[tuple[int, int], ...]]:
        """Complementary regions as cycles of edge-ends (crossing, slot).

        Walking a face: from an edge-end, cross to the edge's other end, then
        rotate counterclockwise to the next slot.  For a connected diagram the
        face count must satisfy crossings - edges + faces = 2.
        """
        if "faces" in self._cache:
            return self._cache["faces"]  # type: ignore[return-value]
        if not self.crossings:
            if self.loops == 1:
                faces: list[tuple[tuple[int, int], ...]] = [(), ()]
                self._cache["faces"] = faces
                return faces
            raise DiagramStructureError("faces need a connected diagram")
        if not self.is_connected():
            raise DiagramStructureError("faces need a connected diagram")
        apps = self.appearances()

        def alpha(pos: tuple[int, int]) -> tuple[int, int]:
            ci, slot = pos
            a, b = apps[self.crossings[ci][slot]]
            return b if pos == a else a

        seen: set[tuple[int, int]] = set()
        faces = []
        for ci in range(len(self.crossings)):
            for slot in range(4):
                start = (ci, slot)
                if start in seen:
                    continue
                cycle = []
                pos = start
                while pos not in seen:
                    seen.add(pos)
                    cycle.append(pos)
                    nc, ns = alpha(pos)
                    pos = (nc, (ns + 1) % 4)
                faces.append(tuple(cycle))
        euler = len(self.crossings) - self.n_arcs + len(faces)
        if euler != 2:
            raise DiagramStructureError(
                f"rotation system is not planar: crossings - edges + faces = {euler}"
            )
        self._cache["faces"] = faces
        return faces

    def face_of_corner(self) -> dict[tuple[int, int], int]:
        """Corner between slots k and k+1 of a crossing -> face index."""
        where = {}
        for fi, cyc in enumerate(self.faces()):
            for ci, slot in cyc:
                where[(ci, (slot - 1) % 4)] = fi
        return where

    # -- serialization -----------------------------------------------------

    def serialize(self) -> str:
        terms = [f"X[{a},{b},{c},{d}]" for (a, b, c, d) in self.crossings]
        terms.extend(["O"] * self.loops)
        return " ".join(terms)

    def normalized(self) -> "PlanarDiagram":
        """Relabel edges 1..2c in first-appearance order (crossing order kept)."""
        relabel: dict[int, int] = {}
        for x in self.crossings:
            for a in x:
                if a not in relabel:
                    relabel[a] = len(relabel) + 1
        return PlanarDiagram(
            [tuple(relabel[a] for a in x) for x in self.crossings], self.loops, self.name
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PlanarDiagram):
            return NotImplemented
        return self.crossings == other.crossings and self.loops == other.loops

    def __hash__(self) -> int:
        return hash((self.crossings, self.loops))

    def __repr__(self) -> str:
        tag = f" {self.name}" if self.name else ""
        return f"<PlanarDiagram{tag}: {self.serialize() or 'empty'}>"


def parse_pd(text: str, name: str | None = None) -> PlanarDiagram:
    """Parse PD-code text: whitespace-separated X[a,b,c,d] and O terms.

    ``#`` starts a comment running to end of line.  Raises PdSyntaxError,
    ArcCountError or OrientationError, each carrying a stable ``code``.
    """
    crossings = []
    loops = 0
    for line in text.splitlines() or [""]:
        line = line.split("#", 1)[0]
        for token in line.split():
            m = _TOKEN.match(token)
            if not m:
                raise PdSyntaxError(f"bad term {token!r}")
            if token == "O":
                loops += 1
            else:
                crossings.append(tuple(int(g) for g in m.groups() if g is not None))
    d = PlanarDiagram(crossings, loops, name)
    d.orientation()
    return d


# -- elementary operations --------------------------------------------------


def mirror(d: PlanarDiagram) -> PlanarDiagram:
    """Switch every crossing (same projection, over and under exchanged)."""
    out = []
    for ci, (a, b, c, dd) in enumerate(d.crossings):
        if d.over_in_slot(ci) == 3:
            out.append((dd, a, b, c))
        else:
            out.append((b, c, dd, a))
    return PlanarDiagram(out, d.loops, f"mirror({d.name})" if d.name else None)


def reflect(d: PlanarDiagram, offset: int = 0) -> PlanarDiagram:
    """Planar reflection: cyclic order of each crossing reverses, over/under kept.

    Optionally shifts every edge label by ``offset`` so the copy can be glued
    next to the original.
    """
    out = [(a + offset, dd + offset, c + offset, b + offset) for (a, b, c, dd) in d.crossings]
    return PlanarDiagram(out, d.loops)


def _rewrite(crossings: Iterable[tuple[int, int, int, int]], pos_map: dict[tuple[int, int], int]):
    """Replace labels at specific (crossing, slot) positions."""
    out = []
    for ci, x in enumerate(crossings):
        out.append(tuple(pos_map.get((ci, slot), x[slot]) for slot in range(4)))
    return out


def connected_sum(d1: PlanarDiagram, d2: PlanarDiagram, arc1: int, arc2: int) -> PlanarDiagram:
    """Connected sum: cut ``arc1`` and ``arc2`` and cross-join respecting flow."""
    if arc1 not in d1.appearances():
        raise DiagramStructureError(f"no edge {arc1} in first diagram")
    if arc2 not in d2.appearances():
        raise DiagramStructureError(f"no edge {arc2} in second diagram")
    off = max(d1.arcs, default=0)
    d2s = PlanarDiagram([tuple(a + off for a in x) for x in d2.crossings], d2.loops)
    a2 = arc2 + off
    # New edge (tail half of arc1 + head half of arc2) keeps label arc1;
    # new edge (tail half of arc2 + head half of arc1) keeps label a2.
    crossings = _rewrite(d1.crossings, {d1.arc_head(arc1): a2}) + list(
        _rewrite(d2s.crossings, {d2s.arc_head(a2): arc1})
    )
    return PlanarDiagram(crossings, d1.loops + d2.loops)


def _merge_and_relabel(
    d: PlanarDiagram, keep: list[tuple[int, int, int, int]], unions: list[tuple[int, int]]
) -> PlanarDiagram:
    """Union edge labels, rewrite kept crossings, count closed-off loops."""
    parent: dict[int, int] = {a: a for a in d.arcs}

    def find(v: int) -> int:
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for a, b in unions:
        parent[find(a)] = find(b)
    rep: dict[int, int] = {}
    for a in d.arcs:
        r = find(a)
        rep[r] = min(rep.get(r, a), a)
    relabeled = [tuple(rep[find(a)] for a in x) for x in keep]
    used = {a for x in relabeled for a in x}
    touched = {find(a) for pair in unions for a in pair}
    new_loops = d.loops + sum(1 for cls in touched if rep[cls] not in used)
    return PlanarDiagram(_redirect(relabeled), new_loops)


def _redirect(
    crossings: list[tuple[int, int, int, int]],
) -> list[tuple[int, int, int, int]]:
    """Rotate crossing tuples by two slots where a strand now runs backwards.

    Surgery can reverse part of a component, leaving tuples whose under
    strand flows 2 -> 0.  Rotating such a tuple describes the same crossing
    with the arrow read the other way, so the result is a valid PD for the
    same unoriented diagram.  Tuples already consistent are kept verbatim:
    each component's direction is seeded from its lowest-index under-pass.
    """
    ends: dict[int, list[tuple[int, int]]] = {}
    for ci, x in enumerate(crossings):
        for slot, a in enumerate(x):
            ends.setdefault(a, []).append((ci, slot))
    inbound: dict[tuple[int, int], bool] = {}
    for ci in range(len(crossings)):
        if (ci, 0) in inbound:
            continue
        pos = (ci, 0)
        while pos not in inbound:
            inbound[pos] = True
            out = (pos[0], (pos[1] + 2) % 4)
            inbound[out] = False
            a, b = ends[crossings[out[0]][out[1]]]
            pos = b if out == a else a
    return [
        x if inbound[(ci, 0)] else (x[2], x[3], x[0], x[1])
        for ci, x in enumerate(crossings)
    ]


def resolve_crossing(d: PlanarDiagram, ci: int, which: int) -> PlanarDiagram:
    """Replace crossing ``ci`` by its 0- or 1-smoothing.

    The 0-smoothing joins slots (0,1) and (2,3); the 1-smoothing joins
    (0,3) and (1,2).  For a positive crossing the 0-smoothing is the one
    compatible with the strand orientations.
    """
    if not 0 <= ci < len(d.crossings):
        raise DiagramStructureError(f"no crossing {ci}")
    if which not in (0, 1):
        raise DiagramStructureError("smoothing must be 0 or 1")
    x = d.crossings[ci]
    pairs = [(x[0], x[1]), (x[2], x[3])] if which == 0 else [(x[0], x[3]), (x[1], x[2])]
    keep = [x2 for k, x2 in enumerate(d.crossings) if k != ci]
    return _merge_and_relabel(d, keep, pairs)


# -- corner-wired assembly ---------------------------------------------------
#
# PD codes fix each crossing's incoming under-strand, which is awkward while a
# diagram is being rewired: strand directions are global.  The assembler below
# instead takes crossings as (wires at NW, NE, SW, SE; whether the NE-SW strand
# is on top), traces directions through the wiring, and only then commits each
# crossing's slots.

_NW, _NE, _SW, _SE = 0, 1, 2, 3
_OPPOSITE = {_NW: _SE, _SE: _NW, _NE: _SW, _SW: _NE}
# Counterclockwise successor by corner angle: NE -> NW -> SW -> SE -> NE.
_CCW_NEXT = {_NE: _NW, _NW: _SW, _SW: _SE, _SE: _NE}
# A PD tuple lists edge-ends counterclockwise from the incoming under strand,
# so reading slots 0,1,2,3 at corners SE,NE,NW,SW preserves rotation order.
_SLOT_CORNER = (_SE, _NE, _NW, _SW)


def assemble_corners(
    xs: list[tuple[tuple[int, int, int, int], bool]],
    unions: list[tuple[int, int]],
    n_wires: int,
    name: str | None = None,
    loops: int = 0,
    normalize: bool = True,
) -> PlanarDiagram:
    """Turn corner-wired crossings plus wire joins into a PD code.

    Wires are ids ``0..n_wires-1``; ``unions`` identifies wires pairwise so
    long edges can be assembled from pieces.  Every resulting wire class must
    occupy exactly two corners; classes occupying none become extra circles
    on top of ``loops``.  Without ``normalize`` the emitted edge labels are
    the wire ids plus one (union classes keep the id of their last member).
    """
    parent = list(range(n_wires))

    def find(v: int) -> int:
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for a, b in unions:
        parent[find(a)] = find(b)

    apps: dict[int, list[tuple[int, int]]] = {}
    for ci, (corners, _) in enumerate(xs):
        for corner, w in enumerate(corners):
            apps.setdefault(find(w), []).append((ci, corner))
    for ends in apps.values():
        if len(ends) != 2:
            raise ValueError("wiring did not close into arcs")
    loops += sum(1 for w in range(n_wires) if find(w) == w and w not in apps)

    direction: dict[tuple[int, int], int] = {}
    for start in sorted(pos for ends in apps.values() for pos in ends):
        if start in direction:
            continue
        pos = start
        while True:
            direction[pos] = 1  # flows into its crossing
            c, corner = pos
            out_pos = (c, _OPPOSITE[corner])
            direction[out_pos] = -1
            arc = find(xs[c][0][_OPPOSITE[corner]])
            a, b = apps[arc]
            nxt = b if out_pos == a else a
            if nxt == start:
                break
            pos = nxt

    crossings = []
    for ci, (corners, over_ne_sw) in enumerate(xs):
        under = (_NW, _SE) if over_ne_sw else (_NE, _SW)
        under_in = under[0] if direction[(ci, under[0])] == 1 else under[1]
        slots = [under_in]
        while len(slots) < 4:
            slots.append(_CCW_NEXT[slots[-1]])
        crossings.append(tuple(find(corners[s]) + 1 for s in slots))
    d = PlanarDiagram(crossings, loops, name)
    if normalize:
        d = d.normalized()
    if d.is_connected():
        d.faces()  # planarity guard
    return d


def _cut_wiring(
    d: PlanarDiagram, cuts: tuple[int, ...]
) -> tuple[list[tuple[tuple[int, int, int, int], bool]], dict[int, tuple[int, int]], int]:
    """Corner wiring of ``d`` with the given edges cut into two pieces each.

    Wire ids are dense over the surviving edges; a cut edge keeps its id at
    its first appearance and a fresh id replaces the second.  Returns the
    corner list, edge -> (first piece, second piece), and the id bound.
    """
    labels = sorted(d.appearances())
    idx = {lab: k for k, lab in enumerate(labels)}
    fresh = len(labels)
    pieces: dict[int, tuple[int, int]] = {}
    xs = []
    for x in d.crossings:
        row = []
        for lab in x:
            if lab in cuts:
                if lab in pieces:
                    row.append(pieces[lab][1])
                else:
                    pieces[lab] = (idx[lab], fresh)
                    fresh += 1
                    row.append(idx[lab])
            else:
                row.append(idx[lab])
        corners = [0, 0, 0, 0]
        for slot, w in enumerate(row):
            corners[_SLOT_CORNER[slot]] = w
        xs.append(((corners[0], corners[1], corners[2], corners[3]), True))
    return xs, pieces, fresh


@dataclass(frozen=True)
class TangleSite:
    """A disk meeting the diagram in two strands, named by its corner edges.

    ``nw``/``ne`` are the upper and lower edge pieces at one end of the
    channel and ``sw``/``se`` the pieces at the other end; ``interior``
    lists the crossing indices of the twist ladder inside the disk.  A
    trivial two-strand channel has no interior and repeats its two edges,
    ``nw == sw`` and ``ne == se``.
    """

    nw: int
    ne: int
    sw: int
    se: int
    interior: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if self.interior and len({self.nw, self.ne, self.sw, self.se}) != 4:
            raise DiagramStructureError("twist-region corners must be four distinct edges")


@dataclass(frozen=True)
class TwistParameter:
    """Number of half twists; ``None`` encodes the infinity tangle."""

    value: int | None

    @property
    def is_infinite(self) -> bool:
        return self.value is None

    def __int__(self) -> int:
        if self.value is None:
            raise ValueError("infinite twist parameter has no integer value")
        return self.value


INFINITY = TwistParameter(None)


def _ladder_corners(u: list[int], v: list[int], over_ne_sw: bool, reflected: bool):
    """Corner-wired crossings of a 2-braid between rail pieces ``u`` and ``v``.

    Crossing k meets upper pieces u[k-1], u[k] and lower pieces v[k-1], v[k].
    ``reflected`` swaps east and west, which is how the braid must be wired
    when the channel's shared face lies behind the plane of the page.
    """
    out = []
    for k in range(1, len(u)):
        if reflected:
            out.append(((u[k], u[k - 1], v[k], v[k - 1]), over_ne_sw))
        else:
            out.append(((u[k - 1], u[k], v[k - 1], v[k]), over_ne_sw))
    return out


# (swap rail ends of the second edge, reflect east-west); the PD code does
# not say which pairing of cut ends is adjacent nor on which side of the
# page the shared face lies, so layouts are tried in this fixed order.
_LAYOUTS = ((False, False), (False, True), (True, False), (True, True))


def _lay_ladder(
    d: PlanarDiagram, x: int, y: int, m: int, positive: bool, layout: tuple[bool, bool]
) -> tuple[PlanarDiagram, TangleSite]:
    """Cut edges ``x`` and ``y`` and wire ``m`` half twists between them."""
    swap, reflected = layout
    xs, pieces, fresh = _cut_wiring(d, (x, y))
    xa, xb = pieces[x]
    ya, yb = pieces[y]
    if swap:
        ya, yb = yb, ya
    u = [xa] + list(range(fresh, fresh + m - 1)) + [xb]
    v = [ya] + list(range(fresh + m - 1, fresh + 2 * (m - 1))) + [yb]
    xs = xs + _ladder_corners(u, v, positive, reflected)
    out = assemble_corners(
        xs, [], fresh + 2 * (m - 1), d.name, loops=d.loops, normalize=False
    )
    out.faces()  # planarity guard
    out.orientation()  # gluing must stay coherently directed
    interior = tuple(range(len(d.crossings), len(d.crossings) + m))
    site = TangleSite(u[0] + 1, v[0] + 1, u[-1] + 1, v[-1] + 1, interior)
    return out, site


def _channel_layout(d: PlanarDiagram, x: int, y: int) -> tuple[bool, bool]:
    """Pick the ladder wiring for the channel (x, y) by trial against guards.

    A usable layout must stay planar, coherently oriented, and component
    preserving for both one and two half twists (one parity alone can pass
    by accident when the rail ends are paired across).  The first workable
    layout in the fixed order wins; if none works the two edges do not
    border a common face and no twist region can be drawn there.
    """
    for layout in _LAYOUTS:
        try:
            for m in (1, 2):
                out, _ = _lay_ladder(d, x, y, m, True, layout)
                if out.n_components() != d.n_components():
                    raise DiagramStructureError("rail pairing changes component count")
        except PdError:
            continue
        except ValueError:
            continue
        return layout
    raise DiagramStructureError(
        "channel edges do not border a common face; no planar twist layout"
    )


def twist_insert(d: PlanarDiagram, site: TangleSite, n: int | TwistParameter) -> "SymmetricUnion":
    """Insert ``n`` half twists along a two-edge channel of the diagram.

    The site must be trivial with ``nw == sw`` and ``ne == se`` naming two
    distinct edges that border a common face; the twist ladder is drawn
    through that face, cutting both edges open and braiding the four cut
    ends.  Positive ``n`` makes positive crossings.  ``n == 0`` validates
    the channel and returns the diagram unchanged.  The result records the
    twist region's own site so the region can be re-resolved later.
    """
    if isinstance(n, TwistParameter):
        if n.is_infinite:
            raise DiagramStructureError("the infinity tangle is fusion_resolution")
        n = int(n)
    if site.interior or site.nw != site.sw or site.ne != site.se:
        raise DiagramStructureError("twist insertion needs a trivial channel site")
    x, y = site.nw, site.ne
    apps = d.appearances()
    if x not in apps or y not in apps or x == y:
        raise DiagramStructureError("channel edges must be two distinct edges of the diagram")
    layout = _channel_layout(d, x, y)
    if n == 0:
        return SymmetricUnion._of(d, site, 0)
    out, ladder_site = _lay_ladder(d, x, y, abs(n), n > 0, layout)
    if out.n_components() != d.n_components():  # pragma: no cover - layout was vetted
        raise DiagramStructureError("rail pairing changes component count")
    return SymmetricUnion._of(out, ladder_site, n)


def fusion_resolution(d: PlanarDiagram, site: TangleSite) -> PlanarDiagram:
    """Replace the site's tangle with the infinity tangle (cap both ends).

    Deletes the ladder crossings and joins nw to ne and sw to se.  For a
    symmetric union's twist region this produces the fusion link; the twist
    count never survives, so the result is the same for every ``n``.
    """
    apps = d.appearances()
    for corner in (site.nw, site.ne, site.sw, site.se):
        if corner not in apps:
            raise DiagramStructureError(f"no edge {corner} at the site")
    if not site.interior:
        if site.nw != site.sw or site.ne != site.se or site.nw == site.ne:
            raise DiagramStructureError("trivial site must be a two-edge channel")
        x, y = site.nw, site.ne
        # Cap with the same rail pairing a twist ladder on this channel
        # would use, so the fusion agrees with every twisted diagram.
        swap, _ = _channel_layout(d, x, y)
        xs, pieces, fresh = _cut_wiring(d, (x, y))
        xa, xb = pieces[x]
        ya, yb = pieces[y]
        if swap:
            ya, yb = yb, ya
        return assemble_corners(
            xs, [(xa, ya), (xb, yb)], fresh, d.name, loops=d.loops, normalize=False
        )
    interior = set(site.interior)
    corner_arcs = {site.nw, site.ne, site.sw, site.se}
    boundary_hits = 0
    for ci in interior:
        if not 0 <= ci < len(d.crossings):
            raise DiagramStructureError("interior crossing out of range")
        for slot, arc in enumerate(d.crossings[ci]):
            if arc in corner_arcs:
                boundary_hits += 1
            else:
                other = [p for p in apps[arc] if p != (ci, slot)][0]
                if other[0] not in interior:
                    raise DiagramStructureError("site interior is not a closed twist region")
    if boundary_hits != 4:
        raise DiagramStructureError("twist region must meet the diagram in its four corners")
    keep = [x for k, x in enumerate(d.crossings) if k not in interior]
    return _merge_and_relabel(d, keep, [(site.nw, site.ne), (site.sw, site.se)])


class SymmetricUnion(PlanarDiagram):
    """A planar diagram that remembers its replaceable twist tangle.

    Behaves as a plain diagram everywhere; additionally ``site`` names the
    twist region so it can be re-resolved, ``n`` is its half-twist count,
    and ``partial`` is the one-sided factor the union was built from, when
    known.  The extra fields do not take part in equality.
    """

    def __init__(
        self,
        crossings: Iterable[Sequence[int]] = (),
        loops: int = 0,
        name: str | None = None,
        *,
        site: TangleSite | None = None,
        n: int = 0,
        partial: PlanarDiagram | None = None,
    ):
        super().__init__(crossings, loops, name)
        self.site = site
        self.n = n
        self.partial = partial

    @classmethod
    def _of(
        cls,
        d: PlanarDiagram,
        site: TangleSite,
        n: int,
        partial: PlanarDiagram | None = None,
    ) -> "SymmetricUnion":
        return cls(d.crossings, d.loops, d.name, site=site, n=n, partial=partial)


def symmetric_union(j: PlanarDiagram, site_spec: TangleSite, n: int) -> SymmetricUnion:
    """Symmetric union of ``j`` with its mirror image.

    ``site_spec`` picks two edges of ``j`` in trivial-channel form: ``nw``
    (= ``sw``) is the edge cut by the connecting band and ``ne`` (= ``se``)
    the edge twisted against its mirror partner.  The band joins each half
    of the cut edge to its own mirror image through the axis, so the knot
    traverses the reflected copy against the reflected arrows; the twist
    channel between ``ne`` and its mirror is then anti-parallel and carries
    ``n`` half twists whose handedness is the sign of ``n``.
    """
    if site_spec.interior or site_spec.nw != site_spec.sw or site_spec.ne != site_spec.se:
        raise DiagramStructureError("union site needs band and twist edges, nothing else")
    band_arc, twist_arc = site_spec.nw, site_spec.ne
    if band_arc == twist_arc:
        raise DiagramStructureError("band and twist sites must be distinct edges")
    if band_arc not in j.appearances() or twist_arc not in j.appearances():
        raise DiagramStructureError("band and twist edges must belong to the diagram")
    off = max(j.arcs, default=0)
    # Reflected copy, rotated two slots so slot 0 is again the incoming
    # under-strand when the copy is traversed against the reflected arrows.
    copy = [(c + off, b + off, a + off, d + off) for (a, b, c, d) in j.crossings]
    # Reflection then rotation sends a slot of j to this slot of the copy.
    slot_map = {0: 2, 1: 1, 2: 0, 3: 3}
    tci, ts = j.arc_tail(band_arc)
    hci, hs = j.arc_head(band_arc)
    # Tail half of the band edge joins its mirror tail half (label band_arc),
    # head half joins mirror head half (label band_arc + off).
    crossings = _rewrite(j.crossings, {(hci, hs): band_arc + off}) + list(
        _rewrite(copy, {(tci, slot_map[ts]): band_arc})
    )
    base = PlanarDiagram(crossings, 2 * j.loops, j.name and f"U({j.name})")
    site = TangleSite(twist_arc, twist_arc + off, twist_arc, twist_arc + off)
    result = twist_insert(base, site, n)
    return SymmetricUnion._of(result, result.site, n, partial=j)
