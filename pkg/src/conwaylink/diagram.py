"""Oriented link diagrams encoded by planar-diagram (PD) codes.

A crossing is a quadruple X(a,b,c,d) of edge labels listed
counterclockwise starting from the incoming under-edge, so slot 0 is the
under-in edge and slot 2 the under-out edge.  The over strand enters at
slot 1 or slot 3; the crossing is positive exactly when it enters at
slot 1.  Unsigned codes leave the over direction open at crossings whose
structure does not force it; those are resolved by requiring edge labels
to run consecutively along each component, and genuinely ambiguous codes
must carry explicit '+'/'-' annotations.

Components that carry no crossing at all (circles split off by smoothing
or untwisting) cannot be expressed in PD slots and are tracked by a free
loop counter.

Diagrams are immutable: switching, smoothing, reversing and the
Reidemeister moves all return new values.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

__all__ = [
    "DiagramError",
    "Crossing",
    "Diagram",
    "BasedDiagram",
    "from_pd",
    "from_pd_text",
    "parse_pd_text",
    "to_pd_text",
    "unlink",
    "based",
    "traverse",
    "first_bad",
    "bad_crossings",
    "switch",
    "switched",
    "smooth",
    "reverse_component",
    "mirror",
    "canonical_key",
]

UNDER_IN, UNDER_OUT = 0, 2


class DiagramError(ValueError):
    """Raised for ill-formed PD codes or invalid diagram operations."""


@dataclass(frozen=True)
class Crossing:
    """Read-only view of one crossing."""

    id: int
    pd: tuple[int, int, int, int]
    over_in: int
    sign: int
    kind: str  # "self" or "mixed"

    @property
    def over_out(self) -> int:
        return 4 - self.over_in


class Diagram:
    """Immutable oriented link diagram.

    `quads` maps crossing id to its slot quadruple, `over` maps crossing
    id to the over-in slot (1 or 3), and `free_loops` counts crossing-free
    circle components.  Successor maps, components, signs and crossing
    kinds are derived once at construction.
    """

    __slots__ = (
        "_quads", "_over", "free_loops",
        "_head", "_tail", "components", "_comp_of", "_signs", "_kinds",
    )

    def __init__(self, quads: dict[int, tuple[int, int, int, int]], over: dict[int, int], free_loops: int = 0):
        if free_loops < 0:
            raise DiagramError("free loop count cannot be negative")
        if set(quads) != set(over):
            raise DiagramError("crossing ids of quadruples and over-slots differ")
        for cid, slot in over.items():
            if slot not in (1, 3):
                raise DiagramError(f"over-in slot of crossing {cid} must be 1 or 3")
        self._quads = dict(quads)
        self._over = dict(over)
        self.free_loops = free_loops

        head: dict[int, tuple[int, int]] = {}
        tail: dict[int, tuple[int, int]] = {}
        for cid, quad in self._quads.items():
            over_in = self._over[cid]
            for slot, edge in enumerate(quad):
                incoming = slot == UNDER_IN or slot == over_in
                store = head if incoming else tail
                if edge in store:
                    raise DiagramError(
                        f"edge {edge} is {'incoming' if incoming else 'outgoing'} at two crossings"
                    )
                store[edge] = (cid, slot)
        if set(head) != set(tail):
            missing = set(head).symmetric_difference(tail)
            raise DiagramError(f"edges {sorted(missing)} do not form closed strands")
        self._head = head
        self._tail = tail

        comp_of: dict[int, int] = {}
        cycles: list[tuple[int, ...]] = []
        for start in sorted(head):
            if start in comp_of:
                continue
            cycle = []
            edge = start
            while True:
                cycle.append(edge)
                comp_of[edge] = len(cycles)
                edge = self._succ(edge)
                if edge == start:
                    break
                if edge in comp_of:
                    raise DiagramError("edge successor structure is not a disjoint union of cycles")
            cycles.append(tuple(cycle))
        self.components = tuple(cycles)
        self._comp_of = comp_of

        self._signs = {cid: (1 if over_in == 1 else -1) for cid, over_in in self._over.items()}
        kinds = {}
        for cid, quad in self._quads.items():
            under_comp = comp_of[quad[UNDER_IN]]
            over_comp = comp_of[quad[self._over[cid]]]
            kinds[cid] = "self" if under_comp == over_comp else "mixed"
        self._kinds = kinds

    def _succ(self, edge: int) -> int:
        cid, slot = self._head[edge]
        exit_slot = UNDER_OUT if slot == UNDER_IN else 4 - slot
        return self._quads[cid][exit_slot]

    # -- queries ------------------------------------------------------

    @property
    def crossing_ids(self) -> tuple[int, ...]:
        return tuple(sorted(self._quads))

    @property
    def n_crossings(self) -> int:
        return len(self._quads)

    @property
    def n_components(self) -> int:
        return len(self.components) + self.free_loops

    @property
    def edges(self) -> tuple[int, ...]:
        return tuple(sorted(self._head))

    def crossing(self, cid: int) -> Crossing:
        if cid not in self._quads:
            raise DiagramError(f"unknown crossing {cid}")
        return Crossing(cid, self._quads[cid], self._over[cid], self._signs[cid], self._kinds[cid])

    def crossings(self) -> list[Crossing]:
        return [self.crossing(cid) for cid in self.crossing_ids]

    def sign(self, cid: int) -> int:
        if cid not in self._signs:
            raise DiagramError(f"unknown crossing {cid}")
        return self._signs[cid]

    def kind(self, cid: int) -> str:
        if cid not in self._kinds:
            raise DiagramError(f"unknown crossing {cid}")
        return self._kinds[cid]

    @property
    def writhe(self) -> int:
        return sum(self._signs.values())

    def successor(self, edge: int) -> int:
        if edge not in self._head:
            raise DiagramError(f"unknown edge {edge}")
        return self._succ(edge)

    def component_of(self, edge: int) -> int:
        if edge not in self._comp_of:
            raise DiagramError(f"unknown edge {edge}")
        return self._comp_of[edge]

    def head_end(self, edge: int) -> tuple[int, int]:
        """(crossing id, slot) where the edge points into a crossing."""
        if edge not in self._head:
            raise DiagramError(f"unknown edge {edge}")
        return self._head[edge]

    def tail_end(self, edge: int) -> tuple[int, int]:
        """(crossing id, slot) where the edge leaves a crossing."""
        if edge not in self._tail:
            raise DiagramError(f"unknown edge {edge}")
        return self._tail[edge]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Diagram):
            return NotImplemented
        return (
            self._quads == other._quads
            and self._over == other._over
            and self.free_loops == other.free_loops
        )

    def __hash__(self) -> int:
        return hash((
            tuple(sorted(self._quads.items())),
            tuple(sorted(self._over.items())),
            self.free_loops,
        ))

    def __repr__(self) -> str:
        return f"Diagram({to_pd_text(self)!r})"


@dataclass(frozen=True)
class BasedDiagram:
    """A diagram with an ordering of its strand components and one base
    point per component, identified by the edge the point sits on.

    `order[t]` is the index (into `diagram.components`) of the component
    walked t-th; `base_points[t]` is an edge of that component.  Free
    loops carry no base point and are implicitly ordered last; their
    position never influences traversal.
    """

    diagram: Diagram
    order: tuple[int, ...]
    base_points: tuple[int, ...]

    def __post_init__(self):
        d = self.diagram
        if sorted(self.order) != list(range(len(d.components))):
            raise DiagramError("order must be a permutation of the strand components")
        if len(self.base_points) != len(self.order):
            raise DiagramError("need exactly one base point per strand component")
        for comp_idx, edge in zip(self.order, self.base_points):
            if d.component_of(edge) != comp_idx:
                raise DiagramError(
                    f"base edge {edge} does not lie on component {comp_idx}"
                )


def based(d: Diagram) -> BasedDiagram:
    """Canonical based form: natural component order, minimal edge as base."""
    order = tuple(range(len(d.components)))
    bases = tuple(min(cycle) for cycle in d.components)
    return BasedDiagram(d, order, bases)


def unlink(n: int) -> Diagram:
    if n < 1:
        raise DiagramError("an unlink has at least one component")
    return Diagram({}, {}, free_loops=n)


# -- PD input ---------------------------------------------------------

_PD_TOKEN = re.compile(
    r"X\(\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*\)\s*([+-]?)|(O)|(\S)"
)


def parse_pd_text(text: str) -> tuple[list[tuple[tuple[int, int, int, int], int | None]], int]:
    """Split PD text into (quadruple, sign-or-None) entries and a free-loop count."""
    entries: list[tuple[tuple[int, int, int, int], int | None]] = []
    free_loops = 0
    for match in _PD_TOKEN.finditer(text):
        if match.group(7):
            raise DiagramError(
                f"unexpected character {match.group(7)!r} in PD text at offset {match.start(7)}"
            )
        if match.group(6):
            free_loops += 1
            continue
        quad = tuple(int(match.group(i)) for i in range(1, 5))
        suffix = match.group(5)
        sign = {"": None, "+": 1, "-": -1}[suffix]
        entries.append((quad, sign))
    return entries, free_loops


def from_pd_text(text: str) -> Diagram:
    entries, free_loops = parse_pd_text(text)
    return from_pd(entries, free_loops)


def _as_entries(pd) -> list[tuple[tuple[int, int, int, int], int | None]]:
    entries = []
    for item in pd:
        if len(item) == 2 and isinstance(item[0], tuple):
            quad, sign = item
        else:
            quad, sign = tuple(item), None
        if len(quad) != 4:
            raise DiagramError(f"crossing entry {quad!r} is not a quadruple")
        if sign not in (None, 1, -1):
            raise DiagramError(f"crossing sign must be +1, -1 or None, got {sign!r}")
        entries.append((tuple(quad), sign))
    return entries


def from_pd(pd, free_loops: int = 0) -> Diagram:
    """Build a diagram from PD entries, inferring over-strand directions.

    `pd` is a list of quadruples or (quadruple, sign) pairs; sign +1
    forces the over strand to enter at slot 1, sign -1 at slot 3.
    Unannotated crossings are resolved first by edge-closure constraints
    and then by the consecutive-labels rule; anything still ambiguous is
    an error naming the crossings that need annotations.
    """
    entries = _as_entries(pd)
    quads = {}
    explicit: dict[int, int] = {}
    for i, (quad, sign) in enumerate(entries):
        cid = i + 1
        quads[cid] = quad
        if sign is not None:
            explicit[cid] = 1 if sign == 1 else 3

    occurrences: dict[int, list[tuple[int, int]]] = {}
    for cid, quad in quads.items():
        for slot, edge in enumerate(quad):
            occurrences.setdefault(edge, []).append((cid, slot))
    for edge, occs in occurrences.items():
        if len(occs) != 2:
            raise DiagramError(
                f"edge {edge} appears {len(occs)} times; every edge label must appear exactly twice"
            )

    # is_head[(cid, slot)]: the edge in that slot points into the crossing.
    is_head: dict[tuple[int, int], bool] = {}

    def assign(pos: tuple[int, int], value: bool) -> None:
        if is_head.get(pos, value) != value:
            cid = pos[0]
            raise DiagramError(
                f"over-strand direction at crossing {cid} conflicts with the rest of the code"
            )
        if pos in is_head:
            return
        is_head[pos] = value
        pending.append(pos)

    pending: list[tuple[int, int]] = []
    for cid, quad in quads.items():
        assign((cid, UNDER_IN), True)
        assign((cid, UNDER_OUT), False)
    for cid, over_in in explicit.items():
        assign((cid, over_in), True)
        assign((cid, 4 - over_in), False)
    while pending:
        cid, slot = pending.pop()
        value = is_head[(cid, slot)]
        if slot in (1, 3):
            assign((cid, 4 - slot), not value)
        edge = quads[cid][slot]
        for other in occurrences[edge]:
            if other != (cid, slot):
                assign(other, not value)

    unresolved = sorted(cid for cid in quads if (cid, 1) not in is_head)
    resolved_groups: list[list[tuple[tuple[int, int], bool]]] = []
    seen: set[int] = set()
    for start in unresolved:
        if start in seen:
            continue
        choices = []
        for over_in in (1, 3):
            attempt = _walk_over_cycle(quads, occurrences, start, over_in)
            if attempt is not None and _labels_consecutive(attempt[1]):
                choices.append(attempt)
        if not choices:
            raise DiagramError(
                f"cannot infer the over-strand direction at crossing {start}: "
                "edge labels are not consecutive; add '+'/'-' annotations"
            )
        if len(choices) == 2 and choices[0][0] != choices[1][0]:
            cids = sorted({cid for (cid, _), _ in choices[0][0].items()})
            raise DiagramError(
                f"over-strand direction is ambiguous at crossings {cids}; "
                "add '+'/'-' annotations"
            )
        assignment, _ = choices[0]
        seen.update(cid for (cid, _) in assignment)
        resolved_groups.append(sorted(assignment.items()))
    for group in resolved_groups:
        for (cid, slot), value in group:
            assign((cid, slot), value)

    over = {}
    for cid in quads:
        over[cid] = 1 if is_head.get((cid, 1)) else 3
    return Diagram(quads, over, free_loops)


def _walk_over_cycle(quads, occurrences, start_cid, over_in):
    """Try one over-strand direction for a fully-over component.

    Returns (slot assignment, edge labels in walk order) or None if the
    walk revisits a slot inconsistently.
    """
    assignment: dict[tuple[int, int], bool] = {}
    labels: list[int] = []
    cid, slot = start_cid, over_in
    while True:
        if (cid, slot) in assignment:
            return None
        assignment[(cid, slot)] = True
        assignment[(cid, 4 - slot)] = False
        labels.append(quads[cid][slot])
        out_edge = quads[cid][4 - slot]
        nxt = [occ for occ in occurrences[out_edge] if occ != (cid, 4 - slot)]
        if len(nxt) != 1:
            return None
        (ncid, nslot), = nxt
        if nslot not in (1, 3):
            # The walk ran into an under slot: the cycle was not fully
            # over after all, which the propagation pass should have
            # resolved; treat as failure of this direction.
            return None
        cid, slot = ncid, nslot
        if (cid, slot) == (start_cid, over_in):
            return assignment, labels


def _labels_consecutive(labels: list[int]) -> bool:
    lo = min(labels)
    if sorted(labels) != list(range(lo, lo + len(labels))):
        return False
    if len(labels) == 1:
        return True
    wraps = 0
    steps = 0
    for a, b in zip(labels, labels[1:] + labels[:1]):
        if b == a + 1:
            steps += 1
        elif b == lo and a == lo + len(labels) - 1:
            wraps += 1
    return steps == len(labels) - 1 and wraps == 1


def to_pd_text(d: Diagram) -> str:
    """Canonical signed PD text; round-trips through from_pd_text."""
    parts = []
    for cid in d.crossing_ids:
        c = d.crossing(cid)
        suffix = "+" if c.sign > 0 else "-"
        parts.append(f"X({c.pd[0]},{c.pd[1]},{c.pd[2]},{c.pd[3]}){suffix}")
    parts.extend("O" * d.free_loops)
    return " ".join(parts)


# -- traversal and bad crossings --------------------------------------

def traverse(b: BasedDiagram) -> list[tuple[int, str]]:
    """Passages (crossing id, "under"|"over") walking each component from
    its base point, components taken in order."""
    d = b.diagram
    out: list[tuple[int, str]] = []
    for comp_idx, start in zip(b.order, b.base_points):
        edge = start
        while True:
            cid, slot = d.head_end(edge)
            out.append((cid, "under" if slot == UNDER_IN else "over"))
            edge = d.successor(edge)
            if edge == start:
                break
    return out


def first_bad(b: BasedDiagram) -> int | None:
    """First crossing whose first passage is on the under strand."""
    d = b.diagram
    seen: set[int] = set()
    for comp_idx, start in zip(b.order, b.base_points):
        edge = start
        while True:
            cid, slot = d.head_end(edge)
            if cid not in seen:
                if slot == UNDER_IN:
                    return cid
                seen.add(cid)
            edge = d.successor(edge)
            if edge == start:
                break
    return None


def bad_crossings(b: BasedDiagram) -> list[int]:
    """All bad crossings, in first-passage order."""
    d = b.diagram
    seen: set[int] = set()
    bad: list[int] = []
    for cid, passage in traverse(b):
        if cid not in seen:
            seen.add(cid)
            if passage == "under":
                bad.append(cid)
    return bad


# -- crossing change and smoothing ------------------------------------

def switch(d: Diagram, cid: int) -> Diagram:
    """Exchange the strands at one crossing (sign negates)."""
    if cid not in d._quads:
        raise DiagramError(f"unknown crossing {cid}")
    quads = dict(d._quads)
    over = dict(d._over)
    quad = quads[cid]
    over_in = over[cid]
    quads[cid] = tuple(quad[(i + over_in) % 4] for i in range(4))
    over[cid] = 4 - over_in
    return Diagram(quads, over, d.free_loops)


def switched(b: BasedDiagram, cid: int) -> BasedDiagram:
    """Based version of switch; order and base points carry over unchanged."""
    return BasedDiagram(switch(b.diagram, cid), b.order, b.base_points)


def mirror(d: Diagram) -> Diagram:
    """Switch every crossing."""
    out = d
    for cid in d.crossing_ids:
        out = switch(out, cid)
    return out


def _resolve(label_map: dict[int, int], edge: int) -> int:
    while edge in label_map:
        edge = label_map[edge]
    return edge


def _merge_pairs(pairs: list[tuple[int, int]]) -> tuple[dict[int, int], set[int], int]:
    """Glue strands: each pair (a, b) joins the head of a to the tail of b.

    Returns (label_map, dead_edges, loops_added).  Chains of glued edges
    collapse onto their final label; pairs that close up (directly or
    through a chain cycle) become free loops and their labels die.
    """
    nxt: dict[int, int] = {}
    loops_added = 0
    dead: set[int] = set()
    for a, b in pairs:
        if a == b:
            loops_added += 1
            dead.add(a)
        else:
            nxt[a] = b

    label_map: dict[int, int] = {}
    targets = set(nxt.values())
    chained: set[int] = set()
    for a in nxt:
        if a in targets:
            continue
        chain = [a]
        while chain[-1] in nxt:
            chain.append(nxt[chain[-1]])
        for atom in chain[:-1]:
            label_map[atom] = chain[-1]
        chained.update(chain)
    cycle_atoms = set(nxt) - chained
    while cycle_atoms:
        start = cycle_atoms.pop()
        loops_added += 1
        dead.add(start)
        atom = nxt[start]
        while atom != start:
            cycle_atoms.discard(atom)
            dead.add(atom)
            atom = nxt[atom]
    return label_map, dead, loops_added


def _erase_crossing(d: Diagram, cid: int) -> tuple[dict, dict, int, dict[int, int], set[int]]:
    """Remove a crossing and glue its strands according to orientation.

    Returns (quads, over, loops_added, label_map, dead_edges) where
    label_map sends consumed edge labels to the surviving label of their
    merged strand and dead_edges are labels swallowed by new free loops.
    """
    quad = d._quads[cid]
    over_in = d._over[cid]
    e_ui, e_uo = quad[UNDER_IN], quad[UNDER_OUT]
    e_oi, e_oo = quad[over_in], quad[4 - over_in]

    label_map, dead, loops_added = _merge_pairs([(e_ui, e_oo), (e_oi, e_uo)])

    quads = {}
    over = {}
    for other, q in d._quads.items():
        if other == cid:
            continue
        quads[other] = tuple(_resolve(label_map, e) for e in q)
        over[other] = d._over[other]
    return quads, over, loops_added, label_map, dead


def smooth(b: BasedDiagram, cid: int) -> BasedDiagram:
    """Oriented smoothing of one crossing with base-point bookkeeping.

    Smoothing a self crossing of the component at order position t splits
    it: the part keeping the old base point stays at position t and the
    other part is inserted right after, based on its first edge leaving
    the smoothed site.  Smoothing a mixed crossing merges the two
    components involved; the merged component sits at the earlier order
    position and the later base point is discarded.  Parts left with no
    crossings become free loops and silently leave the order.
    """
    d = b.diagram
    if cid not in d._quads:
        raise DiagramError(f"unknown crossing {cid}")
    kind = d.kind(cid)
    quad = d._quads[cid]
    over_in = d._over[cid]
    e_uo, e_oo = quad[UNDER_OUT], quad[4 - over_in]

    quads, over, loops_added, label_map, dead = _erase_crossing(d, cid)
    new_d = Diagram(quads, over, d.free_loops + loops_added)

    under_comp = d.component_of(quad[UNDER_IN])
    over_comp = d.component_of(quad[over_in])

    new_order: list[int] = []
    new_bases: list[int] = []

    def surviving_base(edge: int) -> int | None:
        mapped = _resolve(label_map, edge)
        return None if mapped in dead else mapped

    if kind == "self":
        site_pos = b.order.index(under_comp)
        for t, (comp_idx, base_edge) in enumerate(zip(b.order, b.base_points)):
            if t != site_pos:
                mapped = surviving_base(base_edge)
                new_order.append(new_d.component_of(mapped))
                new_bases.append(mapped)
                continue
            old_part_base = surviving_base(base_edge)
            if old_part_base is not None:
                new_order.append(new_d.component_of(old_part_base))
                new_bases.append(old_part_base)
            # The new component leaves the site along the smoothed
            # under-out / over-out arcs; its base point sits on whichever
            # of those survives outside the old part.
            for candidate in (e_uo, e_oo):
                arc = surviving_base(candidate)
                if arc is None:
                    continue
                comp = new_d.component_of(arc)
                if old_part_base is not None and comp == new_d.component_of(old_part_base):
                    continue
                if comp in new_order:
                    continue
                new_order.append(comp)
                new_bases.append(arc)
                break
    else:
        pos_under = b.order.index(under_comp)
        pos_over = b.order.index(over_comp)
        early, late = min(pos_under, pos_over), max(pos_under, pos_over)
        for t, (comp_idx, base_edge) in enumerate(zip(b.order, b.base_points)):
            if t == late:
                continue
            if t == early:
                mapped = surviving_base(base_edge)
                if mapped is None:
                    continue
                new_order.append(new_d.component_of(mapped))
                new_bases.append(mapped)
                continue
            mapped = surviving_base(base_edge)
            new_order.append(new_d.component_of(mapped))
            new_bases.append(mapped)

    return BasedDiagram(new_d, tuple(new_order), tuple(new_bases))


def reverse_component(d: Diagram, i: int) -> Diagram:
    """Reverse the orientation of one strand component.

    Self-crossing signs inside the component are preserved; signs of
    crossings with other components negate.
    """
    if not 0 <= i < len(d.components):
        raise DiagramError(f"component index {i} out of range")
    member = set(d.components[i])
    quads = {}
    over = {}
    for cid, quad in d._quads.items():
        over_in = d._over[cid]
        under_on_i = quad[UNDER_IN] in member
        over_on_i = quad[over_in] in member
        new_quad, new_over = quad, over_in
        if under_on_i:
            new_quad = tuple(quad[(s + 2) % 4] for s in range(4))
            new_over = ((over_in + 2) % 4) if not over_on_i else over_in
        elif over_on_i:
            new_over = 4 - over_in
        quads[cid] = new_quad
        over[cid] = new_over
    return Diagram(quads, over, d.free_loops)


# -- canonical key ----------------------------------------------------

def canonical_key(b: BasedDiagram) -> bytes:
    """Byte key equal for based diagrams that differ only by edge
    relabeling (order, base points, over/under and signs preserved)."""
    d = b.diagram
    rename: dict[int, int] = {}
    code: list[tuple] = []
    for comp_idx, start in zip(b.order, b.base_points):
        passages: list[tuple[int, int, int]] = []
        edge = start
        while True:
            cid, slot = d.head_end(edge)
            new_id = rename.setdefault(cid, len(rename))
            passages.append((new_id, 0 if slot == UNDER_IN else 1, d.sign(cid)))
            edge = d.successor(edge)
            if edge == start:
                break
        code.append(tuple(passages))
    return repr((d.free_loops, tuple(code))).encode()
