"""Reidemeister moves on PD diagrams.

The PD quadruples fix a rotation system (counterclockwise slot order at
every crossing), so the diagram carries a combinatorial embedding and
faces are well defined: they are the orbits of the next-dart map, where
a dart is an edge traversed in one of its two directions.  Move sites
are enumerated from faces — R1- at kink monogons, R2- at over/under
bigon faces, R3 at triangle faces with one strand above and one below —
which keeps every offered rewrite a genuine planar move on realizable
diagrams.  R1+ applies anywhere on an edge; R2+ slides one edge over
another across a shared face.

Applying a move renumbers edges canonically, so sites must be
re-enumerated after every application.
"""

from __future__ import annotations

from dataclasses import dataclass

from .diagram import (
    UNDER_IN,
    UNDER_OUT,
    Diagram,
    DiagramError,
    _merge_pairs,
    _resolve,
)

__all__ = [
    "MoveSite",
    "enumerate_sites",
    "apply_move",
    "faces",
    "check_planar",
]

Dart = tuple[int, int]  # (edge, +1 along orientation / -1 against)


@dataclass(frozen=True)
class MoveSite:
    move: str  # "R1+", "R1-", "R2+", "R2-", "R3"
    data: tuple

    def describe(self) -> str:
        return f"{self.move}{self.data}"


# -- faces ------------------------------------------------------------

def _next_dart(d: Diagram, dart: Dart) -> Dart:
    edge, direction = dart
    cid, slot = d.head_end(edge) if direction > 0 else d.tail_end(edge)
    out_slot = (slot + 1) % 4
    out_edge = d.crossing(cid).pd[out_slot]
    leaving_tail = d.tail_end(out_edge) == (cid, out_slot)
    return (out_edge, 1 if leaving_tail else -1)


def faces(d: Diagram) -> list[tuple[Dart, ...]]:
    """Face boundaries as dart cycles, deterministically ordered."""
    remaining = {(e, s) for e in d.edges for s in (1, -1)}
    out: list[tuple[Dart, ...]] = []
    while remaining:
        start = min(remaining)
        cycle = [start]
        remaining.discard(start)
        dart = _next_dart(d, start)
        while dart != start:
            cycle.append(dart)
            remaining.discard(dart)
            dart = _next_dart(d, dart)
        out.append(tuple(cycle))
    return out


def check_planar(d: Diagram) -> bool:
    """Euler check V - E + F = 2 on every connected piece of the diagram."""
    if d.n_crossings == 0:
        return True
    piece: dict[int, int] = {}

    def find(c: int) -> int:
        while piece[c] != c:
            piece[c] = piece[piece[c]]
            c = piece[c]
        return c

    for cid in d.crossing_ids:
        piece[cid] = cid
    for edge in d.edges:
        a, b = d.head_end(edge)[0], d.tail_end(edge)[0]
        piece[find(a)] = find(b)

    vertices: dict[int, int] = {}
    edge_count: dict[int, int] = {}
    face_count: dict[int, int] = {}
    for cid in d.crossing_ids:
        root = find(cid)
        vertices[root] = vertices.get(root, 0) + 1
    for edge in d.edges:
        root = find(d.head_end(edge)[0])
        edge_count[root] = edge_count.get(root, 0) + 1
    for cycle in faces(d):
        root = find(d.head_end(cycle[0][0])[0] if cycle[0][1] > 0 else d.tail_end(cycle[0][0])[0])
        face_count[root] = face_count.get(root, 0) + 1
    return all(
        vertices[r] - edge_count[r] + face_count.get(r, 0) == 2 for r in vertices
    )


# -- site enumeration -------------------------------------------------

def _kink_info(d: Diagram, cid: int):
    """(loop_edge, glue_pair) when the crossing is a removable kink."""
    c = d.crossing(cid)
    e_ui, e_uo = c.pd[UNDER_IN], c.pd[UNDER_OUT]
    e_oi, e_oo = c.pd[c.over_in], c.pd[c.over_out]
    if e_uo == e_oi:
        return e_uo, (e_ui, e_oo)
    if e_ui == e_oo:
        return e_ui, (e_oi, e_uo)
    return None


def _bigon_info(d: Diagram, cycle: tuple[Dart, ...]):
    """(c1, c2, over_edge, under_edge) for a cancellable bigon face."""
    (e1, s1), (e2, s2) = cycle
    if e1 == e2:
        return None
    ends1 = (d.head_end(e1), d.tail_end(e1))
    ends2 = (d.head_end(e2), d.tail_end(e2))
    cids = {end[0] for end in ends1} | {end[0] for end in ends2}
    if len(cids) != 2:
        return None

    def strand_role(edge: int) -> str | None:
        hc, hs = d.head_end(edge)
        tc, ts = d.tail_end(edge)
        head_over = hs == d.crossing(hc).over_in
        tail_over = ts == d.crossing(tc).over_out
        if head_over and tail_over:
            return "over"
        if hs == UNDER_IN and ts == UNDER_OUT:
            return "under"
        return None

    r1, r2 = strand_role(e1), strand_role(e2)
    if {r1, r2} != {"over", "under"}:
        return None
    over_edge = e1 if r1 == "over" else e2
    under_edge = e2 if r1 == "over" else e1
    c1, c2 = sorted(cids)
    if d.sign(c1) == d.sign(c2):
        return None
    return c1, c2, over_edge, under_edge


def _triangle_info(d: Diagram, cycle: tuple[Dart, ...]):
    """(edges, crossings) for an R3-ready triangle face."""
    edges = [dart[0] for dart in cycle]
    if len(set(edges)) != 3:
        return None
    cids = set()
    for edge in edges:
        cids.add(d.head_end(edge)[0])
        cids.add(d.tail_end(edge)[0])
    if len(cids) != 3:
        return None
    # Layering: count how often each triangle edge rides the over strand
    # at its two endpoint crossings; R3 needs one edge over at both, one
    # under at both, and one mixed (acyclic layering).
    profile = []
    for edge in edges:
        hc, hs = d.head_end(edge)
        tc, ts = d.tail_end(edge)
        over_count = (hs == d.crossing(hc).over_in) + (ts == d.crossing(tc).over_out)
        profile.append(over_count)
    if sorted(profile) != [0, 1, 2]:
        return None
    return tuple(sorted(edges)), tuple(sorted(cids))


def enumerate_sites(d: Diagram) -> list[MoveSite]:
    """All applicable move sites, deterministically ordered."""
    sites: list[MoveSite] = []

    for cid in d.crossing_ids:
        if _kink_info(d, cid) is not None:
            sites.append(MoveSite("R1-", (cid,)))

    seen_bigons = set()
    seen_triangles = set()
    face_list = faces(d)
    for cycle in face_list:
        if len(cycle) == 2:
            info = _bigon_info(d, cycle)
            if info is not None and info[:2] not in seen_bigons:
                seen_bigons.add(info[:2])
                sites.append(MoveSite("R2-", info))
        elif len(cycle) == 3:
            info = _triangle_info(d, cycle)
            if info is not None and info[1] not in seen_triangles:
                seen_triangles.add(info[1])
                sites.append(MoveSite("R3", info))

    for edge in d.edges:
        for direction in (1, -1):
            for sign in (1, -1):
                sites.append(MoveSite("R1+", (edge, direction, sign)))
    if d.free_loops > 0:
        for sign in (1, -1):
            sites.append(MoveSite("R1+", ("loop", 0, sign)))

    for cycle in face_list:
        for dx in cycle:
            for dy in cycle:
                if dx[0] == dy[0]:
                    continue
                sites.append(MoveSite("R2+", (dx, dy)))
    if d.free_loops > 0:
        for edge in d.edges:
            for direction in (1, -1):
                for top in ("loop", "arc"):
                    for loop_dir in (1, -1):
                        sites.append(MoveSite("R2+", ("loop", (edge, direction), top, loop_dir)))

    return sites


# -- application ------------------------------------------------------

def _renumber(quads: dict[int, tuple], over: dict[int, int], free_loops: int) -> Diagram:
    """Rebuild with canonical edge labels 1..2n and crossing ids 1..n."""
    probe = Diagram(quads, over, free_loops)
    edge_map: dict[int, int] = {}
    for cycle in sorted(probe.components, key=min):
        start = min(cycle)
        idx = cycle.index(start)
        for edge in cycle[idx:] + cycle[:idx]:
            edge_map[edge] = len(edge_map) + 1
    cid_map = {cid: i + 1 for i, cid in enumerate(sorted(quads))}
    new_quads = {
        cid_map[cid]: tuple(edge_map[e] for e in quad) for cid, quad in quads.items()
    }
    new_over = {cid_map[cid]: over[cid] for cid in quads}
    return Diagram(new_quads, new_over, free_loops)


def _fresh_labels(d: Diagram, count: int) -> list[int]:
    top = max(d.edges, default=0)
    return [top + i + 1 for i in range(count)]


def _replace_end(quads: dict[int, tuple], pos: tuple[int, int], new_edge: int) -> None:
    cid, slot = pos
    quad = list(quads[cid])
    quad[slot] = new_edge
    quads[cid] = tuple(quad)


def _apply_r1_plus(d: Diagram, data) -> Diagram:
    target, direction, sign = data
    quads = {cid: d.crossing(cid).pd for cid in d.crossing_ids}
    over = {cid: d.crossing(cid).over_in for cid in d.crossing_ids}
    free_loops = d.free_loops
    new_cid = max(quads, default=0) + 1

    if target == "loop":
        if free_loops < 1:
            raise DiagramError("no free loop to kink")
        m, loop = _fresh_labels(d, 2)
        free_loops -= 1
        if sign > 0:
            quads[new_cid] = (m, loop, loop, m)
            over[new_cid] = 1
        else:
            quads[new_cid] = (m, m, loop, loop)
            over[new_cid] = 3
        return _renumber(quads, over, free_loops)

    if target not in d._head:
        raise DiagramError(f"unknown edge {target}")
    e2, loop = _fresh_labels(d, 2)
    # target keeps its tail and becomes the incoming half; e2 takes over
    # the head end.
    _replace_end(quads, d.head_end(target), e2)
    e1 = target
    if direction > 0:
        if sign > 0:
            quads[new_cid] = (e1, loop, loop, e2)
            over[new_cid] = 1
        else:
            quads[new_cid] = (e1, e2, loop, loop)
            over[new_cid] = 3
    else:
        if sign > 0:
            quads[new_cid] = (loop, e1, e2, loop)
            over[new_cid] = 1
        else:
            quads[new_cid] = (loop, loop, e2, e1)
            over[new_cid] = 3
    return _renumber(quads, over, free_loops)


def _apply_r1_minus(d: Diagram, data) -> Diagram:
    (cid,) = data
    if cid not in set(d.crossing_ids):
        raise DiagramError(f"unknown crossing {cid}")
    info = _kink_info(d, cid)
    if info is None:
        raise DiagramError(f"crossing {cid} is not a removable kink")
    loop_edge, pair = info
    label_map, dead, loops_added = _merge_pairs([pair])
    quads = {}
    over = {}
    for other in d.crossing_ids:
        if other == cid:
            continue
        quads[other] = tuple(_resolve(label_map, e) for e in d.crossing(other).pd)
        over[other] = d.crossing(other).over_in
    return _renumber(quads, over, d.free_loops + loops_added)


def _apply_r2_minus(d: Diagram, data) -> Diagram:
    c1, c2, over_edge, under_edge = data
    current = _bigon_info(d, _find_bigon_cycle(d, over_edge, under_edge))
    if current is None or set(current[:2]) != {c1, c2}:
        raise DiagramError("bigon site is no longer present")
    # Over strand: runs  x_in -> [ca] -> over_edge -> [cb] -> x_out.
    ca = d.tail_end(over_edge)[0]
    cb = d.head_end(over_edge)[0]
    x_in = d.crossing(ca).pd[d.crossing(ca).over_in]
    x_out = d.crossing(cb).pd[d.crossing(cb).over_out]
    ua = d.tail_end(under_edge)[0]
    ub = d.head_end(under_edge)[0]
    y_in = d.crossing(ua).pd[UNDER_IN]
    y_out = d.crossing(ub).pd[UNDER_OUT]
    label_map, dead, loops_added = _merge_pairs([(x_in, x_out), (y_in, y_out)])
    quads = {}
    over = {}
    for other in d.crossing_ids:
        if other in (c1, c2):
            continue
        quads[other] = tuple(_resolve(label_map, e) for e in d.crossing(other).pd)
        over[other] = d.crossing(other).over_in
    return _renumber(quads, over, d.free_loops + loops_added)


def _find_bigon_cycle(d: Diagram, e1: int, e2: int):
    for cycle in faces(d):
        if len(cycle) == 2 and {cycle[0][0], cycle[1][0]} == {e1, e2}:
            return cycle
    return ((e1, 1), (e2, 1))  # let _bigon_info reject it


def _apply_r2_plus(d: Diagram, data) -> Diagram:
    quads = {cid: d.crossing(cid).pd for cid in d.crossing_ids}
    over = {cid: d.crossing(cid).over_in for cid in d.crossing_ids}
    free_loops = d.free_loops

    if data and data[0] == "loop":
        _, (arc, arc_dir), top, loop_dir = data
        if free_loops < 1:
            raise DiagramError("no free loop for the slide")
        if arc not in d._head:
            raise DiagramError(f"unknown edge {arc}")
        free_loops -= 1
        if top == "loop":
            x_spec = (None, loop_dir)
            y_spec = (arc, arc_dir)
        else:
            x_spec = (arc, arc_dir)
            y_spec = (None, loop_dir)
    else:
        dart_x, dart_y = data
        (ex, dirx), (ey, diry) = dart_x, dart_y
        for e in (ex, ey):
            if e not in d._head:
                raise DiagramError(f"unknown edge {e}")
        if ex == ey:
            raise DiagramError("cannot slide an edge over itself")
        if not any(dart_x in cycle and dart_y in cycle for cycle in faces(d)):
            raise DiagramError("darts no longer border a common face")
        x_spec = (ex, dirx)
        y_spec = (ey, diry)

    labels = _fresh_labels(d, 4)
    c_west = max(quads, default=0) + 1
    c_east = c_west + 1

    def subdivide(spec, lab_mid, lab_last):
        """Returns (first, mid, last) edge labels for the strand."""
        edge, direction = spec
        if edge is None:
            return lab_last, lab_mid, lab_last
        _replace_end(quads, d.head_end(edge), lab_last)
        return edge, lab_mid, lab_last

    xf, xm, xl = subdivide(x_spec, labels[0], labels[1])
    yf, ym, yl = subdivide(y_spec, labels[2], labels[3])
    dirx = x_spec[1]
    diry = y_spec[1]

    # Face orbits keep the face on the right of every dart, so the two
    # darts sit in a fixed relative picture: the x dart travels east
    # along the top of the shared face and the y dart travels west along
    # the bottom.  Pushing a finger of x south over y crosses it twice,
    # descending at the west crossing and ascending at the east one.  A
    # dart direction of -1 means the edge arrow runs against the travel
    # direction, which swaps the in/out segment roles and the headings.
    if dirx > 0:
        x_at = {c_west: (xf, xm, "S"), c_east: (xm, xl, "N")}
    else:
        x_at = {c_east: (xf, xm, "S"), c_west: (xm, xl, "N")}
    if diry > 0:
        # y arrow points west: it meets the east crossing first and its
        # under-in slot faces east, so the slots run E, N, W, S.
        y_at = {c_east: (yf, ym), c_west: (ym, yl)}
        north_slot, south_slot = 1, 3
    else:
        # y arrow points east: under-in faces west; slots W, S, E, N.
        y_at = {c_west: (yf, ym), c_east: (ym, yl)}
        north_slot, south_slot = 3, 1

    for cid in (c_west, c_east):
        y_in, y_out = y_at[cid]
        x_in, x_out, x_heading = x_at[cid]
        over_in = north_slot if x_heading == "S" else south_slot
        quad = [0, 0, 0, 0]
        quad[UNDER_IN], quad[UNDER_OUT] = y_in, y_out
        quad[over_in], quad[(over_in + 2) % 4] = x_in, x_out
        quads[cid] = tuple(quad)
        over[cid] = over_in
    return _renumber(quads, over, free_loops)


def _apply_r3(d: Diagram, data) -> Diagram:
    edges, cids = data
    cid_set = set(d.crossing_ids)
    if not set(cids) <= cid_set:
        raise DiagramError("triangle crossings are gone")
    check = _triangle_info(d, tuple((e, 1) for e in edges)) if all(
        e in d._head for e in edges
    ) else None
    if check is None or check[0] != tuple(sorted(edges)):
        raise DiagramError("triangle site is no longer present")

    quads = {cid: d.crossing(cid).pd for cid in d.crossing_ids}
    over = {cid: d.crossing(cid).over_in for cid in d.crossing_ids}

    updates: list[tuple[int, int, int]] = []  # (cid, slot, new edge)
    for s in edges:
        first, t_slot = d.tail_end(s)
        second, h_slot = d.head_end(s)
        if t_slot == UNDER_OUT:
            in_slot_first, out_slot_first = UNDER_IN, UNDER_OUT
        else:
            c = d.crossing(first)
            in_slot_first, out_slot_first = c.over_in, c.over_out
        if h_slot == UNDER_IN:
            in_slot_second, out_slot_second = UNDER_IN, UNDER_OUT
        else:
            c = d.crossing(second)
            in_slot_second, out_slot_second = c.over_in, c.over_out
        u = quads[first][in_slot_first]
        w = quads[second][out_slot_second]
        # The strand now passes `second` first: u -> second -> s -> first -> w.
        updates.append((second, in_slot_second, u))
        updates.append((second, out_slot_second, s))
        updates.append((first, in_slot_first, s))
        updates.append((first, out_slot_first, w))

    for cid, slot, edge in updates:
        quad = list(quads[cid])
        quad[slot] = edge
        quads[cid] = tuple(quad)
    return _renumber(quads, over, d.free_loops)


def apply_move(d: Diagram, site: MoveSite) -> Diagram:
    if site.move == "R1+":
        return _apply_r1_plus(d, site.data)
    if site.move == "R1-":
        return _apply_r1_minus(d, site.data)
    if site.move == "R2+":
        return _apply_r2_plus(d, site.data)
    if site.move == "R2-":
        return _apply_r2_minus(d, site.data)
    if site.move == "R3":
        return _apply_r3(d, site.data)
    raise DiagramError(f"unknown move {site.move!r}")
