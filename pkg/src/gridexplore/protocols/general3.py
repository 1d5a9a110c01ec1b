"""Three-robot exploration of grids whose long side exceeds 3.

The protocol runs in three phases.  First the robots build a line of
three along a longest borderline anchored at a corner, by electing a
leader: a unique corner robot if one exists (Leader), a kept corner
among several (Choice), or a robot sent to a corner (Undefined).  Then
the corner robot climbs onto its occupied neighbor, creating a tower
whose position orients a coordinate frame.  Finally the remaining
single robot sweeps the grid in a boustrophedon walk and stops on the
last node.
"""

from __future__ import annotations

from ..grid import (
    Coord,
    GridDims,
    borderlines,
    corners,
    dist,
    longest_borderlines,
    neighbors,
)
from .base import Moves, Snapshot, protocol_from_rule, towards


class ClassificationGap(ValueError):
    pass


def _lines_with(grid: GridDims, v: Coord) -> list[tuple[Coord, ...]]:
    return [b for b in borderlines(grid) if v in b]


def snake_order(grid: GridDims) -> list[Coord]:
    """Boustrophedon over frame coordinates: y ascending, x alternating."""
    out: list[Coord] = []
    for y in range(grid.i):
        xs = range(grid.j) if y % 2 == 0 else range(grid.j - 1, -1, -1)
        out.extend((x, y) for x in xs)
    return out


def _setup_line(snap: Snapshot) -> tuple[Coord, Coord] | None:
    """If the singles form a corner-anchored line on a longest borderline,
    return (corner robot, its occupied neighbor)."""
    for line in longest_borderlines(snap.grid):
        for seg in (line[:3], line[-3:][::-1]):
            if snap.singles == frozenset(seg):
                return seg[0], seg[1]
    return None


def _frame(snap: Snapshot) -> tuple[Coord, Coord, Coord] | None:
    """Unique (origin corner, x step, y step) induced by the tower."""
    tower = next(iter(snap.towers))
    cands = []
    for c in corners(snap.grid):
        if dist(snap.grid, c, tower) != 1:
            continue
        for line in longest_borderlines(snap.grid):
            if c in line and tower in line:
                cands.append((c, line))
    if len(cands) != 1:
        return None
    c, _ = cands[0]
    ux = (tower[0] - c[0], tower[1] - c[1])
    if ux[0] != 0:
        uy = (0, 1) if c[1] == 0 else (0, -1)
    else:
        uy = (1, 0) if c[0] == 0 else (-1, 0)
    return c, ux, uy


def _tower_moves(snap: Snapshot) -> Moves:
    if len(snap.towers) != 1 or len(snap.singles) != 1:
        return []
    frame = _frame(snap)
    if frame is None:
        return []
    origin, ux, uy = frame
    order = snake_order(snap.grid)

    def world(p: Coord) -> Coord:
        return (
            origin[0] + p[0] * ux[0] + p[1] * uy[0],
            origin[1] + p[0] * ux[1] + p[1] * uy[1],
        )

    explorer = next(iter(snap.singles))
    rel = (explorer[0] - origin[0], explorer[1] - origin[1])
    fx = rel[0] * ux[0] + rel[1] * ux[1]
    fy = rel[0] * uy[0] + rel[1] * uy[1]
    if (fx, fy) not in order:
        return []
    idx = order.index((fx, fy))
    if idx < 2 or idx == len(order) - 1:
        return []
    return [(explorer, {world(order[idx + 1])})]


def classify_setup(snap: Snapshot) -> tuple[str, Moves]:
    """Total classification of reachable placements, with the moves of
    the robots the case allows to move."""
    grid = snap.grid
    if snap.towers:
        moves = _tower_moves(snap)
        if moves:
            explorer = next(iter(snap.singles))
            order_pos = _explorer_index(snap)
            return ("Oriented" if order_pos == 2 else "Exploring"), moves
        return "Terminal", []
    line = _setup_line(snap)
    if line is not None:
        corner_robot, occupied_neighbor = line
        return "SetUpDone", [(corner_robot, {occupied_neighbor})]
    robots = snap.singles
    corner_robots = sorted(robots & corners(grid))
    if len(corner_robots) == 1:
        return _leader(snap, corner_robots[0])
    if len(corner_robots) == 2:
        return _choice1(snap, corner_robots)
    if len(corner_robots) == 3:
        return _choice2(snap, corner_robots)
    return _undefined(snap)


def _explorer_index(snap: Snapshot) -> int:
    frame = _frame(snap)
    assert frame is not None
    origin, ux, uy = frame
    explorer = next(iter(snap.singles))
    rel = (explorer[0] - origin[0], explorer[1] - origin[1])
    return snake_order(snap.grid).index(
        (rel[0] * ux[0] + rel[1] * ux[1], rel[0] * uy[0] + rel[1] * uy[1])
    )


def _leader(snap: Snapshot, r1: Coord) -> tuple[str, Moves]:
    grid = snap.grid
    lines1 = _lines_with(grid, r1)
    others = sorted(snap.singles - {r1})
    on1 = [r for r in others if any(r in ln for ln in lines1)]

    if not on1:
        goals = [
            v
            for ln in longest_borderlines(grid)
            if r1 in ln
            for v in ln
            if snap.free(v)
        ]
        dmin = min(dist(grid, r, r1) for r in others)
        movers = [r for r in others if dist(grid, r, r1) == dmin]
        return "StrictLeader", [(m, towards(snap, m, goals)) for m in movers]

    if len(on1) == 1:
        r2 = on1[0]
        d = next(ln for ln in lines1 if r2 in ln)
        if len(d) == grid.j:
            r3 = next(r for r in others if r != r2)
            goals = [v for v in d if snap.free(v)]
            return "HalfLeader1", [(r3, towards(snap, r3, goals))]
        off = [w for w in neighbors(grid, r2) if w not in d]
        if off and snap.free(off[0]):
            return "HalfLeader2", [(r2, {off[0]})]
        on_line = [w for w in neighbors(grid, r2) if w in d and snap.free(w)]
        return "HalfLeader2", [(r2, set(on_line))]

    # All on borderlines through the leader's corner.
    d2 = next(ln for ln in lines1 if on1[0] in ln)
    d3 = next(ln for ln in lines1 if on1[1] in ln)
    if d2 == d3:
        d1 = d2
        by_dist = sorted(on1, key=lambda r: dist(grid, r, r1))
        r2, r3 = by_dist
        if len(d1) == grid.j:
            if dist(grid, r1, r2) > 1:
                return "FullyLeader1", [(r2, towards(snap, r2, [r1]))]
            return "FullyLeader1", [(r3, towards(snap, r3, [r2]))]
        mover = r2
        off = next(w for w in neighbors(grid, mover) if w not in d1)
        return "FullyLeader2", [(mover, {off})]

    if grid.i != grid.j:
        short = min((d2, d3), key=len)
        mover = on1[0] if on1[0] in short else on1[1]
        own = d2 if mover in d2 else d3
        off = next(w for w in neighbors(grid, mover) if w not in own)
        return "SemiLeader1", [(mover, {off})]

    da, db = dist(grid, r1, on1[0]), dist(grid, r1, on1[1])
    if da != db:
        mover = on1[0] if da < db else on1[1]
        own = d2 if mover in d2 else d3
        off = next(w for w in neighbors(grid, mover) if w not in own)
        return "SemiLeader2a", [(mover, {off})]
    if da >= 2:
        return "SemiLeader2a", [(r1, set(neighbors(grid, r1)))]
    moves = []
    for r, own in ((on1[0], d2), (on1[1], d3)):
        away = next(w for w in neighbors(grid, r) if w in own and w != r1)
        moves.append((r, {away}))
    return "SemiLeader2b", moves


def _choice1(snap: Snapshot, corner_robots: list[Coord]) -> tuple[str, Moves]:
    grid = snap.grid
    a, b = corner_robots
    r3 = next(iter(snap.singles - set(corner_robots)))
    lines3 = _lines_with(grid, r3)
    both_line = [ln for ln in lines3 if a in ln and b in ln]
    if both_line:
        d = both_line[0]
        da, db = dist(grid, a, r3), dist(grid, b, r3)
        if da != db:
            far = a if da > db else b
            return "Choice1", [(far, towards(snap, far, [r3]))]
        on_line = [w for w in neighbors(grid, r3) if w in d and snap.free(w)]
        if on_line:
            return "Choice1", [(r3, set(on_line))]
        off = [w for w in neighbors(grid, r3) if w not in d and snap.free(w)]
        return "Choice1", [(r3, set(off))]
    shared = [c for c in (a, b) if any(c in ln for ln in lines3)]
    if len(shared) == 1:
        d = next(ln for ln in lines3 if shared[0] in ln)
        mover = b if shared[0] == a else a
        goals = [v for v in d if snap.free(v)]
        return "Choice1", [(mover, towards(snap, mover, goals))]
    goals = [
        v
        for ln in longest_borderlines(grid)
        if a in ln or b in ln
        for v in ln
        if snap.free(v)
    ]
    return "Choice1", [(r3, towards(snap, r3, goals))]


def _choice2(snap: Snapshot, corner_robots: list[Coord]) -> tuple[str, Moves]:
    grid = snap.grid
    mover = None
    for c in corner_robots:
        others = [o for o in corner_robots if o != c]
        if all(
            any(c in ln and o in ln for ln in borderlines(grid)) for o in others
        ):
            mover = c
            break
    if mover is None:
        raise ClassificationGap(f"no shared-corner mover in {corner_robots}")
    targets = {
        w
        for w in neighbors(grid, mover)
        if snap.free(w)
        and any(w in ln for ln in longest_borderlines(grid))
    }
    return "Choice2", [(mover, targets)]


def _undefined(snap: Snapshot) -> tuple[str, Moves]:
    grid = snap.grid
    robots = sorted(snap.singles)
    cs = corners(grid)

    def cdist(r: Coord) -> int:
        return min(dist(grid, r, c) for c in cs)

    def closest_corners(r: Coord) -> frozenset[Coord]:
        m = cdist(r)
        return frozenset(c for c in cs if dist(grid, r, c) == m)

    m = min(cdist(r) for r in robots)
    closest = [r for r in robots if cdist(r) == m]

    if len(closest) == 1:
        a = closest[0]
        lines_a = _lines_with(grid, a)
        if grid.i == grid.j and lines_a:
            d = lines_a[0]
            on_d = [r for r in robots if r in d]
            off_d = [r for r in robots if r not in d]
            if len(on_d) == 2 and len(off_d) == 1:
                r3 = off_d[0]
                goals = [v for v in d if snap.free(v)]
                return "Undefined1", [(r3, towards(snap, r3, goals))]
        return "Undefined2", [(a, towards(snap, a, closest_corners(a)))]

    if len(closest) == 2:
        r1, r2 = closest
        r3 = next(r for r in robots if r not in closest)
        da, db = dist(grid, r1, r3), dist(grid, r2, r3)
        if da == db:
            if da == 1:
                fn = snap.free_neighbors(r3)
                if fn:
                    return "Undefined3", [(r3, set(fn))]
                return "Undefined3", [
                    (r, towards(snap, r, closest_corners(r))) for r in (r1, r2)
                ]
            targets = {
                w
                for w in snap.free_neighbors(r3)
                if (dist(grid, w, r1) < da) != (dist(grid, w, r2) < db)
            }
            if not targets:
                # diagonal deadlock: step closer to both until a
                # tie-breaking neighbor appears
                targets = {
                    w
                    for w in snap.free_neighbors(r3)
                    if dist(grid, w, r1) < da and dist(grid, w, r2) < db
                }
            return "Undefined3", [(r3, targets)]
        mover = r1 if da < db else r2
        return "Undefined3", [(mover, towards(snap, mover, closest_corners(mover)))]

    on_border = [r for r in robots if _lines_with(grid, r)]
    if len(on_border) == 1:
        r = on_border[0]
        return "Undefined4_1", [(r, towards(snap, r, closest_corners(r)))]
    if len(on_border) == 2:
        r3 = next(r for r in robots if r not in on_border)
        return "Undefined4_2", [(r3, towards(snap, r3, closest_corners(r3)))]
    if len(on_border) == 3:
        for ln in borderlines(grid):
            on_ln = [r for r in robots if r in ln]
            if len(on_ln) == 2:
                r3 = next(r for r in robots if r not in on_ln)
                return "Undefined4_3i", [
                    (r3, towards(snap, r3, closest_corners(r3)))
                ]
            if len(on_ln) == 3:
                raise ClassificationGap(f"three equidistant robots on {ln}")
        horizontals = [r for r in robots if r[1] in (0, grid.i - 1)]
        verticals = [r for r in robots if r[0] in (0, grid.j - 1)]
        odd = verticals if len(horizontals) == 2 else horizontals
        if len(odd) != 1:
            raise ClassificationGap(f"no unique perpendicular robot in {robots}")
        r = odd[0]
        return "Undefined4_3ii", [(r, towards(snap, r, closest_corners(r)))]

    cc = {r: closest_corners(r) for r in robots}
    movers_i = []
    for r in robots:
        p, q = [o for o in robots if o != r]
        if (cc[p] & cc[q]) - cc[r]:
            movers_i.append(r)
    if movers_i:
        return "Undefined4_4i", [
            (r, towards(snap, r, cc[r])) for r in movers_i
        ]
    movers_ii: dict[Coord, set[Coord]] = {}
    for r in robots:
        p, q = [o for o in robots if o != r]
        for c1 in cc[p]:
            for c2 in cc[q]:
                if c1 != c2 and c1 in cc[r] and c2 in cc[r]:
                    movers_ii.setdefault(r, set()).update({c1, c2})
    if movers_ii:
        return "Undefined4_4ii", [
            (r, towards(snap, r, goals)) for r, goals in movers_ii.items()
        ]
    if all(len(cc[r]) == 1 for r in robots) and len(set().union(*cc.values())) == 3:
        target_of = {r: next(iter(cc[r])) for r in robots}
        for r in robots:
            others = [o for o in robots if o != r]
            c = target_of[r]
            if all(
                c != target_of[o]
                and (c[0] == target_of[o][0] or c[1] == target_of[o][1])
                for o in others
            ):
                return "Undefined4_4iii", [(r, towards(snap, r, {c}))]
    raise ClassificationGap(f"unmatched interior placement {robots}")


def rule(snap: Snapshot) -> Moves:
    return classify_setup(snap)[1]


general3 = protocol_from_rule(rule, "general3")
