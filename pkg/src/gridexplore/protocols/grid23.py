"""Three-robot exploration of the 2x3 grid.

Towerless: the two long rows split the robots 2/1 or 3/0.  The lone
robot joins the free node of the fuller row; a full row's middle robot
then climbs onto either corner neighbor, creating the tower.  The
remaining single robot crosses to the tower-free row and walks to the
tower's column, ending adjacent to the tower across the grid.
"""

from __future__ import annotations

from ..grid import Coord, dist
from .base import Moves, Snapshot, protocol_from_rule, towards


def _rows(snap: Snapshot) -> tuple[list[Coord], list[Coord]]:
    occ = sorted(snap.singles)
    return [v for v in occ if v[1] == 0], [v for v in occ if v[1] == 1]


def rule(snap: Snapshot) -> Moves:
    grid = snap.grid
    if (grid.i, grid.j) != (2, 3):
        return []
    if snap.towers:
        if len(snap.towers) != 1 or len(snap.singles) != 1:
            return []
        tower = next(iter(snap.towers))
        s = next(iter(snap.singles))
        if s[1] == tower[1]:
            return [(s, {(s[0], 1 - s[1])})]
        if dist(grid, s, tower) == 1:
            return []
        step_x = s[0] + (1 if tower[0] > s[0] else -1)
        return [(s, {(step_x, s[1])})]

    row0, row1 = _rows(snap)
    if len(row0) == 3 or len(row1) == 3:
        y = 0 if len(row0) == 3 else 1
        return [((1, y), {(0, y), (2, y)})]
    full, lone = (row0, row1) if len(row0) == 2 else (row1, row0)
    y = full[0][1]
    free_of_row = next((x, y) for x in range(3) if snap.free((x, y)))
    s = lone[0]
    return [(s, towards(snap, s, [free_of_row]))]


grid23 = protocol_from_rule(rule, "grid23")
