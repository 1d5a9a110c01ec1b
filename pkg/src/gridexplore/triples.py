"""Line/block classification of towerless 5-robot placements on a 3x3 grid.

The interdistance d is the minimum pairwise robot distance.  A d.block
is a maximal run of robots on one grid line (row or column) whose
consecutive gaps all equal d.  The lines parallel to the elected guide
line carry the (X1, X2, X3) counts, X1 and X3 being the borderlines.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .config import Configuration
from .grid import Coord, dist

Line = tuple[Coord, ...]


class TripleError(ValueError):
    pass


@dataclass(frozen=True, slots=True)
class TripleClass:
    d: int
    blocks: tuple[tuple[Coord, ...], ...]
    guide_lines: tuple[Line, ...]
    orientation: str  # "h", "v", or "hv" when the election ties
    triple: tuple[int, int, int]
    B: int
    Bp: int


def _lines(grid) -> tuple[list[Line], list[Line]]:
    rows = [tuple((x, y) for x in range(grid.j)) for y in range(grid.i)]
    cols = [tuple((x, y) for y in range(grid.i)) for x in range(grid.j)]
    return rows, cols


def _blocks_on_line(line: Line, robots: frozenset[Coord], d: int) -> list[tuple[Coord, ...]]:
    present = [v for v in line if v in robots]
    out: list[list[Coord]] = []
    for v in present:
        if out and dist_1d(out[-1][-1], v) == d:
            out[-1].append(v)
        else:
            out.append([v])
    return [tuple(b) for b in out]


def dist_1d(u: Coord, v: Coord) -> int:
    return abs(u[0] - v[0]) + abs(u[1] - v[1])


def triple_classify(c: Configuration) -> TripleClass:
    grid = c.grid
    if (grid.i, grid.j) != (3, 3):
        raise TripleError(f"classification defined on 3x3 grids, got {grid}")
    if c.k != 5:
        raise TripleError(f"classification defined for 5 robots, got {c.k}")
    if not c.is_towerless():
        raise TripleError("classification requires a towerless placement")

    robots = c.occupied()
    d = min(dist(grid, u, v) for u, v in combinations(robots, 2))

    rows, cols = _lines(grid)
    row_blocks = [b for ln in rows for b in _blocks_on_line(ln, robots, d)]
    col_blocks = [b for ln in cols for b in _blocks_on_line(ln, robots, d)]
    all_blocks = tuple(row_blocks + col_blocks)
    biggest = max(len(b) for b in all_blocks)

    def line_of(block: tuple[Coord, ...], lines: list[Line]) -> Line:
        for ln in lines:
            if all(v in ln for v in block):
                return ln
        raise AssertionError("block off-line")

    big_h = [b for b in row_blocks if len(b) == biggest]
    big_v = [b for b in col_blocks if len(b) == biggest]
    B = len(big_h)
    Bp = len(big_v)

    if big_h and not big_v:
        orientation = "h"
    elif big_v and not big_h:
        orientation = "v"
    else:
        # Both orientations hold a biggest block: prefer the orientation
        # whose biggest block sits on a borderline, then the bigger tally.
        on_border_h = any(all(v[1] in (0, 2) for v in b) for b in big_h)
        on_border_v = any(all(v[0] in (0, 2) for v in b) for b in big_v)
        if on_border_h != on_border_v:
            orientation = "h" if on_border_h else "v"
        elif B != Bp:
            orientation = "h" if B > Bp else "v"
        else:
            orientation = "hv"

    def oriented(orient: str) -> tuple[tuple[int, int, int], tuple[Line, ...]]:
        lines = rows if orient == "h" else cols
        axis = 1 if orient == "h" else 0
        counts = [sum(1 for v in robots if v in ln) for ln in lines]
        bigs = big_h if orient == "h" else big_v
        guide = tuple(
            ln for ln in lines if any(all(v in ln for v in b) for b in bigs)
        )
        # X1 is the borderline containing a biggest block, or the one
        # nearer to one; a residual tie keeps the larger count first.
        def border_score(idx: int) -> tuple:
            coord = 0 if idx == 0 else 2
            near = min(abs(v[axis] - coord) for b in bigs for v in b)
            return (near, -counts[0 if idx == 0 else 2])

        if border_score(0) <= border_score(2):
            triple = (counts[0], counts[1], counts[2])
        else:
            triple = (counts[2], counts[1], counts[0])
        return triple, guide

    if orientation in ("h", "v"):
        triple, guide = oriented(orientation)
    else:
        th, gh = oriented("h")
        tv, gv = oriented("v")
        triple = max(th, tv)
        guide = gh + gv
    return TripleClass(
        d=d,
        blocks=all_blocks,
        guide_lines=guide,
        orientation=orientation,
        triple=triple,
        B=B,
        Bp=Bp,
    )
