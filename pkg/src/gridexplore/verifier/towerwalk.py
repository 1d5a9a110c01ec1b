"""Bound on exploration progress by a lone robot next to a frozen tower.

Models one mobile robot walking on the grid while a two-robot tower sits
immobile.  A walk is cut off as soon as the (tower, robot) placement
repeats an indistinguishability class: an oblivious robot cannot tell
two such placements apart, so an adversary can loop any longer walk.
The exhaustive search below maximizes, over every start placement and
every class-simple walk, the number of nodes visited beyond the start.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

from ..grid import Coord, GridDims, automorphisms, neighbors


@dataclass(frozen=True, slots=True)
class WalkBoundResult:
    max_new_visited: int
    witness_walk: tuple[Coord, ...]
    witness_tower: Coord
    class_count: int
    post_repetition_max: int

    def to_json(self) -> dict:
        return {
            "max_new_visited": self.max_new_visited,
            "witness_walk": [[x, y] for x, y in self.witness_walk],
            "witness_tower": list(self.witness_tower),
            "class_count": self.class_count,
            "post_repetition_max": self.post_repetition_max,
        }


def tower_walk_bound(
    grid: GridDims,
    allowed: Optional[Callable[[Coord, Coord], bool]] = None,
) -> WalkBoundResult:
    """Exact maximum of newly visited nodes over class-simple walks.

    `allowed(src, dst)` optionally restricts the robot's moves further;
    restricting moves can only lower the maximum.
    """
    auts = automorphisms(grid)
    nodes = grid.nodes()

    def cls(t: Coord, r: Coord):
        return min((f.apply(t), f.apply(r)) for f in auts)

    placements = {(t, r) for t in nodes for r in nodes if t != r}
    class_count = len({cls(t, r) for t, r in placements})

    best_new = -1
    best_walk: tuple[Coord, ...] = ()
    best_tower: Coord = nodes[0]
    post_rep = 0

    starts = {}
    for t, r in placements:
        starts.setdefault(cls(t, r), (t, r))

    for t, r0 in starts.values():
        # every node the robot can ever reach, ignoring class cutoffs,
        # bounds what any relaxed reading of the walk could visit
        frontier = [r0]
        reach = {r0}
        while frontier:
            v = frontier.pop()
            for nb in neighbors(grid, v):
                if nb != t and nb not in reach:
                    if allowed is None or allowed(v, nb):
                        reach.add(nb)
                        frontier.append(nb)
        post_rep = max(post_rep, len(reach - {r0}))

        stack = [(r0, frozenset(), frozenset([cls(t, r0)]), (r0,))]
        while stack:
            r, new, seen, walk = stack.pop()
            if len(new) > best_new:
                best_new = len(new)
                best_walk = walk
                best_tower = t
            for nb in neighbors(grid, r):
                if nb == t:
                    continue
                if allowed is not None and not allowed(r, nb):
                    continue
                c = cls(t, nb)
                if c in seen:
                    continue
                gained = new if nb == r0 else new | {nb}
                stack.append((nb, gained, seen | {c}, walk + (nb,)))

    return WalkBoundResult(
        max_new_visited=best_new,
        witness_walk=best_walk,
        witness_tower=best_tower,
        class_count=class_count,
        post_repetition_max=post_rep,
    )
