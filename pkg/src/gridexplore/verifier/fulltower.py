"""Case analysis of a tower holding every robot on the (3,3) grid.

With all k robots stacked on one node they share a single view, so any
protocol decision is an orbit of the tower node's neighbors.  The report
works out, per placement class of the tower node, the destination orbits
and whether an adversary picking within an orbit can always steer the
stack back to a placement indistinguishable from where it came, which
pins the number of new nodes any correct protocol can claim from there.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from ..grid import Automorphism, Coord, GridDims, automorphisms, degree, neighbors


@dataclass(frozen=True, slots=True)
class PlacementReport:
    name: str
    node: Coord
    orbits: tuple[frozenset, ...]
    single_orbit: bool
    adversary_can_undo: bool
    forced_orbit: Optional[frozenset]
    new_nodes_claimable: int

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "node": list(self.node),
            "orbits": [sorted(map(list, o)) for o in self.orbits],
            "single_orbit": self.single_orbit,
            "adversary_can_undo": self.adversary_can_undo,
            "forced_orbit": (
                None if self.forced_orbit is None else sorted(map(list, self.forced_orbit))
            ),
            "new_nodes_claimable": self.new_nodes_claimable,
        }


@dataclass(frozen=True, slots=True)
class FullTowerReport:
    k: int
    placements: tuple[PlacementReport, ...]
    max_new_nodes: int

    def by_name(self, name: str) -> PlacementReport:
        return next(p for p in self.placements if p.name == name)

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "placements": [p.to_json() for p in self.placements],
            "max_new_nodes": self.max_new_nodes,
        }


def _node_stabilizer(grid: GridDims, v: Coord) -> list[Automorphism]:
    return [f for f in automorphisms(grid) if f.apply(v) == v]


def _orbits(grid: GridDims, around: Coord, of: list[Coord]) -> list[frozenset]:
    stab = _node_stabilizer(grid, around)
    seen: set[Coord] = set()
    out: list[frozenset] = []
    for v in of:
        if v in seen:
            continue
        orbit = frozenset(f.apply(v) for f in stab)
        seen |= orbit
        out.append(orbit)
    return out


def _node_class(grid: GridDims, v: Coord) -> Coord:
    return min(f.apply(v) for f in automorphisms(grid))


def _can_return(grid: GridDims, src: Coord, dst: Coord) -> bool:
    """After the stack moves src -> dst, every way the protocol lets it
    leave dst again includes a destination indistinguishable from src,
    so the adversary can always restore the placement class it left."""
    src_class = _node_class(grid, src)
    back = next(
        o for o in _orbits(grid, dst, neighbors(grid, dst)) if src in o
    )
    return all(_node_class(grid, u) == src_class for u in back)


def _claimable(grid: GridDims, node: Coord, seen_classes: frozenset) -> int:
    """New nodes a correct protocol can force from a full tower at `node`.

    Moving into a multi-node orbit hands the adversary a symmetric choice
    plus a way back, so any such attempt loops; only singleton orbits are
    deterministic progress, and they chain until placements repeat."""
    best = 0
    for orbit in _orbits(grid, node, neighbors(grid, node)):
        if len(orbit) != 1:
            continue
        (t,) = orbit
        c = _node_class(grid, t)
        if c in seen_classes:
            continue
        best = max(best, 1 + _claimable(grid, t, seen_classes | {c}))
    return best


def full_tower_analysis(grid: GridDims, k: int) -> FullTowerReport:
    if k < 2:
        raise ValueError("a tower needs at least 2 robots")
    names = {2: "corner", 3: "border-middle", 4: "center"}
    reps: dict[str, Coord] = {}
    for v in grid.nodes():
        name = names.get(degree(grid, v))
        if name is not None and name not in reps:
            reps[name] = v
    placements = []
    for name, node in sorted(reps.items()):
        orbits = tuple(_orbits(grid, node, neighbors(grid, node)))
        single = len(orbits) == 1
        undo = all(_can_return(grid, node, t) for o in orbits for t in o)
        forced = next((o for o in orbits if len(o) == 1), None)
        placements.append(
            PlacementReport(
                name=name,
                node=node,
                orbits=orbits,
                single_orbit=single,
                adversary_can_undo=undo,
                forced_orbit=forced,
                new_nodes_claimable=_claimable(
                    grid, node, frozenset([_node_class(grid, node)])
                ),
            )
        )
    return FullTowerReport(
        k=k,
        placements=tuple(placements),
        max_new_nodes=max(p.new_nodes_claimable for p in placements),
    )
