"""Shared machinery for building view-level protocols from move rules.

A move rule works on a snapshot (grid, singles, towers) reconstructed
from a view and returns (mover node, destination set) pairs.  The
wrapper closes the pairs under every grid automorphism fixing the
snapshot, so a robot's decision is automatically well defined up to
symmetry: the observer moves iff its node is a mover, and its decision
orbit is the union of the destination sets assigned to that node.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable

from ..config import View
from ..engine import Decision, STAY, move_to
from ..grid import Automorphism, Coord, GridDims, automorphisms, neighbors

Moves = list[tuple[Coord, Iterable[Coord]]]


@dataclass(frozen=True, slots=True)
class Snapshot:
    """Mode-independent picture of a configuration: who is where."""

    grid: GridDims
    singles: frozenset[Coord]
    towers: frozenset[Coord]

    @property
    def occupied(self) -> frozenset[Coord]:
        return self.singles | self.towers

    def free(self, v: Coord) -> bool:
        return v not in self.singles and v not in self.towers

    def free_neighbors(self, v: Coord) -> list[Coord]:
        return [w for w in neighbors(self.grid, v) if self.free(w)]

    def apply(self, f: Automorphism) -> "Snapshot":
        return Snapshot(
            grid=self.grid,
            singles=frozenset(f(v) for v in self.singles),
            towers=frozenset(f(v) for v in self.towers),
        )


def snapshot_of(view: View) -> Snapshot:
    return Snapshot(grid=view.grid, singles=view.singles(), towers=view.towers())


RuleFn = Callable[[Snapshot], Moves]


def closed_moves(snap: Snapshot, rule: RuleFn) -> dict[Coord, frozenset[Coord]]:
    """Apply a rule and close the result under the snapshot's stabilizer."""
    raw = [(m, frozenset(ts)) for m, ts in rule(snap)]
    out: dict[Coord, set[Coord]] = {}
    for f in automorphisms(snap.grid):
        if snap.apply(f) != snap:
            continue
        for mover, targets in raw:
            out.setdefault(f(mover), set()).update(f(t) for t in targets)
    return {m: frozenset(ts) for m, ts in out.items() if ts}


def protocol_from_rule(rule: RuleFn, name: str) -> Callable[[View], Decision]:
    cache: dict[Snapshot, dict[Coord, frozenset[Coord]]] = {}

    def protocol(view: View) -> Decision:
        snap = snapshot_of(view)
        moves = cache.get(snap)
        if moves is None:
            moves = closed_moves(snap, rule)
            cache[snap] = moves
        targets = moves.get(view.self_node)
        return move_to(targets) if targets else STAY

    protocol.__name__ = name
    return protocol


def towards(
    snap: Snapshot, mover: Coord, goals: Iterable[Coord]
) -> frozenset[Coord]:
    """Free neighbors of mover that start a shortest path to a nearest goal.

    Goals are filtered to those at minimum distance from the mover; a
    neighbor qualifies if it is strictly closer to one of them.
    """
    from ..grid import dist

    goals = list(goals)
    if not goals:
        return frozenset()
    best = min(dist(snap.grid, mover, g) for g in goals)
    nearest = [g for g in goals if dist(snap.grid, mover, g) == best]
    return frozenset(
        w
        for w in snap.free_neighbors(mover)
        if any(dist(snap.grid, w, g) < best for g in nearest)
    )


def match_table(
    snap: Snapshot,
    table: dict[tuple[frozenset[Coord], frozenset[Coord]], Moves],
) -> Moves:
    """Pull rule-table entries back through every matching automorphism.

    Table keys are (singles, towers) in a fixed reference frame; the
    union over all matches keeps the result equivariant by construction.
    """
    out: dict[Coord, set[Coord]] = {}
    matched = False
    for f in automorphisms(snap.grid):
        img = snap.apply(f)
        entry = table.get((img.singles, img.towers))
        if entry is None:
            continue
        matched = True
        inv = f.inverse()
        for mover, targets in entry:
            out.setdefault(inv(mover), set()).update(inv(t) for t in targets)
    if not matched:
        return []
    return [(m, ts) for m, ts in out.items()]
