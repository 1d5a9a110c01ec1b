"""Five-robot exploration of the 3x3 grid under weak multiplicity.

Every rule-table entry moves exactly one robot (a robot alone on its
node, fixed by every symmetry of the snapshot), so any schedule --
including stale-snapshot ones -- executes the same sequential walk:
robots that are not the designated mover decide Stay, and nothing moves
between the mover's observation and its landing.

The run has three phases, all driven by one lookup table matched up to
grid symmetry:

1. Preparation (no tower): each towerless class walks, one step at a
   time, toward one of five launch classes.  Launch entries send the
   mover onto an occupied neighbour, creating the single tower of the
   run.  Where the snapshot has a nontrivial symmetry the targets form
   a whole orbit and the adversary picks the branch; the branches are
   images of each other, so one table row covers both.
2. Funnel (tower present): the tower never moves again.  Each
   tower-plus-three-singles class walks toward the hub class of its
   tower family (tower on a corner, or tower on a border midpoint).
3. Tour: from the hub, a single walker steps through every node that
   is free at the hub and parks.  Hub-occupied nodes were visited by
   the robots sitting on them, so every run that reaches the hub has
   covered all nine nodes regardless of its history, and the final
   class is quiescent (no table entry).
"""

from .base import Moves, Snapshot, match_table, protocol_from_rule


def _k(singles, towers=frozenset()):
    return (frozenset(singles), frozenset(towers))


# Phase 1: towerless classes walk to a launch class; launch rows (the
# ones whose targets are occupied) climb onto a neighbour to create the
# run's single tower.
PREP_TABLE = {
    _k({(0,0),(0,1),(0,2),(1,0),(1,1)}): [((1,0), {(0,0)})],
    _k({(0,0),(0,1),(0,2),(1,0),(1,2)}): [((0,1), {(1,1)})],
    _k({(0,0),(0,1),(0,2),(1,0),(2,0)}): [((0,0), {(0,1),(1,0)})],
    _k({(0,0),(0,1),(0,2),(1,0),(2,1)}): [((2,1), {(2,0)})],
    _k({(0,0),(0,1),(0,2),(1,0),(2,2)}): [((1,0), {(2,0)})],
    _k({(0,0),(0,1),(0,2),(1,1),(2,0)}): [((1,1), {(1,0)})],
    _k({(0,0),(0,1),(0,2),(1,1),(2,1)}): [((1,1), {(1,0),(1,2)})],
    _k({(0,0),(0,1),(0,2),(2,0),(2,1)}): [((2,1), {(2,2)})],
    _k({(0,0),(0,1),(0,2),(2,0),(2,2)}): [((0,1), {(0,0),(0,2)})],
    _k({(0,0),(0,1),(1,0),(1,1),(1,2)}): [((1,2), {(0,2)})],
    _k({(0,0),(0,1),(1,0),(1,1),(2,2)}): [((2,2), {(1,2),(2,1)})],
    _k({(0,0),(0,1),(1,0),(1,2),(2,1)}): [((0,0), {(0,1),(1,0)})],
    _k({(0,0),(0,1),(1,0),(1,2),(2,2)}): [((2,2), {(2,1)})],
    _k({(0,0),(0,1),(1,1),(1,2),(2,0)}): [((0,0), {(1,0)})],
    _k({(0,0),(0,1),(1,1),(1,2),(2,1)}): [((0,0), {(1,0)})],
    _k({(0,0),(0,1),(1,1),(1,2),(2,2)}): [((1,1), {(1,0),(2,1)})],
    _k({(0,0),(0,1),(1,1),(2,0),(2,1)}): [((1,1), {(1,2)})],
    _k({(0,0),(0,1),(1,1),(2,0),(2,2)}): [((1,1), {(1,0)})],
    _k({(0,0),(0,1),(1,1),(2,1),(2,2)}): [((1,1), {(1,0),(1,2)})],
    _k({(0,0),(0,1),(1,2),(2,0),(2,1)}): [((1,2), {(0,2),(2,2)})],
    _k({(0,0),(0,1),(1,2),(2,0),(2,2)}): [((2,0), {(1,0),(2,1)})],
    _k({(0,0),(0,2),(1,1),(2,0),(2,2)}): [((1,1), {(0,1),(1,0),(1,2),(2,1)})],
    _k({(0,1),(1,0),(1,1),(1,2),(2,1)}): [((1,1), {(0,1),(1,0),(1,2),(2,1)})],
}

# Phase 2+3, tower-on-corner family.  Hub: tower (0,0), singles on
# (1,0),(2,0),(1,1); tour: (1,1) -> (0,1) -> (0,2) -> (1,2) -> (2,2)
# -> (2,1), then quiescent.
CORNER_TOWER_TABLE = {
    _k({(0,0),(0,1),(0,2)}, {(2,0)}): [((0,2), {(1,2)})],
    _k({(0,0),(0,1),(1,1)}, {(0,2)}): [((1,1), {(1,2)})],
    _k({(0,0),(0,1),(1,1)}, {(2,0)}): [((0,0), {(1,0)})],
    _k({(0,0),(0,1),(1,1)}, {(2,2)}): [((0,1), {(0,2)})],
    _k({(0,0),(0,1),(1,2)}, {(0,2)}): [((1,2), {(2,2)})],
    _k({(0,0),(0,1),(1,2)}, {(2,0)}): [((1,2), {(1,1)})],
    _k({(0,0),(0,1),(1,2)}, {(2,2)}): [((0,1), {(1,1)})],
    _k({(0,0),(0,1),(2,0)}, {(0,2)}): [((2,0), {(1,0)})],
    _k({(0,0),(0,1),(2,0)}, {(2,2)}): [((0,0), {(1,0)})],
    _k({(0,0),(0,1),(2,1)}, {(0,2)}): [((2,1), {(2,0)})],
    _k({(0,0),(0,1),(2,1)}, {(2,0)}): [((2,1), {(1,1)})],
    _k({(0,0),(0,1),(2,1)}, {(2,2)}): [((0,1), {(1,1)})],
    _k({(0,0),(0,1),(2,2)}, {(0,2)}): [((2,2), {(2,1)})],
    _k({(0,0),(0,1),(2,2)}, {(2,0)}): [((2,2), {(1,2)})],
    _k({(0,0),(0,2),(1,1)}, {(2,0)}): [((0,2), {(0,1)})],
    _k({(0,0),(0,2),(2,0)}, {(2,2)}): [((0,0), {(0,1),(1,0)})],
    _k({(0,0),(0,2),(2,1)}, {(2,0)}): [((0,2), {(0,1)})],
    _k({(0,0),(1,1),(1,2)}, {(0,2)}): [((1,1), {(1,0)})],
    _k({(0,0),(1,1),(1,2)}, {(2,0)}): [((1,1), {(0,1)})],
    _k({(0,0),(1,1),(1,2)}, {(2,2)}): [((0,0), {(0,1)})],
    _k({(0,0),(1,1),(2,2)}, {(0,2)}): [((1,1), {(1,0),(2,1)})],
    _k({(0,0),(1,2),(2,1)}, {(0,2)}): [((0,0), {(0,1)})],
    _k({(0,0),(1,2),(2,1)}, {(2,2)}): [((0,0), {(0,1),(1,0)})],
    _k({(0,1),(1,0),(1,1)}, {(0,0)}): [((1,1), {(1,2),(2,1)})],
    _k({(0,1),(1,0),(1,1)}, {(0,2)}): [((1,0), {(0,0)})],
    _k({(0,1),(1,0),(1,1)}, {(2,2)}): [((1,1), {(1,2),(2,1)})],
    _k({(0,1),(1,0),(1,2)}, {(0,0)}): [((1,0), {(1,1)})],
    _k({(0,1),(1,0),(1,2)}, {(2,0)}): [((1,2), {(1,1)})],
    _k({(0,1),(1,1),(2,1)}, {(0,0)}): [((2,1), {(2,2)})],
}

# Phase 2+3, tower-on-border-midpoint family.  Hub: tower (1,0),
# singles on the opposite column (0,0),(0,1),(0,2); tour: (0,1) ->
# (1,1) -> (1,2) -> (2,2) -> (2,1) -> (2,0), then quiescent.
EDGE_TOWER_TABLE = {
    _k({(0,0),(0,1),(0,2)}, {(1,0)}): [((0,1), {(1,1)})],
    _k({(0,0),(0,1),(0,2)}, {(2,1)}): [((0,1), {(1,1)})],
    _k({(0,0),(0,1),(1,0)}, {(1,2)}): [((1,0), {(1,1)})],
    _k({(0,0),(0,1),(1,1)}, {(1,0)}): [((1,1), {(1,2)})],
    _k({(0,0),(0,1),(1,1)}, {(1,2)}): [((0,0), {(1,0)})],
    _k({(0,0),(0,1),(1,1)}, {(2,1)}): [((0,0), {(1,0)})],
    _k({(0,0),(0,1),(1,2)}, {(1,0)}): [((1,2), {(0,2)})],
    _k({(0,0),(0,1),(1,2)}, {(2,1)}): [((1,2), {(2,2)})],
    _k({(0,0),(0,1),(2,0)}, {(1,0)}): [((2,0), {(2,1)})],
    _k({(0,0),(0,1),(2,0)}, {(1,2)}): [((2,0), {(2,1)})],
    _k({(0,0),(0,1),(2,0)}, {(2,1)}): [((0,1), {(0,2)})],
    _k({(0,0),(0,1),(2,1)}, {(1,0)}): [((2,1), {(1,1)})],
    _k({(0,0),(0,1),(2,1)}, {(1,2)}): [((2,1), {(2,2)})],
    _k({(0,0),(0,1),(2,2)}, {(1,0)}): [((2,2), {(1,2)})],
    _k({(0,0),(0,1),(2,2)}, {(1,2)}): [((0,1), {(1,1)})],
    _k({(0,0),(0,1),(2,2)}, {(2,1)}): [((0,1), {(1,1)})],
    _k({(0,0),(0,2),(1,1)}, {(0,1)}): [((1,1), {(1,0),(1,2)})],
    _k({(0,0),(0,2),(1,1)}, {(1,0)}): [((1,1), {(1,2)})],
    _k({(0,0),(0,2),(1,1)}, {(2,1)}): [((1,1), {(1,0),(1,2)})],
    _k({(0,0),(0,2),(2,0)}, {(1,2)}): [((2,0), {(2,1)})],
    _k({(0,0),(0,2),(2,1)}, {(0,1)}): [((2,1), {(1,1)})],
    _k({(0,0),(0,2),(2,1)}, {(1,0)}): [((2,1), {(2,0)})],
    _k({(0,0),(1,1),(1,2)}, {(0,1)}): [((1,1), {(1,0)})],
    _k({(0,0),(1,1),(1,2)}, {(1,0)}): [((1,1), {(0,1)})],
    _k({(0,0),(1,1),(1,2)}, {(2,1)}): [((1,2), {(2,2)})],
    _k({(0,0),(1,1),(2,2)}, {(0,1)}): [((1,1), {(1,0)})],
    _k({(0,0),(1,2),(2,1)}, {(0,1)}): [((1,2), {(1,1)})],
    _k({(0,1),(1,0),(1,1)}, {(1,2)}): [((0,1), {(0,2)})],
    _k({(0,1),(1,0),(1,2)}, {(2,1)}): [((0,1), {(0,0),(0,2)})],
    _k({(0,1),(1,1),(2,1)}, {(1,0)}): [((1,1), {(1,2)})],
}

TABLE = PREP_TABLE | CORNER_TOWER_TABLE | EDGE_TOWER_TABLE


def rule(snap: Snapshot) -> Moves:
    if (snap.grid.i, snap.grid.j) != (3, 3):
        return []
    return match_table(snap, TABLE)


five33 = protocol_from_rule(rule, "five33")
