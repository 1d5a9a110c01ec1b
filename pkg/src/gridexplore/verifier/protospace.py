"""Enumeration of every deterministic protocol on a tiny instance.

A protocol is one orbit-closed decision per view class, with strong
multiplicity detection and unrestricted neighbor targets, i.e. the most
capable robots.  Each candidate is checked ATOM-exhaustively from every
towerless start; an instance is reported impossible only if every single
candidate fails with a concrete witness schedule.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from itertools import chain, combinations, combinations_with_replacement, product
from typing import Optional

from ..config import Configuration, Mode, View, view_of
from ..engine import Decision
from ..grid import Coord, GridDims, automorphisms, neighbors
from .statespace import Counterexample, verify_exhaustive


class CapExceeded(Exception):
    """Instance too large for full protocol enumeration."""


@dataclass(frozen=True, slots=True)
class CandidateOutcome:
    decisions: tuple[tuple[tuple, tuple[Coord, ...]], ...]
    ok: bool
    witness: Optional[Counterexample]


@dataclass(slots=True)
class ImpossibilityReport:
    grid: GridDims
    k: int
    mode: Mode
    class_count: int
    protocol_count: int
    no_correct_protocol: bool
    successes: list[CandidateOutcome]
    failures: list[CandidateOutcome]
    stats: dict

    def to_json(self) -> dict:
        return {
            "grid": str(self.grid),
            "k": self.k,
            "mode": self.mode,
            "class_count": self.class_count,
            "protocol_count": self.protocol_count,
            "no_correct_protocol": self.no_correct_protocol,
            "successes": len(self.successes),
            "failures": len(self.failures),
            "stats": self.stats,
        }


def _view_classes(grid: GridDims, k: int, mode: Mode) -> dict:
    """Representative View per class, over every k-robot placement."""
    classes: dict = {}
    auts = automorphisms(grid)
    for combo in combinations_with_replacement(grid.nodes(), k):
        c = Configuration.of(grid, {v: combo.count(v) for v in set(combo)})
        for node in c.occupied():
            v = view_of(c, node, mode)
            key = v.key()
            if key in classes:
                continue
            classes[key] = min((v.apply(f) for f in auts), key=View._raw_key)
    return classes


def _orbit_unions(rep: View, grid: GridDims) -> list[frozenset]:
    """Every orbit-closed decision at the representative view, stay first."""
    stab = rep.stabilizer()
    seen: set[Coord] = set()
    orbits: list[frozenset] = []
    for nb in neighbors(grid, rep.self_node):
        if nb in seen:
            continue
        orbit = frozenset(f.apply(nb) for f in stab)
        seen |= orbit
        orbits.append(orbit)
    unions = [frozenset()]
    for r in range(1, len(orbits) + 1):
        for pick in combinations(orbits, r):
            unions.append(frozenset(chain.from_iterable(pick)))
    return unions


def _table_protocol(grid: GridDims, table: dict):
    """Protocol closure looking decisions up by view class and pulling
    them back into the observer's own frame."""
    auts = automorphisms(grid)

    def proto(v: View) -> Decision:
        rep_key, targets = table[v.key()]
        f = next(g for g in auts if v.apply(g)._raw_key() == rep_key)
        inv = f.inverse()
        return Decision(frozenset(inv.apply(t) for t in targets))

    return proto


def search_protocol_space(
    grid: GridDims,
    k: int,
    mode: Mode = "strong",
    class_cap: int = 24,
    option_cap: int = 5,
    protocol_cap: int = 500_000,
    state_budget: int = 50_000,
) -> ImpossibilityReport:
    t0 = time.monotonic()
    classes = _view_classes(grid, k, mode)
    if len(classes) > class_cap:
        raise CapExceeded(f"{len(classes)} view classes exceed cap {class_cap}")
    keys = sorted(classes)
    option_sets = []
    for key in keys:
        rep = classes[key]
        opts = _orbit_unions(rep, grid)
        if len(opts) > option_cap:
            raise CapExceeded(f"{len(opts)} options at one view exceed cap {option_cap}")
        option_sets.append([(rep._raw_key(), o) for o in opts])
    total = 1
    for opts in option_sets:
        total *= len(opts)
    if total > protocol_cap:
        raise CapExceeded(f"{total} candidate protocols exceed cap {protocol_cap}")

    successes: list[CandidateOutcome] = []
    failures: list[CandidateOutcome] = []
    for assignment in product(*option_sets):
        table = dict(zip(keys, assignment))
        proto = _table_protocol(grid, table)
        report = verify_exhaustive(
            grid, k, proto, "atom", mode=mode, budget=state_budget
        )
        if report.inconclusive:
            raise CapExceeded("state budget exhausted while checking a candidate")
        decisions = tuple(
            (rep_key, tuple(sorted(tgts))) for rep_key, tgts in assignment
        )
        outcome = CandidateOutcome(decisions, report.ok, report.counterexample)
        if report.ok:
            successes.append(outcome)
        else:
            failures.append(outcome)

    return ImpossibilityReport(
        grid=grid,
        k=k,
        mode=mode,
        class_count=len(classes),
        protocol_count=total,
        no_correct_protocol=not successes,
        successes=successes,
        failures=failures,
        stats={"wall_time": round(time.monotonic() - t0, 3)},
    )
