"""Operational semantics of the two scheduling models.

ATOM: an activated subset of robots snapshots the current configuration,
computes, and all resolved moves apply simultaneously in one step.

CORDA: Look and Move are separate scheduler actions with arbitrary gaps;
a robot moves using the decision computed from its (possibly outdated)
snapshot.  Compute is folded into Look and a Stay decision returns the
robot directly to idle.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field, replace
from functools import lru_cache
from itertools import product
from typing import Callable, Iterable, Optional, Sequence

from .config import Configuration, Mode, decision_orbit, view_of
from .grid import Coord, GridDims

Model = str  # "atom" | "corda"


class SchedulerContractError(ValueError):
    pass


class InitError(ValueError):
    pass


@dataclass(frozen=True, slots=True)
class Decision:
    """Empty target set means Stay; otherwise an orbit of destinations."""

    targets: frozenset[Coord]

    @property
    def is_stay(self) -> bool:
        return not self.targets


STAY = Decision(frozenset())


def move_to(targets: Iterable[Coord]) -> Decision:
    return Decision(frozenset(targets))


ProtocolFn = Callable[..., Decision]  # View -> Decision


def orbit_order(targets: frozenset[Coord]) -> list[Coord]:
    """Row-major ordering used by tie-break indices."""
    return sorted(targets, key=lambda v: (v[1], v[0]))


@dataclass(frozen=True, slots=True)
class Pending:
    targets: frozenset[Coord]
    snapshot_step: int


@dataclass(frozen=True, slots=True)
class Activate:
    robots: tuple[int, ...]  # sorted ids
    picks: tuple[int, ...]  # tie-break index per activated robot

    def to_json(self) -> dict:
        return {"type": "activate", "robots": list(self.robots), "picks": list(self.picks)}


@dataclass(frozen=True, slots=True)
class Look:
    robot: int

    def to_json(self) -> dict:
        return {"type": "look", "robot": self.robot}


@dataclass(frozen=True, slots=True)
class MoveAct:
    robot: int
    pick: int

    def to_json(self) -> dict:
        return {"type": "move", "robot": self.robot, "pick": self.pick}


SchedulerAction = Activate | Look | MoveAct


def action_from_json(d: dict) -> SchedulerAction:
    t = d.get("type")
    if t == "activate":
        return Activate(tuple(d["robots"]), tuple(d["picks"]))
    if t == "look":
        return Look(d["robot"])
    if t == "move":
        return MoveAct(d["robot"], d["pick"])
    raise SchedulerContractError(f"unknown action {d!r}")


@dataclass(frozen=True, slots=True)
class EngineState:
    grid: GridDims
    model: Model
    mode: Mode
    robots: tuple[Coord, ...]
    pending: tuple[Optional[Pending], ...]
    visited: frozenset[Coord]
    step: int
    protocol: ProtocolFn = field(compare=False, hash=False)

    def config(self) -> Configuration:
        return Configuration.of(self.grid, list(self.robots))

    @property
    def k(self) -> int:
        return len(self.robots)


@dataclass(frozen=True, slots=True)
class TraceEvent:
    step: int
    action: SchedulerAction
    config: Configuration
    visited: frozenset[Coord]
    quiescent: bool

    def to_json(self) -> dict:
        return {
            "step": self.step,
            "action": self.action.to_json(),
            "config": [[x, y, n] for (x, y), n in self.config.counts],
            "visited": [[x, y] for x, y in sorted(self.visited)],
            "quiescent": self.quiescent,
        }


def init(
    grid: GridDims,
    initial: Configuration,
    protocol: ProtocolFn,
    model: Model,
    mode: Mode,
) -> EngineState:
    if not initial.is_towerless():
        raise InitError("initial configuration must be towerless")
    if initial.k > grid.n:
        raise InitError(f"{initial.k} robots exceed {grid.n} nodes")
    robots = tuple(sorted(initial.occupied()))
    return EngineState(
        grid=grid,
        model=model,
        mode=mode,
        robots=robots,
        pending=(None,) * len(robots),
        visited=frozenset(robots),
        step=0,
        protocol=protocol,
    )


@lru_cache(maxsize=500_000)
def _decide_at(
    grid: GridDims,
    robots: tuple[Coord, ...],
    node: Coord,
    mode: Mode,
    protocol: ProtocolFn,
) -> Decision:
    view = view_of(Configuration.of(grid, list(robots)), node, mode)
    d = protocol(view)
    decision_orbit(view, d.targets)
    return d


def _decide(s: EngineState, node: Coord) -> Decision:
    return _decide_at(s.grid, tuple(sorted(s.robots)), node, s.mode, s.protocol)


def enabled_actions(s: EngineState) -> list[SchedulerAction]:
    if s.model == "atom":
        decisions = {v: _decide(s, v) for v in set(s.robots)}
        out: list[SchedulerAction] = []
        k = s.k
        for mask in range(1, 1 << k):
            ids = tuple(r for r in range(k) if mask >> r & 1)
            sizes = [
                max(1, len(decisions[s.robots[r]].targets)) for r in ids
            ]
            for picks in product(*(range(n) for n in sizes)):
                out.append(Activate(ids, picks))
        return out
    out = []
    for r in range(s.k):
        p = s.pending[r]
        if p is None:
            out.append(Look(r))
        else:
            for t in range(len(p.targets)):
                out.append(MoveAct(r, t))
    return out


def is_enabled(s: EngineState, a: SchedulerAction) -> bool:
    if s.model == "atom":
        if not isinstance(a, Activate):
            return False
        if not a.robots or len(a.robots) != len(set(a.robots)):
            return False
        if any(r < 0 or r >= s.k for r in a.robots):
            return False
        if len(a.picks) != len(a.robots):
            return False
        for r, pick in zip(a.robots, a.picks):
            d = _decide(s, s.robots[r])
            if not 0 <= pick < max(1, len(d.targets)):
                return False
        return True
    if isinstance(a, Look):
        return 0 <= a.robot < s.k and s.pending[a.robot] is None
    if isinstance(a, MoveAct):
        if not 0 <= a.robot < s.k:
            return False
        p = s.pending[a.robot]
        return p is not None and 0 <= a.pick < len(p.targets)
    return False


def step(s: EngineState, a: SchedulerAction) -> tuple[EngineState, TraceEvent]:
    if not is_enabled(s, a):
        raise SchedulerContractError(f"action {a} not enabled")
    robots = list(s.robots)
    pending = list(s.pending)
    visited = set(s.visited)
    if isinstance(a, Activate):
        dests: dict[int, Coord] = {}
        for r, pick in zip(a.robots, a.picks):
            d = _decide(s, s.robots[r])
            if not d.is_stay:
                dests[r] = orbit_order(d.targets)[pick]
        for r, v in dests.items():
            robots[r] = v
            visited.add(v)
    elif isinstance(a, Look):
        d = _decide(s, s.robots[a.robot])
        if not d.is_stay:
            pending[a.robot] = Pending(targets=d.targets, snapshot_step=s.step)
    else:
        p = s.pending[a.robot]
        assert p is not None
        v = orbit_order(p.targets)[a.pick]
        robots[a.robot] = v
        visited.add(v)
        pending[a.robot] = None
    ns = replace(
        s,
        robots=tuple(robots),
        pending=tuple(pending),
        visited=frozenset(visited),
        step=s.step + 1,
    )
    ev = TraceEvent(
        step=s.step,
        action=a,
        config=ns.config(),
        visited=ns.visited,
        quiescent=is_quiescent(ns),
    )
    return ns, ev


def is_quiescent(s: EngineState) -> bool:
    if any(p is not None for p in s.pending):
        return False
    return all(_decide(s, v).is_stay for v in set(s.robots))


def explored(s: EngineState) -> bool:
    return s.visited == frozenset(s.grid.nodes())


@dataclass(slots=True)
class Trace:
    header: dict
    events: list[TraceEvent]
    explored: bool
    quiescent: bool
    timeout: bool

    def to_lines(self) -> list[str]:
        lines = [json.dumps(self.header, separators=(",", ":"))]
        lines += [json.dumps(e.to_json(), separators=(",", ":")) for e in self.events]
        return lines

    def write(self, path: str) -> None:
        with open(path, "w") as fh:
            for line in self.to_lines():
                fh.write(line + "\n")


Adversary = Callable[[EngineState, Sequence[SchedulerAction]], SchedulerAction]


def run(
    s: EngineState,
    adversary: Adversary,
    max_steps: int = 10_000,
    header: dict | None = None,
) -> tuple[EngineState, Trace]:
    events: list[TraceEvent] = []
    timeout = False
    while not is_quiescent(s):
        if len(events) >= max_steps:
            timeout = True
            break
        acts = enabled_actions(s)
        a = adversary(s, acts)
        s, ev = step(s, a)
        events.append(ev)
    return s, Trace(
        header=header or {},
        events=events,
        explored=explored(s),
        quiescent=is_quiescent(s),
        timeout=timeout,
    )


def random_adversary(seed: int) -> Adversary:
    rng = random.Random(seed)

    def pick(s: EngineState, acts: Sequence[SchedulerAction]) -> SchedulerAction:
        return acts[rng.randrange(len(acts))]

    return pick


def sequential_adversary(seed: int = 0) -> Adversary:
    """Round-robin: each robot completes its whole cycle before the next."""
    rng = random.Random(seed)
    state = {"turn": 0}

    def pick(s: EngineState, acts: Sequence[SchedulerAction]) -> SchedulerAction:
        if s.model == "corda":
            for r in range(s.k):
                if s.pending[r] is not None:
                    opts = [a for a in acts if isinstance(a, MoveAct) and a.robot == r]
                    return opts[rng.randrange(len(opts))]
            r = state["turn"] % s.k
            state["turn"] += 1
            return Look(r)
        r = state["turn"] % s.k
        state["turn"] += 1
        opts = [a for a in acts if isinstance(a, Activate) and a.robots == (r,)]
        return opts[rng.randrange(len(opts))]

    return pick


def synchronous_adversary(seed: int = 0) -> Adversary:
    """All robots look, then all pending robots move, in rounds."""
    rng = random.Random(seed)
    state = {"looked": set()}

    def pick(s: EngineState, acts: Sequence[SchedulerAction]) -> SchedulerAction:
        if s.model == "atom":
            all_ids = tuple(range(s.k))
            opts = [a for a in acts if isinstance(a, Activate) and a.robots == all_ids]
            return opts[rng.randrange(len(opts))]
        looked: set[int] = state["looked"]
        to_look = [r for r in range(s.k) if s.pending[r] is None and r not in looked]
        if to_look:
            looked.add(to_look[0])
            return Look(to_look[0])
        movers = [r for r in range(s.k) if s.pending[r] is not None]
        if movers:
            opts = [a for a in acts if isinstance(a, MoveAct) and a.robot == movers[0]]
            return opts[rng.randrange(len(opts))]
        state["looked"] = set()
        return pick(s, acts)

    return pick


def scripted_adversary(script: Sequence[dict]) -> Adversary:
    actions = [action_from_json(d) for d in script]
    it = iter(actions)

    def pick(s: EngineState, acts: Sequence[SchedulerAction]) -> SchedulerAction:
        try:
            a = next(it)
        except StopIteration:
            raise SchedulerContractError("script exhausted before quiescence")
        if a not in acts and not is_enabled(s, a):
            raise SchedulerContractError(f"scripted action {a} not enabled")
        return a

    return pick
