"""Exhaustive state-space verification of exploration protocols.

Builds the scheduler-choice graph from every towerless initial placement,
checks node coverage at every quiescent state, and detects fair
non-terminating executions by strongly-connected-component analysis.

A cycle of non-quiescent states only witnesses non-termination if a fair
scheduler can stay on it forever, i.e. every robot completes a full
look-compute-move (or look-compute-stay) cycle inside the component.
A robot that holds a staged move through the whole component, or that
would be forced to take a state-changing step when activated, can never
be starved by a fair scheduler, so such components are benign.
"""

from __future__ import annotations

import time
from collections import Counter, deque
from dataclasses import dataclass
from itertools import combinations, product
from typing import Callable, Optional

from ..config import Configuration, Mode, decision_orbit, view_of
from ..engine import (
    Activate,
    Decision,
    Look,
    Model,
    MoveAct,
    SchedulerAction,
    orbit_order,
)
from ..grid import Coord, GridDims, automorphisms

ProtocolFn = Callable[..., Decision]

# verifier state: (positions per slot, staged target set per slot, visited)
VState = tuple[tuple[Coord, ...], tuple[Optional[frozenset], ...], frozenset]


class BudgetExceeded(Exception):
    pass


@dataclass(frozen=True, slots=True)
class Counterexample:
    """Replayable failing schedule.

    `actions[:loop_start]` reach the failure; for a lasso, the remaining
    actions form a cycle a fair scheduler can repeat forever.
    """

    kind: str  # "coverage" or "lasso"
    initial: tuple[Coord, ...]
    actions: tuple[SchedulerAction, ...]
    loop_start: Optional[int]

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "initial": [[x, y] for x, y in self.initial],
            "actions": [a.to_json() for a in self.actions],
            "loop_start": self.loop_start,
        }


@dataclass(frozen=True, slots=True)
class InitialVerdict:
    initial: tuple[Coord, ...]
    explored: bool
    terminates_under_fairness: bool

    @property
    def ok(self) -> bool:
        return self.explored and self.terminates_under_fairness


@dataclass(slots=True)
class StateGraph:
    nodes: list[VState]
    edges: list[list[tuple[SchedulerAction, int]]]
    roots: dict[tuple[Coord, ...], int]


@dataclass(slots=True)
class VerificationReport:
    ok: bool
    verdicts: list[InitialVerdict]
    counterexample: Optional[Counterexample]
    stats: dict
    inconclusive: bool = False

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "inconclusive": self.inconclusive,
            "verdicts": [
                {
                    "initial": [[x, y] for x, y in v.initial],
                    "explored": v.explored,
                    "terminates_under_fairness": v.terminates_under_fairness,
                }
                for v in self.verdicts
            ],
            "counterexample": (
                None if self.counterexample is None else self.counterexample.to_json()
            ),
            "stats": self.stats,
        }


class _Space:
    """Successor generation and canonicalization for verifier states."""

    def __init__(
        self,
        grid: GridDims,
        protocol: ProtocolFn,
        model: Model,
        mode: Mode,
        canonicalize: bool,
    ):
        self.grid = grid
        self.protocol = protocol
        self.model = model
        self.mode = mode
        self.all_nodes = frozenset(grid.nodes())
        auts = automorphisms(grid) if canonicalize else automorphisms(grid)[:1]
        self.maps = [{v: f.apply(v) for v in grid.nodes()} for f in auts]
        self._dcache: dict = {}

    def decide(self, robots: tuple[Coord, ...], node: Coord) -> frozenset:
        key = (tuple(sorted(Counter(robots).items())), node)
        hit = self._dcache.get(key)
        if hit is None:
            c = Configuration.of(self.grid, list(robots))
            v = view_of(c, node, self.mode)
            d = self.protocol(v)
            decision_orbit(v, d.targets)
            hit = self._dcache[key] = d.targets
        return hit

    def successors(self, st: VState) -> list[tuple[SchedulerAction, VState]]:
        robots, pends, visited = st
        out: list[tuple[SchedulerAction, VState]] = []
        if self.model == "corda":
            for r, (pos, p) in enumerate(zip(robots, pends)):
                if p is None:
                    tgts = self.decide(robots, pos)
                    if tgts:
                        np = pends[:r] + (tgts,) + pends[r + 1 :]
                        out.append((Look(r), (robots, np, visited)))
                else:
                    for i, t in enumerate(orbit_order(p)):
                        nr = robots[:r] + (t,) + robots[r + 1 :]
                        np = pends[:r] + (None,) + pends[r + 1 :]
                        out.append((MoveAct(r, i), (nr, np, visited | {t})))
            return out
        movers = [
            (r, orbit_order(tgts))
            for r, pos in enumerate(robots)
            if (tgts := self.decide(robots, pos))
        ]
        for mask in range(1, 1 << len(movers)):
            chosen = [movers[i] for i in range(len(movers)) if mask >> i & 1]
            for picks in product(*(range(len(ts)) for _, ts in chosen)):
                nr = list(robots)
                gained = set()
                for (r, ts), pk in zip(chosen, picks):
                    nr[r] = ts[pk]
                    gained.add(ts[pk])
                act = Activate(tuple(r for r, _ in chosen), tuple(picks))
                out.append((act, (tuple(nr), pends, visited | gained)))
        return out

    def is_quiescent(self, st: VState) -> bool:
        robots, pends, _ = st
        if any(p is not None for p in pends):
            return False
        return all(not self.decide(robots, pos) for pos in set(robots))

    def stay_enabled(self, st: VState, r: int) -> bool:
        """Whether robot r can run a no-op full activation cycle at st."""
        robots, pends, _ = st
        if self.model == "corda" and pends[r] is not None:
            return False
        return not self.decide(robots, robots[r])

    def canon_key(self, st: VState):
        robots, pends, visited = st
        best = None
        for m in self.maps:
            slots = sorted(
                (
                    m[p],
                    tuple(sorted(m[t] for t in pd)) if pd is not None else (),
                )
                for p, pd in zip(robots, pends)
            )
            key = (tuple(slots), tuple(sorted(m[v] for v in visited)))
            if best is None or key < best:
                best = key
        return best

    def rep_of(self, key) -> VState:
        slots, visited = key
        robots = tuple(p for p, _ in slots)
        pends = tuple(frozenset(pd) if pd else None for _, pd in slots)
        return (robots, pends, frozenset(visited))


def _tarjan(n: int, succ: Callable[[int], list[int]]) -> list[list[int]]:
    """Iterative Tarjan; returns strongly connected components."""
    index = [0] * n
    low = [0] * n
    on = [False] * n
    comp: list[list[int]] = []
    stack: list[int] = []
    counter = 1
    for root in range(n):
        if index[root]:
            continue
        work = [(root, 0)]
        while work:
            v, pi = work[-1]
            if pi == 0:
                index[v] = low[v] = counter
                counter += 1
                stack.append(v)
                on[v] = True
            recursed = False
            kids = succ(v)
            for i in range(pi, len(kids)):
                w = kids[i]
                if not index[w]:
                    work[-1] = (v, i + 1)
                    work.append((w, 0))
                    recursed = True
                    break
                if on[w]:
                    low[v] = min(low[v], index[w])
            if recursed:
                continue
            work.pop()
            if work:
                low[work[-1][0]] = min(low[work[-1][0]], low[v])
            if low[v] == index[v]:
                c = []
                while True:
                    w = stack.pop()
                    on[w] = False
                    c.append(w)
                    if w == v:
                        break
                comp.append(c)
    return comp


@dataclass(slots=True)
class _Lift:
    """Concrete (slot-identity preserving) expansion of one canonical SCC."""

    states: list[VState]
    edges: list[list[tuple[SchedulerAction, int]]]


def _lift_scc(space: _Space, rep: VState, scc_keys: set) -> _Lift:
    idx = {rep: 0}
    states = [rep]
    edges: list[list[tuple[SchedulerAction, int]]] = [[]]
    queue = deque([0])
    while queue:
        i = queue.popleft()
        for act, ns in space.successors(states[i]):
            if space.canon_key(ns) not in scc_keys:
                continue
            j = idx.get(ns)
            if j is None:
                j = idx[ns] = len(states)
                states.append(ns)
                edges.append([])
                queue.append(j)
            edges[i].append((act, j))
    return _Lift(states, edges)


def _movers_of(act: SchedulerAction) -> tuple[int, ...]:
    if isinstance(act, MoveAct):
        return (act.robot,)
    if isinstance(act, Activate):
        return act.robots
    return ()


def _fair_components(space: _Space, lift: _Lift) -> list[list[int]]:
    """Concrete SCCs of the lift on which a fair schedule can loop forever."""
    comps = _tarjan(len(lift.states), lambda i: [j for _, j in lift.edges[i]])
    k = len(lift.states[0][0])
    bad = []
    for comp in comps:
        cset = set(comp)
        if len(comp) == 1:
            i = comp[0]
            if not any(j == i for _, j in lift.edges[i]):
                continue
        complete = [False] * k
        for i in comp:
            for act, j in lift.edges[i]:
                if j in cset:
                    for r in _movers_of(act):
                        complete[r] = True
            for r in range(k):
                if not complete[r] and space.stay_enabled(lift.states[i], r):
                    complete[r] = True
        if all(complete):
            bad.append(comp)
    return bad


def _graph_path(parents: list[int], target: int) -> list[int]:
    path = [target]
    while parents[path[-1]] >= 0:
        path.append(parents[path[-1]])
    path.reverse()
    return path


def _replay_canonical_path(
    space: _Space, start: VState, key_path: list
) -> tuple[list[SchedulerAction], VState]:
    """Concrete actions realizing a path of canonical keys from start."""
    actions: list[SchedulerAction] = []
    cur = start
    for key in key_path[1:]:
        for act, ns in space.successors(cur):
            if space.canon_key(ns) == key:
                actions.append(act)
                cur = ns
                break
        else:
            raise AssertionError("canonical edge lost under concretization")
    return actions, cur


def _lift_route(lift: _Lift, inside: set, src: int, dst: int) -> list[tuple[SchedulerAction, int]]:
    """Shortest action path src -> dst staying inside the given node set."""
    if src == dst:
        return []
    prev: dict[int, tuple[int, SchedulerAction]] = {src: (-1, None)}
    queue = deque([src])
    while queue:
        i = queue.popleft()
        for act, j in lift.edges[i]:
            if j in inside and j not in prev:
                prev[j] = (i, act)
                if j == dst:
                    queue.clear()
                    break
                queue.append(j)
    route = []
    at = dst
    while at != src:
        i, act = prev[at]
        route.append((act, at))
        at = i
    route.reverse()
    return route


def _build_lasso_loop(space: _Space, lift: _Lift, comp: list[int], entry: int) -> tuple[list[tuple[SchedulerAction, int]], int]:
    """A cycle through the fair component in which every robot completes.

    Returns (actions annotated with lift nodes, anchor lift node); the
    action list starts and ends at the anchor.  Robots whose completion is
    a no-op stay-activation get an explicit no-op action at the anchor.
    """
    cset = set(comp)
    k = len(lift.states[0][0])
    # pick, per robot, a witnessing in-component move edge if one exists
    witness: dict[int, tuple[int, SchedulerAction, int]] = {}
    for i in comp:
        for act, j in lift.edges[i]:
            if j in cset:
                for r in _movers_of(act):
                    witness.setdefault(r, (i, act, j))
    anchor = comp[0]
    segs: list[tuple[SchedulerAction, int]] = []
    cur = anchor
    for r in range(k):
        if r not in witness:
            continue
        i, act, j = witness[r]
        segs.extend(_lift_route(lift, cset, cur, i))
        segs.append((act, j))
        cur = j
    segs.extend(_lift_route(lift, cset, cur, anchor))
    # explicit no-op cycles for robots completing by stay-activation
    st = lift.states[anchor]
    for r in range(k):
        if r not in witness and space.stay_enabled(st, r):
            noop = Look(r) if space.model == "corda" else Activate((r,), (0,))
            segs.append((noop, anchor))
    return segs, anchor


def build_state_graph(
    space: _Space,
    initials: list[tuple[Coord, ...]],
    budget: int,
) -> tuple[StateGraph, list[int], list[int]]:
    """BFS closure of all initials; returns graph, parent pointers, depths."""
    nodes: list[VState] = []
    edges: list[list[tuple[SchedulerAction, int]]] = []
    index: dict = {}
    parents: list[int] = []
    depths: list[int] = []
    roots: dict[tuple[Coord, ...], int] = {}

    def intern(key, parent: int, depth: int) -> int:
        i = index.get(key)
        if i is None:
            if len(nodes) >= budget:
                raise BudgetExceeded
            i = index[key] = len(nodes)
            nodes.append(space.rep_of(key))
            edges.append([])
            parents.append(parent)
            depths.append(depth)
        return i

    queue = deque()
    for pos in initials:
        st: VState = (pos, (None,) * len(pos), frozenset(pos))
        i = intern(space.canon_key(st), -1, 0)
        roots[pos] = i
        queue.append(i)
    while queue:
        i = queue.popleft()
        if edges[i]:
            continue
        for act, ns in space.successors(nodes[i]):
            key = space.canon_key(ns)
            known = key in index
            j = intern(key, i, depths[i] + 1)
            edges[i].append((act, j))
            if not known:
                queue.append(j)
    return StateGraph(nodes, edges, roots), parents, depths


def verify_exhaustive(
    grid: GridDims,
    k: int,
    protocol: ProtocolFn,
    model: Model,
    mode: Mode = "weak",
    canonicalize: bool = True,
    budget: int = 10_000_000,
    initials: Optional[list[tuple[Coord, ...]]] = None,
) -> VerificationReport:
    t0 = time.monotonic()
    space = _Space(grid, protocol, model, mode, canonicalize)
    if initials is None:
        initials = [tuple(c) for c in combinations(grid.nodes(), k)]
    # slot order must match the engine, which indexes robots in sorted
    # position order, so that counterexample actions replay verbatim
    initials = [tuple(sorted(c)) for c in initials]
    try:
        graph, parents, depths = build_state_graph(space, initials, budget)
    except BudgetExceeded:
        return VerificationReport(
            ok=False,
            verdicts=[],
            counterexample=None,
            stats={"states": budget, "budget": budget},
            inconclusive=True,
        )
    n = len(graph.nodes)
    edge_count = sum(len(e) for e in graph.edges)

    bad_cov = [
        i
        for i in range(n)
        if not graph.edges[i] and graph.nodes[i][2] != space.all_nodes
    ]

    comps = _tarjan(n, lambda i: [j for _, j in graph.edges[i]])
    lasso_nodes: list[int] = []
    lasso_comp: Optional[tuple[int, set]] = None
    for comp in comps:
        if len(comp) == 1:
            i = comp[0]
            if not any(j == i for _, j in graph.edges[i]):
                continue
        keys = {space.canon_key(graph.nodes[i]) for i in comp}
        lift = _lift_scc(space, graph.nodes[comp[0]], keys)
        fair = _fair_components(space, lift)
        if fair:
            lasso_nodes.extend(comp)
            if lasso_comp is None:
                lasso_comp = (comp[0], keys)

    # reverse reachability of each failure kind
    radj: list[list[int]] = [[] for _ in range(n)]
    for i, out in enumerate(graph.edges):
        for _, j in out:
            radj[j].append(i)

    def back_closure(seeds: list[int]) -> set:
        seen = set(seeds)
        queue = deque(seeds)
        while queue:
            i = queue.popleft()
            for j in radj[i]:
                if j not in seen:
                    seen.add(j)
                    queue.append(j)
        return seen

    cov_fail = back_closure(bad_cov)
    term_fail = back_closure(lasso_nodes)

    verdicts = [
        InitialVerdict(
            initial=pos,
            explored=graph.roots[pos] not in cov_fail,
            terminates_under_fairness=graph.roots[pos] not in term_fail,
        )
        for pos in initials
    ]
    ok = all(v.ok for v in verdicts)

    cex = None
    if not ok:
        first = next(v for v in verdicts if not v.ok)
        start: VState = (
            first.initial,
            (None,) * len(first.initial),
            frozenset(first.initial),
        )
        if not first.explored:
            target = min(
                (i for i in bad_cov if graph.roots[first.initial] in back_closure([i])),
                key=lambda i: depths[i],
            )
            key_path = [
                space.canon_key(graph.nodes[i])
                for i in _graph_path(parents, target)
            ]
            key_path = _bridge_key_path(space, graph, start, target, key_path)
            actions, _ = _replay_canonical_path(space, start, key_path)
            cex = Counterexample("coverage", first.initial, tuple(actions), None)
        else:
            entry_i, keys = lasso_comp
            key_path = _bridge_key_path(
                space,
                graph,
                start,
                entry_i,
                [space.canon_key(graph.nodes[i]) for i in _graph_path(parents, entry_i)],
            )
            actions, cur = _replay_canonical_path(space, start, key_path)
            lift = _lift_scc(space, cur, keys)
            fair = _fair_components(space, lift)
            # route from the concrete entry (lift node 0) to a fair component
            comp = fair[0]
            pre = _lift_route(lift, set(range(len(lift.states))), 0, comp[0])
            loop, _ = _build_lasso_loop(space, lift, comp, comp[0])
            cex = Counterexample(
                "lasso",
                first.initial,
                tuple(actions) + tuple(a for a, _ in pre) + tuple(a for a, _ in loop),
                len(actions) + len(pre),
            )

    return VerificationReport(
        ok=ok,
        verdicts=verdicts,
        counterexample=cex,
        stats={
            "states": n,
            "edges": edge_count,
            "max_depth": max(depths, default=0),
            "wall_time": round(time.monotonic() - t0, 3),
        },
        inconclusive=False,
    )


def _bridge_key_path(space, graph, start: VState, target: int, key_path: list) -> list:
    """Make sure the canonical path starts at the given initial's key.

    Parent pointers always lead back to some root; when several initials
    share a graph, that root is the one that first discovered the state,
    which is the failing initial itself since discovery is per-root BFS
    order and verdicts re-check reachability.  If the path's head differs
    from the initial's key, find a fresh shortest path from the initial.
    """
    start_key = space.canon_key(start)
    if key_path and key_path[0] == start_key:
        return key_path
    index = {space.canon_key(st): i for i, st in enumerate(graph.nodes)}
    src = index[start_key]
    prev = {src: -1}
    queue = deque([src])
    while queue:
        i = queue.popleft()
        if i == target:
            break
        for _, j in graph.edges[i]:
            if j not in prev:
                prev[j] = i
                queue.append(j)
    path = [target]
    while prev[path[-1]] >= 0:
        path.append(prev[path[-1]])
    path.reverse()
    return [space.canon_key(graph.nodes[i]) for i in path]
