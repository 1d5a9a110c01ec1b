"""Execution semantics: scheduling, equivariance, model relationships."""

import random

import pytest

from gridexplore.config import Configuration
from gridexplore.engine import (
    Activate,
    InitError,
    Look,
    MoveAct,
    SchedulerContractError,
    _decide,
    enabled_actions,
    explored,
    init,
    is_enabled,
    is_quiescent,
    orbit_order,
    random_adversary,
    run,
    scripted_adversary,
    sequential_adversary,
    step,
    synchronous_adversary,
)
from gridexplore.grid import automorphisms, make_grid
from gridexplore.protocols.registry import get_protocol

INSTANCES = [
    ((2, 3), 3),
    ((2, 4), 3),
    ((3, 4), 3),
    ((3, 3), 5),
]


def fresh(dims, k, model, rng):
    g = make_grid(*dims)
    p = get_protocol(g, k)
    initial = Configuration.of(g, rng.sample(g.nodes(), k))
    return init(g, initial, p, model, "weak")


def test_init_requires_towerless():
    g = make_grid(2, 3)
    p = get_protocol(g, 3)
    with pytest.raises(InitError):
        init(g, Configuration.of(g, {(0, 0): 2, (1, 1): 1}), p, "corda", "weak")


def test_enabled_actions_are_enabled_and_others_rejected():
    rng = random.Random(5)
    for model in ("atom", "corda"):
        s = fresh((2, 4), 3, model, rng)
        for _ in range(20):
            acts = enabled_actions(s)
            if not acts:
                break
            for a in acts[:8]:
                assert is_enabled(s, a)
            s, _ = step(s, acts[rng.randrange(len(acts))])
        with pytest.raises(SchedulerContractError):
            step(s, MoveAct(0, 99))


def _perm(f, robots1, robots2):
    return [robots2.index(f.apply(p)) for p in robots1]


def _map_action(a, s1, s2, f, perm):
    if isinstance(a, Look):
        return Look(perm[a.robot])
    if isinstance(a, MoveAct):
        t = orbit_order(s1.pending[a.robot].targets)[a.pick]
        p2 = s2.pending[perm[a.robot]]
        return MoveAct(perm[a.robot], orbit_order(p2.targets).index(f.apply(t)))
    ids, picks = [], []
    for r, pk in zip(a.robots, a.picks):
        d1 = _decide(s1, s1.robots[r])
        r2 = perm[r]
        if d1.is_stay:
            pk2 = 0
        else:
            t = orbit_order(d1.targets)[pk]
            d2 = _decide(s2, s2.robots[r2])
            pk2 = orbit_order(d2.targets).index(f.apply(t))
        ids.append(r2)
        picks.append(pk2)
    return Activate(tuple(ids), tuple(picks))


def test_runs_are_equivariant_under_grid_symmetries():
    rng = random.Random(99)
    for seed in range(1000):
        dims, k = INSTANCES[seed % len(INSTANCES)]
        model = "corda" if seed % 2 else "atom"
        s1 = fresh(dims, k, model, rng)
        f = rng.choice(automorphisms(s1.grid))
        init2 = Configuration.of(s1.grid, [f.apply(p) for p in s1.robots])
        s2 = init(s1.grid, init2, s1.protocol, model, "weak")
        perm = _perm(f, list(s1.robots), list(s2.robots))
        adv = random_adversary(seed)
        for _ in range(40):
            if is_quiescent(s1):
                break
            a1 = adv(s1, enabled_actions(s1))
            a2 = _map_action(a1, s1, s2, f, perm)
            s1, _ = step(s1, a1)
            s2, _ = step(s2, a2)
            assert all(
                s2.robots[perm[i]] == f.apply(s1.robots[i]) for i in range(k)
            )
            assert s2.visited == frozenset(f.apply(v) for v in s1.visited)
        assert is_quiescent(s1) == is_quiescent(s2)
        assert explored(s1) == explored(s2)


def test_corda_look_then_move_equals_atom_singleton():
    """Interleaving-free CORDA (each staged move lands before the next
    look) is indistinguishable from ATOM one-robot activations."""
    rng = random.Random(4242)
    for seed in range(1000):
        dims, k = INSTANCES[seed % len(INSTANCES)]
        boot = random.Random(seed)
        g = make_grid(*dims)
        p = get_protocol(g, k)
        initial = Configuration.of(g, boot.sample(g.nodes(), k))
        sa = init(g, initial, p, "atom", "weak")
        sc = init(g, initial, p, "corda", "weak")
        for t in range(60):
            if is_quiescent(sa):
                break
            r = t % k
            d = _decide(sa, sa.robots[r])
            pick = rng.randrange(max(1, len(d.targets)))
            sa, _ = step(sa, Activate((r,), (pick,)))
            sc, _ = step(sc, Look(r))
            if sc.pending[r] is not None:
                sc, _ = step(sc, MoveAct(r, pick))
            assert sa.robots == sc.robots
            assert sa.visited == sc.visited
        assert is_quiescent(sa) == is_quiescent(sc)


def test_trace_replay_is_bit_exact():
    rng = random.Random(31)
    for seed in range(200):
        dims, k = INSTANCES[seed % len(INSTANCES)]
        model = "corda" if seed % 2 else "atom"
        s = fresh(dims, k, model, rng)
        initial = Configuration.of(s.grid, list(s.robots))
        header = {"seed": seed}
        final, trace = run(s, random_adversary(seed), max_steps=300, header=header)
        script = [e.action.to_json() for e in trace.events]
        s2 = init(s.grid, initial, s.protocol, model, "weak")
        replayed_events = []
        for d in script:
            acts = enabled_actions(s2)
            a = scripted_adversary([d])(s2, acts)
            s2, ev = step(s2, a)
            replayed_events.append(ev)
        from gridexplore.engine import Trace

        trace2 = Trace(
            header=header,
            events=replayed_events,
            explored=explored(s2),
            quiescent=is_quiescent(s2),
            timeout=trace.timeout,
        )
        assert trace2.to_lines() == trace.to_lines()


def test_builtin_adversaries_terminate_grid23():
    g = make_grid(2, 3)
    p = get_protocol(g, 3)
    for mk in (random_adversary, sequential_adversary, synchronous_adversary):
        for seed in range(30):
            initial = Configuration.of(g, random.Random(seed).sample(g.nodes(), 3))
            for model in ("atom", "corda"):
                s = init(g, initial, p, model, "weak")
                _, tr = run(s, mk(seed), max_steps=2000)
                assert tr.explored and tr.quiescent
