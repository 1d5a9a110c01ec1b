"""Exhaustive verifier: verdicts, canonicalization, counterexamples."""

from itertools import combinations

import pytest

from gridexplore.config import OrbitViolation, view_of
from gridexplore.engine import (
    Decision,
    STAY,
    init,
    is_enabled,
    is_quiescent,
    explored,
    step,
)
from gridexplore.grid import make_grid
from gridexplore.protocols.general3 import (
    _explorer_index,
    _frame,
    snake_order,
)
from gridexplore.protocols.base import Snapshot
from gridexplore.protocols.registry import get_protocol, stay
from gridexplore.verifier import verify_exhaustive


def replay(grid, k, protocol, model, cex):
    """Run a counterexample through the engine; returns visited states."""
    from gridexplore.config import Configuration

    s = init(grid, Configuration.of(grid, list(cex.initial)), protocol, model, "weak")
    snapshots = [s]
    for a in cex.actions:
        assert is_enabled(s, a), f"counterexample action {a} not enabled"
        s, _ = step(s, a)
        snapshots.append(s)
    return snapshots


def observable(s):
    return (
        s.robots,
        tuple(None if p is None else p.targets for p in s.pending),
        s.visited,
    )


def test_grid23_passes_both_models():
    g = make_grid(2, 3)
    p = get_protocol(g, 3)
    for model in ("atom", "corda"):
        report = verify_exhaustive(g, 3, p, model)
        assert report.ok and not report.inconclusive
        assert len(report.verdicts) == 20


def test_verdicts_identical_with_and_without_canonicalization():
    g = make_grid(2, 3)
    p = get_protocol(g, 3)
    for model in ("atom", "corda"):
        a = verify_exhaustive(g, 3, p, model, canonicalize=True)
        b = verify_exhaustive(g, 3, p, model, canonicalize=False)
        assert [(v.initial, v.explored, v.terminates_under_fairness) for v in a.verdicts] == [
            (v.initial, v.explored, v.terminates_under_fairness) for v in b.verdicts
        ]
        assert b.stats["states"] >= a.stats["states"]


def test_atom_pass_implies_sequential_corda_pass():
    """Look-then-move-immediately CORDA schedules are ATOM schedules, so
    an ATOM-exhaustive pass transfers to them; spot-check by running the
    sequential adversary on CORDA."""
    import random

    from gridexplore.config import Configuration
    from gridexplore.engine import run, sequential_adversary

    g = make_grid(2, 4)
    p = get_protocol(g, 3)
    assert verify_exhaustive(g, 3, p, "atom").ok
    for seed in range(100):
        initial = Configuration.of(g, random.Random(seed).sample(g.nodes(), 3))
        s = init(g, initial, p, "corda", "weak")
        _, tr = run(s, sequential_adversary(seed), max_steps=3000)
        assert tr.explored and tr.quiescent


def _frame_world(snap):
    frame = _frame(snap)
    if frame is None:
        return None
    origin, ux, uy = frame

    def world(p):
        return (
            origin[0] + p[0] * ux[0] + p[1] * uy[0],
            origin[1] + p[0] * ux[1] + p[1] * uy[1],
        )

    return world


def _sabotage(real, kind):
    """Corrupt the sweep: send the walking robot backwards (ping-pong
    lasso) or park it early (incomplete coverage)."""

    def proto(view):
        snap = Snapshot(
            grid=view.grid, singles=view.singles(), towers=view.towers()
        )
        if snap.towers and len(snap.singles) == 1 and view.label_at(view.self_node) == 1:
            world = _frame_world(snap)
            if world is not None:
                idx = _explorer_index(snap)
                order = snake_order(view.grid)
                if kind == "backward" and idx >= 3:
                    target = frozenset({world(order[idx - 1])})
                    try:
                        from gridexplore.config import decision_orbit

                        decision_orbit(view, target)
                        return Decision(target)
                    except OrbitViolation:
                        pass
                if kind == "park" and idx >= 4:
                    return STAY
        return real(view)

    return proto


def test_sabotaged_sweep_yields_fair_lasso_counterexample():
    g = make_grid(2, 4)
    p = _sabotage(get_protocol(g, 3), "backward")
    report = verify_exhaustive(g, 3, p, "atom")
    assert not report.ok
    cex = report.counterexample
    assert cex is not None and cex.kind == "lasso"
    snaps = replay(g, 3, p, "atom", cex)
    assert observable(snaps[-1]) == observable(snaps[cex.loop_start])
    assert len(snaps) - 1 > cex.loop_start


def test_parked_sweep_yields_coverage_counterexample():
    g = make_grid(2, 4)
    p = _sabotage(get_protocol(g, 3), "park")
    report = verify_exhaustive(g, 3, p, "atom")
    assert not report.ok
    cex = report.counterexample
    assert cex is not None and cex.kind == "coverage"
    final = replay(g, 3, p, "atom", cex)[-1]
    assert is_quiescent(final) and not explored(final)


def test_all_stay_fails_coverage_everywhere():
    g = make_grid(2, 3)
    report = verify_exhaustive(g, 3, stay, "corda")
    assert not report.ok
    assert all(not v.explored and v.terminates_under_fairness for v in report.verdicts)
    assert report.counterexample.kind == "coverage"
    assert report.counterexample.actions == ()


def test_budget_exhaustion_is_inconclusive():
    g = make_grid(2, 3)
    p = get_protocol(g, 3)
    report = verify_exhaustive(g, 3, p, "corda", budget=5)
    assert report.inconclusive and not report.ok


def test_asymmetric_decision_is_rejected_during_verification():
    g = make_grid(3, 3)

    def biased(view):
        if view.self_node == (1, 1):
            return Decision(frozenset({(1, 0)}))
        return STAY

    with pytest.raises(OrbitViolation):
        verify_exhaustive(g, 1, biased, "atom", initials=[((1, 1),)])
