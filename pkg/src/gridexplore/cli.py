"""Command-line entry points: simulate, verify, run oracles, serve.

Exit codes are part of the contract:
  run     0 explored and quiescent, 1 otherwise, 2 bad instance/config
  verify  0 pass, 1 counterexample found, 3 inconclusive (budget)
  oracle  0 certificate written, 3 enumeration cap exceeded
"""

from __future__ import annotations

import argparse
import json
import random
import sys

from .config import ConfigSyntaxError, format_config, parse_config
from .engine import (
    InitError,
    SchedulerContractError,
    init,
    random_adversary,
    run,
    scripted_adversary,
    sequential_adversary,
    synchronous_adversary,
)
from .grid import GridDims, InvalidDimension, parse_grid
from .protocols.registry import UnsupportedInstance, get_protocol, protocol_names
from .verifier import (
    full_tower_analysis,
    search_protocol_space,
    tower_walk_bound,
    verify_exhaustive,
)
from .verifier.protospace import CapExceeded


def trace_header(
    grid: GridDims, k: int, protocol: str | None, model: str, mode: str, initial: str
) -> dict:
    """Shared by the CLI and the session service so that traces of the
    same schedule compare byte-for-byte."""
    return {
        "grid": str(grid),
        "k": k,
        "protocol": protocol or "auto",
        "model": model,
        "mode": mode,
        "initial": initial,
    }


def _adversary(kind: str, seed: int):
    if kind == "random":
        return random_adversary(seed)
    if kind == "sequential":
        return sequential_adversary(seed)
    if kind == "synchronous":
        return synchronous_adversary(seed)
    if kind.startswith("script:"):
        with open(kind[len("script:") :]) as fh:
            script = [json.loads(line) for line in fh if line.strip()]
        return scripted_adversary(script)
    raise ValueError(f"unknown adversary {kind!r}")


def _sample_initial(grid: GridDims, k: int, seed: int):
    rng = random.Random(seed)
    from .config import Configuration

    return Configuration.of(grid, rng.sample(grid.nodes(), k))


def cmd_run(args) -> int:
    try:
        grid = parse_grid(args.grid)
        protocol = get_protocol(grid, args.k, args.protocol)
        if args.initial is not None:
            initial = parse_config(grid, args.initial)
        else:
            initial = _sample_initial(grid, args.k, args.seed)
        state = init(grid, initial, protocol, args.model, args.mode)
    except (
        InvalidDimension,
        UnsupportedInstance,
        ConfigSyntaxError,
        InitError,
        ValueError,
    ) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    header = trace_header(
        grid, args.k, args.protocol, args.model, args.mode, format_config(initial)
    )
    try:
        adversary = _adversary(args.adversary, args.seed)
        final, trace = run(state, adversary, max_steps=args.max_steps, header=header)
    except (SchedulerContractError, OSError, json.JSONDecodeError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    if args.trace:
        trace.write(args.trace)
    n = grid.n
    print(
        f"explored {len(final.visited)}/{n}"
        f" quiescent={trace.quiescent} steps={len(trace.events)}"
        + (" TIMEOUT" if trace.timeout else "")
    )
    return 0 if trace.explored and trace.quiescent else 1


def cmd_verify(args) -> int:
    try:
        grid = parse_grid(args.grid)
        protocol = get_protocol(grid, args.k, args.protocol)
    except (InvalidDimension, UnsupportedInstance, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    report = verify_exhaustive(
        grid, args.k, protocol, args.model, mode=args.mode, budget=args.budget
    )
    if args.report:
        with open(args.report, "w") as fh:
            json.dump(report.to_json(), fh, indent=2)
    if report.inconclusive:
        print(f"inconclusive: budget of {args.budget} states exhausted")
        return 3
    bad = [v for v in report.verdicts if not v.ok]
    print(
        f"{len(report.verdicts) - len(bad)}/{len(report.verdicts)} initials pass"
        f" states={report.stats['states']} wall={report.stats['wall_time']}s"
    )
    if bad:
        cex = report.counterexample
        print(f"counterexample ({cex.kind}) from initial {list(cex.initial)}:")
        for i, a in enumerate(cex.actions):
            marker = " <- loop" if cex.loop_start is not None and i == cex.loop_start else ""
            print(f"  {json.dumps(a.to_json(), separators=(',', ':'))}{marker}")
        return 1
    return 0


def _write_certificate(path: str | None, payload: dict) -> None:
    text = json.dumps(payload, indent=2)
    if path:
        with open(path, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def cmd_oracle(args) -> int:
    if args.oracle == "tower-walk":
        grid = parse_grid(args.grid)
        result = tower_walk_bound(grid)
        _write_certificate(
            args.out,
            {
                "command": f"gridexplore oracle tower-walk --grid {args.grid}",
                **result.to_json(),
            },
        )
        return 0
    if args.oracle == "full-tower":
        grid = parse_grid(args.grid)
        report = full_tower_analysis(grid, args.k)
        _write_certificate(
            args.out,
            {
                "command": f"gridexplore oracle full-tower --grid {args.grid} --k {args.k}",
                **report.to_json(),
            },
        )
        return 0
    if args.oracle == "impossibility":
        grid = parse_grid(args.grid)
        try:
            report = search_protocol_space(grid, args.k)
        except CapExceeded as e:
            print(f"cap exceeded: {e}", file=sys.stderr)
            return 3
        _write_certificate(
            args.out,
            {
                "command": f"gridexplore oracle impossibility --grid {args.grid} --k {args.k}",
                **report.to_json(),
            },
        )
        return 0
    raise AssertionError(args.oracle)


def cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    app = create_app(static_dir=args.static)
    uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="gridexplore")
    sub = p.add_subparsers(dest="command", required=True)

    pr = sub.add_parser("run", help="simulate one adversarial execution")
    pr.add_argument("--grid", required=True)
    pr.add_argument("--protocol", choices=protocol_names(), default=None)
    pr.add_argument("--k", type=int, required=True)
    pr.add_argument("--initial", default=None, help='robot placement "x,y;x,y;..."')
    pr.add_argument("--model", choices=["atom", "corda"], default="corda")
    pr.add_argument("--mode", choices=["weak", "strong"], default="weak")
    pr.add_argument(
        "--adversary",
        default="random",
        help="random | sequential | synchronous | script:FILE",
    )
    pr.add_argument("--seed", type=int, default=0)
    pr.add_argument("--max-steps", type=int, default=10_000)
    pr.add_argument("--trace", default=None, help="write NDJSON trace here")
    pr.set_defaults(fn=cmd_run)

    pv = sub.add_parser("verify", help="exhaustive verification over all initials")
    pv.add_argument("--grid", required=True)
    pv.add_argument("--protocol", choices=protocol_names(), default=None)
    pv.add_argument("--k", type=int, required=True)
    pv.add_argument("--model", choices=["atom", "corda"], default="corda")
    pv.add_argument("--mode", choices=["weak", "strong"], default="weak")
    pv.add_argument("--budget", type=int, default=10_000_000)
    pv.add_argument("--report", default=None, help="write JSON report here")
    pv.set_defaults(fn=cmd_verify)

    po = sub.add_parser("oracle", help="derive certified bounds")
    osub = po.add_subparsers(dest="oracle", required=True)
    ow = osub.add_parser("tower-walk")
    ow.add_argument("--grid", default="3x3")
    ow.add_argument("--out", default=None)
    of = osub.add_parser("full-tower")
    of.add_argument("--grid", default="3x3")
    of.add_argument("--k", type=int, required=True)
    of.add_argument("--out", default=None)
    oi = osub.add_parser("impossibility")
    oi.add_argument("--grid", required=True)
    oi.add_argument("--k", type=int, required=True)
    oi.add_argument("--out", default=None)
    po.set_defaults(fn=cmd_oracle)

    ps = sub.add_parser("serve", help="HTTP session service")
    ps.add_argument("--port", type=int, default=8000)
    ps.add_argument("--host", default="127.0.0.1")
    ps.add_argument("--static", default=None, help="serve this directory at /")
    ps.set_defaults(fn=cmd_serve)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.fn(args)


if __name__ == "__main__":
    sys.exit(main())
