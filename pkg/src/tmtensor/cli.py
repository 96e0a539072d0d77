"""Command-line frontend: simulate, evolve, verify, compose, assoc.

All results go to stdout as plain text, diagnostics to stderr.  Exit codes:
0 success/PASS, 1 verification FAIL, 2 usage or parse error, 3 resource limit.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .encoding import (
    decode_config,
    encode_config,
    encode_machine,
    format_dropped,
    restrict_k_nonzero,
)
from .errors import MachineFormatError, NotCharacteristic, ResourceLimit, TensorError
from .harness import mixed_assoc_trial, type2_assoc_trial, verify_evolution
from .machine import (
    Configuration,
    Machine,
    RunStatus,
    initial_configuration,
    oracle_run,
    parse_document,
)
from .products import DEFAULT_CAP, evolve, type1, type2_power
from .tensor import Dims


def _config_line(machine: Machine, t: int, config: Configuration) -> str:
    tape = " ".join(machine.symbol_name(j) for j in config.tape)
    return f"t={t} state={machine.state_name(config.state)} head={config.head} tape={tape}"


def _load(args: argparse.Namespace) -> tuple[Machine, list[str]]:
    doc = parse_document(Path(args.machine_file).read_text())
    if args.tape is not None:
        tokens = args.tape.split()
    elif doc.tape is not None:
        tokens = list(doc.tape)
    else:
        tokens = []
    return doc.machine, tokens


def cmd_simulate(args: argparse.Namespace) -> int:
    machine, tokens = _load(args)
    initial = initial_configuration(machine, tokens, args.cells)
    trace = oracle_run(machine, initial, args.steps)
    for t, config in enumerate(trace.configs, start=1):
        print(_config_line(machine, t, config))
    print(f"status={trace.status.value}")
    return 0


def cmd_evolve(args: argparse.Namespace) -> int:
    machine, tokens = _load(args)
    dims = machine.dims(args.cells)
    initial = initial_configuration(machine, tokens, args.cells)
    b, dropped = encode_machine(machine, dims)
    if dropped:
        print(format_dropped(dropped), file=sys.stderr)
    evolution = evolve(encode_config(initial, dims), b, args.steps)

    status = "step-limit"
    for t, a_t in enumerate(evolution.tensors, start=1):
        try:
            config = decode_config(restrict_k_nonzero(a_t))
        except NotCharacteristic:
            print(f"t={t} nnz={a_t.nnz} status=overflow")
            status = "overflow"
            break
        print(_config_line(machine, t, config))
        halted = config.state in machine.halt_states
        print(f"t={t} nnz={a_t.nnz} status={'halted' if halted else 'ok'}")
        if halted:
            status = "halted"
            break
    print(f"status={status}")

    if args.dump_dir is not None:
        dump_dir = Path(args.dump_dir)
        dump_dir.mkdir(parents=True, exist_ok=True)
        (dump_dir / "B.tsv").write_text(b.to_text())
        for t, a_t in enumerate(evolution.tensors, start=1):
            (dump_dir / f"A_{t}.tsv").write_text(a_t.to_text())
    if args.strict and status == "overflow":
        return 1
    return 0


def cmd_verify(args: argparse.Namespace) -> int:
    machine, tokens = _load(args)
    report = verify_evolution(machine, tokens, machine.dims(args.cells), args.steps)
    for line in report.lines():
        print(line)
    return 0 if report.passed else 1


def cmd_compose(args: argparse.Namespace) -> int:
    machine, tokens = _load(args)
    dims = machine.dims(args.cells)
    b, dropped = encode_machine(machine, dims)
    if dropped:
        print(format_dropped(dropped), file=sys.stderr)
    power = type2_power(b, args.power, cap=args.cap)
    print(f"power={args.power} upper={power.upper_count} nnz={power.nnz}")
    if args.tape is None:
        return 0

    # Each application of the composed tensor must advance the simulator
    # `power` steps (absorbing once halted, empty once overflowed).
    initial = initial_configuration(machine, tokens, args.cells)
    trace = oracle_run(machine, initial, args.power * args.steps)
    ok = True
    a = encode_config(initial, dims)
    for application in range(1, args.steps + 1):
        a = type1(a, power)
        restricted = restrict_k_nonzero(a)
        t = 1 + application * args.power
        if trace.status is RunStatus.OVERFLOW and t > len(trace.configs):
            agree = restricted.is_zero
        else:
            expected = trace.configs[min(t, len(trace.configs)) - 1]
            agree = restricted == encode_config(expected, dims)
        print(f"CHECK compose-action step={t - 1} -> {'PASS' if agree else 'FAIL'}")
        ok = ok and agree
    return 0 if ok else 1


def cmd_assoc(args: argparse.Namespace) -> int:
    dims = Dims(cells=args.cells, symbols=args.symbols, states=args.states + 1)
    ok = True
    for offset in range(args.trials):
        seed = args.seed + offset
        result = mixed_assoc_trial(
            dims, args.p, args.q, args.density, seed, cap=args.cap
        )
        print(result.line())
        ok = ok and result.passed
        if args.r is not None:
            report = type2_assoc_trial(
                dims, args.p, args.q, args.r, args.density, seed, cap=args.cap
            )
            for line in report.lines():
                print(line)
            # An entrywise mismatch with its permutation note stays informational.
            ok = ok and report.action_passed
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tmtensor",
        description="Turing machines as exact sparse integer tensors.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    machine_args = argparse.ArgumentParser(add_help=False)
    machine_args.add_argument("machine_file", help="machine description file")
    machine_args.add_argument("--tape", help='initial tape tokens, e.g. "1 1" (overrides the file)')
    machine_args.add_argument("--cells", type=int, default=8, help="window size N (default 8)")

    step_args = argparse.ArgumentParser(add_help=False)
    step_args.add_argument("--steps", type=int, default=20, help="step budget T (default 20)")

    p = sub.add_parser(
        "simulate", parents=[machine_args, step_args], help="print the simulator trace"
    )
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser(
        "evolve", parents=[machine_args, step_args], help="print the decoded tensor trajectory"
    )
    p.add_argument("--dump-dir", help="write A_<t>.tsv and B.tsv dumps here")
    p.add_argument("--strict", action="store_true", help="exit nonzero on window overflow")
    p.set_defaults(func=cmd_evolve)

    p = sub.add_parser(
        "verify",
        parents=[machine_args, step_args],
        help="compare tensor evolution against the simulator",
    )
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser(
        "compose", parents=[machine_args], help="build a composition power and check its action"
    )
    p.add_argument("--power", type=int, default=2, help="composition exponent (default 2)")
    p.add_argument(
        "--steps", type=int, default=1, help="applications to check against the simulator"
    )
    p.add_argument("--cap", type=int, default=DEFAULT_CAP, help="entry budget for composition")
    p.set_defaults(func=cmd_compose)

    p = sub.add_parser("assoc", help="run associativity trials on random tensors")
    p.add_argument("--cells", type=int, default=2, help="window size N (default 2)")
    p.add_argument("--symbols", type=int, default=2, help="symbol count incl. blank (default 2)")
    p.add_argument("--states", type=int, default=1, help="real state count, excl. slot 0 (default 1)")
    p.add_argument("--p", type=int, default=1, help="upper count of the first tensor")
    p.add_argument("--q", type=int, default=1, help="upper count of the second tensor")
    p.add_argument("--r", type=int, help="upper count of the third tensor (enables pure trials)")
    p.add_argument("--trials", type=int, default=20, help="number of seeded trials")
    p.add_argument("--seed", type=int, default=0, help="first seed")
    p.add_argument("--density", type=float, default=0.2, help="nonzero probability per coordinate")
    p.add_argument("--cap", type=int, default=DEFAULT_CAP, help="entry budget for composition")
    p.set_defaults(func=cmd_assoc)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ResourceLimit as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (MachineFormatError, TensorError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
