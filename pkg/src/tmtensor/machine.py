"""Deterministic one-tape Turing machines over a bounded cell window.

Covers the text description format, validation, the extension of the
transition function to the bookkeeping state (slot 0) and to halt states
(made absorbing), and the direct step-by-step simulator that serves as
ground truth for the tensor side.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import NamedTuple, Sequence

from .errors import (
    DuplicateName,
    IncompleteDelta,
    MachineFormatError,
    MissingField,
    ReservedName,
    UnknownToken,
)
from .tensor import Dims

RESERVED_STATE = "q0"
_MOVES = {"L": -1, "R": 1, "S": 0}
_MOVE_NAMES = {-1: "L", 1: "R", 0: "S"}

Rule = tuple[int, int, int]  # (written symbol, next state, head move)


@dataclass(frozen=True)
class Machine:
    """A validated machine: names fix indices (states 1..n, symbols 0..m).

    ``delta`` is total on symbol x non-halt state and defined nowhere else;
    its moves are strictly -1 or +1.  Symbol 0 is the blank.
    """

    states: tuple[str, ...]
    symbols: tuple[str, ...]
    start_state: int
    halt_states: frozenset[int]
    input_symbols: frozenset[int]
    delta: dict[tuple[int, int], Rule]  # keyed (symbol j, state k)

    @property
    def n(self) -> int:
        return len(self.states)

    @property
    def m(self) -> int:
        return len(self.symbols) - 1

    def state_name(self, k: int) -> str:
        return self.states[k - 1]

    def symbol_name(self, j: int) -> str:
        return self.symbols[j]

    def state_number(self, name: str) -> int | None:
        try:
            return self.states.index(name) + 1
        except ValueError:
            return None

    def symbol_number(self, name: str) -> int | None:
        try:
            return self.symbols.index(name)
        except ValueError:
            return None

    def dims(self, cells: int) -> Dims:
        """Index bounds for tensors over a window of ``cells`` cells."""
        return Dims(cells=cells, symbols=self.m + 1, states=self.n + 1)


@dataclass(frozen=True)
class ExtendedDelta:
    """Transition map made total on symbol x state-including-slot-0.

    Slot 0 maps to itself without writing or moving; halt states do the same
    (absorbing), so the map stays consistent past the halt step.  Moves are
    -1, 0, or +1.
    """

    rules: dict[tuple[int, int], Rule]

    def __getitem__(self, jk: tuple[int, int]) -> Rule:
        return self.rules[jk]


def extend_delta(machine: Machine) -> ExtendedDelta:
    rules: dict[tuple[int, int], Rule] = {}
    for j in range(machine.m + 1):
        rules[(j, 0)] = (j, 0, 0)
        for k in range(1, machine.n + 1):
            if k in machine.halt_states:
                rules[(j, k)] = (j, k, 0)
            else:
                rules[(j, k)] = machine.delta[(j, k)]
    return ExtendedDelta(rules)


@dataclass(frozen=True)
class Configuration:
    """Snapshot of a run: window contents (cells 1..N), head cell, state index."""

    tape: tuple[int, ...]
    head: int
    state: int


@dataclass(frozen=True)
class Halted:
    """Step outcome: the configuration's state is a halt state."""


@dataclass(frozen=True)
class BoundaryOverflow:
    """Step outcome: the move would put the head outside the window."""

    target: int


class RunStatus(str, Enum):
    HALTED = "halted"
    OVERFLOW = "overflow"
    STEP_LIMIT = "step-limit"


@dataclass
class Trace:
    configs: list[Configuration]
    status: RunStatus


def oracle_step(
    machine: Machine, config: Configuration
) -> Configuration | Halted | BoundaryOverflow:
    """One direct simulation step; never mutates the input."""
    if config.state in machine.halt_states:
        return Halted()
    symbol, next_state, move = machine.delta[(config.tape[config.head - 1], config.state)]
    target = config.head + move
    if not 1 <= target <= len(config.tape):
        return BoundaryOverflow(target)
    tape = list(config.tape)
    tape[config.head - 1] = symbol
    return Configuration(tuple(tape), target, next_state)


def oracle_run(machine: Machine, initial: Configuration, max_steps: int) -> Trace:
    """Simulate until halt, window overflow, or the step budget runs out."""
    configs = [initial]
    if initial.state in machine.halt_states:
        return Trace(configs, RunStatus.HALTED)
    status = RunStatus.STEP_LIMIT
    for _ in range(max_steps):
        outcome = oracle_step(machine, configs[-1])
        if isinstance(outcome, BoundaryOverflow):
            status = RunStatus.OVERFLOW
            break
        assert isinstance(outcome, Configuration)
        configs.append(outcome)
        if outcome.state in machine.halt_states:
            status = RunStatus.HALTED
            break
    return Trace(configs, status)


class MachineFile(NamedTuple):
    machine: Machine
    tape: tuple[str, ...] | None  # tokens from an optional tape: line


_HEADERS = ("states", "start", "halt", "symbols", "input", "tape")


def parse_document(text: str) -> MachineFile:
    """Parse a full machine document, including its optional tape line."""
    fields: dict[str, list[str]] = {}
    rules: list[tuple[int, list[str]]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, rest = line.partition(":")
        key = key.strip()
        if not sep:
            raise UnknownToken(f"line {lineno}: expected '<field>: ...', got {raw!r}")
        if key == "delta":
            rules.append((lineno, rest.split()))
        elif key in _HEADERS:
            if key in fields:
                raise MachineFormatError(f"line {lineno}: duplicate '{key}:' line")
            fields[key] = rest.split()
        else:
            raise UnknownToken(f"line {lineno}: unknown field {key!r}")

    for required in ("states", "start", "halt", "symbols"):
        if required not in fields:
            raise MissingField(f"missing '{required}:' line")

    state_names = fields["states"]
    if not state_names:
        raise MissingField("'states:' lists no states")
    if RESERVED_STATE in state_names:
        raise ReservedName(f"state name {RESERVED_STATE!r} is reserved")
    if len(set(state_names)) != len(state_names):
        raise DuplicateName("duplicate state name")
    symbol_names = fields["symbols"]
    if not symbol_names:
        raise MissingField("'symbols:' lists no symbols (the first is the blank)")
    if len(set(symbol_names)) != len(symbol_names):
        raise DuplicateName("duplicate symbol name")

    state_of = {name: idx for idx, name in enumerate(state_names, start=1)}
    symbol_of = {name: idx for idx, name in enumerate(symbol_names)}

    def lookup(table: dict[str, int], token: str, kind: str) -> int:
        if token not in table:
            raise UnknownToken(f"unknown {kind} {token!r}")
        return table[token]

    if len(fields["start"]) != 1:
        raise MachineFormatError("'start:' must name exactly one state")
    start = lookup(state_of, fields["start"][0], "state")
    if start != 1:
        raise MachineFormatError("the start state must be listed first in 'states:'")

    halt = frozenset(lookup(state_of, tok, "state") for tok in fields["halt"])

    if "input" in fields:
        input_symbols = frozenset(lookup(symbol_of, tok, "symbol") for tok in fields["input"])
        if 0 in input_symbols:
            raise MachineFormatError("the blank symbol cannot be in the input alphabet")
    else:
        input_symbols = frozenset(range(1, len(symbol_names)))

    delta: dict[tuple[int, int], Rule] = {}
    for lineno, tokens in rules:
        if len(tokens) != 6 or tokens[2] != "->":
            raise UnknownToken(
                f"line {lineno}: rule must read '<state> <symbol> -> <state> <symbol> <L|R|S>'"
            )
        src_state = lookup(state_of, tokens[0], "state")
        src_symbol = lookup(symbol_of, tokens[1], "symbol")
        dst_state = lookup(state_of, tokens[3], "state")
        dst_symbol = lookup(symbol_of, tokens[4], "symbol")
        if tokens[5] not in _MOVES:
            raise UnknownToken(f"line {lineno}: move must be L, R, or S, got {tokens[5]!r}")
        move = _MOVES[tokens[5]]
        if src_state in halt:
            # Documentation row only; must restate the absorbing behaviour.
            if dst_state != src_state or dst_symbol != src_symbol or move != 0:
                raise MachineFormatError(
                    f"line {lineno}: halt-state rows are documentation and must read "
                    f"'{tokens[0]} {tokens[1]} -> {tokens[0]} {tokens[1]} S'"
                )
            continue
        if move == 0:
            raise UnknownToken(f"line {lineno}: move 'S' is only allowed on halt-state rows")
        if (src_symbol, src_state) in delta:
            raise DuplicateName(f"line {lineno}: duplicate rule for ({tokens[0]}, {tokens[1]})")
        delta[(src_symbol, src_state)] = (dst_symbol, dst_state, move)

    for k in range(1, len(state_names) + 1):
        if k in halt:
            continue
        for j in range(len(symbol_names)):
            if (j, k) not in delta:
                raise IncompleteDelta(
                    f"no rule for state {state_names[k - 1]!r} reading {symbol_names[j]!r}"
                )

    machine = Machine(
        states=tuple(state_names),
        symbols=tuple(symbol_names),
        start_state=start,
        halt_states=halt,
        input_symbols=input_symbols,
        delta=delta,
    )
    tape = fields.get("tape")
    if tape is not None:
        _check_tape_tokens(machine, tape)
    return MachineFile(machine, tuple(tape) if tape is not None else None)


def parse_machine(text: str) -> Machine:
    return parse_document(text).machine


def machine_to_text(machine: Machine) -> str:
    """Canonical document form; parsing it back yields an equal Machine."""
    halt_names = " ".join(machine.state_name(k) for k in sorted(machine.halt_states))
    input_names = " ".join(machine.symbol_name(j) for j in sorted(machine.input_symbols))
    lines = [
        "states: " + " ".join(machine.states),
        "start: " + machine.state_name(machine.start_state),
        "halt:" + (" " + halt_names if halt_names else ""),
        "symbols: " + " ".join(machine.symbols),
        "input:" + (" " + input_names if input_names else ""),
    ]
    for j, k in sorted(machine.delta, key=lambda jk: (jk[1], jk[0])):
        j2, k2, move = machine.delta[(j, k)]
        lines.append(
            f"delta: {machine.state_name(k)} {machine.symbol_name(j)} -> "
            f"{machine.state_name(k2)} {machine.symbol_name(j2)} {_MOVE_NAMES[move]}"
        )
    return "\n".join(lines) + "\n"


def _check_tape_tokens(machine: Machine, tokens: Sequence[str]) -> list[int]:
    indices = []
    for token in tokens:
        j = machine.symbol_number(token)
        if j is None:
            raise UnknownToken(f"unknown tape symbol {token!r}")
        if j not in machine.input_symbols:
            raise UnknownToken(f"tape symbol {token!r} is not in the input alphabet")
        indices.append(j)
    return indices


def initial_configuration(machine: Machine, tape_tokens: Sequence[str], cells: int) -> Configuration:
    """Lay the tokens into cells 1..k, blanks after; head on cell 1, start state."""
    indices = _check_tape_tokens(machine, tape_tokens)
    if len(indices) > cells:
        raise MachineFormatError(f"tape needs {len(indices)} cells, window has {cells}")
    tape = tuple(indices) + (0,) * (cells - len(indices))
    return Configuration(tape=tape, head=1, state=machine.start_state)
