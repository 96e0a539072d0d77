"""Characteristic tensors of configurations and machines, and their inverses.

A configuration becomes a 0-1 tensor with one entry per cell, all sharing the
(state, head) pair.  A machine becomes an order-8 0-1 tensor with one entry
per inactive-cell index combination (successor state parked at slot 0) and one
per active-cell combination (successor given by the extended transition map).
Active entries whose move leaves the window are dropped and reported.
"""

from __future__ import annotations

from typing import NamedTuple

from .errors import ArityMismatch, DimsMismatch, NotCharacteristic
from .machine import Configuration, Machine, extend_delta
from .tensor import Coord, Dims, SparseTensor


def encode_config(config: Configuration, dims: Dims) -> SparseTensor:
    """0-1 tensor with entry (i, tape[i], state, head) = 1 for every cell i."""
    if len(config.tape) != dims.cells:
        raise DimsMismatch(f"tape has {len(config.tape)} cells, dims expect {dims.cells}")
    if not 1 <= config.head <= dims.cells:
        raise DimsMismatch(f"head {config.head} outside 1..{dims.cells}")
    if not 1 <= config.state < dims.states:
        raise DimsMismatch(f"state {config.state} outside 1..{dims.states - 1}")
    for j in config.tape:
        if not 0 <= j < dims.symbols:
            raise DimsMismatch(f"symbol index {j} outside 0..{dims.symbols - 1}")
    entries = {
        ((i, config.tape[i - 1], config.state, config.head),): 1
        for i in range(1, dims.cells + 1)
    }
    return SparseTensor(dims, 0, entries)


def decode_config(a: SparseTensor) -> Configuration:
    """Inverse of :func:`encode_config`; rejects anything not of that shape."""
    if a.upper_count != 0:
        raise ArityMismatch("only configuration tensors (upper count 0) decode")
    cells = a.dims.cells
    if a.nnz != cells:
        raise NotCharacteristic(f"expected {cells} entries, found {a.nnz}")
    symbol_at: dict[int, int] = {}
    state_head: tuple[int, int] | None = None
    for coord, value in a.entries.items():
        if value != 1:
            raise NotCharacteristic(f"entry {coord} has value {value}, not 1")
        i, j, k, l = coord[0]
        if k == 0:
            raise NotCharacteristic("an entry carries the bookkeeping state 0")
        if state_head is None:
            state_head = (k, l)
        elif state_head != (k, l):
            raise NotCharacteristic("entries disagree on (state, head)")
        if i in symbol_at:
            raise NotCharacteristic(f"cell {i} carries two symbols")
        symbol_at[i] = j
    assert state_head is not None
    # nnz == cells with distinct cell indices covers every cell exactly once.
    tape = tuple(symbol_at[i] for i in range(1, cells + 1))
    return Configuration(tape=tape, head=state_head[1], state=state_head[0])


class MachineEncoding(NamedTuple):
    tensor: SparseTensor
    dropped: list[tuple[int, int, int]]  # (i1, j1, k1) of omitted active entries


def encode_machine(machine: Machine, dims: Dims) -> MachineEncoding:
    """Order-8 transition tensor plus the active entries lost at the window edge.

    Entry (i1 j1, k1 l1) -> (i2 j2, k2 l2) is 1 when either
      * the cell is inactive (k1 != 0, i1 != l1) and keeps its symbol while the
        successor state is parked at slot 0 (i2=i1, j2=j1, k2=0, l2=l1), or
      * the cell is active (k1 != 0, i1 = l1) and the extended transition map
        fixes the successor (j2, k2, l2 = l1 + move), with l2 still in window.
    Active combinations whose l2 falls outside 1..cells are reported in
    ``dropped`` instead of being stored.
    """
    if dims.symbols != machine.m + 1:
        raise DimsMismatch(f"dims carry {dims.symbols} symbols, machine has {machine.m + 1}")
    if dims.states != machine.n + 1:
        raise DimsMismatch(f"dims carry {dims.states} state slots, machine needs {machine.n + 1}")
    ext = extend_delta(machine)
    cells = dims.cells
    entries: dict[Coord, int] = {}
    dropped: list[tuple[int, int, int]] = []
    for i1 in range(1, cells + 1):
        for j1 in range(dims.symbols):
            for k1 in range(1, dims.states):
                for l1 in range(1, cells + 1):
                    if l1 != i1:
                        entries[((i1, j1, k1, l1), (i1, j1, 0, l1))] = 1
                j2, k2, move = ext[(j1, k1)]
                l2 = i1 + move
                if 1 <= l2 <= cells:
                    entries[((i1, j1, k1, i1), (i1, j2, k2, l2))] = 1
                else:
                    dropped.append((i1, j1, k1))
    return MachineEncoding(SparseTensor(dims, 1, entries), dropped)


def restrict_k_nonzero(a: SparseTensor) -> SparseTensor:
    """Delete every entry whose state index is 0, keeping all others intact."""
    if a.upper_count != 0:
        raise ArityMismatch("restriction applies to configuration tensors (upper count 0)")
    kept = {coord: value for coord, value in a.entries.items() if coord[0][2] != 0}
    return SparseTensor(a.dims, 0, kept)


def format_dropped(dropped: list[tuple[int, int, int]]) -> str:
    return "\n".join(f"dropped: i={i} j={j} k={k}" for i, j, k in dropped)
