"""Coordinate-sparse integer tensors indexed by (cell, symbol, state, head) quads.

A tensor with ``upper_count == u`` keys every stored entry by ``u + 1`` quads,
``u`` upper groups followed by one lower group, so its order is ``4 * (u + 1)``.
``u = 0`` gives the order-4 configuration tensors, ``u = 1`` the order-8
transition tensors, and composition products push ``u`` higher.  Scalars are
exact Python integers; zero is never stored.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .errors import ArityMismatch, IndexOutOfRange

Quad = tuple[int, int, int, int]
Coord = tuple[Quad, ...]


@dataclass(frozen=True)
class Dims:
    """Bounds shared by every quad: i, l in 1..cells; j in 0..symbols-1; k in 0..states-1.

    State slot 0 is reserved for the bookkeeping state, so ``states`` counts the
    real states plus one.
    """

    cells: int
    symbols: int
    states: int

    def __post_init__(self) -> None:
        if self.cells < 1:
            raise ValueError("cells must be >= 1")
        if self.symbols < 1:
            raise ValueError("symbols must be >= 1")
        if self.states < 2:
            raise ValueError("states must be >= 2 (slot 0 plus at least one real state)")

    def contains(self, quad: Sequence[int]) -> bool:
        i, j, k, l = quad
        return (
            1 <= i <= self.cells
            and 0 <= j < self.symbols
            and 0 <= k < self.states
            and 1 <= l <= self.cells
        )

    def iter_quads(self) -> Iterator[Quad]:
        """Every quad in lexicographic (i, j, k, l) order."""
        for i in range(1, self.cells + 1):
            for j in range(self.symbols):
                for k in range(self.states):
                    for l in range(1, self.cells + 1):
                        yield (i, j, k, l)

    @property
    def quad_count(self) -> int:
        return self.cells * self.symbols * self.states * self.cells


def _check_coord(dims: Dims, upper_count: int, coord: Sequence[Sequence[int]]) -> Coord:
    """Normalize a coordinate to nested tuples, checking arity and ranges."""
    if len(coord) != upper_count + 1:
        raise ArityMismatch(
            f"coordinate has {len(coord)} quads, tensor needs {upper_count + 1}"
        )
    quads = []
    for group in coord:
        quad = tuple(group)
        if len(quad) != 4:
            raise ArityMismatch(f"index group {quad!r} does not have 4 components")
        if not dims.contains(quad):
            raise IndexOutOfRange(f"quad {quad!r} is outside {dims}")
        quads.append(quad)
    return tuple(quads)


@dataclass(frozen=True)
class SparseTensor:
    """Immutable mapping from coordinates (tuples of quads) to nonzero integers.

    Treat ``entries`` as read-only; construct through :meth:`from_entries`,
    which validates, sums duplicates, and drops zeros.
    """

    dims: Dims
    upper_count: int
    entries: dict[Coord, int]

    @classmethod
    def from_entries(
        cls,
        dims: Dims,
        upper_count: int,
        pairs: Iterable[tuple[Sequence[Sequence[int]], int]],
    ) -> SparseTensor:
        acc: dict[Coord, int] = {}
        for coord, value in pairs:
            if not isinstance(value, int):
                raise TypeError(f"scalar {value!r} is not an exact integer")
            key = _check_coord(dims, upper_count, coord)
            acc[key] = acc.get(key, 0) + value
        return cls(dims, upper_count, {c: v for c, v in acc.items() if v})

    @classmethod
    def zero(cls, dims: Dims, upper_count: int) -> SparseTensor:
        return cls(dims, upper_count, {})

    @classmethod
    def _from_dict(cls, dims: Dims, upper_count: int, mapping: dict[Coord, int]) -> SparseTensor:
        """Internal constructor for coordinates already known to be valid."""
        return cls(dims, upper_count, {c: v for c, v in mapping.items() if v})

    def get(self, coord: Sequence[Sequence[int]]) -> int:
        return self.entries.get(_check_coord(self.dims, self.upper_count, coord), 0)

    @property
    def nnz(self) -> int:
        return len(self.entries)

    @property
    def is_zero(self) -> bool:
        return not self.entries

    @property
    def order(self) -> int:
        return 4 * (self.upper_count + 1)

    def permute_upper(self, perm: Sequence[int]) -> SparseTensor:
        """Reorder upper groups: result group g is the original group perm[g]."""
        if sorted(perm) != list(range(self.upper_count)):
            raise ArityMismatch(f"{perm!r} is not a permutation of the upper groups")
        moved = {
            tuple(coord[g] for g in perm) + (coord[-1],): value
            for coord, value in self.entries.items()
        }
        return SparseTensor(self.dims, self.upper_count, moved)

    def to_text(self) -> str:
        """Line-oriented dump: header, then one sorted `quads : scalar` line per entry."""
        d = self.dims
        lines = [f"dims {d.cells} {d.symbols - 1} {d.states - 1}  upper {self.upper_count}"]
        for coord in sorted(self.entries):
            groups = " | ".join(" ".join(str(c) for c in quad) for quad in coord)
            lines.append(f"{groups} : {self.entries[coord]}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> SparseTensor:
        lines = [line for line in text.splitlines() if line.strip()]
        if not lines:
            raise ValueError("empty tensor dump")
        header = lines[0].split()
        if len(header) != 6 or header[0] != "dims" or header[4] != "upper":
            raise ValueError(f"bad dump header: {lines[0]!r}")
        cells, m, n, upper_count = (int(tok) for tok in (header[1], header[2], header[3], header[5]))
        dims = Dims(cells, m + 1, n + 1)

        def parse_line(line: str) -> tuple[Coord, int]:
            body, _, scalar = line.rpartition(":")
            if not body:
                raise ValueError(f"bad dump line: {line!r}")
            coord = tuple(
                tuple(int(tok) for tok in group.split()) for group in body.split("|")
            )
            return coord, int(scalar)

        return cls.from_entries(dims, upper_count, (parse_line(line) for line in lines[1:]))

    def __repr__(self) -> str:
        d = self.dims
        return (
            f"SparseTensor(cells={d.cells}, symbols={d.symbols}, states={d.states}, "
            f"upper_count={self.upper_count}, nnz={self.nnz})"
        )
