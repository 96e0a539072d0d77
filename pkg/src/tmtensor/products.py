"""The two contraction products and the tensor-side evolution loop.

The evolution product contracts a configuration tensor against a transition
tensor and factors exactly into an outer product: a local factor over
(cell, symbol) and a global factor over (state, head).  The composition
product merges two transition tensors into one whose single application
equals two successive applications of the operands; it is computed through
per-upper-sequence local/global marginals of the left operand, never by
expanding the full Einstein sum.  All arithmetic is exact integer arithmetic.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .encoding import decode_config, restrict_k_nonzero
from .errors import ArityMismatch, DimsMismatch, NotCharacteristic, ResourceLimit
from .tensor import Coord, Quad, SparseTensor

DEFAULT_CAP = 10_000_000

PairMap = dict[tuple[int, int], int]


def _check_type1_operands(a: SparseTensor, b: SparseTensor) -> None:
    if a.dims != b.dims:
        raise DimsMismatch(f"operands disagree on dims: {a.dims} vs {b.dims}")
    if a.upper_count != 0:
        raise ArityMismatch("left operand must be a configuration tensor (upper count 0)")
    if b.upper_count < 1:
        raise ArityMismatch("right operand must be a transition tensor (upper count >= 1)")


def _upper_weight(a: SparseTensor, coord: Coord) -> int:
    """Product of the configuration tensor's values over the upper groups."""
    weight = 1
    lookup = a.entries
    for quad in coord[:-1]:
        value = lookup.get((quad,), 0)
        if not value:
            return 0
        weight *= value
    return weight


def local_factor(a: SparseTensor, b: SparseTensor) -> PairMap:
    """Contraction keeping the lower (cell, symbol) pair, summing (state, head)."""
    _check_type1_operands(a, b)
    out: PairMap = {}
    for coord, bv in b.entries.items():
        weight = _upper_weight(a, coord)
        if weight:
            i2, j2, _, _ = coord[-1]
            out[(i2, j2)] = out.get((i2, j2), 0) + weight * bv
    return {pair: value for pair, value in out.items() if value}


def global_factor(a: SparseTensor, b: SparseTensor) -> PairMap:
    """Contraction keeping the lower (state, head) pair, summing (cell, symbol)."""
    _check_type1_operands(a, b)
    out: PairMap = {}
    for coord, bv in b.entries.items():
        weight = _upper_weight(a, coord)
        if weight:
            _, _, k2, l2 = coord[-1]
            out[(k2, l2)] = out.get((k2, l2), 0) + weight * bv
    return {pair: value for pair, value in out.items() if value}


def type1(a: SparseTensor, b: SparseTensor) -> SparseTensor:
    """Evolution product: the outer product of the local and global factors.

    One pass over the transition tensor accumulates both factors; the result
    entry at (i, j, k, l) is local(i, j) * global(k, l).
    """
    _check_type1_operands(a, b)
    local: PairMap = {}
    glob: PairMap = {}
    for coord, bv in b.entries.items():
        weight = _upper_weight(a, coord)
        if not weight:
            continue
        i2, j2, k2, l2 = coord[-1]
        term = weight * bv
        local[(i2, j2)] = local.get((i2, j2), 0) + term
        glob[(k2, l2)] = glob.get((k2, l2), 0) + term
    entries = {
        ((i, j, k, l),): lv * gv
        for (i, j), lv in local.items()
        if lv
        for (k, l), gv in glob.items()
        if gv
    }
    return SparseTensor(a.dims, 0, entries)


def type2(b: SparseTensor, c: SparseTensor, cap: int = DEFAULT_CAP) -> SparseTensor:
    """Composition product of transition tensors with upper counts p and q.

    The result has upper count 2pq: for each of c's upper groups (a "slot"),
    a block of p groups feeds a b-marginal keeping the lower (cell, symbol)
    pair, then a block of p groups feeds a b-marginal keeping the lower
    (state, head) pair; both kept pairs contract against that slot's quad of
    c, and c's lower group survives as the lower group of the result.

    Raises ResourceLimit once the accumulated expansion exceeds ``cap`` terms
    (an upper bound on the stored entries the expansion can produce).
    """
    if b.dims != c.dims:
        raise DimsMismatch(f"operands disagree on dims: {b.dims} vs {c.dims}")
    if b.upper_count < 1 or c.upper_count < 1:
        raise ArityMismatch("both operands must be transition tensors (upper count >= 1)")

    local_margin: dict[tuple[Coord, tuple[int, int]], int] = {}
    global_margin: dict[tuple[Coord, tuple[int, int]], int] = {}
    for coord, value in b.entries.items():
        upper = coord[:-1]
        i, j, k, l = coord[-1]
        key = (upper, (i, j))
        local_margin[key] = local_margin.get(key, 0) + value
        key = (upper, (k, l))
        global_margin[key] = global_margin.get(key, 0) + value

    local_index: dict[tuple[int, int], list[tuple[Coord, int]]] = {}
    for (upper, pair), value in local_margin.items():
        if value:
            local_index.setdefault(pair, []).append((upper, value))
    global_index: dict[tuple[int, int], list[tuple[Coord, int]]] = {}
    for (upper, pair), value in global_margin.items():
        if value:
            global_index.setdefault(pair, []).append((upper, value))

    # Predict the full expansion before accumulating anything, so an
    # over-budget composition aborts without doing the work.
    expansions: list[tuple[Coord, int, list[list[tuple[Coord, int]]]]] = []
    terms = 0
    for coord, cv in c.entries.items():
        choices: list[list[tuple[Coord, int]]] = []
        count = 1
        for i, j, k, l in coord[:-1]:
            loc = local_index.get((i, j))
            glo = global_index.get((k, l))
            if not loc or not glo:
                count = 0
                break
            choices.append(loc)
            choices.append(glo)
            count *= len(loc) * len(glo)
        if not count:
            continue
        terms += count
        expansions.append((coord, cv, choices))
    if terms > cap:
        raise ResourceLimit(f"composition would accumulate {terms} terms, cap is {cap}")

    acc: dict[Coord, int] = {}
    for coord, cv, choices in expansions:
        lower = coord[-1]
        for picks in itertools.product(*choices):
            value = cv
            parts: list[Quad] = []
            for upper, weight in picks:
                value *= weight
                parts.extend(upper)
            parts.append(lower)
            key = tuple(parts)
            acc[key] = acc.get(key, 0) + value
    return SparseTensor._from_dict(b.dims, 2 * b.upper_count * c.upper_count, acc)


def type2_power(b: SparseTensor, e: int, cap: int = DEFAULT_CAP) -> SparseTensor:
    """Left-nested composition power: power 1 is b itself, power e composes
    the previous power with b, so one application advances e steps."""
    if e < 1:
        raise ValueError("exponent must be >= 1")
    result = b
    for _ in range(e - 1):
        result = type2(result, b, cap=cap)
    return result


@dataclass
class Evolution:
    """Tensor trajectory A_1..A_{T+1} plus the first step lost to the window edge.

    ``overflow_step`` is the step t at which a restricted characteristic tensor
    evolved into one with no surviving entries (the active cell's successor was
    dropped at the boundary), or None when that never happens.
    """

    tensors: list[SparseTensor]
    overflow_step: int | None


def evolve(a1: SparseTensor, b: SparseTensor, steps: int) -> Evolution:
    """Iterate the evolution product ``steps`` times, watching for overflow."""
    _check_type1_operands(a1, b)
    tensors = [a1]
    overflow_step: int | None = None
    for t in range(1, steps + 1):
        nxt = type1(tensors[-1], b)
        if overflow_step is None and restrict_k_nonzero(nxt).is_zero:
            try:
                decode_config(restrict_k_nonzero(tensors[-1]))
            except NotCharacteristic:
                pass
            else:
                overflow_step = t
        tensors.append(nxt)
    return Evolution(tensors, overflow_step)
