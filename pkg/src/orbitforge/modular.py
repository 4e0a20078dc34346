"""Cycle structure of the map families over Z_M.

Iterating any map on Z_M yields a functional graph: every node has one
out-edge, so the graph is a disjoint union of cycles with trees hanging off
them.  functional_graph measures that shape with three linear passes:

1. build the successor table (vectorized numpy below 2**31, where every
   per-term product stays inside int64; exact big-int Python above);
2. repeatedly peel in-degree-0 nodes; survivors are exactly the cycle
   nodes, and walking them yields the cycle lengths;
3. replay the peel order backwards to get each tail node's distance to its
   cycle (a node is always peeled before its successor).

naive_graph_oracle recomputes the same summary by per-node iteration with
no shared machinery, as an independent witness for small M.
"""

from __future__ import annotations

import multiprocessing
import os
import time
from dataclasses import dataclass
from functools import partial
from pathlib import Path
from typing import Iterable, Iterator, Sequence

import numpy as np

from .maps import PowerMap, QuadMap

__all__ = [
    "FunctionalGraphSummary",
    "ScanRow",
    "CheckpointError",
    "functional_graph",
    "naive_graph_oracle",
    "max_cycle_scan",
    "map_params",
    "read_checkpoint",
]

# above this modulus, residue products no longer fit in int64
_NUMPY_LIMIT = 1 << 31

NAIVE_SOFT_LIMIT = 10_000  # naive_graph_oracle is quadratic; keep M at or below this


@dataclass(frozen=True)
class FunctionalGraphSummary:
    modulus: int
    node_count: int
    cycle_count: int
    cycle_lengths: tuple[int, ...]  # ascending multiset
    max_cycle_length: int
    max_tail_length: int
    nodes_on_cycles: int


@dataclass(frozen=True)
class ScanRow:
    modulus: int
    params: tuple[int, ...]
    summary: FunctionalGraphSummary
    elapsed: float


def _pow_mod_array(x: np.ndarray, e: int, modulus: int) -> np.ndarray:
    result = np.ones_like(x)
    base = x % modulus
    while e:
        if e & 1:
            result = (result * base) % modulus
        base = (base * base) % modulus
        e >>= 1
    return result


def _successor_list(the_map, modulus: int) -> list[int]:
    if modulus < _NUMPY_LIMIT and isinstance(the_map, (PowerMap, QuadMap)):
        x = np.arange(modulus, dtype=np.int64)
        if isinstance(the_map, PowerMap):
            acc = _pow_mod_array(x, the_map.degree, modulus)
            acc = (acc - the_map.shift % modulus) % modulus
        else:
            a, b, c = (v % modulus for v in (the_map.a, the_map.b, the_map.c))
            acc = (a * ((x * x) % modulus)) % modulus
            acc = (acc + b * x) % modulus
            acc = (acc + c) % modulus
        return acc.tolist()
    return [the_map(x) % modulus for x in range(modulus)]


def functional_graph(the_map, modulus: int) -> FunctionalGraphSummary:
    """Measure the functional graph of the_map on Z_modulus."""
    if modulus < 2:
        raise ValueError("modulus must be >= 2")
    succ = _successor_list(the_map, modulus)
    indeg = [0] * modulus
    for y in succ:
        indeg[y] += 1
    # peel nodes nothing maps into; survivors are the cycle nodes
    stack = [x for x in range(modulus) if indeg[x] == 0]
    peel_order: list[int] = []
    while stack:
        x = stack.pop()
        peel_order.append(x)
        y = succ[x]
        indeg[y] -= 1
        if indeg[y] == 0:
            stack.append(y)
    cycle_lengths: list[int] = []
    seen = bytearray(modulus)
    for x in range(modulus):
        if indeg[x] > 0 and not seen[x]:
            length = 0
            y = x
            while not seen[y]:
                seen[y] = 1
                y = succ[y]
                length += 1
            cycle_lengths.append(length)
    cycle_lengths.sort()
    # distance to the cycle: successors are peeled later, so replay backwards
    depth = [0] * modulus
    max_tail = 0
    for x in reversed(peel_order):
        d = depth[succ[x]] + 1
        depth[x] = d
        if d > max_tail:
            max_tail = d
    return FunctionalGraphSummary(
        modulus=modulus,
        node_count=modulus,
        cycle_count=len(cycle_lengths),
        cycle_lengths=tuple(cycle_lengths),
        max_cycle_length=cycle_lengths[-1],
        max_tail_length=max_tail,
        nodes_on_cycles=sum(cycle_lengths),
    )


def naive_graph_oracle(the_map, modulus: int) -> FunctionalGraphSummary:
    """Same summary by independent per-node iteration (<= M steps each).

    Quadratic in the modulus; intended for M up to NAIVE_SOFT_LIMIT.
    """
    if modulus < 2:
        raise ValueError("modulus must be >= 2")
    succ = [the_map(x) % modulus for x in range(modulus)]
    cycles: set[tuple[int, ...]] = set()
    max_tail = 0
    for start in range(modulus):
        order: dict[int, int] = {}
        x = start
        while x not in order:
            order[x] = len(order)
            x = succ[x]
        first = order[x]
        walk = list(order)  # insertion order == visit order
        cycle = walk[first:]
        pivot = cycle.index(min(cycle))
        cycles.add(tuple(cycle[pivot:] + cycle[:pivot]))
        if first > max_tail:
            max_tail = first
    lengths = tuple(sorted(len(c) for c in cycles))
    return FunctionalGraphSummary(
        modulus=modulus,
        node_count=modulus,
        cycle_count=len(lengths),
        cycle_lengths=lengths,
        max_cycle_length=lengths[-1],
        max_tail_length=max_tail,
        nodes_on_cycles=sum(lengths),
    )


# ====================================================================
# scans and checkpoints
# ====================================================================


class CheckpointError(Exception):
    """Checkpoint file unreadable or inconsistent with the requested scan."""


def map_params(the_map) -> tuple[int, ...]:
    """Parameter fields recorded in checkpoint lines for this map."""
    if isinstance(the_map, PowerMap):
        return (the_map.degree, the_map.shift)
    if isinstance(the_map, QuadMap):
        return (the_map.a, the_map.b, the_map.c)
    raise TypeError(f"no checkpoint params for {type(the_map).__name__}")


def read_checkpoint(path, the_map) -> int | None:
    """Largest completed modulus recorded for this map, or None if empty.

    Line format: the map parameters, then modulus, max cycle length and
    cycle count, all space-separated integers.  Any malformed line or a
    parameter mismatch raises CheckpointError.
    """
    params = map_params(the_map)
    width = len(params) + 3
    last = None
    for lineno, line in enumerate(Path(path).read_text().splitlines(), start=1):
        if not line.strip():
            continue
        try:
            fields = tuple(int(f) for f in line.split())
        except ValueError as exc:
            raise CheckpointError(f"{path}:{lineno}: not an integer record") from exc
        if len(fields) != width:
            raise CheckpointError(f"{path}:{lineno}: expected {width} fields")
        if fields[: len(params)] != params:
            raise CheckpointError(
                f"{path}:{lineno}: record is for map parameters "
                f"{fields[:len(params)]}, scan is {params}"
            )
        modulus = fields[len(params)]
        if last is not None and modulus <= last:
            raise CheckpointError(f"{path}:{lineno}: moduli out of order")
        last = modulus
    return last


def _checkpoint_line(params: tuple[int, ...], summary: FunctionalGraphSummary) -> str:
    fields = (*params, summary.modulus, summary.max_cycle_length, summary.cycle_count)
    return " ".join(str(f) for f in fields) + "\n"


def _scan_one(the_map, modulus: int) -> ScanRow:
    started = time.perf_counter()
    summary = functional_graph(the_map, modulus)
    return ScanRow(modulus, map_params(the_map), summary, time.perf_counter() - started)


def max_cycle_scan(
    the_map,
    moduli: Iterable[int],
    *,
    workers: int = 1,
    checkpoint_path: str | os.PathLike | None = None,
) -> Iterator[ScanRow]:
    """Yield one ScanRow per modulus, in ascending modulus order.

    With a checkpoint file, moduli at or below the last recorded one are
    skipped and each fresh completion is appended, so an interrupted scan
    resumes where it stopped.  Worker processes split the moduli; results
    are still yielded (and checkpointed) in order.
    """
    moduli = sorted(set(moduli))
    if any(m < 2 for m in moduli):
        raise ValueError("moduli must be >= 2")
    done = None
    if checkpoint_path is not None and os.path.exists(checkpoint_path):
        done = read_checkpoint(checkpoint_path, the_map)
    todo = [m for m in moduli if done is None or m > done]
    if not todo:
        return
    params = map_params(the_map)
    sink = open(checkpoint_path, "a", encoding="ascii") if checkpoint_path else None
    work = partial(_scan_one, the_map)
    try:
        if workers > 1 and len(todo) > 1:
            chunk = max(1, len(todo) // (workers * 8))
            with multiprocessing.Pool(workers) as pool:
                for row in pool.imap(work, todo, chunksize=chunk):
                    if sink:
                        sink.write(_checkpoint_line(params, row.summary))
                        sink.flush()
                    yield row
        else:
            for modulus in todo:
                row = work(modulus)
                if sink:
                    sink.write(_checkpoint_line(params, row.summary))
                    sink.flush()
                yield row
    finally:
        if sink:
            sink.close()
