"""
Block-parallel sweeps over fixed-size subsets of a candidate list.

Each candidate carries its DescentTable vector, so |S(α)| for a subset S is a vector sum and
symmetry is a scan over the rearrangement classes. Subsets are visited in lexicographic
order of their index tuples; a block is every subset sharing the same first index, which is
the unit handed to worker processes and the unit a partial run stops at.
"""

import logging
import operator
import random
from concurrent.futures import ProcessPoolExecutor
from math import comb
from typing import List, NamedTuple, Optional, Sequence, Tuple

from src.errors import BudgetExceededError

logger = logging.getLogger(__name__)

Vector = Tuple[int, ...]
Classes = Tuple[Tuple[int, ...], ...]

DEFAULT_KEEP = 32


class SweepResult(NamedTuple):
    tested: int
    hits: int
    witnesses: List[Tuple[int, ...]]
    complete: bool


def counts_symmetric(counts: Sequence[int], classes: Classes) -> bool:
    for members in classes:
        first = counts[members[0]]
        for mask in members[1:]:
            if counts[mask] != first:
                return False
    return True


def _sweep_block(
    args: Tuple[Tuple[Vector, ...], int, Optional[Vector], int, Classes, Optional[int]]
) -> SweepResult:
    vectors, size, total, first, classes, keep = args
    n_candidates = len(vectors)
    tested = 0
    hits = 0
    witnesses: List[Tuple[int, ...]] = []
    chosen = [first]

    def visit(acc: Vector) -> None:
        nonlocal tested, hits
        tested += 1
        counts = tuple(map(operator.sub, total, acc)) if total is not None else acc
        if counts_symmetric(counts, classes):
            hits += 1
            if keep is None or len(witnesses) < keep:
                witnesses.append(tuple(chosen))

    def walk(start: int, depth: int, acc: Vector) -> None:
        if depth == size:
            visit(acc)
            return
        for index in range(start, n_candidates - (size - depth) + 1):
            chosen.append(index)
            walk(index + 1, depth + 1, tuple(map(operator.add, acc, vectors[index])))
            chosen.pop()

    walk(first + 1, 1, vectors[first])
    return SweepResult(tested, hits, witnesses, True)


def block_sizes(n_candidates: int, size: int) -> List[int]:
    """Number of subsets in each first-index block."""
    return [comb(n_candidates - 1 - first, size - 1) for first in range(n_candidates - size + 1)]


def sweep_subsets(
    vectors: Sequence[Vector],
    size: int,
    classes: Classes,
    total: Optional[Vector] = None,
    budget: int = 10**8,
    allow_partial: bool = False,
    workers: int = 1,
    keep: Optional[int] = DEFAULT_KEEP,
) -> SweepResult:
    """
    Test every ``size``-subset of the candidates for symmetry.

    Args:
        vectors: DescentTable vector of each candidate
        size: Subset size (>= 1)
        classes: Rearrangement classes of the DescentTable
        total: When given, test the complement ``total - subset`` instead of the subset
        budget: Maximum number of subsets to test
        allow_partial: Test whole blocks up to the budget instead of refusing
        workers: Worker processes for the blocks
        keep: Witnesses to keep (None keeps all)

    Returns:
        SweepResult with witnesses as sorted index tuples
    """
    vectors = tuple(tuple(v) for v in vectors)
    n_candidates = len(vectors)
    if size < 1 or size > n_candidates:
        return SweepResult(0, 0, [], True)

    sizes = block_sizes(n_candidates, size)
    required = sum(sizes)
    firsts = list(range(len(sizes)))
    if required > budget:
        if not allow_partial:
            raise BudgetExceededError(required, budget)
        used = 0
        allowed = []
        for first, block in zip(firsts, sizes):
            if used + block > budget:
                break
            used += block
            allowed.append(first)
        logger.warning(
            "⚠ Budget covers %s of %s subsets; sweeping %s of %s blocks",
            f"{used:,}", f"{required:,}", len(allowed), len(firsts),
        )
        firsts = allowed

    tasks = [(vectors, size, total, first, classes, keep) for first in firsts]
    if workers > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=workers) as executor:
            results = list(executor.map(_sweep_block, tasks, chunksize=4))
    else:
        results = [_sweep_block(task) for task in tasks]

    witnesses = sorted(w for r in results for w in r.witnesses)
    if keep is not None:
        witnesses = witnesses[:keep]
    return SweepResult(
        tested=sum(r.tested for r in results),
        hits=sum(r.hits for r in results),
        witnesses=witnesses,
        complete=len(firsts) == len(sizes),
    )


def sample_subsets(
    vectors: Sequence[Vector],
    size: int,
    classes: Classes,
    samples: int,
    seed: int = 0,
    total: Optional[Vector] = None,
    keep: Optional[int] = DEFAULT_KEEP,
) -> SweepResult:
    """Seeded random ``size``-subsets; the result is evidence, never complete.

    Sizes with no subsets give the same empty, complete result as ``sweep_subsets``.
    """
    if size < 1 or size > len(vectors):
        return SweepResult(0, 0, [], True)
    rng = random.Random(seed)
    population = range(len(vectors))
    width = len(vectors[0]) if vectors else 0
    hits = 0
    found = set()
    for _ in range(samples):
        chosen = tuple(sorted(rng.sample(population, size)))
        acc = [0] * width
        for index in chosen:
            for position, bit in enumerate(vectors[index]):
                acc[position] += bit
        counts = [t - a for t, a in zip(total, acc)] if total is not None else acc
        if counts_symmetric(counts, classes):
            hits += 1
            found.add(chosen)
    witnesses = sorted(found)
    if keep is not None:
        witnesses = witnesses[:keep]
    return SweepResult(samples, hits, witnesses, False)
