"""
Compositions and partitions of n, the composition/subset bijection, refinement,
rearrangement equivalence and dominance order.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import accumulate
from types import MappingProxyType
from typing import AbstractSet, Dict, Iterable, Mapping, Tuple

from src.errors import BudgetExceededError, DegreeMismatchError, PreconditionError

DEFAULT_COMPOSITION_CAP = 20


class Composition(tuple):
    """Sequence of positive integers; ``n`` is their sum."""

    __slots__ = ()

    def __new__(cls, parts: Iterable[int]) -> "Composition":
        values = tuple(int(p) for p in parts)
        if not values:
            raise ValueError("a composition needs at least one part")
        if any(p < 1 for p in values):
            raise ValueError(f"composition parts must be positive: {values}")
        return super().__new__(cls, values)

    @property
    def n(self) -> int:
        return sum(self)

    def __repr__(self) -> str:
        return format_composition(self)


class Partition(Composition):
    """Composition whose parts are non-increasing."""

    __slots__ = ()

    def __new__(cls, parts: Iterable[int]) -> "Partition":
        values = tuple(parts)
        if any(values[i] < values[i + 1] for i in range(len(values) - 1)):
            raise ValueError(f"partition parts must be non-increasing: {values}")
        return super().__new__(cls, values)


def format_composition(alpha: Iterable[int]) -> str:
    return "(" + ",".join(str(p) for p in alpha) + ")"


def parse_composition(text: str) -> Composition:
    stripped = text.strip().strip("()[]")
    try:
        return Composition(int(t) for t in stripped.replace(" ", "").split(",") if t)
    except ValueError as exc:
        raise ValueError(f"cannot parse composition {text!r}: {exc}") from exc


def subset_to_composition(subset: AbstractSet[int], n: int) -> Composition:
    """``{i_1 < .. < i_k} ↦ (i_1, i_2 - i_1, .., n - i_k)``."""
    if n < 1:
        raise PreconditionError(f"n must be positive, got {n}")
    points = sorted(subset)
    for i in points:
        if not 1 <= i <= n - 1:
            raise PreconditionError(f"element {i} is outside [{n - 1}]")
    cuts = [0, *points, n]
    return Composition(b - a for a, b in zip(cuts, cuts[1:]))


def composition_to_subset(alpha: Composition) -> frozenset[int]:
    """Partial sums of α without the final one."""
    return frozenset(accumulate(alpha[:-1]))


def composition_mask(alpha: Composition) -> int:
    """S_α as a bitmask: bit ``i-1`` is set iff ``i`` is in S_α."""
    mask = 0
    for point in accumulate(alpha[:-1]):
        mask |= 1 << (point - 1)
    return mask


def mask_to_composition(mask: int, n: int) -> Composition:
    return subset_to_composition({i + 1 for i in range(n - 1) if mask >> i & 1}, n)


def _same_n(alpha: Composition, beta: Composition) -> None:
    if alpha.n != beta.n:
        raise DegreeMismatchError(alpha.n, beta.n, what="composition size")


def refines(beta: Composition, alpha: Composition) -> bool:
    """β ≤ α, i.e. S_α ⊆ S_β."""
    _same_n(alpha, beta)
    return composition_to_subset(alpha) <= composition_to_subset(beta)


def equivalent(alpha: Composition, beta: Composition) -> bool:
    """α ∼ β: same parts up to rearrangement."""
    return sorted(alpha) == sorted(beta)


def sort_to_partition(alpha: Composition) -> Partition:
    return Partition(sorted(alpha, reverse=True))


def dominance_leq(lam: Partition, mu: Partition) -> bool:
    """λ ⊴ μ: every prefix sum of λ is at most the matching prefix sum of μ."""
    _same_n(lam, mu)
    width = max(len(lam), len(mu))
    lam_sums = accumulate(tuple(lam) + (0,) * (width - len(lam)))
    mu_sums = accumulate(tuple(mu) + (0,) * (width - len(mu)))
    return all(a <= b for a, b in zip(lam_sums, mu_sums))


def conjugate(lam: Partition) -> Partition:
    return Partition(sum(1 for part in lam if part > i) for i in range(lam[0]))


def _check_cap(n: int, cap: int) -> None:
    if n < 1:
        raise PreconditionError(f"n must be positive, got {n}")
    if n > cap:
        raise BudgetExceededError(n, cap, what="composition size")


@lru_cache(maxsize=64)
def _compositions(n: int) -> Tuple[Composition, ...]:
    return tuple(mask_to_composition(mask, n) for mask in range(1 << (n - 1)))


def enumerate_compositions(n: int, cap: int = DEFAULT_COMPOSITION_CAP) -> Tuple[Composition, ...]:
    """All compositions of n, listed by the bitmask of their subset (so index == mask)."""
    _check_cap(n, cap)
    return _compositions(n)


@lru_cache(maxsize=64)
def _partitions(n: int) -> Tuple[Partition, ...]:
    result: list[Partition] = []

    def fill(remaining: int, largest: int, prefix: Tuple[int, ...]) -> None:
        if remaining == 0:
            result.append(Partition(prefix))
            return
        for part in range(min(remaining, largest), 0, -1):
            fill(remaining - part, part, prefix + (part,))

    fill(n, n, ())
    return tuple(result)


def enumerate_partitions(n: int, cap: int = DEFAULT_COMPOSITION_CAP) -> Tuple[Partition, ...]:
    """Partitions of n in reverse-lexicographic order, ``(n)`` first and ``(1^n)`` last.

    This order extends dominance: if μ ⊴ λ then λ is listed no later than μ.
    """
    _check_cap(n, cap)
    return _partitions(n)


@lru_cache(maxsize=64)
def rearrangement_classes(n: int) -> Mapping[Partition, Tuple[Composition, ...]]:
    """The ∼-classes of compositions of n, keyed by their sorted representative."""
    classes: Dict[Partition, list[Composition]] = {lam: [] for lam in _partitions(n)}
    for alpha in _compositions(n):
        classes[sort_to_partition(alpha)].append(alpha)
    return MappingProxyType({lam: tuple(members) for lam, members in classes.items()})
