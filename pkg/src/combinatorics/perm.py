"""
Permutations in one-line notation, pattern containment and the permutation sets
the verification harness is built around.

Values here are immutable: a ``Permutation`` is a tuple, a ``PermSet`` an ordered
duplicate-free tuple of permutations of one degree.
"""

from __future__ import annotations

import logging
import re
from enum import Enum
from functools import lru_cache
from itertools import permutations
from typing import AbstractSet, Iterable, Iterator, Sequence, Tuple

from src.combinatorics.shape import Composition, composition_to_subset
from src.errors import BudgetExceededError, DegreeMismatchError, PreconditionError

logger = logging.getLogger(__name__)

DEFAULT_ENUMERATION_CAP = 10

_SEPARATORS = re.compile(r"[\s,]+")


class Direction(str, Enum):
    """Which monotone element to build."""

    INCREASING = "increasing"
    DECREASING = "decreasing"


class Permutation(tuple):
    """A bijection on [n] written in one-line notation, ``sigma[i-1] == σ(i)``."""

    __slots__ = ()

    def __new__(cls, entries: Iterable[int]) -> "Permutation":
        values = tuple(int(v) for v in entries)
        if not values:
            raise ValueError("a permutation needs at least one entry")
        if sorted(values) != list(range(1, len(values) + 1)):
            raise ValueError(f"{list(values)} is not a permutation of 1..{len(values)}")
        return super().__new__(cls, values)

    @classmethod
    def _trusted(cls, values: Tuple[int, ...]) -> "Permutation":
        # Skips validation; only for values built from other permutations.
        return tuple.__new__(cls, values)

    @property
    def n(self) -> int:
        return len(self)

    def __repr__(self) -> str:
        return format_permutation(self)

    def inverse(self) -> "Permutation":
        result = [0] * len(self)
        for position, value in enumerate(self, start=1):
            result[value - 1] = position
        return Permutation._trusted(tuple(result))

    def compose(self, other: "Permutation") -> "Permutation":
        """Return ``self ∘ other``, i.e. ``i ↦ self(other(i))``."""
        if len(other) != len(self):
            raise DegreeMismatchError(len(self), len(other))
        return Permutation._trusted(tuple(self[v - 1] for v in other))

    def reverse(self) -> "Permutation":
        return Permutation._trusted(tuple(reversed(self)))

    def complement(self) -> "Permutation":
        top = len(self) + 1
        return Permutation._trusted(tuple(top - v for v in self))

    def descent_set(self) -> frozenset[int]:
        return descent_set(self)

    def descent_mask(self) -> int:
        """Descent set as a bitmask: bit ``i-1`` is set iff ``i`` is a descent."""
        mask = 0
        for i in range(len(self) - 1):
            if self[i] > self[i + 1]:
                mask |= 1 << i
        return mask

    def is_monotone(self) -> bool:
        return self.descent_mask() in (0, (1 << (len(self) - 1)) - 1)


class PermSet:
    """Ordered, duplicate-free sequence of permutations sharing one degree.

    The order is kept as given because family extraction indexes members by position;
    ``PermSet.canonical`` builds the lexicographically ordered version.
    """

    __slots__ = ("degree", "members", "_lookup")

    def __init__(self, degree: int, members: Iterable[Sequence[int]] = ()) -> None:
        if degree < 1:
            raise ValueError(f"degree must be positive, got {degree}")
        perms = tuple(m if isinstance(m, Permutation) else Permutation(m) for m in members)
        for perm in perms:
            if len(perm) != degree:
                raise DegreeMismatchError(degree, len(perm))
        lookup = frozenset(perms)
        if len(lookup) != len(perms):
            raise ValueError("permutation set contains duplicates")
        self.degree = degree
        self.members: Tuple[Permutation, ...] = perms
        self._lookup = lookup

    @classmethod
    def canonical(cls, degree: int, members: Iterable[Sequence[int]] = ()) -> "PermSet":
        perms = [m if isinstance(m, Permutation) else Permutation(m) for m in members]
        return cls(degree, sorted(perms))

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self) -> Iterator[Permutation]:
        return iter(self.members)

    def __getitem__(self, index: int) -> Permutation:
        return self.members[index]

    def __contains__(self, perm: object) -> bool:
        return perm in self._lookup

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PermSet):
            return NotImplemented
        return self.degree == other.degree and self.members == other.members

    def __hash__(self) -> int:
        return hash((self.degree, self.members))

    def __repr__(self) -> str:
        inner = ", ".join(format_permutation(p) for p in self.members)
        return f"PermSet(n={self.degree}, {{{inner}}})"

    def as_set(self) -> frozenset[Permutation]:
        return self._lookup

    def difference(self, other: "PermSet") -> "PermSet":
        if other.degree != self.degree:
            raise DegreeMismatchError(self.degree, other.degree)
        return PermSet(self.degree, (p for p in self.members if p not in other))

    def without_monotone(self) -> "PermSet":
        return PermSet(self.degree, (p for p in self.members if not p.is_monotone()))

    def sorted(self) -> "PermSet":
        return PermSet(self.degree, sorted(self.members))


def parse_permutation(text: str) -> Permutation:
    """Parse ``[3, 4, 1, 2]``, ``3,4,1,2`` or ``3 4 1 2``."""
    stripped = text.strip()
    if stripped[:1] in "[(" and stripped[-1:] in "])":
        stripped = stripped[1:-1]
    tokens = [t for t in _SEPARATORS.split(stripped) if t]
    if not tokens:
        raise ValueError("empty permutation")
    try:
        values = [int(t) for t in tokens]
    except ValueError as exc:
        raise ValueError(f"non-integer entry in {text!r}") from exc
    return Permutation(values)


def format_permutation(sigma: Sequence[int]) -> str:
    return "[" + ",".join(str(v) for v in sigma) + "]"


def descent_set(sigma: Sequence[int]) -> frozenset[int]:
    """``{ i in [n-1] : σ_i > σ_{i+1} }`` with 1-based positions."""
    return frozenset(i + 1 for i in range(len(sigma) - 1) if sigma[i] > sigma[i + 1])


def monotone(n: int, direction: Direction | str = Direction.INCREASING) -> Permutation:
    if n < 1:
        raise PreconditionError(f"monotone element needs n >= 1, got {n}")
    if Direction(direction) is Direction.INCREASING:
        return Permutation._trusted(tuple(range(1, n + 1)))
    return Permutation._trusted(tuple(range(n, 0, -1)))


def standardize(values: Sequence[int]) -> Permutation:
    """Order-isomorphic reduction of a sequence of distinct integers."""
    ranks = {v: r for r, v in enumerate(sorted(values), start=1)}
    if len(ranks) != len(values):
        raise ValueError("standardize needs distinct values")
    return Permutation._trusted(tuple(ranks[v] for v in values))


@lru_cache(maxsize=4096)
def _pattern_bounds(pi: Tuple[int, ...]) -> Tuple[Tuple[int, int], ...]:
    # For position d: index of the earlier entry just below pi[d] and just above it (-1: none).
    bounds = []
    for d, target in enumerate(pi):
        below, above = -1, -1
        for j in range(d):
            if pi[j] < target and (below < 0 or pi[j] > pi[below]):
                below = j
            if pi[j] > target and (above < 0 or pi[j] < pi[above]):
                above = j
        bounds.append((below, above))
    return tuple(bounds)


def contains_pattern(sigma: Sequence[int], pi: Sequence[int]) -> bool:
    """True iff some length-|π| subsequence of σ is order-isomorphic to π.

    Depth-first search over increasing index choices; a partial choice is extended only
    while it stays order-isomorphic to the matching prefix of π.
    """
    n, k = len(sigma), len(pi)
    if k > n:
        return False
    if k == 0:
        return True
    bounds = _pattern_bounds(tuple(pi))
    chosen = [0] * k

    def extend(start: int, depth: int) -> bool:
        if depth == k:
            return True
        below, above = bounds[depth]
        low = chosen[below] if below >= 0 else 0
        high = chosen[above] if above >= 0 else n + 1
        for i in range(start, n - k + depth + 1):
            value = sigma[i]
            if low < value < high:
                chosen[depth] = value
                if extend(i + 1, depth + 1):
                    return True
        return False

    return extend(0, 0)


def avoids_all(sigma: Sequence[int], patterns: Iterable[Sequence[int]]) -> bool:
    return not any(contains_pattern(sigma, pi) for pi in patterns)


def _check_cap(n: int, cap: int) -> None:
    if n > cap:
        raise BudgetExceededError(n, cap, what="enumeration degree")


def symmetric_group(n: int, cap: int = DEFAULT_ENUMERATION_CAP) -> PermSet:
    """All of S_n in lexicographic order."""
    _check_cap(n, cap)
    return PermSet(n, (Permutation._trusted(p) for p in permutations(range(1, n + 1))))


def avoiders(n: int, patterns: PermSet, cap: int = DEFAULT_ENUMERATION_CAP) -> PermSet:
    """S_n(Π), lexicographically ordered.

    Built level by level: deleting the entry ``d+1`` from an avoider in S_{d+1} leaves an
    avoider in S_d, so every member of S_{d+1}(Π) is an insertion of ``d+1`` into some member
    of S_d(Π).
    """
    if n < 1:
        raise PreconditionError(f"avoiders needs n >= 1, got {n}")
    _check_cap(n, cap)
    pattern_list = list(patterns)
    level: list[Tuple[int, ...]] = [(1,)]
    level = [s for s in level if avoids_all(s, pattern_list)]
    for d in range(1, n):
        candidates = (
            tau[:pos] + (d + 1,) + tau[pos:] for tau in level for pos in range(d + 1)
        )
        if d + 1 < patterns.degree:
            level = list(candidates)
        else:
            level = [c for c in candidates if avoids_all(c, pattern_list)]
        logger.debug("avoiders: |S_%s(Π)| = %s", d + 1, len(level))
    level.sort()
    return PermSet(n, (Permutation._trusted(s) for s in level))


def inverse_descent_class(k: int, subset: AbstractSet[int]) -> PermSet:
    """``{ π in S_k : Des(π^{-1}) = J }`` in lexicographic order."""
    if k < 1:
        raise PreconditionError(f"inverse_descent_class needs k >= 1, got {k}")
    target = frozenset(subset)
    if any(not 1 <= j <= k - 1 for j in target):
        raise PreconditionError(f"{sorted(target)} is not a subset of [{k - 1}]")
    members = []
    for values in permutations(range(1, k + 1)):
        sigma = Permutation._trusted(values)
        if descent_set(sigma.inverse()) == target:
            members.append(sigma)
    return PermSet(k, members)


def respects(sigma: Permutation, alpha: Composition) -> bool:
    """True iff σ increases along every segment of α, i.e. Des(σ) ⊆ S_α."""
    if alpha.n != len(sigma):
        raise DegreeMismatchError(len(sigma), alpha.n)
    return descent_set(sigma) <= composition_to_subset(alpha)


def non_positive_symmetric_set(n: int) -> PermSet:
    """The size-n symmetric set that is not Schur-positive, for n >= 4.

    ``{[n,1,..,n-1], [1,..,n-2,n,n-1]}`` together with ``[1,..,j-1,n,n-1,j,..,n-2]`` for
    ``1 <= j <= n-2``.
    """
    if n < 4:
        raise PreconditionError(f"the size-n symmetric set needs n >= 4, got {n}")
    head = [(n, *range(1, n)), (*range(1, n - 1), n, n - 1)]
    tail = [(*range(1, j), n, n - 1, *range(j, n - 1)) for j in range(1, n - 1)]
    return PermSet.canonical(n, head + tail)


def knuth_class_n4() -> PermSet:
    """The two-element Knuth class in S_4, stored verbatim in its published order."""
    return PermSet(4, [(3, 4, 1, 2), (3, 1, 4, 2)])

