"""
Ordered set families over [n], their intersection profiles, the family read off the
descent sets of a permutation set, the evaluation-matrix certificate and the
backtracking search for extremal (ℓ1, ℓ2)-intersecting families.

Sets are stored as bitmasks: bit ``j-1`` is set iff ``j`` belongs to the set. Adjacency
is positional, so families are never reordered.
"""

from __future__ import annotations

import logging
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Iterator, List, Literal, NamedTuple, Optional, Sequence, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field

from src.combinatorics.perm import PermSet
from src.errors import BudgetExceededError, PreconditionError, ProfileMismatchError

logger = logging.getLogger(__name__)

VACUOUS = "vacuous"
DEFAULT_NODE_BUDGET = 10**8

PairValue = Union[int, Literal["vacuous"], None]


def _mask_of(elements: Iterable[int]) -> int:
    mask = 0
    for element in elements:
        mask |= 1 << (element - 1)
    return mask


def _elements_of(mask: int) -> Tuple[int, ...]:
    result = []
    while mask:
        low = mask & -mask
        result.append(low.bit_length())
        mask ^= low
    return tuple(result)


class SetFamily:
    """Ordered sequence A_1, .., A_m of subsets of [ground_n]."""

    __slots__ = ("ground_n", "masks")

    def __init__(self, ground_n: int, sets: Iterable[Iterable[int]] = ()) -> None:
        if ground_n < 0:
            raise ValueError(f"ground size must be non-negative, got {ground_n}")
        masks = []
        for members in sets:
            members = tuple(members)
            for element in members:
                if not 1 <= element <= ground_n:
                    raise ValueError(f"element {element} is outside [{ground_n}]")
            masks.append(_mask_of(members))
        self.ground_n = ground_n
        self.masks: Tuple[int, ...] = tuple(masks)

    @classmethod
    def from_masks(cls, ground_n: int, masks: Iterable[int]) -> "SetFamily":
        family = cls(ground_n)
        masks = tuple(masks)
        limit = (1 << ground_n) - 1
        if any(mask & ~limit for mask in masks):
            raise ValueError(f"mask outside [{ground_n}]")
        family.masks = masks
        return family

    def __len__(self) -> int:
        return len(self.masks)

    def __getitem__(self, index: int) -> frozenset[int]:
        return frozenset(_elements_of(self.masks[index]))

    def __iter__(self) -> Iterator[frozenset[int]]:
        return (frozenset(_elements_of(mask)) for mask in self.masks)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SetFamily):
            return NotImplemented
        return self.ground_n == other.ground_n and self.masks == other.masks

    def __hash__(self) -> int:
        return hash((self.ground_n, self.masks))

    def __repr__(self) -> str:
        inner = ", ".join("{" + ",".join(map(str, _elements_of(m))) + "}" for m in self.masks)
        return f"SetFamily(n={self.ground_n}, [{inner}])"

    def as_lists(self) -> List[List[int]]:
        return [list(_elements_of(mask)) for mask in self.masks]

    def intersection_size(self, i: int, j: int) -> int:
        """|A_i ∩ A_j| with 0-based positions."""
        return (self.masks[i] & self.masks[j]).bit_count()


class IntersectionProfile(BaseModel):
    """Which intersection quantities of a family are constant.

    ``None`` means the quantity varies; ``"vacuous"`` means there is no pair to measure.
    """

    model_config = ConfigDict(frozen=True)

    m: int = Field(..., ge=1, description="Number of sets")
    uniform_k: Optional[int] = Field(None, ge=0, description="Common set size")
    adjacent_l1: PairValue = Field(None, description="Common |A_i ∩ A_{i+1}|")
    distant_l2: PairValue = Field(None, description="Common |A_i ∩ A_j| for |i-j| >= 2")
    distinct: bool = Field(..., description="All sets pairwise distinct")

    @property
    def is_intersecting_family(self) -> bool:
        """k-uniform and (ℓ1, ℓ2)-intersecting, vacuous quantities allowed."""
        return (
            self.uniform_k is not None
            and self.adjacent_l1 is not None
            and self.distant_l2 is not None
        )

    def matches(self, k: int, l1: int, l2: int) -> bool:
        return (
            self.uniform_k == k
            and self.adjacent_l1 in (l1, VACUOUS)
            and self.distant_l2 in (l2, VACUOUS)
        )


def _constant(values: Sequence[int]) -> Optional[int]:
    return values[0] if values and all(v == values[0] for v in values) else None


def classify(family: SetFamily) -> IntersectionProfile:
    m = len(family)
    if m < 1:
        raise PreconditionError("classify needs at least one set")
    sizes = [mask.bit_count() for mask in family.masks]
    adjacent: PairValue = VACUOUS
    if m >= 2:
        adjacent = _constant([family.intersection_size(i, i + 1) for i in range(m - 1)])
    distant: PairValue = VACUOUS
    if m >= 3:
        distant = _constant(
            [family.intersection_size(i, j) for i in range(m) for j in range(i + 2, m)]
        )
    return IntersectionProfile(
        m=m,
        uniform_k=_constant(sizes),
        adjacent_l1=adjacent,
        distant_l2=distant,
        distinct=len(set(family.masks)) == m,
    )


def intersection_bound_holds(profile: IntersectionProfile) -> bool:
    """2ℓ2 <= ℓ1 + k for intersecting families with at least four sets."""
    if profile.m < 4 or not profile.is_intersecting_family:
        return True
    return 2 * profile.distant_l2 <= profile.adjacent_l1 + profile.uniform_k


def extract_family(perms: PermSet) -> SetFamily:
    """A_i = { j : i is not a descent of π_j } for i in [n-1], over the ground set [m]."""
    if perms.degree < 2:
        raise PreconditionError("family extraction needs degree >= 2")
    des_masks = [perm.descent_mask() for perm in perms]
    masks = []
    for i in range(perms.degree - 1):
        mask = 0
        for j, des in enumerate(des_masks):
            if not des >> i & 1:
                mask |= 1 << j
        masks.append(mask)
    return SetFamily.from_masks(len(perms), masks)


def evaluation_matrix(family: SetFamily, l2: int) -> List[List[int]]:
    """Values of f_1, .., f_m, g at v_1, .., v_m, w, one row per evaluation point.

    f_i(x) = Σ_{j in A_i} x_j - ℓ2 and g(x) = Σ x_j - k; v_i is the indicator vector of A_i
    and w = 0, so the last column is (0, .., 0, -k) and the last row is (-ℓ2, .., -ℓ2, -k).
    """
    profile = classify(family)
    if not profile.distinct or not profile.is_intersecting_family:
        raise ProfileMismatchError(f"family is not a distinct intersecting family: {profile}")
    if profile.distant_l2 not in (l2, VACUOUS):
        raise ProfileMismatchError(f"distant intersections are {profile.distant_l2}, not {l2}")
    k = profile.uniform_k
    assert k is not None
    m = len(family)
    matrix = [[family.intersection_size(i, j) - l2 for j in range(m)] + [0] for i in range(m)]
    matrix.append([-l2] * m + [-k])
    l1 = profile.adjacent_l1
    for i in range(m):
        for j in range(m):
            gap = abs(i - j)
            expected = k - l2 if gap == 0 else (l1 - l2 if gap == 1 else 0)
            if matrix[i][j] != expected:
                raise ProfileMismatchError(f"entry ({i + 1},{j + 1}) breaks the band pattern")
    return matrix


def alpha_ratio(k: int, l1: int, l2: int) -> Fraction:
    """(ℓ1 - ℓ2) / (k - ℓ2)."""
    if l2 >= k:
        raise PreconditionError(f"need ℓ2 < k, got ℓ2={l2}, k={k}")
    return Fraction(l1 - l2, k - l2)


def scaled_tridiagonal(m: int, alpha: Fraction | int) -> List[List[Fraction]]:
    """m x m matrix with 1 on the diagonal and α on both neighbouring diagonals."""
    alpha = Fraction(alpha)
    return [
        [Fraction(1) if i == j else (alpha if abs(i - j) == 1 else Fraction(0)) for j in range(m)]
        for i in range(m)
    ]


def tridiag_det(m: int, alpha: Fraction | int) -> Fraction:
    """d_m(α) via d_m = d_{m-1} - α² d_{m-2}, with d_0 = d_1 = 1."""
    if m < 0:
        raise PreconditionError(f"m must be non-negative, got {m}")
    alpha = Fraction(alpha)
    square = alpha * alpha
    previous, current = Fraction(1), Fraction(1)
    for _ in range(m - 1):
        previous, current = current, current - square * previous
    return current


def case2_prefix(l2: int) -> SetFamily:
    """The five sets forced when ℓ1 = 0 and k = 2ℓ2, over [5ℓ2].

    A1 = (0,2ℓ2], A2 = (2ℓ2,4ℓ2], A3 = (0,ℓ2] ∪ (4ℓ2,5ℓ2], A4 = (ℓ2,3ℓ2],
    A5 = (0,ℓ2] ∪ (3ℓ2,4ℓ2].
    """
    if l2 < 1:
        raise PreconditionError(f"ℓ2 must be positive, got {l2}")

    def block(lo: int, hi: int) -> range:
        return range(lo * l2 + 1, hi * l2 + 1)

    sets = [
        block(0, 2),
        block(2, 4),
        [*block(0, 1), *block(4, 5)],
        block(1, 3),
        [*block(0, 1), *block(3, 4)],
    ]
    return SetFamily(5 * l2, sets)


def _signatures(family: SetFamily) -> Counter[Tuple[bool, ...]]:
    # Which positions each used element belongs to; unused elements are dropped.
    rows = (tuple(x in member for member in family) for x in range(1, family.ground_n + 1))
    return Counter(row for row in rows if any(row))


def isomorphic(first: SetFamily, second: SetFamily) -> bool:
    """Whether relabelling the ground set turns ``first`` into ``second``, position by position.

    Ground sets may differ in size; only elements used by some member count.
    """
    return len(first) == len(second) and _signatures(first) == _signatures(second)


def k_subset_masks(n: int, k: int) -> List[int]:
    """k-subsets of [n] as masks, in lexicographic order of their sorted elements."""
    return [_mask_of(combo) for combo in combinations(range(1, n + 1), k)]


def next_member_candidates(
    family: SetFamily,
    n: int,
    l1: int,
    l2: int,
    positions: Optional[Iterable[int]] = None,
) -> List[frozenset[int]]:
    """Every k-subset of [n] allowed after the last set, given the constraints against
    the sets at the 1-based ``positions`` (default: all of them).

    Distinctness is not imposed, so a forced repeat shows up in the result.
    """
    t = len(family)
    if t == 0:
        raise PreconditionError("need at least one set to extend")
    k = family.masks[0].bit_count()
    chosen = sorted(set(positions)) if positions is not None else list(range(1, t + 1))
    result = []
    for candidate in k_subset_masks(n, k):
        ok = all(
            (candidate & family.masks[j - 1]).bit_count() == (l1 if j == t else l2)
            for j in chosen
        )
        if ok:
            result.append(frozenset(_elements_of(candidate)))
    return result


class SearchResult(NamedTuple):
    family: Optional[SetFamily]
    nodes: int
    budget_hit: bool


def _lowest_bits(mask: int, count: int) -> int:
    result = 0
    while count and mask:
        low = mask & -mask
        result |= low
        mask ^= low
        count -= 1
    return result


class _Search:
    """Depth-first search over ordered families with incremental candidate pools.

    The pool handed to depth t holds the k-sets meeting every set but the last one in
    exactly ℓ2 elements; candidates for the next position are the pool members meeting the
    last set in exactly ℓ1.
    """

    def __init__(
        self,
        n: int,
        k: int,
        l1: int,
        l2: int,
        m_target: int,
        node_budget: int,
        prune_isomorphs: bool,
    ) -> None:
        self.n, self.k, self.l1, self.l2 = n, k, l1, l2
        self.m_target = m_target
        self.node_budget = node_budget
        self.prune_isomorphs = prune_isomorphs
        self.nodes = 0
        self.budget_hit = False

    def _canonical(self, candidate: int, used: int, classes: List[int]) -> bool:
        # New elements take the next unused labels; old ones the smallest of their class.
        fresh = candidate & ~used
        count = fresh.bit_count()
        width = used.bit_length()
        if fresh != ((1 << (width + count)) - 1) & ~used:
            return False
        return all(
            (candidate & cls) == _lowest_bits(cls, (candidate & cls).bit_count())
            for cls in classes
        )

    @staticmethod
    def _split(classes: List[int], candidate: int, used: int) -> List[int]:
        split = []
        for cls in classes:
            inside, outside = cls & candidate, cls & ~candidate
            if inside:
                split.append(inside)
            if outside:
                split.append(outside)
        fresh = candidate & ~used
        if fresh:
            split.append(fresh)
        return split

    def run(self, prefix: List[int], pool: List[int]) -> Optional[List[int]]:
        used = 0
        classes: List[int] = []
        for mask in prefix:
            classes = self._split(classes, mask, used)
            used |= mask
        return self._extend(prefix, set(prefix), pool, used, classes)

    def _extend(
        self,
        chosen: List[int],
        seen: set[int],
        pool: List[int],
        used: int,
        classes: List[int],
    ) -> Optional[List[int]]:
        self.nodes += 1
        if self.nodes > self.node_budget:
            self.budget_hit = True
            return None
        if len(chosen) == self.m_target:
            return list(chosen)
        last = chosen[-1]
        next_pool = [d for d in pool if (d & last).bit_count() == self.l2]
        for candidate in pool:
            if (candidate & last).bit_count() != self.l1 or candidate in seen:
                continue
            if self.prune_isomorphs and not self._canonical(candidate, used, classes):
                continue
            chosen.append(candidate)
            seen.add(candidate)
            found = self._extend(
                chosen,
                seen,
                next_pool,
                used | candidate,
                self._split(classes, candidate, used) if self.prune_isomorphs else classes,
            )
            chosen.pop()
            seen.discard(candidate)
            if found is not None or self.budget_hit:
                return found
        return None


def _validate_search(n: int, k: int, l1: int, l2: int, m_target: int) -> None:
    if not (0 <= l1 < k and 0 <= l2 < k and k <= n):
        raise PreconditionError(
            f"need 0 <= ℓ1, ℓ2 < k <= n, got n={n} k={k} ℓ1={l1} ℓ2={l2}"
        )
    if m_target < 1:
        raise PreconditionError(f"m_target must be positive, got {m_target}")


def _search_subtree(args: Tuple[int, int, int, int, int, int, bool, int]) -> SearchResult:
    n, k, l1, l2, m_target, budget, prune, second = args
    search = _Search(n, k, l1, l2, m_target, budget, prune)
    first = (1 << k) - 1
    pool = k_subset_masks(n, k)
    # The second set was chosen by the caller; pass on the pool for position three.
    next_pool = [d for d in pool if (d & first).bit_count() == l2]
    found = search.run([first, second], next_pool)
    family = SetFamily.from_masks(n, found) if found is not None else None
    return SearchResult(family, search.nodes, search.budget_hit)


def _merge_subtrees(
    tasks: List[Tuple[int, int, int, int, int, int, bool, int]], node_budget: int, workers: int
) -> SearchResult:
    """Combine subtree results in sequential order.

    Nodes are charged as a sequential search would spend them: the root plus every subtree
    up to the one holding the witness. Once that total passes ``node_budget`` the search is
    out of budget and the remaining subtrees are cancelled.
    """
    nodes = 1
    with ProcessPoolExecutor(max_workers=workers) as executor:
        futures = [executor.submit(_search_subtree, task) for task in tasks]
        try:
            for future in futures:
                partial = future.result()
                nodes += partial.nodes
                if partial.budget_hit or nodes > node_budget:
                    return SearchResult(None, node_budget + 1, True)
                if partial.family is not None:
                    return SearchResult(partial.family, nodes, False)
        finally:
            for future in futures:
                future.cancel()
    return SearchResult(None, nodes, False)


def run_search(
    n: int,
    k: int,
    l1: int,
    l2: int,
    m_target: int,
    node_budget: int = DEFAULT_NODE_BUDGET,
    prune_isomorphs: bool = False,
    allow_partial: bool = False,
    workers: int = 1,
) -> SearchResult:
    """Find a k-uniform (ℓ1, ℓ2)-intersecting family of ``m_target`` distinct subsets of [n].

    A_1 is always {1, .., k}: relabelling [n] moves any family there. The search returns the
    first witness in lexicographic order of the chosen sets. With ``workers > 1`` the choices
    of A_2 are spread over processes and the earliest subtree with a witness wins.
    """
    _validate_search(n, k, l1, l2, m_target)
    first = (1 << k) - 1
    pool = k_subset_masks(n, k)
    if m_target == 1:
        return SearchResult(SetFamily.from_masks(n, [first]), 1, False)

    if workers <= 1:
        search = _Search(n, k, l1, l2, m_target, node_budget, prune_isomorphs)
        found = search.run([first], pool)
        result = SearchResult(
            SetFamily.from_masks(n, found) if found is not None else None,
            search.nodes,
            search.budget_hit,
        )
    else:
        root = _Search(n, k, l1, l2, m_target, node_budget, prune_isomorphs)
        seconds = [
            c
            for c in pool
            if (c & first).bit_count() == l1
            and c != first
            and (not prune_isomorphs or root._canonical(c, first, [first]))
        ]
        # One node goes to the root, so no subtree may use more than the rest.
        share = max(node_budget - 1, 0)
        tasks = [(n, k, l1, l2, m_target, share, prune_isomorphs, s) for s in seconds]
        result = _merge_subtrees(tasks, node_budget, workers)

    if result.budget_hit and not allow_partial:
        raise BudgetExceededError(result.nodes, node_budget, what="search nodes")
    logger.debug(
        "search n=%s k=%s ℓ1=%s ℓ2=%s m=%s: %s after %s nodes",
        n, k, l1, l2, m_target, "found" if result.family else "none", result.nodes,
    )
    return result


def search_extremal(
    n: int,
    k: int,
    l1: int,
    l2: int,
    m_target: int,
    node_budget: int = DEFAULT_NODE_BUDGET,
    prune_isomorphs: bool = False,
) -> Optional[SetFamily]:
    """The witness family, or None when no such family exists."""
    return run_search(n, k, l1, l2, m_target, node_budget, prune_isomorphs).family
