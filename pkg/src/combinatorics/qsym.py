"""
Quasisymmetric and symmetric functions of a fixed degree, stored as sparse exact
integer coefficient maps.

- ``QSymElement``: coefficients over compositions in the monomial basis M_α.
- ``SymElement``: coefficients over partitions in the monomial symmetric basis m_λ.
- ``SchurExpansion``: coefficients over partitions in the Schur basis s_λ.

Schur functions are never built as polynomials; conversion goes through Kostka numbers.
"""

from __future__ import annotations

import logging
from functools import lru_cache
from types import MappingProxyType
from typing import (
    ClassVar,
    Dict,
    Generic,
    Iterable,
    Iterator,
    List,
    Mapping,
    Optional,
    Sequence,
    Tuple,
    TypeVar,
)

from src.combinatorics.kostka_cache import KostkaCache
from src.combinatorics.perm import Permutation, PermSet
from src.combinatorics.shape import (
    DEFAULT_COMPOSITION_CAP,
    Composition,
    Partition,
    composition_mask,
    dominance_leq,
    enumerate_compositions,
    enumerate_partitions,
    format_composition,
    rearrangement_classes,
)
from src.errors import DegreeMismatchError, NotSymmetricError

logger = logging.getLogger(__name__)

KeyT = TypeVar("KeyT", bound=Composition)

_kostka_cache = KostkaCache()


def set_kostka_cache(cache: KostkaCache) -> None:
    """Install the table ``kostka`` reads from and writes to."""
    global _kostka_cache
    _kostka_cache = cache


def get_kostka_cache() -> KostkaCache:
    return _kostka_cache


class _SparseElement(Generic[KeyT]):
    """Immutable sparse integer combination of basis elements of degree ``n``."""

    basis: ClassVar[str] = "?"
    __slots__ = ("n", "_coeffs")

    def __init__(self, n: int, coeffs: Mapping[Sequence[int], int] | None = None) -> None:
        self.n = n
        cleaned: Dict[KeyT, int] = {}
        for key, value in (coeffs or {}).items():
            typed = self._coerce_key(key)
            if typed.n != n:
                raise DegreeMismatchError(n, typed.n, what=f"{self.basis} key size")
            value = int(value)
            if value:
                cleaned[typed] = value
        ordered = sorted(cleaned.items(), key=lambda item: self._order(item[0]))
        self._coeffs: Mapping[KeyT, int] = MappingProxyType(dict(ordered))

    @staticmethod
    def _coerce_key(key: Sequence[int]) -> KeyT:
        raise NotImplementedError

    @staticmethod
    def _order(key: KeyT) -> Tuple[int, ...]:
        raise NotImplementedError

    @classmethod
    def zero(cls, n: int):
        return cls(n)

    def coefficient(self, key: Sequence[int]) -> int:
        return self._coeffs.get(self._coerce_key(key), 0)

    def items(self) -> Iterator[Tuple[KeyT, int]]:
        return iter(self._coeffs.items())

    def keys(self) -> Iterator[KeyT]:
        return iter(self._coeffs)

    def is_zero(self) -> bool:
        return not self._coeffs

    def to_triples(self) -> List[Tuple[str, str, int]]:
        """(basis, key, coefficient) in canonical key order."""
        return [(self.basis, format_composition(k), v) for k, v in self._coeffs.items()]

    def to_nested(self) -> List[List[object]]:
        return [[list(k), v] for k, v in self._coeffs.items()]

    def _check_compatible(self, other: "_SparseElement") -> None:
        if type(other) is not type(self):
            raise TypeError(f"cannot combine {type(self).__name__} with {type(other).__name__}")
        if other.n != self.n:
            raise DegreeMismatchError(self.n, other.n)

    def __add__(self, other: "_SparseElement"):
        self._check_compatible(other)
        merged = dict(self._coeffs)
        for key, value in other._coeffs.items():
            merged[key] = merged.get(key, 0) + value
        return type(self)(self.n, merged)

    def __neg__(self):
        return type(self)(self.n, {k: -v for k, v in self._coeffs.items()})

    def __sub__(self, other: "_SparseElement"):
        return self + (-other)

    def __mul__(self, scalar: int):
        if not isinstance(scalar, int):
            return NotImplemented
        return type(self)(self.n, {k: scalar * v for k, v in self._coeffs.items()})

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        if type(other) is not type(self):
            return NotImplemented
        return self.n == other.n and dict(self._coeffs) == dict(other._coeffs)

    def __hash__(self) -> int:
        return hash((type(self).__name__, self.n, tuple(self._coeffs.items())))

    def __repr__(self) -> str:
        if not self._coeffs:
            return f"0 (n={self.n})"
        terms = []
        for key, value in self._coeffs.items():
            scale = "" if value == 1 else ("-" if value == -1 else f"{value}·")
            terms.append(f"{scale}{self.basis}{format_composition(key)}")
        return " + ".join(terms).replace("+ -", "- ")


class QSymElement(_SparseElement[Composition]):
    """Element of QSym_n in the monomial quasisymmetric basis."""

    basis = "M"
    __slots__ = ()

    @staticmethod
    def _coerce_key(key: Sequence[int]) -> Composition:
        return key if isinstance(key, Composition) else Composition(key)

    @staticmethod
    def _order(key: Composition) -> Tuple[int, ...]:
        return (composition_mask(key),)


class _PartitionKeyed(_SparseElement[Partition]):
    __slots__ = ()

    @staticmethod
    def _coerce_key(key: Sequence[int]) -> Partition:
        return key if isinstance(key, Partition) else Partition(key)

    @staticmethod
    def _order(key: Partition) -> Tuple[int, ...]:
        return tuple(-part for part in key)


class SymElement(_PartitionKeyed):
    """Element of Sym_n in the monomial symmetric basis."""

    basis = "m"
    __slots__ = ()


class SchurExpansion(_PartitionKeyed):
    """Element of Sym_n in the Schur basis."""

    basis = "s"
    __slots__ = ()

    def is_positive(self) -> bool:
        return all(value >= 0 for _, value in self.items())


def fundamental_to_monomial(alpha: Composition) -> QSymElement:
    """F_α = Σ_{β ≤ α} M_β."""
    n = alpha.n
    required = composition_mask(alpha)
    compositions = enumerate_compositions(n)
    return QSymElement(
        n, {beta: 1 for mask, beta in enumerate(compositions) if mask & required == required}
    )


class DescentTable:
    """Per-degree lookup giving |S(α)| for every composition α by vector addition.

    Position ``mask`` of a vector belongs to the composition whose subset has that bitmask,
    and a permutation contributes 1 there exactly when its descent mask lies inside it.
    """

    def __init__(self, n: int, cap: int = DEFAULT_COMPOSITION_CAP) -> None:
        self.n = n
        self.compositions = enumerate_compositions(n, cap)
        self.size = len(self.compositions)
        masks = {alpha: mask for mask, alpha in enumerate(self.compositions)}
        self.classes: Tuple[Tuple[int, ...], ...] = tuple(
            tuple(masks[alpha] for alpha in members)
            for members in rearrangement_classes(n).values()
            if len(members) > 1
        )
        self._vectors: Dict[int, Tuple[int, ...]] = {}

    def vector_for_mask(self, descent_mask: int) -> Tuple[int, ...]:
        vector = self._vectors.get(descent_mask)
        if vector is None:
            vector = tuple(int(descent_mask & ~mask == 0) for mask in range(self.size))
            self._vectors[descent_mask] = vector
        return vector

    def vector(self, perm: Permutation) -> Tuple[int, ...]:
        if len(perm) != self.n:
            raise DegreeMismatchError(self.n, len(perm))
        return self.vector_for_mask(perm.descent_mask())

    def counts(self, perms: Iterable[Permutation]) -> List[int]:
        total = [0] * self.size
        for perm in perms:
            for index, bit in enumerate(self.vector(perm)):
                total[index] += bit
        return total

    def is_symmetric_counts(self, counts: Sequence[int]) -> bool:
        for members in self.classes:
            first = counts[members[0]]
            for mask in members[1:]:
                if counts[mask] != first:
                    return False
        return True

    def element(self, counts: Sequence[int]) -> QSymElement:
        return QSymElement(self.n, dict(zip(self.compositions, counts)))


@lru_cache(maxsize=32)
def descent_table(n: int, cap: int = DEFAULT_COMPOSITION_CAP) -> DescentTable:
    return DescentTable(n, cap)


def generating_function(perms: PermSet, cap: int = DEFAULT_COMPOSITION_CAP) -> QSymElement:
    """Q_n(S) in the M basis, with c_α = |S(α)| = |{π in S : Des(π) ⊆ S_α}|."""
    table = descent_table(perms.degree, cap)
    return table.element(table.counts(perms))


def is_symmetric(f: QSymElement) -> bool:
    """Coefficients are constant on every rearrangement class."""
    for members in rearrangement_classes(f.n).values():
        first = f.coefficient(members[0])
        if any(f.coefficient(alpha) != first for alpha in members[1:]):
            return False
    return True


def to_monomial_symmetric(f: QSymElement) -> SymElement:
    """Rewrite a symmetric element as Σ c_λ m_λ using m_λ = Σ_{α∼λ} M_α."""
    if not is_symmetric(f):
        raise NotSymmetricError("quasisymmetric element is not symmetric")
    return SymElement(f.n, {lam: f.coefficient(lam) for lam in rearrangement_classes(f.n)})


def _horizontal_strips(shape: Tuple[int, ...], outer: Tuple[int, ...], size: int):
    rows = len(shape)
    grown = list(shape)

    def place(row: int, remaining: int):
        if row == rows:
            if remaining == 0:
                yield tuple(grown)
            return
        limit = outer[row] if row == 0 else min(outer[row], shape[row - 1])
        for added in range(min(remaining, limit - shape[row]) + 1):
            grown[row] = shape[row] + added
            yield from place(row + 1, remaining - added)
        grown[row] = shape[row]

    yield from place(0, size)


def _count_tableaux(lam: Tuple[int, ...], mu: Tuple[int, ...]) -> int:
    # Entry i occupies a horizontal strip of size mu[i-1]; count the chains of shapes.
    @lru_cache(maxsize=None)
    def count(step: int, shape: Tuple[int, ...]) -> int:
        if step == len(mu):
            return int(shape == lam)
        return sum(count(step + 1, grown) for grown in _horizontal_strips(shape, lam, mu[step]))

    return count(0, (0,) * len(lam))


def kostka(lam: Partition, mu: Partition, cache: Optional[KostkaCache] = None) -> int:
    """Number of semistandard tableaux of shape λ and content μ.

    The fill goes by entry value: the cells holding i form a horizontal strip of μ_i
    cells, so each tableau is one chain of strips from the empty shape to λ.
    """
    lam, mu = Partition(lam), Partition(mu)
    if lam.n != mu.n:
        raise DegreeMismatchError(lam.n, mu.n, what="partition size")
    table = cache if cache is not None else _kostka_cache
    return table.get_or_compute(lam, mu, lambda: _count_tableaux(tuple(lam), tuple(mu)))


def monomial_to_schur(g: SymElement, cache: Optional[KostkaCache] = None) -> SchurExpansion:
    """Solve g = Σ_λ d_λ s_λ by back-substitution along dominance order.

    Partitions are visited from (n) down; when λ is reached, every s_ν still able to
    contribute to m_λ has ν ⊵ λ and has already been subtracted.
    """
    n = g.n
    residual: Dict[Partition, int] = dict(g.items())
    partitions = enumerate_partitions(n)
    result: Dict[Partition, int] = {}
    for lam in partitions:
        coefficient = residual.get(lam, 0)
        if not coefficient:
            continue
        result[lam] = coefficient
        for mu in partitions:
            if dominance_leq(mu, lam):
                residual[mu] = residual.get(mu, 0) - coefficient * kostka(lam, mu, cache)
    if any(residual.values()):
        raise ArithmeticError("Kostka back-substitution left a non-zero residual")
    return SchurExpansion(n, result)


def schur_to_monomial(e: SchurExpansion, cache: Optional[KostkaCache] = None) -> SymElement:
    partitions = enumerate_partitions(e.n)
    coeffs: Dict[Partition, int] = {}
    for lam, value in e.items():
        for mu in partitions:
            if dominance_leq(mu, lam):
                coeffs[mu] = coeffs.get(mu, 0) + value * kostka(lam, mu, cache)
    return SymElement(e.n, coeffs)


def schur_expansion(perms: PermSet, cache: Optional[KostkaCache] = None) -> SchurExpansion:
    return monomial_to_schur(to_monomial_symmetric(generating_function(perms)), cache)


def is_schur_positive(
    perms: PermSet, cache: Optional[KostkaCache] = None
) -> Tuple[bool, Optional[SchurExpansion]]:
    """(positive?, expansion); ``(False, None)`` when Q_n(S) is not symmetric.

    The empty set gives the zero element, which counts as symmetric and Schur-positive.
    """
    f = generating_function(perms)
    if not is_symmetric(f):
        return False, None
    expansion = monomial_to_schur(to_monomial_symmetric(f), cache)
    return expansion.is_positive(), expansion
