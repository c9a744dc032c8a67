"""Tests for set families, intersection profiles and the extremal search."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from src.combinatorics.family import (
    VACUOUS,
    SetFamily,
    alpha_ratio,
    case2_prefix,
    classify,
    evaluation_matrix,
    extract_family,
    intersection_bound_holds,
    isomorphic,
    k_subset_masks,
    next_member_candidates,
    run_search,
    scaled_tridiagonal,
    search_extremal,
    tridiag_det,
)
from src.combinatorics.linalg import exact_determinant, is_nonsingular, matrix_rank
from src.combinatorics.perm import PermSet, knuth_class_n4
from src.errors import BudgetExceededError, PreconditionError, ProfileMismatchError

CASE2_FIVE = SetFamily(5, [[1, 2], [3, 4], [1, 5], [2, 3], [1, 4]])


def profiles(n):
    for k in range(1, n + 1):
        for l1 in range(k):
            for l2 in range(k):
                yield k, l1, l2


class TestSetFamily:
    """Test SetFamily construction and access."""

    def test_members_and_intersections(self):
        """Test indexing and intersection sizes."""
        assert CASE2_FIVE[2] == {1, 5}
        assert CASE2_FIVE.intersection_size(0, 2) == 1
        assert CASE2_FIVE.as_lists()[0] == [1, 2]
        assert len(CASE2_FIVE) == 5

    def test_element_out_of_range(self):
        """Test elements outside [n] are refused."""
        with pytest.raises(ValueError):
            SetFamily(3, [[1, 4]])
        with pytest.raises(ValueError):
            SetFamily.from_masks(2, [0b100])

    def test_empty_set_member(self):
        """Test an empty member is allowed."""
        family = SetFamily(2, [[], [1]])
        assert family[0] == frozenset()


class TestClassify:
    """Test intersection profiles."""

    def test_case2_family(self):
        """Test the five-set prefix is 2-uniform (0,1)-intersecting."""
        profile = classify(CASE2_FIVE)
        assert profile.uniform_k == 2
        assert profile.adjacent_l1 == 0
        assert profile.distant_l2 == 1
        assert profile.distinct
        assert profile.matches(2, 0, 1)
        assert intersection_bound_holds(profile)

    def test_repeated_sets(self):
        """Test ({1},{1},{1}) is (1,1)-intersecting but not distinct."""
        profile = classify(SetFamily(1, [[1], [1], [1]]))
        assert (profile.uniform_k, profile.adjacent_l1, profile.distant_l2) == (1, 1, 1)
        assert not profile.distinct

    def test_vacuous_quantities(self):
        """Test short families report vacuous intersections."""
        single = classify(SetFamily(3, [[1, 2]]))
        assert single.adjacent_l1 == VACUOUS
        assert single.distant_l2 == VACUOUS
        assert single.matches(2, 0, 1)
        pair = classify(SetFamily(3, [[1, 2], [2, 3]]))
        assert pair.adjacent_l1 == 1
        assert pair.distant_l2 == VACUOUS

    def test_non_uniform(self):
        """Test varying sizes give no uniform k."""
        profile = classify(SetFamily(3, [[1], [1, 2], [3]]))
        assert profile.uniform_k is None
        assert not profile.is_intersecting_family

    def test_empty_family(self):
        """Test classify needs at least one set."""
        with pytest.raises(PreconditionError):
            classify(SetFamily(3))


class TestExtractFamily:
    """Test reading a family off descent sets."""

    def test_knuth_class(self):
        """Test the Knuth class gives A1 = A3 = {1}, A2 = {2}."""
        family = extract_family(knuth_class_n4())
        assert family == SetFamily(2, [[1], [2], [1]])
        profile = classify(family)
        assert (profile.uniform_k, profile.adjacent_l1, profile.distant_l2) == (1, 0, 1)
        assert not profile.distinct

    def test_degree_one(self):
        """Test degree 1 is refused."""
        with pytest.raises(PreconditionError):
            extract_family(PermSet(1, [[1]]))

    def test_set_sizes_count_ascents(self):
        """Test |A_i| counts the members ascending at i."""
        perms = PermSet(3, [[1, 2, 3], [2, 1, 3], [3, 2, 1]])
        family = extract_family(perms)
        assert family[0] == {1}
        assert family[1] == {1, 2}


class TestEvaluationMatrix:
    """Test the evaluation-matrix certificate."""

    def test_case2_matrix_is_singular(self):
        """Test the case 2ℓ2 = ℓ1 + k gives a singular matrix of rank m."""
        matrix = evaluation_matrix(CASE2_FIVE, 1)
        assert len(matrix) == 6
        assert matrix[0] == [1, -1, 0, 0, 0, 0]
        assert matrix[-1] == [-1, -1, -1, -1, -1, -2]
        assert exact_determinant(matrix) == 0
        assert matrix_rank(matrix) == 5

    def test_nonsingular_case(self):
        """Test a path family with 2ℓ2 < ℓ1 + k gives det = -k (k-ℓ2)^m d_m(α)."""
        family = SetFamily(5, [[1, 2], [2, 3], [3, 4], [4, 5]])
        matrix = evaluation_matrix(family, 0)
        assert exact_determinant(matrix) == -10
        assert exact_determinant(matrix) == -2 * 2**4 * tridiag_det(4, alpha_ratio(2, 1, 0))

    def test_single_set(self):
        """Test m = 1."""
        family = SetFamily(3, [[1, 2]])
        assert evaluation_matrix(family, 0) == [[2, 0], [0, -2]]
        assert evaluation_matrix(family, 1) == [[1, 0], [-1, -2]]

    @pytest.mark.parametrize("n", [2, 3, 4, 5])
    def test_extremal_families_nonsingular(self, n):
        """Test every m = n family with 2ℓ2 < ℓ1 + k has a nonsingular matrix."""
        for k, l1, l2 in profiles(n):
            if 2 * l2 >= l1 + k:
                continue
            family = search_extremal(n, k, l1, l2, n, prune_isomorphs=True)
            if family is not None:
                assert is_nonsingular(evaluation_matrix(family, l2))

    def test_profile_mismatch(self):
        """Test non-distinct families and wrong ℓ2 are refused."""
        with pytest.raises(ProfileMismatchError):
            evaluation_matrix(extract_family(knuth_class_n4()), 1)
        with pytest.raises(ProfileMismatchError):
            evaluation_matrix(CASE2_FIVE, 0)


class TestTridiagonal:
    """Test the scaled tridiagonal determinant."""

    def test_alpha_ratio(self):
        """Test (ℓ1-ℓ2)/(k-ℓ2) and its precondition."""
        assert alpha_ratio(2, 0, 1) == -1
        assert alpha_ratio(4, 2, 1) == Fraction(1, 3)
        with pytest.raises(PreconditionError):
            alpha_ratio(2, 1, 2)

    def test_known_values(self):
        """Test d_m(0) = 1 and d_2(1/2) = 3/4."""
        assert all(tridiag_det(m, 0) == 1 for m in range(51))
        assert tridiag_det(2, Fraction(1, 2)) == Fraction(3, 4)
        assert tridiag_det(5, -1) == 0
        with pytest.raises(PreconditionError):
            tridiag_det(-1, 1)

    @settings(max_examples=100, deadline=None)
    @given(
        m=st.integers(min_value=0, max_value=12),
        alpha=st.fractions(min_value=-2, max_value=2, max_denominator=20),
    )
    def test_recurrence_matches_elimination(self, m, alpha):
        """Test the recurrence agrees with Gaussian elimination."""
        assert tridiag_det(m, alpha) == exact_determinant(scaled_tridiagonal(m, alpha))


class TestCase2Prefix:
    """Test the forced five-set prefix and its sixth member."""

    def test_prefix_sets(self):
        """Test ℓ2 = 1 gives the listed family."""
        assert case2_prefix(1) == CASE2_FIVE
        assert classify(case2_prefix(2)).matches(4, 0, 2)
        with pytest.raises(PreconditionError):
            case2_prefix(0)

    def test_sixth_member_is_forced(self):
        """Test constraints against A1, A2, A5 leave only A4."""
        assert next_member_candidates(CASE2_FIVE, 5, 0, 1, positions=[1, 2, 5]) == [
            frozenset({2, 3})
        ]
        assert next_member_candidates(CASE2_FIVE, 5, 0, 1) == []

    def test_isomorphic_relabelling(self):
        """Test relabelled copies match, also over a larger ground set."""
        relabel = {1: 5, 2: 3, 3: 1, 4: 2, 5: 4}
        moved = SetFamily(5, [[relabel[x] for x in member] for member in CASE2_FIVE])
        assert isomorphic(CASE2_FIVE, moved)
        assert isomorphic(CASE2_FIVE, SetFamily(7, [[6, 7], [3, 4], [6, 5], [7, 3], [6, 4]]))

    def test_isomorphic_keeps_positions(self):
        """Test swapping two members or dropping one breaks the match."""
        swapped = SetFamily(5, [[3, 4], [1, 2], [1, 5], [2, 3], [1, 4]])
        assert not isomorphic(CASE2_FIVE, swapped)
        assert not isomorphic(CASE2_FIVE, SetFamily(5, CASE2_FIVE.as_lists()[:4]))

    @pytest.mark.parametrize("l2", [1, 2])
    def test_search_finds_the_prefix(self, l2):
        """Test any five-set family with ℓ1 = 0, k = 2ℓ2 on [10] relabels the prefix."""
        result = run_search(10, 2 * l2, 0, l2, 5, prune_isomorphs=True)
        assert result.family is not None
        assert isomorphic(result.family, case2_prefix(l2))

    def test_needs_a_set(self):
        """Test extension needs a non-empty family."""
        with pytest.raises(PreconditionError):
            next_member_candidates(SetFamily(5), 5, 0, 1)


class TestSearch:
    """Test the extremal family search."""

    def test_k_subset_masks(self):
        """Test lexicographic order of 2-subsets."""
        assert k_subset_masks(3, 2) == [0b011, 0b101, 0b110]

    def test_case2_witness(self):
        """Test n = 5 admits a five-set (0,1)-family and it is the lexicographic first."""
        assert search_extremal(5, 2, 0, 1, 5) == CASE2_FIVE
        assert search_extremal(5, 2, 0, 1, 5, prune_isomorphs=True) == CASE2_FIVE

    @pytest.mark.parametrize("n,k,l1,l2,m", [(4, 2, 0, 1, 3), (5, 2, 0, 1, 6), (3, 1, 0, 0, 4)])
    def test_absent(self, n, k, l1, l2, m):
        """Test families known not to exist are not found."""
        assert search_extremal(n, k, l1, l2, m) is None

    def test_single_set(self):
        """Test m = 1 returns {1..k}."""
        assert search_extremal(4, 3, 0, 0, 1) == SetFamily(4, [[1, 2, 3]])

    def test_preconditions(self):
        """Test ℓ1, ℓ2 < k <= n."""
        with pytest.raises(PreconditionError):
            search_extremal(3, 2, 2, 0, 3)
        with pytest.raises(PreconditionError):
            search_extremal(3, 4, 0, 0, 2)
        with pytest.raises(PreconditionError):
            search_extremal(3, 2, 0, 0, 0)

    def test_budget(self):
        """Test an exhausted node budget raises unless partial results are allowed."""
        with pytest.raises(BudgetExceededError):
            run_search(5, 2, 0, 1, 6, node_budget=3)
        result = run_search(5, 2, 0, 1, 6, node_budget=3, allow_partial=True)
        assert result.budget_hit
        assert result.family is None

    def test_parallel_matches_sequential(self):
        """Test worker processes return the same first witness."""
        result = run_search(5, 2, 0, 1, 5, workers=2)
        assert result.family == CASE2_FIVE
        assert not result.budget_hit

    def test_parallel_respects_budget(self):
        """Test worker processes stop at the same node budget as a sequential search."""
        with pytest.raises(BudgetExceededError):
            run_search(8, 4, 2, 1, 9, node_budget=300)
        with pytest.raises(BudgetExceededError):
            run_search(8, 4, 2, 1, 9, node_budget=300, workers=4)
        sequential = run_search(8, 4, 2, 1, 9, node_budget=300, allow_partial=True)
        parallel = run_search(8, 4, 2, 1, 9, node_budget=300, allow_partial=True, workers=4)
        assert sequential == parallel
        assert parallel.budget_hit
        assert parallel.nodes == 301

    def test_parallel_counts_nodes_like_sequential(self):
        """Test a full parallel run reports the sequential node count."""
        sequential = run_search(8, 4, 2, 1, 9)
        parallel = run_search(8, 4, 2, 1, 9, workers=3)
        assert parallel == sequential
        assert parallel.family is None
        assert not parallel.budget_hit

    @pytest.mark.parametrize("n", [1, 2, 3, 4])
    def test_no_family_of_size_n_plus_one(self, n):
        """Test m <= n for every profile on small ground sets."""
        for k, l1, l2 in profiles(n):
            assert search_extremal(n, k, l1, l2, n + 1) is None

    @pytest.mark.parametrize("n", [3, 4, 5])
    def test_pruning_preserves_existence(self, n):
        """Test isomorph pruning finds a family exactly when plain search does."""
        for k, l1, l2 in profiles(n):
            for m in (n - 1, n):
                plain = search_extremal(n, k, l1, l2, m)
                pruned = search_extremal(n, k, l1, l2, m, prune_isomorphs=True)
                assert (plain is None) == (pruned is None)
                if pruned is not None:
                    assert classify(pruned).matches(k, l1, l2)
                    assert classify(pruned).distinct

    @pytest.mark.slow
    @pytest.mark.parametrize("n", [5, 6])
    def test_no_family_of_size_n_plus_one_slow(self, n):
        """Test m <= n for every profile on [5] and [6]."""
        for k, l1, l2 in profiles(n):
            assert search_extremal(n, k, l1, l2, n + 1, prune_isomorphs=True) is None
