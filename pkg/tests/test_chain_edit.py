import itertools
import random

import pytest

from chainrank import (
    AmbiguityError,
    InputError,
    ResourceCapError,
    Tournament,
    all_tournaments,
    brute_force_min_chain,
    chain_completion,
    chain_deletion,
    dual,
    hamming,
    has_chain_property,
    min_chain_distance,
    min_chain_set,
    monotone_min_chain,
    neighborhood,
    permute,
    swap_rows,
    weighted_min_chain,
)
from chainrank.chain_edit import all_chain_tournaments
from chainrank.core import canonical_key
from chainrank.match_pref import MatchPreference, weights_for
from chainrank.match_pref import select_match_pref

from helpers import (
    ANON_K,
    EX1,
    EX2,
    EX2_MINCH,
    TABLE1,
    brute_force_members,
    random_tournament,
    subset_of,
    superset_of,
    weighted_distance,
)

ANON_FLIPS = tuple(
    sorted(
        (
            Tournament.from_cells([[1, 1], [0, 1]]),
            Tournament.from_cells([[1, 0], [1, 1]]),
            Tournament.from_cells([[1, 0], [0, 0]]),
            Tournament.from_cells([[0, 0], [0, 1]]),
        ),
        key=canonical_key,
    )
)


class TestMinChainSet:
    def test_example2_reproduces_reference_set(self):
        result = min_chain_set(EX2)
        assert result.distance == 2
        assert set(result.members) == set(EX2_MINCH)

    def test_chain_is_its_own_optimum(self):
        result = min_chain_set(EX1)
        assert result.distance == 0
        assert result.members == (EX1,)

    def test_anonymity_counterexample_four_flips(self):
        result = min_chain_set(ANON_K)
        assert result.distance == 1
        assert result.members == ANON_FLIPS

    def test_members_sorted_canonically(self):
        members = min_chain_set(EX2).members
        assert list(members) == sorted(members, key=canonical_key)

    def test_cap_exceeded(self):
        big = Tournament.from_cells([[0] * 9 for _ in range(9)])
        with pytest.raises(ResourceCapError):
            min_chain_set(big)
        with pytest.raises(ResourceCapError):
            min_chain_set(EX2, cap=2)


class TestMinChainDistance:
    def test_example2(self):
        assert min_chain_distance(EX2) == 2

    def test_chain(self):
        assert min_chain_distance(EX1) == 0

    def test_table1(self):
        assert min_chain_distance(TABLE1) == 2

    def test_matches_set_distance_on_random(self):
        rng = random.Random(7)
        for _ in range(25):
            K = random_tournament(rng, 3, 4)
            assert min_chain_distance(K) == min_chain_set(K).distance


class TestBruteForceOracle:
    def test_example2(self):
        result = brute_force_min_chain(EX2)
        assert result.distance == 2
        assert set(result.members) == set(EX2_MINCH)

    def test_anon_counterexample(self):
        assert brute_force_min_chain(ANON_K).members == ANON_FLIPS

    def test_one_row_is_chain(self):
        K = Tournament.from_cells([[1, 0, 1]])
        result = brute_force_min_chain(K)
        assert result.distance == 0 and result.members == (K,)

    def test_size_limit(self):
        with pytest.raises(ResourceCapError):
            brute_force_min_chain(TABLE1)

    def test_oracle_agreement_exhaustive(self):
        for m, n in [(2, 2), (2, 3)]:
            for K in all_tournaments(m, n):
                assert min_chain_set(K) == brute_force_min_chain(K)

    def test_oracle_agreement_random(self):
        rng = random.Random(2026)
        for _ in range(20):
            K = random_tournament(rng, 3, rng.choice([3, 4]))
            assert min_chain_set(K) == brute_force_min_chain(K)


class TestDualAndPermutationLaws:
    def test_dual_correspondence_exhaustive(self):
        for m, n in [(2, 2), (2, 3)]:
            for K in all_tournaments(m, n):
                mapped = sorted((dual(M) for M in min_chain_set(K).members), key=canonical_key)
                assert tuple(mapped) == min_chain_set(dual(K)).members

    def test_permutation_equivariance_sampled(self):
        rng = random.Random(11)
        for _ in range(15):
            K = random_tournament(rng, 3, 3)
            sigma = [1, 2, 3]
            pi = [1, 2, 3]
            rng.shuffle(sigma)
            rng.shuffle(pi)
            mapped = sorted(
                (permute(M, tuple(sigma), tuple(pi)) for M in min_chain_set(K).members),
                key=canonical_key,
            )
            assert tuple(mapped) == min_chain_set(permute(K, tuple(sigma), tuple(pi))).members


class TestSwap:
    def test_swap_example(self):
        got = swap_rows(EX1, 1, 3)
        assert got.cells == ((1, 1, 1, 1), (1, 1, 0, 0), (1, 0, 0, 0))

    def test_swap_self_and_twice(self):
        assert swap_rows(EX2, 2, 2) == EX2
        assert swap_rows(swap_rows(EX2, 1, 3), 1, 3) == EX2

    def test_bad_label(self):
        with pytest.raises(InputError):
            swap_rows(EX2, 0, 1)

    def test_row_swap_preserves_optimality(self):
        # if K(a1) <= K(a2) but an optimum reverses them, swapping the rows
        # of the optimum yields another optimum
        spaces = [list(all_tournaments(2, 2)), list(all_tournaments(2, 3))]
        rng = random.Random(5)
        spaces.append([random_tournament(rng, 3, 3) for _ in range(12)])
        for space in spaces:
            for K in space:
                result = min_chain_set(K)
                opt = set(result.members)
                for a1, a2 in itertools.permutations(range(1, K.rows + 1), 2):
                    if not neighborhood(K, a1) <= neighborhood(K, a2):
                        continue
                    for M in result.members:
                        if neighborhood(M, a2) <= neighborhood(M, a1):
                            assert swap_rows(M, a1, a2) in opt


class TestMonotone:
    def test_chain_fixed_point(self):
        assert monotone_min_chain(EX1) == EX1

    def test_already_chain_after_check(self):
        K = Tournament.from_cells([[1, 1], [1, 0]])
        assert has_chain_property(K)
        assert monotone_min_chain(K) == K

    def test_example2_selection_is_canonical_least_qualifier(self):
        members = min_chain_set(EX2).members

        def extends(M):
            return all(
                neighborhood(M, a) <= neighborhood(M, a2)
                for a in range(1, 4)
                for a2 in range(1, 4)
                if a != a2 and neighborhood(EX2, a) <= neighborhood(EX2, a2)
            )

        qualifying = [M for M in members if extends(M)]
        assert monotone_min_chain(EX2) == qualifying[0]

    def test_output_extends_source_order(self):
        for m, n in [(2, 2), (2, 3)]:
            for K in all_tournaments(m, n):
                M = monotone_min_chain(K)
                assert M in min_chain_set(K).members
                for a, a2 in itertools.permutations(range(1, m + 1), 2):
                    if neighborhood(K, a) <= neighborhood(K, a2):
                        assert neighborhood(M, a) <= neighborhood(M, a2)


class TestCompletionDeletion:
    def test_chain_fixed_points(self):
        for op in (chain_completion, chain_deletion):
            result = op(EX1)
            assert result.distance == 0 and result.members == (EX1,)

    def test_completion_of_diagonal(self):
        result = chain_completion(ANON_K)
        assert result.distance == 1
        expected = brute_force_members(ANON_K, superset_of(ANON_K))
        assert (result.distance, set(result.members)) == (expected[0], set(expected[1]))
        assert set(result.members) == {
            Tournament.from_cells([[1, 1], [0, 1]]),
            Tournament.from_cells([[1, 0], [1, 1]]),
        }

    def test_deletion_of_diagonal(self):
        result = chain_deletion(ANON_K)
        assert result.distance == 1
        assert set(result.members) == {
            Tournament.from_cells([[1, 0], [0, 0]]),
            Tournament.from_cells([[0, 0], [0, 1]]),
        }

    def test_against_restricted_oracle_exhaustive(self):
        # 2x3 exercises the dualised search orientation, 3x2 the direct one
        for m, n in [(2, 3), (3, 2)]:
            for K in all_tournaments(m, n):
                got = chain_completion(K)
                want = brute_force_members(K, superset_of(K))
                assert (got.distance, got.members) == want
                got = chain_deletion(K)
                want = brute_force_members(K, subset_of(K))
                assert (got.distance, got.members) == want

    def test_members_respect_direction_random(self):
        rng = random.Random(3)
        for _ in range(10):
            K = random_tournament(rng, 3, 4)
            for M in chain_completion(K).members:
                assert has_chain_property(M)
                assert all(k & m == k for k, m in zip(K.row_masks, M.row_masks))
            for M in chain_deletion(K).members:
                assert has_chain_property(M)
                assert all(m & k == m for k, m in zip(K.row_masks, M.row_masks))


class TestWeighted:
    def test_example5_weights_select_k4(self):
        pref = MatchPreference.row_major()
        got = weighted_min_chain(EX2, weights_for(pref, 3, 4))
        assert got == EX2_MINCH[3]

    def test_chain_any_weights(self):
        weights = [[3, 1, 4, 1], [5, 9, 2, 6], [5, 3, 5, 8]]
        assert weighted_min_chain(EX1, weights) == EX1

    def test_diagonal_with_descending_weights(self):
        # brute-force weighted search over all 2^4 candidates picks the
        # cheapest single repair, the bottom-right flip
        weights = [[8, 4], [2, 1]]
        best = None
        argmin = []
        for cand in all_tournaments(2, 2):
            if not has_chain_property(cand):
                continue
            d = weighted_distance(ANON_K, cand, weights)
            if best is None or d < best:
                best, argmin = d, [cand]
            elif d == best:
                argmin.append(cand)
        assert argmin == [Tournament.from_cells([[1, 0], [0, 0]])]
        assert weighted_min_chain(ANON_K, weights) == argmin[0]

    def test_ties_raise_ambiguity(self):
        with pytest.raises(AmbiguityError):
            weighted_min_chain(ANON_K, [[1, 1], [1, 1]])

    def test_rejects_non_integer_weights(self):
        with pytest.raises(InputError):
            weighted_min_chain(ANON_K, [[1.5, 1], [1, 1]])
        with pytest.raises(InputError):
            weighted_min_chain(ANON_K, [[0, 1], [1, 1]])

    def test_matches_match_pref_selection(self):
        pref = MatchPreference.col_major()
        for K in all_tournaments(2, 3):
            assert weighted_min_chain(K, weights_for(pref, 2, 3)) == select_match_pref(K, pref)


class TestChainEnumeration:
    def test_matches_filtered_enumeration(self):
        for m, n in [(2, 2), (2, 3), (3, 2), (3, 3)]:
            generated = set(all_chain_tournaments(m, n))
            filtered = {K for K in all_tournaments(m, n) if has_chain_property(K)}
            assert generated == filtered

    def test_all_members_everywhere_are_chains(self):
        rng = random.Random(13)
        for _ in range(10):
            K = random_tournament(rng, 4, 3)
            result = min_chain_set(K)
            for M in result.members:
                assert has_chain_property(M)
                assert hamming(K, M) == result.distance
