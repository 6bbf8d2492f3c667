import json
import random
from fractions import Fraction
from itertools import combinations

import pytest

from qbg.diagrams import equations, find_flat
from qbg.errors import ParseError, PreconditionError, ResourceLimitError
from qbg.exactgeom import (
    Flag,
    all_equations_vanish,
    chi_rotate,
    chi_set,
    complete_to_permutation,
    flag_from_matrix,
    format_matrix,
    incidence_exchange_rule_holds,
    incidence_product_rule_holds,
    incidence_sum_rule_holds,
    matrix_from_rows,
    member_T_grassmann,
    member_T_plucker,
    member_T_rank,
    parse_matrix,
    permutation_flag,
    plucker_table_json,
    random_flag,
    rank_region,
    sample_in_open_stratum,
    stratum,
)
from qbg.latticepath import valid_shifts
from qbg.permcore import (
    all_permutations,
    cyclic_set,
    identity,
    longest_element,
    parse_permutation,
    prefix_set,
)
from qbg.tiltedorder import interval_member_set


class TestMatrixFormat:
    def test_roundtrip(self):
        m = matrix_from_rows([[1, Fraction(3, 4)], [Fraction(-2), 5]])
        assert parse_matrix(format_matrix(m)) == m

    def test_parse_example(self):
        m = parse_matrix("2\n1 3/4\n-2 5\n")
        assert m[0][1] == Fraction(3, 4)

    def test_bad_header(self):
        with pytest.raises(ParseError):
            parse_matrix("two\n1 2\n3 4\n")

    def test_wrong_row_count(self):
        with pytest.raises(ParseError):
            parse_matrix("2\n1 2\n")

    def test_bad_entry(self):
        with pytest.raises(ParseError):
            parse_matrix("1\n1/0\n")


class TestFlag:
    def test_identity_pluckers(self):
        F = permutation_flag(identity(3))
        for k in range(1, 4):
            assert F.plucker(range(1, k + 1)) == 1

    def test_permutation_pluckers(self):
        for w in all_permutations(3):
            F = permutation_flag(w)
            for k in range(1, 3):
                assert F.plucker(prefix_set(w, k)) in (-1, 1)
                for K in combinations(range(1, 4), k):
                    if frozenset(K) != prefix_set(w, k):
                        assert F.plucker(K) == 0

    def test_singular_rejected(self):
        with pytest.raises(PreconditionError):
            flag_from_matrix(matrix_from_rows([[1, 2], [2, 4]]))

    def test_empty_plucker(self):
        F = random_flag(3, 0)
        assert F.plucker([]) == 1

    def test_table_json(self):
        F = permutation_flag((2, 1, 3))
        table = json.loads(plucker_table_json(F))
        assert table["2"] == "1"
        assert table["1"] == "0"
        assert table["1,2,3"] in ("-1", "1")
        assert len(table) == 7

    def test_table_bound(self):
        F = permutation_flag(identity(8))
        with pytest.raises(ResourceLimitError):
            plucker_table_json(F)


class TestIncidenceRelations:
    @pytest.mark.parametrize("n", [3, 4, 5])
    def test_product_rule(self, n):
        rng = random.Random(n)
        F = random_flag(n, rng)
        for _ in range(50):
            k = rng.randint(2, n - 1)
            I = rng.sample(range(1, n + 1), k)
            J = rng.sample(range(1, n + 1), k - 1)
            assert incidence_product_rule_holds(F, I, J)

    @pytest.mark.parametrize("n", [4, 5])
    def test_sum_and_exchange_rules(self, n):
        rng = random.Random(n)
        F = random_flag(n, rng)
        for _ in range(50):
            r = rng.randint(3, n - 1)
            s = rng.randint(1, r - 2)
            I = rng.sample(range(1, n + 1), r)
            J = rng.sample(range(1, n + 1), s)
            j = rng.choice([x for x in range(1, n + 1) if x not in J])
            assert incidence_sum_rule_holds(F, I, J)
            assert incidence_exchange_rule_holds(F, I, J, j)


class TestRankRegion:
    def test_full_rows(self):
        F = random_flag(4, 1)
        for k in range(5):
            assert rank_region(F, range(1, 5), k) == k

    def test_empty_region(self):
        F = random_flag(3, 2)
        assert rank_region(F, [], 2) == 0

    def test_permutation_counts(self):
        for w in all_permutations(4):
            F = permutation_flag(w)
            for k in range(5):
                for size in range(5):
                    for S in combinations(range(1, 5), size):
                        assert rank_region(F, S, k) == len(prefix_set(w, k) & set(S))


class TestChiRotation:
    def test_identity_becomes_cycle(self):
        m = permutation_flag(identity(3)).matrix
        rotated = chi_rotate(m)
        assert rotated == permutation_flag((2, 3, 1)).matrix

    def test_order_n(self):
        m = random_flag(4, 3).matrix
        rotated = m
        for _ in range(4):
            rotated = chi_rotate(rotated)
        assert rotated == m

    def test_minor_sign_law(self):
        n = 4
        m = random_flag(n, 4).matrix
        F, G = Flag(m), Flag(chi_rotate(m))
        for k in range(1, n + 1):
            for K in combinations(range(1, n + 1), k):
                sign = (-1) ** (k - 1) if n in K else 1
                assert G.plucker(chi_set(K, n)) == sign * F.plucker(K)


class TestMembership:
    def test_fixed_points_match_interval(self):
        u, v = (1, 3, 2), (3, 2, 1)
        members = interval_member_set(u, v)
        for w in all_permutations(3):
            F = permutation_flag(w)
            assert member_T_plucker(u, v, F) == (w in members)

    def test_whole_flag_variety(self):
        u, v = identity(3), longest_element(3)
        F = random_flag(3, 5)
        a = (1, 1)
        assert member_T_plucker(u, v, F, True)
        assert member_T_rank(u, v, a, F, True)
        assert member_T_grassmann(u, v, a, F, True)

    def test_point_variety(self):
        u = (2, 1, 3)
        assert member_T_plucker(u, u, permutation_flag(u))
        assert not member_T_plucker(u, u, random_flag(3, 6))

    def test_generic_flag_rejected(self):
        u, v = (4, 3, 2, 1), (3, 1, 4, 2)
        F = random_flag(4, 7)
        assert not member_T_plucker(u, v, F)
        assert not member_T_grassmann(u, v, (4, 4, 2), F)

    def test_rank_requires_comparable_shift(self):
        with pytest.raises(PreconditionError):
            member_T_rank((4, 3, 2, 1), (3, 1, 4, 2), (1, 1, 1), random_flag(4, 8))

    def test_three_routes_agree_on_samples(self):
        u, v = (4, 3, 2, 1), (3, 1, 4, 2)
        flags = [sample_in_open_stratum(u, v, s) for s in range(3)]
        flags += [random_flag(4, 9), permutation_flag((2, 1, 4, 3))]
        for F in flags:
            for open_cell in (False, True):
                reference = member_T_plucker(u, v, F, open_cell)
                for a2 in (2, 3, 4):
                    a = (4, a2, 2)
                    assert member_T_rank(u, v, a, F, open_cell) == reference
                    assert member_T_grassmann(u, v, a, F, open_cell) == reference


class TestStratum:
    def test_fixed_point_is_its_own_stratum(self):
        u, v = (1, 3, 2), (3, 2, 1)
        for w in interval_member_set(u, v):
            label = stratum(u, v, permutation_flag(w))
            assert (label.x, label.y) == (w, w)

    def test_generic_flag_tops_out(self):
        label = stratum(identity(4), longest_element(4), random_flag(4, 10))
        assert (label.x, label.y) == (identity(4), longest_element(4))

    def test_sampler_roundtrip(self):
        u, v = (4, 3, 2, 1), (3, 1, 4, 2)
        F = sample_in_open_stratum(u, v, 11)
        label = stratum(u, v, F)
        assert (label.x, label.y) == (u, v)
        assert member_T_plucker(label.x, label.y, F, True)

    def test_rejects_non_member(self):
        with pytest.raises(PreconditionError):
            stratum((2, 1, 3), (2, 1, 3), random_flag(3, 12))


class TestCompletion:
    def test_fixed_point_completion(self):
        for w in all_permutations(4):
            F = permutation_flag(w)
            for k in range(1, 4):
                assert complete_to_permutation(F, prefix_set(w, k)) == w

    def test_generic_completion(self):
        F = random_flag(4, 13)
        for I in [{2}, {1, 3}, {2, 3, 4}]:
            w = complete_to_permutation(F, I)
            assert prefix_set(w, len(I)) == frozenset(I)
            assert F.plucker_perm(w) != 0

    def test_requires_nonzero(self):
        F = permutation_flag((2, 1, 3))
        with pytest.raises(PreconditionError):
            complete_to_permutation(F, {1})

    def test_in_stratum_completion_lands_in_interval(self):
        u, v = (4, 3, 2, 1), (3, 1, 4, 2)
        F = sample_in_open_stratum(u, v, 14)
        members = interval_member_set(u, v)
        for k in range(1, 4):
            w = complete_to_permutation(F, prefix_set(u, k))
            assert w in members


class TestSampler:
    def test_full_variety_sample(self):
        F = sample_in_open_stratum(identity(3), longest_element(3), 0)
        assert member_T_plucker(identity(3), longest_element(3), F, True)

    def test_point_sample(self):
        u = (2, 1, 4, 3)
        F = sample_in_open_stratum(u, u, 1)
        assert member_T_plucker(u, u, F, True)

    def test_deterministic(self):
        u, v = (4, 3, 2, 1), (3, 1, 4, 2)
        assert (
            sample_in_open_stratum(u, v, 5).matrix
            == sample_in_open_stratum(u, v, 5).matrix
        )

    def test_equations_vanish_on_samples(self):
        u, v = (4, 3, 2, 1), (3, 1, 4, 2)
        a = find_flat(u, v)
        es = equations(u, v, a)
        for s in range(3):
            assert all_equations_vanish(sample_in_open_stratum(u, v, s), es)

    def test_incomparable_pair_samples(self):
        u, v = (3, 4, 2, 1), (1, 2, 3, 4)
        F = sample_in_open_stratum(u, v, 2)
        assert member_T_plucker(u, v, F, True)

    def test_worked_n6_pair_roundtrip(self):
        u = parse_permutation("263145")
        v = parse_permutation("465123")
        F = sample_in_open_stratum(u, v, 0)
        assert member_T_plucker(u, v, F, True)
        label = stratum(u, v, F)
        assert (label.x, label.y) == (u, v)

    def test_chart_equation_biconditional(self):
        # on the chart (both endpoint products nonzero), vanishing of the
        # whole ledger is the same thing as open membership
        u, v = (4, 3, 2, 1), (3, 1, 4, 2)
        a = find_flat(u, v)
        es = equations(u, v, a)
        flags = [sample_in_open_stratum(u, v, s) for s in range(3)]
        flags += [random_flag(4, 40 + s) for s in range(3)]
        for F in flags:
            on_chart = F.plucker_perm(u) != 0 and F.plucker_perm(v) != 0
            if not on_chart:
                continue
            assert all_equations_vanish(F, es) == member_T_plucker(u, v, F, True)


def test_direct_sum_of_complementary_windows():
    # two valid cuts split the rows of a sampled member into independent
    # complementary windows whose ranks add up to the column count
    u, v = (4, 3, 2, 1), (3, 1, 4, 2)
    n, k = 4, 2
    shifts = sorted(valid_shifts(prefix_set(u, k), prefix_set(v, k), n))
    assert shifts == [2, 3, 4]
    for s in range(3):
        F = sample_in_open_stratum(u, v, 20 + s)
        for r in shifts:
            for r2 in shifts:
                if r == r2:
                    continue
                one = cyclic_set(r, r2, n, include_b=False)
                other = cyclic_set(r2, r, n, include_b=False)
                assert rank_region(F, one, k) + rank_region(F, other, k) == k
