import itertools
import random

import pytest

import drlcsp as d


class TestTupleIndexing:
    def test_row_major_example(self):
        # scope variables have sizes 2 and 3; the last one varies fastest
        sizes = (9, 2, 3)
        assert d.tuple_index((1, 2), sizes, (1, 2)) == 5

    def test_empty_scope(self):
        assert d.tuple_index((), (2, 3), ()) == 0
        assert d.index_tuple((), (2, 3), 0) == ()

    def test_round_trip_all_indices(self):
        sizes = (2, 3)
        scope = (0, 1)
        seen = []
        for idx in range(6):
            t = d.index_tuple(scope, sizes, idx)
            assert d.tuple_index(scope, sizes, t) == idx
            seen.append(t)
        assert seen == list(itertools.product(range(2), range(3)))

    def test_out_of_range(self):
        with pytest.raises(ValueError):
            d.tuple_index((0,), (2,), (2,))
        with pytest.raises(ValueError):
            d.index_tuple((0,), (2,), 2)
        with pytest.raises(ValueError):
            d.tuple_index((0, 1), (2, 2), (0,))

    def test_projection_and_extension(self):
        t = (4, 7, 9)
        assert d.project_assignment(t, (0, 2, 5), (0, 5)) == (4, 9)
        assert d.project_assignment(t, (0, 2, 5), ()) == ()
        assert d.extend_assignment((4, 9), (0, 5), 2, 7) == t
        assert d.extend_assignment((), (), 3, 1) == (1,)
        assert d.extend_assignment((5,), (1,), 4, 2) == (5, 2)


class TestNormalize:
    def test_duplicate_unary_merges_pointwise(self, w10):
        raw = d.RawProblem(w10, (2,), [
            d.Constraint((0,), [0, 0]),
            d.Constraint((0,), [3, 0]),
        ])
        p = d.normalize(raw)
        assert p.unary(0).values == [3, 0]

    def test_top_is_neutral_in_merge(self, godel3):
        raw = d.RawProblem(godel3, (2,), [
            d.Constraint((0,), [2, 2]),
            d.Constraint((0,), [1, 2]),
        ])
        assert d.normalize(raw).unary(0).values == [1, 2]

    def test_missing_unary_filled_with_top(self, w10):
        raw = d.RawProblem(w10, (2, 3), [d.Constraint((0,), [1, 2])])
        p = d.normalize(raw)
        assert p.unary(1).values == [0, 0, 0]

    def test_bottom_valued_domain_element_removed(self, w4):
        raw = d.RawProblem(w4, (3, 2), [
            d.Constraint((0,), [1, 4, 2]),  # cost 4 is bottom: value 1 dies
            d.Constraint((0, 1), [0, 1, 2, 3, 4, 4]),
        ])
        p = d.normalize(raw)
        assert p.domain_sizes == (2, 2)
        assert p.unary(0).values == [1, 2]
        # rows for surviving values 0 and 2 of the old table
        assert p.constraints[(0, 1)].values == [0, 1, 4, 4]

    def test_all_values_bottom_is_inconsistent(self, w4):
        raw = d.RawProblem(w4, (2,), [d.Constraint((0,), [4, 4])])
        assert d.normalize(raw) is None

    def test_idempotent(self, w4):
        raw = d.RawProblem(w4, (3, 2), [
            d.Constraint((0,), [1, 4, 2]),
            d.Constraint((0, 1), [0, 1, 2, 3, 4, 4]),
            d.Constraint((0, 1), [1, 0, 0, 0, 0, 0]),
        ])
        once = d.normalize(raw)
        again = d.normalize(d.RawProblem(once.algebra, once.domain_sizes,
                                         [c.copy() for c in once.constraints.values()]))
        assert again == once

    def test_preserves_surviving_combined_values(self, w4):
        raw = d.RawProblem(w4, (3, 2), [
            d.Constraint((0,), [1, 4, 2]),
            d.Constraint((0, 1), [0, 1, 2, 3, 4, 4]),
            d.Constraint((0, 1), [1, 0, 0, 0, 0, 0]),
        ])
        p = d.normalize(raw)
        survivors = {0: 0, 1: 2}  # new id -> old id for variable 0
        for new_t in itertools.product(range(2), range(2)):
            old_t = (survivors[new_t[0]], new_t[1])
            assert d.combined_value(p, new_t) == d.combined_value(raw, old_t)


class TestCombinedValue:
    def test_empty_store_is_top(self, godel3):
        raw = d.RawProblem(godel3, (2, 2), [])
        assert d.combined_value(raw, (0, 1)) == godel3.top

    def test_bottom_annihilates(self, godel3):
        raw = d.RawProblem(godel3, (2,), [
            d.Constraint((0,), [0, 2]),
            d.Constraint((0,), [2, 2]),
        ])
        assert d.combined_value(raw, (0,)) == 0

    def test_weighted_costs_add(self, w10):
        raw = d.RawProblem(w10, (2, 2), [
            d.Constraint((0,), [0, 0]),
            d.Constraint((1,), [1, 1]),
            d.Constraint((0, 1), [3, 3, 3, 3]),
        ])
        assert d.combined_value(raw, (0, 0)) == 4

    def test_invariant_under_store_permutation(self, w10):
        constraints = [
            d.Constraint((0,), [0, 1]),
            d.Constraint((1,), [2, 0]),
            d.Constraint((0, 1), [2, 5, 0, 3]),
            d.Constraint((0, 1), [1, 1, 1, 1]),
        ]
        rng = random.Random(7)
        reference = None
        for _ in range(6):
            shuffled = constraints[:]
            rng.shuffle(shuffled)
            raw = d.RawProblem(d.weighted(10), (2, 2), shuffled)
            values = [d.combined_value(raw, t) for t in itertools.product(range(2), range(2))]
            if reference is None:
                reference = values
            assert values == reference

    def test_wrong_arity_rejected(self, godel3):
        raw = d.RawProblem(godel3, (2, 2), [])
        with pytest.raises(ValueError):
            d.combined_value(raw, (0,))


class TestConsistencyPredicate:
    def test_all_top_tables_are_consistent(self, godel3):
        raw = d.RawProblem(godel3, (2, 2), [
            d.Constraint((0, 1), [2, 2, 2, 2]),
        ])
        p = d.normalize(raw)
        assert d.is_k_hyperarc_consistent(p, 2) is None

    def test_weighted_example_violation(self, weighted_example):
        violation = d.is_k_hyperarc_consistent(weighted_example, 2)
        assert violation == d.Violation((0, 1), 0, 0)

    def test_weighted_example_consistent_after_enforcement(self, weighted_example):
        out = d.enforce_k_hyperarc(weighted_example, 2)
        assert not out.inconsistent
        assert d.is_k_hyperarc_consistent(out.problem, 2) is None

    def test_bottom_unary_values_are_skipped(self, w4):
        # the dead value's row is all bottom yet the problem stays consistent
        p = d.Problem(w4, (2, 2), {
            (0,): d.Constraint((0,), [1, 4]),
            (1,): d.Constraint((1,), [0, 0]),
            (0, 1): d.Constraint((0, 1), [0, 0, 4, 4]),
        })
        assert d.is_k_hyperarc_consistent(p, 2) is None

    def test_scopes_above_k_ignored(self, godel3):
        raw = d.RawProblem(godel3, (2, 2, 2), [
            d.Constraint((0, 1, 2), [1] * 8),
        ])
        p = d.normalize(raw)
        assert d.is_k_hyperarc_consistent(p, 2) is None
        assert d.is_k_hyperarc_consistent(p, 3) is not None

    def test_bad_k(self, weighted_example):
        with pytest.raises(ValueError):
            d.is_k_hyperarc_consistent(weighted_example, 1)

    def test_consistency_at_k_implies_lower_k_on_binary_stores(self, w10):
        for seed in range(12):
            p = d.gen_random_problem(w10, 4, 3, 7, 2, seed)
            out = d.enforce_k_hyperarc(p, 3)
            if out.inconsistent:
                continue
            if d.is_k_hyperarc_consistent(out.problem, 3) is None:
                assert d.is_k_hyperarc_consistent(out.problem, 2) is None
