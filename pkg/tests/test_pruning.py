"""Tests for the pruning dynamic program and its enumeration oracle."""

import math
import random

import pytest

from gaintree import (
    NEGATIVE,
    POSITIVE,
    Branch,
    ClassCounts,
    Example,
    GrowConfig,
    InvariantError,
    Leaf,
    PriorConfig,
    count_internal,
    count_leaves,
    count_types,
    enumerate_prunings,
    grow,
    prune_optimal,
    sensitivity_sweep,
    training_errors,
    tree_score,
)
from gaintree.pruning import holdout_error_rate

# True collapse threshold for the lone-negative scenario: the score of
# the single leaf over (7,1), i.e. -(7*ln(7/8) + ln(1/8)).
LONE_NEGATIVE_THRESHOLD = 3.014161290051494


def _pure_leaf(p, n):
    q = 1.0 if n == 0 else 0.0
    return Leaf(ClassCounts(p, n), q, POSITIVE if p else NEGATIVE)


def _random_grown_tree(rng, n_attrs=4, max_depth=3):
    rows = []
    for _ in range(rng.randint(3, 12)):
        key = tuple(rng.randint(0, 1) for _ in range(n_attrs))
        for _ in range(rng.randint(1, 6)):
            label = POSITIVE if rng.random() < 0.5 else NEGATIVE
            rows.append(Example(key, label))
    counts = count_types(rows)
    return grow(counts, GrowConfig(max_depth=max_depth))


class TestPruneOptimal:
    def test_alpha_zero_preserves_score_and_fit(self):
        rng = random.Random(3)
        for _ in range(20):
            tree = _random_grown_tree(rng)
            prior = PriorConfig(alpha=0.0)
            result = prune_optimal(tree, prior)
            assert result.score.total == pytest.approx(tree_score(tree, prior).total, abs=1e-9)
            assert training_errors(result.tree) == training_errors(tree)

    def test_lone_negative_branch_survives_alpha_three(self):
        # one test isolates 1 negative from 7 positives; its two pure
        # leaves are worth 3.0141... nats, so alpha=3 keeps it and
        # anything past the threshold collapses it
        counts = count_types(
            [Example((1,), POSITIVE)] * 7 + [Example((0,), NEGATIVE)]
        )
        tree = grow(counts)
        assert count_internal(tree) == 1
        kept = prune_optimal(tree, PriorConfig(alpha=3.0))
        assert kept.tree == tree
        assert kept.pruned_node_count == 0
        assert training_errors(kept.tree) == 0

        collapsed = prune_optimal(tree, PriorConfig(alpha=3.5))
        assert collapsed.tree == Leaf(ClassCounts(7, 1), 7 / 8, POSITIVE)
        assert training_errors(collapsed.tree) == 1
        assert collapsed.pruned_node_count == 1

        eps = 1e-9
        assert count_internal(
            prune_optimal(tree, PriorConfig(alpha=LONE_NEGATIVE_THRESHOLD - eps)).tree
        ) == 1
        # exact tie goes to the smaller tree
        assert count_internal(
            prune_optimal(tree, PriorConfig(alpha=LONE_NEGATIVE_THRESHOLD)).tree
        ) == 0

    def test_huge_alpha_collapses_to_majority_leaf(self):
        rng = random.Random(17)
        for _ in range(10):
            tree = _random_grown_tree(rng)
            result = prune_optimal(tree, PriorConfig(alpha=1e9))
            assert isinstance(result.tree, Leaf)
            c = tree.counts
            assert result.tree.label == (POSITIVE if c.pos >= c.neg else NEGATIVE)

    def test_matches_enumeration_on_random_trees(self):
        rng = random.Random(29)
        checked = 0
        while checked < 25:
            tree = _random_grown_tree(rng)
            if count_internal(tree) > 12:
                continue
            checked += 1
            alpha = rng.random() * 5
            prior = PriorConfig(alpha=alpha)
            result = prune_optimal(tree, prior)
            best, _ = enumerate_prunings(tree, prior)
            assert result.score.total == pytest.approx(best, abs=1e-9)

    def test_pruning_never_improves_training_error(self):
        rng = random.Random(37)
        for _ in range(20):
            tree = _random_grown_tree(rng)
            base = training_errors(tree)
            for alpha in (0.0, 0.5, 2.0, 10.0):
                result = prune_optimal(tree, PriorConfig(alpha=alpha))
                assert training_errors(result.tree) >= base

    def test_leaf_count_monotone_in_alpha(self):
        rng = random.Random(43)
        for _ in range(20):
            tree = _random_grown_tree(rng)
            leaves = [
                count_leaves(prune_optimal(tree, PriorConfig(alpha=a)).tree)
                for a in (0.0, 0.25, 0.5, 1.0, 2.0, 4.0, 8.0)
            ]
            assert leaves == sorted(leaves, reverse=True)

    def test_inconsistent_counts_rejected(self):
        bad = Branch(0, _pure_leaf(3, 0), _pure_leaf(0, 1), ClassCounts(5, 5))
        with pytest.raises(InvariantError):
            prune_optimal(bad, PriorConfig())

    def test_result_is_ancestor_closed(self):
        # every branch kept by pruning exists at the same position in
        # the original tree
        rng = random.Random(47)
        for _ in range(10):
            tree = _random_grown_tree(rng)
            pruned = prune_optimal(tree, PriorConfig(alpha=0.7)).tree

            def check(a, b):
                if isinstance(a, Leaf):
                    return
                assert isinstance(b, Branch)
                assert a.attribute == b.attribute and a.counts == b.counts
                check(a.yes, b.yes)
                check(a.no, b.no)

            check(pruned, tree)


class TestEnumeratePrunings:
    def test_single_leaf(self):
        _, count = enumerate_prunings(_pure_leaf(3, 0), PriorConfig())
        assert count == 1

    def test_single_test(self):
        tree = Branch(0, _pure_leaf(2, 0), _pure_leaf(0, 2), ClassCounts(2, 2))
        best, count = enumerate_prunings(tree, PriorConfig(alpha=0.0))
        assert count == 2
        assert best == 0.0

    def test_depth_two_has_five_prunings(self):
        inner = Branch(1, _pure_leaf(1, 0), _pure_leaf(0, 1), ClassCounts(1, 1))
        inner2 = Branch(1, _pure_leaf(2, 0), _pure_leaf(0, 2), ClassCounts(2, 2))
        tree = Branch(0, inner, inner2, ClassCounts(3, 3))
        _, count = enumerate_prunings(tree, PriorConfig())
        assert count == 5

    def test_count_satisfies_product_recurrence(self):
        rng = random.Random(53)
        for _ in range(10):
            tree = _random_grown_tree(rng)
            if count_internal(tree) > 12:
                continue

            def c(node):
                if isinstance(node, Leaf):
                    return 1
                return 1 + c(node.yes) * c(node.no)

            _, count = enumerate_prunings(tree, PriorConfig())
            assert count == c(tree)

    def test_size_cap(self):
        _, examples = __import__("gaintree").gen_parity(6, complete=True)
        tree = grow(count_types(examples))
        with pytest.raises(ValueError, match="capped"):
            enumerate_prunings(tree, PriorConfig())


class TestSensitivitySweep:
    def _noisy_tree_and_holdout(self, seed=11):
        from gaintree import gen_tree_concept, holdout_split

        _, train, _, _ = gen_tree_concept(
            attrs=8, depth=3, noise=0.15, train_size=160, test_size=10, seed=seed
        )
        fit, hold = holdout_split(train, 0.25, seed=seed)
        return grow(count_types(fit)), count_types(hold)

    def test_alpha_zero_row_is_the_unpruned_tree(self):
        tree, holdout = self._noisy_tree_and_holdout()
        rows = sensitivity_sweep(tree, [0.0], holdout)
        assert rows[0].leaves == count_leaves(tree)
        assert rows[0].train_err == training_errors(tree) / tree.counts.total

    def test_huge_alpha_row_is_a_single_leaf(self):
        tree, holdout = self._noisy_tree_and_holdout()
        rows = sensitivity_sweep(tree, [0.0, 1e9], holdout)
        assert rows[-1].leaves == 1

    def test_leaves_non_increasing_and_holdout_sane(self):
        tree, holdout = self._noisy_tree_and_holdout(seed=5)
        rows = sensitivity_sweep(tree, [0.0, 0.5, 1.0, 2.0, 4.0, 8.0], holdout)
        leaves = [r.leaves for r in rows]
        assert leaves == sorted(leaves, reverse=True)
        assert all(0.0 <= r.holdout_err <= 1.0 for r in rows)
        assert all(0.0 <= r.train_err <= 1.0 for r in rows)

    def test_grid_validation(self):
        tree, holdout = self._noisy_tree_and_holdout()
        with pytest.raises(ValueError, match="nonempty"):
            sensitivity_sweep(tree, [], holdout)
        with pytest.raises(ValueError, match="ascending"):
            sensitivity_sweep(tree, [1.0, 0.5], holdout)
        with pytest.raises(ValueError, match="ascending"):
            sensitivity_sweep(tree, [1.0, 1.0], holdout)

    def test_holdout_error_rate_counts_misrouted_examples(self):
        tree = Branch(
            0,
            Leaf(ClassCounts(3, 0), 1.0, POSITIVE),
            Leaf(ClassCounts(0, 3), 0.0, NEGATIVE),
            ClassCounts(3, 3),
        )
        holdout = count_types(
            [Example((1,), POSITIVE)] * 3
            + [Example((1,), NEGATIVE)]      # lands in the positive leaf
            + [Example((0,), NEGATIVE)] * 4
        )
        assert holdout_error_rate(tree, holdout) == pytest.approx(1 / 8)
