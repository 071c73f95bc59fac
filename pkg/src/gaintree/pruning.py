"""Optimal pruning of a grown tree under the complexity-charged score.

The search space is every pruning of the input tree: every way of
replacing whole subtrees by leaves (ancestor-closed subsets of the
internal nodes survive).  Because the score is a sum over leaves minus
alpha per internal node, the best pruning decomposes per subtree and a
single bottom-up pass finds it:

    best(node) = max(collapse(node), best(yes) + best(no) - alpha)

Ties prefer the collapse, so the returned tree is the smallest one
attaining the optimum.  :func:`enumerate_prunings` is the exponential
oracle used to validate the pass.
"""

from __future__ import annotations

from collections.abc import Iterator, Sequence
from dataclasses import dataclass

from .dataset import POSITIVE, TypeCounts
from .scoring import (
    PriorConfig,
    RuleScore,
    decide_label,
    estimate_pos_prob,
    max_leaf_log_likelihood,
    tree_score,
)
from .tree import (
    Branch,
    Leaf,
    Tree,
    check_consistent,
    classify,
    count_internal,
    count_leaves,
    training_errors,
)

ENUMERATION_LIMIT = 20


@dataclass(frozen=True)
class PruneResult:
    """The chosen pruning, its score, and how many tests were removed."""

    tree: Tree
    score: RuleScore
    pruned_node_count: int


def _collapse(node: Tree, smoothing: float) -> Leaf:
    if node.counts.total == 0:
        # Only reachable for a branch both of whose children are empty,
        # which growth never produces.
        raise ValueError("cannot collapse a subtree holding no examples")
    q = estimate_pos_prob(node.counts, smoothing)
    return Leaf(counts=node.counts, pos_prob=q, label=decide_label(q))


def _node_ll(node: Tree, smoothing: float) -> float:
    if node.counts.total == 0:
        return 0.0
    return max_leaf_log_likelihood(node.counts, smoothing)[1]


def prune_optimal(tree: Tree, prior: PriorConfig) -> PruneResult:
    """Best-scoring pruning of ``tree`` under ``prior``, ties to the smaller tree.

    With alpha = 0 the score of the input is preserved exactly (collapsing
    can only lose fit), though zero-loss subtrees still collapse under
    the tie rule.  Raises on inconsistent branch counts.
    """
    check_consistent(tree)

    def best(node: Tree) -> tuple[Tree, float]:
        if isinstance(node, Leaf):
            return node, _node_ll(node, prior.smoothing)
        yes_tree, yes_score = best(node.yes)
        no_tree, no_score = best(node.no)
        keep_score = yes_score + no_score - prior.alpha
        collapse_score = _node_ll(node, prior.smoothing)
        if collapse_score >= keep_score:
            return _collapse(node, prior.smoothing), collapse_score
        kept = Branch(attribute=node.attribute, yes=yes_tree, no=no_tree, counts=node.counts)
        return kept, keep_score

    pruned, _ = best(tree)
    return PruneResult(
        tree=pruned,
        score=tree_score(pruned, prior),
        pruned_node_count=count_internal(tree) - count_internal(pruned),
    )


def iter_prunings(tree: Tree, smoothing: float = 0.0) -> Iterator[Tree]:
    """Yield every pruning of ``tree`` (collapsed variants included), unscored."""
    if isinstance(tree, Leaf):
        yield tree
        return
    yield _collapse(tree, smoothing)
    for yes in iter_prunings(tree.yes, smoothing):
        for no in iter_prunings(tree.no, smoothing):
            yield Branch(attribute=tree.attribute, yes=yes, no=no, counts=tree.counts)


def enumerate_prunings(tree: Tree, prior: PriorConfig) -> tuple[float, int]:
    """Exhaustively score every pruning; return (best total, pruning count).

    Exponential in tree size; refuses trees with more than
    ``ENUMERATION_LIMIT`` internal nodes.
    """
    internal = count_internal(tree)
    if internal > ENUMERATION_LIMIT:
        raise ValueError(
            f"tree has {internal} internal nodes; enumeration is capped at {ENUMERATION_LIMIT}"
        )
    best_total = None
    count = 0
    for candidate in iter_prunings(tree, prior.smoothing):
        count += 1
        total = tree_score(candidate, prior).total
        if best_total is None or total > best_total:
            best_total = total
    return best_total, count


@dataclass(frozen=True)
class SweepRow:
    """One pruning-strength setting and the quality that results.

    Error fields are rates in [0, 1]: training error of the pruned tree
    on its own tallies, and error on the held-out tallies.
    """

    alpha: float
    leaves: int
    train_err: float
    holdout_err: float


def holdout_error_rate(tree: Tree, holdout: TypeCounts) -> float:
    """Fraction of held-out examples the tree misclassifies."""
    wrong = 0
    for key, c in holdout.counts.items():
        leaf = classify(tree, key)
        wrong += c.neg if leaf.label == POSITIVE else c.pos
    return wrong / holdout.n


def sensitivity_sweep(
    tree: Tree,
    alphas: Sequence[float],
    holdout: TypeCounts,
    smoothing: float = 0.0,
) -> list[SweepRow]:
    """Prune at each alpha of a strictly ascending grid and tabulate quality.

    The leaf count column is non-increasing down the table: raising the
    charge per test can only remove more of the tree.
    """
    if not alphas:
        raise ValueError("alpha grid must be nonempty")
    if any(b <= a for a, b in zip(alphas, alphas[1:])):
        raise ValueError(f"alpha grid must be strictly ascending, got {list(alphas)}")
    n_train = tree.counts.total
    rows = []
    for alpha in alphas:
        result = prune_optimal(tree, PriorConfig(alpha=alpha, smoothing=smoothing))
        rows.append(
            SweepRow(
                alpha=alpha,
                leaves=count_leaves(result.tree),
                train_err=training_errors(result.tree) / n_train,
                holdout_err=holdout_error_rate(result.tree, holdout),
            )
        )
    return rows
