"""Posterior-style scoring of leaves, trees and decision rules.

The central quantity is the leaf log-likelihood

    p * ln(q) + n * ln(1 - q)

for a leaf holding p positive and n negative examples with estimated
positive fraction q.  Maximising over q gives q = p / (p + n) and fixes
the score each leaf contributes to its tree.  A tree's score is the sum
of its leaves' maxima minus a complexity charge of ``alpha`` per
internal node, so alpha = 0 ranks trees purely by fit and large alpha
favours small trees.

Conventions: 0 * ln(0) is 0, so pure leaves score 0 at the maximum; if
a leaf asserts probability 0 for a class that actually occurs in it,
its score is -inf and any tree containing it loses every comparison.
Smoothing (q = (p + a) / (p + n + 2a) with a > 0) keeps estimates off
the boundary; it moves estimates and scores but never the side of 1/2
an estimate falls on, because the map pins the midpoint.

All functions here are pure; safe to call concurrently.
"""

from __future__ import annotations

import math
from collections.abc import Mapping
from dataclasses import dataclass

from .dataset import NEGATIVE, POSITIVE, ClassCounts, TypeKey
from .tree import Tree, check_consistent, count_internal, iter_leaves

_WEIGHT_TOL = 1e-9


@dataclass(frozen=True)
class PriorConfig:
    """Scoring knobs: complexity charge per internal node, leaf smoothing.

    ``alpha`` is measured in nats of log-likelihood; a split survives
    pruning only if it buys more than ``alpha`` of fit.  ``smoothing``
    is the symmetric pseudocount added to each class when estimating a
    leaf's positive fraction; zero means raw maximum likelihood.
    """

    alpha: float = 0.0
    smoothing: float = 0.0

    def __post_init__(self) -> None:
        if self.alpha < 0:
            raise ValueError(f"alpha must be >= 0, got {self.alpha}")
        if self.smoothing < 0:
            raise ValueError(f"smoothing must be >= 0, got {self.smoothing}")


@dataclass(frozen=True)
class RuleScore:
    """A tree's score split into its fit and complexity parts."""

    log_likelihood: float
    complexity_penalty: float

    @property
    def total(self) -> float:
        return self.log_likelihood - self.complexity_penalty


def leaf_log_likelihood(counts: ClassCounts, pos_prob: float) -> float:
    """Log-likelihood of a leaf's tallies under a fixed positive fraction."""
    if not 0.0 <= pos_prob <= 1.0:
        raise ValueError(f"pos_prob must be in [0, 1], got {pos_prob}")
    total = 0.0
    if counts.pos:
        total += -math.inf if pos_prob == 0.0 else counts.pos * math.log(pos_prob)
    if counts.neg:
        total += -math.inf if pos_prob == 1.0 else counts.neg * math.log(1.0 - pos_prob)
    return total


def estimate_pos_prob(counts: ClassCounts, smoothing: float = 0.0) -> float:
    """Positive-fraction estimate (p + a) / (p + n + 2a).

    With zero smoothing this is the maximiser p / (p + n) of the leaf
    log-likelihood; an empty leaf is then an error.
    """
    if smoothing < 0:
        raise ValueError(f"smoothing must be >= 0, got {smoothing}")
    denom = counts.total + 2.0 * smoothing
    if denom == 0:
        raise ValueError("leaf with no examples and no smoothing has no defined estimate")
    return (counts.pos + smoothing) / denom


def max_leaf_log_likelihood(counts: ClassCounts, smoothing: float = 0.0) -> tuple[float, float]:
    """Best estimate for a leaf and the log-likelihood it achieves.

    Returns ``(estimate, ll)``.  With zero smoothing the closed form
    p*ln(p/m) + n*ln(n/m), m = p + n, is used; it is symmetric under
    swapping the classes, which downstream exact-tie comparisons rely
    on.  Pure leaves score 0.
    """
    q = estimate_pos_prob(counts, smoothing)
    if smoothing:
        return q, leaf_log_likelihood(counts, q)
    p, n = counts.pos, counts.neg
    m = p + n
    ll = 0.0
    if p:
        ll += p * math.log(p / m)
    if n:
        ll += n * math.log(n / m)
    return q, ll


def decide_label(pos_prob: float) -> str:
    """Decision rule: assert positive exactly when the estimate is >= 1/2."""
    return POSITIVE if pos_prob >= 0.5 else NEGATIVE


def decide_leaf(counts: ClassCounts, smoothing: float = 0.0) -> str:
    """Class a leaf with these tallies asserts.

    The tie at 1/2 goes to positive.  Because smoothing pins the
    midpoint of the estimate map, this agrees with comparing raw counts
    p >= n for every smoothing value.
    """
    return decide_label(estimate_pos_prob(counts, smoothing))


def tree_score(tree: Tree, prior: PriorConfig) -> RuleScore:
    """Score a tree: summed leaf maxima minus alpha per internal node.

    Leaf log-likelihoods are evaluated at the estimate implied by
    ``prior.smoothing`` and each leaf's own tallies, so the result does
    not depend on the estimates the leaves happen to carry.  Empty
    leaves contribute zero.  Raises if branch counts do not equal the
    sum of their children's.
    """
    check_consistent(tree)
    ll = 0.0
    for leaf in iter_leaves(tree):
        if leaf.counts.total == 0:
            continue
        ll += max_leaf_log_likelihood(leaf.counts, prior.smoothing)[1]
    return RuleScore(log_likelihood=ll, complexity_penalty=prior.alpha * count_internal(tree))


def expected_error_cost(
    decisions: Mapping[TypeKey, str],
    type_weights: Mapping[TypeKey, float],
    pos_probs: Mapping[TypeKey, float],
) -> float:
    """Expected misclassification rate of a per-type decision rule.

    ``type_weights`` is a distribution over types (must sum to 1);
    ``pos_probs`` gives each type's true positive fraction.  Asserting
    positive on a type costs its negative fraction and vice versa.
    Every type with positive weight needs a decision.
    """
    weight_sum = math.fsum(type_weights.values())
    if abs(weight_sum - 1.0) > _WEIGHT_TOL:
        raise ValueError(f"type weights must sum to 1, got {weight_sum}")
    cost = 0.0
    for key, weight in type_weights.items():
        if weight == 0.0:
            continue
        if key not in decisions:
            raise ValueError(f"no decision for type {key} with weight {weight}")
        q = pos_probs[key]
        cost += weight * ((1.0 - q) if decisions[key] == POSITIVE else q)
    return cost
