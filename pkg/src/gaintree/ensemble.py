"""Stochastic generation of high-scoring trees and pooled estimates.

A single grown-and-pruned tree gives one estimate of each type's
positive fraction; averaging the estimates of several independently
sampled good trees is usually better.  Trees are sampled by running the
ordinary growth loop with softmax split selection: at each node,
attribute j is drawn with probability proportional to exp(gain_j / T).
Low temperature concentrates on the greedy choice, infinite temperature
ignores gain entirely.  Each sampled tree is then pruned as usual.
"""

from __future__ import annotations

import math
from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np

from .dataset import TypeCounts, TypeKey
from .induction import GrowConfig, SplitEvaluation, grow
from .pruning import prune_optimal
from .scoring import PriorConfig, tree_score
from .tree import Tree, classify

WEIGHTINGS = ("uniform", "posterior")


@dataclass(frozen=True)
class EnsembleConfig:
    """How many trees to sample, how noisily, and how to pool them."""

    size: int = 16
    temperature: float = 0.05
    seed: int = 0
    weighting: str = "uniform"

    def __post_init__(self) -> None:
        if self.size < 1:
            raise ValueError(f"size must be >= 1, got {self.size}")
        if not self.temperature > 0:
            raise ValueError(f"temperature must be > 0, got {self.temperature}")
        if self.weighting not in WEIGHTINGS:
            raise ValueError(f"weighting must be one of {WEIGHTINGS}, got {self.weighting!r}")


@dataclass(frozen=True)
class PooledEstimate:
    """Per-type pooled positive-fraction estimates plus per-tree scores."""

    estimates: dict[TypeKey, float]
    tree_totals: tuple[float, ...]


def boltzmann_probabilities(gains: Sequence[float], temperature: float) -> list[float]:
    """Selection distribution proportional to exp(gain / temperature).

    Computed with the max gain shifted to zero, so tiny temperatures
    underflow gracefully to a point mass on the best attribute
    (exactly-tied gains stay equally likely at every temperature).
    ``temperature=math.inf`` is the uniform distribution.
    """
    if not gains:
        raise ValueError("need at least one gain")
    if not temperature > 0:
        raise ValueError(f"temperature must be > 0, got {temperature}")
    if math.isinf(temperature):
        return [1.0 / len(gains)] * len(gains)
    top = max(gains)
    weights = [math.exp((g - top) / temperature) for g in gains]
    z = math.fsum(weights)
    return [w / z for w in weights]


def sample_tree(
    counts: TypeCounts,
    grow_config: GrowConfig,
    prior: PriorConfig,
    temperature: float,
    rng: np.random.Generator,
) -> Tree:
    """Grow one tree with softmax split selection, then prune it."""

    def choose(evaluations: Sequence[SplitEvaluation]) -> int:
        probs = boltzmann_probabilities([ev.gain_bits for ev in evaluations], temperature)
        index = int(rng.choice(len(evaluations), p=probs))
        return evaluations[index].attribute

    grown = grow(counts, grow_config, prior, choose=choose)
    return prune_optimal(grown, prior).tree


def sample_ensemble(
    counts: TypeCounts,
    grow_config: GrowConfig,
    prior: PriorConfig,
    config: EnsembleConfig,
) -> tuple[list[Tree], list[float]]:
    """Sample ``config.size`` trees from independent seed-derived streams.

    Returns the trees and their score totals under ``prior``.  The
    (seed, config) pair fully determines the result.
    """
    seeds = np.random.SeedSequence(config.seed).spawn(config.size)
    trees = []
    totals = []
    for seed in seeds:
        tree = sample_tree(counts, grow_config, prior, config.temperature, np.random.default_rng(seed))
        trees.append(tree)
        totals.append(tree_score(tree, prior).total)
    return trees, totals


def pool(
    trees: Sequence[Tree],
    types: Sequence[TypeKey],
    weighting: str = "uniform",
    totals: Sequence[float] | None = None,
) -> PooledEstimate:
    """Average the trees' leaf estimates for each queried type.

    ``uniform`` takes the plain mean.  ``posterior`` weights each tree
    by exp(total - max total), so clearly worse trees contribute little
    and a tree scoring -inf contributes nothing; it requires ``totals``.
    When every total is -inf the weights fall back to uniform.
    """
    if not trees:
        raise ValueError("need at least one tree to pool")
    if weighting not in WEIGHTINGS:
        raise ValueError(f"weighting must be one of {WEIGHTINGS}, got {weighting!r}")
    if weighting == "posterior":
        if totals is None:
            raise ValueError("posterior weighting requires the trees' score totals")
        if len(totals) != len(trees):
            raise ValueError(f"got {len(trees)} trees but {len(totals)} totals")
        top = max(totals)
        if math.isinf(top) and top < 0:
            weights = [1.0] * len(trees)
        else:
            weights = [math.exp(t - top) for t in totals]
    else:
        weights = [1.0] * len(trees)
    z = math.fsum(weights)
    estimates = {}
    for key in types:
        leaf_probs = [classify(tree, key).pos_prob for tree in trees]
        weighted = math.fsum(w * q for w, q in zip(weights, leaf_probs))
        estimates[key] = weighted / z
    return PooledEstimate(
        estimates=estimates,
        tree_totals=tuple(totals) if totals is not None else (),
    )
