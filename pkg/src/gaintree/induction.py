"""Greedy top-down tree growth driven by the gain splitting rule.

Each node evaluates every untested attribute and splits on the one with
the highest gain.  Gain here is computed from the split's summed leaf
log-likelihood as

    gain_bits = (split_ll - parent_ll) / (ln(2) * examples at node)

which equals the familiar entropy form, parent class entropy minus the
example-weighted mean child entropy in bits.  Deriving it from the
log-likelihood rather than computing the two quantities separately
guarantees the two rankings agree attribute-for-attribute including
exact ties; round-off can leave a mathematically-zero gain a hair off
zero, so values are not clamped to be nonnegative.

Zero or negative gain never stops growth: a split that looks useless
one ply ahead (parity being the extreme case) can still be a necessary
step toward pure leaves.  Growth stops only on class-pure nodes,
attribute exhaustion, the min_leaf floor, or an explicit depth bound.
"""

from __future__ import annotations

import math
from collections.abc import Callable, Mapping, Sequence
from dataclasses import dataclass
from typing import Optional

from .dataset import ClassCounts, TypeCounts, TypeKey, split_counts
from .scoring import (
    PriorConfig,
    decide_label,
    estimate_pos_prob,
    max_leaf_log_likelihood,
)
from .tree import Branch, Leaf, Tree

_LN2 = math.log(2.0)

TIE_BREAK_RULES = ("lowest", "highest")


@dataclass(frozen=True)
class SplitEvaluation:
    """One candidate test at one node.

    ``max_ll`` is the summed per-branch maximum log-likelihood in nats
    (empty branches contribute zero); ``gain_bits`` is its affine image
    described in the module docstring.
    """

    attribute: int
    yes_counts: ClassCounts
    no_counts: ClassCounts
    gain_bits: float
    max_ll: float


@dataclass(frozen=True)
class GrowConfig:
    """Growth bounds and the deterministic tie-break rule."""

    min_leaf: int = 1
    tie_break: str = "lowest"
    max_depth: Optional[int] = None

    def __post_init__(self) -> None:
        if self.min_leaf < 1:
            raise ValueError(f"min_leaf must be >= 1, got {self.min_leaf}")
        if self.tie_break not in TIE_BREAK_RULES:
            raise ValueError(f"tie_break must be one of {TIE_BREAK_RULES}, got {self.tie_break!r}")
        if self.max_depth is not None and self.max_depth < 0:
            raise ValueError(f"max_depth must be >= 0, got {self.max_depth}")


def _score_split(parent: ClassCounts, yes: ClassCounts, no: ClassCounts) -> tuple[float, float]:
    split_ll = 0.0
    for child in (yes, no):
        if child.total:
            split_ll += max_leaf_log_likelihood(child)[1]
    parent_ll = max_leaf_log_likelihood(parent)[1]
    gain_bits = (split_ll - parent_ll) / (_LN2 * parent.total)
    return gain_bits, split_ll


def evaluate_split(
    counts: TypeCounts,
    selector: Mapping[int, int],
    attribute: int,
) -> SplitEvaluation:
    """Evaluate testing ``attribute`` at the node ``selector`` describes.

    The node must hold at least one example.  Attributes already on the
    path cannot be re-tested.
    """
    yes, no = split_counts(counts, selector, attribute)
    parent = yes + no
    if parent.total == 0:
        raise ValueError("cannot evaluate a split at an empty node")
    gain_bits, split_ll = _score_split(parent, yes, no)
    return SplitEvaluation(
        attribute=attribute,
        yes_counts=yes,
        no_counts=no,
        gain_bits=gain_bits,
        max_ll=split_ll,
    )


def best_attribute(
    evaluations: Sequence[SplitEvaluation],
    tie_break: str = "lowest",
) -> Optional[int]:
    """Attribute of the highest-gain evaluation, or None when there are none.

    Exact gain ties go to the lowest attribute index by default, the
    highest under ``tie_break="highest"``.
    """
    if tie_break not in TIE_BREAK_RULES:
        raise ValueError(f"tie_break must be one of {TIE_BREAK_RULES}, got {tie_break!r}")
    best: Optional[SplitEvaluation] = None
    for ev in sorted(evaluations, key=lambda ev: ev.attribute):
        if best is None or ev.gain_bits > best.gain_bits:
            best = ev
        elif ev.gain_bits == best.gain_bits and tie_break == "highest":
            best = ev
    return best.attribute if best is not None else None


#: Pluggable split selection: receives the node's evaluations (ascending
#: by attribute) and returns the attribute to test.
SplitChooser = Callable[[Sequence[SplitEvaluation]], int]


def grow(
    counts: TypeCounts,
    config: GrowConfig | None = None,
    prior: PriorConfig | None = None,
    *,
    choose: SplitChooser | None = None,
) -> Tree:
    """Grow a tree over the tallied data, greedily and to full extent.

    A node becomes a leaf when it is class-pure, when its examples are
    all of one object type (which subsumes running out of untested
    attributes), when it holds fewer than ``config.min_leaf`` examples,
    or at ``config.max_depth``.  A branch that receives no examples
    becomes a leaf inheriting its parent's label and estimate.
    ``prior.smoothing`` shapes leaf estimates; ``prior.alpha`` plays no
    role during growth.

    ``choose`` overrides the deterministic highest-gain selection, for
    stochastic tree generation.  Deterministic given its inputs.
    """
    config = config or GrowConfig()
    prior = prior or PriorConfig()
    if not counts.counts or counts.n < 1:
        raise ValueError("cannot grow a tree from empty counts")
    pick: SplitChooser = choose or (lambda evals: best_attribute(evals, config.tie_break))

    def make_leaf(node: ClassCounts) -> Leaf:
        q = estimate_pos_prob(node, prior.smoothing)
        return Leaf(counts=node, pos_prob=q, label=decide_label(q))

    def build(
        subset: dict[TypeKey, ClassCounts],
        node: ClassCounts,
        untested: tuple[int, ...],
        depth: int,
    ) -> Tree:
        at_depth_limit = config.max_depth is not None and depth >= config.max_depth
        single_type = len(subset) == 1
        if (
            node.is_pure
            or not untested
            or single_type
            or node.total < config.min_leaf
            or at_depth_limit
        ):
            return make_leaf(node)
        evaluations = []
        for j in untested:
            yes = no = ClassCounts(0, 0)
            for key, c in subset.items():
                if key[j] == 1:
                    yes = yes + c
                else:
                    no = no + c
            gain_bits, split_ll = _score_split(node, yes, no)
            evaluations.append(SplitEvaluation(j, yes, no, gain_bits, split_ll))
        attribute = pick(evaluations)
        by_attribute = {ev.attribute: ev for ev in evaluations}
        if attribute not in by_attribute:
            raise ValueError(
                f"chooser picked attribute {attribute}, not among candidates "
                f"{sorted(by_attribute)}"
            )
        chosen = by_attribute[attribute]
        remaining = tuple(j for j in untested if j != attribute)
        parent_leaf = make_leaf(node)

        def child(branch_counts: ClassCounts, value: int) -> Tree:
            if branch_counts.total == 0:
                return Leaf(
                    counts=branch_counts,
                    pos_prob=parent_leaf.pos_prob,
                    label=parent_leaf.label,
                )
            branch_subset = {
                key: c for key, c in subset.items() if key[attribute] == value
            }
            return build(branch_subset, branch_counts, remaining, depth + 1)

        return Branch(
            attribute=attribute,
            yes=child(chosen.yes_counts, 1),
            no=child(chosen.no_counts, 0),
            counts=node,
        )

    subset = dict(sorted(counts.counts.items()))
    return build(subset, counts.totals(), tuple(range(counts.n_attributes)), 0)
