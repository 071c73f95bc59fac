"""Synthetic dataset generators.

Two opposite regimes for the induction machinery: parity, where no
single attribute carries any information and greedy gain has nothing to
work with, and random tree concepts with label noise, where a small
true tree exists and overgrown trees pay for chasing the noise.
"""

from __future__ import annotations

import numpy as np

from .dataset import NEGATIVE, POSITIVE, ClassCounts, Example, Schema
from .tree import Branch, Leaf, Tree, classify

_PARITY_MIN_BITS = 2
_PARITY_MAX_BITS = 16


def gen_parity(
    bits: int,
    complete: bool = True,
    sample_size: int | None = None,
    seed: int = 0,
) -> tuple[Schema, list[Example]]:
    """Parity data: label is positive exactly when an odd number of bits is set.

    ``complete`` emits each of the 2^bits vectors once, in ascending
    order; otherwise ``sample_size`` vectors are drawn uniformly with
    replacement.
    """
    if not _PARITY_MIN_BITS <= bits <= _PARITY_MAX_BITS:
        raise ValueError(
            f"bits must be in {_PARITY_MIN_BITS}..{_PARITY_MAX_BITS}, got {bits}"
        )
    schema = Schema(attribute_names=tuple(f"b{i}" for i in range(bits)))

    def example(values: tuple[int, ...]) -> Example:
        label = POSITIVE if sum(values) % 2 == 1 else NEGATIVE
        return Example(values=values, label=label)

    if complete:
        examples = [
            example(tuple((v >> (bits - 1 - i)) & 1 for i in range(bits)))
            for v in range(2 ** bits)
        ]
    else:
        if sample_size is None or sample_size < 1:
            raise ValueError("sampled generation needs sample_size >= 1")
        rng = np.random.default_rng(seed)
        draws = rng.integers(0, 2, size=(sample_size, bits))
        examples = [example(tuple(int(v) for v in row)) for row in draws]
    return schema, examples


def gen_tree_concept(
    attrs: int,
    depth: int,
    noise: float,
    train_size: int,
    test_size: int,
    seed: int = 0,
) -> tuple[Schema, list[Example], list[Example], Tree]:
    """Train/test data labelled by a random hidden tree.

    The target tree is complete to ``depth``: every path tests ``depth``
    distinct randomly chosen attributes and ends in a random leaf label,
    with labels resampled until both classes appear somewhere.  Training
    labels are flipped independently with probability ``noise``; test
    labels are left clean.  Everything is a deterministic function of
    ``seed``.
    """
    if attrs < 1:
        raise ValueError(f"attrs must be >= 1, got {attrs}")
    if not 1 <= depth <= attrs:
        raise ValueError(f"depth must be in 1..{attrs}, got {depth}")
    if not 0.0 <= noise < 0.5:
        raise ValueError(f"noise must be in [0, 0.5), got {noise}")
    if train_size < 1 or test_size < 1:
        raise ValueError("train_size and test_size must be >= 1")
    rng = np.random.default_rng(seed)
    schema = Schema(attribute_names=tuple(f"a{i}" for i in range(attrs)))

    leaf_labels = _mixed_labels(rng, 2 ** depth)
    label_iter = iter(leaf_labels)

    def build(available: list[int], level: int) -> Tree:
        placeholder = ClassCounts(0, 0)
        if level == depth:
            label = next(label_iter)
            return Leaf(
                counts=placeholder,
                pos_prob=1.0 if label == POSITIVE else 0.0,
                label=label,
            )
        pick = int(rng.integers(len(available)))
        attribute = available[pick]
        remaining = available[:pick] + available[pick + 1:]
        return Branch(
            attribute=attribute,
            yes=build(remaining, level + 1),
            no=build(remaining, level + 1),
            counts=placeholder,
        )

    target = build(list(range(attrs)), 0)

    def draw(size: int, flip_rate: float) -> list[Example]:
        vectors = rng.integers(0, 2, size=(size, attrs))
        flips = rng.random(size) < flip_rate
        examples = []
        for row, flip in zip(vectors, flips):
            values = tuple(int(v) for v in row)
            label = classify(target, values).label
            if flip:
                label = NEGATIVE if label == POSITIVE else POSITIVE
            examples.append(Example(values=values, label=label))
        return examples

    train = draw(train_size, noise)
    test = draw(test_size, 0.0)
    return schema, train, test, target


def _mixed_labels(rng: np.random.Generator, count: int) -> list[str]:
    """Random labels with both classes guaranteed present."""
    while True:
        bits = rng.integers(0, 2, size=count)
        if 0 < int(bits.sum()) < count:
            return [POSITIVE if b else NEGATIVE for b in bits]
