"""Decision-tree node types and structural operations.

Trees are immutable: growth and pruning build new nodes rather than
mutating.  Every node carries the exact class tallies of the training
examples that reached it, so scores and error counts can be recomputed
from the tree alone without re-touching the data.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Union

from .dataset import NEGATIVE, POSITIVE, ClassCounts, TypeKey
from .errors import InvariantError

Tree = Union["Leaf", "Branch"]


@dataclass(frozen=True)
class Leaf:
    """A terminal node: class tallies, positive-fraction estimate, decision.

    ``pos_prob`` is the (possibly smoothed) estimate of the positive
    fraction among objects reaching this leaf; ``label`` is the class
    asserted for them.  A leaf created for an empty branch has zero
    counts and inherits both fields from its parent.
    """

    counts: ClassCounts
    pos_prob: float
    label: str

    def __post_init__(self) -> None:
        if not 0.0 <= self.pos_prob <= 1.0:
            raise ValueError(f"pos_prob must be in [0, 1], got {self.pos_prob}")
        if self.label not in (POSITIVE, NEGATIVE):
            raise ValueError(f"label must be {POSITIVE!r} or {NEGATIVE!r}")


@dataclass(frozen=True)
class Branch:
    """An internal node testing one attribute.

    ``yes`` is taken by objects whose attribute value is 1, ``no`` by
    the rest.  ``attribute`` is an index into the schema.
    """

    attribute: int
    yes: Tree
    no: Tree
    counts: ClassCounts


def classify(tree: Tree, key: TypeKey) -> Leaf:
    """Route one object to its leaf.

    The vector must cover every attribute the path tests.
    """
    node = tree
    while isinstance(node, Branch):
        if node.attribute >= len(key):
            raise ValueError(
                f"vector of {len(key)} values cannot answer a test on attribute {node.attribute}"
            )
        node = node.yes if key[node.attribute] == 1 else node.no
    return node


def iter_leaves(tree: Tree) -> Iterator[Leaf]:
    """Yield leaves left to right (yes branch first)."""
    if isinstance(tree, Leaf):
        yield tree
    else:
        yield from iter_leaves(tree.yes)
        yield from iter_leaves(tree.no)


def iter_branches(tree: Tree) -> Iterator[Branch]:
    """Yield internal nodes in preorder."""
    if isinstance(tree, Branch):
        yield tree
        yield from iter_branches(tree.yes)
        yield from iter_branches(tree.no)


def count_leaves(tree: Tree) -> int:
    return sum(1 for _ in iter_leaves(tree))


def count_internal(tree: Tree) -> int:
    return sum(1 for _ in iter_branches(tree))


def depth(tree: Tree) -> int:
    """Longest root-to-leaf path, in tests; a bare leaf has depth 0."""
    if isinstance(tree, Leaf):
        return 0
    return 1 + max(depth(tree.yes), depth(tree.no))


def training_errors(tree: Tree) -> int:
    """Errors the tree makes on its own training tallies."""
    total = 0
    for leaf in iter_leaves(tree):
        total += leaf.counts.neg if leaf.label == POSITIVE else leaf.counts.pos
    return total


def check_consistent(tree: Tree) -> None:
    """Verify that every branch's counts equal the sum of its children.

    Raises :class:`InvariantError` on a mismatch: the tree was built
    incorrectly or corrupted in transit, not fed bad user data.
    """
    for branch in iter_branches(tree):
        combined = branch.yes.counts + branch.no.counts
        if combined != branch.counts:
            raise InvariantError(
                f"branch on attribute {branch.attribute} has counts "
                f"({branch.counts.pos}, {branch.counts.neg}) but children sum to "
                f"({combined.pos}, {combined.neg})"
            )
