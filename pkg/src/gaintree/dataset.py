"""Loading and exact tallying of binary-attribute classification data.

A dataset is a CSV file: a header row naming the columns, attribute
columns holding ``0``/``1``, and a final class column holding one of a
configurable token pair (``+``/``-`` by default, with ``1``/``0``
accepted as aliases).  There is no quoting or escaping.

Examples are aggregated into per-type integer counts, where the "type"
of an example is its full attribute bit-vector.  The type space has
size 2^N but only observed types are stored; training sets are tiny
compared to the space (100 examples over 15 attributes touch at most
100 of the 32768 possible types).  All counts are exact integers;
proportions are derived on demand.

:class:`Schema`, :class:`Example` and :class:`TypeCounts` are immutable
after construction and safe to share across concurrent readers.
"""

from __future__ import annotations

import random
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass

from .errors import DataFormatError

POSITIVE = "+"
NEGATIVE = "-"

#: A full assignment of 0/1 values to every attribute, in schema order.
TypeKey = tuple[int, ...]

# Characters that would break the CSV or model-file grammars.
_FORBIDDEN_IN_TOKENS = set(" \t\r\n,()")


def _check_token(kind: str, token: str) -> None:
    if not token or _FORBIDDEN_IN_TOKENS & set(token):
        raise ValueError(
            f"bad {kind} {token!r}: must be nonempty with no whitespace, "
            "commas or parentheses"
        )


@dataclass(frozen=True)
class Schema:
    """The attribute language: ordered attribute names plus class tokens.

    Attribute order is fixed and defines the attribute index used
    everywhere else.  Names and tokens must survive both the CSV format
    and the model-file format, so whitespace, commas and parentheses
    are rejected.
    """

    attribute_names: tuple[str, ...]
    positive_token: str = POSITIVE
    negative_token: str = NEGATIVE

    def __post_init__(self) -> None:
        if len(self.attribute_names) < 1:
            raise ValueError("schema needs at least one attribute")
        seen = set()
        for name in self.attribute_names:
            _check_token("attribute name", name)
            if name in seen:
                raise ValueError(f"duplicate attribute name {name!r}")
            seen.add(name)
        _check_token("class token", self.positive_token)
        _check_token("class token", self.negative_token)
        if self.positive_token == self.negative_token:
            raise ValueError("positive and negative class tokens must differ")

    @property
    def n_attributes(self) -> int:
        return len(self.attribute_names)


@dataclass(frozen=True)
class Example:
    """One labelled object: its attribute bit-vector and its class."""

    values: TypeKey
    label: str

    def __post_init__(self) -> None:
        if any(v not in (0, 1) for v in self.values):
            raise ValueError(f"attribute values must be 0 or 1, got {self.values!r}")
        if self.label not in (POSITIVE, NEGATIVE):
            raise ValueError(f"label must be {POSITIVE!r} or {NEGATIVE!r}, got {self.label!r}")


@dataclass(frozen=True)
class ClassCounts:
    """Positive/negative tallies for one object type or one tree node."""

    pos: int
    neg: int

    def __post_init__(self) -> None:
        if self.pos < 0 or self.neg < 0:
            raise ValueError(f"counts must be nonnegative, got ({self.pos}, {self.neg})")

    @property
    def total(self) -> int:
        return self.pos + self.neg

    @property
    def is_pure(self) -> bool:
        return self.pos == 0 or self.neg == 0

    def __add__(self, other: "ClassCounts") -> "ClassCounts":
        return ClassCounts(self.pos + other.pos, self.neg + other.neg)


@dataclass(frozen=True)
class TypeCounts:
    """Sparse per-type tallies for a whole training set.

    ``counts`` maps each observed type key to its :class:`ClassCounts`;
    ``n`` is the total number of examples.  The mapping is treated as
    immutable once built.
    """

    counts: dict[TypeKey, ClassCounts]
    n: int

    @property
    def n_attributes(self) -> int:
        return len(next(iter(self.counts)))

    def totals(self) -> ClassCounts:
        """Aggregate counts over every type (the root-node tallies)."""
        pos = sum(c.pos for c in self.counts.values())
        return ClassCounts(pos, self.n - pos)

    def frequencies(self) -> dict[TypeKey, float]:
        """Empirical weight of each observed type; sums to 1."""
        return {key: c.total / self.n for key, c in self.counts.items()}

    def positive_rates(self) -> dict[TypeKey, float]:
        """Empirical positive fraction of each observed type."""
        return {key: c.pos / c.total for key, c in self.counts.items()}


def count_types(examples: Sequence[Example]) -> TypeCounts:
    """Tally a list of examples into per-type counts.

    Duplicate rows are legal and accumulate.  The result does not depend
    on example order.  Raises ``ValueError`` on an empty list or on
    examples of differing lengths.
    """
    if not examples:
        raise ValueError("cannot tally an empty example list")
    width = len(examples[0].values)
    pos: dict[TypeKey, int] = {}
    neg: dict[TypeKey, int] = {}
    for ex in examples:
        if len(ex.values) != width:
            raise ValueError(
                f"inconsistent example width: expected {width}, got {len(ex.values)}"
            )
        bucket = pos if ex.label == POSITIVE else neg
        bucket[ex.values] = bucket.get(ex.values, 0) + 1
    counts = {
        key: ClassCounts(pos.get(key, 0), neg.get(key, 0))
        for key in sorted(set(pos) | set(neg))
    }
    return TypeCounts(counts=counts, n=len(examples))


def split_counts(
    counts: TypeCounts,
    selector: Mapping[int, int],
    attribute: int,
) -> tuple[ClassCounts, ClassCounts]:
    """Branch tallies for testing ``attribute`` below a path selector.

    ``selector`` is a conjunction of (attribute index, required value)
    pairs describing the path to the node.  Returns the (yes, no) counts
    for the candidate test; together they conserve the node's counts.
    Re-testing an attribute already on the path is an error, since a
    binary re-test is vacuous.
    """
    n_attrs = counts.n_attributes
    if not 0 <= attribute < n_attrs:
        raise ValueError(f"attribute index {attribute} out of range 0..{n_attrs - 1}")
    if attribute in selector:
        raise ValueError(f"attribute {attribute} already tested on this path")
    for attr, value in selector.items():
        if not 0 <= attr < n_attrs:
            raise ValueError(f"selector attribute {attr} out of range 0..{n_attrs - 1}")
        if value not in (0, 1):
            raise ValueError(f"selector value for attribute {attr} must be 0 or 1")
    yes_pos = yes_neg = no_pos = no_neg = 0
    for key, c in counts.counts.items():
        if any(key[attr] != value for attr, value in selector.items()):
            continue
        if key[attribute] == 1:
            yes_pos += c.pos
            yes_neg += c.neg
        else:
            no_pos += c.pos
            no_neg += c.neg
    return ClassCounts(yes_pos, yes_neg), ClassCounts(no_pos, no_neg)


def _class_token_map(positive_token: str, negative_token: str) -> dict[str, str]:
    mapping = {positive_token: POSITIVE, negative_token: NEGATIVE}
    # The numeric aliases are accepted alongside the default pair only;
    # a custom token pair is matched exactly.
    if (positive_token, negative_token) == (POSITIVE, NEGATIVE):
        mapping.setdefault("1", POSITIVE)
        mapping.setdefault("0", NEGATIVE)
    return mapping


def load_csv(
    path: str,
    positive_token: str = POSITIVE,
    negative_token: str = NEGATIVE,
) -> tuple[Schema, list[Example]]:
    """Load a labelled dataset.

    The header row names the attribute columns; the last column is the
    class column (its name is not significant).  Attribute cells must
    be ``0`` or ``1``; class cells must match the configured token pair.
    Malformed rows raise :class:`DataFormatError` naming the line and
    column; a file with no data rows is also an error.
    """
    with open(path, encoding="utf-8") as handle:
        lines = handle.read().splitlines()
    if not lines:
        raise DataFormatError(f"{path}: empty file")
    header = [cell.strip() for cell in lines[0].split(",")]
    if len(header) < 2:
        raise DataFormatError(f"{path}: header must name at least one attribute and a class column")
    schema = Schema(
        attribute_names=tuple(header[:-1]),
        positive_token=positive_token,
        negative_token=negative_token,
    )
    class_tokens = _class_token_map(positive_token, negative_token)
    examples = []
    for lineno, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        cells = [cell.strip() for cell in line.split(",")]
        if len(cells) != len(header):
            raise DataFormatError(
                f"{path}: wrong number of columns at line {lineno}: "
                f"expected {len(header)}, got {len(cells)}"
            )
        values = []
        for col, cell in zip(header[:-1], cells[:-1]):
            if cell not in ("0", "1"):
                raise DataFormatError(
                    f"{path}: unknown attribute token {cell!r} at line {lineno}, column {col!r}"
                )
            values.append(int(cell))
        label = class_tokens.get(cells[-1])
        if label is None:
            raise DataFormatError(
                f"{path}: unknown class token {cells[-1]!r} at line {lineno}, column {header[-1]!r}"
            )
        examples.append(Example(values=tuple(values), label=label))
    if not examples:
        raise DataFormatError(f"{path}: no data rows")
    return schema, examples


def load_unlabeled_csv(path: str, schema: Schema) -> list[TypeKey]:
    """Load attribute rows without a class column, validated against ``schema``."""
    with open(path, encoding="utf-8") as handle:
        lines = handle.read().splitlines()
    if not lines:
        raise DataFormatError(f"{path}: empty file")
    header = tuple(cell.strip() for cell in lines[0].split(","))
    if header != schema.attribute_names:
        raise DataFormatError(
            f"{path}: header {list(header)} does not match schema attributes "
            f"{list(schema.attribute_names)}"
        )
    rows = []
    for lineno, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        cells = [cell.strip() for cell in line.split(",")]
        if len(cells) != len(header):
            raise DataFormatError(
                f"{path}: wrong number of columns at line {lineno}: "
                f"expected {len(header)}, got {len(cells)}"
            )
        for col, cell in zip(header, cells):
            if cell not in ("0", "1"):
                raise DataFormatError(
                    f"{path}: unknown attribute token {cell!r} at line {lineno}, column {col!r}"
                )
        rows.append(tuple(int(cell) for cell in cells))
    if not rows:
        raise DataFormatError(f"{path}: no data rows")
    return rows


def write_csv(
    path: str,
    schema: Schema,
    examples: Iterable[Example],
    class_column: str = "class",
) -> None:
    """Write examples in the CSV format that :func:`load_csv` reads."""
    tokens = {POSITIVE: schema.positive_token, NEGATIVE: schema.negative_token}
    with open(path, "w", encoding="utf-8") as handle:
        handle.write(",".join(schema.attribute_names + (class_column,)) + "\n")
        for ex in examples:
            cells = [str(v) for v in ex.values] + [tokens[ex.label]]
            handle.write(",".join(cells) + "\n")


def holdout_split(
    examples: Sequence[Example],
    fraction: float,
    seed: int = 0,
) -> tuple[list[Example], list[Example]]:
    """Deterministically split examples into (train, holdout) parts.

    ``fraction`` is the holdout share in (0, 1); both parts are
    guaranteed nonempty, which requires at least two examples.
    """
    if not 0.0 < fraction < 1.0:
        raise ValueError(f"holdout fraction must be in (0, 1), got {fraction}")
    if len(examples) < 2:
        raise ValueError("need at least two examples to split")
    order = list(examples)
    random.Random(seed).shuffle(order)
    k = min(max(1, round(fraction * len(order))), len(order) - 1)
    return order[k:], order[:k]
