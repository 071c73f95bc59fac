"""Canonical text serialization of a trained model.

A model file is a small header naming the schema and scoring settings,
then the tree as one parenthesized expression:

    gaintree-model v1
    attributes: a b c
    positive-token: +
    negative-token: -
    alpha: 0.5
    smoothing: 0.0
    tree: (test a (1 (leaf + 3 0 1.0)) (0 (leaf - 0 5 0.0)))

A leaf records its label, positive count, negative count and estimate.
Branch counts are not stored; the parser reconstructs them as the sum
of the children, so a file cannot even express an inconsistent tree.
Numbers use the shortest decimal that round-trips, so each model has
exactly one serialization and serialize-parse-serialize is the
identity on bytes.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .dataset import NEGATIVE, POSITIVE, ClassCounts, Schema
from .errors import DataFormatError
from .scoring import PriorConfig
from .tree import Branch, Leaf, Tree

_MAGIC = "gaintree-model v1"
_TOKEN_RE = re.compile(r"\(|\)|[^\s()]+")


@dataclass(frozen=True)
class Model:
    """A tree together with the schema and scoring settings that built it."""

    schema: Schema
    tree: Tree
    prior: PriorConfig


def _format_number(value: float) -> str:
    return repr(value)


def _serialize_tree(tree: Tree, names: tuple[str, ...]) -> str:
    if isinstance(tree, Leaf):
        return (
            f"(leaf {tree.label} {tree.counts.pos} {tree.counts.neg} "
            f"{_format_number(tree.pos_prob)})"
        )
    return (
        f"(test {names[tree.attribute]} "
        f"(1 {_serialize_tree(tree.yes, names)}) "
        f"(0 {_serialize_tree(tree.no, names)}))"
    )


def serialize_model(model: Model) -> str:
    """Render the model in its canonical single form."""
    schema = model.schema
    return (
        f"{_MAGIC}\n"
        f"attributes: {' '.join(schema.attribute_names)}\n"
        f"positive-token: {schema.positive_token}\n"
        f"negative-token: {schema.negative_token}\n"
        f"alpha: {_format_number(model.prior.alpha)}\n"
        f"smoothing: {_format_number(model.prior.smoothing)}\n"
        f"tree: {_serialize_tree(model.tree, schema.attribute_names)}\n"
    )


class _TokenStream:
    def __init__(self, text: str):
        self.tokens = _TOKEN_RE.findall(text)
        self.pos = 0

    def next(self) -> str:
        if self.pos >= len(self.tokens):
            raise DataFormatError("model tree ends unexpectedly")
        token = self.tokens[self.pos]
        self.pos += 1
        return token

    def expect(self, wanted: str) -> None:
        token = self.next()
        if token != wanted:
            raise DataFormatError(f"expected {wanted!r} in model tree, got {token!r}")

    def exhausted(self) -> bool:
        return self.pos >= len(self.tokens)


def _parse_count(token: str) -> int:
    if not token.isdigit():
        raise DataFormatError(f"expected a nonnegative count in model tree, got {token!r}")
    return int(token)


def _parse_tree(stream: _TokenStream, index_of: dict[str, int]) -> Tree:
    stream.expect("(")
    kind = stream.next()
    if kind == "leaf":
        label = stream.next()
        if label not in (POSITIVE, NEGATIVE):
            raise DataFormatError(f"leaf label must be + or -, got {label!r}")
        pos = _parse_count(stream.next())
        neg = _parse_count(stream.next())
        prob_token = stream.next()
        try:
            pos_prob = float(prob_token)
        except ValueError:
            raise DataFormatError(f"bad leaf estimate {prob_token!r}") from None
        if not 0.0 <= pos_prob <= 1.0:
            raise DataFormatError(f"leaf estimate {prob_token} outside [0, 1]")
        stream.expect(")")
        return Leaf(counts=ClassCounts(pos, neg), pos_prob=pos_prob, label=label)
    if kind == "test":
        name = stream.next()
        if name not in index_of:
            raise DataFormatError(f"model tree tests unknown attribute {name!r}")
        stream.expect("(")
        stream.expect("1")
        yes = _parse_tree(stream, index_of)
        stream.expect(")")
        stream.expect("(")
        stream.expect("0")
        no = _parse_tree(stream, index_of)
        stream.expect(")")
        stream.expect(")")
        return Branch(
            attribute=index_of[name],
            yes=yes,
            no=no,
            counts=yes.counts + no.counts,
        )
    raise DataFormatError(f"expected 'test' or 'leaf' in model tree, got {kind!r}")


def _header_value(line: str, prefix: str, lineno: int) -> str:
    if not line.startswith(prefix):
        raise DataFormatError(f"model line {lineno} must start with {prefix!r}, got {line!r}")
    return line[len(prefix):].strip()


def parse_model(text: str) -> Model:
    """Inverse of :func:`serialize_model`; malformed input raises DataFormatError."""
    lines = text.splitlines()
    if len(lines) < 7:
        raise DataFormatError(f"model file needs 7 lines, got {len(lines)}")
    if lines[0] != _MAGIC:
        raise DataFormatError(f"not a model file (first line {lines[0]!r})")
    names = tuple(_header_value(lines[1], "attributes:", 2).split())
    positive_token = _header_value(lines[2], "positive-token:", 3)
    negative_token = _header_value(lines[3], "negative-token:", 4)
    try:
        alpha = float(_header_value(lines[4], "alpha:", 5))
        smoothing = float(_header_value(lines[5], "smoothing:", 6))
    except ValueError as exc:
        raise DataFormatError(f"bad number in model header: {exc}") from None
    try:
        schema = Schema(
            attribute_names=names,
            positive_token=positive_token,
            negative_token=negative_token,
        )
        prior = PriorConfig(alpha=alpha, smoothing=smoothing)
    except ValueError as exc:
        raise DataFormatError(f"bad model header: {exc}") from None
    index_of = {name: i for i, name in enumerate(names)}
    stream = _TokenStream(_header_value(lines[6], "tree:", 7))
    tree = _parse_tree(stream, index_of)
    if not stream.exhausted():
        raise DataFormatError("trailing tokens after model tree")
    return Model(schema=schema, tree=tree, prior=prior)


def save_model(path: str, model: Model) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        handle.write(serialize_model(model))


def load_model(path: str) -> Model:
    with open(path, encoding="utf-8") as handle:
        return parse_model(handle.read())
