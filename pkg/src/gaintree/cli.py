"""Command-line surface: generate, train, classify, evaluate, sweep, ensemble.

Exit codes: 0 success, 1 usage error, 2 data error (unreadable or
malformed files), 3 internal invariant failure.
"""

from __future__ import annotations

import argparse
import sys
from itertools import zip_longest

from .dataset import (
    NEGATIVE,
    POSITIVE,
    Example,
    Schema,
    TypeKey,
    count_types,
    load_csv,
    load_unlabeled_csv,
    write_csv,
)
from .ensemble import WEIGHTINGS, EnsembleConfig, pool, sample_ensemble
from .errors import DataFormatError, InvariantError
from .induction import TIE_BREAK_RULES, GrowConfig, grow
from .model_io import Model, load_model, save_model
from .pruning import prune_optimal, sensitivity_sweep
from .scoring import PriorConfig
from .synth import gen_parity, gen_tree_concept
from .tree import classify, count_internal, count_leaves, training_errors

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_INTERNAL = 3


class UsageError(Exception):
    """Bad flags or flag values; maps to exit code 1."""


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # type: ignore[override]
        raise UsageError(message)


def _grow_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--smoothing", type=float, default=0.0,
                        help="pseudocount added to each class in leaf estimates (default 0)")
    parser.add_argument("--min-leaf", type=int, default=1,
                        help="minimum examples a node needs to be split (default 1)")
    parser.add_argument("--max-depth", type=int, default=None,
                        help="optional depth bound on growth")
    parser.add_argument("--tie-break", choices=TIE_BREAK_RULES, default="lowest",
                        help="attribute chosen on exact gain ties (default lowest index)")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="gaintree",
                     description="Binary decision trees with likelihood scoring, "
                                 "complexity pruning and stochastic ensembles.")
    sub = parser.add_subparsers(dest="command", required=True)

    synth = sub.add_parser("synth", help="generate synthetic datasets")
    synth_sub = synth.add_subparsers(dest="generator", required=True)

    parity = synth_sub.add_parser("parity", help="label = odd number of set bits")
    parity.add_argument("--bits", type=int, required=True)
    mode = parity.add_mutually_exclusive_group(required=True)
    mode.add_argument("--complete", action="store_true",
                      help="emit every vector exactly once")
    mode.add_argument("--sample-size", type=int,
                      help="draw this many vectors uniformly with replacement")
    parity.add_argument("--seed", type=int, default=0)
    parity.add_argument("--out", required=True)
    parity.set_defaults(func=_cmd_synth_parity)

    concept = synth_sub.add_parser("tree", help="noisy data labelled by a hidden random tree")
    concept.add_argument("--attrs", type=int, required=True)
    concept.add_argument("--depth", type=int, required=True)
    concept.add_argument("--noise", type=float, required=True)
    concept.add_argument("--train-size", type=int, required=True)
    concept.add_argument("--test-size", type=int, required=True)
    concept.add_argument("--seed", type=int, default=0)
    concept.add_argument("--out", required=True, help="training CSV path")
    concept.add_argument("--test-out", help="optional noise-free test CSV path")
    concept.set_defaults(func=_cmd_synth_tree)

    train = sub.add_parser("train", help="grow a full tree, prune it, save the model")
    train.add_argument("--data", required=True)
    train.add_argument("--alpha", type=float, default=0.0,
                       help="complexity charge per internal test (default 0)")
    _grow_flags(train)
    train.add_argument("--out", required=True, help="model file path")
    train.set_defaults(func=_cmd_train)

    cls = sub.add_parser("classify", help="label each row of a dataset")
    cls.add_argument("--model", required=True)
    cls.add_argument("--data", required=True)
    cls.add_argument("--proportions", action="store_true",
                     help="also print the leaf's positive-fraction estimate")
    cls.set_defaults(func=_cmd_classify)

    ev = sub.add_parser("eval", help="error rate and confusion counts on labelled data")
    ev.add_argument("--model", required=True)
    ev.add_argument("--data", required=True)
    ev.set_defaults(func=_cmd_eval)

    sweep = sub.add_parser("sweep", help="prune at each alpha of a grid and tabulate quality")
    sweep.add_argument("--data", required=True)
    sweep.add_argument("--holdout", required=True, help="labelled holdout CSV")
    sweep.add_argument("--alpha-grid", required=True,
                       help="comma-separated ascending alphas, e.g. 0,0.5,1,2")
    _grow_flags(sweep)
    sweep.add_argument("--csv", help="also write the table as CSV here")
    sweep.add_argument("--plot", help="also render the table as a figure here")
    sweep.set_defaults(func=_cmd_sweep)

    ens = sub.add_parser("ensemble", help="sample several trees and pool their estimates")
    ens.add_argument("--data", required=True)
    ens.add_argument("--size", type=int, default=16)
    ens.add_argument("--temperature", type=float, default=0.05,
                     help="softmax temperature for split sampling (inf = uniform)")
    ens.add_argument("--seed", type=int, default=0)
    ens.add_argument("--weighting", choices=WEIGHTINGS, default="uniform")
    ens.add_argument("--alpha", type=float, default=0.0)
    _grow_flags(ens)
    ens.add_argument("--types", help="comma-separated bit-vectors to estimate, "
                                     "e.g. 010,110 (default: all observed types)")
    ens.set_defaults(func=_cmd_ensemble)

    return parser


def _cmd_synth_parity(args: argparse.Namespace) -> int:
    schema, examples = gen_parity(
        bits=args.bits,
        complete=args.complete,
        sample_size=args.sample_size,
        seed=args.seed,
    )
    write_csv(args.out, schema, examples)
    positives = sum(1 for ex in examples if ex.label == POSITIVE)
    print(f"wrote {len(examples)} examples ({positives} positive) to {args.out}")
    return EXIT_OK


def _cmd_synth_tree(args: argparse.Namespace) -> int:
    schema, train, test, target = gen_tree_concept(
        attrs=args.attrs,
        depth=args.depth,
        noise=args.noise,
        train_size=args.train_size,
        test_size=args.test_size,
        seed=args.seed,
    )
    write_csv(args.out, schema, train)
    positives = sum(1 for ex in train if ex.label == POSITIVE)
    print(f"wrote {len(train)} training examples ({positives} positive) to {args.out}")
    print(f"target tree: {count_internal(target)} tests, {count_leaves(target)} leaves")
    if args.test_out:
        write_csv(args.test_out, schema, test)
        print(f"wrote {len(test)} noise-free test examples to {args.test_out}")
    return EXIT_OK


def _grow_config(args: argparse.Namespace) -> GrowConfig:
    return GrowConfig(
        min_leaf=args.min_leaf,
        tie_break=args.tie_break,
        max_depth=args.max_depth,
    )


def _cmd_train(args: argparse.Namespace) -> int:
    schema, examples = load_csv(args.data)
    counts = count_types(examples)
    prior = PriorConfig(alpha=args.alpha, smoothing=args.smoothing)
    grown = grow(counts, _grow_config(args), prior)
    result = prune_optimal(grown, prior)
    save_model(args.out, Model(schema=schema, tree=result.tree, prior=prior))
    errors = training_errors(result.tree)
    print(f"leaves: {count_leaves(result.tree)}")
    print(f"internal: {count_internal(result.tree)}")
    print(f"pruned away: {result.pruned_node_count} of {count_internal(grown)} tests")
    print(f"training errors: {errors} of {counts.n} (rate {errors / counts.n:.4f})")
    print(f"log-likelihood: {result.score.log_likelihood:.6f}")
    print(f"penalty: {result.score.complexity_penalty:.6f}")
    print(f"score: {result.score.total:.6f}")
    print(f"model written to {args.out}")
    return EXIT_OK


def _load_rows_for_model(path: str, schema: Schema) -> list[TypeKey]:
    """Rows of a data file that may or may not carry a class column."""
    with open(path, encoding="utf-8") as handle:
        first = handle.readline()
    if not first.strip():
        raise DataFormatError(f"{path}: empty file")
    header = tuple(cell.strip() for cell in first.rstrip("\n").split(","))
    if header == schema.attribute_names:
        return load_unlabeled_csv(path, schema)
    if len(header) == schema.n_attributes + 1 and header[:-1] == schema.attribute_names:
        _, examples = load_csv(path, schema.positive_token, schema.negative_token)
        return [ex.values for ex in examples]
    mismatches = [
        f"expected {want!r}, got {have!r}"
        for want, have in zip_longest(schema.attribute_names, header)
        if want != have
    ]
    raise DataFormatError(
        f"{path}: columns do not match the model's attributes ({'; '.join(mismatches)})"
    )


def _load_labeled_for_model(path: str, schema: Schema) -> list[Example]:
    file_schema, examples = load_csv(path, schema.positive_token, schema.negative_token)
    if file_schema.attribute_names != schema.attribute_names:
        mismatches = [
            f"expected {want!r}, got {have!r}"
            for want, have in zip_longest(schema.attribute_names, file_schema.attribute_names)
            if want != have
        ]
        raise DataFormatError(
            f"{path}: columns do not match the model's attributes ({'; '.join(mismatches)})"
        )
    return examples


def _cmd_classify(args: argparse.Namespace) -> int:
    model = load_model(args.model)
    rows = _load_rows_for_model(args.data, model.schema)
    tokens = {POSITIVE: model.schema.positive_token, NEGATIVE: model.schema.negative_token}
    for values in rows:
        leaf = classify(model.tree, values)
        if args.proportions:
            print(f"{tokens[leaf.label]}\t{leaf.pos_prob:.6g}")
        else:
            print(tokens[leaf.label])
    return EXIT_OK


def _cmd_eval(args: argparse.Namespace) -> int:
    model = load_model(args.model)
    examples = _load_labeled_for_model(args.data, model.schema)
    tp = fp = tn = fn = 0
    for ex in examples:
        predicted = classify(model.tree, ex.values).label
        if predicted == POSITIVE:
            if ex.label == POSITIVE:
                tp += 1
            else:
                fp += 1
        else:
            if ex.label == NEGATIVE:
                tn += 1
            else:
                fn += 1
    errors = fp + fn
    print(f"examples: {len(examples)}")
    print(f"errors: {errors}")
    print(f"rate: {errors / len(examples):.6f}")
    print(f"TP: {tp}  FP: {fp}  TN: {tn}  FN: {fn}")
    return EXIT_OK


def _parse_alpha_grid(text: str) -> list[float]:
    try:
        return [float(part) for part in text.split(",")]
    except ValueError:
        raise UsageError(f"bad alpha grid {text!r}: must be comma-separated numbers") from None


def _cmd_sweep(args: argparse.Namespace) -> int:
    schema, examples = load_csv(args.data)
    counts = count_types(examples)
    holdout_examples = _load_labeled_for_model(args.holdout, schema)
    holdout = count_types(holdout_examples)
    alphas = _parse_alpha_grid(args.alpha_grid)
    prior = PriorConfig(alpha=0.0, smoothing=args.smoothing)
    grown = grow(counts, _grow_config(args), prior)
    rows = sensitivity_sweep(grown, alphas, holdout, smoothing=args.smoothing)
    print(f"{'alpha':>8}  {'leaves':>6}  {'train_err':>9}  {'holdout_err':>11}")
    for row in rows:
        print(f"{row.alpha:>8g}  {row.leaves:>6}  {row.train_err:>9.4f}  {row.holdout_err:>11.4f}")
    if args.csv:
        with open(args.csv, "w", encoding="utf-8") as handle:
            handle.write("alpha,leaves,train_err,holdout_err\n")
            for row in rows:
                handle.write(f"{row.alpha!r},{row.leaves},{row.train_err!r},{row.holdout_err!r}\n")
        print(f"table written to {args.csv}")
    if args.plot:
        from .report import render_sweep_figure

        render_sweep_figure(rows, args.plot)
        print(f"figure written to {args.plot}")
    return EXIT_OK


def _parse_type_keys(text: str, n_attributes: int) -> list[TypeKey]:
    keys = []
    for part in text.split(","):
        part = part.strip()
        if len(part) != n_attributes or any(ch not in "01" for ch in part):
            raise UsageError(
                f"bad type {part!r}: need {n_attributes} characters of 0/1"
            )
        keys.append(tuple(int(ch) for ch in part))
    return keys


def _cmd_ensemble(args: argparse.Namespace) -> int:
    schema, examples = load_csv(args.data)
    counts = count_types(examples)
    prior = PriorConfig(alpha=args.alpha, smoothing=args.smoothing)
    config = EnsembleConfig(
        size=args.size,
        temperature=args.temperature,
        seed=args.seed,
        weighting=args.weighting,
    )
    trees, totals = sample_ensemble(counts, _grow_config(args), prior, config)
    if args.types:
        keys = _parse_type_keys(args.types, schema.n_attributes)
    else:
        keys = sorted(counts.counts)
    pooled = pool(trees, keys, weighting=config.weighting, totals=totals)
    for i, (tree, total) in enumerate(zip(trees, totals)):
        print(f"tree {i}: leaves {count_leaves(tree)}, internal {count_internal(tree)}, "
              f"score {total:.6f}")
    for key in keys:
        bits = "".join(str(v) for v in key)
        print(f"type {bits}: {pooled.estimates[key]:.6g}")
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DataFormatError as exc:
        print(f"data error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except ValueError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"data error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except InvariantError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


def run() -> None:
    raise SystemExit(main(sys.argv[1:]))
