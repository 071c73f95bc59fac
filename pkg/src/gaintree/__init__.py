"""Binary decision-tree induction with likelihood scoring, optimal
complexity pruning, and stochastic ensembles for class-proportion
estimates."""

from .dataset import (
    NEGATIVE,
    POSITIVE,
    ClassCounts,
    Example,
    Schema,
    TypeCounts,
    count_types,
    holdout_split,
    load_csv,
    split_counts,
    write_csv,
)
from .ensemble import (
    EnsembleConfig,
    PooledEstimate,
    boltzmann_probabilities,
    pool,
    sample_ensemble,
    sample_tree,
)
from .errors import DataFormatError, InvariantError
from .induction import (
    GrowConfig,
    SplitEvaluation,
    best_attribute,
    evaluate_split,
    grow,
)
from .model_io import Model, load_model, parse_model, save_model, serialize_model
from .oracle import beta_posterior_mean, exhaustive_best_rule
from .pruning import (
    PruneResult,
    SweepRow,
    enumerate_prunings,
    prune_optimal,
    sensitivity_sweep,
)
from .scoring import (
    PriorConfig,
    RuleScore,
    decide_label,
    decide_leaf,
    estimate_pos_prob,
    expected_error_cost,
    leaf_log_likelihood,
    max_leaf_log_likelihood,
    tree_score,
)
from .synth import gen_parity, gen_tree_concept
from .tree import (
    Branch,
    Leaf,
    Tree,
    check_consistent,
    classify,
    count_internal,
    count_leaves,
    depth,
    iter_leaves,
    training_errors,
)

__version__ = "0.1.0"

__all__ = [
    "NEGATIVE",
    "POSITIVE",
    "Branch",
    "ClassCounts",
    "DataFormatError",
    "EnsembleConfig",
    "Example",
    "GrowConfig",
    "InvariantError",
    "Leaf",
    "Model",
    "PooledEstimate",
    "PriorConfig",
    "PruneResult",
    "RuleScore",
    "Schema",
    "SplitEvaluation",
    "SweepRow",
    "Tree",
    "TypeCounts",
    "best_attribute",
    "beta_posterior_mean",
    "boltzmann_probabilities",
    "check_consistent",
    "classify",
    "count_internal",
    "count_leaves",
    "count_types",
    "decide_label",
    "decide_leaf",
    "depth",
    "enumerate_prunings",
    "estimate_pos_prob",
    "evaluate_split",
    "exhaustive_best_rule",
    "expected_error_cost",
    "gen_parity",
    "gen_tree_concept",
    "grow",
    "holdout_split",
    "iter_leaves",
    "leaf_log_likelihood",
    "load_csv",
    "load_model",
    "max_leaf_log_likelihood",
    "parse_model",
    "pool",
    "prune_optimal",
    "sample_ensemble",
    "sample_tree",
    "save_model",
    "sensitivity_sweep",
    "serialize_model",
    "split_counts",
    "training_errors",
    "tree_score",
    "write_csv",
]
