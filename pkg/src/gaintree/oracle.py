"""Independent references the fast paths are validated against.

Nothing here is clever on purpose: the rule oracle tries literally
every assignment of classes to object types, and the conjugate-update
formula is a two-line closed form.  Both exist so that the induction
and pruning machinery can be checked against answers obtained without
trees at all.
"""

from __future__ import annotations

from itertools import product

from .dataset import NEGATIVE, POSITIVE, TypeCounts, TypeKey

_MAX_ORACLE_ATTRIBUTES = 3


def exhaustive_best_rule(counts: TypeCounts) -> tuple[dict[TypeKey, str], int]:
    """Try all 2^(2^N) class assignments; return the best and its error count.

    The returned mapping covers every type in the space, not just the
    observed ones.  Among equally good rules the lexicographically
    first wins, reading types in ascending key order with positive
    before negative.  The minimum always equals the sum over observed
    types of min(positives, negatives).  Capped at N <= 3 attributes,
    beyond which the 2^(2^N) rule space is pointless to scan.
    """
    n_attrs = counts.n_attributes
    if n_attrs > _MAX_ORACLE_ATTRIBUTES:
        raise ValueError(
            f"exhaustive search over {n_attrs} attributes would scan "
            f"2^{2 ** n_attrs} rules; capped at {_MAX_ORACLE_ATTRIBUTES} attributes"
        )
    all_types = list(product((0, 1), repeat=n_attrs))
    best_rule = None
    best_errors = None
    for labels in product((POSITIVE, NEGATIVE), repeat=len(all_types)):
        errors = 0
        for key, label in zip(all_types, labels):
            c = counts.counts.get(key)
            if c is not None:
                errors += c.neg if label == POSITIVE else c.pos
        if best_errors is None or errors < best_errors:
            best_rule = dict(zip(all_types, labels))
            best_errors = errors
    return best_rule, best_errors


def beta_posterior_mean(pos: int, neg: int, a: float, b: float) -> float:
    """Conjugate-update mean (pos + a) / (pos + neg + a + b).

    ``a`` and ``b`` are the pseudocounts of the conjugate prior for the
    positive and negative class; a = b = 0 gives the plain maximum
    likelihood fraction and then needs at least one observation.
    """
    if pos < 0 or neg < 0:
        raise ValueError(f"counts must be nonnegative, got ({pos}, {neg})")
    if a < 0 or b < 0:
        raise ValueError(f"pseudocounts must be nonnegative, got ({a}, {b})")
    denom = pos + neg + a + b
    if denom == 0:
        raise ValueError("no observations and no pseudocounts: mean undefined")
    return (pos + a) / denom
