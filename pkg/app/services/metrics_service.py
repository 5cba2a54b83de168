"""
Metrics service

Precision and coverage are computed per rule over the rows its antecedent
matches; the default rule takes part in neither. Test accuracy uses
first-match prediction with the default class as fallback.

Functions:
    rule_precision: Share of matched rows carrying the rule's class
    mean_precision: Mean of rule_precision over rules with at least one match
    overall_coverage: Sum over rules of matched rows / dataset rows
    test_accuracy: Share of rows predicted correctly
    time_induction: Median wall-clock seconds of repeated inductions
    evaluate: All of the above as a MetricsReport
"""

import statistics
import time
from typing import Optional, Tuple

from app.core.bitset import count_bits
from app.core.exceptions import ArgumentError
from app.core.logging import get_logger
from app.schemas.dataset import Dataset
from app.schemas.metrics import MetricsReport
from app.schemas.rule import Algorithm, Rule, RuleSet
from app.services.condition_service import MatchIndex
from app.services.induction_service import induce, predict_with_rule

logger = get_logger(__name__)


def _precision(rule: Rule, index: MatchIndex) -> Optional[float]:
    matched = index.match(rule.antecedent, index.all_rows)
    if not matched:
        return None
    if rule.consequent >= len(index.class_rows):
        return 0.0
    return count_bits(matched & index.class_rows[rule.consequent]) / count_bits(matched)


def rule_precision(rule: Rule, dataset: Dataset) -> Optional[float]:
    """
    Correctly classified matched rows over matched rows

    Returns:
        Optional[float]: Precision in [0, 1], None when the rule matches no row
    """
    return _precision(rule, MatchIndex(dataset))


def _mean_precision(rule_set: RuleSet, index: MatchIndex) -> Tuple[float, int]:
    if not rule_set.rules:
        raise ArgumentError("mean precision of an empty rule set is undefined")
    scores = [_precision(rule, index) for rule in rule_set.rules]
    matched = [score for score in scores if score is not None]
    if not matched:
        raise ArgumentError("no rule matches any row of the evaluated dataset")
    return sum(matched) / len(matched), len(scores) - len(matched)


def mean_precision(rule_set: RuleSet, dataset: Dataset) -> float:
    """
    Unweighted mean of per-rule precision, skipping rules with no match

    Raises:
        ArgumentError: Empty rule set, or no rule matches any row
    """
    value, _ = _mean_precision(rule_set, MatchIndex(dataset))
    return value


def _coverage(rule_set: RuleSet, index: MatchIndex) -> float:
    total = sum(count_bits(index.match(rule.antecedent, index.all_rows)) for rule in rule_set.rules)
    return total / index.dataset.n_rows


def overall_coverage(rule_set: RuleSet, dataset: Dataset) -> float:
    """Sum of per-rule coverages; may exceed 1 when rules overlap."""
    return _coverage(rule_set, MatchIndex(dataset))


def _accuracy(rule_set: RuleSet, test: Dataset) -> Tuple[float, int]:
    if test.n_rows == 0:
        raise ArgumentError("test accuracy of an empty test set is undefined")
    correct = 0
    fallbacks = 0
    for example, label in zip(test.examples, test.classes):
        predicted, fired = predict_with_rule(rule_set, example)
        correct += predicted == label
        fallbacks += fired is None
    return correct / test.n_rows, fallbacks


def test_accuracy(rule_set: RuleSet, test: Dataset) -> float:
    """
    Share of test rows whose predicted class equals the true class

    Raises:
        ArgumentError: Empty test set
    """
    accuracy, _ = _accuracy(rule_set, test)
    return accuracy


# keep pytest from collecting the metric as a test when imported into test modules
test_accuracy.__test__ = False  # type: ignore[attr-defined]


def time_induction(algorithm: Algorithm, train: Dataset, repeats: int = 3) -> float:
    """
    Median wall-clock seconds of `repeats` inductions

    Only the induction call is timed; loading, splitting and metrics are not.

    Raises:
        ArgumentError: repeats < 1
    """
    if repeats < 1:
        raise ArgumentError("timing needs at least one repeat", repeats=repeats)
    durations = []
    for _ in range(repeats):
        start = time.perf_counter()
        induce(train, algorithm)
        durations.append(time.perf_counter() - start)
    median = statistics.median(durations)
    logger.debug("Induction timed", algorithm=algorithm, repeats=repeats, median_s=round(median, 3))
    return median


def evaluate(
    rule_set: RuleSet,
    train: Dataset,
    test: Optional[Dataset] = None,
    induction_time: Optional[float] = None,
) -> MetricsReport:
    """
    Assemble the metrics of one rule set

    Args:
        rule_set: Induced rules
        train: Training data the rules were induced from
        test: Held-out data, None for train-only runs
        induction_time: Seconds measured by time_induction, if any
    """
    index = MatchIndex(train)
    if rule_set.rules:
        precision, unmatched = _mean_precision(rule_set, index)
    else:
        precision, unmatched = 0.0, 0
    accuracy: Optional[float] = None
    fallbacks: Optional[int] = None
    if test is not None:
        accuracy, fallbacks = _accuracy(rule_set, test)
    return MetricsReport(
        n_rules=len(rule_set.rules),
        mean_precision=precision,
        overall_coverage=_coverage(rule_set, index),
        test_accuracy=accuracy,
        induction_time=induction_time,
        default_rule_uses=fallbacks,
        unmatched_rules=unmatched,
    )
