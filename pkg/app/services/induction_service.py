"""
Induction service: RULES and RRULES covering algorithms

Both algorithms grow conditions from one selector up to n_a selectors. At
the start of each condition length the selector pool is rebuilt from the
still-unclassified rows N, and every candidate is matched against the full
training set T.

    RULES   A pure candidate becomes a rule unless an existing rule's
            antecedent is a subset of it. N <- N - M. N is only checked for
            emptiness before each condition length.
    RRULES  A candidate matching no row of N is discarded. A pure candidate
            becomes a rule and N <- N - M_N. Induction stops as soon as N
            is empty.

At the last condition length (n_c = n_a) a candidate with mixed classes
means identical rows with different labels; it becomes a rule for the
modal class (ties go to the lowest class index).

Functions:
    induce_rules / induce_rrules: Run one algorithm on training data
    induce: Dispatch by algorithm tag
    is_irrelevant: RULES irrelevance test against existing rules
    predict / predict_with_rule: First matching rule, default class otherwise
    verify_ruleset: Purity, completeness and usefulness checks
    render_ruleset / export_ruleset: Text dump and structured export
"""

from itertools import combinations
from typing import List, Optional, Sequence, Set, Tuple

from app.core.bitset import EMPTY, count_bits, to_indexes
from app.core.exceptions import ArgumentError
from app.core.logging import get_logger
from app.schemas.dataset import Dataset
from app.schemas.rule import (
    Algorithm,
    Condition,
    InductionTrace,
    IterationStats,
    Rule,
    RuleRecord,
    RuleSet,
    RuleSetExport,
    RuleViolation,
    SelectorRecord,
    VerificationReport,
)
from app.services.condition_service import MatchIndex, enumerate_conditions, render_condition

logger = get_logger(__name__)


class _AntecedentIndex:
    """Antecedents of created rules, for subset lookups by condition."""

    def __init__(self) -> None:
        self._antecedents: Set[Condition] = set()
        self._lengths: Set[int] = set()

    def add(self, condition: Condition) -> None:
        self._antecedents.add(condition)
        self._lengths.add(len(condition))

    def subsumes(self, condition: Condition) -> bool:
        # combinations of a sorted tuple stay sorted, so they compare equal
        # to stored antecedents
        for length in self._lengths:
            if length > len(condition):
                continue
            for subset in combinations(condition, length):
                if subset in self._antecedents:
                    return True
        return False


def _stats(n_c: int, pool: int, counts: List[int], remaining: int) -> IterationStats:
    generated, empty, irrelevant, impure, created = counts
    return IterationStats(
        n_c=n_c,
        selector_pool=pool,
        generated=generated,
        discarded_empty=empty,
        discarded_irrelevant=irrelevant,
        discarded_impure=impure,
        rules_created=created,
        remaining=remaining,
    )


def _new_rule(rules: List[Rule], condition: Condition, label: int, n_c: int, inconsistent: bool) -> Rule:
    rule = Rule(
        antecedent=condition,
        consequent=label,
        order=len(rules),
        n_c_at_creation=n_c,
        from_inconsistency=inconsistent,
    )
    rules.append(rule)
    logger.debug(
        "Rule created",
        order=rule.order,
        n_c=n_c,
        consequent=label,
        inconsistent=inconsistent,
    )
    return rule


def _require_rows(train: Dataset) -> None:
    if train.n_rows == 0:
        raise ArgumentError("training data must contain at least one row")


def induce_rules(train: Dataset) -> Tuple[RuleSet, InductionTrace]:
    """
    RULES: exhaustive covering with subset-based irrelevance

    Args:
        train: Nonempty training dataset

    Returns:
        Tuple[RuleSet, InductionTrace]: Rules in creation order and counters
    """
    _require_rows(train)
    index = MatchIndex(train)
    n_a = train.n_attributes
    everything = index.all_rows
    pending = everything
    rules: List[Rule] = []
    created = _AntecedentIndex()
    trace = InductionTrace(algorithm_tag="rules")

    for n_c in range(1, n_a + 1):
        if not pending:
            trace.stopped_early = True
            break
        pool = index.selectors_present(pending)
        # generated, empty, irrelevant, impure, created
        counts = [0, 0, 0, 0, 0]
        for condition in enumerate_conditions(pool, n_c):
            counts[0] += 1
            matched = index.match(condition, everything)
            if not matched:
                counts[1] += 1
                continue
            label = index.pure_class(matched)
            if label >= 0:
                if created.subsumes(condition):
                    counts[2] += 1
                    continue
                _new_rule(rules, condition, label, n_c, inconsistent=False)
            elif n_c == n_a:
                _new_rule(rules, condition, index.modal_class(matched), n_c, inconsistent=True)
            else:
                counts[3] += 1
                continue
            created.add(condition)
            counts[4] += 1
            pending &= ~matched
        trace.iterations.append(_stats(n_c, len(pool), counts, count_bits(pending)))
        logger.debug("Iteration finished", n_c=n_c, rules=counts[4], remaining=count_bits(pending))

    rule_set = RuleSet(
        rules=tuple(rules),
        default_class=index.modal_class(everything),
        algorithm_tag="rules",
        n_attributes=n_a,
    )
    logger.info("Rules induced", algorithm="rules", rules=len(rules), rows=train.n_rows)
    return rule_set, trace


def induce_rrules(train: Dataset) -> Tuple[RuleSet, InductionTrace]:
    """
    RRULES: covering that skips conditions matching no unclassified row and
    stops right after the rule that classifies the last row

    Args:
        train: Nonempty training dataset

    Returns:
        Tuple[RuleSet, InductionTrace]: Rules in creation order and counters
    """
    _require_rows(train)
    index = MatchIndex(train)
    n_a = train.n_attributes
    everything = index.all_rows
    pending = everything
    rules: List[Rule] = []
    trace = InductionTrace(algorithm_tag="rrules")

    for n_c in range(1, n_a + 1):
        pool = index.selectors_present(pending)
        counts = [0, 0, 0, 0, 0]
        for condition in enumerate_conditions(pool, n_c):
            counts[0] += 1
            matched = index.match(condition, everything)
            if not matched:
                counts[1] += 1
                continue
            fresh = matched & pending
            if not fresh:
                counts[2] += 1
                continue
            label = index.pure_class(matched)
            if label >= 0:
                _new_rule(rules, condition, label, n_c, inconsistent=False)
            elif n_c == n_a:
                _new_rule(rules, condition, index.modal_class(matched), n_c, inconsistent=True)
            else:
                counts[3] += 1
                continue
            counts[4] += 1
            pending &= ~fresh
            if not pending:
                trace.stopped_early = True
                break
        trace.iterations.append(_stats(n_c, len(pool), counts, count_bits(pending)))
        logger.debug("Iteration finished", n_c=n_c, rules=counts[4], remaining=count_bits(pending))
        if not pending:
            break

    rule_set = RuleSet(
        rules=tuple(rules),
        default_class=index.modal_class(everything),
        algorithm_tag="rrules",
        n_attributes=n_a,
    )
    logger.info("Rules induced", algorithm="rrules", rules=len(rules), rows=train.n_rows)
    return rule_set, trace


def induce(train: Dataset, algorithm: Algorithm) -> Tuple[RuleSet, InductionTrace]:
    """Run the named algorithm."""
    if algorithm == "rules":
        return induce_rules(train)
    if algorithm == "rrules":
        return induce_rrules(train)
    raise ArgumentError(f"unknown algorithm {algorithm!r}")


def is_irrelevant(condition: Condition, existing: RuleSet) -> bool:
    """
    RULES irrelevance: some existing rule's antecedent is a subset of the condition

    A more general rule already classifies every row the condition matches.
    Equality counts as a subset.
    """
    selectors = set(condition)
    return any(set(rule.antecedent) <= selectors for rule in existing.rules)


def _check_example(rule_set: RuleSet, example: Sequence[int]) -> None:
    if len(example) != rule_set.n_attributes:
        raise ArgumentError(
            f"example has {len(example)} values, rule set expects {rule_set.n_attributes}"
        )
    if any(not isinstance(value, int) or value < 0 for value in example):
        raise ArgumentError("example values must be non-negative value indices")


def predict_with_rule(rule_set: RuleSet, example: Sequence[int]) -> Tuple[int, Optional[int]]:
    """
    Class of the first matching rule and that rule's order

    Returns:
        Tuple[int, Optional[int]]: (class index, rule order or None when the
            default class was used)

    Raises:
        ArgumentError: Example does not fit the schema, or no rule matches
            and the rule set has no default class
    """
    _check_example(rule_set, example)
    for rule in rule_set.rules:
        if all(example[attribute] == value for attribute, value in rule.antecedent):
            return rule.consequent, rule.order
    if rule_set.default_class is None:
        raise ArgumentError("no rule matches and the rule set has no default class")
    return rule_set.default_class, None


def predict(rule_set: RuleSet, example: Sequence[int]) -> int:
    """
    First-match prediction in creation order, default class as fallback

    Args:
        rule_set: Induced rules
        example: One value index per attribute of the training schema

    Returns:
        int: Predicted class index
    """
    label, _ = predict_with_rule(rule_set, example)
    return label


def verify_ruleset(rule_set: RuleSet, train: Dataset) -> VerificationReport:
    """
    Check an induced rule set against its training data

    Checks:
        - every rule not created from an inconsistency is class-pure on train
        - every training row matches at least one rule
        - RRULES only: replaying creation order, each rule matched at least
          one row no earlier rule had classified

    Violations are reported, never raised.
    """
    index = MatchIndex(train)
    everything = index.all_rows
    report = VerificationReport(usefulness_checked=rule_set.algorithm_tag == "rrules")
    covered = EMPTY
    pending = everything

    for rule in rule_set.rules:
        matched = index.match(rule.antecedent, everything)
        covered |= matched
        if not rule.from_inconsistency and rule.consequent < len(index.class_rows):
            wrong = matched & ~index.class_rows[rule.consequent]
            if wrong:
                report.purity_violations.append(RuleViolation(order=rule.order, rows=to_indexes(wrong)))
        if report.usefulness_checked:
            if not matched & pending:
                report.useless_rules.append(RuleViolation(order=rule.order))
            pending &= ~matched

    report.uncovered_rows = to_indexes(everything & ~covered)
    if report.passed:
        logger.debug("Rule set verified", algorithm=rule_set.algorithm_tag, rules=len(rule_set))
    else:
        logger.warning(
            "Rule set verification failed",
            algorithm=rule_set.algorithm_tag,
            purity_violations=len(report.purity_violations),
            uncovered_rows=len(report.uncovered_rows),
            useless_rules=len(report.useless_rules),
        )
    return report


def render_ruleset(rule_set: RuleSet, dataset: Dataset) -> str:
    """
    Text dump, one rule per line in creation order, then the default class

    Example:
        [0] IF A is A1 THEN 0  (nc=1, inconsistent=false)
        DEFAULT 0
    """
    lines = [
        f"[{rule.order}] {render_condition(rule.antecedent, dataset)} "
        f"THEN {dataset.class_names[rule.consequent]}  "
        f"(nc={rule.n_c_at_creation}, inconsistent={str(rule.from_inconsistency).lower()})"
        for rule in rule_set.rules
    ]
    if rule_set.default_class is not None:
        lines.append(f"DEFAULT {dataset.class_names[rule_set.default_class]}")
    return "\n".join(lines) + "\n"


def export_ruleset(rule_set: RuleSet, dataset: Dataset) -> RuleSetExport:
    """Structured export with attribute, value and class names."""
    return RuleSetExport(
        algorithm=rule_set.algorithm_tag,
        dataset=dataset.name,
        class_attribute=dataset.class_attribute,
        rules=[
            RuleRecord(
                order=rule.order,
                conditions=[
                    SelectorRecord(
                        attribute=dataset.attributes[attribute].name,
                        value=dataset.attributes[attribute].decode(value),
                    )
                    for attribute, value in rule.antecedent
                ],
                prediction=dataset.class_names[rule.consequent],
                n_c=rule.n_c_at_creation,
                inconsistent=rule.from_inconsistency,
            )
            for rule in rule_set.rules
        ],
        default=(
            dataset.class_names[rule_set.default_class]
            if rule_set.default_class is not None
            else None
        ),
    )
