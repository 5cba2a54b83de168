"""
Rule schemas

Selectors and conditions are plain tuples so the induction loop can build
millions of them cheaply; rules, rule sets and reports are pydantic models.

Types:
    Selector: One (attribute index, value index) pair
    Condition: Tuple of selectors over distinct attributes, in selector order
    Rule: Antecedent -> class with creation provenance
    RuleSet: Rules in creation order plus the default class
    IterationStats / InductionTrace: Per-iteration counters of an induction
    VerificationReport: Outcome of the purity/coverage/usefulness checks
    RuleRecord / RuleSetExport: Name-based structured export of a rule set
"""

from typing import List, Literal, NamedTuple, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, model_validator

Algorithm = Literal["rules", "rrules"]


class Selector(NamedTuple):
    """Attribute-Value pair. Tuple ordering is the selector total order."""

    attribute: int
    value: int


Condition = Tuple[Selector, ...]


class Rule(BaseModel):
    """
    One induced rule

    Attributes:
        antecedent (Condition): Selectors that must all hold
        consequent (int): Predicted class index
        order (int): Creation sequence number, 0-based
        n_c_at_creation (int): Condition length of the iteration that created it
        from_inconsistency (bool): Created by the modal-class branch for
            identical rows with different classes
    """

    model_config = ConfigDict(frozen=True)

    antecedent: Tuple[Selector, ...] = Field(..., min_length=1)
    consequent: int = Field(..., ge=0)
    order: int = Field(..., ge=0)
    n_c_at_creation: int = Field(..., ge=1)
    from_inconsistency: bool = False

    @model_validator(mode="after")
    def check_antecedent(self) -> "Rule":
        attributes = [selector.attribute for selector in self.antecedent]
        if len(set(attributes)) != len(attributes):
            raise ValueError("antecedent selectors must use distinct attributes")
        if list(self.antecedent) != sorted(self.antecedent):
            raise ValueError("antecedent selectors must be in selector order")
        if len(self.antecedent) != self.n_c_at_creation:
            raise ValueError("antecedent length must equal n_c_at_creation")
        return self


class RuleSet(BaseModel):
    """
    Ordered rule list produced by one induction

    Attributes:
        rules (Tuple[Rule, ...]): Rules in creation order
        default_class (Optional[int]): Modal training class used when no rule fires
        algorithm_tag (str): "rules" or "rrules"
        n_attributes (int): Attribute count of the training schema
    """

    model_config = ConfigDict(frozen=True)

    rules: Tuple[Rule, ...] = ()
    default_class: Optional[int] = Field(None, ge=0)
    algorithm_tag: Algorithm
    n_attributes: int = Field(..., ge=1)

    @model_validator(mode="after")
    def check_order(self) -> "RuleSet":
        for position, rule in enumerate(self.rules):
            if rule.order != position:
                raise ValueError("rule order numbers must be 0..len-1 in sequence")
            if rule.antecedent[-1].attribute >= self.n_attributes:
                raise ValueError(f"rule {position} refers to an attribute outside the schema")
        return self

    def __len__(self) -> int:
        return len(self.rules)


class IterationStats(BaseModel):
    """
    Counters for one outer iteration (one condition length n_c)

    Every generated condition lands in exactly one bucket, so
    generated == discarded_empty + discarded_irrelevant + discarded_impure + rules_created.
    """

    n_c: int
    selector_pool: int = 0
    generated: int = 0
    discarded_empty: int = 0
    discarded_irrelevant: int = 0
    discarded_impure: int = 0
    rules_created: int = 0
    remaining: int = 0


class InductionTrace(BaseModel):
    """Diagnostic counters of one induction run."""

    algorithm_tag: Algorithm
    iterations: List[IterationStats] = Field(default_factory=list)
    stopped_early: bool = False

    @property
    def conditions_generated(self) -> int:
        return sum(stats.generated for stats in self.iterations)


class RuleViolation(BaseModel):
    """A rule that failed a verification check, with the rows involved."""

    order: int
    rows: List[int] = Field(default_factory=list)


class VerificationReport(BaseModel):
    """
    Result of verify_ruleset

    Attributes:
        purity_violations: Non-inconsistency rules matching rows of another class
        uncovered_rows: Training rows no rule matches
        useless_rules: (rrules only) rules that classified no new row at creation
        usefulness_checked: Whether the creation-order replay was performed
    """

    purity_violations: List[RuleViolation] = Field(default_factory=list)
    uncovered_rows: List[int] = Field(default_factory=list)
    useless_rules: List[RuleViolation] = Field(default_factory=list)
    usefulness_checked: bool = False

    @property
    def passed(self) -> bool:
        return not (self.purity_violations or self.uncovered_rows or self.useless_rules)


class SelectorRecord(BaseModel):
    attribute: str
    value: str


class RuleRecord(BaseModel):
    """One rule of the structured export, names instead of indices."""

    order: int
    conditions: List[SelectorRecord]
    prediction: str
    n_c: int
    inconsistent: bool


class RuleSetExport(BaseModel):
    """Structured export of a rule set for downstream tooling."""

    algorithm: Algorithm
    dataset: str
    class_attribute: str
    rules: List[RuleRecord]
    default: Optional[str] = None
