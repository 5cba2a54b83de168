"""Metrics schemas"""

from typing import Optional

from pydantic import BaseModel, Field


class MetricsReport(BaseModel):
    """
    Evaluation of one induced rule set

    Attributes:
        n_rules (int): Induced rules, the default rule excluded
        mean_precision (float): Unweighted mean of per-rule training precision
        overall_coverage (float): Sum of per-rule training coverages (>= 1 for
            a complete rule set)
        test_accuracy (Optional[float]): Share of test rows predicted correctly,
            None in train-only runs
        induction_time (Optional[float]): Median induction wall-clock seconds,
            None when timing is disabled
        default_rule_uses (Optional[int]): Test predictions that fell through
            to the default class
        unmatched_rules (int): Rules excluded from the precision mean because
            they matched no evaluated row
    """

    n_rules: int = Field(..., ge=0)
    mean_precision: float = Field(..., ge=0, le=1)
    overall_coverage: float = Field(..., ge=0)
    test_accuracy: Optional[float] = Field(None, ge=0, le=1)
    induction_time: Optional[float] = Field(None, ge=0)
    default_rule_uses: Optional[int] = Field(None, ge=0)
    unmatched_rules: int = 0
