"""
Experiment schemas

Models:
    ExperimentConfig: One benchmark run (dataset, algorithms, split, timing, output)
    ExperimentResult: Outcome of one (dataset, algorithm) cell
    RatioSummary: RULES / RRULES ratios for one dataset
    SuiteReport: Aggregated results of a manifest
"""

from typing import List, Literal, Optional, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field, model_validator

from app.core.config import settings
from app.schemas.dataset import DatasetStatistics
from app.schemas.metrics import MetricsReport
from app.schemas.rule import Algorithm, InductionTrace, RuleSetExport, VerificationReport

AlgorithmChoice = Literal["rules", "rrules", "both"]
OutputFormat = Literal["table", "csv", "json"]


class ExperimentConfig(BaseModel):
    """
    One experiment

    Attributes:
        data (str): File path or built-in fixture name
        algorithm (str): "rules", "rrules" or "both"
        test_fraction (float): Held-out share in [0, 1); 0 means train only
        seed (int): Seed of the split shuffle
        n_bins (int): Equal-width bins for numeric columns
        repeats (int): Timed inductions per reported median; 0 disables timing
        format (str): "table", "csv" or "json"
        dump_rules (bool): Include the induced rules in the output
        verify (bool): Run verify_ruleset on every induced rule set
        has_header (bool): Whether the file's first line names the columns
        class_column (Union[int, str]): Class column position or header name
        test_data (Optional[str]): External test file encoded against the
            training schema; excludes test_fraction > 0
        verbosity (int): 0 warnings, 1 info, 2 debug

    Example (one manifest line):
        {"data": "tic-tac-toe.data", "has_header": false, "test_fraction": 0.2, "seed": 3}
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    data: str = Field(..., min_length=1)
    algorithm: AlgorithmChoice = "both"
    test_fraction: float = Field(settings.DEFAULT_TEST_FRACTION, ge=0, lt=1)
    seed: int = Field(settings.DEFAULT_SEED, ge=0)
    n_bins: int = Field(settings.DEFAULT_N_BINS, ge=1)
    repeats: int = Field(settings.DEFAULT_TIMING_REPEATS, ge=0)
    format: OutputFormat = "table"
    dump_rules: bool = False
    verify: bool = True
    has_header: bool = True
    class_column: Union[int, str] = -1
    test_data: Optional[str] = None
    verbosity: int = Field(0, ge=0, le=2)

    @model_validator(mode="after")
    def check_test_source(self) -> "ExperimentConfig":
        if self.test_data is not None and self.test_fraction > 0:
            raise ValueError("test_data and a nonzero test_fraction are mutually exclusive")
        return self

    @property
    def algorithms(self) -> Tuple[Algorithm, ...]:
        if self.algorithm == "both":
            return ("rules", "rrules")
        return (self.algorithm,)

    @property
    def timed(self) -> bool:
        return self.repeats > 0


class ExperimentResult(BaseModel):
    """
    One row of the comparison table

    A failed experiment carries `error` and no metrics.
    """

    dataset: str
    algorithm: Algorithm
    status: Literal["ok", "failed"] = "ok"
    error: Optional[str] = None
    statistics: Optional[DatasetStatistics] = None
    metrics: Optional[MetricsReport] = None
    verification: Optional[VerificationReport] = None
    trace: Optional[InductionTrace] = None
    rules: Optional[RuleSetExport] = None
    rules_text: Optional[str] = None

    @property
    def succeeded(self) -> bool:
        if self.status != "ok":
            return False
        return self.verification is None or self.verification.passed


class RatioSummary(BaseModel):
    """RULES value divided by RRULES value; None when undefined."""

    dataset: str
    rules_ratio: Optional[float] = None
    coverage_ratio: Optional[float] = None
    time_ratio: Optional[float] = None


class SuiteReport(BaseModel):
    """Results sorted by dataset then algorithm, plus per-dataset ratios."""

    results: List[ExperimentResult] = Field(default_factory=list)
    ratios: List[RatioSummary] = Field(default_factory=list)

    @property
    def succeeded(self) -> bool:
        return all(result.succeeded for result in self.results)
