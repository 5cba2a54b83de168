"""
Experiment service: benchmark orchestration

Runs the pipeline load -> (discretize) -> (split) -> induce -> verify ->
metrics for each selected algorithm, and aggregates manifests of such runs
into a SuiteReport.

Architecture:
    CLI / API endpoints -> ExperimentService -> dataset, induction and metrics services

Classes:
    ExperimentService: Runs experiments and suites

Functions:
    load_manifest: Parse a JSON Lines manifest into ExperimentConfigs
    get_experiment_service: Factory function returning singleton instance
"""

from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple, Union

from pydantic import ValidationError

from app.core.config import settings
from app.core.exceptions import ExperimentError, RuleToolkitError
from app.core.logging import bind_experiment_context, clear_experiment_context, get_logger
from app.schemas.dataset import Dataset, DiscretizationSpec, SplitSpec
from app.schemas.experiment import ExperimentConfig, ExperimentResult, RatioSummary, SuiteReport
from app.schemas.rule import Algorithm
from app.services.dataset_service import FIXTURES, dataset_statistics, load_fixture, load_path, split
from app.services.induction_service import export_ruleset, induce, render_ruleset, verify_ruleset
from app.services.metrics_service import evaluate, time_induction

# baseline first in every table
ALGORITHM_ORDER: Dict[str, int] = {"rules": 0, "rrules": 1}


def dataset_label(config: ExperimentConfig) -> str:
    """
    Report label: fixture or file name, tagged with the seed when the run
    splits and with the bin count when it differs from the default.
    """
    base = config.data if config.data in FIXTURES else Path(config.data).name
    tags = []
    if config.test_fraction > 0:
        tags.append(f"seed={config.seed}")
    if config.n_bins != settings.DEFAULT_N_BINS:
        tags.append(f"bins={config.n_bins}")
    return f"{base}[{','.join(tags)}]" if tags else base


def load_manifest(path: Union[str, Path]) -> List[ExperimentConfig]:
    """
    Read a suite manifest

    One JSON object per line with ExperimentConfig keys. Blank lines and lines
    starting with "#" are skipped. Relative data paths resolve against the
    manifest's directory; fixture names are kept as they are.

    Raises:
        ExperimentError: Unreadable manifest or an invalid line
    """
    path = Path(path)
    try:
        lines = path.read_text(encoding="utf-8").splitlines()
    except OSError as exc:
        raise ExperimentError(f"cannot read manifest {path}: {exc.strerror}") from exc

    configs = []
    for number, line in enumerate(lines, start=1):
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        try:
            config = ExperimentConfig.model_validate_json(line)
        except ValidationError as exc:
            raise ExperimentError(
                f"manifest line {number}: {exc.errors()[0]['msg']}", line=number
            ) from exc
        updates = {}
        for key in ("data", "test_data"):
            value = getattr(config, key)
            if value is not None and value not in FIXTURES and not Path(value).is_absolute():
                updates[key] = str(path.parent / value)
        configs.append(config.model_copy(update=updates) if updates else config)
    return configs


def ratio_summaries(results: Sequence[ExperimentResult]) -> List[RatioSummary]:
    """RULES / RRULES ratios for every dataset where both runs succeeded."""
    cells: Dict[str, Dict[str, ExperimentResult]] = {}
    for result in results:
        if result.status == "ok" and result.metrics is not None:
            cells.setdefault(result.dataset, {})[result.algorithm] = result

    def ratio(numerator: Optional[float], denominator: Optional[float]) -> Optional[float]:
        if numerator is None or not denominator:
            return None
        return numerator / denominator

    summaries = []
    for dataset in sorted(cells):
        pair = cells[dataset]
        if "rules" not in pair or "rrules" not in pair:
            continue
        base, optimized = pair["rules"].metrics, pair["rrules"].metrics
        summaries.append(
            RatioSummary(
                dataset=dataset,
                rules_ratio=ratio(base.n_rules, optimized.n_rules),
                coverage_ratio=ratio(base.overall_coverage, optimized.overall_coverage),
                time_ratio=ratio(base.induction_time, optimized.induction_time),
            )
        )
    return summaries


class ExperimentService:
    """
    Service running benchmark experiments

    Attributes:
        data_dir (Path): Base directory for relative dataset paths
        max_workers (int): Thread pool size for untimed suites
        logger: Structured logger instance
    """

    def __init__(self, data_dir: Optional[str] = None, max_workers: Optional[int] = None):
        self.data_dir = Path(data_dir if data_dir is not None else settings.DATA_DIR)
        self.max_workers = max_workers if max_workers is not None else settings.MAX_SUITE_WORKERS
        self.logger = get_logger(__name__)

    def _resolve(self, source: str) -> Path:
        path = Path(source)
        if not path.is_absolute():
            path = self.data_dir / path
        if not path.is_file():
            raise ExperimentError(f"dataset {source!r} is neither a file nor a built-in fixture")
        return path

    def load_dataset(self, config: ExperimentConfig) -> Tuple[Dataset, Optional[DiscretizationSpec]]:
        """
        Resolve config.data to a dataset

        Fixture names win over file names. Files get their numeric columns
        discretized into config.n_bins bins.
        """
        if config.data in FIXTURES:
            return load_fixture(config.data), None
        try:
            return load_path(
                self._resolve(config.data),
                has_header=config.has_header,
                class_column=config.class_column,
                n_bins=config.n_bins,
            )
        except OSError as exc:
            raise ExperimentError(f"cannot read dataset {config.data!r}: {exc.strerror}") from exc

    def prepare(self, config: ExperimentConfig) -> Tuple[Dataset, Dataset, Optional[Dataset]]:
        """
        Load and partition the data of one experiment

        Returns:
            Tuple[Dataset, Dataset, Optional[Dataset]]: (full, train, test);
                test is None in train-only runs
        """
        dataset, spec = self.load_dataset(config)
        if config.test_data is not None:
            try:
                test, _ = load_path(
                    self._resolve(config.test_data),
                    has_header=config.has_header,
                    class_column=config.class_column,
                    reference=dataset,
                    reference_spec=spec,
                )
            except OSError as exc:
                raise ExperimentError(
                    f"cannot read test data {config.test_data!r}: {exc.strerror}"
                ) from exc
            return dataset, dataset, test
        if config.test_fraction > 0:
            train, test = split(dataset, SplitSpec(test_fraction=config.test_fraction, seed=config.seed))
            return dataset, train, test
        return dataset, dataset, None

    def run_algorithm(
        self,
        config: ExperimentConfig,
        algorithm: Algorithm,
        dataset: Dataset,
        train: Dataset,
        test: Optional[Dataset],
    ) -> ExperimentResult:
        """Induce, verify and evaluate one algorithm on prepared data."""
        bind_experiment_context(dataset_label(config), algorithm)
        try:
            elapsed = time_induction(algorithm, train, config.repeats) if config.timed else None
            rule_set, trace = induce(train, algorithm)
            verification = verify_ruleset(rule_set, train) if config.verify else None
            metrics = evaluate(rule_set, train, test, elapsed)
            self.logger.info(
                "Experiment finished",
                rules=metrics.n_rules,
                coverage=round(metrics.overall_coverage, 4),
                test_accuracy=metrics.test_accuracy,
                verified=verification.passed if verification is not None else None,
            )
            return ExperimentResult(
                dataset=dataset_label(config),
                algorithm=algorithm,
                statistics=dataset_statistics(dataset),
                metrics=metrics,
                verification=verification,
                trace=trace if config.verbosity > 0 else None,
                rules=export_ruleset(rule_set, train) if config.dump_rules else None,
                rules_text=render_ruleset(rule_set, train) if config.dump_rules else None,
            )
        finally:
            clear_experiment_context()

    def run_experiment(self, config: ExperimentConfig) -> List[ExperimentResult]:
        """
        Run every selected algorithm of one config

        Raises:
            RuleToolkitError: The dataset cannot be loaded or split
        """
        dataset, train, test = self.prepare(config)
        self.logger.info(
            "Experiment prepared",
            dataset=config.data,
            train_rows=train.n_rows,
            test_rows=test.n_rows if test is not None else 0,
        )
        return [
            self.run_algorithm(config, algorithm, dataset, train, test)
            for algorithm in config.algorithms
        ]

    def _run_isolated(self, config: ExperimentConfig) -> List[ExperimentResult]:
        try:
            return self.run_experiment(config)
        except RuleToolkitError as exc:
            self.logger.error("Experiment failed", dataset=config.data, error=exc.message)
            return [
                ExperimentResult(
                    dataset=dataset_label(config), algorithm=algorithm, status="failed", error=exc.message
                )
                for algorithm in config.algorithms
            ]

    def run_suite(self, configs: Sequence[ExperimentConfig]) -> SuiteReport:
        """
        Run a manifest of experiments

        A failing experiment is reported as failed rows and the suite goes
        on. When any config is timed, experiments run one after another so
        durations are not skewed; otherwise they share a thread pool.
        """
        if any(config.timed for config in configs) or self.max_workers <= 1 or len(configs) <= 1:
            batches = [self._run_isolated(config) for config in configs]
        else:
            with ThreadPoolExecutor(max_workers=self.max_workers) as pool:
                batches = list(pool.map(self._run_isolated, configs))

        results = sorted(
            (result for batch in batches for result in batch),
            key=lambda result: (result.dataset, ALGORITHM_ORDER[result.algorithm]),
        )
        # pair RULES with RRULES inside each experiment, never across two
        ratios = sorted(
            (summary for batch in batches for summary in ratio_summaries(batch)),
            key=lambda summary: summary.dataset,
        )
        report = SuiteReport(results=results, ratios=ratios)
        self.logger.info(
            "Suite finished",
            experiments=len(configs),
            rows=len(results),
            failed=sum(result.status == "failed" for result in results),
        )
        return report


_experiment_service_instance: Optional[ExperimentService] = None


def get_experiment_service() -> ExperimentService:
    """
    Get the singleton instance of ExperimentService

    Used as a FastAPI dependency.
    """
    global _experiment_service_instance
    if _experiment_service_instance is None:
        _experiment_service_instance = ExperimentService()
    return _experiment_service_instance
