"""
Experiments API endpoints

Runs benchmark experiments over HTTP. Request bodies are ExperimentConfig
objects; dataset sources are restricted to built-in fixtures and paths
relative to DATA_DIR.

Endpoints:
    POST /experiments/        - Run one experiment, return the comparison report
    POST /experiments/rules   - Run one experiment, return the exported rule sets
"""

from pathlib import PurePath
from typing import List

from fastapi import APIRouter, Depends, HTTPException

from app.core.exceptions import RuleToolkitError
from app.schemas.experiment import ExperimentConfig, SuiteReport
from app.schemas.rule import RuleSetExport
from app.services.experiment_service import (
    ExperimentService,
    get_experiment_service,
    ratio_summaries,
)

router = APIRouter()


def _check_sources(config: ExperimentConfig) -> None:
    for source in (config.data, config.test_data):
        if source is None:
            continue
        path = PurePath(source)
        if path.is_absolute() or ".." in path.parts:
            raise HTTPException(
                status_code=422,
                detail="dataset paths must be relative to the data directory",
            )


def _run(config: ExperimentConfig, service: ExperimentService) -> SuiteReport:
    _check_sources(config)
    try:
        results = service.run_experiment(config)
    except RuleToolkitError as exc:
        raise HTTPException(status_code=422, detail=exc.message) from exc
    return SuiteReport(results=results, ratios=ratio_summaries(results))


@router.post("/", response_model=SuiteReport)
def run_experiment(
    config: ExperimentConfig,
    experiment_service: ExperimentService = Depends(get_experiment_service),
):
    """
    Run one experiment

    Induces the selected algorithms, verifies and evaluates them, and
    returns one result per algorithm plus the RULES/RRULES ratios.

    Example Request Body:
        {
            "data": "paper-example",
            "algorithm": "both",
            "test_fraction": 0,
            "repeats": 0
        }

    Status Codes:
        200: Success - Returns the report (check each result's verification)
        422: Validation Error - Invalid config, unreadable or malformed dataset
    """
    return _run(config, experiment_service)


@router.post("/rules", response_model=List[RuleSetExport])
def export_rules(
    config: ExperimentConfig,
    experiment_service: ExperimentService = Depends(get_experiment_service),
):
    """
    Induce and export rule sets

    Returns the structured export (attribute, value and class names) of
    every selected algorithm's rule set, in the order RULES, RRULES.
    """
    report = _run(config.model_copy(update={"dump_rules": True}), experiment_service)
    return [result.rules for result in report.results if result.rules is not None]
