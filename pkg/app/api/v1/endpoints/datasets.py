"""
Datasets API endpoints

Endpoints:
    GET /datasets/fixtures          - Statistics of every built-in fixture
    GET /datasets/fixtures/{name}   - Statistics of one fixture
"""

from typing import List

from fastapi import APIRouter, HTTPException, Path

from app.core.exceptions import UnknownFixtureError
from app.schemas.dataset import DatasetStatistics
from app.services.dataset_service import FIXTURES, dataset_statistics, load_fixture

router = APIRouter()


@router.get("/fixtures", response_model=List[DatasetStatistics])
async def list_fixtures():
    """Examples, attributes, selectors and classes of each built-in fixture."""
    return [dataset_statistics(load_fixture(name)) for name in sorted(FIXTURES)]


@router.get("/fixtures/{name}", response_model=DatasetStatistics)
async def get_fixture(name: str = Path(..., min_length=1, description="Fixture name")):
    """
    Statistics of one fixture

    Status Codes:
        200: Success
        404: Not Found - No fixture has that name
    """
    try:
        return dataset_statistics(load_fixture(name))
    except UnknownFixtureError as exc:
        raise HTTPException(status_code=404, detail=exc.message) from exc
