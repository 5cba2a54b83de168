"""API v1 router"""

from fastapi import APIRouter

from app.api.v1.endpoints import datasets, experiments

api_router = APIRouter()

api_router.include_router(datasets.router, prefix="/datasets", tags=["datasets"])
api_router.include_router(experiments.router, prefix="/experiments", tags=["experiments"])
