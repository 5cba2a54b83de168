"""Pytest configuration and fixtures"""

from typing import Sequence

import pytest
from fastapi.testclient import TestClient

from app.main import app
from app.schemas.dataset import AttributeSchema, Dataset
from app.services.dataset_service import PAPER_EXAMPLE, load_csv, load_fixture


def make_dataset(
    rows: Sequence[Sequence[int]],
    classes: Sequence[int],
    values_per_attribute: Sequence[int],
    n_classes: int,
    name: str = "generated",
) -> Dataset:
    """Index-encoded dataset with vocabularies a{i}v{j} and classes c{k}."""
    return Dataset(
        name=name,
        attributes=tuple(
            AttributeSchema(name=f"a{i}", values=tuple(f"a{i}v{j}" for j in range(size)))
            for i, size in enumerate(values_per_attribute)
        ),
        examples=tuple(tuple(row) for row in rows),
        classes=tuple(classes),
        class_names=tuple(f"c{k}" for k in range(n_classes)),
    )


@pytest.fixture
def client():
    """Create a test client for the FastAPI app"""
    return TestClient(app)


@pytest.fixture
def five_rows() -> Dataset:
    """Five rows, attributes A/B/C with two values each, classes 0..3"""
    return load_fixture(PAPER_EXAMPLE)


@pytest.fixture
def contradiction() -> Dataset:
    """Two identical rows with different classes plus one clean row"""
    return load_csv(b"A,B,Class\nA1,B1,x\nA1,B1,y\nA2,B1,y\n", name="contradiction")
