"""
Dataset schemas

Categorical datasets are stored index-encoded: every cell is the position of
its token in the attribute's vocabulary and every label is the position of
the class name in class_names. The models are frozen so a Dataset can be
shared read-only between concurrent experiments.

Models:
    AttributeSchema: Name, vocabulary and kind of one attribute
    RawTable: Tokenized delimiter-separated input before encoding
    Dataset: Index-encoded examples and class labels
    DiscretizationSpec: Equal-width bin edges per numeric attribute
    SplitSpec: Held-out fraction and seed of a train/test split
    DatasetStatistics: Summary counts of a dataset
"""

from typing import Dict, List, Literal, Sequence, Tuple

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

AttributeKind = Literal["categorical", "numeric"]


class AttributeSchema(BaseModel):
    """
    One attribute of a dataset

    Attributes:
        name (str): Column name
        values (Tuple[str, ...]): Vocabulary. Categorical attributes keep the
            order of first appearance in the source; numeric attributes list
            their bin labels in bin order
        kind (str): "categorical" or "numeric" (discretized into bins)
    """

    model_config = ConfigDict(frozen=True)

    name: str = Field(..., min_length=1)
    values: Tuple[str, ...]
    kind: AttributeKind = "categorical"

    @field_validator("values")
    @classmethod
    def values_unique(cls, values: Tuple[str, ...]) -> Tuple[str, ...]:
        if len(set(values)) != len(values):
            raise ValueError("attribute values must be unique")
        return values

    def decode(self, index: int) -> str:
        return self.values[index]


class RawTable(BaseModel):
    """
    Tokenized input rows, split into attribute cells and class labels

    Attributes:
        attribute_names (Tuple[str, ...]): Names of the non-class columns
        class_name (str): Name of the class column
        cells (Tuple[Tuple[str, ...], ...]): Trimmed attribute tokens per row
        labels (Tuple[str, ...]): Trimmed class token per row
        line_numbers (Tuple[int, ...]): 1-based source line of each row
    """

    model_config = ConfigDict(frozen=True)

    attribute_names: Tuple[str, ...]
    class_name: str
    cells: Tuple[Tuple[str, ...], ...]
    labels: Tuple[str, ...]
    line_numbers: Tuple[int, ...]

    def column(self, position: int) -> List[str]:
        return [row[position] for row in self.cells]


class Dataset(BaseModel):
    """
    Index-encoded categorical dataset

    Attributes:
        name (str): Label used in reports (file name or fixture name)
        attributes (Tuple[AttributeSchema, ...]): One schema per attribute
        examples (Tuple[Tuple[int, ...], ...]): One value index per attribute per row
        classes (Tuple[int, ...]): Class index per row
        class_names (Tuple[str, ...]): Class vocabulary, first-appearance order
        class_attribute (str): Name of the class column

    Validation Rules:
        - at least one attribute and one row
        - every row has one entry per attribute, each inside its vocabulary
        - every class index is inside class_names
    """

    model_config = ConfigDict(frozen=True)

    name: str = ""
    attributes: Tuple[AttributeSchema, ...] = Field(..., min_length=1)
    examples: Tuple[Tuple[int, ...], ...] = Field(..., min_length=1)
    classes: Tuple[int, ...]
    class_names: Tuple[str, ...] = Field(..., min_length=1)
    class_attribute: str = "class"

    @model_validator(mode="after")
    def check_encoding(self) -> "Dataset":
        if len(self.classes) != len(self.examples):
            raise ValueError("one class index is required per example")
        sizes = [len(attribute.values) for attribute in self.attributes]
        n_a = len(sizes)
        for position, row in enumerate(self.examples):
            if len(row) != n_a:
                raise ValueError(f"row {position} has {len(row)} values, expected {n_a}")
            for value, size in zip(row, sizes):
                if not 0 <= value < size:
                    raise ValueError(f"row {position} has value index {value} outside its vocabulary")
        n_classes = len(self.class_names)
        for position, label in enumerate(self.classes):
            if not 0 <= label < n_classes:
                raise ValueError(f"row {position} has class index {label} outside class_names")
        return self

    @property
    def n_attributes(self) -> int:
        return len(self.attributes)

    @property
    def n_rows(self) -> int:
        return len(self.examples)

    def subset(self, rows: Sequence[int], name: str = "") -> "Dataset":
        """Rows at the given positions, sharing this dataset's schemas."""
        return Dataset.model_construct(
            name=name or self.name,
            attributes=self.attributes,
            examples=tuple(self.examples[i] for i in rows),
            classes=tuple(self.classes[i] for i in rows),
            class_names=self.class_names,
            class_attribute=self.class_attribute,
        )

    def decode_row(self, position: int) -> Tuple[str, ...]:
        return tuple(
            attribute.decode(value)
            for attribute, value in zip(self.attributes, self.examples[position])
        )


class DiscretizationSpec(BaseModel):
    """
    Equal-width binning of numeric attributes

    Attributes:
        n_bins (int): Bins per attribute
        edges (Dict[str, Tuple[float, ...]]): n_bins + 1 increasing cut points
            per discretized attribute name
    """

    model_config = ConfigDict(frozen=True)

    n_bins: int = Field(..., ge=1)
    edges: Dict[str, Tuple[float, ...]] = Field(default_factory=dict)

    @model_validator(mode="after")
    def check_edges(self) -> "DiscretizationSpec":
        for name, cuts in self.edges.items():
            if len(cuts) != self.n_bins + 1:
                raise ValueError(f"attribute {name} needs {self.n_bins + 1} edges")
            if any(b <= a for a, b in zip(cuts, cuts[1:])):
                raise ValueError(f"edges of attribute {name} must be strictly increasing")
        return self


class SplitSpec(BaseModel):
    """
    Seeded uniform train/test split

    The held-out count is test_fraction * n rounded half up, then clamped to
    [1, n - 1] so neither side is empty. On tiny inputs it can therefore
    differ from the rounded share (n=2, test_fraction=0.2 holds out 1 row).

    Attributes:
        test_fraction (float): Share of rows held out, strictly inside (0, 1)
        seed (int): Seed of the PCG64 generator driving the shuffle
    """

    model_config = ConfigDict(frozen=True)

    test_fraction: float = Field(0.2, gt=0, lt=1)
    seed: int = Field(1, ge=0)


class DatasetStatistics(BaseModel):
    """Summary counts reported for every dataset."""

    name: str
    n_examples: int
    n_attributes: int
    n_selectors: int
    n_classes: int
    class_distribution: Dict[str, int]
