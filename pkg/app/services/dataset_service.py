"""
Dataset service: ingest, validate, discretize and split

This module owns the value-encoding scheme every other service works on.
Delimiter-separated text is tokenized into a RawTable, then encoded into an
index-based Dataset. Categorical vocabularies and class names follow first
appearance in file order. Numeric columns can be discretized into
equal-width bins whose edges span the full column.

Functions:
    read_csv: Tokenize delimiter-separated bytes into a RawTable
    encode_table: Encode a RawTable, discretizing numeric columns on request
    load_csv: read_csv + encode_table
    load_path: load_csv for a file on disk
    discretize: Encode an all-numeric RawTable into equal-width bins
    split: Seeded uniform train/test partition
    load_fixture: Built-in datasets by name
    dataset_statistics: Summary counts of a dataset
"""

import csv
import io
import math
from pathlib import Path
from typing import Any, BinaryIO, Dict, Iterator, List, Optional, Sequence, Tuple, Union

import numpy as np

from app.core.exceptions import (
    ArgumentError,
    EmptyInputError,
    ParseError,
    SchemaError,
    StructuralError,
    UnknownFixtureError,
)
from app.core.logging import get_logger
from app.schemas.dataset import (
    AttributeSchema,
    Dataset,
    DatasetStatistics,
    DiscretizationSpec,
    RawTable,
    SplitSpec,
)

logger = get_logger(__name__)

ClassColumn = Union[int, str]
Source = Union[bytes, BinaryIO]

PAPER_EXAMPLE = "paper-example"

# Five-row example with three binary attributes and four classes.
_PAPER_EXAMPLE_CSV = b"""A,B,C,Class
A1,B1,C1,0
A1,B1,C1,0
A2,B1,C2,1
A2,B2,C1,2
A2,B2,C2,3
"""

FIXTURES: Dict[str, bytes] = {
    PAPER_EXAMPLE: _PAPER_EXAMPLE_CSV,
}


def read_csv(
    source: Source,
    has_header: bool = True,
    class_column: ClassColumn = -1,
) -> RawTable:
    """
    Tokenize comma-separated input

    Blank lines are skipped. Cells are trimmed; an empty cell is an error
    because the toolkit has no missing-value handling.

    Args:
        source: Raw bytes or a binary stream, UTF-8 (a BOM is tolerated)
        has_header: Whether the first non-blank line names the columns
        class_column: Column position (negative counts from the end) or header name

    Returns:
        RawTable: Trimmed attribute cells, class labels and source line numbers

    Raises:
        EmptyInputError: No data rows
        StructuralError: Ragged row, empty cell or empty column name, naming the line
        ParseError: The input is not valid UTF-8
        SchemaError: The class column cannot be resolved
    """
    data = source if isinstance(source, bytes) else source.read()
    try:
        text = data.decode("utf-8-sig")
    except UnicodeDecodeError as exc:
        raise ParseError(
            f"input is not valid UTF-8 at byte {exc.start}", position=exc.start
        ) from exc
    reader = csv.reader(io.StringIO(text))

    header: Optional[List[str]] = None
    rows: List[List[str]] = []
    line_numbers: List[int] = []
    width: Optional[int] = None

    for record in _records(reader):
        if not record or all(not cell.strip() for cell in record):
            continue
        line = reader.line_num
        if width is None:
            width = len(record)
        elif len(record) != width:
            raise StructuralError(
                f"line {line}: expected {width} cells, found {len(record)}",
                line=line,
            )
        cells = [cell.strip() for cell in record]
        if has_header and header is None:
            for position, cell in enumerate(cells):
                if not cell:
                    raise StructuralError(
                        f"line {line}: empty column name in column {position + 1}",
                        line=line,
                    )
            header = cells
            continue
        for position, cell in enumerate(cells):
            if not cell:
                raise StructuralError(
                    f"line {line}: empty cell in column {position + 1}",
                    line=line,
                )
        rows.append(cells)
        line_numbers.append(line)

    if not rows or width is None:
        raise EmptyInputError("input contains no data rows")
    if width < 2:
        raise SchemaError("input needs at least one attribute column besides the class")

    class_position = _resolve_class_column(class_column, header, width)
    if header is None:
        names = [f"a{i + 1}" for i in range(width - 1)]
        class_name = "class"
    else:
        if len(set(header)) != len(header):
            raise SchemaError("header contains duplicate column names")
        names = [name for i, name in enumerate(header) if i != class_position]
        class_name = header[class_position]

    return RawTable(
        attribute_names=tuple(names),
        class_name=class_name,
        cells=tuple(
            tuple(cell for i, cell in enumerate(row) if i != class_position) for row in rows
        ),
        labels=tuple(row[class_position] for row in rows),
        line_numbers=tuple(line_numbers),
    )


def _records(reader: Any) -> Iterator[List[str]]:
    """Rows of a csv reader, with quoting errors raised as StructuralError."""
    while True:
        try:
            record = next(reader)
        except StopIteration:
            return
        except csv.Error as exc:
            raise StructuralError(f"line {reader.line_num}: {exc}", line=reader.line_num) from exc
        yield record


def _resolve_class_column(class_column: ClassColumn, header: Optional[List[str]], width: int) -> int:
    if isinstance(class_column, str):
        if header is None:
            raise SchemaError(f"class column {class_column!r} given by name but input has no header")
        if class_column not in header:
            raise SchemaError(f"class column {class_column!r} not found in header")
        return header.index(class_column)
    if not -width <= class_column < width:
        raise SchemaError(f"class column {class_column} outside the {width} input columns")
    return class_column % width


def _numeric_column(raw: RawTable, position: int) -> Optional[np.ndarray]:
    """Column as floats, or None when some cell is not a finite number."""
    try:
        values = np.array([float(cell) for cell in raw.column(position)], dtype=float)
    except ValueError:
        return None
    if not np.all(np.isfinite(values)):
        return None
    return values


def _equal_width_edges(values: np.ndarray, n_bins: int) -> Tuple[float, ...]:
    low, high = float(values.min()), float(values.max())
    if high > low:
        edges = np.linspace(low, high, n_bins + 1)
    else:
        # constant column: unit-width bins starting at the value
        edges = low + np.arange(n_bins + 1, dtype=float)
    return tuple(float(edge) for edge in edges)


def _assign_bins(values: np.ndarray, edges: Sequence[float]) -> np.ndarray:
    n_bins = len(edges) - 1
    bins = np.searchsorted(np.asarray(edges, dtype=float), values, side="right") - 1
    return np.clip(bins, 0, n_bins - 1).astype(np.int64)


def _bin_labels(edges: Sequence[float]) -> Tuple[str, ...]:
    last = len(edges) - 2
    return tuple(
        f"bin{i} [{edges[i]:.4g}, {edges[i + 1]:.4g}{']' if i == last else ')'}"
        for i in range(last + 1)
    )


def _categorical_column(
    tokens: Sequence[str], known: Tuple[str, ...] = ()
) -> Tuple[Tuple[str, ...], List[int]]:
    vocabulary: Dict[str, int] = {token: i for i, token in enumerate(known)}
    encoded = []
    for token in tokens:
        index = vocabulary.get(token)
        if index is None:
            index = vocabulary[token] = len(vocabulary)
        encoded.append(index)
    return tuple(vocabulary), encoded


def encode_table(
    raw: RawTable,
    n_bins: Optional[int] = None,
    reference: Optional[Dataset] = None,
    reference_spec: Optional[DiscretizationSpec] = None,
    name: str = "",
) -> Tuple[Dataset, DiscretizationSpec]:
    """
    Encode a RawTable into a Dataset

    With n_bins set, every column whose cells all parse as finite numbers is
    discretized into n_bins equal-width bins; other columns stay categorical.
    With a reference dataset the table is encoded against the reference
    vocabularies (and the reference bin edges for numeric attributes).
    Tokens the reference has never seen are appended after its vocabulary,
    so they match no selector induced from the reference.

    Args:
        raw: Tokenized input
        n_bins: Bins per numeric column, None keeps every column categorical
        reference: Dataset whose schemas the encoding must extend
        reference_spec: Bin edges of the reference's numeric attributes
        name: Dataset name for reports

    Returns:
        Tuple[Dataset, DiscretizationSpec]: Encoded data and the edges used

    Raises:
        ArgumentError: n_bins < 1
        SchemaError: Column count differs from the reference
    """
    if n_bins is not None and n_bins < 1:
        raise ArgumentError("n_bins must be a positive integer", n_bins=n_bins)
    if reference is not None and reference.n_attributes != len(raw.attribute_names):
        raise SchemaError(
            f"expected {reference.n_attributes} attribute columns, found {len(raw.attribute_names)}"
        )

    attributes: List[AttributeSchema] = []
    columns: List[List[int]] = []
    edges: Dict[str, Tuple[float, ...]] = {}
    spec_bins = n_bins

    for position, column_name in enumerate(raw.attribute_names):
        known = reference.attributes[position] if reference is not None else None
        values = None
        if known is not None and known.kind == "numeric":
            if reference_spec is None or known.name not in reference_spec.edges:
                raise SchemaError(f"bin edges for numeric attribute {known.name!r} are missing")
            values = _numeric_column(raw, position)
            if values is None:
                raise ParseError(f"column {known.name!r} must be numeric")
            cuts = reference_spec.edges[known.name]
            spec_bins = reference_spec.n_bins
        elif known is None and n_bins is not None:
            values = _numeric_column(raw, position)
            cuts = _equal_width_edges(values, n_bins) if values is not None else ()

        if values is not None:
            edges[column_name] = cuts
            attributes.append(
                AttributeSchema(name=column_name, values=_bin_labels(cuts), kind="numeric")
            )
            columns.append(_assign_bins(values, cuts).tolist())
        else:
            vocabulary, encoded = _categorical_column(
                raw.column(position), known.values if known is not None else ()
            )
            attributes.append(AttributeSchema(name=column_name, values=vocabulary))
            columns.append(encoded)

    class_names, classes = _categorical_column(
        raw.labels, reference.class_names if reference is not None else ()
    )
    dataset = Dataset(
        name=name,
        attributes=tuple(attributes),
        examples=tuple(zip(*columns)),
        classes=tuple(classes),
        class_names=class_names,
        class_attribute=raw.class_name,
    )
    spec = DiscretizationSpec(n_bins=spec_bins or 1, edges=edges)
    logger.debug(
        "Table encoded",
        dataset=name,
        rows=dataset.n_rows,
        attributes=dataset.n_attributes,
        numeric_attributes=sorted(edges),
        classes=len(class_names),
    )
    return dataset, spec


def load_csv(
    source: Source,
    has_header: bool = True,
    class_column: ClassColumn = -1,
    n_bins: Optional[int] = None,
    reference: Optional[Dataset] = None,
    reference_spec: Optional[DiscretizationSpec] = None,
    name: str = "",
) -> Dataset:
    """
    Load a categorical dataset from comma-separated bytes

    All columns other than the class column become attributes.

    Example:
        with open("tic-tac-toe.data", "rb") as handle:
            dataset = load_csv(handle, has_header=False)
    """
    raw = read_csv(source, has_header=has_header, class_column=class_column)
    dataset, _ = encode_table(raw, n_bins, reference, reference_spec, name)
    return dataset


def load_path(
    path: Union[str, Path],
    has_header: bool = True,
    class_column: ClassColumn = -1,
    n_bins: Optional[int] = None,
    reference: Optional[Dataset] = None,
    reference_spec: Optional[DiscretizationSpec] = None,
) -> Tuple[Dataset, DiscretizationSpec]:
    """Load a file from disk, returning the dataset and its bin edges."""
    path = Path(path)
    with path.open("rb") as handle:
        raw = read_csv(handle, has_header=has_header, class_column=class_column)
    dataset, spec = encode_table(raw, n_bins, reference, reference_spec, name=path.name)
    logger.info(
        "Dataset loaded",
        path=str(path),
        rows=dataset.n_rows,
        attributes=dataset.n_attributes,
        classes=len(dataset.class_names),
    )
    return dataset, spec


def discretize(raw: RawTable, n_bins: int, name: str = "") -> Tuple[Dataset, DiscretizationSpec]:
    """
    Discretize an all-numeric table into equal-width bins

    Edges span [min, max] of each column over the whole table. A value v goes
    to bin floor((v - min) / width) and the column maximum to the last bin.
    Constant columns put every value in bin 0.

    Args:
        raw: Tokenized table whose attribute cells are all numeric
        n_bins: Bins per attribute, at least 1

    Returns:
        Tuple[Dataset, DiscretizationSpec]: Bin-encoded data and the edges

    Raises:
        ArgumentError: n_bins < 1
        ParseError: A cell is not a finite number

    Example:
        column [0, 3.5, 7] with n_bins=7 -> bins [0, 3, 6]
    """
    if n_bins < 1:
        raise ArgumentError("n_bins must be a positive integer", n_bins=n_bins)
    for position, column_name in enumerate(raw.attribute_names):
        for row, cell in enumerate(raw.column(position)):
            try:
                value = float(cell)
            except ValueError:
                value = math.nan
            if not math.isfinite(value):
                line = raw.line_numbers[row]
                raise ParseError(
                    f"line {line}: column {column_name!r} value {cell!r} is not numeric",
                    line=line,
                )
    return encode_table(raw, n_bins=n_bins, name=name)


def split(dataset: Dataset, spec: SplitSpec) -> Tuple[Dataset, Dataset]:
    """
    Seeded uniform train/test split

    Shuffle: positions 0..n-1 are permuted with a decreasing-index swap
    (Fisher-Yates) driven by numpy's PCG64 generator seeded with spec.seed.
    For i = n-1 down to 1, j = Generator(PCG64(seed)).integers(0, i + 1) and
    positions i and j are swapped. The last n_test shuffled positions form
    the test set, the rest the training set, both in shuffled order.
    n_test = floor(test_fraction * n + 0.5), clamped to [1, n - 1].

    Args:
        dataset: Dataset with at least two rows
        spec: Fraction and seed

    Returns:
        Tuple[Dataset, Dataset]: (train, test) sharing the parent's schemas

    Raises:
        ArgumentError: Fewer than two rows
    """
    n_rows = dataset.n_rows
    if n_rows < 2:
        raise ArgumentError("splitting needs at least two rows", rows=n_rows)

    n_test = min(max(math.floor(spec.test_fraction * n_rows + 0.5), 1), n_rows - 1)
    order = shuffled_positions(n_rows, spec.seed)
    train = dataset.subset(order[: n_rows - n_test])
    test = dataset.subset(order[n_rows - n_test:])
    logger.debug(
        "Dataset split",
        dataset=dataset.name,
        seed=spec.seed,
        train_rows=train.n_rows,
        test_rows=test.n_rows,
    )
    return train, test


def shuffled_positions(n_rows: int, seed: int) -> List[int]:
    """Positions 0..n_rows-1 after the documented Fisher-Yates shuffle."""
    rng = np.random.Generator(np.random.PCG64(seed))
    order = list(range(n_rows))
    for i in range(n_rows - 1, 0, -1):
        j = int(rng.integers(0, i + 1))
        order[i], order[j] = order[j], order[i]
    return order


def load_fixture(name: str) -> Dataset:
    """
    Built-in dataset by name

    Raises:
        UnknownFixtureError: No fixture has that name
    """
    data = FIXTURES.get(name)
    if data is None:
        raise UnknownFixtureError(f"unknown fixture {name!r}", fixtures=sorted(FIXTURES))
    return load_csv(data, has_header=True, class_column=-1, name=name)


def dataset_statistics(dataset: Dataset) -> DatasetStatistics:
    """Examples, attributes, occupied selectors and classes of a dataset."""
    occupied = {
        (attribute, value)
        for row in dataset.examples
        for attribute, value in enumerate(row)
    }
    counts = np.bincount(np.asarray(dataset.classes), minlength=len(dataset.class_names))
    return DatasetStatistics(
        name=dataset.name,
        n_examples=dataset.n_rows,
        n_attributes=dataset.n_attributes,
        n_selectors=len(occupied),
        n_classes=len(dataset.class_names),
        class_distribution={
            class_name: int(count) for class_name, count in zip(dataset.class_names, counts)
        },
    )
