"""Tests for app/services/dataset_service.py"""

import io

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from app.core.exceptions import (
    ArgumentError,
    EmptyInputError,
    ParseError,
    SchemaError,
    StructuralError,
    UnknownFixtureError,
)
from app.schemas.dataset import SplitSpec
from app.services.dataset_service import (
    _assign_bins,
    _equal_width_edges,
    dataset_statistics,
    discretize,
    encode_table,
    load_csv,
    load_fixture,
    load_path,
    read_csv,
    split,
)
from tests.conftest import make_dataset


def reference_shuffle(n, seed):
    """Decreasing-index swap shuffle driven by PCG64, written out independently."""
    generator = np.random.Generator(np.random.PCG64(seed))
    positions = np.arange(n)
    for i in reversed(range(1, n)):
        j = generator.integers(0, i + 1)
        positions[[i, j]] = positions[[j, i]]
    return positions.tolist()


def identity_dataset(n):
    """One attribute whose value index equals the row position."""
    return make_dataset([[i] for i in range(n)], [i % 2 for i in range(n)], [n], 2)


class TestLoadCsv:
    def test_five_rows(self, five_rows):
        assert [a.name for a in five_rows.attributes] == ["A", "B", "C"]
        assert five_rows.attributes[0].values == ("A1", "A2")
        assert five_rows.class_names == ("0", "1", "2", "3")
        assert five_rows.class_attribute == "Class"
        assert five_rows.examples == (
            (0, 0, 0),
            (0, 0, 0),
            (1, 0, 1),
            (1, 1, 0),
            (1, 1, 1),
        )
        assert five_rows.classes == (0, 0, 1, 2, 3)

    def test_single_row_without_header(self):
        dataset = load_csv(b"x,y,yes\n", has_header=False)
        assert dataset.n_rows == 1
        assert [a.name for a in dataset.attributes] == ["a1", "a2"]
        assert dataset.class_attribute == "class"
        assert dataset.class_names == ("yes",)

    def test_vocabulary_in_first_appearance_order(self):
        dataset = load_csv(b"o,x,b,positive\nx,o,b,negative\n", has_header=False)
        assert dataset.attributes[0].values == ("o", "x")
        assert dataset.class_names == ("positive", "negative")

    def test_cells_are_trimmed_and_blank_lines_skipped(self):
        dataset = load_csv(b"A, B ,Class\n\n a1 ,b1, yes \n\n")
        assert [a.name for a in dataset.attributes] == ["A", "B"]
        assert dataset.decode_row(0) == ("a1", "b1")
        assert dataset.class_names == ("yes",)

    def test_stream_source(self):
        dataset = load_csv(io.BytesIO(b"A,Class\nx,1\n"))
        assert dataset.n_rows == 1

    def test_class_column_first(self):
        dataset = load_csv(b"e,x,s\np,b,y\n", has_header=False, class_column=0)
        assert dataset.class_names == ("e", "p")
        assert dataset.attributes[0].values == ("x", "b")

    def test_class_column_by_name(self):
        dataset = load_csv(b"Class,A,B\nyes,x,y\n", class_column="Class")
        assert [a.name for a in dataset.attributes] == ["A", "B"]
        assert dataset.class_names == ("yes",)

    def test_ragged_row_names_line(self):
        with pytest.raises(StructuralError) as exc_info:
            read_csv(b"A,B,C\n1,2,3\n1,2\n")
        assert exc_info.value.line == 3

    def test_empty_cell_names_line(self):
        with pytest.raises(StructuralError) as exc_info:
            read_csv(b"A,B,C\nx,,y\n")
        assert exc_info.value.line == 2

    def test_empty_column_name_names_line(self):
        with pytest.raises(StructuralError) as exc_info:
            load_csv(b"A,,Class\na,b,x\n")
        assert exc_info.value.line == 1

    def test_undecodable_bytes(self):
        with pytest.raises(ParseError) as exc_info:
            load_csv(b"A,Class\n\xff,x\nb,y\n")
        assert exc_info.value.details["position"] == 8

    def test_oversized_field_names_line(self):
        with pytest.raises(StructuralError) as exc_info:
            read_csv(b"A,Class\n" + b"x" * 200_000 + b",y\n")
        assert exc_info.value.line == 2

    @pytest.mark.parametrize("data", [b"", b"\n\n", b"A,B,Class\n"])
    def test_no_rows(self, data):
        with pytest.raises(EmptyInputError):
            read_csv(data)

    @pytest.mark.parametrize(
        "data, kwargs",
        [
            (b"A,B\nx,y\n", {"class_column": 5}),
            (b"A,B\nx,y\n", {"class_column": "Label"}),
            (b"x,y\n", {"has_header": False, "class_column": "Label"}),
            (b"Class\nyes\n", {}),
            (b"A,A,Class\nx,y,z\n", {}),
        ],
    )
    def test_schema_errors(self, data, kwargs):
        with pytest.raises(SchemaError):
            read_csv(data, **kwargs)

    def test_load_path(self, tmp_path):
        path = tmp_path / "toy.csv"
        path.write_bytes(b"A,Class\nx,1\ny,2\n")
        dataset, spec = load_path(path)
        assert dataset.name == "toy.csv"
        assert dataset.n_rows == 2
        assert spec.edges == {}


class TestDiscretize:
    def test_equal_width_bins(self):
        raw = read_csv(b"x,class\n0,a\n3.5,b\n7,a\n")
        dataset, spec = discretize(raw, 7)
        assert [row[0] for row in dataset.examples] == [0, 3, 6]
        assert spec.edges["x"] == (0.0, 1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0)
        assert dataset.attributes[0].kind == "numeric"
        assert dataset.attributes[0].values[0] == "bin0 [0, 1)"
        assert dataset.attributes[0].values[-1] == "bin6 [6, 7]"

    def test_every_value_inside_its_bin(self):
        values = [4.3, 5.1, 5.8, 6.4, 7.9, 6.0, 4.9]
        data = "x,class\n" + "".join(f"{v},c\n" for v in values)
        dataset, spec = discretize(read_csv(data.encode()), 7)
        edges = spec.edges["x"]
        for value, (bin_index,) in zip(values, dataset.examples):
            assert edges[bin_index] <= value <= edges[bin_index + 1]

    @settings(max_examples=1000)
    @given(
        values=st.lists(
            st.floats(allow_nan=False, allow_infinity=False, width=64), min_size=1, max_size=20
        ),
        n_bins=st.integers(min_value=1, max_value=10),
    )
    def test_bins_contain_their_values(self, values, n_bins):
        column = np.array(values, dtype=float)
        edges = _equal_width_edges(column, n_bins)
        if not all(np.isfinite(edges)):
            return
        for value, bin_index in zip(values, _assign_bins(column, edges)):
            assert edges[bin_index] <= value <= edges[bin_index + 1]

    def test_tiny_values_near_an_edge(self):
        values = np.array([1.0, -1.0, -2.2e-311])
        edges = _equal_width_edges(values, 2)
        assert _assign_bins(values, edges).tolist() == [1, 0, 0]

    def test_constant_column(self):
        dataset, spec = discretize(read_csv(b"x,class\n5,a\n5,b\n"), 3)
        assert [row[0] for row in dataset.examples] == [0, 0]
        assert spec.edges["x"] == (5.0, 6.0, 7.0, 8.0)

    def test_zero_bins_rejected(self):
        with pytest.raises(ArgumentError):
            discretize(read_csv(b"x,class\n1,a\n"), 0)

    def test_non_numeric_cell_rejected(self):
        with pytest.raises(ParseError) as exc_info:
            discretize(read_csv(b"x,class\n1,a\nabc,b\n"), 3)
        assert exc_info.value.details["line"] == 3

    def test_mixed_columns_auto_detected(self):
        raw = read_csv(b"len,colour,class\n1.0,red,a\n2.0,blue,b\n3.0,red,a\n")
        dataset, spec = encode_table(raw, n_bins=2)
        assert dataset.attributes[0].kind == "numeric"
        assert dataset.attributes[1].kind == "categorical"
        assert list(spec.edges) == ["len"]
        assert [row[0] for row in dataset.examples] == [0, 1, 1]

    def test_without_bins_numbers_stay_categorical(self):
        dataset, spec = encode_table(read_csv(b"x,class\n1,a\n2,b\n"))
        assert dataset.attributes[0].values == ("1", "2")
        assert spec.edges == {}


class TestReferenceEncoding:
    def test_unseen_tokens_appended(self, five_rows):
        test = load_csv(b"A,B,C,Class\nA3,B1,C1,9\nA2,B2,C2,3\n", reference=five_rows)
        assert test.attributes[0].values == ("A1", "A2", "A3")
        assert test.class_names == ("0", "1", "2", "3", "9")
        assert test.examples == ((2, 0, 0), (1, 1, 1))
        assert test.classes == (4, 3)

    def test_reference_bin_edges_reused(self):
        train, spec = encode_table(read_csv(b"x,class\n0,a\n10,b\n"), n_bins=2)
        test, test_spec = encode_table(
            read_csv(b"x,class\n4,a\n12,b\n"), reference=train, reference_spec=spec
        )
        assert test_spec.edges == spec.edges
        # 12 lies past the training maximum and lands in the last bin
        assert [row[0] for row in test.examples] == [0, 1]

    def test_column_count_must_match(self, five_rows):
        with pytest.raises(SchemaError):
            load_csv(b"A,B,Class\nA1,B1,0\n", reference=five_rows)


class TestSplit:
    def test_matches_reference_shuffle(self):
        dataset = identity_dataset(10)
        for seed in (0, 1, 7, 12345):
            train, test = split(dataset, SplitSpec(test_fraction=0.2, seed=seed))
            order = reference_shuffle(10, seed)
            assert [row[0] for row in test.examples] == order[8:]
            assert [row[0] for row in train.examples] == order[:8]

    def test_deterministic(self, five_rows):
        spec = SplitSpec(test_fraction=0.4, seed=3)
        assert split(five_rows, spec) == split(five_rows, spec)

    @pytest.mark.parametrize(
        "n, fraction, expected",
        [
            (10, 0.2, 2),
            (10, 0.25, 3),  # 2.5 rounds half up
            (2, 0.1, 1),  # at least one test row
            (2, 0.9, 1),  # at least one training row
            (2, 0.2, 1),  # rounds to 0, clamped up
            (286, 0.2, 57),
        ],
    )
    def test_test_size(self, n, fraction, expected):
        _, test = split(identity_dataset(n), SplitSpec(test_fraction=fraction, seed=1))
        assert test.n_rows == expected

    def test_single_row_rejected(self):
        with pytest.raises(ArgumentError):
            split(identity_dataset(1), SplitSpec())

    @settings(max_examples=100, deadline=None)
    @given(
        n=st.integers(min_value=2, max_value=60),
        fraction=st.floats(min_value=0.01, max_value=0.99),
        seed=st.integers(min_value=0, max_value=2**32),
    )
    def test_partition(self, n, fraction, seed):
        train, test = split(identity_dataset(n), SplitSpec(test_fraction=fraction, seed=seed))
        rows = [row[0] for row in train.examples + test.examples]
        assert sorted(rows) == list(range(n))
        assert 1 <= test.n_rows <= n - 1


class TestFixtures:
    def test_unknown_fixture(self):
        with pytest.raises(UnknownFixtureError):
            load_fixture("iris")

    def test_statistics(self, five_rows):
        stats = dataset_statistics(five_rows)
        assert stats.name == "paper-example"
        assert stats.n_examples == 5
        assert stats.n_attributes == 3
        assert stats.n_selectors == 6
        assert stats.n_classes == 4
        assert stats.class_distribution == {"0": 2, "1": 1, "2": 1, "3": 1}
