"""
Condition service: selectors, candidate enumeration and matching

Row sets are integer bitsets (app.core.bitset). A MatchIndex precomputes one
bitset per selector and per class, so matching a condition is an AND over
its selectors' bitsets and the class-purity test is a single mask check.

Enumeration order is pinned: selectors sorted by (attribute, value), and
conditions generated as combinations in lexicographic order of selector
positions. Combinations that repeat an attribute are never generated since
they cannot match any row.

Classes:
    MatchIndex: Per-selector and per-class bitsets of one dataset

Functions:
    selectors_present: Selectors occurring in a set of rows
    enumerate_conditions: Distinct-attribute combinations of n_c selectors
    match: Rows of a set that satisfy a condition
    condition_from: Canonical, validated condition from selectors
    render_condition: "IF attr is val AND ..." text of a condition
"""

from typing import Dict, Iterable, Iterator, List, Sequence

from app.core.bitset import EMPTY, MatchSet, count_bits, full_bitset, lowest_index
from app.core.exceptions import ArgumentError
from app.schemas.dataset import Dataset
from app.schemas.rule import Condition, Selector


class MatchIndex:
    """
    Bitset index over one dataset

    Attributes:
        dataset (Dataset): Indexed dataset
        all_rows (MatchSet): Bitset of every row
        selector_rows (Dict[Selector, MatchSet]): Rows holding each occupied selector
        class_rows (List[MatchSet]): Rows of each class index
    """

    def __init__(self, dataset: Dataset):
        self.dataset = dataset
        self.all_rows: MatchSet = full_bitset(dataset.n_rows)
        self.selector_rows: Dict[Selector, MatchSet] = {}
        self.class_rows: List[MatchSet] = [EMPTY] * len(dataset.class_names)
        for position, (row, label) in enumerate(zip(dataset.examples, dataset.classes)):
            bit = 1 << position
            for attribute, value in enumerate(row):
                selector = Selector(attribute, value)
                self.selector_rows[selector] = self.selector_rows.get(selector, EMPTY) | bit
            self.class_rows[label] |= bit

    def match(self, condition: Condition, within: MatchSet) -> MatchSet:
        """Rows of `within` satisfying every selector of the condition."""
        rows = within
        for selector in condition:
            rows &= self.selector_rows.get(selector, EMPTY)
            if not rows:
                break
        return rows

    def pure_class(self, rows: MatchSet) -> int:
        """
        Class shared by every row of a nonempty set, or -1 when mixed

        Args:
            rows: Nonempty bitset
        """
        label = self.dataset.classes[lowest_index(rows)]
        return label if rows & ~self.class_rows[label] == 0 else -1

    def modal_class(self, rows: MatchSet) -> int:
        """Most frequent class among the rows; ties go to the lowest class index."""
        best, best_count = 0, -1
        for label, members in enumerate(self.class_rows):
            count = count_bits(rows & members)
            if count > best_count:
                best, best_count = label, count
        return best

    def selectors_present(self, rows: MatchSet) -> List[Selector]:
        """Occupied selectors of at least one row in the set, in selector order."""
        return sorted(selector for selector, members in self.selector_rows.items() if members & rows)


def selectors_present(dataset: Dataset, rows: Iterable[int]) -> List[Selector]:
    """
    Attribute-value pairs occurring in at least one of the given rows

    Args:
        dataset: Dataset the row indices refer to
        rows: 0-based row indices

    Returns:
        List[Selector]: Distinct selectors in selector order (empty for no rows)
    """
    present = {
        Selector(attribute, value)
        for position in rows
        for attribute, value in enumerate(dataset.examples[position])
    }
    return sorted(present)


def enumerate_conditions(selectors: Sequence[Selector], n_c: int) -> Iterator[Condition]:
    """
    Combinations of n_c selectors over pairwise-distinct attributes

    Yields conditions in lexicographic order of selector positions in the
    input. The input is expected in selector order, so selectors sharing an
    attribute are contiguous and the search jumps past an attribute's block
    once one of its selectors is taken.

    Args:
        selectors: Selectors in selector order, without duplicates
        n_c: Condition length, at least 1

    Yields:
        Condition: Tuples of n_c selectors

    Raises:
        ArgumentError: n_c < 1
    """
    if n_c < 1:
        raise ArgumentError("condition length must be at least 1", n_c=n_c)
    pool = list(selectors)
    size = len(pool)
    # next_block[i]: first position after i whose attribute differs from pool[i]'s
    next_block = [size] * size
    for i in range(size - 2, -1, -1):
        if pool[i + 1].attribute != pool[i].attribute:
            next_block[i] = i + 1
        else:
            next_block[i] = next_block[i + 1]
    # blocks_from[i]: distinct attributes among pool[i:]
    blocks_from = [0] * (size + 1)
    for i in range(size - 1, -1, -1):
        blocks_from[i] = 1 + blocks_from[next_block[i]]

    chosen: List[Selector] = []

    def extend(start: int) -> Iterator[Condition]:
        needed = n_c - len(chosen)
        if needed == 0:
            yield tuple(chosen)
            return
        for i in range(start, size):
            if blocks_from[i] < needed:
                return
            chosen.append(pool[i])
            yield from extend(next_block[i])
            chosen.pop()

    yield from extend(0)


def condition_from(selectors: Iterable[Selector]) -> Condition:
    """
    Canonical condition: selectors sorted, one per attribute

    Raises:
        ArgumentError: Empty, or two selectors share an attribute
    """
    condition = tuple(sorted(set(selectors)))
    if not condition:
        raise ArgumentError("a condition needs at least one selector")
    attributes = [selector.attribute for selector in condition]
    if len(set(attributes)) != len(attributes):
        raise ArgumentError("condition selectors must use distinct attributes")
    return condition


def match(condition: Condition, dataset: Dataset, within: Iterable[int]) -> List[int]:
    """
    Rows of `within` whose values satisfy every selector of the condition

    Convenience form over row indices; the induction loop uses
    MatchIndex.match on bitsets directly.

    Args:
        condition: Selectors valid for the dataset
        dataset: Dataset the rows belong to
        within: 0-based row indices to test

    Returns:
        List[int]: Matching row indices in ascending order
    """
    return sorted(
        position
        for position in set(within)
        if all(dataset.examples[position][attribute] == value for attribute, value in condition)
    )


def render_condition(condition: Condition, dataset: Dataset) -> str:
    """
    Text form used in rule dumps

    Example:
        ((0, 1), (2, 0)) -> "IF A is A2 AND C is C1"
    """
    parts = [
        f"{dataset.attributes[attribute].name} is {dataset.attributes[attribute].decode(value)}"
        for attribute, value in condition
    ]
    return "IF " + " AND ".join(parts)
