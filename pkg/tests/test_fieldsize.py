"""
Tests for minimal field sizes and the parameter sweep.
"""

import pytest

from convertible_codes.access_convert import MergeParams
from convertible_codes.errors import PreconditionError
from convertible_codes.fieldsize import (
    auto_field,
    bound_description,
    family_label,
    min_field_order,
    prime_powers,
    sweep_rows,
)


def test_prime_powers():
    """Test enumeration of prime powers in a range."""
    assert list(prime_powers(10, 30)) == [11, 13, 16, 17, 19, 23, 25, 27, 29]


@pytest.mark.parametrize(
    "family, variant, params, expected",
    [
        ("grs-doubly-ext", None, MergeParams(4, 3, 3, 2), 11),
        ("subgroup-mult", "B", MergeParams(5, 4, 4, 2), 13),
        ("subgroup-add", "A", MergeParams(7, 3, 3, 2), 16),
        ("subgroup-add", "base", MergeParams(4, 3, 3, 2), 27),
        ("grs", None, MergeParams(4, 3, 2, 2), 11),
        ("grs-triply-ext", None, MergeParams(3, 3, 3, 2), 8),
        ("piggyback", None, MergeParams(8, 2, 6, 2), 23),
        ("default", None, MergeParams(4, 3, 3, 2), 11),
    ],
)
def test_min_field_order(family, variant, params, expected):
    """Test the smallest admissible field for the worked instances."""
    assert min_field_order(family, variant, params) == expected


def test_infeasible_families():
    """Test that families which cannot host the parameters return None."""
    assert min_field_order("subgroup-mult", "B", MergeParams(5, 4, 4, 3)) is None
    assert min_field_order("subgroup-add", "base", MergeParams(4, 6, 6, 2)) is None
    assert min_field_order("grs", None, MergeParams(4, 3, 5, 2)) is None
    assert min_field_order("piggyback", None, MergeParams(4, 3, 3, 2)) is None
    assert bound_description("grs-triply-ext", None, MergeParams(4, 4, 4, 2)) == "infeasible"


def test_auto_field():
    """Test that auto selection returns the field and the bound that chose it."""
    spec, description = auto_field("grs-doubly-ext", None, MergeParams(4, 3, 3, 2))
    assert spec.q == 11
    assert "- 1 = 10" in description
    spec, _ = auto_field("subgroup-add", "A", MergeParams(7, 3, 3, 2))
    assert spec.modulus == (1, 0, 0, 1, 1)
    with pytest.raises(PreconditionError):
        auto_field("subgroup-mult", "B", MergeParams(5, 4, 4, 3))
    with pytest.raises(PreconditionError):
        auto_field("grs", None, MergeParams(40, 3, 3, 2), max_order=64)


def test_family_label():
    """Test the column labels used by the sweep."""
    assert family_label("subgroup-mult", "base") == "subgroup-mult"
    assert family_label("subgroup-mult", "B") == "subgroup-mult-B"
    assert family_label("grs", None) == "grs"


def test_sweep_rows():
    """Test the sweep grid, its cost columns and the n/a cells."""
    rows = sweep_rows([2, 3], [3, 4], range(4, 7))
    assert len(rows) == 12
    first = rows[0]
    assert (first["k"], first["r"], first["lambda"]) == (4, 3, 2)
    assert first["access_bound"] == 9
    assert first["default_reads"] == 8
    assert first["optimal_reads"] == 6
    assert first["subgroup-mult"] == 16
    assert first["subgroup-mult-A"] == 11
    assert first["subgroup-mult-B"] == "n/a"
    assert first["subgroup-add"] == 27
    assert first["subgroup-add-A"] == 16
    assert first["grs"] == 11
    assert first["grs-doubly-ext"] == 11
    assert first["grs-triply-ext"] == 16
    assert first["default"] == 11
    assert "piggyback" not in first


def test_sweep_empty_range():
    """Test that an empty range yields no rows."""
    assert sweep_rows([], [3], [4]) == []


def test_sweep_family_filter():
    """Test that a family filter restricts the columns."""
    rows = sweep_rows([2], [4], [5], [("subgroup-mult", "B")])
    assert rows == [
        {
            "k": 5,
            "r": 4,
            "lambda": 2,
            "access_bound": 12,
            "default_reads": 10,
            "optimal_reads": 8,
            "subgroup-mult-B": 13,
        }
    ]


def test_sweep_separate_final_parities():
    """Test that separate r_f values open the piggyback column."""
    rows = sweep_rows([2], [2], [8], rfs=[2, 6])
    assert [(row["r_i"], row["r_f"]) for row in rows] == [(2, 2), (2, 6)]
    assert rows[0]["piggyback"] == "n/a"
    assert rows[1] == {
        "k": 8,
        "r_i": 2,
        "r_f": 6,
        "lambda": 2,
        "access_bound": 22,
        "default_reads": 16,
        "optimal_reads": 16,
        "subgroup-mult": "n/a",
        "subgroup-mult-A": "n/a",
        "subgroup-mult-B": "n/a",
        "subgroup-add": "n/a",
        "subgroup-add-A": "n/a",
        "grs": "n/a",
        "grs-doubly-ext": "n/a",
        "grs-triply-ext": "n/a",
        "piggyback": 23,
        "default": 23,
    }
