"""Tests for validators module."""

import math

import pytest
from hardybench.utils.validators import (
    validate_choice,
    validate_exponent_range,
    validate_finite,
    validate_integer,
    validate_positive_number,
)
from hardybench.utils.exceptions import ValidationError


def test_validate_finite():
    """Test finite number validation."""
    assert validate_finite("2.5", "x") == 2.5

    with pytest.raises(ValidationError, match="x must be finite"):
        validate_finite(math.inf, "x")

    with pytest.raises(ValidationError, match="x must be a real number"):
        validate_finite("abc", "x")


def test_validate_positive_number():
    """Test positive number validation."""
    assert validate_positive_number(3, "R") == 3.0
    assert validate_positive_number(0, "eps", allow_zero=True) == 0.0

    with pytest.raises(ValidationError, match="R must be > 0"):
        validate_positive_number(0, "R")

    with pytest.raises(ValidationError, match=">= 0"):
        validate_positive_number(-1, "eps", allow_zero=True)


def test_validate_integer():
    """Test integer validation."""
    assert validate_integer(4.0, "n") == 4
    assert validate_integer("3", "n") == 3

    with pytest.raises(ValidationError, match="must be an integer"):
        validate_integer(2.5, "n")

    with pytest.raises(ValidationError, match="must be an integer"):
        validate_integer(True, "n")

    with pytest.raises(ValidationError, match="n must be >= 1"):
        validate_integer(0, "n", minimum=1)


def test_validate_exponent_range():
    """Test half-open exponent intervals."""
    assert validate_exponent_range(2, "p", lower=2, upper=4) == 2.0

    with pytest.raises(ValidationError, match="p must be < 4"):
        validate_exponent_range(4, "p", lower=2, upper=4)

    with pytest.raises(ValidationError, match="p must be > 1"):
        validate_exponent_range(1, "p", lower=1, lower_inclusive=False)

    assert validate_exponent_range(4, "p", upper=4, upper_inclusive=True) == 4.0


def test_validate_choice():
    """Test choice validation."""
    assert validate_choice(" JSON ", ["json", "csv"], "format") == "json"

    with pytest.raises(ValidationError, match="Invalid format"):
        validate_choice("xml", ["json", "csv"], "format")
