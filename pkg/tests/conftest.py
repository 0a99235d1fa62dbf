from fractions import Fraction

import pytest

from sumfree.intervals import IntervalUnion


EQ1_PAIRS = [
    (Fraction(8, 177), Fraction(4, 59)),
    (Fraction(28, 177), Fraction(14, 59)),
    (Fraction(2, 3), Fraction(1)),
]


@pytest.fixture
def largest_known_3sumfree() -> IntervalUnion:
    """The record three-interval 3-sum-free configuration."""
    return IntervalUnion.from_pairs(EQ1_PAIRS)
