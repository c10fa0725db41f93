from fractions import Fraction
from math import comb

from orbigw.stirling import (
    StirlingTable,
    falling_factorial_coefficients,
    stirling_first,
    stirling_second,
    stirling_second_euler,
)


def test_first_kind_values():
    assert stirling_first(0, 0) == 1
    assert stirling_first(4, 3) == -comb(4, 2) == -6
    # oracle: expand x(x-1)(x-2) = x^3 - 3x^2 + 2x
    assert falling_factorial_coefficients(3) == [0, 2, -3, 1]
    assert stirling_first(3, 1) == 2
    assert stirling_first(5, 0) == 0


def test_second_kind_values():
    for m in range(8):
        assert stirling_second(m, 0) == (1 if m == 0 else 0)
        assert stirling_second(m, m) == 1
    assert stirling_second(3, 2) == 3
    assert stirling_second(3, 2) == stirling_second_euler(3, 2)
    assert stirling_second(5, 5) == 1


def test_table_validation_runs():
    table = StirlingTable.build(9)
    assert table.s(4, 3) == -6
    assert table.S(3, 2) == 3
    # inversion identity, spot checked beyond validate()
    for m in range(10):
        for k in range(10):
            tot = sum(table.s(m, j) * table.S(j, k) for j in range(10))
            assert tot == (1 if m == k else 0)


def test_closed_forms_through_m9():
    for m in range(1, 10):
        assert stirling_first(m, m - 1) == -comb(m, 2)
        if m >= 2:
            assert stirling_first(m, m - 2) == Fraction(3 * m - 1, 4) * comb(m, 3)
        if m >= 3:
            assert stirling_first(m, m - 3) == -comb(m, 2) * comb(m, 4)
