import random
from fractions import Fraction as F

import pytest

from ogd_forge.rationals import (
    DimensionError,
    SparseVec,
    bit_length,
    format_rat,
    parse_rat,
    rat,
)


def test_dot_single_entry():
    assert SparseVec({0: F(-2)}).dot([F(1), F(5)]) == F(-2)


def test_dot_empty():
    assert SparseVec({}).dot([F(3), F(4)]) == 0


def test_dot_two_terms():
    assert SparseVec({0: F(-2), 1: F(1)}).dot([F(-1), F(0)]) == F(2)


def test_dot_index_out_of_range():
    with pytest.raises(DimensionError):
        SparseVec({3: F(1)}).dot([F(1), F(2)])


def test_zero_entries_dropped():
    v = SparseVec({0: F(0), 1: F(2), 2: F(0)})
    assert v.nnz() == 1
    assert v.get(0) == 0 and v.get(1) == 2


def test_basic_ops_exact():
    assert F(1, 2) + F(1, 2) == 1
    assert F(-13, 4) * F(-1) == F(13, 4)
    assert F(3, 6) == F(1, 2)  # canonical reduction
    assert F(3, 6).numerator == 1 and F(3, 6).denominator == 2


def test_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        F(1, 2) / F(0)


def test_cmp_total_order():
    values = [F(1, 2), F(-13, 4), F(0), F(9, 4), F(1, 3)]
    assert sorted(values) == [F(-13, 4), F(0), F(1, 3), F(1, 2), F(9, 4)]


def test_roundtrip_properties_random():
    rng = random.Random(20240809)
    for _ in range(500):
        a = F(rng.randint(-10**6, 10**6), rng.randint(1, 10**6))
        b = F(rng.randint(-10**6, 10**6), rng.randint(1, 10**6))
        assert (a + b) - b == a
        if b != 0:
            assert (a * b) / b == a


def test_canonical_idempotent():
    rng = random.Random(1)
    for _ in range(100):
        a = F(rng.randint(-999, 999), rng.randint(1, 999))
        again = F(a.numerator, a.denominator)
        assert again == a
        assert again.denominator > 0


def test_parse_format():
    assert parse_rat("-13/4") == F(-13, 4)
    assert parse_rat("3") == F(3)
    assert format_rat(F(-13, 4)) == "-13/4"
    assert format_rat(F(3)) == "3"
    assert format_rat(F(6, 2)) == "3"
    assert parse_rat(format_rat(F(22, 7))) == F(22, 7)


def test_rat_builder():
    assert rat(1, 2) == F(1, 2)
    assert rat("3/4") == F(3, 4)
    assert rat(F(5)) == F(5)


def test_sparse_json_roundtrip():
    v = SparseVec({0: F(-2), 7: F(9, 4)})
    assert SparseVec.from_json(v.to_json()) == v


def test_bit_length():
    assert bit_length(F(3)) == 3  # 2 bits numerator + 1 bit denominator
    assert bit_length(F(-13, 4)) == 7
