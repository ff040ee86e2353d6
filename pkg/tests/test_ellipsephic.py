import pytest

from emvt.ellipsephic import (
    EllipsephicSet,
    class_members,
    contains,
    count_up_to,
    enumerate_up_to,
    expansion,
)


def digit_test(n: int, p: int, digits) -> bool:
    """Independent membership oracle by repeated division."""
    if n < 1:
        return False
    allowed = set(digits)
    while n:
        n, d = divmod(n, p)
        if d not in allowed:
            return False
    return True


ES3 = EllipsephicSet.from_digits(3, [0, 1])
ES5 = EllipsephicSet.from_digits(5, [0, 1, 4])
ES11 = EllipsephicSet.squares(11)


def test_contains_examples():
    assert contains(ES3, 4)  # 11 base 3
    assert not contains(ES3, 2)
    assert not contains(ES3, 0)


def test_contains_matches_oracle():
    for es in (ES3, ES5, ES11):
        for n in range(0, 500):
            assert contains(es, n) == digit_test(n, es.p, es.digits)


def test_enumerate_examples():
    assert enumerate_up_to(ES3, 13) == [1, 3, 4, 9, 10, 12, 13]
    assert enumerate_up_to(ES5, 25) == [1, 4, 5, 6, 9, 20, 21, 24, 25]
    assert enumerate_up_to(ES3, 1) == [1]
    with pytest.raises(ValueError):
        enumerate_up_to(ES3, 0)


def test_enumerate_matches_oracle():
    for es in (ES3, ES5, ES11):
        for x in (1, 2, 7, 30, 121, 300):
            expected = [n for n in range(1, x + 1) if digit_test(n, es.p, es.digits)]
            assert enumerate_up_to(es, x) == expected


def test_count_examples():
    assert count_up_to(ES3, 13) == 7
    assert count_up_to(ES3, 9) == 4
    assert count_up_to(ES5, 3) == 1  # only the member 1 is below 3


def test_count_matches_enumeration():
    for es in (ES3, ES5, ES11):
        for x in range(1, 400, 7):
            assert count_up_to(es, x) == len(enumerate_up_to(es, x))


def test_density_bound():
    # Members up to p^B have at most B+1 digit positions.
    for es in (ES3, ES5, ES11):
        for b in range(1, 7):
            assert count_up_to(es, es.p**b) <= es.r ** (b + 1)


def test_class_members_examples():
    assert class_members(ES3, 1, 1, 13) == [1, 4, 10, 13]
    assert class_members(ES3, 0, 1, 13) == [3, 9, 12]
    assert class_members(ES3, 2, 1, 13) == []


def test_class_partition():
    for es, x in ((ES3, 100), (ES5, 200)):
        for a in (1, 2):
            merged = []
            for xi in range(es.p**a):
                merged.extend(class_members(es, xi, a, x))
            assert sorted(merged) == enumerate_up_to(es, x)


def test_self_similarity():
    # n is a member iff its last digit is permitted and the quotient is
    # zero or a member itself.
    for es in (ES3, ES5):
        for n in range(1, 300):
            head, tail = divmod(n, es.p)
            recursive = tail in es.digits and (head == 0 or contains(es, head))
            assert contains(es, n) == recursive


def test_expansion_format():
    assert str(expansion(4, 3)) == "11_3"
    assert str(expansion(0, 3)) == "0_3"
    assert expansion(4, 3).value == 4
    e = expansion(21, 11)  # digits 10, 1 -> dotted form for wide digits
    assert str(e) == "1.10_11"
    with pytest.raises(ValueError):
        expansion(-1, 3)


def test_class_members_validation():
    with pytest.raises(ValueError):
        class_members(ES3, 0, 0, 10)
    with pytest.raises(ValueError):
        class_members(ES3, 9, 2, 10)
