import io

import pytest

from emvt.digitset import (
    DeltaFitReport,
    delta_fit,
    digit_source,
    make_digit_set,
    make_source,
    profile_oracle,
    read_profile_csv,
    representation_counts,
    squares_digit_set,
    squares_source,
    write_profile_csv,
)
from emvt.errors import EmptyProfile, InadmissibleDigits, NonPrimeBase


def test_make_digit_set_basic():
    ds = make_digit_set(3, [0, 1])
    assert (ds.p, ds.digits) == (3, (0, 1))
    ds = make_digit_set(11, [0, 1, 4, 9])
    assert ds.digits == (0, 1, 4, 9)
    assert ds.r == 4


def test_make_digit_set_normalizes():
    ds = make_digit_set(5, [4, 1, 1, 0, 7, -2])  # out-of-range digits dropped
    assert ds.digits == (0, 1, 4)


def test_make_digit_set_errors():
    with pytest.raises(NonPrimeBase):
        make_digit_set(4, [0, 1])
    with pytest.raises(NonPrimeBase):
        make_digit_set(2, [0, 1])
    with pytest.raises(InadmissibleDigits):
        make_digit_set(3, [0, 1, 2])  # r = p
    with pytest.raises(InadmissibleDigits):
        make_digit_set(3, [1])


def test_squares_digit_set():
    assert squares_digit_set(5).digits == (0, 1, 4)
    assert squares_digit_set(11).digits == (0, 1, 4, 9)
    assert squares_digit_set(3).digits == (0, 1)


def test_source_normalization():
    src = make_source([9, 1, 4, 4, 0])
    assert src.elements == (0, 1, 4, 9)
    with pytest.raises(ValueError):
        make_source([-1, 2])
    assert squares_source(25).elements == (0, 1, 4, 9, 16, 25)
    ds = make_digit_set(7, [0, 1, 4])
    assert digit_source(ds).elements == (0, 1, 4)


def test_representation_counts_examples():
    src = squares_source(25)
    prof = representation_counts(src, 2, 25)
    # Brute force over all 36 ordered pairs.
    oracle = profile_oracle(src.elements, 2, 25)
    assert list(prof.counts) == oracle
    assert prof.counts[25] == 4  # 0+25, 25+0, 9+16, 16+9
    assert prof.counts[0] == 1

    small = make_source([0, 1])
    prof2 = representation_counts(small, 2, 2)
    assert prof2.counts[1] == 2 and prof2.counts[2] == 1


def test_mass_conservation():
    for elements, t in [((0, 1, 4, 9), 2), ((1, 2, 5), 3), ((0, 3), 4)]:
        src = make_source(elements)
        prof = representation_counts(src, t, t * src.max_element)
        assert prof.total() == src.size**t


def test_shift_symmetry():
    base = make_source([0, 2, 3, 7])
    shifted = make_source([e + 5 for e in base.elements])
    t = 3
    p1 = representation_counts(base, t, t * base.max_element)
    p2 = representation_counts(shifted, t, t * shifted.max_element)
    for n, c in enumerate(p1.counts):
        assert p2.counts[n + t * 5] == c


def test_convolution_associativity():
    src = make_source([0, 1, 4, 9])
    max_n = 5 * src.max_element
    p2 = representation_counts(src, 2, max_n)
    p3 = representation_counts(src, 3, max_n)
    p5 = representation_counts(src, 5, max_n)
    conv = [0] * (max_n + 1)
    for i, a in enumerate(p2.counts):
        if a:
            for j, b in enumerate(p3.counts):
                if b and i + j <= max_n:
                    conv[i + j] += a * b
    assert conv == list(p5.counts)


def test_delta_fit_examples():
    src = squares_source(25)
    prof = representation_counts(src, 2, 25)
    rep = delta_fit(prof, 0.0)
    assert rep.max_ratio == 4.0 and rep.argmax_n == 25

    small = make_source([0, 1])
    prof2 = representation_counts(small, 2, 2)
    rep2 = delta_fit(prof2, 0.0)
    assert rep2.max_ratio == 2.0 and rep2.argmax_n == 1
    rep3 = delta_fit(prof2, 100.0)
    assert rep3.max_ratio == 2.0 and rep3.argmax_n == 1


def test_delta_fit_monotone_in_delta():
    src = squares_source(400)
    prof = representation_counts(src, 2, 400)
    ratios = [delta_fit(prof, d).max_ratio for d in (0.0, 0.1, 0.2, 0.5, 1.0)]
    assert all(a >= b for a, b in zip(ratios, ratios[1:]))


def test_delta_fit_errors():
    src = make_source([0, 1])
    prof = representation_counts(src, 2, 0)
    with pytest.raises(EmptyProfile):
        delta_fit(prof, 0.0)
    good = representation_counts(src, 2, 2)
    with pytest.raises(ValueError):
        delta_fit(good, -1.0)


def test_profile_csv_roundtrip():
    prof = representation_counts(squares_source(30), 2, 30)
    buf = io.StringIO()
    write_profile_csv(prof, buf)
    buf.seek(0)
    back = read_profile_csv(buf, t=2)
    assert back.counts == prof.counts and back.maxN == prof.maxN


def test_delta_report_json_keys():
    rep = DeltaFitReport(delta=0.5, max_ratio=2.0, argmax_n=3)
    import json

    data = json.loads(rep.to_json())
    assert set(data) == {"delta", "max_ratio", "argmax_n"}
