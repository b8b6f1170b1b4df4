from fractions import Fraction

from hypothesis import given, strategies as st

from sharpdomains import _enum


@given(st.integers(0, 10**6))
def test_pairing_roundtrip(n):
    assert _enum.pair(*_enum.unpair(n)) == n


def test_diagonal_order():
    got = list(_enum.diagonal(2))
    assert got[:6] == [(0, 0), (0, 1), (1, 0), (0, 2), (1, 1), (2, 0)]
    assert len(got) == 9 and len(set(got)) == 9


def test_nat_sequence_is_injective_and_covers_short_sequences():
    seen = {_enum.nat_sequence(n) for n in range(1 << 12)}
    assert len(seen) == 1 << 12
    for s in [(), (0,), (3, 1, 4), (0, 0, 0), (2, 5)]:
        assert s in seen
    assert [_enum.nat_sequence(n) for n in range(5)] == [(), (0,), (1,), (0, 0), (2,)]


def test_word_is_length_then_lex():
    ws = [_enum.word(n, 2) for n in range(7)]
    assert ws == [(), (0,), (1,), (0, 0), (0, 1), (1, 0), (1, 1)]
    assert len({_enum.word(n, 3) for n in range(500)}) == 500


def test_rational_enumeration():
    first = [_enum.rational(n) for n in range(8)]
    assert first == [0, 1, -1, Fraction(1, 2), Fraction(-1, 2), 2, -2, Fraction(1, 3)]
    qs = {_enum.rational(n) for n in range(4000)}
    assert len(qs) == 4000
    for q in [Fraction(3, 2), Fraction(-7, 3), Fraction(5, 4)]:
        assert q in qs
