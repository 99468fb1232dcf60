"""Exact arithmetic on eventually periodic binary sequences."""
from __future__ import annotations

import pytest
from hypothesis import given, strategies as st

from ifs_shadow import BinarySeq, sequence_distance

bits = st.integers(min_value=0, max_value=1)
prefixes = st.lists(bits, min_size=0, max_size=6).map(tuple)
cycles = st.lists(bits, min_size=1, max_size=5).map(tuple)
seqs = st.builds(BinarySeq, prefixes, cycles)


def test_canonical_form_absorbs_redundant_prefix():
    # 0(1) and 01(1) and (01 rotated) all describe the same symbol stream
    assert BinarySeq((0, 1), (1,)) == BinarySeq((0,), (1,))
    assert BinarySeq((), (0, 1, 0, 1)) == BinarySeq((), (0, 1))
    assert BinarySeq((0, 1), (0, 1)) == BinarySeq((), (0, 1))


def test_item_and_take():
    s = BinarySeq((1, 0), (1, 1, 0))
    assert s.take(8) == (1, 0, 1, 1, 0, 1, 1, 0)
    assert s.item(0) == 1
    assert s.item(7) == 0
    with pytest.raises(IndexError):
        s.item(-1)


def test_cycle_must_be_nonempty_and_binary():
    with pytest.raises(ValueError):
        BinarySeq((), ())
    with pytest.raises(ValueError):
        BinarySeq((2,), (0,))


def test_distance_worked_example():
    """001000... and 000000... first disagree at the third symbol."""
    s = BinarySeq((0, 0, 1), (0,))
    t = BinarySeq((), (0,))
    assert sequence_distance(s, t) == 0.25
    assert s.first_difference(t) == 2


def test_distance_extremes():
    zeros = BinarySeq((), (0,))
    ones = BinarySeq((), (1,))
    assert sequence_distance(zeros, ones) == 1.0
    assert sequence_distance(zeros, zeros) == 0.0
    assert zeros.first_difference(zeros) is None


def test_prepend_then_shift_is_identity():
    s = BinarySeq((1, 0, 0), (0, 1))
    for bit in (0, 1):
        assert s.prepend(bit).shift() == s
        assert s.prepend(bit).item(0) == bit


def test_shift_rotates_pure_cycle():
    s = BinarySeq((), (0, 1))
    assert s.shift() == BinarySeq((), (1, 0))
    assert s.shift().shift() == s


@given(seqs, seqs, bits)
def test_prepend_shared_bit_halves_distance(s: BinarySeq, t: BinarySeq, b: int):
    d = sequence_distance(s, t)
    assert sequence_distance(s.prepend(b), t.prepend(b)) == d / 2.0


@given(seqs, seqs)
def test_differing_heads_are_at_distance_one(s: BinarySeq, t: BinarySeq):
    assert sequence_distance(s.prepend(0), t.prepend(1)) == 1.0


@given(seqs, seqs)
def test_distance_symmetry_and_identity(s: BinarySeq, t: BinarySeq):
    assert sequence_distance(s, t) == sequence_distance(t, s)
    assert (sequence_distance(s, t) == 0.0) == (s == t)


@given(seqs, seqs, seqs)
def test_distance_is_ultrametric(s: BinarySeq, t: BinarySeq, u: BinarySeq):
    d_su = sequence_distance(s, u)
    assert d_su <= max(sequence_distance(s, t), sequence_distance(t, u))


@given(seqs, st.integers(min_value=0, max_value=12))
def test_flip_moves_by_exactly_its_scale(s: BinarySeq, i: int):
    flipped = s.with_flipped(i)
    assert flipped.item(i) == 1 - s.item(i)
    assert sequence_distance(s, flipped) == 2.0 ** (-i)
    assert flipped.with_flipped(i) == s


def test_with_head_overwrites_leading_symbols():
    s = BinarySeq((), (0,))
    out = s.with_head((1, 1, 0, 1))
    assert out.take(6) == (1, 1, 0, 1, 0, 0)
    # the far tail is untouched
    assert out.item(50) == 0


@given(seqs)
def test_string_round_trip(s: BinarySeq):
    assert BinarySeq.from_string(str(s)) == s


def test_from_string_rejects_malformed_text():
    with pytest.raises(ValueError):
        BinarySeq.from_string("0101")
    with pytest.raises(ValueError):
        BinarySeq.from_string("01|")
