import pytest

from emdsteg.rng import seeded_bits, seeded_bytes, splitmix64


def test_known_first_word():
    assert next(splitmix64(0)) == 0xE220A8397B1DCDAF


def test_known_stream_continuation():
    gen = splitmix64(0)
    words = [next(gen) for _ in range(3)]
    assert words[0] == 0xE220A8397B1DCDAF
    assert all(0 <= w < 2**64 for w in words)
    assert len(set(words)) == 3


def test_bits_match_big_endian_bytes():
    bits = seeded_bits(0, 64)
    value = 0
    for b in bits:
        value = (value << 1) | b
    assert value == 0xE220A8397B1DCDAF


def test_zero_count():
    assert seeded_bits(1, 0) == []
    assert seeded_bytes(1, 0) == b""


def test_repeatable():
    assert seeded_bits(123, 1000) == seeded_bits(123, 1000)
    assert seeded_bits(123, 1000)[:500] == seeded_bits(123, 500)


def test_negative_count_rejected():
    with pytest.raises(ValueError):
        seeded_bits(0, -1)
