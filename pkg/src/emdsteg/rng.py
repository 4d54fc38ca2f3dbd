"""Deterministic message-bit generator.

SplitMix64 is fully specified by a dozen integer operations, so the same
seed yields the same bit stream on any platform or implementation; that is
what makes benchmark output reproducible byte for byte.
"""

from __future__ import annotations

from typing import Iterator

_MASK = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB


def splitmix64(seed: int) -> Iterator[int]:
    """Yield the 64-bit output words of SplitMix64 for a given seed."""
    state = seed & _MASK
    while True:
        state = (state + _GAMMA) & _MASK
        x = state
        x ^= x >> 30
        x = (x * _MIX1) & _MASK
        x ^= x >> 27
        x = (x * _MIX2) & _MASK
        x ^= x >> 31
        yield x


def seeded_bytes(seed: int, count: int) -> bytes:
    """First count bytes of the stream, words serialized big-endian."""
    if count < 0:
        raise ValueError("count must be >= 0")
    words = splitmix64(seed)
    out = bytearray()
    while len(out) < count:
        out += next(words).to_bytes(8, "big")
    return bytes(out[:count])


def seeded_bits(seed: int, count: int) -> list[int]:
    """First count bits of the stream, MSB-first within each byte."""
    if count < 0:
        raise ValueError("count must be >= 0")
    data = seeded_bytes(seed, -(-count // 8))
    bits = [(byte >> shift) & 1 for byte in data for shift in range(7, -1, -1)]
    return bits[:count]
