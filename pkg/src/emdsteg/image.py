"""8-bit grayscale images plus the bit-level plumbing shared by all schemes.

Four small jobs live here: binary PGM (P5) decode/encode, row-major pixel
grouping, range clamping so a bounded embedding change can never leave
[0, 255], and the codec between raw bits and M-ary message symbols.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np

_WHITESPACE = b" \t\n\r\v\f"


class PgmError(ValueError):
    """A PGM byte stream that cannot be decoded."""


class MalformedHeader(PgmError):
    """Missing P5 magic, or unreadable width/height/maxval fields."""


class UnsupportedMaxval(PgmError):
    """Only maxval 255 (one byte per pixel) is supported."""


class TruncatedPayload(PgmError):
    """Raster holds fewer bytes than width * height."""


class LengthOverrun(ValueError):
    """Requested more bits than the symbol stream encodes."""


class GrayImage:
    """Immutable 8-bit grayscale raster, pixels stored row-major.

    The pixel buffer is a read-only numpy array; instances are safe to
    share between threads.
    """

    __slots__ = ("width", "height", "_pixels")

    def __init__(self, width: int, height: int, pixels) -> None:
        if width <= 0 or height <= 0:
            raise ValueError(f"bad dimensions {width}x{height}")
        arr = np.asarray(pixels, dtype=np.int64).ravel()
        if arr.size != width * height:
            raise ValueError(f"expected {width * height} pixels, got {arr.size}")
        if arr.size and (int(arr.min()) < 0 or int(arr.max()) > 255):
            raise ValueError("pixel values outside [0, 255]")
        store = arr.astype(np.uint8)
        store.flags.writeable = False
        self.width = width
        self.height = height
        self._pixels = store

    @property
    def pixels(self) -> np.ndarray:
        """Read-only row-major pixel array of length width * height."""
        return self._pixels

    @property
    def size(self) -> int:
        return self.width * self.height

    @classmethod
    def flat(cls, width: int, height: int, value: int) -> "GrayImage":
        """Synthetic cover of a single gray value."""
        return cls(width, height, np.full(width * height, value, dtype=np.uint8))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GrayImage):
            return NotImplemented
        return (
            self.width == other.width
            and self.height == other.height
            and bool(np.array_equal(self._pixels, other._pixels))
        )

    def __hash__(self) -> int:
        return hash((self.width, self.height, self._pixels.tobytes()))

    def __repr__(self) -> str:
        return f"GrayImage({self.width}x{self.height})"


def _token(data: bytes, pos: int) -> tuple[bytes, int]:
    n = len(data)
    while pos < n and data[pos] in _WHITESPACE:
        pos += 1
    start = pos
    while pos < n and data[pos] not in _WHITESPACE:
        pos += 1
    return data[start:pos], pos


def load_pgm(data: bytes) -> GrayImage:
    """Decode a binary PGM ("P5") byte stream with maxval 255.

    Header tokens may be separated by any run of whitespace; exactly one
    whitespace byte separates the maxval from the raster.
    """
    magic, pos = _token(data, 0)
    if magic != b"P5":
        raise MalformedHeader(f"not a binary PGM (magic {magic!r})")
    fields = []
    for name in ("width", "height", "maxval"):
        tok, pos = _token(data, pos)
        if not tok or not tok.isdigit():
            raise MalformedHeader(f"missing or non-numeric {name}")
        fields.append(int(tok))
    width, height, maxval = fields
    if width == 0 or height == 0:
        raise MalformedHeader("zero image dimension")
    if maxval != 255:
        raise UnsupportedMaxval(f"maxval {maxval} not supported, expected 255")
    if pos < len(data):
        if data[pos] not in _WHITESPACE:
            raise MalformedHeader("missing separator before raster")
        pos += 1
    raster = data[pos : pos + width * height]
    if len(raster) < width * height:
        raise TruncatedPayload(
            f"raster has {len(raster)} bytes, needs {width * height}"
        )
    return GrayImage(width, height, np.frombuffer(raster, dtype=np.uint8))


def save_pgm(img: GrayImage) -> bytes:
    """Encode as binary PGM with the canonical single-space header."""
    header = f"P5\n{img.width} {img.height}\n255\n".encode("ascii")
    return header + img.pixels.tobytes()


def partition_groups(
    img: GrayImage, n: int
) -> tuple[list[tuple[int, ...]], tuple[int, ...]]:
    """Split the row-major pixel sequence into runs of n, plus the leftover tail.

    The tail (size mod n trailing pixels) is never embedded into.
    """
    if n < 1:
        raise ValueError("group size must be >= 1")
    arr = img.pixels
    count = arr.size // n
    head = arr[: count * n].reshape(count, n)
    groups = [tuple(int(v) for v in row) for row in head]
    tail = tuple(int(v) for v in arr[count * n :])
    return groups, tail


def clamp_for_scheme(img: GrayImage, z: int) -> GrayImage:
    """Clamp every pixel into [z, 255 - z].

    Any later change of at most z per pixel then stays inside [0, 255].
    Idempotent; the clamping distortion is charged to the stego MSE.
    """
    if not 0 <= z <= 127:
        raise ValueError(f"per-pixel change bound {z} outside [0, 127]")
    return GrayImage(img.width, img.height, np.clip(img.pixels, z, 255 - z))


def symbol_bit_width(modulus: int) -> int:
    """Bits carried per symbol when packing chunks of floor(log2 M)."""
    if modulus < 2:
        raise ValueError("modulus must be >= 2")
    return modulus.bit_length() - 1


def bits_to_symbols(bits: Sequence[int], modulus: int) -> list[int]:
    """Pack a bit sequence into symbols of floor(log2 M) bits, MSB first.

    A trailing partial chunk is zero-padded on the right, so every output
    symbol is < 2**width <= M.
    """
    width = symbol_bit_width(modulus)
    out: list[int] = []
    value = 0
    filled = 0
    for bit in bits:
        if bit not in (0, 1):
            raise ValueError(f"bit stream contains {bit!r}")
        value = (value << 1) | bit
        filled += 1
        if filled == width:
            out.append(value)
            value = 0
            filled = 0
    if filled:
        out.append(value << (width - filled))
    return out


def symbols_to_bits(symbols: Sequence[int], modulus: int, bit_length: int) -> list[int]:
    """Inverse of bits_to_symbols: emit width bits per symbol, MSB first.

    The result is truncated to bit_length, which the receiver must know
    out of band. Symbols are required to fit the operational width, i.e.
    to have come out of bits_to_symbols.
    """
    width = symbol_bit_width(modulus)
    if bit_length < 0:
        raise ValueError("bit_length must be >= 0")
    if bit_length > len(symbols) * width:
        raise LengthOverrun(
            f"{bit_length} bits requested, stream encodes {len(symbols) * width}"
        )
    bits: list[int] = []
    for sym in symbols:
        if not 0 <= sym < (1 << width):
            raise ValueError(f"symbol {sym} wider than {width} bits")
        for shift in range(width - 1, -1, -1):
            bits.append((sym >> shift) & 1)
        if len(bits) >= bit_length:
            break
    return bits[:bit_length]
