import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from emdsteg.image import (
    GrayImage,
    LengthOverrun,
    MalformedHeader,
    TruncatedPayload,
    UnsupportedMaxval,
    bits_to_symbols,
    clamp_for_scheme,
    load_pgm,
    partition_groups,
    save_pgm,
    symbols_to_bits,
)


class TestPgm:
    def test_minimal_file_decodes(self):
        img = load_pgm(b"P5\n2 2\n255\n" + bytes([0, 1, 2, 3]))
        assert (img.width, img.height) == (2, 2)
        assert list(img.pixels) == [0, 1, 2, 3]

    def test_wrong_maxval_rejected(self):
        with pytest.raises(UnsupportedMaxval):
            load_pgm(b"P5\n1 1\n65535\n\x00\x00")

    def test_short_raster_rejected(self):
        with pytest.raises(TruncatedPayload):
            load_pgm(b"P5\n3 2\n255\n" + bytes(5))

    def test_bad_magic_rejected(self):
        with pytest.raises(MalformedHeader):
            load_pgm(b"P6\n1 1\n255\n\x00")

    def test_missing_dimensions_rejected(self):
        with pytest.raises(MalformedHeader):
            load_pgm(b"P5\n255\n")

    def test_header_is_canonical(self):
        data = save_pgm(GrayImage(1, 1, [128]))
        assert data == b"P5\n1 1\n255\n" + bytes([128])
        assert save_pgm(GrayImage(2, 1, [0, 255])) == b"P5\n2 1\n255\n" + bytes(
            [0, 255]
        )

    def test_multiline_whitespace_header(self):
        img = load_pgm(b"P5\n2\t2\r\n255 " + bytes([9, 8, 7, 6]))
        assert list(img.pixels) == [9, 8, 7, 6]

    @given(
        st.integers(1, 24),
        st.integers(1, 24),
        st.integers(0, 2**32 - 1),
    )
    @settings(max_examples=50)
    def test_round_trip_identity(self, width, height, seed):
        rng = np.random.default_rng(seed)
        img = GrayImage(width, height, rng.integers(0, 256, width * height))
        assert load_pgm(save_pgm(img)) == img


class TestGrayImage:
    def test_rejects_out_of_range_pixels(self):
        with pytest.raises(ValueError):
            GrayImage(1, 1, [256])

    def test_rejects_wrong_pixel_count(self):
        with pytest.raises(ValueError):
            GrayImage(2, 2, [1, 2, 3])

    def test_pixels_are_read_only(self):
        img = GrayImage.flat(2, 2, 10)
        with pytest.raises(ValueError):
            img.pixels[0] = 5


class TestPartition:
    def test_exact_split(self):
        groups, tail = partition_groups(GrayImage(2, 2, [1, 2, 3, 4]), 2)
        assert groups == [(1, 2), (3, 4)]
        assert tail == ()

    def test_tail_keeps_leftover(self):
        groups, tail = partition_groups(GrayImage(5, 1, [1, 2, 3, 4, 5]), 2)
        assert groups == [(1, 2), (3, 4)]
        assert tail == (5,)

    def test_unit_groups(self):
        groups, tail = partition_groups(GrayImage(3, 1, [7, 8, 9]), 1)
        assert groups == [(7,), (8,), (9,)]
        assert tail == ()

    @given(st.lists(st.integers(0, 255), min_size=1, max_size=60), st.integers(1, 9))
    @settings(max_examples=50)
    def test_concatenation_identity(self, pixels, n):
        img = GrayImage(len(pixels), 1, pixels)
        groups, tail = partition_groups(img, n)
        rebuilt = [v for g in groups for v in g] + list(tail)
        assert rebuilt == pixels


class TestClamp:
    @pytest.mark.parametrize(
        "pixel,z,expected", [(0, 1, 1), (255, 2, 253), (128, 127, 128)]
    )
    def test_boundary_values(self, pixel, z, expected):
        out = clamp_for_scheme(GrayImage(1, 1, [pixel]), z)
        assert int(out.pixels[0]) == expected

    def test_rejects_oversized_bound(self):
        with pytest.raises(ValueError):
            clamp_for_scheme(GrayImage.flat(1, 1, 0), 128)

    @given(
        st.lists(st.integers(0, 255), min_size=1, max_size=40),
        st.integers(0, 127),
    )
    @settings(max_examples=60)
    def test_idempotent_and_in_range(self, pixels, z):
        img = GrayImage(len(pixels), 1, pixels)
        once = clamp_for_scheme(img, z)
        assert clamp_for_scheme(once, z) == once
        assert int(once.pixels.min()) >= z
        assert int(once.pixels.max()) <= 255 - z


class TestSymbolCodec:
    def test_chunking_msb_first(self):
        assert bits_to_symbols([1, 1, 0, 1], 5) == [3, 1]

    def test_single_full_chunk(self):
        assert bits_to_symbols([1, 0, 1], 8) == [5]

    def test_empty_stream(self):
        assert bits_to_symbols([], 5) == []

    def test_inverse_of_chunking(self):
        assert symbols_to_bits([3, 1], 5, 4) == [1, 1, 0, 1]

    def test_zero_length(self):
        assert symbols_to_bits([], 5, 0) == []

    def test_overrun_rejected(self):
        with pytest.raises(LengthOverrun):
            symbols_to_bits([3], 5, 9)

    def test_oversized_symbol_rejected(self):
        with pytest.raises(ValueError):
            symbols_to_bits([4], 5, 2)

    @given(
        st.lists(st.integers(0, 1), max_size=200),
        st.integers(2, 4096),
    )
    @settings(max_examples=120)
    def test_round_trip(self, bits, modulus):
        symbols = bits_to_symbols(bits, modulus)
        assert all(0 <= s < modulus for s in symbols)
        assert symbols_to_bits(symbols, modulus, len(bits)) == bits
