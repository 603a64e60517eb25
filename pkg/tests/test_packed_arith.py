# Copyright (c) 2026 The Spike Composer Authors
# Licensed under the MIT License

"""This module defines the tests for the packed datapath."""

import itertools

import numpy as np
import pytest

from spike_composer import packed_arith
from spike_composer.errors import \
    InvalidBitsError, LaneOverflowError, LengthMismatchError, \
    MaskLengthMismatchError, ModeMismatchError, ShiftOutOfRangeError, \
    VectorParseError
from spike_composer.packed_arith import \
    get_int2_mode, get_int4_mode, get_int8_mode, get_precision_modes


SAMPLES = 100000

MODES = get_precision_modes()


def _lanes(words, mode):
    """Decodes the lanes of raw words one field at a time."""
    words = np.asarray(words, dtype=np.uint64).astype(np.int64)
    width = mode.lane_width
    lanes = []
    for lane in range(mode.lane_count):
        field = (words >> (lane * width)) & ((1 << width) - 1)
        lanes.append(np.where(field >= 1 << (width - 1), field - (1 << width),
                              field))
    return np.stack(lanes, axis=-1)


def _wrap(values, mode):
    half = 1 << (mode.lane_width - 1)
    return (values + half) % (1 << mode.lane_width) - half


def _random_words(rng, n=SAMPLES):
    return rng.integers(0, 1 << 32, size=n, dtype=np.uint64)


def _random_masks(rng, mode, n=SAMPLES):
    return rng.integers(0, 1 << mode.lane_count, size=n, dtype=np.uint64)


def _mask_lanes(masks, mode):
    masks = np.asarray(masks, dtype=np.int64)
    return np.stack(
        [(masks >> lane) & 1 for lane in range(mode.lane_count)],
        axis=-1
    )


def test_lanes_of():
    assert packed_arith.lanes_of(get_int2_mode()) == (16, 2, 2)
    assert packed_arith.lanes_of(get_int4_mode()) == (4, 8, 4)
    assert packed_arith.lanes_of(get_int8_mode()) == (1, 32, 8)


def test_modes_fill_the_word():
    for mode in MODES:
        assert mode.lane_count * mode.lane_width == 32
        assert mode.value_width <= mode.lane_width


def test_fold_interval():
    assert packed_arith.get_fold_interval(get_int2_mode()) == 1
    assert packed_arith.get_fold_interval(get_int4_mode()) == 16
    assert packed_arith.get_fold_interval(get_int8_mode()) == 1 << 24


def test_get_mode_for_bits():
    assert packed_arith.get_mode_for_bits(4) == get_int4_mode()
    with pytest.raises(InvalidBitsError):
        packed_arith.get_mode_for_bits(3)


def test_lane_parallelism():
    for fan_in in (16, 64, 256):
        int2 = packed_arith.get_chunk_count(fan_in, get_int2_mode())
        int8 = packed_arith.get_chunk_count(fan_in, get_int8_mode())
        assert int2 * 16 == int8


class TestPack:
    def test_pack_zero(self):
        word = packed_arith.pack([0] * 16, get_int2_mode())
        assert word.raw == 0x00000000

    def test_pack_minus_one(self):
        word = packed_arith.pack([-1], get_int8_mode())
        assert word.raw == 0xFFFFFFFF

    def test_pack_lane_layout(self):
        word = packed_arith.pack([1, -2] + [0] * 14, get_int2_mode())
        assert word.raw == 0x00000009

    def test_pack_int4_lanes(self):
        word = packed_arith.pack([1, -1, 127, -128], get_int4_mode())
        assert word.raw == 0x807FFF01

    def test_unpack_inverts_pack(self):
        values = (5, -3, 0, -128)
        word = packed_arith.pack(values, get_int4_mode())
        assert packed_arith.unpack(word).values == values

    def test_unpack_inverts_pack_on_random_lanes(self):
        rng = np.random.default_rng(13)
        for mode in MODES:
            low, high = packed_arith.get_value_range(mode)
            values = rng.integers(low, high + 1,
                                  size=(SAMPLES, mode.lane_count))
            words = packed_arith.pack_lanes(values, mode)
            assert np.array_equal(packed_arith.unpack_words(words, mode),
                                  values)
            for row in values[:500]:
                word = packed_arith.pack(row.tolist(), mode)
                assert packed_arith.unpack(word).values == tuple(row.tolist())

    def test_pack_lane_vector(self):
        vector = packed_arith.LaneVector(values=(7,), mode=get_int8_mode())
        assert packed_arith.pack(vector).raw == 7

    def test_lane_overflow(self):
        with pytest.raises(LaneOverflowError):
            packed_arith.pack([2] + [0] * 15, get_int2_mode())
        with pytest.raises(LaneOverflowError):
            packed_arith.pack([0, 0, 128, 0], get_int4_mode())

    def test_length_mismatch(self):
        with pytest.raises(LengthMismatchError):
            packed_arith.pack([0, 0, 0], get_int4_mode())


class TestAdd:
    def test_add_matches_scalar_lanes(self):
        rng = np.random.default_rng(1)
        for mode in MODES:
            a = _random_words(rng)
            b = _random_words(rng)
            result = packed_arith.add_words(a, b, mode)
            expected = _wrap(_lanes(a, mode) + _lanes(b, mode), mode)
            assert np.array_equal(_lanes(result, mode), expected)

    def test_add_exhaustive_int2(self):
        mode = get_int2_mode()
        pairs = list(itertools.product(range(-2, 2), repeat=2))
        a = packed_arith.pack([p[0] for p in pairs], mode)
        b = packed_arith.pack([p[1] for p in pairs], mode)
        result = packed_arith.unpack(packed_arith.packed_add(a, b))
        expected = [_wrap(np.int64(x + y), mode) for x, y in pairs]
        assert list(result.values) == expected

    def test_carries_stay_in_lane(self):
        mode = get_int4_mode()
        a = packed_arith.pack([127, 0, -128, 0], mode)
        b = packed_arith.pack([1, 0, -1, 0], mode)
        result = packed_arith.unpack(packed_arith.packed_add(a, b))
        assert result.values == (-128, 0, 127, 0)

    def test_add_is_commutative_and_associative(self):
        rng = np.random.default_rng(11)
        add = packed_arith.add_words
        for mode in MODES:
            a = _random_words(rng)
            b = _random_words(rng)
            c = _random_words(rng)
            assert np.array_equal(add(a, b, mode), add(b, a, mode))
            assert np.array_equal(add(add(a, b, mode), c, mode),
                                  add(a, add(b, c, mode), mode))

    def test_flipping_one_lane_leaves_the_others(self):
        rng = np.random.default_rng(12)
        for mode in MODES:
            a = _random_words(rng)
            b = _random_words(rng)
            lane = rng.integers(0, mode.lane_count, size=SAMPLES)
            bits = rng.integers(1, 1 << mode.lane_width, size=SAMPLES,
                                dtype=np.uint64)
            flips = bits << (lane * mode.lane_width).astype(np.uint64)
            before = _lanes(packed_arith.add_words(a, b, mode), mode)
            others = np.arange(mode.lane_count)[np.newaxis, :] \
                != lane[:, np.newaxis]
            for x, y in ((a ^ flips, b), (a, b ^ flips)):
                after = _lanes(packed_arith.add_words(x, y, mode), mode)
                assert np.array_equal(after[others], before[others])

    def test_int2_wrap(self):
        mode = get_int2_mode()
        ones = packed_arith.pack([1] * 16, mode)
        result = packed_arith.unpack(packed_arith.packed_add(ones, ones))
        assert result.values == (-2,) * 16

    def test_mode_mismatch(self):
        with pytest.raises(ModeMismatchError):
            packed_arith.packed_add(
                packed_arith.pack([0] * 4, get_int4_mode()),
                packed_arith.pack([0], get_int8_mode())
            )


class TestSpikeGatedAccumulate:
    def test_gate_matches_scalar_lanes(self):
        rng = np.random.default_rng(2)
        for mode in MODES:
            acc = _random_words(rng)
            weights = _random_words(rng)
            masks = _random_masks(rng, mode)
            result = packed_arith.gate_words(acc, weights, masks, mode)
            expected = _wrap(
                _lanes(acc, mode)
                + _lanes(weights, mode) * _mask_lanes(masks, mode),
                mode
            )
            assert np.array_equal(_lanes(result, mode), expected)

    def test_gate_exhaustive_int2(self):
        mode = get_int2_mode()
        cases = list(itertools.product(range(-2, 2), range(-2, 2), (0, 1)))
        for start in range(0, len(cases), 16):
            chunk = cases[start:start + 16]
            acc = packed_arith.pack([c[0] for c in chunk], mode)
            weights = packed_arith.pack([c[1] for c in chunk], mode)
            result = packed_arith.spike_gated_accumulate(
                acc,
                weights,
                [c[2] for c in chunk]
            )
            expected = [_wrap(np.int64(a + w * s), mode) for a, w, s in chunk]
            assert list(packed_arith.unpack(result).values) == expected

    def test_gate_example(self):
        mode = get_int4_mode()
        result = packed_arith.spike_gated_accumulate(
            packed_arith.pack([1, 2, 3, 4], mode),
            packed_arith.pack([10, -20, 30, -40], mode),
            [1, 0, 0, 1]
        )
        assert packed_arith.unpack(result).values == (11, 2, 3, -36)

    def test_mask_length_mismatch(self):
        mode = get_int4_mode()
        word = packed_arith.pack([0] * 4, mode)
        with pytest.raises(MaskLengthMismatchError):
            packed_arith.spike_gated_accumulate(word, word, [1, 0])


class TestShift:
    def test_shift_matches_scalar_lanes(self):
        rng = np.random.default_rng(3)
        for mode in MODES:
            words = _random_words(rng, SAMPLES // 4)
            for k in range(mode.lane_width):
                result = packed_arith.shift_words(words, k, mode)
                expected = _lanes(words, mode) >> k
                assert np.array_equal(_lanes(result, mode), expected)

    def test_shift_rounds_towards_minus_infinity(self):
        word = packed_arith.pack([-7, 7, -1, 1], get_int4_mode())
        result = packed_arith.packed_shift_right_arith(word, 1)
        assert packed_arith.unpack(result).values == (-4, 3, -1, 0)

    def test_shift_exhaustive_int2(self):
        mode = get_int2_mode()
        values = [v for v in range(-2, 2) for _ in range(4)]
        word = packed_arith.pack(values, mode)
        result = packed_arith.packed_shift_right_arith(word, 1)
        assert list(packed_arith.unpack(result).values) == \
            [v >> 1 for v in values]

    def test_shift_out_of_range(self):
        word = packed_arith.pack([0] * 4, get_int4_mode())
        with pytest.raises(ShiftOutOfRangeError):
            packed_arith.packed_shift_right_arith(word, 8)
        with pytest.raises(ShiftOutOfRangeError):
            packed_arith.packed_shift_right_arith(word, -1)


class TestLeak:
    def test_leak_matches_scalar_lanes(self):
        rng = np.random.default_rng(4)
        for mode in MODES:
            words = _random_words(rng, SAMPLES // 4)
            for k in range(mode.lane_width):
                result = packed_arith.leak_words(words, k, mode)
                lanes = _lanes(words, mode)
                expected = _wrap(lanes - (lanes >> k), mode)
                assert np.array_equal(_lanes(result, mode), expected)

    def test_leak_examples(self):
        word = packed_arith.pack([100, -100, 7, 0], get_int4_mode())
        result = packed_arith.packed_leak(word, 3)
        assert packed_arith.unpack(result).values == (88, -87, 7, 0)

    def test_leak_zero_shift(self):
        word = packed_arith.pack([100], get_int8_mode())
        result = packed_arith.packed_leak(word, 0)
        assert packed_arith.unpack(result).values == (0,)

    def test_iterated_leak_decays_towards_zero(self):
        rng = np.random.default_rng(14)
        for mode in MODES:
            low, high = packed_arith.get_lane_range(mode)
            values = rng.integers(max(low, -128), min(high, 127) + 1,
                                  size=(2000, mode.lane_count))
            for k in range(1, mode.lane_width):
                words = packed_arith.pack_lanes(values, mode)
                lanes = values
                for _ in range(256):
                    words = packed_arith.leak_words(words, k, mode)
                    leaked = packed_arith.unpack_words(words, mode)
                    assert np.all(np.where(
                        lanes >= 0,
                        (leaked <= lanes) & (leaked >= 0),
                        (leaked >= lanes) & (leaked <= 0)
                    ))
                    lanes = leaked
                # Positive lanes below 2^k are fixed points of the floor shift.
                assert np.all(lanes[values < 0] == 0)
                assert np.all((lanes >= 0) & (lanes < 1 << k))
                assert np.array_equal(
                    packed_arith.unpack_words(
                        packed_arith.leak_words(words, k, mode),
                        mode
                    ),
                    lanes
                )

    def test_leak_exhaustive_int2(self):
        mode = get_int2_mode()
        values = [v for v in range(-2, 2) for _ in range(4)]
        result = packed_arith.packed_leak(packed_arith.pack(values, mode), 1)
        expected = [_wrap(np.int64(v - (v >> 1)), mode) for v in values]
        assert list(packed_arith.unpack(result).values) == expected


class TestPackRows:
    def test_pack_rows_pads_the_last_chunk(self):
        mode = get_int4_mode()
        rows = packed_arith.pack_rows([[1, 2, 3, 4, 5], [-1, 0, 0, 0, 0]], mode)
        assert rows.shape == (2, 2)
        assert _lanes(rows[0, 1], mode).tolist() == [5, 0, 0, 0]
        assert _lanes(rows[1, 0], mode).tolist() == [-1, 0, 0, 0]

    def test_pack_rows_checks_the_value_width(self):
        with pytest.raises(LaneOverflowError):
            packed_arith.pack_rows([[8]], get_int4_mode())

    def test_pack_spike_masks(self):
        masks = packed_arith.pack_spike_masks([1, 0, 1, 1, 0, 1],
                                              get_int4_mode())
        assert masks.tolist() == [0b1101, 0b10]

    def test_fold_words(self):
        word = packed_arith.pack([1, -2, 3, -4], get_int4_mode())
        assert int(packed_arith.fold_words(word.raw, get_int4_mode())) == -2


class TestTestVectors:
    def test_json_round_trip(self):
        vector = packed_arith.LaneVector(values=(1, -2, 3, -4),
                                         mode=get_int4_mode())
        text = packed_arith.lane_vector_to_json(vector)
        assert packed_arith.lane_vector_from_json(text) == vector

    def test_json_format(self):
        vector = packed_arith.LaneVector(values=(-1,), mode=get_int8_mode())
        assert packed_arith.lane_vector_to_json(vector) == \
            '{"mode": "int8", "lanes": [-1]}'

    def test_invalid_json(self):
        with pytest.raises(VectorParseError):
            packed_arith.lane_vector_from_json('{"mode": "int4"}')

    def test_json_lane_overflow(self):
        with pytest.raises(LaneOverflowError):
            packed_arith.lane_vector_from_json(
                '{"mode": "int2", "lanes": [' + ", ".join(["2"] * 16) + ']}'
            )
