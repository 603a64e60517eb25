# Copyright (c) 2026 The Spike Composer Authors
# Licensed under the MIT License

"""
This module contains the bit-exact model of the packed integer
datapath of a neuron compute engine. A 32-bit word holds 16, 4, or
1 two's-complement lanes depending on the precision mode, lane 0
in the least-significant bits. No operation lets a carry, a
borrow, or a shifted bit cross a lane boundary.

The word kernels ('add_words', 'gate_words', 'shift_words',
'leak_words', ...) take either a single raw word or a NumPy array
of raw words, so a whole wave of compute engines is evaluated in
one call. The operations on 'PackedWord' are validated wrappers
of the kernels. Everything in the module is pure.
"""

import json

from collections import namedtuple

import numpy as np

from .errors import \
    LaneOverflowError, LengthMismatchError, MaskLengthMismatchError, \
    ModeMismatchError, ShiftOutOfRangeError, InvalidBitsError, \
    InvalidParameterError, VectorParseError

from .support.precision_names import \
    get_int2_name, get_int4_name, get_int8_name

from .util.cache import cached


# The type 'PrecisionMode' represents one configuration of the
# datapath.
#
# name -- The name of the mode used in files.
#
# value_width -- The number of bits of a weight.
#
# lane_width -- The number of bits of a lane. The bits above the
# value width are guard bits for accumulation.
#
# lane_count -- The number of lanes in a word.
PrecisionMode = namedtuple("PrecisionMode", [
    "name",
    "value_width",
    "lane_width",
    "lane_count"
])

# The type 'PackedWord' is a raw 32-bit word together with the
# mode it is interpreted in.
PackedWord = namedtuple("PackedWord", ["raw", "mode"])

# The type 'LaneVector' is the unpacked view of a word.
LaneVector = namedtuple("LaneVector", ["values", "mode"])

# The masks of a mode as raw words.
#
# full -- All of the bits of the word.
#
# sign -- The most-significant bit of every lane.
#
# ones -- The least-significant bit of every lane.
LaneMasks = namedtuple("LaneMasks", ["full", "sign", "ones"])


def get_word_width():
    """Gives the width of the datapath word in bits."""
    return 32


def get_int2_mode():
    """Gives the mode of sixteen 2-bit lanes."""
    return PrecisionMode(
        name=get_int2_name(),
        value_width=2,
        lane_width=2,
        lane_count=16
    )


def get_int4_mode():
    """Gives the mode of four 8-bit lanes holding 4-bit values."""
    return PrecisionMode(
        name=get_int4_name(),
        value_width=4,
        lane_width=8,
        lane_count=4
    )


def get_int8_mode():
    """Gives the mode of one 32-bit lane holding 8-bit values."""
    return PrecisionMode(
        name=get_int8_name(),
        value_width=8,
        lane_width=32,
        lane_count=1
    )


def get_precision_modes():
    """Gives the possible precision modes, the widest first."""
    return [get_int2_mode(), get_int4_mode(), get_int8_mode()]


def parse_precision_mode(name):
    """
    Gives the precision mode with the given name.

    name -- The name of the mode, for example 'int4'.
    """
    for mode in get_precision_modes():
        if mode.name == str(name).lower():
            return mode
    raise InvalidParameterError(
        "'{}' isn't a precision mode; the modes are {}".format(
            name,
            ", ".join(m.name for m in get_precision_modes())
        )
    )


def get_mode_for_bits(bits):
    """
    Gives the precision mode that stores weights of the given
    width.

    bits -- The weight width, 2, 4, or 8.
    """
    for mode in get_precision_modes():
        if mode.value_width == bits:
            return mode
    raise InvalidBitsError(
        "{} bits isn't supported; use 2, 4, or 8".format(bits)
    )


def lanes_of(mode):
    """
    Gives the lane count, the lane width, and the value width of
    the mode.
    """
    return mode.lane_count, mode.lane_width, mode.value_width


def get_lane_range(mode):
    """Gives the smallest and the largest value of a lane."""
    return -(1 << (mode.lane_width - 1)), (1 << (mode.lane_width - 1)) - 1


def get_value_range(mode):
    """Gives the smallest and the largest weight of the mode."""
    return -(1 << (mode.value_width - 1)), (1 << (mode.value_width - 1)) - 1


def get_guard_bits(mode):
    """Gives the number of accumulation guard bits in a lane."""
    return mode.lane_width - mode.value_width


def get_fold_interval(mode):
    """
    Gives the number of weights a lane can accumulate before the
    lanes must be folded into the wide accumulator. Sums of that
    many weights always fit in the lane.
    """
    return 1 << get_guard_bits(mode)


def get_chunk_count(size, mode):
    """
    Gives the number of packed words needed for a vector of the
    given size.
    """
    return -(-size // mode.lane_count)


@cached
def get_lane_masks(mode):
    """Gives the masks of the mode as Python integers."""
    ones = 0
    for lane in range(mode.lane_count):
        ones |= 1 << (lane * mode.lane_width)
    return LaneMasks(
        full=(1 << get_word_width()) - 1,
        sign=ones << (mode.lane_width - 1),
        ones=ones
    )


@cached
def _get_keep_mask(mode, k):
    """
    Gives the mask of the bits that stay inside their lane when
    the word is shifted right by k bits.
    """
    lane_keep = (1 << (mode.lane_width - k)) - 1
    keep = 0
    for lane in range(mode.lane_count):
        keep |= lane_keep << (lane * mode.lane_width)
    return keep


def _u(value):
    return np.uint64(value)


def _words(raw):
    return np.asarray(raw, dtype=np.uint64)


def add_words(a, b, mode):
    """
    Adds the lanes of two words with the carries between the
    lanes killed. The lanes wrap in two's complement.
    """
    a = _words(a)
    b = _words(b)
    masks = get_lane_masks(mode)
    low = _u(masks.full ^ masks.sign)
    total = (a & low) + (b & low)
    return (total ^ ((a ^ b) & _u(masks.sign))) & _u(masks.full)


def negate_words(words, mode):
    """Negates every lane of the words."""
    masks = get_lane_masks(mode)
    return add_words(_words(words) ^ _u(masks.full), masks.ones, mode)


def sub_words(a, b, mode):
    """Subtracts the lanes of b from the lanes of a."""
    return add_words(a, negate_words(b, mode), mode)


def expand_mask(mask_bits, mode):
    """
    Expands the spike bits into lane-wide masks: bit i of the
    input selects all of the bits of lane i.

    mask_bits -- A raw mask or an array of raw masks.
    """
    bits = _words(mask_bits)
    expanded = np.zeros_like(bits)
    for lane in range(mode.lane_count):
        bit = (bits >> _u(lane)) & _u(1)
        lane_fill = (bit << _u(mode.lane_width)) - bit
        expanded = expanded | (lane_fill << _u(lane * mode.lane_width))
    return expanded


def gate_words(acc, weights, mask_bits, mode):
    """
    Adds the weight lanes selected by the spike bits to the
    accumulator lanes. The weights are gated with a bitwise AND,
    so the accumulation needs no multiplier.
    """
    gated = _words(weights) & expand_mask(mask_bits, mode)
    return add_words(acc, gated, mode)


def shift_words(words, k, mode):
    """
    Shifts every lane arithmetically right by k bits. The bits
    shifted out of a lane are dropped and the sign of the lane is
    copied into the vacated bits.
    """
    words = _words(words)
    masks = get_lane_masks(mode)
    logical = (words >> _u(k)) & _u(_get_keep_mask(mode, k))
    sign_lsb = (words & _u(masks.sign)) >> _u(mode.lane_width - 1)
    fill = ((sign_lsb << _u(k)) - sign_lsb) << _u(mode.lane_width - k)
    return (logical | fill) & _u(masks.full)


def leak_words(words, k, mode):
    """Replaces every lane v with v - (v >> k)."""
    return sub_words(words, shift_words(words, k, mode), mode)


def pack_lanes(values, mode):
    """
    Packs lane values into raw words. The last axis of the values
    is the lane axis and it must be as long as the lane count.
    The values aren't checked.
    """
    fields = np.asarray(values, dtype=np.int64) & ((1 << mode.lane_width) - 1)
    fields = fields.astype(np.uint64)
    words = np.zeros(fields.shape[:-1], dtype=np.uint64)
    for lane in range(mode.lane_count):
        words = words | (fields[..., lane] << _u(lane * mode.lane_width))
    return words


def unpack_words(words, mode):
    """
    Unpacks raw words into signed lane values. The result has a
    new last axis for the lanes.
    """
    words = _words(words)
    lane_full = _u((1 << mode.lane_width) - 1)
    lanes = []
    for lane in range(mode.lane_count):
        field = ((words >> _u(lane * mode.lane_width)) & lane_full)
        field = field.astype(np.int64)
        sign = (field >> (mode.lane_width - 1)) & 1
        lanes.append(field - (sign << mode.lane_width))
    return np.stack(lanes, axis=-1)


def fold_words(words, mode):
    """Sums the signed lanes of every word into a wide integer."""
    return unpack_words(words, mode).sum(axis=-1)


def pack_rows(matrix, mode):
    """
    Packs every row of a weight matrix into packed words. The
    rows are split into chunks of lane count weights and the last
    chunk is padded with zeros. Returns an array of the shape
    (rows, chunks).

    matrix -- The integer weight matrix.

    mode -- The precision mode the weights are stored in.
    """
    matrix = np.atleast_2d(np.asarray(matrix, dtype=np.int64))
    low, high = get_value_range(mode)
    if matrix.size and (matrix.min() < low or matrix.max() > high):
        raise LaneOverflowError(
            "The weights must be within [{}, {}] in mode {}".format(
                low,
                high,
                mode.name
            )
        )
    rows, size = matrix.shape
    chunks = get_chunk_count(size, mode)
    padded = np.zeros((rows, chunks * mode.lane_count), dtype=np.int64)
    padded[:, :size] = matrix
    return pack_lanes(padded.reshape(rows, chunks, mode.lane_count), mode)


def pack_spike_masks(spike_bits, mode):
    """
    Packs a spike vector into one raw mask per chunk; bit i of a
    mask is the spike of lane i.
    """
    bits = np.asarray(spike_bits, dtype=np.uint64).ravel() & _u(1)
    chunks = get_chunk_count(bits.size, mode)
    padded = np.zeros(chunks * mode.lane_count, dtype=np.uint64)
    padded[:bits.size] = bits
    positions = np.arange(mode.lane_count, dtype=np.uint64)
    shifted = padded.reshape(chunks, mode.lane_count) << positions
    return np.bitwise_or.reduce(shifted, axis=1)


def _check_same_mode(a, b):
    if a.mode != b.mode:
        raise ModeMismatchError("Can't combine modes {} and {}".format(
            a.mode.name,
            b.mode.name
        ))


def _check_shift(k, mode):
    if not 0 <= k < mode.lane_width:
        raise ShiftOutOfRangeError(
            "The shift {} isn't within [0, {}) in mode {}".format(
                k,
                mode.lane_width,
                mode.name
            )
        )


def mask_to_bits(spike_mask, mode):
    """
    Converts a sequence of spike bits, one per lane, into a raw
    mask.
    """
    spike_mask = list(spike_mask)
    if len(spike_mask) != mode.lane_count:
        raise MaskLengthMismatchError(
            "The mask has {} bits but mode {} has {} lanes".format(
                len(spike_mask),
                mode.name,
                mode.lane_count
            )
        )
    bits = 0
    for lane, bit in enumerate(spike_mask):
        if bit:
            bits |= 1 << lane
    return bits


def pack(values, mode=None):
    """
    Packs lane values into a word.

    values -- A LaneVector or a sequence of lane values.

    mode -- The precision mode. Defaults to the mode of the
    LaneVector.
    """
    if mode is None:
        mode = values.mode
    if isinstance(values, LaneVector):
        values = values.values
    values = [int(v) for v in values]
    if len(values) != mode.lane_count:
        raise LengthMismatchError(
            "Mode {} has {} lanes but {} values were given".format(
                mode.name,
                mode.lane_count,
                len(values)
            )
        )
    low, high = get_lane_range(mode)
    for lane, value in enumerate(values):
        if not low <= value <= high:
            raise LaneOverflowError(
                "The value {} of lane {} isn't within [{}, {}]".format(
                    value,
                    lane,
                    low,
                    high
                )
            )
    return PackedWord(raw=int(pack_lanes(values, mode)), mode=mode)


def unpack(word):
    """Unpacks a word into its signed lane values."""
    values = unpack_words(word.raw, word.mode)
    return LaneVector(values=tuple(int(v) for v in values), mode=word.mode)


def packed_add(a, b):
    """Adds two words lane by lane with two's-complement wrap."""
    _check_same_mode(a, b)
    return PackedWord(raw=int(add_words(a.raw, b.raw, a.mode)), mode=a.mode)


def spike_gated_accumulate(acc, weights, spike_mask):
    """
    Adds to every accumulator lane the weight of the lane if the
    lane has a spike.

    acc -- The accumulator word.

    weights -- The weight word in the same mode.

    spike_mask -- One spike bit per lane.
    """
    _check_same_mode(acc, weights)
    bits = mask_to_bits(spike_mask, acc.mode)
    return PackedWord(
        raw=int(gate_words(acc.raw, weights.raw, bits, acc.mode)),
        mode=acc.mode
    )


def packed_shift_right_arith(word, k):
    """Shifts every lane of the word arithmetically right by k."""
    _check_shift(k, word.mode)
    return PackedWord(
        raw=int(shift_words(word.raw, k, word.mode)),
        mode=word.mode
    )


def packed_leak(word, k):
    """
    Decays every lane v of the word to v - (v >> k), that is v
    multiplied by 1 - 2^-k without a multiplier.
    """
    _check_shift(k, word.mode)
    return PackedWord(
        raw=int(leak_words(word.raw, k, word.mode)),
        mode=word.mode
    )


def lane_vector_to_json(vector):
    """Converts a lane vector into the JSON test vector format."""
    return json.dumps({"mode": vector.mode.name, "lanes": list(vector.values)})


def lane_vector_from_json(text):
    """Parses a lane vector from the JSON test vector format."""
    try:
        node = json.loads(text)
        mode = parse_precision_mode(node["mode"])
        values = tuple(int(v) for v in node["lanes"])
    except (ValueError, KeyError, TypeError) as e:
        raise VectorParseError("Invalid test vector: {}".format(e))
    # Round-tripping through pack validates the lane values.
    return unpack(pack(values, mode))
