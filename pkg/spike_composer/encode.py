# Copyright (c) 2026 The Spike Composer Authors
# Licensed under the MIT License

"""
This module contains the spike encoders that turn normalized
input features into binary spike trains over the timesteps of an
inference, and the rate decoder of the output spike counters.

The stochastic encoder draws its numbers from the PCG64 bit
generator of NumPy (PCG XSL RR 128/64) seeded with the given
seed, one draw per timestep and input in row-major order.
"""

from collections import namedtuple

import numpy as np

from .errors import \
    EmptyCountsError, InputOutOfRangeError, InvalidParameterError, \
    VectorParseError

from .support.encoder_names import \
    get_deterministic_encoder_name, get_encoder_names, \
    get_stochastic_encoder_name


# The type 'EncoderConfig' represents the configuration of the
# encoder.
#
# kind -- Either 'det' or 'stoch'.
#
# timesteps -- The number of timesteps to encode.
#
# seed -- The seed of the stochastic encoder.
EncoderConfig = namedtuple("EncoderConfig", ["kind", "timesteps", "seed"])

# The type 'SpikeTrain' is a raster of spikes.
#
# data -- The spikes as an array of zeros and ones shaped
# (timesteps, inputs).
SpikeTrain = namedtuple("SpikeTrain", ["data", "timesteps", "inputs"])


def get_default_timesteps():
    """Gives the default number of timesteps of an inference."""
    return 16


def get_rounding_tolerance():
    """
    Gives the tolerance with which the accumulator of the
    deterministic encoder reaches one. Intensities such as 0.1
    aren't exact in binary and their sums would otherwise fall
    short of the integer they add up to.
    """
    return 1e-9


def check_seed(seed):
    """
    Checks that the seed can seed the PCG64 generator and gives
    it as an integer.
    """
    try:
        seed = int(seed)
    except (TypeError, ValueError):
        raise InvalidParameterError("'{}' isn't a seed".format(seed))
    if not 0 <= seed < 2 ** 64:
        raise InvalidParameterError(
            "The seed must be within [0, 2^64), not {}".format(seed)
        )
    return seed


def create_encoder_config(kind=None, timesteps=None, seed=0):
    """
    Creates a checked encoder configuration.

    kind -- The name of the encoder kind.

    timesteps -- The number of timesteps, at least one.

    seed -- The seed of the stochastic encoder.
    """
    kind = get_deterministic_encoder_name() if kind is None else kind
    try:
        timesteps = get_default_timesteps() if timesteps is None \
            else int(timesteps)
    except (TypeError, ValueError):
        raise InvalidParameterError(
            "'{}' isn't a number of timesteps".format(timesteps)
        )
    if kind not in get_encoder_names():
        raise InvalidParameterError(
            "'{}' isn't an encoder; the encoders are {}".format(
                kind,
                ", ".join(get_encoder_names())
            )
        )
    if timesteps < 1:
        raise InvalidParameterError(
            "There must be at least one timestep, not {}".format(timesteps)
        )
    return EncoderConfig(
        kind=kind,
        timesteps=timesteps,
        seed=check_seed(seed)
    )


def create_spike_train(data):
    """Creates a spike train of the given raster."""
    data = np.asarray(data, dtype=np.uint8)
    if data.ndim != 2:
        raise InvalidParameterError("A spike train must be two-dimensional")
    return SpikeTrain(
        data=data,
        timesteps=data.shape[0],
        inputs=data.shape[1]
    )


def _check_intensities(x):
    x = np.asarray(x, dtype=np.float64).ravel()
    if not np.all((x >= 0.0) & (x <= 1.0)):
        raise InputOutOfRangeError(
            "The input intensities must be within [0, 1]"
        )
    return x


def _check_timesteps(timesteps):
    if timesteps < 1:
        raise InvalidParameterError(
            "There must be at least one timestep, not {}".format(timesteps)
        )


def encode_deterministic(x, timesteps):
    """
    Encodes the inputs with an accumulate-and-fire recurrence:
    every input adds its intensity to an accumulator each step
    and spikes, subtracting one, when the accumulator reaches
    one. The recurrence is evaluated in closed form, so the
    spike at step t exists exactly when floor(t x) grows.

    x -- The intensities within [0, 1].

    timesteps -- The number of timesteps.
    """
    x = _check_intensities(x)
    _check_timesteps(timesteps)
    steps = np.arange(timesteps + 1, dtype=np.float64)[:, np.newaxis]
    fired = np.floor(steps * x[np.newaxis, :] + get_rounding_tolerance())
    return create_spike_train(np.diff(fired, axis=0))


def encode_stochastic(x, timesteps, seed):
    """
    Encodes every input at every timestep as an independent
    Bernoulli draw with the intensity as the probability.

    x -- The intensities within [0, 1].

    timesteps -- The number of timesteps.

    seed -- The seed of the generator.
    """
    x = _check_intensities(x)
    _check_timesteps(timesteps)
    generator = np.random.Generator(np.random.PCG64(check_seed(seed)))
    draws = generator.random((timesteps, x.size))
    return create_spike_train(draws < x[np.newaxis, :])


def encode(x, config):
    """Encodes the inputs with the configured encoder."""
    if config.kind == get_stochastic_encoder_name():
        return encode_stochastic(x, config.timesteps, config.seed)
    return encode_deterministic(x, config.timesteps)


def decode_counts(counts):
    """
    Gives the index of the largest spike count. The lowest index
    wins a tie.
    """
    counts = np.asarray(counts).ravel()
    if not counts.size:
        raise EmptyCountsError("There are no spike counts to decode")
    return int(np.argmax(counts))


def format_spike_train(train):
    """
    Formats a spike train: the first line has the timesteps and
    the inputs, and each timestep follows on its own line.
    """
    lines = ["{} {}".format(train.timesteps, train.inputs)]
    for row in train.data:
        lines.append("".join("1" if bit else "0" for bit in row))
    return "\n".join(lines) + "\n"


def parse_spike_train(text):
    """Parses a spike train in the format of 'format_spike_train'."""
    lines = [line.strip() for line in text.splitlines() if line.strip()]
    try:
        timesteps, inputs = [int(n) for n in lines[0].split()]
    except (IndexError, ValueError):
        raise VectorParseError("The spike train has no valid header")
    rows = lines[1:]
    if len(rows) != timesteps or any(len(r) != inputs for r in rows) \
            or any(c not in "01" for r in rows for c in r):
        raise VectorParseError(
            "The spike train doesn't match its header {} {}".format(
                timesteps,
                inputs
            )
        )
    data = np.zeros((timesteps, inputs), dtype=np.uint8)
    for t, row in enumerate(rows):
        data[t] = [c == "1" for c in row]
    return create_spike_train(data)


def encode_batch(samples, config):
    """
    Encodes every row of a sample matrix. Returns an array of
    zeros and ones shaped (samples, timesteps, inputs). The
    stochastic encoder seeds sample i with the configured seed
    plus i.
    """
    samples = np.atleast_2d(np.asarray(samples, dtype=np.float64))
    if config.kind == get_stochastic_encoder_name():
        return np.stack([
            encode_stochastic(x, config.timesteps, config.seed + i).data
            for i, x in enumerate(samples)
        ]) if len(samples) else np.zeros(
            (0, config.timesteps, samples.shape[1]),
            dtype=np.uint8
        )
    for x in samples:
        _check_intensities(x)
    steps = np.arange(config.timesteps + 1, dtype=np.float64)
    fired = np.floor(
        steps[np.newaxis, :, np.newaxis] * samples[:, np.newaxis, :]
        + get_rounding_tolerance()
    )
    return np.diff(fired, axis=1).astype(np.uint8)


def parse_input_vectors(text):
    """
    Parses the input vectors: one sample per line as
    comma-separated intensities. Returns a matrix with a row per
    sample.
    """
    rows = [line.strip() for line in text.splitlines() if line.strip()]
    if not rows:
        raise VectorParseError("There are no input vectors")
    try:
        samples = np.array(
            [[float(v) for v in row.split(",")] for row in rows],
            dtype=np.float64
        )
    except ValueError as e:
        raise VectorParseError("Invalid input vector: {}".format(e))
    if samples.ndim != 2:
        raise VectorParseError("The input vectors have different lengths")
    return samples


def format_input_vectors(samples):
    """Formats the input vectors for 'parse_input_vectors'."""
    return "".join(
        ",".join(repr(float(v)) for v in row) + "\n"
        for row in np.atleast_2d(samples)
    )
