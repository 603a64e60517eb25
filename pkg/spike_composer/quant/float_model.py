# Copyright (c) 2026 The Spike Composer Authors
# Licensed under the MIT License

"""
This module contains the floating-point spiking network that the
reference trainer produces and the quantizer consumes, and its
batch simulator. The floating-point neuron has the same step
order and reset as the integer neuron of the array, and leaks
with the factor 1 - 2^-k of the leak shift k.
"""

from collections import namedtuple

import numpy as np

from ..encode import create_encoder_config

from ..errors import \
    DimensionMismatchError, InvalidParameterError, ShapeMismatchError

from ..neuron import get_maximum_leak_shift

from ..support.reset_names import \
    get_hard_reset_name, get_reset_names, get_subtract_reset_name


# The type 'FloatLayer' represents one dense layer of a
# floating-point network.
#
# weights -- The real weights shaped (out, in).
#
# threshold -- The real firing threshold.
#
# leak_shift -- The leak shift of the neurons.
#
# reset_mode -- Either 'hard' or 'subtract'.
FloatLayer = namedtuple("FloatLayer", [
    "weights",
    "threshold",
    "leak_shift",
    "reset_mode"
])

# The type 'FloatModel' is a layered floating-point network.
FloatModel = namedtuple("FloatModel", ["layers", "timesteps", "encoder"])


def create_float_layer(weights, threshold, leak_shift, reset_mode=None):
    """Creates a checked floating-point layer."""
    weights = np.array(weights, dtype=np.float64, ndmin=2)
    reset_mode = get_hard_reset_name() if reset_mode is None else reset_mode
    if weights.ndim != 2:
        raise DimensionMismatchError("The weights must be a matrix")
    if not np.all(np.isfinite(weights)):
        raise InvalidParameterError("The weights must be finite")
    if not threshold > 0:
        raise InvalidParameterError(
            "The threshold must be positive, not {}".format(threshold)
        )
    if not 0 <= leak_shift <= get_maximum_leak_shift():
        raise InvalidParameterError(
            "The leak shift must be within [0, {}], not {}".format(
                get_maximum_leak_shift(),
                leak_shift
            )
        )
    if reset_mode not in get_reset_names():
        raise InvalidParameterError(
            "'{}' isn't a reset mode".format(reset_mode)
        )
    return FloatLayer(
        weights=weights,
        threshold=float(threshold),
        leak_shift=int(leak_shift),
        reset_mode=reset_mode
    )


def create_float_model(layers, timesteps, encoder=None):
    """
    Creates a checked floating-point model. The fan-in of every
    layer must match the width of the previous layer.
    """
    layers = tuple(layers)
    for index in range(1, len(layers)):
        if layers[index].weights.shape[1] != layers[index - 1].weights.shape[0]:
            raise DimensionMismatchError(
                "Layer {} doesn't take the output of layer {}".format(
                    index,
                    index - 1
                )
            )
    if timesteps < 1:
        raise InvalidParameterError(
            "There must be at least one timestep, not {}".format(timesteps)
        )
    if encoder is None:
        encoder = create_encoder_config(timesteps=timesteps)
    return FloatModel(
        layers=layers,
        timesteps=int(timesteps),
        encoder=encoder._replace(timesteps=int(timesteps))
    )


def get_leak_factor(leak_shift):
    """
    Gives the factor by which the membrane potential decays in a
    timestep. A zero shift disables the leak.
    """
    return 1.0 - 2.0 ** -leak_shift if leak_shift else 1.0


def simulate_float_batch(model, trains):
    """
    Runs the floating-point model over a batch of spike trains.
    Returns the spike counts of the output layer shaped
    (samples, outputs).

    model -- The floating-point model.

    trains -- The spike trains shaped (samples, timesteps,
    inputs).
    """
    trains = np.asarray(trains, dtype=np.float64)
    if not model.layers or trains.ndim != 3 \
            or trains.shape[2] != model.layers[0].weights.shape[1]:
        raise ShapeMismatchError(
            "The spike trains are shaped {} but the model doesn't take them"
            .format(trains.shape)
        )
    samples = trains.shape[0]
    potentials = [np.zeros((samples, l.weights.shape[0])) for l in model.layers]
    counts = np.zeros((samples, model.layers[-1].weights.shape[0]))
    for t in range(trains.shape[1]):
        spikes = trains[:, t, :]
        for index, layer in enumerate(model.layers):
            v = get_leak_factor(layer.leak_shift) * potentials[index] \
                + spikes @ layer.weights.T
            fired = v >= layer.threshold
            if layer.reset_mode == get_subtract_reset_name():
                v = np.where(fired, v - layer.threshold, v)
            else:
                v = np.where(fired, 0.0, v)
            potentials[index] = v
            spikes = fired.astype(np.float64)
        counts += spikes
    return counts.astype(np.int64)
