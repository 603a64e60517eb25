# Copyright (c) 2026 The Spike Composer Authors
# Licensed under the MIT License

"""
This module contains the reference simulators the array is
checked against. The scalar simulator runs the same integer
neuron dynamics with plain Python integers, one neuron and one
synapse at a time, and without the packed datapath. The
dequantized simulator runs the floating-point neuron the
quantized network approximates. The batch simulator evaluates the
integer dynamics for many samples at once and is what the
accuracy sweeps use.
"""

import numpy as np

from .errors import ShapeMismatchError

from .support.reset_names import get_subtract_reset_name


def _check_train(model, data):
    if not model.layers or data.ndim != 2 \
            or data.shape[1] != model.layers[0].in_dim:
        raise ShapeMismatchError(
            "The spike train is shaped {} but the model doesn't take it"
            .format(data.shape)
        )


def simulate_scalar_network(model, spike_train):
    """
    Runs the quantized model over the spike train with scalar
    integer arithmetic. Returns the spike raster of every layer as
    a tuple of arrays shaped (timesteps, neurons).
    """
    data = np.asarray(spike_train.data, dtype=np.uint8)
    _check_train(model, data)
    weights = [
        [[int(w) for w in row] for row in layer.weights]
        for layer in model.layers
    ]
    potentials = [[0] * layer.out_dim for layer in model.layers]
    rasters = [
        np.zeros((data.shape[0], layer.out_dim), dtype=np.uint8)
        for layer in model.layers
    ]
    for t in range(data.shape[0]):
        spikes = [int(s) for s in data[t]]
        for index, layer in enumerate(model.layers):
            cfg = layer.lif
            output = [0] * layer.out_dim
            for neuron in range(layer.out_dim):
                v = potentials[index][neuron]
                if cfg.leak_shift:
                    v -= v >> cfg.leak_shift
                total = 0
                for s, w in zip(spikes, weights[index][neuron]):
                    if s:
                        total += w
                v = min(max(v + total, -cfg.v_clamp), cfg.v_clamp)
                if v >= cfg.threshold:
                    output[neuron] = 1
                    if cfg.reset_mode == get_subtract_reset_name():
                        v -= cfg.threshold
                    else:
                        v = 0
                potentials[index][neuron] = v
            rasters[index][t] = output
            spikes = output
    return tuple(rasters)


def simulate_dequantized_network(model, spike_train):
    """
    Runs the floating-point neuron with the dequantized weights,
    the threshold multiplied by the scale, and the leak factor
    1 - 2^-k of the leak shift k. Returns the spike raster of
    every layer.
    """
    data = np.asarray(spike_train.data, dtype=np.float64)
    _check_train(model, data)
    potentials = [np.zeros(layer.out_dim) for layer in model.layers]
    rasters = [
        np.zeros((data.shape[0], layer.out_dim), dtype=np.uint8)
        for layer in model.layers
    ]
    for t in range(data.shape[0]):
        spikes = data[t]
        for index, layer in enumerate(model.layers):
            cfg = layer.lif
            alpha = 1.0 - 2.0 ** -cfg.leak_shift if cfg.leak_shift else 1.0
            threshold = cfg.threshold * layer.scale
            bound = cfg.v_clamp * layer.scale
            v = alpha * potentials[index] \
                + (layer.weights * layer.scale) @ spikes
            v = np.clip(v, -bound, bound)
            fired = v >= threshold
            if cfg.reset_mode == get_subtract_reset_name():
                v = np.where(fired, v - threshold, v)
            else:
                v = np.where(fired, 0.0, v)
            potentials[index] = v
            rasters[index][t] = fired
            spikes = fired.astype(np.float64)
    return tuple(rasters)


def spike_agreement(rasters_a, rasters_b):
    """
    Gives the fraction of the (neuron, timestep) spike decisions
    on which two sets of rasters agree.
    """
    same = 0
    total = 0
    for a, b in zip(rasters_a, rasters_b):
        a = np.asarray(a)
        b = np.asarray(b)
        if a.shape != b.shape:
            raise ShapeMismatchError(
                "Can't compare rasters shaped {} and {}".format(
                    a.shape,
                    b.shape
                )
            )
        same += int(np.count_nonzero(a == b))
        total += a.size
    return same / total if total else 1.0


def simulate_quantized_batch(model, trains):
    """
    Runs the integer neuron dynamics of a quantized model over a
    batch of spike trains with whole-matrix integer arithmetic.
    Returns the spike counts of the output layer shaped (samples,
    outputs).

    model -- The quantized model.

    trains -- The spike trains shaped (samples, timesteps,
    inputs).
    """
    trains = np.asarray(trains, dtype=np.int64)
    if not model.layers or trains.ndim != 3 \
            or trains.shape[2] != model.layers[0].in_dim:
        raise ShapeMismatchError(
            "The spike trains are shaped {} but the model doesn't take them"
            .format(trains.shape)
        )
    samples = trains.shape[0]
    potentials = [
        np.zeros((samples, layer.out_dim), dtype=np.int64)
        for layer in model.layers
    ]
    counts = np.zeros((samples, model.layers[-1].out_dim), dtype=np.int64)
    for t in range(trains.shape[1]):
        spikes = trains[:, t, :]
        for index, layer in enumerate(model.layers):
            cfg = layer.lif
            v = potentials[index]
            if cfg.leak_shift:
                v = v - (v >> cfg.leak_shift)
            v = np.clip(v + spikes @ layer.weights.T, -cfg.v_clamp, cfg.v_clamp)
            fired = v >= cfg.threshold
            if cfg.reset_mode == get_subtract_reset_name():
                v = np.where(fired, v - cfg.threshold, v)
            else:
                v = np.where(fired, 0, v)
            potentials[index] = v
            spikes = fired.astype(np.int64)
        counts += spikes
    return counts
