# Copyright (c) 2026 The Spike Composer Authors
# Licensed under the MIT License

"""
This module contains the desk-scale reference trainer. It trains
a dense floating-point spiking network with backpropagation
through time: the step function of the neurons is replaced in
the backward pass by a triangular surrogate derivative and the
reset is detached from the graph. The loss is the cross-entropy
of the output spike rates, and the weights are updated with plain
minibatch stochastic gradient descent.

The trainer is single-threaded and draws all of its randomness
from one seeded generator, so a seed always gives the same
model.
"""

import logging

from collections import namedtuple

import numpy as np

from ..encode import create_encoder_config, encode_batch

from ..neuron import get_default_leak_shift

from ..support.reset_names import get_hard_reset_name

from .dataset import check_trainable

from .float_model import \
    create_float_layer, create_float_model, get_leak_factor


# The type 'TrainingConfig' contains the hyperparameters of the
# trainer.
#
# hidden -- The widths of the hidden layers.
#
# epochs -- The number of passes over the training set.
#
# learning_rate -- The step size of the descent.
#
# batch_size -- The number of samples in a minibatch.
#
# timesteps -- The number of timesteps of the network.
#
# threshold -- The real firing threshold of every layer.
#
# leak_shift -- The leak shift of every layer.
#
# rate_gain -- The factor from the output spike rates to the
# logits of the loss.
TrainingConfig = namedtuple("TrainingConfig", [
    "hidden",
    "epochs",
    "learning_rate",
    "batch_size",
    "timesteps",
    "threshold",
    "leak_shift",
    "rate_gain"
])


def create_training_config(
    hidden=(32,),
    epochs=30,
    learning_rate=0.2,
    batch_size=32,
    timesteps=16,
    threshold=1.0,
    leak_shift=None,
    rate_gain=8.0
):
    """Creates the configuration of the trainer."""
    return TrainingConfig(
        hidden=tuple(int(h) for h in hidden),
        epochs=int(epochs),
        learning_rate=float(learning_rate),
        batch_size=int(batch_size),
        timesteps=int(timesteps),
        threshold=float(threshold),
        leak_shift=get_default_leak_shift() if leak_shift is None
        else int(leak_shift),
        rate_gain=float(rate_gain)
    )


def _surrogate(u, threshold):
    """The triangular derivative of the step at the threshold."""
    return np.maximum(0.0, 1.0 - np.abs(u - threshold) / threshold) \
        / threshold


def _forward(weights, trains, config):
    """
    Runs the network over a batch and records what the backward
    pass needs. Returns the output spike counts and, for every
    layer, the input spikes, the potentials before the reset,
    and the output spikes of every timestep.
    """
    alpha = get_leak_factor(config.leak_shift)
    samples, timesteps, _ = trains.shape
    records = [
        ([], [], []) for _ in weights
    ]
    potentials = [np.zeros((samples, w.shape[0])) for w in weights]
    counts = np.zeros((samples, weights[-1].shape[0]))
    for t in range(timesteps):
        spikes = trains[:, t, :]
        for index, w in enumerate(weights):
            u = alpha * potentials[index] + spikes @ w.T
            fired = (u >= config.threshold).astype(np.float64)
            potentials[index] = u * (1.0 - fired)
            records[index][0].append(spikes)
            records[index][1].append(u)
            records[index][2].append(fired)
            spikes = fired
        counts += spikes
    return counts, records


def _backward(weights, records, d_output, config):
    """
    Propagates the gradient of the output spikes back through the
    layers and the timesteps. Returns the weight gradients.
    """
    alpha = get_leak_factor(config.leak_shift)
    gradients = [np.zeros_like(w) for w in weights]
    d_spikes = d_output
    for index in reversed(range(len(weights))):
        inputs, potentials, fired = records[index]
        d_inputs = [None] * len(inputs)
        d_v = np.zeros_like(potentials[0])
        for t in reversed(range(len(inputs))):
            d_u = d_spikes[t] * _surrogate(potentials[t], config.threshold) \
                + d_v * (1.0 - fired[t])
            d_v = alpha * d_u
            gradients[index] += d_u.T @ inputs[t]
            d_inputs[t] = d_u @ weights[index]
        d_spikes = d_inputs
    return gradients


def _softmax(logits):
    shifted = np.exp(logits - logits.max(axis=1, keepdims=True))
    return shifted / shifted.sum(axis=1, keepdims=True)


def train_reference_model(dataset, config=None, seed=0):
    """
    Trains a floating-point spiking network on the dataset.
    Returns the model.

    dataset -- The training set.

    config -- The hyperparameters of the trainer.

    seed -- The seed of the initial weights and the batch order.
    """
    check_trainable(dataset)
    if config is None:
        config = create_training_config()
    rng = np.random.default_rng(seed)
    widths = [dataset.features.shape[1]] + list(config.hidden) \
        + [dataset.classes]
    weights = [
        rng.normal(0.0, 2.0 / np.sqrt(fan_in), size=(fan_out, fan_in))
        for fan_in, fan_out in zip(widths[:-1], widths[1:])
    ]
    encoder = create_encoder_config(timesteps=config.timesteps)
    trains = encode_batch(dataset.features, encoder).astype(np.float64)
    targets = np.eye(dataset.classes)[dataset.labels]
    scale = config.rate_gain / config.timesteps
    for epoch in range(config.epochs):
        order = rng.permutation(len(dataset.labels))
        loss = 0.0
        for start in range(0, len(order), config.batch_size):
            batch = order[start:start + config.batch_size]
            counts, records = _forward(weights, trains[batch], config)
            probabilities = _softmax(counts * scale)
            loss -= float(np.sum(
                targets[batch] * np.log(probabilities + 1e-12)
            ))
            d_counts = (probabilities - targets[batch]) * scale / len(batch)
            gradients = _backward(
                weights,
                records,
                [d_counts] * config.timesteps,
                config
            )
            weights = [
                w - config.learning_rate * g
                for w, g in zip(weights, gradients)
            ]
        logging.debug(
            "The mean loss of epoch %d is %.4f",
            epoch,
            loss / len(order)
        )
    return create_float_model(
        layers=[create_float_layer(
            weights=w,
            threshold=config.threshold,
            leak_shift=config.leak_shift,
            reset_mode=get_hard_reset_name()
        ) for w in weights],
        timesteps=config.timesteps,
        encoder=encoder
    )
