# Copyright (c) 2026 The Spike Composer Authors
# Licensed under the MIT License

"""
This module contains the multiplier-less leaky integrate-and-fire
neuron of a compute engine. One timestep of a neuron runs the
fixed pipeline leak, integrate, fire, and reset. The synaptic sum
is accumulated on the packed datapath and folded into a wide
accumulator, and the leak is a packed shift on the single 32-bit
lane of the INT8 mode.

The functions don't modify their parameters; the states are
immutable and every step returns a new state.
"""

from collections import namedtuple

import numpy as np

from .errors import FanInMismatchError, InvalidParameterError

from .packed_arith import \
    fold_words, gate_words, get_fold_interval, \
    get_int8_mode, leak_words, pack_rows, pack_spike_masks

from .support.reset_names import \
    get_hard_reset_name, get_reset_names, get_subtract_reset_name


# The type 'LIFConfig' represents the firing configuration of a
# neuron.
#
# threshold -- The integer threshold in the scale of the
# quantized weights.
#
# leak_shift -- The leak shift; zero disables the leak.
#
# reset_mode -- Either 'hard' or 'subtract'.
#
# v_clamp -- The bound of the membrane potential.
LIFConfig = namedtuple("LIFConfig", [
    "threshold",
    "leak_shift",
    "reset_mode",
    "v_clamp"
])

# The type 'LIFState' is the state of one neuron.
#
# v -- The membrane potential.
#
# spike_count -- The spikes since the counter was last cleared.
#
# t -- The index of the next timestep.
LIFState = namedtuple("LIFState", ["v", "spike_count", "t"])

# The type 'SpikeEvent' records one output spike for traces.
SpikeEvent = namedtuple("SpikeEvent", ["neuron_id", "timestep", "layer"])


def get_default_leak_shift():
    """
    Gives the default leak shift. The decay factor of the shift
    is 1 - 2^-3 = 0.875 per timestep.
    """
    return 3


def get_maximum_leak_shift():
    """Gives the largest leak shift the leak unit supports."""
    return 15


def get_default_v_clamp():
    """Gives the default bound of the membrane potential."""
    return 1 << 20


def get_membrane_limit():
    """Gives the largest value a 32-bit membrane register holds."""
    return (1 << 31) - 1


def create_lif_config(
    threshold,
    leak_shift=None,
    reset_mode=None,
    v_clamp=None
):
    """
    Creates a checked neuron configuration.

    threshold -- The positive integer threshold.

    leak_shift -- The leak shift within [0, 15].

    reset_mode -- The name of the reset mode.

    v_clamp -- The bound of the membrane potential. Defaults to
    2^20 or the threshold, whichever is larger.
    """
    threshold = int(threshold)
    leak_shift = get_default_leak_shift() if leak_shift is None \
        else int(leak_shift)
    reset_mode = get_hard_reset_name() if reset_mode is None else reset_mode
    v_clamp = max(get_default_v_clamp(), threshold) if v_clamp is None \
        else int(v_clamp)
    if threshold <= 0:
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
            "'{}' isn't a reset mode; the modes are {}".format(
                reset_mode,
                ", ".join(get_reset_names())
            )
        )
    if not threshold <= v_clamp <= get_membrane_limit():
        raise InvalidParameterError(
            "The membrane bound {} must be within [{}, {}]".format(
                v_clamp,
                threshold,
                get_membrane_limit()
            )
        )
    return LIFConfig(
        threshold=threshold,
        leak_shift=leak_shift,
        reset_mode=reset_mode,
        v_clamp=v_clamp
    )


def create_lif_state(v=0):
    """Creates the state of a fresh neuron."""
    return LIFState(v=int(v), spike_count=0, t=0)


def leak_potentials(v, leak_shift):
    """
    Leaks an array of membrane potentials on the datapath.
    Returns a new array.
    """
    v = np.asarray(v, dtype=np.int64)
    if leak_shift == 0:
        return v.copy()
    mode = get_int8_mode()
    words = (v & 0xFFFFFFFF).astype(np.uint64)
    return fold_words(leak_words(words, leak_shift, mode), mode)


def accumulate_rows(packed_weights, masks, mode):
    """
    Computes the spike-gated weight sums of packed weight rows.
    The lanes accumulate for as many chunks as their guard bits
    allow and are then folded into the wide accumulator.

    packed_weights -- The packed rows, shaped (neurons, chunks).

    masks -- The raw spike masks, one per chunk.

    mode -- The precision mode of the weights.
    """
    packed_weights = np.asarray(packed_weights, dtype=np.uint64)
    neurons, chunks = packed_weights.shape
    interval = get_fold_interval(mode)
    total = np.zeros(neurons, dtype=np.int64)
    for start in range(0, chunks, interval):
        acc = np.zeros(neurons, dtype=np.uint64)
        for chunk in range(start, min(start + interval, chunks)):
            acc = gate_words(acc, packed_weights[:, chunk], masks[chunk], mode)
        total += fold_words(acc, mode)
    return total


def synaptic_sum(spike_bits, weights, mode):
    """
    Computes the spike-gated sum of one weight row on the packed
    datapath.
    """
    packed = pack_rows(np.asarray(weights)[np.newaxis, :], mode)
    masks = pack_spike_masks(spike_bits, mode)
    return int(accumulate_rows(packed, masks, mode)[0])


def leak(state, leak_shift):
    """Applies the shift-based leak to the membrane potential."""
    return state._replace(v=int(leak_potentials([state.v], leak_shift)[0]))


def integrate(state, synaptic_sum, v_clamp=None):
    """
    Adds the synaptic sum of the timestep to the membrane
    potential, which saturates at the bound.
    """
    if v_clamp is None:
        v_clamp = get_default_v_clamp()
    v = min(max(state.v + int(synaptic_sum), -v_clamp), v_clamp)
    return state._replace(v=v)


def fire_and_reset(state, cfg):
    """
    Compares the membrane potential with the threshold and resets
    the neuron if it fires. Returns the new state and whether the
    neuron spiked.
    """
    if state.v < cfg.threshold:
        return state, False
    if cfg.reset_mode == get_subtract_reset_name():
        v = state.v - cfg.threshold
    else:
        v = 0
    return state._replace(v=v, spike_count=state.spike_count + 1), True


def step(state, spike_bits, weights, cfg, mode):
    """
    Runs one timestep of a neuron. Returns the new state and
    whether the neuron spiked.

    state -- The state of the neuron.

    spike_bits -- The input spikes of the timestep.

    weights -- The quantized weight row of the neuron.

    cfg -- The firing configuration.

    mode -- The precision mode of the weights.
    """
    if len(spike_bits) != len(weights):
        raise FanInMismatchError(
            "The neuron has {} weights but got {} spikes".format(
                len(weights),
                len(spike_bits)
            )
        )
    state = leak(state, cfg.leak_shift)
    state = integrate(
        state,
        synaptic_sum(spike_bits, weights, mode),
        cfg.v_clamp
    )
    state, spiked = fire_and_reset(state, cfg)
    return state._replace(t=state.t + 1), spiked


def step_population(v, counts, packed_weights, masks, cfg, mode):
    """
    Runs one timestep of neurons that share the input spikes and
    the firing configuration. Returns three arrays: the membrane
    potentials, the spike counts, and the spikes.

    v -- The membrane potentials.

    counts -- The spike counts.

    packed_weights -- The packed weight rows of the neurons.

    masks -- The raw spike masks of the input.

    cfg -- The firing configuration.

    mode -- The precision mode of the weights.
    """
    if np.shape(packed_weights)[1] != len(masks):
        raise FanInMismatchError(
            "The weights have {} chunks but the input has {}".format(
                np.shape(packed_weights)[1],
                len(masks)
            )
        )
    v = leak_potentials(v, cfg.leak_shift)
    v = np.clip(
        v + accumulate_rows(packed_weights, masks, mode),
        -cfg.v_clamp,
        cfg.v_clamp
    )
    spikes = v >= cfg.threshold
    if cfg.reset_mode == get_subtract_reset_name():
        v = np.where(spikes, v - cfg.threshold, v)
    else:
        v = np.where(spikes, 0, v)
    return v, np.asarray(counts, dtype=np.int64) + spikes, spikes


def read_and_clear_counter(state):
    """
    Reads the spike counter of the neuron and clears it. Returns
    the count and the new state.
    """
    return state.spike_count, state._replace(spike_count=0)
