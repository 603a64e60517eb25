# Copyright (c) 2026 The Spike Composer Authors
# Licensed under the MIT License

"""
This module contains the two-dimensional array of neuron compute
engines, the ring FIFOs between the layers, and the timestep
scheduler that runs a quantized network over a spike train.

The scheduler runs the timesteps in the outer loop and the layers
in the inner loop, so the membrane potentials of every layer stay
resident across the timesteps. A layer is mapped onto the array in
waves of at most rows x cols neurons; within a wave every engine
owns one neuron. The input of every layer passes through its own
ring FIFO as spike events. Neither the array shape nor the FIFO
capacities change the output of a run, only the schedule and the
stall counters.
"""

import logging

from collections import namedtuple

import numpy as np

from .encode import create_encoder_config, decode_counts

from .errors import DimensionMismatchError, InvalidParameterError, \
    ShapeMismatchError

from .neuron import SpikeEvent, step_population

from .packed_arith import \
    get_chunk_count, get_value_range, pack_rows, pack_spike_masks

from .support.fifo_status import get_accepted_status, get_stalled_status


# The type 'ArrayConfig' represents the shape of the array and
# the depth of the FIFOs.
ArrayConfig = namedtuple("ArrayConfig", ["rows", "cols", "fifo_capacity"])

# The type 'LayerSpec' represents one dense layer of a quantized
# network.
#
# in_dim -- The fan-in of the neurons.
#
# out_dim -- The number of neurons.
#
# weights -- The integer weights shaped (out_dim, in_dim).
#
# scale -- The real value of one weight step.
#
# mode -- The precision mode of the weights.
#
# lif -- The firing configuration of the neurons.
LayerSpec = namedtuple("LayerSpec", [
    "in_dim",
    "out_dim",
    "weights",
    "scale",
    "mode",
    "lif"
])

# The type 'QuantizedModel' is a layered network ready for the
# array.
QuantizedModel = namedtuple("QuantizedModel", [
    "layers",
    "timesteps",
    "encoder"
])

# The type 'Schedule' represents the mapping of a layer onto the
# array.
#
# waves -- The neuron ranges as (start, stop) pairs.
#
# ops_per_neuron -- The packed operations per neuron and timestep.
Schedule = namedtuple("Schedule", ["waves", "ops_per_neuron"])

# The type 'RingFifo' is a bounded ring buffer of spike events.
#
# slots -- The storage of the ring.
#
# head -- The slot of the oldest entry.
#
# occupancy -- The number of entries.
RingFifo = namedtuple("RingFifo", [
    "capacity",
    "slots",
    "head",
    "occupancy",
    "total_stall_cycles",
    "pushes",
    "pops",
    "max_occupancy"
])

# The type 'FifoStats' contains the counters of a FIFO after a run.
FifoStats = namedtuple("FifoStats", [
    "pushes",
    "pops",
    "stall_cycles",
    "max_occupancy"
])

# The type 'NetworkState' is the state of a network between two
# timesteps.
#
# packed -- The packed weights of every layer.
#
# potentials -- The membrane potentials of every layer.
#
# counts -- The spike counters of every layer.
#
# fifos -- The input FIFO of every layer.
#
# packed_ops -- The number of packed operations executed.
NetworkState = namedtuple("NetworkState", [
    "model",
    "array_cfg",
    "packed",
    "potentials",
    "counts",
    "fifos",
    "t",
    "packed_ops"
])

# The type 'InferenceResult' is the outcome of one inference.
InferenceResult = namedtuple("InferenceResult", [
    "predicted",
    "counts",
    "trace",
    "fifo_stats",
    "layer_rasters",
    "packed_ops"
])


def get_default_rows():
    """Gives the default number of rows of the array."""
    return 8


def get_default_cols():
    """Gives the default number of columns of the array."""
    return 8


def get_default_fifo_capacity():
    """Gives the default number of entries in a FIFO."""
    return 16


def create_array_config(rows=None, cols=None, fifo_capacity=None):
    """Creates a checked array configuration."""
    config = ArrayConfig(
        rows=get_default_rows() if rows is None else int(rows),
        cols=get_default_cols() if cols is None else int(cols),
        fifo_capacity=get_default_fifo_capacity() if fifo_capacity is None
        else int(fifo_capacity)
    )
    if config.rows < 1 or config.cols < 1:
        raise InvalidParameterError(
            "The array must have at least one row and column, not {}x{}"
            .format(config.rows, config.cols)
        )
    if config.fifo_capacity < 1:
        raise InvalidParameterError(
            "A FIFO must have at least one entry, not {}".format(
                config.fifo_capacity
            )
        )
    return config


def get_nce_count(array_cfg):
    """Gives the number of compute engines in the array."""
    return array_cfg.rows * array_cfg.cols


def create_layer_spec(weights, scale, mode, lif):
    """
    Creates a checked layer.

    weights -- The integer weight matrix shaped (out, in).

    scale -- The positive real value of one weight step.

    mode -- The precision mode of the weights.

    lif -- The firing configuration of the neurons.
    """
    weights = np.asarray(weights, dtype=np.int64)
    if weights.ndim != 2:
        raise DimensionMismatchError("The weights must be a matrix")
    low, high = get_value_range(mode)
    if weights.size and (weights.min() < low or weights.max() > high):
        raise InvalidParameterError(
            "The weights of a layer in mode {} must be within [{}, {}]"
            .format(mode.name, low, high)
        )
    if not scale > 0:
        raise InvalidParameterError(
            "The scale must be positive, not {}".format(scale)
        )
    return LayerSpec(
        in_dim=weights.shape[1],
        out_dim=weights.shape[0],
        weights=weights,
        scale=float(scale),
        mode=mode,
        lif=lif
    )


def create_quantized_model(layers, timesteps, encoder=None):
    """
    Creates a checked quantized model. The fan-in of every layer
    must match the width of the previous layer.
    """
    layers = tuple(layers)
    for index in range(1, len(layers)):
        if layers[index].in_dim != layers[index - 1].out_dim:
            raise DimensionMismatchError(
                "Layer {} has {} inputs but layer {} has {} neurons".format(
                    index,
                    layers[index].in_dim,
                    index - 1,
                    layers[index - 1].out_dim
                )
            )
    if timesteps < 1:
        raise InvalidParameterError(
            "There must be at least one timestep, not {}".format(timesteps)
        )
    if encoder is None:
        encoder = create_encoder_config(timesteps=timesteps)
    return QuantizedModel(
        layers=layers,
        timesteps=int(timesteps),
        encoder=encoder._replace(timesteps=int(timesteps))
    )


def map_layer(layer, array_cfg):
    """
    Maps a layer onto the array. The neurons are split into
    sequential waves of at most one neuron per engine, assigned
    in row-major order, and the fan-in of each neuron is split
    into chunks of lane count inputs.
    """
    engines = get_nce_count(array_cfg)
    waves = tuple(
        (start, min(start + engines, layer.out_dim))
        for start in range(0, layer.out_dim, engines)
    )
    return Schedule(
        waves=waves,
        ops_per_neuron=get_chunk_count(layer.in_dim, layer.mode)
    )


def create_ring_fifo(capacity):
    """Creates an empty ring FIFO."""
    return RingFifo(
        capacity=capacity,
        slots=(None,) * capacity,
        head=0,
        occupancy=0,
        total_stall_cycles=0,
        pushes=0,
        pops=0,
        max_occupancy=0
    )


def fifo_push(fifo, item):
    """
    Pushes an item into the FIFO. A push onto a full FIFO stalls
    the producer for a cycle and the item isn't stored. Returns
    the new FIFO and the status of the push.
    """
    if fifo.occupancy == fifo.capacity:
        return fifo._replace(
            total_stall_cycles=fifo.total_stall_cycles + 1
        ), get_stalled_status()
    slots = list(fifo.slots)
    slots[(fifo.head + fifo.occupancy) % fifo.capacity] = item
    occupancy = fifo.occupancy + 1
    return fifo._replace(
        slots=tuple(slots),
        occupancy=occupancy,
        pushes=fifo.pushes + 1,
        max_occupancy=max(fifo.max_occupancy, occupancy)
    ), get_accepted_status()


def fifo_pop(fifo):
    """
    Pops the oldest item from the FIFO. A pop from an empty FIFO
    stalls the consumer for a cycle. Returns the new FIFO, the
    item or None, and the status of the pop.
    """
    if fifo.occupancy == 0:
        return fifo._replace(
            total_stall_cycles=fifo.total_stall_cycles + 1
        ), None, get_stalled_status()
    item = fifo.slots[fifo.head]
    slots = list(fifo.slots)
    slots[fifo.head] = None
    return fifo._replace(
        slots=tuple(slots),
        head=(fifo.head + 1) % fifo.capacity,
        occupancy=fifo.occupancy - 1,
        pops=fifo.pops + 1
    ), item, get_accepted_status()


def get_fifo_stats(fifo):
    """Gives the counters of the FIFO."""
    return FifoStats(
        pushes=fifo.pushes,
        pops=fifo.pops,
        stall_cycles=fifo.total_stall_cycles,
        max_occupancy=fifo.max_occupancy
    )


def _transfer_spikes(fifo, spike_bits):
    """
    Moves the spikes of a timestep through the FIFO as neuron ids.
    The producer pushes the events in order; when the FIFO is
    full, the consumer drains one event during the stall and the
    push is retried. The consumer drains the rest at the end.
    Returns the new FIFO and the spikes the consumer received.
    """
    delivered = np.zeros(len(spike_bits), dtype=np.uint8)
    for neuron_id in np.flatnonzero(spike_bits):
        fifo, status = fifo_push(fifo, int(neuron_id))
        while status == get_stalled_status():
            fifo, item, _ = fifo_pop(fifo)
            delivered[item] = 1
            fifo, status = fifo_push(fifo, int(neuron_id))
    while fifo.occupancy:
        fifo, item, _ = fifo_pop(fifo)
        delivered[item] = 1
    return fifo, delivered


def compile_model(model):
    """Packs the weights of every layer of the model."""
    return tuple(pack_rows(layer.weights, layer.mode) for layer in model.layers)


def create_network_state(model, array_cfg, packed=None):
    """
    Creates the state of a network before its first timestep.

    model -- The quantized model.

    array_cfg -- The configuration of the array.

    packed -- The packed weights from 'compile_model', if they
    have been computed already.
    """
    return NetworkState(
        model=model,
        array_cfg=array_cfg,
        packed=compile_model(model) if packed is None else packed,
        potentials=tuple(
            np.zeros(layer.out_dim, dtype=np.int64) for layer in model.layers
        ),
        counts=tuple(
            np.zeros(layer.out_dim, dtype=np.int64) for layer in model.layers
        ),
        fifos=tuple(
            create_ring_fifo(array_cfg.fifo_capacity) for _ in model.layers
        ),
        t=0,
        packed_ops=0
    )


def run_timestep(state, layer_idx, input_spikes):
    """
    Runs one timestep of one layer. Every neuron of the layer
    steps once, wave by wave. Returns the new network state and
    the output spikes of the layer.

    state -- The state of the network.

    layer_idx -- The index of the layer.

    input_spikes -- The spikes arriving at the layer.
    """
    layer = state.model.layers[layer_idx]
    input_spikes = np.asarray(input_spikes, dtype=np.uint8).ravel()
    if input_spikes.size != layer.in_dim:
        raise DimensionMismatchError(
            "Layer {} has {} inputs but got {} spikes".format(
                layer_idx,
                layer.in_dim,
                input_spikes.size
            )
        )
    fifo, delivered = _transfer_spikes(state.fifos[layer_idx], input_spikes)
    masks = pack_spike_masks(delivered, layer.mode)
    schedule = map_layer(layer, state.array_cfg)
    potentials = state.potentials[layer_idx].copy()
    counts = state.counts[layer_idx].copy()
    output = np.zeros(layer.out_dim, dtype=np.uint8)
    packed = state.packed[layer_idx]
    for start, stop in schedule.waves:
        v, c, spikes = step_population(
            potentials[start:stop],
            counts[start:stop],
            packed[start:stop],
            masks,
            layer.lif,
            layer.mode
        )
        potentials[start:stop] = v
        counts[start:stop] = c
        output[start:stop] = spikes
    return state._replace(
        potentials=_replace_at(state.potentials, layer_idx, potentials),
        counts=_replace_at(state.counts, layer_idx, counts),
        fifos=_replace_at(state.fifos, layer_idx, fifo),
        packed_ops=state.packed_ops
        + layer.out_dim * schedule.ops_per_neuron
    ), output


def _replace_at(items, index, value):
    return items[:index] + (value,) + items[index + 1:]


def run_inference(model, spike_train, array_cfg=None, record_trace=False):
    """
    Runs an inference over the whole spike train. The predicted
    class is the output neuron with the most spikes, the lowest
    index winning a tie.

    model -- The quantized model.

    spike_train -- The encoded input.

    array_cfg -- The configuration of the array.

    record_trace -- Whether the spike events are recorded.
    """
    if array_cfg is None:
        array_cfg = create_array_config()
    if not model.layers:
        raise DimensionMismatchError("The model has no layers")
    data = np.asarray(spike_train.data, dtype=np.uint8)
    expected = (model.timesteps, model.layers[0].in_dim)
    if data.shape != expected:
        raise ShapeMismatchError(
            "The spike train is shaped {} but the model takes {}".format(
                data.shape,
                expected
            )
        )
    state = create_network_state(model, array_cfg)
    rasters = [
        np.zeros((data.shape[0], layer.out_dim), dtype=np.uint8)
        for layer in model.layers
    ]
    trace = []
    for t in range(data.shape[0]):
        spikes = data[t]
        for layer_idx in range(len(model.layers)):
            state, spikes = run_timestep(state, layer_idx, spikes)
            rasters[layer_idx][t] = spikes
            if record_trace:
                trace.extend(
                    SpikeEvent(neuron_id=int(n), timestep=t, layer=layer_idx)
                    for n in np.flatnonzero(spikes)
                )
        state = state._replace(t=state.t + 1)
    fifo_stats = tuple(get_fifo_stats(f) for f in state.fifos)
    logging.debug(
        "Ran %d timesteps with %d packed operations and %d stall cycles",
        state.t,
        state.packed_ops,
        sum(s.stall_cycles for s in fifo_stats)
    )
    counts = state.counts[-1]
    return InferenceResult(
        predicted=decode_counts(counts),
        counts=tuple(int(c) for c in counts),
        trace=tuple(trace),
        fifo_stats=fifo_stats,
        layer_rasters=tuple(rasters),
        packed_ops=state.packed_ops
    )
