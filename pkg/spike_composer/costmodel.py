# Copyright (c) 2026 The Spike Composer Authors
# Licensed under the MIT License

"""
This module contains the analytic latency and energy model of an
inference. Every compute engine executes one packed operation per
cycle and the cycle time is the critical-path delay of an engine.
The stall cycles aren't modelled but taken from the FIFO counters
of a functional run.
"""

import json

from collections import namedtuple

from .array import get_nce_count, map_layer

from .errors import InvalidParameterError

from .packed_arith import get_precision_modes


# The type 'CostParams' contains the calibration of the model.
#
# t_op -- The time of a packed operation in seconds.
#
# p_sys -- The power of the whole system in watts.
#
# p_nce -- The power of one compute engine in watts.
CostParams = namedtuple("CostParams", ["t_op", "p_sys", "p_nce"])

# The type 'LayerCost' is the share of one layer in a report.
LayerCost = namedtuple("LayerCost", [
    "layer",
    "waves",
    "ops_per_neuron",
    "compute_cycles",
    "stall_cycles"
])

# The type 'CostReport' is the estimate of one run.
#
# mode -- The name of the precision mode the cycles are counted
# in, or 'mixed'.
#
# energy_nce_j -- The energy of the compute engines alone.
CostReport = namedtuple("CostReport", [
    "mode",
    "compute_cycles",
    "stall_cycles",
    "total_cycles",
    "latency_s",
    "energy_j",
    "energy_nce_j",
    "layers"
])


def get_default_t_op():
    """Gives the critical-path delay of an engine in seconds."""
    return 0.39e-9


def get_default_p_sys():
    """Gives the power of the system in watts."""
    return 0.54


def get_default_p_nce():
    """Gives the power of one engine in watts."""
    return 4.2e-3


def create_cost_params(t_op=None, p_sys=None, p_nce=None):
    """Creates checked cost parameters."""
    params = CostParams(
        t_op=get_default_t_op() if t_op is None else float(t_op),
        p_sys=get_default_p_sys() if p_sys is None else float(p_sys),
        p_nce=get_default_p_nce() if p_nce is None else float(p_nce)
    )
    for name, value in params._asdict().items():
        if not value > 0:
            raise InvalidParameterError(
                "The cost parameter {} must be positive, not {}".format(
                    name,
                    value
                )
            )
    return params


def _mode_label(model, mode):
    if mode is not None:
        return mode.name
    names = {layer.mode.name for layer in model.layers}
    if len(names) == 1:
        return names.pop()
    return "mixed" if names else "none"


def estimate(
    model,
    array_cfg,
    fifo_stats=None,
    params=None,
    mode=None,
    inferences=1
):
    """
    Estimates the cost of running the model.

    model -- The quantized model.

    array_cfg -- The configuration of the array.

    fifo_stats -- The FIFO counters of the run, one per layer, or
    None for an ideal run without stalls.

    params -- The calibration of the model.

    mode -- The precision mode to count the cycles in instead of
    the modes of the layers.

    inferences -- The number of inferences the FIFO counters
    cover.
    """
    if params is None:
        params = create_cost_params()
    layers = []
    for index, layer in enumerate(model.layers):
        if mode is not None:
            layer = layer._replace(mode=mode)
        schedule = map_layer(layer, array_cfg)
        layers.append(LayerCost(
            layer=index,
            waves=len(schedule.waves),
            ops_per_neuron=schedule.ops_per_neuron,
            compute_cycles=inferences * model.timesteps
            * len(schedule.waves) * schedule.ops_per_neuron,
            stall_cycles=fifo_stats[index].stall_cycles if fifo_stats else 0
        ))
    compute = sum(l.compute_cycles for l in layers)
    stalls = sum(l.stall_cycles for l in layers)
    latency = (compute + stalls) * params.t_op
    return CostReport(
        mode=_mode_label(model, mode),
        compute_cycles=compute,
        stall_cycles=stalls,
        total_cycles=compute + stalls,
        latency_s=latency,
        energy_j=latency * params.p_sys,
        energy_nce_j=latency * params.p_nce * get_nce_count(array_cfg),
        layers=tuple(layers)
    )


def compare_modes(model, array_cfg, fifo_stats=None, params=None, modes=None):
    """
    Estimates the cost of the model in every precision mode.
    Returns a report per mode.
    """
    modes = get_precision_modes() if modes is None else modes
    return [
        estimate(model, array_cfg, fifo_stats, params, mode)
        for mode in modes
    ]


def _cost_row(report):
    return "{},{},{},{:.9g},{:.9g}".format(
        report.mode,
        report.compute_cycles,
        report.stall_cycles,
        report.latency_s * 1e3,
        report.energy_j * 1e3
    )


def format_cost_csv(reports):
    """Formats cost reports as CSV with a header."""
    lines = ["mode,compute_cycles,stall_cycles,latency_ms,energy_mj"]
    lines.extend(_cost_row(r) for r in reports)
    return "\n".join(lines) + "\n"


def format_comparison_csv(reports):
    """
    Formats cost reports as CSV with the latency of every report
    relative to the smallest latency of the table.
    """
    lowest = min((r.latency_s for r in reports), default=0.0)
    lines = [
        "mode,compute_cycles,stall_cycles,latency_ms,energy_mj,latency_ratio"
    ]
    for report in reports:
        ratio = report.latency_s / lowest if lowest else 1.0
        lines.append("{},{:.6g}".format(_cost_row(report), ratio))
    return "\n".join(lines) + "\n"


def format_cost_json(report):
    """Formats a cost report with its per-layer breakdown as JSON."""
    node = report._asdict()
    node["layers"] = [l._asdict() for l in report.layers]
    return json.dumps(node, indent=2) + "\n"
