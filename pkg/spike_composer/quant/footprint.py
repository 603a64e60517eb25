# Copyright (c) 2026 The Spike Composer Authors
# Licensed under the MIT License

"""
This module accounts for the memory a network needs for its
weights and its neuron state.
"""

import json

from collections import namedtuple

from ..errors import InvalidBitsError


# The type 'FootprintReport' represents the memory footprint of a
# network.
#
# bits -- The bit width of a weight.
#
# weight_bits -- The bits of the weight storage.
#
# state_bits -- The bits of the membrane potentials.
#
# total_bytes -- The bytes of the whole storage.
#
# ratio_vs_fp32 -- How many times smaller the weight storage is
# than with 32-bit floats.
FootprintReport = namedtuple("FootprintReport", [
    "bits",
    "weight_bits",
    "state_bits",
    "total_bytes",
    "ratio_vs_fp32"
])


def get_state_bits():
    """Gives the width of a membrane potential register."""
    return 32


def get_float_bits():
    """Gives the width of a floating-point weight."""
    return 32


def footprint(model, bits, include_state=True):
    """
    Computes the memory footprint of a model.

    model -- A quantized or a floating-point model.

    bits -- The bit width of a weight: 2, 4, 8, or 32 for the
    floating-point baseline.

    include_state -- Whether the membrane potentials are counted.
    """
    if bits not in (2, 4, 8, get_float_bits()):
        raise InvalidBitsError(
            "{} bits isn't supported; use 2, 4, 8, or {}".format(
                bits,
                get_float_bits()
            )
        )
    params = sum(layer.weights.size for layer in model.layers)
    neurons = sum(layer.weights.shape[0] for layer in model.layers)
    weight_bits = params * bits
    state_bits = neurons * get_state_bits() if include_state else 0
    return FootprintReport(
        bits=bits,
        weight_bits=weight_bits,
        state_bits=state_bits,
        total_bytes=-(-(weight_bits + state_bits) // 8),
        ratio_vs_fp32=get_float_bits() / bits
    )


def get_footprint_csv_header():
    return "bits,weight_bits,state_bits,total_bytes,ratio_vs_fp32"


def format_footprint_csv(reports):
    """Formats footprint reports as CSV with a header."""
    lines = [get_footprint_csv_header()]
    for report in reports:
        lines.append("{},{},{},{},{:g}".format(
            report.bits,
            report.weight_bits,
            report.state_bits,
            report.total_bytes,
            report.ratio_vs_fp32
        ))
    return "\n".join(lines) + "\n"


def format_footprint_json(report):
    """Formats a footprint report as JSON."""
    return json.dumps(report._asdict(), indent=2) + "\n"
