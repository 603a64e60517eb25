# Copyright (c) 2026 The Spike Composer Authors
# Licensed under the MIT License

"""
This module measures the trade-off between the accuracy and the
memory footprint of a network across the precisions.
"""

import logging

from collections import namedtuple

import numpy as np

from ..encode import encode_batch

from ..reference import simulate_quantized_batch

from .float_model import simulate_float_batch

from .footprint import footprint, get_float_bits

from .quantizer import quantize_model


# The type 'SweepRow' is one precision of an accuracy sweep.
#
# precision -- The name of the precision, 'fp32' or 'int<b>'.
SweepRow = namedtuple("SweepRow", [
    "precision",
    "bits",
    "accuracy",
    "total_bytes",
    "ratio_vs_fp32"
])


def get_sweep_bits():
    """Gives the default bit widths of a sweep, the widest first."""
    return [8, 4, 2]


def _accuracy(counts, labels):
    if not len(labels):
        return 0.0
    # The lowest index wins a tie as in the readout of the array.
    predicted = np.argmax(counts, axis=1)
    return float(np.mean(predicted == labels))


def evaluate_float_model(model, dataset):
    """Gives the accuracy of a floating-point model on a dataset."""
    trains = encode_batch(dataset.features, model.encoder)
    return _accuracy(simulate_float_batch(model, trains), dataset.labels)


def evaluate_quantized_model(model, dataset):
    """Gives the accuracy of a quantized model on a dataset."""
    trains = encode_batch(dataset.features, model.encoder)
    return _accuracy(simulate_quantized_batch(model, trains), dataset.labels)


def sweep_precisions(model, dataset, bits=None):
    """
    Evaluates a floating-point model and its quantized versions.
    Returns a row for the floating-point baseline followed by a
    row per bit width.

    model -- The floating-point model.

    dataset -- The evaluation set.

    bits -- The bit widths to quantize to.
    """
    bits = get_sweep_bits() if bits is None else list(bits)
    report = footprint(model, get_float_bits())
    rows = [SweepRow(
        precision="fp32",
        bits=get_float_bits(),
        accuracy=evaluate_float_model(model, dataset),
        total_bytes=report.total_bytes,
        ratio_vs_fp32=report.ratio_vs_fp32
    )]
    for b in bits:
        quantized = quantize_model(model, b)
        report = footprint(quantized, b)
        rows.append(SweepRow(
            precision="int{}".format(b),
            bits=b,
            accuracy=evaluate_quantized_model(quantized, dataset),
            total_bytes=report.total_bytes,
            ratio_vs_fp32=report.ratio_vs_fp32
        ))
    for row in rows:
        logging.debug(
            "The accuracy at %s is %.4f",
            row.precision,
            row.accuracy
        )
    return rows


def format_sweep_csv(rows):
    """Formats the rows of a sweep as CSV with a header."""
    lines = ["precision,bits,accuracy,total_bytes,ratio_vs_fp32"]
    for row in rows:
        lines.append("{},{},{:.4f},{},{:g}".format(
            row.precision,
            row.bits,
            row.accuracy,
            row.total_bytes,
            row.ratio_vs_fp32
        ))
    return "\n".join(lines) + "\n"
