# Copyright (c) 2026 The Spike Composer Authors
# Licensed under the MIT License

"""
This module contains the symmetric per-layer post-training
quantizer. The weights of a layer are mapped onto the levels
-qmax, ..., qmax with qmax = 2^(b - 1) - 1, so zero stays exact
and two bits give ternary weights. The threshold of the layer is
rescaled by the same scale, which lets the integer neuron track
the floating-point one.
"""

import logging

from collections import namedtuple

import numpy as np

from ..array import create_layer_spec, create_quantized_model

from ..errors import InvalidBitsError, InvalidParameterError

from ..neuron import create_lif_config

from ..packed_arith import get_mode_for_bits

from .float_model import create_float_layer, create_float_model


# The type 'QuantParams' represents the quantization of one
# layer.
#
# bits -- The bit width of the weights.
#
# scale -- The real value of one quantization step.
#
# qmax -- The largest quantized magnitude.
QuantParams = namedtuple("QuantParams", ["bits", "scale", "qmax"])


def get_supported_bits():
    """Gives the bit widths the quantizer supports."""
    return [2, 4, 8]


def get_qmax(bits):
    """Gives the largest magnitude of a weight of the given width."""
    if bits not in get_supported_bits():
        raise InvalidBitsError(
            "{} bits isn't supported; use 2, 4, or 8".format(bits)
        )
    return (1 << (bits - 1)) - 1


def round_half_away_from_zero(x):
    """Rounds to the nearest integer, the halves away from zero."""
    x = np.asarray(x, dtype=np.float64)
    return np.sign(x) * np.floor(np.abs(x) + 0.5)


def _check_weights(weights):
    weights = np.asarray(weights, dtype=np.float64)
    if not weights.size:
        raise InvalidParameterError("Can't quantize an empty layer")
    if not np.all(np.isfinite(weights)):
        raise InvalidParameterError("Can't quantize weights that aren't finite")
    return weights


def get_quant_params(weights, bits):
    """Gives the quantization parameters of the weights."""
    qmax = get_qmax(bits)
    peak = float(np.max(np.abs(_check_weights(weights))))
    return QuantParams(
        bits=bits,
        scale=peak / qmax if peak > 0 else 1.0,
        qmax=qmax
    )


def quantize_layer(weights, bits):
    """
    Quantizes the weights of a layer. Returns the integer weights
    and the scale.

    weights -- The real weight matrix.

    bits -- The bit width, 2, 4, or 8.
    """
    weights = _check_weights(weights)
    params = get_quant_params(weights, bits)
    peak = float(np.max(np.abs(weights)))
    if peak == 0:
        return np.zeros(weights.shape, dtype=np.int64), params.scale
    # Dividing by the peak first keeps exact decimal weights exact.
    q = round_half_away_from_zero(weights * params.qmax / peak)
    q = np.clip(q, -params.qmax, params.qmax).astype(np.int64)
    return q, params.scale


def dequantize_layer(q, scale):
    """Gives the real weights the integer weights stand for."""
    return np.asarray(q, dtype=np.float64) * scale


def rescale_threshold(threshold, scale):
    """Gives the integer threshold that matches a real threshold."""
    if not scale > 0:
        raise InvalidParameterError(
            "The scale must be positive, not {}".format(scale)
        )
    return max(1, int(round_half_away_from_zero(threshold / scale)))


def quantization_error(weights, bits):
    """Gives the mean squared error of quantizing the weights."""
    q, scale = quantize_layer(weights, bits)
    return float(np.mean((dequantize_layer(q, scale) - weights) ** 2))


def quantize_model(model, bits):
    """
    Quantizes every layer of a floating-point model.

    model -- The floating-point model.

    bits -- The bit width of the weights, 2, 4, or 8.
    """
    mode = get_mode_for_bits(bits)
    layers = []
    for index, layer in enumerate(model.layers):
        q, scale = quantize_layer(layer.weights, bits)
        threshold = rescale_threshold(layer.threshold, scale)
        logging.debug(
            "Quantized layer %d to %d bits with the scale %g and the "
            "threshold %d",
            index,
            bits,
            scale,
            threshold
        )
        layers.append(create_layer_spec(
            weights=q,
            scale=scale,
            mode=mode,
            lif=create_lif_config(
                threshold=threshold,
                leak_shift=layer.leak_shift,
                reset_mode=layer.reset_mode
            )
        ))
    return create_quantized_model(
        layers=layers,
        timesteps=model.timesteps,
        encoder=model.encoder
    )


def dequantize_model(model):
    """Gives the floating-point model a quantized model stands for."""
    return create_float_model(
        layers=[create_float_layer(
            weights=dequantize_layer(layer.weights, layer.scale),
            threshold=layer.lif.threshold * layer.scale,
            leak_shift=layer.lif.leak_shift,
            reset_mode=layer.lif.reset_mode
        ) for layer in model.layers],
        timesteps=model.timesteps,
        encoder=model.encoder
    )


def requantize_model(model, bits):
    """Quantizes a quantized model again to another bit width."""
    return quantize_model(dequantize_model(model), bits)
