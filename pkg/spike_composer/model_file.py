# Copyright (c) 2026 The Spike Composer Authors
# Licensed under the MIT License

"""
This module reads and writes the JSON files of the quantized
models, the floating-point models, and the array configurations.

A quantized model file has the form

    {"timesteps": T, "encoder": {"kind": "det", "seed": 0},
     "layers": [{"in": n, "out": m, "mode": "int4", "scale": s,
                 "threshold": t, "leak_shift": k, "reset": "hard",
                 "weights": [[...], ...]}]}

with the integer weights row-major. A floating-point model file
has the real weights under "weights_f32", a real threshold, and
no mode or scale.
"""

import json
import logging

import numpy as np

from .array import create_array_config, create_layer_spec, \
    create_quantized_model

from .encode import create_encoder_config

from .errors import ComposerError, ConfigParseError, ModelParseError

from .neuron import create_lif_config, get_default_leak_shift

from .packed_arith import parse_precision_mode

from .quant.float_model import create_float_layer, create_float_model

from .support.reset_names import get_hard_reset_name


def _load(text, error_type):
    try:
        node = json.loads(text)
    except ValueError as e:
        raise error_type("The file isn't valid JSON: {}".format(e))
    if not isinstance(node, dict):
        raise error_type("The file must contain a JSON object")
    return node


def _check_size(layer_node, weights, index):
    if "in" in layer_node and layer_node["in"] != weights.shape[1] \
            or "out" in layer_node and layer_node["out"] != weights.shape[0]:
        raise ModelParseError(
            "The weights of layer {} are shaped {} unlike its 'in' and "
            "'out'".format(index, weights.shape)
        )


def _parse_encoder(node, timesteps):
    encoder_node = node.get("encoder", {})
    return create_encoder_config(
        kind=encoder_node.get("kind"),
        timesteps=timesteps,
        seed=encoder_node.get("seed", 0)
    )


def parse_quantized_model(text):
    """
    Parses a quantized model file. The layers are checked when
    the model is created, and the errors of those checks pass
    through as they are.
    """
    node = _load(text, ModelParseError)
    try:
        timesteps = int(node["timesteps"])
        layers = []
        for index, layer_node in enumerate(node["layers"]):
            weights = np.asarray(layer_node["weights"])
            if weights.size and weights.dtype.kind not in "iu":
                raise ModelParseError(
                    "The weights of layer {} must be integers".format(index)
                )
            layer = create_layer_spec(
                weights=weights,
                scale=float(layer_node["scale"]),
                mode=parse_precision_mode(layer_node["mode"]),
                lif=create_lif_config(
                    threshold=layer_node["threshold"],
                    leak_shift=layer_node.get("leak_shift"),
                    reset_mode=layer_node.get("reset", get_hard_reset_name()),
                    v_clamp=layer_node.get("v_clamp")
                )
            )
            _check_size(layer_node, layer.weights, index)
            layers.append(layer)
        encoder = _parse_encoder(node, timesteps)
    except ComposerError:
        raise
    except (KeyError, TypeError, ValueError) as e:
        raise ModelParseError("Invalid quantized model: {!r}".format(e))
    logging.debug("Parsed a quantized model of %d layers", len(layers))
    return create_quantized_model(layers, timesteps, encoder)


def _encoder_node(encoder):
    return {"kind": encoder.kind, "seed": encoder.seed}


def format_quantized_model(model):
    """Formats a quantized model as JSON."""
    return json.dumps({
        "timesteps": model.timesteps,
        "encoder": _encoder_node(model.encoder),
        "layers": [{
            "in": layer.in_dim,
            "out": layer.out_dim,
            "mode": layer.mode.name,
            "scale": layer.scale,
            "threshold": layer.lif.threshold,
            "leak_shift": layer.lif.leak_shift,
            "reset": layer.lif.reset_mode,
            "v_clamp": layer.lif.v_clamp,
            "weights": layer.weights.tolist()
        } for layer in model.layers]
    }, indent=2) + "\n"


def parse_float_model(text):
    """Parses a floating-point model file."""
    node = _load(text, ModelParseError)
    try:
        timesteps = int(node["timesteps"])
        layers = []
        for index, layer_node in enumerate(node["layers"]):
            layer = create_float_layer(
                weights=layer_node["weights_f32"],
                threshold=float(layer_node["threshold"]),
                leak_shift=int(layer_node.get(
                    "leak_shift",
                    get_default_leak_shift()
                )),
                reset_mode=layer_node.get("reset", get_hard_reset_name())
            )
            _check_size(layer_node, layer.weights, index)
            layers.append(layer)
        encoder = _parse_encoder(node, timesteps)
    except ComposerError:
        raise
    except (KeyError, TypeError, ValueError) as e:
        raise ModelParseError("Invalid floating-point model: {!r}".format(e))
    return create_float_model(layers, timesteps, encoder)


def format_float_model(model):
    """Formats a floating-point model as JSON."""
    return json.dumps({
        "timesteps": model.timesteps,
        "encoder": _encoder_node(model.encoder),
        "layers": [{
            "in": layer.weights.shape[1],
            "out": layer.weights.shape[0],
            "threshold": layer.threshold,
            "leak_shift": layer.leak_shift,
            "reset": layer.reset_mode,
            "weights_f32": layer.weights.tolist()
        } for layer in model.layers]
    }, indent=2) + "\n"


def parse_array_config(text):
    """Parses an array configuration file."""
    node = _load(text, ConfigParseError)
    try:
        return create_array_config(
            rows=node.get("rows"),
            cols=node.get("cols"),
            fifo_capacity=node.get("fifo_capacity")
        )
    except (TypeError, ValueError) as e:
        raise ConfigParseError("Invalid array configuration: {!r}".format(e))
