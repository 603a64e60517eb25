# Copyright (c) 2026 The Spike Composer Authors
# Licensed under the MIT License

"""This module defines the tests for the accuracy sweeps."""

import numpy as np

from spike_composer.array import run_inference
from spike_composer.encode import encode
from spike_composer.quant.accuracy import \
    evaluate_quantized_model, format_sweep_csv, sweep_precisions
from spike_composer.quant.dataset import split_dataset
from spike_composer.quant.quantizer import quantize_model
from spike_composer.quant.trainer import train_reference_model


def test_accuracy_degrades_gracefully(separable_dataset):
    data = separable_dataset(1100, classes=3, seed=2)
    train, test = split_dataset(data, held_out=0.5, seed=2)
    assert len(test.labels) >= 500
    model = train_reference_model(train, seed=0)
    rows = sweep_precisions(model, test)
    accuracy = {row.precision: row.accuracy for row in rows}
    assert [row.precision for row in rows] == ["fp32", "int8", "int4", "int2"]
    assert abs(accuracy["int8"] - accuracy["fp32"]) <= 0.01
    assert accuracy["fp32"] >= accuracy["int8"] - 0.02
    assert accuracy["int8"] >= accuracy["int4"] - 0.02
    assert accuracy["int4"] >= accuracy["int2"] - 0.02
    assert [row.ratio_vs_fp32 for row in rows] == [1, 4, 8, 16]


def test_batch_evaluation_matches_the_array(separable_dataset):
    data = separable_dataset(30)
    model = quantize_model(train_reference_model(data, seed=1), 4)
    predicted = [
        run_inference(model, encode(x, model.encoder)).predicted
        for x in data.features
    ]
    expected = float(np.mean(np.array(predicted) == data.labels))
    assert evaluate_quantized_model(model, data) == expected


def test_sweep_csv(separable_dataset):
    data = separable_dataset(30)
    model = train_reference_model(data, seed=0)
    lines = format_sweep_csv(sweep_precisions(model, data, [4])).splitlines()
    assert lines[0] == "precision,bits,accuracy,total_bytes,ratio_vs_fp32"
    assert lines[1].startswith("fp32,32,")
    assert lines[2].startswith("int4,4,")
    assert lines[2].endswith(",8")
