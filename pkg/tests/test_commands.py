# Copyright (c) 2026 The Spike Composer Authors
# Licensed under the MIT License

"""This module defines the tests for the commands of the program."""

import json

import numpy as np
import pytest

from spike_composer.__main__ import main
from spike_composer.array import create_layer_spec, create_quantized_model
from spike_composer.model_file import \
    format_float_model, format_quantized_model
from spike_composer.neuron import create_lif_config
from spike_composer.packed_arith import get_int8_mode
from spike_composer.quant.float_model import \
    create_float_layer, create_float_model


def _write(path, text):
    path.write_text(text)
    return str(path)


def _float_model_file(tmp_path):
    weights = np.random.default_rng(0).normal(size=(3, 4))
    model = create_float_model([create_float_layer(weights, 1.0, 3)], 8)
    return _write(tmp_path / "float.json", format_float_model(model))


def _model_file(tmp_path, in_dim=4, out_dim=3, name="model.json"):
    weights = np.random.default_rng(1).integers(-20, 100,
                                                size=(out_dim, in_dim))
    layer = create_layer_spec(
        weights,
        0.05,
        get_int8_mode(),
        create_lif_config(120, leak_shift=3)
    )
    model = create_quantized_model([layer], 16)
    return _write(tmp_path / name, format_quantized_model(model))


def _inputs_file(tmp_path, rows, name="inputs.csv"):
    return _write(
        tmp_path / name,
        "".join(",".join(str(v) for v in row) + "\n" for row in rows)
    )


def _random_inputs(tmp_path, samples=6, features=4):
    rows = np.random.default_rng(2).random((samples, features)).round(3)
    return _inputs_file(tmp_path, rows.tolist())


class TestQuantize:
    def test_quantize(self, tmp_path, capsys):
        out = str(tmp_path / "model.json")
        code = main(["quantize", "--model", _float_model_file(tmp_path),
                     "--bits", "8", "--out", out])
        assert code == 0
        node = json.loads((tmp_path / "model.json").read_text())
        assert node["layers"][0]["mode"] == "int8"
        lines = capsys.readouterr().out.splitlines()
        assert lines[0] == \
            "bits,weight_bits,state_bits,total_bytes,ratio_vs_fp32"
        assert lines[1].startswith("8,96,")

    def test_ratios(self, tmp_path, capsys):
        model = _float_model_file(tmp_path)
        ratios = []
        for bits in (2, 4, 8):
            out = str(tmp_path / "model{}.json".format(bits))
            assert main(["quantize", "--model", model, "--bits", str(bits),
                         "--out", out]) == 0
            line = capsys.readouterr().out.splitlines()[-1]
            ratios.append(line.split(",")[-1])
        assert ratios == ["16", "8", "4"]

    def test_to_standard_output(self, tmp_path, capsys):
        assert main(["quantize", "--model", _float_model_file(tmp_path),
                     "--bits", "4"]) == 0
        node = json.loads(capsys.readouterr().out)
        assert node["layers"][0]["mode"] == "int4"

    def test_invalid_bits(self, tmp_path):
        assert main(["quantize", "--model", _float_model_file(tmp_path),
                     "--bits", "3"]) == 3

    def test_missing_file(self, tmp_path):
        assert main(["quantize", "--model",
                     str(tmp_path / "missing.json")]) == 2

    def test_invalid_file(self, tmp_path):
        path = _write(tmp_path / "float.json", "{not json")
        assert main(["quantize", "--model", path]) == 2

    def test_missing_model(self):
        assert main(["quantize"]) == 3


class TestRun:
    def test_silent_inputs(self, tmp_path):
        out = tmp_path / "predictions.csv"
        code = main(["run", "--model", _model_file(tmp_path),
                     "--inputs", _inputs_file(tmp_path, [[0, 0, 0, 0]] * 2),
                     "--out", str(out)])
        assert code == 0
        assert out.read_text() == \
            "sample,predicted,count0,count1,count2\n0,0,0,0,0\n1,0,0,0,0\n"

    def test_outputs(self, tmp_path):
        out = tmp_path / "predictions.csv"
        trace = tmp_path / "trace.csv"
        cost = tmp_path / "cost.json"
        code = main(["run", "--model", _model_file(tmp_path),
                     "--inputs", _random_inputs(tmp_path),
                     "--out", str(out), "--trace", str(trace),
                     "--cost", str(cost), "--verify"])
        assert code == 0
        assert len(out.read_text().splitlines()) == 7
        assert trace.read_text().startswith("sample,timestep,layer,neuron_id\n")
        node = json.loads(cost.read_text())
        assert node["compute_cycles"] == 6 * 16 * 4
        assert node["mode"] == "int8"

    def test_cost_csv(self, tmp_path):
        cost = tmp_path / "cost.csv"
        assert main(["run", "--model", _model_file(tmp_path),
                     "--inputs", _random_inputs(tmp_path),
                     "--out", str(tmp_path / "p.csv"),
                     "--cost", str(cost)]) == 0
        assert cost.read_text().startswith("mode,compute_cycles,")

    def test_reruns_are_identical(self, tmp_path):
        model = _model_file(tmp_path)
        inputs = _random_inputs(tmp_path)
        texts = []
        for name in ("a", "b"):
            out = tmp_path / "{}.csv".format(name)
            trace = tmp_path / "{}.trace.csv".format(name)
            assert main(["run", "--model", model, "--inputs", inputs,
                         "--encoder", "stoch", "--seed", "5",
                         "--out", str(out), "--trace", str(trace)]) == 0
            texts.append((out.read_bytes(), trace.read_bytes()))
        assert texts[0] == texts[1]

    def test_jobs_dont_change_the_output(self, tmp_path):
        model = _model_file(tmp_path)
        inputs = _random_inputs(tmp_path)
        texts = []
        for jobs in ("1", "2"):
            out = tmp_path / "jobs{}.csv".format(jobs)
            assert main(["run", "--jobs", jobs, "--model", model,
                         "--inputs", inputs, "--out", str(out)]) == 0
            texts.append(out.read_text())
        assert texts[0] == texts[1]

    def test_mode_override(self, tmp_path):
        cost = tmp_path / "cost.json"
        assert main(["run", "--model", _model_file(tmp_path),
                     "--inputs", _random_inputs(tmp_path), "--mode", "int2",
                     "--out", str(tmp_path / "p.csv"),
                     "--cost", str(cost), "--verify"]) == 0
        assert json.loads(cost.read_text())["mode"] == "int2"

    def test_shape_mismatch(self, tmp_path):
        assert main(["run", "--model", _model_file(tmp_path),
                     "--inputs", _inputs_file(tmp_path, [[0.5, 0.5]])]) == 4

    def test_input_out_of_range(self, tmp_path):
        assert main(["run", "--model", _model_file(tmp_path),
                     "--inputs",
                     _inputs_file(tmp_path, [[0.5, 0.5, 0.5, 1.5]])]) == 3

    def test_invalid_array(self, tmp_path):
        assert main(["run", "--model", _model_file(tmp_path),
                     "--inputs", _random_inputs(tmp_path),
                     "--rows", "0"]) == 3

    def test_config_file(self, tmp_path):
        out = tmp_path / "predictions.csv"
        config = _write(tmp_path / "run.yaml", "\n".join([
            "model: {}".format(_model_file(tmp_path)),
            "inputs: {}".format(_random_inputs(tmp_path)),
            "array: {rows: 2, cols: 2, fifo_capacity: 1}",
            "encoder: {kind: stoch, seed: 7}",
            "mode: int4",
            "outputs: {{predictions: {}}}".format(out),
            "verify: true",
            ""
        ]))
        assert main(["run", "--config", config]) == 0
        assert len(out.read_text().splitlines()) == 7

    def test_command_line_wins(self, tmp_path):
        config = _write(tmp_path / "run.yaml", "\n".join([
            "model: {}".format(tmp_path / "missing.json"),
            "inputs: {}".format(_random_inputs(tmp_path)),
            ""
        ]))
        out = tmp_path / "p.csv"
        assert main(["run", "--config", config,
                     "--model", _model_file(tmp_path),
                     "--out", str(out)]) == 0
        assert out.exists()

    def test_invalid_config(self, tmp_path):
        config = _write(tmp_path / "run.yaml", "model: [unclosed\n")
        assert main(["run", "--config", config]) == 2
        config = _write(tmp_path / "list.yaml", "- 1\n- 2\n")
        assert main(["run", "--config", config]) == 2

    def test_invalid_seed(self, tmp_path):
        model = _model_file(tmp_path)
        inputs = _random_inputs(tmp_path)
        assert main(["run", "--model", model, "--inputs", inputs,
                     "--encoder", "stoch", "--seed", "-1"]) == 3
        config = _write(tmp_path / "run.yaml", "\n".join([
            "model: {}".format(model),
            "inputs: {}".format(inputs),
            "encoder: {kind: stoch, seed: many}",
            ""
        ]))
        assert main(["run", "--config", config]) == 3

    def test_missing_inputs(self, tmp_path):
        assert main(["run", "--model", _model_file(tmp_path)]) == 3


class TestBench:
    def test_mode_ratios(self, tmp_path, capsys):
        model = _model_file(tmp_path, in_dim=16, out_dim=64)
        assert main(["bench", "--model", model]) == 0
        lines = capsys.readouterr().out.splitlines()
        assert lines[0].endswith(",latency_ratio")
        assert [line.split(",")[0] for line in lines[1:]] == \
            ["int2", "int4", "int8"]
        assert [float(line.split(",")[-1]) for line in lines[1:]] == \
            [1.0, 4.0, 16.0]

    def test_single_mode(self, tmp_path, capsys):
        assert main(["bench", "--model", _model_file(tmp_path),
                     "--mode", "int4"]) == 0
        lines = capsys.readouterr().out.splitlines()
        assert len(lines) == 2
        assert lines[1].startswith("int4,")

    def test_with_inputs(self, tmp_path):
        model = _model_file(tmp_path)
        inputs = _random_inputs(tmp_path)
        texts = []
        for name in ("a", "b"):
            out = tmp_path / "{}.csv".format(name)
            assert main(["bench", "--model", model, "--inputs", inputs,
                         "--fifo", "1", "--out", str(out)]) == 0
            texts.append(out.read_bytes())
        assert texts[0] == texts[1]
        assert len(texts[0].decode().splitlines()) == 4

    def test_missing_model(self):
        assert main(["bench"]) == 3


class TestTrace:
    def test_trace(self, tmp_path):
        out = tmp_path / "trace.csv"
        assert main(["trace", "--model", _model_file(tmp_path),
                     "--inputs", _random_inputs(tmp_path), "--sample", "2",
                     "--out", str(out)]) == 0
        lines = out.read_text().splitlines()
        assert lines[0] == "timestep,layer,neuron_id"
        for line in lines[1:]:
            timestep, layer, neuron_id = (int(v) for v in line.split(","))
            assert 0 <= timestep < 16
            assert layer == 0
            assert 0 <= neuron_id < 3

    def test_sample_matches_the_run(self, tmp_path):
        model = _model_file(tmp_path)
        inputs = _inputs_file(tmp_path, [[0.5] * 4] * 3)
        run_trace = tmp_path / "run.trace.csv"
        out = tmp_path / "trace.csv"
        assert main(["run", "--model", model, "--inputs", inputs,
                     "--encoder", "stoch", "--seed", "3",
                     "--out", str(tmp_path / "p.csv"),
                     "--trace", str(run_trace)]) == 0
        assert main(["trace", "--model", model, "--inputs", inputs,
                     "--encoder", "stoch", "--seed", "3", "--sample", "2",
                     "--out", str(out)]) == 0
        expected = [
            line.split(",", 1)[1]
            for line in run_trace.read_text().splitlines()[1:]
            if line.startswith("2,")
        ]
        assert expected
        assert out.read_text().splitlines()[1:] == expected

    def test_no_such_sample(self, tmp_path):
        assert main(["trace", "--model", _model_file(tmp_path),
                     "--inputs", _random_inputs(tmp_path),
                     "--sample", "6"]) == 3


class TestTrainAndSweep:
    def test_train_and_sweep(self, tmp_path):
        model = tmp_path / "float.json"
        test = tmp_path / "test.csv"
        sweep = tmp_path / "sweep.csv"
        assert main(["train", "--samples", "60", "--features", "2",
                     "--hidden", "8", "--epochs", "2", "--timesteps", "8",
                     "--out", str(model), "--test-out", str(test)]) == 0
        assert len(test.read_text().splitlines()) == 30
        assert main(["sweep", "--model", str(model), "--data", str(test),
                     "--bits", "8", "2", "--out", str(sweep)]) == 0
        lines = sweep.read_text().splitlines()
        assert lines[0] == "precision,bits,accuracy,total_bytes,ratio_vs_fp32"
        assert [line.split(",")[0] for line in lines[1:]] == \
            ["fp32", "int8", "int2"]

    def test_too_few_samples(self, tmp_path):
        assert main(["train", "--samples", "2", "--classes", "3",
                     "--out", str(tmp_path / "float.json")]) == 3

    def test_invalid_seed(self, tmp_path):
        assert main(["train", "--samples", "30", "--seed", "-1",
                     "--out", str(tmp_path / "float.json")]) == 3

    def test_sweep_shape_mismatch(self, tmp_path):
        data = _write(tmp_path / "data.csv", "0,0.5,0.5\n1,0.2,0.8\n")
        assert main(["sweep", "--model", _float_model_file(tmp_path),
                     "--data", data]) == 4


def test_no_command():
    with pytest.raises(SystemExit):
        main([])
