# Copyright (c) 2026 The Spike Composer Authors
# Licensed under the MIT License

"""This module defines the tests for the cost model."""

import json

import numpy as np
import pytest

from spike_composer import costmodel
from spike_composer.array import \
    FifoStats, create_array_config, create_layer_spec, create_quantized_model
from spike_composer.errors import InvalidParameterError
from spike_composer.neuron import create_lif_config
from spike_composer.packed_arith import \
    get_int2_mode, get_int4_mode, get_int8_mode


def _model(dims, mode=None, timesteps=16):
    mode = get_int8_mode() if mode is None else mode
    layers = [
        create_layer_spec(
            np.zeros((out_dim, in_dim), dtype=np.int64),
            1.0,
            mode,
            create_lif_config(1)
        )
        for in_dim, out_dim in zip(dims, dims[1:])
    ]
    return create_quantized_model(layers, timesteps)


def _stats(stalls):
    return tuple(
        FifoStats(pushes=0, pops=0, stall_cycles=s, max_occupancy=0)
        for s in stalls
    )


class TestEstimate:
    def test_single_wave_int8(self):
        report = costmodel.estimate(_model([256, 64]), create_array_config())
        assert report.mode == "int8"
        assert report.compute_cycles == 4096
        assert report.stall_cycles == 0
        assert report.latency_s == pytest.approx(1.59744e-6)
        assert report.layers[0].waves == 1
        assert report.layers[0].ops_per_neuron == 256

    def test_single_wave_int2(self):
        report = costmodel.estimate(_model([256, 64], get_int2_mode()),
                                    create_array_config())
        assert report.compute_cycles == 256

    def test_waves_multiply_the_cycles(self):
        report = costmodel.estimate(_model([256, 65]), create_array_config())
        assert report.layers[0].waves == 2
        assert report.compute_cycles == 2 * 4096

    def test_mode_ratios(self):
        reports = costmodel.compare_modes(_model([64, 16]),
                                          create_array_config())
        cycles = {r.mode: r.compute_cycles for r in reports}
        assert cycles["int8"] == 4 * cycles["int4"] == 16 * cycles["int2"]
        assert [r.mode for r in reports] == ["int2", "int4", "int8"]

    def test_stalls_dilute_the_ratio(self):
        model = _model([64, 16])
        stats = _stats([5000])
        int2 = costmodel.estimate(model, create_array_config(), stats,
                                  mode=get_int2_mode())
        int8 = costmodel.estimate(model, create_array_config(), stats,
                                  mode=get_int8_mode())
        assert int2.stall_cycles == int8.stall_cycles == 5000
        assert 1 < int8.total_cycles / int2.total_cycles < 16

    def test_zero_layers(self):
        report = costmodel.estimate(create_quantized_model([], 4),
                                    create_array_config())
        assert report.mode == "none"
        assert report.compute_cycles == 0
        assert report.latency_s == 0.0
        assert report.energy_j == 0.0

    def test_energy(self):
        params = costmodel.create_cost_params()
        report = costmodel.estimate(_model([100, 30, 10]),
                                    create_array_config(rows=4, cols=2),
                                    _stats([3, 7]))
        assert report.total_cycles == \
            report.compute_cycles + report.stall_cycles
        assert report.latency_s == pytest.approx(
            report.total_cycles * params.t_op
        )
        assert report.energy_j == pytest.approx(report.latency_s * 0.54)
        assert report.energy_nce_j == \
            pytest.approx(report.latency_s * 4.2e-3 * 8)

    def test_more_timesteps_cost_more(self):
        config = create_array_config()
        small = costmodel.estimate(_model([64, 32], timesteps=8), config)
        large = costmodel.estimate(_model([64, 32], timesteps=32), config)
        assert large.compute_cycles == 4 * small.compute_cycles
        assert large.energy_j > small.energy_j

    def test_smaller_array_costs_more(self):
        model = _model([64, 128])
        small = costmodel.estimate(model, create_array_config(rows=2, cols=2))
        large = costmodel.estimate(model, create_array_config(rows=16, cols=8))
        assert small.compute_cycles > large.compute_cycles

    def test_inferences(self):
        model = _model([64, 32])
        one = costmodel.estimate(model, create_array_config())
        ten = costmodel.estimate(model, create_array_config(), inferences=10)
        assert ten.compute_cycles == 10 * one.compute_cycles

    def test_mixed_modes(self):
        first = _model([8, 4], get_int4_mode()).layers[0]
        second = _model([4, 2], get_int8_mode()).layers[0]
        model = create_quantized_model([first, second], 4)
        assert costmodel.estimate(model, create_array_config()).mode == "mixed"


class TestParams:
    def test_defaults(self):
        params = costmodel.create_cost_params()
        assert params == costmodel.CostParams(
            t_op=0.39e-9,
            p_sys=0.54,
            p_nce=4.2e-3
        )

    def test_invalid_params(self):
        with pytest.raises(InvalidParameterError):
            costmodel.create_cost_params(t_op=0)
        with pytest.raises(InvalidParameterError):
            costmodel.create_cost_params(p_sys=-1.0)


class TestFormat:
    def test_cost_csv(self):
        report = costmodel.estimate(_model([256, 64]), create_array_config())
        lines = costmodel.format_cost_csv([report]).splitlines()
        assert lines[0] == "mode,compute_cycles,stall_cycles,latency_ms,energy_mj"
        assert lines[1].startswith("int8,4096,0,0.00159744,")

    def test_comparison_csv(self):
        reports = costmodel.compare_modes(_model([64, 16]),
                                          create_array_config())
        lines = costmodel.format_comparison_csv(reports).splitlines()
        assert lines[0].endswith(",latency_ratio")
        ratios = [float(line.split(",")[-1]) for line in lines[1:]]
        assert ratios == [1.0, 4.0, 16.0]

    def test_cost_json(self):
        report = costmodel.estimate(_model([16, 8, 4]), create_array_config())
        node = json.loads(costmodel.format_cost_json(report))
        assert node["compute_cycles"] == report.compute_cycles
        assert [l["layer"] for l in node["layers"]] == [0, 1]
