# Copyright (c) 2026 The Spike Composer Authors
# Licensed under the MIT License

"""
This support module contains the sub-command name constants.
"""


def get_quantize_command_name():
    """Gives the name of the quantizing command."""
    return "quantize"


def get_run_command_name():
    """Gives the name of the inference command."""
    return "run"


def get_bench_command_name():
    """Gives the name of the precision comparison command."""
    return "bench"


def get_trace_command_name():
    """Gives the name of the spike tracing command."""
    return "trace"


def get_train_command_name():
    """Gives the name of the reference training command."""
    return "train"


def get_sweep_command_name():
    """Gives the name of the accuracy sweep command."""
    return "sweep"
