# Copyright (c) 2026 The Spike Composer Authors
# Licensed under the MIT License

"""This support module contains the exit codes of the commands."""


def get_success_exit_code():
    """Gives the exit code of a successful command."""
    return 0


def get_parse_failure_exit_code():
    """Gives the exit code used when an input file can't be parsed."""
    return 2


def get_invalid_parameter_exit_code():
    """Gives the exit code used when a parameter is out of its range."""
    return 3


def get_shape_mismatch_exit_code():
    """
    Gives the exit code used when the dimensions of the inputs
    don't agree.
    """
    return 4
