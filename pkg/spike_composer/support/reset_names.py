# Copyright (c) 2026 The Spike Composer Authors
# Licensed under the MIT License

"""This support module contains the neuron reset modes."""


def get_hard_reset_name():
    """
    Gives the name of the reset mode that sets the membrane
    potential to zero after a spike.
    """
    return "hard"


def get_subtract_reset_name():
    """
    Gives the name of the reset mode that subtracts the
    threshold from the membrane potential after a spike.
    """
    return "subtract"


def get_reset_names():
    """Gives the names of the possible reset modes."""
    return [get_hard_reset_name(), get_subtract_reset_name()]
