# Copyright (c) 2026 The Spike Composer Authors
# Licensed under the MIT License

"""
This support module contains the names of the precision modes of
the packed datapath as they appear in the model files and on the
command line.
"""


def get_int2_name():
    """Gives the name of the 16-lane 2-bit precision mode."""
    return "int2"


def get_int4_name():
    """Gives the name of the 4-lane 4-bit precision mode."""
    return "int4"


def get_int8_name():
    """Gives the name of the single-lane 8-bit precision mode."""
    return "int8"


def get_precision_names():
    """Gives the names of the possible precision modes."""
    return [get_int2_name(), get_int4_name(), get_int8_name()]


def get_no_override_name():
    """
    Gives the value of the mode override option that keeps the
    precision modes stored in the model file.
    """
    return "none"
