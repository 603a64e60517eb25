# Copyright (c) 2026 The Spike Composer Authors
# Licensed under the MIT License

"""
This support module helps to present the durations estimated by
the cost model and measured by the benchmark.
"""


def _get_units():
    """
    Gives the units used for durations as pairs of the unit
    symbol and its length in seconds, the largest first.
    """
    return [("s", 1.0), ("ms", 1e-3), ("µs", 1e-6), ("ns", 1e-9)]


def to_unit(s):
    """
    Converts seconds into the largest unit in which the value is
    at least one. Returns two values: the value in the unit and
    the symbol of the unit.

    s -- The time in seconds.
    """
    if s == 0:
        return 0.0, "s"
    for symbol, length in _get_units():
        if abs(s) >= length:
            return s / length, symbol
    symbol, length = _get_units()[-1]
    return s / length, symbol


def to_duration_string(s, digits=3):
    """
    Converts seconds into a string with the largest suitable
    unit.

    s -- The time in seconds.

    digits -- The number of decimals printed.
    """
    value, symbol = to_unit(s)
    return "{:.{}f} {}".format(value, digits, symbol)


def to_energy_string(j, digits=3):
    """
    Converts joules into a string with the largest suitable
    unit.

    j -- The energy in joules.

    digits -- The number of decimals printed.
    """
    value, symbol = to_unit(j)
    return "{:.{}f} {}".format(value, digits, symbol.replace("s", "J"))
