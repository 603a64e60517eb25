# Copyright (c) 2026 The Spike Composer Authors
# Licensed under the MIT License

"""
This module contains the errors raised by Spike Composer. The
errors are grouped into three families, each of which the
commands map to an exit code.
"""

from .support.exit_codes import \
    get_invalid_parameter_exit_code, get_parse_failure_exit_code, \
    get_shape_mismatch_exit_code


class ComposerError(Exception):
    """The base type of the errors raised by Spike Composer."""

    exit_code = 1


class ParseError(ComposerError):
    """An input file or value can't be parsed."""

    exit_code = get_parse_failure_exit_code()


class InvalidParameterError(ComposerError):
    """A parameter is outside of the range it is defined on."""

    exit_code = get_invalid_parameter_exit_code()


class ShapeError(ComposerError):
    """The dimensions of the operands don't agree."""

    exit_code = get_shape_mismatch_exit_code()


class ModelParseError(ParseError):
    pass


class ConfigParseError(ParseError):
    pass


class VectorParseError(ParseError):
    pass


class LaneOverflowError(InvalidParameterError):
    """A lane value doesn't fit in the lane width of the mode."""


class ModeMismatchError(InvalidParameterError):
    """The operands of a packed operation use different modes."""


class ShiftOutOfRangeError(InvalidParameterError):
    pass


class InputOutOfRangeError(InvalidParameterError):
    """An encoder intensity is outside of [0, 1]."""


class EmptyCountsError(InvalidParameterError):
    pass


class InvalidBitsError(InvalidParameterError):
    """The bit width isn't one of 2, 4, or 8."""


class DatasetTooSmallError(InvalidParameterError):
    pass


class LengthMismatchError(ShapeError):
    """The number of lane values differs from the lane count."""


class MaskLengthMismatchError(ShapeError):
    pass


class FanInMismatchError(ShapeError):
    """The spike vector and the weight row have different lengths."""


class DimensionMismatchError(ShapeError):
    pass


class ShapeMismatchError(ShapeError):
    """The spike train doesn't match the input layer of the model."""


class VerificationError(ComposerError):
    """An inference disagrees with the scalar reference simulator."""

    exit_code = get_shape_mismatch_exit_code()
