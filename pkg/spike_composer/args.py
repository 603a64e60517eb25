# Copyright (c) 2026 The Spike Composer Authors
# Licensed under the MIT License

"""This module defines the argument parser for the project."""

import argparse

from .support.command_names import \
    get_bench_command_name, get_quantize_command_name, get_run_command_name, \
    get_sweep_command_name, get_trace_command_name, get_train_command_name

from .support.encoder_names import get_encoder_names

from .support.precision_names import \
    get_no_override_name, get_precision_names

from .support.project_names import get_project_script_name

from .__version__ import __version__


def _add_common_arguments(parser):
    """
    Adds the options common to all parsers to the given parser.
    This function isn't pure as it modifies the given parser.
    Returns the parser that contains the added arguments.

    parser -- The parser to which the arguments are added.
    """
    # --------------------------------------------------------- #
    # Special options

    parser.add_argument(
        "-v",
        "--version",
        action="version",
        version=__version__
    )

    # --------------------------------------------------------- #
    # Top-level options

    parser.add_argument(
        "-n",
        "--dry-run",
        action="store_true",
        help="don't actually write any files; just log them"
    )
    parser.add_argument(
        "-j",
        "--jobs",
        default=1,
        type=int,
        help="specify the number of worker processes used for the samples "
             "(default: 1)"
    )
    parser.add_argument(
        "--print-debug",
        action="store_true",
        help="print the debug-level logging output"
    )

    return parser


def _add_model_argument(parser, help_text):
    parser.add_argument(
        "--model",
        default=None,
        help=help_text,
        metavar="PATH"
    )


def _add_array_arguments(parser):
    """
    Adds the options of the compute array to the given parser.
    This function isn't pure as it modifies the given parser.

    parser -- The parser to which the arguments are added.
    """
    array_group = parser.add_argument_group("Array options")

    array_group.add_argument(
        "--rows",
        default=None,
        type=int,
        help="use an array of the given number of rows (default: 8)"
    )
    array_group.add_argument(
        "--cols",
        default=None,
        type=int,
        help="use an array of the given number of columns (default: 8)"
    )
    array_group.add_argument(
        "--fifo",
        default=None,
        type=int,
        help="give every ring FIFO the given number of entries (default: 16)",
        dest="fifo_capacity"
    )


def _add_encoder_arguments(parser):
    """
    Adds the options of the spike encoder to the given parser.
    This function isn't pure as it modifies the given parser.

    parser -- The parser to which the arguments are added.
    """
    encoder_group = parser.add_argument_group("Encoder options")

    encoder_group.add_argument(
        "--encoder",
        default=None,
        choices=get_encoder_names(),
        help="encode the inputs with the given encoder (default: the encoder "
             "of the model file)"
    )
    encoder_group.add_argument(
        "--seed",
        default=None,
        type=int,
        help="seed the stochastic encoder with the given value"
    )
    encoder_group.add_argument(
        "--timesteps",
        default=None,
        type=int,
        help="run the given number of timesteps (default: the timesteps of "
             "the model file)"
    )


def _add_inference_arguments(parser):
    """
    Adds the options common to the commands that run inferences
    to the given parser. This function isn't pure as it modifies
    the given parser.

    parser -- The parser to which the arguments are added.
    """
    _add_model_argument(parser, "read the quantized model from the given file")
    parser.add_argument(
        "--inputs",
        default=None,
        help="read the input vectors from the given file, one sample of "
             "comma-separated intensities per line",
        metavar="PATH"
    )
    parser.add_argument(
        "--mode",
        default=None,
        choices=get_precision_names() + [get_no_override_name()],
        help="quantize the model again to the given precision mode (default: "
             "{})".format(get_no_override_name())
    )
    _add_array_arguments(parser)
    _add_encoder_arguments(parser)


def create_argument_parser():
    """Creates the argument parser of the program."""
    parser = argparse.ArgumentParser(
        description=_get_description(),
        epilog=_get_epilog(),
        formatter_class=argparse.RawDescriptionHelpFormatter
    )

    # The common arguments are added to the base parser so the
    # normal help command shows them
    parser = _add_common_arguments(parser)

    # --------------------------------------------------------- #
    # Sub-commands

    subparsers = parser.add_subparsers(dest="command")

    quantize = _add_common_arguments(
        subparsers.add_parser(get_quantize_command_name())
    )
    run = _add_common_arguments(subparsers.add_parser(get_run_command_name()))
    bench = _add_common_arguments(
        subparsers.add_parser(get_bench_command_name())
    )
    trace = _add_common_arguments(
        subparsers.add_parser(get_trace_command_name())
    )
    train = _add_common_arguments(
        subparsers.add_parser(get_train_command_name())
    )
    sweep = _add_common_arguments(
        subparsers.add_parser(get_sweep_command_name())
    )

    # --------------------------------------------------------- #
    # Quantize options

    _add_model_argument(
        quantize,
        "read the floating-point model from the given file"
    )
    quantize.add_argument(
        "--bits",
        default=8,
        type=int,
        help="quantize the weights to the given number of bits, 2, 4, or 8 "
             "(default: 8)"
    )
    quantize.add_argument(
        "--out",
        default=None,
        help="write the quantized model to the given file (default: the "
             "standard output)",
        metavar="PATH"
    )

    # --------------------------------------------------------- #
    # Run options

    run.add_argument(
        "--config",
        default=None,
        help="read the run configuration from the given YAML or JSON file",
        metavar="PATH"
    )
    _add_inference_arguments(run)

    output_group = run.add_argument_group("Output options")

    output_group.add_argument(
        "--out",
        default=None,
        help="write the predictions to the given file (default: the standard "
             "output)",
        metavar="PATH"
    )
    output_group.add_argument(
        "--trace",
        default=None,
        help="write the spike events of every sample to the given file",
        metavar="PATH"
    )
    output_group.add_argument(
        "--cost",
        default=None,
        help="write the cost estimate to the given file as JSON if its name "
             "ends in '.json' and as CSV otherwise",
        metavar="PATH"
    )
    output_group.add_argument(
        "--verify",
        action="store_true",
        help="check every prediction against the scalar reference simulator"
    )

    # --------------------------------------------------------- #
    # Bench options

    _add_model_argument(bench, "read the quantized model from the given file")
    bench.add_argument(
        "--inputs",
        default=None,
        help="run the input vectors of the given file to measure the stalls; "
             "without inputs the estimate has no stalls",
        metavar="PATH"
    )
    bench.add_argument(
        "--mode",
        action="append",
        default=[],
        choices=get_precision_names(),
        help="compare the given precision mode; give the option many times to "
             "compare many modes (default: all of the modes)",
        dest="modes"
    )
    bench.add_argument(
        "--out",
        default=None,
        help="write the comparison to the given file (default: the standard "
             "output)",
        metavar="PATH"
    )
    _add_array_arguments(bench)
    _add_encoder_arguments(bench)

    # --------------------------------------------------------- #
    # Trace options

    _add_inference_arguments(trace)
    trace.add_argument(
        "--sample",
        default=0,
        type=int,
        help="trace the sample of the given index (default: 0)"
    )
    trace.add_argument(
        "--out",
        default=None,
        help="write the spike events to the given file (default: the "
             "standard output)",
        metavar="PATH"
    )

    # --------------------------------------------------------- #
    # Train options

    data_group = train.add_argument_group("Dataset options")

    data_group.add_argument(
        "--data",
        default=None,
        help="read the labeled dataset from the given file instead of "
             "generating one",
        metavar="PATH"
    )
    data_group.add_argument(
        "--samples",
        default=600,
        type=int,
        help="generate the given number of samples (default: 600)"
    )
    data_group.add_argument(
        "--classes",
        default=3,
        type=int,
        help="generate samples of the given number of classes (default: 3)"
    )
    data_group.add_argument(
        "--features",
        default=4,
        type=int,
        help="generate samples of the given number of raw features; the "
             "samples have twice as many intensities (default: 4)"
    )
    data_group.add_argument(
        "--spread",
        default=0.08,
        type=float,
        help="generate blobs of the given standard deviation (default: 0.08)"
    )
    data_group.add_argument(
        "--held-out",
        default=0.5,
        type=float,
        help="hold out the given fraction of the samples (default: 0.5)"
    )
    data_group.add_argument(
        "--test-out",
        default=None,
        help="write the held-out samples to the given file",
        metavar="PATH"
    )

    training_group = train.add_argument_group("Training options")

    training_group.add_argument(
        "--hidden",
        default=[32],
        nargs="*",
        type=int,
        help="use hidden layers of the given widths (default: 32)"
    )
    training_group.add_argument(
        "--epochs",
        default=30,
        type=int,
        help="train for the given number of epochs (default: 30)"
    )
    training_group.add_argument(
        "--learning-rate",
        default=0.2,
        type=float,
        help="use the given learning rate (default: 0.2)"
    )
    training_group.add_argument(
        "--batch-size",
        default=32,
        type=int,
        help="use minibatches of the given size (default: 32)"
    )
    training_group.add_argument(
        "--timesteps",
        default=16,
        type=int,
        help="train the network for the given number of timesteps "
             "(default: 16)"
    )
    training_group.add_argument(
        "--seed",
        default=0,
        type=int,
        help="seed the dataset, the initial weights, and the batch order "
             "(default: 0)"
    )
    train.add_argument(
        "--out",
        default=None,
        help="write the floating-point model to the given file (default: the "
             "standard output)",
        metavar="PATH"
    )

    # --------------------------------------------------------- #
    # Sweep options

    _add_model_argument(sweep, "read the floating-point model from the given file")
    sweep.add_argument(
        "--data",
        default=None,
        help="evaluate the model on the labeled dataset of the given file",
        metavar="PATH"
    )
    sweep.add_argument(
        "--bits",
        default=[8, 4, 2],
        nargs="+",
        type=int,
        help="quantize the model to the given numbers of bits (default: 8 4 "
             "2)"
    )
    sweep.add_argument(
        "--out",
        default=None,
        help="write the sweep to the given file (default: the standard "
             "output)",
        metavar="PATH"
    )

    return parser


def _get_description():
    """Gives the command line description of Spike Composer."""
    return """
Use this tool to quantize spiking neural networks to 2-, 4-, and 8-bit weights
and to run them on a bit-accurate model of a packed SIMD neuron compute array.
The tool estimates the latency and the energy of the runs and compares the
precision modes of the array.
"""


def _get_epilog():
    """Gives the command line epilogue of Spike Composer."""
    return """
Commands
--------

  quantize    quantize a floating-point model to a quantized model
  run         run the input vectors through a quantized model
  bench       compare the cost of a model in the precision modes
  trace       write the spike events of one sample
  train       train a desk-scale floating-point model
  sweep       tabulate the accuracy and the footprint per precision

Exit codes
----------

  0  the command succeeded
  2  an input file couldn't be parsed
  3  a parameter was out of its range
  4  the dimensions of the inputs didn't agree or a run disagreed with
     the scalar reference simulator

Examples
--------

  [~]$ {package} train --out float.json --test-out test.csv
  [~]$ {package} quantize --model float.json --bits 4 --out model.json
  [~]$ {package} run --model model.json --inputs inputs.csv --verify
  [~]$ {package} bench --model model.json --rows 8 --cols 8
""".format(package=get_project_script_name())
