# Copyright (c) 2026 The Spike Composer Authors
# Licensed under the MIT License

"""The entry point of Spike Composer."""

import logging
import platform
import sys

import distro

from .support.command_names import \
    get_bench_command_name, get_quantize_command_name, get_run_command_name, \
    get_sweep_command_name, get_trace_command_name, get_train_command_name

from .support.project_names import get_project_name

from .__version__ import __version__

from . import args, commands


def _create_argument_parser():
    """
    Creates the argument parser for the script and returns the
    namespace containing the parsed arguments. This function
    isn't pure but depends on the global Python variable
    containing the command line arguments.
    """
    return args.create_argument_parser()


def _set_logging_level(print_debug):
    """
    Sets the logging level according to the given parameters.
    This function isn't pure.

    print_debug -- Whether or not the debug-level logging should
    be allowed.
    """
    log_format = "%(message)s"
    if print_debug:
        logging.basicConfig(format=log_format, level=logging.DEBUG)
    else:
        logging.basicConfig(format=log_format, level=logging.INFO)


def _log_host():
    """
    Logs the host platform and the Python version. This function
    isn't pure.
    """
    system = platform.system().lower()
    if system == "linux":
        logging.debug("Running on %s %s", distro.name(), distro.version())
    elif system == "darwin":
        logging.debug("Running on %s %s", "macOS", platform.mac_ver()[0])
    elif system == "windows":
        logging.debug("Running on %s %s", "Windows", platform.win32_ver()[0])
    else:
        logging.debug("Running on an unknown platform")
    logging.debug("You're using Python %s", sys.version)


def _resolve_running_function(command, argument_parser):
    """
    Resolves the function that runs the given sub-command.
    Returns a function.

    command -- The name of the sub-command.

    argument_parser -- The parser used to parse the command line
    arguments of the script.
    """
    functions = {
        get_quantize_command_name(): commands.cmd_quantize,
        get_run_command_name(): commands.cmd_run,
        get_bench_command_name(): commands.cmd_bench,
        get_trace_command_name(): commands.cmd_trace,
        get_train_command_name(): commands.cmd_train,
        get_sweep_command_name(): commands.cmd_sweep
    }
    if command in functions:
        return functions[command]

    def _(_1):
        argument_parser.error("{} needs a command".format(get_project_name()))
        return 1
    return _


def main(argv=None):
    """
    Enters the program and runs it. Returns the exit code. This
    function isn't pure.

    argv -- The command line arguments, or None for the ones of
    the process.
    """
    argument_parser = _create_argument_parser()
    arguments = argument_parser.parse_args(argv)

    # The logging level is the first thing to be set so it can be
    # utilized throughout the rest of the run.
    _set_logging_level(print_debug=arguments.print_debug)

    logging.debug("Running %s version %s", get_project_name(), __version__)
    _log_host()

    return _resolve_running_function(
        command=arguments.command,
        argument_parser=argument_parser
    )(arguments)


def run():
    """Runs the script when Spike Composer is invoked."""
    sys.exit(main())


# The script can also be invoked by calling this script
if __name__ == "__main__":
    sys.exit(main())
