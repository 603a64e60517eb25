# Copyright (c) 2026 The Spike Composer Authors
# Licensed under the MIT License

"""
This utility module contains the helpers for writing the output
files of the commands.

The functions that write files aren't functional-like, but they
follow the conventions of the rest of the package: they don't
modify their parameters and they honour the dry-run option given
on the command line.
"""

import logging
import os
import sys


def is_standard_output(path):
    """
    Tells whether the given output path means the standard
    output.

    path -- The path given on the command line or in the run
    configuration.
    """
    return path is None or path == "-"


def makedirs(path, dry_run=None):
    """
    Creates the given directory and the in-between directories.
    """
    if not path or os.path.isdir(path):
        return
    if dry_run:
        logging.info("Would create the directory %s", path)
        return
    logging.debug("Creating the directory %s", path)
    os.makedirs(path)


def write_text(path, content, dry_run=None):
    """
    Writes the given text to a file, or to the standard output
    if no path is given. The text is written with Unix line
    endings so that the outputs of two runs compare equal byte
    by byte.

    path -- The destination file, '-', or None.

    content -- The text to write.

    dry_run -- Whether the file is only logged instead of written.
    """
    if is_standard_output(path):
        sys.stdout.write(content)
        sys.stdout.flush()
        return
    makedirs(os.path.dirname(path), dry_run=dry_run)
    if dry_run:
        logging.info("Would write %d characters to %s", len(content), path)
        return
    with open(path, "w", newline="\n") as f:
        f.write(content)
    logging.debug("Wrote %d characters to %s", len(content), path)


def read_text(path):
    """Reads a whole text file."""
    with open(path) as f:
        return f.read()
