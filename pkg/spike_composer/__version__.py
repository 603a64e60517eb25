# Copyright (c) 2026 The Spike Composer Authors
# Licensed under the MIT License

"""
The version data of Spike Composer. The version number is given
according to Semantic Versioning.
"""


def get_release_version():
    """
    Gives the current release version data of Spike Composer
    and, thus, returns three values: the major version number,
    the minor version number, and the patch version number.
    """
    return 0, 3, 0


_VERSION_SUFFIX = "-dev"


__version__ = "{}{}".format(
    ".".join([str(n) for n in get_release_version()]),
    _VERSION_SUFFIX
)


if __name__ == "__main__":
    print(__version__)
