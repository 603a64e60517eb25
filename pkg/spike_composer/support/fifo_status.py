# Copyright (c) 2026 The Spike Composer Authors
# Licensed under the MIT License

"""
This support module contains the status values returned by the
ring FIFO operations.
"""


def get_accepted_status():
    """Gives the status of a push or pop that went through."""
    return "accepted"


def get_stalled_status():
    """
    Gives the status of a push onto a full FIFO or a pop from an
    empty one. The stall is charged to the cost model.
    """
    return "stalled"
