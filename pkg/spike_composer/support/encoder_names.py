# Copyright (c) 2026 The Spike Composer Authors
# Licensed under the MIT License

"""This support module contains the spike encoder kinds."""


def get_deterministic_encoder_name():
    """
    Gives the name of the deterministic rate encoder that uses
    an accumulate-and-fire recurrence.
    """
    return "det"


def get_stochastic_encoder_name():
    """Gives the name of the Bernoulli rate encoder."""
    return "stoch"


def get_encoder_names():
    """Gives the names of the possible encoders."""
    return [get_deterministic_encoder_name(), get_stochastic_encoder_name()]
