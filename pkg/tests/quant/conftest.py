# Copyright (c) 2026 The Spike Composer Authors
# Licensed under the MIT License

"""This module defines the fixtures of the quantization tests."""

import numpy as np
import pytest

from spike_composer.quant.dataset import create_dataset


CORNERS = np.array([
    [0.1, 0.1],
    [0.9, 0.1],
    [0.5, 0.9],
    [0.1, 0.9]
])


def _make_separable_dataset(samples, classes=3, spread=0.03, seed=0):
    """
    Makes tight blobs around far-apart corners of the unit square
    in complementary coding.
    """
    rng = np.random.default_rng(seed)
    labels = np.arange(samples) % classes
    rng.shuffle(labels)
    x = CORNERS[labels] + rng.normal(0.0, spread, size=(samples, 2))
    x = np.clip(x, 0.0, 1.0)
    return create_dataset(np.hstack([x, 1.0 - x]), labels, classes)


@pytest.fixture
def separable_dataset():
    return _make_separable_dataset
