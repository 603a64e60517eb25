# Copyright (c) 2026 The Spike Composer Authors
# Licensed under the MIT License

"""
This module contains the desk-scale labeled datasets the
reference trainer learns from and the accuracy sweeps are
evaluated on.
"""

import io

from collections import namedtuple

import numpy as np

from ..errors import DatasetTooSmallError, InvalidParameterError, \
    VectorParseError


# The type 'Dataset' represents labeled samples.
#
# features -- The intensities within [0, 1] shaped (samples,
# features).
#
# labels -- The class of every sample.
#
# classes -- The number of classes.
Dataset = namedtuple("Dataset", ["features", "labels", "classes"])


def create_dataset(features, labels, classes=None):
    """Creates a checked dataset."""
    features = np.atleast_2d(np.asarray(features, dtype=np.float64))
    labels = np.asarray(labels, dtype=np.int64).ravel()
    if len(features) != len(labels):
        raise InvalidParameterError(
            "There are {} samples but {} labels".format(
                len(features),
                len(labels)
            )
        )
    if labels.size and labels.min() < 0:
        raise InvalidParameterError("The labels can't be negative")
    if classes is None:
        classes = int(labels.max()) + 1 if labels.size else 0
    return Dataset(features=features, labels=labels, classes=int(classes))


def check_trainable(dataset):
    """
    Checks that a dataset has samples of at least two classes and
    at least one sample per class.
    """
    present = np.unique(dataset.labels).size
    if dataset.classes < 2 or present < 2 \
            or len(dataset.labels) < dataset.classes:
        raise DatasetTooSmallError(
            "A dataset needs samples of at least two classes; this one has "
            "{} samples of {} classes".format(len(dataset.labels), present)
        )


def make_blob_dataset(samples, classes, features, spread=0.08, seed=0):
    """
    Creates a dataset of Gaussian blobs in the unit cube. Every
    class has its own center and the samples are drawn around
    the centers and clipped to [0, 1]. The features are given in
    complementary coding, x followed by 1 - x, so every sample
    has as many active intensities.

    samples -- The number of samples.

    classes -- The number of classes.

    features -- The number of raw features; the dataset has twice
    as many.

    spread -- The standard deviation of a blob.

    seed -- The seed of the generator.
    """
    if classes < 2 or samples < classes:
        raise DatasetTooSmallError(
            "Can't make {} samples of {} classes".format(samples, classes)
        )
    rng = np.random.default_rng(seed)
    centers = rng.uniform(0.15, 0.85, size=(classes, features))
    labels = np.arange(samples) % classes
    rng.shuffle(labels)
    x = centers[labels] + rng.normal(0.0, spread, size=(samples, features))
    x = np.clip(x, 0.0, 1.0)
    return create_dataset(np.hstack([x, 1.0 - x]), labels, classes)


def split_dataset(dataset, held_out=0.5, seed=0):
    """
    Splits a dataset into a training set and a held-out set.
    Returns the two datasets.

    held_out -- The fraction of the samples held out.
    """
    if not 0 < held_out < 1:
        raise InvalidParameterError(
            "The held-out fraction must be within (0, 1), not {}".format(
                held_out
            )
        )
    order = np.random.default_rng(seed).permutation(len(dataset.labels))
    cut = len(order) - int(round(len(order) * held_out))
    train, test = order[:cut], order[cut:]
    return (
        dataset._replace(
            features=dataset.features[train],
            labels=dataset.labels[train]
        ),
        dataset._replace(
            features=dataset.features[test],
            labels=dataset.labels[test]
        )
    )


def parse_labeled_csv(text):
    """
    Parses a labeled dataset: one sample per line as the label
    followed by the comma-separated intensities.
    """
    try:
        table = np.loadtxt(io.StringIO(text), delimiter=",", ndmin=2)
    except ValueError as e:
        raise VectorParseError("Invalid labeled dataset: {}".format(e))
    if table.shape[0] == 0 or table.shape[1] < 2:
        raise VectorParseError("The labeled dataset has no samples")
    labels = table[:, 0]
    if not np.all(labels == np.floor(labels)):
        raise VectorParseError("The labels must be integers")
    return create_dataset(table[:, 1:], labels.astype(np.int64))


def format_labeled_csv(dataset):
    """Formats a dataset for 'parse_labeled_csv'."""
    return "".join(
        "{},{}\n".format(label, ",".join(repr(float(v)) for v in row))
        for label, row in zip(dataset.labels, dataset.features)
    )
