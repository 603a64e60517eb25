# Copyright (c) 2026 The Spike Composer Authors
# Licensed under the MIT License

"""
This module contains the functions that run the sub-commands of
the program. Every command returns its exit code: the errors of
the package are logged as critical and mapped to the exit code
of their family, and the data goes to the files or the standard
output.
"""

import logging
import time

from collections import namedtuple

from concurrent.futures import ProcessPoolExecutor

import yaml

from .array import FifoStats, create_array_config, run_inference

from .costmodel import \
    compare_modes, estimate, format_comparison_csv, format_cost_csv, \
    format_cost_json

from .encode import check_seed, create_encoder_config, \
    create_spike_train, encode, encode_batch, parse_input_vectors

from .errors import ComposerError, ConfigParseError, InvalidParameterError, \
    ShapeMismatchError, VerificationError

from .model_file import \
    format_float_model, format_quantized_model, parse_float_model, \
    parse_quantized_model

from .packed_arith import parse_precision_mode

from .quant.accuracy import evaluate_float_model, format_sweep_csv, \
    sweep_precisions

from .quant.dataset import format_labeled_csv, make_blob_dataset, \
    parse_labeled_csv, split_dataset

from .quant.footprint import format_footprint_csv, footprint

from .quant.quantizer import quantize_model, requantize_model

from .quant.trainer import create_training_config, train_reference_model

from .reference import simulate_scalar_network

from .support.exit_codes import \
    get_parse_failure_exit_code, get_success_exit_code

from .support.precision_names import \
    get_no_override_name, get_precision_names

from .util.duration import to_duration_string, to_energy_string

from .util.files import is_standard_output, read_text, write_text


# The type 'RunConfig' represents the resolved configuration of
# an inference run.
#
# model_path -- The quantized model file.
#
# array_cfg -- The configuration of the array.
#
# encoder_kind -- The encoder, or None for the one of the model.
#
# seed -- The encoder seed, or None for the one of the model.
#
# timesteps -- The timesteps, or None for the ones of the model.
#
# mode -- The precision mode override or 'none'.
#
# predictions_path -- The file of the predictions.
#
# trace_path -- The file of the spike events, or None.
#
# cost_path -- The file of the cost estimate, or None.
#
# verify -- Whether the predictions are checked against the
# scalar reference.
RunConfig = namedtuple("RunConfig", [
    "model_path",
    "inputs_path",
    "array_cfg",
    "encoder_kind",
    "seed",
    "timesteps",
    "mode",
    "predictions_path",
    "trace_path",
    "cost_path",
    "verify"
])


def load_run_config(path):
    """
    Reads a run configuration file. YAML is a superset of JSON,
    so both are read the same way. Returns the mapping of the
    file.
    """
    try:
        node = yaml.safe_load(read_text(path))
    except yaml.YAMLError as e:
        raise ConfigParseError("Invalid run configuration: {}".format(e))
    if node is None:
        return {}
    if not isinstance(node, dict):
        raise ConfigParseError("The run configuration must be a mapping")
    return node


def _first(*values):
    for value in values:
        if value is not None:
            return value
    return None


def resolve_run_config(arguments, node):
    """
    Combines the command line options with a run configuration.
    The command line wins over the file.

    arguments -- The namespace containing the parsed command line
    arguments of the script.

    node -- The mapping read from the run configuration file.
    """
    try:
        array_node = node.get("array") or {}
        encoder_node = node.get("encoder") or {}
        outputs_node = node.get("outputs") or {}
        config = RunConfig(
            model_path=_first(arguments.model, node.get("model")),
            inputs_path=_first(arguments.inputs, node.get("inputs")),
            array_cfg=create_array_config(
                rows=_first(arguments.rows, array_node.get("rows")),
                cols=_first(arguments.cols, array_node.get("cols")),
                fifo_capacity=_first(
                    arguments.fifo_capacity,
                    array_node.get("fifo_capacity")
                )
            ),
            encoder_kind=_first(arguments.encoder, encoder_node.get("kind")),
            seed=_first(arguments.seed, encoder_node.get("seed")),
            timesteps=_first(arguments.timesteps, node.get("timesteps")),
            mode=str(_first(
                arguments.mode,
                node.get("mode"),
                get_no_override_name()
            )).lower(),
            predictions_path=_first(
                getattr(arguments, "out", None),
                outputs_node.get("predictions")
            ),
            trace_path=_first(
                getattr(arguments, "trace", None),
                outputs_node.get("trace")
            ),
            cost_path=_first(
                getattr(arguments, "cost", None),
                outputs_node.get("cost")
            ),
            verify=bool(getattr(arguments, "verify", False)
                        or node.get("verify", False))
        )
    except (AttributeError, TypeError, ValueError) as e:
        raise ConfigParseError("Invalid run configuration: {!r}".format(e))
    if not config.model_path:
        raise InvalidParameterError("No model file was given")
    if not config.inputs_path:
        raise InvalidParameterError("No input vector file was given")
    if config.mode not in get_precision_names() + [get_no_override_name()]:
        raise InvalidParameterError(
            "'{}' isn't a precision mode".format(config.mode)
        )
    return config


def _to_mode(model, mode_name):
    """
    Quantizes the model again to the given mode unless every
    layer already is in it.
    """
    if mode_name == get_no_override_name():
        return model
    mode = parse_precision_mode(mode_name)
    if all(layer.mode == mode for layer in model.layers):
        return model
    logging.debug("Quantizing the model again to %s", mode.name)
    return requantize_model(model, mode.value_width)


def apply_run_config(model, config):
    """
    Applies the precision override, the timesteps, and the
    encoder of the configuration to the model.
    """
    model = _to_mode(model, config.mode)
    encoder = create_encoder_config(
        kind=_first(config.encoder_kind, model.encoder.kind),
        timesteps=_first(config.timesteps, model.timesteps),
        seed=_first(config.seed, model.encoder.seed)
    )
    return model._replace(timesteps=encoder.timesteps, encoder=encoder)


def _infer_sample(job):
    model, data, array_cfg, record_trace = job
    return run_inference(
        model,
        create_spike_train(data),
        array_cfg,
        record_trace=record_trace
    )


def infer_samples(model, trains, array_cfg, record_trace=False, jobs=1):
    """
    Runs an inference for every encoded sample. The samples are
    distributed over worker processes when more than one job is
    allowed, and the results are in the order of the samples.
    """
    work = [(model, data, array_cfg, record_trace) for data in trains]
    if jobs > 1 and len(work) > 1:
        logging.debug("Running %d samples in %d processes", len(work), jobs)
        with ProcessPoolExecutor(max_workers=jobs) as executor:
            return list(executor.map(_infer_sample, work))
    return [_infer_sample(job) for job in work]


def sum_fifo_stats(results):
    """Adds up the FIFO counters of many inferences per layer."""
    if not results:
        return ()
    return tuple(
        FifoStats(
            pushes=sum(s.pushes for s in stats),
            pops=sum(s.pops for s in stats),
            stall_cycles=sum(s.stall_cycles for s in stats),
            max_occupancy=max(s.max_occupancy for s in stats)
        )
        for stats in zip(*(r.fifo_stats for r in results))
    )


def verify_predictions(model, trains, results):
    """
    Checks the output spike counts of every inference against the
    scalar reference simulator.
    """
    for index, (data, result) in enumerate(zip(trains, results)):
        rasters = simulate_scalar_network(model, create_spike_train(data))
        expected = tuple(int(c) for c in rasters[-1].sum(axis=0))
        if expected != result.counts:
            raise VerificationError(
                "Sample {} has the counts {} but the reference has {}".format(
                    index,
                    result.counts,
                    expected
                )
            )
    logging.info("The scalar reference agrees on all %d samples", len(results))


def format_predictions_csv(results):
    """Formats the predictions as CSV with a header."""
    outputs = len(results[0].counts) if results else 0
    lines = ["sample,predicted,{}".format(
        ",".join("count{}".format(i) for i in range(outputs))
    ).rstrip(",")]
    for index, result in enumerate(results):
        lines.append("{},{},{}".format(
            index,
            result.predicted,
            ",".join(str(c) for c in result.counts)
        ).rstrip(","))
    return "\n".join(lines) + "\n"


def format_trace_csv(trace, sample=None):
    """
    Formats spike events as CSV with a header. The events of a run
    over many samples have the sample as their first column.
    """
    if sample is None:
        lines = ["timestep,layer,neuron_id"]
        lines.extend(
            "{},{},{}".format(e.timestep, e.layer, e.neuron_id) for e in trace
        )
    else:
        lines = ["sample,timestep,layer,neuron_id"]
        lines.extend(
            "{},{},{},{}".format(s, e.timestep, e.layer, e.neuron_id)
            for s, events in zip(sample, trace) for e in events
        )
    return "\n".join(lines) + "\n"


def _read_samples(path, model):
    samples = parse_input_vectors(read_text(path))
    if samples.shape[1] != model.layers[0].in_dim:
        raise ShapeMismatchError(
            "The input vectors have {} intensities but the model has {} "
            "inputs".format(samples.shape[1], model.layers[0].in_dim)
        )
    return samples


def _load_model_for_inference(config):
    model = apply_run_config(
        parse_quantized_model(read_text(config.model_path)),
        config
    )
    if not model.layers:
        raise ShapeMismatchError("The model has no layers")
    return model


def _run_command(function, arguments):
    """
    Runs a command and maps its errors to exit codes. This
    function isn't pure.
    """
    try:
        function(arguments)
    except ComposerError as e:
        logging.critical("%s", e)
        return e.exit_code
    except (IOError, OSError) as e:
        logging.critical("Can't access a file: %s", e)
        return get_parse_failure_exit_code()
    return get_success_exit_code()


def _quantize(arguments):
    if not arguments.model:
        raise InvalidParameterError("No floating-point model was given")
    float_model = parse_float_model(read_text(arguments.model))
    model = quantize_model(float_model, arguments.bits)
    write_text(
        arguments.out,
        format_quantized_model(model),
        dry_run=arguments.dry_run
    )
    report = footprint(model, arguments.bits)
    logging.info(
        "The weights take %d bits, %g times less than in 32-bit floats",
        report.weight_bits,
        report.ratio_vs_fp32
    )
    if not is_standard_output(arguments.out):
        write_text(None, format_footprint_csv([report]))


def cmd_quantize(arguments):
    """
    Quantizes a floating-point model. This function isn't pure.

    arguments -- The namespace containing the parsed command line
    arguments of the script.
    """
    return _run_command(_quantize, arguments)


def _run(arguments):
    node = load_run_config(arguments.config) if arguments.config else {}
    config = resolve_run_config(arguments, node)
    model = _load_model_for_inference(config)
    samples = _read_samples(config.inputs_path, model)
    trains = encode_batch(samples, model.encoder)
    results = infer_samples(
        model,
        trains,
        config.array_cfg,
        record_trace=config.trace_path is not None,
        jobs=arguments.jobs
    )
    if config.verify:
        verify_predictions(model, trains, results)
    write_text(
        config.predictions_path,
        format_predictions_csv(results),
        dry_run=arguments.dry_run
    )
    if config.trace_path is not None:
        write_text(
            config.trace_path,
            format_trace_csv(
                [r.trace for r in results],
                sample=range(len(results))
            ),
            dry_run=arguments.dry_run
        )
    report = estimate(
        model,
        config.array_cfg,
        sum_fifo_stats(results),
        inferences=len(results)
    )
    logging.info(
        "Ran %d samples in %d cycles with %d stall cycles: %s and %s",
        len(results),
        report.total_cycles,
        report.stall_cycles,
        to_duration_string(report.latency_s),
        to_energy_string(report.energy_j)
    )
    if config.cost_path is not None:
        write_text(
            config.cost_path,
            format_cost_json(report) if config.cost_path.endswith(".json")
            else format_cost_csv([report]),
            dry_run=arguments.dry_run
        )


def cmd_run(arguments):
    """
    Runs the input vectors through a quantized model. This
    function isn't pure.

    arguments -- The namespace containing the parsed command line
    arguments of the script.
    """
    return _run_command(_run, arguments)


def _bench(arguments):
    if not arguments.model:
        raise InvalidParameterError("No model file was given")
    config = RunConfig(
        model_path=arguments.model,
        inputs_path=arguments.inputs,
        array_cfg=create_array_config(
            rows=arguments.rows,
            cols=arguments.cols,
            fifo_capacity=arguments.fifo_capacity
        ),
        encoder_kind=arguments.encoder,
        seed=arguments.seed,
        timesteps=arguments.timesteps,
        mode=get_no_override_name(),
        predictions_path=None,
        trace_path=None,
        cost_path=None,
        verify=False
    )
    model = _load_model_for_inference(config)
    mode_names = arguments.modes or get_precision_names()
    modes = [parse_precision_mode(name) for name in mode_names]
    start = time.perf_counter()
    if config.inputs_path is None:
        reports = compare_modes(model, config.array_cfg, modes=modes)
    else:
        samples = _read_samples(config.inputs_path, model)
        reports = []
        for name in mode_names:
            mode_model = _to_mode(model, name)
            results = infer_samples(
                mode_model,
                encode_batch(samples, mode_model.encoder),
                config.array_cfg,
                jobs=arguments.jobs
            )
            reports.append(estimate(
                mode_model,
                config.array_cfg,
                sum_fifo_stats(results),
                mode=parse_precision_mode(name),
                inferences=len(results)
            ))
    logging.info(
        "Simulated %d modes in %s of wall-clock time",
        len(reports),
        to_duration_string(time.perf_counter() - start)
    )
    write_text(
        arguments.out,
        format_comparison_csv(reports),
        dry_run=arguments.dry_run
    )


def cmd_bench(arguments):
    """
    Compares the cost of a model in the precision modes. This
    function isn't pure.

    arguments -- The namespace containing the parsed command line
    arguments of the script.
    """
    return _run_command(_bench, arguments)


def _trace(arguments):
    config = resolve_run_config(arguments, {})
    model = _load_model_for_inference(config)
    samples = _read_samples(config.inputs_path, model)
    if not 0 <= arguments.sample < len(samples):
        raise InvalidParameterError(
            "There is no sample {}; there are {} samples".format(
                arguments.sample,
                len(samples)
            )
        )
    # The sample keeps the seed it has in a run over all samples.
    encoder = model.encoder._replace(
        seed=model.encoder.seed + arguments.sample
    )
    train = encode(samples[arguments.sample], encoder)
    result = infer_samples(
        model,
        [train.data],
        config.array_cfg,
        record_trace=True
    )[0]
    write_text(
        arguments.out,
        format_trace_csv(result.trace),
        dry_run=arguments.dry_run
    )


def cmd_trace(arguments):
    """
    Writes the spike events of one sample. This function isn't
    pure.

    arguments -- The namespace containing the parsed command line
    arguments of the script.
    """
    return _run_command(_trace, arguments)


def _train(arguments):
    check_seed(arguments.seed)
    if arguments.data:
        dataset = parse_labeled_csv(read_text(arguments.data))
    else:
        dataset = make_blob_dataset(
            samples=arguments.samples,
            classes=arguments.classes,
            features=arguments.features,
            spread=arguments.spread,
            seed=arguments.seed
        )
    train_set, test_set = split_dataset(
        dataset,
        held_out=arguments.held_out,
        seed=arguments.seed
    )
    model = train_reference_model(
        train_set,
        create_training_config(
            hidden=arguments.hidden,
            epochs=arguments.epochs,
            learning_rate=arguments.learning_rate,
            batch_size=arguments.batch_size,
            timesteps=arguments.timesteps
        ),
        seed=arguments.seed
    )
    if len(test_set.labels):
        logging.info(
            "The held-out accuracy is %.4f",
            evaluate_float_model(model, test_set)
        )
    write_text(
        arguments.out,
        format_float_model(model),
        dry_run=arguments.dry_run
    )
    if arguments.test_out:
        write_text(
            arguments.test_out,
            format_labeled_csv(test_set),
            dry_run=arguments.dry_run
        )


def cmd_train(arguments):
    """
    Trains a desk-scale floating-point model. This function isn't
    pure.

    arguments -- The namespace containing the parsed command line
    arguments of the script.
    """
    return _run_command(_train, arguments)


def _sweep(arguments):
    if not arguments.model or not arguments.data:
        raise InvalidParameterError("A sweep needs a model and a dataset")
    model = parse_float_model(read_text(arguments.model))
    if not model.layers:
        raise ShapeMismatchError("The model has no layers")
    dataset = parse_labeled_csv(read_text(arguments.data))
    if dataset.features.shape[1] != model.layers[0].weights.shape[1]:
        raise ShapeMismatchError(
            "The samples have {} intensities but the model has {} inputs"
            .format(
                dataset.features.shape[1],
                model.layers[0].weights.shape[1]
            )
        )
    rows = sweep_precisions(model, dataset, arguments.bits)
    for row in rows:
        logging.info(
            "%s: accuracy %.4f in %d bytes",
            row.precision,
            row.accuracy,
            row.total_bytes
        )
    write_text(
        arguments.out,
        format_sweep_csv(rows),
        dry_run=arguments.dry_run
    )


def cmd_sweep(arguments):
    """
    Tabulates the accuracy and the memory footprint of a model
    per precision. This function isn't pure.

    arguments -- The namespace containing the parsed command line
    arguments of the script.
    """
    return _run_command(_sweep, arguments)
