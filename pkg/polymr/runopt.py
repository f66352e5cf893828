# -*- coding: utf-8 -*-

# Copyright 2024 The polymr Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

import logging
import os
import sys

from polymr.backend.data import read_corpus
from polymr.backend.data import read_polyline
from polymr.backend.data import write_indices
from polymr.backend.data import write_json
from polymr.backend.data import write_polyline
from polymr.backend.data import write_records
from polymr.backend.errors import IoError
from polymr.backend.errors import PolymrError
from polymr.backend.evaluation import Algorithm
from polymr.backend.evaluation import SweepParams
from polymr.backend.evaluation import coastline_corpus
from polymr.backend.evaluation import fit_loglog_slope
from polymr.backend.evaluation import generate_coastline
from polymr.backend.evaluation import run_algorithm
from polymr.backend.evaluation import run_fidelity_sweep
from polymr.backend.evaluation import run_rho_sweep
from polymr.backend.evaluation import run_timing_sweep
from polymr.backend.multires import mr_simplify

logger = logging.getLogger(__name__)


class RunConfig():
    """One validated command line invocation."""

    COMMANDS = ("simplify", "fidelity", "bench", "gen")

    def __init__(self, command, algorithm="mr", algorithms=None, inputs=(), seed=7, n=None, ns=None,
                 roughness=0.5, k=None, ks=None, rho=0.5, rhos=None, beta=4, reps=5, out=None,
                 output_format="csv", workers=1, engine="rsdp", corpus_size=10, fsdp_max_n=None,
                 results_folder="results/", verbosity=0):
        self.command = command
        self.algorithm = algorithm
        self.algorithms = list(algorithms or [a.value.lower() for a in Algorithm])
        self.inputs = list(inputs)
        self.seed = seed
        self.n = n
        self.ns = list(ns or [])
        self.roughness = roughness
        self.k = k
        self.ks = list(ks or [])
        self.rho = rho
        self.rhos = list(rhos or [])
        self.beta = beta
        self.reps = reps
        self.out = out
        self.format = output_format
        self.workers = workers
        self.engine = engine
        self.corpus_size = corpus_size
        self.fsdp_max_n = fsdp_max_n
        self.results_folder = results_folder
        self.verbosity = verbosity

    def __repr__(self):
        return "RunConfig({})".format(", ".join("{}={!r}".format(k, v) for k, v in vars(self).items()))

    def params(self):
        return SweepParams(algorithms=tuple(Algorithm.parse(a) for a in self.algorithms),
                           rho=self.rho, beta=self.beta, engine=self.engine, workers=self.workers,
                           seed=self.seed, roughness=self.roughness, full_search_limit=self.fsdp_max_n)

    def output_path(self, default_name):
        return self.out or os.path.join(self.results_folder, default_name)


def _load_curve(config):
    if config.inputs:
        path = config.inputs[0]
        return read_polyline(path), os.path.splitext(os.path.basename(path))[0]

    curve = generate_coastline(config.seed, config.n, config.roughness)
    return curve, "coastline_s{}_n{}".format(config.seed, config.n)


def _load_corpus(config):
    if config.inputs:
        return read_corpus(config.inputs)
    return [c.points for c in coastline_corpus(config.corpus_size, config.n, config.roughness, config.seed)]


def simplify(config):
    curve, label = _load_curve(config)
    algorithm = Algorithm.parse(config.algorithm)

    pyramid = None
    if algorithm is Algorithm.MR:
        pyramid = mr_simplify(curve, config.k, config.rho, config.beta, config.engine)
        approximation = pyramid.final
    else:
        approximation = run_algorithm(algorithm, curve, config.k, config.rho, config.beta)

    document = {"input": label,
                "algorithm": algorithm.value,
                "N": len(curve),
                "K": approximation.K,
                "error": approximation.error,
                "visits": approximation.visits,
                "indices": list(approximation.breakpoints)}
    if algorithm in (Algorithm.RSDP, Algorithm.MR):
        document["beta"] = config.beta
    if pyramid is not None:
        document["rho"] = config.rho
        document["engine"] = config.engine
        document["pyramid"] = pyramid.to_dict()

    stem = "{}_{}_k{}".format(label, algorithm.value.lower(), config.k)
    if config.format == "json":
        output = config.output_path(stem + ".json")
        write_json(document, output)
    else:
        output = config.output_path(stem + ".csv")
        sidecar = os.path.splitext(output)[0] + ".json"
        if sidecar == output:
            sidecar = output + ".meta.json"
        write_indices(approximation, curve, output)
        write_json(document, sidecar)
    logger.info("%s kept %d of %d vertices with error %r. Results saved to '%s'.",
                algorithm, len(approximation.breakpoints), len(curve), approximation.error, output)


def fidelity(config):
    corpus = _load_corpus(config)
    params = config.params()
    if config.rhos:
        records = []
        for K in config.ks:
            records.extend(run_rho_sweep(corpus, K, config.rhos, params))
    else:
        records = run_fidelity_sweep(corpus, config.ks, params)

    output = config.output_path("fidelity.{}".format(config.format))
    write_records(records, output, config.format)
    logger.info("Saved %d fidelity records to '%s'.", len(records), output)


def bench(config):
    curves = read_corpus(config.inputs) if config.inputs else None
    records = run_timing_sweep(config.ns, config.k, config.params(), config.reps, curves)

    output = config.output_path("bench.{}".format(config.format))
    write_records(records, output, config.format)
    logger.info("Saved %d timing records to '%s'.", len(records), output)

    for algorithm in sorted({record.algorithm for record in records}):
        subset = [record for record in records if record.algorithm is algorithm]
        if len({record.N for record in subset}) >= 4:
            logger.info("%s runtime slope: %.3f (log-log against N).", algorithm, fit_loglog_slope(subset))


def gen(config):
    curve = generate_coastline(config.seed, config.n, config.roughness)
    output = config.output_path("coastline_s{}_n{}.csv".format(config.seed, config.n))
    write_polyline(curve, output, header="polymr coastline seed={} N={} h={!r}".format(
        config.seed, config.n, config.roughness))
    logger.info("Coastline with %d vertices saved to '%s'.", len(curve), output)


COMMANDS = {"simplify": simplify, "fidelity": fidelity, "bench": bench, "gen": gen}


def run(config):
    """
    Dispatch ``config.command`` and map failures to exit statuses.

    Returns
    -------
    int
        0 on success, 2 for input/output errors, 3 for algorithm errors
        (1 is reserved for usage errors raised while parsing arguments).

    """
    try:
        COMMANDS[config.command](config)
    except PolymrError as error:
        print("polymr: error: {}".format(error), file=sys.stderr)
        return error.exit_status
    except OSError as error:
        print("polymr: error: {}".format(error), file=sys.stderr)
        return IoError.exit_status
    return 0
