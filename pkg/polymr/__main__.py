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

import argparse
import logging
import sys

from polymr import runopt
from polymr.backend.data import FORMATS
from polymr.backend.errors import UsageError
from polymr.backend.evaluation import Algorithm
from polymr.backend.multires import ENGINES
from polymr.backend.settings import Settings
from polymr.util.funcs import parse_range
from polymr.util.funcs import validate_numeric
from polymr.util.funcs import validate_open_unit


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="INI file with default settings (default: ./config.ini when present)")
    common.add_argument("-v", "--verbose", action="count", default=0, help="-v for progress, -vv for debug output")
    common.add_argument("--in", dest="inputs", action="append", default=[], metavar="PATH",
                        help="polyline file or directory; repeat for several")
    common.add_argument("--out", help="output file (default: under the results folder)")
    common.add_argument("--format", choices=FORMATS, default="csv", help="output format")
    common.add_argument("--algo", help="algorithm: fsdp, rsdp, split, merge or mr")
    common.add_argument("--algos", help="comma separated algorithms for sweeps")
    common.add_argument("--k", help="segment count, or a range for fidelity sweeps")
    common.add_argument("--n", help="vertex count, or a range such as 1024:65536:x2 for bench")
    common.add_argument("--rho", help="decimation factor in (0, 1)")
    common.add_argument("--rhos", help="comma separated decimation factors for a fidelity sweep over rho")
    common.add_argument("--beta", help="corridor half-width, at least 1")
    common.add_argument("--engine", choices=ENGINES, default="rsdp", help="single-step engine used by mr between levels")
    common.add_argument("--seed", help="random seed for synthetic coastlines")
    common.add_argument("--h", dest="roughness", help="coastline roughness in (0, 1)")
    common.add_argument("--reps", help="timing repetitions, at least 5")
    common.add_argument("--workers", help="worker processes for fidelity sweeps")

    parser = _Parser(prog="polymr", description="Min-error polygonal curve simplification.")
    commands = parser.add_subparsers(dest="command", metavar="command")
    commands.required = True
    commands.add_parser("simplify", parents=[common], help="simplify one curve to K segments")
    commands.add_parser("fidelity", parents=[common], help="fidelity of each algorithm against the optimum")
    commands.add_parser("bench", parents=[common], help="runtime of each algorithm as N grows")
    commands.add_parser("gen", parents=[common], help="write a synthetic coastline")
    return parser


def _single(string, name):
    values = parse_range(string, name)
    if len(values) != 1:
        raise UsageError("The {} '{}' must be a single value.".format(name, string))
    return values[0]


def _algorithm(name):
    try:
        return Algorithm.parse(name).value.lower()
    except ValueError as error:
        raise UsageError(str(error)) from error


def parse_args(argv=None):
    """
    Parse the command line into a ``RunConfig``.

    Values missing from the command line come from the configuration file.

    Raises
    ------
    UsageError

    """
    args = _build_parser().parse_args(sys.argv[1:] if argv is None else argv)
    settings = Settings.locate(args.config)

    rho = settings.rho if args.rho is None else validate_open_unit(args.rho, "rho")
    beta = settings.beta if args.beta is None else validate_numeric(args.beta, "beta", minimum=1)
    roughness = settings.roughness if args.roughness is None else validate_open_unit(args.roughness, "roughness")
    seed = settings.seed if args.seed is None else validate_numeric(args.seed, "seed")
    reps = settings.reps if args.reps is None else validate_numeric(args.reps, "reps", minimum=5)
    workers = settings.workers if args.workers is None else validate_numeric(args.workers, "workers", minimum=1)
    rhos = [validate_open_unit(value, "rho") for value in args.rhos.split(",")] if args.rhos else None

    if args.algos:
        algorithms = [_algorithm(name) for name in args.algos.split(",") if name.strip()]
    elif args.algo:
        algorithms = [_algorithm(args.algo)]
    else:
        algorithms = None
    algorithm = _algorithm(args.algo) if args.algo else "mr"

    config = runopt.RunConfig(args.command, algorithm=algorithm, inputs=args.inputs, seed=seed,
                              roughness=roughness, rho=rho, rhos=rhos, beta=beta, reps=reps, out=args.out,
                              output_format=args.format, workers=workers, engine=args.engine,
                              corpus_size=settings.corpus_size, fsdp_max_n=settings.fsdp_max_n,
                              results_folder=settings.results_folder, verbosity=args.verbose)

    if args.command == "simplify":
        if args.k is None:
            raise UsageError("simplify needs --k.")
        if not args.inputs and args.n is None:
            raise UsageError("simplify needs --in or --n for a synthetic coastline.")
        if args.format == "xlsx":
            raise UsageError("simplify writes csv or json, not xlsx.")
        config.k = _single(args.k, "k")
        config.n = settings.corpus_n if args.n is None else _single(args.n, "n")
    elif args.command == "fidelity":
        config.ks = settings.ks if args.k is None else parse_range(args.k, "k")
        config.n = settings.corpus_n if args.n is None else _single(args.n, "n")
        config.algorithms = algorithms or config.algorithms
    elif args.command == "bench":
        config.k = settings.bench_k if args.k is None else _single(args.k, "k")
        config.ns = settings.bench_ns if args.n is None else parse_range(args.n, "n")
        config.algorithms = algorithms or settings.bench_algorithms
        for name in config.algorithms:
            _algorithm(name)
    else:
        config.n = settings.corpus_n if args.n is None else _single(args.n, "n")

    return config


def _configure_logging(verbosity):
    level = logging.WARNING if verbosity <= 0 else logging.INFO if verbosity == 1 else logging.DEBUG
    logging.basicConfig(stream=sys.stderr, level=level, format="%(levelname)s %(name)s: %(message)s")


def main(argv=None):
    try:
        config = parse_args(argv)
    except UsageError as error:
        print("polymr: error: {}".format(error), file=sys.stderr)
        return error.exit_status

    _configure_logging(config.verbosity)
    return runopt.run(config)


if __name__ == "__main__":
    sys.exit(main())
