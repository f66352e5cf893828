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

import configparser
import logging
import os

from polymr.backend.errors import UsageError
from polymr.util.funcs import parse_range
from polymr.util.funcs import validate_numeric
from polymr.util.funcs import validate_open_unit

logger = logging.getLogger(__name__)


class Settings():
    def __init__(self, filepath=None):
        """
        Defaults for the command line, optionally read from an INI file.

        Parameters
        ----------
        filepath : str, optional
            Configuration file. The default is None, which keeps the
            built-in defaults.

        Raises
        ------
        UsageError
            The file cannot be read or holds an invalid value.

        """
        self.filepath = filepath
        self.rho = 0.5
        self.beta = 4
        self.reps = 5
        self.roughness = 0.5
        self.seed = 7
        self.workers = 1
        self.corpus_size = 10
        self.corpus_n = 4097
        self.ks = [16, 32, 64, 128, 256]
        self.bench_ns = [2 ** d + 1 for d in range(10, 17)]
        self.bench_k = 10
        self.bench_algorithms = ["fsdp", "rsdp", "split", "merge", "mr"]
        self.fsdp_max_n = 8193
        self.results_folder = "results/"

        if filepath is not None:
            self.read_config(filepath)

    def __repr__(self):
        return "Settings({})".format(self.filepath or "defaults")

    @classmethod
    def locate(cls, filepath=None):
        """Settings from ``filepath``, else from ./config.ini when present, else the defaults."""
        if filepath is not None:
            if not os.path.isfile(filepath):
                raise UsageError("The configuration file '{}' was not found.".format(filepath))
            return cls(filepath)
        if os.path.isfile("config.ini"):
            return cls("config.ini")
        return cls()

    def read_config(self, filepath):
        config = configparser.ConfigParser()
        try:
            with open(filepath, encoding="utf-8") as handle:
                config.read_file(handle)
        except (OSError, configparser.Error) as error:
            raise UsageError("The configuration file '{}' could not be read: {}".format(filepath, error)) from error
        dirname = os.path.dirname(filepath)

        defaults = config["defaults"] if config.has_section("defaults") else {}
        self.rho = validate_open_unit(defaults.get("rho", self.rho), "rho")
        self.beta = validate_numeric(defaults.get("beta", self.beta), "beta", minimum=1)
        self.reps = validate_numeric(defaults.get("reps", self.reps), "reps", minimum=5)
        self.roughness = validate_open_unit(defaults.get("roughness", self.roughness), "roughness")
        self.seed = validate_numeric(defaults.get("seed", self.seed), "seed")
        self.workers = validate_numeric(defaults.get("workers", self.workers), "workers", minimum=1)

        if config.has_section("corpus"):
            corpus = config["corpus"]
            self.corpus_size = validate_numeric(corpus.get("size", self.corpus_size), "corpus size", minimum=1)
            self.corpus_n = validate_numeric(corpus.get("n", self.corpus_n), "corpus n", minimum=2)
            if "ks" in corpus:
                self.ks = parse_range(corpus["ks"], "corpus ks")

        if config.has_section("bench"):
            bench = config["bench"]
            if "n" in bench:
                self.bench_ns = parse_range(bench["n"], "bench n")
            self.bench_k = validate_numeric(bench.get("k", self.bench_k), "bench k", minimum=1)
            if "algorithms" in bench:
                self.bench_algorithms = [x.strip() for x in bench["algorithms"].split(",") if x.strip()]
            self.fsdp_max_n = validate_numeric(bench.get("fsdp_max_n", self.fsdp_max_n), "fsdp_max_n", minimum=2)

        try:
            self.results_folder = os.path.join(dirname, config["results"]["folder"])
        except KeyError:
            self.results_folder = os.path.join(dirname, "results/")

        logger.debug("Loaded settings from '%s'.", filepath)
