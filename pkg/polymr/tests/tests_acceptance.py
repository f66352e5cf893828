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

"""
Desk-scale empirical checks on synthetic coastlines.

These only run with POLYMR_ACCEPTANCE=1. The fidelity sweep is computed once
per class and dominates the cost: full search on 4097-vertex curves for K up
to 256 takes about half an hour on a single core, proportionally less with
more cores. The timing tests add a few minutes.
"""

import os
import unittest

import numpy as np

from polymr.backend.evaluation import Algorithm
from polymr.backend.evaluation import SweepParams
from polymr.backend.evaluation import coastline_corpus
from polymr.backend.evaluation import fidelity
from polymr.backend.evaluation import fit_loglog_slope
from polymr.backend.evaluation import run_fidelity_sweep
from polymr.backend.evaluation import run_timing_sweep
from polymr.backend.multires import mr_simplify

RHOS = [0.125, 0.25, 0.5, 0.75, 0.875]
KS = [16, 32, 64, 128, 256]


def _mean_fidelity(records, algorithm):
    return float(np.mean([r.fidelity for r in records if r.algorithm is algorithm]))


@unittest.skipUnless(os.environ.get("POLYMR_ACCEPTANCE") == "1", "set POLYMR_ACCEPTANCE=1 to run")
class AcceptanceMethods(unittest.TestCase):

    @classmethod
    def setUpClass(cls):
        cls.corpus = coastline_corpus(10, 4097, 0.5, seed=100)
        cls.records = run_fidelity_sweep(cls.corpus, KS, SweepParams(workers=os.cpu_count() or 1))

    def test_runtime_slopes(self):
        Ns = [2 ** d for d in range(10, 17)]
        params = SweepParams(algorithms=tuple(Algorithm), full_search_limit=2 ** 13 + 1)
        records = run_timing_sweep(Ns, 10, params, repetitions=5)

        def slope(algorithm, value="runtime_us"):
            return fit_loglog_slope([r for r in records if r.algorithm is algorithm], value)

        self.assertTrue(0.85 <= slope(Algorithm.MR, "visits") <= 1.15)
        self.assertTrue(0.8 <= slope(Algorithm.MR) <= 1.3)
        self.assertTrue(1.7 <= slope(Algorithm.FSDP) <= 2.3)
        self.assertTrue(1.7 <= slope(Algorithm.RSDP) <= 2.3)
        self.assertTrue(0.95 <= slope(Algorithm.MERGE) <= 1.4)
        self.assertLess(slope(Algorithm.MR), slope(Algorithm.MERGE))
        self.assertLess(slope(Algorithm.MERGE), slope(Algorithm.FSDP))

    def test_half_decimation_is_fastest(self):
        medians = {}
        for rho in RHOS:
            params = SweepParams(algorithms=(Algorithm.MR,), rho=rho)
            times = [run_timing_sweep(None, 32, params, curves=[c.points])[0].runtime_us for c in self.corpus]
            medians[rho] = float(np.mean(times))
        for rho in RHOS:
            self.assertLessEqual(medians[0.5], 1.1 * medians[rho], medians)

    def test_fidelity_ordering(self):
        records = self.records
        self.assertTrue(all(r.fidelity <= 100.0 + 1e-9 for r in records))

        mr = _mean_fidelity(records, Algorithm.MR)
        self.assertGreater(mr, _mean_fidelity(records, Algorithm.SPLIT))
        self.assertGreater(mr, _mean_fidelity(records, Algorithm.MERGE))
        self.assertGreaterEqual(_mean_fidelity(records, Algorithm.RSDP), mr)

    def test_fidelity_falls_as_rho_grows(self):
        optima = {r.curve: r.error for r in self.records if r.algorithm is Algorithm.FSDP and r.K == 32}
        means = []
        for rho in RHOS:
            scores = [fidelity(optima[index], mr_simplify(coastline.points, 32, rho, 4).final.error)
                      for index, coastline in enumerate(self.corpus)]
            means.append(float(np.mean(scores)))
        inversions = [b - a for a, b in zip(means, means[1:]) if b > a]
        self.assertLessEqual(len(inversions), 1, means)
        self.assertTrue(all(step <= 1.0 for step in inversions), means)

    def test_pyramids_are_nested(self):
        for coastline in self.corpus:
            for rho in RHOS:
                self.assertTrue(mr_simplify(coastline.points, 32, rho, 4).is_nested())


if __name__ == '__main__':
    unittest.main()
