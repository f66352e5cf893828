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
Fidelity measurement, synthetic coastlines, sweeps and complexity slopes.

Fidelity compares a candidate error E with the optimal error E_min given by
the full-search dynamic program: F = 100 · E_min / E, so F = 100 means the
candidate is optimal. Sweeps return flat ``BenchRecord`` lists that export to
CSV/JSON/xlsx for plotting.
"""

import concurrent.futures
import dataclasses
import enum
import logging
import math
import time

import numpy as np
import pandas as pd

from polymr.backend.datatypes import Polyline
from polymr.backend.dynprog import fsdp_simplify
from polymr.backend.dynprog import rsdp_simplify
from polymr.backend.errors import BadRoughness
from polymr.backend.errors import InvalidPolyline
from polymr.backend.errors import KOutOfRange
from polymr.backend.errors import NegativeError
from polymr.backend.errors import TooFewPoints
from polymr.backend.errors import ZeroDenominator
from polymr.backend.heuristics import merge_simplify
from polymr.backend.heuristics import split_simplify
from polymr.backend.multires import mr_simplify

logger = logging.getLogger(__name__)

COASTLINE_AMPLITUDE = 0.5
BENCH_COLUMNS = ["algorithm", "N", "K", "rho", "beta", "runtime_us", "error", "fidelity"]
MIN_REPETITIONS = 5


class Algorithm(str, enum.Enum):
    FSDP = "FSDP"
    RSDP = "RSDP"
    SPLIT = "SPLIT"
    MERGE = "MERGE"
    MR = "MR"

    @classmethod
    def parse(cls, name):
        try:
            return cls(str(name).strip().upper())
        except ValueError as error:
            raise ValueError("Unknown algorithm '{}'; try one of {}.".format(
                name, [a.value.lower() for a in cls])) from error

    def __str__(self):
        return self.value


@dataclasses.dataclass(frozen=True)
class FidelityReport():
    E_min: float
    E: float
    F: float

    @classmethod
    def measure(cls, E_min, E):
        return cls(E_min, E, fidelity(E_min, E))


@dataclasses.dataclass(frozen=True)
class BenchRecord():
    algorithm: Algorithm
    N: int
    K: int
    rho: float = None
    beta: int = None
    runtime_us: float = 0.0
    error: float = 0.0
    fidelity: float = None
    repetitions: int = 1
    visits: int = None
    curve: int = None

    def to_dict(self):
        record = dataclasses.asdict(self)
        record["algorithm"] = self.algorithm.value
        return record


@dataclasses.dataclass(frozen=True)
class SyntheticCoastline():
    seed: int
    N: int
    h: float
    points: Polyline


@dataclasses.dataclass(frozen=True)
class SweepParams():
    """
    Settings shared by the sweeps.

    ``rho`` and ``beta`` default to the values the fidelity and timing
    figures use (rho = 1/2, beta = 4). ``full_search_limit`` skips FSDP and
    RSDP timings above that many vertices.
    """

    algorithms: tuple = tuple(Algorithm)
    rho: float = 0.5
    beta: int = 4
    engine: str = "rsdp"
    workers: int = 1
    seed: int = 7
    roughness: float = 0.5
    full_search_limit: int = None


def fidelity(E_min, E):
    """
    F = 100 · E_min / E.

    Raises
    ------
    NegativeError
        Either error is negative.
    ZeroDenominator
        E is 0 while E_min is not, which an optimal E_min rules out.

    Returns
    -------
    float
        100.0 when E equals E_min, including the case where both are 0.

    """
    if E_min < 0 or E < 0:
        raise NegativeError("Approximation errors cannot be negative (E_min={}, E={}).".format(E_min, E))
    if E == E_min:
        return 100.0
    if E == 0:
        raise ZeroDenominator("The candidate error is 0 but E_min={} is not; E_min is not optimal.".format(E_min))
    return 100.0 * E_min / E


def generate_coastline(seed, N, h):
    """
    Midpoint-displacement fractal curve with N vertices, ordered by x.

    Parameters
    ----------
    seed : int
    N : int
        Vertex count. 2^d + 1 vertices come straight from d subdivisions;
        other counts are subsampled evenly from the next larger such curve.
    h : float
        Roughness in (0, 1): displacements at depth d are scaled by
        2^(-h·d), so small h gives a rougher curve.

    Returns
    -------
    Polyline
        Starts at (0, 0) and ends at (1, 0).

    """
    if not 0.0 < h < 1.0:
        raise BadRoughness(h)
    if isinstance(N, bool) or int(N) != N or N < 2:
        raise InvalidPolyline("A coastline needs at least two vertices, got N={}.".format(N))
    N = int(N)

    rng = np.random.default_rng(seed)
    depth = math.ceil(math.log2(N - 1)) if N > 2 else 0
    y = np.zeros(2)
    for level in range(1, depth + 1):
        scale = COASTLINE_AMPLITUDE * 2.0 ** (-h * level)
        midpoints = 0.5 * (y[:-1] + y[1:]) + scale * rng.standard_normal(len(y) - 1)
        refined = np.empty(2 * len(y) - 1)
        refined[0::2] = y
        refined[1::2] = midpoints
        y = refined

    x = np.linspace(0.0, 1.0, len(y))
    if len(y) != N:
        keep = np.round(np.linspace(0, len(y) - 1, N)).astype(np.intp)
        x, y = x[keep], y[keep]
    return Polyline(np.column_stack([x, y]))


def coastline_corpus(size, N, h, seed=0):
    return [SyntheticCoastline(seed + i, N, h, generate_coastline(seed + i, N, h)) for i in range(size)]


def run_algorithm(algorithm, curve, K, rho=0.5, beta=4, engine="rsdp"):
    """Run one engine and return its K-segment approximation of ``curve``."""
    algorithm = Algorithm.parse(algorithm)
    if algorithm is Algorithm.FSDP:
        return fsdp_simplify(curve, K)
    if algorithm is Algorithm.RSDP:
        return rsdp_simplify(curve, K, beta)
    if algorithm is Algorithm.SPLIT:
        return split_simplify(curve, K)
    if algorithm is Algorithm.MERGE:
        return merge_simplify(curve, K)
    return mr_simplify(curve, K, rho, beta, engine).final


def _timed(algorithm, curve, K, rho, beta, engine):
    start = time.perf_counter_ns()
    approximation = run_algorithm(algorithm, curve, K, rho, beta, engine)
    elapsed = time.perf_counter_ns() - start
    return approximation, max(elapsed, 1) / 1000.0


def _parameters(algorithm, rho, beta):
    return (rho if algorithm is Algorithm.MR else None,
            beta if algorithm in (Algorithm.RSDP, Algorithm.MR) else None)


def _sweep_curve(task):
    index, curve, Ks, candidates, params = task
    records = []
    for K in Ks:
        optimum, optimum_us = _timed(Algorithm.FSDP, curve, K, None, None, None)
        logger.debug("Curve %d, K=%d: E_min=%r.", index, K, optimum.error)

        for algorithm, rho in candidates:
            if algorithm is Algorithm.FSDP:
                approximation, runtime_us, F = optimum, optimum_us, 100.0
            else:
                approximation, runtime_us = _timed(algorithm, curve, K, rho, params.beta, params.engine)
                F = fidelity(optimum.error, approximation.error)

            rho_used, beta_used = _parameters(algorithm, rho, params.beta)
            records.append(BenchRecord(algorithm, len(curve), K, rho_used, beta_used, runtime_us,
                                       approximation.error, F, 1, approximation.visits, index))
    return records


def _curves(corpus):
    curves = [item.points if isinstance(item, SyntheticCoastline) else item for item in corpus]
    if not curves:
        raise ValueError("The corpus is empty.")
    return curves


def _run_sweep(corpus, Ks, candidates, params):
    curves = _curves(corpus)
    Ks = [int(K) for K in Ks]
    shortest = min(len(curve) for curve in curves)
    for K in Ks:
        if not 1 <= K < shortest:
            raise KOutOfRange(K, shortest - 1)

    tasks = [(index, curve, Ks, candidates, params) for index, curve in enumerate(curves)]
    if params.workers > 1 and len(tasks) > 1:
        logger.info("Running the fidelity sweep over %d curves with %d workers.", len(tasks), params.workers)
        with concurrent.futures.ProcessPoolExecutor(max_workers=params.workers) as pool:
            results = list(pool.map(_sweep_curve, tasks))
    else:
        results = [_sweep_curve(task) for task in tasks]

    return [record for records in results for record in records]


def run_fidelity_sweep(corpus, Ks, params=None):
    """
    Fidelity of every algorithm in ``params.algorithms`` for each curve and K.

    FSDP runs once per (curve, K) to provide E_min; FSDP records, when
    requested, carry fidelity 100. Records come in curve order, then K, then
    algorithm, and each carries the single-run time of its algorithm.
    """
    params = params or SweepParams()
    candidates = [(Algorithm.parse(a), params.rho) for a in params.algorithms]
    return _run_sweep(corpus, Ks, candidates, params)


def run_rho_sweep(corpus, K, rhos, params=None):
    """MR fidelity for each decimation factor in ``rhos``, next to the single-step references at the same K."""
    params = params or SweepParams()
    references = [(Algorithm.parse(a), None) for a in params.algorithms if Algorithm.parse(a) is not Algorithm.MR]
    return _run_sweep(corpus, [K], references + [(Algorithm.MR, rho) for rho in rhos], params)


def run_timing_sweep(Ns, K, params=None, repetitions=MIN_REPETITIONS, curves=None):
    """
    Median runtime of each algorithm as N grows with K fixed.

    Parameters
    ----------
    Ns : sequence of int
        Vertex counts; one synthetic coastline (``params.seed``,
        ``params.roughness``) is generated per count.
    K : int
    params : SweepParams, optional
    repetitions : int, optional
        Runs per (algorithm, N), at least 5. The median is reported.
    curves : sequence of Polyline, optional
        Time these curves instead of generated coastlines; ``Ns`` is ignored.

    Returns
    -------
    list of BenchRecord
        Sorted by (algorithm, N). Runs are sequential on one thread.

    """
    params = params or SweepParams()
    if repetitions < MIN_REPETITIONS:
        raise ValueError("Timing sweeps need at least {} repetitions, got {}.".format(MIN_REPETITIONS, repetitions))
    if curves is None:
        curves = [generate_coastline(params.seed, N, params.roughness) for N in sorted(set(Ns))]
    curves = _curves(curves)

    records = []
    for algorithm in (Algorithm.parse(a) for a in params.algorithms):
        for curve in curves:
            N = len(curve)
            if (params.full_search_limit and N > params.full_search_limit
                    and algorithm in (Algorithm.FSDP, Algorithm.RSDP)):
                logger.warning("Skipping %s at N=%d, above the full search limit of %d vertices.",
                               algorithm, N, params.full_search_limit)
                continue

            times = []
            for _ in range(repetitions):
                approximation, runtime_us = _timed(algorithm, curve, K, params.rho, params.beta, params.engine)
                times.append(runtime_us)
            logger.info("%s at N=%d: median %.1f us over %d runs.", algorithm, N, float(np.median(times)), repetitions)

            rho, beta = _parameters(algorithm, params.rho, params.beta)
            records.append(BenchRecord(algorithm, N, K, rho, beta, float(np.median(times)),
                                       approximation.error, None, repetitions, approximation.visits))

    return sorted(records, key=lambda record: (record.algorithm.value, record.N))


def fit_loglog_slope(records, value="runtime_us"):
    """
    Least-squares slope of log(value) against log(N) for one algorithm.

    Raises
    ------
    TooFewPoints
        Fewer than four distinct N values.

    """
    algorithms = {record.algorithm for record in records}
    if len(algorithms) > 1:
        raise ValueError("Slopes are fit per algorithm; got records for {}.".format(sorted(str(a) for a in algorithms)))

    points = [(record.N, getattr(record, value)) for record in records if getattr(record, value) is not None]
    if len({N for N, _ in points}) < 4:
        raise TooFewPoints("A slope needs at least 4 distinct N values, got {}.".format(len({N for N, _ in points})))

    N, measured = np.array(points, dtype=float).T
    if np.any(measured <= 0):
        raise ValueError("Log-log slopes need positive {} values.".format(value))
    return float(np.polyfit(np.log(N), np.log(measured), 1)[0])


def records_frame(records):
    frame = pd.DataFrame([record.to_dict() for record in records],
                         columns=[f.name for f in dataclasses.fields(BenchRecord)])
    for column in ("N", "K", "beta", "repetitions", "visits", "curve"):
        frame[column] = frame[column].astype("Int64")
    return frame


def summarize(records):
    """Mean fidelity and error, median runtime per (algorithm, N, K, rho, beta)."""
    frame = records_frame(records)
    summary = frame.groupby(["algorithm", "N", "K", "rho", "beta"], dropna=False, sort=True).agg(
        fidelity=("fidelity", "mean"),
        error=("error", "mean"),
        runtime_us=("runtime_us", "median"),
        count=("error", "size"))
    return summary.reset_index()
