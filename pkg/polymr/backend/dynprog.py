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

#########################
### Model Explanation ###
#########################
# State (k, n): the k-th approximating segment ends at vertex n.
# cost(k, n) = min over m < n of cost(k-1, m) + e(m, n), cost(0, 0) = 0.
# The answer is cost(K, N-1); breakpoints are read back from parent pointers.
#
# Full search (FSDP) admits every state on a path from (0, 0) to (K, N-1).
# Reduced search (RSDP) only admits states inside a corridor of half-width
# beta around the diagonal k = n·K/(N-1), predecessors included.
#
# Segment errors do not depend on cost, so they are computed ahead for whole
# batches of rows in one vectorized call. Each row then only adds
# cost(k-1, m) to its (vertices x predecessors) slice and reduces it with
# argmin, which returns the first minimum, i.e. the smallest predecessor.

import itertools
import logging

import numpy as np

from polymr.backend.datatypes import Approximation
from polymr.backend.datatypes import Corridor
from polymr.backend.datatypes import DpTable
from polymr.backend.errors import BadBeta
from polymr.backend.errors import InstanceTooLarge
from polymr.backend.errors import KOutOfRange
from polymr.backend.geometry import build_moments
from polymr.backend.geometry import segment_errors

logger = logging.getLogger(__name__)

BLOCK_CELLS = 1 << 18
BRUTE_FORCE_MAX_N = 24
BRUTE_FORCE_MAX_K = 8


def check_segments(curve, K):
    if isinstance(K, bool) or int(K) != K or not 1 <= K <= len(curve) - 1:
        raise KOutOfRange(K, len(curve) - 1)
    return int(K)


def check_beta(beta):
    if isinstance(beta, bool) or int(beta) != beta or beta < 1:
        raise BadBeta(beta)
    return int(beta)


def _chunks(bounds):
    # (k, first vertex, vertex count, lowest predecessor, predecessor count)
    for k in range(1, len(bounds)):
        plow, phigh = bounds[k - 1]
        low, high = bounds[k]
        rows = max(1, BLOCK_CELLS // (phigh - plow + 1))
        for start in range(low, high + 1, rows):
            count = min(rows, high + 1 - start)
            width = max(0, min(phigh + 1, start + count - 1) - plow)
            yield k, start, count, plow, width


def _batches(chunks):
    batch, cells = [], 0
    for chunk in chunks:
        size = chunk[2] * chunk[4]
        if batch and cells + size > BLOCK_CELLS:
            yield batch
            batch, cells = [], 0
        batch.append(chunk)
        cells += size
    if batch:
        yield batch


def _batch_errors(table, curve, batch):
    """Segment errors of every chunk in ``batch`` from a single vectorized call."""
    starts = np.array([chunk[1] for chunk in batch], dtype=np.intp)
    counts = np.array([chunk[2] for chunk in batch], dtype=np.intp)
    plows = np.array([chunk[3] for chunk in batch], dtype=np.intp)
    widths = np.array([chunk[4] for chunk in batch], dtype=np.intp)
    sizes = counts * widths
    offsets = np.zeros(len(batch) + 1, dtype=np.intp)
    np.cumsum(sizes, out=offsets[1:])

    local = np.arange(offsets[-1], dtype=np.intp) - np.repeat(offsets[:-1], sizes)
    span = np.repeat(widths, sizes)
    n = np.repeat(starts, sizes) + local // span
    m = np.repeat(plows, sizes) + local % span
    errors = segment_errors(table, curve, m, n)
    errors[m >= n] = np.inf

    return [errors[offsets[i]:offsets[i + 1]].reshape(counts[i], widths[i]) for i in range(len(batch))]


def _solve(curve, K, corridor):
    N = len(curve)
    table = build_moments(curve)
    dp = DpTable(K, N)
    bounds = [(0, 0)] + [corridor.bounds(k) for k in range(1, K + 1)]

    previous_cost = np.zeros(1)
    costs, parents = [], []
    for batch in _batches(_chunks(bounds)):
        for (k, start, count, plow, width), errors in zip(batch, _batch_errors(table, curve, batch)):
            if width:
                total = errors + previous_cost[:width]
                best = np.argmin(total, axis=1)
                costs.append(total[np.arange(count), best])
                parents.append(best)
            else:
                costs.append(np.full(count, np.inf))
                parents.append(np.zeros(count, dtype=np.intp))

            low, high = bounds[k]
            if start + count - 1 == high:
                previous_cost = np.concatenate(costs)
                dp.record(low, plow, np.concatenate(parents))
                costs, parents = [], []

    error = float(previous_cost[-1])
    if not np.isfinite(error):
        raise RuntimeError("No admissible path reaches state ({}, {}).".format(K, N - 1))

    return Approximation(N, dp.backtrack(), error, visits=dp.visits)


def fsdp_simplify(curve, K):
    """
    Optimal K-segment approximation by full-search dynamic programming.

    Parameters
    ----------
    curve : Polyline
    K : int
        Segment count, 1 <= K <= N-1.

    Raises
    ------
    KOutOfRange

    Returns
    -------
    Approximation
        The global minimum error; ties go to the smallest predecessor.

    """
    K = check_segments(curve, K)
    logger.debug("Full search on %d vertices for K=%d.", len(curve), K)
    return _solve(curve, K, Corridor.full(len(curve), K))


def rsdp_simplify(curve, K, beta):
    """
    Reduced-search dynamic programming inside a fixed corridor.

    Same recurrence as ``fsdp_simplify`` restricted to the states of
    ``Corridor(beta, N, K)``. With beta >= K the corridor covers the whole
    grid and the output is identical to the full search.
    """
    K = check_segments(curve, K)
    beta = check_beta(beta)
    logger.debug("Reduced search on %d vertices for K=%d, beta=%d.", len(curve), K, beta)
    return _solve(curve, K, Corridor(beta, len(curve), K))


def brute_force_optimum(curve, K):
    """
    Enumerate every interior breakpoint subset; a test oracle for small curves.

    Subsets are visited in lexicographic order and only a strictly smaller
    error replaces the incumbent, so ties resolve to the smallest sequence.
    """
    N = len(curve)
    K = check_segments(curve, K)
    if N > BRUTE_FORCE_MAX_N or K > BRUTE_FORCE_MAX_K:
        raise InstanceTooLarge("Exhaustive search is limited to N <= {} and K <= {}; got N={}, K={}.".format(
            BRUTE_FORCE_MAX_N, BRUTE_FORCE_MAX_K, N, K))

    table = build_moments(curve)
    index = np.arange(N)
    errors = segment_errors(table, curve, index[:, np.newaxis], index[np.newaxis, :]).tolist()

    best_error = None
    best = None
    for interior in itertools.combinations(range(1, N - 1), K - 1):
        breakpoints = (0,) + interior + (N - 1,)
        total = 0.0
        for m, n in zip(breakpoints, breakpoints[1:]):
            total += errors[m][n]
        if best_error is None or total < best_error:
            best_error = total
            best = breakpoints

    return Approximation(N, best, best_error)
