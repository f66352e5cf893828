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
Top-down multiresolution driver.

Starting from the original curve (level 0, N segments) each level j keeps
K_j = round(rho^j · N) segments chosen among the vertices of level j-1, and a
final step lands on exactly K segments. With the reduced-search dynamic
program between levels the whole pyramid costs O(N) state evaluations,
whatever the number of levels.
"""

import fractions
import logging
import math

from polymr.backend.datatypes import Approximation
from polymr.backend.datatypes import LevelSchedule
from polymr.backend.datatypes import Pyramid
from polymr.backend.dynprog import check_beta
from polymr.backend.dynprog import check_segments
from polymr.backend.dynprog import fsdp_simplify
from polymr.backend.dynprog import rsdp_simplify
from polymr.backend.errors import BadRho
from polymr.backend.errors import KOutOfRange
from polymr.backend.errors import LevelOutOfRange
from polymr.backend.geometry import breakpoints_error
from polymr.backend.geometry import build_moments
from polymr.backend.heuristics import merge_simplify
from polymr.backend.heuristics import split_simplify

logger = logging.getLogger(__name__)

ENGINES = ("rsdp", "fsdp", "split", "merge")


def _check_rho(rho):
    try:
        ratio = fractions.Fraction(rho)
    except (TypeError, ValueError) as error:
        raise BadRho(rho) from error
    if not 0 < ratio < 1:
        raise BadRho(rho)
    return ratio


def level_schedule(N, K, rho):
    """
    Segment counts N = K_0 > K_1 > ... > K_r >= K, with K appended last.

    Parameters
    ----------
    N : int
        Segment count of the input curve (vertices - 1).
    K : int
        Target segment count, 1 <= K < N.
    rho : float
        Decimation factor in (0, 1).

    Raises
    ------
    BadRho
    KOutOfRange

    Returns
    -------
    LevelSchedule

    """
    ratio = _check_rho(rho)
    if isinstance(K, bool) or int(K) != K or not 1 <= K < N:
        raise KOutOfRange(K, N - 1)
    N, K = int(N), int(K)

    # r is the natural number with N·rho^(r+1) < K <= N·rho^r, in exact arithmetic
    r = 0
    scale = N * ratio
    while scale >= K:
        r += 1
        scale *= ratio

    levels = [N]
    scale = fractions.Fraction(N)
    half = fractions.Fraction(1, 2)
    for _ in range(r):
        scale *= ratio
        count = min(math.floor(scale + half), levels[-1] - 1)
        if count <= K:
            break
        levels.append(count)
    levels.append(K)

    return LevelSchedule(N, K, rho, levels, r)


def _run_engine(engine, curve, K, beta):
    if engine == "rsdp":
        return rsdp_simplify(curve, K, beta)
    if engine == "fsdp":
        return fsdp_simplify(curve, K)
    if engine == "split":
        return split_simplify(curve, K)
    if engine == "merge":
        return merge_simplify(curve, K)
    raise ValueError("Unknown inter-level engine '{}'; try one of {}.".format(engine, list(ENGINES)))


def mr_simplify(curve, K, rho=0.5, beta=4, engine="rsdp"):
    """
    Build the nested pyramid of ``curve`` down to exactly K segments.

    Each level is simplified from the vertices of the previous level only;
    the per-level errors stored in the pyramid are measured against the
    original curve.

    Parameters
    ----------
    curve : Polyline
    K : int
    rho : float, optional
        Decimation factor in (0, 1). The default is 0.5.
    beta : int, optional
        Corridor half-width of the reduced search. The default is 4.
    engine : str, optional
        Single-step algorithm applied between levels: 'rsdp' (default),
        'fsdp', 'split' or 'merge'.

    Returns
    -------
    Pyramid

    """
    if engine not in ENGINES:
        raise ValueError("Unknown inter-level engine '{}'; try one of {}.".format(engine, list(ENGINES)))
    N = len(curve) - 1
    K = check_segments(curve, K)
    if K == N:
        # nothing to decimate: a single identity step
        _check_rho(rho)
        schedule = LevelSchedule(N, K, rho, [N, K], 0)
    else:
        schedule = level_schedule(N, K, rho)
    beta = check_beta(beta)

    table = build_moments(curve)
    current = curve
    resolved = [tuple(range(len(curve)))]
    errors = [0.0]
    levels = []
    for j, (source, target) in enumerate(schedule.steps(), start=1):
        approximation = _run_engine(engine, current, target, beta)
        indices = tuple(resolved[-1][b] for b in approximation.breakpoints)

        levels.append(approximation)
        resolved.append(indices)
        errors.append(breakpoints_error(table, curve, indices))
        logger.debug("Level %d: %d -> %d segments, %d states, error %r.",
                     j, source, target, approximation.visits, errors[-1])
        current = curve.subset(indices)

    return Pyramid(curve, schedule, levels, resolved, errors)


def extract_level(pyramid, j):
    """
    Level j of a pyramid as an approximation of the original curve.

    Level 0 is the original itself; level ``len(pyramid)`` is the K-segment
    result.
    """
    if isinstance(j, bool) or int(j) != j or not 0 <= j <= len(pyramid):
        raise LevelOutOfRange("Level {} does not exist; the pyramid has levels 0 to {}.".format(j, len(pyramid)))
    j = int(j)

    visits = pyramid.levels[j - 1].visits if j else 0
    return Approximation(len(pyramid.original), pyramid.resolved[j], pyramid.errors[j], visits)
