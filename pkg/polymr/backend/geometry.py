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
Prefix moments and the L2 error of approximating segments.

The error of a segment (i, j) is the sum, over the vertices strictly between
i and j, of the squared perpendicular distance to the infinite line through
vertices i and j. With the prefix moments of a polyline it costs O(1) per
segment, and ``segment_errors`` evaluates whole blocks of segments at once.
"""

import bisect

import numpy as np

from polymr.backend.datatypes import MomentTable
from polymr.backend.datatypes import Polyline
from polymr.backend.errors import VertexNotInOriginal


def _prefix(values):
    table = np.zeros(len(values) + 1)
    np.cumsum(values, out=table[1:])
    return table


def build_moments(curve):
    x = curve.x
    y = curve.y
    return MomentTable(_prefix(x), _prefix(y), _prefix(x * x), _prefix(y * y), _prefix(x * y))


def segment_errors(table, curve, i, j):
    """
    Vectorized segment error for broadcastable index arrays ``i`` and ``j``.

    Moments of the interior vertices are taken relative to vertex i, so the
    result only depends on the shape of the segment and not on where the
    curve sits in the plane. Entries with i >= j are meaningless and must be
    masked by the caller.
    """
    i = np.asarray(i, dtype=np.intp)
    j = np.asarray(j, dtype=np.intp)
    coords = curve.coords
    xi, yi = coords[i, 0], coords[i, 1]
    dx = coords[j, 0] - xi
    dy = coords[j, 1] - yi

    first = i + 1
    count = (j - first).astype(float)
    sx = table.sx[j] - table.sx[first]
    sy = table.sy[j] - table.sy[first]
    suu = (table.sxx[j] - table.sxx[first]) - 2.0 * xi * sx + count * xi * xi
    svv = (table.syy[j] - table.syy[first]) - 2.0 * yi * sy + count * yi * yi
    suv = (table.sxy[j] - table.sxy[first]) - xi * sy - yi * sx + count * xi * yi

    chord = dx * dx + dy * dy
    cross = dx * dx * svv - 2.0 * dx * dy * suv + dy * dy * suu
    with np.errstate(divide="ignore", invalid="ignore"):
        errors = np.where(chord > 0.0, cross / chord, suu + svv)
    return np.maximum(errors, 0.0)


def segment_error(table, curve, i, j):
    N = len(curve)
    if not 0 <= i < j <= N - 1:
        raise IndexError("Segment ({}, {}) is outside 0 <= i < j <= {}.".format(i, j, N - 1))
    return float(segment_errors(table, curve, i, j))


def breakpoints_error(table, curve, breakpoints):
    """Sum of the segment errors, accumulated left to right."""
    breakpoints = np.asarray(breakpoints, dtype=np.intp)
    total = 0.0
    for error in segment_errors(table, curve, breakpoints[:-1], breakpoints[1:]).tolist():
        total += error
    return total


def resolve_indices(original, approx_points):
    """
    Map the vertices of a nested approximation to indices of ``original``.

    Raises
    ------
    VertexNotInOriginal
        A vertex does not occur in the original (after the previous match),
        or the endpoints do not coincide with the original endpoints.

    """
    if isinstance(approx_points, Polyline):
        approx_points = approx_points.coords
    approx_points = [tuple(p) for p in np.asarray(approx_points, dtype=float).tolist()]

    positions = {}
    for index, point in enumerate(original.coords.tolist()):
        positions.setdefault(tuple(point), []).append(index)

    last = len(original) - 1
    indices = []
    for count, point in enumerate(approx_points):
        candidates = positions.get(point)
        if candidates is None:
            raise VertexNotInOriginal("Approximation vertex {} is not a vertex of the original curve.".format(point))

        if count == 0:
            index = 0 if candidates[0] == 0 else None
        elif count == len(approx_points) - 1:
            index = last if candidates[-1] == last and (not indices or indices[-1] < last) else None
        else:
            slot = bisect.bisect_right(candidates, indices[-1])
            index = candidates[slot] if slot < len(candidates) else None

        if index is None:
            raise VertexNotInOriginal("Approximation vertex {} cannot be matched in order to the original curve; "
                                      "endpoints must coincide and vertices must follow the original order.".format(point))
        indices.append(index)

    if len(indices) < 2:
        raise VertexNotInOriginal("An approximation needs at least its two endpoints.")
    return indices


def curve_error(original, approx_points, table=None):
    """
    L2 error of a nested approximation measured against the original curve.

    Parameters
    ----------
    original : Polyline
    approx_points : Polyline or sequence of (x, y)
        Every vertex must be a vertex of ``original``, in order, with
        matching endpoints.
    table : MomentTable, optional
        Moments of ``original``, computed when omitted.

    Returns
    -------
    float

    """
    indices = resolve_indices(original, approx_points)
    if table is None:
        table = build_moments(original)
    return breakpoints_error(table, original, indices)
