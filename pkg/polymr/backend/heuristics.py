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
Single-step heuristics driven to exactly K segments.

SPLIT is Douglas-Peucker run as a priority queue: the segment whose farthest
interior vertex deviates most is split first. MERGE starts from every vertex
and repeatedly removes the interior vertex whose two adjacent segments merge
at the lowest L2 cost. Both report the L2 error against the original curve.
"""

import heapq
import logging
import math

import numpy as np

from polymr.backend.datatypes import Approximation
from polymr.backend.dynprog import check_segments
from polymr.backend.geometry import breakpoints_error
from polymr.backend.geometry import build_moments

logger = logging.getLogger(__name__)


class SplitQueueEntry():
    """A splittable segment (i, j) keyed by the deviation of its farthest vertex."""

    __slots__ = ("i", "j", "farthest", "deviation")

    def __init__(self, i, j, farthest, deviation):
        self.i = i
        self.j = j
        self.farthest = farthest
        self.deviation = deviation

    @classmethod
    def from_segment(cls, coords, i, j):
        interior = coords[i + 1:j] - coords[i]
        dx, dy = coords[j] - coords[i]
        chord = dx * dx + dy * dy
        if chord > 0.0:
            score = np.abs(dx * interior[:, 1] - dy * interior[:, 0])
            k = int(np.argmax(score))
            deviation = float(score[k]) / math.sqrt(chord)
        else:
            score = np.hypot(interior[:, 0], interior[:, 1])
            k = int(np.argmax(score))
            deviation = float(score[k])
        return cls(i, j, i + 1 + k, deviation)

    def __lt__(self, other):
        return (-self.deviation, self.i) < (-other.deviation, other.i)

    def __repr__(self):
        return "SplitQueueEntry(({}, {}), farthest={}, deviation={!r})".format(self.i, self.j, self.farthest, self.deviation)


class MergeHeapEntry():
    """Cost of removing ``vertex``; stale once the vertex's generation moves on."""

    __slots__ = ("cost", "vertex", "generation")

    def __init__(self, cost, vertex, generation):
        self.cost = cost
        self.vertex = vertex
        self.generation = generation

    def __lt__(self, other):
        return (self.cost, self.vertex) < (other.cost, other.vertex)

    def __repr__(self):
        return "MergeHeapEntry(vertex={}, cost={!r}, generation={})".format(self.vertex, self.cost, self.generation)


def split_order(curve, splits):
    """Vertices in the order SPLIT inserts them, ``splits`` of them."""
    coords = curve.coords
    queue = []
    if len(curve) > 2:
        queue.append(SplitQueueEntry.from_segment(coords, 0, len(curve) - 1))

    order = []
    while len(order) < splits:
        entry = heapq.heappop(queue)
        order.append(entry.farthest)
        for i, j in ((entry.i, entry.farthest), (entry.farthest, entry.j)):
            if j - i > 1:
                heapq.heappush(queue, SplitQueueEntry.from_segment(coords, i, j))
    return order


def split_simplify(curve, K):
    """
    Douglas-Peucker splitting until exactly K segments exist.

    Parameters
    ----------
    curve : Polyline
    K : int
        Segment count, 1 <= K <= N-1.

    Returns
    -------
    Approximation
        Breakpoints of the K-segment split, with the L2 error against
        ``curve``.

    """
    K = check_segments(curve, K)
    breakpoints = sorted([0, len(curve) - 1] + split_order(curve, K - 1))
    error = breakpoints_error(build_moments(curve), curve, breakpoints)
    return Approximation(len(curve), breakpoints, error)


def merge_cost(xs, ys, a, v, b):
    """Squared distance from vertex v to the line through its chain neighbours a and b."""
    dx = xs[b] - xs[a]
    dy = ys[b] - ys[a]
    ux = xs[v] - xs[a]
    uy = ys[v] - ys[a]
    chord = dx * dx + dy * dy
    if chord > 0.0:
        cross = dx * uy - dy * ux
        return cross * cross / chord
    return ux * ux + uy * uy


def merge_order(curve, K):
    """Interior vertices in the order MERGE eliminates them to reach K segments."""
    N = len(curve)
    xs = curve.x.tolist()
    ys = curve.y.tolist()
    previous = list(range(-1, N - 1))
    following = list(range(1, N + 1))
    generation = [0] * N
    removed = [False] * N

    heap = [MergeHeapEntry(merge_cost(xs, ys, v - 1, v, v + 1), v, 0) for v in range(1, N - 1)]
    heapq.heapify(heap)

    order = []
    while len(order) < N - 1 - K:
        entry = heapq.heappop(heap)
        v = entry.vertex
        if removed[v] or entry.generation != generation[v]:
            continue

        removed[v] = True
        order.append(v)
        a, b = previous[v], following[v]
        following[a] = b
        previous[b] = a
        for w in (a, b):
            if 0 < w < N - 1:
                generation[w] += 1
                cost = merge_cost(xs, ys, previous[w], w, following[w])
                heapq.heappush(heap, MergeHeapEntry(cost, w, generation[w]))
    return order


def merge_simplify(curve, K):
    """
    Iterative lowest-cost vertex elimination down to exactly K segments.

    The elimination cost only looks at the current chain; the reported error
    is measured against the original curve.
    """
    K = check_segments(curve, K)
    eliminated = set(merge_order(curve, K))
    breakpoints = [v for v in range(len(curve)) if v not in eliminated]
    error = breakpoints_error(build_moments(curve), curve, breakpoints)
    return Approximation(len(curve), breakpoints, error)
