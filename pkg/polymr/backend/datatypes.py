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
Data classes shared by the simplification engines.

Every object here is immutable after construction: coordinate and prefix
arrays are flagged read-only and index sequences are stored as tuples, so
instances can be shared freely between callers.
"""

import collections

import numpy as np

from polymr.backend.errors import InvalidPolyline


Point = collections.namedtuple("Point", ["x", "y"])


def _frozen(array):
    array.flags.writeable = False
    return array


class Polyline():
    """
    An open curve of N >= 2 ordered 2D points.

    Consecutive duplicate points are dropped on construction. Pyramid levels
    are built with ``subset``, which keeps the selected vertices as they are.
    """

    def __init__(self, points):
        try:
            coords = np.array(points, dtype=float)
        except (TypeError, ValueError) as error:
            raise InvalidPolyline("The points could not be read as (x, y) pairs.") from error

        if coords.ndim != 2 or coords.shape[1] != 2:
            raise InvalidPolyline("Points must be (x, y) pairs, got an array of shape {}.".format(coords.shape))

        if not np.all(np.isfinite(coords)):
            raise InvalidPolyline("Point coordinates must be finite; NaN or infinity was found.")

        if len(coords):
            keep = np.ones(len(coords), dtype=bool)
            keep[1:] = np.any(coords[1:] != coords[:-1], axis=1)
            self.dropped = int(len(coords) - keep.sum())
            coords = coords[keep]
        else:
            self.dropped = 0

        if len(coords) < 2:
            raise InvalidPolyline("A polyline needs at least two distinct consecutive points, got {}.".format(len(coords)))

        self._coords = _frozen(coords)

    @classmethod
    def _wrap(cls, coords):
        polyline = cls.__new__(cls)
        polyline.dropped = 0
        polyline._coords = _frozen(coords)
        return polyline

    def subset(self, indices):
        """Return the polyline made of the vertices at ``indices``, in order."""
        indices = np.asarray(indices, dtype=np.intp)
        if len(indices) < 2:
            raise InvalidPolyline("A polyline subset needs at least two vertices.")
        return Polyline._wrap(self._coords[indices])

    @property
    def coords(self):
        return self._coords

    @property
    def x(self):
        return self._coords[:, 0]

    @property
    def y(self):
        return self._coords[:, 1]

    def __len__(self):
        return len(self._coords)

    def __getitem__(self, index):
        x, y = self._coords[index]
        return Point(float(x), float(y))

    def __iter__(self):
        return (Point(x, y) for x, y in self._coords.tolist())

    def __eq__(self, other):
        if not isinstance(other, Polyline):
            return NotImplemented
        return np.array_equal(self._coords, other._coords)

    __hash__ = None

    def __repr__(self):
        return "Polyline(N={}, start={}, end={})".format(len(self), tuple(self[0]), tuple(self[-1]))


class MomentTable():
    """
    Prefix sums of x, y, x², y² and x·y over the vertices of a polyline.

    Entry k holds the sum over vertices 0..k-1, so every sequence has N+1
    entries and starts at 0.
    """

    def __init__(self, sx, sy, sxx, syy, sxy):
        self.sx = _frozen(sx)
        self.sy = _frozen(sy)
        self.sxx = _frozen(sxx)
        self.syy = _frozen(syy)
        self.sxy = _frozen(sxy)

    def __len__(self):
        return len(self.sx)

    def __repr__(self):
        return "MomentTable(N={})".format(len(self) - 1)


class Approximation():
    """
    A breakpoint sequence into a source polyline of ``source_len`` vertices.

    Parameters
    ----------
    source_len : int
        Vertex count of the indexed polyline.
    breakpoints : sequence of int
        Strictly increasing, from 0 to source_len - 1.
    error : float
        Sum of squared perpendicular distances, in map units squared.
    visits : int, optional
        Number of dynamic programming states evaluated to produce it
        (0 for the heuristics).

    """

    def __init__(self, source_len, breakpoints, error, visits=0):
        breakpoints = tuple(int(b) for b in breakpoints)

        if len(breakpoints) < 2 or breakpoints[0] != 0 or breakpoints[-1] != source_len - 1:
            raise ValueError("Breakpoints must start at 0 and end at {}; got {}.".format(source_len - 1, breakpoints))
        if any(b >= c for b, c in zip(breakpoints, breakpoints[1:])):
            raise ValueError("Breakpoints must be strictly increasing; got {}.".format(breakpoints))
        if not error >= 0.0:
            raise ValueError("An approximation error must be >= 0; got {}.".format(error))

        self.source_len = int(source_len)
        self.breakpoints = breakpoints
        self.error = float(error)
        self.visits = int(visits)

    @property
    def K(self):
        return len(self.breakpoints) - 1

    def __eq__(self, other):
        if not isinstance(other, Approximation):
            return NotImplemented
        return (self.source_len, self.breakpoints, self.error) == (other.source_len, other.breakpoints, other.error)

    __hash__ = None

    def __repr__(self):
        return "Approximation(K={}, error={!r}, breakpoints={})".format(self.K, self.error, list(self.breakpoints))


class Corridor():
    """
    Admissible states of the (segment ordinal k, vertex n) grid.

    A state is admissible when |k - n·K/(N-1)| <= beta, and the end states
    (0, 0) and (K, N-1) always are. States that cannot lie on a path from
    (0, 0) to (K, N-1) (n < k, or fewer than K - k vertices left) are
    excluded as well. ``beta=None`` admits the whole grid (full search).
    """

    def __init__(self, beta, N, K):
        self.beta = beta
        self.N = N
        self.K = K

    @classmethod
    def full(cls, N, K):
        return cls(None, N, K)

    def bounds(self, k):
        """Inclusive (low, high) vertex range admissible at ordinal k."""
        N, K = self.N, self.K
        if k == 0:
            return 0, 0
        if k == K:
            return N - 1, N - 1

        low, high = k, N - 1 - (K - k)
        if self.beta is not None:
            low = max(low, -((self.beta - k) * (N - 1) // K))
            high = min(high, (k + self.beta) * (N - 1) // K)
        return low, high

    def admissible(self, k, n):
        if not 0 <= k <= self.K:
            return False
        low, high = self.bounds(k)
        return low <= n <= high

    def __repr__(self):
        return "Corridor(beta={}, N={}, K={})".format(self.beta, self.N, self.K)


class DpTable():
    """
    Parent pointers of a segment-ordinal dynamic program.

    Only the admissible slice of each row is stored: row k covers vertices
    ``low_k .. low_k + len(row) - 1`` and holds, per vertex, the offset of
    its best predecessor from ``first_k``, the lowest vertex of row k-1.
    Costs are kept by the solver and are not part of the table.
    """

    def __init__(self, K, N):
        self.K = K
        self.N = N
        self.rows = [(0, 0, np.zeros(1, dtype=np.intp))]
        self.visits = 1

    def record(self, low, first, parents):
        self.rows.append((low, first, parents))
        self.visits += len(parents)

    def parent(self, k, n):
        low, first, parents = self.rows[k]
        return first + int(parents[n - low])

    def backtrack(self):
        breakpoints = [self.N - 1]
        for k in range(self.K, 0, -1):
            breakpoints.append(self.parent(k, breakpoints[-1]))
        breakpoints.reverse()
        return breakpoints


class LevelSchedule():
    """
    Segment counts of a multiresolution pyramid.

    ``levels`` runs from the input segment count N down to the target K;
    ``r`` is the natural number with N·rho^(r+1) < K <= N·rho^r.
    """

    def __init__(self, N, K, rho, levels, r):
        self.N = N
        self.K = K
        self.rho = rho
        self.levels = tuple(levels)
        self.r = r

    def steps(self):
        return list(zip(self.levels, self.levels[1:]))

    def __len__(self):
        return len(self.levels)

    def __iter__(self):
        return iter(self.levels)

    def __getitem__(self, index):
        return self.levels[index]

    def __repr__(self):
        return "LevelSchedule(rho={}, r={}, levels={})".format(self.rho, self.r, list(self.levels))


class Pyramid():
    """
    Nested approximations of one curve, from the original down to K segments.

    ``levels[j-1]`` indexes into the vertices of level j-1; ``resolved[j]``
    and ``errors[j]`` describe level j against the original curve, with
    level 0 being the original itself.
    """

    def __init__(self, original, schedule, levels, resolved, errors):
        self.original = original
        self.schedule = schedule
        self.levels = tuple(levels)
        self.resolved = tuple(tuple(r) for r in resolved)
        self.errors = tuple(float(e) for e in errors)

    def __len__(self):
        return len(self.levels)

    @property
    def visits(self):
        return sum(level.visits for level in self.levels)

    @property
    def final(self):
        return Approximation(len(self.original), self.resolved[-1], self.errors[-1], self.visits)

    def resolved_points(self, j):
        return self.original.subset(self.resolved[j])

    def is_nested(self):
        return all(set(fine).issuperset(coarse) for fine, coarse in zip(self.resolved, self.resolved[1:]))

    def to_dict(self):
        return {"N": len(self.original),
                "K": self.schedule.K,
                "rho": self.schedule.rho,
                "r": self.schedule.r,
                "schedule": list(self.schedule.levels),
                "visits": self.visits,
                "levels": [{"level": j,
                            "segments": len(indices) - 1,
                            "error": self.errors[j],
                            "indices": list(indices)}
                           for j, indices in enumerate(self.resolved)]}

    def __repr__(self):
        return "Pyramid(schedule={}, final_error={!r})".format(list(self.schedule.levels), self.errors[-1])
