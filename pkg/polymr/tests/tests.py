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

import fractions
import math
import unittest

import numpy as np

from polymr.backend.datatypes import Polyline

C5 = [(0, 0), (1, 1), (2, 0), (3, 1), (4, 0)]


def random_curve(rng, N):
    return Polyline(rng.standard_normal((N, 2)))


def direct_error(coords, i, j):
    (xi, yi), (xj, yj) = coords[i], coords[j]
    dx, dy = xj - xi, yj - yi
    total = 0.0
    for x, y in coords[i + 1:j]:
        total += (dx * (y - yi) - dy * (x - xi)) ** 2 / (dx * dx + dy * dy)
    return total


class PolylineMethods(unittest.TestCase):

    def test_consecutive_duplicates_dropped(self):
        curve = Polyline([(0, 0), (0, 0), (1, 1), (1, 1), (2, 0)])
        self.assertEqual(len(curve), 3)
        self.assertEqual(curve.dropped, 2)
        self.assertEqual(curve[1], (1.0, 1.0))

    def test_invalid_points(self):
        from polymr.backend.errors import InvalidPolyline
        with self.assertRaises(InvalidPolyline):
            Polyline([(0, 0), (float("nan"), 1)])
        with self.assertRaises(InvalidPolyline):
            Polyline([(1, 1), (1, 1)])
        with self.assertRaises(InvalidPolyline):
            Polyline([(0, 0, 0), (1, 1, 1)])

    def test_coordinates_are_read_only(self):
        curve = Polyline(C5)
        with self.assertRaises(ValueError):
            curve.coords[0, 0] = 5.0


class GeometryMethods(unittest.TestCase):

    def test_prefix_examples(self):
        from polymr.backend.geometry import build_moments
        table = build_moments(Polyline([(0, 0), (1, 1)]))
        self.assertEqual(table.sx.tolist(), [0, 0, 1])
        self.assertEqual(table.sxx.tolist(), [0, 0, 1])

        table = build_moments(Polyline([(3.5, y) for y in range(6)]))
        self.assertEqual(table.sx.tolist(), [k * 3.5 for k in range(7)])

        table = build_moments(Polyline(C5))
        self.assertEqual(table.sxy.tolist(), [0, 0, 1, 1, 4, 4])

    def test_segment_error_examples(self):
        from polymr.backend.geometry import build_moments
        from polymr.backend.geometry import segment_error

        curve = Polyline([(0, 0), (1, 1), (2, 0)])
        self.assertEqual(segment_error(build_moments(curve), curve, 0, 2), 1.0)

        curve = Polyline(C5)
        table = build_moments(curve)
        self.assertEqual(segment_error(table, curve, 1, 4), 0.8)
        for i in range(4):
            self.assertEqual(segment_error(table, curve, i, i + 1), 0.0)
        with self.assertRaises(IndexError):
            segment_error(table, curve, 3, 3)

    def test_segment_errors_match_direct_sums(self):
        from polymr.backend.geometry import build_moments
        from polymr.backend.geometry import segment_error

        rng = np.random.default_rng(11)
        for _ in range(50):
            curve = random_curve(rng, int(rng.integers(3, 30)))
            table = build_moments(curve)
            coords = curve.coords.tolist()
            N = len(curve)
            for _ in range(10):
                i, j = sorted(rng.choice(N, size=2, replace=False).tolist())
                self.assertTrue(math.isclose(segment_error(table, curve, i, j), direct_error(coords, i, j),
                                             rel_tol=1e-9, abs_tol=1e-12))

    def test_collinear_segments_are_free(self):
        from polymr.backend.geometry import build_moments
        from polymr.backend.geometry import segment_error

        curve = Polyline([(t, 2 * t + 1) for t in range(12)])
        table = build_moments(curve)
        for i in range(11):
            for j in range(i + 1, 12):
                self.assertEqual(segment_error(table, curve, i, j), 0.0)

    def test_rigid_motion_invariance(self):
        from polymr.backend.geometry import build_moments
        from polymr.backend.geometry import segment_error

        rng = np.random.default_rng(5)
        theta = 0.7
        rotation = np.array([[math.cos(theta), -math.sin(theta)], [math.sin(theta), math.cos(theta)]])
        for _ in range(20):
            curve = random_curve(rng, 15)
            moved = Polyline(curve.coords @ rotation.T + np.array([10.0, -7.0]))
            table, moved_table = build_moments(curve), build_moments(moved)
            for i, j in ((0, 14), (2, 9), (5, 7)):
                self.assertTrue(math.isclose(segment_error(table, curve, i, j),
                                             segment_error(moved_table, moved, i, j), rel_tol=1e-9, abs_tol=1e-9))

    def test_curve_error_examples(self):
        from polymr.backend.geometry import curve_error

        curve = Polyline(C5)
        self.assertEqual(curve_error(curve, C5), 0.0)
        self.assertEqual(curve_error(curve, [(0, 0), (2, 0), (4, 0)]), 2.0)
        self.assertEqual(curve_error(curve, [(0, 0), (1, 1), (4, 0)]), 0.8)

    def test_vertex_not_in_original(self):
        from polymr.backend.errors import VertexNotInOriginal
        from polymr.backend.geometry import curve_error

        curve = Polyline(C5)
        with self.assertRaises(VertexNotInOriginal):
            curve_error(curve, [(0, 0), (2.5, 0), (4, 0)])
        with self.assertRaises(KeyError):
            curve_error(curve, [(1, 1), (4, 0)])
        with self.assertRaises(VertexNotInOriginal):
            curve_error(curve, [(0, 0), (3, 1), (1, 1), (4, 0)])


class DynamicProgrammingMethods(unittest.TestCase):

    def test_fsdp_examples(self):
        from polymr.backend.dynprog import fsdp_simplify

        curve = Polyline(C5)
        result = fsdp_simplify(curve, 2)
        self.assertEqual(list(result.breakpoints), [0, 1, 4])
        self.assertEqual(result.error, 0.8)

        result = fsdp_simplify(curve, 1)
        self.assertEqual(list(result.breakpoints), [0, 4])
        self.assertEqual(result.error, 2.0)

        result = fsdp_simplify(curve, 4)
        self.assertEqual(list(result.breakpoints), [0, 1, 2, 3, 4])
        self.assertEqual(result.error, 0.0)

    def test_fsdp_error_can_rise_with_K(self):
        from polymr.backend.dynprog import fsdp_simplify

        # every 3-segment choice on C5 leaves one vertex at distance 1
        curve = Polyline(C5)
        self.assertEqual(fsdp_simplify(curve, 3).error, 1.0)
        self.assertGreater(fsdp_simplify(curve, 3).error, fsdp_simplify(curve, 2).error)

    def test_brute_force_examples(self):
        from polymr.backend.dynprog import brute_force_optimum

        result = brute_force_optimum(Polyline(C5), 2)
        self.assertEqual(list(result.breakpoints), [0, 1, 4])
        self.assertEqual(result.error, 0.8)
        self.assertEqual(brute_force_optimum(Polyline([(t, t) for t in range(6)]), 1).error, 0.0)
        self.assertEqual(brute_force_optimum(Polyline(C5), 4).error, 0.0)

    def test_fsdp_matches_brute_force(self):
        from polymr.backend.dynprog import brute_force_optimum
        from polymr.backend.dynprog import fsdp_simplify

        rng = np.random.default_rng(2024)
        for _ in range(500):
            N = int(rng.integers(5, 21))
            K = int(rng.integers(1, min(6, N - 1) + 1))
            curve = random_curve(rng, N)
            optimum = brute_force_optimum(curve, K)
            result = fsdp_simplify(curve, K)
            self.assertEqual(result.K, K)
            self.assertTrue(math.isclose(result.error, optimum.error, rel_tol=1e-12, abs_tol=1e-15),
                            (N, K, result, optimum))

    def test_rsdp_collapses_to_full_search(self):
        from polymr.backend.dynprog import fsdp_simplify
        from polymr.backend.dynprog import rsdp_simplify

        curve = Polyline(C5)
        self.assertEqual(rsdp_simplify(curve, 2, 4), fsdp_simplify(curve, 2))

        rng = np.random.default_rng(99)
        for _ in range(100):
            N = int(rng.integers(5, 80))
            K = int(rng.integers(1, N))
            beta = K + int(rng.integers(0, 3))
            curve = random_curve(rng, N)
            full, reduced = fsdp_simplify(curve, K), rsdp_simplify(curve, K, beta)
            self.assertEqual(reduced.breakpoints, full.breakpoints)
            self.assertEqual(reduced.error, full.error)

    def test_rsdp_never_beats_full_search(self):
        from polymr.backend.dynprog import fsdp_simplify
        from polymr.backend.dynprog import rsdp_simplify

        rng = np.random.default_rng(64)
        for _ in range(20):
            curve = random_curve(rng, 64)
            self.assertGreaterEqual(rsdp_simplify(curve, 8, 4).error, fsdp_simplify(curve, 8).error * (1 - 1e-12))
            self.assertEqual(rsdp_simplify(curve, 63, 1).error, 0.0)

    def test_reduced_search_visits_fewer_states(self):
        from polymr.backend.dynprog import fsdp_simplify
        from polymr.backend.dynprog import rsdp_simplify

        curve = random_curve(np.random.default_rng(3), 400)
        self.assertLess(rsdp_simplify(curve, 40, 2).visits, fsdp_simplify(curve, 40).visits)

    def test_reduced_search_work_is_linear(self):
        from polymr.backend.dynprog import rsdp_simplify

        beta = 4
        rng = np.random.default_rng(5)
        for d in range(10, 15):
            N = 2 ** d + 1
            result = rsdp_simplify(random_curve(rng, N), N // 16, beta)
            self.assertLessEqual(result.visits, 3 * beta * N, (N, result.visits))

    def test_batch_size_does_not_change_results(self):
        from unittest import mock

        from polymr.backend import dynprog

        rng = np.random.default_rng(11)
        for cells in (1, 7, 64):
            for _ in range(20):
                N = int(rng.integers(5, 60))
                K = int(rng.integers(1, N))
                curve = random_curve(rng, N)
                full, reduced = dynprog.fsdp_simplify(curve, K), dynprog.rsdp_simplify(curve, K, 2)
                with mock.patch.object(dynprog, "BLOCK_CELLS", cells):
                    self.assertEqual(dynprog.fsdp_simplify(curve, K), full)
                    self.assertEqual(dynprog.rsdp_simplify(curve, K, 2), reduced)

    def test_corridor_bounds(self):
        from polymr.backend.datatypes import Corridor

        corridor = Corridor(2, 101, 10)
        self.assertEqual(corridor.bounds(0), (0, 0))
        self.assertEqual(corridor.bounds(10), (100, 100))
        self.assertEqual(corridor.bounds(5), (30, 70))
        self.assertTrue(corridor.admissible(5, 50))
        self.assertFalse(corridor.admissible(5, 71))
        self.assertEqual(Corridor.full(101, 10).bounds(1), (1, 91))

    def test_argument_errors(self):
        from polymr.backend.dynprog import brute_force_optimum
        from polymr.backend.dynprog import fsdp_simplify
        from polymr.backend.dynprog import rsdp_simplify
        from polymr.backend.errors import BadBeta
        from polymr.backend.errors import InstanceTooLarge
        from polymr.backend.errors import KOutOfRange

        curve = Polyline(C5)
        with self.assertRaises(KOutOfRange):
            fsdp_simplify(curve, 0)
        with self.assertRaises(KOutOfRange):
            fsdp_simplify(curve, 5)
        with self.assertRaises(BadBeta):
            rsdp_simplify(curve, 2, 0)
        with self.assertRaises(InstanceTooLarge):
            brute_force_optimum(random_curve(np.random.default_rng(0), 25), 3)


class HeuristicMethods(unittest.TestCase):

    def test_split_examples(self):
        from polymr.backend.heuristics import split_simplify

        curve = Polyline(C5)
        result = split_simplify(curve, 2)
        self.assertEqual(list(result.breakpoints), [0, 1, 4])
        self.assertEqual(result.error, 0.8)
        self.assertEqual(list(split_simplify(curve, 4).breakpoints), [0, 1, 2, 3, 4])
        self.assertEqual(split_simplify(Polyline([(t, -t) for t in range(9)]), 3).error, 0.0)

    def test_merge_examples(self):
        from polymr.backend.heuristics import merge_simplify

        curve = Polyline(C5)
        self.assertEqual(list(merge_simplify(curve, 4).breakpoints), [0, 1, 2, 3, 4])
        self.assertEqual(list(merge_simplify(curve, 3).breakpoints), [0, 2, 3, 4])
        result = merge_simplify(Polyline([(t, 3 * t) for t in range(7)]), 1)
        self.assertEqual(list(result.breakpoints), [0, 6])
        self.assertEqual(result.error, 0.0)

    def test_heuristics_are_nested_in_K(self):
        from polymr.backend.heuristics import merge_simplify
        from polymr.backend.heuristics import split_simplify

        curve = random_curve(np.random.default_rng(8), 40)
        for simplify in (split_simplify, merge_simplify):
            previous = set(simplify(curve, 1).breakpoints)
            for K in range(2, 40):
                current = set(simplify(curve, K).breakpoints)
                self.assertTrue(previous <= current, (simplify.__name__, K))
                previous = current

    def test_merge_heap_matches_naive_recomputation(self):
        from polymr.backend.heuristics import merge_cost
        from polymr.backend.heuristics import merge_order

        rng = np.random.default_rng(17)
        for _ in range(30):
            curve = random_curve(rng, int(rng.integers(3, 40)))
            xs, ys = curve.x.tolist(), curve.y.tolist()
            K = int(rng.integers(1, len(curve)))

            chain = list(range(len(curve)))
            naive = []
            while len(chain) - 1 > K:
                costs = [(merge_cost(xs, ys, chain[p - 1], chain[p], chain[p + 1]), chain[p])
                         for p in range(1, len(chain) - 1)]
                vertex = min(costs)[1]
                naive.append(vertex)
                chain.remove(vertex)

            self.assertEqual(merge_order(curve, K), naive)

    def test_heuristics_never_beat_full_search(self):
        from polymr.backend.dynprog import fsdp_simplify
        from polymr.backend.heuristics import merge_simplify
        from polymr.backend.heuristics import split_simplify

        rng = np.random.default_rng(21)
        for _ in range(20):
            curve = random_curve(rng, 50)
            optimum = fsdp_simplify(curve, 7).error
            self.assertGreaterEqual(split_simplify(curve, 7).error, optimum * (1 - 1e-12))
            self.assertGreaterEqual(merge_simplify(curve, 7).error, optimum * (1 - 1e-12))

    def test_determinism(self):
        from polymr.backend.dynprog import fsdp_simplify
        from polymr.backend.dynprog import rsdp_simplify
        from polymr.backend.heuristics import merge_simplify
        from polymr.backend.heuristics import split_simplify

        curve = random_curve(np.random.default_rng(1), 100)
        self.assertEqual(split_simplify(curve, 12), split_simplify(curve, 12))
        self.assertEqual(merge_simplify(curve, 12), merge_simplify(curve, 12))
        self.assertEqual(fsdp_simplify(curve, 12), fsdp_simplify(curve, 12))
        self.assertEqual(rsdp_simplify(curve, 12, 4), rsdp_simplify(curve, 12, 4))


class MultiresolutionMethods(unittest.TestCase):

    def test_schedule_examples(self):
        from polymr.backend.multires import level_schedule

        schedule = level_schedule(4096, 10, 0.5)
        self.assertEqual(list(schedule), [4096, 2048, 1024, 512, 256, 128, 64, 32, 16, 10])
        self.assertEqual(schedule.r, 8)
        self.assertEqual(len(schedule), 10)

        schedule = level_schedule(8, 3, 0.5)
        self.assertEqual(list(schedule), [8, 4, 3])
        self.assertEqual(schedule.r, 1)

        schedule = level_schedule(50, 49, 0.5)
        self.assertEqual(list(schedule), [50, 49])
        self.assertEqual(schedule.r, 0)

    def test_schedule_bracket_holds(self):
        from polymr.backend.multires import level_schedule

        rng = np.random.default_rng(10)
        rhos = [0.125, 0.25, 0.3, 1 / 3, 0.5, 0.6, 2 / 3, 0.75, 0.875]
        for _ in range(10000):
            N = int(rng.integers(2, 100000))
            K = int(rng.integers(1, N))
            rho = rhos[int(rng.integers(len(rhos)))]
            schedule = level_schedule(N, K, rho)

            ratio = fractions.Fraction(rho)
            self.assertTrue(N * ratio ** (schedule.r + 1) < K <= N * ratio ** schedule.r, (N, K, rho))
            levels = list(schedule)
            self.assertEqual(levels[0], N)
            self.assertEqual(levels[-1], K)
            self.assertTrue(all(a > b for a, b in zip(levels, levels[1:])))
            self.assertTrue(all(count > K for count in levels[:-1]))
            self.assertLessEqual(len(levels), schedule.r + 2)

    def test_mr_examples(self):
        from polymr.backend.multires import extract_level
        from polymr.backend.multires import mr_simplify

        curve = Polyline(C5)
        pyramid = mr_simplify(curve, 2, 0.5, 4)
        self.assertEqual(list(pyramid.schedule), [4, 2])
        self.assertEqual(list(pyramid.final.breakpoints), [0, 1, 4])
        self.assertEqual(pyramid.final.error, 0.8)

        level = extract_level(pyramid, 0)
        self.assertEqual(list(level.breakpoints), [0, 1, 2, 3, 4])
        self.assertEqual(level.error, 0.0)
        self.assertEqual(list(extract_level(pyramid, 1).breakpoints), [0, 1, 4])
        self.assertEqual(pyramid.resolved_points(1), curve.subset([0, 1, 4]))

        pyramid = mr_simplify(curve, 4)
        self.assertEqual(len(pyramid), 1)
        self.assertEqual(pyramid.final.error, 0.0)

    def test_extract_level_out_of_range(self):
        from polymr.backend.errors import LevelOutOfRange
        from polymr.backend.multires import extract_level
        from polymr.backend.multires import mr_simplify

        pyramid = mr_simplify(Polyline(C5), 2)
        with self.assertRaises(LevelOutOfRange):
            extract_level(pyramid, 2)
        with self.assertRaises(IndexError):
            extract_level(pyramid, -1)

    def test_pyramid_is_nested_for_every_engine(self):
        from polymr.backend.dynprog import fsdp_simplify
        from polymr.backend.geometry import build_moments
        from polymr.backend.geometry import breakpoints_error
        from polymr.backend.multires import ENGINES
        from polymr.backend.multires import extract_level
        from polymr.backend.multires import mr_simplify

        rng = np.random.default_rng(12)
        for _ in range(5):
            curve = random_curve(rng, 257)
            table = build_moments(curve)
            optimum = fsdp_simplify(curve, 16).error
            for engine in ENGINES:
                pyramid = mr_simplify(curve, 16, 0.5, 4, engine)
                self.assertTrue(pyramid.is_nested(), engine)
                self.assertEqual(pyramid.final.K, 16)
                self.assertGreaterEqual(pyramid.final.error, optimum * (1 - 1e-12))
                for j in range(len(pyramid) + 1):
                    level = extract_level(pyramid, j)
                    self.assertEqual(level.K, pyramid.schedule[j])
                    self.assertEqual(level.error, breakpoints_error(table, curve, level.breakpoints))

    def test_mr_on_large_curve(self):
        from polymr.backend.dynprog import fsdp_simplify
        from polymr.backend.multires import mr_simplify

        curve = random_curve(np.random.default_rng(1024), 1024)
        pyramid = mr_simplify(curve, 16, 0.5, 4)
        self.assertGreaterEqual(pyramid.final.error, fsdp_simplify(curve, 16).error * (1 - 1e-12))
        self.assertEqual(pyramid.to_dict()["levels"][-1]["indices"], list(pyramid.final.breakpoints))

    def test_level_errors_grow_down_the_pyramid(self):
        from polymr.backend.evaluation import generate_coastline
        from polymr.backend.multires import mr_simplify

        for seed in range(10):
            pyramid = mr_simplify(generate_coastline(seed, 1025, 0.5), 10, 0.5, 4)
            errors = list(pyramid.errors)
            self.assertEqual(errors[0], 0.0)
            for coarse, fine in zip(errors[1:], errors):
                self.assertGreaterEqual(coarse, fine, (seed, errors))

    def test_mr_visits_grow_linearly(self):
        from polymr.backend.evaluation import Algorithm
        from polymr.backend.evaluation import BenchRecord
        from polymr.backend.evaluation import fit_loglog_slope
        from polymr.backend.evaluation import generate_coastline
        from polymr.backend.multires import mr_simplify

        records = []
        for d in range(10, 15):
            N = 2 ** d + 1
            pyramid = mr_simplify(generate_coastline(7, N, 0.5), 10, 0.5, 4)
            self.assertTrue(pyramid.is_nested())
            records.append(BenchRecord(Algorithm.MR, N, 10, visits=pyramid.visits))
        slope = fit_loglog_slope(records, value="visits")
        self.assertTrue(0.85 <= slope <= 1.15, slope)

    def test_argument_errors(self):
        from polymr.backend.errors import BadRho
        from polymr.backend.errors import KOutOfRange
        from polymr.backend.multires import level_schedule
        from polymr.backend.multires import mr_simplify

        with self.assertRaises(BadRho):
            level_schedule(100, 10, 1.5)
        with self.assertRaises(BadRho):
            mr_simplify(Polyline(C5), 2, rho=0.0)
        with self.assertRaises(KOutOfRange):
            level_schedule(100, 100, 0.5)
        with self.assertRaises(ValueError):
            mr_simplify(Polyline(C5), 2, engine="visvalingam")


if __name__ == '__main__':
    unittest.main()
