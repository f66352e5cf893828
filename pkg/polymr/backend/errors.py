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
Exception hierarchy for polymr.

Exceptions are grouped by the exit status the command line reports for
them: usage errors (1), input/output errors (2) and algorithm errors (3).
"""


class PolymrError(Exception):
    exit_status = 3


class UsageError(PolymrError):
    exit_status = 1


class IoError(PolymrError, OSError):
    exit_status = 2


class AlgorithmError(PolymrError):
    exit_status = 3


class InvalidPolyline(AlgorithmError, ValueError):
    pass


class KOutOfRange(AlgorithmError, ValueError):
    def __init__(self, K, upper):
        super().__init__("The segment count K={} must lie in [1, {}].".format(K, upper))
        self.K = K
        self.upper = upper


class BadRho(AlgorithmError, ValueError):
    def __init__(self, rho):
        super().__init__("The decimation factor rho={} must lie strictly between 0 and 1.".format(rho))
        self.rho = rho


class BadBeta(AlgorithmError, ValueError):
    def __init__(self, beta):
        super().__init__("The corridor half-width beta={} must be an integer >= 1.".format(beta))
        self.beta = beta


class InstanceTooLarge(AlgorithmError, ValueError):
    pass


class VertexNotInOriginal(AlgorithmError, KeyError):
    def __str__(self):
        return str(self.args[0]) if self.args else ""


class LevelOutOfRange(AlgorithmError, IndexError):
    pass


class NegativeError(AlgorithmError, ValueError):
    pass


class ZeroDenominator(AlgorithmError, ZeroDivisionError):
    pass


class BadRoughness(AlgorithmError, ValueError):
    def __init__(self, h):
        super().__init__("The roughness h={} must lie strictly between 0 and 1.".format(h))
        self.h = h


class TooFewPoints(AlgorithmError, ValueError):
    pass
