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

import contextlib
import math
import os
import tempfile

import pandas as pd

from polymr.backend.errors import UsageError


def validate_numeric(value, name="value", minimum=None):
    if isinstance(value, bool) or pd.isna(value):
        raise UsageError("Entered {} was not a valid whole number.".format(name))

    try:
        number = int(str(value).strip())
    except ValueError as error:
        raise UsageError("Entered {} '{}' was not a valid whole number.".format(name, value)) from error

    if minimum is not None and number < minimum:
        raise UsageError("Entered {} {} must be at least {}.".format(name, number, minimum))
    return number


def validate_float(value, name="value"):
    try:
        number = float(value)
    except (TypeError, ValueError) as error:
        raise UsageError("Entered {} '{}' was not a valid decimal.".format(name, value)) from error

    if not math.isfinite(number):
        raise UsageError("Entered {} '{}' must be finite.".format(name, value))
    return number


def validate_open_unit(value, name="value"):
    """Decimal strictly inside (0, 1), used for rho and the roughness h."""
    number = validate_float(value, name)
    if not 0.0 < number < 1.0:
        raise UsageError("Entered {} {} must lie strictly between 0 and 1.".format(name, number))
    return number


def parse_range(string, name="range"):
    """
    Expand the range grammar into a sorted list of distinct integers.

    Parameters
    ----------
    string : str
        One or more comma separated items. Each item is an integer (``1024``),
        an inclusive range ``a-b``, an arithmetic range ``a:b:+s`` or a
        geometric range ``a:b:xF``.

    Raises
    ------
    UsageError
        The string does not follow the grammar or expands to nothing.

    Returns
    -------
    list of int

    """
    if isinstance(string, int):
        return [string]

    values = set()
    for item in str(string).split(","):
        item = item.strip()
        if not item:
            continue
        values.update(_range_item(item, name))

    if not values:
        raise UsageError("The {} '{}' does not contain any values.".format(name, string))
    return sorted(values)


def _range_item(item, name):
    try:
        return [int(item)]
    except ValueError:
        pass

    if ":" in item:
        parts = item.split(":")
        if len(parts) != 3 or len(parts[2]) < 2 or parts[2][0] not in "x+":
            raise UsageError("Format for the {} was invalid: '{}'. Use start:stop:x2 or start:stop:+step.".format(name, item))
        start = validate_numeric(parts[0], name, minimum=1)
        stop = validate_numeric(parts[1], name, minimum=start)
        step = validate_numeric(parts[2][1:], name)

        if parts[2][0] == "x":
            if step < 2:
                raise UsageError("The geometric factor in '{}' must be at least 2.".format(item))
            values = []
            value = start
            while value <= stop:
                values.append(value)
                value = value * step
            return values

        if step < 1:
            raise UsageError("The step in '{}' must be at least 1.".format(item))
        return list(range(start, stop + 1, step))

    bounds = item.split("-")
    if len(bounds) != 2:
        raise UsageError("Format for the {} was invalid: '{}'.".format(name, item))
    minimum = validate_numeric(bounds[0], name)
    maximum = validate_numeric(bounds[1], name, minimum=minimum)
    return list(range(minimum, maximum + 1))


@contextlib.contextmanager
def atomic_output(output_file):
    """
    Yield a temporary path next to ``output_file`` and move it into place
    once the block finishes without raising.
    """
    directory = os.path.dirname(os.path.abspath(output_file))
    os.makedirs(directory, exist_ok=True)
    handle, temporary = tempfile.mkstemp(prefix=".polymr-", suffix=os.path.splitext(output_file)[1], dir=directory)
    os.close(handle)
    try:
        yield temporary
        os.replace(temporary, output_file)
    finally:
        if os.path.exists(temporary):
            os.remove(temporary)


def write_output(variable, output_file="output.txt"):
    with atomic_output(output_file) as temporary:
        with open(temporary, "w", encoding="utf-8", newline="\n") as file:
            file.write(variable)
