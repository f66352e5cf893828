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
The polymr data layer.
Reads polyline files into ``Polyline`` objects and writes polylines,
simplification results and sweep records in the documented formats.

Polyline files hold one ``x,y`` point per line; blank lines and ``#``
comments are ignored. Numbers are written in shortest round-trip decimal
form and read back with round-trip precision, so coordinates survive a
write/read cycle unchanged.
"""

import json
import logging
import os

import pandas as pd

from polymr.backend.datatypes import Polyline
from polymr.backend.errors import InvalidPolyline
from polymr.backend.errors import IoError
from polymr.backend.evaluation import BENCH_COLUMNS
from polymr.backend.evaluation import records_frame
from polymr.backend.evaluation import summarize
from polymr.util.funcs import atomic_output
from polymr.util.funcs import write_output

logger = logging.getLogger(__name__)

POLYLINE_SUFFIXES = (".csv", ".txt", ".xy")
FORMATS = ("csv", "json", "xlsx")


class Loader():
    def __init__(self, file):
        self._file = file
        self.polyline = None
        self.dropped = 0
        self._status = "NO DATA"

    def __repr__(self):
        return self._status

    def load(self):
        """
        Read the polyline file into ``self.polyline``.

        Raises
        ------
        IoError
            The file is missing or unreadable, a row is not an ``x,y`` pair of
            finite decimals, or fewer than two distinct points remain.

        Returns
        -------
        Polyline

        """
        path = self._file
        try:
            frame = pd.read_csv(path, header=None, comment="#", skip_blank_lines=True,
                                skipinitialspace=True, dtype=float, float_precision="round_trip")
        except (FileNotFoundError, PermissionError, IsADirectoryError) as error:
            raise IoError("The polyline file '{}' could not be opened: {}".format(path, error.strerror or error)) from error
        except pd.errors.EmptyDataError as error:
            raise IoError("The polyline file '{}' contains no points.".format(path)) from error
        except (pd.errors.ParserError, ValueError) as error:
            raise IoError("The polyline file '{}' is not a list of x,y pairs: {}".format(path, error)) from error

        if frame.shape[1] != 2:
            raise IoError("The polyline file '{}' has {} columns per row; expected x,y.".format(path, frame.shape[1]))

        missing = frame.isna().any(axis=1)
        if missing.any():
            raise IoError("The polyline file '{}' has an incomplete point on data row {}.".format(
                path, int(missing.to_numpy().argmax()) + 1))

        try:
            self.polyline = Polyline(frame.to_numpy())
        except InvalidPolyline as error:
            raise IoError("The polyline file '{}' is not a valid curve: {}".format(path, error)) from error

        self.dropped = self.polyline.dropped
        if self.dropped:
            logger.info("Dropped %d consecutive duplicate points from '%s'.", self.dropped, path)
        self._status = "INITIALIZED"
        return self.polyline


def read_polyline(path):
    return Loader(path).load()


def read_corpus(paths):
    """Load every polyline file named in ``paths``; directories contribute their polyline files in name order."""
    files = []
    for path in paths:
        if os.path.isdir(path):
            files.extend(os.path.join(path, name) for name in sorted(os.listdir(path))
                         if name.lower().endswith(POLYLINE_SUFFIXES))
        else:
            files.append(path)

    if not files:
        raise IoError("No polyline files were found in {}.".format(list(paths)))
    return [read_polyline(file) for file in files]


def _open_output(temporary):
    return open(temporary, "w", encoding="utf-8", newline="")


def write_polyline(polyline, output_file, header=None):
    frame = pd.DataFrame(polyline.coords, columns=["x", "y"])
    try:
        with atomic_output(output_file) as temporary:
            with _open_output(temporary) as handle:
                if header:
                    handle.write("# {}\n".format(header))
                frame.to_csv(handle, header=False, index=False, lineterminator="\n")
    except OSError as error:
        raise IoError("Could not write the polyline to '{}': {}".format(output_file, error)) from error


def write_indices(approximation, curve, output_file):
    """CSV of the retained original-curve indices and their coordinates."""
    indices = list(approximation.breakpoints)
    frame = pd.DataFrame({"index": indices, "x": curve.x[indices], "y": curve.y[indices]})
    try:
        with atomic_output(output_file) as temporary:
            with _open_output(temporary) as handle:
                frame.to_csv(handle, index=False, lineterminator="\n")
    except OSError as error:
        raise IoError("Could not write the indices to '{}': {}".format(output_file, error)) from error


def write_json(document, output_file):
    try:
        write_output(json.dumps(document, indent=2, allow_nan=False) + "\n", output_file)
    except OSError as error:
        raise IoError("Could not write '{}': {}".format(output_file, error)) from error


def write_records(records, output_file, output_format="csv"):
    """
    Export sweep records.

    ``csv`` uses the fixed header algorithm,N,K,rho,beta,runtime_us,error,fidelity
    with empty cells for absent values; ``json`` is an array of full records;
    ``xlsx`` holds a 'Records' and a 'Summary' sheet.
    """
    if output_format not in FORMATS:
        raise ValueError("Unknown output format '{}'; try one of {}.".format(output_format, list(FORMATS)))

    if output_format == "json":
        write_json([record.to_dict() for record in records], output_file)
        return

    frame = records_frame(records)
    try:
        with atomic_output(output_file) as temporary:
            if output_format == "csv":
                with _open_output(temporary) as handle:
                    frame[BENCH_COLUMNS].to_csv(handle, index=False, lineterminator="\n")
            else:
                with pd.ExcelWriter(temporary) as writer:
                    frame.to_excel(writer, sheet_name="Records", index=False)
                    summarize(records).to_excel(writer, sheet_name="Summary", index=False)
    except OSError as error:
        raise IoError("Could not write the records to '{}': {}".format(output_file, error)) from error
