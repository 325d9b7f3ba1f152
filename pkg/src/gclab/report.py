"""Command reports: text lines, a JSON payload and named tables.

``write(out_dir)`` stores ``report.tsv`` (sections headed by ``# name``)
and one PNG heatmap per table.  Output is deterministic for fixed input.
"""

import csv
import json
import os

import numpy as np


def jsonable(x):
    if isinstance(x, dict):
        return {str(k) if not isinstance(k, str) else k: jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [jsonable(v) for v in x]
    if isinstance(x, np.ndarray):
        return jsonable(x.tolist())
    if isinstance(x, np.integer):
        return int(x)
    if isinstance(x, np.bool_):
        return bool(x)
    return x


class Report:
    def __init__(self, command):
        self.command = command
        self.lines = []
        self.data = {"command": command}
        self.tables = {}

    def line(self, text=""):
        self.lines.append(text)

    def put(self, key, value):
        self.data[key] = jsonable(value)

    def table(self, name, array, rows=None, cols=None, title=None):
        arr = np.asarray(array)
        self.tables[name] = (arr, rows, cols, title or name)

    def text(self):
        return "\n".join(self.lines) + "\n"

    def json(self):
        return json.dumps(self.data, sort_keys=True, indent=2) + "\n"

    def write(self, out_dir):
        from .plotting import heatmap

        os.makedirs(out_dir, exist_ok=True)
        with open(os.path.join(out_dir, "report.tsv"), "w", newline="", encoding="utf-8") as fh:
            w = csv.writer(fh, delimiter="\t", lineterminator="\n")
            w.writerow(["# summary"])
            for ln in self.lines:
                w.writerow([ln])
            for name in sorted(self.tables):
                arr, rows, cols, _ = self.tables[name]
                w.writerow([])
                w.writerow([f"# {name}"])
                w.writerow([""] + [str(c) for c in (cols or range(arr.shape[1]))])
                for i, row in enumerate(arr):
                    w.writerow([str(rows[i]) if rows else str(i)] + [str(int(v)) for v in row])
        written = ["report.tsv"]
        for name in sorted(self.tables):
            arr, rows, cols, title = self.tables[name]
            fname = f"{name}.png"
            heatmap(arr, os.path.join(out_dir, fname), title, rows, cols)
            written.append(fname)
        return written
