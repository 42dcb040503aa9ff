#!/usr/bin/env python3
"""Regenerates the bundled CSV datasets under data/ from scikit-learn.

scikit-learn ships iris and digits offline, so this needs no network access.
Output files are plain RFC-4180 CSVs with a header row and the label as the
last column, which is what the CLI expects by default.
"""

import csv
from pathlib import Path

from sklearn.datasets import load_digits, load_iris

OUT = Path(__file__).resolve().parent.parent / "data"


def export_iris() -> None:
    ds = load_iris()
    names = ["sepal_length", "sepal_width", "petal_length", "petal_width"]
    with open(OUT / "iris.csv", "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(names + ["species"])
        for row, target in zip(ds.data, ds.target):
            w.writerow([f"{v:g}" for v in row] + [ds.target_names[target]])


def export_digits() -> None:
    ds = load_digits()
    names = [f"p{i}" for i in range(64)]
    with open(OUT / "digits.csv", "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(names + ["digit"])
        for row, target in zip(ds.data, ds.target):
            w.writerow([f"{v:g}" for v in row] + [target])


if __name__ == "__main__":
    OUT.mkdir(exist_ok=True)
    export_iris()
    export_digits()
    print(f"wrote {OUT / 'iris.csv'} and {OUT / 'digits.csv'}")
