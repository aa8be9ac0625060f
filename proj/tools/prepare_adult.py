#!/usr/bin/env python3
"""Merge the raw UCI Adult files (adult.data, adult.test) into one CSV with a header row.

Usage: prepare_adult.py adult.data adult.test out.csv
"""
import csv
import sys

COLUMNS = [
    "age", "workclass", "fnlwgt", "education", "education_num", "marital_status",
    "occupation", "relationship", "race", "sex", "capital_gain", "capital_loss",
    "hours_per_week", "native_country", "income",
]


def rows(path):
    with open(path, newline="") as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("|"):
                continue
            fields = [f.strip() for f in line.split(",")]
            if len(fields) != len(COLUMNS):
                continue
            fields[-1] = fields[-1].rstrip(".")
            yield fields


def main(argv):
    if len(argv) != 4:
        sys.exit(__doc__)
    with open(argv[3], "w", newline="") as out:
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(COLUMNS)
        count = 0
        for path in argv[1:3]:
            for r in rows(path):
                writer.writerow(r)
                count += 1
    print(f"wrote {count} rows to {argv[3]}", file=sys.stderr)


if __name__ == "__main__":
    main(sys.argv)
