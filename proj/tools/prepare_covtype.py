#!/usr/bin/env python3
"""Convert the raw UCI covtype.data(.gz) file into a CSV with a header row.

The four wilderness-area indicator columns are collapsed into a single
`wilderness_area` label (1..4); the 40 soil-type indicators are kept.

Usage: prepare_covtype.py covtype.data[.gz] out.csv
"""
import csv
import gzip
import sys

CONTINUOUS = [
    "elevation", "aspect", "slope", "horizontal_distance_to_hydrology",
    "vertical_distance_to_hydrology", "horizontal_distance_to_roadways",
    "hillshade_9am", "hillshade_noon", "hillshade_3pm",
    "horizontal_distance_to_fire_points",
]
SOIL = [f"soil_type_{i}" for i in range(1, 41)]


def main(argv):
    if len(argv) != 3:
        sys.exit(__doc__)
    opener = gzip.open if argv[1].endswith(".gz") else open
    count = 0
    with opener(argv[1], "rt") as src, open(argv[2], "w", newline="") as out:
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(CONTINUOUS + SOIL + ["wilderness_area", "cover_type"])
        for line in src:
            line = line.strip()
            if not line:
                continue
            v = line.split(",")
            if len(v) != 55:
                continue
            wilderness = v[10:14]
            area = wilderness.index("1") + 1
            writer.writerow(v[:10] + v[14:54] + [str(area), v[54]])
            count += 1
    print(f"wrote {count} rows to {argv[2]}", file=sys.stderr)


if __name__ == "__main__":
    main(sys.argv)
