"""Write a fixture slice of OM(9,4) records.

Each record is the chirotope of a seeded random 9-point configuration,
reoriented on a seeded random subset so that the acyclic member of the class
is not always the stored one.

    python tools/make_fixture_slice.py tests/data/om94_slice_1000.txt --count 1000
"""
import argparse

import numpy as np

from omlink.geometry import chirotope_from_points, random_general_position


def make_records(count: int, seed: int = 0, box: int = 100):
    rng = np.random.default_rng(seed)
    for k in range(count):
        config = random_general_position(9, seed * 1_000_003 + k, box)
        flip = [e for e in range(1, 10) if rng.random() < 0.5]
        yield str(chirotope_from_points(config).reoriented(flip))


def main():
    p = argparse.ArgumentParser()
    p.add_argument("out")
    p.add_argument("--count", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    args = p.parse_args()
    with open(args.out, "w") as f:
        for rec in make_records(args.count, args.seed):
            f.write(rec + "\n")


if __name__ == "__main__":
    main()
