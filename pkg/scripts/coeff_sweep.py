#!/usr/bin/env python3
"""Dump Fourier coefficients of every basis series of one level across the
reduced matrices up to a discriminant bound."""

import argparse

from siegelrep import (
    EisensteinSpec,
    fourier_coefficient,
    partitions_of_level,
    reduced_representatives,
)


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("-N", "--level", type=int, default=6)
    ap.add_argument("-k", "--weight", type=int, default=4)
    ap.add_argument("--delta-max", type=int, default=20)
    ap.add_argument("--sing-max", type=int, default=4)
    args = ap.parse_args()

    parts = partitions_of_level(args.level)
    mats = reduced_representatives(args.delta_max, args.sing_max, include_zero=True)
    header = "T".ljust(12) + "".join(str(p.as_tuple()).rjust(18) for p in parts)
    print(f"level {args.level}, weight {args.weight}")
    print(header)
    for t in mats:
        row = f"({t.m},{t.r},{t.n})".ljust(12)
        for part in parts:
            value = fourier_coefficient(EisensteinSpec(args.weight, part), t)
            row += str(value).rjust(18)
        print(row)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
