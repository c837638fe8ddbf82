#!/usr/bin/env python3
"""Print the genus decomposition of each built-in lattice and a table of
degree 2 representation numbers, comparing the closed formula against
brute-force enumeration."""

import argparse
import time

from siegelrep import (
    BUILTIN_NAMES,
    builtin_lattice,
    genus_coefficients,
    genus_rep_number,
    profile,
    rep_deg2,
    reduced_representatives,
    shells,
)


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--delta-max", type=int, default=12)
    ap.add_argument("--sing-max", type=int, default=4)
    ap.add_argument("--lattices", nargs="*", default=list(BUILTIN_NAMES))
    args = ap.parse_args()

    mats = reduced_representatives(args.delta_max, args.sing_max, include_zero=True)
    max_norm = max(2 * max(t.m, t.n) for t in mats)
    bad = 0
    for name in args.lattices:
        gram = builtin_lattice(name)
        prof = profile(gram)
        weights = ", ".join(f"{p.as_tuple()}: {c}" for p, c in genus_coefficients(gram).items())
        print(f"{name}  level {prof.level}  det {prof.determinant}")
        print(f"  genus weights: {weights}")
        started = time.time()
        shells(gram, max_norm)
        print(f"  shells to norm {max_norm} in {time.time() - started:.2f}s")
        for t in mats:
            formula = genus_rep_number(gram, t)
            count = rep_deg2(gram, t)
            ok = "ok" if formula == count else "MISMATCH"
            bad += formula != count
            print(f"  T=({t.m},{t.r},{t.n})  formula {str(formula):>10}  count {count:>10}  {ok}")
    return 1 if bad else 0


if __name__ == "__main__":
    raise SystemExit(main())
