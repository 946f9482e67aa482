#!/usr/bin/env python3
"""Generate a zeros data file: nontrivial zeta zeros and zeta'(rho_i).

Output format (consumed by the `bounds`/`qtilde` commands and the test suite):

    # precision=<digits> count=<n>
    <i> <gamma_i> <Re zeta'(rho_i)> <Im zeta'(rho_i)>

Values are computed with mpmath at a working precision comfortably above the
declared precision. Any independent multiprecision zeta implementation can be
used to regenerate or cross-check this file.

Usage: gen_zeros.py [count] [digits] [out_path]
"""
import sys
from multiprocessing import Pool

import mpmath as mp

COUNT = int(sys.argv[1]) if len(sys.argv) > 1 else 2000
DIGITS = int(sys.argv[2]) if len(sys.argv) > 2 else 50
OUT = sys.argv[3] if len(sys.argv) > 3 else "data/zeros2000.txt"
WORK_DPS = DIGITS + 10
PRINT_DIGITS = DIGITS + 2


def one(i):
    mp.mp.dps = WORK_DPS
    rho = mp.zetazero(i)
    dz = mp.zeta(rho, derivative=1)
    g = mp.nstr(mp.im(rho), PRINT_DIGITS, strip_zeros=False)
    re = mp.nstr(mp.re(dz), PRINT_DIGITS, strip_zeros=False)
    im = mp.nstr(mp.im(dz), PRINT_DIGITS, strip_zeros=False)
    return i, g, re, im


def main():
    with Pool(2) as pool:
        rows = pool.map(one, range(1, COUNT + 1), chunksize=25)
    rows.sort()
    with open(OUT, "w") as fh:
        fh.write(f"# precision={DIGITS} count={COUNT}\n")
        for i, g, re, im in rows:
            fh.write(f"{i} {g} {re} {im}\n")
    print(f"wrote {COUNT} zeros at {DIGITS} declared digits to {OUT}")


if __name__ == "__main__":
    main()
