#!/usr/bin/env python3
"""Writes b-file fixtures for A001511, A025480 and A007310.

Each sequence is produced from a closed form listed on its OEIS page, not from
the recursions the library implements, so the fixtures are an independent
check. Real b-files downloaded from oeis.org can replace these unchanged.
"""
import argparse
import pathlib


def a001511(n):  # 2-adic valuation of 2n, n >= 1
    return ((2 * n) & -(2 * n)).bit_length() - 1


def a025480(n):  # (odd part of n+1, minus 1) / 2, n >= 0
    m = n + 1
    while m % 2 == 0:
        m //= 2
    return (m - 1) // 2


def a007310():  # numbers congruent to 1 or 5 mod 6, n >= 1
    k = 1
    while True:
        if k % 6 in (1, 5):
            yield k
        k += 1


def write(path, name, offset, values):
    with open(path, "w") as out:
        out.write(f"# {name} (generated fixture, see tools/make_bfiles.py)\n")
        for i, v in enumerate(values):
            out.write(f"{offset + i} {v}\n")


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--out", default=str(pathlib.Path(__file__).parent.parent / "tests" / "data"))
    parser.add_argument("--terms", type=int, default=10000)
    args = parser.parse_args()
    out = pathlib.Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    n = args.terms
    write(out / "b001511.txt", "A001511", 1, [a001511(k) for k in range(1, n + 1)])
    write(out / "b025480.txt", "A025480", 0, [a025480(k) for k in range(0, n)])
    gen = a007310()
    write(out / "b007310.txt", "A007310", 1, [next(gen) for _ in range(n)])


if __name__ == "__main__":
    main()
