"""Point counts of small braid varieties X(beta, Dem(beta)) and their fitted polynomials.

Usage: python scripts/point_count_table.py [--max-len 5] [--qs 3,5,7,11,13]
"""

from __future__ import annotations

import argparse
import itertools

from stokesbraid.braidmonoid import BraidWord, demazure_product
from stokesbraid.braidvariety import BraidVarietySpec, count_degree
from stokesbraid.fields import QQ
from stokesbraid.matgroup import GroupSpec
from stokesbraid.rootdata import build_root_system


def rows(n: int, max_len: int, qs: list[int]):
    rs = build_root_system("A", n - 1)
    group = GroupSpec("SL", n, QQ)
    for length in range(1, max_len + 1):
        for letters in itertools.product(range(1, n), repeat=length):
            braid = BraidWord(rs, letters)
            dem = demazure_product(braid)
            result = count_degree(BraidVarietySpec(group, braid, dem), qs)
            yield letters, dem.word, result


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--max-len", type=int, default=4)
    parser.add_argument("--qs", default="3,5,7,11,13")
    args = parser.parse_args()
    qs = [int(x) for x in args.qs.split(",")]
    print("| n | beta | Dem | counts | degree | coefficients (lowest first) |")
    print("|---|---|---|---|---|---|")
    for n in (2, 3):
        for letters, dem, res in rows(n, args.max_len, qs):
            counts = ", ".join(str(res["counts"][q]) for q in qs)
            coeffs = res["coefficients"] and ", ".join(str(c) for c in res["coefficients"])
            print(f"| {n} | {letters} | {dem} | {counts} | {res['degree']} | {coeffs} |")


if __name__ == "__main__":
    main()
