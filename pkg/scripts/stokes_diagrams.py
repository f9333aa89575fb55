"""Print Stokes diagrams and braids of standard isoclinic classes in type A.

Usage: python scripts/stokes_diagrams.py [--max-rank 3] [--max-num 5]
"""

from __future__ import annotations

import argparse
from fractions import Fraction
from math import gcd

from stokesbraid.braidmonoid import cyclically_equivalent
from stokesbraid.rootdata import build_root_system
from stokesbraid.stokes import expected_isoclinic_braid, standard_isoclinic, stokes_diagram


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--max-rank", type=int, default=2)
    parser.add_argument("--max-num", type=int, default=5)
    args = parser.parse_args()
    for r in range(1, args.max_rank + 1):
        rs = build_root_system("A", r)
        n = r + 1
        for d in range(1, args.max_num + 1):
            if gcd(d, n) != 1:
                continue
            slope = Fraction(d, n)
            diagram = stokes_diagram(standard_isoclinic(rs, slope))
            ok = cyclically_equivalent(diagram.braid, expected_isoclinic_braid(diagram.spec))
            print(f"== {rs.name}, slope {slope}: braid {diagram.braid.letters} ({'ok' if ok else 'MISMATCH'})")
            print(diagram.render())


if __name__ == "__main__":
    main()
